"""Exact ranks over Q or GF(p)."""

from fractions import Fraction

from sympy import Rational, SparseMatrix
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

type Entries = dict[tuple[int, int], int | Fraction]


def coefficient_field(characteristic: int):
    return QQ if characteristic == 0 else GF(characteristic)


def to_domain_matrix(
    entries: Entries, shape: tuple[int, int], characteristic: int
) -> DomainMatrix:
    nrows, ncols = shape
    matrix = SparseMatrix(
        nrows,
        ncols,
        {
            key: Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v
            for key, v in entries.items()
            if v
        },
    )
    return DomainMatrix.from_Matrix(matrix).convert_to(coefficient_field(characteristic))


def rank(entries: Entries, shape: tuple[int, int], characteristic: int = 0) -> int:
    if not shape[0] or not shape[1] or not any(entries.values()):
        return 0
    return to_domain_matrix(entries, shape, characteristic).rank()


def composes_to_zero(
    second: Entries,
    second_shape: tuple[int, int],
    first: Entries,
    first_shape: tuple[int, int],
    characteristic: int = 0,
) -> bool:
    """second * first == 0 (first applied first)."""
    if second_shape[1] != first_shape[0]:
        raise ValueError(f"shapes {second_shape} and {first_shape} do not compose")
    if not all(second_shape) or not all(first_shape):
        return True
    product = to_domain_matrix(second, second_shape, characteristic).matmul(
        to_domain_matrix(first, first_shape, characteristic)
    )
    return product.is_zero_matrix
