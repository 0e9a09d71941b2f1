"""Free graded resolutions: Taylor complexes, minimalization, degree-bound boxes.

Differentials are sparse matrices ``{(row, col): polynomial}`` over the
coefficient field; ``differentials[p - 1]`` is d_p : F_p -> F_{p-1}, with rows
indexing the basis of F_{p-1}. An entry at (r, c) is homogeneous of degree
shift_p[c] - shift_{p-1}[r].
"""

import functools
import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger
from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError
from sympy.polys.rings import PolyElement, PolyRing, ring

from multireg import get_caps
from multireg.lattice import in_semigroup
from multireg.linalg import coefficient_field
from multireg.model.errors import InputError, SizeCapError
from multireg.model.monomial import Monomial, in_ideal, lcm, minimal_monomials, quotient
from multireg.model.region import ResolutionTypeJ
from multireg.model.vector import (
    DegreeBox,
    DegreeVector,
    combination,
    format_vector,
    sub,
    vec,
    zero,
)
from multireg.ring import (
    CoarseningVector,
    GradedRing,
    graded_piece_dimension,
    monomials_of_degree,
)

type Differential = Mapping[tuple[int, int], PolyElement]


@functools.lru_cache(maxsize=64)
def polynomial_ring(n: int, characteristic: int) -> PolyRing:
    R, *_ = ring([f"t{k}" for k in range(n)], coefficient_field(characteristic))
    return R


@dataclass(frozen=True, eq=False)
class GradedComplex:
    ring: GradedRing
    terms: tuple[tuple[DegreeVector, ...], ...]
    differentials: tuple[Differential, ...]
    characteristic: int = 0

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def rank(self, p: int) -> int:
        return len(self.terms[p]) if 0 <= p < len(self.terms) else 0

    def differential(self, p: int) -> Differential:
        """d_p : F_p -> F_{p-1}; empty outside 1..length."""
        return self.differentials[p - 1] if 1 <= p <= len(self.differentials) else {}

    @property
    def is_minimal(self) -> bool:
        return _find_unit(self.differentials) is None

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.terms)


def _monomial_entry(R: PolyRing, monomial: Monomial, coefficient: int) -> PolyElement:
    return R.from_dict({tuple(monomial): coefficient})


def free_complex(
    ring_: GradedRing, shifts: Iterable[Iterable[int]], characteristic: int | None = None
) -> GradedComplex:
    characteristic = get_caps().characteristic if characteristic is None else characteristic
    return GradedComplex(ring_, (tuple(vec(e) for e in shifts),), (), characteristic)


def _ordered_generators(ideal: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators in their input order."""
    gens = [tuple(m) for m in ideal]
    keep = set(minimal_monomials(gens))
    return [m for m in dict.fromkeys(gens) if m in keep]


def taylor_complex(
    ring_: GradedRing,
    ideal: Iterable[Monomial],
    characteristic: int | None = None,
) -> GradedComplex:
    """The Taylor resolution of S/I; one basis vector per subset T of the generators."""
    caps = get_caps()
    characteristic = caps.characteristic if characteristic is None else characteristic
    gens = _ordered_generators(ideal)
    q = len(gens)
    if q > caps.taylor_generators:
        raise SizeCapError(
            f"Taylor complex on {q} generators exceeds the cap of {caps.taylor_generators}"
        )
    n = ring_.n
    R = polynomial_ring(n, characteristic)
    subsets = [list(itertools.combinations(range(q), p)) for p in range(q + 1)]
    lcms = {T: lcm((gens[t] for t in T), n) for level in subsets for T in level}
    terms = tuple(tuple(ring_.degree_of(lcms[T]) for T in level) for level in subsets)
    differentials = []
    for p in range(1, q + 1):
        row_of = {T: r for r, T in enumerate(subsets[p - 1])}
        entries: dict[tuple[int, int], PolyElement] = {}
        for c, T in enumerate(subsets[p]):
            for position, t in enumerate(T):
                face = T[:position] + T[position + 1 :]
                sign = -1 if position % 2 else 1
                entries[(row_of[face], c)] = _monomial_entry(
                    R, quotient(lcms[T], lcms[face]), sign
                )
        differentials.append(entries)
    logger.debug(f"[resolution] Taylor complex of {q} generators, ranks {[len(s) for s in subsets]}")
    return GradedComplex(ring_, terms, tuple(differentials), characteristic)


def validate_complex(complex_: GradedComplex) -> list[str]:
    """Homogeneity of every entry and d_{p-1} d_p = 0; returns the problems found."""
    problems: list[str] = []
    ring_ = complex_.ring
    for p in range(1, complex_.length + 1):
        for (r, c), entry in complex_.differential(p).items():
            if not (0 <= r < complex_.rank(p - 1) and 0 <= c < complex_.rank(p)):
                shape = f"{complex_.rank(p - 1)}x{complex_.rank(p)}"
                problems.append(f"d_{p} has entry ({r}, {c}) outside its {shape} shape")
                continue
            expected = sub(complex_.terms[p][c], complex_.terms[p - 1][r])
            for monom in entry.keys():
                if ring_.degree_of(monom) != expected:
                    problems.append(
                        f"d_{p}[{r},{c}] has a term of degree {format_vector(ring_.degree_of(monom))}, "
                        f"expected {format_vector(expected)}"
                    )
                    break
    if problems:
        return problems
    for p in range(2, complex_.length + 1):
        first, second = complex_.differential(p), complex_.differential(p - 1)
        by_row: dict[int, list[tuple[int, PolyElement]]] = {}
        for (k, c), entry in first.items():
            by_row.setdefault(k, []).append((c, entry))
        product: dict[tuple[int, int], PolyElement] = {}
        for (s, k), entry in second.items():
            for c, other in by_row.get(k, ()):
                product[(s, c)] = product.get((s, c), 0) + entry * other
        bad = sorted(key for key, value in product.items() if value)
        if bad:
            problems.append(f"d_{p - 1} d_{p} is nonzero at {bad[:5]}")
    return problems


def _find_unit(differentials: Sequence[Differential]) -> tuple[int, int, int] | None:
    for p, entries in enumerate(differentials, start=1):
        for (r, c) in sorted(entries):
            entry = entries[(r, c)]
            if entry and entry.is_ground:
                return p, r, c
    return None


def minimalize(complex_: GradedComplex) -> GradedComplex:
    """Cancel unit entries until no differential has an invertible entry.

    A unit u = d_p[j, i] splits off S(-e) -> S(-e): row j and column i leave
    d_p, which becomes d - d[:, i] d[j, :] / u; row i leaves d_{p+1} and
    column j leaves d_{p-1}. Pivots are taken in (p, row, col) order.
    """
    alive = [list(range(len(level))) for level in complex_.terms]
    diffs = [dict(d) for d in complex_.differentials]
    cancelled = 0
    while (pivot := _find_unit(diffs)) is not None:
        p, j, i = pivot
        d = diffs[p - 1]
        u = d[(j, i)].LC
        row_j = {c: a for (r, c), a in d.items() if r == j and c != i}
        col_i = {r: a for (r, c), a in d.items() if c == i and r != j}
        updated = {(r, c): a for (r, c), a in d.items() if r != j and c != i}
        for r, a in col_i.items():
            for c, b in row_j.items():
                value = updated.get((r, c), 0) - (a * b).quo_ground(u)
                if value:
                    updated[(r, c)] = value
                else:
                    updated.pop((r, c), None)
        diffs[p - 1] = updated
        if p < len(diffs):
            diffs[p] = {(r, c): a for (r, c), a in diffs[p].items() if r != i}
        if p >= 2:
            diffs[p - 2] = {(r, c): a for (r, c), a in diffs[p - 2].items() if c != j}
        alive[p].remove(i)
        alive[p - 1].remove(j)
        cancelled += 1

    positions = [{old: new for new, old in enumerate(level)} for level in alive]
    terms = [tuple(complex_.terms[p][k] for k in level) for p, level in enumerate(alive)]
    differentials = [
        {(positions[p - 1][r], positions[p][c]): a for (r, c), a in diffs[p - 1].items()}
        for p in range(1, len(terms))
    ]
    while len(terms) > 1 and not terms[-1]:
        terms.pop()
        differentials.pop()
    if cancelled:
        logger.debug(f"[resolution] minimalization cancelled {cancelled} unit pairs")
    return GradedComplex(complex_.ring, tuple(terms), tuple(differentials), complex_.characteristic)


def extract_type_J(complex_: GradedComplex) -> ResolutionTypeJ:
    return ResolutionTypeJ.of(complex_.terms)


def minimal_resolution(
    ring_: GradedRing, ideal: Iterable[Monomial], characteristic: int | None = None
) -> GradedComplex:
    """Minimal free resolution of S/I."""
    return minimalize(taylor_complex(ring_, ideal, characteristic))


# ---------------------------------------------------------------------------
# interchange format


class _TermModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    coefficient: str | int
    exponents: list[StrictInt]


class _EntryModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    row: StrictInt
    col: StrictInt
    terms: list[_TermModel]


class _ComplexModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    ring: str | None = None
    characteristic: StrictInt = 0
    terms: list[list[list[StrictInt]]]
    differentials: list[list[_EntryModel]] = []


def complex_to_dict(complex_: GradedComplex) -> dict[str, object]:
    R = polynomial_ring(complex_.ring.n, complex_.characteristic)
    differentials = []
    for entries in complex_.differentials:
        differentials.append(
            [
                {
                    "row": r,
                    "col": c,
                    "terms": [
                        {"coefficient": str(R.domain.to_sympy(coeff)), "exponents": list(monom)}
                        for monom, coeff in sorted(entries[(r, c)].items())
                    ],
                }
                for r, c in sorted(entries)
            ]
        )
    return {
        "ring": complex_.ring.name,
        "characteristic": complex_.characteristic,
        "terms": [[list(d) for d in level] for level in complex_.terms],
        "differentials": differentials,
    }


def complex_from_dict(ring_: GradedRing, data: Mapping[str, object]) -> GradedComplex:
    """Load and validate a user-supplied complex; problems raise :class:`InputError`."""
    try:
        model = _ComplexModel.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"malformed complex: {exc}") from None
    if len(model.differentials) != max(len(model.terms) - 1, 0):
        raise InputError(
            f"complex has {len(model.terms)} terms but {len(model.differentials)} differentials"
        )
    R = polynomial_ring(ring_.n, model.characteristic)
    field = R.domain
    differentials = []
    for p, entries in enumerate(model.differentials, start=1):
        matrix: dict[tuple[int, int], PolyElement] = {}
        for entry in entries:
            coefficients = {}
            for term in entry.terms:
                if len(term.exponents) != ring_.n or any(e < 0 for e in term.exponents):
                    raise InputError(
                        f"d_{p}[{entry.row},{entry.col}]: bad exponent vector {term.exponents}"
                    )
                try:
                    value = Fraction(term.coefficient)
                except (ValueError, ZeroDivisionError):
                    raise InputError(
                        f"d_{p}[{entry.row},{entry.col}]: bad coefficient {term.coefficient!r}"
                    ) from None
                coefficients[tuple(term.exponents)] = field.convert(
                    value.numerator
                ) / field.convert(value.denominator)
            poly = R.from_dict(coefficients)
            if poly:
                matrix[(entry.row, entry.col)] = poly
        differentials.append(matrix)
    terms = []
    for level in model.terms:
        for d in level:
            if len(d) != ring_.rank:
                raise InputError(f"shift {d} does not have rank {ring_.rank}")
        terms.append(tuple(vec(d) for d in level))
    complex_ = GradedComplex(ring_, tuple(terms), tuple(differentials), model.characteristic)
    problems = validate_complex(complex_)
    if problems:
        for problem in problems:
            logger.error(f"[resolution] {problem}")
        raise InputError(f"invalid complex: {problems[0]}")
    return complex_


# ---------------------------------------------------------------------------
# degree bounds for syzygies


@dataclass(frozen=True)
class SyzygyBox:
    """K_p = {d : deg_{v_j}(d) <= b_j + p s_{v_j} + c_{v_j} - 1 for every j}."""

    coarsenings: tuple[CoarseningVector, ...]
    bounds: tuple[int, ...]

    def __post_init__(self):
        if len(self.coarsenings) != len(self.bounds):
            raise InputError(
                f"{len(self.coarsenings)} coarsenings but {len(self.bounds)} bounds"
            )

    def limit(self, j: int, level: int) -> int:
        cv = self.coarsenings[j]
        return self.bounds[j] + level * cv.s_v + cv.c_v - 1

    def violations(self, d: DegreeVector, level: int) -> tuple[int, ...]:
        return tuple(
            j
            for j, cv in enumerate(self.coarsenings)
            if cv.degree(d) > self.limit(j, level)
        )

    def contains(self, d: DegreeVector, level: int) -> bool:
        return not self.violations(d, level)

    def to_dict(self) -> dict[str, object]:
        return {
            "coarsenings": [list(cv.v) for cv in self.coarsenings],
            "bounds": list(self.bounds),
            "c_v": [cv.c_v for cv in self.coarsenings],
            "s_v": [cv.s_v for cv in self.coarsenings],
        }


@dataclass(frozen=True)
class BoundViolation:
    level: int
    degree: DegreeVector
    coarsening: int
    value: int
    limit: int


@dataclass(frozen=True)
class DegreeBoundReport:
    box: SyzygyBox
    levels: int
    violations: tuple[BoundViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def level_passed(self, p: int) -> bool:
        return all(v.level != p for v in self.violations)

    def to_dict(self) -> dict[str, object]:
        return {
            "box": self.box.to_dict(),
            "passed": self.passed,
            "levels": [
                {"level": p, "passed": self.level_passed(p)} for p in range(self.levels)
            ],
            "violations": [
                {
                    "level": v.level,
                    "degree": list(v.degree),
                    "coarsening": v.coarsening,
                    "value": v.value,
                    "limit": v.limit,
                }
                for v in self.violations
            ],
        }


def check_degree_bounds(
    J: ResolutionTypeJ,
    coarsenings: Sequence[CoarseningVector],
    bounds: Sequence[int],
) -> DegreeBoundReport:
    box = SyzygyBox(tuple(coarsenings), tuple(int(b) for b in bounds))
    violations = []
    for p, d in J.shifts():
        for j in box.violations(d, p):
            violations.append(
                BoundViolation(p, d, j, box.coarsenings[j].degree(d), box.limit(j, p))
            )
    for v in violations:
        logger.info(
            f"[resolution] level {v.level} shift {format_vector(v.degree)}: "
            f"deg_v = {v.value} exceeds {v.limit} for v={format_vector(box.coarsenings[v.coarsening].v)}"
        )
    return DegreeBoundReport(box, len(J.levels), tuple(violations))


def level_set_member(
    ring_: GradedRing,
    d: Iterable[int],
    anchors: Iterable[Iterable[int]],
    box: SyzygyBox,
    p: int,
) -> bool:
    """d in (union of b_k + Q) intersected with K_p, Q the semigroup of variable degrees."""
    d = vec(d)
    if not box.contains(d, p):
        return False
    return any(in_semigroup(ring_.degrees, sub(d, vec(b))) for b in anchors)


def level_set_points(
    ring_: GradedRing,
    anchors: Iterable[Iterable[int]],
    box: SyzygyBox,
    p: int,
    window: DegreeBox,
) -> tuple[DegreeVector, ...]:
    anchors = [vec(b) for b in anchors]
    return tuple(d for d in window.points() if level_set_member(ring_, d, anchors, box, p))


# ---------------------------------------------------------------------------
# Hilbert functions


def hilbert_function(ring_: GradedRing, ideal: Iterable[Monomial], d: Iterable[int]) -> int:
    """dim (S/I)_d by counting standard monomials."""
    gens = minimal_monomials(tuple(m) for m in ideal)
    return sum(1 for a in monomials_of_degree(ring_, vec(d)) if not in_ideal(a, gens))


def euler_hilbert(ring_: GradedRing, J: ResolutionTypeJ, d: Iterable[int]) -> int:
    """sum_p (-1)^p sum_{e in J_p} dim S_{d-e}."""
    d = vec(d)
    return sum(
        (-1) ** p * graded_piece_dimension(ring_, sub(d, e)) for p, e in J.shifts()
    )


def koszul_shifts(ring_: GradedRing) -> ResolutionTypeJ:
    """Shifts of the Koszul resolution of S/(x_1, ..., x_n)."""
    levels = [[zero(ring_.rank)]]
    for p in range(1, ring_.n + 1):
        levels.append(
            [
                combination([1 if k in T else 0 for k in range(ring_.n)], ring_.degrees)
                for T in itertools.combinations(range(ring_.n), p)
            ]
        )
    return ResolutionTypeJ.of(levels)
