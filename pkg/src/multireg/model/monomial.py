"""Monomials as exponent vectors in N^n."""

from collections.abc import Iterable

type Monomial = tuple[int, ...]


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(monomials: Iterable[Monomial], n: int) -> Monomial:
    result = [0] * n
    for m in monomials:
        for i, e in enumerate(m):
            if e > result[i]:
                result[i] = e
    return tuple(result)


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def minimal_monomials(monomials: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop duplicates and every monomial divisible by another one."""
    unique = sorted(set(tuple(m) for m in monomials), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in unique:
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def in_ideal(m: Monomial, gens: Iterable[Monomial]) -> bool:
    return any(divides(g, m) for g in gens)


def variable_ideal(indices: Iterable[int], n: int) -> tuple[Monomial, ...]:
    """Generators x_k, k in indices."""
    return tuple(sorted(tuple(1 if j == k else 0 for j in range(n)) for k in set(indices)))


def format_monomial(m: Monomial, names: tuple[str, ...]) -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"
