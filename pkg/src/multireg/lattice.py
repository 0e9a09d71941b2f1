"""Exact arithmetic on Z^r: pointed cones, semigroup membership, N C[j] regions.

Every search here is exhaustive under a strictly positive integer functional,
so answers are exact unless the node cap in :class:`multireg.configs.Caps`
is reached, in which case the status is ``UNKNOWN`` (never a guess).
"""

import functools
import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger
from sympy import Matrix, Rational
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from multireg import get_caps
from multireg.model.errors import (
    InputError,
    MultiregError,
    NotPointedError,
    SizeCapError,
)
from multireg.model.region import SemigroupRegion
from multireg.model.status import EXACT, Feasibility
from multireg.model.vector import (
    DegreeVector,
    GeneratorSet,
    check_rank,
    combination,
    dot,
    is_zero,
    neg,
    normalize_generators,
    scale,
    sub,
    vec,
)

# ---------------------------------------------------------------------------
# exact linear programming


def _to_fraction(value) -> Fraction:
    r = Rational(value)
    return Fraction(int(r.p), int(r.q))


def _solve_lp(
    objective: Sequence[int],
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
) -> list[Fraction] | None:
    """Minimize ``objective . x`` subject to ``rows x <= rhs`` and ``x >= 0``.

    Returns an optimal point, or None when the system is infeasible.
    """
    try:
        _, point = linprog(Matrix([list(objective)]), Matrix(rows), Matrix(list(rhs)))
    except InfeasibleLPError:
        return None
    except UnboundedLPError as exc:
        raise MultiregError(f"unexpected unbounded linear program: {exc}") from exc
    return [_to_fraction(x) for x in point]


def _integral(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators, then divide out the content."""
    denom = math.lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * denom) for v in values]
    content = math.gcd(*ints) if ints else 0
    if content > 1:
        ints = [x // content for x in ints]
    return tuple(ints)


def find_functional(
    positive: Sequence[DegreeVector],
    zero: Sequence[DegreeVector] = (),
) -> DegreeVector | None:
    """Integer phi with phi.g >= 1 on ``positive`` and phi.g = 0 on ``zero``, or None."""
    vectors = list(positive) + list(zero)
    if not vectors:
        return None
    rank = len(vectors[0])
    rows: list[list[int]] = []
    rhs: list[int] = []
    # phi = p - q with p, q >= 0
    for g in positive:
        rows.append([-x for x in g] + list(g))
        rhs.append(-1)
    for g in zero:
        rows.append(list(g) + [-x for x in g])
        rhs.append(0)
        rows.append([-x for x in g] + list(g))
        rhs.append(0)
    point = _solve_lp([1] * (2 * rank), rows, rhs)
    if point is None:
        return None
    phi = [point[k] - point[rank + k] for k in range(rank)]
    return _integral(phi)


def _positive_relation(gens: GeneratorSet) -> tuple[int, ...] | None:
    """Nonnegative integer lambda, not all zero, with sum lambda_k g_k = 0."""
    rank = len(gens[0])
    k = len(gens)
    rows: list[list[int]] = []
    rhs: list[int] = []
    for coord in range(rank):
        row = [g[coord] for g in gens]
        rows.append(row)
        rhs.append(0)
        rows.append([-x for x in row])
        rhs.append(0)
    rows.append([1] * k)
    rhs.append(1)
    rows.append([-1] * k)
    rhs.append(-1)
    point = _solve_lp([0] * k, rows, rhs)
    if point is None:
        return None
    return _integral(point)


# ---------------------------------------------------------------------------
# pointedness


@dataclass(frozen=True)
class PointednessCertificate:
    generators: GeneratorSet
    functional: DegreeVector | None = None
    relation: tuple[int, ...] | None = None

    @property
    def pointed(self) -> bool:
        return self.functional is not None

    def witness_pair(self) -> tuple[DegreeVector, DegreeVector] | None:
        """A vector u with both u and -u in the cone, read off the relation."""
        if self.relation is None:
            return None
        k = next(i for i, lam in enumerate(self.relation) if lam)
        u = scale(self.relation[k], self.generators[k])
        return u, neg(u)

    def describe(self) -> str:
        if self.pointed:
            return f"pointed, functional {self.functional}"
        terms = " + ".join(
            f"{lam}*{g}"
            for lam, g in zip(self.relation or (), self.generators)
            if lam
        )
        return f"not pointed: {terms} = 0"

    def to_dict(self) -> dict[str, object]:
        return {
            "pointed": self.pointed,
            "functional": list(self.functional) if self.functional else None,
            "relation": list(self.relation) if self.relation else None,
        }


@functools.lru_cache(maxsize=4096)
def _check_pointed(gens: GeneratorSet) -> PointednessCertificate:
    for k, g in enumerate(gens):
        if is_zero(g):
            relation = tuple(1 if j == k else 0 for j in range(len(gens)))
            return PointednessCertificate(gens, relation=relation)
    phi = find_functional(gens)
    if phi is not None:
        return PointednessCertificate(gens, functional=phi)
    return PointednessCertificate(gens, relation=_positive_relation(gens))


def check_pointed(gens: Iterable[Iterable[int]]) -> PointednessCertificate:
    """Certify pos(gens) pointed with no zero generator, or return the violating relation."""
    gens = tuple(vec(g) for g in gens)
    if not gens:
        raise InputError("pointedness check needs a nonempty generator set")
    check_rank(gens, len(gens[0]), "generator")
    return _check_pointed(gens)


def pointed_functional(gens: Iterable[Iterable[int]]) -> DegreeVector:
    certificate = check_pointed(gens)
    if not certificate.pointed:
        raise NotPointedError(
            f"semigroup generators are not pointed ({certificate.describe()})",
            certificate,
        )
    return certificate.functional


# ---------------------------------------------------------------------------
# integer lattices


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


class IntegerLattice:
    """Z-span of integer vectors, kept as an echelon basis with unimodular row updates."""

    __slots__ = ("dimension", "_basis", "_pivot_row")

    def __init__(self, dimension: int, vectors: Iterable[Sequence[int]] = ()):
        self.dimension = dimension
        self._basis: list[list[int]] = []
        self._pivot_row: dict[int, int] = {}
        for v in vectors:
            self.add_vector(v)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def _reindex(self) -> None:
        self._basis.sort(key=lambda row: next(j for j, x in enumerate(row) if x))
        self._pivot_row = {
            next(j for j, x in enumerate(row) if x): i for i, row in enumerate(self._basis)
        }

    def add_vector(self, vector: Sequence[int]) -> None:
        if len(vector) != self.dimension:
            raise InputError(f"lattice vector {tuple(vector)} has wrong dimension")
        v = list(vector)
        for j in range(self.dimension):
            if not v[j]:
                continue
            p = self._pivot_row.get(j)
            if p is None:
                self._basis.append(v)
                self._reindex()
                return
            row = self._basis[p]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, self.dimension):
                    v[jj] -= q * row[jj]
            else:
                x, y, g = _xgcd(a, b)
                ag, mbg = a // g, -b // g
                for jj in range(j, self.dimension):
                    aa, bb = row[jj], v[jj]
                    row[jj] = x * aa + y * bb
                    v[jj] = mbg * aa + ag * bb

    def __contains__(self, vector: Sequence[int]) -> bool:
        v = list(vector)
        for j in range(self.dimension):
            if not v[j]:
                continue
            p = self._pivot_row.get(j)
            if p is None:
                return False
            row = self._basis[p]
            if v[j] % row[j]:
                return False
            q = v[j] // row[j]
            for jj in range(j, self.dimension):
                v[jj] -= q * row[jj]
        return True


# ---------------------------------------------------------------------------
# integer feasibility u in N^k, sum u_j col_j = target


@dataclass(frozen=True)
class FeasibilityResult:
    status: Feasibility
    # None for FEASIBLE answers found through the lineality lattice
    witness: tuple[int, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status is Feasibility.FEASIBLE


@dataclass(frozen=True)
class _ConeStructure:
    free: tuple[int, ...]  # columns enumerated under psi
    weights: tuple[int, ...]  # psi . column, all >= 1
    psi: DegreeVector
    lineal: tuple[int, ...]  # columns spanning the lineality space
    lattice: IntegerLattice

    @property
    def pointed(self) -> bool:
        return not self.lineal


class _BudgetExhausted(Exception):
    pass


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int):
        self.left = cap

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise _BudgetExhausted


def _in_lineality(cols: GeneratorSet, j: int) -> bool:
    k = len(cols)
    rank = len(cols[0])
    rows: list[list[int]] = []
    rhs: list[int] = []
    for coord in range(rank):
        row = [c[coord] for c in cols]
        rows.append(row)
        rhs.append(0)
        rows.append([-x for x in row])
        rhs.append(0)
    for i in range(k):
        rows.append([1 if t == i else 0 for t in range(k)])
        rhs.append(1)
    objective = [-1 if t == j else 0 for t in range(k)]
    point = _solve_lp(objective, rows, rhs)
    return point is not None and point[j] > 0


@functools.lru_cache(maxsize=4096)
def _cone_structure(cols: GeneratorSet) -> _ConeStructure:
    rank = len(cols[0])
    phi = find_functional(cols)
    if phi is not None:
        return _ConeStructure(
            free=tuple(range(len(cols))),
            weights=tuple(dot(phi, c) for c in cols),
            psi=phi,
            lineal=(),
            lattice=IntegerLattice(rank),
        )
    lineal = tuple(j for j in range(len(cols)) if _in_lineality(cols, j))
    free = tuple(j for j in range(len(cols)) if j not in lineal)
    if free:
        psi = find_functional([cols[j] for j in free], [cols[j] for j in lineal])
        if psi is None:
            raise MultiregError(f"no functional separates the pointed part of {cols}")
    else:
        psi = (0,) * rank
    logger.debug(f"[lattice] cone {cols} has lineality columns {lineal}")
    return _ConeStructure(
        free=free,
        weights=tuple(dot(psi, cols[j]) for j in free),
        psi=psi,
        lineal=lineal,
        lattice=IntegerLattice(rank, [cols[j] for j in lineal]),
    )


class _Search:
    """Memoized depth-first search over the free columns, one column at a time."""

    def __init__(self, cols: GeneratorSet, structure: _ConeStructure, budget: _Budget):
        self.gens = tuple(cols[j] for j in structure.free)
        self.weights = structure.weights
        self.psi = structure.psi
        self.lattice = structure.lattice
        self.budget = budget
        self._memo: dict[tuple[int, DegreeVector], bool] = {}
        self._count_memo: dict[tuple[int, DegreeVector], int] = {}

    def _terminal(self, residual: DegreeVector) -> bool:
        return residual in self.lattice

    def feasible(self, idx: int, residual: DegreeVector) -> bool:
        key = (idx, residual)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        self.budget.spend()
        level = dot(self.psi, residual)
        k = len(self.gens)
        if idx == k:
            ok = level == 0 and self._terminal(residual)
        elif level < 0:
            ok = False
        elif idx == k - 1:
            w = self.weights[idx]
            ok = level % w == 0 and self._terminal(
                sub(residual, scale(level // w, self.gens[idx]))
            )
        else:
            g, w = self.gens[idx], self.weights[idx]
            ok = any(
                self.feasible(idx + 1, sub(residual, scale(t, g)))
                for t in range(level // w + 1)
            )
        self._memo[key] = ok
        return ok

    def count(self, idx: int, residual: DegreeVector) -> int:
        key = (idx, residual)
        cached = self._count_memo.get(key)
        if cached is not None:
            return cached
        self.budget.spend()
        level = dot(self.psi, residual)
        k = len(self.gens)
        if idx == k:
            total = 1 if is_zero(residual) else 0
        elif level < 0:
            total = 0
        elif idx == k - 1:
            w = self.weights[idx]
            total = int(
                level % w == 0
                and is_zero(sub(residual, scale(level // w, self.gens[idx])))
            )
        else:
            g, w = self.gens[idx], self.weights[idx]
            total = sum(
                self.count(idx + 1, sub(residual, scale(t, g)))
                for t in range(level // w + 1)
            )
        self._count_memo[key] = total
        return total

    def solutions(self, idx: int, residual: DegreeVector) -> Iterator[tuple[int, ...]]:
        k = len(self.gens)
        if idx == k:
            yield ()
            return
        level = dot(self.psi, residual)
        g, w = self.gens[idx], self.weights[idx]
        choices = [level // w] if idx == k - 1 else range(level // w + 1)
        for t in choices:
            rest = sub(residual, scale(t, g))
            if self.feasible(idx + 1, rest):
                for tail in self.solutions(idx + 1, rest):
                    yield (t,) + tail

    def witness(self, residual: DegreeVector) -> tuple[int, ...]:
        return next(self.solutions(0, residual))


def _split_zero_columns(
    columns: GeneratorSet,
) -> tuple[tuple[int, ...], GeneratorSet]:
    active = tuple(j for j, c in enumerate(columns) if not is_zero(c))
    return active, tuple(columns[j] for j in active)


def _expand(active: tuple[int, ...], partial: tuple[int, ...], k: int) -> tuple[int, ...]:
    full = [0] * k
    for j, t in zip(active, partial):
        full[j] = t
    return tuple(full)


@functools.lru_cache(maxsize=65536)
def _feasible_cached(columns: GeneratorSet, target: DegreeVector, cap: int) -> FeasibilityResult:
    active, cols = _split_zero_columns(columns)
    if not cols:
        if is_zero(target):
            return FeasibilityResult(Feasibility.FEASIBLE, (0,) * len(columns))
        return FeasibilityResult(Feasibility.INFEASIBLE)
    structure = _cone_structure(cols)
    search = _Search(cols, structure, _Budget(cap))
    try:
        if not search.feasible(0, target):
            return FeasibilityResult(Feasibility.INFEASIBLE)
        if not structure.pointed:
            return FeasibilityResult(Feasibility.FEASIBLE)
        partial = search.witness(target)
    except _BudgetExhausted:
        logger.warning(f"[lattice] node cap {cap} reached deciding {target} over {cols}")
        return FeasibilityResult(Feasibility.UNKNOWN)
    return FeasibilityResult(
        Feasibility.FEASIBLE, _expand(active, partial, len(columns))
    )


def integer_feasible(
    columns: Iterable[Iterable[int]],
    target: Iterable[int],
    *,
    cap: int | None = None,
) -> FeasibilityResult:
    """Decide whether target = sum u_j columns_j has a solution u in N^k.

    Columns spanning the lineality space of the cone generate a group, so
    the search only enumerates the remaining columns under a functional that
    vanishes on that space and finishes with a lattice-membership test.
    """
    columns = tuple(vec(c) for c in columns)
    target = vec(target)
    if columns:
        check_rank(columns, len(target), "column")
    return _feasible_cached(columns, target, cap or get_caps().enumeration_nodes)


def count_representations(
    columns: Iterable[Iterable[int]],
    target: Iterable[int],
    *,
    cap: int | None = None,
) -> int | float | None:
    """Number of u in N^k with sum u_j columns_j = target.

    Returns ``math.inf`` when a solution exists and the solution set is
    unbounded (a zero column or a line in the cone), and None when the node
    cap was reached.
    """
    columns = tuple(vec(c) for c in columns)
    target = vec(target)
    cap = cap or get_caps().enumeration_nodes
    active, cols = _split_zero_columns(columns)
    if not cols or len(cols) < len(columns) or not _cone_structure(cols).pointed:
        result = _feasible_cached(columns, target, cap)
        match result.status:
            case Feasibility.FEASIBLE:
                return math.inf
            case Feasibility.INFEASIBLE:
                return 0
            case _:
                return None
    search = _Search(cols, _cone_structure(cols), _Budget(cap))
    try:
        return search.count(0, target)
    except _BudgetExhausted:
        logger.warning(f"[lattice] node cap {cap} reached counting {target} over {cols}")
        return None


def iter_representations(
    columns: Iterable[Iterable[int]],
    target: Iterable[int],
    *,
    cap: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """All u in N^k with sum u_j columns_j = target, lexicographically ascending.

    Requires a pointed cone without zero columns (finitely many solutions).
    """
    columns = tuple(vec(c) for c in columns)
    target = vec(target)
    phi = pointed_functional(columns)
    structure = _ConeStructure(
        free=tuple(range(len(columns))),
        weights=tuple(dot(phi, c) for c in columns),
        psi=phi,
        lineal=(),
        lattice=IntegerLattice(len(target)),
    )
    search = _Search(columns, structure, _Budget(cap or get_caps().enumeration_nodes))
    try:
        yield from search.solutions(0, target)
    except _BudgetExhausted as exc:
        raise SizeCapError(f"enumeration of degree {target} exceeded the node cap") from exc


# ---------------------------------------------------------------------------
# semigroups N C and regions N C[j]


def semigroup_member(
    base: Iterable[Iterable[int]], d: Iterable[int]
) -> tuple[int, ...] | None:
    """Witness w in N^l with sum w_i c_i = d, or None when d is not in N C."""
    base = tuple(vec(c) for c in base)
    pointed_functional(base)
    result = integer_feasible(base, d)
    if result.status is Feasibility.UNKNOWN:
        raise SizeCapError(f"semigroup membership of {tuple(d)} exceeded the node cap")
    return result.witness if result.feasible else None


def in_semigroup(base: GeneratorSet, d: DegreeVector) -> bool:
    phi = pointed_functional(base)
    level = dot(phi, d)
    if level < 0:
        return False
    if level == 0:
        return is_zero(d)
    return semigroup_member(base, d) is not None


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All w in N^parts with sum w = total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        w = []
        for b in bars:
            w.append(b - prev - 1)
            prev = b
        w.append(total + parts - 1 - prev - 1)
        yield tuple(w)


def minimal_generators(
    base: GeneratorSet, generators: Iterable[DegreeVector]
) -> tuple[DegreeVector, ...]:
    """Drop every g with g - h in N C for another generator h."""
    unique = sorted(set(generators))
    kept = [
        g
        for g in unique
        if not any(h != g and in_semigroup(base, sub(g, h)) for h in unique)
    ]
    return tuple(kept)


def semigroup_region(
    base: Iterable[Iterable[int]],
    generators: Iterable[Iterable[int]],
    exactness: str = EXACT,
) -> SemigroupRegion:
    """Build a region over N C with minimal, sorted generators."""
    base = normalize_generators(base)
    if not base:
        raise InputError("a semigroup region needs a nonempty base C")
    pointed_functional(base)
    generators = [vec(g) for g in generators]
    check_rank(generators, len(base[0]), "region generator")
    return SemigroupRegion(base, minimal_generators(base, generators), exactness)


def shifted_region(base: Iterable[Iterable[int]], j: int) -> SemigroupRegion:
    """N C[j]: the union over w in N^l with |w| = |j| of sign(j) (w . C) + N C."""
    base = normalize_generators(base)
    sign = -1 if j < 0 else 1
    generators = [
        scale(sign, combination(w, base)) for w in compositions(abs(j), len(base))
    ]
    return semigroup_region(base, generators)
