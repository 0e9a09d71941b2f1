"""Region algebra over N C and the resolution/regularity dictionary.

A region is the union of g + N C over finitely many generators g. All sets
built here (reg(J), its per-level pieces, translates of reg(S)) are regions
over one fixed base C; mixing bases raises :class:`RegionMismatchError`.
"""

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger
from sympy import Matrix

from multireg.lattice import (
    in_semigroup,
    minimal_generators,
    pointed_functional,
    semigroup_region,
    shifted_region,
)
from multireg.model.errors import InputError, RegionMismatchError
from multireg.model.region import ResolutionTypeJ, SemigroupRegion
from multireg.model.status import EXACT, merge_exactness, window_marker
from multireg.model.vector import (
    DegreeBox,
    DegreeVector,
    GeneratorSet,
    add,
    combination,
    dot,
    neg,
    normalize_generators,
    sub,
    vec,
)


def make_region(
    base: Iterable[Iterable[int]],
    generators: Iterable[Iterable[int]],
    exactness: str = EXACT,
) -> SemigroupRegion:
    return semigroup_region(base, generators, exactness)


def empty_region(base: Iterable[Iterable[int]]) -> SemigroupRegion:
    return semigroup_region(base, ())


def semigroup_itself(base: Iterable[Iterable[int]]) -> SemigroupRegion:
    base = normalize_generators(base)
    return semigroup_region(base, [(0,) * len(base[0])])


def _common_base(regions: Sequence[SemigroupRegion]) -> GeneratorSet:
    bases = {r.base for r in regions}
    if len(bases) != 1:
        raise RegionMismatchError(f"regions over different semigroups: {sorted(bases)}")
    return bases.pop()


@functools.lru_cache(maxsize=1024)
def shifted(base: GeneratorSet, k: int) -> SemigroupRegion:
    return shifted_region(base, k)


def region_translate(region: SemigroupRegion, d: Iterable[int]) -> SemigroupRegion:
    d = vec(d)
    if len(d) != region.rank:
        raise RegionMismatchError(f"translation {d} does not have rank {region.rank}")
    # translation preserves both minimality and the lexicographic order
    return SemigroupRegion(
        region.base, tuple(add(g, d) for g in region.generators), region.exactness
    )


def region_union(regions: Sequence[SemigroupRegion]) -> SemigroupRegion:
    if not regions:
        raise InputError("union of an empty list of regions")
    base = _common_base(regions)
    generators = [g for r in regions for g in r.generators]
    return SemigroupRegion(
        base,
        minimal_generators(base, generators),
        merge_exactness(*(r.exactness for r in regions)),
    )


def region_sum(a: SemigroupRegion, b: SemigroupRegion) -> SemigroupRegion:
    """Minkowski sum a + b."""
    base = _common_base([a, b])
    generators = [add(g, h) for g in a.generators for h in b.generators]
    return SemigroupRegion(
        base, minimal_generators(base, generators), merge_exactness(a.exactness, b.exactness)
    )


def region_contains_point(region: SemigroupRegion, d: Iterable[int]) -> bool:
    d = vec(d)
    return any(in_semigroup(region.base, sub(d, g)) for g in region.generators)


def region_contains_region(outer: SemigroupRegion, inner: SemigroupRegion) -> bool:
    """True when ``inner`` is a subset of ``outer``; generator membership suffices."""
    _common_base([outer, inner])
    return all(region_contains_point(outer, g) for g in inner.generators)


def region_points(region: SemigroupRegion, window: DegreeBox) -> frozenset[DegreeVector]:
    return frozenset(d for d in window.points() if region_contains_point(region, d))


def is_module_closed(region: SemigroupRegion) -> bool:
    """g + c stays inside for every generator g and every c in C."""
    return all(
        region_contains_point(region, add(g, c))
        for g in region.generators
        for c in region.base
    )


# ---------------------------------------------------------------------------
# intersections


@functools.lru_cache(maxsize=256)
def _free_base(base: GeneratorSet) -> bool:
    return Matrix([list(c) for c in base]).T.rank() == len(base)


def _free_translate_meet(
    base: GeneratorSet, g: DegreeVector, h: DegreeVector
) -> DegreeVector | None:
    """Least element of (g + N C) meet (h + N C) when C is linearly independent."""
    columns = Matrix([list(c) for c in base]).T
    try:
        solution, params = columns.gauss_jordan_solve(Matrix(list(sub(h, g))))
    except ValueError:
        return None
    if params.shape[0]:
        return None
    t = [Fraction(int(x.p), int(x.q)) for x in solution]
    if any(x.denominator != 1 for x in t):
        return None
    return add(g, combination([max(int(x), 0) for x in t], base))


def _points_below(
    base: GeneratorSet, g: DegreeVector, phi: DegreeVector, level: int
) -> Iterable[DegreeVector]:
    """Points g + N C with phi-level at most ``level``."""
    weights = [dot(phi, c) for c in base]
    budget = level - dot(phi, g)
    for total in range(budget + 1):
        for w in _weighted_compositions(weights, total):
            yield add(g, combination(w, base))


def _weighted_compositions(weights: list[int], total: int):
    if not weights:
        if total == 0:
            yield ()
        return
    head, rest = weights[0], weights[1:]
    for t in range(total // head + 1):
        for tail in _weighted_compositions(rest, total - t * head):
            yield (t,) + tail


def region_intersect(a: SemigroupRegion, b: SemigroupRegion) -> SemigroupRegion:
    """Generators of a meet b.

    Exact when C is linearly independent (translates meet in a single
    translate). Otherwise the minimal elements are searched below the
    phi-level max(phi.g) + l * max(phi.c) and the result is marked
    ``window:T``.
    """
    base = _common_base([a, b])
    exactness = merge_exactness(a.exactness, b.exactness)
    if a.is_empty or b.is_empty:
        return SemigroupRegion(base, (), exactness)
    candidates: list[DegreeVector] = []
    pending: list[tuple[DegreeVector, DegreeVector]] = []
    for g in a.generators:
        for h in b.generators:
            if in_semigroup(base, sub(h, g)):
                candidates.append(h)
            elif in_semigroup(base, sub(g, h)):
                candidates.append(g)
            else:
                pending.append((g, h))
    if pending and _free_base(base):
        for g, h in pending:
            meet = _free_translate_meet(base, g, h)
            if meet is not None:
                candidates.append(meet)
        pending = []
    if pending:
        phi = pointed_functional(base)
        level = max(dot(phi, x) for x in a.generators + b.generators) + len(base) * max(
            dot(phi, c) for c in base
        )
        logger.debug(f"[region] window search for {len(pending)} translate pairs up to level {level}")
        for g, h in pending:
            for x in _points_below(base, g, phi, level):
                if in_semigroup(base, sub(x, h)):
                    candidates.append(x)
        exactness = merge_exactness(exactness, window_marker(level))
    return SemigroupRegion(base, minimal_generators(base, candidates), exactness)


def intersect_all(regions: Iterable[SemigroupRegion]) -> SemigroupRegion | None:
    """Meet of a family; None stands for all of G (the empty family)."""
    result: SemigroupRegion | None = None
    for region in regions:
        result = region if result is None else region_intersect(result, region)
    return result


# ---------------------------------------------------------------------------
# reg(J), reg^i(J)


def _check_regs(regS: SemigroupRegion, base: Iterable[Iterable[int]]) -> GeneratorSet:
    base = normalize_generators(base)
    if regS.base != base:
        raise RegionMismatchError(f"reg(S) is a region over {regS.base}, expected {base}")
    return base


def _regs_plus(regS: SemigroupRegion, k: int) -> SemigroupRegion:
    """reg(S) + N C[k]."""
    if k == 0:
        return regS
    return region_sum(regS, shifted(regS.base, k))


def reg_of_J(
    J: ResolutionTypeJ, regS: SemigroupRegion, base: Iterable[Iterable[int]]
) -> SemigroupRegion:
    """reg(J) as the meet of X over J_0 and Y over J_p, p >= 1."""
    base = _check_regs(regS, base)
    if J.is_zero:
        raise InputError("the zero module is regular everywhere; reg(J) is all of G")
    parts: list[SemigroupRegion] = [region_translate(regS, d) for d in J.level(0)]
    for p in range(1, len(J.levels)):
        if not J.level(p):
            continue
        shifted_regs = _regs_plus(regS, 1 - p)
        for d in J.level(p):
            parts.extend(region_translate(shifted_regs, sub(d, c)) for c in base)
    result = intersect_all(parts)
    if result is None:
        raise InputError(f"resolution type {J.levels} has no shifts")
    return result


def reg_of_J_level(
    J: ResolutionTypeJ, regS: SemigroupRegion, base: Iterable[Iterable[int]], i: int
) -> SemigroupRegion:
    """reg^i(J) = {m : m + N C[1-i] inside the meet of d + reg(S) + N C[1-i-p]}."""
    if i < 0:
        raise InputError(f"cohomological index {i} is negative")
    base = _check_regs(regS, base)
    target = intersect_all(
        region_translate(_regs_plus(regS, 1 - i - p), d) for p, d in J.shifts()
    )
    if target is None:
        raise InputError("the zero module is regular everywhere; reg^i(J) is all of G")
    return intersect_all(
        region_translate(target, neg(e)) for e in shifted(base, 1 - i).generators
    )


# ---------------------------------------------------------------------------
# dreg(D)


@dataclass(frozen=True)
class DregEnumeration:
    p: int
    points: tuple[DegreeVector, ...]
    maximal: tuple[DegreeVector, ...]
    closed: bool

    def to_dict(self) -> dict[str, object]:
        return {
            "p": self.p,
            "points": [list(d) for d in self.points],
            "maximal": [list(d) for d in self.maximal],
            "downward_closed": self.closed,
        }


@dataclass(frozen=True)
class DregFamily:
    """The sets K_p of degrees allowed at level p of a resolution when D must stay regular.

    ``D`` is replaced by the N C-module it generates; membership is exact.
    """

    D: SemigroupRegion
    regS: SemigroupRegion

    @classmethod
    def of(
        cls,
        D: SemigroupRegion | Iterable[Iterable[int]],
        regS: SemigroupRegion,
        base: Iterable[Iterable[int]] | None = None,
    ) -> "DregFamily":
        base = _check_regs(regS, base if base is not None else regS.base)
        if not isinstance(D, SemigroupRegion):
            D = semigroup_region(base, D)
        elif D.base != base:
            raise RegionMismatchError(f"D is a region over {D.base}, expected {base}")
        return cls(D, regS)

    @property
    def base(self) -> GeneratorSet:
        return self.regS.base

    def contains_level(self, p: int, i: int, d: Iterable[int]) -> bool:
        """d in K_{p,i}: D + N C[1-i] inside d + reg(S) + N C[1-i-p]."""
        target = region_translate(_regs_plus(self.regS, 1 - i - p), vec(d))
        return all(
            region_contains_point(target, add(g, e))
            for g in self.D.generators
            for e in shifted(self.base, 1 - i).generators
        )

    def contains(self, p: int, d: Iterable[int]) -> bool:
        """d in K_p, from the two conditions K_{p,0} and K_{p,1}."""
        if p < 0:
            raise InputError(f"resolution level {p} is negative")
        d = vec(d)
        if self.D.is_empty:
            return True
        lower = region_translate(_regs_plus(self.regS, -p), d)
        if not region_contains_region(lower, self.D):
            return False
        upper = _regs_plus(self.regS, 1 - p)
        return all(
            region_contains_region(region_translate(upper, sub(d, c)), self.D)
            for c in self.base
        )

    def is_maximal(self, p: int, d: DegreeVector) -> bool:
        return self.contains(p, d) and not any(
            self.contains(p, add(d, c)) for c in self.base
        )

    def maximal_elements(self, p: int, window: DegreeBox) -> tuple[DegreeVector, ...]:
        return tuple(d for d in window.points() if self.is_maximal(p, d))

    def enumerate(self, p: int, window: DegreeBox) -> DregEnumeration:
        points = tuple(d for d in window.points() if self.contains(p, d))
        members = set(points)
        closed = all(
            sub(d, c) in members
            for d in points
            for c in self.base
            if sub(d, c) in window
        )
        if not closed:
            logger.warning(f"[region] K_{p} is not downward closed inside {window}")
        maximal = tuple(
            d for d in points if not any(self.contains(p, add(d, c)) for c in self.base)
        )
        return DregEnumeration(p, points, maximal, closed)


def dreg_membership(
    D: SemigroupRegion | Iterable[Iterable[int]],
    regS: SemigroupRegion,
    base: Iterable[Iterable[int]],
    p: int,
    d: Iterable[int],
) -> bool:
    return DregFamily.of(D, regS, base).contains(p, d)


def dreg_enumerate(
    D: SemigroupRegion | Iterable[Iterable[int]],
    regS: SemigroupRegion,
    base: Iterable[Iterable[int]],
    p: int,
    window: DegreeBox,
) -> DregEnumeration:
    return DregFamily.of(D, regS, base).enumerate(p, window)


def nc_recursion_holds(base: Iterable[Iterable[int]], k: int, window: DegreeBox) -> bool:
    """N C[k-1] against the translates -c_j + N C[k], compared pointwise in a window.

    Equality for k <= 0, containment in the meet for k >= 1.
    """
    base = normalize_generators(base)
    lower = region_points(shifted(base, k - 1), window)
    translates = [region_points(region_translate(shifted(base, k), neg(c)), window) for c in base]
    if k <= 0:
        return lower == frozenset().union(*translates)
    return lower <= frozenset.intersection(*translates)

