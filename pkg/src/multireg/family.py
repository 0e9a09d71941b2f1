"""Families of ideals from a fan: primitive collections and family regularity."""

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from loguru import logger

from multireg import get_caps
from multireg.coarsen import (
    HalfPlaneData,
    RegularityNumber,
    check_nonnegative_on_c,
    halfplane_vanishes,
    min_max_dot,
    vregnum,
)
from multireg.cohomology import region_avoids_cohomology
from multireg.lattice import find_functional
from multireg.model.errors import InputError, PreconditionError, SizeCapError
from multireg.model.fan import FanData
from multireg.model.monomial import Monomial, minimal_monomials, support, variable_ideal
from multireg.model.region import ResolutionTypeJ
from multireg.model.status import Verdict
from multireg.model.vector import DegreeBox, DegreeVector, add, dot, format_vector, vec, zero
from multireg.resolution import (
    DegreeBoundReport,
    SyzygyBox,
    check_degree_bounds,
    level_set_points,
)
from multireg.ring import CoarseningVector, GradedRing, classify_coarsening

type Subset = tuple[int, ...]


@dataclass(frozen=True)
class IdealFamily:
    """Primitive collections P_1..P_t, B_i = (x_k : k in P_i), B_I = sum of B_i over I."""

    n: int
    collections: tuple[frozenset[int], ...]
    coarsenings: Mapping[Subset, DegreeVector] | None = field(default=None, compare=False)

    @property
    def t(self) -> int:
        return len(self.collections)

    def subsets(self) -> list[Subset]:
        """Nonempty I in order of size, then lexicographically."""
        return [
            I for size in range(1, self.t + 1) for I in itertools.combinations(range(self.t), size)
        ]

    def variables_of(self, I: Subset) -> frozenset[int]:
        return frozenset().union(*(self.collections[i] for i in I))

    def ideal(self, I: Subset) -> tuple[Monomial, ...]:
        return variable_ideal(self.variables_of(I), self.n)

    def with_coarsenings(self, coarsenings: Mapping[Subset, Iterable[int]]) -> "IdealFamily":
        return IdealFamily(
            self.n, self.collections, {tuple(I): vec(v) for I, v in coarsenings.items()}
        )

    def to_dict(self, names: tuple[str, ...]) -> dict[str, object]:
        return {
            "collections": [[names[k] for k in sorted(P)] for P in self.collections],
            "ideals": {
                ",".join(str(i + 1) for i in I): [names[k] for k in sorted(self.variables_of(I))]
                for I in self.subsets()
            },
            "coarsenings": {
                ",".join(str(i + 1) for i in I): list(v) for I, v in self.coarsenings.items()
            }
            if self.coarsenings
            else None,
        }


def primitive_collections(fan: FanData) -> IdealFamily:
    """Ray sets outside every cone whose proper subsets all lie in some cone."""
    n = len(fan.rays)
    cap = get_caps().fan_rays
    if n > cap:
        raise SizeCapError(f"fan has {n} rays, more than the cap of {cap}")
    faces = {frozenset()}
    layer = [frozenset()]
    primitive: list[frozenset[int]] = []
    for size in range(1, n + 1):
        next_layer = []
        for face in layer:
            start = max(face) + 1 if face else 0
            for k in range(start, n):
                candidate = face | {k}
                if not all(candidate - {r} in faces for r in candidate):
                    continue
                if fan.in_some_cone(candidate):
                    next_layer.append(candidate)
                else:
                    primitive.append(candidate)
        faces.update(next_layer)
        layer = next_layer
        if not layer:
            break
    logger.debug(f"[family] {len(primitive)} primitive collections among {n} rays")
    return IdealFamily(n, tuple(sorted(primitive, key=lambda P: (len(P), sorted(P)))))


def family_from_ring(ring: GradedRing) -> IdealFamily:
    if ring.fan is None:
        raise InputError(f"ring {ring.name!r} has no [fan] table")
    return primitive_collections(ring.fan)


def is_primitive(fan: FanData, collection: frozenset[int]) -> bool:
    if fan.in_some_cone(collection):
        return False
    return all(fan.in_some_cone(collection - {r}) for r in collection)


def irrelevant_ideal_from_fan(fan: FanData) -> tuple[Monomial, ...]:
    """Products of the variables outside each maximal cone."""
    n = len(fan.rays)
    return minimal_monomials(
        tuple(0 if k in cone else 1 for k in range(n)) for cone in fan.cones
    )


def _minimal_transversals(collections: Sequence[frozenset[int]], n: int) -> tuple[Monomial, ...]:
    """Generators of the intersection of the variable ideals (x_k : k in P_i)."""
    products = {frozenset()}
    for P in collections:
        products = {T | {k} for T in products for k in P}
    return minimal_monomials(tuple(1 if k in T else 0 for k in range(n)) for T in products)


def family_matches_ideal(ring: GradedRing, family: IdealFamily) -> bool:
    """rad(B) equals the intersection of the B_i."""
    radical = minimal_monomials(
        tuple(1 if k in support(m) else 0 for k in range(ring.n)) for m in ring.irrelevant
    )
    return radical == _minimal_transversals(family.collections, ring.n)


# ---------------------------------------------------------------------------
# orthogonal coarsenings


def _check_orthogonal(ring: GradedRing, family: IdealFamily, I: Subset, v: DegreeVector) -> None:
    inside = family.variables_of(I)
    for k, a in enumerate(ring.degrees):
        value = dot(v, a)
        if (k in inside and value <= 0) or (k not in inside and value != 0):
            raise PreconditionError(
                f"v_{{{','.join(str(i + 1) for i in I)}}}={format_vector(v)} is not orthogonal: "
                f"deg({ring.names[k]}) = {value}"
            )


def orthogonal_coarsenings(ring: GradedRing, family: IdealFamily) -> IdealFamily:
    """v_i positive exactly on the variables of B_i, and v_I = sum of v_i over I.

    Refused when some B_i admits no such vector; such families need
    user-supplied coarsenings.
    """
    if family.coarsenings:
        for I in family.subsets():
            if I not in family.coarsenings:
                raise PreconditionError(f"no coarsening supplied for I={list(i + 1 for i in I)}")
            _check_orthogonal(ring, family, I, family.coarsenings[I])
        return family
    singles = []
    for i, P in enumerate(family.collections):
        v = find_functional(
            [ring.degrees[k] for k in sorted(P)],
            [ring.degrees[k] for k in range(ring.n) if k not in P],
        )
        if v is None:
            raise PreconditionError(
                f"no orthogonal coarsening for B_{i + 1} = "
                f"({', '.join(ring.names[k] for k in sorted(P))}) in ring {ring.name!r}"
            )
        singles.append(v)
    coarsenings = {}
    for I in family.subsets():
        v = zero(ring.rank)
        for i in I:
            v = add(v, singles[i])
        _check_orthogonal(ring, family, I, v)
        coarsenings[I] = v
    return family.with_coarsenings(coarsenings)


# ---------------------------------------------------------------------------
# family regularity


def regstar_membership(
    ring: GradedRing,
    family: IdealFamily,
    J: ResolutionTypeJ,
    m: Iterable[int],
    characteristic: int | None = None,
) -> Verdict:
    """m + N C[1-i] inside the vanishing set of H^{i+#I-1}_{B_I}(M) for every I and i."""
    m = vec(m)
    verdicts = []
    for I in family.subsets():
        ideal = family.ideal(I)
        for i in range(ring.n - len(I) + 2):
            verdict = region_avoids_cohomology(
                ring, J, m, 1 - i, i + len(I) - 1, ideal, characteristic
            )
            if verdict is Verdict.NO:
                return Verdict.NO
            verdicts.append(verdict)
    return Verdict.all_of(verdicts)


def regBv_membership(
    ring: GradedRing,
    family: IdealFamily,
    J: ResolutionTypeJ,
    m: Iterable[int],
    characteristic: int | None = None,
) -> Verdict:
    """H^i_{B_I}(M)_d = 0 whenever deg_{v_I}(d) >= deg_{v_I}(m) + (1-i) m(1,i)."""
    m = vec(m)
    if not family.coarsenings:
        raise PreconditionError("family has no coarsening vectors v_I")
    for I in family.subsets():
        v = family.coarsenings[I]
        check_nonnegative_on_c(v, ring.config_c)
        mm = min_max_dot(v, ring.config_c)
        ideal = family.ideal(I)
        for i in range(ring.n + 1):
            threshold = dot(v, m) + (1 - i) * mm.select(1, i)
            plane = HalfPlaneData(v, Fraction(threshold))
            if halfplane_vanishes(ring, J, plane, i, ideal, characteristic) is Verdict.NO:
                logger.debug(
                    f"[family] I={[x + 1 for x in I]} i={i}: no vanishing on v.d >= {threshold}"
                )
                return Verdict.NO
    return Verdict.YES


# ---------------------------------------------------------------------------
# syzygy bounds from a family


@dataclass(frozen=True)
class VresReport:
    m: DegreeVector
    family: IdealFamily
    bounds: Mapping[Subset, int]
    regularity_numbers: Mapping[Subset, RegularityNumber]
    membership: Verdict
    inequality_failures: tuple[tuple[Subset, int], ...]
    degree_bounds: DegreeBoundReport | None
    level_sets: tuple[tuple[DegreeVector, ...], ...] = ()

    @property
    def verdict(self) -> Verdict:
        if self.membership is not Verdict.YES:
            return self.membership
        if self.inequality_failures:
            return Verdict.NO
        return Verdict.of(self.degree_bounds is not None and self.degree_bounds.passed)

    def to_dict(self, names: tuple[str, ...]) -> dict[str, object]:
        def key(I: Subset) -> str:
            return ",".join(str(i + 1) for i in I)

        return {
            "m": list(self.m),
            "family": self.family.to_dict(names),
            "bounds": {key(I): b for I, b in self.bounds.items()},
            "regularity_numbers": {
                key(I): r.to_dict() for I, r in self.regularity_numbers.items()
            },
            "membership": str(self.membership),
            "inequality_failures": [{"I": key(I), "i": i} for I, i in self.inequality_failures],
            "degree_bounds": self.degree_bounds.to_dict() if self.degree_bounds else None,
            "level_sets": [[list(d) for d in level] for level in self.level_sets],
            "verdict": str(self.verdict),
        }


def vres_pipeline(
    ring: GradedRing,
    family: IdealFamily,
    J: ResolutionTypeJ,
    m: Iterable[int],
    bounds: Mapping[Subset, int],
    window: DegreeBox | None = None,
    characteristic: int | None = None,
) -> VresReport:
    """Certify m in reg_{B_*,v_*,C}(M), check the b_I inequalities, then bound the syzygies.

    Raises :class:`PreconditionError` for non-orthogonal families and for
    b_I below the (certified) v_I regularity number.
    """
    m = vec(m)
    family = orthogonal_coarsenings(ring, family)
    subsets = family.subsets()
    missing = [I for I in subsets if I not in bounds]
    if missing:
        raise InputError(f"no bound b_I for I in {[[i + 1 for i in I] for I in missing]}")
    coarsenings: dict[Subset, CoarseningVector] = {
        I: classify_coarsening(ring, family.coarsenings[I]) for I in subsets
    }
    numbers = {}
    for I in subsets:
        number = vregnum(ring, J, coarsenings[I], characteristic)
        if bounds[I] < number.value:
            kind = "certified upper bound" if number.upper_bound else "regularity number"
            raise PreconditionError(
                f"b_{{{','.join(str(i + 1) for i in I)}}} = {bounds[I]} is below the "
                f"{kind} {number.value}"
            )
        numbers[I] = number

    membership = regBv_membership(ring, family, J, m, characteristic)
    failures = []
    for I in subsets:
        cv = coarsenings[I]
        mm = min_max_dot(cv.v, ring.config_c)
        for i in range(ring.n + 1):
            if cv.degree(m) > bounds[I] + (1 - i) * (cv.c_v - mm.select(1, i)):
                failures.append((I, i))
    degree_bounds = None
    level_sets: tuple[tuple[DegreeVector, ...], ...] = ()
    if membership is Verdict.YES and not failures:
        ordered = [coarsenings[I] for I in subsets]
        degree_bounds = check_degree_bounds(J, ordered, [bounds[I] for I in subsets])
        if window is not None:
            box = SyzygyBox(tuple(ordered), tuple(bounds[I] for I in subsets))
            level_sets = tuple(
                level_set_points(ring, J.level(0), box, p, window) for p in range(len(J.levels))
            )
    elif failures:
        shown = [([x + 1 for x in I], i) for I, i in failures]
        logger.info(f"[family] b_I inequalities fail at {shown}")
    return VresReport(
        m,
        family,
        dict(bounds),
        numbers,
        membership,
        tuple(failures),
        degree_bounds,
        level_sets,
    )
