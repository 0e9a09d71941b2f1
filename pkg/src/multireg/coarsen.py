"""Coarsened regularity: reg_v, the regularity number and half-plane criteria.

A coarsening vector v collapses the G-grading to Z by d -> v.d. The
v-graded questions are answered over the ring of v-positive variables,
with the degree-zero variables treated as coefficients.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from multireg import get_caps
from multireg.cohomology import reg_membership, support_semigroups, top_index
from multireg.model.errors import InputError, PreconditionError
from multireg.model.monomial import Monomial
from multireg.model.region import ResolutionTypeJ
from multireg.model.status import Verdict
from multireg.model.vector import DegreeVector, GeneratorSet, dot, format_vector, vec
from multireg.ring import CoarseningVector, GradedRing, classify_coarsening, coarsened_ring

# ---------------------------------------------------------------------------
# half-planes


@dataclass(frozen=True)
class HalfPlaneData:
    """P+ = {v.x >= b}, P- = {v.x <= b} and the line L = {v.x = b}."""

    v: DegreeVector
    b: Fraction

    def in_plus(self, x: Iterable[int]) -> bool:
        return dot(self.v, x) >= self.b

    def in_minus(self, x: Iterable[int]) -> bool:
        return dot(self.v, x) <= self.b

    def on_line(self, x: Iterable[int]) -> bool:
        return dot(self.v, x) == self.b

    def to_dict(self) -> dict[str, object]:
        return {"v": list(self.v), "b": str(self.b)}


@dataclass(frozen=True)
class MinMaxDot:
    minimum: int
    maximum: int

    def select(self, k: int, i: int) -> int:
        """m(k, i): the maximum when k - i < 0, else the minimum."""
        return self.maximum if k - i < 0 else self.minimum


def min_max_dot(v: Iterable[int], config_c: GeneratorSet) -> MinMaxDot:
    v = vec(v)
    dots = [dot(v, c) for c in config_c]
    return MinMaxDot(min(dots), max(dots))


def nc_halfplane_bound(v: Iterable[int], config_c: GeneratorSet, k: int) -> int:
    """b with N C[k] inside P+_{v,b}."""
    mm = min_max_dot(v, config_c)
    return k * mm.minimum if k >= 0 else k * mm.maximum


def check_nonnegative_on_c(v: DegreeVector, config_c: GeneratorSet) -> None:
    for j, c in enumerate(config_c):
        if dot(v, c) < 0:
            raise PreconditionError(
                f"v={format_vector(v)} has v.c_{j} = {dot(v, c)} < 0 for c_{j}={format_vector(c)}"
            )


def halfplane_vanishes(
    ring: GradedRing,
    J: ResolutionTypeJ,
    plane: HalfPlaneData,
    i: int,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Verdict:
    """H^i_B(M)_d = 0 for every d in P+ of ``plane``.

    Each support piece is offset + N(directions); it reaches P+ iff some
    direction increases v.x or the offset already lies in P+.
    """
    ideal = tuple(tuple(m) for m in ideal) if ideal is not None else None
    for p, shift in J.shifts():
        for piece in support_semigroups(ring, i + p, ideal, characteristic).pieces:
            start = tuple(a + b for a, b in zip(shift, piece.offset))
            if plane.in_plus(start) or any(dot(plane.v, u) > 0 for u in piece.directions):
                return Verdict.NO
    return Verdict.YES


@dataclass(frozen=True)
class HalfPlaneStep:
    index: int
    threshold: int
    verdict: Verdict


@dataclass(frozen=True)
class HalfPlaneConclusion:
    """Per index i, whether m + N C[k - i] lies in the vanishing set of H^i_B(M)."""

    m: DegreeVector
    v: DegreeVector
    k: int
    steps: tuple[HalfPlaneStep, ...]
    exact: bool  # answers for free modules are exact, otherwise NO means uncertified

    @property
    def in_reg(self) -> Verdict | None:
        """m in reg(M), concluded only for k = 1."""
        if self.k != 1:
            return None
        return Verdict.all_of(s.verdict for s in self.steps)

    def to_dict(self) -> dict[str, object]:
        return {
            "m": list(self.m),
            "v": list(self.v),
            "k": self.k,
            "steps": [
                {"i": s.index, "threshold": s.threshold, "verdict": str(s.verdict)}
                for s in self.steps
            ],
            "in_reg": str(self.in_reg) if self.in_reg is not None else None,
        }


def halfplane_implies_reg(
    ring: GradedRing,
    J: ResolutionTypeJ,
    m: Iterable[int],
    v: Iterable[int],
    k: int = 1,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> HalfPlaneConclusion:
    """Vanishing of H^i_B(M) on deg_v(d) >= deg_v(m) + (k - i) m(k, i) gives m + N C[k-i] in Z^i."""
    m, v = vec(m), vec(v)
    check_nonnegative_on_c(v, ring.config_c)
    mm = min_max_dot(v, ring.config_c)
    steps = []
    for i in range(top_index(ring, ideal) + 1):
        threshold = dot(v, m) + (k - i) * mm.select(k, i)
        verdict = halfplane_vanishes(
            ring, J, HalfPlaneData(v, Fraction(threshold)), i, ideal, characteristic
        )
        steps.append(HalfPlaneStep(i, threshold, verdict))
    return HalfPlaneConclusion(m, v, k, tuple(steps), J.is_free)


# ---------------------------------------------------------------------------
# v-graded regularity


def _as_coarsening(ring: GradedRing, v: DegreeVector | CoarseningVector) -> CoarseningVector:
    return v if isinstance(v, CoarseningVector) else classify_coarsening(ring, vec(v))


def coarsened_type(J: ResolutionTypeJ, cv: CoarseningVector) -> ResolutionTypeJ:
    return ResolutionTypeJ.of([[(cv.degree(d),) for d in level] for level in J.levels])


def vreg_membership(
    ring: GradedRing,
    J: ResolutionTypeJ,
    v: DegreeVector | CoarseningVector,
    p: int,
    characteristic: int | None = None,
) -> Verdict:
    """p in reg_v(M), with the ideal of v-positive variables and C = {c_v}."""
    cv = _as_coarsening(ring, v)
    coarse = coarsened_ring(ring, cv)
    return reg_membership(coarse, coarsened_type(J, cv), (p,), characteristic=characteristic)


@dataclass(frozen=True)
class RegularityNumber:
    value: int | float  # -math.inf for the zero module
    upper_bound: bool

    def to_dict(self) -> dict[str, object]:
        value = "-inf" if self.value == -math.inf else self.value
        return {"value": value, "upper_bound": self.upper_bound}


def _scan_start(coarse: GradedRing, Jc: ResolutionTypeJ, c_v: int) -> int | None:
    """Least p at which the top-index vanishing holds for every resolution term.

    Over the v-positive variables only H^n of the free module is nonzero, and
    it lives in degrees <= -sum(deg x_i).
    """
    n = coarse.n
    total = sum(d[0] for d in coarse.degrees)
    candidates = [
        e[0] - total + 1 + (n - 1 - level) * c_v for level, e in Jc.shifts() if level <= n
    ]
    return max(candidates) if candidates else None


def vregnum(
    ring: GradedRing,
    J: ResolutionTypeJ,
    v: DegreeVector | CoarseningVector,
    characteristic: int | None = None,
) -> RegularityNumber:
    """The least p with q in reg_v(M) for every q >= p.

    Exact for free modules; for longer resolutions it is the least certified
    p, an upper bound for the true number.
    """
    upper_bound = not J.is_free
    if J.is_zero:
        return RegularityNumber(-math.inf, False)
    cv = _as_coarsening(ring, v)
    coarse = coarsened_ring(ring, cv)
    Jc = coarsened_type(J, cv)
    start = _scan_start(coarse, Jc, cv.c_v)
    if start is None:
        return RegularityNumber(-math.inf, upper_bound)
    limit = get_caps().scan_limit

    def member(p: int) -> bool:
        return reg_membership(coarse, Jc, (p,), characteristic=characteristic) is Verdict.YES

    p = start
    steps = 0
    while not member(p):
        p += 1
        steps += 1
        if steps > limit:
            raise PreconditionError(
                f"no certified v-regular degree found within {limit} steps of {start}"
            )
    while member(p - 1):
        p -= 1
        steps += 1
        if steps > limit:
            logger.warning(
                f"[coarsen] vregnum scan for v={format_vector(cv.v)} hit the scan limit at {p}"
            )
            break
    return RegularityNumber(p, upper_bound)


def bstar_regular(
    ring: GradedRing,
    J: ResolutionTypeJ,
    v_list: Sequence[DegreeVector | CoarseningVector],
    b_list: Sequence[int],
    characteristic: int | None = None,
) -> Verdict:
    """b_j in reg_{v_j}(M) for every j."""
    if len(v_list) != len(b_list):
        raise InputError(f"{len(v_list)} coarsening vectors but {len(b_list)} bounds")
    return Verdict.all_of(
        vreg_membership(ring, J, v, b, characteristic) for v, b in zip(v_list, b_list)
    )
