"""Invariant suites run by ``multireg selftest``."""

import itertools
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field

from loguru import logger

from multireg import get_caps
from multireg.coarsen import nc_halfplane_bound
from multireg.cohomology import (
    MonomialModule,
    OracleResult,
    PatternComplex,
    cech_oracle_piece,
    coh_free_piece,
    mv_vanishing,
    regS_region,
)
from multireg.family import family_from_ring, orthogonal_coarsenings, regBv_membership
from multireg.golden import (
    hirzebruch_surface,
    product_of_projective_spaces,
    projective_space,
    weighted_projective_space,
)
from multireg.lattice import semigroup_region, shifted_region
from multireg.model.region import ResolutionTypeJ
from multireg.model.status import EXACT, Verdict
from multireg.model.vector import DegreeBox, DegreeVector, add, dot, zero
from multireg.region import (
    DregFamily,
    is_module_closed,
    nc_recursion_holds,
    reg_of_J,
    reg_of_J_level,
    region_contains_region,
    region_intersect,
    region_points,
)
from multireg.resolution import (
    check_degree_bounds,
    euler_hilbert,
    extract_type_J,
    hilbert_function,
    minimalize,
    taylor_complex,
    validate_complex,
)
from multireg.ring import GradedRing, classify_coarsening


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(message)

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:20],
            "seconds": round(self.seconds, 2),
        }


_BASES = (((1,),), ((2,), (3,)), ((1, 0), (0, 1)), ((1, 0), (1, 1)))


def semigroup_suite(result: SuiteResult) -> None:
    """N C[k-1] versus translates of N C[k], and half-plane containment of N C[k]."""
    for base in _BASES:
        rank = len(base[0])
        window = DegreeBox.cube(rank, -6, 6)
        for k in range(-3, 4):
            result.check(
                nc_recursion_holds(base, k, window), f"recursion fails for C={base}, k={k}"
            )
            region = shifted_region(base, k)
            result.check(is_module_closed(region), f"N C[{k}] not closed for C={base}")
            v = (1,) * rank
            bound = nc_halfplane_bound(v, region.base, k)
            result.check(
                all(dot(v, x) >= bound for x in region_points(region, window)),
                f"N C[{k}] leaves the half-plane v.x >= {bound} for C={base}",
            )


def _random_J(rng: random.Random, rank: int, levels: int) -> ResolutionTypeJ:
    return ResolutionTypeJ.of(
        [
            [tuple(rng.randint(-2, 3) + p for _ in range(rank)) for _ in range(rng.randint(1, 2))]
            for p in range(levels)
        ]
    )


def _reference_rings() -> list[tuple[GradedRing, DegreeBox]]:
    weighted = weighted_projective_space((1, 1, 2))
    return [
        (projective_space(1), DegreeBox.cube(1, -4, 4)),
        (product_of_projective_spaces([1, 1]), DegreeBox.cube(2, -4, 4)),
        (hirzebruch_surface(2), DegreeBox.cube(2, -6, 6)),
        (weighted, DegreeBox((-10,), (16,))),
    ]


def correspondence_suite(result: SuiteResult, pairs: int = 20, seed: int = 7) -> None:
    rng = random.Random(seed)
    for ring, regs_window in _reference_rings():
        base, rank = ring.config_c, ring.rank
        regS = regS_region(ring, regs_window)
        result.check(regS.exactness == EXACT, f"{ring.name}: reg(S) is {regS.exactness}")
        window = DegreeBox.cube(rank, -4, 6)
        for _ in range(pairs):
            J = _random_J(rng, rank, rng.randint(1, 3))
            bigger = ResolutionTypeJ.of(
                [list(level) + [tuple(x + 1 for x in level[0])] for level in J.levels]
            )
            region = reg_of_J(J, regS, base)
            result.check(is_module_closed(region), f"{ring.name}: reg(J) not closed for {J.levels}")
            result.check(
                region_contains_region(region, reg_of_J(bigger, regS, base)),
                f"{ring.name}: reg(J) does not contain reg(J') for J' above {J.levels}",
            )
            level_meet = region_intersect(
                reg_of_J_level(J, regS, base, 0), reg_of_J_level(J, regS, base, 1)
            )
            result.check(
                region_points(level_meet, window) == region_points(region, window),
                f"{ring.name}: reg(J) differs from reg^0 meet reg^1 for {J.levels}",
            )
            family = DregFamily.of(region, regS, base)
            for p, d in J.shifts():
                result.check(
                    family.contains(p, d), f"{ring.name}: {d} at level {p} not in dreg(reg(J))"
                )

            D = [tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(rng.randint(1, 2))]
            D_small = semigroup_region(base, [add(g, base[0]) for g in D])
            small, large = DregFamily.of(D_small, regS, base), DregFamily.of(D, regS, base)
            for p in range(3):
                for d in window.points():
                    if large.contains(p, d):
                        result.check(
                            small.contains(p, d),
                            f"{ring.name}: dreg not antitone at p={p}, d={d}, D={D}",
                        )
            levels = []
            for p in range(3):
                allowed = large.enumerate(p, window).maximal
                levels.append(list(allowed[:2]))
            if all(levels):
                J_from_D = ResolutionTypeJ.of(levels)
                result.check(
                    region_contains_region(reg_of_J(J_from_D, regS, base), large.D),
                    f"{ring.name}: D={D} not inside reg(J) for J inside dreg(D)",
                )


def pattern_suite(result: SuiteResult) -> None:
    for ring in (projective_space(2), product_of_projective_spaces([1, 1]), hirzebruch_surface(2)):
        universe = range(ring.n)
        for size in range(ring.n + 1):
            for sigma in itertools.combinations(universe, size):
                complex_ = PatternComplex.build(sigma, ring.irrelevant)
                h = complex_.cohomology()
                result.check(
                    complex_.squares_to_zero(), f"{ring.name}: pattern {sigma} has d^2 != 0"
                )
                result.check(
                    complex_.euler_characteristic() == sum((-1) ** i * x for i, x in enumerate(h)),
                    f"{ring.name}: Euler characteristic mismatch for pattern {sigma}",
                )


def _conclusive_oracle(
    ring: GradedRing, module: MonomialModule, i: int, d: DegreeVector, limit: int = 48
) -> OracleResult:
    """Widen the fine-degree box until no contributing degree touches its boundary."""
    bound = get_caps().oracle_bound
    oracle = cech_oracle_piece(ring, module, i, d, bound)
    while oracle.dimension is None and bound < limit:
        bound = min(2 * bound, limit)
        oracle = cech_oracle_piece(ring, module, i, d, bound)
    return oracle


def oracle_suite(result: SuiteResult) -> None:
    for ring in (projective_space(1), product_of_projective_spaces([1, 1]), hirzebruch_surface(2)):
        window = DegreeBox.cube(ring.rank, -3, 3)
        shifts = [zero(ring.rank)] + [tuple(k for _ in range(ring.rank)) for k in (-1, 1, 2)]
        for e in shifts:
            module = MonomialModule.free([e])
            for d in window.points():
                for i in range(len(ring.irrelevant) + 1):
                    oracle = _conclusive_oracle(ring, module, i, d)
                    if oracle.dimension is None:
                        result.check(
                            False, f"{ring.name}: oracle undecided for H^{i} of S(-{e}) at {d}"
                        )
                        continue
                    exact = coh_free_piece(ring, [e], i, d)
                    result.check(
                        exact == oracle.dimension,
                        f"{ring.name}: H^{i} of S(-{e}) at {d}: {exact} vs oracle {oracle.dimension}",
                    )


def mayer_vietoris_suite(result: SuiteResult) -> None:
    for ring in (product_of_projective_spaces([1, 1]), product_of_projective_spaces([2, 1])):
        family = family_from_ring(ring)
        ideals = [family.ideal((i,)) for i in range(family.t)]
        for d in DegreeBox.cube(ring.rank, -4, 4).points():
            for i in range(ring.n + 1):
                if mv_vanishing(ring, ideals, i, d):
                    value = coh_free_piece(ring, [zero(ring.rank)], i, d)
                    result.check(value == 0, f"{ring.name}: H^{i} at {d} certified but is {value}")


def resolution_suite(result: SuiteResult, samples: int = 10, seed: int = 11) -> None:
    ring = product_of_projective_spaces([1, 1])
    rng = random.Random(seed)
    window = DegreeBox.cube(2, 0, 4)
    for _ in range(samples):
        ideal = [
            tuple(rng.randint(0, 2) for _ in range(ring.n)) for _ in range(rng.randint(1, 5))
        ]
        ideal = [m for m in ideal if any(m)] or [(1, 0, 1, 0)]
        complex_ = taylor_complex(ring, ideal)
        result.check(not validate_complex(complex_), f"Taylor complex of {ideal} is invalid")
        minimal = minimalize(complex_)
        result.check(not validate_complex(minimal), f"minimalized complex of {ideal} is invalid")
        J = extract_type_J(minimal)
        result.check(extract_type_J(minimalize(minimal)) == J, f"minimalize not idempotent on {ideal}")
        shuffled = list(ideal)
        rng.shuffle(shuffled)
        result.check(
            extract_type_J(minimalize(taylor_complex(ring, shuffled))) == J,
            f"shift multisets depend on generator order for {ideal}",
        )
        for d in window.points():
            result.check(
                euler_hilbert(ring, J, d) == hilbert_function(ring, ideal, d),
                f"Betti numbers of {ideal} miss the Hilbert function at {d}",
            )


def syzygy_box_suite(result: SuiteResult, samples: int = 10, seed: int = 3) -> None:
    """Minimal resolutions of S/I respect the box b_I = v_I . p for every p in reg_{B*,v*}."""
    ring = product_of_projective_spaces([1, 1])
    family = orthogonal_coarsenings(ring, family_from_ring(ring))
    subsets = family.subsets()
    coarsenings = [classify_coarsening(ring, family.coarsenings[I]) for I in subsets]
    rng = random.Random(seed)
    window = DegreeBox.cube(2, -2, 5)
    for _ in range(samples):
        ideal = [
            tuple(rng.randint(0, 2) for _ in range(ring.n)) for _ in range(rng.randint(1, 5))
        ]
        ideal = [m for m in ideal if any(m)] or [(1, 0, 1, 0)]
        J = extract_type_J(minimalize(taylor_complex(ring, ideal)))
        for p in window.points():
            if regBv_membership(ring, family, J, p) is not Verdict.YES:
                continue
            bounds = [dot(family.coarsenings[I], p) for I in subsets]
            result.check(
                check_degree_bounds(J, coarsenings, bounds).passed,
                f"resolution of {ideal} leaves the box of {p}",
            )


SUITES: dict[str, Callable[[SuiteResult], None]] = {
    "semigroups": semigroup_suite,
    "correspondence": correspondence_suite,
    "patterns": pattern_suite,
    "oracle": oracle_suite,
    "mayer-vietoris": mayer_vietoris_suite,
    "resolutions": resolution_suite,
    "syzygy-boxes": syzygy_box_suite,
}


def run_selftest(names: list[str] | None = None) -> list[SuiteResult]:
    results = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}, choose from {sorted(SUITES)}")
        result = SuiteResult(name)
        started = time.perf_counter()
        SUITES[name](result)
        result.seconds = time.perf_counter() - started
        level = "INFO" if result.passed else "ERROR"
        logger.log(
            level,
            f"[selftest] {name}: {result.checks} checks, {len(result.failures)} failures "
            f"in {result.seconds:.1f}s",
        )
        results.append(result)
    return results
