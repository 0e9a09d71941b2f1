"""Reference rings and the committed golden scenarios.

Each scenario recomputes a handful of values from scratch and compares them
with the expectations stored here; ``multireg examples`` prints the diff.
"""

import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from loguru import logger

from multireg.cohomology import coh_free_piece, regS_region
from multireg.family import family_from_ring, orthogonal_coarsenings, regBv_membership
from multireg.lattice import semigroup_region
from multireg.model.errors import PreconditionError
from multireg.model.fan import FanData
from multireg.model.region import ResolutionTypeJ
from multireg.model.status import Verdict
from multireg.model.vector import DegreeBox, dot, zero
from multireg.region import DregFamily, reg_of_J
from multireg.ring import GradedRing, build_ring

_LETTERS = "xyzuvw"

# ---------------------------------------------------------------------------
# reference rings


def product_of_projective_spaces(dims: Sequence[int], name: str | None = None) -> GradedRing:
    """Cox ring of P^{a_1} x ... x P^{a_s}: variable k of factor f has degree e_f."""
    rank = len(dims)
    dim_total = sum(dims)
    variables = []
    rays = []
    factor_rays: list[list[int]] = []
    offset = 0
    for f, a in enumerate(dims):
        degree = tuple(1 if g == f else 0 for g in range(rank))
        indices = []
        for k in range(a + 1):
            variables.append((f"{_LETTERS[f]}{k}", degree))
            ray = [0] * dim_total
            if k < a:
                ray[offset + k] = 1
            else:
                for j in range(a):
                    ray[offset + j] = -1
            indices.append(len(rays))
            rays.append(tuple(ray))
        factor_rays.append(indices)
        offset += a
    cones = tuple(
        frozenset(itertools.chain.from_iterable(choice))
        for choice in itertools.product(
            *(itertools.combinations(indices, a) for indices, a in zip(factor_rays, dims))
        )
    )
    fan = FanData(tuple(rays), cones)
    irrelevant = [
        tuple(0 if k in cone else 1 for k in range(len(variables))) for cone in cones
    ]
    config = [tuple(1 if g == f else 0 for g in range(rank)) for f in range(rank)]
    label = name or "x".join(f"p{a}" for a in dims)
    return build_ring(label, variables, irrelevant, config, fan=fan)


def projective_space(n: int) -> GradedRing:
    return product_of_projective_spaces([n], name=f"p{n}")


def weighted_projective_space(weights: Sequence[int]) -> GradedRing:
    n = len(weights)
    c = math.lcm(*weights)
    return build_ring(
        "weighted(" + ",".join(str(a) for a in weights) + ")",
        [(f"x{k}", (a,)) for k, a in enumerate(weights)],
        [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)],
        [(c,)],
    )


def hirzebruch_surface(t: int) -> GradedRing:
    """x1, x3 of degree (1,0); x2 of degree (-t,1); x4 of degree (0,1)."""
    rays = ((1, 0), (0, 1), (-1, t), (0, -1))
    cones = (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}), frozenset({3, 0}))
    return build_ring(
        f"hirzebruch_t{t}",
        [("x1", (1, 0)), ("x2", (-t, 1)), ("x3", (1, 0)), ("x4", (0, 1))],
        ["x1*x2", "x1*x4", "x2*x3", "x3*x4"],
        [(1, 0), (0, 1)],
        fan=FanData(rays, cones),
    )


# ---------------------------------------------------------------------------
# scenarios


def _vectors(vectors) -> list[list[int]]:
    return [list(v) for v in vectors]


def classical_values() -> dict[str, object]:
    ring = projective_space(2)
    base = ring.config_c
    computed = regS_region(ring, DegreeBox.cube(1, -5, 5))
    regS = semigroup_region(base, [(0,)])
    values: dict[str, object] = {
        "regS": _vectors(computed.generators),
        "regS_exactness": computed.exactness,
    }
    for m in (-2, 0, 3):
        J = ResolutionTypeJ.of([[(m + p,)] for p in range(7)])
        values[f"reg_of_J[{m}]"] = _vectors(reg_of_J(J, regS, base).generators)
        family = DregFamily.of([(m,)], regS)
        window = DegreeBox((m - 5,), (m + 10,))
        values[f"dreg_maximal[{m}]"] = [
            _vectors(family.maximal_elements(p, window)) for p in range(7)
        ]
    return values


WEIGHTS = ((1, 2), (1, 1, 2), (2, 3, 5))


def weighted_values() -> dict[str, object]:
    values: dict[str, object] = {}
    for weights in WEIGHTS:
        ring = weighted_projective_space(weights)
        n, total = len(weights), sum(weights)
        c = ring.config_c[0][0]
        S = [zero(1)]
        key = ",".join(str(a) for a in weights)
        values[f"top_vanishes_above[{key}]"] = all(
            coh_free_piece(ring, S, n, (w,)) == 0 for w in range(-total + 1, -total + 61)
        )
        values[f"top_at_bound[{key}]"] = coh_free_piece(ring, S, n, (-total,))
        region = regS_region(ring, DegreeBox((-10,), (3 * c + 10,)))
        values[f"regS[{key}]"] = _vectors(region.generators)
        values[f"regS_exactness[{key}]"] = region.exactness
    return values


def multiprojective_values() -> dict[str, object]:
    values: dict[str, object] = {}
    for dims in ((1, 1), (1, 2)):
        ring = product_of_projective_spaces(dims)
        family = orthogonal_coarsenings(ring, family_from_ring(ring))
        window = DegreeBox.cube(ring.rank, -5, 5)
        S = ResolutionTypeJ.free([zero(ring.rank)])
        violations = 0
        for I in family.subsets():
            v = family.coarsenings[I]
            ideal = family.ideal(I)
            for i in range(ring.n + 1):
                for d in window.points():
                    if dot(v, d) >= 1 - i and coh_free_piece(ring, [zero(ring.rank)], i, d, ideal):
                        violations += 1
        certified = [
            d for d in window.points() if regBv_membership(ring, family, S, d) is Verdict.YES
        ]
        orthant = [d for d in window.points() if all(x >= 0 for x in d)]
        values[f"vanishing_violations[{ring.name}]"] = violations
        values[f"regBv_is_orthant[{ring.name}]"] = certified == orthant
        values[f"collections[{ring.name}]"] = [
            [ring.names[k] for k in sorted(P)] for P in family.collections
        ]
    return values


def hirzebruch_values() -> dict[str, object]:
    values: dict[str, object] = {}
    for t in range(4):
        ring = hirzebruch_surface(t)
        region = regS_region(ring, DegreeBox.cube(2, -6, 6))
        values[f"regS[t={t}]"] = _vectors(region.generators)
        values[f"regS_exactness[t={t}]"] = region.exactness
        family = family_from_ring(ring)
        values[f"collections[t={t}]"] = [
            [ring.names[k] for k in sorted(P)] for P in family.collections
        ]
        try:
            orthogonal_coarsenings(ring, family)
            values[f"orthogonal[t={t}]"] = True
        except PreconditionError:
            values[f"orthogonal[t={t}]"] = False
    return values


EXPECTED: dict[str, dict[str, object]] = {
    "classical": {
        "regS": [[0]],
        "regS_exactness": "exact",
        **{f"reg_of_J[{m}]": [[m]] for m in (-2, 0, 3)},
        **{f"dreg_maximal[{m}]": [[[m + p]] for p in range(7)] for m in (-2, 0, 3)},
    },
    "weighted": {
        "top_vanishes_above[1,2]": True,
        "top_at_bound[1,2]": 1,
        "regS[1,2]": [[0], [1]],
        "regS_exactness[1,2]": "exact",
        "top_vanishes_above[1,1,2]": True,
        "top_at_bound[1,1,2]": 1,
        "regS[1,1,2]": [[1], [2]],
        "regS_exactness[1,1,2]": "exact",
        "top_vanishes_above[2,3,5]": True,
        "top_at_bound[2,3,5]": 1,
        "regS[2,3,5]": [[49]] + [[k] for k in range(51, 81) if k != 79],
        "regS_exactness[2,3,5]": "exact",
    },
    "multiprojective": {
        "vanishing_violations[p1xp1]": 0,
        "regBv_is_orthant[p1xp1]": True,
        "collections[p1xp1]": [["x0", "x1"], ["y0", "y1"]],
        "vanishing_violations[p1xp2]": 0,
        "regBv_is_orthant[p1xp2]": True,
        "collections[p1xp2]": [["x0", "x1"], ["y0", "y1", "y2"]],
    },
    "hirzebruch": {
        **{f"regS[t={t}]": [[0, 0]] for t in (0, 1)},
        **{f"regS[t={t}]": [[0, 1], [t - 1, 0]] for t in (2, 3)},
        **{f"regS_exactness[t={t}]": "exact" for t in range(4)},
        **{f"collections[t={t}]": [["x1", "x3"], ["x2", "x4"]] for t in range(4)},
        "orthogonal[t=0]": True,
        **{f"orthogonal[t={t}]": False for t in (1, 2, 3)},
    },
}

SCENARIOS: dict[str, Callable[[], dict[str, object]]] = {
    "classical": classical_values,
    "weighted": weighted_values,
    "multiprojective": multiprojective_values,
    "hirzebruch": hirzebruch_values,
}


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    computed: dict[str, object]
    expected: dict[str, object]

    @property
    def differences(self) -> list[str]:
        keys = sorted(set(self.computed) | set(self.expected))
        return [
            f"{key}: expected {self.expected.get(key)!r}, got {self.computed.get(key)!r}"
            for key in keys
            if self.computed.get(key) != self.expected.get(key)
        ]

    @property
    def passed(self) -> bool:
        return not self.differences

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "passed": self.passed,
            "differences": self.differences,
            "values": self.computed,
        }


def run_scenario(name: str) -> ScenarioResult:
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}, choose from {sorted(SCENARIOS)}")
    logger.info(f"[golden] running scenario {name}")
    return ScenarioResult(name, SCENARIOS[name](), EXPECTED[name])


def run_all() -> list[ScenarioResult]:
    return [run_scenario(name) for name in SCENARIOS]
