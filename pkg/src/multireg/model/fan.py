from dataclasses import dataclass

from multireg.model.vector import DegreeVector


@dataclass(frozen=True)
class FanData:
    """Rays n_k in N (ray k belongs to variable x_k) and maximal cones as ray-index sets."""

    rays: tuple[DegreeVector, ...]
    cones: tuple[frozenset[int], ...]
    simplicial: bool = True

    def in_some_cone(self, rays: frozenset[int]) -> bool:
        return any(rays <= cone for cone in self.cones)

    def to_dict(self) -> dict[str, object]:
        return {
            "rays": [list(r) for r in self.rays],
            "cones": [sorted(c) for c in self.cones],
            "simplicial": self.simplicial,
        }
