"""Region and resolution-type value objects."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from multireg.model.errors import InputError
from multireg.model.status import EXACT
from multireg.model.vector import DegreeVector, GeneratorSet, format_vector, parse_vectors, vec


@dataclass(frozen=True)
class SemigroupRegion:
    """The N C-module union of g + N C over ``generators``.

    Generators are kept minimal and sorted by the constructors in
    :mod:`multireg.region`; build regions through them rather than directly.
    """

    base: GeneratorSet
    generators: tuple[DegreeVector, ...]
    exactness: str = EXACT

    @property
    def rank(self) -> int:
        return len(self.base[0])

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def to_dict(self) -> dict[str, object]:
        return {
            "base": [list(c) for c in self.base],
            "generators": [list(g) for g in self.generators],
            "exactness": self.exactness,
        }

    def __str__(self) -> str:
        gens = " ".join(format_vector(g) for g in self.generators) or "(empty)"
        return f"{gens} + N{{{' '.join(format_vector(c) for c in self.base)}}}"


@dataclass(frozen=True)
class ResolutionTypeJ:
    """Shift multisets J_0, ..., J_s of a free graded resolution."""

    levels: tuple[tuple[DegreeVector, ...], ...]

    @classmethod
    def of(cls, levels: Iterable[Iterable[Iterable[int]]]) -> "ResolutionTypeJ":
        normalized = [tuple(sorted(vec(d) for d in level)) for level in levels]
        while normalized and not normalized[-1]:
            normalized.pop()
        ranks = {len(d) for level in normalized for d in level}
        if len(ranks) > 1:
            raise InputError(f"resolution type mixes ranks {sorted(ranks)}")
        return cls(tuple(normalized))

    @classmethod
    def free(cls, shifts: Iterable[Iterable[int]]) -> "ResolutionTypeJ":
        return cls.of([shifts])

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    @property
    def is_zero(self) -> bool:
        return not self.levels

    @property
    def is_free(self) -> bool:
        """A single level: the module is the free module itself, answers are exact."""
        return len(self.levels) <= 1

    def shifts(self) -> Iterator[tuple[int, DegreeVector]]:
        for p, level in enumerate(self.levels):
            for d in level:
                yield p, d

    def level(self, p: int) -> tuple[DegreeVector, ...]:
        return self.levels[p] if 0 <= p < len(self.levels) else ()

    def is_sublevelwise(self, other: "ResolutionTypeJ") -> bool:
        """True when every J_p is contained (as a set) in other.J_p."""
        return all(
            set(self.level(p)) <= set(other.level(p)) for p in range(len(self.levels))
        )

    def to_dict(self) -> dict[str, object]:
        return {"levels": [[list(d) for d in level] for level in self.levels]}


def parse_resolution_type(text: str, rank: int) -> ResolutionTypeJ:
    """Parse ``"0:(0,0); 1:(1,1) (1,1); 2:(1,2)"``; the ``p:`` prefixes are optional."""
    levels: dict[int, list[DegreeVector]] = {}
    for position, chunk in enumerate(c.strip() for c in text.split(";")):
        if not chunk:
            continue
        head, sep, body = chunk.partition(":")
        if sep and head.strip().isdigit():
            p = int(head)
        else:
            p, body = position, chunk
        if p in levels:
            raise InputError(f"level {p} appears twice in {text!r}")
        vectors = parse_vectors(body.strip().strip("{}"))
        if any(len(v) != rank for v in vectors):
            raise InputError(
                f"level {p} of {text!r} has a vector of the wrong rank (expected {rank})"
            )
        levels[p] = vectors
    if not levels:
        return ResolutionTypeJ(())
    return ResolutionTypeJ.of([levels.get(p, []) for p in range(max(levels) + 1)])
