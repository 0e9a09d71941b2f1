"""Exact integer vectors in G = Z^r and finite degree boxes."""

import itertools
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from multireg.model.errors import InputError

type DegreeVector = tuple[int, ...]
type GeneratorSet = tuple[DegreeVector, ...]


def vec(coords: Iterable[int]) -> DegreeVector:
    return tuple(int(c) for c in coords)


def zero(rank: int) -> DegreeVector:
    return (0,) * rank


def add(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    if len(a) != len(b):
        raise InputError(f"rank mismatch: {a} vs {b}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    if len(a) != len(b):
        raise InputError(f"rank mismatch: {a} vs {b}")
    return tuple(x - y for x, y in zip(a, b))


def neg(a: DegreeVector) -> DegreeVector:
    return tuple(-x for x in a)


def scale(k: int, a: DegreeVector) -> DegreeVector:
    return tuple(k * x for x in a)


def dot(a: Iterable[int], b: Iterable[int]) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def combination(weights: Iterable[int], vectors: GeneratorSet) -> DegreeVector:
    """Return sum_i weights[i] * vectors[i]."""
    rank = len(vectors[0])
    total = [0] * rank
    for w, v in zip(weights, vectors, strict=True):
        if w:
            for k in range(rank):
                total[k] += w * v[k]
    return tuple(total)


def is_zero(a: DegreeVector) -> bool:
    return not any(a)


def normalize_generators(vectors: Iterable[Iterable[int]]) -> GeneratorSet:
    """Deduplicate and sort, so equal sets have equal representations."""
    return tuple(sorted({vec(v) for v in vectors}))


def check_rank(vectors: Iterable[DegreeVector], rank: int, what: str = "vector") -> None:
    for v in vectors:
        if len(v) != rank:
            raise InputError(f"{what} {v} has rank {len(v)}, expected {rank}")


def format_vector(v: DegreeVector) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


_INT = re.compile(r"^[+-]?\d+$")


def parse_vector(text: str) -> DegreeVector:
    """Parse ``"(1,-2)"``, ``"1,-2"`` or ``"-4"``; only integer literals are accepted."""
    body = text.strip().strip("()[]").strip()
    if not body:
        raise InputError(f"empty degree vector {text!r}")
    parts = [p.strip() for p in body.split(",")]
    for p in parts:
        if not _INT.match(p):
            raise InputError(f"not an integer literal {p!r} in {text!r}")
    return tuple(int(p) for p in parts)


@dataclass(frozen=True)
class DegreeBox:
    """Finite box prod_k [lower_k, upper_k] of lattice points."""

    lower: DegreeVector
    upper: DegreeVector

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise InputError("window bounds have different ranks")
        for lo, hi in zip(self.lower, self.upper):
            if lo > hi:
                raise InputError(f"empty window range {lo}..{hi}")

    @classmethod
    def cube(cls, rank: int, lo: int, hi: int) -> "DegreeBox":
        return cls((lo,) * rank, (hi,) * rank)

    @classmethod
    def around(cls, center: DegreeVector, below: int, above: int) -> "DegreeBox":
        return cls(tuple(c - below for c in center), tuple(c + above for c in center))

    @property
    def rank(self) -> int:
        return len(self.lower)

    def __contains__(self, d: DegreeVector) -> bool:
        return all(lo <= x <= hi for lo, x, hi in zip(self.lower, d, self.upper))

    def points(self) -> Iterator[DegreeVector]:
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)]
        return itertools.product(*ranges)

    def __len__(self) -> int:
        size = 1
        for lo, hi in zip(self.lower, self.upper):
            size *= hi - lo + 1
        return size


def parse_window(text: str, rank: int) -> DegreeBox:
    """Parse ``"-5..5"`` (every coordinate) or ``"-5..5,0..3"`` (per coordinate)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    ranges = []
    for part in parts:
        m = re.match(r"^([+-]?\d+)\.\.([+-]?\d+)$", part)
        if not m:
            raise InputError(f"bad window range {part!r}, expected LO..HI")
        ranges.append((int(m.group(1)), int(m.group(2))))
    if len(ranges) == 1:
        ranges = ranges * rank
    if len(ranges) != rank:
        raise InputError(f"window {text!r} has {len(ranges)} ranges, ring rank is {rank}")
    return DegreeBox(tuple(r[0] for r in ranges), tuple(r[1] for r in ranges))


def parse_vectors(text: str) -> list[DegreeVector]:
    """Whitespace- or semicolon-separated vectors: ``"(1,0) (0,1)"``."""
    chunks = re.findall(r"\([^()]*\)|\[[^\[\]]*\]|[^\s;()\[\]]+", text)
    return [parse_vector(chunk) for chunk in chunks]
