"""Graded local cohomology of free modules over a Cox ring.

A fine degree a in Z^n only matters through its sign pattern
sigma = {k : a_k < 0}: the Cech complex of S in fine degree a has one basis
vector for each subset T of the ideal generators whose joint support covers
sigma. H^i_B(S) in degree d therefore decomposes as

    sum over sigma of h^i(sigma) * #{a with pattern sigma and deg(a) = d}

and the second factor is a lattice-point count over the columns D_sigma.
"""

import functools
import itertools
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass

from loguru import logger

from multireg import get_caps
from multireg.lattice import (
    count_representations,
    in_semigroup,
    integer_feasible,
    minimal_generators,
    pointed_functional,
)
from multireg.linalg import Entries, composes_to_zero, rank
from multireg.model.errors import InputError, SizeCapError
from multireg.model.monomial import Monomial, in_ideal, minimal_monomials, support
from multireg.model.region import ResolutionTypeJ, SemigroupRegion
from multireg.model.status import (
    DECLARED,
    EXACT,
    Feasibility,
    Verdict,
    window_marker,
)
from multireg.model.vector import (
    DegreeBox,
    DegreeVector,
    GeneratorSet,
    add,
    combination,
    dot,
    format_vector,
    neg,
    sub,
    vec,
    zero,
)
from multireg.region import shifted
from multireg.ring import GradedRing, monomials_of_degree

type Dimension = int | float | None  # math.inf for infinite pieces, None when undecided


def _characteristic(characteristic: int | None) -> int:
    return get_caps().characteristic if characteristic is None else characteristic


def resolve_ideal(ring: GradedRing, ideal: Iterable[Monomial] | None) -> tuple[Monomial, ...]:
    if ideal is None:
        return ring.irrelevant
    gens = minimal_monomials(tuple(m) for m in ideal)
    for m in gens:
        if len(m) != ring.n:
            raise InputError(f"monomial {m} does not fit the {ring.n} variables of {ring.name}")
    if not gens:
        raise InputError("local cohomology needs a nonempty ideal")
    return gens


# ---------------------------------------------------------------------------
# sign-pattern complexes


def _sign(cell: tuple[int, ...], j: int) -> int:
    return -1 if sum(1 for k in cell if k < j) % 2 else 1


@dataclass(frozen=True)
class PatternComplex:
    """Cech complex of S in any fine degree with negative coordinates exactly sigma."""

    sigma: frozenset[int]
    supports: tuple[frozenset[int], ...]
    cells: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def build(cls, sigma: Iterable[int], ideal: Sequence[Monomial]) -> "PatternComplex":
        sigma = frozenset(sigma)
        supports = tuple(support(m) for m in ideal)
        q = len(supports)
        cells = tuple(
            tuple(
                cell
                for cell in itertools.combinations(range(q), p)
                if sigma <= frozenset().union(*(supports[t] for t in cell))
            )
            for p in range(q + 1)
        )
        return cls(sigma, supports, cells)

    @property
    def length(self) -> int:
        return len(self.supports)

    def differential(self, p: int) -> tuple[Entries, tuple[int, int]]:
        """Matrix of C^p -> C^{p+1} (rows are the target cells)."""
        source, target = self.cells[p], self.cells[p + 1]
        index = {cell: r for r, cell in enumerate(target)}
        entries: Entries = {}
        for c, cell in enumerate(source):
            for j in range(self.length):
                if j in cell:
                    continue
                r = index.get(tuple(sorted(cell + (j,))))
                if r is not None:
                    entries[(r, c)] = _sign(cell, j)
        return entries, (len(target), len(source))

    def cohomology(self, characteristic: int = 0) -> tuple[int, ...]:
        ranks = [rank(*self.differential(p), characteristic) for p in range(self.length)]
        return tuple(
            len(self.cells[p])
            - (ranks[p] if p < self.length else 0)
            - (ranks[p - 1] if p > 0 else 0)
            for p in range(self.length + 1)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(level) for p, level in enumerate(self.cells))

    def squares_to_zero(self, characteristic: int = 0) -> bool:
        return all(
            composes_to_zero(*self.differential(p + 1), *self.differential(p), characteristic)
            for p in range(self.length - 1)
        )


@functools.lru_cache(maxsize=512)
def pattern_table(
    ideal: tuple[Monomial, ...], characteristic: int
) -> tuple[tuple[frozenset[int], tuple[int, ...]], ...]:
    """All sign patterns with nonzero cohomology, with their h-vectors."""
    cap = get_caps().taylor_generators
    if len(ideal) > cap:
        raise SizeCapError(f"ideal has {len(ideal)} generators, cap is {cap}")
    universe = sorted(frozenset().union(*(support(m) for m in ideal)))
    table = []
    for size in range(len(universe) + 1):
        for sigma in itertools.combinations(universe, size):
            h = PatternComplex.build(sigma, ideal).cohomology(characteristic)
            if any(h):
                table.append((frozenset(sigma), h))
    logger.debug(f"[cohomology] {len(table)} contributing sign patterns for {len(ideal)} generators")
    return tuple(table)


def pattern_cohomology(
    ring: GradedRing,
    sigma: Iterable[int],
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> tuple[int, ...]:
    """h^0, ..., h^q of the pattern complex of sigma."""
    sigma = frozenset(sigma)
    if any(not 0 <= k < ring.n for k in sigma):
        raise InputError(f"sign pattern {sorted(sigma)} names unknown variables")
    gens = resolve_ideal(ring, ideal)
    return PatternComplex.build(sigma, gens).cohomology(_characteristic(characteristic))


# ---------------------------------------------------------------------------
# supports


@dataclass(frozen=True)
class SupportPiece:
    sigma: frozenset[int]
    multiplicity: int
    offset: DegreeVector
    directions: GeneratorSet

    def to_dict(self, names: tuple[str, ...]) -> dict[str, object]:
        return {
            "sigma": [names[k] for k in sorted(self.sigma)],
            "multiplicity": self.multiplicity,
            "offset": list(self.offset),
            "directions": [list(v) for v in self.directions],
        }


@dataclass(frozen=True)
class CohomologySupport:
    """Nonvanishing degrees of H^index_B(S): the union of offset + N directions."""

    index: int
    pieces: tuple[SupportPiece, ...]

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def contains(self, d: DegreeVector) -> Feasibility:
        unknown = False
        for piece in self.pieces:
            result = integer_feasible(piece.directions, sub(d, piece.offset))
            if result.status is Feasibility.FEASIBLE:
                return Feasibility.FEASIBLE
            unknown = unknown or result.status is Feasibility.UNKNOWN
        return Feasibility.UNKNOWN if unknown else Feasibility.INFEASIBLE

    def to_dict(self, names: tuple[str, ...]) -> dict[str, object]:
        return {"index": self.index, "pieces": [p.to_dict(names) for p in self.pieces]}


def top_index(ring: GradedRing, ideal: Iterable[Monomial] | None = None) -> int:
    """Cech length: no local cohomology above the number of ideal generators."""
    return min(len(resolve_ideal(ring, ideal)), ring.n)


@functools.lru_cache(maxsize=1024)
def _support(
    ring: GradedRing, index: int, ideal: tuple[Monomial, ...], characteristic: int
) -> CohomologySupport:
    pieces = []
    for sigma, h in pattern_table(ideal, characteristic):
        if index < len(h) and h[index]:
            offset = neg(combination([1 if k in sigma else 0 for k in range(ring.n)], ring.degrees))
            directions = tuple(
                neg(a) if k in sigma else a for k, a in enumerate(ring.degrees)
            )
            pieces.append(SupportPiece(sigma, h[index], offset, directions))
    return CohomologySupport(index, tuple(pieces))


def support_semigroups(
    ring: GradedRing,
    i: int,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> CohomologySupport:
    if i < 0:
        return CohomologySupport(i, ())
    return _support(ring, i, resolve_ideal(ring, ideal), _characteristic(characteristic))


def coh_free_piece(
    ring: GradedRing,
    shifts: Iterable[Iterable[int]],
    i: int,
    d: Iterable[int],
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Dimension:
    """dim H^i_B(sum S(-e))_d; ``math.inf`` when a contributing piece is unbounded."""
    d = vec(d)
    support_i = support_semigroups(ring, i, ideal, characteristic)
    total = 0
    unknown = False
    for e in shifts:
        e = vec(e)
        for piece in support_i.pieces:
            count = count_representations(piece.directions, sub(sub(d, e), piece.offset))
            if count is None:
                unknown = True
            elif count == math.inf:
                return math.inf
            else:
                total += piece.multiplicity * count
    return None if unknown else total


# ---------------------------------------------------------------------------
# regularity


def region_avoids_cohomology(
    ring: GradedRing,
    J: ResolutionTypeJ,
    m: DegreeVector,
    k: int,
    index: int,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Verdict:
    """(m + N C[k]) misses d + supp H^{index+p}(S) for every p and every d in J_p."""
    m = vec(m)
    starts = shifted(ring.config_c, k).generators
    back = tuple(neg(c) for c in ring.config_c)
    unknown = False
    for p, d in J.shifts():
        for piece in support_semigroups(ring, index + p, ideal, characteristic).pieces:
            columns = piece.directions + back
            for e in starts:
                target = sub(sub(add(m, e), d), piece.offset)
                result = integer_feasible(columns, target)
                if result.status is Feasibility.FEASIBLE:
                    logger.debug(
                        f"[cohomology] {format_vector(m)} + N C[{k}] meets H^{index + p} "
                        f"of shift {format_vector(d)} (pattern {sorted(piece.sigma)})"
                    )
                    return Verdict.NO
                unknown = unknown or result.status is Feasibility.UNKNOWN
    return Verdict.UNKNOWN if unknown else Verdict.YES


def reg_level_membership(
    ring: GradedRing,
    J: ResolutionTypeJ,
    m: DegreeVector,
    i: int,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Verdict:
    """m + N C[1-i] avoids the cohomology of every shifted resolution term."""
    return region_avoids_cohomology(ring, J, m, 1 - i, i, ideal, characteristic)


def reg_membership(
    ring: GradedRing,
    J: ResolutionTypeJ,
    m: DegreeVector,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Verdict:
    """m in reg(M) for M of type J.

    Exact for free modules. For longer resolutions ``Verdict.NO`` only
    means "not certified".
    """
    if J.is_zero:
        return Verdict.YES
    verdicts = []
    for i in range(top_index(ring, ideal) + 1):
        verdict = reg_level_membership(ring, J, m, i, ideal, characteristic)
        if verdict is Verdict.NO:
            return Verdict.NO
        verdicts.append(verdict)
    return Verdict.all_of(verdicts)


def regS_membership(
    ring: GradedRing,
    m: DegreeVector,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> Verdict:
    return reg_membership(
        ring, ResolutionTypeJ.free([zero(ring.rank)]), m, ideal, characteristic
    )


def _coordinate_step(base: GeneratorSet, axis: int, limit: int = 64) -> int:
    """Least s with s * e_axis in N C, or 1 when none is found up to ``limit``."""
    unit = tuple(1 if k == axis else 0 for k in range(len(base[0])))
    for s in range(1, limit + 1):
        if in_semigroup(base, tuple(s * u for u in unit)):
            return s
    return 1


def _outside_cells(
    window: DegreeBox, steps: Sequence[int]
) -> Iterator[tuple[DegreeVector, GeneratorSet]]:
    """Cover the lattice outside the window by cells a + N{directions}.

    Per coordinate a cell either fixes a value inside the window range or
    runs off one side from a start with step s_t along that axis.
    """
    options = []
    for t, (lo, hi, s) in enumerate(zip(window.lower, window.upper, steps)):
        axis = tuple(s if k == t else 0 for k in range(window.rank))
        coordinate = [(v, None) for v in range(lo, hi + 1)]
        coordinate += [(hi + 1 + k, axis) for k in range(s)]
        coordinate += [(lo - 1 - k, neg(axis)) for k in range(s)]
        options.append(coordinate)
    for choice in itertools.product(*options):
        directions = tuple(direction for _, direction in choice if direction is not None)
        if directions:
            yield tuple(v for v, _ in choice), directions


def _outside_window_certified(
    ring: GradedRing,
    generators: GeneratorSet,
    window: DegreeBox,
    characteristic: int | None = None,
) -> bool:
    """Every cell outside the window lies in the found region or in its known complement.

    A cell a + N{dirs} is inside reg(S) when a is above a found generator and
    every direction lies in N C. It is outside when one support piece of the
    non-regular set contains a together with all directions of the cell.
    """
    base = ring.config_c
    back = tuple(neg(c) for c in base)
    complement = []
    for i in range(top_index(ring) + 1):
        starts = shifted(base, 1 - i).generators
        for piece in support_semigroups(ring, i, None, characteristic).pieces:
            columns = piece.directions + back
            complement.extend((sub(piece.offset, e), columns) for e in starts)
    steps = [_coordinate_step(base, t) for t in range(ring.rank)]

    def inside(start: DegreeVector, directions: GeneratorSet) -> bool:
        return all(in_semigroup(base, u) for u in directions) and any(
            in_semigroup(base, sub(start, g)) for g in generators
        )

    def outside(start: DegreeVector, directions: GeneratorSet) -> bool:
        return any(
            all(
                integer_feasible(columns, target).status is Feasibility.FEASIBLE
                for target in (sub(start, b), *directions)
            )
            for b, columns in complement
        )

    for start, directions in _outside_cells(window, steps):
        if not (inside(start, directions) or outside(start, directions)):
            logger.debug(
                f"[cohomology] cell {format_vector(start)} + N{list(directions)} "
                f"not decided outside the window for {ring.name}"
            )
            return False
    return True


def regS_region(
    ring: GradedRing,
    window: DegreeBox,
    characteristic: int | None = None,
) -> SemigroupRegion:
    """reg(S) from a window scan, or the declared generators when the ring spec has them.

    The result is marked exact when no point was undecided and every cell
    of the lattice outside the window is shown to lie either above a found
    generator or inside the support of some H^i_B(S) shifted by N C[1-i].
    """
    base = ring.config_c
    if ring.declared_regs is not None:
        return SemigroupRegion(base, minimal_generators(base, ring.declared_regs), DECLARED)
    if window.rank != ring.rank:
        raise InputError(f"window has rank {window.rank}, ring has rank {ring.rank}")
    phi = pointed_functional(base)
    members: set[DegreeVector] = set()
    undecided = 0
    for d in sorted(window.points(), key=lambda x: (dot(phi, x), x)):
        if any(sub(d, c) in members for c in base):
            members.add(d)
            continue
        verdict = regS_membership(ring, d, characteristic=characteristic)
        if verdict is Verdict.YES:
            members.add(d)
        elif verdict is Verdict.UNKNOWN:
            undecided += 1
    generators = minimal_generators(base, members)
    exact = not undecided and _outside_window_certified(ring, generators, window, characteristic)
    if undecided:
        logger.warning(f"[cohomology] {undecided} window points undecided for reg(S) of {ring.name}")
    level = max(dot(phi, x) for x in (window.lower, window.upper))
    return SemigroupRegion(base, generators, EXACT if exact else window_marker(level))


# ---------------------------------------------------------------------------
# vanishing for modules known through a resolution or a family of ideals

type VanishingRegion = Callable[[int, DegreeVector], bool]


def resolution_vanishing(
    ring: GradedRing,
    J: ResolutionTypeJ,
    i: int,
    d: DegreeVector,
    chosen_v: VanishingRegion | None = None,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> bool:
    """Certify H^i(M)_d = 0 for every M with a resolution of type J.

    ``chosen_v(index, degree)`` may narrow the vanishing region of H^index(S)
    used for each term; by default the exact vanishing set is used.
    False certifies nothing.
    """
    d = vec(d)
    for p, shift in J.shifts():
        index = i + p
        target = sub(d, shift)
        if chosen_v is not None:
            if not chosen_v(index, target):
                return False
            continue
        if coh_free_piece(ring, [zero(ring.rank)], index, target, ideal, characteristic) != 0:
            return False
    return True


def mv_vanishing(
    ring: GradedRing,
    ideals: Sequence[Iterable[Monomial]],
    i: int,
    d: DegreeVector,
    J: ResolutionTypeJ | None = None,
    characteristic: int | None = None,
) -> bool:
    """Certify H^i_B(M)_d = 0 from H^{i+#I-1}_{B_I}(M)_d = 0 for every nonempty I."""
    J = J or ResolutionTypeJ.free([zero(ring.rank)])
    ideals = [tuple(tuple(m) for m in gens) for gens in ideals]
    for size in range(1, len(ideals) + 1):
        for subset in itertools.combinations(range(len(ideals)), size):
            gens = [m for k in subset for m in ideals[k]]
            if not resolution_vanishing(
                ring, J, i + size - 1, d, ideal=gens, characteristic=characteristic
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# monomial modules: h^0 torsion and the truncated Cech oracle


@dataclass(frozen=True)
class MonomialSummand:
    """S(-shift) / ideal; an empty ideal is the free summand."""

    shift: DegreeVector
    ideal: tuple[Monomial, ...] = ()


@dataclass(frozen=True)
class MonomialModule:
    summands: tuple[MonomialSummand, ...]

    @classmethod
    def free(cls, shifts: Iterable[Iterable[int]]) -> "MonomialModule":
        return cls(tuple(MonomialSummand(vec(e)) for e in shifts))

    @classmethod
    def quotient(
        cls, ideal: Iterable[Monomial], shift: Iterable[int] | None = None, rank: int = 1
    ) -> "MonomialModule":
        shift = vec(shift) if shift is not None else zero(rank)
        return cls((MonomialSummand(shift, minimal_monomials(tuple(m) for m in ideal)),))

    @property
    def is_free(self) -> bool:
        return all(not s.ideal for s in self.summands)


@dataclass(frozen=True)
class TorsionPiece:
    dimension: int
    stop_reason: str  # "torsion-free", "exact", "stabilized" or "cap"
    heuristic: bool


def _saturates(a: Monomial, ideal: tuple[Monomial, ...], b: Monomial) -> bool:
    """b^k * x^a lies in the ideal for large k."""
    return any(
        all(b[j] > 0 for j in range(len(a)) if g[j] > a[j]) for g in ideal
    )


def h0_torsion_piece(
    ring: GradedRing,
    module: MonomialModule,
    d: DegreeVector,
    *,
    exact: bool = False,
    ideal: Iterable[Monomial] | None = None,
    stab_window: int | None = None,
    power_cap: int | None = None,
) -> TorsionPiece:
    """dim H^0_B(M)_d, the B-torsion of a monomial module in degree d.

    The default mode grows k until the kernels of multiplication by b^k
    (b in B) stop changing for ``stab_window`` steps; ``exact=True`` tests
    saturation of each standard monomial generator by generator.
    """
    d = vec(d)
    gens = resolve_ideal(ring, ideal)
    caps = get_caps()
    stab_window = stab_window or caps.stab_window
    power_cap = power_cap or caps.torsion_power_cap
    total = 0
    reasons: list[str] = []
    for summand in module.summands:
        if not summand.ideal:
            reasons.append("torsion-free")
            continue
        standard = [
            a
            for a in monomials_of_degree(ring, sub(d, summand.shift))
            if not in_ideal(a, summand.ideal)
        ]
        if exact:
            total += sum(
                1 for a in standard if all(_saturates(a, summand.ideal, b) for b in gens)
            )
            reasons.append("exact")
            continue
        previous, steady, size = -1, 0, 0
        reason = "cap"
        for k in range(1, power_cap + 1):
            size = sum(
                1
                for a in standard
                if all(
                    in_ideal(tuple(x + k * y for x, y in zip(a, b)), summand.ideal)
                    for b in gens
                )
            )
            steady = steady + 1 if size == previous else 0
            previous = size
            if steady >= stab_window:
                reason = "stabilized"
                break
        if reason == "cap":
            logger.warning(
                f"[cohomology] torsion chain in degree {format_vector(d)} hit power cap {power_cap}"
            )
        total += size
        reasons.append(reason)
    for reason in ("cap", "stabilized", "exact"):
        if reason in reasons:
            break
    else:
        reason = "torsion-free"
    return TorsionPiece(total, reason, reason in ("cap", "stabilized"))


@dataclass(frozen=True)
class OracleResult:
    dimension: int | None
    status: str  # "exact" or "inconclusive"


@functools.lru_cache(maxsize=64)
def _half_table(
    degrees: GeneratorSet, bound: int
) -> dict[DegreeVector, tuple[tuple[int, ...], ...]]:
    table: dict[DegreeVector, list[tuple[int, ...]]] = {}
    for a in itertools.product(range(-bound, bound + 1), repeat=len(degrees)):
        table.setdefault(combination(a, degrees), []).append(a)
    return {k: tuple(v) for k, v in table.items()}


def fine_degrees(ring: GradedRing, d: DegreeVector, bound: int) -> list[tuple[int, ...]]:
    """All a in [-bound, bound]^n with deg(a) = d."""
    half = ring.n // 2
    left_degrees, right_degrees = ring.degrees[:half], ring.degrees[half:]
    left = _half_table(left_degrees, bound) if left_degrees else {zero(ring.rank): ((),)}
    right = _half_table(right_degrees, bound)
    result = []
    for key, lefts in left.items():
        rights = right.get(sub(d, key), ())
        result.extend(a + b for a in lefts for b in rights)
    return sorted(result)


def _surviving_cells(
    a: tuple[int, ...], ideal: tuple[Monomial, ...], quotient: tuple[Monomial, ...]
) -> frozenset[tuple[int, ...]]:
    cells = []
    n = len(a)
    for p in range(len(ideal) + 1):
        for cell in itertools.combinations(range(len(ideal)), p):
            inverted = frozenset().union(*(support(ideal[t]) for t in cell))
            kept = [k for k in range(n) if k not in inverted]
            if any(a[k] < 0 for k in kept):
                continue
            # an inverted variable absorbs any exponent
            if any(all(g[k] <= a[k] for k in kept) for g in quotient):
                continue
            cells.append(cell)
    return frozenset(cells)


@functools.lru_cache(maxsize=4096)
def _cell_cohomology(
    cells: frozenset[tuple[int, ...]], q: int, i: int, characteristic: int
) -> int:
    levels = [sorted(c for c in cells if len(c) == p) for p in range(q + 1)]

    def matrix(p: int) -> tuple[Entries, tuple[int, int]]:
        index = {cell: r for r, cell in enumerate(levels[p + 1])}
        entries: Entries = {}
        for c, cell in enumerate(levels[p]):
            for j in range(q):
                if j not in cell:
                    r = index.get(tuple(sorted(cell + (j,))))
                    if r is not None:
                        entries[(r, c)] = _sign(cell, j)
        return entries, (len(levels[p + 1]), len(levels[p]))

    outgoing = rank(*matrix(i), characteristic) if i < q else 0
    incoming = rank(*matrix(i - 1), characteristic) if i > 0 else 0
    return len(levels[i]) - outgoing - incoming


def cech_oracle_piece(
    ring: GradedRing,
    module: MonomialModule,
    i: int,
    d: DegreeVector,
    bound: int | None = None,
    ideal: Iterable[Monomial] | None = None,
    characteristic: int | None = None,
) -> OracleResult:
    """Brute-force dim H^i_B(M)_d summed over fine degrees with |a_k| <= bound.

    Inconclusive when a fine degree on the boundary of the box contributes.
    """
    d = vec(d)
    bound = bound or get_caps().oracle_bound
    gens = resolve_ideal(ring, ideal)
    characteristic = _characteristic(characteristic)
    if i < 0 or i > len(gens):
        return OracleResult(0, "exact")
    total = 0
    touched_boundary = False
    for summand in module.summands:
        for a in fine_degrees(ring, sub(d, summand.shift), bound):
            cells = _surviving_cells(a, gens, summand.ideal)
            h = _cell_cohomology(cells, len(gens), i, characteristic)
            if h:
                total += h
                if any(abs(x) == bound for x in a):
                    touched_boundary = True
    if touched_boundary:
        return OracleResult(None, "inconclusive")
    return OracleResult(total, "exact")
