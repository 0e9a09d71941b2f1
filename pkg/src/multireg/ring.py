"""Graded Cox-ring context: variables, irrelevant ideal B, configuration C.

Ring spec files are TOML documents::

    name = "p1xp1"
    rank = 2
    config_C = [[1, 0], [0, 1]]
    irrelevant_ideal = ["x0*y0", "x0*y1", "x1*y0", "x1*y1"]

    [[variables]]
    name = "x0"
    degree = [1, 0]
    ...

Optional keys: ``regS`` (declared generators of reg(S)), ``kaehler``
(carried, never checked) and a ``[fan]`` table with ``rays`` (ray k belongs
to variable k) and ``cones`` (lists of variable names).
"""

import functools
import math
import pathlib
import re
from dataclasses import dataclass, field

import toml
from loguru import logger
from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError, field_validator
from sympy import Matrix

from multireg.lattice import (
    PointednessCertificate,
    check_pointed,
    count_representations,
    iter_representations,
)
from multireg.model.errors import (
    CoarseningError,
    InputError,
    RingValidationError,
    RingViolation,
    RingViolationKind,
)
from multireg.model.fan import FanData
from multireg.model.monomial import Monomial, format_monomial, minimal_monomials, variable_ideal
from multireg.model.vector import (
    DegreeVector,
    GeneratorSet,
    combination,
    dot,
    format_vector,
    is_zero,
    normalize_generators,
    vec,
)


class VariableSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    degree: list[StrictInt]

    @field_validator("name")
    @classmethod
    def validate_name(cls, value: str) -> str:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", value):
            raise ValueError(f"invalid variable name {value!r}")
        return value


class FanSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rays: list[list[StrictInt]]
    cones: list[list[str]]


class RingSpecModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "ring"
    rank: StrictInt
    variables: list[VariableSpec]
    irrelevant_ideal: list[str | list[StrictInt]]
    config_C: list[list[StrictInt]]
    fan: FanSpec | None = None
    regS: list[list[StrictInt]] | None = None
    kaehler: list[list[StrictInt]] | None = None

    @field_validator("rank")
    @classmethod
    def validate_rank(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("rank must be positive")
        return value

    @field_validator("variables")
    @classmethod
    def validate_variables(cls, value: list[VariableSpec]) -> list[VariableSpec]:
        if not value:
            raise ValueError("a ring needs at least one variable")
        names = [v.name for v in value]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"duplicate variable names {duplicates}")
        return value

    @field_validator("config_C")
    @classmethod
    def validate_config(cls, value: list[list[int]]) -> list[list[int]]:
        if not value:
            raise ValueError("config_C must be nonempty")
        return value


@dataclass(frozen=True)
class Variable:
    name: str
    degree: DegreeVector


@dataclass(frozen=True)
class GradedRing:
    name: str
    rank: int
    variables: tuple[Variable, ...]
    irrelevant: tuple[Monomial, ...]
    config_c: GeneratorSet
    certificate: PointednessCertificate
    fan: FanData | None = None
    declared_regs: tuple[DegreeVector, ...] | None = None
    kaehler: GeneratorSet | None = None
    # zero-degree variables absorbed into the coefficients of a coarsened ring
    constants: tuple[str, ...] = ()
    source_indices: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def degrees(self) -> GeneratorSet:
        return tuple(v.degree for v in self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def phi(self) -> DegreeVector:
        return self.certificate.functional

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r} in ring {self.name!r}") from None

    def degree_of(self, monomial: Monomial) -> DegreeVector:
        return combination(monomial, self.degrees)

    def format_monomial(self, monomial: Monomial) -> str:
        return format_monomial(monomial, self.names)

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "rank": self.rank,
            "variables": [{"name": v.name, "degree": list(v.degree)} for v in self.variables],
            "irrelevant_ideal": [self.format_monomial(m) for m in self.irrelevant],
            "config_C": [list(c) for c in self.config_c],
            "phi": list(self.phi),
            "fan": self.fan.to_dict() if self.fan else None,
            "regS": [list(g) for g in self.declared_regs] if self.declared_regs else None,
            "constants": list(self.constants),
        }


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_monomial(text: str, names: tuple[str, ...]) -> Monomial:
    """``"x1*x2^2"`` -> exponent vector; ``"1"`` is the unit monomial."""
    exponents = [0] * len(names)
    for factor in (f.strip() for f in text.split("*")):
        if factor == "1":
            continue
        m = _FACTOR.match(factor)
        if not m:
            raise InputError(f"bad monomial factor {factor!r} in {text!r}")
        if m.group(1) not in names:
            raise InputError(f"unknown variable {m.group(1)!r} in monomial {text!r}")
        exponents[names.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exponents)


def build_ring(
    name: str,
    variables: list[tuple[str, DegreeVector]],
    irrelevant: list[Monomial | str],
    config_c: list[DegreeVector],
    *,
    fan: FanData | None = None,
    declared_regs: list[DegreeVector] | None = None,
    kaehler: list[DegreeVector] | None = None,
    constants: tuple[str, ...] = (),
    source_indices: tuple[int, ...] | None = None,
) -> GradedRing:
    """Validate the standing assumptions and assemble a ring.

    Every violated assumption is collected; they are raised together as a
    :class:`RingValidationError`.
    """
    violations: list[RingViolation] = []
    names = tuple(n for n, _ in variables)
    degrees = [vec(d) for _, d in variables]
    rank = len(degrees[0]) if degrees else 0

    for var_name, d in zip(names, degrees):
        if len(d) != rank:
            violations.append(
                RingViolation(
                    RingViolationKind.RANK_MISMATCH,
                    f"degree of {var_name} is {format_vector(d)}, expected rank {rank}",
                )
            )
        elif is_zero(d):
            violations.append(
                RingViolation(RingViolationKind.ZERO_DEGREE, f"variable {var_name} has degree 0")
            )
    config = [vec(c) for c in config_c]
    for c in config:
        if len(c) != rank:
            violations.append(
                RingViolation(
                    RingViolationKind.RANK_MISMATCH,
                    f"configuration vector {format_vector(c)} does not have rank {rank}",
                )
            )

    monomials: list[Monomial] = []
    for m in irrelevant:
        if isinstance(m, str):
            try:
                monomials.append(parse_monomial(m, names))
            except InputError as exc:
                violations.append(RingViolation(RingViolationKind.UNKNOWN_VARIABLE, str(exc)))
            continue
        m = tuple(int(e) for e in m)
        if len(m) != len(names) or any(e < 0 for e in m):
            violations.append(
                RingViolation(
                    RingViolationKind.RANK_MISMATCH,
                    f"exponent vector {m} does not fit {len(names)} variables",
                )
            )
            continue
        monomials.append(m)
    if not irrelevant:
        violations.append(
            RingViolation(RingViolationKind.EMPTY_IDEAL, "irrelevant ideal has no generators")
        )

    certificate = None
    if not any(v.kind is RingViolationKind.RANK_MISMATCH for v in violations):
        if not any(v.kind is RingViolationKind.ZERO_DEGREE for v in violations):
            certificate = check_pointed(degrees)
            if not certificate.pointed:
                violations.append(
                    RingViolation(
                        RingViolationKind.NON_POINTED,
                        f"variable degrees span a cone with a line ({certificate.describe()})",
                    )
                )
        if config:
            config_certificate = check_pointed(config)
            if not config_certificate.pointed:
                violations.append(
                    RingViolation(
                        RingViolationKind.NON_POINTED_C,
                        f"config_C is not pointed ({config_certificate.describe()})",
                    )
                )
    if violations:
        for v in violations:
            logger.error(f"[ring] {name}: {v}")
        raise RingValidationError(violations)

    minimal = minimal_monomials(monomials)
    if len(minimal) != len(set(monomials)):
        logger.warning(
            f"[ring] {name}: irrelevant ideal generators are not minimal, "
            f"pruned to {[format_monomial(m, names) for m in minimal]}"
        )
    return GradedRing(
        name=name,
        rank=rank,
        variables=tuple(Variable(n, d) for n, d in zip(names, degrees)),
        irrelevant=minimal,
        config_c=normalize_generators(config),
        certificate=certificate,
        fan=fan,
        declared_regs=tuple(sorted({vec(g) for g in declared_regs}))
        if declared_regs is not None
        else None,
        kaehler=normalize_generators(kaehler) if kaehler is not None else None,
        constants=constants,
        source_indices=source_indices,
    )


def _fan_from_spec(spec: FanSpec, names: tuple[str, ...]) -> FanData:
    if len(spec.rays) != len(names):
        raise InputError(f"fan has {len(spec.rays)} rays for {len(names)} variables")
    cones = []
    for cone in spec.cones:
        unknown = [c for c in cone if c not in names]
        if unknown:
            raise InputError(f"fan cone names unknown variables {unknown}")
        cones.append(frozenset(names.index(c) for c in cone))
    rays = tuple(vec(r) for r in spec.rays)
    simplicial = all(
        len(cone) == _rank_of([rays[k] for k in cone]) for cone in cones
    )
    return FanData(rays=rays, cones=tuple(cones), simplicial=simplicial)


def _rank_of(vectors: list[DegreeVector]) -> int:
    return Matrix([list(v) for v in vectors]).rank() if vectors else 0


def parse_ring(text: str, source: str = "<string>") -> GradedRing:
    try:
        document = toml.loads(text)
    except toml.TomlDecodeError as exc:
        raise InputError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from exc
    try:
        spec = RingSpecModel(**document)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise InputError(f"{source}: {details}") from exc

    names = tuple(v.name for v in spec.variables)
    for v in spec.variables:
        if len(v.degree) != spec.rank:
            raise RingValidationError(
                [
                    RingViolation(
                        RingViolationKind.RANK_MISMATCH,
                        f"degree of {v.name} has {len(v.degree)} entries, rank is {spec.rank}",
                    )
                ]
            )
    fan = _fan_from_spec(spec.fan, names) if spec.fan else None
    ring = build_ring(
        spec.name,
        [(v.name, tuple(v.degree)) for v in spec.variables],
        [m if isinstance(m, str) else tuple(m) for m in spec.irrelevant_ideal],
        [tuple(c) for c in spec.config_C],
        fan=fan,
        declared_regs=[tuple(g) for g in spec.regS] if spec.regS is not None else None,
        kaehler=[tuple(k) for k in spec.kaehler] if spec.kaehler is not None else None,
    )
    logger.debug(f"[ring] loaded {ring.name} from {source}: n={ring.n}, r={ring.rank}")
    return ring


def load_ring(path: str | pathlib.Path) -> GradedRing:
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read ring spec {str(path)!r}: {exc}") from exc
    return parse_ring(text, str(path))


# ---------------------------------------------------------------------------
# coarsening vectors


@dataclass(frozen=True)
class CoarseningVector:
    v: DegreeVector
    degrees: tuple[int, ...]
    c_v: int
    s_v: int

    @property
    def positive_variables(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.degrees) if e > 0)

    @property
    def zero_variables(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.degrees) if e == 0)

    @property
    def is_positive(self) -> bool:
        return all(e > 0 for e in self.degrees)

    def degree(self, d: DegreeVector) -> int:
        return dot(self.v, d)

    def to_dict(self) -> dict[str, object]:
        return {
            "v": list(self.v),
            "degrees": list(self.degrees),
            "positive": self.is_positive,
            "c_v": self.c_v,
            "s_v": self.s_v,
            "positive_variables": list(self.positive_variables),
            "zero_variables": list(self.zero_variables),
        }


def classify_coarsening(ring: GradedRing, v: DegreeVector) -> CoarseningVector:
    v = vec(v)
    if len(v) != ring.rank:
        raise InputError(f"coarsening vector {format_vector(v)} does not have rank {ring.rank}")
    degrees = tuple(dot(v, a) for a in ring.degrees)
    negative = [ring.names[i] for i, e in enumerate(degrees) if e < 0]
    if negative:
        raise CoarseningError(
            f"{format_vector(v)} is not a coarsening vector: negative degree on {negative}"
        )
    positive = [e for e in degrees if e > 0]
    if not positive:
        raise CoarseningError(f"{format_vector(v)} gives every variable degree 0")
    c_v = math.lcm(*positive)
    s_v = max(len(positive) * c_v - sum(positive), c_v)
    return CoarseningVector(v=v, degrees=degrees, c_v=c_v, s_v=s_v)


@functools.lru_cache(maxsize=256)
def coarsened_ring(ring: GradedRing, cv: CoarseningVector) -> GradedRing:
    """Z-graded ring of the v-positive variables; degree-zero variables become constants.

    Its irrelevant ideal is generated by all remaining variables and C = {c_v}.
    """
    kept = cv.positive_variables
    return build_ring(
        f"{ring.name}/v={format_vector(cv.v)}",
        [(ring.names[i], (cv.degrees[i],)) for i in kept],
        list(variable_ideal(range(len(kept)), len(kept))),
        [(cv.c_v,)],
        constants=tuple(ring.names[i] for i in cv.zero_variables),
        source_indices=kept,
    )


def monomials_of_degree(ring: GradedRing, d: DegreeVector) -> list[Monomial]:
    """All exponent vectors a with sum a_i deg(x_i) = d, ascending."""
    d = vec(d)
    if len(d) != ring.rank:
        raise InputError(f"degree {format_vector(d)} does not have rank {ring.rank}")
    return list(iter_representations(ring.degrees, d))


def graded_piece_dimension(ring: GradedRing, d: DegreeVector) -> int:
    count = count_representations(ring.degrees, vec(d))
    if count is None:
        raise InputError(f"graded piece in degree {format_vector(d)} exceeded the node cap")
    return int(count)
