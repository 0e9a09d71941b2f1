import argparse
import json
import pathlib
import sys

from loguru import logger

from multireg import get_global_configs, set_global_configs
from multireg.coarsen import (
    bstar_regular,
    halfplane_implies_reg,
    vreg_membership,
    vregnum,
)
from multireg.cohomology import (
    MonomialModule,
    cech_oracle_piece,
    coh_free_piece,
    h0_torsion_piece,
    reg_membership,
    regS_membership,
    regS_region,
    support_semigroups,
)
from multireg.configs import add_common_arguments, load_configs
from multireg.family import (
    family_from_ring,
    family_matches_ideal,
    orthogonal_coarsenings,
    regBv_membership,
    regstar_membership,
    vres_pipeline,
)
from multireg.golden import SCENARIOS, run_scenario
from multireg.model.errors import InputError, MultiregError, PreconditionError
from multireg.model.monomial import Monomial
from multireg.model.region import ResolutionTypeJ, parse_resolution_type
from multireg.model.status import DECLARED, EXACT, Verdict
from multireg.model.vector import parse_vector, parse_vectors, parse_window, zero
from multireg.region import DregFamily, reg_of_J, reg_of_J_level, region_contains_point
from multireg.report import Report
from multireg.resolution import (
    check_degree_bounds,
    complex_from_dict,
    complex_to_dict,
    extract_type_J,
    minimal_resolution,
    minimalize,
    taylor_complex,
    validate_complex,
)
from multireg.ring import GradedRing, classify_coarsening, load_ring, parse_monomial
from multireg.selftest import SUITES, run_selftest

DEFAULT_WINDOW = "-5..5"


def setup_logger():
    """配置 logger，从配置文件读取日志级别"""
    config = get_global_configs()
    logger.remove()
    logger.add(sys.stderr, level=config.log_level)


# ---------------------------------------------------------------------------
# argument helpers


def _monomials(text: str, ring: GradedRing) -> list[Monomial]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise InputError(f"empty monomial list {text!r}")
    return [parse_monomial(t, ring.names) for t in items]


def _module_type(args: argparse.Namespace, ring: GradedRing) -> ResolutionTypeJ:
    """M from ``--J`` (a resolution type) or ``--quotient`` (S/I); S itself otherwise."""
    if args.J and args.quotient:
        raise InputError("--J and --quotient are mutually exclusive")
    if args.J:
        return parse_resolution_type(args.J, ring.rank)
    if args.quotient:
        complex_ = minimal_resolution(ring, _monomials(args.quotient, ring))
        return extract_type_J(complex_)
    return ResolutionTypeJ.free([zero(ring.rank)])


def _check_rank(ring: GradedRing, d, what: str):
    if len(d) != ring.rank:
        raise InputError(f"{what} {d} does not have rank {ring.rank}")
    return d


def _uncertified(J: ResolutionTypeJ, verdict: Verdict) -> bool:
    return verdict is Verdict.UNKNOWN or (verdict is Verdict.NO and not J.is_free)


# ---------------------------------------------------------------------------
# subcommands


def cmd_coh(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    d = _check_rank(ring, parse_vector(args.d), "degree")
    shifts = parse_vectors(args.shift) if args.shift else [zero(ring.rank)]
    for e in shifts:
        _check_rank(ring, e, "shift")
    ideal = _monomials(args.ideal, ring) if args.ideal else None
    report = Report("coh")
    report.add("ring", ring.name)
    report.add("index", args.i)
    report.add("degree", d)

    if args.quotient:
        module = MonomialModule.quotient(_monomials(args.quotient, ring), shifts[0])
        if args.i == 0:
            piece = h0_torsion_piece(ring, module, d, exact=args.exact, ideal=ideal)
            report.add("dimension", piece.dimension)
            report.add("stop_reason", piece.stop_reason)
            report.undecided = piece.heuristic
        else:
            oracle = cech_oracle_piece(ring, module, args.i, d, ideal=ideal)
            report.add("dimension", oracle.dimension)
            report.add("status", oracle.status)
            report.undecided = oracle.dimension is None
        return report

    dimension = coh_free_piece(ring, shifts, args.i, d, ideal)
    report.add("dimension", dimension)
    report.undecided = dimension is None
    if args.support:
        support = support_semigroups(ring, args.i, ideal)
        report.add("support", [piece.to_dict(ring.names) for piece in support.pieces])
    if args.oracle:
        oracle = cech_oracle_piece(ring, MonomialModule.free(shifts), args.i, d, ideal=ideal)
        report.add("oracle", {"dimension": oracle.dimension, "status": oracle.status})
        decided = oracle.dimension is not None and dimension is not None
        if decided and oracle.dimension != dimension:
            logger.error(f"[cli] oracle gives {oracle.dimension}, lattice count gives {dimension}")
            report.failed = True
    return report


def _regs(ring: GradedRing, window_text: str, report: Report):
    regS = regS_region(ring, parse_window(window_text, ring.rank))
    if regS.exactness not in (EXACT, DECLARED):
        report.undecided = True
    return regS


def cmd_regs(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    report = Report("regS")
    report.add("ring", ring.name)
    report.add("region", _regs(ring, args.window, report))
    if args.m:
        m = _check_rank(ring, parse_vector(args.m), "degree")
        verdict = regS_membership(ring, m)
        report.add("member", verdict)
        report.undecided = report.undecided or verdict is Verdict.UNKNOWN
    return report


def cmd_regj(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    J = _module_type(args, ring)
    report = Report("regJ")
    report.add("ring", ring.name)
    report.add("J", J.to_dict()["levels"])
    regS = _regs(ring, args.window, report)
    if args.level is not None:
        region = reg_of_J_level(J, regS, ring.config_c, args.level)
    else:
        region = reg_of_J(J, regS, ring.config_c)
    report.add("region", region)
    if args.m:
        m = _check_rank(ring, parse_vector(args.m), "degree")
        report.add("in_region", region_contains_point(region, m))
        verdict = reg_membership(ring, J, m)
        report.add("in_reg_of_module", verdict)
        report.undecided = report.undecided or _uncertified(J, verdict)
    return report


def cmd_dreg(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    D = [_check_rank(ring, g, "generator") for g in parse_vectors(args.D)]
    report = Report("dreg")
    report.add("ring", ring.name)
    family = DregFamily.of(D, _regs(ring, args.regs_window, report), ring.config_c)
    report.add("D", family.D)
    if args.d:
        d = _check_rank(ring, parse_vector(args.d), "degree")
        report.add("member", family.contains(args.p, d))
        report.add("levels", {str(i): family.contains_level(args.p, i, d) for i in (0, 1)})
        return report
    enumeration = family.enumerate(args.p, parse_window(args.window, ring.rank))
    report.add("level_set", enumeration.to_dict())
    return report


def cmd_resolve(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    if bool(args.quotient) == bool(args.complex):
        raise InputError("give exactly one of --quotient and --complex")
    if args.complex:
        try:
            data = json.loads(pathlib.Path(args.complex).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read complex {args.complex!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.complex}: {exc.msg}", exc.lineno, exc.colno) from exc
        complex_ = complex_from_dict(ring, data)
    else:
        complex_ = taylor_complex(ring, _monomials(args.quotient, ring))
    if not args.taylor:
        complex_ = minimalize(complex_)
    problems = validate_complex(complex_)
    J = extract_type_J(complex_)

    report = Report("resolve")
    report.add("ring", ring.name)
    report.add("minimal", complex_.is_minimal)
    report.add("betti_numbers", list(complex_.betti_numbers()))
    report.add("J", J.to_dict()["levels"])
    if problems:
        report.add("problems", problems)
        report.failed = True
    if args.v:
        coarsenings = [classify_coarsening(ring, v) for v in parse_vectors(args.v)]
        bounds = list(parse_vector(args.b)) if args.b else []
        report.add("degree_bounds", check_degree_bounds(J, coarsenings, bounds).to_dict())
    if args.dump:
        pathlib.Path(args.dump).write_text(
            json.dumps(complex_to_dict(complex_), indent=2), encoding="utf-8"
        )
        logger.info(f"[cli] wrote complex to {args.dump}")
    return report


def cmd_coarse(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    J = _module_type(args, ring)
    vectors = parse_vectors(args.v)
    report = Report("coarse")
    report.add("ring", ring.name)
    results = []
    for v in vectors:
        cv = classify_coarsening(ring, v)
        entry: dict[str, object] = {"coarsening": cv.to_dict()}
        number = vregnum(ring, J, cv)
        entry["regularity_number"] = number.to_dict()
        report.undecided = report.undecided or number.upper_bound
        if args.p is not None:
            verdict = vreg_membership(ring, J, cv, args.p)
            entry["member"] = verdict
            report.undecided = report.undecided or _uncertified(J, verdict)
        if args.m:
            m = _check_rank(ring, parse_vector(args.m), "degree")
            conclusion = halfplane_implies_reg(ring, J, m, cv.v, args.k)
            entry["halfplane"] = conclusion.to_dict()
            if conclusion.in_reg is not None:
                report.undecided = report.undecided or _uncertified(J, conclusion.in_reg)
        results.append(entry)
    report.add("coarsenings", results)
    if args.b:
        bounds = list(parse_vector(args.b))
        verdict = bstar_regular(ring, J, vectors, bounds)
        report.add("bstar_regular", verdict)
        report.undecided = report.undecided or _uncertified(J, verdict)
    return report


def cmd_family(args: argparse.Namespace) -> Report:
    ring = load_ring(args.ring)
    J = _module_type(args, ring)
    family = family_from_ring(ring)
    report = Report("family")
    report.add("ring", ring.name)
    report.add("matches_irrelevant_ideal", family_matches_ideal(ring, family))
    try:
        family = orthogonal_coarsenings(ring, family)
        orthogonal = True
    except PreconditionError as exc:
        logger.warning(f"[cli] no orthogonal coarsenings: {exc}")
        orthogonal = False
    report.add("orthogonal", orthogonal)
    report.add("family", family.to_dict(ring.names))

    if args.m:
        m = _check_rank(ring, parse_vector(args.m), "degree")
        verdict = regstar_membership(ring, family, J, m)
        report.add("regstar", verdict)
        report.undecided = report.undecided or _uncertified(J, verdict)
        if orthogonal:
            verdict = regBv_membership(ring, family, J, m)
            report.add("regBv", verdict)
            report.undecided = report.undecided or _uncertified(J, verdict)
    if args.b:
        if not args.m:
            raise InputError("--b needs --m")
        values = parse_vector(args.b)
        subsets = family.subsets()
        if len(values) != len(subsets):
            raise InputError(f"{len(values)} bounds given, the family has {len(subsets)} subsets")
        window = parse_window(args.window, ring.rank) if args.window else None
        result = vres_pipeline(ring, family, J, m, dict(zip(subsets, values)), window)
        report.add("syzygy_bounds", result.to_dict(ring.names))
        report.undecided = report.undecided or result.verdict is not Verdict.YES
    return report


def cmd_examples(args: argparse.Namespace) -> Report:
    report = Report("examples")
    for name in args.scenario or list(SCENARIOS):
        result = run_scenario(name)
        report.add(name, {"passed": result.passed, "differences": result.differences})
        report.failed = report.failed or not result.passed
    return report


def cmd_selftest(args: argparse.Namespace) -> Report:
    report = Report("selftest")
    for result in run_selftest(args.suite):
        report.add(result.name, result.to_dict())
        report.failed = report.failed or not result.passed
    return report


# ---------------------------------------------------------------------------
# parser


def _module_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--J", help='resolution type, e.g. "0:(0,0); 1:(1,1) (1,1); 2:(1,2)"')
    parser.add_argument(
        "--quotient", help='monomial generators of I for M = S/I, e.g. "x0*y0,x0*y1"'
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multireg",
        description="Multigraded regularity regions, local cohomology and syzygy degree bounds",
    )
    common = argparse.ArgumentParser(add_help=False)
    add_common_arguments(common)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, handler, help_text: str, ring: bool = True) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        if ring:
            p.add_argument("ring", help="ring spec file (TOML)")
        p.set_defaults(handler=handler)
        return p

    p = sub("coh", cmd_coh, "dimension of H^i_B(M)_d")
    p.add_argument("--i", type=int, required=True, help="cohomological index")
    p.add_argument("--d", required=True, help="degree, e.g. (1,-2) or -4")
    p.add_argument("--shift", help="shifts e of S(-e), default 0")
    p.add_argument("--ideal", help="monomial generators of the local cohomology ideal, default B")
    p.add_argument("--quotient", help="monomial generators of I for M = S/I")
    p.add_argument("--exact", action="store_true", help="exact saturation test for H^0")
    p.add_argument("--support", action="store_true", help="list the support pieces")
    p.add_argument("--oracle", action="store_true", help="cross-check with the Cech oracle")

    p = sub("regS", cmd_regs, "reg(S) from a window scan")
    p.add_argument("--window", default=DEFAULT_WINDOW)
    p.add_argument("--m", help="test membership of one degree")

    p = sub("regJ", cmd_regj, "reg(J) of a resolution type")
    _module_arguments(p)
    p.add_argument("--window", default=DEFAULT_WINDOW, help="window for reg(S)")
    p.add_argument("--level", type=int, help="only reg^i(J)")
    p.add_argument("--m", help="test membership of one degree")

    p = sub("dreg", cmd_dreg, "degrees allowed at level p when D stays regular")
    p.add_argument("--D", required=True, help='generators of D, e.g. "(0,0) (1,1)"')
    p.add_argument("--p", type=int, required=True, help="resolution level")
    p.add_argument("--d", help="test membership of one degree")
    p.add_argument("--window", default=DEFAULT_WINDOW, help="enumeration window")
    p.add_argument("--regs-window", default=DEFAULT_WINDOW, help="window for reg(S)")

    p = sub("resolve", cmd_resolve, "minimal resolution of S/I or a supplied complex")
    p.add_argument("--quotient", help="monomial generators of I")
    p.add_argument("--complex", help="complex in the JSON interchange format")
    p.add_argument("--taylor", action="store_true", help="skip minimalization")
    p.add_argument("--v", help="coarsening vectors for the degree-bound check")
    p.add_argument("--b", help="bounds b_j, one per coarsening vector")
    p.add_argument("--dump", help="write the resulting complex as JSON")

    p = sub("coarse", cmd_coarse, "v-regularity and half-plane criteria")
    _module_arguments(p)
    p.add_argument("--v", required=True, help='coarsening vectors, e.g. "(1,0) (1,1)"')
    p.add_argument("--p", type=int, help="test p in reg_v(M)")
    p.add_argument("--m", help="degree for the half-plane criterion")
    p.add_argument("--k", type=int, default=1, help="shift k of the half-plane criterion")
    p.add_argument("--b", help="bounds b_j, one per coarsening vector")

    p = sub("family", cmd_family, "Batyrev family of ideals")
    _module_arguments(p)
    p.add_argument("--m", help="degree to test")
    p.add_argument("--b", help="bounds b_I, one per nonempty I in order of size")
    p.add_argument("--window", help="window for the syzygy level sets")

    p = sub("examples", cmd_examples, "golden scenarios", ring=False)
    p.add_argument("--scenario", action="append", choices=sorted(SCENARIOS))

    p = sub("selftest", cmd_selftest, "invariant suites", ring=False)
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    return parser


def main(argv: list[str] | None = None) -> int:
    """命令行入口"""
    args = build_parser().parse_args(argv)
    try:
        set_global_configs(load_configs(args))
    except MultiregError as exc:
        print(f"multireg: {exc}", file=sys.stderr)
        return 1
    setup_logger()
    config = get_global_configs()

    try:
        report = args.handler(args)
    except MultiregError as exc:
        logger.debug(f"[cli] {type(exc).__name__}: {exc}")
        print(f"multireg: {exc}", file=sys.stderr)
        return 1
    print(report.render(config.output_format))
    if report.failed:
        return 1
    return 2 if report.undecided else 0


if __name__ == "__main__":
    sys.exit(main())
