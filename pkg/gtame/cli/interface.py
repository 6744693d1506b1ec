"""Command line surface of gtame."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence

from pydantic import ValidationError

from .. import fixtures
from ..algebra import BoundQuiverAlgebra
from ..calculus import check_conditions, direct_sum_verdict, generic_decomposition, is_tame
from ..components import (
    closed_form_pairing,
    component_report,
    d_of_g,
    gl_dim,
    pairing,
    tau_reduced_sum_check,
    wildness_verdict,
)
from ..config import RunConfig, SampleConfig, log_level, seed_from_environment
from ..core import get_algebra
from ..errors import (
    AlgebraSpecError,
    ConfigurationError,
    DimensionMismatch,
    GTameError,
    LowConfidence,
    NotGenericallyInjective,
)
from ..hunt import HuntBounds, hunt
from ..reports import (
    AlgebraCheckDocument,
    AlgebraEcho,
    ComponentDocument,
    ConditionsDocument,
    ConfigEcho,
    DecompositionDocument,
    DimensionVectorDocument,
    Document,
    EInvariantDocument,
    HuntDocument,
    PairingDocument,
    Quantity,
    TameDocument,
    TauReducedDocument,
    ZDimDocument,
    exact,
    whp,
)
from .render import emit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_LOW_CONFIDENCE = 3

Handler = Callable[[argparse.Namespace, RunConfig], tuple[Document, bool]]


def parse_vector(text: str) -> tuple[int, ...]:
    """'1,-1' -> (1, -1)."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _load(args: argparse.Namespace, run: RunConfig) -> BoundQuiverAlgebra:
    spec = fixtures.load(args.file)
    return get_algebra(spec, run.sampling.prime)


def _head(command: str, run: RunConfig, algebra: BoundQuiverAlgebra | None = None) -> dict:
    return {
        "command": command,
        "config": ConfigEcho.of(run.sampling),
        "algebra": AlgebraEcho.of(algebra) if algebra is not None else None,
    }


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------


def cmd_algebra_check(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    summary = algebra.summary()
    doc = AlgebraCheckDocument(
        **_head("algebra-check", run, algebra),
        dimension=exact(summary["dimension"]),
        cartan=exact(summary["cartan"]),
        projective_dims=summary["projective_dims"],
        injective_dims=summary["injective_dims"],
        basis=summary["basis"],
        associative=algebra.check_associativity(),
    )
    return doc, False


def cmd_gdecomp(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    report = generic_decomposition(algebra, args.g, run.sampling)
    doc = DecompositionDocument(
        **_head("gdecomp", run, algebra),
        g=list(args.g),
        summand_count=whp(len(report.summands)),
        decomposition=report,
    )
    return doc, report.low_confidence


def cmd_einv(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    verdict = direct_sum_verdict(algebra, args.g, args.h, run.sampling)
    semantics = "exact" if verdict.exact else "upper-bound-whp"
    doc = EInvariantDocument(
        **_head("einv", run, algebra),
        g=list(args.g),
        h=list(args.h),
        e_gh=Quantity(value=verdict.e_gh, semantics=semantics),
        e_hg=Quantity(value=verdict.e_hg, semantics=semantics),
        direct_sum=Quantity(value=verdict.holds, semantics=semantics),
    )
    return doc, False


def cmd_tame(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    verdict = direct_sum_verdict(algebra, args.g, args.g, run.sampling)
    semantics = "exact" if verdict.exact else "upper-bound-whp"
    doc = TameDocument(
        **_head("tame", run, algebra),
        g=list(args.g),
        tame=Quantity(value=is_tame(algebra, args.g, run.sampling), semantics=semantics),
        e_self=Quantity(value=verdict.e_gh, semantics=semantics),
    )
    return doc, False


def cmd_dvec(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    estimate = d_of_g(algebra, args.g, run.sampling)
    doc = DimensionVectorDocument(
        **_head("dvec", run, algebra),
        g=list(args.g),
        d=whp(estimate.value),
        confident=estimate.confident,
        kept=estimate.kept,
    )
    return doc, not estimate.confident


def cmd_zdim(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    estimate = d_of_g(algebra, args.g, run.sampling)
    d = estimate.value
    doc = ZDimDocument(
        **_head("zdim", run, algebra),
        g=list(args.g),
        d=whp(d),
        gl_dim=whp(gl_dim(d)),
        dim_z=whp(gl_dim(d) - pairing(args.g, d)),
    )
    return doc, not estimate.confident


def cmd_pairing(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    low = False
    if args.d is not None:
        if len(args.d) != algebra.n:
            raise DimensionMismatch(f"expected {algebra.n} entries, got {len(args.d)}", "--d")
        d = exact(list(args.d))
    else:
        estimate = d_of_g(algebra, args.g, run.sampling)
        d, low = whp(estimate.value), not estimate.confident
    try:
        closed = exact(closed_form_pairing(algebra, args.g, run.sampling))
    except NotGenericallyInjective:
        logger.info(f"Hom({tuple(args.g)}) is not generically injective; no closed form")
        closed = None
    doc = PairingDocument(
        **_head("pairing", run, algebra),
        g=list(args.g),
        d=d,
        pairing=Quantity(value=pairing(args.g, d.value), semantics=d.semantics),
        closed_form=closed,
    )
    return doc, low


def cmd_component(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    report = component_report(algebra, args.g, run.sampling)
    verdict = wildness_verdict(algebra, args.g, run.sampling)
    doc = ComponentDocument(
        **_head("component", run, algebra),
        d=whp(report.d_of_g),
        dim_z=whp(report.dim_z),
        component_count=whp(report.component_count),
        pairing=whp(report.pairing),
        verdict=whp(verdict.verdict),
        component=report,
    )
    return doc, report.low_confidence or not verdict.consistent


def cmd_conditions(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    report = check_conditions(algebra, args.g, run.t_max, run.sampling)
    doc = ConditionsDocument(**_head("conditions", run, algebra), conditions=report)
    return doc, report.low_confidence or not report.chain_consistent


def cmd_tau_reduced(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    algebra = _load(args, run)
    report = tau_reduced_sum_check(algebra, args.g, run.sampling)
    doc = TauReducedDocument(**_head("tau-reduced", run, algebra), holds=whp(report.holds), check=report)
    return doc, not report.cross_validated


def cmd_hunt(args: argparse.Namespace, run: RunConfig) -> tuple[Document, bool]:
    bounds = HuntBounds(
        max_vertices=args.max_vertices,
        max_arrows=args.max_arrows,
        relations=args.relations,
        nilpotency=args.nilpotency,
        g_max=args.gmax,
        t_max=max(2, run.t_max),
    )
    result = hunt(bounds, args.budget, run.sampling)
    count = len(result.findings)
    doc = HuntDocument(
        **_head("hunt", run),
        findings_count=Quantity(value=count, semantics="upper-bound-whp" if count else "bounded-exhausted"),
        hunt=result,
    )
    return doc, False


COMMANDS: dict[str, Handler] = {
    "algebra-check": cmd_algebra_check,
    "gdecomp": cmd_gdecomp,
    "einv": cmd_einv,
    "tame": cmd_tame,
    "dvec": cmd_dvec,
    "zdim": cmd_zdim,
    "pairing": cmd_pairing,
    "component": cmd_component,
    "conditions": cmd_conditions,
    "tau-reduced": cmd_tau_reduced,
    "hunt": cmd_hunt,
}


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtame", description="g-vector calculus for bound quiver algebras")
    parser.add_argument("--prime", type=int, help="Field size (default: GTAME_PRIME or 1000000007)")
    parser.add_argument("--seed", type=int, help="Root seed of all sampling (default: GTAME_SEED or 0)")
    parser.add_argument("--samples", type=int, help="General elements per estimate")
    parser.add_argument("--rounds", type=int, help="Fitting split attempts per summand")
    parser.add_argument("--cross-primes", type=int, help="Primes that must agree on decompositions")
    parser.add_argument("--tmax", type=int, help="Largest multiple probed by conditions and hunt")
    parser.add_argument("--machine", action="store_true", help="Emit one JSON document on standard output")
    parser.add_argument("--allow-low-confidence", action="store_true", help="Exit 0 on low-confidence results")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("--quiet", action="store_true", help="Log errors only")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="Algebra JSON file or fixture name (A2, K3, ...)")
        return p

    with_file("algebra-check", "Dimension, Cartan matrix and projective dimension vectors")
    for name, help in [
        ("gdecomp", "Generic decomposition of g"),
        ("tame", "Whether g is tame"),
        ("dvec", "Dimension vector of a general cokernel of g"),
        ("zdim", "Dimension of the component Z_g"),
        ("component", "Full component report for g"),
        ("conditions", "Bounded ray, regularity and non-decreasing probes"),
    ]:
        with_file(name, help).add_argument("--g", type=parse_vector, required=True, help="g-vector, e.g. --g=1,-1")

    einv = with_file("einv", "E-invariants e(g,h), e(h,g) and the direct sum test")
    einv.add_argument("--g", type=parse_vector, required=True)
    einv.add_argument("--h", type=parse_vector, required=True)

    pair = with_file("pairing", "⟨g, d⟩ with d given or estimated, plus the closed form when it applies")
    pair.add_argument("--g", type=parse_vector, required=True)
    pair.add_argument("--d", type=parse_vector, help="Dimension vector; defaults to d(g)")

    reduced = with_file("tau-reduced", "Whether Z_g1 ⊕ ... ⊕ Z_gs is generically τ-reduced")
    reduced.add_argument("--g", type=parse_vector, action="append", required=True, help="Repeat for each summand")

    h = sub.add_parser("hunt", help="Search random algebras for drops of |ind(t·g)|")
    h.add_argument("--max-vertices", type=int, default=3)
    h.add_argument("--max-arrows", type=int, default=4)
    h.add_argument("--relations", type=int, default=1)
    h.add_argument("--nilpotency", type=int, default=3)
    h.add_argument("--gmax", type=int, default=2)
    h.add_argument("--budget", type=int, default=20, help="Number of trials")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    sampling = SampleConfig.build(
        prime=args.prime, seed=args.seed, samples=args.samples, rounds=args.rounds, cross_primes=args.cross_primes
    )
    try:
        run = RunConfig(
            algebra=getattr(args, "file", None),
            sampling=sampling,
            mode="machine" if args.machine else "human",
            allow_low_confidence=args.allow_low_confidence,
            seed_pinned=args.seed is not None or seed_from_environment() is not None,
            **({"t_max": args.tmax} if args.tmax is not None else {}),
        )
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e
    run.check_reproducible()
    return run


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else log_level()
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Parse, run one subcommand, emit its document; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        _configure_logging(args)
        run = _run_config(args)
        document, low = COMMANDS[args.command](args, run)
    except (AlgebraSpecError, DimensionMismatch, ConfigurationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as e:
        print(f"error: invalid input\n{e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"error: no such algebra file: {e.filename}", file=sys.stderr)
        return EXIT_INPUT
    except LowConfidence as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LOW_CONFIDENCE
    except (GTameError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE

    emit(document, machine=run.mode == "machine")
    if low and not run.allow_low_confidence:
        print("error: low confidence result (pass --allow-low-confidence to accept)", file=sys.stderr)
        return EXIT_LOW_CONFIDENCE
    return EXIT_OK


def run_cli() -> None:
    """Synchronous entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
