"""
logmonoid Command Line
Parses commands, runs them against the library and writes deterministic JSON reports
"""

import argparse
import logging
import sys
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import colorlog

from . import __version__
from .config import load_settings
from .constants import (
    COLOR_LOG_FORMAT,
    DEFAULT_CECH_DEGREE,
    DEFAULT_CECH_DEPTH,
    DEFAULT_SEED,
    EXIT_OK,
    EXIT_VERIFICATION,
    LOG_FORMAT,
)
from .covers import (
    cover_fiber_product,
    cover_from_subgroup,
    cover_quotient,
    enumerate_connected_covers,
    fiber_functor,
    monodromy_rep,
    orbits,
)
from .errors import InputFileError, LogMonoidError, UsageError
from .finite_field import Fq
from .gammacoh import (
    cyclic_cohomology,
    koszul_cohomology,
    nearby_quasi_unipotent,
    nearby_unipotent,
    quasi_unipotent_exponent,
    stable_invariants_match,
    unipotent_part,
)
from .kummer import (
    abhyankar_classify,
    cokernel_group,
    is_kummer,
    is_log_etale,
    kummer_data,
    log_differentials_module,
    log_smooth_chart_check,
    minimal_divided_factorization,
    ramification_index,
    self_product_decomposition,
)
from .lattice import cokernel
from .monalg import verify_cech_exact
from .monoids import hom_properties, predicates, saturate, sharpen, units
from .replicate import SUITE_NAMES, replicate
from .serialization import (
    decode_hom,
    decode_module,
    decode_monoid,
    decode_point,
    encode_cover,
    encode_gamma_set,
    encode_group,
    encode_group_hom,
    encode_hom,
    encode_matrix,
    encode_monoid,
    encode_vector,
    encode_vectors,
    load_json,
    to_json_string,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------


def setup_logging(verbose: bool = False) -> None:
    """Colored stderr logging plus an optional plain log file (LOGMONOID_LOG_FILE)."""
    settings = load_settings()
    stream = logging.StreamHandler(sys.stderr)  # stdout carries reports only
    stream.setFormatter(colorlog.ColoredFormatter(COLOR_LOG_FORMAT))
    handlers: list[logging.Handler] = [stream]
    if settings.log_file:
        file_handler = logging.FileHandler(settings.log_file)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)
    logging.basicConfig(level="DEBUG" if verbose else settings.log_level, handlers=handlers, force=True)


# ---------------------------------------------------------------------------
# Commands and reports
# ---------------------------------------------------------------------------

# Options that only steer where and how loudly a report is written; kept out of its echo.
DELIVERY_OPTIONS = ("out", "verbose")


@dataclass(frozen=True)
class Command:
    """A parsed invocation: verb, subverb, flag values and input paths."""

    verb: str
    subverb: str
    options: dict = field(default_factory=dict)
    inputs: tuple[str, ...] = ()

    def option(self, name: str, default=None):
        value = self.options.get(name)
        return default if value is None else value

    def echo(self) -> dict:
        options = {
            k: v
            for k, v in sorted(self.options.items())
            if v not in (None, False) and k not in DELIVERY_OPTIONS
        }
        return {"verb": self.verb, "subverb": self.subverb, "options": options, "inputs": list(self.inputs)}


@dataclass
class Report:
    command: dict
    results: dict
    provenance: list[str] = field(default_factory=list)
    timing: dict | None = None
    exit_code: int = EXIT_OK

    def as_dict(self) -> dict:
        report = {"command": self.command, "results": self.results, "provenance": self.provenance}
        if self.timing is not None:
            report["timing"] = self.timing
        return report


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser raising UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vector_list(text: str) -> tuple[tuple[int, ...], ...]:
    """'1,0;0,2' -> ((1, 0), (0, 2)); an empty string is the empty list."""
    return tuple(_int_list(part) for part in text.split(";") if part.strip())


FLAGS: dict[str, dict] = {
    "m": {"type": int, "help": "Level / group order m"},
    "q": {"type": int, "help": "Field order q"},
    "depth": {"type": int, "default": DEFAULT_CECH_DEPTH, "help": "Čech depth s"},
    "degree": {"type": int, "default": DEFAULT_CECH_DEGREE, "help": "Čech degree bound D"},
    "subgroup": {"type": _vector_list, "default": (), "help": "Subgroup generators, e.g. '1,0;0,2'"},
    "subgroup2": {"type": _vector_list, "default": (), "help": "Second subgroup, same format"},
    "r": {"type": int, "help": "Rank"},
    "d": {"type": _int_list, "help": "Divisors d_1,...,d_r"},
    "primes": {"type": _int_list, "default": (), "help": "Primes invertible on the base"},
    "n": {"type": _int_list, "help": "Multiplicities n_1,...,n_k"},
    "r-max": {"type": int, "help": "Stabilization limit (LOGMONOID_R_MAX)"},
}

# verb -> subverb -> (input flag spellings, extra flags, required flags)
SUBCOMMANDS: dict[str, dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]]] = {
    "monoid": {
        "sat": (("--in",), (), ()),
        "props": (("--in",), (), ()),
        "sharpen": (("--in",), (), ()),
        "units": (("--in",), (), ()),
        "hom": (("--u", "--in"), (), ()),
    },
    "kummer": {
        "check": (("--u", "--in"), (), ()),
        "coker": (("--u", "--in"), (), ()),
        "ramification": (("--u", "--in"), (), ()),
        "decompose": (("--u", "--in"), (), ()),
        "factor": (("--u", "--in"), (), ()),
        "chart": (("--u", "--in"), ("primes",), ()),
        "abhyankar": ((), ("r", "d"), ("r", "d")),
    },
    "covers": {
        "enum": (("--point", "--in"), ("m",), ("m",)),
        "fiber": (("--point", "--in"), ("m", "subgroup"), ("m",)),
        "fiber-product": (("--point", "--in"), ("m", "subgroup", "subgroup2"), ("m",)),
        "quotient": (("--point", "--in"), ("m", "subgroup", "subgroup2"), ("m",)),
    },
    "cohom": {
        "koszul": (("--module", "--in"), (), ()),
        "nearby": (("--module", "--in"), ("n", "m", "r-max"), ("n",)),
        "cyclic": (("--module", "--in"), ("m",), ("m",)),
        "unipotent": (("--module", "--in"), (), ()),
    },
    "monalg": {
        "cech": (("--u", "--in"), ("q", "depth", "degree"), ("q",)),
    },
}


def _common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="Write the report to this path instead of stdout")
    parser.add_argument("--bound", type=int, help="Enumeration bound (overrides LOGMONOID_BOUND)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized procedures")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock timing in the report")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")


def build_parser() -> CommandParser:
    parser = CommandParser(prog="logmonoid", description="Monoids, Kummer covers and Γ-cohomology")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CommandParser)

    for verb, subverbs in SUBCOMMANDS.items():
        verb_parser = verbs.add_parser(verb)
        subparsers = verb_parser.add_subparsers(dest="subverb", required=True, parser_class=CommandParser)
        for subverb, (inputs, extras, required) in subverbs.items():
            sub = subparsers.add_parser(subverb)
            if inputs:
                sub.add_argument(*inputs, dest="input", required=True, help="Input JSON path")
            for name in extras:
                kwargs = dict(FLAGS[name])
                sub.add_argument(f"--{name}", required=name in required, **kwargs)
            _common_options(sub)

    rep = verbs.add_parser("replicate")
    rep.add_argument("subverb", choices=SUITE_NAMES, help="Suite to run")
    _common_options(rep)
    return parser


def parse(args: Sequence[str]) -> Command:
    """
    Parse command-line arguments.

    Raises:
        UsageError: Unknown verbs or flags, missing required flags
    """
    namespace = vars(build_parser().parse_args(list(args)))
    verb = namespace.pop("verb")
    subverb = namespace.pop("subverb")
    path = namespace.pop("input", None)
    options = {key.replace("_", "-"): value for key, value in namespace.items()}
    return Command(verb, subverb, options, (path,) if path else ())


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def _load(cmd: Command):
    return load_json(cmd.inputs[0])


def _monoid(cmd: Command) -> dict:
    if cmd.subverb == "hom":
        return _monoid_hom(cmd)
    monoid = decode_monoid(_load(cmd))
    if cmd.subverb == "sat":
        saturation = saturate(monoid)
        return {"input": encode_monoid(monoid), "saturation": encode_monoid(saturation)}
    if cmd.subverb == "props":
        return {"monoid": encode_monoid(monoid), "rank": monoid.rank, **predicates(monoid).as_dict()}
    if cmd.subverb == "sharpen":
        sharp, projection = sharpen(monoid)
        return {"sharp": encode_monoid(sharp), "projection": encode_group_hom(projection.group_hom)}
    unit_data = units(monoid)
    return {"generators": encode_vectors(unit_data.generators), "group": encode_group(unit_data.group)}


def _monoid_hom(cmd: Command) -> dict:
    u = decode_hom(_load(cmd))
    group, _ = cokernel(u.group_hom)
    return {"hom": encode_hom(u), "properties": hom_properties(u).as_dict(), "cokernel": encode_group(group)}


def _kummer(cmd: Command) -> dict:
    if cmd.subverb == "abhyankar":
        found = abhyankar_classify(cmd.option("r"), cmd.option("d"), bound=cmd.option("bound"))
        return {
            "count": len(found),
            "monoids": [
                {"subgroup": encode_vectors(a.subgroup), "generators": encode_vectors(a.generators)} for a in found
            ],
        }

    u = decode_hom(_load(cmd))
    if cmd.subverb == "check":
        check = is_kummer(u)
        witness = encode_vector(check.witness) if check.witness is not None else None
        return {"is_kummer": check.is_kummer, "clause": check.clause, "witness": witness}
    if cmd.subverb == "coker":
        return {"G": encode_group(cokernel_group(u))}
    if cmd.subverb == "chart":
        primes = cmd.option("primes", ())
        check = log_smooth_chart_check(u, primes)
        result = {
            "passed": check.passed,
            "kernel": encode_group(check.kernel_group),
            "cokernel": encode_group(check.cokernel_group),
            "offending_primes": list(check.offending_primes),
            "reason": check.reason,
            "log_etale": is_log_etale(u, primes),
        }
        if check.passed:
            omega = log_differentials_module(u, primes)
            result["differentials"] = {
                "group": encode_group(omega.group),
                "relative_dimension": omega.relative_dimension,
                "basis_lifts": encode_vectors(omega.basis_lifts),
            }
        return result

    data = kummer_data(u)
    if cmd.subverb == "ramification":
        return {"ramification_index": ramification_index(data), "exponent": data.exponent}
    if cmd.subverb == "decompose":
        decomposition = self_product_decomposition(data)
        return {
            "amalgamated": encode_monoid(decomposition.amalgamated),
            "product": encode_monoid(decomposition.product),
            "forward": encode_vectors(decomposition.forward.images),
            "backward": encode_vectors(decomposition.backward.images),
            "G": encode_group(data.cokernel_group),
        }
    factorization = minimal_divided_factorization(data)
    return {"n": factorization.n, "embedding": encode_hom(factorization.embedding)}


def _covers(cmd: Command) -> dict:
    point = decode_point(_load(cmd))
    m = cmd.option("m")
    if cmd.subverb == "enum":
        covers = enumerate_connected_covers(point, m, bound=cmd.option("bound"))
        return {"level": m, "count": len(covers), "covers": [encode_cover(c) for c in covers]}

    cover = cover_from_subgroup(point, m, cmd.option("subgroup"))
    if cmd.subverb == "fiber":
        fiber = fiber_functor(cover)
        return {
            "cover": encode_cover(cover),
            "fiber": encode_gamma_set(fiber),
            "orbits": [list(o) for o in orbits(fiber)],
            "monodromy": [encode_matrix(p) for p in monodromy_rep(cover)],
        }
    if cmd.subverb == "fiber-product":
        second = cover_from_subgroup(point, m, cmd.option("subgroup2"))
        product = cover_fiber_product(cover, second)
        return {
            "level": product.level,
            "multiplicity": product.multiplicity,
            "component": encode_cover(product.component),
            "amalgamated": encode_monoid(product.amalgamated),
            "orbits": [list(o) for o in product.orbits],
        }
    quotient = cover_quotient(cover, cmd.option("subgroup2"))
    return {
        "cover": encode_cover(cover),
        "quotient": encode_cover(quotient.cover),
        "kernel_order": quotient.kernel_order,
        "fibers": [list(f) for f in quotient.restriction.fibers()],
    }


def _cohom(cmd: Command) -> dict:
    module = decode_module(_load(cmd))
    if cmd.subverb == "koszul":
        cohomology = koszul_cohomology(module)
        return {"dims": list(cohomology.dims), "euler_characteristic": cohomology.euler_characteristic}
    if cmd.subverb == "cyclic":
        return {"dims": list(cyclic_cohomology(cmd.option("m"), module))}
    if cmd.subverb == "unipotent":
        return {
            "unipotent_dim": unipotent_part(module).shape[0],
            "exponent": quasi_unipotent_exponent(module),
            "stable_invariants_match": stable_invariants_match(module) if module.n == 1 else None,
        }

    multiplicities = cmd.option("n")
    m = cmd.option("m")
    if m is None:
        nearby = nearby_unipotent(module, multiplicities, r_max=cmd.option("r-max"))
        shapiro = None
    else:
        qunip = nearby_quasi_unipotent(module, multiplicities, m, r_max=cmd.option("r-max"))
        nearby, shapiro = qunip.nearby, qunip.shapiro
    result = {
        "dims": list(nearby.dims),
        "stabilization": nearby.stabilization,
        "exponent": nearby.exponent,
        "raw": [list(r) for r in nearby.raw],
    }
    if shapiro is not None:
        result["shapiro"] = {"passed": shapiro.passed, "induced": [list(x) for x in shapiro.induced]}
    return result


def _monalg(cmd: Command) -> tuple[dict, int]:
    data = kummer_data(decode_hom(_load(cmd)))
    report = verify_cech_exact(data, cmd.option("degree"), cmd.option("depth"), Fq(cmd.option("q")))
    result = {
        "terms": list(report.terms),
        "homology": list(report.homology),
        "h0_correct": report.h0_correct,
        "higher_vanish": report.higher_vanish,
        "decomposition_consistent": report.decomposition_consistent,
        "exact": report.exact,
    }
    return result, EXIT_OK if report.exact else EXIT_VERIFICATION


def _replicate(cmd: Command) -> tuple[dict, int]:
    results = replicate(cmd.subverb, cmd.option("seed"))
    timing = bool(cmd.option("timing"))
    body = {r.name: r.as_dict(timing=timing) for r in results}
    passed = all(r.passed for r in results)
    return {"passed": passed, "suites": body}, EXIT_OK if passed else EXIT_VERIFICATION


HANDLERS: dict[str, Callable[[Command], dict | tuple[dict, int]]] = {
    "monoid": _monoid,
    "kummer": _kummer,
    "covers": _covers,
    "cohom": _cohom,
    "monalg": _monalg,
    "replicate": _replicate,
}


def run_command(cmd: Command) -> Report:
    """
    Execute a parsed command.

    Returns:
        Report: Results, provenance and the exit code the command maps to

    Raises:
        LogMonoidError: Input, bound and verification errors from the library
    """
    logger.debug(f"running {cmd.verb} {cmd.subverb} with {cmd.options}")
    start = time.perf_counter()
    outcome = HANDLERS[cmd.verb](cmd)
    results, exit_code = outcome if isinstance(outcome, tuple) else (outcome, EXIT_OK)
    elapsed = time.perf_counter() - start

    provenance = [f"logmonoid {__version__}"]
    if cmd.verb == "replicate":
        provenance.append(f"seed {cmd.option('seed')}")
    timing = {"seconds": round(elapsed, 3)} if cmd.option("timing") else None
    return Report(cmd.echo(), results, provenance, timing, exit_code)


def write_report(report: Report, out: str | None) -> None:
    text = to_json_string(report.as_dict())
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot write {out}: {e.strerror or e}") from e
    logger.info(f"report written to {out}")


def main(argv: Sequence[str] | None = None) -> int:
    """Parse, run and report; returns the process exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        setup_logging(verbose="--verbose" in args)
        command = parse(args)
        report = run_command(command)
        write_report(report, command.option("out"))
    except LogMonoidError as e:
        logger.error(f"{e.kind} error: {e}")
        return e.exit_code
    return report.exit_code


def run():
    """Entry point for the console script."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
