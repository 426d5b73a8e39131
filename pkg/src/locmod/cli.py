"""Command-line front end.

Subcommands: `extract` (write a module), `check` (per-axiom locality
verdicts), `genuine` (deduplicated single-axiom-signature modules),
`compare` (the syntactic-vs-semantic experiment), and a hidden `oracle`
for brute-force countermodel search.

Exit codes: 0 success, 1 parse or usage error, 2 unsupported construct,
3 unknown verdicts present under --strict-verdicts, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import os
import sys

from .extractor import SEM_STAR, SYN_STAR, extract_module, extract_star, genuine_modules
from .harness import (
    MODES,
    InvariantViolation,
    SamplingConfig,
    render_report,
    run_comparison,
)
from .model import LocalityFlavor, Ontology, Signature
from .oracle import find_countermodel
from .parser import ParseErrorKind, ParseFailure, parse_ontology, parse_signature
from .semantic import is_semantically_local, substitute
from .syntactic import is_syntactically_local
from .tableau import Budget

__all__ = ["main"]

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNSUPPORTED = 2
EXIT_UNKNOWN_VERDICTS = 3
EXIT_INVARIANT = 4

_FLAVORS = {
    "bot": LocalityFlavor.SYN_BOT,
    "top": LocalityFlavor.SYN_TOP,
    "sem-bot": LocalityFlavor.SEM_BOT,
    "sem-top": LocalityFlavor.SEM_TOP,
}
_STAR_FLAVORS = {"star": SYN_STAR, "sem-star": SEM_STAR}

ENV_MAX_STEPS = "LOCMOD_MAX_STEPS"
ENV_MAX_SECONDS = "LOCMOD_MAX_SECONDS"


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_budget() -> Budget:
    steps = int(os.environ.get(ENV_MAX_STEPS, Budget.max_steps))
    seconds = float(os.environ.get(ENV_MAX_SECONDS, Budget.max_seconds))
    return Budget(steps, seconds)


def _add_budget_flags(p: argparse.ArgumentParser):
    base = _default_budget()
    p.add_argument(
        "--max-steps",
        type=int,
        default=base.max_steps,
        help="tableau rule-application limit per check",
    )
    p.add_argument(
        "--max-seconds",
        type=float,
        default=base.max_seconds,
        help="wall-clock limit per check, in seconds",
    )


def _add_input_flags(p: argparse.ArgumentParser, with_signature: bool = True):
    p.add_argument("--ontology", required=True, help="ontology file (functional syntax)")
    if with_signature:
        p.add_argument("--signature", help="seed signature file")
        p.add_argument(
            "--terms",
            help="inline seed signature, e.g. 'C:Student,R:hasChildren' "
            "(wins over --signature)",
        )
    p.add_argument("--strict", action="store_true", help="require entity declarations")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="locmod",
        description="Locality-based module extraction and the syntactic-vs-semantic "
        "locality comparison experiment.",
    )
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("extract", help="extract a locality-based module")
    _add_input_flags(p)
    p.add_argument(
        "--flavor",
        required=True,
        choices=sorted(_FLAVORS) + sorted(_STAR_FLAVORS),
        help="locality notion (star variants alternate top/bottom to a fixpoint)",
    )
    p.add_argument("--refined", action="store_true", help="detect inverse-role tautologies")
    p.add_argument("--strict-verdicts", action="store_true")
    p.add_argument("--out", help="write the module here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", help="trace per-round additions")
    _add_budget_flags(p)

    p = sub.add_parser("check", help="per-axiom locality verdicts")
    _add_input_flags(p)
    p.add_argument("--flavor", required=True, choices=sorted(_FLAVORS))
    p.add_argument("--refined", action="store_true")
    p.add_argument("--strict-verdicts", action="store_true")
    _add_budget_flags(p)

    p = sub.add_parser("genuine", help="deduplicated modules for single-axiom signatures")
    _add_input_flags(p, with_signature=False)
    p.add_argument("--flavor", required=True, choices=sorted(_FLAVORS))
    p.add_argument("--refined", action="store_true")
    p.add_argument("--out")
    _add_budget_flags(p)

    p = sub.add_parser("compare", help="run the locality comparison tests")
    p.add_argument("--ontology", required=True, nargs="+", help="ontology file(s)")
    p.add_argument("--mode", choices=MODES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--p", type=float, default=0.5, help="entity inclusion probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--binned", action="store_true", help="uniform-size sampling over bins")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument(
        "--measure-timings",
        action="store_true",
        help="record wall-clock phase times (report bytes then vary run to run)",
    )
    p.add_argument("--strict", action="store_true")
    p.add_argument("--strict-verdicts", action="store_true")
    _add_budget_flags(p)

    # debugging helper, deliberately absent from the listed commands
    p = sub.add_parser("oracle")
    _add_input_flags(p)
    p.add_argument("--flavor", required=True, choices=("sem-bot", "sem-top"))
    p.add_argument("--max-domain", type=int, default=3)

    return top


# ---------------------------------------------------------------------------
# Shared input handling
# ---------------------------------------------------------------------------

def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_PARSE)


def _parse_failure_code(exc: ParseFailure) -> int:
    if any(e.kind is ParseErrorKind.UNSUPPORTED_CONSTRUCT for e in exc.errors):
        return EXIT_UNSUPPORTED
    return EXIT_PARSE


def _load_ontology(path: str, strict: bool) -> Ontology:
    try:
        return parse_ontology(_read_file(path), strict=strict)
    except ParseFailure as exc:
        lines = "\n".join(f"{path}:{e}" for e in exc.errors)
        raise _CliError(lines, _parse_failure_code(exc))


def _parse_terms(spec: str) -> Signature:
    concepts, roles, individuals = set(), set(), set()
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk[:2] == "C:":
            concepts.add(chunk[2:].strip())
        elif chunk[:2] == "R:":
            roles.add(chunk[2:].strip())
        elif chunk[:2] == "I:":
            individuals.add(chunk[2:].strip())
        else:
            raise _CliError(
                f"inline term '{chunk}' needs a C:/R:/I: kind prefix", EXIT_PARSE
            )
    return Signature(frozenset(concepts), frozenset(roles), frozenset(individuals))


def _load_signature(args, onto: Ontology) -> Signature:
    terms = getattr(args, "terms", None)
    sig_path = getattr(args, "signature", None)
    if terms and sig_path:
        print("warning: both --terms and --signature given; --terms wins", file=sys.stderr)
    if terms:
        return _parse_terms(terms)
    if sig_path:
        try:
            return parse_signature(_read_file(sig_path), onto)
        except ParseFailure as exc:
            lines = "\n".join(f"{sig_path}:{e}" for e in exc.errors)
            raise _CliError(lines, _parse_failure_code(exc))
    return Signature()


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_extract(args) -> int:
    from .parser import serialize_ontology

    onto = _load_ontology(args.ontology, args.strict)
    sig = _load_signature(args, onto)
    budget = Budget(args.max_steps, args.max_seconds)
    trace: list = []
    if args.flavor in _STAR_FLAVORS:
        result = extract_star(
            onto, sig, _STAR_FLAVORS[args.flavor], refined=args.refined, budget=budget
        )
    else:
        result = extract_module(
            onto,
            sig,
            _FLAVORS[args.flavor],
            refined=args.refined,
            budget=budget,
            trace=trace if args.verbose else None,
        )
    if args.verbose:
        for round_no, added in trace:
            for a in added:
                print(f"round {round_no}: + {a}", file=sys.stderr)
        print(
            f"module: {len(result.module)} of {len(onto)} axioms, "
            f"{result.locality_checks} locality checks, "
            f"{result.unknown_verdicts} unknown verdicts",
            file=sys.stderr,
        )
    _write_out(serialize_ontology(result.module), args.out)
    if args.strict_verdicts and result.unknown_verdicts:
        print(
            f"{result.unknown_verdicts} unknown verdict(s) were treated as non-local",
            file=sys.stderr,
        )
        return EXIT_UNKNOWN_VERDICTS
    return EXIT_OK


def _cmd_check(args) -> int:
    onto = _load_ontology(args.ontology, args.strict)
    sig = _load_signature(args, onto)
    flavor = _FLAVORS[args.flavor]
    budget = Budget(args.max_steps, args.max_seconds)
    unknowns = 0
    for a in onto.axioms:
        if flavor.is_syntactic:
            word = "local" if is_syntactically_local(a, sig, flavor, args.refined) else "non-local"
        else:
            verdict = is_semantically_local(a, sig, flavor, budget)
            word = verdict.status.value
            if verdict.reason:
                word += f" ({verdict.reason})"
                unknowns += 1
        print(f"{word}\t{a}")
    if args.strict_verdicts and unknowns:
        return EXIT_UNKNOWN_VERDICTS
    return EXIT_OK


def _cmd_genuine(args) -> int:
    from .parser import serialize_ontology

    onto = _load_ontology(args.ontology, args.strict)
    budget = Budget(args.max_steps, args.max_seconds)
    results = genuine_modules(
        onto, _FLAVORS[args.flavor], refined=args.refined, budget=budget
    )
    chunks = []
    for axiom, result in results:
        chunks.append(f"# seed axiom: {axiom}\n")
        chunks.append(serialize_ontology(result.module))
        chunks.append("\n")
    chunks.append(f"# {len(results)} distinct genuine module(s) of {len(onto)} axioms\n")
    _write_out("".join(chunks), args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    budget = Budget(args.max_steps, args.max_seconds)
    cfg = SamplingConfig(
        sample_count=args.samples,
        inclusion_probability=args.p,
        rng_seed=args.seed,
        binned=args.binned,
        bin_count=args.bins,
    )
    modes = MODES if args.mode == "all" else (args.mode,)
    records = []
    unknowns = 0
    for path in args.ontology:
        onto = _load_ontology(path, args.strict)
        for mode in modes:
            rs = run_comparison(
                onto,
                mode,
                cfg,
                budget=budget,
                jobs=args.jobs,
                measure_timings=args.measure_timings,
            )
            unknowns += sum(r.unknown_verdicts for r in rs)
            records.extend(rs)
    _write_out(render_report(records, args.format), args.out)
    if args.strict_verdicts and unknowns:
        return EXIT_UNKNOWN_VERDICTS
    return EXIT_OK


def _cmd_oracle(args) -> int:
    onto = _load_ontology(args.ontology, args.strict)
    sig = _load_signature(args, onto)
    flavor = _FLAVORS[args.flavor]
    for a in onto.axioms:
        witness = find_countermodel(substitute(a, sig, flavor), args.max_domain)
        if witness is None:
            print(f"not-refuted\t{a}")
        else:
            print(f"refuted\t{a}\t{witness}")
    return EXIT_OK


_COMMANDS = {
    "extract": _cmd_extract,
    "check": _cmd_check,
    "genuine": _cmd_genuine,
    "compare": _cmd_compare,
    "oracle": _cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; --help stays 0
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        return _COMMANDS[args.command](args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
