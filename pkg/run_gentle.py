#!/usr/bin/env python3
"""
Command line for the gentle-phi toolkit
Validates .quiver files, computes phi_A, classifies and compares algebras

Exit codes: 0 ok / equivalent, 1 usage, 2 validation failure,
3 not equivalent, 4 indeterminate, 5 internal invariant breach.
"""

import argparse
import asyncio
import logging
import sys
import traceback
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from gentle.ag_invariant import compute_phi, phi_canonical_text, render_trace
from gentle.batch import run_batch
from gentle.classification import Verdict, classify, derived_equivalent
from gentle.config import get_settings
from gentle.dot_export import render_dot
from gentle.errors import (
    BadParameters,
    DepthTooSmall,
    GenerationFailed,
    InconsistentInvariant,
    InconsistentSigns,
    InvalidPresentation,
    MatchFailure,
    QuiverFileError,
    WindowExhausted,
)
from gentle.generator import GeneratorParams, random_gentle
from gentle.quiver_core import cycle_number
from gentle.quiver_file import load_presentation, presentation_to_quiver_file, render_quiver_file
from gentle.repetitive_oracle import compute_N, series_components, tau_check
from gentle.serialization import dumps, serialize_json, threads_payload, to_payload
from gentle.threads import forbidden_threads, permitted_threads, thread_label

logger = logging.getLogger("gentle.cli")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NOT_EQUIVALENT, EXIT_INDETERMINATE, EXIT_INTERNAL = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _err(message: str):
    print(message, file=sys.stderr)


def _report_invalid(source: str, exc: Exception):
    if isinstance(exc, InvalidPresentation):
        _err(f"❌ {source}: {len(exc.violations)} violation(s)")
        for v in exc.violations:
            _err(f"   {v.describe()}")
    else:
        _err(f"❌ {source}: {exc}")


def _run_files(files: List[str], job):
    """Evaluate job on every file concurrently; failures are reported and counted"""
    results = asyncio.run(run_batch(files, job))
    worst = EXIT_OK
    for result in results:
        if result.ok:
            continue
        if isinstance(result.error, (InvalidPresentation, QuiverFileError)):
            _report_invalid(result.source, result.error)
            worst = max(worst, EXIT_INVALID)
        elif isinstance(result.error, OSError):
            _err(f"❌ {result.source}: {result.error}")
            worst = max(worst, EXIT_USAGE)
        else:
            raise result.error
    return results, worst


def cmd_validate(args) -> int:
    def job(path):
        p = load_presentation(path)
        return f"valid: {p.num_vertices} vertices, {p.num_arrows} arrows, {len(p.relations)} relations, c(Q)={cycle_number(p)}"

    results, code = _run_files(args.files, job)
    for result in results:
        if result.ok:
            print(f"{result.source}: {result.value}" if len(args.files) > 1 else result.value)
    return code


def cmd_phi(args) -> int:
    def job(path):
        p = load_presentation(path)
        phi, trace = compute_phi(p)
        if args.json:
            payload = to_payload(phi)
            if args.trace:
                payload["trace"] = to_payload(trace, p)
            return dumps(payload, with_version=True)
        text = phi_canonical_text(phi)
        if args.trace:
            text += "\n" + render_trace(p, trace)
        return text

    results, code = _run_files(args.files, job)
    for result in results:
        if result.ok:
            print(f"{result.source}: {result.value}" if len(args.files) > 1 else result.value)
    return code


def cmd_threads(args) -> int:
    p = load_presentation(args.file)
    if args.json:
        print(dumps(threads_payload(p), with_version=True))
        return EXIT_OK
    forbidden, cycles = forbidden_threads(p)
    print("permitted: " + " ".join(thread_label(p, t) for t in permitted_threads(p)))
    print("forbidden: " + " ".join(thread_label(p, t) for t in forbidden))
    if cycles:
        print("relation cycles: " + "; ".join(" ".join(p.quiver.arrow_label(a) for a in c) for c in cycles))
    return EXIT_OK


def cmd_classify(args) -> int:
    p = load_presentation(args.file)
    form = classify(p)
    print(serialize_json(form, with_version=True) if args.json else str(form))
    return EXIT_OK


def cmd_equiv(args) -> int:
    loaded = []
    for path in (args.file_a, args.file_b):
        try:
            loaded.append(load_presentation(path))
        except (InvalidPresentation, QuiverFileError) as e:
            _report_invalid(path, e)
            return EXIT_INVALID
    pa, pb = loaded
    result = derived_equivalent(pa, pb)
    if args.json:
        print(serialize_json(result, with_version=True))
    elif result.verdict is Verdict.NOT_EQUIVALENT:
        print(f"NotEquivalent: {result.witness.describe()}")
    else:
        name = "Equivalent" if result.verdict is Verdict.EQUIVALENT else "Indeterminate"
        print(f"{name}: phi = {phi_canonical_text(result.phi_a)}, c(Q) = {result.cycles_a}")
    return {
        Verdict.EQUIVALENT: EXIT_OK,
        Verdict.NOT_EQUIVALENT: EXIT_NOT_EQUIVALENT,
        Verdict.INDETERMINATE: EXIT_INDETERMINATE,
    }[result.verdict]


def cmd_oracle_check(args) -> int:
    p = load_presentation(args.file)
    phi, _ = compute_phi(p)
    n_inv = compute_N(p)
    tau = tau_check(p)
    agree = phi == n_inv

    if args.json:
        payload = {"phi": to_payload(phi)["phi"], "N": to_payload(n_inv)["phi"], "agree": agree, "tau": tau.ok}
        if args.series:
            payload["series"] = [{"pair": list(s.pair), "size": s.series_size, "tube_rank": s.tube_rank,
                                  "shift": s.shift} for s in series_components(p)]
        print(dumps(payload, with_version=True))
    else:
        print(f"phi = {phi_canonical_text(phi)}")
        print(f"N   = {phi_canonical_text(n_inv)}")
        print(f"tau = {'ok' if tau.ok else 'FAILED'}")
        if args.series:
            for s in series_components(p):
                print(f"  {s.describe(p)}")

    if not agree:
        _err(f"❌ phi and N differ for {args.file}")
        return EXIT_INTERNAL
    if not tau.ok:
        _err(f"❌ tau check failed: {tau.witness}")
        return EXIT_INTERNAL
    _err("✅ oracle agrees")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        density = Fraction(args.density)
    except (ValueError, ZeroDivisionError):
        raise BadParameters(f"density must be a fraction such as 1/2, got {args.density!r}")
    p = random_gentle(GeneratorParams(args.vertices, args.cycles, density, args.seed))
    text = render_quiver_file(presentation_to_quiver_file(p))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _err(f"✅ wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    sys.stdout.write(render_dot(load_presentation(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="run_gentle.py", description="AG-invariant toolkit for gentle algebras")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging and tracebacks")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("validate", help="Check that files describe gentle presentations")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("phi", help="Compute phi_A")
    p.add_argument("files", nargs="+")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="Print the H/Pi arrays of every run")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("threads", help="List permitted and forbidden threads")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_threads)

    p = sub.add_parser("classify", help="Normal form for c(Q) <= 1")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equiv", help="Compare two algebras up to derived equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("oracle-check", help="Recompute phi_A from the repetitive algebra")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--series", action="store_true", help="Describe the component series of every orbit")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("gen", help="Sample a random gentle presentation")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--cycles", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", default="1/2", help="Relation density at optional sites (default: 1/2)")
    p.add_argument("--out", help="Write the .quiver file here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="Print a graphviz digraph")
    p.add_argument("file")
    p.set_defaults(func=cmd_export_dot)
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format="%(asctime)s - %(levelname)s - %(message)s",
                        stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        _err(f"❌ {e}")
        return EXIT_USAGE

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return args.func(args)
    except (InvalidPresentation, QuiverFileError) as e:
        _report_invalid(getattr(args, "file", "input"), e)
        return EXIT_INVALID
    except GenerationFailed as e:
        _err(f"⚠️ {e}")
        return EXIT_INVALID
    except (BadParameters, DepthTooSmall, OSError) as e:
        _err(f"❌ {e}")
        return EXIT_USAGE
    except (InconsistentSigns, MatchFailure, InconsistentInvariant, WindowExhausted) as e:
        _err(f"❌ internal invariant breach: {e}")
        if args.verbose:
            traceback.print_exc()
        return EXIT_INTERNAL
    except Exception as e:
        _err(f"❌ unexpected failure: {e}")
        if args.verbose:
            traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(cli_main())
