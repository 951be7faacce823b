"""``vcyc`` command line: run a check battery and write a versioned JSON (or markdown) report.

Exit status: 0 when every check passes, 1 when some check fails, 2 on input or cap errors.
Sampling uses Python's ``random.Random`` (MT19937) seeded from ``"<seed>:<tags>"`` strings.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checks as C
from .config import default_caps, using_caps
from .corpus import corpus_text, load_corpus
from .errors import ParseError, UnknownDiagram, VcycError
from .fixtures import default_ambients, default_eta_data, default_transfer_data
from .hocolim.diagrams import DIAGRAMS
from .orientation import dinfty_obstruction_fixture
from .report import Report, error_payload, run_checks
from .serialization import (
    dumps,
    fixture_list,
    load_json,
    parse_ambient,
    parse_eta_fixture,
    parse_inclusion_datum,
    parse_orientation_diagram,
)
from .catalog import catalog_group
from .vc import Amalgam

COMMANDS = ("classify", "structure", "orient", "verify-diagrams", "transfer-check", "eta-check", "corpus")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vcyc", description="Checks for virtually cyclic groups and their homotopy colimits.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="scenario or fixture file (JSON); built-in fixtures when omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--caps", help="cap overrides, e.g. subgroup_order=32,corpus_order=6")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--diagram", action="append",
                   help=f"verify-diagrams: restrict to this diagram (repeatable); one of {', '.join(DIAGRAMS)}")
    return p


def _load(path: str | None):
    if path is None:
        return None
    try:
        return load_json(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", field="input") from None


def _dinfty():
    z2 = catalog_group("Z/2")
    return Amalgam(z2, z2, catalog_group("trivial"), [0], [0], name="D_inf")


def _run_classify(args, data, caps):
    entries = load_corpus(data, caps)
    results = [{"name": e.name, **C.type_verdicts(e.group)} for e in entries]
    return run_checks(C.classify_checks(entries)), results


def _run_structure(args, data, caps):
    entries = load_corpus(data, caps)
    return run_checks(C.structure_checks(entries, args.samples, args.seed, caps)), None


def _run_orient(args, data, caps):
    diagram = parse_orientation_diagram(data) if data is not None else dinfty_obstruction_fixture(_dinfty())
    battery, verdict = C.orientation_checks(diagram, caps)
    return run_checks(battery), verdict


def _run_diagrams(args, data, caps):
    if data is None:
        ambients = default_ambients()
    else:
        ambients = [parse_ambient(a, f"ambients[{i}]") for i, a in enumerate(fixture_list(data, "ambients"))]
    names = args.diagram or list(DIAGRAMS)
    for name in names:
        if name not in DIAGRAMS:
            raise UnknownDiagram(f"no built-in diagram named {name!r}", known=list(DIAGRAMS))
    battery = []
    for amb in ambients:
        battery += C.diagram_checks(amb, names, args.samples, args.seed)
        if not args.diagram:
            battery += C.hocolim_law_checks(amb, args.samples, args.seed)
    return run_checks(battery), {"ambients": [a.name for a in ambients], "diagrams": names}


def _run_transfer(args, data, caps):
    if data is None:
        fixtures = default_transfer_data()
    else:
        fixtures = [parse_inclusion_datum(d, f"fixtures[{i}]") for i, d in enumerate(fixture_list(data, "fixtures"))]
    return run_checks(C.transfer_checks(fixtures, args.samples, args.seed)), None


def _run_eta(args, data, caps):
    if data is None:
        fixtures = default_eta_data()
    else:
        fixtures = [parse_eta_fixture(d, f"fixtures[{i}]") for i, d in enumerate(fixture_list(data, "fixtures"))]
    return run_checks(C.eta_checks(fixtures, args.samples, args.seed)), C.eta_choice_record(fixtures)


RUNNERS = {
    "classify": _run_classify,
    "structure": _run_structure,
    "orient": _run_orient,
    "verify-diagrams": _run_diagrams,
    "transfer-check": _run_transfer,
    "eta-check": _run_eta,
}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(args: argparse.Namespace) -> tuple[int, str]:
    """Run one scenario; returns ``(exit status, rendered output)``."""
    try:
        caps = default_caps().updated(args.caps)
        with using_caps(caps):
            if args.command == "corpus":
                return 0, corpus_text(caps)
            data = _load(args.input)
            records, results = RUNNERS[args.command](args, data, caps)
    except VcycError as exc:
        return 2, dumps(error_payload(args.command, exc))
    inputs = {"input": args.input or "built-in", "samples": args.samples, "caps": args.caps or ""}
    if args.diagram:
        inputs["diagram"] = args.diagram
    report = Report(args.command, args.seed, records, results, inputs)
    text = dumps(report.to_json()) if args.format == "json" else report.to_markdown()
    return (0 if report.ok else 1), text


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status, text = run(args)
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
