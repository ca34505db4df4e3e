"""Command-line front end.

JSON goes to standard output, one-line summaries to standard error.
Exit status: 0 when the property holds (or the model is valid), 1 when it
fails, 2 for usage errors, unreadable or malformed input, and invalid models.
"""
from __future__ import annotations

import argparse
import sys

from . import bridge, equivalence, io, semantics
from .model import validate


class UsageError(Exception):
    pass


def _emit(doc):
    sys.stdout.write(io.dumps(doc))


def _note(msg):
    print(msg, file=sys.stderr)


def _read(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path, require_valid=True):
    try:
        pa = io.parse_definition(_read(path))
    except io.DefinitionError as exc:
        raise UsageError(f"{path}: " + "; ".join(str(e) for e in exc.errors)) from None
    if require_valid:
        report = validate(pa)
        if not report.valid:
            rules = ", ".join(sorted(report.rules))
            raise UsageError(f"{path}: not a valid proto-algorithm ({rules})")
    return pa


def _atom(domain, text):
    """Command-line atom: a string atom of that spelling, else an integer."""
    if text in domain:
        return text
    try:
        if int(text) in domain:
            return int(text)
    except ValueError:
        pass
    raise UsageError(f"input {text!r} is not in the input domain")


def cmd_validate(args):
    pa = _load(args.path, require_valid=False)
    report = validate(pa)
    _emit(report.to_json())
    _note(f"{args.path}: {report.verdict}")
    return 0 if report.valid else 1


def cmd_run(args):
    pa = _load(args.path)
    if not args.input:
        raise UsageError("--input needs at least one atom")
    if not pa.interactive and len(args.input) != 1:
        raise UsageError("a non-interactive proto-algorithm takes exactly one input")
    if args.depth < 1:
        raise UsageError("--depth must be positive")
    inputs = [_atom(pa.interpretation.input_domain, x) for x in args.input]
    rs = semantics.run_set(pa, inputs if pa.interactive else inputs[0], args.mode, args.depth)
    _emit({
        "mode": args.mode,
        "input": inputs if pa.interactive else inputs[0],
        "runs": [io.run_to_json(r, pa.interactive) for r in rs.runs],
        "residue": [io.run_to_json(r, pa.interactive) for r in rs.residue],
    })
    _note(f"{len(rs.runs)} run(s), {len(rs.complete)} complete, {len(rs.residue)} residue")
    return 0


def cmd_relation(args):
    pa = _load(args.path)
    if args.max_stream_len < 1:
        raise UsageError("--max-stream-len must be positive")
    rel = semantics.computed_relation(pa, args.max_stream_len if pa.interactive else None)
    doc = {"count": len(rel), "pairs": io.relation_to_json(pa, rel)}
    if pa.interactive:
        doc["max_stream_len"] = args.max_stream_len
    _emit(doc)
    _note(f"{len(rel)} pair(s)")
    return 0


_CHECKS = {
    "iso": lambda a, b: equivalence.check_isomorphism(a, b),
    "asim": lambda a, b: equivalence.greatest_simulation(a, b, semantics.ALGORITHMIC),
    "csim": lambda a, b: equivalence.greatest_simulation(a, b, semantics.COMPUTATIONAL),
    "aeqv": lambda a, b: equivalence.check_equivalence(a, b, semantics.ALGORITHMIC),
    "ceqv": lambda a, b: equivalence.check_equivalence(a, b, semantics.COMPUTATIONAL),
}


def cmd_check(args):
    a, b = _load(args.path_a), _load(args.path_b)
    if a.kind != b.kind:
        raise UsageError(f"cannot compare a {a.kind} with a {b.kind} proto-algorithm")
    witness = _CHECKS[args.kind](a, b)
    holds = witness is not None
    doc = {"kind": args.kind, "holds": holds,
           "witness": io.witness_to_json(witness, a, b) if holds else None}
    if holds and args.emit_witness:
        with open(args.emit_witness, "w", encoding="utf-8") as fh:
            fh.write(io.serialize_witness(witness, a, b))
    _emit(doc)
    _note(f"{args.kind}: {'holds' if holds else 'fails'}")
    return 0 if holds else 1


def cmd_verify_witness(args):
    a, b = _load(args.path_a), _load(args.path_b)
    if a.kind != b.kind:
        raise UsageError(f"cannot compare a {a.kind} with a {b.kind} proto-algorithm")
    try:
        w = io.parse_witness(_read(args.witness))
    except io.DefinitionError as exc:
        raise UsageError(f"{args.witness}: {exc}") from None
    if isinstance(w, equivalence.IsoWitness):
        problems = equivalence.validate_iso_witness(a, b, w)
    elif isinstance(w, equivalence.SimulationWitness):
        problems = equivalence.validate_simulation_witness(a, b, w)
    else:
        problems = equivalence.validate_equivalence_witness(a, b, w)
    _emit({"valid": not problems, "problems": problems})
    _note("witness valid" if not problems else f"witness invalid: {len(problems)} problem(s)")
    return 0 if not problems else 1


def _table_file(path, what):
    doc = io.load_json(_read(path), what)
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: {what} must be a JSON object")
    return doc


def cmd_embed(args):
    na = _load(args.path)
    if na.interactive:
        raise UsageError("embed expects a non-interactive proto-algorithm")
    if (args.in_table is None) != (args.out_table is None):
        raise UsageError("--in-table and --out-table go together")
    spec = None
    if args.in_table is not None:
        i = na.interpretation
        raw_in = _table_file(args.in_table, "in table")
        raw_out = _table_file(args.out_table, "out table")
        in_table = {}
        for d, row in raw_in.items():
            in_table[io.resolve_key(i.domain, d)] = (
                {io.resolve_key(i.input_domain, x): v for x, v in row.items()}
                if isinstance(row, dict) else row)
        out_table = {io.resolve_key(i.domain, d): v for d, v in raw_out.items()}
        spec = bridge.ExpansionSpec(in_table, out_table)
    try:
        ia = bridge.expand_to_interactive(na, spec)
    except bridge.ExpansionError as exc:
        _emit({"ok": False, "problems": exc.problems})
        _note(f"expansion rejected: {exc}")
        return 1
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(io.serialize_definition(ia))
    report = bridge.verify_embedding(na, ia)
    _emit(dict(report.to_json(), triviality=bridge.classify_triviality(ia), written=args.out))
    _note(f"wrote {args.out}; embedding {'verified' if report.ok else 'FAILED'}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="protoalg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a definition against the well-formedness rules")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", help="list the runs on an input value or stream")
    s.add_argument("path")
    s.add_argument("--input", nargs="+", required=True, metavar="ATOM")
    s.add_argument("--mode", choices=semantics.MODES, default=semantics.ALGORITHMIC)
    s.add_argument("--depth", type=int, default=100)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("relation", help="list the computed input/output relation")
    s.add_argument("path")
    s.add_argument("--max-stream-len", type=int, default=3,
                   help="input stream bound for interactive models (default 3)")
    s.set_defaults(func=cmd_relation)

    s = sub.add_parser("check", help="decide isomorphism, simulation or equivalence")
    s.add_argument("--kind", choices=sorted(_CHECKS), required=True)
    s.add_argument("path_a")
    s.add_argument("path_b")
    s.add_argument("--emit-witness", metavar="PATH")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify-witness", help="re-check a witness file against two definitions")
    s.add_argument("path_a")
    s.add_argument("path_b")
    s.add_argument("witness")
    s.set_defaults(func=cmd_verify_witness)

    s = sub.add_parser("embed", help="expand to a trivial interactive model and verify the embedding")
    s.add_argument("path")
    s.add_argument("--out", required=True)
    s.add_argument("--in-table", metavar="FILE")
    s.add_argument("--out-table", metavar="FILE")
    s.set_defaults(func=cmd_embed)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc)})
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
