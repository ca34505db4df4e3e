"""JSON carrier for proto-algorithm definitions (``.pad``) and witnesses (``.paw``).

Table keys are JSON strings.  A key is resolved against the atoms of the
table's declared domain: an atom ``a`` is written as the key ``str(a)``.  A
domain that holds both an integer and its decimal string cannot be keyed
unambiguously and is rejected by the parser.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .model import (IN, INTERACTIVE, KINDS, AlgorithmGraph, Alphabet, Interpretation,
                    ProtoAlgorithm, is_atom)
from .equivalence import EquivalenceWitness, IsoWitness, SimulationWitness
from .semantics import (LASSO, Run, State, extract_inputs, extract_output, extract_outputs,
                        state_order)


@dataclass(frozen=True)
class ParseError:
    path: str
    message: str
    line: int | None = None
    column: int | None = None

    def __str__(self):
        where = self.path or "<document>"
        if self.line is not None:
            where += f" (line {self.line}, column {self.column})"
        return f"{where}: {self.message}"


class DefinitionError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


def _reject_duplicate_keys(pairs):
    obj = {}
    for k, v in pairs:
        if k in obj:
            raise ValueError(f"duplicate key {k!r}")
        obj[k] = v
    return obj


def load_json(text: str, what="document"):
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise DefinitionError([ParseError("", f"malformed JSON: {exc.msg}", exc.lineno, exc.colno)])
    except ValueError as exc:
        raise DefinitionError([ParseError("", f"malformed {what}: {exc}")])


def _locate(text: str, needle: str, occurrence: int = 1):
    """Line/column of the n-th occurrence of ``needle`` in ``text``."""
    pos = -1
    for _ in range(occurrence):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def atom_key(atom) -> str:
    return str(atom)


def resolve_key(domain, key: str):
    """The atom of ``domain`` written as the JSON key ``key``; unknown keys
    come back as an integer when they spell one, else unchanged."""
    for a in domain:
        if atom_key(a) == key:
            return a
    try:
        if str(int(key)) == key:
            return int(key)
    except ValueError:
        pass
    return key


class _Parser:
    def __init__(self, text):
        self.text = text
        self.errors = []

    def error(self, path, message, needle=None, occurrence=1):
        line = col = None
        if needle is not None:
            line, col = _locate(self.text, needle, occurrence)
        self.errors.append(ParseError(path, message, line, col))

    def expect(self, obj, path, typ, name):
        if not isinstance(obj, typ):
            self.error(path, f"{name} expected")
            return False
        return True

    def atoms(self, raw, path):
        if not self.expect(raw, path, list, "array of atoms"):
            return []
        out = []
        for k, a in enumerate(raw):
            if not is_atom(a):
                self.error(f"{path}[{k}]", "atoms must be strings or integers")
            elif a in out:
                self.error(f"{path}[{k}]", f"duplicate atom {a!r}")
            else:
                out.append(a)
        keys = [atom_key(a) for a in out]
        if len(set(keys)) != len(keys):
            self.error(path, "an integer and its decimal string cannot share a domain")
        return out

    def key_resolver(self, dom):
        return lambda k: resolve_key(dom, k)

    def table(self, raw, path, dom, value_ok=is_atom):
        if not self.expect(raw, path, dict, "object"):
            return {}
        resolve = self.key_resolver(dom)
        out = {}
        for k, v in raw.items():
            if not value_ok(v):
                self.error(f"{path}.{k}", f"bad table value {v!r}")
                continue
            out[resolve(k)] = v
        return out

    def symbols(self, raw, path):
        if not self.expect(raw, path, list, "array of symbol names"):
            return []
        out = []
        for k, s in enumerate(raw):
            if not isinstance(s, str):
                self.error(f"{path}[{k}]", "symbol names must be strings")
            else:
                out.append(s)
        return out

    def parse(self):
        doc = load_json(self.text)
        if not self.expect(doc, "", dict, "object"):
            raise DefinitionError(self.errors)
        for key in ("kind", "alphabet", "graph", "interpretation"):
            if key not in doc:
                self.error(key, "missing member")
        extra = set(doc) - {"kind", "alphabet", "graph", "interpretation"}
        for key in sorted(extra):
            self.error(key, "unknown member", f'"{key}"')
        if self.errors:
            raise DefinitionError(self.errors)

        kind = doc["kind"]
        if kind not in KINDS:
            self.error("kind", f"kind must be one of {', '.join(KINDS)}")
            kind = None

        alpha = doc["alphabet"]
        functions = predicates = []
        if self.expect(alpha, "alphabet", dict, "object"):
            functions = self.symbols(alpha.get("functions"), "alphabet.functions")
            predicates = self.symbols(alpha.get("predicates", []), "alphabet.predicates")

        graph = self.graph(doc["graph"])
        interp = self.interpretation(doc["interpretation"], kind)
        if self.errors:
            raise DefinitionError(self.errors)
        return ProtoAlgorithm(Alphabet(functions, predicates, kind), graph, interp)

    def graph(self, raw):
        if not self.expect(raw, "graph", dict, "object"):
            return None
        ids, labels = [], {}
        seen_ids = {}
        for k, v in enumerate(raw.get("vertices") or []):
            path = f"graph.vertices[{k}]"
            if not isinstance(v, dict) or "id" not in v or "label" not in v:
                self.error(path, "vertex needs an id and a label")
                continue
            vid, lab = v["id"], v["label"]
            if not is_atom(vid):
                self.error(f"{path}.id", "vertex ids must be strings or integers")
                continue
            if not isinstance(lab, str):
                self.error(f"{path}.label", "vertex labels must be symbol names")
                continue
            if vid in seen_ids:
                seen_ids[vid] += 1
                self.error(f"{path}.id", f"duplicate vertex id {vid!r}",
                           f'"id": {json.dumps(vid)}', seen_ids[vid])
                continue
            seen_ids[vid] = 1
            ids.append(vid)
            labels[vid] = lab
        if not ids:
            self.error("graph.vertices", "at least one vertex expected")

        edges, edge_labels = [], {}
        for k, e in enumerate(raw.get("edges") or []):
            path = f"graph.edges[{k}]"
            if not isinstance(e, dict) or "from" not in e or "to" not in e:
                self.error(path, "edge needs from and to")
                continue
            pair = (e["from"], e["to"])
            if any(x not in labels for x in pair):
                self.error(path, f"edge endpoint not a declared vertex: {pair!r}")
                continue
            if pair in edge_labels or pair in edges:
                self.error(path, f"duplicate edge {pair!r}")
                continue
            if "label" in e:
                b = e["label"]
                if b not in (0, 1) or isinstance(b, bool):
                    self.error(f"{path}.label", "edge label must be 0 or 1")
                    continue
                edge_labels[pair] = b
            edges.append(pair)
        root = raw.get("root")
        if root not in labels:
            self.error("graph.root", "root must be a declared vertex")
            return None
        if self.errors:
            return None
        return AlgorithmGraph(ids, edges, labels, root, edge_labels)

    def interpretation(self, raw, kind):
        if not self.expect(raw, "interpretation", dict, "object"):
            return None
        D = self.atoms(raw.get("domain"), "interpretation.domain")
        Din = self.atoms(raw.get("input_domain"), "interpretation.input_domain")
        Dout = self.atoms(raw.get("output_domain"), "interpretation.output_domain")
        functions, in_table = {}, None
        raw_f = raw.get("functions", {})
        if self.expect(raw_f, "interpretation.functions", dict, "object"):
            for name, t in raw_f.items():
                path = f"interpretation.functions.{name}"
                if name == IN and kind == INTERACTIVE:
                    if not self.expect(t, path, dict, "object"):
                        continue
                    resolve = self.key_resolver(D)
                    in_table = {resolve(d): self.table(row, f"{path}.{d}", Din)
                                for d, row in t.items()}
                elif name == "init":
                    functions[name] = self.table(t, path, Din)
                else:
                    functions[name] = self.table(t, path, D)
        predicates = {}
        raw_p = raw.get("predicates", {})
        if self.expect(raw_p, "interpretation.predicates", dict, "object"):
            bit = lambda b: b in (0, 1) and not isinstance(b, bool)
            for name, t in raw_p.items():
                predicates[name] = self.table(t, f"interpretation.predicates.{name}", D, bit)
        return Interpretation(D, Din, Dout, functions, predicates, in_table)


def parse_definition(text: str) -> ProtoAlgorithm:
    """Parse a ``.pad`` document; structural problems raise ``DefinitionError``.

    No semantic validation happens here.
    """
    return _Parser(text).parse()


def _table_json(table: dict) -> dict:
    return {atom_key(k): v for k, v in table.items()}


def definition_to_json(pa: ProtoAlgorithm) -> dict:
    g, i = pa.graph, pa.interpretation
    edges = []
    for e in g.edges:
        item = {"from": e[0], "to": e[1]}
        if e in g.edge_labels:
            item["label"] = g.edge_labels[e]
        edges.append(item)
    functions = {f: _table_json(t) for f, t in i.functions.items()}
    if i.in_table is not None:
        functions[IN] = {atom_key(d): _table_json(row) for d, row in i.in_table.items()}
    return {
        "kind": pa.kind,
        "alphabet": {"functions": list(pa.alphabet.functions),
                     "predicates": list(pa.alphabet.predicates)},
        "graph": {
            "vertices": [{"id": v, "label": g.labels[v]} for v in g.vertices],
            "edges": edges,
            "root": g.root,
        },
        "interpretation": {
            "domain": list(i.domain),
            "input_domain": list(i.input_domain),
            "output_domain": list(i.output_domain),
            "functions": functions,
            "predicates": {p: _table_json(t) for p, t in i.predicates.items()},
        },
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_definition(pa: ProtoAlgorithm) -> str:
    """Canonical document text: sorted keys, arrays in declared order."""
    return dumps(definition_to_json(pa))


def read_definition(path) -> ProtoAlgorithm:
    with open(path, encoding="utf-8") as fh:
        return parse_definition(fh.read())


def write_definition(pa: ProtoAlgorithm, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_definition(pa))


# -- witnesses ---------------------------------------------------------------

def state_to_json(s: State) -> list:
    return [s.din, None if s.control is None else list(s.control), s.dout]


def state_from_json(raw) -> State:
    if not isinstance(raw, list) or len(raw) != 3:
        raise ValueError(f"state must be a 3-element array: {raw!r}")
    din, control, dout = raw
    if control is not None:
        if not isinstance(control, list) or len(control) != 2:
            raise ValueError(f"control must be null or [vertex, datum]: {control!r}")
        control = tuple(control)
    return State(din, control, dout)


def mapping_to_json(m: dict | None):
    return None if m is None else [[k, v] for k, v in m.items()]


def mapping_from_json(raw):
    return None if raw is None else {k: v for k, v in raw}


def _pairs_json(pairs, a=None, b=None):
    if a is not None and b is not None:
        ka, kb = state_order(a), state_order(b)
        ordered = sorted(pairs, key=lambda p: (ka(p[0]), kb(p[1])))
    else:
        ordered = sorted(pairs, key=lambda p: json.dumps([state_to_json(p[0]), state_to_json(p[1])]))
    return [[state_to_json(s), state_to_json(t)] for s, t in ordered]


def _simulation_json(w: SimulationWitness, a=None, b=None) -> dict:
    return {
        "type": "simulation",
        "mode": w.mode,
        "pairs": _pairs_json(w.pairs, a, b),
        "phi_in": mapping_to_json(w.phi_in),
        "phi_out": mapping_to_json(w.phi_out),
    }


_ISO_FIELDS = ("functions", "predicates", "vertices", "domain", "input_domain",
               "output_domain", "booleans")


def witness_to_json(w, a: ProtoAlgorithm | None = None, b: ProtoAlgorithm | None = None) -> dict:
    """JSON form of a witness.  With both models given, state pairs are
    listed in canonical state order; otherwise in a text-based order."""
    if isinstance(w, IsoWitness):
        doc = {"type": "isomorphism"}
        doc.update({f: mapping_to_json(getattr(w, f)) for f in _ISO_FIELDS})
        return doc
    if isinstance(w, SimulationWitness):
        return _simulation_json(w, a, b)
    if isinstance(w, EquivalenceWitness):
        return {"type": "equivalence",
                "forward": _simulation_json(w.forward, a, b),
                "backward": _simulation_json(w.backward, b, a)}
    raise TypeError(f"not a witness: {type(w).__name__}")


def _simulation_from_json(doc) -> SimulationWitness:
    pairs = frozenset((state_from_json(s), state_from_json(t)) for s, t in doc["pairs"])
    return SimulationWitness(pairs, doc["mode"], mapping_from_json(doc.get("phi_in")),
                             mapping_from_json(doc.get("phi_out")))


def witness_from_json(doc):
    try:
        kind = doc["type"]
        if kind == "isomorphism":
            return IsoWitness(**{f: mapping_from_json(doc[f]) for f in _ISO_FIELDS})
        if kind == "simulation":
            return _simulation_from_json(doc)
        if kind == "equivalence":
            return EquivalenceWitness(_simulation_from_json(doc["forward"]),
                                      _simulation_from_json(doc["backward"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DefinitionError([ParseError("", f"malformed witness: {exc}")]) from None
    raise DefinitionError([ParseError("type", f"unknown witness type {kind!r}")])


def serialize_witness(w, a=None, b=None) -> str:
    return dumps(witness_to_json(w, a, b))


def parse_witness(text: str):
    return witness_from_json(load_json(text, "witness"))


def run_to_json(run: Run, interactive: bool) -> dict:
    doc = {"status": run.status, "length": len(run),
           "states": [state_to_json(s) for s in run.states]}
    if run.complete:
        if interactive:
            doc["inputs"] = list(extract_inputs(run))
            doc["outputs"] = list(extract_outputs(run))
        else:
            doc["output"] = extract_output(run)
    if run.status == LASSO:
        doc["divergent"] = run.divergent
    return doc


def relation_to_json(pa: ProtoAlgorithm, rel) -> list:
    if pa.interactive:
        return [[list(x), list(y)] for x, y in rel]
    return [[x, y] for x, y in rel]
