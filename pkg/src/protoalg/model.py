"""Definitional data types for proto-algorithms and their structural validation.

A proto-algorithm is an alphabet of function and predicate symbols, a rooted
labeled directed graph over that alphabet, and an interpretation assigning
finite lookup tables to the symbols.  The types here are permissive: an
ill-formed model can be constructed (and serialized) so that the validators
can report every problem at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Any, Hashable, Mapping

NON_INTERACTIVE = "non-interactive"
INTERACTIVE = "interactive"
KINDS = (NON_INTERACTIVE, INTERACTIVE)

INIT, FIN, IN, OUT = "init", "fin", "in", "out"

Atom = Hashable
VertexId = Hashable


def reserved_symbols(kind: str) -> tuple[str, ...]:
    if kind == INTERACTIVE:
        return (INIT, FIN, IN, OUT)
    return (INIT, FIN)


def is_atom(x) -> bool:
    # bool is an int subclass but never a valid atom
    return isinstance(x, (str, int)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Alphabet:
    functions: tuple[str, ...]
    predicates: tuple[str, ...] = ()
    kind: str = NON_INTERACTIVE

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "predicates", tuple(self.predicates))
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def reserved(self) -> tuple[str, ...]:
        return reserved_symbols(self.kind)

    @property
    def operations(self) -> tuple[str, ...]:
        """Function symbols other than the reserved ones."""
        return tuple(f for f in self.functions if f not in self.reserved)

    @property
    def non_final(self) -> tuple[str, ...]:
        return tuple(f for f in self.functions if f != FIN)


@dataclass(frozen=True)
class AlgorithmGraph:
    """Rooted labeled directed graph.

    ``edges`` keeps declaration order (it is semantically a set).
    ``edge_labels`` is partial: only labeled edges appear in it.
    """

    vertices: tuple
    edges: tuple
    labels: Mapping[VertexId, str]
    root: VertexId
    edge_labels: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(
            self, "edge_labels", {tuple(e): b for e, b in dict(self.edge_labels).items()}
        )
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        if self.root not in vs:
            raise ValueError(f"root {self.root!r} is not a vertex")
        if set(self.labels) != vs:
            raise ValueError("vertex labelling must be total over the vertices")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge")
        for e in self.edges:
            if len(e) != 2 or e[0] not in vs or e[1] not in vs:
                raise ValueError(f"edge {e!r} has an undeclared endpoint")
        es = set(self.edges)
        for e, b in self.edge_labels.items():
            if e not in es:
                raise ValueError(f"edge label on undeclared edge {e!r}")
            if b not in (0, 1) or isinstance(b, bool):
                raise ValueError("edge label must be 0 or 1")

    @cached_property
    def successors(self) -> dict:
        succ = {v: [] for v in self.vertices}
        for a, b in self.edges:
            succ[a].append(b)
        return {v: tuple(s) for v, s in succ.items()}

    @cached_property
    def predecessors(self) -> dict:
        pred = {v: [] for v in self.vertices}
        for a, b in self.edges:
            pred[b].append(a)
        return {v: tuple(p) for v, p in pred.items()}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def indegree(self, v) -> int:
        return len(set(self.predecessors[v]))

    def outdegree(self, v) -> int:
        return len(set(self.successors[v]))


@dataclass(frozen=True)
class Interpretation:
    """Finite interpretation of an alphabet.

    ``functions`` maps every unary function symbol (``init``, ``fin``,
    ``out`` and the ordinary operations) to a lookup table.  The binary
    ``in`` table of interactive models is kept separately as
    ``in_table[d][din]``.
    """

    domain: tuple
    input_domain: tuple
    output_domain: tuple
    functions: Mapping[str, Mapping[Atom, Atom]]
    predicates: Mapping[str, Mapping[Atom, int]] = field(default_factory=dict)
    in_table: Mapping[Atom, Mapping[Atom, Atom]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "input_domain", tuple(self.input_domain))
        object.__setattr__(self, "output_domain", tuple(self.output_domain))
        object.__setattr__(self, "functions", {k: dict(t) for k, t in dict(self.functions).items()})
        object.__setattr__(self, "predicates", {k: dict(t) for k, t in dict(self.predicates).items()})
        if self.in_table is not None:
            object.__setattr__(self, "in_table", {d: dict(row) for d, row in dict(self.in_table).items()})

    @cached_property
    def domain_index(self) -> dict:
        return {a: i for i, a in enumerate(self.domain)}

    @cached_property
    def input_index(self) -> dict:
        return {a: i for i, a in enumerate(self.input_domain)}

    @cached_property
    def output_index(self) -> dict:
        return {a: i for i, a in enumerate(self.output_domain)}


@dataclass(frozen=True)
class ProtoAlgorithm:
    alphabet: Alphabet
    graph: AlgorithmGraph
    interpretation: Interpretation
    # per-instance memo for derived data (state sets, step maps); never compared
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def kind(self) -> str:
        return self.alphabet.kind

    @property
    def interactive(self) -> bool:
        return self.alphabet.kind == INTERACTIVE

    def label(self, v) -> str:
        return self.graph.labels[v]


@dataclass(frozen=True)
class Violation:
    rule: str
    condition: str
    elements: tuple = ()

    def to_json(self) -> dict:
        return {"rule": self.rule, "condition": self.condition, "elements": list(self.elements)}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"

    @property
    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations, self.notes + other.notes)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "violations": [v.to_json() for v in self.violations],
            "notes": list(self.notes),
        }


# rule id -> condition text
RULES = {
    "alphabet.names": "symbol names are non-empty and unique",
    "alphabet.disjoint": "function and predicate symbols are disjoint",
    "alphabet.reserved": "reserved function symbols are present",
    "graph.vertex-labels": "every vertex label is a symbol of the alphabet",
    "graph.root-indegree": "the root has indegree 0",
    "graph.unique-source": "indegree(v) = 0 only if v is the root",
    "graph.init-label": "l(v) = init iff indegree(v) = 0",
    "graph.fin-label": "l(v) = fin iff outdegree(v) = 0",
    "graph.function-edges": "edges leaving a function-labeled vertex are unlabeled",
    "graph.predicate-degree": "a predicate-labeled vertex has outdegree 2",
    "graph.predicate-edge-labels": "the two edges leaving a predicate-labeled vertex carry distinct labels 0 and 1",
    "graph.predicate-cycle": "every cycle contains a function-labeled vertex",
    "graph.out-degree": "l(v) = out only if outdegree(v) = 1",
    "graph.out-in": "for every edge (v, v'), l(v) = out iff l(v') = in",
    "interpretation.tables": "every symbol has a total table of the right type, and no other symbol is interpreted",
    "interpretation.minimality": "no proper subset of the algorithm domain contains the init images and is closed under the operations",
}


def _violation(rule, *elements) -> Violation:
    return Violation(rule, RULES[rule], tuple(elements))


def validate_alphabet(alpha: Alphabet) -> ValidationReport:
    out = []
    names = alpha.functions + alpha.predicates
    bad = [n for n in names if not isinstance(n, str) or not n]
    seen, dups = set(), []
    for n in names:
        if n in seen and n not in dups:
            dups.append(n)
        seen.add(n)
    shared = [n for n in alpha.functions if n in set(alpha.predicates)]
    dups = [n for n in dups if n not in shared]
    if bad or dups:
        out.append(_violation("alphabet.names", *bad, *dups))
    if shared:
        out.append(_violation("alphabet.disjoint", *shared))
    missing = [r for r in alpha.reserved if r not in alpha.functions]
    if missing:
        out.append(_violation("alphabet.reserved", *missing))
    return ValidationReport(tuple(out))


def vertex_degrees(g: AlgorithmGraph, v) -> tuple[int, int]:
    if v not in g.vertex_index:
        raise KeyError(f"unknown vertex {v!r}")
    return g.indegree(v), g.outdegree(v)


def predicate_only_cycle(g: AlgorithmGraph, alpha: Alphabet) -> list | None:
    """Some cycle whose vertices are all predicate-labeled, or None."""
    preds = set(alpha.predicates)
    inside = [v for v in g.vertices if g.labels[v] in preds]
    members = set(inside)
    ts = TopologicalSorter({v: [u for u in g.predecessors[v] if u in members] for v in inside})
    try:
        ts.prepare()
    except CycleError as exc:
        return list(exc.args[1])
    return None


def has_predicate_only_cycle(g: AlgorithmGraph, alpha: Alphabet) -> bool:
    return predicate_only_cycle(g, alpha) is not None


def validate_graph(g: AlgorithmGraph, alpha: Alphabet) -> ValidationReport:
    fs, ps = set(alpha.functions), set(alpha.predicates)
    out = []

    def report(rule, elements):
        if elements:
            out.append(_violation(rule, *elements))

    report("graph.vertex-labels", [v for v in g.vertices if g.labels[v] not in fs | ps])
    report("graph.root-indegree", [g.root] if g.indegree(g.root) != 0 else [])
    report("graph.unique-source", [v for v in g.vertices if v != g.root and g.indegree(v) == 0])
    report("graph.init-label",
           [v for v in g.vertices if (g.labels[v] == INIT) != (g.indegree(v) == 0)])
    report("graph.fin-label",
           [v for v in g.vertices if (g.labels[v] == FIN) != (g.outdegree(v) == 0)])
    report("graph.function-edges",
           [e for e in g.edges if g.labels[e[0]] in fs and e in g.edge_labels])

    bad_degree, bad_labels = [], []
    for v in g.vertices:
        if g.labels[v] not in ps:
            continue
        if g.outdegree(v) != 2:
            bad_degree.append(v)
            continue
        got = [g.edge_labels.get((v, w)) for w in g.successors[v]]
        if None in got or set(got) != {0, 1}:
            bad_labels.append(v)
    report("graph.predicate-degree", bad_degree)
    report("graph.predicate-edge-labels", bad_labels)
    cycle = predicate_only_cycle(g, alpha)
    if cycle is not None:
        report("graph.predicate-cycle", cycle)

    if alpha.kind == INTERACTIVE:
        report("graph.out-degree",
               [v for v in g.vertices if g.labels[v] == OUT and g.outdegree(v) != 1])
        report("graph.out-in",
               [e for e in g.edges if (g.labels[e[0]] == OUT) != (g.labels[e[1]] == IN)])
    return ValidationReport(tuple(out))


def domain_closure(i: Interpretation, alpha: Alphabet) -> list:
    """Least subset of the algorithm domain holding every init image and
    closed under the operations (and, for interactive models, under ``in``
    for every input value).  Missing table entries are skipped."""
    seen = []
    member = set()
    init = i.functions.get(INIT, {})
    frontier = [init[x] for x in i.input_domain if x in init]
    ops = [i.functions.get(f, {}) for f in alpha.operations]
    interactive = alpha.kind == INTERACTIVE
    while frontier:
        d = frontier.pop()
        if d in member:
            continue
        member.add(d)
        seen.append(d)
        for t in ops:
            if d in t:
                frontier.append(t[d])
        if interactive and i.in_table and d in i.in_table:
            row = i.in_table[d]
            frontier.extend(row[x] for x in i.input_domain if x in row)
    return seen


def _table_problems(name, table, dom, cod) -> list:
    problems = []
    if not isinstance(table, Mapping):
        return [name]
    keys = set(table)
    for x in dom:
        if x not in keys:
            problems.append(f"{name}: no entry for {x!r}")
    for x in keys - set(dom):
        problems.append(f"{name}: entry for {x!r} outside its domain")
    codset = set(cod)
    for x, y in table.items():
        if not is_atom(y) or y not in codset:
            problems.append(f"{name}: {x!r} maps to {y!r} outside its codomain")
    return problems


def validate_interpretation(i: Interpretation, alpha: Alphabet) -> ValidationReport:
    D, Din, Dout = i.domain, i.input_domain, i.output_domain
    problems = []
    for dom_name, dom in (("domain", D), ("input_domain", Din), ("output_domain", Dout)):
        if len(set(dom)) != len(dom) or not all(is_atom(a) for a in dom):
            problems.append(f"{dom_name}: atoms must be unique strings or integers")

    signatures = {INIT: (Din, D), FIN: (D, Dout)}
    if alpha.kind == INTERACTIVE:
        signatures[OUT] = (D, Dout)
    for f in alpha.operations:
        signatures[f] = (D, D)
    for f, (dom, cod) in signatures.items():
        if f not in i.functions:
            problems.append(f"{f}: not interpreted")
        else:
            problems += _table_problems(f, i.functions[f], dom, cod)
    for f in i.functions:
        if f not in signatures:
            problems.append(f"{f}: interpreted but not a unary function symbol of the alphabet")

    if alpha.kind == INTERACTIVE:
        if i.in_table is None:
            problems.append("in: not interpreted")
        else:
            for d in D:
                if d not in i.in_table:
                    problems.append(f"in: no row for {d!r}")
                else:
                    problems += _table_problems(f"in[{d!r}]", i.in_table[d], Din, D)
            for d in set(i.in_table) - set(D):
                problems.append(f"in: row for {d!r} outside the domain")
    elif i.in_table is not None:
        problems.append("in: binary table given for a non-interactive alphabet")

    for p in alpha.predicates:
        if p not in i.predicates:
            problems.append(f"{p}: not interpreted")
        else:
            problems += _table_problems(p, i.predicates[p], D, (0, 1))
    for p in i.predicates:
        if p not in alpha.predicates:
            problems.append(f"{p}: interpreted but not a predicate symbol of the alphabet")

    out = []
    if problems:
        out.append(_violation("interpretation.tables", *problems))
    closure = domain_closure(i, alpha)
    if set(closure) != set(D):
        out.append(_violation("interpretation.minimality", *[d for d in D if d not in set(closure)]))
    notes = ("input and output domains are finite enumerations, hence finitely generated",)
    return ValidationReport(tuple(out), notes)


def validate(pa: ProtoAlgorithm) -> ValidationReport:
    """Alphabet, graph and interpretation checks in one report."""
    report = validate_alphabet(pa.alphabet)
    report = report + validate_graph(pa.graph, pa.alphabet)
    return report + validate_interpretation(pa.interpretation, pa.alphabet)


def classify_determinism(pa: ProtoAlgorithm) -> str:
    g = pa.graph
    non_final = set(pa.alphabet.non_final)
    for v in g.vertices:
        if g.labels[v] in non_final and g.outdegree(v) != 1:
            return "non-deterministic"
    return "deterministic"


def is_deterministic(pa: ProtoAlgorithm) -> bool:
    return classify_determinism(pa) == "deterministic"


def replace(pa: ProtoAlgorithm, **changes: Any) -> ProtoAlgorithm:
    """Copy of ``pa`` with the given top-level parts swapped out."""
    parts = dict(alphabet=pa.alphabet, graph=pa.graph, interpretation=pa.interpretation)
    parts.update(changes)
    return ProtoAlgorithm(**parts)
