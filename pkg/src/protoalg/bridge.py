"""Relating non-interactive proto-algorithms to trivial interactive ones."""
from __future__ import annotations

from dataclasses import dataclass

from .model import (FIN, IN, INTERACTIVE, NON_INTERACTIVE, OUT, Alphabet, Interpretation,
                    ProtoAlgorithm, _table_problems, replace, validate)
from .semantics import astep, computed_relation, enumerate_states

TRIVIAL, NON_TRIVIAL = "trivial", "non-trivial"


class ExpansionError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def classify_triviality(ia: ProtoAlgorithm) -> str:
    if not ia.interactive:
        raise ValueError("triviality is defined for interactive proto-algorithms only")
    labels = set(ia.graph.labels.values())
    return NON_TRIVIAL if labels & {IN, OUT} else TRIVIAL


@dataclass(frozen=True)
class ExpansionSpec:
    """Tables for the two symbols an expansion adds: ``in_table[d][din]``
    and ``out_table[d]``."""

    in_table: dict
    out_table: dict

    @classmethod
    def default(cls, na: ProtoAlgorithm) -> "ExpansionSpec":
        """``in`` keeps the datum, ``out`` copies ``fin``."""
        i = na.interpretation
        return cls({d: {x: d for x in i.input_domain} for d in i.domain},
                   dict(i.functions[FIN]))


def expand_to_interactive(na: ProtoAlgorithm, spec: ExpansionSpec | None = None) -> ProtoAlgorithm:
    """Trivial interactive model with the same graph, extended by ``spec``."""
    if na.interactive:
        raise ValueError("input is not a non-interactive proto-algorithm")
    if IN in na.alphabet.functions or OUT in na.alphabet.functions:
        raise ExpansionError(["the alphabet already uses the symbols in/out"])
    spec = spec or ExpansionSpec.default(na)
    i = na.interpretation
    problems = _table_problems(OUT, spec.out_table, i.domain, i.output_domain)
    if not isinstance(spec.in_table, dict):
        problems.append("in: not a table")
    else:
        for d in i.domain:
            if d not in spec.in_table:
                problems.append(f"in: no row for {d!r}")
            else:
                problems += _table_problems(f"in[{d!r}]", spec.in_table[d], i.input_domain, i.domain)
        problems += [f"in: row for {d!r} outside the domain" for d in spec.in_table if d not in i.domain_index]
    if problems:
        raise ExpansionError(problems)
    alphabet = Alphabet(na.alphabet.functions + (IN, OUT), na.alphabet.predicates, INTERACTIVE)
    functions = dict(i.functions)
    functions[OUT] = dict(spec.out_table)
    interp = Interpretation(i.domain, i.input_domain, i.output_domain, functions,
                            i.predicates, spec.in_table)
    ia = ProtoAlgorithm(alphabet, na.graph, interp)
    report = validate(ia)
    if not report.valid:
        raise ExpansionError([f"{v.rule}: {v.condition}" for v in report.violations])
    return ia


def to_non_interactive(ia: ProtoAlgorithm) -> ProtoAlgorithm:
    """Drop ``in`` and ``out`` from a trivial interactive model."""
    if classify_triviality(ia) != TRIVIAL:
        raise ValueError("only trivial interactive proto-algorithms can drop in/out")
    i = ia.interpretation
    functions = {f: t for f, t in i.functions.items() if f != OUT}
    return replace(
        ia,
        alphabet=Alphabet([f for f in ia.alphabet.functions if f not in (IN, OUT)],
                          ia.alphabet.predicates, NON_INTERACTIVE),
        interpretation=Interpretation(i.domain, i.input_domain, i.output_domain,
                                      functions, i.predicates),
    )


def _same_graph(g, h) -> bool:
    return (set(g.vertices) == set(h.vertices) and set(g.edges) == set(h.edges)
            and g.labels == h.labels and g.root == h.root and g.edge_labels == h.edge_labels)


def is_expansion(a: ProtoAlgorithm, b: ProtoAlgorithm) -> bool:
    """Whether ``b`` extends ``a``'s alphabet and interpretation over the same
    graph.  ``a`` may be non-interactive while ``b`` is interactive."""
    if a.interactive and not b.interactive:
        return False
    if not set(a.alphabet.functions) <= set(b.alphabet.functions):
        return False
    if not set(a.alphabet.predicates) <= set(b.alphabet.predicates):
        return False
    if not _same_graph(a.graph, b.graph):
        return False
    i, j = a.interpretation, b.interpretation
    for dom in ("domain", "input_domain", "output_domain"):
        if set(getattr(i, dom)) != set(getattr(j, dom)):
            return False
    for f, t in i.functions.items():
        if j.functions.get(f) != t:
            return False
    for p, t in i.predicates.items():
        if j.predicates.get(p) != t:
            return False
    return i.in_table is None or i.in_table == j.in_table


@dataclass(frozen=True)
class EmbeddingReport:
    shared_states: int
    step_agreement: bool
    relation_agreement: bool
    singleton_pairs: tuple
    mismatches: tuple = ()

    @property
    def ok(self) -> bool:
        return self.step_agreement and self.relation_agreement

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "shared_states": self.shared_states,
            "step_agreement": self.step_agreement,
            "relation_agreement": self.relation_agreement,
            "singleton_pairs": [[list(x), list(y)] for x, y in self.singleton_pairs],
            "mismatches": list(self.mismatches),
        }


def verify_embedding(na: ProtoAlgorithm, ia: ProtoAlgorithm, stream_bound: int = 1) -> EmbeddingReport:
    """Compare a non-interactive model with a trivial interactive expansion:
    step sets on the shared states and the relation on one-element streams."""
    if na.interactive or not ia.interactive:
        raise ValueError("expects a non-interactive and an interactive proto-algorithm")
    if not is_expansion(na, ia):
        raise ValueError("the interactive model is not an expansion of the non-interactive one")
    if classify_triviality(ia) != TRIVIAL:
        raise ValueError("the interactive model is not trivial")
    mismatches = []
    shared = set(enumerate_states(na)) & set(enumerate_states(ia))
    for s in enumerate_states(na):
        if s in shared and set(astep(na, s)) != set(astep(ia, s)):
            mismatches.append(f"step sets differ at {s!r}")
    steps_ok = not mismatches
    flat = set(computed_relation(na))
    singles = tuple((x, y) for x, y in computed_relation(ia, stream_bound)
                    if len(x) == 1 and len(y) == 1)
    lifted = {(x[0], y[0]) for x, y in singles}
    for pair in sorted(flat ^ lifted, key=repr):
        mismatches.append(f"relation differs at {pair!r}")
    return EmbeddingReport(len(shared), steps_ok, flat == lifted, singles, tuple(mismatches))
