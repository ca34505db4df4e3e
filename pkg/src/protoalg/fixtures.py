"""Small reference proto-algorithms and named variants of them.

``parity``, ``choice`` and ``echo`` are also shipped as canonical ``.pad``
documents under ``protoalg/data``.
"""
from __future__ import annotations

from importlib import resources

from .model import (INTERACTIVE, NON_INTERACTIVE, AlgorithmGraph, Alphabet,
                    Interpretation, ProtoAlgorithm, replace)


def build(kind, functions, predicates, vertices, edges, root, domain, input_domain,
          output_domain, tables, predicate_tables=None, in_table=None) -> ProtoAlgorithm:
    """Assemble a model from plain lists.

    ``vertices`` is a list of ``(id, label)``; ``edges`` a list of
    ``(from, to)`` or ``(from, to, edge_label)``.
    """
    edge_pairs = [(e[0], e[1]) for e in edges]
    edge_labels = {(e[0], e[1]): e[2] for e in edges if len(e) == 3}
    graph = AlgorithmGraph(
        vertices=[v for v, _ in vertices],
        edges=edge_pairs,
        labels=dict(vertices),
        root=root,
        edge_labels=edge_labels,
    )
    interp = Interpretation(domain, input_domain, output_domain, tables,
                            predicate_tables or {}, in_table)
    return ProtoAlgorithm(Alphabet(functions, predicates, kind), graph, interp)


def _ident(atoms):
    return {a: a for a in atoms}


def parity() -> ProtoAlgorithm:
    D = [0, 1, 2, 3]
    return build(
        NON_INTERACTIVE, ["init", "fin"], [],
        [("r", "init"), ("v_fin", "fin")],
        [("r", "v_fin")],
        "r", D, D, ["even", "odd"],
        {"init": _ident(D), "fin": {d: "even" if d % 2 == 0 else "odd" for d in D}},
    )


def choice() -> ProtoAlgorithm:
    D = [0, 1, 2, 3, 4]
    return build(
        NON_INTERACTIVE, ["init", "fin", "inc", "dbl"], [],
        [("r", "init"), ("v_inc", "inc"), ("v_dbl", "dbl"), ("v_fin", "fin")],
        [("r", "v_inc"), ("r", "v_dbl"), ("v_inc", "v_fin"), ("v_dbl", "v_fin")],
        "r", D, [0, 1, 2], D,
        {
            "init": _ident([0, 1, 2]),
            "inc": {d: (d + 1) % 5 for d in D},
            "dbl": {d: (2 * d) % 5 for d in D},
            "fin": _ident(D),
        },
    )


def echo() -> ProtoAlgorithm:
    D = [0, 1, 2]
    return build(
        INTERACTIVE, ["init", "fin", "in", "out"], ["iszero"],
        [("r", "init"), ("v_p", "iszero"), ("v_out", "out"), ("v_in", "in"), ("v_fin", "fin")],
        [("r", "v_p"), ("v_p", "v_fin", 1), ("v_p", "v_out", 0), ("v_out", "v_in"), ("v_in", "v_p")],
        "r", D, D, D,
        {"init": _ident(D), "out": _ident(D), "fin": _ident(D)},
        {"iszero": {d: 1 if d == 0 else 0 for d in D}},
        {d: {x: x for x in D} for d in D},
    )


def loop() -> ProtoAlgorithm:
    """PARITY with a self-looping identity vertex before ``fin``."""
    D = [0, 1, 2, 3]
    return build(
        NON_INTERACTIVE, ["init", "fin", "f"], [],
        [("r", "init"), ("v_f", "f"), ("v_fin", "fin")],
        [("r", "v_f"), ("v_f", "v_f"), ("v_f", "v_fin")],
        "r", D, D, ["even", "odd"],
        {"init": _ident(D), "f": _ident(D),
         "fin": {d: "even" if d % 2 == 0 else "odd" for d in D}},
    )


def parity_renamed() -> ProtoAlgorithm:
    """PARITY with atoms renamed 0<->3, 1<->2 and the tables conjugated."""
    beta = {0: 3, 1: 2, 2: 1, 3: 0}
    base = parity().interpretation
    fin = {beta[d]: y for d, y in base.functions["fin"].items()}
    init = {beta[x]: beta[d] for x, d in base.functions["init"].items()}
    return build(
        NON_INTERACTIVE, ["init", "fin"], [],
        [("s", "init"), ("t", "fin")],
        [("s", "t")],
        "s", [0, 1, 2, 3], [0, 1, 2, 3], ["even", "odd"],
        {"init": init, "fin": fin},
    )


PARITY_RENAMING = {
    "functions": {"init": "init", "fin": "fin"},
    "predicates": {},
    "vertices": {"r": "s", "v_fin": "t"},
    "domain": {0: 3, 1: 2, 2: 1, 3: 0},
    "input_domain": {0: 3, 1: 2, 2: 1, 3: 0},
    "output_domain": {"even": "even", "odd": "odd"},
    "booleans": {0: 0, 1: 1},
}


def parity_unused_symbol() -> ProtoAlgorithm:
    """Renamed PARITY whose alphabet carries an extra, unused operation."""
    pa = parity_renamed()
    interp = pa.interpretation
    tables = dict(interp.functions)
    tables["g"] = _ident(interp.domain)
    return replace(
        pa,
        alphabet=Alphabet(["init", "fin", "g"], [], NON_INTERACTIVE),
        interpretation=Interpretation(interp.domain, interp.input_domain,
                                      interp.output_domain, tables),
    )


def parity_pred() -> ProtoAlgorithm:
    """PARITY with a parity test in front of two ``fin`` vertices."""
    D = [0, 1, 2, 3]
    return build(
        NON_INTERACTIVE, ["init", "fin"], ["p"],
        [("r", "init"), ("v_p", "p"), ("v_fin0", "fin"), ("v_fin1", "fin")],
        [("r", "v_p"), ("v_p", "v_fin0", 0), ("v_p", "v_fin1", 1)],
        "r", D, D, ["even", "odd"],
        {"init": _ident(D), "fin": {d: "even" if d % 2 == 0 else "odd" for d in D}},
        {"p": {d: d % 2 for d in D}},
    )


def parity_collapsed() -> ProtoAlgorithm:
    """PARITY whose output domain is a single atom."""
    D = [0, 1, 2, 3]
    return build(
        NON_INTERACTIVE, ["init", "fin"], [],
        [("r", "init"), ("v_fin", "fin")],
        [("r", "v_fin")],
        "r", D, D, ["any"],
        {"init": _ident(D), "fin": {d: "any" for d in D}},
    )


def choice_swap() -> ProtoAlgorithm:
    """CHOICE with the two root edges declared in the other order."""
    pa = choice()
    g = pa.graph
    edges = [("r", "v_dbl"), ("r", "v_inc")] + [e for e in g.edges if e[0] != "r"]
    return replace(pa, graph=AlgorithmGraph(g.vertices, edges, g.labels, g.root))


def choice_seq() -> ProtoAlgorithm:
    """CHOICE with an identity step between the root and the choice.

    Computes the same relation; the initial state has one successor.
    """
    D = [0, 1, 2, 3, 4]
    base = choice().interpretation
    tables = dict(base.functions)
    tables["id"] = _ident(D)
    return build(
        NON_INTERACTIVE, ["init", "fin", "inc", "dbl", "id"], [],
        [("r", "init"), ("v_id", "id"), ("v_inc", "inc"), ("v_dbl", "dbl"), ("v_fin", "fin")],
        [("r", "v_id"), ("v_id", "v_inc"), ("v_id", "v_dbl"), ("v_inc", "v_fin"), ("v_dbl", "v_fin")],
        "r", D, [0, 1, 2], D, tables,
    )


def echo_const0() -> ProtoAlgorithm:
    """ECHO whose ``out`` always emits 0."""
    pa = echo()
    i = pa.interpretation
    tables = dict(i.functions)
    tables["out"] = {d: 0 for d in i.domain}
    return replace(pa, interpretation=Interpretation(
        i.domain, i.input_domain, i.output_domain, tables, i.predicates, i.in_table))


def echo_trivial() -> ProtoAlgorithm:
    """ECHO without its interaction loop: the 0-branch goes to a second ``fin``."""
    D = [0, 1, 2]
    return build(
        INTERACTIVE, ["init", "fin", "in", "out"], ["iszero"],
        [("r", "init"), ("v_p", "iszero"), ("v_fin", "fin"), ("v_fin0", "fin")],
        [("r", "v_p"), ("v_p", "v_fin", 1), ("v_p", "v_fin0", 0)],
        "r", D, D, D,
        {"init": _ident(D), "out": _ident(D), "fin": _ident(D)},
        {"iszero": {d: 1 if d == 0 else 0 for d in D}},
        {d: {x: x for x in D} for d in D},
    )


FIXTURES = {"parity": parity, "choice": choice, "echo": echo}

VARIANTS = {
    "parity": parity,
    "choice": choice,
    "echo": echo,
    "loop": loop,
    "parity_renamed": parity_renamed,
    "parity_unused_symbol": parity_unused_symbol,
    "parity_pred": parity_pred,
    "choice_swap": choice_swap,
    "choice_seq": choice_seq,
    "echo_const0": echo_const0,
    "echo_trivial": echo_trivial,
}


def fixture_path(name: str):
    """Location of a shipped ``.pad`` document."""
    return resources.files("protoalg") / "data" / f"{name}.pad"
