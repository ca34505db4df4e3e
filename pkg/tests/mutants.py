"""Fixture mutants that break exactly one validation rule each."""
from protoalg.fixtures import build, choice, echo, parity, parity_pred
from protoalg.model import NON_INTERACTIVE, AlgorithmGraph, Interpretation, replace


def _regraph(pa, vertices=None, edges=None, labels=None, edge_labels=None, root=None):
    g = pa.graph
    return replace(pa, graph=AlgorithmGraph(
        vertices if vertices is not None else g.vertices,
        edges if edges is not None else g.edges,
        labels if labels is not None else g.labels,
        root if root is not None else g.root,
        edge_labels if edge_labels is not None else g.edge_labels,
    ))


def _relabel(pa, v, label):
    return _regraph(pa, labels={**pa.graph.labels, v: label})


def _add(pa, vertices=(), edges=(), edge_labels=None):
    g = pa.graph
    labels = {**g.labels, **dict(vertices)}
    return _regraph(pa, vertices=g.vertices + tuple(v for v, _ in vertices),
                    edges=g.edges + tuple(edges), labels=labels,
                    edge_labels={**g.edge_labels, **(edge_labels or {})})


def vertex_labels():
    return _relabel(choice(), "v_inc", "nope")


def root_indegree():
    # no vertex has indegree 0 and none is labeled init
    pa = _relabel(choice(), "r", "dbl")
    return _add(pa, edges=[("v_dbl", "r")])


def unique_source():
    return _add(parity(), vertices=[("r2", "init")], edges=[("r2", "v_fin")])


def init_label():
    return _relabel(choice(), "v_inc", "init")


def fin_label():
    return _add(choice(), edges=[("v_fin", "v_inc")])


def function_edges():
    return _regraph(choice(), edge_labels={("r", "v_inc"): 0})


def predicate_degree():
    return _add(parity_pred(), vertices=[("v_fin2", "fin")], edges=[("v_p", "v_fin2")],
                edge_labels={("v_p", "v_fin2"): 0})


def predicate_edge_labels():
    pa = parity_pred()
    return _regraph(pa, edge_labels={("v_p", "v_fin0"): 0, ("v_p", "v_fin1"): 0})


def predicate_cycle():
    D = [0, 1, 2, 3]
    return build(
        NON_INTERACTIVE, ["init", "fin"], ["p"],
        [("r", "init"), ("a", "p"), ("b", "p"), ("f0", "fin"), ("f1", "fin")],
        [("r", "a"), ("a", "b", 1), ("a", "f0", 0), ("b", "a", 1), ("b", "f1", 0)],
        "r", D, D, ["even", "odd"],
        {"init": {d: d for d in D}, "fin": {d: "even" if d % 2 == 0 else "odd" for d in D}},
        {"p": {d: d % 2 for d in D}},
    )


def out_degree():
    return _add(echo(), vertices=[("v_in2", "in")], edges=[("v_out", "v_in2"), ("v_in2", "v_p")])


def out_in():
    return _add(echo(), edges=[("v_in", "v_in")])


def interpretation_tables():
    pa = parity()
    i = pa.interpretation
    fin = dict(i.functions["fin"])
    del fin[3]
    return replace(pa, interpretation=Interpretation(
        i.domain, i.input_domain, i.output_domain, dict(i.functions, fin=fin)))


def interpretation_minimality():
    pa = parity()
    i = pa.interpretation
    fin = {**i.functions["fin"], 9: "odd"}
    return replace(pa, interpretation=Interpretation(
        i.domain + (9,), i.input_domain, i.output_domain, dict(i.functions, fin=fin)))


RULE_MUTANTS = {
    "graph.vertex-labels": vertex_labels,
    "graph.root-indegree": root_indegree,
    "graph.unique-source": unique_source,
    "graph.init-label": init_label,
    "graph.fin-label": fin_label,
    "graph.function-edges": function_edges,
    "graph.predicate-degree": predicate_degree,
    "graph.predicate-edge-labels": predicate_edge_labels,
    "graph.predicate-cycle": predicate_cycle,
    "graph.out-degree": out_degree,
    "graph.out-in": out_in,
    "interpretation.tables": interpretation_tables,
    "interpretation.minimality": interpretation_minimality,
}
