import random

import pytest

from mutants import RULE_MUTANTS
from protoalg.fixtures import FIXTURES, build, choice, echo, parity
from protoalg.model import (INTERACTIVE, KINDS, NON_INTERACTIVE, AlgorithmGraph, Alphabet,
                            Interpretation, classify_determinism, domain_closure,
                            has_predicate_only_cycle, replace, validate, validate_alphabet,
                            validate_graph, validate_interpretation, vertex_degrees)
from protoalg.sampling import Shape, random_model


def test_minimal_alphabet_is_valid():
    assert validate_alphabet(Alphabet(["init", "fin"], ["p"], NON_INTERACTIVE)).valid


def test_missing_fin_is_reported():
    report = validate_alphabet(Alphabet(["init"], [], NON_INTERACTIVE))
    assert report.rules == {"alphabet.reserved"}
    assert report.violations[0].elements == ("fin",)


def test_shared_symbol_breaks_disjointness():
    alpha = Alphabet(["init", "fin", "in", "out", "f", "p"], ["p"], INTERACTIVE)
    assert validate_alphabet(alpha).rules == {"alphabet.disjoint"}


def test_interactive_alphabet_needs_in_and_out():
    report = validate_alphabet(Alphabet(["init", "fin"], [], INTERACTIVE))
    assert report.violations[0].elements == ("in", "out")


def test_empty_and_repeated_names():
    report = validate_alphabet(Alphabet(["init", "fin", "", "f", "f"], [], NON_INTERACTIVE))
    assert report.rules == {"alphabet.names"}


def test_vertex_degrees():
    assert vertex_degrees(parity().graph, "r") == (0, 1)
    assert vertex_degrees(parity().graph, "v_fin") == (1, 0)
    assert vertex_degrees(choice().graph, "r") == (0, 2)
    assert vertex_degrees(choice().graph, "v_fin") == (2, 0)
    with pytest.raises(KeyError):
        vertex_degrees(parity().graph, "nowhere")


def test_predicate_only_cycles():
    assert not has_predicate_only_cycle(echo().graph, echo().alphabet)
    assert not has_predicate_only_cycle(parity().graph, parity().alphabet)
    alpha = Alphabet(["init", "fin"], ["p"], NON_INTERACTIVE)
    g = AlgorithmGraph(["r", "v", "f"], [("r", "v"), ("v", "v"), ("v", "f")],
                       {"r": "init", "v": "p", "f": "fin"}, "r",
                       {("v", "v"): 0, ("v", "f"): 1})
    assert has_predicate_only_cycle(g, alpha)
    assert validate_graph(g, alpha).rules == {"graph.predicate-cycle"}


def test_fixture_graphs_are_valid():
    for make in FIXTURES.values():
        pa = make()
        assert validate_graph(pa.graph, pa.alphabet).valid


def test_echo_with_extra_edge_into_in():
    pa = echo()
    g = pa.graph
    bad = AlgorithmGraph(g.vertices, g.edges + (("v_p", "v_in"),), g.labels, g.root, g.edge_labels)
    assert "graph.out-in" in validate_graph(bad, pa.alphabet).rules


@pytest.mark.parametrize("rule", sorted(RULE_MUTANTS))
def test_each_rule_has_an_isolating_mutant(rule):
    report = validate(RULE_MUTANTS[rule]())
    assert report.verdict == "invalid"
    assert report.rules == {rule}
    assert report.violations[0].condition


def test_interactive_rules_skip_non_interactive_graphs():
    # out/in are ordinary names for a non-interactive alphabet
    D = [0]
    pa = build(NON_INTERACTIVE, ["init", "fin", "out"], [],
               [("r", "init"), ("o", "out"), ("f", "fin")],
               [("r", "o"), ("o", "f")], "r", D, D, D,
               {"init": {0: 0}, "fin": {0: 0}, "out": {0: 0}})
    assert validate(pa).valid


def test_fixture_interpretations():
    for make in FIXTURES.values():
        pa = make()
        report = validate_interpretation(pa.interpretation, pa.alphabet)
        assert report.valid
        assert report.notes
    pa = choice()
    assert sorted(domain_closure(pa.interpretation, pa.alphabet)) == [0, 1, 2, 3, 4]


def test_unreachable_atom_breaks_minimality():
    report = validate(RULE_MUTANTS["interpretation.minimality"]())
    assert report.violations[0].elements == (9,)


def test_table_problems_are_listed():
    pa = parity()
    i = pa.interpretation
    tables = dict(i.functions, fin={0: "even", 1: "odd", 2: "even", 3: "maybe"}, g={0: 0})
    bad = replace(pa, interpretation=Interpretation(i.domain, i.input_domain, i.output_domain,
                                                    tables, {"q": {0: 1}}))
    (v,) = validate(bad).violations
    text = " ".join(v.elements)
    assert "'maybe'" in text and "g:" in text and "q:" in text


def test_in_table_checks():
    pa = echo()
    i = pa.interpretation
    bad_rows = {0: {0: 0, 1: 1}, 1: {0: 0, 1: 1, 2: 2}}
    bad = replace(pa, interpretation=Interpretation(i.domain, i.input_domain, i.output_domain,
                                                    i.functions, i.predicates, bad_rows))
    assert "interpretation.tables" in validate(bad).rules


def test_determinism():
    assert classify_determinism(parity()) == "deterministic"
    assert classify_determinism(choice()) == "non-deterministic"
    assert classify_determinism(echo()) == "deterministic"


def test_second_edge_on_a_non_final_vertex_makes_parity_non_deterministic():
    pa = parity()
    g = pa.graph
    g2 = AlgorithmGraph(g.vertices + ("v_fin2",), g.edges + (("r", "v_fin2"),),
                        {**g.labels, "v_fin2": "fin"}, g.root)
    mutant = replace(pa, graph=g2)
    assert validate(mutant).valid
    assert classify_determinism(mutant) == "non-deterministic"


@pytest.mark.parametrize("kind", KINDS)
def test_random_valid_graphs_have_one_source_and_fin_sinks(kind):
    rng = random.Random(7)
    for _ in range(100):
        pa = random_model(rng, Shape(kind=kind))
        g = pa.graph
        sources = [v for v in g.vertices if g.indegree(v) == 0]
        assert sources == [g.root] and g.labels[g.root] == "init"
        assert {v for v in g.vertices if g.labels[v] == "fin"} == \
            {v for v in g.vertices if g.outdegree(v) == 0}


def test_minimality_check_agrees_with_closure():
    rng = random.Random(11)
    for k in range(100):
        pa = random_model(rng, Shape(kind=KINDS[k % 2]))
        i = pa.interpretation
        grown = replace(pa, interpretation=Interpretation(
            i.domain + ("extra",), i.input_domain, i.output_domain,
            {f: ({**t, "extra": next(iter(t.values()))} if f != "init" else t)
             for f, t in i.functions.items()},
            {p: {**t, "extra": 0} for p, t in i.predicates.items()},
            None if i.in_table is None else {**i.in_table, "extra": i.in_table[i.domain[0]]}))
        for model in (pa, grown):
            ok = set(domain_closure(model.interpretation, model.alphabet)) == set(model.interpretation.domain)
            assert validate_interpretation(model.interpretation, model.alphabet).valid == ok
        assert not validate(grown).valid


def test_validation_is_pure():
    for make in list(FIXTURES.values()) + list(RULE_MUTANTS.values()):
        pa = make()
        assert validate(pa) == validate(pa)


def test_graph_constructor_rejects_broken_data():
    with pytest.raises(ValueError, match="duplicate vertex"):
        AlgorithmGraph(["a", "a"], [], {"a": "init"}, "a")
    with pytest.raises(ValueError, match="root"):
        AlgorithmGraph(["a"], [], {"a": "init"}, "b")
    with pytest.raises(ValueError, match="undeclared endpoint"):
        AlgorithmGraph(["a"], [("a", "b")], {"a": "init"}, "a")
    with pytest.raises(ValueError, match="0 or 1"):
        AlgorithmGraph(["a", "b"], [("a", "b")], {"a": "init", "b": "fin"}, "a", {("a", "b"): 2})
    with pytest.raises(ValueError, match="kind"):
        Alphabet(["init", "fin"], [], "semi-interactive")
