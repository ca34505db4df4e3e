import random

import pytest

from protoalg.bridge import (NON_TRIVIAL, TRIVIAL, ExpansionError, ExpansionSpec,
                             classify_triviality, expand_to_interactive, is_expansion,
                             to_non_interactive, verify_embedding)
from protoalg.fixtures import (VARIANTS, build, choice, echo, echo_trivial, loop, parity,
                               parity_collapsed, parity_pred)
from protoalg.model import (INTERACTIVE, NON_INTERACTIVE, Interpretation, classify_determinism,
                            replace, validate)
from protoalg.sampling import Shape, random_model
from protoalg.semantics import enumerate_states

NON_INTERACTIVE_MODELS = [m for m in VARIANTS.values() if not m().interactive] + [parity_collapsed]


def _random_non_interactive(n, seed):
    rng = random.Random(seed)
    return [random_model(rng, Shape(kind=NON_INTERACTIVE)) for _ in range(n)]


def test_triviality_examples():
    assert classify_triviality(echo()) == NON_TRIVIAL
    assert classify_triviality(echo_trivial()) == TRIVIAL
    assert classify_triviality(expand_to_interactive(parity())) == TRIVIAL
    with pytest.raises(ValueError):
        classify_triviality(parity())


def test_default_expansion_of_parity():
    ia = expand_to_interactive(parity())
    assert validate(ia).valid and ia.interactive
    assert ia.graph == parity().graph
    assert ia.interpretation.functions["out"] == parity().interpretation.functions["fin"]
    assert ia.interpretation.in_table == {d: {x: d for x in range(4)} for d in range(4)}


def test_constant_out_and_input_projection_are_accepted():
    D = range(4)
    ia = expand_to_interactive(parity(), ExpansionSpec({d: {x: d for x in D} for d in D},
                                                       {d: "even" for d in D}))
    assert validate(ia).valid
    ia = expand_to_interactive(parity(), ExpansionSpec({d: {x: x for x in D} for d in D},
                                                       {d: "odd" for d in D}))
    assert classify_triviality(ia) == TRIVIAL


def test_expanding_an_interactive_model_is_an_error():
    with pytest.raises(ValueError):
        expand_to_interactive(echo())


def test_partial_specs_are_rejected():
    D = range(4)
    with pytest.raises(ExpansionError) as info:
        expand_to_interactive(parity(), ExpansionSpec({d: {x: d for x in D} for d in D},
                                                      {0: "even"}))
    assert any(p.startswith("out") for p in info.value.problems)
    with pytest.raises(ExpansionError) as info:
        expand_to_interactive(parity(), ExpansionSpec({0: {0: 0}}, {d: "even" for d in D}))
    assert any("no row" in p for p in info.value.problems)
    with pytest.raises(ExpansionError):
        expand_to_interactive(parity(), ExpansionSpec({d: {x: 7 for x in D} for d in D},
                                                      {d: "even" for d in D}))


def test_is_expansion_examples():
    p = parity()
    assert is_expansion(p, p)
    assert is_expansion(p, expand_to_interactive(p))
    i = p.interpretation
    altered = replace(p, interpretation=Interpretation(
        i.domain, i.input_domain, i.output_domain,
        dict(i.functions, fin={**i.functions["fin"], 3: "even"})))
    assert not is_expansion(p, altered)
    assert not is_expansion(p, expand_to_interactive(parity_pred()))
    assert not is_expansion(expand_to_interactive(p), p)
    assert not is_expansion(p, choice())


def test_embedding_for_parity():
    report = verify_embedding(parity(), expand_to_interactive(parity()))
    assert report.ok and report.step_agreement and report.relation_agreement
    assert sorted(report.singleton_pairs) == [((0,), ("even",)), ((1,), ("odd",)),
                                              ((2,), ("even",)), ((3,), ("odd",))]
    assert report.mismatches == ()


def test_embedding_for_choice_keeps_both_branches():
    report = verify_embedding(choice(), expand_to_interactive(choice()))
    assert report.ok
    assert {((2,), (3,)), ((2,), (4,))} <= set(report.singleton_pairs)
    assert len(report.singleton_pairs) == 5


def test_embedding_preconditions():
    with pytest.raises(ValueError, match="not an expansion"):
        verify_embedding(parity(), expand_to_interactive(parity_pred()))
    with pytest.raises(ValueError):
        verify_embedding(parity(), parity())
    with pytest.raises(ValueError):
        verify_embedding(echo_trivial(), echo_trivial())


def test_embedding_with_other_specs():
    D = range(4)
    spec = ExpansionSpec({d: {x: x for x in D} for d in D}, {d: "even" for d in D})
    assert verify_embedding(parity(), expand_to_interactive(parity(), spec)).ok


@pytest.mark.parametrize("make", NON_INTERACTIVE_MODELS, ids=lambda m: m.__name__)
def test_default_expansion_exists_for_every_valid_model(make):
    na = make()
    ia = expand_to_interactive(na)
    assert is_expansion(na, ia) and classify_triviality(ia) == TRIVIAL
    assert verify_embedding(na, ia).ok


def test_default_expansion_on_random_models():
    for na in _random_non_interactive(60, 4):
        ia = expand_to_interactive(na)
        report = verify_embedding(na, ia)
        assert report.ok, report.mismatches
        assert classify_determinism(ia) == classify_determinism(na)
        shared = set(enumerate_states(na)) & set(enumerate_states(ia))
        assert report.shared_states == len(shared) == len(enumerate_states(na))


def test_dropping_in_and_out_restores_the_original():
    for na in [m() for m in NON_INTERACTIVE_MODELS] + _random_non_interactive(40, 9):
        back = to_non_interactive(expand_to_interactive(na))
        assert back == na and validate(back).valid


def test_trivial_models_drop_to_valid_non_interactive_ones():
    na = to_non_interactive(echo_trivial())
    assert validate(na).valid
    with pytest.raises(ValueError):
        to_non_interactive(echo())


def test_dropping_in_can_break_minimality():
    # atom 1 is only reachable through the in table
    D = [0, 1]
    ia = build(INTERACTIVE, ["init", "fin", "in", "out"], [], [("r", "init"), ("f", "fin")],
               [("r", "f")], "r", D, [0], [0],
               {"init": {0: 0}, "fin": {0: 0, 1: 0}, "out": {0: 0, 1: 0}}, {},
               {0: {0: 1}, 1: {0: 1}})
    assert validate(ia).valid and classify_triviality(ia) == TRIVIAL
    assert validate(to_non_interactive(ia)).rules == {"interpretation.minimality"}


def test_loop_expansion_keeps_divergence_out_of_the_relation():
    report = verify_embedding(loop(), expand_to_interactive(loop()))
    assert report.ok
