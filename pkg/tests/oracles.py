"""Brute-force reference computations shared by several test modules."""
import dataclasses
from itertools import product

from protoalg.model import NON_INTERACTIVE
from protoalg.sampling import TINY, mutate, random_model, renamed_copy
from protoalg.semantics import (ALGORITHMIC, FINAL, INITIAL, computed_relation, enumerate_states,
                                extract_inputs, extract_output, extract_outputs,
                                input_streams, run_set, state_kind, transition_map)


def run_enumeration_relation(pa, max_stream_len=3):
    """The computed relation assembled from explicit run sets."""
    depth = len(enumerate_states(pa)) + 1
    pairs = set()
    if not pa.interactive:
        for x in pa.interpretation.input_domain:
            for r in run_set(pa, x, ALGORITHMIC, depth).complete:
                pairs.add((x, extract_output(r)))
        return pairs
    depth *= max_stream_len
    for stream in input_streams(pa, max_stream_len):
        for r in run_set(pa, stream, ALGORITHMIC, depth).complete:
            pairs.add((extract_inputs(r), extract_outputs(r)))
    return pairs


def no_translation_models_relation(a, b):
    """Brute force over every total translation pair."""
    ia, ib = a.interpretation, b.interpretation
    rel_a, rel_b = computed_relation(a), set(computed_relation(b))
    for phi_in in product(ib.input_domain, repeat=len(ia.input_domain)):
        fi = dict(zip(ia.input_domain, phi_in))
        for phi_out in product(ia.output_domain, repeat=len(ib.output_domain)):
            fo = dict(zip(ib.output_domain, phi_out))
            if all(any((fi[x], y2) in rel_b and fo[y2] == y for y2 in ib.output_domain)
                   for x, y in rel_a):
                return False
    return True


def tiny_pair(rng, kind):
    """A random pair whose product state space fits the brute-force oracle."""
    shape = dataclasses.replace(TINY, kind=kind, outputs=2 if kind == NON_INTERACTIVE else 1)
    while True:
        a = random_model(rng, shape)
        pick = rng.randrange(3)
        if pick == 0:
            b = random_model(rng, shape)
        elif pick == 1:
            b = (mutate(a, rng) or (a,))[0]
        else:
            b = renamed_copy(a, rng)[0]
        if len(enumerate_states(a)) * len(enumerate_states(b)) <= 25:
            return a, b


def convergent_run_lengths(pa, mode):
    """Lengths of the convergent runs over every input value (non-interactive)."""
    depth = 2 * len(enumerate_states(pa)) + 2
    return {len(r) for x in pa.interpretation.input_domain
            for r in run_set(pa, x, mode, depth).complete}


def lengths_rule_out_equivalence(a, b, mode):
    """A simulation keeps run lengths, so a convergent run length present
    in only one of the models excludes equivalence in ``mode``."""
    return convergent_run_lengths(a, mode) != convergent_run_lengths(b, mode)


def _all_functions(dom, cod):
    for values in product(cod, repeat=len(dom)):
        yield dict(zip(dom, values))


def _two_sided_fixpoint(a, b, step_a, step_b, admissible):
    rel = {(s, t) for s in enumerate_states(a) for t in enumerate_states(b)
           if state_kind(s) == state_kind(t) and admissible(s, t)}
    changed = True
    while changed:
        changed = False
        for s, t in list(rel):
            forth = all(any((s2, t2) in rel for t2 in step_b[t]) for s2 in step_a[s])
            back = all(any((s2, t2) in rel for s2 in step_a[s]) for t2 in step_b[t])
            if not (forth and back):
                rel.discard((s, t))
                changed = True
    return rel


def _covers(a, b, rel):
    ini_a = {s.din for s, t in rel if state_kind(s) == INITIAL}
    ini_b = {t.din for s, t in rel if state_kind(t) == INITIAL}
    fin_a = {s.dout for s, t in rel if state_kind(s) == FINAL}
    fin_b = {t.dout for s, t in rel if state_kind(t) == FINAL}
    ia, ib = a.interpretation, b.interpretation
    return (ini_a == set(ia.input_domain) and ini_b == set(ib.input_domain)
            and fin_a == set(ia.output_domain) and fin_b == set(ib.output_domain))


def naive_equivalence_exists(a, b, mode):
    """Equivalence decided by plain iteration, without the engine's search.

    For interactive models every quadruple of translation functions (both
    directions, inputs and outputs) is tried.
    """
    step_a, step_b = transition_map(a, mode), transition_map(b, mode)
    if not a.interactive:
        return _covers(a, b, _two_sided_fixpoint(a, b, step_a, step_b, lambda s, t: True))
    ia, ib = a.interpretation, b.interpretation
    for phi_in in _all_functions(ia.input_domain, ib.input_domain):
        for psi_in in _all_functions(ib.input_domain, ia.input_domain):
            for phi_out in _all_functions(ib.output_domain, ia.output_domain):
                for psi_out in _all_functions(ia.output_domain, ib.output_domain):
                    def admissible(s, t):
                        if (s.din is not None or t.din is not None) and not (
                                t.din == phi_in.get(s.din) and s.din == psi_in.get(t.din)):
                            return False
                        if (s.dout is not None or t.dout is not None) and not (
                                s.dout == phi_out.get(t.dout) and t.dout == psi_out.get(s.dout)):
                            return False
                        return True
                    rel = _two_sided_fixpoint(a, b, step_a, step_b, admissible)
                    if _covers(a, b, rel):
                        return True
    return False
