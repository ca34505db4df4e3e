"""Isomorphism, simulation and equivalence of proto-algorithms.

The deciders return witnesses.  Each witness kind has a validator that
checks the defining conditions directly, on a separate code path from the
search that produced it.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations, product

from .model import FIN, INIT, OUT, ProtoAlgorithm
from .semantics import (ALGORITHMIC, COMPUTATIONAL, FINAL, INITIAL, MODES, State,
                        computed_relation, enumerate_states, state_kind, state_order,
                        transition_map)


class KindMismatch(ValueError):
    pass


def _same_kind(a: ProtoAlgorithm, b: ProtoAlgorithm):
    if a.kind != b.kind:
        raise KindMismatch(f"cannot compare a {a.kind} with a {b.kind} proto-algorithm")


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    functions: dict
    predicates: dict
    vertices: dict
    domain: dict
    input_domain: dict
    output_domain: dict
    booleans: dict


@dataclass(frozen=True)
class SimulationWitness:
    pairs: frozenset
    mode: str
    phi_in: dict | None = None
    phi_out: dict | None = None

    def inverse(self, phi_in=None, phi_out=None) -> "SimulationWitness":
        return SimulationWitness(frozenset((t, s) for s, t in self.pairs), self.mode,
                                 phi_in, phi_out)


@dataclass(frozen=True)
class EquivalenceWitness:
    forward: SimulationWitness
    backward: SimulationWitness


def ordered_pairs(a: ProtoAlgorithm, b: ProtoAlgorithm, pairs):
    ka, kb = state_order(a), state_order(b)
    return sorted(pairs, key=lambda p: (ka(p[0]), kb(p[1])))


# -- independent validators ---------------------------------------------------

def _bijection_problems(name, m, dom, cod) -> list[str]:
    if not isinstance(m, dict):
        return [f"{name}: not a mapping"]
    out = []
    if set(m) != set(dom):
        out.append(f"{name}: not defined on exactly its domain")
    vals = list(m.values())
    if len(set(vals)) != len(vals) or set(vals) != set(cod):
        out.append(f"{name}: not a bijection onto its codomain")
    return out


def validate_iso_witness(a: ProtoAlgorithm, b: ProtoAlgorithm, w: IsoWitness) -> list[str]:
    """Problems with ``w`` as an isomorphism witness; empty when it is one."""
    p = []
    ia, ib = a.interpretation, b.interpretation
    ga, gb = a.graph, b.graph
    p += _bijection_problems("functions", w.functions, a.alphabet.functions, b.alphabet.functions)
    p += _bijection_problems("predicates", w.predicates, a.alphabet.predicates, b.alphabet.predicates)
    p += _bijection_problems("vertices", w.vertices, ga.vertices, gb.vertices)
    p += _bijection_problems("domain", w.domain, ia.domain, ib.domain)
    p += _bijection_problems("input_domain", w.input_domain, ia.input_domain, ib.input_domain)
    p += _bijection_problems("output_domain", w.output_domain, ia.output_domain, ib.output_domain)
    p += _bijection_problems("booleans", w.booleans, (0, 1), (0, 1))
    if p:
        return p
    bv, bf, bp, bd = w.vertices, w.functions, w.predicates, w.domain
    bi, bo, bb = w.input_domain, w.output_domain, w.booleans
    eb = set(gb.edges)
    for u in ga.vertices:
        for v in ga.vertices:
            if ((u, v) in set(ga.edges)) != ((bv[u], bv[v]) in eb):
                p.append(f"edge ({u!r},{v!r}) not preserved")
    fa, pa_ = set(a.alphabet.functions), set(a.alphabet.predicates)
    for v in ga.vertices:
        lab = ga.labels[v]
        if lab in fa and bf[lab] != gb.labels[bv[v]]:
            p.append(f"function label of {v!r} not preserved")
        if lab in pa_ and bp[lab] != gb.labels[bv[v]]:
            p.append(f"predicate label of {v!r} not preserved")
    for e, lab in ga.edge_labels.items():
        if gb.edge_labels.get((bv[e[0]], bv[e[1]])) != bb[lab]:
            p.append(f"edge label of {e!r} not preserved")
    for r in a.alphabet.reserved:
        if bf.get(r) != r:
            p.append(f"reserved symbol {r} not fixed")
    if p:
        return p
    for x in ia.input_domain:
        if bd[ia.functions[INIT][x]] != ib.functions[INIT][bi[x]]:
            p.append(f"init does not commute at {x!r}")
    for d in ia.domain:
        if bo[ia.functions[FIN][d]] != ib.functions[FIN][bd[d]]:
            p.append(f"fin does not commute at {d!r}")
        for f in a.alphabet.operations:
            if bd[ia.functions[f][d]] != ib.functions[bf[f]][bd[d]]:
                p.append(f"{f} does not commute at {d!r}")
        for q in a.alphabet.predicates:
            if bb[ia.predicates[q][d]] != ib.predicates[bp[q]][bd[d]]:
                p.append(f"{q} does not commute at {d!r}")
        if a.interactive:
            if bo[ia.functions[OUT][d]] != ib.functions[OUT][bd[d]]:
                p.append(f"out does not commute at {d!r}")
            for x in ia.input_domain:
                if bd[ia.in_table[d][x]] != ib.in_table[bd[d]][bi[x]]:
                    p.append(f"in does not commute at ({d!r},{x!r})")
    return p


def _function_problems(name, m, dom, cod) -> list[str]:
    if not isinstance(m, dict) or set(m) != set(dom):
        return [f"{name}: not a total function on its domain"]
    if any(y not in set(cod) for y in m.values()):
        return [f"{name}: value outside its codomain"]
    return []


def validate_simulation_witness(a: ProtoAlgorithm, b: ProtoAlgorithm, w: SimulationWitness) -> list[str]:
    """Problems with ``w`` as a simulation of ``a`` by ``b`` (checked verbatim)."""
    if w.mode not in MODES:
        return [f"unknown mode {w.mode!r}"]
    p = []
    sa, sb = set(enumerate_states(a)), set(enumerate_states(b))
    pairs = set(w.pairs)
    for s, t in pairs:
        if s not in sa or t not in sb:
            p.append(f"pair {(s, t)!r} is not a pair of states")
    if p:
        return p
    ia, ib = a.interpretation, b.interpretation
    for x in ia.input_domain:
        if not any(s == State(x, None, None) and state_kind(t) == INITIAL for s, t in pairs):
            p.append(f"initial state on {x!r} is not related to an initial state")
    for y in ib.output_domain:
        if not any(t == State(None, None, y) and state_kind(s) == FINAL for s, t in pairs):
            p.append(f"final state with {y!r} is not related to a final state")
    step_a, step_b = transition_map(a, w.mode), transition_map(b, w.mode)
    for s, t in pairs:
        for s2 in step_a[s]:
            if not any((s2, t2) in pairs for t2 in step_b[t]):
                p.append(f"step {s!r} -> {s2!r} not matched from {t!r}")
        if state_kind(s) != state_kind(t):
            p.append(f"pair {(s, t)!r} relates states of different kinds")
    if a.interactive:
        p += _function_problems("phi_in", w.phi_in, ia.input_domain, ib.input_domain)
        p += _function_problems("phi_out", w.phi_out, ib.output_domain, ia.output_domain)
        if not p:
            for s, t in pairs:
                if (s.din is not None or t.din is not None) and t.din != w.phi_in.get(s.din):
                    p.append(f"pair {(s, t)!r} breaks phi_in")
                if (s.dout is not None or t.dout is not None) and s.dout != w.phi_out.get(t.dout):
                    p.append(f"pair {(s, t)!r} breaks phi_out")
    else:
        # optional induced translations must agree with the initial/final pairs
        for x, x2 in (w.phi_in or {}).items():
            if (State(x, None, None), State(x2, None, None)) not in pairs:
                p.append(f"phi_in({x!r}) = {x2!r} is not an initial pair")
        for y2, y in (w.phi_out or {}).items():
            if (State(None, None, y), State(None, None, y2)) not in pairs:
                p.append(f"phi_out({y2!r}) = {y!r} is not a final pair")
    return p


def validate_equivalence_witness(a: ProtoAlgorithm, b: ProtoAlgorithm, w: EquivalenceWitness) -> list[str]:
    p = [f"forward: {x}" for x in validate_simulation_witness(a, b, w.forward)]
    p += [f"backward: {x}" for x in validate_simulation_witness(b, a, w.backward)]
    if w.forward.mode != w.backward.mode:
        p.append("forward and backward modes differ")
    if set(w.backward.pairs) != {(t, s) for s, t in w.forward.pairs}:
        p.append("backward relation is not the inverse of the forward relation")
    return p


# -- greatest fixed points ----------------------------------------------------

def _compatible_pairs(a, b) -> set:
    by_kind = defaultdict(list)
    for t in enumerate_states(b):
        by_kind[state_kind(t)].append(t)
    return {(s, t) for s in enumerate_states(a) for t in by_kind[state_kind(s)]}


def _predecessors(step) -> dict:
    pred = defaultdict(list)
    for s, succ in step.items():
        for t in succ:
            pred[t].append(s)
    return pred


class _Refiner:
    """Deletes pairs violating transfer until a fixed point is reached."""

    def __init__(self, a, b, mode, two_sided):
        self.step_a = transition_map(a, mode)
        self.step_b = transition_map(b, mode)
        self.pred_a = _predecessors(self.step_a)
        self.pred_b = _predecessors(self.step_b)
        self.two_sided = two_sided

    def _ok(self, rel, s, t) -> bool:
        sa, sb = self.step_a[s], self.step_b[t]
        for s2 in sa:
            if not any((s2, t2) in rel for t2 in sb):
                return False
        if self.two_sided:
            for t2 in sb:
                if not any((s2, t2) in rel for s2 in sa):
                    return False
        return True

    def __call__(self, pairs) -> set:
        rel = set(pairs)
        work = list(rel)
        while work:
            pair = work.pop()
            if pair not in rel or self._ok(rel, *pair):
                continue
            rel.discard(pair)
            for s in self.pred_a[pair[0]]:
                for t in self.pred_b[pair[1]]:
                    if (s, t) in rel:
                        work.append((s, t))
        return rel


def _initial_partners(a, b, rel) -> dict:
    """Input value of ``a`` -> input values of ``b`` related on initial states."""
    out = {x: [] for x in a.interpretation.input_domain}
    for s, t in rel:
        if state_kind(s) == INITIAL:
            out[s.din].append(t.din)
    order = b.interpretation.input_index
    return {x: sorted(v, key=order.__getitem__) for x, v in out.items()}


def _final_partners(a, b, rel) -> dict:
    """Output value of ``b`` -> output values of ``a`` related on final states."""
    out = {y: [] for y in b.interpretation.output_domain}
    for s, t in rel:
        if state_kind(t) == FINAL:
            out[t.dout].append(s.dout)
    order = a.interpretation.output_index
    return {y: sorted(v, key=order.__getitem__) for y, v in out.items()}


def _covers_initial(a, b, rel) -> bool:
    return all(_initial_partners(a, b, rel).values())


def _covers_final(a, b, rel) -> bool:
    return all(_final_partners(a, b, rel).values())


def _induced(a, b, rel):
    """Translations read off the initial and final pairs, when functional."""
    ins, outs = _initial_partners(a, b, rel), _final_partners(a, b, rel)
    if any(len(v) != 1 for v in ins.values()) or any(len(v) != 1 for v in outs.values()):
        return None, None
    return {x: v[0] for x, v in ins.items()}, {y: v[0] for y, v in outs.items()}


def _in_consistent(rel, phi_in, psi_in=None):
    out = set()
    for s, t in rel:
        if s.din is not None or t.din is not None:
            if t.din != phi_in.get(s.din):
                continue
            if psi_in is not None and s.din != psi_in.get(t.din):
                continue
        out.add((s, t))
    return out


def _out_consistent(rel, phi_out, psi_out=None):
    out = set()
    for s, t in rel:
        if s.dout is not None or t.dout is not None:
            if s.dout != phi_out.get(t.dout):
                continue
            if psi_out is not None and t.dout != psi_out.get(s.dout):
                continue
        out.add((s, t))
    return out


def _functions(dom, choices):
    """Total functions on ``dom`` with values from ``choices[x]``, in
    canonical (lexicographic by domain order) sequence."""
    for values in product(*(choices[x] for x in dom)):
        yield dict(zip(dom, values))


def greatest_simulation(a: ProtoAlgorithm, b: ProtoAlgorithm, mode: str = ALGORITHMIC) -> SimulationWitness | None:
    """Greatest simulation of ``a`` by ``b`` in the given mode, or None.

    For interactive models the translation maps are enumerated in canonical
    order and the first pair admitting a simulation is reported along with
    the greatest simulation for that pair.
    """
    _same_kind(a, b)
    _check_mode(mode)
    refine = _Refiner(a, b, mode, two_sided=False)
    top = refine(_compatible_pairs(a, b))
    if not a.interactive:
        if _covers_initial(a, b, top) and _covers_final(a, b, top):
            phi_in, phi_out = _induced(a, b, top)
            return SimulationWitness(frozenset(top), mode, phi_in, phi_out)
        return None
    # values outside the partner lists cannot satisfy coverage, so skipping them
    # keeps the canonical enumeration order of the surviving candidates
    ia = a.interpretation
    for phi_in in _functions(ia.input_domain, _initial_partners(a, b, top)):
        rel_in = refine(_in_consistent(top, phi_in))
        if not _covers_initial(a, b, rel_in):
            continue
        for phi_out in _functions(b.interpretation.output_domain, _final_partners(a, b, rel_in)):
            rel = refine(_out_consistent(rel_in, phi_out))
            if _covers_initial(a, b, rel) and _covers_final(a, b, rel):
                return SimulationWitness(frozenset(rel), mode, phi_in, phi_out)
    return None


def _bijections(dom, choices):
    """Bijections on ``dom`` with values from ``choices[x]``, canonical order."""
    def extend(k, used, acc):
        if k == len(dom):
            yield dict(zip(dom, acc))
            return
        for y in choices[dom[k]]:
            if y not in used:
                yield from extend(k + 1, used | {y}, acc + [y])
    yield from extend(0, frozenset(), [])


def check_equivalence(a: ProtoAlgorithm, b: ProtoAlgorithm, mode: str = ALGORITHMIC) -> EquivalenceWitness | None:
    """Greatest R with R a simulation of ``a`` by ``b`` and R⁻¹ one of ``b`` by ``a``."""
    _same_kind(a, b)
    _check_mode(mode)
    refine = _Refiner(a, b, mode, two_sided=True)
    top = refine(_compatible_pairs(a, b))

    def covered(rel):
        inv = {(t, s) for s, t in rel}
        return (_covers_initial(a, b, rel) and _covers_final(a, b, rel)
                and _covers_initial(b, a, inv) and _covers_final(b, a, inv))

    def witness(rel, fwd, bwd):
        f = SimulationWitness(frozenset(rel), mode, *fwd)
        return EquivalenceWitness(f, f.inverse(*bwd))

    if not a.interactive:
        if not covered(top):
            return None
        inv = {(t, s) for s, t in top}
        return witness(top, _induced(a, b, top), _induced(b, a, inv))

    # coverage in both directions forces every translation to be a bijection
    # whose backward counterpart is its inverse
    ia, ib = a.interpretation, b.interpretation
    if len(ia.input_domain) != len(ib.input_domain) or len(ia.output_domain) != len(ib.output_domain):
        return None
    for phi_in in _bijections(ia.input_domain, _initial_partners(a, b, top)):
        psi_in = {v: k for k, v in phi_in.items()}
        rel_in = refine(_in_consistent(top, phi_in, psi_in))
        if not (_covers_initial(a, b, rel_in)
                and _covers_initial(b, a, {(t, s) for s, t in rel_in})):
            continue
        for phi_out in _bijections(ib.output_domain, _final_partners(a, b, rel_in)):
            psi_out = {v: k for k, v in phi_out.items()}
            rel = refine(_out_consistent(rel_in, phi_out, psi_out))
            if covered(rel):
                return witness(rel, (phi_in, phi_out), (psi_in, psi_out))
    return None


def simulates(a, b, mode=ALGORITHMIC) -> bool:
    """Whether ``a`` is simulated by ``b``."""
    return greatest_simulation(a, b, mode) is not None


def equivalent(a, b, mode=ALGORITHMIC) -> bool:
    return check_equivalence(a, b, mode) is not None


# -- brute-force oracle ------------------------------------------------------

ORACLE_LIMIT = 25


def _exists_translation(a, b, rel, phi_in_needed: bool) -> bool:
    ia, ib = a.interpretation, b.interpretation
    for phi_in in _functions(ia.input_domain, {x: ib.input_domain for x in ia.input_domain}):
        if any((s.din is not None or t.din is not None) and t.din != phi_in.get(s.din)
               for s, t in rel):
            continue
        for phi_out in _functions(ib.output_domain, {y: ia.output_domain for y in ib.output_domain}):
            if all(not (s.dout is not None or t.dout is not None) or s.dout == phi_out.get(t.dout)
                   for s, t in rel):
                return True
    return False


def _is_simulation(a, b, rel, step_a, step_b) -> bool:
    for x in a.interpretation.input_domain:
        if not any(s == State(x, None, None) and state_kind(t) == INITIAL for s, t in rel):
            return False
    for y in b.interpretation.output_domain:
        if not any(t == State(None, None, y) and state_kind(s) == FINAL for s, t in rel):
            return False
    for s, t in rel:
        if state_kind(s) != state_kind(t):
            return False
        for s2 in step_a[s]:
            if not any((s2, t2) in rel for t2 in step_b[t]):
                return False
    return not a.interactive or _exists_translation(a, b, rel, True)


def _oracle_subsets(a, b):
    na, nb = len(enumerate_states(a)), len(enumerate_states(b))
    if na * nb > ORACLE_LIMIT:
        raise ValueError(f"oracle limited to {ORACLE_LIMIT} state pairs, got {na * nb}")
    cands = [(s, t) for s in enumerate_states(a) for t in enumerate_states(b)
             if state_kind(s) == state_kind(t)]
    for mask in range(1 << len(cands)):
        yield {cands[k] for k in range(len(cands)) if mask >> k & 1}


def oracle_simulation_exists(a: ProtoAlgorithm, b: ProtoAlgorithm, mode: str = ALGORITHMIC) -> bool:
    """Exhaustive search over relations; only for tiny models."""
    _same_kind(a, b)
    step_a, step_b = transition_map(a, mode), transition_map(b, mode)
    return any(_is_simulation(a, b, rel, step_a, step_b) for rel in _oracle_subsets(a, b))


def oracle_equivalence_exists(a: ProtoAlgorithm, b: ProtoAlgorithm, mode: str = ALGORITHMIC) -> bool:
    _same_kind(a, b)
    step_a, step_b = transition_map(a, mode), transition_map(b, mode)
    for rel in _oracle_subsets(a, b):
        inv = {(t, s) for s, t in rel}
        if _is_simulation(a, b, rel, step_a, step_b) and _is_simulation(b, a, inv, step_b, step_a):
            return True
    return False


# -- isomorphism ------------------------------------------------------------

def _search_order(g) -> list:
    order, seen = [], {g.root}
    queue = [g.root]
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in g.successors[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    order += [v for v in g.vertices if v not in seen]
    return order


def _vertex_bijections(a, b, booleans):
    ga, gb = a.graph, b.graph
    reserved = set(a.alphabet.reserved)
    preds_a, preds_b = set(a.alphabet.predicates), set(b.alphabet.predicates)
    ops_b = set(b.alphabet.operations)
    ea, eb = set(ga.edges), set(gb.edges)
    order = _search_order(ga)
    degree_b = {v: (gb.indegree(v), gb.outdegree(v)) for v in gb.vertices}

    def fits(v, w, vmap, fmap, pmap):
        la, lb = ga.labels[v], gb.labels[w]
        if la in reserved or lb in reserved:
            if la != lb:
                return False
        elif la in preds_a:
            if lb not in preds_b or pmap.get(la, lb) != lb:
                return False
            if la not in pmap and lb in pmap.values():
                return False
        else:
            if lb not in ops_b or fmap.get(la, lb) != lb:
                return False
            if la not in fmap and lb in fmap.values():
                return False
        if (ga.indegree(v), ga.outdegree(v)) != degree_b[w]:
            return False
        for u, x in list(vmap.items()) + [(v, w)]:
            for p, q in (((v, u), (w, x)), ((u, v), (x, w))):
                if (p in ea) != (q in eb):
                    return False
                if p in ga.edge_labels and gb.edge_labels.get(q) != booleans[ga.edge_labels[p]]:
                    return False
        return True

    def extend(k, vmap, fmap, pmap, used):
        if k == len(order):
            yield dict(vmap), dict(fmap), dict(pmap)
            return
        v = order[k]
        for w in gb.vertices:
            if w in used or not fits(v, w, vmap, fmap, pmap):
                continue
            la, lb = ga.labels[v], gb.labels[w]
            f2, p2 = dict(fmap), dict(pmap)
            if la in preds_a:
                p2[la] = lb
            elif la not in reserved:
                f2[la] = lb
            vmap[v] = w
            yield from extend(k + 1, vmap, f2, p2, used | {w})
            del vmap[v]

    yield from extend(0, {}, {}, {}, frozenset())


def _propagate_domain(a, b, fmap, beta_in):
    """Data bijection forced by init, the operations and ``in``; None on conflict."""
    ia, ib = a.interpretation, b.interpretation
    beta, used = {}, set()
    work = [(ia.functions[INIT][x], ib.functions[INIT][beta_in[x]]) for x in ia.input_domain]
    while work:
        d, d2 = work.pop()
        if d in beta:
            if beta[d] != d2:
                return None
            continue
        if d2 in used:
            return None
        beta[d] = d2
        used.add(d2)
        for f in a.alphabet.operations:
            work.append((ia.functions[f][d], ib.functions[fmap[f]][d2]))
        if a.interactive:
            for x in ia.input_domain:
                work.append((ia.in_table[d][x], ib.in_table[d2][beta_in[x]]))
    return beta


def _complete_bijection(dom, cod, partial):
    rest_dom = [x for x in dom if x not in partial]
    rest_cod = [y for y in cod if y not in set(partial.values())]
    for perm in permutations(rest_cod):
        m = dict(partial)
        m.update(zip(rest_dom, perm))
        yield m


def _data_witnesses(a, b, vmap, fmap, pmap, booleans):
    ia, ib = a.interpretation, b.interpretation
    free_f = [f for f in a.alphabet.operations if f not in fmap]
    free_f2 = [f for f in b.alphabet.operations if f not in set(fmap.values())]
    free_p = [p for p in a.alphabet.predicates if p not in pmap]
    free_p2 = [p for p in b.alphabet.predicates if p not in set(pmap.values())]
    for perm_f in permutations(free_f2):
        fm = dict(fmap, **dict(zip(free_f, perm_f)))
        fm.update({r: r for r in a.alphabet.reserved})
        for perm_in in permutations(ib.input_domain):
            beta_in = dict(zip(ia.input_domain, perm_in))
            forced = _propagate_domain(a, b, fm, beta_in)
            if forced is None:
                continue
            for beta in _complete_bijection(ia.domain, ib.domain, forced):
                beta_out = {}
                ok = True
                images = [(ia.functions[FIN][d], ib.functions[FIN][beta[d]]) for d in ia.domain]
                if a.interactive:
                    images += [(ia.functions[OUT][d], ib.functions[OUT][beta[d]]) for d in ia.domain]
                for y, y2 in images:
                    if beta_out.setdefault(y, y2) != y2:
                        ok = False
                        break
                if not ok or len(set(beta_out.values())) != len(beta_out):
                    continue
                for bo in _complete_bijection(ia.output_domain, ib.output_domain, beta_out):
                    for perm_p in permutations(free_p2):
                        pm = dict(pmap, **dict(zip(free_p, perm_p)))
                        w = IsoWitness(fm, pm, dict(vmap), beta, beta_in, bo, booleans)
                        if not validate_iso_witness(a, b, w):
                            yield w
                    break  # unconstrained output atoms: any completion serves


def check_isomorphism(a: ProtoAlgorithm, b: ProtoAlgorithm) -> IsoWitness | None:
    """A witness that ``a`` and ``b`` are isomorphic, or None."""
    _same_kind(a, b)
    sizes = lambda m: (len(m.alphabet.functions), len(m.alphabet.predicates),
                       len(m.graph.vertices), len(m.graph.edges), len(m.interpretation.domain),
                       len(m.interpretation.input_domain), len(m.interpretation.output_domain))
    if sizes(a) != sizes(b):
        return None
    if any(r not in b.alphabet.functions for r in a.alphabet.reserved):
        return None
    for booleans in ({0: 0, 1: 1}, {0: 1, 1: 0}):
        for vmap, fmap, pmap in _vertex_bijections(a, b, booleans):
            for w in _data_witnesses(a, b, vmap, fmap, pmap, booleans):
                return w
    return None


def isomorphic(a, b) -> bool:
    return check_isomorphism(a, b) is not None


# -- consequences of simulation and the equivalence hierarchy ----------------

@dataclass(frozen=True)
class ConsequenceReport:
    relation_modeling: bool
    equal_lengths: bool
    phi_in: dict
    phi_out: dict
    failures: tuple[str, ...] = ()
    joint: bool = True  # one translation pair serves both conclusions

    @property
    def ok(self) -> bool:
        return self.relation_modeling and self.equal_lengths and self.joint


def _convergent_runs(pa, max_len, max_stream_len):
    """(inputs, length, outputs) of every convergent algorithmic run from an
    initial state with at most ``max_len`` states."""
    step = transition_map(pa, ALGORITHMIC)
    layer = {(State(x, None, None), (x,), ()) for x in pa.interpretation.input_domain}
    found = set()
    for n in range(1, max_len + 1):
        nxt = set()
        for s, ins, outs in layer:
            if state_kind(s) == FINAL:
                found.add((ins, n, outs + (s.dout,)))
                continue
            for t in step[s]:
                if t.control is not None and t.din is not None:
                    if len(ins) >= max_stream_len:
                        continue
                    nxt.add((t, ins + (t.din,), outs + (t.dout,)))
                else:
                    nxt.add((t, ins, outs))
        layer = nxt
    return found


def _solve_translations(variables, constraints):
    """First assignment (canonical order) satisfying every constraint.

    ``variables`` is a list of ``(name, candidate values)``; a constraint is a
    list of alternatives, each a list of ``(name, required value)``.  A
    constraint holds when one of its alternatives holds entirely.
    """
    def possible(assign):
        for alternatives in constraints:
            if not any(all(assign.get(n, v) == v for n, v in alt) for alt in alternatives):
                return False
        return True

    def extend(k, assign):
        if k == len(variables):
            return dict(assign) if possible(assign) else None
        name, values = variables[k]
        for v in values:
            assign[name] = v
            if possible(assign):
                found = extend(k + 1, assign)
                if found is not None:
                    return found
            del assign[name]
        return None

    return extend(0, {})


def _consequence_constraints(a, b, rel_a, rel_b, runs_a, runs_b, interactive):
    """Both conclusions as constraints over ("in", x) and ("out", y) variables."""
    out_by_in = defaultdict(set)
    for x2, y2 in rel_b:
        out_by_in[x2].add(y2)
    in_vals = b.interpretation.input_domain
    lift = (lambda v: v) if interactive else (lambda v: (v,))
    constraints = []
    for x, y in rel_a:
        xs, ys = lift(x), lift(y)
        alts = []
        for xs2 in product(in_vals, repeat=len(xs)):
            req_in = [(("in", u), u2) for u, u2 in zip(xs, xs2)]
            for y2 in out_by_in[xs2 if interactive else xs2[0]]:
                ys2 = lift(y2)
                if len(ys2) == len(ys):
                    alts.append(req_in + [(("out", v2), v) for v, v2 in zip(ys, ys2)])
        constraints.append(("relation", (x, y), alts))
    by_shape = defaultdict(list)
    for ins2, n2, outs2 in runs_b:
        by_shape[(len(ins2), n2, len(outs2))].append((ins2, outs2))
    for ins, n, outs in sorted(runs_a, key=repr):
        alts = []
        for ins2, outs2 in by_shape[(len(ins), n, len(outs))]:
            alts.append([(("in", u), u2) for u, u2 in zip(ins, ins2)]
                        + [(("out", v2), v) for v, v2 in zip(outs, outs2)])
        constraints.append(("length", (ins, n, outs), alts))
    return constraints


def verify_simulation_consequences(a: ProtoAlgorithm, b: ProtoAlgorithm, w: SimulationWitness,
                                   max_stream_len: int = 3, max_len: int | None = None) -> ConsequenceReport:
    """Check that an algorithmic simulation ``w`` of ``a`` by ``b`` yields
    translations phi_in, phi_out under which (1) b's computed relation models
    a's and (2) every convergent run of ``a`` is matched by a convergent run
    of ``b`` of the same length with translated inputs and outputs.

    Interactive witnesses fix the translations.  For non-interactive ones the
    witness translations are used when present; otherwise every choice
    consistent with the initial and final pairs is tried in canonical order.
    Runs are explored up to ``max_len`` states (default: the sum of the state
    counts), interactive streams up to ``max_stream_len`` inputs.
    """
    _same_kind(a, b)
    problems = validate_simulation_witness(a, b, w)
    if w.mode != ALGORITHMIC:
        problems.append("witness is not an algorithmic simulation")
    if problems:
        raise ValueError("invalid witness: " + "; ".join(problems[:5]))
    interactive = a.interactive
    if interactive:
        rel_a = computed_relation(a, max_stream_len)
        rel_b = computed_relation(b, max_stream_len)
    else:
        rel_a, rel_b = computed_relation(a), computed_relation(b)
    if max_len is None:
        max_len = len(enumerate_states(a)) + len(enumerate_states(b))
    bound = max_stream_len if interactive else 1
    runs_a = _convergent_runs(a, max_len, bound)
    runs_b = _convergent_runs(b, max_len, bound)
    constraints = _consequence_constraints(a, b, rel_a, rel_b, runs_a, runs_b, interactive)

    if w.phi_in is not None and w.phi_out is not None:
        choices_in = {x: [w.phi_in[x]] for x in a.interpretation.input_domain}
        choices_out = {y: [w.phi_out[y]] for y in b.interpretation.output_domain}
    else:
        choices_in = _initial_partners(a, b, w.pairs)
        choices_out = _final_partners(a, b, w.pairs)
    variables = ([(("in", x), choices_in[x]) for x in a.interpretation.input_domain]
                 + [(("out", y), choices_out[y]) for y in b.interpretation.output_domain])
    everything = [alts for _, _, alts in constraints]
    found = _solve_translations(variables, everything)
    if found is not None:
        phi_in = {x: found[("in", x)] for x in a.interpretation.input_domain}
        phi_out = {y: found[("out", y)] for y in b.interpretation.output_domain}
        return ConsequenceReport(True, True, phi_in, phi_out)

    # no translation satisfies both; report each conclusion on its own
    rel_only = [alts for tag, _, alts in constraints if tag == "relation"]
    len_only = [alts for tag, _, alts in constraints if tag == "length"]
    modeling = _solve_translations(variables, rel_only) is not None
    lengths = _solve_translations(variables, len_only) is not None
    first = {name: vals[0] for name, vals in variables if vals}
    phi_in = {x: first.get(("in", x)) for x in a.interpretation.input_domain}
    phi_out = {y: first.get(("out", y)) for y in b.interpretation.output_domain}
    failures = []
    for tag, item, alts in constraints:
        if not any(all(first.get(n) == v for n, v in alt) for alt in alts):
            failures.append(f"{tag}: {item!r} not matched under the canonical translations")
    if modeling and lengths:
        failures.insert(0, "each conclusion holds alone but no single translation serves both")
    return ConsequenceReport(modeling, lengths, phi_in, phi_out, tuple(failures),
                             joint=False)


@dataclass(frozen=True)
class HierarchyReport:
    isomorphic: bool
    algorithmically_equivalent: bool
    computationally_equivalent: bool

    @property
    def implications_hold(self) -> bool:
        iso, aeqv, ceqv = (self.isomorphic, self.algorithmically_equivalent,
                           self.computationally_equivalent)
        return (not iso or aeqv) and (not aeqv or ceqv)

    def as_tuple(self):
        return (self.isomorphic, self.algorithmically_equivalent, self.computationally_equivalent)


def check_hierarchy(a: ProtoAlgorithm, b: ProtoAlgorithm) -> HierarchyReport:
    return HierarchyReport(
        isomorphic(a, b),
        equivalent(a, b, ALGORITHMIC),
        equivalent(a, b, COMPUTATIONAL),
    )
