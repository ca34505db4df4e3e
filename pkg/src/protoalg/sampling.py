"""Random valid proto-algorithms, renamed copies and small mutations.

Used by the property tests.  Every generator takes a ``random.Random`` so
that a seed reproduces its output.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (FIN, IN, INIT, INTERACTIVE, NON_INTERACTIVE, OUT, AlgorithmGraph,
                    Alphabet, Interpretation, ProtoAlgorithm, domain_closure, replace,
                    validate)


@dataclass(frozen=True)
class Shape:
    """Size parameters for ``random_model``."""

    kind: str = NON_INTERACTIVE
    operations: int = 2
    predicates: int = 1
    inner: int = 3  # vertices besides the root and the fin vertices
    fins: int = 1
    loops: int = 2  # interactive: out/in vertex pairs (at most)
    domain: int = 3
    inputs: int = 2
    outputs: int = 2
    back_edges: float = 0.2
    branching: float = 0.2
    unused: float = 0.1
    string_atoms: float = 0.3


TINY = Shape(operations=1, predicates=1, inner=1, fins=1, loops=1, domain=1,
             inputs=1, outputs=2, back_edges=0.1, branching=0.2, unused=0.0)


def _atoms(rng, n, prefix, p_string):
    if rng.random() < p_string:
        return [f"{prefix}{k}" for k in range(n)]
    return list(range(n))


def _ids(rng, n):
    if rng.random() < 0.5:
        return [f"v{k}" for k in range(n)]
    return list(range(n))


def _graph(rng, shape: Shape, ops, preds):
    """Random graph meeting every structural rule by construction."""
    kinds = []  # per inner vertex: "op", "pred", or "pair" (out followed by in)
    for _ in range(shape.inner):
        choices = ["op"] * 3
        if preds:
            choices += ["pred"] * 2
        if shape.kind == INTERACTIVE and kinds.count("pair") < shape.loops:
            choices += ["pair"] * 2
        kinds.append(rng.choice(choices))

    labels = [INIT]
    for k in kinds:
        if k == "op":
            labels.append(rng.choice(ops) if ops else None)
        elif k == "pred":
            labels.append(rng.choice(preds))
        else:
            labels.extend([OUT, IN])
    labels = [lab for lab in labels if lab is not None]
    labels += [FIN] * shape.fins
    n = len(labels)
    ids = _ids(rng, n)
    is_pred = [lab in preds for lab in labels]
    is_in = [lab == IN for lab in labels]
    is_out = [lab == OUT for lab in labels]
    is_fin = [lab == FIN for lab in labels]

    succ = {k: [] for k in range(n)}
    for k in range(n):
        if is_fin[k]:
            continue
        if is_out[k]:
            succ[k] = [k + 1]
            continue
        if is_pred[k]:
            fwd = [j for j in range(k + 1, n) if not is_in[j]]
            if len(fwd) < 2:
                return None
            succ[k] = rng.sample(fwd, 2)
            continue
        fwd = [j for j in range(k + 1, n) if not is_in[j]]
        if not fwd:
            return None
        succ[k] = [rng.choice(fwd)]
        if rng.random() < shape.branching:
            extra = rng.choice(fwd)
            if extra not in succ[k]:
                succ[k].append(extra)
        if k > 0 and rng.random() < shape.back_edges:
            back = rng.choice([j for j in range(1, k + 1) if not is_in[j]])
            if back not in succ[k]:
                succ[k].append(back)

    # every vertex but the root needs a predecessor
    for j in range(1, n):
        if is_in[j] or any(j in s for s in succ.values()):
            continue
        donors = [k for k in range(j) if not (is_fin[k] or is_pred[k] or is_out[k])]
        succ[rng.choice(donors)].append(j)

    edges, edge_labels = [], {}
    for k in range(n):
        for pos, j in enumerate(succ[k]):
            e = (ids[k], ids[j])
            edges.append(e)
            if is_pred[k]:
                edge_labels[e] = pos
    rng.shuffle(edges)
    order = list(range(n))
    root = ids[0]
    rng.shuffle(order)
    return AlgorithmGraph([ids[k] for k in order], edges,
                          {ids[k]: labels[k] for k in range(n)}, root, edge_labels)


def random_model(rng: random.Random, shape: Shape = Shape(), attempts: int = 50) -> ProtoAlgorithm:
    """A random model that passes validation."""
    for _ in range(attempts):
        pa = _attempt(rng, shape)
        if pa is not None and validate(pa).valid:
            return pa
    raise RuntimeError("could not generate a valid model with this shape")


def _attempt(rng, shape: Shape):
    kind = shape.kind
    ops = [f"f{k}" for k in range(rng.randint(0, shape.operations))]
    preds = [f"p{k}" for k in range(rng.randint(0, shape.predicates))]
    graph = _graph(rng, shape, ops, preds)
    if graph is None:
        return None
    used = set(graph.labels.values())
    ops = [f for f in ops if f in used or rng.random() < shape.unused]
    preds = [p for p in preds if p in used or rng.random() < shape.unused]
    reserved = [INIT, FIN] + ([IN, OUT] if kind == INTERACTIVE else [])
    functions = reserved + ops
    rng.shuffle(functions)

    D = _atoms(rng, rng.randint(1, shape.domain), "d", shape.string_atoms)
    Din = _atoms(rng, rng.randint(1, shape.inputs), "i", shape.string_atoms)
    Dout = _atoms(rng, rng.randint(1, shape.outputs), "o", shape.string_atoms)
    tables = {INIT: {x: rng.choice(D) for x in Din}, FIN: {d: rng.choice(Dout) for d in D}}
    for f in ops:
        tables[f] = {d: rng.choice(D) for d in D}
    if kind == INTERACTIVE:
        tables[OUT] = {d: rng.choice(Dout) for d in D}
    in_table = {d: {x: rng.choice(D) for x in Din} for d in D} if kind == INTERACTIVE else None
    ptables = {p: {d: rng.randint(0, 1) for d in D} for p in preds}
    alphabet = Alphabet(functions, preds, kind)
    interp = Interpretation(D, Din, Dout, tables, ptables, in_table)
    return ProtoAlgorithm(alphabet, graph, _restrict_to_closure(interp, alphabet))


def _restrict_to_closure(i: Interpretation, alphabet: Alphabet) -> Interpretation:
    keep = set(domain_closure(i, alphabet))
    D = [d for d in i.domain if d in keep]
    tables = {}
    for f, t in i.functions.items():
        tables[f] = t if f == INIT else {d: y for d, y in t.items() if d in keep}
    ptables = {p: {d: b for d, b in t.items() if d in keep} for p, t in i.predicates.items()}
    in_table = None if i.in_table is None else {d: row for d, row in i.in_table.items() if d in keep}
    return Interpretation(D, i.input_domain, i.output_domain, tables, ptables, in_table)


# -- renaming -----------------------------------------------------------------

def _fresh(atoms, rng, tag):
    out = list(atoms)
    rng.shuffle(out)
    if rng.random() < 0.5:
        return dict(zip(atoms, out))
    return {a: f"{tag}{k}" for a, k in zip(atoms, rng.sample(range(len(atoms)), len(atoms)))}


def renamed_copy(pa: ProtoAlgorithm, rng: random.Random, flip_booleans=None):
    """An isomorphic copy of ``pa`` and the renaming that produces it.

    Vertex ids, atoms and non-reserved symbols are renamed, declaration
    orders shuffled and, optionally, the two edge labels swapped (with the
    predicate tables negated to match).
    """
    g, i, alpha = pa.graph, pa.interpretation, pa.alphabet
    if flip_booleans is None:
        flip_booleans = rng.random() < 0.5
    bb = {0: 1, 1: 0} if flip_booleans else {0: 0, 1: 1}
    bv = _fresh(g.vertices, rng, "u")
    bd = _fresh(i.domain, rng, "e")
    bi = _fresh(i.input_domain, rng, "j")
    bo = _fresh(i.output_domain, rng, "q")
    ops = list(alpha.operations)
    bf = dict(zip(ops, [f"g{k}" for k in rng.sample(range(len(ops)), len(ops))]))
    bf.update({r: r for r in alpha.reserved})
    bp = dict(zip(alpha.predicates,
                  [f"t{k}" for k in rng.sample(range(len(alpha.predicates)), len(alpha.predicates))]))

    def lab(x):
        return bf.get(x, bp.get(x, x))

    vertices = [bv[v] for v in g.vertices]
    rng.shuffle(vertices)
    edges = [(bv[a], bv[b]) for a, b in g.edges]
    rng.shuffle(edges)
    graph = AlgorithmGraph(vertices, edges, {bv[v]: lab(l) for v, l in g.labels.items()},
                           bv[g.root], {(bv[a], bv[b]): bb[x] for (a, b), x in g.edge_labels.items()})
    tables = {INIT: {bi[x]: bd[d] for x, d in i.functions[INIT].items()},
              FIN: {bd[d]: bo[y] for d, y in i.functions[FIN].items()}}
    if OUT in i.functions:
        tables[OUT] = {bd[d]: bo[y] for d, y in i.functions[OUT].items()}
    for f in alpha.operations:
        tables[bf[f]] = {bd[d]: bd[e] for d, e in i.functions[f].items()}
    ptables = {bp[p]: {bd[d]: bb[b] for d, b in t.items()} for p, t in i.predicates.items()}
    in_table = None
    if i.in_table is not None:
        in_table = {bd[d]: {bi[x]: bd[e] for x, e in row.items()} for d, row in i.in_table.items()}
    shuffled = lambda xs: rng.sample(xs, len(xs))
    functions = shuffled([lab(f) for f in alpha.functions])
    interp = Interpretation(shuffled([bd[d] for d in i.domain]),
                            shuffled([bi[x] for x in i.input_domain]),
                            shuffled([bo[y] for y in i.output_domain]),
                            tables, ptables, in_table)
    copy = ProtoAlgorithm(Alphabet(functions, [bp[p] for p in alpha.predicates], alpha.kind),
                          graph, interp)
    renaming = {"functions": bf, "predicates": bp, "vertices": bv, "domain": bd,
                "input_domain": bi, "output_domain": bo, "booleans": bb}
    return copy, renaming


# -- mutations ----------------------------------------------------------------

def _mutate_table(pa, rng):
    i = pa.interpretation
    names = [f for f in i.functions if f != INIT] + list(i.predicates)
    if i.in_table is not None:
        names.append(IN)
    name = rng.choice(names)
    tables = {f: dict(t) for f, t in i.functions.items()}
    ptables = {p: dict(t) for p, t in i.predicates.items()}
    in_table = None if i.in_table is None else {d: dict(r) for d, r in i.in_table.items()}
    d = rng.choice(i.domain)
    if name in ptables:
        ptables[name][d] = 1 - ptables[name][d]
    elif name == IN:
        in_table[d][rng.choice(i.input_domain)] = rng.choice(i.domain)
    elif name in (FIN, OUT):
        tables[name][d] = rng.choice(i.output_domain)
    else:
        tables[name][d] = rng.choice(i.domain)
    return replace(pa, interpretation=Interpretation(i.domain, i.input_domain, i.output_domain,
                                                      tables, ptables, in_table))


def _fresh_vertex(g):
    k = 0
    while f"n{k}" in g.labels:
        k += 1
    return f"n{k}"


def _fresh_symbol(alpha, stem):
    k = 0
    names = set(alpha.functions) | set(alpha.predicates)
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


def _insert_identity(pa, rng):
    """Put a vertex labeled with a fresh identity operation on an edge
    leaving a function vertex."""
    g, i, alpha = pa.graph, pa.interpretation, pa.alphabet
    cands = [e for e in g.edges if g.labels[e[0]] in alpha.functions
             and g.labels[e[0]] != OUT]
    if not cands:
        return None
    a, b = rng.choice(cands)
    f, v = _fresh_symbol(alpha, "id"), _fresh_vertex(g)
    edges = [e for e in g.edges if e != (a, b)] + [(a, v), (v, b)]
    labels = dict(g.labels, **{v: f})
    tables = dict(i.functions, **{f: {d: d for d in i.domain}})
    return ProtoAlgorithm(
        Alphabet(alpha.functions + (f,), alpha.predicates, alpha.kind),
        AlgorithmGraph(g.vertices + (v,), edges, labels, g.root, g.edge_labels),
        Interpretation(i.domain, i.input_domain, i.output_domain, tables, i.predicates, i.in_table),
    )


def _split_fin(pa, rng):
    """Route into a fin vertex through a fresh test whose branches both end in fin."""
    g, i, alpha = pa.graph, pa.interpretation, pa.alphabet
    cands = [e for e in g.edges if g.labels[e[1]] == FIN]
    if not cands:
        return None
    a, b = rng.choice(cands)
    p, v, w = _fresh_symbol(alpha, "q"), _fresh_vertex(g), None
    w = f"{v}f"
    edges = [e for e in g.edges if e != (a, b)] + [(a, v), (v, b), (v, w)]
    edge_labels = dict(g.edge_labels)
    if (a, b) in edge_labels:
        edge_labels[(a, v)] = edge_labels.pop((a, b))
    bit = rng.randint(0, 1)
    edge_labels[(v, b)], edge_labels[(v, w)] = bit, 1 - bit
    labels = dict(g.labels, **{v: p, w: FIN})
    ptables = dict(i.predicates, **{p: {d: rng.randint(0, 1) for d in i.domain}})
    return ProtoAlgorithm(
        Alphabet(alpha.functions, alpha.predicates + (p,), alpha.kind),
        AlgorithmGraph(g.vertices + (v, w), edges, labels, g.root, edge_labels),
        Interpretation(i.domain, i.input_domain, i.output_domain, i.functions, ptables, i.in_table),
    )


def _add_unused(pa, rng):
    alpha, i = pa.alphabet, pa.interpretation
    f = _fresh_symbol(alpha, "u")
    tables = dict(i.functions, **{f: {d: rng.choice(i.domain) for d in i.domain}})
    return replace(pa, alphabet=Alphabet(alpha.functions + (f,), alpha.predicates, alpha.kind),
                   interpretation=Interpretation(i.domain, i.input_domain, i.output_domain,
                                                 tables, i.predicates, i.in_table))


def _toggle_edge(pa, rng):
    g = pa.graph
    fs = set(pa.alphabet.functions) - {FIN, OUT}
    sources = [v for v in g.vertices if g.labels[v] in fs]
    a = rng.choice(sources)
    b = rng.choice([v for v in g.vertices if v != g.root])
    if (a, b) in g.edges:
        edges = [e for e in g.edges if e != (a, b)]
    else:
        edges = list(g.edges) + [(a, b)]
    return replace(pa, graph=AlgorithmGraph(g.vertices, edges, g.labels, g.root, g.edge_labels))


MUTATIONS = {
    "table": _mutate_table,
    "identity-vertex": _insert_identity,
    "split-fin": _split_fin,
    "unused-symbol": _add_unused,
    "edge": _toggle_edge,
}


def mutate(pa: ProtoAlgorithm, rng: random.Random, attempts: int = 20):
    """A valid mutant of ``pa`` and the mutation's name, or None."""
    for _ in range(attempts):
        name = rng.choice(sorted(MUTATIONS))
        out = MUTATIONS[name](pa, rng)
        if out is not None and validate(out).valid:
            return out, name
    return None


def mutated_pair(rng: random.Random, shape: Shape = Shape()):
    """A random valid model and a related valid model: a renamed copy, a
    mutant, a renamed mutant, or an unrelated model of the same kind."""
    a = random_model(rng, shape)
    how = rng.choice(["renamed", "mutant", "renamed-mutant", "independent"])
    if how == "renamed":
        return a, renamed_copy(a, rng)[0], how
    if how == "independent":
        return a, random_model(rng, shape), how
    m = mutate(a, rng)
    if m is None:
        return a, renamed_copy(a, rng)[0], "renamed"
    b, name = m
    if how == "renamed-mutant":
        b = renamed_copy(b, rng)[0]
    return a, b, f"{how}:{name}"
