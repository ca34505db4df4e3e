"""States, step functions, runs and computed relations.

A state is a triple ``(din, control, dout)`` where ``control`` is either
``None`` (the joint bottom) or a ``(vertex, datum)`` pair; ``None`` stands
for bottom in the input and output slots as well.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .model import FIN, IN, INIT, OUT, ProtoAlgorithm

ALGORITHMIC = "algorithmic"
COMPUTATIONAL = "computational"
MODES = (ALGORITHMIC, COMPUTATIONAL)

INITIAL, INTERNAL, INTERACTION, FINAL = "initial", "internal", "interaction", "final"
_KIND_RANK = {INITIAL: 0, INTERNAL: 1, INTERACTION: 2, FINAL: 3}

COMPLETE, TRUNCATED, LASSO = "complete", "truncated", "lasso"


class State(NamedTuple):
    din: object
    control: tuple | None
    dout: object

    @property
    def vertex(self):
        return None if self.control is None else self.control[0]

    @property
    def datum(self):
        return None if self.control is None else self.control[1]

    def __repr__(self):
        fmt = lambda x: "⊥" if x is None else repr(x)
        ctl = "⊥c" if self.control is None else f"({self.control[0]!r},{self.control[1]!r})"
        return f"({fmt(self.din)},{ctl},{fmt(self.dout)})"


def initial(din) -> State:
    return State(din, None, None)


def final(dout) -> State:
    return State(None, None, dout)


def internal(v, d) -> State:
    return State(None, (v, d), None)


def interaction(din, v, d, dout) -> State:
    return State(din, (v, d), dout)


def state_kind(s: State) -> str:
    if s.control is None:
        return INITIAL if s.din is not None else FINAL
    return INTERNAL if s.din is None else INTERACTION


def is_state(pa: ProtoAlgorithm, s) -> bool:
    """Membership in the state set of ``pa`` without enumerating it."""
    if not isinstance(s, tuple) or len(s) != 3:
        return False
    din, control, dout = s
    interp = pa.interpretation
    if din is not None and din not in interp.input_index:
        return False
    if dout is not None and dout not in interp.output_index:
        return False
    if control is None:
        return (din is None) != (dout is None)
    if len(control) != 2:
        return False
    v, d = control
    if v not in pa.graph.vertex_index or d not in interp.domain_index:
        return False
    if not pa.interactive:
        return din is None and dout is None
    if (din is None) != (dout is None):
        return False
    return (din is not None) == (pa.label(v) == IN)


def state_order(pa: ProtoAlgorithm):
    """Sort key giving the canonical (kind, vertex, atom) order of states."""
    interp = pa.interpretation
    vi, di, ii, oi = (pa.graph.vertex_index, interp.domain_index,
                      interp.input_index, interp.output_index)

    def key(s: State):
        return (
            _KIND_RANK[state_kind(s)],
            -1 if s.control is None else vi[s.control[0]],
            -1 if s.control is None else di[s.control[1]],
            -1 if s.din is None else ii[s.din],
            -1 if s.dout is None else oi[s.dout],
        )

    return key


def enumerate_states(pa: ProtoAlgorithm) -> tuple[State, ...]:
    if "states" in pa._memo:
        return pa._memo["states"]
    interp = pa.interpretation
    states = [initial(x) for x in interp.input_domain]
    for v in pa.graph.vertices:
        if pa.interactive and pa.label(v) == IN:
            continue
        states.extend(internal(v, d) for d in interp.domain)
    if pa.interactive:
        for v in pa.graph.vertices:
            if pa.label(v) != IN:
                continue
            for d, x, y in product(interp.domain, interp.input_domain, interp.output_domain):
                states.append(interaction(x, v, d, y))
    states.extend(final(y) for y in interp.output_domain)
    result = tuple(states)
    pa._memo["states"] = result
    return result


def _canonical(pa: ProtoAlgorithm, states) -> tuple[State, ...]:
    return tuple(sorted(set(states), key=state_order(pa)))


def _astep_raw(pa: ProtoAlgorithm, s: State) -> list[State]:
    interp = pa.interpretation
    g = pa.graph
    kind = state_kind(s)
    if kind == FINAL:
        return [s]
    if kind == INITIAL:
        d = interp.functions[INIT][s.din]
        return [internal(w, d) for w in g.successors[g.root]]
    v, d = s.control
    lab = pa.label(v)
    if kind == INTERACTION:
        d2 = interp.in_table[d][s.din]
        return [internal(w, d2) for w in g.successors[v]]
    if lab == FIN:
        return [final(interp.functions[FIN][d])]
    if lab in pa.alphabet.predicates:
        b = interp.predicates[lab][d]
        return [internal(w, d) for w in g.successors[v] if g.edge_labels.get((v, w)) == b]
    if pa.interactive and lab == OUT:
        y = interp.functions[OUT][d]
        return [interaction(x, w, d, y) for w in g.successors[v] for x in interp.input_domain]
    if lab == INIT:
        # no rule covers internal states at the root; pass the datum along the graph
        return [internal(w, d) for w in g.successors[v]]
    d2 = interp.functions[lab][d]
    return [internal(w, d2) for w in g.successors[v]]


def _check_state(pa, s):
    if not is_state(pa, s):
        raise ValueError(f"{s!r} is not a state of this proto-algorithm")


def astep(pa: ProtoAlgorithm, s: State) -> tuple[State, ...]:
    """Algorithmic successors of ``s``, canonically ordered."""
    _check_state(pa, s)
    return _canonical(pa, _astep_raw(pa, State(*s)) or [s])


def _cstep_raw(pa: ProtoAlgorithm, s: State, seen=()) -> list[State]:
    if state_kind(s) == INTERNAL and pa.label(s.vertex) in pa.alphabet.predicates:
        if s in seen:
            raise ValueError("predicate-only cycle; computational step undefined")
        out = []
        for t in _astep_raw(pa, s):
            out.extend(_cstep_raw(pa, t, seen + (s,)))
        return out
    return _astep_raw(pa, s)


def cstep(pa: ProtoAlgorithm, s: State) -> tuple[State, ...]:
    """Computational successors: predicate inspections are collapsed."""
    _check_state(pa, s)
    return _canonical(pa, _cstep_raw(pa, State(*s)) or [s])


def step_function(mode: str):
    if mode == ALGORITHMIC:
        return astep
    if mode == COMPUTATIONAL:
        return cstep
    raise ValueError(f"unknown mode {mode!r}")


def transition_map(pa: ProtoAlgorithm, mode: str = ALGORITHMIC) -> dict[State, tuple[State, ...]]:
    """Successor sets for every state, memoized on the model."""
    key = ("steps", mode)
    if key not in pa._memo:
        step = step_function(mode)
        pa._memo[key] = {s: step(pa, s) for s in enumerate_states(pa)}
    return pa._memo[key]


@dataclass(frozen=True)
class Run:
    """Finite presentation of a semi-run.

    ``complete`` runs end in a final state.  ``lasso`` runs end by re-entering
    a state already on the run (the repeated state is the last element), so
    they stand for an infinite run.  ``truncated`` runs were cut by the
    exploration bound or because the supplied input stream ran out.
    """

    states: tuple[State, ...]
    status: str

    def __len__(self):
        return len(self.states)

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    @property
    def loop(self) -> tuple[State, ...]:
        if self.status != LASSO:
            return ()
        start = self.states.index(self.states[-1])
        return self.states[start:-1]

    @property
    def divergent(self) -> bool:
        """A lasso whose repeated part stays within internal states."""
        return self.status == LASSO and all(state_kind(s) == INTERNAL for s in self.loop)


def semi_runs(pa: ProtoAlgorithm, s: State, mode: str = ALGORITHMIC, depth: int = 100) -> tuple[Run, ...]:
    """All runs from ``s``; each branch is cut at a final state, at its first
    repeated state, or after ``depth`` steps."""
    if depth < 1:
        raise ValueError("depth must be positive")
    _check_state(pa, s)
    step = transition_map(pa, mode)
    runs = []
    stack = [((State(*s),), False)]
    while stack:
        path, looped = stack.pop()
        cur = path[-1]
        if looped:
            runs.append(Run(path, LASSO))
        elif state_kind(cur) == FINAL:
            runs.append(Run(path, COMPLETE))
        elif len(path) > depth:
            runs.append(Run(path, TRUNCATED))
        else:
            # reversed so that runs come out in canonical depth-first order
            for t in reversed(step[cur]):
                stack.append((path + (t,), t in path))
    return tuple(runs)


def _require_complete(run: Run):
    if not run.complete:
        raise ValueError("output extraction needs a complete run")


def extract_output(run: Run):
    _require_complete(run)
    for s in run.states:
        if s.dout is not None:
            return s.dout
    raise ValueError("run has no output")  # unreachable for complete runs


def extract_inputs(run: Run) -> tuple:
    _require_complete(run)
    return tuple(s.din for s in run.states if s.din is not None)


def extract_outputs(run: Run) -> tuple:
    _require_complete(run)
    return tuple(s.dout for s in run.states if s.dout is not None)


@dataclass(frozen=True)
class RunSet:
    """Runs on an input.  ``runs`` are the runs of the run set proper
    (for interactive models: runs that consume exactly the given stream);
    ``residue`` holds the other explored runs, which consumed only a strict
    prefix of the stream or were cut before reaching a verdict."""

    runs: tuple[Run, ...]
    residue: tuple[Run, ...] = ()

    @property
    def complete(self) -> tuple[Run, ...]:
        return tuple(r for r in self.runs if r.complete)


def _resolve_input(pa, x):
    if x not in pa.interpretation.input_index:
        raise ValueError(f"input {x!r} is not in the input domain")
    return x


def run_set(pa: ProtoAlgorithm, inputs, mode: str = ALGORITHMIC, depth: int = 100) -> RunSet:
    """Runs of ``pa`` on an input value (non-interactive) or on a finite
    non-empty input stream (interactive)."""
    if not pa.interactive:
        if isinstance(inputs, (list, tuple)):
            if len(inputs) != 1:
                raise ValueError("a non-interactive proto-algorithm takes one input value")
            inputs = inputs[0]
        return RunSet(semi_runs(pa, initial(_resolve_input(pa, inputs)), mode, depth))

    stream = tuple(inputs) if isinstance(inputs, (list, tuple)) else (inputs,)
    if not stream:
        raise ValueError("input stream must be non-empty")
    for x in stream:
        _resolve_input(pa, x)
    step = transition_map(pa, mode)
    n = len(stream)
    runs, residue = [], []
    # search over (state, inputs consumed); lasso cut on a repeated pair
    stack = [((initial(stream[0]),), (1,))]
    while stack:
        path, pos = stack.pop()
        cur, k = path[-1], pos[-1]
        if state_kind(cur) == FINAL:
            (runs if k == n else residue).append(Run(path, COMPLETE))
            continue
        if len(path) > depth:
            residue.append(Run(path, TRUNCATED))
            continue
        nexts = []
        starved = False
        for t in step[cur]:
            if state_kind(t) == INTERACTION:
                if k >= n:
                    starved = True
                    continue
                if t.din != stream[k]:
                    continue
                nexts.append((t, k + 1))
            else:
                nexts.append((t, k))
        if starved and not nexts:
            residue.append(Run(path, TRUNCATED))
        seen = set(zip(path, pos))
        for t, k2 in reversed(nexts):
            if (t, k2) in seen:
                run = Run(path + (t,), LASSO)
                (runs if k2 == n else residue).append(run)
            else:
                stack.append((path + (t,), pos + (k2,)))
    return RunSet(tuple(runs), tuple(residue))


def computed_relation(pa: ProtoAlgorithm, max_stream_len: int | None = None) -> tuple:
    """Input/output pairs realised by convergent algorithmic runs.

    Non-interactive models give ``(din, dout)`` pairs and need no bound.
    Interactive models give ``(input stream, output stream)`` pairs for all
    input streams of length at most ``max_stream_len``.
    """
    step = transition_map(pa, ALGORITHMIC)
    interp = pa.interpretation
    pairs = set()
    if not pa.interactive:
        for x in interp.input_domain:
            for s in _reachable(step, [initial(x)]):
                if state_kind(s) == FINAL:
                    pairs.add((x, s.dout))
        oi, ii = interp.output_index, interp.input_index
        return tuple(sorted(pairs, key=lambda p: (ii[p[0]], oi[p[1]])))

    if max_stream_len is None or max_stream_len < 1:
        raise ValueError("interactive relations need a positive max_stream_len")
    start = [(initial(x), (x,), ()) for x in interp.input_domain]
    seen = set(start)
    queue = deque(start)
    while queue:
        s, ins, outs = queue.popleft()
        if state_kind(s) == FINAL:
            pairs.add((ins, outs + (s.dout,)))
            continue
        for t in step[s]:
            if state_kind(t) == INTERACTION:
                if len(ins) >= max_stream_len:
                    continue
                item = (t, ins + (t.din,), outs + (t.dout,))
            else:
                item = (t, ins, outs)
            if item not in seen:
                seen.add(item)
                queue.append(item)
    ii, oi = interp.input_index, interp.output_index
    return tuple(sorted(pairs, key=lambda p: (len(p[0]), [ii[x] for x in p[0]],
                                              len(p[1]), [oi[y] for y in p[1]])))


def _reachable(step, sources) -> set:
    seen = set(sources)
    queue = deque(sources)
    while queue:
        s = queue.popleft()
        for t in step[s]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def divergence_reachable(pa: ProtoAlgorithm, s: State) -> bool:
    """Whether some run from ``s`` can stay among internal states forever."""
    _check_state(pa, s)
    step = transition_map(pa, ALGORITHMIC)
    reach = _reachable(step, [State(*s)])
    inner = {t for t in reach if state_kind(t) == INTERNAL}
    # Kahn's algorithm on the internal subgraph: leftovers lie on or feed a cycle
    indeg = {t: 0 for t in inner}
    for t in inner:
        for u in step[t]:
            if u in inner:
                indeg[u] += 1
    queue = deque(t for t, k in indeg.items() if k == 0)
    removed = 0
    while queue:
        t = queue.popleft()
        removed += 1
        for u in step[t]:
            if u in inner:
                indeg[u] -= 1
                if indeg[u] == 0:
                    queue.append(u)
    return removed < len(inner)


def input_streams(pa: ProtoAlgorithm, max_len: int):
    """Every input stream of length 1..max_len, in canonical order."""
    dom = pa.interpretation.input_domain
    for n in range(1, max_len + 1):
        yield from product(dom, repeat=n)
