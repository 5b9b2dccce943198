"""Deterministic automata over digit alphabets (or digit pairs).

States are dense integers ``0..n-1``; transitions are one dict per state
mapping a symbol to a state, so a missing key is an undefined transition.
Names are kept as metadata for DOT export only.

Automata are treated as immutable once built.  Every function here
returns a new object.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import AlphabetMismatch, InvalidInput, NotParry, UnverifiedLanguage

SCHEMA_VERSION = 1


class Dfa:
    def __init__(self, alphabet: Sequence, delta: Sequence[dict], initial: int = 0,
                 finals: Iterable[int] = (), names: Sequence[str] | None = None):
        self.alphabet = tuple(alphabet)
        self.delta = tuple(dict(d) for d in delta)
        n = len(self.delta)
        if not 0 <= initial < n:
            raise InvalidInput("initial state out of range")
        self.initial = initial
        self.finals = frozenset(finals)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        symbols = set(self.alphabet)
        for q, row in enumerate(self.delta):
            for a, r in row.items():
                if a not in symbols:
                    raise InvalidInput(f"state {q}: symbol {a!r} not in alphabet")
                if not 0 <= r < n:
                    raise InvalidInput(f"state {q}: target {r} out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def is_complete(self) -> bool:
        return all(len(row) == len(self.alphabet) for row in self.delta)

    def step(self, q, a):
        if q is None:
            return None
        return self.delta[q].get(a)

    def run(self, word, start: int | None = None):
        q = self.initial if start is None else start
        for a in word:
            q = self.delta[q].get(a)
            if q is None:
                return None
        return q

    def accepts(self, word) -> bool:
        q = self.run(word)
        return q is not None and q in self.finals

    def edges(self):
        for q, row in enumerate(self.delta):
            for a in self.alphabet:
                if a in row:
                    yield q, a, row[a]

    def __repr__(self):
        kind = "complete" if self.is_complete() else "partial"
        return f"<{type(self).__name__} {self.n_states} states, {kind}, alphabet {self.alphabet}>"


class Dfao(Dfa):
    """A Dfa with an output for every state.

    A sequence machine should be complete and loop on 0 at its initial
    state; products with partial numeration automata are allowed to be
    partial (see :func:`product_dfao`).
    """

    def __init__(self, alphabet, delta, initial=0, outputs=(), names=None, finals=None):
        if finals is None:
            finals = range(len(delta))
        super().__init__(alphabet, delta, initial, finals, names)
        self.outputs = tuple(outputs)
        if len(self.outputs) != self.n_states:
            raise InvalidInput("one output per state is required")

    def output(self, word):
        q = self.run(word)
        if q is None:
            raise InvalidInput(f"undefined transition on {tuple(word)!r}")
        return self.outputs[q]

    @property
    def zero(self):
        return _zero_of(self.alphabet)

    def has_zero_loop(self) -> bool:
        return self.delta[self.initial].get(self.zero) == self.initial


def _zero_of(alphabet):
    first = alphabet[0]
    if isinstance(first, tuple):
        return tuple(0 for _ in first)
    return 0


def _same_alphabet(a: Dfa, b: Dfa):
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch(f"{a.alphabet} vs {b.alphabet}")


# ---------------------------------------------------------------------------
# basic transformations


def reachable(a: Dfa) -> Dfa:
    """Restrict to states reachable from the initial one, renumbered in BFS order."""
    order = [a.initial]
    index = {a.initial: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for s in a.alphabet:
            r = a.delta[q].get(s)
            if r is not None and r not in index:
                index[r] = len(order)
                order.append(r)
    delta = [{s: index[r] for s, r in a.delta[q].items()} for q in order]
    names = [a.names[q] for q in order]
    finals = [index[q] for q in order if q in a.finals]
    if isinstance(a, Dfao):
        return Dfao(a.alphabet, delta, 0, [a.outputs[q] for q in order], names, finals)
    return Dfa(a.alphabet, delta, 0, finals, names)


def complete(a: Dfa, sink_output=None) -> Dfa:
    """Add a non-final sink for every undefined transition (no-op on complete input)."""
    if a.is_complete():
        return a
    sink = a.n_states
    delta = [{s: row.get(s, sink) for s in a.alphabet} for row in a.delta]
    delta.append({s: sink for s in a.alphabet})
    names = list(a.names) + ["sink"]
    if isinstance(a, Dfao):
        finals = set(a.finals)
        return Dfao(a.alphabet, delta, a.initial, list(a.outputs) + [sink_output], names, finals)
    return Dfa(a.alphabet, delta, a.initial, a.finals, names)


def _refine(n, alphabet, delta, initial_class):
    cls = list(initial_class)
    while True:
        keys = {}
        new = []
        for q in range(n):
            key = (cls[q],) + tuple(cls[delta[q][s]] for s in alphabet)
            new.append(keys.setdefault(key, len(keys)))
        if len(keys) == len(set(cls)):
            return new
        cls = new


def coaccessible(a: Dfa) -> set:
    """States from which some final state can be reached."""
    back = [set() for _ in range(a.n_states)]
    for q, _, r in a.edges():
        back[r].add(q)
    seen = set(a.finals)
    todo = list(seen)
    while todo:
        r = todo.pop()
        for q in back[r]:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def trim(a: Dfa) -> Dfa:
    """Drop states that cannot reach a final state (keeps the initial state)."""
    live = coaccessible(a) | {a.initial}
    keep = [q for q in range(a.n_states) if q in live]
    index = {q: i for i, q in enumerate(keep)}
    delta = [{s: index[r] for s, r in a.delta[q].items() if r in index} for q in keep]
    return reachable(Dfa(a.alphabet, delta, index[a.initial],
                         [index[q] for q in keep if q in a.finals], [a.names[q] for q in keep]))


def minimize(a: Dfa) -> Dfa:
    """Minimal automaton for the same language (or the same output function).

    A partial Dfa comes back trimmed (no sink); a complete one stays
    complete.  Dfao minimization requires a complete machine.
    """
    was_partial = not a.is_complete()
    if isinstance(a, Dfao):
        if was_partial:
            raise InvalidInput("minimizing a partial Dfao is not supported")
        c = reachable(a)
        outs = {}
        start = [outs.setdefault(o, len(outs)) for o in c.outputs]
    else:
        c = complete(reachable(a))
        start = [1 if q in c.finals else 0 for q in range(c.n_states)]
    cls = _refine(c.n_states, c.alphabet, c.delta, start)
    k = max(cls) + 1
    delta = [None] * k
    outputs = [None] * k
    finals = set()
    for q in range(c.n_states):
        j = cls[q]
        if delta[j] is None:
            delta[j] = {s: cls[c.delta[q][s]] for s in c.alphabet}
            if isinstance(c, Dfao):
                outputs[j] = c.outputs[q]
        if q in c.finals:
            finals.add(j)
    if isinstance(c, Dfao):
        return reachable(Dfao(c.alphabet, delta, cls[c.initial], outputs, None, finals))
    m = reachable(Dfa(c.alphabet, delta, cls[c.initial], finals))
    return trim(m) if was_partial else m


# ---------------------------------------------------------------------------
# numeration automata


def canonical_parry_automaton(qg) -> Dfa:
    """The automaton of d*_beta(1) = t_1..t_i (t_{i+1}..t_{i+p})^omega.

    State q_{j-1} sends 0..t_j - 1 to q_0 and t_j to q_j, except the last
    state whose t_{i+p} edge returns to q_i.  All states are final.
    """
    if not getattr(qg, "is_periodic", False):
        raise NotParry("quasi-greedy expansion has no known period")
    t = tuple(qg.preperiod_word) + tuple(qg.period_word)
    i = len(qg.preperiod_word)
    n = len(t)
    alphabet = tuple(range(max(t) + 1))
    delta = []
    for j in range(1, n + 1):
        row = {d: 0 for d in range(t[j - 1])}
        row[t[j - 1]] = j if j < n else i
        delta.append(row)
    return Dfa(alphabet, delta, 0, range(n), [f"q{j}" for j in range(n)])


def quadratic_automaton() -> Dfa:
    """Accepts {0,1,2}*({eps} u 3 0*): state a loops on 0,1,2 and moves to b on 3; b loops on 0."""
    return Dfa((0, 1, 2, 3), [{0: 0, 1: 0, 2: 0, 3: 1}, {0: 1}], 0, (0, 1), ["a", "b"])


def full_language(alphabet) -> Dfa:
    return Dfa(alphabet, [{s: 0 for s in alphabet}], 0, (0,))


def empty_language(alphabet) -> Dfa:
    return Dfa(alphabet, [{}], 0, ())


def word_set_automaton(alphabet, pattern: str) -> Dfa:
    """Tiny helper for the sets used in experiments: ``"j0*"`` for a digit j."""
    if len(pattern) >= 3 and pattern.endswith("0*") and pattern[:-2].isdigit():
        lead = tuple(int(c) for c in pattern[:-2])
        n = len(lead)
        delta = [{lead[k]: k + 1} for k in range(n)] + [{0: n}]
        return Dfa(alphabet, delta, 0, (n,))
    raise InvalidInput(f"unsupported pattern {pattern!r}")


def without_leading_zeros(a: Dfa) -> Dfa:
    """L restricted to the empty word and words not starting with 0."""
    zero = _zero_of(a.alphabet)
    n = a.n_states
    delta = [dict(row) for row in a.delta]
    first = {s: r for s, r in a.delta[a.initial].items() if s != zero}
    delta.append(first)
    finals = set(a.finals) | ({n} if a.initial in a.finals else set())
    return trim(Dfa(a.alphabet, delta, n, finals, list(a.names) + ["start"]))


def with_leading_zeros(a: Dfa) -> Dfa:
    """Words w such that w with its leading zeros removed is some word of L with its leading zeros removed.

    For a language of representations without leading zeros this is 0*L.
    The result is invariant under adding or removing leading zeros, so
    its minimal automaton loops on 0 at the initial state.
    """
    zero = _zero_of(a.alphabet)
    Z = {a.initial}
    todo = [a.initial]
    while todo:
        q = a.delta[todo.pop()].get(zero)
        if q is not None and q not in Z:
            Z.add(q)
            todo.append(q)
    start = (True, frozenset(Z))
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        phase, S = order[i]
        i += 1
        row = {}
        for s in a.alphabet:
            still = phase and s == zero
            T = S if still else {a.delta[q][s] for q in S if s in a.delta[q]}
            if not T:
                continue
            key = (still, frozenset(T))
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row[s] = index[key]
        delta.append(row)
    finals = [k for k, (_, S) in enumerate(order) if S & a.finals]
    return minimize(Dfa(a.alphabet, delta, 0, finals))


def with_zero_loop(m: Dfao) -> Dfao:
    """Give the initial state a 0-loop, assuming outputs ignore leading zeros."""
    if m.has_zero_loop():
        return m
    n = m.n_states
    delta = [dict(row) for row in m.delta]
    fresh = dict(m.delta[m.initial])
    fresh[m.zero] = n
    delta.append(fresh)
    outputs = list(m.outputs) + [m.outputs[m.initial]]
    names = list(m.names) + ["init"]
    out = Dfao(m.alphabet, delta, n, outputs, names, set(m.finals) | ({n} if m.initial in m.finals else set()))
    return reachable(out)


# ---------------------------------------------------------------------------
# products, quotients, equivalence


def product_dfao(numeration: Dfa, machine: Dfao) -> Dfao:
    """Reachable product; the output of (p, q) is the output of q.

    Partial wherever the numeration automaton is.
    """
    _same_alphabet(numeration, machine)
    if not machine.is_complete():
        raise InvalidInput("machine must be complete")
    start = (numeration.initial, machine.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        row = {}
        for s in numeration.alphabet:
            p2 = numeration.delta[p].get(s)
            if p2 is None:
                continue
            key = (p2, machine.delta[q][s])
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row[s] = index[key]
        delta.append(row)
    outputs = [machine.outputs[q] for _, q in order]
    names = [f"({numeration.names[p]},{machine.names[q]})" for p, q in order]
    finals = [k for k, (p, _) in enumerate(order) if p in numeration.finals]
    return Dfao(numeration.alphabet, delta, 0, outputs, names, finals)


class RightQuotients:
    """Classes of the quotients L s^-1 = {w : ws in L} over all suffixes s.

    Computed on the complete minimal automaton of L: L s^-1 is the set of
    words leading into X_s = {q : delta(q, s) final}, and X_{as} is the
    preimage of X_s under the letter a.  Class ids are dense, assigned in
    breadth-first order from X_eps = F.
    """

    def __init__(self, language: Dfa):
        m = minimize(complete(language))
        self.automaton = m
        self.alphabet = m.alphabet
        start = frozenset(m.finals)
        self.sets = [start]
        index = {start: 0}
        self.prepend = []
        i = 0
        while i < len(self.sets):
            X = self.sets[i]
            i += 1
            row = {}
            for a in self.alphabet:
                Y = frozenset(q for q in range(m.n_states) if m.delta[q][a] in X)
                if Y not in index:
                    index[Y] = len(self.sets)
                    self.sets.append(Y)
                row[a] = index[Y]
            self.prepend.append(row)

    def __len__(self):
        return len(self.sets)

    def classify(self, suffix) -> int:
        c = 0
        for a in reversed(tuple(suffix)):
            c = self.prepend[c][a]
        return c

    def is_empty(self, cls: int) -> bool:
        """No word at all lies in this quotient (states of a minimal automaton are all reachable)."""
        return not self.sets[cls]

    def quotient(self, cls: int) -> Dfa:
        m = self.automaton
        return Dfa(m.alphabet, m.delta, m.initial, self.sets[cls], m.names)


def right_quotients(language: Dfa) -> RightQuotients:
    return RightQuotients(language)


@dataclass(frozen=True)
class Equivalence:
    equal: bool
    counterexample: tuple | None = None

    def __bool__(self):
        return self.equal


def equivalent(a: Dfa, b: Dfa) -> Equivalence:
    """Language equality; the counterexample is genealogically least.

    Automata over different alphabets are compared over the union; a
    symbol missing from one side is simply an undefined transition there.
    """
    alphabet = tuple(sorted(set(a.alphabet) | set(b.alphabet)))
    start = (a.initial, b.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pq = queue.popleft()
        p, q = pq
        if (p is not None and p in a.finals) != (q is not None and q in b.finals):
            word = []
            node = pq
            while parent[node] is not None:
                node, s = parent[node]
                word.append(s)
            return Equivalence(False, tuple(reversed(word)))
        for s in alphabet:
            nxt = (a.step(p, s), b.step(q, s))
            if nxt == (None, None):
                continue
            if nxt not in parent:
                parent[nxt] = (pq, s)
                queue.append(nxt)
    return Equivalence(True)


def is_bertrand_regular(language: Dfa) -> Equivalence:
    """Compare L with {w : w0 in L}; a counterexample breaks the Bertrand property."""
    zero = _zero_of(language.alphabet)
    finals = [q for q in range(language.n_states) if language.delta[q].get(zero) in language.finals]
    shifted = Dfa(language.alphabet, language.delta, language.initial, finals, language.names)
    return equivalent(language, shifted)


def enumerate_genealogical(language: Dfa, count: int) -> list[tuple]:
    """The first ``count`` accepted words, shortest first, then lexicographic."""
    alphabet = tuple(sorted(language.alphabet))
    out: list[tuple] = []
    useful = coaccessible(language)
    # live[k]: states with an accepting path of length exactly k
    live = [set(language.finals)]
    level = {language.initial}
    length = 0
    while len(out) < count and level & useful:
        while len(live) <= length:
            prev = live[-1]
            live.append({q for q in range(language.n_states)
                         if any(r in prev for r in language.delta[q].values())})
        if language.initial in live[length]:
            _dfs(language, alphabet, live, language.initial, length, [], out, count)
        level = {r for q in level for r in language.delta[q].values()}
        length += 1
    return out[:count]


def _dfs(lang, alphabet, live, q, remaining, prefix, out, count):
    if len(out) >= count:
        return
    if remaining == 0:
        out.append(tuple(prefix))
        return
    for s in alphabet:
        r = lang.delta[q].get(s)
        if r is not None and r in live[remaining - 1]:
            prefix.append(s)
            _dfs(lang, alphabet, live, r, remaining - 1, prefix, out, count)
            prefix.pop()
            if len(out) >= count:
                return


def path_counts(a: Dfa, n: int) -> list[int]:
    """K_q(n): number of paths of length n starting at each state."""
    k = [1] * a.n_states
    for _ in range(n):
        k = [sum(k[r] for r in row.values()) for row in a.delta]
    return k


def is_primitive(a: Dfa) -> bool:
    """Strongly connected with period 1 (some power of the adjacency matrix is positive)."""
    n = a.n_states
    if n == 0:
        return False
    level = {0: 0}
    todo = deque([0])
    while todo:
        q = todo.popleft()
        for r in a.delta[q].values():
            if r not in level:
                level[r] = level[q] + 1
                todo.append(r)
    if len(level) < n:
        return False
    # strongly connected iff everything also reaches state 0
    back = [set() for _ in range(n)]
    for q, _, r in a.edges():
        back[r].add(q)
    seen = {0}
    stack = [0]
    while stack:
        r = stack.pop()
        for q in back[r]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    if len(seen) < n:
        return False
    g = 0
    for q, _, r in a.edges():
        g = math.gcd(g, level[q] + 1 - level[r])
    return g == 1


def reverse_dfao(m: Dfao) -> Dfao:
    """Machine reading words backwards (least significant digit first).

    After reading the reversal of w the state is the function
    q -> output(delta(q, w)); prepending a letter composes with delta(., a).
    The output is that function at the initial state.
    """
    if not m.is_complete():
        raise InvalidInput("reverse_dfao needs a complete machine")
    start = tuple(m.outputs)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        f = order[i]
        i += 1
        row = {}
        for s in m.alphabet:
            g = tuple(f[m.delta[q][s]] for q in range(m.n_states))
            if g not in index:
                index[g] = len(order)
                order.append(g)
            row[s] = index[g]
        delta.append(row)
    outputs = [f[m.initial] for f in order]
    return minimize(Dfao(m.alphabet, delta, 0, outputs))


# ---------------------------------------------------------------------------
# inferring numeration languages


def _membership(system):
    bound = system.digit_bound

    def member(w):
        return all(0 <= d < bound for d in w) and system.is_greedy(w)
    return member


def _padded_reps(system, length):
    for n in range(system.term(length)):
        r = system.rep(n)
        yield (0,) * (length - len(r)) + r


def _verify_numeration(dfa: Dfa, system, exhaustive_terms: int, count_len: int) -> bool:
    counts = [0] * dfa.n_states
    for q in dfa.finals:
        counts[q] = 1
    for length in range(count_len + 1):
        if length:
            counts = [sum(counts[r] for r in row.values()) for row in dfa.delta]
        if counts[dfa.initial] != system.term(length):
            return False
        if system.term(length) <= exhaustive_terms:
            if not all(dfa.accepts(w) for w in _padded_reps(system, length)):
                return False
    return True


def infer_numeration_dfa(system, max_suffix_len: int = 6, max_states: int = 200,
                         exhaustive_terms: int = 20000, count_len: int = 60) -> Dfa:
    """A Dfa for 0*rep_U(N), found from membership queries and verified.

    Words are told apart by their membership profile over all suffixes up
    to a growing length.  A candidate is accepted only if, for every length
    l <= count_len, it accepts exactly U_l words of length l, and it
    accepts every zero-padded representation of length l whenever
    U_l <= exhaustive_terms (so those lengths match exactly).  This is
    bounded evidence, not a proof of regularity.
    """
    member = _membership(system)
    alphabet = tuple(range(system.digit_bound))
    for k in range(1, max_suffix_len + 1):
        tests = [w for L in range(k + 1) for w in itertools.product(alphabet, repeat=L)]
        cache = {}

        def profile(u):
            if u not in cache:
                cache[u] = tuple(member(u + e) for e in tests)
            return cache[u]

        reps = [()]
        index = {profile(()): 0}
        delta = []
        i = 0
        too_big = False
        while i < len(reps):
            u = reps[i]
            i += 1
            row = {}
            for a in alphabet:
                v = u + (a,)
                sig = profile(v)
                if not any(sig):
                    continue  # dead: no extension is a representation
                if sig not in index:
                    index[sig] = len(reps)
                    reps.append(v)
                    if len(reps) > max_states:
                        too_big = True
                        break
                row[a] = index[sig]
            if too_big:
                break
            delta.append(row)
        if too_big:
            continue
        finals = [j for j, u in enumerate(reps) if member(u)]
        cand = Dfa(alphabet, delta, 0, finals)
        if _verify_numeration(cand, system, exhaustive_terms, count_len):
            return minimize(cand)
    raise UnverifiedLanguage(f"no verified automaton with suffixes up to length {max_suffix_len}")


def numeration_automaton(system) -> Dfa:
    """The Dfa for 0*rep_U(N): the one attached to the system, else an inferred one."""
    if system.language is None:
        system.language = infer_numeration_dfa(system)
    return system.language


# ---------------------------------------------------------------------------
# export


def _symbol_text(s) -> str:
    if isinstance(s, tuple):
        return "(" + ",".join(map(str, s)) + ")"
    return str(s)


def to_dot(a: Dfa, title: str = "automaton") -> str:
    lines = [f'digraph "{title}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.finals else "circle"
        label = a.names[q]
        if isinstance(a, Dfao):
            label = f"{label} / {a.outputs[q]}"
        lines.append(f'  {q} [shape={shape}, label="{label}"];')
    lines.append(f"  __start -> {a.initial};")
    for q, row in enumerate(a.delta):
        grouped: dict[int, list] = {}
        for s in a.alphabet:
            if s in row:
                grouped.setdefault(row[s], []).append(_symbol_text(s))
        for r, syms in grouped.items():
            lines.append(f'  {q} -> {r} [label="{",".join(syms)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _enc(s):
    return list(s) if isinstance(s, tuple) else s


def _dec(s):
    return tuple(s) if isinstance(s, list) else s


def to_json(a: Dfa) -> dict:
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "dfao" if isinstance(a, Dfao) else "dfa",
        "alphabet": [_enc(s) for s in a.alphabet],
        "initial": a.initial,
        "finals": sorted(a.finals),
        "names": list(a.names),
        "transitions": [[[_enc(s), r] for s, r in row.items()] for row in a.delta],
    }
    if isinstance(a, Dfao):
        data["outputs"] = [_enc(o) for o in a.outputs]
    return data


def from_json(data: dict) -> Dfa:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise InvalidInput(f"unsupported schema_version {data.get('schema_version')!r}")
    alphabet = [_dec(s) for s in data["alphabet"]]
    delta = [{_dec(s): r for s, r in row} for row in data["transitions"]]
    if data.get("kind") == "dfao":
        return Dfao(alphabet, delta, data["initial"], [_dec(o) for o in data["outputs"]],
                    data.get("names"), data["finals"])
    return Dfa(alphabet, delta, data["initial"], data["finals"], data.get("names"))


def dumps(a: Dfa) -> str:
    return json.dumps(to_json(a), sort_keys=True)


def loads(text: str) -> Dfa:
    return from_json(json.loads(text))


# ---------------------------------------------------------------------------
# handy machines


def machine_from_function(alphabet, n_states: int, step: Callable[[int, Hashable], int],
                          output: Callable[[int], Hashable], names=None) -> Dfao:
    delta = [{s: step(q, s) for s in alphabet} for q in range(n_states)]
    return Dfao(alphabet, delta, 0, [output(q) for q in range(n_states)], names)


def digit_sum_mod(alphabet, k: int) -> Dfao:
    """Output is the digit sum of the representation modulo k."""
    return machine_from_function(alphabet, k, lambda q, a: (q + a) % k, lambda q: q)


def char_machine(language: Dfa) -> Dfao:
    """Complete 0/1 machine for a language that is closed under leading zeros."""
    c = complete(language)
    return Dfao(c.alphabet, c.delta, c.initial, [1 if q in c.finals else 0 for q in range(c.n_states)],
                c.names, c.finals)
