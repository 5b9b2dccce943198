"""Automatic sequences in one and two dimensions, substitutions read off
automata, factor complexity, and U-kernels.

A sequence is x_n = tau(delta(q0, rep_U(n))) for a complete machine whose
initial state loops on 0.  In two dimensions the machine reads pairs of
digits and the shorter representation is padded with leading zeros.
"""

from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .automata import (Dfa, Dfao, RightQuotients, complete, minimize, numeration_automaton,
                       product_dfao, reverse_dfao, _zero_of, right_quotients, with_leading_zeros,
                       with_zero_loop)
from .errors import (IncompleteKernel, InsufficientPrefix, InvalidInput, NotProlongable,
                     NotUniform)
from .numsys import NumerationSystem, format_word


def _check_machine(machine: Dfao):
    if not machine.is_complete():
        raise InvalidInput("sequence machines must be complete")
    if not machine.has_zero_loop():
        raise InvalidInput("the initial state must loop on 0")


class AutomaticSequence:
    """x_n = machine output after reading rep_U(n).

    The prefix cache only grows and is extended under a lock.
    """

    def __init__(self, system: NumerationSystem, machine: Dfao):
        _check_machine(machine)
        if set(machine.alphabet) != set(system.alphabet):
            raise InvalidInput("machine alphabet must be the digit alphabet of the system")
        self.system = system
        self.machine = machine
        self._prefix: list = []
        self._lock = threading.Lock()

    def __getitem__(self, n: int):
        if n < len(self._prefix):
            return self._prefix[n]
        return self.machine.output(self.system.rep(n))

    def prefix(self, length: int) -> list:
        if len(self._prefix) < length:
            with self._lock:
                for n in range(len(self._prefix), length):
                    self._prefix.append(self.machine.output(self.system.rep(n)))
        return self._prefix[:length]


def evaluate(seq: AutomaticSequence, n: int):
    return seq[n]


def padded_pair(system: NumerationSystem, m: int, n: int) -> list[tuple]:
    a, b = system.rep(m), system.rep(n)
    ell = max(len(a), len(b))
    a = (0,) * (ell - len(a)) + a
    b = (0,) * (ell - len(b)) + b
    return list(zip(a, b))


def evaluate2d(machine: Dfao, system: NumerationSystem, m: int, n: int):
    return machine.output(padded_pair(system, m, n))


def pair_machine(first: Dfao, second: Dfao, combine: Callable[[Hashable, Hashable], Hashable]) -> Dfao:
    """Machine over digit pairs running two 1D machines side by side."""
    pairs = [(a, b) for a in first.alphabet for b in second.alphabet]
    start = (first.initial, second.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        row = {}
        for a, b in pairs:
            key = (first.delta[p][a], second.delta[q][b])
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row[(a, b)] = index[key]
        delta.append(row)
    outputs = [combine(first.outputs[p], second.outputs[q]) for p, q in order]
    return Dfao(pairs, delta, 0, outputs)


@dataclass
class Grid2D:
    rows: list

    @classmethod
    def from_machine(cls, machine: Dfao, system: NumerationSystem, M: int, N: int) -> "Grid2D":
        return cls([[evaluate2d(machine, system, m, n) for n in range(N)] for m in range(M)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.rows:
            w.writerow(row)
        return buf.getvalue()


def char_sequence_from_regular_set(system: NumerationSystem, set_language: Dfa) -> AutomaticSequence:
    """0/1 sequence of the integers whose representation (up to leading zeros) lies in the set."""
    numeration = numeration_automaton(system)
    target = complete(with_leading_zeros(set_language))
    prod = product_dfao(numeration, Dfao(target.alphabet, target.delta, target.initial,
                                         [q in target.finals for q in range(target.n_states)]))
    outputs = [1 if (q in prod.finals and prod.outputs[q]) else 0 for q in range(prod.n_states)]
    machine = complete(Dfao(prod.alphabet, prod.delta, 0, outputs), sink_output=0)
    return AutomaticSequence(system, minimize(machine))


# ---------------------------------------------------------------------------
# substitutions


class Substitution:
    """A morphism on letters; images may be empty.

    ``seed`` is the letter whose fixed point is generated.
    """

    def __init__(self, images: dict, seed=None, names: dict | None = None):
        self.images = {a: tuple(w) for a, w in images.items()}
        self.letters = tuple(self.images)
        for a, w in self.images.items():
            for b in w:
                if b not in self.images:
                    raise InvalidInput(f"image of {a!r} uses unknown letter {b!r}")
        self.seed = self.letters[0] if seed is None else seed
        self.names = names or {}

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        """From ``"a->aaab, b->b"`` (single-character letters)."""
        images = {}
        for part in text.split(","):
            lhs, _, rhs = part.strip().partition("->")
            images[lhs.strip()] = tuple(rhs.strip())
        return cls(images)

    def __call__(self, word: Iterable) -> tuple:
        out = []
        for a in word:
            out.extend(self.images[a])
        return tuple(out)

    def name(self, a) -> str:
        return str(self.names.get(a, a))

    def format(self) -> str:
        return ", ".join(f"{self.name(a)} -> {''.join(self.name(b) for b in self.images[a]) or 'eps'}"
                         for a in self.letters)

    def is_uniform(self) -> bool:
        return len({len(w) for w in self.images.values()}) == 1

    def is_erasing(self) -> bool:
        return any(not w for w in self.images.values())

    def mortal_letters(self) -> set:
        """Letters a with sigma^k(a) empty for some k."""
        mortal = set()
        changed = True
        while changed:
            changed = False
            for a, w in self.images.items():
                if a not in mortal and all(b in mortal for b in w):
                    mortal.add(a)
                    changed = True
        return mortal

    def check_prolongable(self, seed=None):
        seed = self.seed if seed is None else seed
        img = self.images[seed]
        if not img or img[0] != seed:
            raise NotProlongable(f"image of {seed!r} does not start with it")
        mortal = self.mortal_letters()
        if all(b in mortal for b in img[1:]):
            raise NotProlongable(f"the fixed point from {seed!r} is finite")


def automaton_to_substitution(product: Dfa) -> tuple[Substitution, dict]:
    """State q maps to its successors on 0, 1, ... in order, skipping undefined ones."""
    zero = _zero_of(product.alphabet)
    if product.delta[product.initial].get(zero) != product.initial:
        raise NotProlongable("initial state has no 0-loop")
    images = {q: tuple(product.delta[q][a] for a in product.alphabet if a in product.delta[q])
              for q in range(product.n_states)}
    # move the initial state first so that it is the default seed
    order = [product.initial] + [q for q in range(product.n_states) if q != product.initial]
    images = {q: images[q] for q in order}
    names = {q: product.names[q] for q in order}
    coding = {q: product.outputs[q] for q in order} if isinstance(product, Dfao) else {}
    return Substitution(images, product.initial, names), coding


def fixed_point(sub: Substitution, length: int, seed=None) -> tuple:
    """Prefix of sigma^omega(seed)."""
    seed = sub.seed if seed is None else seed
    sub.check_prolongable(seed)
    out = list(sub.images[seed])
    i = 1
    while len(out) < length:
        out.extend(sub.images[out[i]])
        i += 1
    return tuple(out[:length])


def image_lengths(sub: Substitution, q, n: int) -> int:
    """|sigma^n(q)| from length vectors."""
    lengths = {a: 1 for a in sub.letters}
    for _ in range(n):
        lengths = {a: sum(lengths[b] for b in w) for a, w in sub.images.items()}
    return lengths[q]


def apply_uniform_substitution(word: Iterable, mu: Substitution) -> tuple:
    if not mu.is_uniform():
        raise NotUniform("images have different lengths")
    return mu(word)


def periodic_deletion(word: Sequence, t: int) -> tuple:
    """Keep the letters at positions 0, t, 2t, ..."""
    if t < 1:
        raise InvalidInput("t must be positive")
    return tuple(word[::t])


def uniform_marker(t: int, letters=(0, 1)) -> Substitution:
    """0 -> 0^t, 1 -> 1 0^(t-1)."""
    zero, one = letters
    return Substitution({zero: (zero,) * t, one: (one,) + (zero,) * (t - 1)})


# ---------------------------------------------------------------------------
# factor complexity


def _factor_counts(word: Sequence, n_max: int) -> list[int]:
    w = tuple(word)
    counts = []
    for n in range(1, n_max + 1):
        if n > len(w):
            counts.append(0)
            continue
        counts.append(len({w[i:i + n] for i in range(len(w) - n + 1)}))
    return counts


def factor_complexity(prefix: Sequence, n_max: int) -> list[int]:
    """[p(1), ..., p(n_max)] counted on the prefix.

    Counts on the first half of the prefix must already agree; otherwise
    InsufficientPrefix reports the largest n up to which they do.
    """
    full = _factor_counts(prefix, n_max)
    half = _factor_counts(prefix[:len(prefix) // 2], n_max)
    stable = 0
    for a, b in zip(full, half):
        if a != b:
            break
        stable += 1
    if stable < n_max:
        raise InsufficientPrefix(stable, full)
    return full


def fixed_point_complexity(sub: Substitution, n_max: int, coding: dict | None = None,
                           seed=None) -> list[int]:
    """Exact [p(1), ..., p(n_max)] for tau(sigma^omega(seed)), sigma non-erasing.

    The length-n factors form the least set containing the length-n prefix
    and closed under F -> Fact_n(sigma(F)): each length-n window of
    sigma(x) lies in sigma(v) for a length-n factor v of x.  The factors
    of the coded word are the images of those factors.
    """
    if sub.is_erasing():
        raise InvalidInput("exact counting needs a non-erasing substitution")
    seed = sub.seed if seed is None else seed
    start = fixed_point(sub, n_max, seed)
    factors = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        img = sub(v)
        for i in range(len(img) - n_max + 1):
            f = img[i:i + n_max]
            if f not in factors:
                factors.add(f)
                todo.append(f)
    out = []
    for n in range(1, n_max + 1):
        if coding is None:
            out.append(len({f[:n] for f in factors}))
        else:
            out.append(len({tuple(coding[a] for a in f[:n]) for f in factors}))
    return out


def growth_diagnostic(table: Sequence[int]) -> dict:
    """Evidence about p(n) from its values; never a classification proof."""
    ratios = [p / n for n, p in enumerate(table, start=1)]
    tail = table[len(table) * 2 // 3:]
    second = ratios[len(ratios) // 2:]
    increasing = all(b > a for a, b in zip(second, second[1:]))
    if len(set(tail)) == 1:
        verdict = "bounded"
    elif increasing:
        verdict = "superlinear evidence"
    else:
        verdict = "linear-ish"
    return {"verdict": verdict, "max_ratio": max(ratios), "ratio_increasing": increasing}


def complexity_csv(table: Sequence[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p(n)", "p(n)/n"])
    for n, p in enumerate(table, start=1):
        w.writerow([n, p, f"{p / n:.6f}"])
    return buf.getvalue()


def prefix_csv(values: Sequence) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "x_n"])
    for n, v in enumerate(values):
        w.writerow([n, v])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# kernels


def index_set(quotients: RightQuotients, system: NumerationSystem, suffix: Sequence[int],
              count: int | None = None, limit: int | None = None) -> list[int]:
    """The first elements of I_s = val(0*rep_U(N) n A*s), increasing.

    Stops after ``count`` elements or past values ``limit``.  The
    quotients must be those of the numeration language 0*rep_U(N).
    """
    s = tuple(suffix)
    m = quotients.automaton
    X = quotients.sets[quotients.classify(s)]
    if not X:
        return []
    alphabet = tuple(sorted(m.alphabet))
    # live[k]: states from which some word of length exactly k ends in X
    live = [set(X)]
    # states reachable from q0 by some nonempty word that does not start with 0
    useful = _coreach(m, X)
    out: list[int] = []

    def done():
        return (count is not None and len(out) >= count)

    if m.initial in X:
        v = system.val(s)
        if limit is not None and v > limit:
            return out
        out.append(v)
    level = {m.delta[m.initial][a] for a in alphabet if a != 0}
    length = 1
    while not done() and level & useful:
        while len(live) <= length:
            prev = live[-1]
            live.append({q for q in range(m.n_states) if any(m.delta[q][a] in prev for a in alphabet)})
        stop = [False]

        def dfs(q, remaining, prefix):
            if stop[0] or done():
                return
            if remaining == 0:
                v = system.val(tuple(prefix) + s)
                if limit is not None and v > limit:
                    stop[0] = True
                    return
                out.append(v)
                return
            for a in alphabet:
                if not prefix and a == 0:
                    continue
                r = m.delta[q][a]
                if r in live[remaining - 1]:
                    prefix.append(a)
                    dfs(r, remaining - 1, prefix)
                    prefix.pop()
                    if stop[0] or done():
                        return

        if m.initial in live[length]:
            dfs(m.initial, length, [])
        if stop[0]:
            break
        level = {m.delta[q][a] for q in level for a in alphabet}
        length += 1
    return out


def _coreach(m: Dfa, X) -> set:
    back = [set() for _ in range(m.n_states)]
    for q, _, r in m.edges():
        back[r].add(q)
    seen = set(X)
    todo = list(seen)
    while todo:
        r = todo.pop()
        for q in back[r]:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def brute_force_index_set(system: NumerationSystem, suffix: Sequence[int], limit: int) -> list[int]:
    """n <= limit whose representation, zero-padded to at least |s| digits, ends with s."""
    s = tuple(suffix)
    out = []
    for n in range(limit + 1):
        r = system.rep(n)
        if len(r) < len(s):
            r = (0,) * (len(s) - len(r)) + r
        if r[len(r) - len(s):] == s:
            out.append(n)
    return out


@dataclass
class KernelClass:
    signature: tuple
    key: tuple          # representative suffix word(s), one per dimension
    window: tuple       # extracted values (nested tuples in 2D)
    empty: bool         # some index set I_s is empty


@dataclass
class KernelTable:
    """Kernel classes closed under prepending one symbol, plus per-suffix entries.

    ``classes[i].signature`` is (quotient class of each component,
    reversal-machine state); ``transitions[i][symbol]`` is the class of the
    extended key.  ``entries`` maps every key up to the requested suffix
    length to its class id.
    """

    dim: int
    window: int
    classes: list
    transitions: list
    entries: dict
    indices: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.classes)

    def value_classes(self) -> int:
        return len({c.window for c in self.classes if not c.empty})

    def subsequence(self, key) -> tuple:
        return self.classes[self.entries[key]].window

    def to_json(self) -> str:
        data = {}
        for key, cid in sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0])):
            label = format_word(key) if self.dim == 1 else "|".join(format_word(w) for w in key)
            data[label] = {"class": cid, "values": _jsonable(self.classes[cid].window)}
        return json.dumps({"dim": self.dim, "window": self.window, "classes": len(self.classes),
                           "entries": data}, sort_keys=False)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _reversal_table(machine: Dfao):
    """Reversal-state transition: prepend symbol a to g = (q -> output(delta(q, s)))."""
    states = range(machine.n_states)

    def prepend(g, a):
        return tuple(g[machine.delta[q][a]] for q in states)
    return tuple(machine.outputs), prepend


def _build_kernel(machine: Dfao, system: NumerationSystem, dim: int, suffix_len_max: int,
                  window: int, quotients: RightQuotients | None = None) -> KernelTable:
    _check_machine(machine)
    if quotients is None:
        quotients = right_quotients(numeration_automaton(system))
    digits = tuple(sorted(quotients.alphabet))
    symbols = [(a,) for a in digits] if dim == 1 else [(a, b) for a in digits for b in digits]
    g0, prepend = _reversal_table(machine)

    def msym(sym):
        return sym[0] if dim == 1 else sym

    index_cache: dict = {}

    def idx(word):
        if word not in index_cache:
            index_cache[word] = index_set(quotients, system, word, count=window)
        return index_cache[word]

    def values_for(key):
        sets = [idx(w) for w in key]
        if dim == 1:
            return tuple(machine.output(system.rep(i)) for i in sets[0]), not sets[0]
        rows = tuple(tuple(evaluate2d(machine, system, i, j) for j in sets[1]) for i in sets[0])
        return rows, not sets[0] or not sets[1]

    start_key = tuple(() for _ in range(dim))
    start_sig = (tuple(0 for _ in range(dim)), g0)
    sig_index = {start_sig: 0}
    classes = []
    keys = [start_key]
    sigs = [start_sig]
    transitions = []
    i = 0
    while i < len(sigs):
        cls, g = sigs[i]
        key = keys[i]
        vals, empty = values_for(key)
        classes.append(KernelClass((cls, g), key, vals, empty))
        row = {}
        for sym in symbols:
            ncls = tuple(quotients.prepend[c][a] for c, a in zip(cls, sym))
            nsig = (ncls, prepend(g, msym(sym)))
            if nsig not in sig_index:
                sig_index[nsig] = len(sigs)
                sigs.append(nsig)
                keys.append(tuple((a,) + w for a, w in zip(sym, key)))
            row[msym(sym)] = sig_index[nsig]
        transitions.append(row)
        i += 1

    # every key up to the requested length, with the window cross-check
    entries = {start_key[0] if dim == 1 else start_key: 0}
    frontier = [(start_key, 0)]
    for _ in range(suffix_len_max):
        nxt = []
        for key, cid in frontier:
            for sym in symbols:
                nkey = tuple((a,) + w for a, w in zip(sym, key))
                ncid = transitions[cid][msym(sym)]
                vals, _ = values_for(nkey)
                if vals != classes[ncid].window:
                    raise AssertionError(f"signature collision with different values at {nkey}")
                entries[nkey[0] if dim == 1 else nkey] = ncid
                nxt.append((nkey, ncid))
        frontier = nxt
    indices = dict(index_cache)
    return KernelTable(dim, window, classes, transitions, entries, indices)


def kernel(seq: AutomaticSequence, suffix_len_max: int = 3, window: int = 24) -> KernelTable:
    return _build_kernel(seq.machine, seq.system, 1, suffix_len_max, window)


def kernel2d(machine: Dfao, system: NumerationSystem, suffix_len_max: int = 1,
             window: int = 8) -> KernelTable:
    return _build_kernel(machine, system, 2, suffix_len_max, window)


def kernel_subsequence(seq: AutomaticSequence, suffix: Sequence[int], limit: int,
                       quotients: RightQuotients | None = None) -> tuple[list[int], list]:
    """(I_s up to ``limit``, x restricted to it)."""
    if quotients is None:
        quotients = right_quotients(numeration_automaton(seq.system))
    idx = index_set(quotients, seq.system, suffix, limit=limit)
    return idx, [seq[i] for i in idx]


def kernel_finiteness(seq: AutomaticSequence) -> int:
    """Number of reachable (quotient class, reversal state) signatures."""
    quotients = right_quotients(numeration_automaton(seq.system))
    g0, prepend = _reversal_table(seq.machine)
    digits = tuple(sorted(quotients.alphabet))
    seen = {(0, g0)}
    todo = [(0, g0)]
    while todo:
        c, g = todo.pop()
        for a in digits:
            nxt = (quotients.prepend[c][a], prepend(g, a))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return len(seen)


def kernel_to_dfao(table: KernelTable, quotients: RightQuotients | None = None,
                   alphabet=None) -> Dfao:
    """Forward machine rebuilt from a closed kernel table.

    States of the intermediate machine are triples (quotient class of s,
    quotient class of t, kernel element), the element identified by its
    window.  That machine reads representations backwards; its output is
    the first value of the element.  It is then reversed and given a
    0-loop at the initial state.  Elements with an empty index set never
    produce an output for a valid representation and get the initial
    output as a placeholder.
    """
    default = table.classes[0].window
    for _ in range(table.dim):
        default = default[0]
    triple_of = []
    triples: dict = {}
    for c in table.classes:
        t = (c.signature[0], c.window)
        triple_of.append(triples.setdefault(t, len(triples)))
    n = len(triples)
    delta: list = [None] * n
    outputs: list = [None] * n
    for cid, c in enumerate(table.classes):
        tid = triple_of[cid]
        row = {sym: triple_of[target] for sym, target in table.transitions[cid].items()}
        if delta[tid] is None:
            delta[tid] = row
            if c.empty:
                outputs[tid] = default
            else:
                v = c.window
                for _ in range(table.dim):
                    v = v[0]
                outputs[tid] = v
        elif delta[tid] != row:
            raise IncompleteKernel("kernel windows too short: one element has two different extensions")
    symbols = tuple(table.transitions[0])
    if alphabet is not None and set(alphabet) != set(symbols):
        raise InvalidInput("alphabet does not match the kernel table")
    reversed_machine = Dfao(symbols, delta, triple_of[0], outputs)
    forward = reverse_dfao(reversed_machine)
    return minimize(with_zero_loop(forward))


def kernel2d_to_dfao(table: KernelTable, quotients: RightQuotients | None = None) -> Dfao:
    if table.dim != 2:
        raise InvalidInput("expected a two-dimensional kernel table")
    return kernel_to_dfao(table, quotients)
