import json
import threading

import pytest

from parryseq import numsys
from parryseq.automata import (Dfao, digit_sum_mod, quadratic_automaton, machine_from_function,
                               numeration_automaton, path_counts, product_dfao, right_quotients,
                               word_set_automaton)
from parryseq.errors import (InsufficientPrefix, InvalidInput, NotProlongable, NotUniform)
from parryseq.sequences import (AutomaticSequence, Grid2D, Substitution, apply_uniform_substitution,
                                automaton_to_substitution, brute_force_index_set,
                                char_sequence_from_regular_set, complexity_csv, evaluate,
                                evaluate2d, factor_complexity, fixed_point, fixed_point_complexity,
                                growth_diagnostic, image_lengths, index_set, kernel, kernel2d,
                                kernel2d_to_dfao, kernel_finiteness, kernel_to_dfao, pair_machine,
                                periodic_deletion, prefix_csv, uniform_marker)


@pytest.fixture(scope="module")
def quartic_char():
    U = numsys.quartic()
    return char_sequence_from_regular_set(U, word_set_automaton(U.alphabet, "10*"))


def test_char_sequence(quartic_char):
    x = quartic_char.prefix(60)
    U = quartic_char.system
    assert "".join(map(str, x[:28])) == "0100100000000001000000000000"
    assert [n for n, v in enumerate(x) if v] == [t for t in U.terms(5) if t < 60]


def test_prefix_cache_is_consistent_under_threads(quartic_char):
    seq = AutomaticSequence(quartic_char.system, quartic_char.machine)
    out = []
    threads = [threading.Thread(target=lambda: out.append(seq.prefix(500))) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(o == out[0] for o in out)
    assert out[0] == [evaluate(quartic_char, n) for n in range(500)]


def test_thue_morse_base_two():
    tm = AutomaticSequence(numsys.base(2), digit_sum_mod((0, 1), 2))
    assert "".join(map(str, tm.prefix(16))) == "0110100110010110"


def test_machine_must_have_zero_loop():
    bad = Dfao((0, 1), [{0: 1, 1: 1}, {0: 1, 1: 1}], 0, [0, 1])
    with pytest.raises(InvalidInput):
        AutomaticSequence(numsys.base(2), bad)


def test_uniform_substitution_and_deletion(quartic_char):
    x = quartic_char.prefix(200)
    U = quartic_char.system
    mu = uniform_marker(4)
    y = apply_uniform_substitution(x, mu)
    assert [n for n, v in enumerate(y) if v] == [4 * t for t in U.terms(5) if t < 200]
    d = periodic_deletion(x, 2)
    assert "".join(map(str, d[:28])) == "0010000000000000000000000001"
    assert periodic_deletion(x, 1) == tuple(x)
    with pytest.raises(NotUniform):
        apply_uniform_substitution(x, Substitution({0: (0,), 1: (1, 0)}))
    with pytest.raises(InvalidInput):
        periodic_deletion(x, 0)


def test_substitution_basics():
    s = Substitution.parse("a->aaab, b->b")
    assert s.format() == "a -> aaab, b -> b"
    assert "".join(fixed_point(s, 12)) == "aaabaaabaaab"
    assert image_lengths(Substitution({"a": "aa"}), "a", 10) == 1024
    with pytest.raises(NotProlongable):
        fixed_point(Substitution.parse("a->ba, b->b"), 5)
    with pytest.raises(NotProlongable):
        fixed_point(Substitution({"a": ("a", "c"), "c": ()}), 5)
    assert Substitution({"a": ("a", "c"), "c": ()}).mortal_letters() == {"c"}


def test_quadratic_automaton_substitution():
    sub, _ = automaton_to_substitution(quadratic_automaton())
    assert sub.format() == "a -> aaab, b -> b"
    a = quadratic_automaton()
    for n in range(21):
        assert [image_lengths(sub, q, n) for q in sub.letters] == path_counts(a, n)


def test_product_substitution_generates_sequence(quartic_char):
    prod = product_dfao(numeration_automaton(quartic_char.system), quartic_char.machine)
    sub, coding = automaton_to_substitution(prod)
    assert [coding[q] for q in fixed_point(sub, 2000)] == quartic_char.prefix(2000)


def test_factor_complexity():
    assert factor_complexity([0] * 50, 5) == [1] * 5
    with pytest.raises(InsufficientPrefix) as info:
        factor_complexity(list(range(20)), 5)
    assert info.value.stable_upto == 0
    # long runs of b make prefix counting hopeless for this word
    sub = Substitution.parse("a->aaab, b->b")
    with pytest.raises(InsufficientPrefix) as info:
        factor_complexity(fixed_point(sub, 5000), 10)
    k = info.value.stable_upto
    assert info.value.table[:k] == fixed_point_complexity(sub, k)


def test_exact_complexity_matches_long_prefix():
    tm = Substitution({0: (0, 1), 1: (1, 0)})
    exact = fixed_point_complexity(tm, 20)
    assert exact[:6] == [2, 4, 6, 10, 12, 16]
    assert factor_complexity(fixed_point(tm, 1 << 14), 20) == exact
    with pytest.raises(InvalidInput):
        fixed_point_complexity(Substitution({"a": ("a", "c"), "c": ()}), 5)


def test_growth_diagnostic():
    assert growth_diagnostic([1] * 30)["verdict"] == "bounded"
    assert growth_diagnostic([n * n for n in range(1, 31)])["verdict"] == "superlinear evidence"
    assert growth_diagnostic([n + 1 for n in range(1, 31)])["verdict"] == "linear-ish"
    assert complexity_csv([2, 4]).splitlines()[0] == "n,p(n),p(n)/n"
    assert prefix_csv([0, 1]).splitlines()[1] == "0,0"


def test_index_sets():
    fib = numsys.fibonacci()
    q = right_quotients(numeration_automaton(fib))
    assert index_set(q, fib, (1, 1), limit=1000) == []
    for s in [(), (0,), (1,), (0, 1), (1, 0, 0)]:
        assert index_set(q, fib, s, limit=2000) == brute_force_index_set(fib, s, 2000)
    assert index_set(q, fib, (0,), count=5) == [0, 2, 3, 5, 7]


def test_kernel_base_two_matches_classic(quartic_char):
    tm = AutomaticSequence(numsys.base(2), digit_sum_mod((0, 1), 2))
    t = kernel(tm, 3, 32)
    x = tm.prefix(600)
    for key in t.entries:
        e, d = len(key), sum(b << i for i, b in enumerate(reversed(key)))
        assert t.subsequence(key) == tuple(x[(2 ** e) * n + d] for n in range(32))
    assert t.value_classes() == 2
    assert kernel_finiteness(quartic_char) == 8


def test_kernel_constant_sequence():
    fib = numsys.fibonacci()
    const = AutomaticSequence(fib, machine_from_function((0, 1), 1, lambda q, a: 0, lambda q: 7))
    t = kernel(const, 3, 10)
    assert t.value_classes() == 1
    assert kernel_to_dfao(t).outputs == (7,)


def test_kernel_round_trip(quartic_char):
    t = kernel(quartic_char, 3, 24)
    assert len(t) == 8 and t.value_classes() == 3
    m = kernel_to_dfao(t)
    rebuilt = AutomaticSequence(quartic_char.system, m)
    assert rebuilt.prefix(3000) == quartic_char.prefix(3000)
    data = json.loads(t.to_json())
    assert data["classes"] == 8 and "01" in data["entries"]


def test_kernel2d_round_trip():
    fib = numsys.fibonacci()
    ch = char_sequence_from_regular_set(fib, word_set_automaton(fib.alphabet, "10*")).machine
    machine = pair_machine(ch, ch, lambda a, b: a ^ b)
    table = kernel2d(machine, fib, 1, 8)
    rebuilt = kernel2d_to_dfao(table)
    g1 = Grid2D.from_machine(machine, fib, 40, 40)
    assert g1.rows == Grid2D.from_machine(rebuilt, fib, 40, 40).rows
    assert g1.shape == (40, 40)
    # leading zero pairs do not change the value
    assert machine.output(((0, 0), (0, 0), (1, 0))) == evaluate2d(machine, fib, 2, 0)
    with pytest.raises(InvalidInput):
        kernel2d_to_dfao(kernel(AutomaticSequence(fib, ch), 2, 8))
    assert g1.to_csv().count("\n") == 40
