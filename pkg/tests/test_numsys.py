import json

import pytest
from hypothesis import given, strategies as st

from parryseq import numsys
from parryseq.errors import InvalidSystem
from parryseq.numsys import NumerationSystem, format_word, genealogical_cmp, parse_word

SYSTEMS = [numsys.fibonacci(), numsys.modified_fibonacci(), numsys.affine_three(),
           numsys.quartic(), numsys.base(2), numsys.base(10)]


def test_terms():
    assert numsys.fibonacci().terms(8) == [1, 2, 3, 5, 8, 13, 21, 34]
    assert numsys.modified_fibonacci().terms(5) == [1, 3, 4, 7, 11]
    assert numsys.affine_three().terms(5) == [1, 4, 13, 40, 121]
    assert numsys.quartic().terms(8) == [1, 4, 15, 54, 195, 705, 2550, 9222]


def test_digit_bounds():
    assert numsys.fibonacci().digit_bound == 2
    assert numsys.modified_fibonacci().digit_bound == 3
    assert numsys.quartic().digit_bound == 4
    assert numsys.base(10).alphabet == tuple(range(10))


def test_known_reps():
    q = numsys.quartic()
    assert format_word(q.rep(16)) == "101"
    assert format_word(q.rep(0)) == "eps"
    assert numsys.modified_fibonacci().val((2, 0)) == 6
    assert format_word(numsys.modified_fibonacci().rep(6)) == "102"
    assert format_word(numsys.base(2).rep(10)) == "1010"


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: s.name)
@given(n=st.integers(min_value=0, max_value=10 ** 30))
def test_round_trip(system, n):
    w = system.rep(n)
    assert system.val(w) == n
    assert not w or w[0] != 0
    assert system.is_greedy(w)
    assert system.is_greedy((0, 0) + w)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: s.name)
def test_rep_preserves_order(system):
    words = [system.rep(n) for n in range(300)]
    assert all(genealogical_cmp(a, b) < 0 for a, b in zip(words, words[1:]))


def test_greedy_suffix_condition():
    fib = numsys.fibonacci()
    assert not fib.is_greedy((1, 1))
    assert fib.is_greedy((1, 0, 1))


def test_invalid_systems():
    with pytest.raises(InvalidSystem):
        NumerationSystem.from_recurrence([1, 1], [2, 3])
    with pytest.raises(InvalidSystem):
        NumerationSystem.from_recurrence([1], [1])
    with pytest.raises(InvalidSystem):
        NumerationSystem.from_recurrence([], [1])
    with pytest.raises(InvalidSystem):
        numsys.base(1)
    with pytest.raises(ValueError):
        numsys.fibonacci().rep(-1)


def test_finite_system():
    s = NumerationSystem.from_terms([1, 2, 4, 8])
    assert s.rep(7) == (1, 1, 1)
    with pytest.raises(IndexError):
        s.rep(100)


def test_json_round_trip():
    for s in SYSTEMS:
        again = NumerationSystem.from_json(json.loads(json.dumps(s.to_json())))
        assert again.terms(20) == s.terms(20)
        assert again.digit_bound == s.digit_bound


def test_word_formatting():
    assert parse_word("eps") == ()
    assert parse_word("3203") == (3, 2, 0, 3)
    assert parse_word("10.11") == (10, 11)
    assert format_word((10, 11)) == "10.11"
    with pytest.raises(ValueError):
        parse_word("abc")
