"""Numeration systems, exact beta-expansions and automatic sequences."""

from .errors import *  # noqa: F401,F403
from .numsys import NumerationSystem, format_word, genealogical_key, parse_word
from .algebraic import AlgebraicReal, FieldElement, isolate_real_roots
from .beta import (BetaExpansion, beta_expand, canonical_system, conjugate_tail_sum,
                   is_parry, quasi_greedy, quartic_roots)
from .automata import Dfa, Dfao, canonical_parry_automaton, numeration_automaton, right_quotients
from .sequences import AutomaticSequence, Substitution, factor_complexity, kernel

__version__ = "0.1.0"
