"""Exception hierarchy shared by every module of the package."""


class ParrySeqError(Exception):
    """Base class for all errors raised by parryseq."""


class InvalidSystem(ParrySeqError):
    """A numeration system whose terms are not strictly increasing from 1."""


class UnboundedRatio(ParrySeqError):
    """The ratios U_{n+1}/U_n keep growing over the probe window."""


class InvalidInput(ParrySeqError):
    """Malformed polynomial, interval or argument."""


class FieldMismatch(ParrySeqError):
    """Two field elements (or a conjugate) do not share a minimal polynomial."""


class OutOfRange(ParrySeqError):
    """A beta-expansion was requested for a number outside [0, 1]."""


class NotParry(ParrySeqError):
    """The quasi-greedy expansion of 1 has no detected period."""


class AlphabetMismatch(ParrySeqError):
    """Automata combined over different alphabets."""


class NotProlongable(ParrySeqError):
    """A substitution cannot be iterated to an infinite fixed point."""


class NotUniform(ParrySeqError):
    """A substitution whose images do not all have the same length."""


class IncompleteKernel(ParrySeqError):
    """A kernel table is not closed under one-digit extensions."""


class UnverifiedLanguage(ParrySeqError):
    """No automaton matching the numeration language was found within bounds."""


class InsufficientPrefix(ParrySeqError):
    """Factor counts on a prefix have not stabilized.

    ``stable_upto`` is the largest n for which counts on the prefix and on
    its first half agree for every length <= n; ``table`` holds the counts
    computed on the full prefix.
    """

    def __init__(self, stable_upto, table):
        super().__init__(f"factor counts only stable up to n={stable_upto}")
        self.stable_upto = stable_upto
        self.table = table
