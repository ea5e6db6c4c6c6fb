"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LatticeError(ValueError):
    """Base class for invalid lattice input."""


class DuplicateElement(LatticeError):
    pass


class UnknownElement(LatticeError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return ValueError.__str__(self)


class CycleDetected(LatticeError):
    pass


class NotALattice(LatticeError):
    """Some pair lacks a unique join or meet.

    ``pair`` holds the offending elements and ``reason`` is either
    ``"no unique join"`` or ``"no unique meet"``.
    """

    def __init__(self, pair=None, reason: str = ""):
        self.pair = pair
        self.reason = reason
        msg = reason if pair is None else f"{pair[0]!r}, {pair[1]!r}: {reason}"
        super().__init__(msg)


class NoUniqueBottom(NotALattice):
    def __init__(self, candidates=()):
        self.candidates = tuple(candidates)
        super().__init__(None, f"no unique bottom (minimal elements: {list(self.candidates)})")


class NoUniqueTop(NotALattice):
    def __init__(self, candidates=()):
        self.candidates = tuple(candidates)
        super().__init__(None, f"no unique top (maximal elements: {list(self.candidates)})")


class NotComparable(LatticeError):
    pass


class NotModular(LatticeError):
    pass


class TooLarge(ValueError):
    pass


class NotPrimePower(ValueError):
    pass


class UnknownCorpusEntry(KeyError):
    pass


class ParseError(ValueError):
    def __init__(self, line, reason: str):
        self.line = line
        self.reason = reason
        where = "" if line is None else f"line {line}: "
        super().__init__(where + reason)


class LatticeIOError(OSError):
    pass


class NotAnIdeal(ValueError):
    pass


class RankAxiomViolated(ValueError):
    pass


class NotOrderReversing(ValueError):
    pass


class PreconditionViolated(ValueError):
    """``which`` names the violated precondition."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"{which}: {detail}" if detail else which)


class NoWitness(RuntimeError):
    pass


class StrongExchangeRefuted(NoWitness):
    """No exchange witness exists although every precondition was verified."""


class ConstructionFailed(RuntimeError):
    pass


class NotMonotone(ValueError):
    pass


class EmptyFeasibleSet(ValueError):
    pass
