"""Truncation policy turning finite ratio traces into fixing verdicts.

Whether a label fixes a sequence is a statement about a limit, which is
undecidable from finitely many terms.  The policy below is the package-wide
contract: it inspects the last ``tail_window`` entries of an exact rational
trace and returns ``Fixes``, ``DoesNotFix`` or an explicit ``Inconclusive``,
never a silent misclassification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

RationalLike = Union[int, float, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Exact rational from ints, Fractions, "p/q" strings or decimal literals.

    Floats are read through their decimal repr so that 0.05 means 1/20,
    not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value))


class Verdict(str, Enum):
    FIXES = "Fixes"
    DOES_NOT_FIX = "DoesNotFix"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FixPolicy:
    """Truncation parameters: horizon ``n_max``, threshold ``epsilon`` in (0,1),
    and the number of trailing trace entries the verdict inspects."""

    n_max: int = 200
    epsilon: Fraction = Fraction(1, 20)
    tail_window: int = 10

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if not (self.n_max >= self.tail_window >= 2):
            raise ValueError("need n_max >= tail_window >= 2")
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")


def classify_trace(ratios: Sequence[Fraction], policy: FixPolicy) -> Verdict:
    """Classify an exact ratio trace (indexed by n = 1, 2, ...).

    Fixes: the final ratio is at most epsilon and the tail is nonincreasing.

    DoesNotFix: every tail ratio is at least epsilon and the tail trend,
    linearly extrapolated one full horizon ahead, still clears epsilon.
    The extrapolation admits traces that decrease toward a positive limit
    (free-group balls, geometric-dimension rings) while keeping slowly
    decaying traces that merely have not crossed epsilon yet inconclusive.

    Everything else: Inconclusive.
    """
    if len(ratios) < policy.tail_window:
        raise ValueError("trace shorter than the policy tail window")
    tail = list(ratios[-policy.tail_window :])
    nonincreasing = all(b <= a for a, b in zip(tail, tail[1:]))
    if ratios[-1] <= policy.epsilon and nonincreasing:
        return Verdict.FIXES
    if min(tail) >= policy.epsilon:
        slope = Fraction(tail[-1] - tail[0], len(tail) - 1)
        projected = tail[-1] + slope * policy.n_max
        if projected >= policy.epsilon:
            return Verdict.DOES_NOT_FIX
    return Verdict.INCONCLUSIVE
