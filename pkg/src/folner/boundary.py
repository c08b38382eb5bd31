"""Weighted cardinalities, relative boundaries and the fixing condition.

The boundary of a finite label set F relative to S collects the labels
inside F that fuse with some element of S to a constituent outside F,
together with the labels outside F that fuse into F.  Weighted counts are
sums of squared dimensions and all ratios are exact rationals; floats only
appear at the reporting layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .fusion import Decomposition, FusionRing, Label
from .policy import FixPolicy, Verdict, classify_trace


@dataclass(frozen=True)
class FiniteSubset:
    """A finite set of valid labels of one ring."""

    ring: FusionRing
    members: frozenset

    @classmethod
    def of(cls, ring: FusionRing, labels: Iterable[Label]) -> "FiniteSubset":
        members = frozenset(labels)
        for lab in members:
            ring.check_label(lab)
        return cls(ring, members)

    def sorted_members(self) -> list:
        return sorted(self.members)

    def __contains__(self, label):
        return label in self.members

    def __len__(self):
        return len(self.members)


def weighted_card(subset: FiniteSubset) -> int:
    """|F|_w: the exact integer sum of squared dimensions over F."""
    ring = subset.ring
    return sum(ring.dim(lab) ** 2 for lab in subset.members)


@dataclass(frozen=True)
class BoundaryReport:
    """Inner and outer parts of a relative boundary with their weights."""

    inner: FiniteSubset
    outer: FiniteSubset
    weighted_inner: int
    weighted_outer: int

    @property
    def weighted_total(self) -> int:
        return self.weighted_inner + self.weighted_outer


def _label_set(ring: FusionRing, s) -> list:
    if isinstance(s, FiniteSubset):
        return s.sorted_members()
    if isinstance(s, Decomposition):
        return list(s.labels())
    labels = sorted(set(s))
    for lab in labels:
        ring.check_label(lab)
    return labels


def boundary(f: FiniteSubset, s) -> BoundaryReport:
    """Boundary of F relative to a nonempty label set S.

    The inner part scans F directly.  The outer part, the labels a outside
    F with some N_{a,g}^b > 0 for b in F, is enumerated through Frobenius
    reciprocity (N_{a,g}^b = N_{b,conj(g)}^a) as the constituents of
    b (x) conj(g) that fall outside F, so no ambient enumeration of the
    ring is ever needed.
    """
    ring = f.ring
    s_labels = _label_set(ring, s)
    if not s_labels:
        raise ValueError("boundary needs a nonempty relative set")
    members = f.members
    inner = set()
    outer = set()
    for g in s_labels:
        gbar = ring.conjugate(g)
        for b in members:
            if b not in inner:
                if any(c not in members for c in ring.tensor_decompose(b, g).labels()):
                    inner.add(b)
            for a in ring.tensor_decompose(b, gbar).labels():
                if a not in members:
                    outer.add(a)
    inner_sub = FiniteSubset(ring, frozenset(inner))
    outer_sub = FiniteSubset(ring, frozenset(outer))
    return BoundaryReport(inner_sub, outer_sub, weighted_card(inner_sub), weighted_card(outer_sub))


def boundary_rel_rep(f: FiniteSubset, rep: Decomposition) -> BoundaryReport:
    """Boundary relative to the constituent set of a (possibly reducible) rep."""
    return boundary(f, rep)


@dataclass
class SubsetSequence:
    """A rule n -> F_n of nonempty finite label subsets, n >= 1.

    ``length`` is None for unbounded rules and the declared length for
    explicit lists.  Subsets and their weights are cached per index; the
    rule must be a pure function of n.
    """

    ring: FusionRing
    kind: str
    rule: Callable[[int], Iterable[Label]]
    length: Optional[int] = None
    _subsets: dict = field(default_factory=dict, repr=False)
    _weights: dict = field(default_factory=dict, repr=False)

    def check_index(self, n: int) -> int:
        if n < 1:
            raise IndexError(f"sequence index {n} < 1")
        if self.length is not None and n > self.length:
            raise IndexError(f"sequence index {n} > declared length {self.length}")
        return n

    def subset(self, n: int) -> FiniteSubset:
        self.check_index(n)
        cached = self._subsets.get(n)
        if cached is None:
            cached = FiniteSubset.of(self.ring, self.rule(n))
            if not cached.members:
                raise ValueError(f"sequence produced an empty subset at n={n}")
            self._subsets[n] = cached
        return cached

    def weight(self, n: int) -> int:
        w = self._weights.get(n)
        if w is None:
            w = weighted_card(self.subset(n))
            self._weights[n] = w
        return w

    @classmethod
    def intervals(
        cls,
        ring: FusionRing,
        start=(0, 0),
        end=(1, 0),
        step=(0, 1),
    ) -> "SubsetSequence":
        """Integer-labelled intervals F_n = {start(n), start(n)+step(n), ..., end(n)}
        with affine rules (a, b) standing for a*n + b."""

        def affine(coeffs, n):
            a, b = coeffs
            return a * n + b

        def rule(n):
            lo = affine(start, n)
            hi = affine(end, n)
            by = affine(step, n)
            if by < 1:
                raise ValueError("interval step must be positive")
            return range(lo, hi + 1, by)

        return cls(ring, "intervals", rule)

    @classmethod
    def explicit(cls, ring: FusionRing, sets: Sequence[Iterable[Label]]) -> "SubsetSequence":
        frozen = [tuple(s) for s in sets]
        if not frozen:
            raise ValueError("explicit sequence needs at least one subset")
        return cls(ring, "explicit", lambda n: frozen[n - 1], length=len(frozen))

    @classmethod
    def custom(cls, ring: FusionRing, fn: Callable[[int], Iterable[Label]], length=None):
        return cls(ring, "custom", fn, length=length)


def fix_ratio(sequence: SubsetSequence, gamma: Label, n: int) -> Fraction:
    """Exact weighted boundary ratio |bd_gamma(F_n)|_w / |F_n|_w."""
    report = boundary(sequence.subset(n), (gamma,))
    return Fraction(report.weighted_total, sequence.weight(n))


@dataclass(frozen=True)
class TracePoint:
    n: int
    weight_f: int
    weight_boundary: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.weight_boundary, self.weight_f)


@dataclass
class FixReport:
    """Verdict for one label under one policy, with the full ratio trace."""

    label: Label
    policy: FixPolicy
    verdict: Verdict
    trace: list

    def ratios(self) -> list:
        return [point.ratio for point in self.trace]

    def final_ratio(self) -> Fraction:
        return self.trace[-1].ratio


def fixes(sequence: SubsetSequence, gamma: Label, policy: FixPolicy) -> FixReport:
    """Classify whether ``gamma`` fixes the sequence under the policy.

    Computes the exact ratio trace for n = 1..n_max (clipped to the
    declared length of explicit sequences) and hands it to the trace
    classifier; the trace is always returned for audit.
    """
    sequence.ring.check_label(gamma)
    n_max = policy.n_max
    if sequence.length is not None:
        n_max = min(n_max, sequence.length)
        if n_max < policy.tail_window:
            raise ValueError("sequence shorter than the policy tail window")
    trace = []
    for n in range(1, n_max + 1):
        f = sequence.subset(n)
        report = boundary(f, (gamma,))
        trace.append(TracePoint(n, sequence.weight(n), report.weighted_total))
    verdict = classify_trace([p.ratio for p in trace], policy)
    return FixReport(gamma, policy, verdict, trace)


def weighted_density_trace(
    sequence: SubsetSequence,
    predicate: Callable[[Label], bool],
    n_max: int,
    tail: int = 10,
):
    """Weighted upper-density trace |L cap F_n|_w / |F_n|_w with a tail estimate.

    Support for checking the positive-density precondition of the
    progression probe; the estimate is the maximum over the last ``tail``
    ratios, a finite stand-in for the limsup.
    """
    ring = sequence.ring
    trace = []
    for n in range(1, n_max + 1):
        f = sequence.subset(n)
        hit = sum(ring.dim(lab) ** 2 for lab in f.members if predicate(lab))
        trace.append((n, Fraction(hit, sequence.weight(n))))
    estimate = max(r for _, r in trace[-tail:])
    return trace, estimate
