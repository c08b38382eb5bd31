"""The stabilizer of a subset sequence inside a fusion ring.

Labels whose weighted boundary ratios tend to zero form a quantum subgroup:
the set contains the trivial label and is closed under conjugation and
under constituents of products.  Membership is only ever certified "under
policy" from a finite trace, so every classification keeps its trace for
audit, and the closure operations re-verify everything they produce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .boundary import FixReport, SubsetSequence, boundary, fixes
from .errors import SearchExhausted, WitnessNotFixing
from .fusion import FusionRing, Label
from .policy import FixPolicy, Verdict


@dataclass
class StabilizerSet:
    """Classified window of a sequence's stabilizer.

    ``verdicts`` maps every examined label to its :class:`FixReport`;
    ``members`` is the subset classified Fixes.  The trivial label is
    always examined and always lands in ``members`` (its boundary is
    empty, so its ratio trace is identically zero).
    """

    ring: FusionRing
    sequence: SubsetSequence
    policy: FixPolicy
    verdicts: dict

    @property
    def members(self) -> list:
        return sorted(
            lab for lab, rep in self.verdicts.items() if rep.verdict is Verdict.FIXES
        )

    def verdict(self, label: Label) -> Verdict:
        return self.verdicts[label].verdict

    def is_member(self, label: Label) -> bool:
        rep = self.verdicts.get(label)
        return rep is not None and rep.verdict is Verdict.FIXES


def classify_window(
    sequence: SubsetSequence,
    window: Iterable[Label],
    policy: FixPolicy,
) -> StabilizerSet:
    """Run the fixing classifier over a finite label window.

    The trivial label is added to the window if absent.
    """
    ring = sequence.ring
    labels = sorted(set(window) | {ring.trivial})
    verdicts = {lab: fixes(sequence, lab, policy) for lab in labels}
    return StabilizerSet(ring, sequence, policy, verdicts)


@dataclass(frozen=True)
class InequalityCheck:
    n: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


@dataclass
class InequalityReport:
    description: str
    checks: list

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_conjugate_closure(
    sequence: SubsetSequence, gamma: Label, n_range: Iterable[int]
) -> InequalityReport:
    """Verify |bd_conj(g)(F_n)|_w <= d_g^2 |bd_g(F_n)|_w exactly, per n.

    This is the quantitative bound behind conjugation closure: a label
    that fixes the sequence drags its conjugate along with it.
    """
    ring = sequence.ring
    gbar = ring.conjugate(gamma)
    d2 = ring.dim(gamma) ** 2
    checks = []
    for n in n_range:
        f = sequence.subset(n)
        lhs = boundary(f, (gbar,)).weighted_total
        rhs = d2 * boundary(f, (gamma,)).weighted_total
        checks.append(InequalityCheck(n, lhs, rhs))
    return InequalityReport(
        f"conjugate bound for {gamma!r} (conj = {gbar!r})", checks
    )


def check_fusion_closure(
    sequence: SubsetSequence, gamma1: Label, gamma2: Label, n_range: Iterable[int]
) -> InequalityReport:
    """Verify the product bound
    |bd_{g1 g2}(F_n)|_w <= max(d_{g1}^2, d_{g2}^2) (|bd_{g1}(F_n)|_w + |bd_{g2}(F_n)|_w).

    The left side is the boundary relative to the constituent set of
    g1 (x) g2; both sides are exact integers.
    """
    ring = sequence.ring
    product = ring.tensor_decompose(gamma1, gamma2)
    factor = max(ring.dim(gamma1) ** 2, ring.dim(gamma2) ** 2)
    checks = []
    for n in n_range:
        f = sequence.subset(n)
        lhs = boundary(f, product).weighted_total
        rhs = factor * (
            boundary(f, (gamma1,)).weighted_total
            + boundary(f, (gamma2,)).weighted_total
        )
        checks.append(InequalityCheck(n, lhs, rhs))
    return InequalityReport(f"product bound for {gamma1!r} (x) {gamma2!r}", checks)


@dataclass
class MultiplicityReport:
    alpha: Label
    gamma: Label
    forward_sum: int
    backward_sum: int
    forward_bound: int
    backward_bound: int

    @property
    def ok(self) -> bool:
        return (
            self.forward_sum <= self.forward_bound
            and self.backward_sum <= self.backward_bound
        )


def check_multiplicity_lemma(ring: FusionRing, alpha: Label, gamma: Label) -> MultiplicityReport:
    """Verify sum_{b: N_{a,g}^b > 0} d_b^2 <= d_a^2 d_g^2 and its reciprocal dual.

    The sums run over all constituents, not only stabilizer members, which
    is a strictly stronger check and keeps it independent of any
    membership classification.  The dual sum enumerates the b with
    N_{b,g}^a > 0 as constituents of a (x) conj(g).
    """
    bound = ring.dim(alpha) ** 2 * ring.dim(gamma) ** 2
    forward = sum(
        ring.dim(b) ** 2 for b in ring.tensor_decompose(alpha, gamma).labels()
    )
    gbar = ring.conjugate(gamma)
    backward = sum(
        ring.dim(b) ** 2 for b in ring.tensor_decompose(alpha, gbar).labels()
    )
    return MultiplicityReport(alpha, gamma, forward, backward, bound, bound)


@dataclass
class ClosureReport:
    """Stabilizer generated from seeds, with anomalies and the open frontier.

    ``anomalies`` lists labels produced by the closure whose re-verification
    did not come back Fixes (a sign the policy is too loose); they are
    reported, never silently accepted into the member set.  ``frontier``
    holds the labels first produced in the final round, where the hard
    depth bound cut the generation off.
    """

    stabilizer: StabilizerSet
    seeds: tuple
    depth: int
    anomalies: list
    frontier: list


def closure_generate(
    sequence: SubsetSequence,
    seeds: Iterable[Label],
    policy: FixPolicy,
    depth: int,
) -> ClosureReport:
    """Generate stabilizer members from verified seeds.

    Each round conjugates the current members and fuses them with the
    conjugation-closed seed set, re-verifying every new label with the
    fixing classifier.  Seeds that fail verification raise
    :class:`WitnessNotFixing`; later failures are recorded as anomalies.
    """
    ring = sequence.ring
    seeds = sorted(set(seeds))
    if depth < 0:
        raise ValueError("depth must be >= 0")
    verdicts: dict = {}

    def verify(label):
        rep = verdicts.get(label)
        if rep is None:
            rep = fixes(sequence, label, policy)
            verdicts[label] = rep
        return rep

    for s in seeds:
        if verify(s).verdict is not Verdict.FIXES:
            raise WitnessNotFixing(f"seed {s!r} is not classified Fixes")
    verify(ring.trivial)

    generators = sorted(set(seeds) | {ring.conjugate(s) for s in seeds})
    members = set(seeds) | {ring.trivial}
    anomalies = []
    frontier: list = []
    for _ in range(depth):
        produced = set()
        for lab in sorted(members):
            produced.add(ring.conjugate(lab))
            for g in generators:
                produced.update(ring.tensor_decompose(lab, g).labels())
        fresh = sorted(produced - members)
        frontier = []
        for lab in fresh:
            rep = verify(lab)
            if rep.verdict is Verdict.FIXES:
                members.add(lab)
                frontier.append(lab)
            else:
                anomalies.append((lab, rep))
        if not frontier:
            break
    stab = StabilizerSet(
        ring, sequence, policy, {lab: verdicts[lab] for lab in sorted(members)}
    )
    return ClosureReport(stab, tuple(seeds), depth, anomalies, frontier)


@dataclass(frozen=True)
class ProbeFinding:
    """One progression witness: for every j < k, all constituents of the
    j-th power product lie in the target set."""

    alpha: Label
    beta: Label
    n: int
    per_j: tuple  # (j, constituent labels, contained) triples


def _contains_rep(predicate: Callable[[Label], bool], labels: Sequence[Label]) -> bool:
    return all(predicate(lab) for lab in labels)


def conjecture_probe(
    sequence: SubsetSequence,
    predicate: Callable[[Label], bool],
    k: int,
    window: Iterable[Label],
    n_max: int,
    policy: FixPolicy,
) -> list:
    """Search for progression-like witnesses inside a dense label set.

    For every stabilizer member alpha from the classified window, every
    beta in the window and every 1 <= n <= n_max, tests whether the target
    set contains the product alpha^(j n) (x) beta for all 0 <= j <= k-1,
    where containment means every constituent of the product lies in the
    set.  Returns all findings with their per-j constituent record; raises
    :class:`SearchExhausted` when the bounds produce none.  The search is
    run independently per k, leaving open whether one alpha could serve
    all k at once; this is an experimental probe, not a proof.

    The positive-density precondition on the target set is the caller's
    to check (see ``weighted_density_trace``).
    """
    if k < 1:
        raise ValueError("progression length k must be >= 1")
    ring = sequence.ring
    window = sorted(set(window))
    stab = classify_window(sequence, window, policy)
    alphas = stab.members
    findings = []
    for n in range(1, n_max + 1):
        for alpha in alphas:
            for beta in window:
                per_j = []
                good = True
                for j in range(k):
                    labels = [alpha] * (j * n) + [beta]
                    constituents = ring.constituents_of_product(labels).labels()
                    contained = _contains_rep(predicate, constituents)
                    per_j.append((j, constituents, contained))
                    if not contained:
                        good = False
                        break
                if good:
                    findings.append(ProbeFinding(alpha, beta, n, tuple(per_j)))
    if not findings:
        raise SearchExhausted(
            "no progression witness in the searched window",
            {"k": k, "n_max": n_max, "window": len(window)},
        )
    return findings
