"""Fusion rings: irrep labels with dimensions, conjugation and tensor multiplicities.

A ring answers queries for any valid label, so infinite families (integer
duals, SU(2), free orthogonal) are rule-generated and lazy; only explicit
tables carry a finite index set. Labels are plain integers or (nested)
integer tuples, compared and sorted by their natural Python order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Iterator, Sequence, Union

from .errors import TableIncomplete, UnknownLabel

Label = Union[int, tuple]


@dataclass(frozen=True)
class Decomposition:
    """Multiset of irreducible constituents, sorted by label.

    ``entries`` holds ``(label, multiplicity)`` pairs with distinct labels
    and positive multiplicities.
    """

    entries: tuple

    def __post_init__(self):
        labels = [lab for lab, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in decomposition")
        if any(mult < 1 for _, mult in self.entries):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "Decomposition":
        return cls(tuple(sorted((lab, int(m)) for lab, m in pairs)))

    def labels(self) -> tuple:
        return tuple(lab for lab, _ in self.entries)

    def multiplicity(self, label: Label) -> int:
        for lab, mult in self.entries:
            if lab == label:
                return mult
        return 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


class FusionRing:
    """Query interface shared by all families.

    Subclasses implement ``contains``, ``_dim``, ``_conj`` and ``_fuse``;
    everything else (validation, caching, iterated products) lives here.
    Rings are immutable after construction and safe for concurrent reads:
    the fusion cache is only ever filled with values that are pure
    functions of the label arguments.
    """

    family = "abstract"

    def __init__(self):
        self._fuse_cache: dict = {}

    @property
    def trivial(self) -> Label:
        raise NotImplementedError

    def contains(self, label: Label) -> bool:
        raise NotImplementedError

    def _dim(self, label: Label) -> int:
        raise NotImplementedError

    def _conj(self, label: Label) -> Label:
        raise NotImplementedError

    def _fuse(self, a: Label, b: Label) -> tuple:
        """Sorted ``(label, multiplicity)`` pairs of the product a x b."""
        raise NotImplementedError

    def check_label(self, label: Label) -> Label:
        if not self.contains(label):
            raise UnknownLabel(label, self)
        return label

    def dim(self, label: Label) -> int:
        self.check_label(label)
        return self._dim(label)

    def conjugate(self, label: Label) -> Label:
        self.check_label(label)
        return self._conj(label)

    def tensor_decompose(self, a: Label, b: Label) -> Decomposition:
        """Constituents of the product ``a (x) b`` with multiplicities."""
        key = (a, b)
        hit = self._fuse_cache.get(key)
        if hit is not None:
            return hit
        self.check_label(a)
        self.check_label(b)
        dec = Decomposition(self._fuse(a, b))
        self._fuse_cache[key] = dec
        return dec

    def constituents_of_product(self, labels: Sequence[Label]) -> Decomposition:
        """Left fold of ``tensor_decompose`` over a nonempty label list.

        Associativity of the multiplicities makes the fold order
        irrelevant; the axiom checker verifies this on test windows.
        """
        if not labels:
            raise ValueError("product of an empty label list")
        head = self.check_label(labels[0])
        acc = {head: 1}
        for lab in labels[1:]:
            nxt: dict = {}
            for cur, mult in acc.items():
                for gamma, n in self.tensor_decompose(cur, lab):
                    nxt[gamma] = nxt.get(gamma, 0) + mult * n
            acc = nxt
        return Decomposition.from_pairs(acc.items())

    # Finite rings override these two.
    @property
    def is_finite(self) -> bool:
        return False

    def labels(self) -> Iterator[Label]:
        raise TypeError(f"{self.family} ring has no global label enumeration")

    def __repr__(self):
        return f"<{type(self).__name__}>"


class CyclicDualRing(FusionRing):
    """Dual of the cyclic group Z/m: labels 0..m-1, all dimensions 1."""

    family = "cyclic_dual"

    def __init__(self, modulus: int):
        super().__init__()
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus

    @property
    def trivial(self) -> Label:
        return 0

    def contains(self, label):
        return isinstance(label, int) and 0 <= label < self.modulus

    def _dim(self, label):
        return 1

    def _conj(self, label):
        return (-label) % self.modulus

    def _fuse(self, a, b):
        return (((a + b) % self.modulus, 1),)

    @property
    def is_finite(self):
        return True

    def labels(self):
        return iter(range(self.modulus))

    def __repr__(self):
        return f"CyclicDualRing({self.modulus})"


class IntegerDualRing(FusionRing):
    """Dual of Z^rank: group-like labels fusing by addition, all dimensions 1.

    Rank 1 uses bare integers as labels, higher ranks use integer tuples.
    """

    family = "integer_dual"

    def __init__(self, rank: int = 1):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank

    @property
    def trivial(self):
        return 0 if self.rank == 1 else (0,) * self.rank

    def contains(self, label):
        if self.rank == 1:
            return isinstance(label, int)
        return (
            isinstance(label, tuple)
            and len(label) == self.rank
            and all(isinstance(c, int) for c in label)
        )

    def _dim(self, label):
        return 1

    def _conj(self, label):
        if self.rank == 1:
            return -label
        return tuple(-c for c in label)

    def _fuse(self, a, b):
        if self.rank == 1:
            return ((a + b, 1),)
        return ((tuple(x + y for x, y in zip(a, b)), 1),)

    def __repr__(self):
        return f"IntegerDualRing(rank={self.rank})"


class SU2Ring(FusionRing):
    """SU(2) representation ring with integer labels equal to twice the spin.

    d_a = a + 1, every label is self-conjugate, and a (x) b decomposes into
    one copy of each c with |a-b| <= c <= a+b and a+b+c even.
    """

    family = "su2"

    @property
    def trivial(self):
        return 0

    def contains(self, label):
        return isinstance(label, int) and label >= 0

    def _dim(self, label):
        return label + 1

    def _conj(self, label):
        return label

    def _fuse(self, a, b):
        return tuple((c, 1) for c in range(abs(a - b), a + b + 1, 2))

    def __repr__(self):
        return "SU2Ring()"


class FreeOrthogonalRing(FusionRing):
    """Fusion data of the dual of the free orthogonal quantum group O_N^+.

    Same fusion rules as SU(2) but with dimensions following the recursion
    d_0 = 1, d_1 = N, d_{k+1} = N d_k - d_{k-1}.  For N >= 3 the dimensions
    grow geometrically, which makes interval sequences fail the fixing
    condition for every nontrivial label.  N = 2 reproduces the SU(2)
    dimensions d_k = k + 1.
    """

    family = "free_orthogonal"

    def __init__(self, n: int):
        super().__init__()
        if n < 2:
            raise ValueError("free orthogonal parameter must be >= 2")
        self.n = n
        self._dims = [1, n]

    @property
    def trivial(self):
        return 0

    def contains(self, label):
        return isinstance(label, int) and label >= 0

    def _dim(self, label):
        dims = self._dims
        while len(dims) <= label:
            dims.append(self.n * dims[-1] - dims[-2])
        return dims[label]

    def _conj(self, label):
        return label

    def _fuse(self, a, b):
        return tuple((c, 1) for c in range(abs(a - b), a + b + 1, 2))

    def __repr__(self):
        return f"FreeOrthogonalRing({self.n})"


class ProductRing(FusionRing):
    """Direct product of fusion rings; labels are tuples, one slot per factor."""

    family = "product"

    def __init__(self, factors: Sequence[FusionRing]):
        super().__init__()
        if not factors:
            raise ValueError("product of zero rings")
        self.factors = tuple(factors)

    @property
    def trivial(self):
        return tuple(f.trivial for f in self.factors)

    def contains(self, label):
        return (
            isinstance(label, tuple)
            and len(label) == len(self.factors)
            and all(f.contains(c) for f, c in zip(self.factors, label))
        )

    def _dim(self, label):
        d = 1
        for f, c in zip(self.factors, label):
            d *= f._dim(c)
        return d

    def _conj(self, label):
        return tuple(f._conj(c) for f, c in zip(self.factors, label))

    def _fuse(self, a, b):
        parts = [f.tensor_decompose(x, y) for f, x, y in zip(self.factors, a, b)]
        out = []
        for combo in iter_product(*[p.entries for p in parts]):
            label = tuple(lab for lab, _ in combo)
            mult = 1
            for _, m in combo:
                mult *= m
            out.append((label, mult))
        return tuple(sorted(out))

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def labels(self):
        return iter_product(*[f.labels() for f in self.factors])

    def __repr__(self):
        return f"ProductRing({list(self.factors)!r})"


class ExplicitTableRing(FusionRing):
    """Ring defined by a finite table of dimensions, conjugates and fusions.

    The table must list conjugates and dimensions for every label; fusion
    is stored sparsely per ordered pair and a queried pair without an
    entry raises :class:`TableIncomplete`.
    """

    family = "explicit"

    def __init__(self, trivial, dims, conj, fusion):
        """``dims``/``conj`` map label -> value; ``fusion`` maps (a, b) -> pairs."""
        super().__init__()
        self._trivial = trivial
        self._dims = dict(dims)
        self._conjs = dict(conj)
        if trivial not in self._dims:
            raise ValueError("trivial label missing from dims")
        if self._dims[trivial] != 1:
            raise ValueError("trivial label must have dimension 1")
        for lab, d in self._dims.items():
            if d < 1:
                raise ValueError(f"dimension of {lab!r} must be positive")
        for lab, c in self._conjs.items():
            if lab not in self._dims or c not in self._dims:
                raise ValueError(f"conjugate entry {lab!r} -> {c!r} leaves the label set")
        if set(self._conjs) != set(self._dims):
            raise ValueError("conj must be listed for every label")
        self._fusion = {}
        for (a, b), pairs in dict(fusion).items():
            if a not in self._dims or b not in self._dims:
                raise ValueError(f"fusion pair ({a!r}, {b!r}) uses unknown labels")
            entries = tuple(sorted((lab, int(m)) for lab, m in pairs))
            for lab, m in entries:
                if lab not in self._dims:
                    raise ValueError(f"fusion result {lab!r} missing from labels")
                if m < 1:
                    raise ValueError("fusion multiplicities must be positive")
            self._fusion[(a, b)] = entries

    @property
    def trivial(self):
        return self._trivial

    def contains(self, label):
        return label in self._dims

    def _dim(self, label):
        return self._dims[label]

    def _conj(self, label):
        return self._conjs[label]

    def _fuse(self, a, b):
        try:
            return self._fusion[(a, b)]
        except KeyError:
            raise TableIncomplete((a, b)) from None

    @property
    def is_finite(self):
        return True

    def labels(self):
        return iter(sorted(self._dims))

    def __repr__(self):
        return f"ExplicitTableRing({len(self._dims)} labels)"


def export_explicit_table(ring: FusionRing, window: Iterable[Label]) -> ExplicitTableRing:
    """Freeze a ring into an explicit table covering all pairs from ``window``.

    The label set is closed under conjugation and under constituents of
    window pairs, so every listed fusion result is itself listed.  Queries
    outside the exported pairs raise :class:`TableIncomplete`.
    """
    window = sorted(set(window))
    for lab in window:
        ring.check_label(lab)
    labels = set(window) | {ring.trivial}
    labels |= {ring.conjugate(lab) for lab in window}
    pair_domain = sorted(labels)
    fusion = {}
    for a in pair_domain:
        for b in pair_domain:
            dec = ring.tensor_decompose(a, b)
            fusion[(a, b)] = dec.entries
            labels.update(dec.labels())
    dims = {lab: ring.dim(lab) for lab in labels}
    conj = {lab: ring.conjugate(lab) for lab in labels}
    missing = {c for c in conj.values() if c not in dims}
    for c in sorted(missing):
        dims[c] = ring.dim(c)
        conj[c] = ring.conjugate(c)
    return ExplicitTableRing(ring.trivial, dims, conj, fusion)


@dataclass(frozen=True)
class AxiomViolation:
    identity: str
    witness: tuple
    detail: str


@dataclass
class RingAxiomReport:
    """Outcome of the batch axiom checker; empty ``violations`` means all good."""

    ring: FusionRing
    window: tuple
    checks: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_ring_axioms(
    ring: FusionRing,
    window: Iterable[Label],
    assoc_cap: int = 4096,
    seed: int = 0,
) -> RingAxiomReport:
    """Recompute the ring identities over a finite window and report violations.

    Checks the unit law, conjugation involution, the dimension identity
    sum_c N_{a,b}^c d_c = d_a d_b, Frobenius reciprocity
    N_{a,b}^c = N_{c,conj(b)}^a = N_{conj(a),c}^b on every constituent
    triple, and associativity of iterated products.  Associativity runs
    over all window triples when there are at most ``assoc_cap`` of them,
    otherwise over a seeded deterministic sample of that size.
    """
    window = sorted(set(window))
    violations = []
    checks = 0

    def bad(identity, witness, detail):
        violations.append(AxiomViolation(identity, tuple(witness), detail))

    triv = ring.trivial
    checks += 2
    if ring.dim(triv) != 1:
        bad("trivial", (triv,), f"d(trivial) = {ring.dim(triv)} != 1")
    if ring.conjugate(triv) != triv:
        bad("trivial", (triv,), "conj(trivial) != trivial")

    for a in window:
        checks += 4
        if ring.dim(a) < 1:
            bad("dimension", (a,), "nonpositive dimension")
        abar = ring.conjugate(a)
        if ring.conjugate(abar) != a:
            bad("conjugation", (a,), "conj is not an involution")
        if ring.dim(abar) != ring.dim(a):
            bad("conjugation", (a,), "d(conj(a)) != d(a)")
        right = ring.tensor_decompose(a, triv)
        left = ring.tensor_decompose(triv, a)
        if right.entries != ((a, 1),) or left.entries != ((a, 1),):
            bad("unit", (a,), "a (x) trivial != a")

    for a in window:
        for b in window:
            dec = ring.tensor_decompose(a, b)
            checks += 1
            total = sum(m * ring.dim(c) for c, m in dec)
            if total != ring.dim(a) * ring.dim(b):
                bad(
                    "dimension",
                    (a, b),
                    f"sum N d = {total} != {ring.dim(a) * ring.dim(b)}",
                )
            bbar = ring.conjugate(b)
            abar = ring.conjugate(a)
            for c, m in dec:
                checks += 2
                m2 = ring.tensor_decompose(c, bbar).multiplicity(a)
                m3 = ring.tensor_decompose(abar, c).multiplicity(b)
                if not (m == m2 == m3):
                    bad(
                        "frobenius",
                        (a, b, c),
                        f"N={m}, N_(c,conj b)^a={m2}, N_(conj a,c)^b={m3}",
                    )

    triples = len(window) ** 3
    if triples <= assoc_cap:
        sample = iter_product(window, window, window)
    else:
        rng = random.Random(seed)
        sample = (
            (rng.choice(window), rng.choice(window), rng.choice(window))
            for _ in range(assoc_cap)
        )
    for a, b, c in sample:
        checks += 1
        left = ring.constituents_of_product([a, b, c])
        right_inner = ring.tensor_decompose(b, c)
        acc: dict = {}
        for mid, m1 in right_inner:
            for d, m2 in ring.tensor_decompose(a, mid):
                acc[d] = acc.get(d, 0) + m1 * m2
        right = Decomposition.from_pairs(acc.items())
        if left.entries != right.entries:
            bad("associativity", (a, b, c), "fold orders disagree")

    return RingAxiomReport(ring, tuple(window), checks, violations)
