"""Permutations, integer partitions and symmetric-group characters.

Permutations act on {0, ..., k-1} and are stored in one-line notation as a
tuple of images.  Composition is right-to-left: ``(a * b)(x) = a(b(x))``.
The degree-0 empty permutation is a valid identity.

Partitions are plain tuples of positive ints sorted descending; class
vectors are dicts keyed by partitions.  Characters are computed with the
Murnaghan-Nakayama rule and memoized.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial


class DegreeMismatch(ValueError):
    """Two permutations of different degrees were combined."""


class WeightMismatch(ValueError):
    """A character was requested for partitions of different weights."""


class NegativeWeight(ValueError):
    """A partition weight must be a non-negative integer."""


class DegreeTooLarge(ValueError):
    """A symmetric-group computation exceeded its supported degree."""


Partition = tuple[int, ...]


class Permutation:
    """Immutable permutation of {0..k-1} in one-line notation."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images)-1}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Permutation is immutable")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def transposition(a: int, b: int, degree: int) -> "Permutation":
        images = list(range(degree))
        images[a], images[b] = images[b], images[a]
        return Permutation(images)

    @staticmethod
    def from_cycles(cycles, degree: int) -> "Permutation":
        """Build from 0-based cycles given as iterables of points."""
        images = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for i, point in enumerate(cyc):
                images[point] = cyc[(i + 1) % len(cyc)]
        return Permutation(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        out = [0] * len(self.images)
        for x, y in enumerate(self.images):
            out[y] = x
        return Permutation(out)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, cycles sorted by minimum, fixed points included."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return cycle_type(self)

    def num_cycles(self) -> int:
        n = 0
        seen = [False] * len(self.images)
        for start in range(len(self.images)):
            if seen[start]:
                continue
            n += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
        return n

    def sign(self) -> int:
        return -1 if (self.degree - self.num_cycles()) % 2 else 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)!r})"

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join(
            "(" + " ".join(str(p + 1) for p in c) + ")" for c in nontrivial
        )


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Right-to-left composition: (a o b)(x) = a(b(x))."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    return Permutation(tuple(a.images[y] for y in b.images))


def cycle_type(p: Permutation) -> Partition:
    lengths = sorted((len(c) for c in p.cycles()), reverse=True)
    return tuple(lengths)


def restrict_top(p: Permutation) -> Permutation:
    """Drop the top point of a permutation that fixes it."""
    k = p.degree
    if k == 0 or p.images[k - 1] != k - 1:
        raise ValueError(f"{p!r} does not fix its top point")
    return Permutation(p.images[:-1])


_CYCLE_TOKEN = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation like ``(1 2 3)(4 5)`` with 1-based labels.

    Whitespace is insignificant; multi-digit labels must be space-separated.
    ``()`` or an empty string denotes the identity.  Fixed points above the
    largest mentioned label are included when ``degree`` is given.
    """
    body = re.sub(_CYCLE_TOKEN, "", text.replace(",", " "))
    if body.strip():
        raise ValueError(f"unparsable cycle notation: {text!r}")
    cycles = []
    maxlabel = 0
    for group in _CYCLE_TOKEN.findall(text.replace(",", " ")):
        labels = [int(tok) for tok in group.split()]
        if any(lab < 1 for lab in labels):
            raise ValueError("cycle labels are 1-based positive integers")
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated label inside a cycle: {group!r}")
        if labels:
            maxlabel = max(maxlabel, max(labels))
            cycles.append([lab - 1 for lab in labels])
    if degree is None:
        degree = maxlabel
    if degree < maxlabel:
        raise ValueError(f"degree {degree} smaller than largest label {maxlabel}")
    flat = [x for c in cycles for x in c]
    if len(set(flat)) != len(flat):
        raise ValueError(f"label repeated across cycles: {text!r}")
    return Permutation.from_cycles(cycles, degree)


# -- partitions -------------------------------------------------------------


def check_partition(mu) -> Partition:
    mu = tuple(int(m) for m in mu)
    if any(m <= 0 for m in mu):
        raise NegativeWeight(f"partition parts must be positive: {mu!r}")
    if list(mu) != sorted(mu, reverse=True):
        raise ValueError(f"partition parts must be sorted descending: {mu!r}")
    return mu


def sort_parts(mu) -> Partition:
    """Canonicalize arbitrary positive parts into a descending partition."""
    mu = tuple(sorted((int(m) for m in mu), reverse=True))
    if any(m <= 0 for m in mu):
        raise NegativeWeight(f"partition parts must be positive: {mu!r}")
    return mu


@lru_cache(maxsize=None)
def partitions_of(k: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of k in reverse lexicographic order, e.g. for k=4:
    (4), (3,1), (2,2), (2,1,1), (1,1,1,1)."""
    if k < 0:
        raise NegativeWeight(f"cannot partition negative weight {k}")
    if max_part is None:
        max_part = k
    if k == 0:
        return ((),)
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate_partition(mu: Partition) -> Partition:
    if not mu:
        return ()
    return tuple(sum(1 for m in mu if m > i) for i in range(mu[0]))


def hook_lengths(mu: Partition) -> list[int]:
    """Hook lengths of all boxes, row by row."""
    conj = conjugate_partition(mu)
    out = []
    for i, row in enumerate(mu):
        for j in range(row):
            out.append(row - j + conj[j] - i - 1)
    return out


def contents(mu: Partition) -> tuple[int, ...]:
    """Box contents j - i, row by row (0-based matrix coordinates)."""
    out = []
    for i, row in enumerate(mu):
        for j in range(row):
            out.append(j - i)
    return tuple(out)


def partition_data(mu: Partition) -> tuple[int, tuple[int, ...]]:
    """(dimension of the irreducible, tuple of box contents)."""
    mu = check_partition(mu)
    k = sum(mu)
    dim = factorial(k)
    for h in hook_lengths(mu):
        dim //= h
    return dim, contents(mu)


def class_size(mu: Partition) -> int:
    """Size of the conjugacy class with cycle type mu in S_{|mu|}."""
    mu = check_partition(mu)
    z = 1
    mult: dict[int, int] = {}
    for m in mu:
        mult[m] = mult.get(m, 0) + 1
    for m, cnt in mult.items():
        z *= m**cnt * factorial(cnt)
    return factorial(sum(mu)) // z


def representative(mu: Partition) -> Permutation:
    """Deterministic class representative: cycles laid out left to right."""
    mu = check_partition(mu)
    images = []
    base = 0
    for m in mu:
        images.extend(list(range(base + 1, base + m)) + [base])
        base += m
    return Permutation(images)


def _border_strips(lam: Partition, length: int):
    """Yield (smaller partition, height) for each removable border strip."""
    n = len(lam)
    for i in range(n):
        for j in range(i, n):
            tail = lam[i] - length + (j - i)
            if tail < 0:
                continue
            nu = list(lam)
            for m in range(i, j):
                nu[m] = lam[m + 1] - 1
            nu[j] = tail
            # the strip must take at least one cell from row j and leave a
            # weakly decreasing shape
            if tail > lam[j] - 1:
                continue
            ok = True
            for m in range(max(i - 1, 0), min(j + 1, n - 1)):
                if nu[m] < nu[m + 1]:
                    ok = False
                    break
            if not ok:
                continue
            while nu and nu[-1] == 0:
                nu.pop()
            yield tuple(nu), j - i


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character chi^lam at class mu via Murnaghan-Nakayama."""
    lam = check_partition(lam)
    mu = check_partition(mu)
    if sum(lam) != sum(mu):
        raise WeightMismatch(f"|{lam}| != |{mu}|")
    if not lam:
        return 1
    r = mu[0]
    total = 0
    for nu, height in _border_strips(lam, r):
        total += (-1) ** height * character(nu, mu[1:])
    return total


def character_table(k: int) -> dict[tuple[Partition, Partition], int]:
    parts = partitions_of(k)
    return {(lam, mu): character(lam, mu) for lam in parts for mu in parts}


# -- group algebra helpers ---------------------------------------------------


def algebra_mul(a: dict, b: dict) -> dict:
    """Product in the rational group algebra; dicts map Permutation -> coeff."""
    out: dict[Permutation, Fraction] = {}
    for p, cp in a.items():
        for q, cq in b.items():
            r = p * q
            c = out.get(r)
            out[r] = cp * cq if c is None else c + cp * cq
    return {p: c for p, c in out.items() if c}


def jucys_murphy_product(k: int, x) -> dict:
    """The group algebra element prod_{i=1..k} (x + J_i), J_i = sum of (j i).

    Accepts any exact scalar x; multiplication is right-to-left composition.
    """
    acc = {Permutation.identity(k): Fraction(1) * x**0}
    for i in range(k):
        # multiply on the right by x + J_{i+1}; J_1 (i = 0) is empty
        term: dict[Permutation, object] = {}
        for p, c in acc.items():
            cx = c * x
            if cx:
                prev = term.get(p)
                term[p] = cx if prev is None else prev + cx
            for j in range(i):
                q = p * Permutation.transposition(j, i, k)
                prev = term.get(q)
                term[q] = c if prev is None else prev + c
        acc = term
    return {p: c for p, c in acc.items() if c}


def jucys_cycle_identity_check(k: int, xmax: int) -> bool:
    """Verify prod (x + J_i) = sum_sigma x^{#cycles(sigma)} sigma for integer
    x = 0..xmax, comparing group algebra elements exactly."""
    if not 1 <= k <= 6:
        raise DegreeTooLarge(f"identity check supports 1 <= k <= 6, got {k}")
    from itertools import permutations as iterperm

    everyone = [Permutation(p) for p in iterperm(range(k))]
    for x in range(xmax + 1):
        lhs = jucys_murphy_product(k, Fraction(x))
        rhs = {p: Fraction(x) ** p.num_cycles() for p in everyone}
        rhs = {p: c for p, c in rhs.items() if c}
        if lhs != rhs:
            return False
    return True
