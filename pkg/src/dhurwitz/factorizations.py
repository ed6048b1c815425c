"""Brute-force ground truth: monotone transposition factorisations and
bipartite-map pair counts.

A monotone factorisation of sigma of length r is a sequence of transpositions
(a_1 b_1) ... (a_r b_r) with a_i < b_i, b_1 <= ... <= b_r, whose right-to-left
product equals sigma.  Its weight is t^(number of distinct b_i).  Everything
here enumerates explicitly; no recursions or character sums are used, so these
routines serve as independent cross-checks for the fast engines.

Points are 0-based internally; reported transpositions are 1-based pairs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _iter_permutations
from typing import NamedTuple

from .permutations import (
    Partition,
    Permutation,
    check_partition,
    representative,
)
from .polys import Poly


class BoundExceeded(ValueError):
    """Enumeration request outside the supported brute-force range."""


class MonotoneFactorisation(NamedTuple):
    """A monotone factorisation; transpositions are 1-based (a, b) with a < b,
    multiplied right-to-left."""

    transpositions: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.transpositions)

    @property
    def hive_number(self) -> int:
        return len({b for _, b in self.transpositions})

    def is_strict(self) -> bool:
        bs = [b for _, b in self.transpositions]
        return all(x < y for x, y in zip(bs, bs[1:]))

    def product(self, degree: int) -> Permutation:
        p = Permutation.identity(degree)
        for a, b in self.transpositions:
            p = p * Permutation.transposition(a - 1, b - 1, degree)
        return p


def _check_bounds(k: int, r: int) -> None:
    if k > 8 or r > 10:
        raise BoundExceeded(f"supported range is degree <= 8 and length <= 10; got degree {k}, length {r}")
    if r < 0:
        raise BoundExceeded(f"length must be >= 0, got {r}")


def _num_cycles(images: list[int]) -> int:
    seen = [False] * len(images)
    n = 0
    for s in range(len(images)):
        if not seen[s]:
            n += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = images[x]
    return n


def _connected(edges, k: int) -> bool:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = k
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps == 1


def enumerate_monotone(sigma: Permutation, r: int) -> list[MonotoneFactorisation]:
    """All monotone factorisations of sigma with exactly r transpositions,
    in lexicographic order of the (a, b) pair sequence."""
    k = sigma.degree
    _check_bounds(k, r)
    pairs = [(a, b) for b in range(1, k) for a in range(b)]
    pairs.sort()
    rho = list(sigma.images)
    rho_inv = [0] * k
    for x, y in enumerate(rho):
        rho_inv[y] = x
    out: list[MonotoneFactorisation] = []
    stack: list[tuple[int, int]] = []
    dist0 = k - _num_cycles(rho)

    def apply(a: int, b: int) -> None:
        pa, pb = rho_inv[a], rho_inv[b]
        rho[pa], rho[pb] = b, a
        rho_inv[a], rho_inv[b] = pb, pa

    def same_cycle(a: int, b: int) -> bool:
        x = rho[a]
        while x != a:
            if x == b:
                return True
            x = rho[x]
        return False

    def walk(depth: int, bmin: int, dist: int) -> None:
        if depth == r:
            if dist == 0:
                out.append(MonotoneFactorisation(tuple((a + 1, b + 1) for a, b in stack)))
            return
        remaining = r - depth
        for a, b in pairs:
            if b < bmin:
                continue
            # multiplying by (a b) changes the distance to the identity by +-1
            d2 = dist - 1 if same_cycle(a, b) else dist + 1
            if d2 <= remaining - 1 and (remaining - 1 - d2) % 2 == 0:
                apply(a, b)
                stack.append((a, b))
                walk(depth + 1, b, d2)
                stack.pop()
                apply(a, b)

    if dist0 <= r and (r - dist0) % 2 == 0:
        walk(0, 0, dist0)
    return out


def weighted_counts(
    sigma: Permutation, rmax: int, transitive_only: bool = False
) -> list[Poly]:
    """Entry r is the sum of t^(hive number) over all (transitive) monotone
    factorisations of sigma with exactly r transpositions, r = 0..rmax."""
    k = sigma.degree
    _check_bounds(k, rmax)
    counts: list[dict[int, int]] = [{} for _ in range(rmax + 1)]
    rho = list(sigma.images)
    rho_inv = [0] * k
    for x, y in enumerate(rho):
        rho_inv[y] = x
    stack: list[tuple[int, int]] = []

    def same_cycle(a: int, b: int) -> bool:
        x = rho[a]
        while x != a:
            if x == b:
                return True
            x = rho[x]
        return False

    def record(depth: int, hive: int) -> None:
        if transitive_only and not _connected(stack, k):
            return
        bucket = counts[depth]
        bucket[hive] = bucket.get(hive, 0) + 1

    def walk(depth: int, bmin: int, dist: int, hive: int) -> None:
        if dist == 0:
            record(depth, hive)
        if depth == rmax:
            return
        remaining = rmax - depth
        for b in range(bmin, k):
            h2 = hive + (1 if not stack or stack[-1][1] != b else 0)
            for a in range(b):
                d2 = dist - 1 if same_cycle(a, b) else dist + 1
                if d2 <= remaining - 1:
                    pa, pb = rho_inv[a], rho_inv[b]
                    rho[pa], rho[pb] = b, a
                    rho_inv[a], rho_inv[b] = pb, pa
                    stack.append((a, b))
                    walk(depth + 1, b, d2, h2)
                    stack.pop()
                    pa, pb = rho_inv[a], rho_inv[b]
                    rho[pa], rho[pb] = b, a
                    rho_inv[a], rho_inv[b] = pb, pa
        return

    walk(0, 1 if k else 0, k - _num_cycles(rho), 0)
    polys = []
    for bucket in counts:
        coeffs = [Fraction(0)] * (max(bucket) + 1 if bucket else 0)
        for h, n in bucket.items():
            coeffs[h] = Fraction(n)
        polys.append(Poly(coeffs))
    return polys


def strictly_monotone(sigma: Permutation) -> MonotoneFactorisation:
    """The unique strictly monotone factorisation (b strictly increasing).

    Its length is degree minus number of cycles; peeling the largest moved
    point L with the transposition (sigma^{-1}(L), L) is forced at each step.
    """
    k = sigma.degree
    _check_bounds(k, 0)
    images = list(sigma.images)
    rev: list[tuple[int, int]] = []
    while True:
        top = -1
        for x in range(k - 1, -1, -1):
            if images[x] != x:
                top = x
                break
        if top < 0:
            break
        a = images.index(top)
        rev.append((a, top))
        # multiply on the right by (a, top): now the product fixes top
        images[a], images[top] = images[top], images[a]
    return MonotoneFactorisation(tuple((a + 1, b + 1) for a, b in reversed(rev)))


# -- bipartite map (dessin) pair model --------------------------------------


@lru_cache(maxsize=None)
def _dessin_counts(mu: Partition) -> tuple[dict, dict]:
    """For the fixed base permutation with cycle type mu, tally pairs
    (alpha, beta) with alpha*beta = base by (genus, #cycles(alpha)).

    Returns (all pairs, transitive pairs); genus comes from the Euler
    characteristic and may be negative for non-transitive pairs.
    """
    mu = check_partition(mu)
    d = sum(mu)
    if d > 7:
        raise BoundExceeded(f"pair model supports |mu| <= 7, got {d}")
    n = len(mu)
    base = representative(mu)
    disconnected: dict[int, dict[int, int]] = {}
    connected: dict[int, dict[int, int]] = {}
    for raw in _iter_permutations(range(d)):
        alpha = Permutation(raw)
        beta = alpha.inverse() * base
        ca = alpha.num_cycles()
        cb = beta.num_cycles()
        chi = ca + cb - d + n
        if (2 - chi) % 2:
            continue  # cannot happen: parity of cycle counts is constrained
        g = (2 - chi) // 2
        disconnected.setdefault(g, {})
        disconnected[g][ca] = disconnected[g].get(ca, 0) + 1
        # transitivity of <alpha, beta> on the d darts
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = d
        for p in (alpha, beta):
            for cyc in p.cycles():
                for u, v in zip(cyc, cyc[1:]):
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[ru] = rv
                        comps -= 1
        if comps == 1:
            connected.setdefault(g, {})
            connected[g][ca] = connected[g].get(ca, 0) + 1
    return disconnected, connected


def _counts_to_poly(bucket: dict[int, int], mu: Partition) -> Poly:
    prod = 1
    for m in mu:
        prod *= m
    coeffs = [Fraction(0)] * (max(bucket) + 1 if bucket else 0)
    for h, cnt in bucket.items():
        coeffs[h] = Fraction(cnt, prod)
    return Poly(coeffs)


def dessin_disconnected_count(mu, g: int) -> Poly:
    """Weighted count of all (possibly disconnected) pairs at genus g,
    divided by the product of the parts; polynomial in t."""
    mu = check_partition(mu)
    disconnected, _ = _dessin_counts(mu)
    return _counts_to_poly(disconnected.get(g, {}), mu)


def dessin_connected_count(mu, g: int) -> Poly:
    """Weighted count of transitive pairs at genus g, divided by the product
    of the parts; polynomial in t."""
    mu = check_partition(mu)
    _, connected = _dessin_counts(mu)
    return _counts_to_poly(connected.get(g, {}), mu)
