"""Production engines for the two weighted enumeration families.

The ``monotone`` family counts transitive monotone transposition
factorisations of a permutation, weighted by ``t`` to the number of
distinct top points and normalised by the product of cycle lengths.  The
``dessin`` family counts connected bicoloured ribbon graphs with ``n``
labelled faces of prescribed degrees, weighted by ``t`` per black
vertex.  Both are computed by memoized cut-and-join recursions on the
total number of transpositions (equivalently edges) ``r``; one-point
values also satisfy a linear three-term recursion.  Character sums give
the disconnected counterparts directly, and an inclusion-exclusion over
set partitions bridges the two.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .factorizations import BoundExceeded
from .permutations import (
    Partition,
    character,
    check_partition,
    hook_lengths,
    contents,
    partition_data,
    partitions_of,
    sort_parts,
)
from .polys import Poly, TruncSeries

__all__ = [
    "connected_from_disconnected",
    "dessin_D",
    "disconnected_table",
    "monotone_H",
    "narayana",
    "one_point_H",
]

FAMILIES = ("monotone", "dessin")

MAX_DISCONNECTED_WEIGHT = 8

_ZERO = Poly()
_ONE = Poly((Fraction(1),))
_T = Poly.variable()


def _check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return family


# ---------------------------------------------------------------------------
# Cut-and-join recursions
# ---------------------------------------------------------------------------


def monotone_H(g: int, mu) -> Poly:
    """Connected weighted monotone factorisation count for genus ``g``.

    Defined by distinguishing the largest part ``m`` of ``mu`` and
    recursing on the factorisation length ``r = |mu| + 2g - 2 + n``:
    merging ``m`` with another part, shrinking ``m`` by one with weight
    ``t - 1``, or splitting ``m`` into ``alpha + beta`` across a handle
    or across two components.  Seeded by the value 1 at ``g = 0``,
    ``mu = (1,)``.
    """
    if g < 0:
        return _ZERO
    return _monotone(g, check_partition(mu))


@lru_cache(maxsize=None)
def _monotone(g: int, mu: Partition) -> Poly:
    if not mu:
        return _ZERO
    if mu == (1,):
        return _ONE if g == 0 else _ZERO
    m, rest = mu[0], mu[1:]
    total = _ZERO
    for i, other in enumerate(rest):
        merged = sort_parts((m + other,) + rest[:i] + rest[i + 1 :])
        total = total + (m + other) * _monotone(g, merged)
    if m >= 2:
        total = total + (m - 1) * ((_T - 1) * _monotone(g, sort_parts((m - 1,) + rest)))
    for alpha in range(1, m):
        beta = m - alpha
        pieces = _ZERO
        if g >= 1:
            pieces = _monotone(g - 1, sort_parts((alpha, beta) + rest))
        for g1 in range(g + 1):
            for left, right in _index_splits(len(rest)):
                first = _monotone(g1, sort_parts((alpha,) + tuple(rest[i] for i in left)))
                if not first:
                    continue
                second = _monotone(
                    g - g1, sort_parts((beta,) + tuple(rest[i] for i in right))
                )
                if second:
                    pieces = pieces + first * second
        total = total + (alpha * beta) * pieces
    return total.scale(Fraction(1, m))


def dessin_D(g: int, mu) -> Poly:
    """Connected weighted bicoloured graph count for genus ``g``.

    Same recursion shape as :func:`monotone_H` but merging two face
    degrees loses one edge, the shrink weight is ``t + 1``, and a
    split loses one edge; seeded by the value ``t`` at ``g = 0``,
    ``mu = (1,)``.
    """
    if g < 0:
        return _ZERO
    return _dessin(g, check_partition(mu))


@lru_cache(maxsize=None)
def _dessin(g: int, mu: Partition) -> Poly:
    if not mu:
        return _ZERO
    if mu == (1,):
        return Poly((0, Fraction(1))) if g == 0 else _ZERO
    m, rest = mu[0], mu[1:]
    total = _ZERO
    for i, other in enumerate(rest):
        merged = sort_parts((m + other - 1,) + rest[:i] + rest[i + 1 :])
        total = total + (m + other - 1) * _dessin(g, merged)
    if m >= 2:
        total = total + (m - 1) * ((_T + 1) * _dessin(g, sort_parts((m - 1,) + rest)))
    for alpha in range(1, m - 1):
        beta = m - 1 - alpha
        pieces = _ZERO
        if g >= 1:
            pieces = _dessin(g - 1, sort_parts((alpha, beta) + rest))
        for g1 in range(g + 1):
            for left, right in _index_splits(len(rest)):
                first = _dessin(g1, sort_parts((alpha,) + tuple(rest[i] for i in left)))
                if not first:
                    continue
                second = _dessin(
                    g - g1, sort_parts((beta,) + tuple(rest[i] for i in right))
                )
                if second:
                    pieces = pieces + first * second
        total = total + (alpha * beta) * pieces
    return total.scale(Fraction(1, m))


@lru_cache(maxsize=None)
def _index_splits(n: int) -> tuple:
    """All ordered two-block splittings of ``range(n)``, empties included."""
    out = []
    indices = tuple(range(n))
    for size in range(n + 1):
        for left in combinations(indices, size):
            member = set(left)
            out.append((left, tuple(i for i in indices if i not in member)))
    return tuple(out)


# ---------------------------------------------------------------------------
# One-point linear recursion
# ---------------------------------------------------------------------------


def one_point_H(g: int, d: int) -> Poly:
    """One-part monotone value by the linear three-term recursion.

    Valid only for ``d >= 3`` (the relation fails at ``d = 2``), so it
    is seeded directly with the values at ``d = 1`` and ``d = 2``.
    """
    if d < 1:
        raise ValueError(f"part {d} must be >= 1")
    if g < 0:
        return _ZERO
    return _one_point(g, d)


@lru_cache(maxsize=None)
def _one_point(g: int, d: int) -> Poly:
    if g < 0:
        return _ZERO
    if d == 1:
        return _ONE if g == 0 else _ZERO
    if d == 2:
        return Poly((0, Fraction(1, 2)))
    total = (d - 1) * (2 * d - 3) * ((_T + 1) * _one_point(g, d - 1))
    total = total - (d - 2) * (d - 3) * ((_T - 1) ** 2 * _one_point(g, d - 2))
    total = total + d * d * (d - 1) * (d - 1) * _one_point(g - 1, d)
    return total.scale(Fraction(1, d * d))


def narayana(m: int) -> Poly:
    """Weighted ballot-count polynomial of degree ``m``.

    Coefficient of ``t^i`` is ``binom(m, i) * binom(m, i - 1) / m``;
    ``m + 1`` times the genus-zero one-part value at ``m + 1``.
    """
    if m < 1:
        raise ValueError(f"index {m} must be >= 1")
    coeffs = [Fraction(0)] * (m + 1)
    for i in range(1, m + 1):
        coeffs[i] = Fraction(math.comb(m, i) * math.comb(m, i - 1), m)
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# Character-sum disconnected tables
# ---------------------------------------------------------------------------


def disconnected_table(family: str, g: int, mu) -> Poly:
    """Disconnected count, directly from a character sum.

    The genus may be negative: the Euler characteristic is additive
    over components, not the genus.  The count is the coefficient of a
    single power of a bookkeeping variable in a finite character sum,
    so no recursion over topologies is involved.
    """
    _check_family(family)
    mu = check_partition(mu)
    if sum(mu) > MAX_DISCONNECTED_WEIGHT:
        raise BoundExceeded(
            f"|mu| = {sum(mu)} exceeds {MAX_DISCONNECTED_WEIGHT}"
        )
    return _disconnected(family, g, mu)


@lru_cache(maxsize=None)
def _disconnected(family: str, g: int, mu: Partition) -> Poly:
    k, n = sum(mu), len(mu)
    if family == "monotone":
        power = k + 2 * g - 2 + n
    else:
        power = 2 * g - 2 + n + k
    if power < 0:
        return _ZERO
    norm = Fraction(1, math.prod(mu))
    total = _ZERO
    for lam in partitions_of(k):
        chi = character(lam, mu)
        if chi == 0:
            continue
        if family == "monotone":
            dim, cells = partition_data(lam)
            series = TruncSeries((_ONE,), power)
            for c in cells:
                factor = TruncSeries((_ONE, (_T - 1) * c), power)
                if c:
                    geometric = TruncSeries(
                        [Fraction(c) ** i for i in range(power + 1)], power
                    )
                    factor = factor * geometric
                series = series * factor
            weight = Fraction(dim * chi, math.factorial(k))
            total = total + weight * series[power]
        else:
            hooks = hook_lengths(lam)
            product = Poly((_ONE,))
            for c in contents(lam):
                product = product * Poly((Fraction(1), Fraction(c)))
                product = product * Poly((_T, Fraction(c)))
            weight = Fraction(chi, math.prod(hooks))
            if power <= product.degree:
                total = total + weight * product[power]
    return total.scale(norm)


# ---------------------------------------------------------------------------
# Connected/disconnected bridge
# ---------------------------------------------------------------------------


def connected_from_disconnected(family: str, g: int, mu) -> Poly:
    """Connected count recovered from disconnected tables alone.

    Inclusion-exclusion over set partitions of the parts, where a
    splitting into ``m`` blocks of genera ``g_j`` contributes at genus
    ``g = g_1 + ... + g_m - m + 1`` (additivity of the transposition
    count ``r``).  Independent of the cut-and-join engines.
    """
    _check_family(family)
    mu = check_partition(mu)
    if sum(mu) > MAX_DISCONNECTED_WEIGHT:
        raise BoundExceeded(
            f"|mu| = {sum(mu)} exceeds {MAX_DISCONNECTED_WEIGHT}"
        )
    return _bridge(family, g, mu)


@lru_cache(maxsize=None)
def _bridge(family: str, g: int, mu: Partition) -> Poly:
    if g < 0:
        return _ZERO
    total = _disconnected(family, g, mu)
    n = len(mu)
    for blocks in _set_partitions(n):
        m = len(blocks)
        if m == 1:
            continue
        parts = [sort_parts(tuple(mu[i] for i in block)) for block in blocks]
        for genera in _compositions(g + m - 1, m):
            product = _ONE
            for block_mu, block_g in zip(parts, genera):
                product = product * _bridge(family, block_g, block_mu)
                if not product:
                    break
            if product:
                total = total - product
    return total


def _set_partitions(n: int):
    """Set partitions of ``range(n)`` as tuples of index blocks."""
    if n == 0:
        yield ()
        return
    for rest in _set_partitions(n - 1):
        last = n - 1
        yield rest + ((last,),)
        for i, block in enumerate(rest):
            yield rest[:i] + (block + (last,),) + rest[i + 1 :]


def _compositions(total: int, m: int):
    """All ways to write ``total`` as an ordered sum of ``m`` naturals."""
    if total < 0:
        return
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, m - 1):
            yield (head,) + tail
