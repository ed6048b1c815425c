"""Exact Weingarten calculus for the rank-``M`` projector ensemble.

The central object is a class function ``Wg(sigma)`` on symmetric groups
whose values are rational functions of two matrix dimensions ``M`` and
``N``.  It is computed here by two independent routes — a character-sum
formula and a linear solve against the defining orthogonality relations —
and exposed through the convolution formula for monomial integrals.  A
large-``N`` re-expansion connects the same values to weighted monotone
factorisation counts, which is checked coefficient by coefficient.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

from .factorizations import BoundExceeded, weighted_counts
from .mnrat import MNRational, large_n_expansion
from .permutations import (
    Partition,
    Permutation,
    algebra_mul,
    character,
    class_size,
    compose,
    cycle_type,
    jucys_murphy_product,
    partition_data,
    partitions_of,
    representative,
    restrict_top,
)
from .polys import Poly, RatFn

__all__ = [
    "LengthMismatch",
    "SingularSystem",
    "WeingartenTable",
    "convolution_integral",
    "jucys_weingarten_identity_check",
    "largeN_check",
    "orthogonality_residual",
    "sw_character",
    "sw_orthogonality_table",
    "uw_leading",
]

MAX_CHARACTER_DEGREE = 8
MAX_TABLE_DEGREE = 6


class SingularSystem(RuntimeError):
    """The orthogonality linear system unexpectedly lost full rank."""


class LengthMismatch(ValueError):
    """Row and column index sequences of an integrand differ in length."""


class WeingartenTable(NamedTuple):
    """All values of ``Wg`` on a symmetric group, one per cycle type."""

    k: int
    values: dict[Partition, MNRational]

    def lookup(self, sigma: Permutation) -> MNRational:
        return self.values[cycle_type(sigma)]


# ---------------------------------------------------------------------------
# Character-sum route
# ---------------------------------------------------------------------------


def sw_character(sigma: Permutation) -> MNRational:
    """``Wg(sigma)`` via the character sum over partitions of ``k``.

    Each partition ``lam`` contributes ``dim(lam) * chi_lam(sigma) / k!``
    times the product over cells of ``(M + content) / (N + content)``.
    Values depend only on the cycle type and are cached per class.
    """
    return _sw_class(cycle_type(sigma))


@lru_cache(maxsize=None)
def _sw_class(mu: Partition) -> MNRational:
    k = sum(mu)
    if k > MAX_CHARACTER_DEGREE:
        raise BoundExceeded(f"degree {k} exceeds {MAX_CHARACTER_DEGREE}")
    var_m = MNRational.var_m()
    var_n = MNRational.var_n()
    total = MNRational.from_scalar(0)
    for lam in partitions_of(k):
        chi = character(lam, mu)
        if chi == 0:
            continue
        dim, cells = partition_data(lam)
        term = MNRational.from_scalar(Fraction(dim * chi, math.factorial(k)))
        for c in cells:
            term = term * (var_m + c) / (var_n + c)
        total = total + term
    return total


def uw_leading(sigma: Permutation) -> RatFn:
    """Leading coefficient of ``Wg(sigma)`` in ``M``, as a function of ``N``.

    The denominator of ``Wg`` is free of ``M``, so this is the top-degree
    numerator coefficient over that denominator.  It coincides with the
    classical unitary-group Weingarten function.
    """
    return sw_character(sigma).leading_in_m()


# ---------------------------------------------------------------------------
# Orthogonality-relation route
# ---------------------------------------------------------------------------


def _relation_terms(sigma: Permutation):
    """Decompose the defining relation for ``Wg(sigma)``.

    Returns ``(same, down)`` where ``same`` maps cycle types of the same
    degree to rational coefficients (the ``sigma o (i k)`` sum, already
    negated onto the left side) and ``down`` maps cycle types one degree
    lower to their right-side coefficients.
    """
    k = sigma.degree
    var_m = MNRational.var_m()
    var_n = MNRational.var_n()
    inv_n = MNRational.from_scalar(1) / var_n
    same: dict[Partition, MNRational] = {}
    down: dict[Partition, MNRational] = {}

    def bump(table, key, coeff):
        table[key] = table.get(key, MNRational.from_scalar(0)) + coeff

    for i in range(k - 1):
        tau = compose(sigma, Permutation.transposition(i, k - 1, k))
        bump(same, cycle_type(tau), inv_n)
        if sigma.images[i] == k - 1:
            bump(down, cycle_type(restrict_top(tau)), inv_n)
    if sigma.images[k - 1] == k - 1:
        bump(down, cycle_type(restrict_top(sigma)), var_m / var_n)
    return same, down


@lru_cache(maxsize=None)
def sw_orthogonality_table(k: int) -> WeingartenTable:
    """Solve the orthogonality relations for all classes of degree ``k``.

    One equation per cycle type (the relation is constant on classes)
    gives a square system over exact bivariate rationals; the right side
    uses the table of degree ``k - 1``, seeded by the empty permutation
    having value 1.
    """
    if not 1 <= k <= MAX_TABLE_DEGREE:
        raise BoundExceeded(f"table degree {k} outside 1..{MAX_TABLE_DEGREE}")
    if k == 1:
        lower = {(): MNRational.from_scalar(1)}
    else:
        lower = sw_orthogonality_table(k - 1).values

    classes = partitions_of(k)
    index = {mu: a for a, mu in enumerate(classes)}
    size = len(classes)
    zero = MNRational.from_scalar(0)
    one = MNRational.from_scalar(1)
    matrix = [[zero] * size for _ in range(size)]
    rhs = [zero] * size
    for mu, a in index.items():
        matrix[a][a] = one
        same, down = _relation_terms(representative(mu))
        for nu, coeff in same.items():
            matrix[a][index[nu]] = matrix[a][index[nu]] + coeff
        for nu, coeff in down.items():
            rhs[a] = rhs[a] + coeff * lower[nu]

    solution = _solve(matrix, rhs)
    return WeingartenTable(k, dict(zip(classes, solution)))


def _solve(matrix: list[list[MNRational]], rhs: list[MNRational]) -> list[MNRational]:
    """Gaussian elimination over exact bivariate rationals."""
    size = len(rhs)
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = MNRational.from_scalar(1) / matrix[col][col]
        matrix[col] = [entry * inv for entry in matrix[col]]
        rhs[col] = rhs[col] * inv
        for row in range(size):
            if row == col or not matrix[row][col]:
                continue
            factor = matrix[row][col]
            matrix[row] = [
                matrix[row][c] - factor * matrix[col][c] for c in range(size)
            ]
            rhs[row] = rhs[row] - factor * rhs[col]
    return rhs


def orthogonality_residual(
    sigma: Permutation,
    lookup: Callable[[Permutation], MNRational] | None = None,
) -> MNRational:
    """Left minus right side of the defining relation; zero for true values."""
    if lookup is None:
        lookup = sw_character
    same, down = _relation_terms(sigma)
    residual = lookup(sigma)
    for nu, coeff in same.items():
        residual = residual + coeff * lookup(representative(nu))
    for nu, coeff in down.items():
        residual = residual - coeff * lookup(representative(nu))
    return residual


# ---------------------------------------------------------------------------
# Convolution formula
# ---------------------------------------------------------------------------


def convolution_integral(
    i: Sequence[int], j: Sequence[int], k: int | None = None
) -> MNRational:
    """Integral of the monomial ``prod_a S[i_a, j_a]`` over the ensemble.

    Sums ``Wg(sigma)`` over all permutations whose delta pattern
    ``i[sigma(a)] == j[a]`` matches; only the equality structure of the
    index sequences matters.
    """
    rows = tuple(i)
    cols = tuple(j)
    if k is None:
        k = len(rows)
    if len(rows) != k or len(cols) != k:
        raise LengthMismatch(
            f"index sequences of lengths {len(rows)}, {len(cols)} for k={k}"
        )
    if k > MAX_TABLE_DEGREE:
        raise BoundExceeded(f"degree {k} exceeds {MAX_TABLE_DEGREE}")
    total = MNRational.from_scalar(0)
    for images in itertools.permutations(range(k)):
        if all(rows[images[a]] == cols[a] for a in range(k)):
            total = total + _sw_class(cycle_type(Permutation(images)))
    return total


# ---------------------------------------------------------------------------
# Large-N bridge to monotone factorisation counts
# ---------------------------------------------------------------------------


def largeN_check(sigma: Permutation, rmax: int) -> bool:
    """Compare the ``1/N`` expansion of ``Wg(sigma)`` with weighted counts.

    With ``t = 1 - N/M`` held fixed, the coefficient of ``(-1/N)**r``
    in ``(1 - t)**k * Wg(sigma)`` must equal the weight polynomial of
    monotone factorisations of ``sigma`` of length ``r``.
    """
    k = sigma.degree
    if k > 5 or rmax > 6:
        raise BoundExceeded(f"largeN_check limited to k <= 5, rmax <= 6")
    coeffs = large_n_expansion(sw_character(sigma), rmax)
    counts = weighted_counts(sigma, rmax, transitive_only=False)
    t = Poly.variable()
    scale = RatFn((1 - t) ** k)
    for r in range(rmax + 1):
        expected = RatFn(counts[r])
        actual = coeffs[r] * scale
        if r % 2:
            actual = -actual
        if actual != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# Jucys-Murphy identity
# ---------------------------------------------------------------------------


def jucys_weingarten_identity_check(k: int, m0, n0) -> bool:
    """Check ``sum_sigma Wg(sigma) sigma = prod (m0 + J_i) / (n0 + J_i)``.

    Both sides are evaluated at rational ``(m0, n0)`` as elements of the
    group algebra of degree ``k``: the right side multiplies the
    numerator product by a genuine group-algebra inverse of the
    denominator product, obtained from a linear solve rather than any
    character shortcut, so the comparison is independent of the
    character route used by :func:`sw_character`.
    """
    m0 = Fraction(m0)
    n0 = Fraction(n0)
    left = {}
    for images in itertools.permutations(range(k)):
        sigma = Permutation(images)
        left[sigma] = _sw_class(cycle_type(sigma)).eval(m0, n0)

    numer = jucys_murphy_product(k, m0)
    denom = jucys_murphy_product(k, n0)
    right = algebra_mul(numer, _algebra_inverse(denom, k))
    for sigma, value in left.items():
        if right.pop(sigma, Fraction(0)) != value:
            return False
    return not any(right.values())


def _algebra_inverse(element: dict, k: int) -> dict:
    """Invert a group-algebra element by solving its multiplication matrix."""
    basis = [Permutation(images) for images in itertools.permutations(range(k))]
    where = {sigma: a for a, sigma in enumerate(basis)}
    size = len(basis)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for sigma, coeff in element.items():
        if not coeff:
            continue
        for b, tau in enumerate(basis):
            matrix[where[compose(sigma, tau)]][b] += coeff
    rhs = [Fraction(0)] * size
    rhs[where[Permutation.identity(k)]] = Fraction(1)

    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"group-algebra element is not invertible")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / matrix[col][col]
        matrix[col] = [entry * inv for entry in matrix[col]]
        rhs[col] *= inv
        for row in range(size):
            if row == col or not matrix[row][col]:
                continue
            factor = matrix[row][col]
            matrix[row] = [
                matrix[row][c] - factor * matrix[col][c] for c in range(size)
            ]
            rhs[row] -= factor * rhs[col]
    return {
        sigma: value for sigma, value in zip(basis, rhs) if value
    }
