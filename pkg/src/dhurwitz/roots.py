"""Exact real-root machinery for rational-coefficient polynomials.

Everything here is decided in exact arithmetic: square-free reduction,
Sturm chains, bisection-based isolation into disjoint boxes, and the
weak/strict interlacing predicates.  Decimal output appears only in the
presentation layer (:func:`refine_root` and the scan/table drivers);
every verdict is independent of floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .hurwitz import dessin_D, monotone_H
from .permutations import Partition, check_partition, partitions_of
from .polys import Poly, poly_squarefree, squarefree_decomposition

__all__ = [
    "BoxNotIsolating",
    "DegreeGap",
    "NotRealRooted",
    "RootBox",
    "SturmChain",
    "ZeroPolynomial",
    "conjecture_scan",
    "interlaces",
    "is_real_rooted",
    "isolate_real_roots",
    "largeg_root_table",
    "refine_root",
    "sturm_chain",
]


class ZeroPolynomial(ValueError):
    """Root queries about the zero polynomial are meaningless."""


class BoxNotIsolating(ValueError):
    """The supplied interval does not isolate a single root."""


class NotRealRooted(ValueError):
    """Interlacing is defined only between real-rooted polynomials."""


class DegreeGap(ValueError):
    """Interlacing needs degrees differing by exactly one."""


class RootBox(NamedTuple):
    """An isolating interval for one real root.

    Either ``low == high`` at an exact rational root, or the square-free
    part changes sign over ``(low, high)`` and contains exactly one root
    there.  ``multiplicity`` is the root's multiplicity in the original
    polynomial.
    """

    low: Fraction
    high: Fraction
    multiplicity: int


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class SturmChain:
    """Sturm chain of the square-free part of a polynomial."""

    __slots__ = ("polys",)

    def __init__(self, polys: Sequence[Poly]):
        object.__setattr__(self, "polys", tuple(polys))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("SturmChain is immutable")

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (_sign(p(x)) for p in self.polys) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for p in self.polys:
            s = _sign(p.leading)
            if not positive and p.degree % 2:
                s = -s
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, low: Fraction, high: Fraction) -> int:
        """Number of distinct real roots in the half-open interval (low, high]."""
        return self.variations(low) - self.variations(high)

    def count_all(self) -> int:
        return self.variations_at_infinity(False) - self.variations_at_infinity(True)


def sturm_chain(p: Poly) -> SturmChain:
    """Sturm chain starting from the square-free part of ``p``."""
    if not p:
        raise ZeroPolynomial("no Sturm chain for the zero polynomial")
    first = poly_squarefree(p)
    chain = [first]
    if first.degree > 0:
        chain.append(first.derivative())
        while chain[-1].degree > 0:
            chain.append(-(chain[-2] % chain[-1]))
            if not chain[-1]:
                chain.pop()
                break
    return SturmChain(chain)


def _root_bound(p: Poly) -> Fraction:
    """A rational ``B`` with every real root strictly inside (-B, B)."""
    lead = abs(Fraction(p.leading))
    top = max((abs(Fraction(c)) for c in p.coeffs[:-1]), default=Fraction(0))
    return Fraction(1) + top / lead


def is_real_rooted(p: Poly) -> bool:
    """True iff every complex root of ``p`` is real.

    Equivalent to the distinct-root count of the square-free part over
    the whole line equalling its degree.
    """
    if not p:
        raise ZeroPolynomial("real-rootedness of the zero polynomial")
    chain = sturm_chain(p)
    return chain.count_all() == chain.polys[0].degree


def _isolate_squarefree(s: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for all real roots of square-free ``s``.

    Sign-change intervals have endpoints that are not roots; rational
    roots hit by bisection midpoints are returned as exact points.
    Every interval handed to the recursion has non-root endpoints, so a
    Sturm count of one always certifies an interior sign-change root.
    """
    if s.degree <= 0:
        return []
    bound = _root_bound(s)
    chain = sturm_chain(s)
    out: list[tuple[Fraction, Fraction]] = []

    def split(low: Fraction, high: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((low, high))
            return
        mid = (low + high) / 2
        if s(mid) == 0:
            out.append((mid, mid))
            gap = (high - low) / 4
            while (
                s(mid - gap) == 0
                or s(mid + gap) == 0
                or chain.count(mid - gap, mid + gap) != 1
            ):
                gap /= 2
            split(low, mid - gap, chain.count(low, mid - gap))
            split(mid + gap, high, chain.count(mid + gap, high))
            return
        split(low, mid, chain.count(low, mid))
        split(mid, high, chain.count(mid, high))

    split(-bound, bound, chain.count(-bound, bound))
    return sorted(out)


def _divide_out_root(p: Poly, r: Fraction) -> Poly:
    """Exact synthetic division of ``p`` by ``(x - r)``."""
    coeffs = list(p.coeffs)
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = c + acc * r
        out.append(acc)
    if out[-1] != 0:
        raise ValueError(f"{r} is not a root")
    return Poly(list(reversed(out[:-1])))


_BOX_WIDTH = Fraction(1, 4)


def _tighten(s: Poly, low: Fraction, high: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-change interval down to width ``_BOX_WIDTH``.

    Midpoints that happen to hit the root exactly collapse the interval
    to a point.
    """
    while high - low > _BOX_WIDTH:
        mid = (low + high) / 2
        value = s(mid)
        if value == 0:
            return mid, mid
        if _sign(value) == _sign(s(low)):
            low = mid
        else:
            high = mid
    return low, high


def isolate_real_roots(p: Poly) -> list[RootBox]:
    """Disjoint isolating boxes for every real root, with multiplicities.

    Boxes are sorted ascending and tightened to width at most 1/4;
    multiplicities come from the square-free decomposition, so their sum
    over all boxes counts real roots of ``p`` with multiplicity.
    """
    if not p:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    factors = squarefree_decomposition(p)
    squarefree = poly_squarefree(p)
    boxes = []
    for low, high in _isolate_squarefree(squarefree):
        if low != high:
            low, high = _tighten(squarefree, low, high)
        boxes.append(RootBox(low, high, _owner(factors, low, high)))
    return boxes


def _owner(factors, low: Fraction, high: Fraction) -> int:
    """Multiplicity of the single root isolated by ``(low, high)``."""
    for f, mult in factors:
        if low == high:
            if f(low) == 0:
                return mult
        elif _sign(f(low)) * _sign(f(high)) < 0:
            return mult
    raise BoxNotIsolating(f"no square-free factor owns ({low}, {high})")


def _box_has_root(f: Poly, low: Fraction, high: Fraction) -> bool:
    """Whether square-free ``f`` has its (single possible) root in the box."""
    if low == high:
        return f(low) == 0
    return _sign(f(low)) * _sign(f(high)) < 0


# ---------------------------------------------------------------------------
# Refinement to decimal strings
# ---------------------------------------------------------------------------


def _format_fixed(value: int, digits: int) -> str:
    sign = "-" if value < 0 else ""
    mag = abs(value)
    if digits == 0:
        return f"{sign}{mag}"
    return f"{sign}{mag // 10**digits}.{mag % 10**digits:0{digits}d}"


def _format_exact(x: Fraction, digits: int) -> str:
    """Shortest decimal for x if it terminates within ``digits`` places."""
    scaled = x * 10**digits
    if scaled.denominator == 1:
        text = _format_fixed(scaled.numerator, digits)
        if "." in text:
            text = text.rstrip("0").rstrip(".")
        return text or "0"
    return _format_fixed(_round_scaled(x, digits), digits)


def _round_scaled(x: Fraction, digits: int) -> int:
    shifted = x * 10**digits + Fraction(1, 2)
    return shifted.numerator // shifted.denominator


def refine_root(p: Poly, box: RootBox, digits: int) -> str:
    """Decimal string for the root isolated by ``box``, to ``digits`` places.

    Exact rational roots with terminating decimals print in shortest
    form (``0``, ``-1``, ``-0.5``); all other roots are bisected until
    the rounded value is unambiguous and printed with exactly ``digits``
    decimal places.
    """
    if not p:
        raise ZeroPolynomial("cannot refine a root of the zero polynomial")
    s = poly_squarefree(p)
    low, high = box.low, box.high
    if low == high:
        if s(low) != 0:
            raise BoxNotIsolating(f"{low} is not a root")
        return _format_exact(low, digits)
    chain = sturm_chain(s)
    if s(low) == 0 or s(high) == 0 or chain.count(low, high) != 1:
        raise BoxNotIsolating(f"({low}, {high}) does not isolate a single root")
    floor_width = Fraction(1, 10 ** (digits + 60))
    target = Fraction(1, 10 ** (digits + 2))
    while True:
        while high - low > target:
            mid = (low + high) / 2
            if s(mid) == 0:
                return _format_exact(mid, digits)
            if _sign(s(mid)) == _sign(s(low)):
                low = mid
            else:
                high = mid
        a = _round_scaled(low, digits)
        b = _round_scaled(high, digits)
        if a == b:
            return _format_fixed(a, digits)
        boundary = Fraction(2 * a + 1, 2 * 10**digits)
        if s(boundary) == 0:
            return _format_fixed(_round_scaled(boundary, digits), digits)
        if high - low < floor_width:  # pragma: no cover - defensive only
            return _format_fixed(a, digits)
        target /= 2


# ---------------------------------------------------------------------------
# Interlacing
# ---------------------------------------------------------------------------


def interlaces(p: Poly, q: Poly, strict: bool = False) -> bool:
    """Whether the roots of ``p`` weakly alternate inside those of ``q``.

    Requires ``deg q = deg p + 1``; a constant ``p`` against an affine
    ``q`` is true by convention.  Shared roots are compared exactly via
    the square-free part of the product.  With ``strict=True`` the
    alternation must be strict, which excludes shared or repeated roots.
    """
    if not p or not q:
        raise ZeroPolynomial("interlacing with a zero polynomial")
    if not is_real_rooted(p) or not is_real_rooted(q):
        raise NotRealRooted("both polynomials must be real-rooted")
    if q.degree != p.degree + 1:
        raise DegreeGap(f"degrees {p.degree} and {q.degree}")
    if p.degree == 0:
        return True
    p_factors = squarefree_decomposition(p)
    q_factors = squarefree_decomposition(q)
    combined = poly_squarefree(p * q)
    positions = []
    for low, high in _isolate_squarefree(combined):
        p_mult = sum(m for f, m in p_factors if _box_has_root(f, low, high))
        q_mult = sum(m for f, m in q_factors if _box_has_root(f, low, high))
        positions.append((p_mult, q_mult))
    if strict:
        if any(pm + qm != 1 for pm, qm in positions):
            return False
        return all(
            (qm == 1) == (i % 2 == 0) for i, (pm, qm) in enumerate(positions)
        )
    seen_p = seen_q = 0
    for p_mult, q_mult in positions:
        # Within a tie the q-roots may be taken first, so check the
        # counting inequalities in the most permissive order.
        seen_p += p_mult
        seen_q += q_mult
        if not seen_p <= seen_q <= seen_p + 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Structural root peeling
# ---------------------------------------------------------------------------


def _peel_structural(p: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """Split off the roots at 0 and -1, which occur systematically."""
    peeled = []
    zeros = 0
    while p and p[0] == 0:
        p = Poly(p.coeffs[1:])
        zeros += 1
    if zeros:
        peeled.append((Fraction(0), zeros))
    minus = 0
    while p.degree > 0 and p(Fraction(-1)) == 0:
        p = _divide_out_root(p, Fraction(-1))
        minus += 1
    if minus:
        peeled.append((Fraction(-1), minus))
    return peeled, p


def _all_roots_sorted(p: Poly) -> tuple[list[RootBox], Poly]:
    """Isolating boxes including structural roots, disjoint and sorted.

    Returns the boxes together with the structural-root-free remainder;
    non-exact boxes isolate roots of that remainder and must be refined
    against it, since their endpoints may sit on a structural root.
    """
    peeled, rest = _peel_structural(p)
    exact_points = [r for r, _ in peeled]
    boxes = [RootBox(r, r, m) for r, m in peeled]
    if rest.degree > 0:
        s = poly_squarefree(rest)
        for box in isolate_real_roots(rest):
            low, high = box.low, box.high
            for point in exact_points:
                if low < point < high:
                    if _sign(s(low)) != _sign(s(point)):
                        high = point
                    else:
                        low = point
            boxes.append(RootBox(low, high, box.multiplicity))
    return sorted(boxes, key=lambda b: (b.low, b.high)), rest


# ---------------------------------------------------------------------------
# Batch drivers
# ---------------------------------------------------------------------------


def _engine(family: str):
    if family == "monotone":
        return monotone_H
    if family == "dessin":
        return dessin_D
    raise ValueError(f"unknown family {family!r}")


def _successors(mu: Partition) -> list[Partition]:
    out = set()
    for i in range(len(mu)):
        bumped = list(mu)
        bumped[i] += 1
        out.add(tuple(sorted(bumped, reverse=True)))
    return sorted(out, reverse=True)


def _box_payload(boxes: Iterable[RootBox]) -> list[dict]:
    return [
        {"low": str(b.low), "high": str(b.high), "multiplicity": b.multiplicity}
        for b in boxes
    ]


def conjecture_scan(
    family: str,
    g_range: Iterable[int],
    n_max: int,
    weight_max: int,
    checks: Iterable[str] = ("real_rooted", "interlacing"),
) -> dict:
    """Exact real-rootedness and interlacing sweep over a grid of keys.

    For every genus in ``g_range`` and partition with at most ``n_max``
    parts and weight at most ``weight_max``, records a real-rootedness
    verdict and, for each distinct successor partition (one part grown
    by one), both the weak and the strict interlacing verdicts.  Any
    failure is reported as a counterexample entry with isolating-box
    certificates; failures never raise.
    """
    checks = frozenset(checks)
    unknown = checks - {"real_rooted", "interlacing"}
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    value_of = _engine(family)
    genera = sorted(set(g_range))
    entries = []
    counterexamples = []
    for g in genera:
        for weight in range(1, weight_max + 1):
            for mu in partitions_of(weight):
                if len(mu) > n_max:
                    continue
                value = value_of(g, mu)
                entry = {"g": g, "mu": list(mu)}
                if not value:
                    entry["zero"] = True
                    entries.append(entry)
                    continue
                rooted = True
                if "real_rooted" in checks:
                    rooted = is_real_rooted(value)
                    entry["real_rooted"] = rooted
                    if not rooted:
                        counterexamples.append(
                            {
                                "kind": "real_rooted",
                                "g": g,
                                "mu": list(mu),
                                "boxes": _box_payload(isolate_real_roots(value)),
                            }
                        )
                if "interlacing" in checks and rooted:
                    rows = []
                    for succ in _successors(mu):
                        bigger = value_of(g, succ)
                        row = {"mu": list(succ)}
                        if not bigger or not is_real_rooted(bigger):
                            row["skipped"] = True
                        else:
                            row["weak"] = interlaces(value, bigger)
                            row["strict"] = interlaces(value, bigger, strict=True)
                            if not row["weak"]:
                                counterexamples.append(
                                    {
                                        "kind": "interlacing",
                                        "g": g,
                                        "mu": list(mu),
                                        "successor": list(succ),
                                        "boxes": _box_payload(
                                            isolate_real_roots(value)
                                        ),
                                        "successor_boxes": _box_payload(
                                            isolate_real_roots(bigger)
                                        ),
                                    }
                                )
                        rows.append(row)
                    entry["successors"] = rows
                entries.append(entry)
    return {
        "family": family,
        "genus": genera,
        "n_max": n_max,
        "weight_max": weight_max,
        "checks": sorted(checks),
        "checked": len(entries),
        "entries": entries,
        "counterexamples": counterexamples,
        "all_pass": not counterexamples,
    }


class LargegTable(NamedTuple):
    """Decimal root table of one-family values across genera."""

    mu: Partition
    digits: int
    limits: tuple[str, ...]
    rows: dict[int, tuple[str, ...]]


def largeg_root_table(g_list: Iterable[int], mu, digits: int = 12) -> LargegTable:
    """Roots of the monotone values at ``mu`` for each genus, refined.

    Each row lists the real roots ascending (with multiplicity); the
    ``limits`` column holds the conjectured large-genus targets
    ``-(d-1-j)/j`` for ``j = 1..d-2`` followed by ``0``, where
    ``d = |mu|``.
    """
    mu = check_partition(mu)
    d = sum(mu)
    rows: dict[int, tuple[str, ...]] = {}
    for g in sorted(set(g_list)):
        value = monotone_H(g, mu)
        if not value:
            rows[g] = ()
            continue
        strings = []
        boxes, rest = _all_roots_sorted(value)
        for box in boxes:
            if box.low == box.high:
                text = _format_exact(box.low, digits)
            else:
                text = refine_root(rest, box, digits)
            strings.extend([text] * box.multiplicity)
        rows[g] = tuple(strings)
    limits = [
        _format_exact(Fraction(-(d - 1 - j), j), digits) for j in range(1, d - 1)
    ]
    limits.append("0")
    return LargegTable(mu=mu, digits=digits, limits=tuple(limits), rows=rows)
