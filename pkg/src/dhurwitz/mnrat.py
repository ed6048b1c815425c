"""Exact bivariate rational functions in the two size parameters M and N.

Internally a value is an element of Q(N)(M): a reduced rational function in
M whose coefficients are reduced rational functions in N.  That nesting makes
every field operation (including the eliminations in linear solves) automatic,
while `canonical()` recovers the reduced bivariate fraction with integer
coefficients and a deterministic sign for display, serialization and tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from math import lcm as _int_lcm

from .polys import Poly, RatFn, TruncSeries, poly_gcd, poly_lcm

_SCALARS = (int, Fraction)


class PoleAtInfinity(ValueError):
    """A 1/N expansion was requested for a function unbounded as N -> oo."""


def _qn(p: Poly | Fraction | int) -> RatFn:
    if isinstance(p, RatFn):
        return p
    if isinstance(p, Poly):
        return RatFn(p)
    return RatFn(Poly((Fraction(p),)) if p else Poly())


_QN_ZERO = _qn(0)
_QN_ONE = _qn(1)


class MNRational:
    """Reduced bivariate rational function in (M, N) over the rationals."""

    __slots__ = ("val",)

    def __init__(self, val: RatFn):
        object.__setattr__(self, "val", val)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MNRational is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_scalar(c) -> "MNRational":
        return MNRational(RatFn(Poly((_qn(Fraction(c)),)) if c else Poly()))

    @staticmethod
    def var_m() -> "MNRational":
        return MNRational(RatFn(Poly((_QN_ZERO, _QN_ONE))))

    @staticmethod
    def var_n() -> "MNRational":
        return MNRational(RatFn(Poly((_qn(Poly.variable()),))))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MNRational):
            return other
        if isinstance(other, _SCALARS):
            return MNRational.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MNRational(self.val + o.val)

    __radd__ = __add__

    def __neg__(self):
        return MNRational(-self.val)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MNRational(self.val - o.val)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else MNRational(o.val - self.val)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MNRational(self.val * o.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MNRational(self.val / o.val)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else MNRational(o.val / self.val)

    def __pow__(self, n: int) -> "MNRational":
        return MNRational(self.val**n)

    def __bool__(self) -> bool:
        return bool(self.val)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.val == o.val

    def __hash__(self) -> int:
        return hash(("MNRational", self.val))

    def __repr__(self) -> str:
        return f"MNRational({self})"

    # -- evaluation ---------------------------------------------------------

    def eval(self, m0, n0) -> Fraction:
        m0, n0 = Fraction(m0), Fraction(n0)

        def poly_at(p: Poly) -> Fraction:
            acc = Fraction(0)
            for i in range(p.degree, -1, -1):
                q = p[i]
                c = q(n0) if isinstance(q, RatFn) else Fraction(q) if q else Fraction(0)
                acc = acc * m0 + c
            return acc

        den = poly_at(self.val.den)
        if not den:
            raise ZeroDivisionError(f"evaluation at a pole: M={m0}, N={n0}")
        return poly_at(self.val.num) / den

    # -- canonical bivariate form -------------------------------------------

    def canonical(self) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
        """Reduced bivariate fraction with coprime integer coefficients and
        the graded-lex leading denominator coefficient positive.

        Keys are (power of M, power of N).
        """
        num, den = self.val.num, self.val.den
        if not num:
            return {}, {(0, 0): 1}
        qs = [_qn(c) for c in list(num.coeffs) + list(den.coeffs) if c]
        big = Poly((Fraction(1),))
        for q in qs:
            big = poly_lcm(big, q.den)

        def clear(p: Poly) -> dict[tuple[int, int], Fraction]:
            out: dict[tuple[int, int], Fraction] = {}
            for i, raw in enumerate(p.coeffs):
                if not raw:
                    continue
                q = _qn(raw)
                npoly = q.num * (big // q.den)
                for j, c in enumerate(npoly.coeffs):
                    if c:
                        out[(i, j)] = c
            return out

        nd, dd = clear(num), clear(den)

        def columns(d: dict[tuple[int, int], Fraction]) -> dict[int, Poly]:
            cols: dict[int, dict[int, Fraction]] = {}
            for (i, j), c in d.items():
                cols.setdefault(i, {})[j] = c
            return {
                i: Poly([coldict.get(j, Fraction(0)) for j in range(max(coldict) + 1)])
                for i, coldict in cols.items()
            }

        def n_content(d) -> Poly:
            g = Poly()
            for p in columns(d).values():
                g = poly_gcd(g, p)
            return g

        # remove any common factor purely in N (the M-degree >= 1 factors are
        # already gone thanks to the nested normalization over Q(N))
        gq = poly_gcd(n_content(nd), n_content(dd))
        if gq.degree > 0:
            def divide_out(d):
                out: dict[tuple[int, int], Fraction] = {}
                for i, p in columns(d).items():
                    q, r = divmod(p, gq)
                    assert not r
                    for j, c in enumerate(q.coeffs):
                        if c:
                            out[(i, j)] = c
                return out

            nd, dd = divide_out(nd), divide_out(dd)
        # single integer normalization at the end
        denom_lcm = 1
        for c in list(nd.values()) + list(dd.values()):
            denom_lcm = _int_lcm(denom_lcm, c.denominator)
        numer_gcd = 0
        for c in list(nd.values()) + list(dd.values()):
            numer_gcd = _int_gcd(numer_gcd, abs(c.numerator * denom_lcm // c.denominator))
        scale = Fraction(denom_lcm, numer_gcd)
        ndi = {k: int(c * scale) for k, c in nd.items()}
        ddi = {k: int(c * scale) for k, c in dd.items()}
        lead = max(ddi, key=lambda k: (k[0] + k[1], k[0]))
        if ddi[lead] < 0:
            ndi = {k: -c for k, c in ndi.items()}
            ddi = {k: -c for k, c in ddi.items()}
        return ndi, ddi

    def leading_in_m(self) -> RatFn:
        """Coefficient of the top power of M in the numerator divided by the
        denominator, as a reduced rational function in N.

        Requires a representation whose denominator is free of M.
        """
        num, den = self.val.num, self.val.den
        if den.degree > 0:
            raise ValueError("denominator involves M; no leading-in-M part")
        if not num:
            return RatFn(Poly())
        return _qn(num.leading) / _qn(den[0])

    def __str__(self) -> str:
        nd, dd = self.canonical()
        ns = mn_poly_str(nd)
        if dd == {(0, 0): 1}:
            return ns
        return f"({ns})/({mn_poly_str(dd)})"


def mn_poly_str(d: dict[tuple[int, int], int]) -> str:
    """Expanded bivariate polynomial string, graded-lex descending, e.g.
    ``M^2N-M``."""
    if not d:
        return "0"
    keys = sorted(d, key=lambda k: (k[0] + k[1], k[0], k[1]), reverse=True)
    parts = []
    for i, j in keys:
        c = d[(i, j)]
        sign = "-" if c < 0 else ("+" if parts else "")
        a = abs(c)
        mono = ""
        if i:
            mono += "M" if i == 1 else f"M^{i}"
        if j:
            mono += "N" if j == 1 else f"N^{j}"
        if not mono:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + mono
        parts.append(sign + body)
    return "".join(parts)


_M = None
_N = None


def gen_mn() -> tuple[MNRational, MNRational]:
    """The generator pair (M, N) for building values from expressions."""
    global _M, _N
    if _M is None:
        _M = MNRational.var_m()
        _N = MNRational.var_n()
    return _M, _N


def large_n_expansion(value: MNRational, order: int, t0: Fraction | None = None):
    """Coefficients of the expansion in powers of 1/N after substituting
    M = N/(1-t), as exact rational functions of t (index = power of 1/N).

    Bounded at N = oo is required, else ``PoleAtInfinity`` is raised.  When
    ``t0`` is given the coefficients are specialized to Fractions.
    """
    nd, dd = value.canonical()
    # u = 1/(1-t); M^i N^j -> u^i N^(i+j)
    u = RatFn(Poly((Fraction(1),)), Poly((Fraction(1), Fraction(-1))))

    def to_npoly(d: dict[tuple[int, int], int]) -> Poly:
        if not d:
            return Poly()
        top = max(i + j for i, j in d)
        coeffs = [RatFn(Poly()) for _ in range(top + 1)]
        for (i, j), c in d.items():
            coeffs[i + j] = coeffs[i + j] + u**i * Fraction(c)
        return Poly(coeffs)

    p, q = to_npoly(nd), to_npoly(dd)
    if not q:
        raise ZeroDivisionError("zero denominator")
    if not p:
        coeffs = [RatFn(Poly()) for _ in range(order + 1)]
    else:
        dp, dq = p.degree, q.degree
        if dp > dq:
            raise PoleAtInfinity(f"numerator degree {dp} exceeds denominator degree {dq} in N")
        shift = dq - dp
        prev = TruncSeries(list(reversed(p.coeffs)), order)
        qrev = TruncSeries(list(reversed(q.coeffs)), order)
        series = prev * qrev.inverse()
        coeffs = []
        for r in range(order + 1):
            if r < shift:
                coeffs.append(RatFn(Poly()))
            else:
                c = series[r - shift]
                coeffs.append(c if isinstance(c, RatFn) else RatFn(Poly((Fraction(c),)) if c else Poly()))
    if t0 is None:
        return coeffs
    return [c(Fraction(t0)) for c in coeffs]
