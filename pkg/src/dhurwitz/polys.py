"""Exact dense univariate polynomials, rational functions and truncated series.

All arithmetic is exact.  Coefficients are ``fractions.Fraction`` by default,
but every container here is generic: coefficients may themselves be ``Poly``
or ``RatFn`` instances, which is how towers such as Q(s), Q(t)(z) and the
bivariate field used by the Weingarten module are built.

Conventions:

* ``Poly`` stores coefficients ascending by degree with no trailing zeros;
  the zero polynomial has an empty coefficient tuple.
* ``int`` and ``Fraction`` scalars mix freely with any container.  Mixing two
  *different* container types (say a ``Poly`` and a ``RatFn``) is deliberate
  only through explicit promotion (``RatFn.from_poly``, ``Poly.constant``),
  never implicitly, to keep coefficient towers unambiguous.
* ``RatFn`` is always reduced, with a monic denominator, so equality and
  hashing are structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

_SCALARS = (int, Fraction)


class NonUnitLinearTerm(ValueError):
    """Series reversion needs a zero constant term and invertible linear term."""


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense univariate polynomial over a commutative coefficient ring."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(list(coeffs)))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def variable() -> "Poly":
        """The monomial x over Fraction coefficients."""
        return Poly((Fraction(0), Fraction(1)))

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, _SCALARS):
            if not other:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
            return Poly(out)
        if isinstance(other, _SCALARS):
            if not self.coeffs:
                return Poly((other,))
            out = list(self.coeffs)
            out[0] = out[0] + other
            return Poly(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (Poly,) + _SCALARS):
            return self + (-other if isinstance(other, Poly) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly()
            out = [None] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j, cb in enumerate(b):
                    p = ca * cb
                    out[i + j] = p if out[i + j] is None else out[i + j] + p
            return Poly([c if c is not None else a[0] * 0 for c in out])
        if isinstance(other, _SCALARS):
            if not other:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        """Multiply every coefficient by a ring element of the coefficient type."""
        if not c:
            return Poly()
        return Poly([a * c for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                break
            base = base * base
        if result is None:
            return Poly((Fraction(1),))
        return result

    # -- euclidean structure (field coefficients) ---------------------------

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        lead = other.leading
        if isinstance(lead, int):  # keep int inputs exact: 1/2 must not be 0.5
            lead = Fraction(lead)
        quo = [None] * (dq + 1)
        oc = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[k + len(oc) - 1]
            q = c / lead
            quo[k] = q
            if q:
                for j, b in enumerate(oc):
                    rem[k + j] = rem[k + j] - q * b
        return Poly(quo), Poly(rem[: len(oc) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self:
            return self
        lead = self.leading
        if isinstance(lead, int):
            lead = Fraction(lead)
        return Poly([c / lead for c in self.coeffs])

    # -- calculus and evaluation --------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs) if i])

    def __call__(self, x):
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        """Substitute a polynomial for the variable."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(c)
        return acc

    def shift(self, a) -> "Poly":
        """Taylor shift: the polynomial p(x + a)."""
        out = Poly()
        step = Poly((a, a * 0 + 1))
        for c in reversed(self.coeffs):
            out = out * step + Poly.constant(c)
        return out


def _int_primitive(p: Poly) -> list | None:
    """Integer coefficient list of the primitive part, or None when the
    coefficients are not plain rationals (coefficient towers fall back to
    the generic Euclidean path)."""
    den_lcm = 1
    for c in p.coeffs:
        if type(c) is Fraction:
            d = c.denominator
            den_lcm = den_lcm * d // math.gcd(den_lcm, d)
        elif not isinstance(c, int):
            return None
    out = [int(c * den_lcm) for c in p.coeffs]
    g = 0
    for v in out:
        g = math.gcd(g, v)
        if g == 1:
            return out
    return [v // g for v in out]


def _int_pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists: rem(lb^k * a, b)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(len(a) - 1 - db, -1, -1):
        q = r[db + k]
        for i in range(db + k):
            r[i] *= lb
        if q:
            for j in range(db):
                r[k + j] -= q * b[j]
        r[db + k] = 0
    del r[db:]
    while r and not r[-1]:
        r.pop()
    return r


def _int_gcd_monic(a: list, b: list) -> Poly:
    """Monic gcd of two primitive integer coefficient lists (primitive PRS)."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_pseudo_rem(a, b)
        g = 0
        for v in r:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            r = [v // g for v in r]
        a, b = b, r
    lead = a[-1]
    if lead == 1:
        return Poly([Fraction(c) for c in a])
    return Poly([Fraction(c, lead) for c in a])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor.

    ``poly_gcd(0, 0) = 0``; otherwise the result is monic so that the gcd is
    a canonical representative.  Plain rational coefficients take a
    fraction-free primitive-remainder path; coefficient towers use the
    classical Euclidean algorithm.
    """
    if not p:
        return q.monic() if q else q
    if not q:
        return p.monic()
    a = _int_primitive(p)
    if a is not None:
        b = _int_primitive(q)
        if b is not None:
            return _int_gcd_monic(a, b)
    while q:
        p, q = q, p % q
        if q:
            q = q.monic()
    return p.monic() if p else p


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return Poly()
    return ((p * q) // poly_gcd(p, q)).monic()


def poly_squarefree(p: Poly) -> Poly:
    """The monic squarefree part p / gcd(p, p')."""
    if not p:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    return (p // g).monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: return [(factor, multiplicity)] with factors monic,
    squarefree, pairwise coprime and ``p = lead * prod f_i^{m_i}``."""
    result: list[tuple[Poly, int]] = []
    if p.degree <= 0:
        return result
    p = p.monic()
    d = p.derivative()
    a = poly_gcd(p, d)
    b = p // a
    c = d // a
    i = 1
    while b.degree > 0:
        z = c - b.derivative()
        f = poly_gcd(b, z)
        if f.degree > 0:
            result.append((f, i))
        b, c = b // f, z // f
        i += 1
    return result


# -- serialization helpers (Fraction coefficients) --------------------------


def poly_to_strings(p: Poly) -> list[str]:
    """JSON-friendly list of exact coefficient strings, ascending degree."""
    return [str(c) for c in p.coeffs]


def poly_from_strings(items: Sequence[str]) -> Poly:
    return Poly([Fraction(s) for s in items])


def poly_str(p: Poly, var: str = "t") -> str:
    """Canonical human-readable form, descending degree, e.g. ``5t^2+5t``,
    ``t/2``, ``-t^3+1``.  Fraction coefficients render as ``p*var^k/q``."""
    if not p:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if not c:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else ("+" if parts else "")
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            num = "" if c.numerator == 1 else str(c.numerator)
            body = f"{num}{mono}"
            if c.denominator != 1:
                body = f"{body}/{c.denominator}"
        parts.append(sign + body)
    return "".join(parts)


def poly_parse(s: str, var: str = "t") -> Poly:
    """Inverse of :func:`poly_str`: parse ``5t^2+5t`` or ``-t^3+1/3`` back
    into a :class:`Poly`.  Whitespace is ignored; raises ``ValueError`` on
    anything the printer could not have produced."""
    text = s.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial string")
    if text == "0":
        return Poly([])
    v = re.escape(var)
    term_re = re.compile(rf"(\d+)?(?:({v})(?:\^(\d+))?)?(?:/(\d+))?$")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(text):
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        end = pos
        while end < len(text) and text[end] not in "+-":
            end += 1
        m = term_re.match(text, pos, end)
        if m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term in polynomial string: {text[pos:end]!r}")
        num = int(m.group(1)) if m.group(1) else 1
        k = 0 if m.group(2) is None else (int(m.group(3)) if m.group(3) else 1)
        den = int(m.group(4)) if m.group(4) else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(sign * num, den)
        pos = end
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return Poly(out)


class RatFn:
    """Reduced rational function num/den over a field of coefficients.

    The denominator is monic, so the representation (hence ``==`` and
    ``hash``) is canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, Poly):
            num = Poly((num,)) if num else Poly()
        if den is None:
            den = Poly((Fraction(1),))
        elif not isinstance(den, Poly):
            den = Poly((den,))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if not num:
                den = Poly((Fraction(1),))
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.leading
                if den.degree == 0:
                    num, den = num.scale(1 / lead), Poly((lead / lead,))
                elif not (lead == 1):
                    inv = 1 / lead
                    num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("RatFn is immutable")

    @staticmethod
    def from_poly(p: Poly) -> "RatFn":
        return RatFn(p)

    @staticmethod
    def variable() -> "RatFn":
        return RatFn(Poly.variable())

    @staticmethod
    def constant(c) -> "RatFn":
        return RatFn(Poly((c,)))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: denominator {self.den!r}")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly,) + _SCALARS):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFn", self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFn({self.num!r}, {self.den!r})"

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, _SCALARS):
            return RatFn(Poly((Fraction(other),)) if other else Poly())
        return None

    def _combine(self, o: "RatFn", sign: int) -> "RatFn":
        # Both operands are reduced with monic denominators, which makes
        # several cheap cases provably reduced without running a gcd.
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if sign < 0:
            n2 = -n2
        if d1.degree == 0:
            if d2.degree == 0:
                return RatFn(n1 + n2, _normalized=True)
            num = n1 * d2 + n2
            return RatFn(num, d2, _normalized=True) if num else RatFn(Poly())
        if d2.degree == 0:
            num = n1 + n2 * d1
            return RatFn(num, d1, _normalized=True) if num else RatFn(Poly())
        if d1 == d2:
            return RatFn(n1 + n2, d1)
        g = poly_gcd(d1, d2)
        if g.degree == 0:
            num = n1 * d2 + n2 * d1
            return RatFn(num, d1 * d2, _normalized=True) if num else RatFn(Poly())
        cof = d2 // g
        return RatFn(n1 * cof + n2 * (d1 // g), d1 * cof)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not n1 or not n2:
            return RatFn(Poly())
        # Cross-cancel first; the factors that remain are coprime.
        if d2.degree:
            g = poly_gcd(n1, d2)
            if g.degree:
                n1, d2 = n1 // g, d2 // g
        if d1.degree:
            g = poly_gcd(n2, d1)
            if g.degree:
                n2, d1 = n2 // g, d1 // g
        return RatFn(n1 * n2, d1 * d2, _normalized=True)

    __rmul__ = __mul__

    def _inverted(self) -> "RatFn":
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        lead = self.num.leading
        if isinstance(lead, int):
            lead = Fraction(lead)
        inv = 1 / lead
        return RatFn(self.den.scale(inv), self.num.scale(inv), _normalized=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverted()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverted()

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return self._inverted() ** (-n)
        if not self.num and n > 0:
            return RatFn(Poly())
        return RatFn(self.num**n, self.den**n, _normalized=True)

    def derivative(self) -> "RatFn":
        return RatFn(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        den = self.den(x)
        if not den:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / den

    def subst(self, other: "RatFn") -> "RatFn":
        """Substitute a rational function for the variable."""
        d = max(self.num.degree, self.den.degree, 0)
        a, b = other.num, other.den
        bpow = [Poly((Fraction(1),))]
        for _ in range(d):
            bpow.append(bpow[-1] * b)

        def clear(p: Poly) -> Poly:
            acc = Poly()
            for i in range(d + 1):
                c = p[i]
                if isinstance(c, int) and c == 0:
                    continue
                if not c:
                    continue
                acc = acc + (a**i * bpow[d - i]).scale(c)
            return acc

        return RatFn(clear(self.num), clear(self.den))


class TruncSeries:
    """Power series truncated at a fixed order.

    ``coeffs[k]`` is the coefficient of x^k for k <= order; nothing beyond the
    truncation order is ever reported.  Mixed-order arithmetic truncates to
    the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = list(coeffs)[: order + 1]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("TruncSeries is immutable")

    @staticmethod
    def from_poly(p: Poly, order: int) -> "TruncSeries":
        return TruncSeries(p.coeffs, order)

    def __getitem__(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self[k] == other[k] for k in range(n + 1))

    def __repr__(self) -> str:
        return f"TruncSeries({list(self.coeffs)!r}, order={self.order})"

    def _pad(self, n: int) -> list:
        out = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return out[: n + 1]

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            a, b = self._pad(n), other._pad(n)
            return TruncSeries([x + y for x, y in zip(a, b)], n)
        if isinstance(other, _SCALARS):
            out = self._pad(self.order)
            out[0] = out[0] + other
            return TruncSeries(out, self.order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            a, b = self._pad(n), other._pad(n)
            out = [Fraction(0)] * (n + 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j in range(n + 1 - i):
                    cb = b[j]
                    if cb:
                        out[i + j] = out[i + j] + ca * cb
            return TruncSeries(out, n)
        if isinstance(other, _SCALARS):
            return TruncSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "TruncSeries":
        return TruncSeries([a * c for a in self.coeffs], self.order)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be invertible."""
        n = self.order
        a = self._pad(n)
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0] + [Fraction(0) * inv0] * n
        for k in range(1, n + 1):
            acc = None
            for j in range(1, k + 1):
                if a[j]:
                    term = a[j] * out[k - j]
                    acc = term if acc is None else acc + term
            out[k] = -inv0 * acc if acc is not None else a[0] * 0
        return TruncSeries(out, n)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """Substitute a series with zero constant term for the variable."""
        if inner.coeffs and inner.coeffs[0]:
            raise ValueError("composition needs inner constant term zero")
        n = min(self.order, inner.order)
        inner_n = TruncSeries(inner.coeffs, n)
        acc = TruncSeries([], n)
        for c in reversed(self._pad(n)):
            acc = acc * inner_n + TruncSeries([c], n)
        return acc

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries([], 0)
        return TruncSeries(
            [c * i for i, c in enumerate(self.coeffs) if i], self.order - 1
        )


def series_reversion(f: TruncSeries, order: int | None = None) -> TruncSeries:
    """Compositional inverse g with f(g(x)) = x.

    Requires f(0) = 0 and an invertible linear coefficient, otherwise
    ``NonUnitLinearTerm`` is raised.
    """
    if order is None:
        order = f.order
    if f.coeffs and f.coeffs[0]:
        raise NonUnitLinearTerm("constant term must vanish for reversion")
    f1 = f[1] if f.order >= 1 else Fraction(0)
    if not f1:
        raise NonUnitLinearTerm("linear coefficient must be invertible")
    inv1 = 1 / f1
    g = TruncSeries([Fraction(0), inv1], order)
    fs = TruncSeries(f.coeffs, order)
    for n in range(2, order + 1):
        # with g known below x^n, [x^n] f(g + g_n x^n) = [x^n] f(g) + f1*g_n
        defect = fs.compose(g)[n]
        g = g + TruncSeries([Fraction(0)] * n + [-inv1 * defect], order)
    return TruncSeries(g.coeffs, order)
