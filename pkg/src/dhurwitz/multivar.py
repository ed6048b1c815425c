"""Multivariate polynomials and rational functions with factored denominators.

Coefficients live in an exact scalar field (:class:`~dhurwitz.polys.RatFn`
over the rationals).  Numerators are sparse polynomials in z_1..z_n;
denominators are kept as powers of the linear factors (z_i - c) and
(z_i - z_j).  That shape is closed under all the arithmetic the
spectral-recursion engine needs, and exact cancellation reduces to
synthetic division plus a substitution test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .polys import Poly, RatFn, poly_str

__all__ = [
    "FactorError",
    "MPoly",
    "MRat",
    "PoleSubstitution",
    "as_scalar",
    "factor_mpoly",
    "mpoly_str",
    "mrat_str",
    "mrat_sum",
    "scalar_str",
]


def as_scalar(value) -> RatFn:
    """Coerce an int, Fraction or RatFn to the scalar field."""
    if isinstance(value, RatFn):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFn(Poly((Fraction(value),)) if value else Poly())
    raise TypeError(f"cannot treat {value!r} as a scalar")


_ONE = as_scalar(1)
_ZERO = as_scalar(0)


class FactorError(ValueError):
    """A numerator did not split into the supported linear factors."""


class PoleSubstitution(ZeroDivisionError):
    """A substitution landed exactly on a denominator factor."""


class MPoly:
    """Sparse polynomial in ``nvars`` variables over the scalar field.

    Terms map exponent tuples to nonzero scalars; the representation is
    canonical, so ``==`` is structural.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, RatFn] | None = None):
        # Coefficients are taken as given (RatFn for symbolic work, Fraction
        # for exact numeric specializations); ints are promoted to Fraction.
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if isinstance(coeff, int):
                    coeff = Fraction(coeff)
                if coeff:
                    if len(exps) != nvars:
                        raise ValueError("exponent arity mismatch")
                    clean[tuple(exps)] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MPoly":
        return MPoly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "MPoly":
        return MPoly(nvars, {(0,) * nvars: as_scalar(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "MPoly":
        exps = [0] * nvars
        exps[i] = 1
        return MPoly(nvars, {tuple(exps): _ONE})

    @staticmethod
    def monomial(nvars: int, exps: Iterable[int], c) -> "MPoly":
        return MPoly(nvars, {tuple(exps): as_scalar(c)})

    # -- basic queries -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({mpoly_str(self)})"

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def constant_value(self) -> RatFn:
        if not self.is_constant:
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), _ZERO)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def coeff_in(self, i: int, power: int) -> "MPoly":
        """Coefficient of z_i^power, as a polynomial not involving z_i."""
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                reduced = list(exps)
                reduced[i] = 0
                out[tuple(reduced)] = coeff
        return MPoly(self.nvars, out)

    # -- ring operations -----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, RatFn)):
            return MPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = out.get(exps)
            acc = coeff if cur is None else cur + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[tuple, RatFn] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                cur = out.get(key)
                prod = c1 * c2
                acc = prod if cur is None else cur + prod
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution and restructuring --------------------------------------

    def substitute_scalar(self, i: int, value) -> "MPoly":
        if isinstance(value, int):
            value = Fraction(value)
        powers = [value**0]
        out: dict[tuple, RatFn] = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            while len(powers) <= e:
                powers.append(powers[-1] * value)
            if e:
                reduced = list(exps)
                reduced[i] = 0
                exps = tuple(reduced)
                coeff = coeff * powers[e]
            cur = out.get(exps)
            acc = coeff if cur is None else cur + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return MPoly(self.nvars, out)

    def substitute_var(self, i: int, j: int) -> "MPoly":
        """Rename z_i to z_j (merging exponents)."""
        out: dict[tuple, RatFn] = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                moved = list(exps)
                moved[j] += moved[i]
                moved[i] = 0
                exps = tuple(moved)
            cur = out.get(exps)
            acc = coeff if cur is None else cur + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return MPoly(self.nvars, out)

    def embed(self, nvars: int, mapping: Iterable[int]) -> "MPoly":
        """Relabel variable k to ``mapping[k]`` inside a larger space."""
        mapping = tuple(mapping)
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * nvars
            for k, e in enumerate(exps):
                if e:
                    new[mapping[k]] += e
            key = tuple(new)
            cur = out.get(key)
            acc = coeff if cur is None else cur + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return MPoly(nvars, out)

    def derivative(self, i: int) -> "MPoly":
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                low = list(exps)
                low[i] -= 1
                out[tuple(low)] = coeff * exps[i]
        return MPoly(self.nvars, out)

    def truncate(self, bound: int) -> "MPoly":
        """Drop terms whose degree in any single variable exceeds ``bound``."""
        return MPoly(
            self.nvars,
            {e: c for e, c in self.terms.items() if max(e, default=0) <= bound},
        )

    def _times_var(self, j: int) -> "MPoly":
        """Multiply by z_j without touching the coefficients."""
        out = {}
        for exps, coeff in self.terms.items():
            bumped = list(exps)
            bumped[j] += 1
            out[tuple(bumped)] = coeff
        return MPoly(self.nvars, out)

    def divide_point(self, i: int, c) -> "MPoly":
        """Exact division by (z_i - c); raises if the remainder is nonzero."""
        if isinstance(c, int):
            c = Fraction(c)
        degree = self.degree_in(i)
        quotient: dict[tuple, RatFn] = {}
        carry = MPoly.zero(self.nvars)
        for power in range(degree, 0, -1):
            carry = self.coeff_in(i, power) + carry.scale(c)
            # The carry has no z_i, so it is the z_i^(power-1) coefficient.
            for exps, coeff in carry.terms.items():
                placed = list(exps)
                placed[i] = power - 1
                quotient[tuple(placed)] = coeff
        remainder = self.coeff_in(i, 0) + carry.scale(c)
        if remainder:
            raise ValueError("not divisible by the point factor")
        return MPoly(self.nvars, quotient)

    def divide_pair(self, i: int, j: int) -> "MPoly":
        """Exact division by (z_i - z_j); raises if the remainder is nonzero."""
        degree = self.degree_in(i)
        quotient: dict[tuple, RatFn] = {}
        carry = MPoly.zero(self.nvars)
        for power in range(degree, 0, -1):
            carry = self.coeff_in(i, power) + carry._times_var(j)
            for exps, coeff in carry.terms.items():
                placed = list(exps)
                placed[i] = power - 1
                quotient[tuple(placed)] = coeff
        remainder = self.coeff_in(i, 0) + carry._times_var(j)
        if remainder:
            raise ValueError("not divisible by the pair factor")
        return MPoly(self.nvars, quotient)


# ---------------------------------------------------------------------------
# Denominator factors
# ---------------------------------------------------------------------------
#
# ("p", i, c)  stands for  (z_i - c)   with c a scalar,
# ("d", i, j)  stands for  (z_i - z_j) with i < j.


def factor_mpoly(factor: tuple, nvars: int) -> MPoly:
    kind = factor[0]
    zeros = (0,) * nvars
    if kind == "p":
        _, i, c = factor
        exps = list(zeros)
        exps[i] = 1
        # c**0 keeps the unit in the same scalar domain as c (works for
        # zero scalars too: both Fraction and RatFn give their unit).
        return MPoly(nvars, {tuple(exps): c**0, zeros: -c})
    _, i, j = factor
    ei, ej = list(zeros), list(zeros)
    ei[i] = 1
    ej[j] = 1
    return MPoly(nvars, {tuple(ei): Fraction(1), tuple(ej): Fraction(-1)})


def _factor_str(factor: tuple, names) -> str:
    kind = factor[0]
    if kind == "p":
        _, i, c = factor
        if not c:
            return names[i]
        return f"({names[i]}-{_paren_scalar(c)})"
    _, i, j = factor
    return f"({names[i]}-{names[j]})"


def _expand_factors(den: Mapping[tuple, int], nvars: int) -> MPoly | None:
    """Product of denominator factors, or None for the empty product (so no
    unit constant of a fixed scalar domain is ever injected)."""
    out = None
    for factor, power in den.items():
        if not power:
            continue
        fm = factor_mpoly(factor, nvars)
        for _ in range(power):
            out = fm if out is None else out * fm
    return out


def _factor_linear(p: MPoly) -> tuple[RatFn, dict[tuple, int]]:
    """Write ``p`` as scalar times a product of vocabulary factors."""
    if not p:
        raise FactorError("zero has no factorization")
    if p.is_constant:
        return p.constant_value, {}
    i = next(k for k in range(p.nvars) if p.degree_in(k))
    if p.degree_in(i) != 1:
        raise FactorError(f"degree in z_{i} exceeds 1: {mpoly_str(p)}")
    lead = p.coeff_in(i, 1)
    tail = p.coeff_in(i, 0)
    scalar, factors = _factor_linear(lead)
    ratio = tail
    for factor, power in factors.items():
        for _ in range(power):
            try:
                if factor[0] == "p":
                    ratio = ratio.divide_point(factor[1], factor[2])
                else:
                    ratio = ratio.divide_pair(factor[1], factor[2])
            except ValueError:
                raise FactorError(f"no linear split of {mpoly_str(p)}") from None
    ratio = ratio.scale(scalar**0 / scalar)
    if ratio.is_constant:
        new = ("p", i, -ratio.constant_value)
    else:
        items = list(ratio.terms.items())
        if len(items) != 1:
            raise FactorError(f"no linear split of {mpoly_str(p)}")
        exps, coeff = items[0]
        if sum(exps) != 1 or coeff != -(scalar**0):
            raise FactorError(f"no linear split of {mpoly_str(p)}")
        j = exps.index(1)
        if i < j:
            new = ("d", i, j)
        else:
            new = ("d", j, i)
            scalar = -scalar
    factors[new] = factors.get(new, 0) + 1
    return scalar, factors


class MRat:
    """Rational function ``num / prod(factor^power)`` in reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: Mapping[tuple, int] | None = None):
        den = {f: p for f, p in (den or {}).items() if p}
        if any(p < 0 for p in den.values()):
            raise ValueError("negative denominator power")
        if not num:
            den = {}
        else:
            num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MRat is immutable")

    @staticmethod
    def _reduce(num: MPoly, den: Mapping[tuple, int]) -> tuple[MPoly, dict]:
        out = {}
        for factor, power in den.items():
            kind, i, other = factor
            # A factor whose variables are absent from the numerator
            # cannot cancel (the numerator is nonzero here).
            if num.degree_in(i) == 0 and (kind == "p" or num.degree_in(other) == 0):
                out[factor] = power
                continue
            while power:
                if kind == "p":
                    if num.substitute_scalar(i, other):
                        break
                    num = num.divide_point(i, other)
                else:
                    if num.substitute_var(i, other):
                        break
                    num = num.divide_pair(i, other)
                power -= 1
            if power:
                out[factor] = power
        return num, out

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MRat":
        return MRat(MPoly.zero(nvars))

    @staticmethod
    def constant(nvars: int, c) -> "MRat":
        return MRat(MPoly.constant(nvars, c))

    @staticmethod
    def variable(nvars: int, i: int) -> "MRat":
        return MRat(MPoly.variable(nvars, i))

    # -- queries -------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RatFn)):
            other = MRat.constant(self.nvars, other)
        if not isinstance(other, MRat):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        # The constructor fully reduces against the (monic linear) factor
        # base, so the representation is canonical and equality is
        # structural.
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        raise TypeError("MRat is not hashable")

    def __repr__(self):
        return f"MRat({mrat_str(self)})"

    def expanded(self) -> tuple[MPoly, MPoly]:
        """The pair (numerator, expanded denominator polynomial)."""
        den = _expand_factors(self.den, self.nvars)
        if den is None:
            one = next(iter(self.num.terms.values()), Fraction(1)) ** 0
            den = MPoly(self.nvars, {(0,) * self.nvars: one})
        return self.num, den

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MRat):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, RatFn)):
            return MRat.constant(self.nvars, other)
        if isinstance(other, MPoly):
            return MRat(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for factor, power in other.den.items():
            den[factor] = max(den.get(factor, 0), power)
        cof_self = _expand_factors(
            {f: p - self.den.get(f, 0) for f, p in den.items()}, self.nvars
        )
        cof_other = _expand_factors(
            {f: p - other.den.get(f, 0) for f, p in den.items()}, self.nvars
        )
        lhs = self.num if cof_self is None else self.num * cof_self
        rhs = other.num if cof_other is None else other.num * cof_other
        return MRat(lhs + rhs, den)

    __radd__ = __add__

    def __neg__(self):
        return MRat(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for factor, power in other.den.items():
            den[factor] = den.get(factor, 0) + power
        return MRat(self.num * other.num, den)

    __rmul__ = __mul__

    def scale(self, c) -> "MRat":
        return MRat(self.num.scale(c), self.den)

    def reciprocal(self) -> "MRat":
        if not self.num:
            raise ZeroDivisionError("reciprocal of zero")
        scalar, factors = _factor_linear(self.num)
        inv = scalar**0 / scalar
        den = _expand_factors(self.den, self.nvars)
        if den is None:
            num = MPoly(self.nvars, {(0,) * self.nvars: inv})
        else:
            num = den.scale(inv)
        return MRat(num, factors)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n: int) -> "MRat":
        if n < 0:
            return self.reciprocal() ** (-n)
        result = MRat.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus ------------------------------------------------------------

    def derivative(self, i: int) -> "MRat":
        out = MRat(self.num.derivative(i), self.den)
        for factor, power in self.den.items():
            kind, a, b = factor
            slope = 0
            if kind == "p":
                slope = 1 if a == i else 0
            else:
                slope = (1 if a == i else 0) - (1 if b == i else 0)
            if slope:
                bumped = dict(self.den)
                bumped[factor] = power + 1
                out = out + MRat(self.num.scale(-power * slope), bumped)
        return out

    # -- substitution --------------------------------------------------------

    def substitute_scalar(self, i: int, value) -> "MRat":
        if isinstance(value, int):
            value = Fraction(value)
        one = value**0
        num = self.num.substitute_scalar(i, value)
        den: dict[tuple, int] = {}
        scale = one
        for factor, power in self.den.items():
            kind, a, b = factor
            if kind == "p":
                if a == i:
                    constant = value - b
                    if not constant:
                        raise PoleSubstitution(f"substitution z_{i} = {b} hits a pole")
                    scale = scale * constant**power
                    continue
            else:
                if a == i:  # (value - z_b) = -(z_b - value)
                    factor = ("p", b, value)
                    scale = scale * (-one) ** power
                elif b == i:
                    factor = ("p", a, value)
            den[factor] = den.get(factor, 0) + power
        return MRat(num.scale(one / scale), den)

    def substitute_var(self, i: int, j: int) -> "MRat":
        """Rename z_i to z_j throughout."""
        if i == j:
            return self
        num = self.num.substitute_var(i, j)
        den: dict[tuple, int] = {}
        sign = 1
        for factor, power in self.den.items():
            kind, a, b = factor
            if kind == "p":
                if a == i:
                    factor = ("p", j, b)
            elif i in (a, b):
                first = j if a == i else a
                second = j if b == i else b
                if first == second:
                    raise PoleSubstitution("rename collapses a pair factor")
                if first < second:
                    factor = ("d", first, second)
                else:
                    # (z_first - z_second) = -(z_second - z_first)
                    factor = ("d", second, first)
                    sign *= (-1) ** power
            den[factor] = den.get(factor, 0) + power
        return MRat(num.scale(sign), den)

    def embed(self, nvars: int, mapping: Iterable[int]) -> "MRat":
        mapping = tuple(mapping)
        num = self.num.embed(nvars, mapping)
        den: dict[tuple, int] = {}
        sign = 1
        for factor, power in self.den.items():
            kind, a, b = factor
            if kind == "p":
                factor = ("p", mapping[a], b)
            else:
                na, nb = mapping[a], mapping[b]
                if na == nb:
                    raise PoleSubstitution("embedding collapses a pair factor")
                if na < nb:
                    factor = ("d", na, nb)
                else:
                    factor = ("d", nb, na)
                    sign *= (-1) ** power
            den[factor] = den.get(factor, 0) + power
        return MRat(num.scale(sign), den)


def mrat_sum(nvars: int, parts: Iterable[MRat]) -> MRat:
    """Sum many rational functions over one shared denominator.

    Equivalent to repeated ``+`` but expands each cofactor once, which
    matters when combining long lists of residue contributions.
    """
    parts = [p for p in parts if p]
    if not parts:
        return MRat.zero(nvars)
    den: dict[tuple, int] = {}
    for p in parts:
        for factor, power in p.den.items():
            den[factor] = max(den.get(factor, 0), power)
    num = MPoly.zero(nvars)
    for p in parts:
        cof = _expand_factors(
            {f: pw - p.den.get(f, 0) for f, pw in den.items()}, nvars
        )
        num = num + (p.num if cof is None else p.num * cof)
    return MRat(num, den)


# ---------------------------------------------------------------------------
# Canonical printing
# ---------------------------------------------------------------------------


def scalar_str(c, var: str = "s") -> str:
    if isinstance(c, (int, Fraction)):
        return str(c)
    if c.is_polynomial():
        return poly_str(c.as_poly(), var)
    return f"({poly_str(c.num, var)})/({poly_str(c.den, var)})"


def _paren_scalar(c: RatFn, var: str = "s") -> str:
    text = scalar_str(c, var)
    if any(op in text[1:] for op in "+-") and not text.startswith("("):
        return f"({text})"
    return text


def _default_names(nvars: int) -> list[str]:
    return [f"z{k + 1}" for k in range(nvars)]


def mpoly_str(p: MPoly, names: list[str] | None = None, var: str = "s") -> str:
    if not p:
        return "0"
    names = names or _default_names(p.nvars)
    parts = []
    for exps in sorted(p.terms, reverse=True):
        coeff = p.terms[exps]
        monomial = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}"
            for i, e in enumerate(exps)
            if e
        )
        text = _paren_scalar(coeff, var)
        if monomial:
            text = monomial if text == "1" else f"{text}*{monomial}"
        parts.append(text)
    return "+".join(parts).replace("+-", "-")


def _factor_key(factor: tuple):
    if factor[0] == "p":
        return (0, factor[1], -1, scalar_str(factor[2]))
    return (1, factor[1], factor[2], "")


def mrat_str(f: MRat, names: list[str] | None = None, var: str = "s") -> str:
    names = names or _default_names(f.nvars)
    num = mpoly_str(f.num, names, var)
    if not f.den:
        return num
    pieces = []
    for factor in sorted(f.den, key=_factor_key):
        power = f.den[factor]
        text = _factor_str(factor, names)
        pieces.append(text if power == 1 else f"{text}^{power}")
    return f"({num})/({'*'.join(pieces)})"
