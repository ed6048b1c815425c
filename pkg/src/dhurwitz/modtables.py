"""Correlator tables by modular sampling of the spectral-curve recursion.

The symbolic recursion engine in :mod:`dhurwitz.specrec` is exact but
far too slow for the larger coefficient tables: its scalars are rational
functions of the deformation square root, and the multivariate rational
arithmetic dominates everything.  This module recomputes the same tables
by specializing the deformation value to integer sample points and
running the whole residue calculus over the ring of integers modulo a
large squarefree modulus.  Under a specialization every intermediate
object collapses to one of three cheap shapes:

* a Laurent series in the local parameter at a branch point, with plain
  modular integers as coefficients;
* a truncated power series in the expansion variables attached to
  spectator slots, stored as a small dense tensor (one axis per slot,
  ``mu_max`` entries per axis);
* a partial-fraction label recording a pole order at one of the two
  branch points, for slots that must stay symbolic because a later
  residue will be taken in them.

Stable correlators have poles only at the branch points and vanish at
infinity, so each one is stored exactly as a map from pole-order labels
to tensor coefficients.  Feeding a stored correlator a local series then
only ever multiplies a scalar series by a tensor, never two multivariate
rational functions — which is what makes the modular pass fast.

A weighted table entry (the coefficient extraction times the product of
the parts) is a polynomial in the deformation parameter with
non-negative integer coefficients, so sampling enough points and
interpolating over the modular ring recovers it exactly provided every
coefficient stays below the modulus; a held-out extra sample certifies
each interpolated polynomial.  The composite modulus
``(2^61 - 1)(2^31 - 1)`` leaves about six orders of magnitude of
headroom over the largest coefficient in the supported ranges.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .polys import Poly

__all__ = ["ModEngine", "weighted_table", "interpolated_table", "MODULUS"]

MODULUS = ((1 << 61) - 1) * ((1 << 31) - 1)

# Exponent cap for the scalar Laurent windows; generous relative to the
# pole depths reachable in the supported range, and cheap because only
# scalar series carry this many terms.
_WCAP = 32

_Series = Tuple[int, int, List[int]]


def _minv(a: int, mod: int) -> int:
    return pow(a, -1, mod)


# ---------------------------------------------------------------------------
# Scalar Laurent series: (lo, hi, coeffs) with coeffs[k] the coefficient
# of u**(lo + k).  Coefficients below lo are exactly zero; those above hi
# are unknown.  Every operation tracks the window on which its result is
# exact, mirroring the discipline of the symbolic engine.


def _sl_trim(lo: int, hi: int, coeffs: List[int]) -> _Series:
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        lo += 1
    if not coeffs:
        lo = hi + 1
    return (lo, hi, coeffs)


def _sl_const(c: int) -> _Series:
    return (0, _WCAP, [c]) if c else (_WCAP + 1, _WCAP, [])


def _sl_mul(a: _Series, b: _Series, mod: int, cap: int = _WCAP) -> _Series:
    alo, ahi, ac = a
    blo, bhi, bc = b
    lo = alo + blo
    hi = min(ahi + blo, bhi + alo, cap)
    out = [0] * max(hi - lo + 1, 0)
    width = len(out)
    for i, av in enumerate(ac):
        if i >= width:
            break
        if not av:
            continue
        top = min(len(bc), width - i)
        for j in range(top):
            bv = bc[j]
            if bv:
                out[i + j] = (out[i + j] + av * bv) % mod
    return (lo, hi, out)


def _sl_add(a: _Series, b: _Series, mod: int) -> _Series:
    alo, ahi, ac = a
    blo, bhi, bc = b
    lo = min(alo, blo)
    hi = min(ahi, bhi)
    out = [0] * max(hi - lo + 1, 0)
    for src_lo, src in ((alo, ac), (blo, bc)):
        base = src_lo - lo
        for k, v in enumerate(src):
            if v and 0 <= base + k < len(out):
                out[base + k] = (out[base + k] + v) % mod
    return _sl_trim(lo, hi, out)


def _sl_neg(a: _Series, mod: int) -> _Series:
    lo, hi, c = a
    return (lo, hi, [(mod - v) % mod if v else 0 for v in c])


def _sl_inv(a: _Series, mod: int) -> _Series:
    lo, hi, c = _sl_trim(a[0], a[1], list(a[2]))
    if not c:
        raise ZeroDivisionError("inverting a series with no visible terms")
    width = hi - lo + 1
    lead = _minv(c[0], mod)
    out = [0] * width
    out[0] = lead
    for k in range(1, width):
        acc = 0
        for i in range(1, min(k, len(c) - 1) + 1):
            acc += c[i] * out[k - i]
        out[k] = (mod - acc % mod) * lead % mod
    return (-lo, hi - 2 * lo, out)


def _sl_deriv(a: _Series) -> _Series:
    lo, hi, c = a
    out = [v * (lo + k) for k, v in enumerate(c)]
    return _sl_trim(lo - 1, hi - 1, out)


def _poly_at_series(coeffs: Sequence[int], s: _Series, mod: int) -> _Series:
    """Evaluate a polynomial (ascending coefficients) on a series."""
    acc = _sl_const(coeffs[-1] % mod if coeffs else 0)
    for c in reversed(coeffs[:-1]):
        acc = _sl_add(_sl_mul(acc, s, mod), _sl_const(c % mod), mod)
    return acc


# ---------------------------------------------------------------------------
# Truncated power series in one expansion variable, stored as plain
# lists of a fixed length.


def _u_mul(a: List[int], b: List[int], mod: int) -> List[int]:
    m = len(a)
    out = [0] * m
    for i, av in enumerate(a):
        if av:
            for j in range(m - i):
                bv = b[j]
                if bv:
                    out[i + j] = (out[i + j] + av * bv) % mod
    return out


def _u_inv(a: List[int], mod: int) -> List[int]:
    m = len(a)
    lead = _minv(a[0], mod)
    out = [0] * m
    out[0] = lead
    for k in range(1, m):
        acc = 0
        for i in range(1, k + 1):
            acc += a[i] * out[k - i]
        out[k] = (mod - acc % mod) * lead % mod
    return out


def _poly_sq(coeffs: Sequence[int], mod: int) -> List[int]:
    out = [0] * (2 * len(coeffs) - 1)
    for i, a in enumerate(coeffs):
        if a:
            for j, b in enumerate(coeffs):
                if b:
                    out[i + j] = (out[i + j] + a * b) % mod
    return out


def _flat_offsets(axes: Tuple[int, ...], stride: Dict[int, int], m: int) -> List[int]:
    out = [0]
    for ax in axes:
        step = stride[ax]
        out = [base + d * step for base in out for d in range(m)]
    return out


def _revert(series: List[int], order: int, mod: int) -> List[int]:
    """Compositional inverse of a power series with zero constant term."""
    lead = _minv(series[1], mod)
    inverse = [0, lead]
    for k in range(2, order + 1):
        composed = _compose(series[: k + 1], inverse, k + 1, mod)
        err = composed[k]
        inverse.append((mod - err) * lead % mod)
    return inverse


def _compose(outer: List[int], inner: List[int], width: int, mod: int) -> List[int]:
    acc = [0] * width
    power = [1] + [0] * (width - 1)
    for c in outer:
        if c:
            for i, v in enumerate(power):
                if v:
                    acc[i] = (acc[i] + c * v) % mod
        nxt = [0] * width
        for i, v in enumerate(power):
            if v:
                for j, w in enumerate(inner):
                    if w and i + j < width:
                        nxt[i + j] = (nxt[i + j] + v * w) % mod
        power = nxt
    return acc


def _stable_splits(g: int, n: int) -> Iterator[Tuple[int, Tuple[int, ...], int, Tuple[int, ...]]]:
    """Ordered genus/spectator splittings, excluding one-holed genus-zero
    factors on either side."""
    rest = list(range(1, n))
    subsets: List[List[int]] = [[]]
    for v in rest:
        subsets += [chosen + [v] for chosen in subsets]
    for g1 in range(g + 1):
        g2 = g - g1
        for left in subsets:
            right = [v for v in rest if v not in left]
            if (g1 == 0 and not left) or (g2 == 0 and not right):
                continue
            yield g1, tuple(left), g2, tuple(right)


# ---------------------------------------------------------------------------


class ModEngine:
    """Residue calculus for one curve family at one specialization.

    ``s0`` is an integer value of the square root of the deformation
    parameter; all arithmetic happens modulo ``mod``.  Stored correlator
    coefficients are tensors over expansion axes of size ``mu_max``.
    """

    def __init__(self, family: str, s0: int, mu_max: int, mod: int = MODULUS):
        if family not in ("monotone", "dessin"):
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.mod = mod
        self.m = mu_max
        self.t = s0 * s0 % mod
        one_minus_t = (1 - self.t) % mod
        # Branch points 1/(1 -+ s) of the degree-two projection; the deck
        # involution sigma(z) = (1 - z)/(1 - (1 - t)z) fixes them.
        self.branch = [_minv((1 - s0) % mod, mod), _minv((1 + s0) % mod, mod)]
        self.sigma = ([1, mod - 1], [1, (mod - one_minus_t) % mod])
        if family == "monotone":
            self.y_rat = ([1, (mod - one_minus_t) % mod], [1, mod - 1])
            self.xp_rat = (
                [1, mod - 2, one_minus_t],
                _poly_sq([1, (mod - one_minus_t) % mod], mod),
            )
        else:
            self.y_rat = ([0, 1], [1])
            self.xp_rat = (
                [mod - 1, 2, (mod - one_minus_t) % mod],
                _poly_sq([0, 1, mod - 1], mod),
            )
        self._z_setup()
        self._store: Dict[Tuple[int, int, int], dict] = {}
        self._branch_cache: Dict[int, dict] = {}
        self._outer_cache: dict = {}
        self._zinv: dict = {}

    # -- expansion-coordinate data --------------------------------------

    def _z_setup(self) -> None:
        mod, m = self.mod, self.m
        order = m + 1
        if self.family == "monotone":
            # x = z(1 - z)/(1 - (1 - t)z), expanded at z = 0 and reverted.
            ratio = (1 - self.t) % mod
            geom = [1] * (order + 1)
            for k in range(1, order + 1):
                geom[k] = geom[k - 1] * ratio % mod
            x_ser = [0] * (order + 1)
            for k in range(1, order + 1):
                x_ser[k] = (geom[k - 1] - (geom[k - 2] if k >= 2 else 0)) % mod
            z_of = _revert(x_ser, order, mod)
        else:
            # The expansion variable is the reciprocal of x near z = 1;
            # with z = 1 + w it equals (1 + w)(-w)/(t - (1 - t)w), which
            # is reverted as a series in w.
            tinv = _minv(self.t, mod)
            ratio = (1 - self.t) * tinv % mod
            geom = [1] * (order + 1)
            for k in range(1, order + 1):
                geom[k] = geom[k - 1] * ratio % mod
            xi_ser = [0] * (order + 1)
            for k in range(1, order + 1):
                xi_ser[k] = (-(geom[k - 1] + (geom[k - 2] if k >= 2 else 0))) * tinv % mod
            w_of = _revert(xi_ser, order, mod)
            z_of = list(w_of)
            z_of[0] = 1
        self.z_of_xi = z_of[: m + 1]
        self.zd_of_xi = [z_of[k + 1] * (k + 1) % mod for k in range(m)]

    def _z_minus_a_invpow(self, b: int, j: int) -> List[int]:
        """Expansion coefficients of 1/(Z(xi) - a_b)**j."""
        key = (b, j)
        cached = self._zinv.get(key)
        if cached is not None:
            return cached
        if j == 1:
            shifted = [
                (self.z_of_xi[k] - (self.branch[b] if k == 0 else 0)) % self.mod
                for k in range(self.m)
            ]
            out = _u_inv(shifted, self.mod)
        else:
            out = _u_mul(self._z_minus_a_invpow(b, j - 1), self._z_minus_a_invpow(b, 1), self.mod)
        self._zinv[key] = out
        return out

    # -- per-branch scalar data -----------------------------------------

    def _branch_data(self, bidx: int) -> dict:
        cached = self._branch_cache.get(bidx)
        if cached is not None:
            return cached
        mod = self.mod
        a = self.branch[bidx]
        s_z: _Series = (0, _WCAP, [a, 1])
        num, den = self.sigma
        s_sigma = _sl_mul(
            _poly_at_series(num, s_z, mod),
            _sl_inv(_poly_at_series(den, s_z, mod), mod),
            mod,
        )
        g = _sl_add(s_sigma, _sl_const((mod - a) % mod), mod)
        y_num, y_den = self.y_rat
        y_z = _sl_mul(
            _poly_at_series(y_num, s_z, mod),
            _sl_inv(_poly_at_series(y_den, s_z, mod), mod),
            mod,
        )
        y_s = _sl_mul(
            _poly_at_series(y_num, s_sigma, mod),
            _sl_inv(_poly_at_series(y_den, s_sigma, mod), mod),
            mod,
        )
        xp_num, xp_den = self.xp_rat
        xp = _sl_mul(
            _poly_at_series(xp_num, s_z, mod),
            _sl_inv(_poly_at_series(xp_den, s_z, mod), mod),
            mod,
        )
        delta = _sl_add(y_z, _sl_neg(y_s, mod), mod)
        denom = _sl_mul(delta, xp, mod)
        denom = (denom[0], denom[1], [2 * v % mod for v in denom[2]])
        # Slots fed with the image of the involution carry its
        # derivative; the factor multiplies every term of the recursion,
        # so it is folded into the kernel once.
        k0 = _sl_mul(_sl_deriv(s_sigma), _sl_inv(denom, mod), mod)
        data = {"a": a, "g": g, "k0": k0, "streams": {}, "gpow": {0: _sl_const(1)}}
        self._branch_cache[bidx] = data
        return data

    def _gpow(self, data: dict, k: int) -> _Series:
        cached = data["gpow"].get(k)
        if cached is None:
            cached = _sl_mul(self._gpow(data, k - 1), data["g"], self.mod)
            data["gpow"][k] = cached
        return cached

    def _stream(self, bidx: int, which: str, b: int, j: int) -> _Series:
        """Series of 1/(S(u) - a_b)**j at branch ``bidx``, where S is the
        plain slot (``which == "z"``) or the involution slot ("s")."""
        data = self._branch_data(bidx)
        key = (which, b, j)
        cached = data["streams"].get(key)
        if cached is not None:
            return cached
        mod = self.mod
        if j > 1:
            out = _sl_mul(self._stream(bidx, which, b, j - 1), self._stream(bidx, which, b, 1), mod)
        else:
            shift = _sl_const((data["a"] - self.branch[b]) % mod)
            base = _sl_add((1, _WCAP, [1]) if which == "z" else data["g"], shift, mod)
            out = _sl_inv(base, mod)
        data["streams"][key] = out
        return out

    def _eta(self, bidx: int, j: int) -> _Series:
        """Kernel numerator stream attached to an order-``j`` pole: the
        component of 1/(z - S_z) - 1/(z - S_sigma) along (z - a)**(-j)."""
        data = self._branch_data(bidx)
        spike: _Series = (j - 1, _WCAP, [1])
        return _sl_add(spike, _sl_neg(self._gpow(data, j - 1), self.mod), self.mod)

    # -- tensors ---------------------------------------------------------

    def _outer(self, a: tuple, b: tuple) -> tuple:
        axes_a, data_a = a
        axes_b, data_b = b
        if not axes_a and not axes_b:
            return ((), [data_a[0] * data_b[0] % self.mod])
        key = (axes_a, axes_b)
        plan = self._outer_cache.get(key)
        if plan is None:
            axes = tuple(sorted(axes_a + axes_b))
            stride: Dict[int, int] = {}
            step = 1
            for ax in reversed(axes):
                stride[ax] = step
                step *= self.m
            plan = (
                axes,
                step,
                _flat_offsets(axes_a, stride, self.m),
                _flat_offsets(axes_b, stride, self.m),
            )
            self._outer_cache[key] = plan
        axes, total, off_a, off_b = plan
        mod = self.mod
        out = [0] * total
        for i, av in enumerate(data_a):
            if av:
                oa = off_a[i]
                for j, bv in enumerate(data_b):
                    if bv:
                        out[oa + off_b[j]] = av * bv % mod
        return (axes, out)

    def _t_add_into(self, acc: dict, labels: tuple, tensor: tuple, scale: int = 1) -> None:
        mod = self.mod
        axes, data = tensor
        cur = acc.get(labels)
        if cur is None:
            acc[labels] = (axes, [v * scale % mod for v in data] if scale != 1 else list(data))
            return
        cdata = cur[1]
        if scale == 1:
            for k, v in enumerate(data):
                if v:
                    cdata[k] = (cdata[k] + v) % mod
        else:
            for k, v in enumerate(data):
                if v:
                    cdata[k] = (cdata[k] + v * scale) % mod

    # -- labelled tensor series -----------------------------------------
    #
    # Same (lo, hi, coeffs) windowing as scalar series, but each
    # coefficient is either None or a dict mapping a label tuple to a
    # tensor.  Labels are sorted tuples of (slot, branch, order) triples
    # naming pole orders in symbolic spectator slots.

    def _tls_mul(self, a: tuple, b: tuple, cap: int) -> tuple:
        alo, ahi, ac = a
        blo, bhi, bc = b
        lo = alo + blo
        hi = min(ahi + blo, bhi + alo, cap)
        out: List[Optional[dict]] = [None] * max(hi - lo + 1, 0)
        width = len(out)
        for i, ea in enumerate(ac):
            if i >= width:
                break
            if not ea:
                continue
            for j in range(min(len(bc), width - i)):
                eb = bc[j]
                if not eb:
                    continue
                slot = out[i + j]
                if slot is None:
                    slot = out[i + j] = {}
                for la, ta in ea.items():
                    for lb, tb in eb.items():
                        self._t_add_into(slot, tuple(sorted(la + lb)), self._outer(ta, tb))
        return (lo, hi, out)

    def _tls_scale_sl(self, tls: tuple, sl: _Series, cap: int) -> tuple:
        lo, hi, coeffs = tls
        slo, shi, sc = sl
        rlo = lo + slo
        rhi = min(hi + slo, shi + lo, cap)
        out: List[Optional[dict]] = [None] * max(rhi - rlo + 1, 0)
        width = len(out)
        for i, entry in enumerate(coeffs):
            if i >= width:
                break
            if not entry:
                continue
            for j in range(min(len(sc), width - i)):
                v = sc[j]
                if not v:
                    continue
                slot = out[i + j]
                if slot is None:
                    slot = out[i + j] = {}
                for labels, tensor in entry.items():
                    self._t_add_into(slot, labels, tensor, v)
        return (rlo, rhi, out)

    # -- explicit two-point pieces --------------------------------------

    def _w02_local(self, bidx: int, cap: int) -> tuple:
        """1/(S_z - S_sigma)**2 as a labelled series with scalar tensors."""
        data = self._branch_data(bidx)
        diff = _sl_add((1, _WCAP, [1]), _sl_neg(data["g"], self.mod), self.mod)
        inv = _sl_inv(diff, self.mod)
        lo, hi, coeffs = _sl_mul(inv, inv, self.mod, cap)
        out: List[Optional[dict]] = [
            {(): ((), [v])} if v else None for v in coeffs
        ]
        return (lo, hi, out)

    def _w02_axis(self, bidx: int, which: str, axis: int, cap: int) -> tuple:
        """1/(S(u) - Z(xi_axis))**2 as a labelled series."""
        mod, m = self.mod, self.m
        data = self._branch_data(bidx)
        shifted = [((data["a"] if k == 0 else 0) - self.z_of_xi[k]) % mod for k in range(m)]
        cinv = _u_inv(shifted, mod)
        cpow = _u_mul(cinv, cinv, mod)
        h = (1, _WCAP, [1]) if which == "z" else data["g"]
        acc: List[dict] = [{} for _ in range(cap + 1)]
        hpow = _sl_const(1)
        for k in range(cap + 1):
            sign = mod - 1 if k % 2 else 1
            scale = (k + 1) * sign % mod
            slo, _shi, sc = hpow
            for idx, v in enumerate(sc):
                exp = slo + idx
                if exp > cap:
                    break
                if v:
                    self._t_add_into(acc[exp], (), ((axis,), cpow), v * scale % mod)
            hpow = _sl_mul(hpow, h, mod, cap)
            cpow = _u_mul(cpow, cinv, mod)
        return (0, cap, [entry if entry else None for entry in acc])

    def _w02_sym(self, bidx: int, which: str, slot: int, cap: int) -> tuple:
        """1/(z_slot - S(u))**2 in partial fractions at the branch point."""
        mod = self.mod
        data = self._branch_data(bidx)
        h = (1, _WCAP, [1]) if which == "z" else data["g"]
        acc: List[dict] = [{} for _ in range(cap + 1)]
        hpow = _sl_const(1)
        for k in range(cap + 1):
            label = ((slot, bidx, k + 2),)
            scale = (k + 1) % mod
            slo, _shi, sc = hpow
            for idx, v in enumerate(sc):
                exp = slo + idx
                if exp > cap:
                    break
                if v:
                    self._t_add_into(acc[exp], label, ((), [1]), v * scale % mod)
            hpow = _sl_mul(hpow, h, mod, cap)
        return (0, cap, [entry if entry else None for entry in acc])

    # -- the recursion ---------------------------------------------------

    def build(self, g: int, n: int, k: int) -> dict:
        """Partial-fraction store for the genus-``g`` ``n``-slot
        correlator with ``k`` symbolic slots (the recursion slot plus
        ``k - 1`` spectators); the remaining ``n - k`` slots are
        expansion axes ``0 .. n - k - 1``.  Keys are tuples of ``k``
        (branch, order) pairs in slot order; values are tensors."""
        key = (g, n, k)
        cached = self._store.get(key)
        if cached is not None:
            return cached
        if 2 * g - 2 + n <= 0:
            raise ValueError("only stable correlators are stored")
        out: dict = {}
        for bidx in range(2):
            self._branch_residue(out, bidx, g, n, k)
        self._store[key] = out
        return out

    def _terms(self, g: int, n: int, sym: int) -> List[list]:
        """Piece lists for every term of the residue formula.  Ambient
        spectator ids run 1..n-1; ids <= sym stay symbolic, larger ids
        become expansion axes (ambient id minus sym minus 1)."""
        terms = []
        if g >= 1:
            terms.append([self._consume(g - 1, n + 1, ("z", "s"), tuple(range(1, n)), sym)])
        for g1, left, g2, right in _stable_splits(g, n):
            terms.append(
                [
                    self._consume(g1, 1 + len(left), ("z",), left, sym),
                    self._consume(g2, 1 + len(right), ("s",), right, sym),
                ]
            )
        return terms

    def _consume(self, g: int, n: int, which: tuple, ambient: tuple, sym: int) -> tuple:
        """Describe one lower-correlator factor of a term: ``which`` names
        the local series fed to its leading slots, ``ambient`` the
        spectator ids it covers."""
        sym_ids = tuple(v for v in ambient if v <= sym)
        axis_ids = tuple(v - sym - 1 for v in ambient if v > sym)
        if (g, n) == (0, 2):
            if len(which) == 2:
                return ("w02_local",)
            if sym_ids:
                return ("w02_sym", which[0], sym_ids[0])
            return ("w02_axis", which[0], axis_ids[0])
        store = self.build(g, n, len(which) + len(sym_ids))
        return ("store", store, which, sym_ids, axis_ids)

    def _piece_lo_bound(self, bidx: int, piece: tuple) -> int:
        if piece[0] != "store":
            return -2 if piece[0] == "w02_local" else 0
        _, store, which, _sym_ids, _axis_ids = piece
        worst = 0
        for pfkey in store:
            drop = sum(j for (b, j) in pfkey[: len(which)] if b == bidx)
            worst = max(worst, drop)
        return -worst

    def _eval_piece(self, bidx: int, piece: tuple, cap: int) -> tuple:
        kind = piece[0]
        if kind == "w02_local":
            return self._w02_local(bidx, cap)
        if kind == "w02_axis":
            return self._w02_axis(bidx, piece[1], piece[2], cap)
        if kind == "w02_sym":
            return self._w02_sym(bidx, piece[1], piece[2], cap)
        _, store, which, sym_ids, axis_ids = piece
        base_lo = self._piece_lo_bound(bidx, piece)
        acc: List[dict] = [{} for _ in range(cap - base_lo + 1)]
        nstream = len(which)
        for pfkey, tensor in store.items():
            # The product must stay uncapped: a later factor with a pole
            # at this branch shifts valuations down, so capped partial
            # products would lose needed coefficients.
            stream = _sl_const(1)
            for (b, j), w in zip(pfkey[:nstream], which):
                stream = _sl_mul(stream, self._stream(bidx, w, b, j), self.mod)
            labels = tuple(sorted((slot, b, j) for slot, (b, j) in zip(sym_ids, pfkey[nstream:])))
            relabeled = (axis_ids, tensor[1])
            slo, shi, sc = stream
            if shi < cap:
                raise ArithmeticError("stream window too narrow; raise the cap")
            for idx, v in enumerate(sc):
                exp = slo + idx
                if exp > cap:
                    break
                if v:
                    self._t_add_into(acc[exp - base_lo], labels, relabeled, v)
        return (base_lo, cap, [entry if entry else None for entry in acc])

    def _branch_residue(self, out: dict, bidx: int, g: int, n: int, k: int) -> None:
        mod = self.mod
        sym = k - 1
        terms = self._terms(g, n, sym)
        lows = [[self._piece_lo_bound(bidx, p) for p in pieces] for pieces in terms]
        term_lows = [sum(ls) for ls in lows]
        base_lo = min([0] + term_lows)
        w_sum: List[dict] = [{} for _ in range(0 - base_lo + 1)]
        for pieces, piece_lows, term_lo in zip(terms, lows, term_lows):
            series = None
            for piece, plo in zip(pieces, piece_lows):
                cap = 0 - (term_lo - plo)
                evaluated = self._eval_piece(bidx, piece, cap)
                series = evaluated if series is None else self._tls_mul(series, evaluated, 0)
            lo, _hi, coeffs = series
            for idx, entry in enumerate(coeffs):
                if entry:
                    pos = lo + idx - base_lo
                    if 0 <= pos < len(w_sum):
                        for labels, tensor in entry.items():
                            self._t_add_into(w_sum[pos], labels, tensor)
        data = self._branch_data(bidx)
        kw = self._tls_scale_sl(
            (base_lo, 0, [entry if entry else None for entry in w_sum]), data["k0"], -1
        )
        kw_lo, _kw_hi, kw_coeffs = kw
        for j in range(2, -kw_lo + 1):
            elo, _ehi, ec = self._eta(bidx, j)
            target: dict = {}
            for idx, v in enumerate(ec):
                pos = -1 - (elo + idx) - kw_lo
                if pos < 0:
                    break
                if v and pos < len(kw_coeffs) and kw_coeffs[pos]:
                    for labels, tensor in kw_coeffs[pos].items():
                        self._t_add_into(target, labels, tensor, v)
            for labels, (axes, data_list) in target.items():
                if not any(data_list):
                    continue
                pfkey = ((bidx, j),) + tuple((b, jj) for (_slot, b, jj) in labels)
                cur = out.get(pfkey)
                if cur is None:
                    out[pfkey] = (axes, list(data_list))
                else:
                    cdata = cur[1]
                    for i, v in enumerate(data_list):
                        if v:
                            cdata[i] = (cdata[i] + v) % mod

    # -- extraction ------------------------------------------------------

    def _axis_mul(self, data: List[int], n_axes: int, axis: int, uni: List[int]) -> List[int]:
        m, mod = self.m, self.mod
        stride = m ** (n_axes - 1 - axis)
        block = stride * m
        out = [0] * len(data)
        for base in range(0, len(data), block):
            for pos in range(base, base + stride):
                for i in range(m):
                    v = data[pos + i * stride]
                    if v:
                        for j in range(m - i):
                            w = uni[j]
                            if w:
                                idx = pos + (i + j) * stride
                                out[idx] = (out[idx] + v * w) % mod
        return out

    def weighted_tensor(self, g: int, n: int) -> List[int]:
        """Flat tensor over ``n`` expansion axes whose entry at
        multi-index (d_1 - 1, ..., d_n - 1) is d_1 ... d_n times the
        (g; d_1, ..., d_n) coefficient, modulo the modulus."""
        store = self.build(g, n, 1)
        m, mod = self.m, self.mod
        acc = [0] * m**n
        spectator_axes = tuple(range(n - 1))
        for pfkey, tensor in store.items():
            ((b, j),) = pfkey
            uni = self._z_minus_a_invpow(b, j)
            _axes, fdata = self._outer(((n - 1,), uni), (spectator_axes, tensor[1]))
            for i, v in enumerate(fdata):
                if v:
                    acc[i] = (acc[i] + v) % mod
        for axis in range(n):
            acc = self._axis_mul(acc, n, axis, self.zd_of_xi)
        return acc

    def weighted_values(self, g: int, n: int) -> Dict[Tuple[int, ...], int]:
        """Weighted table entries for all sorted part tuples with parts
        up to the engine's bound."""
        tensor = self.weighted_tensor(g, n)
        m = self.m
        out: Dict[Tuple[int, ...], int] = {}
        for mu in itertools.combinations_with_replacement(range(1, m + 1), n):
            idx = 0
            for d in mu:
                idx = idx * m + (d - 1)
            out[mu] = tensor[idx]
        return out


# ---------------------------------------------------------------------------
# Interpolation over sample points.


def _newton_poly_mod(ts: List[int], vs: List[int], mod: int) -> List[int]:
    """Ascending coefficients of the interpolating polynomial mod ``mod``."""
    npts = len(ts)
    coef = [v % mod for v in vs]
    for level in range(1, npts):
        for i in range(npts - 1, level - 1, -1):
            inv = _minv((ts[i] - ts[i - level]) % mod, mod)
            coef[i] = (coef[i] - coef[i - 1]) * inv % mod
    poly = [0] * npts
    for i in reversed(range(npts)):
        ti = ts[i] % mod
        new = [0] * npts
        for deg in reversed(range(npts - 1)):
            new[deg + 1] = (new[deg + 1] + poly[deg]) % mod
            new[deg] = (new[deg] - poly[deg] * ti) % mod
        new[0] = (new[0] + coef[i]) % mod
        poly = new
    return poly


def _eval_mod(coeffs: List[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def _weighted_degree(family: str, g: int, total: int, n: int) -> int:
    if family == "monotone":
        return total - 1
    return max(total + 1 - 2 * g - n, 0)


def weighted_table(family: str, g: int, n: int, mu_max: int) -> Dict[Tuple[int, ...], List[int]]:
    """Weighted coefficient tables as exact integer polynomials.

    Returns a map from each sorted part tuple to the ascending integer
    coefficient list (in the deformation parameter) of the table value
    times the product of the parts.  Entries are reconstructed from
    modular samples; every interpolation is checked on a held-out sample
    point, and a failure raises :class:`ArithmeticError`.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError("weighted tables cover stable cases only")
    deg = _weighted_degree(family, g, n * mu_max, n)
    needed = deg + 2  # one extra sample held out for verification
    samples: List[Tuple[int, Dict[Tuple[int, ...], int]]] = []
    s0 = 2
    while len(samples) < needed:
        try:
            engine = ModEngine(family, s0, mu_max)
            values = engine.weighted_values(g, n)
        except (ZeroDivisionError, ValueError):
            s0 += 1
            continue
        samples.append((s0 * s0 % MODULUS, values))
        s0 += 1
    ts = [t for t, _ in samples]
    hold_t, hold_vals = samples[-1]
    out: Dict[Tuple[int, ...], List[int]] = {}
    for mu in samples[0][1]:
        d = _weighted_degree(family, g, sum(mu), n)
        vs = [vals[mu] for _, vals in samples[: d + 1]]
        coeffs = _newton_poly_mod(ts[: d + 1], vs, MODULUS)
        if _eval_mod(coeffs, hold_t, MODULUS) != hold_vals[mu]:
            raise ArithmeticError(f"held-out sample mismatch for parts {mu}")
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        out[mu] = coeffs
    return out


def interpolated_table(family: str, g: int, n: int, mu_max: int) -> Dict[Tuple[int, ...], Poly]:
    """Coefficient tables as polynomials in the deformation parameter.

    Returns a map from each sorted part tuple to the (g; parts)
    coefficient — the weighted entry divided by the product of the
    parts — with exact rational coefficients.
    """
    weighted = weighted_table(family, g, n, mu_max)
    out: Dict[Tuple[int, ...], Poly] = {}
    for mu, coeffs in weighted.items():
        scale = 1
        for d in mu:
            scale *= d
        out[mu] = Poly([Fraction(c, scale) for c in coeffs])
    return out
