"""Formal group laws and truncated power series over exact contexts.

Two families are implemented: the multiplicative law F(x, y) =
x + y + x y with exact integer coefficients, and the Honda law of
height n at a prime p, whose logarithm is sum_i y^(p^(n i)) / p^i.

The Honda p-series is found by solving the scaled functional equation

    L(psi) = p * L(y),    L = p^imax * log,  truncated below y^M,

by a fixed point iteration.  One pass gains p^n - 1 correct degrees and
performs a single division by p^imax, which is exact provided the
series is truncated progressively to its settled prefix; working modulo
p^(N + imax) leaves every retained coefficient correct mod p^N.  The
same iteration run over Fraction verifies the prefix at construction.

Weierstrass preparation factors a series with some unit coefficient as
(distinguished monic polynomial) * (unit series) by quadratic Hensel
lifting.  Coefficient m of an intermediate array of length W is
reliable mod p^min(N, floor((W - 1 - m) / d)), so the distinguished
factor of a series of length at least (N + 2) d + 1 comes out correct
mod p^N, while the unit is returned only on its reliable prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeff import (
    ZZ,
    Coefficient,
    Context,
    ContextMismatch,
    NonUnitError,
    _is_prime,
    invert,
    padic_context,
    reduce,
)


class PrecisionError(Exception):
    """A series is not known to the precision an operation needs."""


class WeierstrassError(Exception):
    """Weierstrass preparation failed or does not apply."""


_INF = float("inf")


def _np_safe(modulus: int, length: int) -> bool:
    # every convolution partial sum must fit in int64
    return (modulus - 1) ** 2 * max(length, 1) < 2**63


def _mul_raw(a, b, modulus, out_len):
    """Truncated convolution of raw coefficient lists.

    modulus None means exact (int or Fraction) arithmetic.  The result
    always has length exactly out_len.
    """
    if out_len <= 0:
        return []
    la, lb = min(len(a), out_len), min(len(b), out_len)
    if la == 0 or lb == 0:
        return [0] * out_len
    if modulus is not None and _np_safe(modulus, min(la, lb)):
        conv = np.convolve(
            np.asarray(a[:la], dtype=np.int64), np.asarray(b[:lb], dtype=np.int64)
        )
        vals = (conv[:out_len] % modulus).tolist()
        return vals + [0] * (out_len - len(vals))
    out = [0] * min(out_len, la + lb - 1)
    for i in range(la):
        av = a[i]
        if not av:
            continue
        jtop = min(lb, out_len - i)
        for j in range(jtop):
            bv = b[j]
            if bv:
                out[i + j] += av * bv
    if modulus is not None:
        out = [v % modulus for v in out]
    return out + [0] * (out_len - len(out))


def _pow_raw(base, e, modulus, out_len):
    result = [1] + [0] * (out_len - 1)
    cur = list(base[:out_len]) + [0] * max(0, out_len - len(base))
    while e:
        if e & 1:
            result = _mul_raw(result, cur, modulus, out_len)
        e >>= 1
        if e:
            cur = _mul_raw(cur, cur, modulus, out_len)
    return result


def _inv_raw(c, modulus, length):
    """Newton inverse of a unit series given as a raw mod-m list."""
    try:
        v = [pow(c[0], -1, modulus)]
    except ValueError:
        raise NonUnitError("constant term %d is not a unit mod %d" % (c[0], modulus))
    cur = 1
    while cur < length:
        cur = min(length, 2 * cur)
        t = _mul_raw(c[:cur], v, modulus, cur)
        t = [(-x) % modulus for x in t]
        t[0] = (t[0] + 2) % modulus
        v = _mul_raw(v, t, modulus, cur)
    return v + [0] * (length - len(v))


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known through degree len(coeffs) - 1.

    ``exact`` promises that every omitted coefficient is genuinely zero,
    so the series is a polynomial and survives any precision demand.
    Trailing zeros of exact series are trimmed to a canonical form.
    """

    context: Context
    coeffs: tuple
    exact: bool = False

    def __post_init__(self):
        vals = [self.context.canon(v) for v in self.coeffs]
        if self.exact:
            while vals and vals[-1] == 0:
                vals.pop()
        elif not vals:
            raise PrecisionError("a truncated series must know at least one degree")
        object.__setattr__(self, "coeffs", tuple(vals))

    @property
    def prec(self):
        """Known length; None for an exact polynomial."""
        return None if self.exact else len(self.coeffs)

    def _eff(self):
        return _INF if self.exact else len(self.coeffs)

    def coefficient(self, i: int) -> Coefficient:
        if i < 0:
            raise IndexError(i)
        if i < len(self.coeffs):
            return Coefficient(self.coeffs[i], self.context)
        if self.exact:
            return self.context.zero()
        raise PrecisionError("coefficient %d beyond precision %d" % (i, len(self.coeffs)))

    def valuation(self):
        """Least degree with a nonzero known coefficient, or None."""
        for i, v in enumerate(self.coeffs):
            if v:
                return i
        return None

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def _match(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected TruncatedSeries, got %r" % (other,))
        if other.context != self.context:
            raise ContextMismatch(
                "series contexts differ: %s vs %s"
                % (self.context.describe(), other.context.describe())
            )

    def _entry(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __add__(self, other):
        self._match(other)
        L = min(self._eff(), other._eff())
        if L == _INF:
            n = max(len(self.coeffs), len(other.coeffs))
            vals = [self._entry(i) + other._entry(i) for i in range(n)]
            return TruncatedSeries(self.context, tuple(vals), True)
        L = int(L)
        vals = [self._entry(i) + other._entry(i) for i in range(L)]
        return TruncatedSeries(self.context, tuple(vals), False)

    def __neg__(self):
        return TruncatedSeries(self.context, tuple(-v for v in self.coeffs), self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._match(other)
        m = self.context.modulus
        if self.exact and other.exact:
            if not self.coeffs or not other.coeffs:
                return TruncatedSeries(self.context, (), True)
            out_len = len(self.coeffs) + len(other.coeffs) - 1
            vals = _mul_raw(list(self.coeffs), list(other.coeffs), m, out_len)
            return TruncatedSeries(self.context, tuple(vals), True)
        L = int(min(self._eff(), other._eff()))
        vals = _mul_raw(list(self.coeffs), list(other.coeffs), m, L)
        return TruncatedSeries(self.context, tuple(vals), False)

    def scale(self, c: Coefficient):
        if c.context != self.context:
            raise ContextMismatch(
                "scalar context %s does not match series context %s"
                % (c.context.describe(), self.context.describe())
            )
        vals = tuple(v * c.value for v in self.coeffs)
        return TruncatedSeries(self.context, vals, self.exact)

    def compose(self, inner: "TruncatedSeries"):
        """self(inner); inner must have zero constant term."""
        self._match(inner)
        if inner.coeffs and inner.coeffs[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        m = self.context.modulus
        if self.exact and inner.exact:
            acc = TruncatedSeries(self.context, (), True)
            for k in range(len(self.coeffs) - 1, -1, -1):
                acc = acc * inner + TruncatedSeries(self.context, (self.coeffs[k],), True)
            return acc
        L = int(min(self._eff(), inner._eff()))
        b = list(inner.coeffs[:L]) + [0] * max(0, L - len(inner.coeffs))
        acc = [0] * L
        kmax = min(len(self.coeffs), L)
        for k in range(kmax - 1, -1, -1):
            acc = _mul_raw(acc, b, m, L)
            acc[0] = acc[0] + self.coeffs[k]
            if m is not None:
                acc[0] %= m
        return TruncatedSeries(self.context, tuple(acc), False)

    def truncate(self, L: int):
        """Forget everything from degree L on; the result is never exact."""
        if L < 1:
            raise PrecisionError("cannot truncate below length 1")
        if len(self.coeffs) >= L:
            return TruncatedSeries(self.context, self.coeffs[:L], False)
        if self.exact:
            vals = self.coeffs + (0,) * (L - len(self.coeffs))
            return TruncatedSeries(self.context, vals, False)
        raise PrecisionError(
            "series only known to length %d, wanted %d" % (len(self.coeffs), L)
        )

    def reduce_context(self, target: Context):
        vals = tuple(reduce(Coefficient(v, self.context), target).value for v in self.coeffs)
        return TruncatedSeries(target, vals, self.exact)

    def __repr__(self):
        terms = []
        for i, v in enumerate(self.coeffs):
            if v:
                terms.append("%s*y^%d" % (v, i))
            if len(terms) >= 5:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.exact else " + O(y^%d)" % len(self.coeffs)
        return "TruncatedSeries(%s; %s%s)" % (self.context.describe(), body, tail)


def y_series(context: Context) -> TruncatedSeries:
    return TruncatedSeries(context, (0, 1), True)


def exact_quotient_by_y(s: TruncatedSeries) -> TruncatedSeries:
    """Divide by y a series with vanishing constant term.

    The precision drops by one: a length-M input yields length M - 1.
    """
    if not s.coeffs:
        return s
    if s.coeffs[0] != 0:
        raise ValueError("constant term is nonzero; not divisible by y")
    if not s.exact and len(s.coeffs) <= 1:
        raise PrecisionError("nothing would remain after dividing by y")
    return TruncatedSeries(s.context, s.coeffs[1:], s.exact)


def series_inverse(s: TruncatedSeries, length: int | None = None) -> TruncatedSeries:
    """Multiplicative inverse of a series whose constant term is a unit."""
    c0 = s.coefficient(0)
    if not c0.is_unit():
        raise NonUnitError("constant term %r is not a unit" % (c0.value,))
    if length is None:
        if s.exact:
            raise PrecisionError("inverse of an exact polynomial needs an explicit length")
        length = len(s.coeffs)
    ctx = s.context
    raw = list(s.coeffs[:length]) + [0] * max(0, length - len(s.coeffs))
    if not s.exact and len(s.coeffs) < length:
        raise PrecisionError("series only known to length %d" % len(s.coeffs))
    if ctx.kind == "padic":
        vals = _inv_raw(raw, ctx.modulus, length)
        return TruncatedSeries(ctx, tuple(vals), False)
    # triangular back-substitution, fine for the exact and mod-p contexts
    inv0 = invert(c0).value
    v = [inv0] + [0] * (length - 1)
    for k in range(1, length):
        acc = 0
        for j in range(1, k + 1):
            if raw[j] and v[k - j]:
                acc += raw[j] * v[k - j]
        v[k] = ctx.canon(-inv0 * acc)
    return TruncatedSeries(ctx, tuple(v), False)


def _honda_imax(p: int, n: int, M: int) -> int:
    imax = 0
    while p ** (n * (imax + 1)) <= M - 1:
        imax += 1
    return imax


def _eval_scaled_log(psi, p, n, imax, modulus, out_len):
    """L(psi) truncated to out_len, L = sum_i p^(imax - i) y^(p^(n i))."""
    acc = [0] * out_len
    cur = list(psi[:out_len]) + [0] * max(0, out_len - len(psi))
    for i in range(imax + 1):
        if p ** (n * i) >= out_len:
            break
        if i > 0:
            cur = _pow_raw(cur, p**n, modulus, out_len)
        c = p ** (imax - i)
        if modulus is None:
            acc = [a + c * v for a, v in zip(acc, cur)]
        else:
            acc = [(a + c * v) % modulus for a, v in zip(acc, cur)]
    return acc


def _honda_pseries_mod(p, n, M, N):
    """[p](y) for the height-n Honda law, length M, correct mod p^N."""
    imax = _honda_imax(p, n, M)
    scale = p**imax
    modulus = p ** (N + imax)
    target = [0] * M
    for i in range(imax + 1):
        target[p ** (n * i)] = p ** (imax - i + 1) % modulus
    psi = [0] * M
    psi[1] = p % modulus
    D = 2
    gain = p**n - 1
    while D < M:
        D2 = min(M, D + gain)
        lhs = _eval_scaled_log(psi, p, n, imax, modulus, D2)
        for k in range(D):
            if (lhs[k] - target[k]) % modulus:
                raise PrecisionError("settled prefix moved at degree %d" % k)
        for k in range(D, D2):
            r = (lhs[k] - target[k]) % modulus
            if r % scale:
                raise PrecisionError(
                    "functional equation correction not divisible by p^%d at degree %d"
                    % (imax, k)
                )
            psi[k] = (-(r // scale)) % modulus
        D = D2
    pn = p**N
    return [v % pn for v in psi]


def _honda_pseries_rational(p, n, M):
    """Same fixed point over Fraction; the reference for small prefixes."""
    imax = _honda_imax(p, n, M)
    scale = p**imax
    target = [Fraction(0)] * M
    for i in range(imax + 1):
        target[p ** (n * i)] = Fraction(p ** (imax - i + 1))
    psi = [Fraction(0)] * M
    psi[1] = Fraction(p)
    D = 2
    gain = p**n - 1
    while D < M:
        D2 = min(M, D + gain)
        lhs = _eval_scaled_log(psi, p, n, imax, None, D2)
        for k in range(D):
            if lhs[k] != target[k]:
                raise PrecisionError("settled prefix moved at degree %d" % k)
        for k in range(D, D2):
            psi[k] = -(lhs[k] - target[k]) / scale
        D = D2
    return psi


def _dict_mul(d1, d2, cap, modulus):
    out = {}
    for k1, v1 in d1.items():
        for k2, v2 in d2.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            if sum(k) >= cap:
                continue
            out[k] = out.get(k, 0) + v1 * v2
    if modulus is not None:
        out = {k: v % modulus for k, v in out.items()}
    return {k: v for k, v in out.items() if v}


def _dict_pow(d, e, cap, modulus):
    nvars = len(next(iter(d))) if d else 0
    result = {(0,) * nvars: 1}
    cur = d
    while e:
        if e & 1:
            result = _dict_mul(result, cur, cap, modulus)
        e >>= 1
        if e:
            cur = _dict_mul(cur, cur, cap, modulus)
    return result


def _honda_table_mod(p, n, M, N):
    """Bivariate Honda sum table to total degree < M, entries mod p^N."""
    imax = _honda_imax(p, n, M)
    scale = p**imax
    modulus = p ** (N + imax)
    target = {}
    for i in range(imax + 1):
        K = p ** (n * i)
        c = p ** (imax - i)
        for key in ((K, 0), (0, K)):
            target[key] = (target.get(key, 0) + c) % modulus
    F = {(1, 0): 1, (0, 1): 1}
    D = 2
    gain = p**n - 1
    while D < M:
        D2 = min(M, D + gain)
        lhs = {}
        cur = F
        for i in range(imax + 1):
            if p ** (n * i) >= D2:
                break
            if i > 0:
                cur = _dict_pow(cur, p**n, D2, modulus)
            c = p ** (imax - i)
            for k, v in cur.items():
                lhs[k] = (lhs.get(k, 0) + c * v) % modulus
        for k in set(lhs) | set(target):
            r = (lhs.get(k, 0) - target.get(k, 0)) % modulus
            if not r:
                continue
            tot = sum(k)
            if tot < D:
                raise PrecisionError("settled table prefix moved at %r" % (k,))
            if tot >= D2:
                continue
            if r % scale:
                raise PrecisionError("table correction not divisible at %r" % (k,))
            F[k] = (F.get(k, 0) - r // scale) % modulus
        D = D2
    pn = p**N
    return {k: v % pn for k, v in F.items() if v % pn}


class FormalGroupLaw:
    """A one-dimensional formal group law with an exact p-series.

    kind is "multiplicative" (exact integer coefficients, height 1) or
    "honda" (height n, coefficients mod p^N).  The p-series is the part
    the rest of the library consumes; the bivariate sum table is
    materialized lazily and only at small precision.
    """

    def __init__(self, kind, p, n, M, context):
        self.kind = kind
        self.p = p
        self.n = n
        self.M = M
        self.context = context
        self._pseries = {}
        self._table = None
        self._prefix_checked = False

    @property
    def height(self):
        return self.n

    def describe(self) -> str:
        if self.kind == "multiplicative":
            return "multiplicative p=%d" % self.p
        return "honda p=%d n=%d (%s)" % (self.p, self.n, self.context.describe())

    def __repr__(self):
        return "FormalGroupLaw(%s, M=%d)" % (self.describe(), self.M)

    def p_series(self, r: int) -> TruncatedSeries:
        """[p^r](y) in the law's own context.

        Multiplicative laws give exact polynomials of degree p^r; Honda
        laws give length-M series correct mod p^N.
        """
        if r < 0:
            raise ValueError("r must be >= 0")
        if r >= 1 and self.p ** (r * self.n) > self.M - 1:
            # The leading term y^(p^(rn)) must fit inside the working
            # precision; a silently truncated p-series is useless.
            raise PrecisionError(
                "p-series [p^%d]y has leading degree %d beyond precision M=%d"
                % (r, self.p ** (r * self.n), self.M)
            )
        if r in self._pseries:
            return self._pseries[r]
        if r == 0:
            out = y_series(self.context)
        elif self.kind == "multiplicative":
            if r == 1:
                y = y_series(self.context)
                t = y
                for _ in range(self.p - 1):
                    t = t + y + t * y
                out = t
            else:
                out = self.p_series(r - 1).compose(self.p_series(1))
        else:
            if r == 1:
                N = self.context.prec
                vals = _honda_pseries_mod(self.p, self.n, self.M, N)
                out = TruncatedSeries(self.context, tuple(vals), False)
                self._verify_prefix(vals, N)
            else:
                out = self.p_series(r - 1).compose(self.p_series(1))
        self._pseries[r] = out
        return out

    def _verify_prefix(self, vals, N):
        if self._prefix_checked:
            return
        L = min(self.M, self.p**self.n + 2, 40)
        ref = _honda_pseries_rational(self.p, self.n, L)
        pn = self.p**N
        for k in range(L):
            f = ref[k]
            if f.denominator % self.p == 0:
                raise PrecisionError(
                    "rational p-series coefficient %d is not p-integral" % k
                )
            want = f.numerator * pow(f.denominator, -1, pn) % pn
            if want != vals[k] % pn:
                raise PrecisionError(
                    "mod-p^N solver disagrees with the rational solver at degree %d" % k
                )
        self._prefix_checked = True

    def table(self) -> dict:
        """Bivariate sum coefficients {(i, j): value}, total degree < M."""
        if self._table is None:
            if self.kind == "multiplicative":
                self._table = {(1, 0): 1, (0, 1): 1, (1, 1): 1}
            else:
                if self.M > 64:
                    raise PrecisionError(
                        "bivariate table is restricted to M <= 64; "
                        "p-series access does not need it"
                    )
                self._table = _honda_table_mod(
                    self.p, self.n, self.M, self.context.prec
                )
        return self._table

    def coefficient(self, i: int, j: int) -> Coefficient:
        if i < 0 or j < 0:
            raise IndexError((i, j))
        if i + j >= self.M and self.kind != "multiplicative":
            raise PrecisionError("table truncated below total degree %d" % self.M)
        return Coefficient(self.table().get((i, j), 0), self.context)


def make_multiplicative_fgl(p: int, M: int = 16) -> FormalGroupLaw:
    """F(x, y) = x + y + x y over the exact integers."""
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if M < 2:
        raise ValueError("M must be at least 2")
    return FormalGroupLaw("multiplicative", p, 1, M, ZZ)


def make_honda_fgl(p: int, n: int, M: int, N: int = 8) -> FormalGroupLaw:
    """Height-n Honda law at p, series truncated below y^M, mod p^N."""
    if n < 1:
        raise ValueError("height n must be >= 1")
    if M < 2:
        raise ValueError("M must be at least 2")
    return FormalGroupLaw("honda", p, n, M, padic_context(p, N))


def formal_sum(F: FormalGroupLaw, a: TruncatedSeries, b: TruncatedSeries):
    """a +_F b for series with zero constant term.

    Table coefficients are reduced into the operands' context, so the
    operands may live anywhere below the law's own context.
    """
    if a.context != b.context:
        raise ContextMismatch(
            "operands live in %s and %s" % (a.context.describe(), b.context.describe())
        )
    for s in (a, b):
        if s.coeffs and s.coeffs[0] != 0:
            raise ValueError("formal sum needs series with zero constant term")
    ctx = a.context
    tab = F.table()
    effs = [a._eff(), b._eff()]
    if F.kind != "multiplicative":
        effs.append(F.M)
    L = min(effs)
    if L == _INF:
        out = TruncatedSeries(ctx, (), True)
    else:
        out = TruncatedSeries(ctx, (0,) * int(L), False)
    pow_a = {0: TruncatedSeries(ctx, (1,), True)}
    pow_b = {0: TruncatedSeries(ctx, (1,), True)}
    for (i, j) in sorted(tab):
        if L != _INF and i + j >= L:
            continue
        for store, base, k in ((pow_a, a, i), (pow_b, b, j)):
            if k not in store:
                top = max(store)
                cur = store[top]
                for kk in range(top + 1, k + 1):
                    cur = cur * base
                    store[kk] = cur
        c = reduce(Coefficient(tab[(i, j)], F.context), ctx)
        out = out + (pow_a[i] * pow_b[j]).scale(c)
    return out


def check_axioms(F: FormalGroupLaw, assoc_cap: int = 12) -> dict:
    """Unit, commutativity, and truncated associativity of the sum table."""
    tab = F.table()
    modulus = F.context.modulus
    seen_linear = {(1, 0): 0, (0, 1): 0}
    for (i, j), v in tab.items():
        if j == 0:
            want = 1 if i == 1 else 0
            if v != want:
                raise AssertionError("unit axiom fails at x^%d" % i)
        if i == 0:
            want = 1 if j == 1 else 0
            if v != want:
                raise AssertionError("unit axiom fails at y^%d" % j)
        if (i, j) in seen_linear:
            seen_linear[(i, j)] = v
    if seen_linear[(1, 0)] != 1 or seen_linear[(0, 1)] != 1:
        raise AssertionError("linear part of the law is not x + y")
    for (i, j), v in tab.items():
        if tab.get((j, i), 0) != v:
            raise AssertionError("commutativity fails at (%d, %d)" % (i, j))
    cap = min(F.M, assoc_cap)
    x = {(1, 0, 0): 1}
    y = {(0, 1, 0): 1}
    z = {(0, 0, 1): 1}

    def ev(table, A, B):
        powers_a, powers_b = {0: {(0, 0, 0): 1}}, {0: {(0, 0, 0): 1}}
        out = {}
        for (i, j), v in sorted(table.items()):
            if i + j >= cap:
                continue
            for store, base, k in ((powers_a, A, i), (powers_b, B, j)):
                if k not in store:
                    top = max(store)
                    cur = store[top]
                    for kk in range(top + 1, k + 1):
                        cur = _dict_mul(cur, base, cap, modulus)
                        store[kk] = cur
            term = _dict_mul(powers_a[i], powers_b[j], cap, modulus)
            for kk, vv in term.items():
                nv = out.get(kk, 0) + v * vv
                out[kk] = nv % modulus if modulus is not None else nv
        return {k: v for k, v in out.items() if v}

    fxy = ev(tab, x, y)
    fyz = ev(tab, y, z)
    left = ev(tab, fxy, z)
    right = ev(tab, x, fyz)
    if left != right:
        raise AssertionError("associativity fails below total degree %d" % cap)
    return {"unit": True, "commutative": True, "associative_below": cap}


@dataclass(frozen=True)
class WeierstrassFactorization:
    distinguished: TruncatedSeries
    unit: TruncatedSeries
    degree: int


def _weier_divide(h, g, d, modulus, work, N):
    """h = g * q + a with deg a < d, for monic g with g - y^d in (p).

    The shift iteration contracts p-adically, one digit per pass.
    """
    gamma = g[:d]
    q = [0] * work
    for _ in range(N + 3):
        t = _mul_raw(gamma, q, modulus, work)
        t = [(hv - tv) % modulus for hv, tv in zip(h, t)]
        qn = t[d:] + [0] * d
        if qn == q:
            break
        q = qn
    else:
        raise WeierstrassError("division fixed point did not stabilize")
    t = _mul_raw(gamma, q, modulus, work)
    t = [(hv - tv) % modulus for hv, tv in zip(h, t)]
    return q, t[:d]


def weierstrass_preparation(s: TruncatedSeries) -> WeierstrassFactorization:
    """Factor s = distinguished * unit over a mod-p^N context.

    The distinguished part is the exact monic polynomial y^d + (lower
    terms divisible by p), d being the least index where s has a unit
    coefficient.  A series with no unit coefficient is rejected, as is
    a truncated series too short to settle degree d.
    """
    ctx = s.context
    if ctx.kind != "padic":
        raise WeierstrassError(
            "preparation needs a mod-p^N context, got %s" % ctx.describe()
        )
    p, N = ctx.p, ctx.prec
    modulus = ctx.modulus
    coeffs = list(s.coeffs)
    d = None
    for i, v in enumerate(coeffs):
        if v % p:
            d = i
            break
    if d is None:
        raise WeierstrassError("no unit coefficient within the known precision")
    if d == 0:
        one = TruncatedSeries(ctx, (1,), True)
        return WeierstrassFactorization(one, s, 0)
    need = (N + 2) * d + 1
    if s.exact:
        work = max(len(coeffs), need)
        c = coeffs + [0] * (work - len(coeffs))
    else:
        if len(coeffs) < need:
            raise PrecisionError(
                "need length >= %d to prepare at degree %d, have %d"
                % (need, d, len(coeffs))
            )
        work = len(coeffs)
        c = coeffs
    g = [0] * d + [1]
    u = c[d:] + [0] * d
    reliable = work - N * d  # residual must vanish mod p^N below this
    rounds = max(2, math.ceil(math.log2(N)) + 2)
    done = False
    for _ in range(rounds):
        gu = _mul_raw(g, u, modulus, work)
        e = [(cv - gv) % modulus for cv, gv in zip(c, gu)]
        if all(v == 0 for v in e[:reliable]):
            done = True
            break
        uinv = _inv_raw(u, modulus, work)
        h = _mul_raw(e, uinv, modulus, work)
        bprime, a = _weier_divide(h, g, d, modulus, work, N)
        for i in range(d):
            g[i] = (g[i] + a[i]) % modulus
        ub = _mul_raw(u, bprime, modulus, work)
        u = [(uv + bv) % modulus for uv, bv in zip(u, ub)]
    if not done:
        raise WeierstrassError("Hensel lifting did not converge")
    if g[d] != 1 or any(g[i] % p for i in range(d)):
        raise WeierstrassError("computed factor is not distinguished")
    # honesty check on the whole range: the residual obeys the
    # reliability slope p^floor((work - 1 - m) / d)
    gu = _mul_raw(g, u, modulus, work)
    for m_deg in range(work):
        lvl = min(N, (work - 1 - m_deg) // d)
        if (c[m_deg] - gu[m_deg]) % (p**lvl):
            raise WeierstrassError("residual violates the reliability slope")
    unit_len = work - (N + 1) * d
    distinguished = TruncatedSeries(ctx, tuple(g), True)
    unit = TruncatedSeries(ctx, tuple(u[:unit_len]), False)
    return WeierstrassFactorization(distinguished, unit, d)
