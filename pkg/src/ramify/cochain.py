"""Finite quotient rings presented by a p-series relation.

Given a formal group law F over Z or over Z/p^N, the r-th ring in the
tower is

    A_r = (Z/p^N)[y] / (w_r(y)),    w_r(y) = y * g_r(y),

where g_r is the distinguished (monic, degree p^(rn) - 1) Weierstrass
factor of the cofactor q_r(y) = [p^r](y)/y.  Elements are canonical
coefficient vectors of length p^(rn); reduction by the monic relation
is exact Euclidean division, so every ring operation is exact mod p^N.

Truncated inputs are accepted only when their known prefix pins the
image mod p^N.  Reducing an unknown tail coefficient y^m by w drops
its degree by at most deg(w) - 1 per step while gaining a factor of p
each step (every non-leading coefficient of w lies in (p) and the
constant term is zero), so the tail contributes nothing mod p^N as
soon as the known length reaches (N + 1)(rank - 1) + 1.  The ring
constructor enforces a larger margin on the law's precision so that
the Weierstrass step itself is reliable; see
minimum_series_precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import artin
from .coeff import Coefficient, ContextMismatch, padic_context
from .fgl import (
    FormalGroupLaw,
    PrecisionError,
    TruncatedSeries,
    WeierstrassError,
    exact_quotient_by_y,
    weierstrass_preparation,
)

__all__ = [
    "CyclicCochainRing",
    "RingElement",
    "RingMorphism",
    "MorphismError",
    "minimum_series_precision",
    "make_cochain_ring",
    "mod_m_reduction",
    "substitution_map",
]


class MorphismError(Exception):
    """A verified homomorphism property failed; hard error."""


def minimum_series_precision(p, n, r, N, polynomial_pseries):
    """Least working precision M a law needs before A_r can be built.

    Polynomial p-series are exact, so M only has to contain the
    relation itself.  Truncated p-series additionally pay for the
    Weierstrass factorization (N + 2 coefficients of working length
    per degree of the distinguished factor) plus enough surviving unit
    length to re-multiply the factorization through degree rank + 1.
    """
    rank = p ** (r * n)
    if polynomial_pseries:
        return rank + 1
    return (N + 2) * (rank - 1) + 4


@dataclass(frozen=True)
class RingElement:
    """Canonical representative: coefficient tuple of length ring.rank,
    entries reduced to 0..p^N - 1."""

    ring: "CyclicCochainRing"
    coeffs: tuple

    def _check_owner(self, other):
        if self.ring is not other.ring:
            raise ValueError("elements belong to different rings")

    def __add__(self, other):
        self._check_owner(other)
        m = self.ring.modulus
        return RingElement(
            self.ring,
            tuple((a + b) % m for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other):
        self._check_owner(other)
        m = self.ring.modulus
        return RingElement(
            self.ring,
            tuple((a - b) % m for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self):
        m = self.ring.modulus
        return RingElement(self.ring, tuple((-a) % m for a in self.coeffs))

    def __mul__(self, other):
        self._check_owner(other)
        ring = self.ring
        conv = [0] * (2 * ring.rank - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        return RingElement(ring, ring._reduce_poly(conv))

    def scale(self, c):
        """Multiply by an integer or a Coefficient in the ring context."""
        if isinstance(c, Coefficient):
            if c.context != self.ring.context:
                raise ContextMismatch("scalar context does not match the ring")
            c = c.value
        m = self.ring.modulus
        return RingElement(self.ring, tuple((a * c) % m for a in self.coeffs))

    @property
    def is_zero(self):
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append("%d*y^%d" % (a, i) if i else str(a))
        return "<%s>" % (" + ".join(terms) if terms else "0")


class CyclicCochainRing:
    """(Z/p^N)[y]/(w(y)) with w monic of degree rank = p^(rn).

    Use make_cochain_ring to construct one; the constructor here only
    assembles pre-validated data.
    """

    def __init__(self, fgl, r, context, w_coeffs, unit_series, distinguished):
        self.fgl = fgl
        self.p = fgl.p
        self.n = fgl.n
        self.r = r
        self.context = context
        self.modulus = context.modulus
        self.rank = fgl.p ** (r * fgl.n)
        self.w_coeffs = tuple(int(c) % self.modulus for c in w_coeffs)
        self.unit_series = unit_series
        self.distinguished = distinguished
        self._check_relation()
        self.q_elt = None  # installed by make_cochain_ring

    def _check_relation(self):
        w, rank, p = self.w_coeffs, self.rank, self.p
        if len(w) != rank + 1:
            raise WeierstrassError("relation has wrong degree")
        if w[rank] != 1:
            raise WeierstrassError("relation is not monic")
        if w[0] != 0:
            raise WeierstrassError("relation must have zero constant term")
        for j in range(rank):
            if w[j] % p:
                raise WeierstrassError("relation is not congruent to y^rank mod p")

    # -- canonical reduction

    def _reduce_poly(self, coeffs):
        """Euclidean reduction of an integer coefficient list by the
        monic relation; exact, returns a canonical tuple."""
        m = self.modulus
        rank = self.rank
        c = [int(x) for x in coeffs]
        if len(c) < rank:
            c = c + [0] * (rank - len(c))
        for deg in range(len(c) - 1, rank - 1, -1):
            t = c[deg] % m
            if t:
                base = deg - rank
                for j in range(rank + 1):
                    c[base + j] = c[base + j] - t * self.w_coeffs[j]
            c[deg] = 0
        return tuple(x % m for x in c[:rank])

    # -- element constructors

    def element(self, coeffs):
        return RingElement(self, self._reduce_poly(list(coeffs)))

    @property
    def zero(self):
        return RingElement(self, (0,) * self.rank)

    @property
    def one(self):
        return self.element([1])

    @property
    def y_elt(self):
        return self.element([0, 1])

    def from_series(self, series):
        """Image of a truncated series.

        Exact polynomial series over an integer context reduce
        directly.  A non-exact series must match the ring context and
        carry at least (N + 1)(rank - 1) + 1 known coefficients so the
        unknown tail is invisible mod p^N.
        """
        if not isinstance(series, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if series.exact:
            if series.context.kind in ("int",) or series.context == self.context:
                return self.element([int(c) for c in series.coeffs])
            raise ContextMismatch("cannot reduce an exact series over %s" % series.context.describe())
        if series.context != self.context:
            raise ContextMismatch("series context does not match the ring")
        need = (self.context.prec + 1) * (self.rank - 1) + 1
        if len(series.coeffs) < need:
            raise PrecisionError(
                "series has %d known coefficients, need %d to pin the image"
                % (len(series.coeffs), need)
            )
        return self.element(list(series.coeffs))

    def random_element(self, rng):
        return RingElement(
            self, tuple(rng.randrange(self.modulus) for _ in range(self.rank))
        )

    # -- structure maps

    def augmentation(self, elt):
        """Evaluation at y = 0; a ring map because w(0) = 0."""
        if elt.ring is not self:
            raise ValueError("element belongs to a different ring")
        return Coefficient(elt.coeffs[0], self.context)

    def describe(self):
        return "Z/%d^%d[y]/(w), rank %d" % (self.p, self.context.prec, self.rank)

    def __repr__(self):
        return "CyclicCochainRing(p=%d, n=%d, r=%d, N=%d)" % (
            self.p,
            self.n,
            self.r,
            self.context.prec,
        )


def make_cochain_ring(F, r, N=8):
    """Build A_r from the law F at p-adic precision N.

    Validates the precision budget, factors q_r, installs the monic
    relation w = y * g_r, and certifies the basic identities:
    the augmentation of q_r is exactly p^r and y * q_r = 0 in A_r.
    """
    if not isinstance(F, FormalGroupLaw):
        raise TypeError("expected a FormalGroupLaw")
    if r < 1:
        raise ValueError("r must be >= 1")
    if r >= N:
        raise ValueError("need r < N so that p^r is a nonzero canonical lift")
    cache = getattr(F, "_ring_cache", None)
    if cache is None:
        cache = {}
        F._ring_cache = cache
    if (r, N) in cache:
        return cache[(r, N)]

    p, n = F.p, F.n
    polynomial = F.kind == "multiplicative"
    need = minimum_series_precision(p, n, r, N, polynomial)
    if F.M < need:
        raise PrecisionError(
            "insufficient precision: law has M=%d, building A_%d at N=%d needs M>=%d"
            % (F.M, r, N, need)
        )
    context = padic_context(p, N)
    if not polynomial and F.context != context:
        raise ContextMismatch(
            "law context %s does not match requested N=%d"
            % (F.context.describe(), N)
        )

    rank = p ** (r * n)
    q_series = exact_quotient_by_y(F.p_series(r))

    if polynomial:
        # q_r = ((1+y)^(p^r) - 1)/y is already monic and distinguished
        qc = [int(c) for c in q_series.coeffs]
        if len(qc) != rank or qc[-1] != 1:
            raise WeierstrassError("polynomial cofactor has unexpected degree")
        dist = TruncatedSeries(context, tuple(c % context.modulus for c in qc), True)
        unit = TruncatedSeries(context, (1,), True)
        w_coeffs = [0] + [c % context.modulus for c in qc]
    else:
        wf = weierstrass_preparation(q_series)
        if wf.degree != rank - 1:
            raise WeierstrassError(
                "distinguished degree %d does not match rank %d" % (wf.degree, rank)
            )
        dist = wf.distinguished
        unit = wf.unit
        w_coeffs = [0] + [int(c) for c in dist.coeffs]
        w_coeffs += [0] * (rank + 1 - len(w_coeffs))

    ring = CyclicCochainRing(F, r, context, w_coeffs, unit, dist)
    q_elt = ring.element([int(c) for c in q_series.coeffs])
    ring.q_elt = q_elt

    # certified identities
    eps = ring.augmentation(q_elt).value
    if eps != p ** r:
        raise WeierstrassError(
            "augmentation of q_%d is %d, expected %d" % (r, eps, p ** r)
        )
    if not (ring.y_elt * q_elt).is_zero:
        raise WeierstrassError("y * q_r is nonzero in the quotient ring")

    cache[(r, N)] = ring
    return ring


def mod_m_reduction(ring):
    """Reduce A_r mod p: the result is F_p[y]/(y^rank) presented as a
    FinAlgebra with every basis element in parity zero."""
    p, rank = ring.p, ring.rank
    # the relation must collapse to y^rank mod p (checked at build
    # time; re-checked here because this is the load-bearing fact)
    for j in range(rank):
        if ring.w_coeffs[j] % p:
            raise WeierstrassError("relation does not reduce to y^rank mod p")
    table = np.zeros((rank, rank, rank), dtype=np.int64)
    for i in range(rank):
        for j in range(rank):
            prod = [0] * (i + j + 1)
            prod[i + j] = 1
            red = ring._reduce_poly(prod)
            table[i, j] = np.array(red, dtype=np.int64) % p
    labels = tuple(
        "1" if i == 0 else ("y" if i == 1 else "y^%d" % i) for i in range(rank)
    )
    aug = np.zeros(rank, dtype=np.int64)
    aug[0] = 1
    alg = artin.FinAlgebra(p, labels, (0,) * rank, table, aug)
    # cross-check against the truncated polynomial presentation
    expect = artin.truncated_polynomial_algebra(p, rank)
    if not np.array_equal(alg.table, expect.table):
        raise WeierstrassError("mod-p reduction is not the truncated algebra")
    return alg


@dataclass(frozen=True)
class RingMorphism:
    """phi: A_1 -> A_k determined by y |-> [p^(k-1)](y).

    cofactor is the image Q of q_(k-1), so that phi(y) = y * Q; the
    powers tuple caches phi on the monomial basis of A_1.
    """

    source: CyclicCochainRing
    target: CyclicCochainRing
    k: int
    image_of_y: RingElement
    cofactor: RingElement
    powers: tuple

    def apply(self, elt):
        if elt.ring is not self.source:
            raise ValueError("element does not belong to the source ring")
        acc = self.target.zero
        for c, pw in zip(elt.coeffs, self.powers):
            if c:
                acc = acc + pw.scale(int(c))
        return acc


def substitution_map(F, k, N=8):
    """The tower map A_1 -> A_k induced by y |-> [p^(k-1)](y).

    Verified on construction: the image of the degree-one relation
    w_1 vanishes in A_k, the map kills nothing (full column rank mod
    p), and the augmentation of the image of y is zero.  Violations
    raise MorphismError.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    a1 = make_cochain_ring(F, 1, N)
    ak = make_cochain_ring(F, k, N)
    if k == 1:
        cof = ak.one
        y_img = ak.y_elt
    else:
        q_km1 = exact_quotient_by_y(F.p_series(k - 1))
        cof = ak.from_series(q_km1)
        y_img = ak.y_elt * cof
        # same element, computed from the p-series directly
        direct = ak.from_series(F.p_series(k - 1))
        if y_img != direct:
            raise MorphismError("y * q_(k-1) disagrees with [p^(k-1)]y in A_k")

    if ak.augmentation(y_img).value != 0:
        raise MorphismError("image of y has nonzero augmentation")

    powers = [ak.one]
    for _ in range(a1.rank - 1):
        powers.append(powers[-1] * y_img)
    powers = tuple(powers)

    # phi(w_1) = 0 in A_k
    acc = ak.zero
    pw = ak.one
    for j, c in enumerate(a1.w_coeffs):
        if j > 0:
            pw = pw * y_img
        if c:
            acc = acc + pw.scale(int(c))
    if not acc.is_zero:
        raise MorphismError("image of the source relation w_1 is nonzero")

    # injectivity mod p^N follows from full column rank mod p
    cols = [pwr.coeffs for pwr in powers]
    mat = np.array(cols, dtype=np.int64).T % F.p
    red, piv = artin.rref(mat, F.p)
    if len(piv) != a1.rank:
        raise MorphismError("tower map is not injective")

    return RingMorphism(
        source=a1, target=ak, k=k, image_of_y=y_img, cofactor=cof, powers=powers
    )
