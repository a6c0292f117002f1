"""Divided-power page mechanics for the cyclic-group Eilenberg-Moore
spectral sequence at an odd prime.

The starting page is Gamma(sigma z) tensor Lambda(sigma y).  A divided
power gamma_m(sigma z) is encoded by the base-p digits of m, one slot
per gamma_{p^j} and a cutoff at gamma_{p^S}; sigma z itself is the
slot-zero generator and survives to the end as zeta.  Products carry
the binomial scalar C(i+j, i) evaluated digitwise (Lucas), with any
slot overflow giving zero.

Round s applies the one differential the pattern allows, determined
by its value on gamma_{p^s} and extended as a derivation.  In digit
coordinates this sends a monomial with a_s > 0 to the monomial with
slot s decremented, multiplied by the round cycle

    w_s = gamma_{p^1}^(p-1) * ... * gamma_{p^(s-1)}^(p-1) * sigma y,

with no extra scalar: the exponent factor from the naive power rule
cancels against the multinomial unit that relates digit monomials to
classical divided powers.  (Check: gamma_p^2 = 2 gamma_{2p}, and
d(gamma_{2p}) = gamma_p sigma y gives d(gamma_p^2) = 2 gamma_p sigma y
= 2 gamma_p d(gamma_p), the Leibniz value.)

Every round is executed as linear algebra mod p: matrices per
bidegree, d o d = 0 verified on matrices, homology dimensions from
rank computations, and the predicted survivors certified to be
cycles, independent modulo boundaries, and of the full homology
dimension before the next page adopts them as a basis.  Monomials
whose lower slots are off-pattern die automatically: the binomial
against w_s overflows.

The cutoff makes assertions trustworthy only in the window of
filtration degree at most p^(S-1); classes touching slot S-1's top
range sit outside it.  The final report therefore speaks only about
the window, where the survivors are exactly the powers of zeta.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import artin

__all__ = [
    "CutoffError",
    "DPBasisElement",
    "dp_multiply",
    "BigradedPage",
    "RoundRecord",
    "initial_page",
    "round_differential",
    "turn_pages",
    "EmssReport",
    "final_page_report",
]


class CutoffError(Exception):
    """The divided-power cutoff is too small for the requested rounds."""


@dataclass(frozen=True)
class DPBasisElement:
    """Monomial gamma-product times an optional sigma y factor.

    exponents[j] is the power of gamma_{p^j}; slot 0 is sigma z.  The
    element represents the classical divided power gamma_m(sigma z)
    with m = sum a_j p^j, times sigma y^eps.
    """

    exponents: tuple
    eps: int

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        if any(a < 0 for a in self.exponents):
            raise ValueError("negative exponent")

    def bidegree(self, p):
        m = sum(a * p ** j for j, a in enumerate(self.exponents))
        return (self.eps + m, -2 * self.eps - m)

    @property
    def total_degree(self):
        # s + t collapses to minus the exterior exponent
        return -self.eps

    def __str__(self):
        parts = []
        if self.exponents and self.exponents[0]:
            parts.append(
                "z" if self.exponents[0] == 1 else "z^%d" % self.exponents[0]
            )
        for j, a in enumerate(self.exponents):
            if j >= 1 and a:
                g = "g[p^%d]" % j
                parts.append(g if a == 1 else "%s^%d" % (g, a))
        if self.eps:
            parts.append("sy")
        return "*".join(parts) if parts else "1"


def dp_multiply(x, y, p):
    """Product of two basis monomials: (scalar mod p, element or None).

    Scalar is the digitwise binomial prod C(a_j + b_j, a_j); a slot
    overflow or a repeated sigma y factor gives (0, None).  No signs:
    the gamma part is even and sigma y squares to zero.
    """
    if len(x.exponents) != len(y.exponents):
        raise ValueError("mismatched slot counts")
    if x.eps and y.eps:
        return 0, None
    scalar = 1
    out = []
    for a, b in zip(x.exponents, y.exponents):
        if a + b >= p:
            return 0, None
        scalar = scalar * math.comb(a + b, a) % p
        out.append(a + b)
    return scalar, DPBasisElement(tuple(out), x.eps | y.eps)


def _round_cycle(p, S, s):
    """w_s: slots 1..s-1 at p-1, sigma y on."""
    exps = [0] * S
    for j in range(1, s):
        exps[j] = p - 1
    return DPBasisElement(tuple(exps), 1)


def round_differential(x, p, S, s):
    """Value of the round-s differential on a basis monomial, as
    (scalar mod p, element or None)."""
    if not 1 <= s <= S - 1:
        raise CutoffError("round %d needs cutoff S > %d, have S = %d" % (s, s, S))
    if x.eps == 1 or x.exponents[s] == 0:
        return 0, None
    lowered = list(x.exponents)
    lowered[s] -= 1
    base = DPBasisElement(tuple(lowered), 0)
    return dp_multiply(base, _round_cycle(p, S, s), p)


def _nominal_index(p, s):
    # round 1 is d^(p-1); round s >= 2 is d^(p^s - p^(s-1) - 1)
    if s == 1:
        return p - 1
    return p ** s - p ** (s - 1) - 1


@dataclass(frozen=True)
class RoundRecord:
    """Bookkeeping for one executed round: what was checked and how
    the dimensions moved."""

    round: int
    nominal_index: int
    dim_before: int
    dim_after: int
    cells_with_differential: int
    d_squared_zero: bool
    leibniz_pairs_checked: int
    euler_before: int
    euler_after: int


@dataclass(frozen=True)
class BigradedPage:
    """One page: a basis of monomials plus the round whose
    differential acts on it next.  Between the nominal indices of
    consecutive rounds every differential vanishes, so pages are only
    materialized at the indices where something happens."""

    p: int
    S: int
    index: int  # nominal page index
    next_round: int  # 1-based round whose differential lives here
    monomials: tuple
    record: RoundRecord = None  # how this page was produced, None for E2

    def cells(self):
        by_deg = {}
        for m in self.monomials:
            by_deg.setdefault(m.bidegree(self.p), []).append(m)
        return by_deg

    def dimension(self, s, t):
        return sum(1 for m in self.monomials if m.bidegree(self.p) == (s, t))

    @property
    def total_dimension(self):
        return len(self.monomials)

    def euler(self):
        # alternating sum over total degree; only 0 and -1 occur
        return sum(1 if m.eps == 0 else -1 for m in self.monomials)

    def differential(self, x):
        return round_differential(x, self.p, self.S, self.next_round)


def initial_page(p, S):
    """The full divided-power page: all digit vectors times the
    exterior factor, page index 2."""
    if p == 2:
        raise ValueError("only odd primes are supported here")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError("p must be prime")
    if S < 2:
        raise ValueError("cutoff S must be >= 2")
    mons = tuple(
        DPBasisElement(exps, eps)
        for exps in itertools.product(range(p), repeat=S)
        for eps in (0, 1)
    )
    return BigradedPage(p=p, S=S, index=2, next_round=1, monomials=mons)


def _survivor_pattern(p, s, mono):
    """After round s: lower gamma slots pinned at 0 (even part) or
    p-1 (exterior part)."""
    want = 0 if mono.eps == 0 else p - 1
    return all(mono.exponents[j] == want for j in range(1, s + 1))


def _apply_d_combo(combo, page):
    """Extend the differential linearly to a dict monomial -> coef."""
    out = {}
    for mono, coef in combo.items():
        scal, tgt = page.differential(mono)
        if tgt is not None and scal % page.p:
            out[tgt] = (out.get(tgt, 0) + coef * scal) % page.p
    return {m: c for m, c in out.items() if c % page.p}


def _mul_combo(x_mono, y_mono, page):
    scal, tgt = dp_multiply(x_mono, y_mono, page.p)
    if tgt is None or scal % page.p == 0:
        return {}
    return {tgt: scal % page.p}


def _scale_combo(combo, c, p):
    return {m: (v * c) % p for m, v in combo.items() if (v * c) % p}


def _add_combo(a, b, p):
    out = dict(a)
    for m, v in b.items():
        out[m] = (out.get(m, 0) + v) % p
    return {m: v for m, v in out.items() if v}


def _check_leibniz(page):
    """d(xy) = d(x)y + (-1)^|x| x d(y) for every pair of basis
    monomials inside the safe window."""
    p = page.p
    window = p ** (page.S - 1)
    in_window = [m for m in page.monomials if m.bidegree(p)[0] <= window]
    checked = 0
    for x in in_window:
        dx = _apply_d_combo({x: 1}, page)
        for y in in_window:
            dy = _apply_d_combo({y: 1}, page)
            lhs = _apply_d_combo(_mul_combo(x, y, page), page)
            rhs = {}
            for m, c in dx.items():
                rhs = _add_combo(rhs, _scale_combo(_mul_combo(m, y, page), c, p), p)
            sign = -1 if x.eps else 1
            for m, c in dy.items():
                rhs = _add_combo(
                    rhs, _scale_combo(_mul_combo(x, m, page), c * sign, p), p
                )
            if lhs != rhs:
                raise AssertionError(
                    "Leibniz fails on %s, %s at round %d"
                    % (x, y, page.next_round)
                )
            checked += 1
    return checked


def _run_round(page):
    """Execute the differential on this page and return the next page.

    All verification is done with matrices over F_p cell by cell:
    d o d = 0, homology dimension by ranks, predicted survivors shown
    to be cycles and independent modulo boundaries.
    """
    p, S, s = page.p, page.S, page.next_round
    mons = page.monomials
    pos = {m: i for i, m in enumerate(mons)}
    cells = page.cells()
    shift = (-(p - 1), p - 2)  # bidegree move of the realized differential

    # per-cell local index
    local = {}
    for deg, ms in cells.items():
        for i, m in enumerate(ms):
            local[m] = i

    # matrix of d from each populated cell
    mats = {}
    for deg, ms in cells.items():
        tdeg = (deg[0] + shift[0], deg[1] + shift[1])
        tcell = cells.get(tdeg, [])
        mat = np.zeros((len(tcell), len(ms)), dtype=np.int64)
        nonzero = False
        for j, m in enumerate(ms):
            scal, tgt = page.differential(m)
            if tgt is None or scal % p == 0:
                continue
            if tgt not in pos:
                raise AssertionError("differential leaves the page basis")
            mat[local[tgt], j] = scal % p
            nonzero = True
        mats[deg] = (mat, tdeg, nonzero)

    # d o d = 0 as matrices
    d_sq_ok = True
    for deg, (mat, tdeg, _) in mats.items():
        if tdeg in mats and mat.size:
            nxt = mats[tdeg][0]
            if nxt.size and np.any((nxt @ mat) % p):
                d_sq_ok = False
    if not d_sq_ok:
        raise AssertionError("d o d is nonzero at round %d" % s)

    leibniz_checked = _check_leibniz(page)

    predicted = [m for m in mons if _survivor_pattern(p, s, m)]
    predicted_set = set(predicted)

    # verify per cell
    for deg, ms in cells.items():
        mat, tdeg, _ = mats[deg]
        rank_out = len(artin.rref(mat % p, p)[0]) if mat.size else 0
        sdeg = (deg[0] - shift[0], deg[1] - shift[1])
        if sdeg in mats:
            in_mat = mats[sdeg][0]
        else:
            in_mat = np.zeros((len(ms), 0), dtype=np.int64)
        rank_in = len(artin.rref(in_mat % p, p)[0]) if in_mat.size else 0
        dim_h = len(ms) - rank_out - rank_in
        if dim_h < 0:
            raise AssertionError("negative homology dimension")
        pred_here = [m for m in ms if m in predicted_set]
        if len(pred_here) != dim_h:
            raise AssertionError(
                "cell %s: predicted %d survivors, homology has dimension %d"
                % (deg, len(pred_here), dim_h)
            )
        # predicted classes are cycles
        for m in pred_here:
            scal, tgt = page.differential(m)
            if tgt is not None and scal % p:
                raise AssertionError("predicted survivor %s is not a cycle" % m)
        # and independent modulo the image
        if pred_here:
            rows = [in_mat.T[i] for i in range(in_mat.shape[1])] if in_mat.size else []
            for m in pred_here:
                v = np.zeros(len(ms), dtype=np.int64)
                v[local[m]] = 1
                rows.append(v)
            stacked = np.array(rows, dtype=np.int64) % p
            if len(artin.rref(stacked, p)[0]) != rank_in + len(pred_here):
                raise AssertionError(
                    "cell %s: survivors are not independent mod boundaries" % deg
                )
        if dim_h > len(ms):
            raise AssertionError("page ranks increased at %s" % (deg,))

    new_page = BigradedPage(
        p=p,
        S=S,
        index=_nominal_index(p, s) + 1,
        next_round=s + 1,
        monomials=tuple(predicted),
        record=RoundRecord(
            round=s,
            nominal_index=_nominal_index(p, s),
            dim_before=len(mons),
            dim_after=len(predicted),
            cells_with_differential=sum(1 for _, (_, _, nz) in mats.items() if nz),
            d_squared_zero=True,
            leibniz_pairs_checked=leibniz_checked,
            euler_before=page.euler(),
            euler_after=sum(1 if m.eps == 0 else -1 for m in predicted),
        ),
    )
    if new_page.record.euler_before != new_page.record.euler_after:
        raise AssertionError("Euler characteristic changed across the round")
    return new_page


def turn_pages(page, rounds):
    """Run the next `rounds` rounds; returns the page history starting
    with the input page."""
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    if page.next_round + rounds - 1 > page.S - 1:
        raise CutoffError(
            "cutoff S = %d supports %d rounds, requested through round %d"
            % (page.S, page.S - 1, page.next_round + rounds - 1)
        )
    history = [page]
    for _ in range(rounds):
        history.append(_run_round(history[-1]))
    return history


@dataclass(frozen=True)
class EmssReport:
    p: int
    S: int
    window: int  # assertions cover filtration degree <= window
    verdict: str  # MATCH or INCONCLUSIVE
    survivors: tuple
    total_dim: int
    pages: tuple
    notes: str


def final_page_report(p, S):
    """Run all rounds the cutoff supports and compare the in-window
    survivors with the powers of zeta.

    A cutoff below 2 leaves no room for even one round; the report is
    then INCONCLUSIVE rather than a guess.
    """
    if p == 2:
        raise ValueError("only odd primes are supported here")
    if S < 2:
        return EmssReport(
            p=p,
            S=S,
            window=0,
            verdict="INCONCLUSIVE",
            survivors=(),
            total_dim=0,
            pages=(),
            notes="cutoff too small to run any round",
        )
    history = turn_pages(initial_page(p, S), S - 1)
    window = p ** (S - 1)
    last = history[-1]
    in_window = tuple(
        m for m in last.monomials if m.bidegree(p)[0] <= window
    )
    expected = {
        DPBasisElement((a,) + (0,) * (S - 1), 0) for a in range(p)
    }
    if set(in_window) != expected:
        raise AssertionError("in-window survivors are not the zeta powers")
    # zeta truncation height p: one more power overflows slot zero
    zeta = DPBasisElement((1,) + (0,) * (S - 1), 0)
    top = DPBasisElement((p - 1,) + (0,) * (S - 1), 0)
    if dp_multiply(top, zeta, p) != (0, None):
        raise AssertionError("zeta^p should vanish")
    for a in range(1, p):
        acc = zeta
        for _ in range(a - 1):
            scal, acc = dp_multiply(acc, zeta, p)
            if acc is None or scal % p == 0:
                raise AssertionError("zeta powers should be nonzero below p")
    return EmssReport(
        p=p,
        S=S,
        window=window,
        verdict="MATCH",
        survivors=in_window,
        total_dim=len(in_window),
        pages=tuple(history),
        notes="survivors in the window form a truncated polynomial algebra on zeta",
    )
