"""Small permutation groups and p-nilpotence diagnostics.

Groups are generated subgroups of a symmetric group on a handful of
points, stored as explicit element lists (capped at order 200, which
is all the examples need).  Three questions are answered here:

  * a Sylow p-subgroup, grown greedily from p-power-order elements;
  * whether a normal p-complement exists, by checking the subgroup
    generated by all p'-order elements against the p'-part of the
    group order;
  * whether the conjugation action on the group algebra F_p[G] is
    nilpotent, by iterating M -> span{g.v - v} until the chain of
    submodules stabilizes.

For the complement test the candidate subgroup N0 generated by the
p'-elements is the only possibility: a normal complement K has
p-power index, so every p'-element maps to the identity in G/K and
lands in K, giving N0 <= K; and every element of K has p'-order, so
K <= N0.  Hence a complement exists iff |N0| equals the p'-part.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import artin

__all__ = [
    "GroupError",
    "identity_perm",
    "compose",
    "inverse",
    "perm_order",
    "parse_cycles",
    "FiniteGroup",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "alternating_group",
    "quaternion_group",
    "sylow_subgroup",
    "ComplementReport",
    "has_normal_p_complement",
    "ConjugationReport",
    "conjugation_nilpotent",
]

MAX_ORDER = 200


class GroupError(Exception):
    pass


# ---------------------------------------------------------------------------
# permutations: tuples over 0..degree-1, composed left to right


def identity_perm(degree):
    return tuple(range(degree))


def compose(a, b):
    """Apply a first, then b."""
    return tuple(b[a[x]] for x in range(len(a)))


def inverse(a):
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def perm_order(a):
    n = 1
    cur = a
    ident = identity_perm(len(a))
    while cur != ident:
        cur = compose(cur, a)
        n += 1
    return n


def parse_cycles(text, degree=None):
    """Parse generators in one-based cycle notation.

    Generators are separated by ';', each a product of parenthesized
    cycles, e.g. "(1,2);(1,2,3)".  Whitespace is ignored; an empty
    cycle list means the identity.  The degree defaults to the
    largest point mentioned.
    """
    chunks = [c.strip() for c in text.split(";") if c.strip()]
    if not chunks:
        raise GroupError("no generators given")
    parsed = []
    top = 0
    for chunk in chunks:
        cycles = []
        rest = chunk.replace(" ", "")
        while rest:
            if not rest.startswith("("):
                raise GroupError("malformed cycle text: %r" % chunk)
            close = rest.find(")")
            if close < 0:
                raise GroupError("unbalanced parenthesis in %r" % chunk)
            inner = rest[1:close]
            rest = rest[close + 1 :]
            if not inner:
                continue
            try:
                pts = [int(t) for t in inner.split(",")]
            except ValueError:
                raise GroupError("non-integer point in %r" % chunk)
            if any(x < 1 for x in pts) or len(set(pts)) != len(pts):
                raise GroupError("cycle points must be distinct and >= 1")
            cycles.append(pts)
            top = max(top, max(pts))
        parsed.append(cycles)
    if degree is None:
        degree = top
    if degree < top:
        raise GroupError("degree %d too small for the points used" % degree)
    perms = []
    for cycles in parsed:
        perm = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                perm[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        perms.append(tuple(perm))
    return perms


def _closure(degree, gens, cap=MAX_ORDER):
    """Elements of the generated subgroup, BFS over right
    multiplication.  Raises GroupError past the cap."""
    ident = identity_perm(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    if len(seen) >= cap:
                        raise GroupError("group order exceeds cap %d" % cap)
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class FiniteGroup:
    """Generated subgroup of Sym(degree); elements enumerated at
    construction time."""

    def __init__(self, degree, generators):
        self.degree = degree
        gens = []
        for g in generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupError("not a permutation of 0..%d" % (degree - 1))
            gens.append(tuple(g))
        self.generators = tuple(gens) if gens else (identity_perm(degree),)
        self.elements = tuple(sorted(_closure(degree, self.generators)))

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return identity_perm(self.degree)

    def multiply(self, a, b):
        return compose(a, b)

    def conjugate(self, g, x):
        return compose(compose(inverse(g), x), g)  # g x g^-1 read left-to-right

    def __contains__(self, perm):
        return tuple(perm) in set(self.elements)

    def __repr__(self):
        return "FiniteGroup(order=%d, degree=%d)" % (self.order, self.degree)


def cyclic_group(m):
    if m < 1:
        raise GroupError("order must be >= 1")
    return FiniteGroup(m, [tuple((i + 1) % m for i in range(m))])


def dihedral_group(m):
    """Symmetries of the m-gon, order 2m."""
    if m < 3:
        raise GroupError("need m >= 3")
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((m - i) % m for i in range(m))
    return FiniteGroup(m, [rot, ref])


def symmetric_group(m):
    if m < 1:
        raise GroupError("degree must be >= 1")
    if m == 1:
        return FiniteGroup(1, [])
    cyc = tuple((i + 1) % m for i in range(m))
    swap = tuple([1, 0] + list(range(2, m)))
    return FiniteGroup(m, [swap, cyc])


def alternating_group(m):
    if m < 3:
        raise GroupError("need m >= 3")
    three = tuple([1, 2, 0] + list(range(3, m)))
    if m % 2 == 1:
        big = tuple((i + 1) % m for i in range(m))
    else:
        # (m-1)-cycle on 1..m-1, fixing 0: even
        big = tuple([0] + [(i % (m - 1)) + 1 for i in range(1, m)])
    return FiniteGroup(m, [three, big])


_QUNITS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]


def _qmul(a, b):
    sa, xa = (a.startswith("-"), a.lstrip("-"))
    sb, xb = (b.startswith("-"), b.lstrip("-"))
    table = {
        ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
        ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }
    out = table[(xa, xb)]
    if sa != sb:
        out = out[1:] if out.startswith("-") else "-" + out
    return out


def quaternion_group():
    """The eight quaternion units acting on themselves by left
    translation."""
    idx = {u: n for n, u in enumerate(_QUNITS)}

    def left(u):
        return tuple(idx[_qmul(u, v)] for v in _QUNITS)

    g = FiniteGroup(8, [left("i"), left("j")])
    if g.order != 8:
        raise GroupError("quaternion construction came out wrong")
    return g


# ---------------------------------------------------------------------------
# Sylow subgroups and normal p-complements


def _p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(G, p, seed=0):
    """A Sylow p-subgroup, grown greedily.

    Starting from the trivial subgroup, adjoin p-power-order elements
    whenever the enlarged closure is still a p-group.  A proper
    p-subgroup always extends inside its normalizer (the quotient has
    an element of order p, and P<g> is then a p-group), so repeated
    passes over the candidates reach the full p-part.
    """
    if not _is_prime(p):
        raise GroupError("p must be prime")
    target = _p_part(G.order, p)
    candidates = [
        g for g in G.elements if g != G.identity and _is_p_power(perm_order(g), p)
    ]
    rng = random.Random(seed)
    rng.shuffle(candidates)
    current = {G.identity}
    while len(current) < target:
        progressed = False
        for g in candidates:
            if g in current:
                continue
            try:
                trial = _closure(G.degree, list(current) + [g], cap=target)
            except GroupError:
                continue
            if _is_p_power(len(trial), p):
                current = trial
                progressed = True
                if len(current) == target:
                    break
        if not progressed:
            raise GroupError("greedy Sylow growth stalled; should not happen")
    return FiniteGroup(G.degree, sorted(current))


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class ComplementReport:
    p: int
    exists: bool
    candidate_order: int
    expected_order: int  # the p'-part of |G|
    subgroup: FiniteGroup

    def __str__(self):
        if self.exists:
            return "normal p-complement of order %d" % self.candidate_order
        return (
            "no normal p-complement: p'-elements generate order %d, need %d"
            % (self.candidate_order, self.expected_order)
        )


def has_normal_p_complement(G, p):
    """Decide existence of a normal p-complement; the subgroup
    generated by the p'-order elements is returned either way."""
    if not _is_prime(p):
        raise GroupError("p must be prime")
    m = G.order // _p_part(G.order, p)
    gens = [g for g in G.elements if math.gcd(perm_order(g), p) == 1]
    n0 = FiniteGroup(G.degree, gens)
    # generated by a conjugation-closed set, so always normal; check anyway
    members = set(n0.elements)
    for g in G.generators:
        for x in n0.elements:
            if G.conjugate(g, x) not in members:
                raise GroupError("complement candidate is not normal")
    exists = n0.order == m
    if exists and not _is_p_power(G.order // n0.order, p):
        raise GroupError("complement index is not a p-power")
    return ComplementReport(
        p=p,
        exists=exists,
        candidate_order=n0.order,
        expected_order=m,
        subgroup=n0,
    )


# ---------------------------------------------------------------------------
# conjugation action on F_p[G]


@dataclass(frozen=True)
class ConjugationReport:
    p: int
    nilpotent: bool
    chain_dims: tuple  # dim M_0, dim M_1, ... until 0 or stable
    stable_dim: int  # 0 when nilpotent
    stable_basis: tuple  # rref rows over F_p in group-element coordinates

    def __str__(self):
        verdict = "nilpotent" if self.nilpotent else "not nilpotent"
        return "conjugation action %s, chain %s" % (
            verdict,
            " > ".join(str(d) for d in self.chain_dims),
        )


def conjugation_nilpotent(G, p):
    """Iterate M_(i+1) = span{g.v - v : v in M_i} for the conjugation
    action of G on F_p[G].

    For groups of order <= 60 the spanning set ranges over every g;
    for larger groups generators suffice: each M_i is G-stable, and
    for stable M the identity (w - 1)v = (g - 1)(rest . v) + (rest - 1)v,
    applied along a generator word for w, rewrites any (w - 1)M inside
    sum over generators of (g - 1)M.

    Returns nilpotent=True when the chain reaches zero; otherwise the
    first stable nonzero submodule, checked to be G-invariant.
    """
    if not _is_prime(p):
        raise GroupError("p must be prime")
    n = G.order
    pos = {g: i for i, g in enumerate(G.elements)}
    acting = G.elements if n <= 60 else G.generators

    # conjugation by g as a coordinate permutation of the basis G
    conj_perm = {}
    for g in acting:
        conj_perm[g] = np.array(
            [pos[G.conjugate(g, x)] for x in G.elements], dtype=np.int64
        )

    rows = np.eye(n, dtype=np.int64)
    pivots = list(range(n))
    dims = [n]
    while True:
        new_rows = []
        for g in acting:
            permuted = np.zeros_like(rows)
            permuted[:, conj_perm[g]] = rows
            new_rows.append((permuted - rows) % p)
        stacked = np.vstack(new_rows) if new_rows else np.zeros((0, n), dtype=np.int64)
        red, piv = artin.rref(stacked, p)
        # descent: g.v stays in the current module, so the new one sits inside it
        for row in red:
            if not artin.in_row_space(row, rows, pivots, p):
                raise GroupError("conjugation chain failed to descend")
        if len(red) == 0:
            dims.append(0)
            return ConjugationReport(
                p=p,
                nilpotent=True,
                chain_dims=tuple(dims),
                stable_dim=0,
                stable_basis=(),
            )
        if len(red) == dims[-1]:
            # stable: confirm invariance under every generator
            for g in G.generators:
                gi = np.array(
                    [pos[G.conjugate(g, x)] for x in G.elements], dtype=np.int64
                )
                for row in red:
                    moved = np.zeros_like(row)
                    moved[gi] = row
                    if not artin.in_row_space(moved, red, piv, p):
                        raise GroupError("stable submodule is not G-invariant")
            return ConjugationReport(
                p=p,
                nilpotent=False,
                chain_dims=tuple(dims),
                stable_dim=len(red),
                stable_basis=tuple(tuple(int(x) for x in row) for row in red),
            )
        dims.append(len(red))
        rows, pivots = red, piv
