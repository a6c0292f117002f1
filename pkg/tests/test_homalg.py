"""Smith normal form, periodic resolutions, Tor pages, comparison maps."""

import math
import random

import pytest

from conftest import law_for, ring_for
from ramify.homalg import (
    ChainMapError,
    HomologyError,
    IntMatrixComplex,
    ModuleDescriptor,
    PeriodicFreeComplex,
    build_resolution,
    comparison_chain_map,
    convergence_diagnostic,
    induced_tor_morphism,
    kunneth_page,
    rational_tor,
    smith_normal_form,
    snf_homology,
    tensor_down,
    tor_table,
)

GRID = [(p, n, r) for p in (2, 3) for n in (1, 2) for r in (1, 2)]


# ------------------------------------------------------------------------ SNF


def test_snf_frozen_cases():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[6, 0], [0, 10]]) == [2, 30]
    assert smith_normal_form([[4, 0], [0, 6]]) == [2, 12]
    assert smith_normal_form([[1]]) == [1]
    assert smith_normal_form([[0]]) == []
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[5, 0, 0], [0, 10, 0]]) == [5, 10]


def test_snf_divisibility_chain_randomized():
    rng = random.Random(411)
    for _ in range(60):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        mat = [[rng.randrange(-20, 21) for _ in range(n)] for _ in range(m)]
        inv = smith_normal_form(mat)
        assert all(d > 0 for d in inv)
        for a, b in zip(inv, inv[1:]):
            assert b % a == 0


def _unimodular(rng, n):
    # random product of elementary row operations applied to the identity
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randrange(-2, 3)
        for k in range(n):
            u[i][k] += c * u[j][k]
    return u


def _mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_snf_invariant_under_unimodular_change_of_basis():
    rng = random.Random(62)
    for _ in range(40):
        m = rng.randrange(2, 5)
        n = rng.randrange(2, 5)
        mat = [[rng.randrange(-15, 16) for _ in range(n)] for _ in range(m)]
        u = _unimodular(rng, m)
        v = _unimodular(rng, n)
        assert smith_normal_form(_mat_mul(_mat_mul(u, mat), v)) == smith_normal_form(
            mat
        )


def test_snf_of_diagonal_gives_elementary_divisors():
    rng = random.Random(5150)
    for _ in range(30):
        entries = [rng.randrange(1, 40) for _ in range(rng.randrange(1, 5))]
        mat = [
            [entries[i] if i == j else 0 for j in range(len(entries))]
            for i in range(len(entries))
        ]
        inv = smith_normal_form(mat)
        assert math.prod(inv) == math.prod(entries)
        for a, b in zip(inv, inv[1:]):
            assert b % a == 0


# ------------------------------------------------------------ integer complex


def test_module_descriptor_str():
    assert str(ModuleDescriptor(1)) == "Z"
    assert str(ModuleDescriptor(3)) == "Z^3"
    assert str(ModuleDescriptor(0, (4,))) == "Z/4"
    assert str(ModuleDescriptor(1, (9,))) == "Z + Z/9"
    assert str(ModuleDescriptor(0)) == "0"
    assert ModuleDescriptor(0).is_zero
    assert not ModuleDescriptor(0, (2,)).is_zero


def test_int_matrix_complex_homology():
    # 0 <- Z <- Z with d_1 = 0, d_2 = 4, d_3 = 0
    C = IntMatrixComplex([[[0]], [[4]], [[0]]])
    assert C.ranks == [1, 1, 1, 1]
    assert str(snf_homology(C, 0)) == "Z"
    assert str(snf_homology(C, 1)) == "Z/4"
    # d_2 = 4 is injective out of C_2, so nothing survives there
    assert str(snf_homology(C, 2)) == "0"
    with pytest.raises(ValueError):
        snf_homology(C, 3)
    with pytest.raises(ValueError):
        snf_homology(C, -1)


def test_int_matrix_complex_validation():
    with pytest.raises(ValueError):
        IntMatrixComplex([])
    with pytest.raises(ValueError):
        IntMatrixComplex([[[1, 0]], [[1, 0]]])  # 1x2 then 1x2: not composable
    with pytest.raises(HomologyError):
        IntMatrixComplex([[[1]], [[1]]])  # product is nonzero


def test_free_homology_of_zero_maps():
    C = IntMatrixComplex([[[0, 0], [0, 0]], [[0], [0]]])
    assert snf_homology(C, 0) == ModuleDescriptor(free=2)
    assert snf_homology(C, 1) == ModuleDescriptor(free=2)


# --------------------------------------------------------- periodic complexes


def test_build_resolution_multipliers_alternate():
    ring = ring_for(2, 1, 1)
    C = build_resolution(ring, 5)
    assert C.length == 5
    assert C.multipliers[0].coeffs == ring.y_elt.coeffs
    assert C.multipliers[1].coeffs == ring.q_elt.coeffs
    assert C.multipliers[2].coeffs == ring.y_elt.coeffs
    down = tensor_down(C)
    assert down.matrices == [[[0]], [[2]], [[0]], [[2]], [[0]]]


def test_periodic_complex_validation():
    ring = ring_for(2, 1, 1)
    with pytest.raises(ValueError):
        build_resolution(ring, 0)
    with pytest.raises(HomologyError):
        PeriodicFreeComplex(ring, [ring.one])  # unit augmentation
    with pytest.raises(HomologyError):
        PeriodicFreeComplex(ring, [ring.y_elt, ring.y_elt])  # d o d != 0
    other = ring_for(2, 1, 2)
    with pytest.raises(ValueError):
        PeriodicFreeComplex(ring, [other.y_elt])


# ------------------------------------------------------------------ Tor pages


@pytest.mark.parametrize("p,n,r", GRID)
def test_tor_table_closed_form(p, n, r):
    table = tor_table(ring_for(p, n, r), 6)
    assert table.s_max == 6
    assert table.rank == p ** (r * n)
    assert str(table.entry(0)) == "Z"
    for s in (1, 3, 5):
        assert table.entry(s) == ModuleDescriptor(0, (p**r,))
    for s in (2, 4, 6):
        assert table.entry(s).is_zero


def test_tor_table_degree_zero_window():
    table = tor_table(ring_for(2, 1, 1), 0)
    assert len(table.entries) == 1 and str(table.entry(0)) == "Z"
    with pytest.raises(ValueError):
        tor_table(ring_for(2, 1, 1), -1)


@pytest.mark.parametrize("p,n,r", GRID)
def test_rational_tor_vanishes_positively(p, n, r):
    assert rational_tor(ring_for(p, n, r), 6) == (1, 0, 0, 0, 0, 0, 0)


def test_kunneth_page_bookkeeping():
    page = kunneth_page(ring_for(3, 1, 2), 6)
    assert page.p == 3 and page.r == 2 and page.rank == 9
    assert [d.index for d in page.differentials] == [3, 5]
    for d in page.differentials:
        assert d.forced_zero
        assert d.target == (0, 0)
        assert d.source == (d.index, 0)
        assert d.reason == "torsion source, torsion-free target"
    assert page.odd_witnesses == (
        (1, ModuleDescriptor(0, (9,))),
        (3, ModuleDescriptor(0, (9,))),
        (5, ModuleDescriptor(0, (9,))),
    )
    assert page.e_infinity == page.entries


@pytest.mark.parametrize("p,n,r", GRID)
def test_convergence_diagnostic_integral_mismatch(p, n, r):
    rep = convergence_diagnostic(ring_for(p, n, r), s_max=6)
    assert rep.mode == "integral"
    assert rep.verdict == "MISMATCH"
    assert rep.expected == ModuleDescriptor(free=p ** (r * n))
    assert len(rep.odd_witnesses) == 3
    assert all(desc.torsion == (p**r,) for _, desc in rep.odd_witnesses)


@pytest.mark.parametrize("p,n,r", GRID)
def test_convergence_diagnostic_rational_match(p, n, r):
    rep = convergence_diagnostic(ring_for(p, n, r), s_max=6, rational=True)
    assert rep.mode == "rational"
    assert rep.verdict == "MATCH"
    assert rep.odd_witnesses == ()


def test_convergence_diagnostic_short_window():
    rep = convergence_diagnostic(ring_for(2, 1, 1), s_max=0)
    assert rep.verdict == "INCONCLUSIVE"


# -------------------------------------------------------------- comparison


def test_comparison_chain_map_p2_k2():
    cm = comparison_chain_map(law_for(2, 1), 2, 6)
    assert cm.length == 6
    # full basis (rank 2) plus six random probes, six squares
    assert cm.squares_checked == 6 * (2 + 6)
    phi = cm.morphism
    y = phi.source.y_elt
    assert cm.component(0)(y).coeffs == phi.apply(y).coeffs
    assert cm.component(1)(y).coeffs == (phi.apply(y) * phi.cofactor).coeffs


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_comparison_chain_map_multiplicative_grid(p, k):
    cm = comparison_chain_map(law_for(p, 1, max_r=max(k, 2)), k, 6)
    assert cm.squares_checked == 6 * (p + 6)
    assert cm.source.length == cm.target.length == 6


def test_comparison_chain_map_honda():
    cm = comparison_chain_map(law_for(2, 2), 2, 4)
    assert cm.length == 4
    assert cm.morphism.target.rank == 16


def test_comparison_chain_map_validation():
    with pytest.raises(ValueError):
        comparison_chain_map(law_for(2, 1), 2, 0)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_induced_tor_morphism(p, k):
    tm = induced_tor_morphism(law_for(p, 1, max_r=max(k, 2)), k, 6)
    assert tm.k == k
    assert tm.multiplier == p ** (k - 1)
    assert tm.odd_injective
    assert tm.entries[0] == ("identity", 1, True)
    for s in (1, 3, 5):
        assert tm.entries[s] == ("times-p^(k-1)", p ** (k - 1), True)
    for s in (2, 4, 6):
        assert tm.entries[s] == ("zero", 0, True)
