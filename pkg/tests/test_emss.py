"""Divided-power pages: products, round differentials, survivor reports."""

import random

import pytest

from ramify.emss import (
    CutoffError,
    DPBasisElement,
    dp_multiply,
    final_page_report,
    initial_page,
    round_differential,
    turn_pages,
)


def mono(exps, eps=0):
    return DPBasisElement(tuple(exps), eps)


# ----------------------------------------------------------------- monomials


def test_bidegrees():
    p = 3
    assert mono((0, 0)).bidegree(p) == (0, 0)
    assert mono((1, 0)).bidegree(p) == (1, -1)
    assert mono((0, 0), eps=1).bidegree(p) == (1, -2)
    assert mono((0, 1)).bidegree(p) == (3, -3)
    assert mono((2, 1), eps=1).bidegree(p) == (6, -7)
    assert mono((1, 0)).total_degree == 0
    assert mono((1, 0), eps=1).total_degree == -1


def test_monomial_str():
    assert str(mono((0, 0))) == "1"
    assert str(mono((1, 0))) == "z"
    assert str(mono((2, 0))) == "z^2"
    assert str(mono((0, 1))) == "g[p^1]"
    assert str(mono((0, 0, 2))) == "g[p^2]^2"
    assert str(mono((1, 1), eps=1)) == "z*g[p^1]*sy"
    assert str(mono((0, 0), eps=1)) == "sy"


def test_monomial_validation():
    with pytest.raises(ValueError):
        DPBasisElement((0, 0), 2)
    with pytest.raises(ValueError):
        DPBasisElement((-1, 0), 0)


# ------------------------------------------------------------------ products


def test_dp_multiply_frozen():
    p = 3
    z = mono((1, 0))
    assert dp_multiply(z, z, p) == (2, mono((2, 0)))
    assert dp_multiply(mono((2, 0)), z, p) == (0, None)  # slot overflow
    sy = mono((0, 0), eps=1)
    assert dp_multiply(sy, sy, p) == (0, None)
    g = mono((0, 1))
    assert dp_multiply(g, g, p) == (2, mono((0, 2)))
    assert dp_multiply(g, sy, p) == (1, mono((0, 1), eps=1))
    one = mono((0, 0))
    assert dp_multiply(one, g, p) == (1, g)


def test_dp_multiply_matches_classical_divided_powers():
    # gamma_a gamma_b = C(a+b, a) gamma_(a+b); digitwise Lucas gives the
    # same scalar whenever no slot overflows
    import math

    p = 5
    for a in range(p):
        for b in range(p):
            if a + b >= p:
                continue
            got = dp_multiply(mono((0, a)), mono((0, b)), p)
            want = math.comb(a + b, a) % p
            assert got == (want, mono((0, a + b)))


def test_dp_multiply_slot_mismatch():
    with pytest.raises(ValueError):
        dp_multiply(mono((1,)), mono((1, 0)), 3)


def test_dp_multiply_commutative_and_associative_randomized():
    rng = random.Random(140)
    p, S = 3, 3
    def rand():
        return mono(
            [rng.randrange(p) for _ in range(S)], eps=rng.randrange(2)
        )

    def as_combo(pair):
        scal, m = pair
        return {} if m is None or scal % p == 0 else {m: scal % p}

    def mul_combo(combo, y):
        out = {}
        for m, c in combo.items():
            s, t = dp_multiply(m, y, p)
            if t is not None and (c * s) % p:
                out[t] = (out.get(t, 0) + c * s) % p
        return {m: c for m, c in out.items() if c}

    for _ in range(60):
        x, y, z = rand(), rand(), rand()
        assert dp_multiply(x, y, p) == dp_multiply(y, x, p)
        lhs = mul_combo(as_combo(dp_multiply(x, y, p)), z)
        rhs = mul_combo(as_combo(dp_multiply(y, z, p)), x)
        assert lhs == rhs


# ------------------------------------------------------------- differentials


def test_round_differential_frozen():
    p, S = 3, 2
    g = mono((0, 1))
    assert round_differential(g, p, S, 1) == (1, mono((0, 0), eps=1))
    z = mono((1, 0))
    assert round_differential(z, p, S, 1) == (0, None)
    sy = mono((0, 0), eps=1)
    assert round_differential(sy, p, S, 1) == (0, None)
    # z * g maps to z * sy
    assert round_differential(mono((1, 1)), p, S, 1) == (1, mono((1, 0), eps=1))


def test_round_two_cycle_includes_lower_slots():
    p, S = 3, 3
    g2 = mono((0, 0, 1))
    scal, tgt = round_differential(g2, p, S, 2)
    assert scal == 1
    assert tgt == mono((0, 2, 0), eps=1)  # w_2 = g[p^1]^(p-1) sy


def test_differential_is_a_derivation_on_the_example():
    # gamma_p^2 = 2 gamma_(2p) in digit coordinates; both routes give
    # 2 gamma_p sigma y
    p, S = 3, 2
    g = mono((0, 1))
    scal_sq, gsq = dp_multiply(g, g, p)
    assert (scal_sq, gsq) == (2, mono((0, 2)))
    d_scal, d_tgt = round_differential(gsq, p, S, 1)
    lhs = (scal_sq * d_scal % p, d_tgt)
    dg_scal, dg_tgt = round_differential(g, p, S, 1)
    prod_scal, prod_tgt = dp_multiply(g, dg_tgt, p)
    rhs = (2 * dg_scal * prod_scal % p, prod_tgt)
    assert lhs == rhs == (2, mono((0, 1), eps=1))


def test_round_differential_cutoff_errors():
    with pytest.raises(CutoffError):
        round_differential(mono((0, 1)), 3, 2, 2)
    with pytest.raises(CutoffError):
        round_differential(mono((0, 1)), 3, 2, 0)


# ---------------------------------------------------------------------- pages


def test_initial_page_p3_s2():
    page = initial_page(3, 2)
    assert page.index == 2
    assert page.next_round == 1
    assert page.total_dimension == 18  # 2 * p^S
    assert page.euler() == 0
    assert page.dimension(0, 0) == 1
    assert page.dimension(1, -1) == 1  # z
    assert page.dimension(1, -2) == 1  # sigma y


def test_initial_page_validation():
    with pytest.raises(ValueError):
        initial_page(2, 3)
    with pytest.raises(ValueError):
        initial_page(9, 2)
    with pytest.raises(ValueError):
        initial_page(3, 1)


def test_one_round_p3_s2():
    history = turn_pages(initial_page(3, 2), 1)
    assert len(history) == 2
    nxt = history[1]
    assert nxt.index == 3  # past the realized d^2
    assert nxt.total_dimension == 6
    rec = nxt.record
    assert rec.round == 1
    assert rec.nominal_index == 2
    assert rec.dim_before == 18 and rec.dim_after == 6
    assert rec.d_squared_zero
    assert rec.leibniz_pairs_checked > 0
    assert rec.euler_before == rec.euler_after == 0
    survivors = set(nxt.monomials)
    # even part: zeta powers; exterior part: top gamma block times sy
    assert mono((2, 0)) in survivors
    assert mono((1, 2), eps=1) in survivors
    assert mono((0, 1)) not in survivors


def test_turn_pages_cutoff():
    page = initial_page(3, 2)
    with pytest.raises(CutoffError):
        turn_pages(page, 2)
    with pytest.raises(ValueError):
        turn_pages(page, -1)
    assert turn_pages(page, 0) == [page]


def test_second_round_nominal_index():
    history = turn_pages(initial_page(3, 3), 2)
    assert [p_.total_dimension for p_ in history] == [54, 18, 6]
    assert history[1].record.nominal_index == 2
    assert history[2].record.nominal_index == 5  # p^2 - p - 1
    assert history[2].index == 6


# -------------------------------------------------------------------- report


@pytest.mark.parametrize("p,S", [(3, 2), (3, 3), (5, 2)])
def test_final_page_report_match(p, S):
    rep = final_page_report(p, S)
    assert rep.verdict == "MATCH"
    assert rep.window == p ** (S - 1)
    assert rep.total_dim == p
    want = {mono((a,) + (0,) * (S - 1)) for a in range(p)}
    assert set(rep.survivors) == want
    assert len(rep.pages) == S
    assert rep.pages[0].index == 2


def test_final_page_report_inconclusive():
    rep = final_page_report(3, 1)
    assert rep.verdict == "INCONCLUSIVE"
    assert rep.survivors == ()
    assert rep.pages == ()


def test_final_page_report_rejects_two():
    with pytest.raises(ValueError):
        final_page_report(2, 3)
