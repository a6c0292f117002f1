"""F_p linear algebra, finite local algebras, socles, Betti numbers."""

import random

import numpy as np
import pytest

from ramify.artin import (
    AlgebraError,
    FinAlgebra,
    FinModule,
    betti_numbers,
    coords_in_rref,
    field_algebra,
    free_module,
    in_row_space,
    minimal_free_resolution,
    nakayama_check,
    nilpotency_exponent,
    null_space,
    quotient_map,
    radical_basis,
    random_spanned_module,
    regular_module,
    row_space,
    rref,
    socle_series,
    socle_series_bases,
    spanned_submodule,
    tensor_algebra,
    truncated_polynomial_algebra,
)


# ------------------------------------------------------------- linear algebra


def test_rref_frozen():
    red, piv = rref([[1, 1], [1, 1]], 2)
    assert red.tolist() == [[1, 1]] and piv == [0]
    red, piv = rref([[0, 2], [3, 0]], 5)
    assert red.tolist() == [[1, 0], [0, 1]] and piv == [0, 1]
    red, piv = rref(np.zeros((2, 3), dtype=np.int64), 3)
    assert red.shape == (0, 3) and piv == []


def test_rref_shape_properties_randomized():
    rng = random.Random(17)
    for p in (2, 3, 5):
        for _ in range(25):
            m, n = rng.randrange(1, 6), rng.randrange(1, 6)
            mat = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
            red, piv = rref(mat, p)
            assert red.shape == (len(piv), n)
            for i, c in enumerate(piv):
                assert red[i, c] == 1
                assert all(red[k, c] == 0 for k in range(len(piv)) if k != i)
                assert all(red[i, cc] == 0 for cc in range(c))
            # original rows lie in the reduced span and vice versa
            for row in mat:
                assert in_row_space(row, red, piv, p)
            orig_red, orig_piv = rref(mat, p)
            for row in red:
                assert in_row_space(row, orig_red, orig_piv, p)


def test_null_space_randomized():
    rng = random.Random(23)
    for p in (2, 3):
        for _ in range(25):
            m, n = rng.randrange(1, 6), rng.randrange(1, 6)
            mat = np.array(
                [[rng.randrange(p) for _ in range(n)] for _ in range(m)],
                dtype=np.int64,
            )
            basis = null_space(mat, p)
            red, piv = rref(mat, p)
            assert len(basis) == n - len(piv)  # rank-nullity
            for v in basis:
                assert not (mat @ v % p).any()
            if basis:
                kred, kpiv = rref(basis, p)
                assert kred.shape[0] == len(basis)  # independent


def test_coords_in_rref_roundtrip():
    rng = random.Random(31)
    p = 3
    for _ in range(20):
        mat = [[rng.randrange(p) for _ in range(5)] for _ in range(3)]
        red, piv = rref(mat, p)
        if red.shape[0] == 0:
            continue
        coeffs = [rng.randrange(p) for _ in range(red.shape[0])]
        vec = np.zeros(5, dtype=np.int64)
        for c, row in zip(coeffs, red):
            vec = (vec + c * row) % p
        got = coords_in_rref(vec, red, piv, p)
        assert ((got @ red) % p == vec).all()
    with pytest.raises(AlgebraError):
        red, piv = rref([[1, 0, 0]], 2)
        coords_in_rref([0, 1, 0], red, piv, 2)


def test_quotient_map_kills_exactly_the_span():
    rng = random.Random(37)
    p = 2
    for _ in range(20):
        n = rng.randrange(2, 6)
        mat = [[rng.randrange(p) for _ in range(n)] for _ in range(2)]
        red, piv = rref(mat, p)
        q = quotient_map(red, piv, n, p)
        assert q.shape == (n - len(piv), n)
        for row in red:
            assert not (q @ row % p).any()
        # q is surjective: its rank is the quotient dimension
        qred, qpiv = rref(q, p)
        assert qred.shape[0] == n - len(piv)


# ------------------------------------------------------------------ algebras


def test_field_algebra():
    k = field_algebra(5)
    assert k.dim == 1
    assert len(radical_basis(k)) == 0
    assert nilpotency_exponent(k) == 1
    assert betti_numbers(k, 4) == (1, 0, 0, 0, 0)


def test_truncated_polynomial_algebra_structure():
    alg = truncated_polynomial_algebra(3, 4)
    assert alg.dim == 4
    assert alg.labels == ("1", "y", "y^2", "y^3")
    y = np.array([0, 1, 0, 0], dtype=np.int64)
    y2 = alg.mul(y, y)
    assert y2.tolist() == [0, 0, 1, 0]
    assert alg.mul(y2, y2).tolist() == [0, 0, 0, 0]
    assert alg.aug_of(np.array([2, 1, 1, 1])) == 2
    assert nilpotency_exponent(alg) == 4
    assert len(radical_basis(alg)) == 3
    with pytest.raises(AlgebraError):
        truncated_polynomial_algebra(3, 0)


def test_algebra_validation_rejects_nonlocal():
    # k x k split algebra: idempotent radical complement, not local
    p = 2
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = 1
    table[1, 1, 1] = 1
    unit = (1, 1)
    with pytest.raises(AlgebraError):
        FinAlgebra(p, ("a", "b"), (0, 0), table, (1, 0), unit=unit)


def test_algebra_validation_rejects_bad_augmentation():
    # aug(y) = 1 is not an algebra map for F_2[y]/(y^2)
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = 1
    table[0, 1, 1] = 1
    table[1, 0, 1] = 1
    with pytest.raises(AlgebraError):
        FinAlgebra(2, ("1", "y"), (0, 0), table, (1, 1))


def test_algebra_validation_rejects_nonassociative():
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = 1
    table[0, 1, 1] = 1
    table[1, 0, 1] = 1
    table[1, 1, 0] = 1  # y*y = 1 makes y a unit outside the radical
    with pytest.raises(AlgebraError):
        FinAlgebra(2, ("1", "y"), (0, 0), table, (1, 0))


def test_tensor_algebra_koszul_sign():
    # exterior algebra on one odd generator over F_3
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = 1
    table[0, 1, 1] = 1
    table[1, 0, 1] = 1
    ext = FinAlgebra(3, ("1", "x"), (0, 1), table, (1, 0))
    two = tensor_algebra(ext, ext)
    assert two.dim == 4
    x1 = np.array([0, 0, 1, 0], dtype=np.int64)  # x (x) 1
    x2 = np.array([0, 1, 0, 0], dtype=np.int64)  # 1 (x) x
    fwd = two.mul(x1, x2)
    bwd = two.mul(x2, x1)
    assert fwd.tolist() == [0, 0, 0, 1]
    assert bwd.tolist() == [0, 0, 0, 2]  # odd-odd swap picks up -1
    assert two.mul(x1, x1).tolist() == [0, 0, 0, 0]


def test_tensor_algebra_prime_mismatch():
    with pytest.raises(AlgebraError):
        tensor_algebra(field_algebra(2), field_algebra(3))


# ------------------------------------------------------------------- modules


def test_regular_module_action_matches_table():
    alg = truncated_polynomial_algebra(2, 3)
    reg = regular_module(alg)
    assert reg.dim == 3
    y = np.array([0, 1, 0], dtype=np.int64)
    v = np.array([1, 1, 0], dtype=np.int64)
    assert reg.act_vec(y, v).tolist() == [0, 1, 1]


def test_module_validation():
    alg = truncated_polynomial_algebra(2, 2)
    bad = np.zeros((2, 2, 2), dtype=np.int64)  # unit acts as zero
    with pytest.raises(AlgebraError):
        FinModule(alg, bad)
    with pytest.raises(AlgebraError):
        FinModule(alg, np.zeros((3, 2, 2), dtype=np.int64))


def test_spanned_submodule_closure():
    alg = truncated_polynomial_algebra(2, 4)
    free = free_module(alg, 2)
    e0 = np.zeros(8, dtype=np.int64)
    e0[0] = 1  # generator of the first summand
    sub, rows = spanned_submodule(free, [e0])
    assert sub.dim == 4  # a full copy of the algebra
    y3_corner = np.zeros(8, dtype=np.int64)
    y3_corner[3] = 1
    red, piv = rref(rows, 2)
    assert in_row_space(y3_corner, red, piv, 2)


def test_zero_module():
    alg = truncated_polynomial_algebra(2, 3)
    free = free_module(alg, 1)
    sub, _ = spanned_submodule(free, [np.zeros(3, dtype=np.int64)])
    assert sub.dim == 0
    assert nakayama_check(sub) == (0, 0)
    assert socle_series(sub).dims == ()


# ----------------------------------------------------------------- socles


@pytest.mark.parametrize("m", range(2, 10))
def test_socle_series_truncated_polynomial(m):
    alg = truncated_polynomial_algebra(2, m)
    series = socle_series(regular_module(alg))
    assert series.dims == tuple(range(1, m + 1))
    assert series.k0 == m
    assert series.e == m


def test_socle_stage_bases_are_top_power_spans():
    m = 5
    alg = truncated_polynomial_algebra(3, m)
    stages = socle_series_bases(regular_module(alg))
    assert len(stages) == m
    for k, red in enumerate(stages, start=1):
        # soc^k = span(y^(m-k), ..., y^(m-1))
        want = np.zeros((k, m), dtype=np.int64)
        for i in range(k):
            want[i, m - k + i] = 1
        assert red.tolist() == want.tolist()


def test_socle_series_tensor_square():
    a = truncated_polynomial_algebra(2, 2)
    two = tensor_algebra(a, truncated_polynomial_algebra(2, 2))
    series = socle_series(regular_module(two))
    assert series.dims == (1, 3, 4)
    assert series.k0 == 3 and series.e == 3


def test_nakayama_randomized():
    rng = random.Random(2026)
    algs = [
        truncated_polynomial_algebra(2, 4),
        truncated_polynomial_algebra(3, 3),
        tensor_algebra(
            truncated_polynomial_algebra(2, 2), truncated_polynomial_algebra(2, 2)
        ),
    ]
    for _ in range(30):
        alg = algs[rng.randrange(len(algs))]
        mod = random_spanned_module(alg, rng)
        top, dim = nakayama_check(mod)
        assert 0 <= top <= dim <= 16
        if dim > 0:
            assert top > 0
        series = socle_series(mod)
        if dim:
            assert series.dims[-1] == dim
            assert series.k0 <= series.e


# ----------------------------------------------------------------- Betti


@pytest.mark.parametrize("m", range(2, 8))
def test_betti_hypersurface_is_constant(m):
    alg = truncated_polynomial_algebra(2, m)
    assert betti_numbers(alg, 6) == (1,) * 7


def test_betti_tensor_square_grows_linearly():
    a = truncated_polynomial_algebra(2, 2)
    two = tensor_algebra(a, truncated_polynomial_algebra(2, 2))
    assert betti_numbers(two, 6) == (1, 2, 3, 4, 5, 6, 7)


def test_betti_seed_stability():
    alg = truncated_polynomial_algebra(3, 4)
    assert minimal_free_resolution(alg, 5, shuffle_seed=0) == minimal_free_resolution(
        alg, 5, shuffle_seed=1
    )


def test_betti_of_odd_prime_tensor():
    two = tensor_algebra(
        truncated_polynomial_algebra(3, 3), truncated_polynomial_algebra(3, 2)
    )
    b = betti_numbers(two, 4)
    assert b[0] == 1 and all(v > 0 for v in b)
