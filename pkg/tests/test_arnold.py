import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaoscrack.arnold import (
    CatMatrix,
    PermutationMap,
    build_permutation,
    cat_matrix,
    iterate_matrix,
    key_permutation,
    shuffle,
    unshuffle,
)
from chaoscrack.errors import InvalidMatrixError, SizeMismatchError
from chaoscrack.grid import PixelGrid
from chaoscrack import reference as ref


def naive_power(A, n, N):
    m = [[1, 0], [0, 1]]
    a = [[A.m1, A.m2], [A.m3, A.m4]]
    for _ in range(n):
        m = [[sum(m[i][k] * a[k][j] for k in range(2)) % N for j in range(2)] for i in range(2)]
    return (m[0][0] % N, m[0][1] % N, m[1][0] % N, m[1][1] % N)


def test_cat_matrix_entries():
    assert cat_matrix(1, 1).entries() == (1, 1, 1, 2)
    assert cat_matrix(2, 3).entries() == (1, 2, 3, 7)


@pytest.mark.parametrize("p,q", [(0, 1), (1, 0), (-2, 3)])
def test_cat_matrix_rejects_nonpositive(p, q):
    with pytest.raises(ValueError):
        cat_matrix(p, q)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_cat_matrix_unit_determinant(p, q):
    assert cat_matrix(p, q).det == 1


def test_iterate_identity_and_single():
    A = cat_matrix(1, 1)
    assert iterate_matrix(A, 0, 4).entries() == (1, 0, 0, 1)
    assert iterate_matrix(A, 1, 4).entries() == (1, 1, 1, 2)


def test_iterate_matches_naive_products():
    A = cat_matrix(1, 1)
    assert iterate_matrix(A, 3, 5).entries() == naive_power(A, 3, 5)
    for n in range(51):
        assert iterate_matrix(A, n, 5).entries() == naive_power(A, n, 5)


@pytest.mark.parametrize("n,N", [(-1, 4), (2, 1)])
def test_iterate_preconditions(n, N):
    with pytest.raises(ValueError):
        iterate_matrix(cat_matrix(1, 1), n, N)


@settings(max_examples=200)
@given(p=st.integers(1, 40), q=st.integers(1, 40), m=st.integers(0, 200), n=st.integers(0, 200),
       N=st.integers(2, 300))
def test_exponent_additivity_and_det(p, q, m, n, N):
    A = cat_matrix(p, q)
    lhs = iterate_matrix(A, m + n, N)
    am, an = iterate_matrix(A, m, N), iterate_matrix(A, n, N)
    prod = (
        (am.m1 * an.m1 + am.m2 * an.m3) % N,
        (am.m1 * an.m2 + am.m2 * an.m4) % N,
        (am.m3 * an.m1 + am.m4 * an.m3) % N,
        (am.m3 * an.m2 + am.m4 * an.m4) % N,
    )
    assert lhs.entries() == prod
    assert lhs.det == 1 % N


def test_identity_permutation():
    perm = build_permutation(CatMatrix(1, 0, 0, 1, 4), 4)
    assert perm.source.tolist() == list(range(16))


def test_single_pixel_destination():
    perm = build_permutation(iterate_matrix(cat_matrix(1, 1), 1, 4), 4)
    # (1, 0) -> (1, 1): the pixel at linear index 4 lands at index 5
    assert perm.source[5] == 4


def test_period_matches_brute_force_composition():
    # Brute-force: compose the N=4 permutation with itself until it is the identity.
    base = build_permutation(iterate_matrix(cat_matrix(1, 1), 1, 4), 4)
    cur, k = base, 1
    while cur != PermutationMap.identity(4):
        cur, k = cur.then(base), k + 1
    assert k == 3
    assert build_permutation(iterate_matrix(cat_matrix(1, 1), 3, 4), 4) == PermutationMap.identity(4)


def test_singular_matrix_rejected():
    with pytest.raises(InvalidMatrixError):
        build_permutation(CatMatrix(1, 1, 1, 1, 4), 4)


def test_modulus_mismatch_rejected():
    with pytest.raises(SizeMismatchError):
        build_permutation(iterate_matrix(cat_matrix(1, 1), 2, 5), 4)


@settings(max_examples=100)
@given(p=st.integers(1, 30), q=st.integers(1, 30), n=st.integers(1, 30), N=st.integers(2, 64))
def test_key_permutation_bijective_and_fixes_origin(p, q, n, N):
    perm = key_permutation(p, q, n, N)
    assert sorted(perm.source.tolist()) == list(range(N * N))
    assert perm.source[0] == 0


def test_permutation_map_validates():
    with pytest.raises(ValueError):
        PermutationMap(2, [0, 0, 1, 2])
    with pytest.raises(SizeMismatchError):
        PermutationMap(2, [0, 1, 2])


def test_inverse():
    perm = key_permutation(2, 3, 5, 8)
    assert perm.then(perm.inverse()) == PermutationMap.identity(8)


def test_shuffle_identity(rng):
    img = PixelGrid.random(5, rng)
    assert shuffle(img, PermutationMap.identity(5)) == img
    assert unshuffle(img, PermutationMap.identity(5)) == img


def test_shuffle_reference_example(ref_plain, ref_perm):
    assert shuffle(ref_plain, ref_perm) == ref.grid(ref.SHUFFLED)
    assert shuffle(ref_plain, ref_perm).rows()[0] == [20, 99, 32, 180]


def test_unshuffle_reference_example(ref_perm):
    out = unshuffle(ref.grid(ref.SHUFFLED), ref_perm)
    assert out.rows()[0] == [23, 45, 64, 32]
    assert out == ref.grid(ref.PLAIN)


def test_reference_permutation_is_not_a_cat_map(ref_perm):
    # every cat map fixes pixel (0, 0); the worked example's shuffle does not
    assert ref_perm.source[0] != 0


def test_round_trip_random(rng):
    for _ in range(200):
        N = int(rng.integers(2, 17))
        img = PixelGrid.random(N, rng)
        perm = PermutationMap(N, rng.permutation(N * N))
        assert unshuffle(shuffle(img, perm), perm) == img
        assert shuffle(unshuffle(img, perm), perm) == img


def test_size_mismatch(rng):
    with pytest.raises(SizeMismatchError):
        shuffle(PixelGrid.random(4, rng), PermutationMap.identity(8))
    with pytest.raises(SizeMismatchError):
        unshuffle(PixelGrid.random(4, rng), PermutationMap.identity(8))
