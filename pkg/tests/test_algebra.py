import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reghom import (
    SeifertForm,
    SurfaceSignature,
    basis_sum,
    eval_q2,
    eval_qz,
    intersection_form,
    pairing,
    validate_seifert,
)
from reghom.errors import DimensionMismatch, EntryOverflow, InvalidSignature, NotSeifert

from conftest import G1K1


def brute_quadratic(v, x):
    return sum(x[i] * v[i][j] * x[j] for i in range(len(x)) for j in range(len(x)))


@st.composite
def seifert_forms(draw, max_rank=6, spread=50):
    g = draw(st.integers(0, max_rank // 2))
    k = draw(st.integers(1, max_rank - 2 * g + 1))
    sig = SurfaceSignature(g, k)
    n = sig.rank
    j = intersection_form(sig).matrix
    v = [[j[r][c] if r > c else 0 for c in range(n)] for r in range(n)]
    for r in range(n):
        v[r][r] += draw(st.integers(-spread, spread))
        for c in range(r + 1, n):
            d = draw(st.integers(-spread, spread))
            v[r][c] += d
            v[c][r] += d
    return SeifertForm(sig, v)


def vectors(n, lo=-20, hi=20):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(tuple)


class TestSignature:
    def test_rank(self):
        assert SurfaceSignature(0, 1).rank == 0
        assert SurfaceSignature(2, 3).rank == 6

    @pytest.mark.parametrize("g,k", [(-1, 1), (0, 0), (1, -2)])
    def test_rejects_bad(self, g, k):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(g, k)

    def test_band_names(self):
        sig = SurfaceSignature(2, 3)
        assert sig.band_names() == ("a1", "b1", "a2", "b2", "c1", "c2")
        assert [sig.band_index(nm) for nm in sig.band_names()] == list(range(6))
        for bad in ("a3", "c3", "c0", "a01", "d1", "a", ""):
            assert sig.band_index(bad) is None


class TestIntersectionForm:
    def test_disk(self):
        assert intersection_form(SurfaceSignature(0, 1)).matrix == ()

    def test_one_handle(self):
        assert intersection_form(G1K1).matrix == ((0, 1), (-1, 0))

    def test_radical_rows(self):
        j = intersection_form(SurfaceSignature(1, 3)).matrix
        assert j[0][1] == 1 and j[1][0] == -1
        assert all(v == 0 for v in j[2] + j[3])
        assert all(j[r][c] == 0 for r in range(4) for c in (2, 3))

    @pytest.mark.parametrize("g,k", [(0, 1), (1, 1), (2, 1), (1, 4), (3, 2)])
    def test_antisymmetric(self, g, k):
        j = intersection_form(SurfaceSignature(g, k)).matrix
        n = len(j)
        assert all(j[r][c] == -j[c][r] for r in range(n) for c in range(n))


class TestValidate:
    def test_flat(self):
        s = validate_seifert([[0, 0], [-1, 0]], G1K1)
        assert s.matrix == ((0, 0), (-1, 0))

    def test_trefoil(self):
        assert validate_seifert([[-1, 1], [0, -1]], G1K1).diagonal == (-1, -1)

    def test_symmetric_rejected(self):
        with pytest.raises(NotSeifert):
            validate_seifert([[0, 0], [0, 0]], G1K1)

    def test_wrong_size(self):
        with pytest.raises(DimensionMismatch):
            validate_seifert([[0]], G1K1)
        with pytest.raises(DimensionMismatch):
            validate_seifert([[0, 0], [-1]], G1K1)

    def test_bound(self):
        big = 2**20
        validate_seifert([[big, 0], [-1, 0]], G1K1)
        with pytest.raises(EntryOverflow):
            validate_seifert([[big + 1, 0], [-1, 0]], G1K1)

    def test_disk_vacuous(self):
        s = validate_seifert([], SurfaceSignature(0, 1))
        assert eval_q2(s, ()) == 0
        assert eval_qz(s, ()) == 0


class TestEvaluation:
    def test_q2_examples(self, flat, trefoil):
        assert eval_q2(flat, (1, 0)) == 0
        assert eval_q2(trefoil, (1, 1)) == 1
        assert eval_q2(trefoil, (3, 1)) == 1

    def test_qz_examples(self, trefoil):
        assert eval_qz(trefoil, (1, 1)) == -1
        assert eval_qz(validate_seifert([[1, 1], [0, 1]], G1K1), (1, 1)) == 3
        assert eval_qz(trefoil, (0, 0)) == 0

    def test_length_checked(self, trefoil):
        with pytest.raises(DimensionMismatch):
            eval_q2(trefoil, (1,))
        with pytest.raises(DimensionMismatch):
            eval_qz(trefoil, (1, 0, 0))

    def test_pairing(self):
        j = intersection_form(G1K1)
        assert pairing(j, (1, 0), (0, 1)) == 1
        assert pairing(j, (3, -2), (3, -2)) == 0
        j3 = intersection_form(SurfaceSignature(1, 3))
        for y in itertools.product(range(-2, 3), repeat=4):
            assert pairing(j3, (0, 0, 1, 0), y) == 0

    def test_basis_sum(self):
        assert basis_sum(G1K1) == (1, 1)
        assert basis_sum(SurfaceSignature(0, 3)) == (1, 1)
        assert basis_sum(SurfaceSignature(2, 1)) == (1, 1, 1, 1)


@settings(max_examples=200, deadline=None)
@given(seifert_forms(), st.data())
def test_qz_matches_expansion(s, data):
    x = data.draw(vectors(s.rank))
    assert eval_qz(s, x) == brute_quadratic(s.matrix, x)
    assert eval_qz(s, x) == eval_qz(s, tuple(-v for v in x))


@settings(max_examples=200, deadline=None)
@given(seifert_forms(), st.data())
def test_q2_mod2_descent(s, data):
    x = data.draw(vectors(s.rank))
    y = data.draw(vectors(s.rank))
    assert eval_q2(s, [a + 2 * b for a, b in zip(x, y)]) == eval_q2(s, x)
    assert eval_q2(s, x) == brute_quadratic(s.matrix, x) % 2


@settings(max_examples=60, deadline=None)
@given(seifert_forms(max_rank=6))
def test_q2_polarization_exhaustive(s):
    form = intersection_form(s.signature)
    cube = list(itertools.product((0, 1), repeat=s.rank))
    for x in cube:
        for y in cube:
            xy = tuple((a + b) % 2 for a, b in zip(x, y))
            assert eval_q2(s, xy) == (eval_q2(s, x) + eval_q2(s, y) + pairing(form, x, y)) % 2


@settings(max_examples=200, deadline=None)
@given(seifert_forms(), st.data())
def test_antisymmetric_part_vanishes(s, data):
    x = data.draw(vectors(s.rank))
    n = s.rank
    v = s.matrix
    assert sum(x[i] * (v[i][j] - v[j][i]) * x[j] for i in range(n) for j in range(n)) == 0


@settings(max_examples=100, deadline=None)
@given(seifert_forms())
def test_bitmask_form_agrees(s):
    q = s.q2()
    for m in range(2**s.rank):
        x = tuple((m >> i) & 1 for i in range(s.rank))
        assert q(m) == eval_q2(s, x)
