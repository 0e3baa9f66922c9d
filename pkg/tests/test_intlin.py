"""Exact linear algebra: normal forms, kernels, lattices.

Oracles used here:

* reconstruction identities (U*M == H, U*M*V == S) checked by direct exact
  multiplication, with |det| == 1 via independent Bareiss determinants;
* rank cross-checked against fraction-free elimination and against sympy;
* kernel membership cross-checked by brute-force box scans;
* both reduction backends (compiled / pure Python) compared entry for entry.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tau2 import _kernels_py
from tau2.errors import DimensionMismatchError
from tau2.intlin import (
    IntMatrix,
    LatticeBasis,
    determinant,
    hnf,
    in_rational_span,
    kernel_basis,
    lattice_contains,
    lattice_equal,
    rank,
    rank_fraction_free,
    snf,
)

try:
    from tau2 import _kernels
except ImportError:
    _kernels = None


def random_matrix(rng, max_dim=6, lo=-50, hi=50):
    rows = rng.randint(0, max_dim)
    cols = rng.randint(0, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols
    )


def assert_hnf_shape(h: IntMatrix):
    last_pivot = -1
    seen_zero_row = False
    for row in h.entries:
        nz = [c for c, x in enumerate(row) if x != 0]
        if not nz:
            seen_zero_row = True
            continue
        assert not seen_zero_row, "nonzero row after a zero row"
        c = nz[0]
        assert c > last_pivot, "pivot columns must increase"
        assert row[c] > 0, "pivots must be positive"
        last_pivot = c
    # entries above each pivot reduced into [0, pivot)
    pivots = []
    for row in h.entries:
        nz = [c for c, x in enumerate(row) if x != 0]
        if nz:
            pivots.append((len(pivots), nz[0]))
    for r, c in pivots:
        for above in range(r):
            assert 0 <= h.entries[above][c] < h.entries[r][c]


class TestHnf:
    def test_worked_example(self):
        m = IntMatrix.from_rows([[2, 4], [1, 1]])
        h, u = hnf(m)
        assert h.entries == ((1, 1), (0, 2))
        assert u.mul(m) == h
        assert abs(determinant(u)) == 1

    def test_identity_fixed(self):
        m = IntMatrix.identity(3)
        h, u = hnf(m)
        assert h == m
        assert u == IntMatrix.identity(3)

    def test_zero_matrix(self):
        m = IntMatrix.zero(2, 2)
        h, u = hnf(m)
        assert h == m
        assert u == IntMatrix.identity(2)

    def test_random_reconstruction(self):
        rng = random.Random(1001)
        for _ in range(300):
            m = random_matrix(rng)
            h, u = hnf(m)
            assert u.mul(m) == h
            assert abs(determinant(u)) == 1
            assert_hnf_shape(h)

    def test_canonical_for_row_lattice(self):
        # permuting rows or adding one row to another must not change the HNF
        rng = random.Random(1002)
        for _ in range(100):
            m = random_matrix(rng, max_dim=4, lo=-9, hi=9)
            if m.rows < 2:
                continue
            rows = m.tolists()
            h1, _ = hnf(m)
            rng.shuffle(rows)
            i, j = rng.sample(range(len(rows)), 2)
            rows[i] = [a + b for a, b in zip(rows[i], rows[j])]
            h2, _ = hnf(IntMatrix.from_rows(rows, m.cols))
            assert h1 == h2


class TestSnf:
    def test_diag_2_3(self):
        m = IntMatrix.from_rows([[2, 0], [0, 3]])
        dec = snf(m)
        assert dec.diagonal == (1, 6)
        assert dec.u.mul(m).mul(dec.v) == dec.s

    def test_identity(self):
        m = IntMatrix.identity(4)
        assert snf(m).diagonal == (1, 1, 1, 1)

    def test_rotation(self):
        m = IntMatrix.from_rows([[0, 1], [-1, 0]])
        dec = snf(m)
        assert dec.diagonal == (1, 1)
        assert dec.u.mul(m).mul(dec.v) == dec.s

    def test_random_reconstruction_and_chain(self):
        rng = random.Random(1003)
        for _ in range(300):
            m = random_matrix(rng)
            dec = snf(m)
            assert dec.u.mul(m).mul(dec.v) == dec.s
            assert abs(determinant(dec.u)) == 1
            assert abs(determinant(dec.v)) == 1
            diag = dec.diagonal
            for i in range(min(m.rows, m.cols)):
                for j in range(m.cols):
                    if i != j and j < m.rows:
                        pass
            # off-diagonal zero
            for i in range(m.rows):
                for j in range(m.cols):
                    if i != j:
                        assert dec.s.entries[i][j] == 0
            # nonnegative divisibility chain
            for d in diag:
                assert d >= 0
            nz = [d for d in diag if d != 0]
            assert all(d == 0 for d in diag[len(nz):])
            for a, b in zip(nz, nz[1:]):
                assert b % a == 0

    def test_against_sympy(self):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form

        rng = random.Random(1004)
        for _ in range(40):
            m = random_matrix(rng, max_dim=5, lo=-20, hi=20)
            if m.rows == 0 or m.cols == 0:
                continue
            ours = [d for d in snf(m).diagonal if d != 0]
            theirs = smith_normal_form(sympy.Matrix(m.tolists()))
            ref = sorted(
                abs(theirs[i, i]) for i in range(min(m.rows, m.cols)) if theirs[i, i] != 0
            )
            assert sorted(ours) == ref


class TestRank:
    def test_examples(self):
        assert rank(IntMatrix.identity(2)) == 2
        assert rank(IntMatrix.from_rows([[1, 2], [2, 4]])) == 1
        assert rank(IntMatrix.zero(3, 3)) == 0

    def test_three_paths_agree(self):
        rng = random.Random(1005)
        for _ in range(200):
            m = random_matrix(rng)
            r = rank(m)
            assert r == rank_fraction_free(m)
            assert r == snf(m).rank


class TestKernel:
    def test_examples(self):
        assert kernel_basis(IntMatrix.from_rows([[1, 0]], 2)).vectors == ((0, 1),)
        assert kernel_basis(IntMatrix.from_rows([[1, 1]], 2)).vectors == ((1, -1),)
        assert kernel_basis(IntMatrix.identity(3)).vectors == ()

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(1006)
        for _ in range(200):
            m = random_matrix(rng)
            basis = kernel_basis(m)
            assert basis.rank == m.cols - rank(m)
            for v in basis.vectors:
                assert all(x == 0 for x in m.mul_vec(v))

    def test_saturation_box_scan(self):
        # kernels are saturated: membership in the kernel lattice must match
        # the raw equation m*v == 0 on an exhaustive small box
        rng = random.Random(1007)
        for _ in range(60):
            cols = rng.randint(1, 4)
            rows = rng.randint(0, 3)
            m = IntMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)], cols
            )
            basis = kernel_basis(m)
            box = 3 if cols <= 3 else 2
            for v in itertools.product(range(-box, box + 1), repeat=cols):
                in_kernel = all(x == 0 for x in m.mul_vec(v))
                assert in_kernel == lattice_contains(basis, v)


class TestLattice:
    def test_contains_examples(self):
        l = LatticeBasis.from_vectors(2, [(2, 0)])
        assert lattice_contains(l, (4, 0))
        assert not lattice_contains(l, (1, 0))
        l2 = LatticeBasis.from_vectors(2, [(1, 1), (0, 2)])
        assert lattice_contains(l2, (1, 3))

    def test_equality_examples(self):
        a = LatticeBasis.from_vectors(2, [(1, 0), (0, 1)])
        b = LatticeBasis.from_vectors(2, [(1, 1), (0, 1)])
        assert lattice_equal(a, b)
        assert not lattice_equal(
            LatticeBasis.from_vectors(2, [(2, 0)]), LatticeBasis.from_vectors(2, [(1, 0)])
        )
        assert lattice_equal(LatticeBasis.from_vectors(2, []), LatticeBasis.from_vectors(2, []))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            lattice_contains(LatticeBasis.from_vectors(2, [(1, 0)]), (1, 0, 0))
        with pytest.raises(DimensionMismatchError):
            lattice_equal(LatticeBasis.from_vectors(2, []), LatticeBasis.from_vectors(3, []))

    def test_unimodular_rebase_invariance(self):
        rng = random.Random(1008)
        for _ in range(100):
            dim = rng.randint(1, 4)
            k = rng.randint(1, dim)
            vecs = [[rng.randint(-6, 6) for _ in range(dim)] for _ in range(k)]
            l1 = LatticeBasis.from_vectors(dim, vecs)
            # rebase: add a multiple of one generator to another, permute, negate
            if k >= 2:
                i, j = rng.sample(range(k), 2)
                c = rng.randint(-3, 3)
                vecs[i] = [a + c * b for a, b in zip(vecs[i], vecs[j])]
            rng.shuffle(vecs)
            vecs[0] = [-a for a in vecs[0]]
            l2 = LatticeBasis.from_vectors(dim, vecs)
            assert lattice_equal(l1, l2)
            # mutual containment is the defining property
            for v in l1.vectors:
                assert lattice_contains(l2, v)
            for v in l2.vectors:
                assert lattice_contains(l1, v)

    def test_equivalence_relation_on_samples(self):
        rng = random.Random(1009)
        lattices = []
        for _ in range(12):
            vecs = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(rng.randint(0, 3))]
            lattices.append(LatticeBasis.from_vectors(3, vecs))
        for a in lattices:
            assert lattice_equal(a, a)
            for b in lattices:
                assert lattice_equal(a, b) == lattice_equal(b, a)
                for c in lattices:
                    if lattice_equal(a, b) and lattice_equal(b, c):
                        assert lattice_equal(a, c)


class TestRationalSpan:
    def test_examples(self):
        assert in_rational_span([(2, 0)], (1, 0))
        assert not in_rational_span([(1, 0)], (0, 1))
        assert in_rational_span([(1, 1), (1, -1)], (3, 5))

    def test_agrees_with_rank_definition(self):
        rng = random.Random(1010)
        for _ in range(150):
            dim = rng.randint(1, 4)
            rows = [[rng.randint(-5, 5) for _ in range(dim)] for _ in range(rng.randint(0, 3))]
            v = [rng.randint(-5, 5) for _ in range(dim)]
            expected = rank(IntMatrix.from_rows(rows, dim)) == rank(
                IntMatrix.from_rows(rows + [v], dim)
            )
            assert in_rational_span(rows, v) == expected


@st.composite
def matrices(draw):
    rows = draw(st.integers(min_value=0, max_value=5))
    cols = draw(st.integers(min_value=0, max_value=5))
    entries = draw(
        st.lists(
            st.lists(st.integers(min_value=-30, max_value=30), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return IntMatrix.from_rows(entries, cols)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_snf_reconstruction_property(m):
    dec = snf(m)
    assert dec.u.mul(m).mul(dec.v) == dec.s
    assert abs(determinant(dec.u)) == 1
    assert abs(determinant(dec.v)) == 1
    assert dec.rank == rank_fraction_free(m)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_reconstruction_property(m):
    h, u = hnf(m)
    assert u.mul(m) == h
    assert abs(determinant(u)) == 1
    assert_hnf_shape(h)


@pytest.mark.skipif(_kernels is None, reason="compiled kernels unavailable")
class TestBackendsAgree:
    def test_hnf_and_snf_identical(self):
        rng = random.Random(1011)
        for _ in range(200):
            rows = rng.randint(0, 5)
            cols = rng.randint(0, 5)
            data = [[rng.randint(-40, 40) for _ in range(cols)] for _ in range(rows)]

            a1 = [r[:] for r in data]
            u1 = IntMatrix.identity(rows).tolists()
            p1 = _kernels.hnf_inplace(a1, u1)
            a2 = [r[:] for r in data]
            u2 = IntMatrix.identity(rows).tolists()
            p2 = _kernels_py.hnf_inplace(a2, u2)
            assert (a1, u1, list(p1)) == (a2, u2, list(p2))

            s1 = [r[:] for r in data]
            us1 = IntMatrix.identity(rows).tolists()
            vs1 = IntMatrix.identity(cols).tolists()
            r1 = _kernels.snf_inplace(s1, us1, vs1)
            s2 = [r[:] for r in data]
            us2 = IntMatrix.identity(rows).tolists()
            vs2 = IntMatrix.identity(cols).tolists()
            r2 = _kernels_py.snf_inplace(s2, us2, vs2)
            assert (s1, us1, vs1, r1) == (s2, us2, vs2, r2)

    def test_xgcd_identical(self):
        rng = random.Random(1012)
        for _ in range(500):
            a = rng.randint(-10**12, 10**12)
            b = rng.randint(-10**12, 10**12)
            assert _kernels.xgcd(a, b) == _kernels_py.xgcd(a, b)
            g, s, t = _kernels_py.xgcd(a, b)
            assert g >= 0 and s * a + t * b == g
