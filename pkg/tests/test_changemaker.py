"""Tests for change-maker vectors and lattices."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unknotone import changemaker as cm
from unknotone.changemaker import (
    ChangeMakerVector,
    basis_vector,
    dot,
    enumerate_change_makers,
    is_change_maker,
    is_indecomposable,
    is_subset_sum_complete,
    is_tight,
    lattice_from_basis,
    represent,
    short_vectors,
    standard_basis,
)


def det_int(m):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class TestCondition:
    def test_basic_true(self):
        assert is_change_maker((1, 1, 2))

    def test_basic_false(self):
        assert not is_change_maker((1, 3))

    def test_degenerate_zero(self):
        assert is_change_maker((0,))
        assert is_change_maker(())
        assert not is_change_maker((2,))

    @given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
    @settings(max_examples=300)
    def test_brown_equivalence_random(self, entries):
        sigma = tuple(sorted(entries))
        assert is_change_maker(sigma) == is_subset_sum_complete(sigma)

    def test_brown_equivalence_exhaustive(self):
        # every nondecreasing tuple with sum <= 40 and at most 5 entries
        count = 0
        for r in range(1, 6):
            for sigma in itertools.combinations_with_replacement(range(0, 41), r):
                if sum(sigma) > 40:
                    continue
                count += 1
                assert is_change_maker(sigma) == is_subset_sum_complete(sigma)
        assert count > 10000


class TestRepresent:
    def test_simple(self):
        assert represent(ChangeMakerVector((1, 1, 2)), 3) == {1, 2}

    def test_tight_uses_zero(self):
        assert represent(ChangeMakerVector((1, 1, 3)), 3) == {0, 1, 2}

    def test_contains_one(self):
        v = ChangeMakerVector((1, 1, 1, 2, 3))
        for s in range(2, 6):
            A = represent(v, s)
            assert 1 in A
            assert sum(v.entry(i) for i in A) == v.entry(s)

    @given(st.lists(st.integers(1, 6), min_size=2, max_size=6))
    @settings(max_examples=200)
    def test_randomized(self, raw):
        sigma = tuple(sorted(raw))
        if not is_change_maker(sigma):
            return
        v = ChangeMakerVector(sigma)
        slack = not is_tight(v)[0]
        for s in range(2, v.rank + 1):
            A = represent(v, s, avoid_zero=True)
            assert 1 in A
            assert A <= set(range(s))
            assert sum(v.entry(i) for i in A) == v.entry(s)
            if slack:
                assert 0 not in A


class TestTightSlack:
    def test_tight(self):
        assert is_tight(ChangeMakerVector((1, 1, 3))) == (True, 3)

    def test_slack(self):
        assert is_tight(ChangeMakerVector((1, 1, 2))) == (False, None)

    def test_rank_one_never_tight(self):
        assert is_tight(ChangeMakerVector((1,))) == (False, None)


class TestStandardBasis:
    def test_rank_one(self):
        b = standard_basis(ChangeMakerVector((1,)))
        assert b.vectors == ((1, 1, -1),)

    def test_rank_two(self):
        b = standard_basis(ChangeMakerVector((1, 1)))
        assert b.vectors[0] == (1, 1, -1, 0)
        assert b.vectors[1] == (0, 0, 1, -1)
        assert b.tight == (True, False)

    def test_membership(self):
        for sigma in [(1,), (1, 1), (1, 1, 2), (1, 2, 3), (1, 1, 3), (1, 2, 2, 4)]:
            v = ChangeMakerVector(sigma)
            b = standard_basis(v)
            for w in b.vectors:
                assert v.contains(w)

    def test_triangular_structure(self):
        v = ChangeMakerVector((1, 1, 2, 4, 4))
        b = standard_basis(v)
        for s, w in enumerate(b.vectors, start=1):
            assert cm.coeff(w, s) == -1
            assert all(cm.coeff(w, i) == 0 for i in range(s + 1, v.rank + 1))

    def test_gram_determinant_is_discriminant(self):
        for sigma in [(1,), (1, 1), (1, 2), (1, 1, 2), (1, 2, 3), (1, 1, 3),
                      (1, 2, 2, 4), (1, 1, 1, 1), (1, 2, 4, 8), (1, 1, 2, 2, 6)]:
            v = ChangeMakerVector(sigma)
            g = standard_basis(v).gram()
            assert det_int(g) == v.discriminant()


class TestLatticeFromBasis:
    def test_rank_one(self):
        assert lattice_from_basis([(1, 1, -1)]).sigma == (1,)

    def test_rank_two_tight(self):
        w1 = (1, 1, -1, 0)
        w2 = (1, 1, 1, -1)
        assert lattice_from_basis([w1, w2]).sigma == (1, 2)

    def test_roundtrip_standard_bases(self):
        # slack standard bases have A_s away from 0 and -1, so they satisfy
        # the shape hypothesis and must reconstruct sigma exactly
        for sigma in [(1,), (1, 1), (1, 1, 2), (1, 2, 3), (1, 2, 2, 4)]:
            v = ChangeMakerVector(sigma)
            b = standard_basis(v)
            assert lattice_from_basis(list(b.vectors)).sigma == sigma

    def test_shape_violation(self):
        with pytest.raises(ValueError):
            lattice_from_basis([(1, 0, -1)])


class TestIndecomposable:
    def test_zero_entry(self):
        assert not is_indecomposable(ChangeMakerVector((0, 1)))

    def test_positive(self):
        assert is_indecomposable(ChangeMakerVector((1, 2)))

    def test_norm_one_scan(self):
        for sigma in [(1,), (0,), (1, 1), (0, 1), (1, 2), (0, 0, 1), (1, 1, 3)]:
            v = ChangeMakerVector(sigma)
            has_unit = bool(short_vectors(v, 1))
            assert is_indecomposable(v) == (not has_unit)


class TestIrreducibles:
    def irreducible_bruteforce(self, v, x, bound=2):
        """Search x = a + b with a.b >= 0 over small coordinates of L."""
        vecs = [w for n in range(1, dot(x, x)) for w in short_vectors(v, n)]
        for a in vecs:
            b = tuple(xi - ai for xi, ai in zip(x, a))
            if all(c == 0 for c in b):
                continue
            if dot(a, b) >= 0:
                return False
        return True

    def test_standard_basis_irreducible(self):
        for sigma in [(1, 1), (1, 1, 2), (1, 2, 3), (1, 1, 3)]:
            v = ChangeMakerVector(sigma)
            for w in standard_basis(v).vectors:
                assert self.irreducible_bruteforce(v, w)

    def test_tight_double_vector_irreducible(self):
        v = ChangeMakerVector((1, 1, 3))
        k = 3
        w = (0, 0, 2, 1, -1)  # 2e_1 + e_2 - e_3
        assert v.contains(w)
        assert self.irreducible_bruteforce(v, w)


class TestEnumeration:
    def test_det3_rank1(self):
        out = enumerate_change_makers(2, 1)
        assert [v.sigma for v in out] == [(1,)]

    def test_det5_rank2(self):
        out = enumerate_change_makers(3, 2)
        assert [v.sigma for v in out] == [(1, 1)]

    def test_matches_bruteforce(self):
        for ns in range(2, 12):
            for r in range(1, 4):
                expected = []
                for sigma in itertools.product(range(1, 7), repeat=r):
                    if tuple(sorted(sigma)) != sigma:
                        continue
                    if not is_change_maker(sigma):
                        continue
                    if 1 + sum(s * s for s in sigma) != ns:
                        continue
                    expected.append(sigma)
                got = [v.sigma for v in enumerate_change_makers(ns, r)]
                assert got == sorted(expected)


class TestShortVectors:
    def test_trefoil_lattice(self):
        v = ChangeMakerVector((1,))
        assert short_vectors(v, 3) == [(-1, -1, 1), (1, 1, -1)]
        assert short_vectors(v, 1) == []
        assert short_vectors(v, 2) == []

    def test_membership_and_completeness(self):
        rng = random.Random(7)
        for sigma in [(1, 1), (1, 2), (1, 1, 2)]:
            v = ChangeMakerVector(sigma)
            for n in range(1, 7):
                vecs = short_vectors(v, n)
                for x in vecs:
                    assert v.contains(x)
                    assert dot(x, x) == n
                # spot-check completeness against exhaustive box enumeration
                r = v.rank
                for x in itertools.product(range(-2, 3), repeat=r + 2):
                    if v.contains(x) and dot(x, x) == n:
                        assert tuple(x) in vecs
