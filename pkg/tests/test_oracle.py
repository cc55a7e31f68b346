"""Tests for the brute-force oracle: Jones state sum, unknot detection,
crossing-change sweeps, and independent counting routines."""

import random

import pytest

from unknotone.diagram import (
    Diagram,
    DiagramError,
    apply_move,
    bigon_faces,
    bigon_move,
    clasp_Cm,
    clasp_knot,
    flype,
    flype_sites,
    insert_band,
    parse_dt,
    parse_pd,
    reduce_nugatory,
)
from unknotone.goeritz import determinant
from unknotone.oracle import (
    LaurentPolynomial,
    crossing_change_sweep,
    is_unknot_smallscale,
    jones_determinant,
    kauffman_jones,
    region_count,
    spanning_tree_count,
)

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


class TestLaurentPolynomial:
    def test_ring_axioms(self):
        rng = random.Random(4)

        def rand():
            return LaurentPolynomial(
                {rng.randrange(-4, 5): rng.randrange(-3, 4) for _ in range(3)}
            )

        for _ in range(50):
            a, b, c = rand(), rand(), rand()
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a + LaurentPolynomial({}) == a
            assert a * LaurentPolynomial.one() == a
            assert a - a == LaurentPolynomial({})

    def test_trimming(self):
        assert LaurentPolynomial({3: 0, 1: 2}).coeffs == {1: 2}

    def test_evaluate(self):
        p = LaurentPolynomial({-2: 1, 1: 3})
        from fractions import Fraction

        assert p.evaluate(-1) == -2
        assert isinstance(p.evaluate(-1), int)
        assert p.evaluate(2) == Fraction(25, 4)


class TestJones:
    def test_unknot(self):
        assert kauffman_jones(Diagram({}, {})).is_one()
        assert kauffman_jones(parse_pd("PD[X(1,2,2,1)]")).is_one()

    def test_trefoil_reference(self):
        # the trefoil diagram with writhe -3; the chosen variable
        # convention puts its Jones polynomial in negative powers
        j = kauffman_jones(parse_pd(TREFOIL_PD))
        assert j == LaurentPolynomial({-4: -1, -3: 1, -1: 1})

    def test_mirror_inverts_variable(self):
        for code in ("4 6 2", "4 6 8 2", "4 8 10 2 6"):
            d = parse_dt(code)
            j = kauffman_jones(d)
            jm = kauffman_jones(d.mirror())
            assert jm.coeffs == {-e: c for e, c in j.coeffs.items()}

    def test_fig8_palindrome(self):
        j = kauffman_jones(parse_dt("4 6 8 2"))
        assert j == LaurentPolynomial({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})

    def test_invariant_under_moves(self):
        rng = random.Random(9)
        for code in ("4 6 2", "4 6 8 2", "4 8 10 2 6"):
            d = parse_dt(code)
            j = kauffman_jones(d)
            for (c, s, cut) in flype_sites(d)[:6]:
                assert kauffman_jones(flype(d, c, s, cut)) == j
            darts = sorted(d.adjacency)
            for _ in range(4):
                d1 = rng.choice(darts)
                face = d.face_of_dart[d1]
                arc1 = {d1, d.adjacency[d1]}
                cands = [
                    x
                    for x in darts
                    if d.face_of_dart[x] == face and x not in arc1
                ]
                if not cands:
                    continue
                d2 = rng.choice(cands)
                big = insert_band(d, d1, d2, rng.random() < 0.5)
                assert kauffman_jones(big) == j
                for bf in bigon_faces(big):
                    assert kauffman_jones(apply_move(big, bigon_move(big, bf))) == j

    def test_invariant_under_nugatory_reduction(self):
        k = parse_pd("PD[X(1,2,2,1)]")
        r, _ = reduce_nugatory(k)
        assert kauffman_jones(k) == kauffman_jones(r)

    def test_determinant_agrees_with_goeritz(self):
        for code in ("4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 10 2 6",
                     "6 10 12 14 2 4 8"):
            d = parse_dt(code)
            assert jones_determinant(d) == determinant(d)
            changed = d.change_crossing(min(d.crossings))
            assert jones_determinant(changed) == determinant(changed)

    def test_budget(self):
        big = parse_dt(" ".join(str(x) for x in
                                [16, 18, 20, 22, 24, 26, 28, 30, 2, 4, 6, 8, 10, 12, 14]))
        with pytest.raises(DiagramError):
            kauffman_jones(big)


class TestUnknotOracle:
    @pytest.mark.parametrize("m", [1, -1, 2, -2, 3, -3, 4, -4, 5, -5])
    def test_clasp_diagrams_are_unknots(self, m):
        assert is_unknot_smallscale(clasp_Cm(m))

    def test_knots_are_not(self):
        assert not is_unknot_smallscale(parse_pd(TREFOIL_PD))
        assert not is_unknot_smallscale(parse_dt("4 6 8 2"))
        assert not is_unknot_smallscale(clasp_knot(3))


class TestSweep:
    def test_trefoil_all_crossings(self):
        assert crossing_change_sweep(parse_pd(TREFOIL_PD)) == {0, 1, 2}

    def test_fig8_both_signs(self):
        d = parse_dt("4 6 8 2")
        found = crossing_change_sweep(d)
        assert found == set(d.crossings)
        assert {d.sign(c) for c in found} == {1, -1}

    @pytest.mark.parametrize("code", ["6 8 10 2 4", "8 10 12 14 2 4 6"])
    def test_torus_knots_empty(self, code):
        d = parse_dt(code)
        assert crossing_change_sweep(d) == set()
        assert crossing_change_sweep(d.mirror()) == set()


class TestCounting:
    def test_region_walker(self):
        assert region_count(parse_pd(TREFOIL_PD)) == 5
        assert region_count(parse_dt("4 6 8 2")) == 6
        # both figure-eight chessboard graphs have 3 vertices and 4 edges
        d = parse_dt("4 6 8 2")
        sizes = {tuple((len(d.white_graph(c).vertices),
                        len(d.white_graph(c).edges))) for c in (0, 1)}
        assert sizes == {(3, 4)}

    def test_region_walker_matches_faces(self):
        for code in ("4 6 2", "6 8 10 2 4", "6 10 12 14 2 4 8"):
            d = parse_dt(code)
            assert region_count(d) == len(d.faces)

    def test_spanning_trees(self):
        assert spanning_tree_count([0, 1], [(0, 1)] * 3) == 3
        # path of 4 vertices with one doubled edge: 5-crossing clasp knot
        d = clasp_knot(3)
        for col in (0, 1):
            wg = d.white_graph(col)
            trees = spanning_tree_count(
                wg.vertices, [(u, v) for _, u, v in wg.edges]
            )
            assert trees == determinant(d) == 7
