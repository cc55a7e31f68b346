"""Tests for chessboard forms, determinants, and signatures."""

import random

import numpy as np
import pytest

from unknotone.diagram import (
    clasp_knot,
    flype,
    flype_sites,
    parse_dt,
    parse_pd,
)
from unknotone.goeritz import (
    det_int,
    determinant,
    goeritz_form,
    goeritz_matrix,
    is_positive_definite,
    matrix_signature,
    signature,
)

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


class TestMatrixHelpers:
    def test_det_against_numpy(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randrange(1, 6)
            m = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
            expect = round(np.linalg.det(np.array(m, dtype=float)))
            assert det_int(m) == expect

    def test_signature_against_numpy(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randrange(1, 6)
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.randrange(-4, 5)
            eig = np.linalg.eigvalsh(np.array(m, dtype=float))
            expect = int(np.sum(eig > 1e-9) - np.sum(eig < -1e-9))
            assert matrix_signature(m) == expect

    def test_positive_definite(self):
        assert is_positive_definite(((2, -1), (-1, 2)))
        assert not is_positive_definite(((2, -1), (-1, 0)))
        assert not is_positive_definite(((1, 0), (0, 0)))


# (dt code, determinant, |signature|) for small alternating knots
KNOWN = [
    ("4 6 2", 3, 2),
    ("4 6 8 2", 5, 0),
    ("6 8 10 2 4", 5, 4),
    ("4 8 10 2 6", 7, 2),
    ("6 10 12 14 2 4 8", 13, 4),
]


class TestInvariants:
    @pytest.mark.parametrize("dt,det,abs_sig", KNOWN)
    def test_known_values(self, dt, det, abs_sig):
        d = parse_dt(dt)
        assert determinant(d) == det
        assert abs(signature(d)) == abs_sig

    def test_trefoil_chirality(self):
        d = parse_pd(TREFOIL_PD)
        assert signature(d) == -signature(d.mirror())
        assert abs(signature(d)) == 2
        assert determinant(d) == determinant(d.mirror()) == 3

    def test_colorings_agree(self):
        diagrams = [parse_dt(dt) for dt, _, _ in KNOWN]
        diagrams += [d.change_crossing(0) for d in diagrams]
        for d in diagrams:
            f0, f1 = goeritz_form(d, 0), goeritz_form(d, 1)
            assert f0.determinant() == f1.determinant()
            assert f0.signature() == f1.signature()

    def test_discarded_region_irrelevant(self):
        d = parse_dt("4 8 10 2 6")
        wg = d.white_graph(d.alternating_color())
        vals = set()
        for v in wg.vertices:
            m, _ = goeritz_matrix(wg, discard=v)
            vals.add(abs(det_int(m)))
        assert len(vals) == 1

    def test_flype_invariance(self):
        for dt, det, abs_sig in KNOWN:
            d = parse_dt(dt)
            for (c, s, cut) in flype_sites(d):
                d2 = flype(d, c, s, cut)
                assert determinant(d2) == det
                assert signature(d2) == signature(d)

    def test_alternating_form_positive_definite(self):
        for dt, _, _ in KNOWN:
            d = parse_dt(dt)
            f = goeritz_form(d)
            assert all(m == -1 for m in d.white_graph(f.color).mu.values())
            assert is_positive_definite(f.matrix)

    def test_determinant_counts_spanning_trees(self):
        # with every incidence number -1 the matrix is the graph Laplacian
        # with one row and column removed, so the determinant is the
        # number of spanning trees of the chessboard graph
        import networkx as nx

        for dt, _, _ in KNOWN + [("8 10 12 2 14 6 4", 0, 0)]:
            d = parse_dt(dt)
            col = d.alternating_color()
            wg = d.white_graph(col)
            G = nx.MultiGraph()
            G.add_nodes_from(wg.vertices)
            for _, u, v in wg.edges:
                G.add_edge(u, v)
            count = (
                nx.number_of_spanning_trees
                if hasattr(nx, "number_of_spanning_trees")
                else nx.total_spanning_tree_weight
            )
            trees = round(count(G))
            assert determinant(d) == trees

    def test_signature_equals_rank_minus_positive_crossings(self):
        # reduced alternating, all incidences -1: the matrix is positive
        # definite of rank r, so the signature is r minus the number of
        # positive crossings
        for dt, _, _ in KNOWN:
            d = parse_dt(dt)
            f = goeritz_form(d)
            pos = sum(1 for c in d.crossings if d.sign(c) == 1)
            assert signature(d) == f.rank - pos

    def test_clasp_knot_values(self):
        # the alternating clasp knots are twist knots: determinant 2m+1
        # (m>0) or 2|m|-1... determinant |2m+1| for parameter m
        for m in (1, 2, 3, -1, -2, -3):
            d = clasp_knot(m)
            assert determinant(d) == abs(2 * m + 1) or determinant(d) == abs(2 * m - 1)

    def test_unknot(self):
        from unknotone.diagram import Diagram

        empty = Diagram({}, {})
        assert determinant(empty) == 1
        assert signature(empty) == 0
