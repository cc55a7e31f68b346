"""Tests for embedding white lattices as change-maker lattices."""

import pytest

from unknotone.changemaker import ChangeMakerVector, basis_vector, coeff
from unknotone.diagram import (
    WhiteGraph,
    clasp_knot,
    diagram_from_plane_graph,
    parse_dt,
    parse_pd,
)
from unknotone.embedder import (
    Embedding,
    enumerate_sigma_candidates,
    find_embeddings,
    verify_embedding,
)
from unknotone.goeritz import signature
from unknotone.oracle import crossing_change_sweep

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


def alt_white_graph(d):
    return d.white_graph(d.alternating_color())


def pretzel_333():
    """The (3,3,3) pretzel: unknotting number 2, determinant 27."""
    edges = {0: (0, 2), 1: (2, 3), 2: (3, 1), 3: (0, 4), 4: (4, 5),
             5: (5, 1), 6: (0, 6), 7: (6, 7), 8: (7, 1)}
    rotation = {
        0: ((0, 0), (3, 0), (6, 0)),
        1: ((8, 1), (5, 1), (2, 1)),
        2: ((0, 1), (1, 0)), 3: ((1, 1), (2, 0)),
        4: ((3, 1), (4, 0)), 5: ((4, 1), (5, 0)),
        6: ((6, 1), (7, 0)), 7: ((7, 1), (8, 0)),
    }
    return diagram_from_plane_graph(edges, rotation, 0)


class TestSigmaCandidates:
    def test_small(self):
        assert [c.sigma for c in enumerate_sigma_candidates(3, 1)] == [(1,)]
        assert [c.sigma for c in enumerate_sigma_candidates(5, 2)] == [(1, 1)]

    def test_even_or_invalid_empty(self):
        assert enumerate_sigma_candidates(2, 1) == []
        assert enumerate_sigma_candidates(4, 2) == []
        assert enumerate_sigma_candidates(-3, 1) == []

    def test_norm_accounting(self):
        for det in (3, 5, 7, 9, 11, 13):
            for r in (1, 2, 3):
                for c in enumerate_sigma_candidates(det, r):
                    assert c.discriminant() == det
                    assert all(s >= 1 for s in c.sigma)


class TestFindEmbeddings:
    def test_trefoil_unique(self):
        d = parse_pd(TREFOIL_PD).mirror()  # the chirality with sigma = -2
        wg = alt_white_graph(d)
        res = find_embeddings(wg)
        assert res.complete
        assert len(res.embeddings) == 1
        emb = res.embeddings[0]
        assert emb.sigma.sigma == (1,)
        vals = set(emb.labels.values())
        e = tuple(
            a - b - c
            for a, b, c in zip(
                basis_vector(1, 1), basis_vector(0, 1), basis_vector(-1, 1)
            )
        )
        assert vals == {e, tuple(-x for x in e)}
        assert set(emb.marked_crossings(wg)) == set(d.crossings)

    def test_wrong_chirality_empty(self):
        d = parse_pd(TREFOIL_PD)  # sigma = +2: no embedding
        res = find_embeddings(alt_white_graph(d))
        assert res.complete and res.embeddings == ()

    def test_fig8_both_chiralities(self):
        d = parse_dt("4 6 8 2")
        for D in (d, d.mirror()):
            res = find_embeddings(alt_white_graph(D))
            assert res.complete
            assert len(res.embeddings) == 1

    def test_torus_27_verified_negative(self):
        d = parse_dt("8 10 12 14 2 4 6")
        for D in (d, d.mirror()):
            res = find_embeddings(alt_white_graph(D))
            assert res.complete
            assert res.embeddings == ()

    def test_pretzel_verified_negative(self):
        # sigma = -2 but unknotting number 2: the sigma gate alone would
        # not reject this knot; the lattice search must
        d = pretzel_333()
        assert signature(d) in (2, -2)
        for D in (d, d.mirror()):
            res = find_embeddings(alt_white_graph(D))
            assert res.complete and res.embeddings == ()
        assert crossing_change_sweep(d) == set()

    def test_soundness(self):
        for code in ("4 6 8 2", "4 8 10 2 6", "6 8 10 2 4"):
            d = parse_dt(code)
            for D in (d, d.mirror()):
                wg = alt_white_graph(D)
                for emb in find_embeddings(wg).embeddings:
                    assert verify_embedding(emb, wg)

    def test_vertex_order_independence(self):
        d = parse_dt("4 8 10 2 6").mirror()
        wg = alt_white_graph(d)
        res = find_embeddings(wg)
        relabel = {v: -v - 10 for v in wg.vertices}
        wg2 = WhiteGraph(
            vertices=tuple(sorted(relabel[v] for v in wg.vertices)),
            edges=tuple((c, relabel[u], relabel[v]) for c, u, v in wg.edges),
            mu=wg.mu,
            rotation={},
        )
        res2 = find_embeddings(wg2)
        assert len(res.embeddings) == len(res2.embeddings)
        # embeddings must agree up to the ambient coordinate symmetries
        from unknotone.embedder import _canonical_form

        order2 = tuple(
            sorted(wg2.vertices, key=lambda v: (-wg2.degree(v), v))
        )
        for a, b in zip(res.embeddings, res2.embeddings):
            assert a.sigma == b.sigma
            moved = {relabel[v]: x for v, x in a.labels.items()}
            assert _canonical_form(order2, moved, a.sigma) == _canonical_form(
                order2, b.labels, b.sigma
            )

    def test_budget_inconclusive(self):
        d = clasp_knot(5)
        wg = alt_white_graph(d)
        res = find_embeddings(wg, budget=3)
        assert not res.complete

    def test_limit(self):
        d = parse_dt("4 6 8 2")
        res = find_embeddings(alt_white_graph(d), limit=1)
        assert len(res.embeddings) <= 1


class TestVerify:
    def test_negated_label_fails(self):
        d = parse_dt("4 6 8 2")
        wg = alt_white_graph(d)
        emb = find_embeddings(wg).embeddings[0]
        v = next(iter(emb.labels))
        bad = dict(emb.labels)
        bad[v] = tuple(-a for a in bad[v])
        assert not verify_embedding(Embedding(emb.sigma, bad), wg)

    def test_global_negation_ok(self):
        d = parse_dt("4 6 8 2")
        wg = alt_white_graph(d)
        emb = find_embeddings(wg).embeddings[0]
        assert verify_embedding(emb.negate(), wg)

    def test_hand_built_trefoil(self):
        d = parse_pd(TREFOIL_PD).mirror()
        wg = alt_white_graph(d)
        x = (-1, -1, 1)
        labels = {wg.vertices[0]: x, wg.vertices[1]: tuple(-a for a in x)}
        emb = Embedding(ChangeMakerVector((1,)), labels)
        assert verify_embedding(emb, wg)
        assert {emb.marker_v, emb.marker_w} == set(wg.vertices)

    def test_markers(self):
        d = parse_dt("4 6 8 2")
        wg = alt_white_graph(d)
        emb = find_embeddings(wg).embeddings[0]
        assert coeff(emb.labels[emb.marker_v], 0) == 1
        assert coeff(emb.labels[emb.marker_w], 0) == -1
        assert 1 <= len(emb.marked_crossings(wg)) <= 3
