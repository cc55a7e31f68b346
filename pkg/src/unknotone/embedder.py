"""Embedding chessboard lattices as change-maker lattices.

Decides whether the white lattice of a reduced alternating diagram is
isomorphic to a change-maker lattice and, when it is, produces every
isomorphism explicitly as a labeling of the white-graph vertices by
vectors in Z^{r+2}.  An empty result with the search completed is a
verified negative; running out of budget is reported separately and is
never treated as a negative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .changemaker import (
    ChangeMakerVector,
    coeff,
    dot,
    enumerate_change_makers,
    short_vectors,
)
from .diagram import WhiteGraph

__all__ = [
    "Embedding",
    "EmbeddingSearch",
    "enumerate_sigma_candidates",
    "find_embeddings",
    "verify_embedding",
]


@dataclass(frozen=True)
class Embedding:
    """An isomorphism from a white lattice onto a change-maker lattice,
    given by a vector label for every white-graph region."""

    sigma: ChangeMakerVector
    labels: dict  # region id -> ambient vector (tuple indexed -1..r)

    @property
    def marker_v(self):
        """The region labeled with e_0 coefficient +1."""
        return next(v for v, x in self.labels.items() if coeff(x, 0) == 1)

    @property
    def marker_w(self):
        """The region labeled with e_0 coefficient -1."""
        return next(v for v, x in self.labels.items() if coeff(x, 0) == -1)

    def marked_crossings(self, wg: WhiteGraph) -> list:
        """Crossings joining the two marker regions."""
        v, w = self.marker_v, self.marker_w
        return sorted(c for c, a, b in wg.edges if {a, b} == {v, w})

    def negate(self) -> "Embedding":
        return Embedding(
            self.sigma,
            {v: tuple(-a for a in x) for v, x in self.labels.items()},
        )

    def to_json_obj(self) -> dict:
        return {
            "sigma": list(self.sigma.sigma),
            "labels": {str(v): list(x) for v, x in self.labels.items()},
            "marker_v": self.marker_v,
            "marker_w": self.marker_w,
        }


@dataclass(frozen=True)
class EmbeddingSearch:
    """Search outcome: the embeddings found and whether the search ran to
    completion.  complete=False means the node budget was exhausted and
    absence of embeddings is inconclusive."""

    embeddings: tuple
    complete: bool


def enumerate_sigma_candidates(det: int, rank: int) -> list:
    """All indecomposable change-maker vectors whose lattice has the
    given discriminant (the knot determinant).  Empty for even or
    non-positive determinants, which no knot attains."""
    if det <= 0 or det % 2 == 0:
        return []
    if (det + 1) % 2:
        return []
    norm_squared = (det + 1) // 2
    if norm_squared < 1 + rank:  # need sigma_i >= 1 for indecomposability
        return []
    return enumerate_change_makers(norm_squared, rank)


def _degree_row(wg: WhiteGraph, order: tuple) -> list:
    return [wg.degree(v) for v in order]


def _gram_entry(wg: WhiteGraph, u, v) -> int:
    if u == v:
        return wg.degree(u)
    return -wg.multiplicity(u, v)


def _canonical_form(order: tuple, labels: dict, sigma: ChangeMakerVector):
    """Minimal relabeling under the ambient symmetries: permutations of
    coordinates with equal sigma values (indices >= 1) and global
    negation."""
    blocks = []
    start = 0
    vals = sigma.sigma
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] != vals[start]:
            blocks.append(tuple(range(start + 1, i + 1)))  # e-indices
            start = i
    perms_per_block = [list(itertools.permutations(b)) for b in blocks]
    best = None
    base = [labels[v] for v in order]
    for perm_choice in itertools.product(*perms_per_block):
        mapping = {}
        for block, perm in zip(blocks, perm_choice):
            for src, dst in zip(block, perm):
                mapping[src] = dst
        rows = []
        for x in base:
            y = [0] * len(x)
            for i in range(-1, len(x) - 1):
                j = mapping.get(i, i)
                y[j + 1] = coeff(x, i)
            rows.append(tuple(y))
        for flip in (1, -1):
            cand = tuple(tuple(flip * a for a in row) for row in rows)
            if best is None or cand < best:
                best = cand
    return best


def find_embeddings(wg: WhiteGraph, limit: int | None = None,
                    budget: int = 10 ** 7) -> EmbeddingSearch:
    """All labelings of the white-graph regions by change-maker lattice
    vectors realizing the chessboard pairing, up to ambient coordinate
    symmetries.

    The graph must be reduced (no self-loops or cut-edges occur for
    reduced alternating diagrams).  Deterministic: results are sorted and
    independent of the input vertex order."""
    verts = tuple(sorted(wg.vertices))
    rank = len(verts) - 1
    if rank < 1:
        return EmbeddingSearch((), True)
    det = _graph_determinant(wg, verts)
    order = tuple(sorted(verts, key=lambda v: (-wg.degree(v), v)))
    degrees = _degree_row(wg, order)
    gram = [
        [_gram_entry(wg, u, v) for v in order] for u in order
    ]
    found = {}
    nodes = 0
    complete = True
    for sigma in enumerate_sigma_candidates(det, rank):
        pools = {
            d: short_vectors(sigma, d) for d in sorted(set(degrees))
        }
        assigned: list = []
        stack = [(0, iter(pools[degrees[0]]))]
        e0_pos = e0_neg = 0
        total = [0] * (rank + 2)
        while stack:
            i, it = stack[-1]
            nodes += 1
            if nodes > budget:
                complete = False
                break
            for x in it:
                c0 = coeff(x, 0)
                if c0 > 1 or c0 < -1:
                    continue
                if c0 == 1 and e0_pos:
                    continue
                if c0 == -1 and e0_neg:
                    continue
                ok = True
                for j, y in enumerate(assigned):
                    if dot(x, y) != gram[i][j]:
                        ok = False
                        break
                if not ok:
                    continue
                if i == rank:  # last vertex must close the sum to zero
                    if any(t + a for t, a in zip(total, x)):
                        continue
                    if not (e0_pos + (c0 == 1)) or not (e0_neg + (c0 == -1)):
                        continue
                assigned.append(x)
                total = [t + a for t, a in zip(total, x)]
                e0_pos += c0 == 1
                e0_neg += c0 == -1
                if i == rank:
                    labels = {v: x for v, x in zip(order, assigned)}
                    key = _canonical_form(order, labels, sigma)
                    if key not in found:
                        found[key] = Embedding(sigma, dict(zip(order, key)))
                    # undo and continue searching siblings
                    assigned.pop()
                    total = [t - a for t, a in zip(total, x)]
                    e0_pos -= c0 == 1
                    e0_neg -= c0 == -1
                    continue
                stack.append((i + 1, iter(pools[degrees[i + 1]])))
                break
            else:
                stack.pop()
                if assigned:
                    x = assigned.pop()
                    total = [t - a for t, a in zip(total, x)]
                    e0_pos -= coeff(x, 0) == 1
                    e0_neg -= coeff(x, 0) == -1
        if not complete:
            break
        if limit is not None and len(found) >= limit:
            break
    out = tuple(
        emb
        for _, emb in sorted(
            found.items(), key=lambda kv: (kv[1].sigma.sigma, kv[0])
        )
    )
    if limit is not None:
        out = out[:limit]
    return EmbeddingSearch(out, complete)


def _graph_determinant(wg: WhiteGraph, verts: tuple) -> int:
    from .goeritz import det_int

    gram = [
        [_gram_entry(wg, u, v) for v in verts[:-1]] for u in verts[:-1]
    ]
    return abs(det_int(gram))


def verify_embedding(emb: Embedding, wg: WhiteGraph) -> bool:
    """Re-check every invariant of an embedding independently of the
    search: lattice membership, the Gram condition, the zero sum, and the
    unique +-1 pair of e_0 coefficients."""
    verts = sorted(wg.vertices)
    if sorted(emb.labels) != verts:
        return False
    sigma = emb.sigma
    vecs = emb.labels
    width = sigma.rank + 2
    for x in vecs.values():
        if len(x) != width or not sigma.contains(x):
            return False
    for u in verts:
        for v in verts:
            if dot(vecs[u], vecs[v]) != _gram_entry(wg, u, v):
                return False
    if any(sum(x[j] for x in vecs.values()) for j in range(width)):
        return False
    e0 = sorted(coeff(x, 0) for x in vecs.values())
    return e0.count(1) == 1 and e0.count(-1) == 1 and all(
        abs(c) <= 1 for c in e0
    )
