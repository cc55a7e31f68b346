"""Shared test utilities: small-graph enumeration and oracle-level checks."""

import itertools

import numpy as np

from unknotone.graphlattice import (
    LatticeElement,
    MultiGraph,
    is_connected,
    is_irreducible,
    is_two_connected,
)


def compositions(total, k):
    """All k-tuples of nonnegative integers summing to total."""
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def all_connected_multigraphs(n, max_edges):
    """All connected loopless multigraphs on n labeled vertices."""
    slots = list(itertools.combinations(range(n), 2))
    for total in range(max(1, n - 1), max_edges + 1):
        for counts in compositions(total, len(slots)):
            pairs = []
            for (u, v), c in zip(slots, counts):
                pairs.extend([(u, v)] * c)
            G = MultiGraph(
                tuple(range(n)),
                tuple((i, u, v) for i, (u, v) in enumerate(pairs)),
            )
            if is_connected(G):
                yield G


def laplacian(G):
    n = len(G.vertices)
    index = {v: i for i, v in enumerate(G.vertices)}
    lap = np.zeros((n, n), dtype=np.int64)
    for _, u, v in G.edges:
        i, j = index[u], index[v]
        lap[i, i] += 1
        lap[j, j] += 1
        lap[i, j] -= 1
        lap[j, i] -= 1
    return lap


def exhaustive_irreducibility_check(max_vertices, max_edges):
    """Compare the structural irreducibility test against a definition-level
    search on every 2-connected multigraph within the given bounds.

    The search looks for x = y + z with y.z >= 0 over all y with
    coefficients in [-B, B], B = max coefficient of x plus one, first
    coordinate pinned to 0 (each coset has such a representative).
    Returns the number of graphs checked; raises on any disagreement.
    """
    checked = 0
    for n in range(2, max_vertices + 1):
        # y candidates with first coordinate 0, remaining in [-2, 2]
        cands = np.array(
            [(0,) + t for t in itertools.product(range(-2, 3), repeat=n - 1)],
            dtype=np.int64,
        )
        for G in all_connected_multigraphs(n, max_edges):
            if not is_two_connected(G):
                continue
            checked += 1
            lap = laplacian(G)
            ylap = cands @ lap
            for bits in itertools.product((0, 1), repeat=n):
                if len(set(bits)) == 1:
                    continue  # zero element
                x = np.array(bits, dtype=np.int64)
                z = x[None, :] - cands
                pairs = np.einsum("ij,ij->i", ylap, z)
                y_zero = np.all(cands == cands[:, :1], axis=1)
                z_zero = np.all(z == z[:, :1], axis=1)
                reducible = bool(np.any((pairs >= 0) & ~y_zero & ~z_zero))
                el = LatticeElement(dict(enumerate(bits)))
                structural, _ = is_irreducible(el, G)
                assert structural == (not reducible), (G, bits)
    return checked
