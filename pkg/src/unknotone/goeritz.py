"""Chessboard (Goeritz) forms of knot diagrams.

From a checkerboard colouring of a diagram we build the symmetric integer
matrix whose entries count signed crossings between white regions.  Its
determinant gives the knot determinant and, together with a correction
term counting crossings whose sign and incidence number disagree, its
matrix signature gives the knot signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, DiagramError, WhiteGraph, reduce_nugatory

__all__ = [
    "GoeritzForm",
    "goeritz_matrix",
    "goeritz_form",
    "det_int",
    "matrix_signature",
    "is_positive_definite",
    "determinant",
    "signature",
]


def goeritz_matrix(wg: WhiteGraph, discard=None) -> tuple:
    """The Goeritz matrix of a white graph with one vertex discarded.

    Off-diagonal entries sum the incidence numbers of the crossings
    joining two regions; diagonal entries are minus the sum over all
    crossings at the region.  Returns (matrix, kept vertex order).
    """
    if discard is None:
        discard = wg.vertices[-1]
    if discard not in wg.vertices:
        raise DiagramError(f"no region {discard!r} to discard")
    kept = tuple(v for v in wg.vertices if v != discard)
    index = {v: i for i, v in enumerate(kept)}
    n = len(kept)
    g = [[0] * n for _ in range(n)]
    for c, u, v in wg.edges:
        m = wg.mu[c]
        if u in index and v in index:
            i, j = index[u], index[v]
            g[i][j] += m
            g[j][i] += m
        for w in (u, v):
            if w in index:
                g[index[w]][index[w]] -= m
    return tuple(tuple(row) for row in g), kept


def det_int(matrix) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_signature(matrix) -> int:
    """Signature of a symmetric integer matrix, by exact congruence
    diagonalization over the rationals."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    sig = 0
    rows = list(range(n))
    while rows:
        pivot = next((i for i in rows if m[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in rows for j in rows if m[i][j] != 0), None
            )
            if pair is None:
                break  # all-zero block: signature contribution 0
            i, j = pair
            # a hyperbolic 2x2 block contributes +1 and -1; fold row j
            # into row i to make the diagonal nonzero instead
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        rows.remove(pivot)
        p = m[pivot][pivot]
        sig += 1 if p > 0 else -1
        for i in rows:
            f = m[i][pivot] / p
            if f == 0:
                continue
            for k in range(n):
                m[i][k] -= f * m[pivot][k]
            for k in range(n):
                m[k][i] -= f * m[k][pivot]
    return sig


def is_positive_definite(matrix) -> bool:
    """Whether a symmetric integer matrix is positive definite."""
    n = len(matrix)
    return matrix_signature(matrix) == n and det_int(matrix) != 0


@dataclass(frozen=True)
class GoeritzForm:
    """A Goeritz matrix together with the data needed to interpret it:
    the colouring it came from, the region order, and the signature
    correction terms."""

    matrix: tuple
    regions: tuple  # kept region (face) indices, matching matrix order
    discarded: object
    color: int
    n_plus: int  # positive crossings of incidence -1
    n_minus: int  # negative crossings of incidence +1

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def determinant(self) -> int:
        return abs(det_int(self.matrix))

    def signature(self) -> int:
        return matrix_signature(self.matrix) + self.n_minus - self.n_plus

    def to_json_obj(self) -> dict:
        return {
            "matrix": [list(row) for row in self.matrix],
            "regions": list(self.regions),
            "discarded": self.discarded,
            "color": self.color,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
        }


def goeritz_form(diagram: Diagram, color=None, discard=None) -> GoeritzForm:
    """The Goeritz form of a diagram for a given checkerboard colour
    (defaulting to the colour in which every crossing has incidence -1
    when the diagram is alternating, else colour 0)."""
    if color is None:
        color = diagram.alternating_color() if diagram.is_alternating else 0
    wg = diagram.white_graph(color)
    matrix, kept = goeritz_matrix(wg, discard)
    discarded = next(v for v in wg.vertices if v not in kept)
    n_plus = sum(
        1
        for c in diagram.crossings
        if diagram.sign(c) == 1 and diagram.incidence(c, color) == -1
    )
    n_minus = sum(
        1
        for c in diagram.crossings
        if diagram.sign(c) == -1 and diagram.incidence(c, color) == 1
    )
    return GoeritzForm(matrix, kept, discarded, color, n_plus, n_minus)


def determinant(diagram: Diagram) -> int:
    """The knot determinant |det G|, independent of colouring choices."""
    diagram, _ = reduce_nugatory(diagram)
    if diagram.n == 0:
        return 1
    return goeritz_form(diagram).determinant()


def signature(diagram: Diagram) -> int:
    """The knot signature via the Gordon-Litherland correction."""
    diagram, _ = reduce_nugatory(diagram)
    if diagram.n == 0:
        return 0
    return goeritz_form(diagram).signature()
