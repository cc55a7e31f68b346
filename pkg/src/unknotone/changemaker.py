"""Change-maker vectors and lattices.

A change-maker vector is a nondecreasing integer tuple (sigma_1, ..., sigma_r)
with 0 <= sigma_1 <= 1 and sigma_{i-1} <= sigma_i <= sigma_1 + ... + sigma_{i-1} + 1,
together with an implicit coefficient sigma_0 = 1.  The associated change-maker
lattice is the orthogonal complement

    L = <rho, sigma>^perp  in  Z^{r+2},

where Z^{r+2} has orthonormal basis e_{-1}, e_0, ..., e_r, rho = e_{-1} - e_0
and sigma = e_0 + sigma_1 e_1 + ... + sigma_r e_r.

Ambient vectors are plain int tuples of length r + 2; the coordinate e_i
lives at tuple position i + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


def dot(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    """Euclidean inner product of two ambient vectors."""
    return sum(a * b for a, b in zip(x, y, strict=True))


def basis_vector(i: int, rank: int) -> tuple[int, ...]:
    """The vector e_i in Z^{rank+2}; valid indices run from -1 to rank."""
    v = [0] * (rank + 2)
    v[i + 1] = 1
    return tuple(v)


def coeff(x: tuple[int, ...], i: int) -> int:
    """The coefficient x . e_i."""
    return x[i + 1]


def is_change_maker(sigma: tuple[int, ...]) -> bool:
    """Whether the tuple satisfies the change-maker condition."""
    total = 0
    prev = None
    for i, s in enumerate(sigma):
        if i == 0:
            if not 0 <= s <= 1:
                return False
        else:
            if not prev <= s <= total + 1:
                return False
        total += s
        prev = s
    return True


def is_subset_sum_complete(sigma: tuple[int, ...]) -> bool:
    """Brute-force check that every 0 <= k <= sum(sigma) is a subset sum.

    Independent of is_change_maker; the two agree by Brown's criterion.
    """
    reachable = {0}
    for s in sigma:
        reachable |= {x + s for x in reachable}
    return all(k in reachable for k in range(sum(sigma) + 1))


@dataclass(frozen=True)
class ChangeMakerVector:
    """The tuple (sigma_1, ..., sigma_r); sigma_0 = 1 is implicit."""

    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_change_maker(self.sigma):
            raise ValueError(f"not a change-maker tuple: {self.sigma}")

    @property
    def rank(self) -> int:
        return len(self.sigma)

    def entry(self, i: int) -> int:
        """sigma_i, honouring the implicit sigma_0 = 1 and sigma_{-1} = 0."""
        if i == -1:
            return 0
        if i == 0:
            return 1
        return self.sigma[i - 1]

    @property
    def full_vector(self) -> tuple[int, ...]:
        """sigma as an ambient vector e_0 + sigma_1 e_1 + ... + sigma_r e_r."""
        return (0, 1) + self.sigma

    @property
    def rho(self) -> tuple[int, ...]:
        return (1, -1) + (0,) * self.rank

    def contains(self, x: tuple[int, ...]) -> bool:
        """Membership of an ambient vector in L = <rho, sigma>^perp."""
        return dot(x, self.full_vector) == 0 and dot(x, self.rho) == 0

    def norm_squared(self) -> int:
        """||sigma||^2 = 1 + sigma_1^2 + ... + sigma_r^2."""
        return 1 + sum(s * s for s in self.sigma)

    def discriminant(self) -> int:
        """disc(L) = 2||sigma||^2 - 1.

        Not stated in the source material; derived from the discriminant of an
        orthogonal complement of the primitive pair (sigma, rho) and verified
        against Gram determinants of standard bases in the test suite.
        """
        return 2 * self.norm_squared() - 1


def is_tight(cm: ChangeMakerVector) -> tuple[bool, int | None]:
    """Whether some sigma_s with s > 1 is tight; returns (flag, tight index)."""
    total = 1  # sigma_0
    for s in range(1, cm.rank + 1):
        if s > 1 and cm.entry(s) == total:
            return True, s
        total += cm.entry(s)
    return False, None


def tight_indices(cm: ChangeMakerVector) -> set[int]:
    """All indices s >= 1 with sigma_s = 1 + sigma_1 + ... + sigma_{s-1}."""
    out = set()
    total = 1
    for s in range(1, cm.rank + 1):
        if cm.entry(s) == total:
            out.add(s)
        total += cm.entry(s)
    return out


def is_indecomposable(cm: ChangeMakerVector) -> bool:
    """L is indecomposable iff sigma_s >= 1 for all s."""
    return all(s >= 1 for s in cm.sigma)


def represent(cm: ChangeMakerVector, s: int, avoid_zero: bool = False) -> frozenset[int]:
    """A subset A of {0, ..., s-1} with sigma_s = sum over A and 1 in A.

    If avoid_zero is set and sigma is slack, 0 is excluded from A.  The choice
    is the greedy largest-value-first subset, preferring larger indices among
    equal values, so the implicit sigma_0 is used only when unavoidable.
    """
    if s <= 1:
        raise ValueError("represent needs s > 1")
    if s > cm.rank:
        raise ValueError(f"index {s} exceeds rank {cm.rank}")
    forbid_zero = avoid_zero and not is_tight(cm)[0]
    target = cm.entry(s)
    indices = [i for i in range(s) if not (forbid_zero and i == 0)]
    best = None
    best_key = None
    for size in range(1, len(indices) + 1):
        for A in combinations(indices, size):
            if 1 not in A:
                continue
            if sum(cm.entry(i) for i in A) != target:
                continue
            values = tuple(sorted((cm.entry(i) for i in A), reverse=True))
            key = (tuple(-v for v in values), tuple(sorted(-i for i in A)))
            if best_key is None or key < best_key:
                best, best_key = frozenset(A), key
    if best is None:
        raise ValueError(f"sigma_{s} has no admissible representation in {cm.sigma}")
    return best


@dataclass(frozen=True)
class StandardBasis:
    """Vectors v_1, ..., v_r forming the standard basis of L."""

    cm: ChangeMakerVector
    vectors: tuple[tuple[int, ...], ...]
    tight: tuple[bool, ...]
    subsets: tuple[frozenset[int], ...]

    def gram(self) -> list[list[int]]:
        return [[dot(a, b) for b in self.vectors] for a in self.vectors]


def standard_basis(cm: ChangeMakerVector) -> StandardBasis:
    """The standard basis of the change-maker lattice of cm."""
    r = cm.rank
    vectors = []
    tight_flags = []
    subsets = []
    tights = tight_indices(cm)
    for s in range(1, r + 1):
        if s in tights:
            v = [0] * (r + 2)
            v[s + 1] = -1
            for i in range(-1, s):
                v[i + 1] = 1
            vectors.append(tuple(v))
            tight_flags.append(True)
            subsets.append(frozenset(range(-1, s)))
        else:
            # sigma_s - sigma_{s-1} as a sum over A_s inside {1, ..., s-2}
            target = cm.entry(s) - cm.entry(s - 1)
            A = _greedy_subset(cm, target, list(range(1, s - 1)))
            v = [0] * (r + 2)
            v[s + 1] = -1
            v[s] = 1
            for i in A:
                v[i + 1] += 1
            vectors.append(tuple(v))
            tight_flags.append(False)
            subsets.append(frozenset(A) | {s - 1})
    basis = StandardBasis(cm, tuple(vectors), tuple(tight_flags), tuple(subsets))
    for v in basis.vectors:
        assert cm.contains(v), "standard basis vector escapes L"
    return basis


def _greedy_subset(cm: ChangeMakerVector, target: int, indices: list[int]) -> frozenset[int]:
    """Largest-first subset of indices with entries summing to target."""
    if target == 0:
        return frozenset()
    best = None
    best_key = None
    for size in range(1, len(indices) + 1):
        for A in combinations(indices, size):
            if sum(cm.entry(i) for i in A) != target:
                continue
            values = tuple(sorted((cm.entry(i) for i in A), reverse=True))
            key = (tuple(-v for v in values), tuple(sorted(-i for i in A)))
            if best_key is None or key < best_key:
                best, best_key = frozenset(A), key
    if best is None:
        raise ValueError(f"no subset of {indices} sums to {target} in {cm.sigma}")
    return best


def lattice_from_basis(vectors: list[tuple[int, ...]]) -> ChangeMakerVector:
    """Recover the change-maker vector whose lattice the given basis spans.

    Each w_s must have the shape -e_s + e_{s-1} + sum over A_s of e_i with
    A_s inside {-1, ..., s-2} and (-1 in A_s iff 0 in A_s).  The returned
    sigma' satisfies sigma'_s = sigma'_{s-1} + sum over A_s of sigma'_i with
    (sigma'_{-1}, sigma'_0) = (0, 1).
    """
    r = len(vectors)
    sigma_ext = {-1: 0, 0: 1}
    for s, w in enumerate(vectors, start=1):
        if len(w) != r + 2:
            raise ValueError("basis vector of wrong ambient rank")
        if coeff(w, s) != -1:
            raise ValueError(f"w_{s} must have coefficient -1 on e_{s}")
        if coeff(w, s - 1) != 1:
            raise ValueError(f"w_{s} must contain e_{s - 1} exactly once")
        if any(coeff(w, i) != 0 for i in range(s + 1, r + 1)):
            raise ValueError(f"w_{s} touches coordinates above e_{s}")
        A = []
        for i in range(-1, s - 1):
            c = coeff(w, i)
            if c not in (0, 1):
                raise ValueError(f"w_{s} has a disallowed coefficient on e_{i}")
            if c:
                A.append(i)
        # membership in the lattice needs equal e_{-1} and e_0 coefficients;
        # for s = 1 the mandatory e_0 forces e_{-1} into A
        if coeff(w, -1) != coeff(w, 0):
            raise ValueError(f"w_{s} must use e_-1 and e_0 with equal coefficients")
        sigma_ext[s] = sigma_ext[s - 1] + sum(sigma_ext[i] for i in A)
    cm = ChangeMakerVector(tuple(sigma_ext[s] for s in range(1, r + 1)))
    for w in vectors:
        if not cm.contains(w):
            raise ValueError("reconstructed sigma does not annihilate the basis")
    return cm


def enumerate_change_makers(norm_squared: int, rank: int) -> list[ChangeMakerVector]:
    """All indecomposable change-maker tuples of given rank with
    1 + sum(sigma_i^2) equal to norm_squared, in lexicographic order."""
    out: list[ChangeMakerVector] = []

    def extend(prefix: list[int], total: int, sq: int) -> None:
        if len(prefix) == rank:
            if sq == norm_squared:
                out.append(ChangeMakerVector(tuple(prefix)))
            return
        lo = prefix[-1] if prefix else 1
        hi = total + 1 if prefix else 1
        remaining = rank - len(prefix)
        for s in range(lo, hi + 1):
            new_sq = sq + s * s
            # every later entry is at least s, so prune on the minimum tail
            if new_sq + (remaining - 1) * s * s > norm_squared:
                break
            extend(prefix + [s], total + s, new_sq)

    extend([], 0, 1)
    return out


def short_vectors(cm: ChangeMakerVector, norm: int) -> list[tuple[int, ...]]:
    """All vectors of L with the exact given norm, in lexicographic order.

    Enumeration is a coordinate backtrack with a remaining-norm bound plus the
    membership constraints x.e_{-1} = x.e_0 and x.sigma = 0.
    """
    r = cm.rank
    sig = cm.full_vector
    results: list[tuple[int, ...]] = []

    # fill coordinates from the top (e_r) down to e_1, then solve e_0 = e_{-1}
    def rec(pos: int, partial: list[int], sq: int, sigdot: int) -> None:
        if pos == 1:
            # need 2*a^2 = norm - sq and a + sigdot' ... e_0 coefficient a with
            # x.sigma = a + sigdot = 0 and x.e_{-1} = a
            rem = norm - sq
            a = -sigdot
            if 2 * a * a == rem:
                results.append(tuple([a, a] + partial))
            return
        i = pos - 1  # coordinate index e_i being assigned
        bound = norm - sq
        c = 0
        while c * c <= bound:
            for val in ({0} if c == 0 else {c, -c}):
                rec(pos - 1, [val] + partial, sq + val * val, sigdot + val * sig[pos])
            c += 1

    rec(r + 1, [], 0, 0)
    return sorted(results)
