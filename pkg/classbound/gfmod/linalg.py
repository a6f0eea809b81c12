"""
Linear algebra over GF(p) on numpy integer arrays.

Vectors of GF(p)^d are numbered big-endian in base p, so index order is
lexicographic order and the basis vector e_j has index p**(d-1-j). Matrices
act on row vectors from the right: v -> v A.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from classbound.errors import SingularGenerator

logger = logging.getLogger(__name__)


@lru_cache(maxsize=32)
def all_vectors(p: int, d: int) -> np.ndarray:
    """Every vector of GF(p)^d as rows, in index order."""
    idx = np.arange(p ** d, dtype=np.int64)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    vectors = (idx[:, None] // weights[None, :]) % p
    vectors.setflags(write=False)
    return vectors


def vector_index(vectors, p: int) -> np.ndarray:
    """Index of each row vector (last axis), reduced mod p."""
    vectors = np.asarray(vectors, dtype=np.int64) % p
    d = vectors.shape[-1]
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def basis_indices(p: int, d: int) -> Tuple[int, ...]:
    return tuple(p ** (d - 1 - j) for j in range(d))


@dataclass(frozen=True)
class GfModule:
    """The natural module GF(p)^d."""
    p: int
    d: int

    @property
    def size(self) -> int:
        return self.p ** self.d

    @property
    def vectors(self) -> np.ndarray:
        return all_vectors(self.p, self.d)

    def index(self, vector: Sequence[int]) -> int:
        return int(vector_index(vector, self.p))


def identity_matrix(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def mat_mul(A, B, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def row_reduce(A, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p and its pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p: int) -> int:
    return len(row_reduce(A, p)[1])


def det(A, p: int) -> int:
    R = np.array(A, dtype=np.int64) % p
    n = R.shape[0]
    result = 1
    for c in range(n):
        nonzero = np.nonzero(R[c:, c])[0]
        if nonzero.size == 0:
            return 0
        k = c + int(nonzero[0])
        if k != c:
            R[[c, k]] = R[[k, c]]
            result = -result
        pivot = int(R[c, c])
        result = (result * pivot) % p
        factors = (R[c + 1:, c] * pow(pivot, -1, p)) % p
        R[c + 1:] = (R[c + 1:] - np.outer(factors, R[c])) % p
    return result % p


def mat_inv(A, p: int) -> np.ndarray:
    """Inverse mod p.

    Raises:
        SingularGenerator: If A is singular mod p.
    """
    A = np.asarray(A, dtype=np.int64) % p
    d = A.shape[0]
    R, pivots = row_reduce(np.concatenate([A, identity_matrix(d)], axis=1), p)
    if pivots[:d] != list(range(d)):
        error_msg = f"Matrix {A.tolist()} is singular mod {p}"
        logger.error(error_msg)
        raise SingularGenerator(error_msg)
    return R[:, d:]


def nullspace(A, p: int) -> np.ndarray:
    """Basis (rows, in reduced form) of the left null space {v : v A = 0}."""
    X = np.asarray(A, dtype=np.int64).T % p
    R, pivots = row_reduce(X, p)
    n = X.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, c in enumerate(pivots):
            basis[row, c] = (-R[i, f]) % p
    return row_reduce(basis, p)[0] if len(free) else basis


def fixed_space(A, p: int) -> np.ndarray:
    """Basis of C_V(A) = {v : v A = v}."""
    A = np.asarray(A, dtype=np.int64)
    return nullspace(A - identity_matrix(A.shape[0]), p)


def fixed_vector_count(A, p: int) -> int:
    return p ** len(fixed_space(A, p))


def span_indices(basis, p: int, d: int) -> np.ndarray:
    """Sorted indices of all vectors in the span of the basis rows."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, d) % p
    if len(basis) == 0:
        return np.zeros(1, dtype=np.int64)
    R, pivots = row_reduce(basis, p)
    R = R[: len(pivots)]
    coeffs = all_vectors(p, len(pivots))
    return np.unique(vector_index(coeffs @ R, p))


def echelon_basis(basis, p: int, d: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced echelon basis of the span and its pivot columns."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, d) % p
    if len(basis) == 0:
        return np.zeros((0, d), dtype=np.int64), []
    R, pivots = row_reduce(basis, p)
    return R[: len(pivots)], pivots


def restrict_to_subspace(matrices, basis, p: int) -> np.ndarray:
    """Matrices of the action on an invariant subspace, in its echelon basis.

    For B in reduced echelon form, a vector y of the span has coordinates
    y[pivots], so the restriction of A is (B A)[:, pivots].
    """
    matrices = np.asarray(matrices, dtype=np.int64)
    d = matrices.shape[-1]
    B, pivots = echelon_basis(basis, p, d)
    return ((B @ matrices) % p)[..., pivots]


def perm_of_matrix(A, p: int) -> np.ndarray:
    """Images of every vector index under v -> v A."""
    A = np.asarray(A, dtype=np.int64)
    vectors = all_vectors(p, A.shape[0])
    return vector_index(vectors @ A, p)


def block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    d = sum(b.shape[0] for b in blocks)
    out = np.zeros((d, d), dtype=np.int64)
    start = 0
    for b in blocks:
        k = b.shape[0]
        out[start:start + k, start:start + k] = b
        start += k
    return out


def block_permutation_matrix(pi: Sequence[int], d: int) -> np.ndarray:
    """Row-action matrix sending block i to block pi[i]."""
    n = len(pi)
    out = np.zeros((n * d, n * d), dtype=np.int64)
    for i, j in enumerate(pi):
        out[i * d:(i + 1) * d, j * d:(j + 1) * d] = identity_matrix(d)
    return out
