"""
Matrix groups over GF(p).

A :class:`MatrixGroup` keeps its generating matrices and a faithful
permutation image on the p^d vectors of GF(p)^d. All group arithmetic runs on
that image; matrices are read back from the images of the basis vectors,
which form a base of the permutation group.
"""

import logging
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from sympy import isprime, primitive_root

from classbound.config import get_config
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.core.orbits import orbit_labels, orbit_partition
from classbound.core.permutation import Permutation
from classbound.errors import CapExceeded, ElementNotInGroup, SingularGenerator
from classbound.gfmod.linalg import (
    GfModule,
    all_vectors,
    basis_indices,
    det,
    identity_matrix,
    mat_inv,
    perm_of_matrix,
    vector_index,
)

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, Sequence[Sequence[int]]]


class MatrixGroup:
    """A subgroup of GL(d, p) given by generators.

    Attributes:
        p: Field characteristic.
        d: Dimension.
        generators: Generating matrices, reduced mod p.
        perm_image: The group acting on vector indices by v -> v A.
        block_count: Number of equal-size imprimitivity blocks when the
            matrices are block-monomial, else None.
        name: Label used in logs and reports.
    """

    def __init__(
        self,
        p: int,
        d: int,
        generators: Iterable[MatrixLike],
        name: str = "",
        cap: Optional[int] = None,
        perm_image: Optional[FiniteGroup] = None,
        block_count: Optional[int] = None,
    ):
        cfg = get_config()
        if not isprime(p):
            error_msg = f"Characteristic {p} is not prime"
            logger.error(error_msg)
            raise ValueError(error_msg)
        size = p ** d
        if size > cfg.degree_cap:
            error_msg = f"GF({p})^{d} has {size} vectors, above the degree cap {cfg.degree_cap}"
            logger.error(error_msg)
            raise CapExceeded(error_msg)
        mats = []
        for A in generators:
            A = np.asarray(A, dtype=np.int64).reshape(d, d) % p
            if det(A, p) == 0:
                error_msg = f"Generator {A.tolist()} is singular mod {p}"
                logger.error(error_msg)
                raise SingularGenerator(error_msg)
            mats.append(A)
        self.p = int(p)
        self.d = int(d)
        self.generators = tuple(mats)
        self.name = name or f"<{len(mats)} gens in GL({d},{p})>"
        self.block_count = block_count
        if perm_image is None:
            perm_cap = cap if cap is not None else min(cfg.cap, max(1, cfg.structured_limit // size))
            perms = [Permutation.from_array(perm_of_matrix(A, p)) for A in mats]
            perm_image = FiniteGroup(size, perms, name=self.name, base=basis_indices(p, d), cap=perm_cap)
        self.perm_image = perm_image

    def __repr__(self) -> str:
        return f"MatrixGroup({self.name!r}, p={self.p}, d={self.d})"

    @property
    def module(self) -> GfModule:
        return GfModule(self.p, self.d)

    @property
    def order(self) -> int:
        return self.perm_image.order

    @property
    def whole(self) -> Subgroup:
        return self.perm_image.whole

    @property
    def identity_index(self) -> int:
        return self.perm_image.identity_index

    def is_coprime(self) -> bool:
        return self.order % self.p != 0

    @cached_property
    def matrices(self) -> np.ndarray:
        """Matrix of every element, shape (order, d, d), aligned with the element table."""
        images = self.perm_image.elements[:, list(basis_indices(self.p, self.d))].astype(np.int64)
        return all_vectors(self.p, self.d)[images]

    def matrix(self, index: int) -> np.ndarray:
        return self.matrices[int(index)].copy()

    def index_of_matrix(self, A: MatrixLike) -> int:
        """Element index of a matrix.

        Raises:
            ElementNotInGroup: If A is not in the group.
        """
        A = np.asarray(A, dtype=np.int64).reshape(self.d, self.d) % self.p
        idx = int(self.perm_image.index_from_base(vector_index(A, self.p)[None, :])[0])
        if idx < 0:
            error_msg = f"{A.tolist()} is not an element of {self.name}"
            logger.error(error_msg)
            raise ElementNotInGroup(error_msg)
        return idx

    def indices_of_matrices(self, mats: np.ndarray) -> np.ndarray:
        """Element indices of a stack of matrices, ``-1`` for non-members."""
        mats = np.asarray(mats, dtype=np.int64) % self.p
        return self.perm_image.index_from_base(vector_index(mats, self.p))

    def subgroup(self, H: Subgroup, name: str = "") -> "MatrixGroup":
        """A subgroup of the permutation image as a matrix group in its own right."""
        label = name or H.name
        gens = [self.matrix(i) for i in H.gens]
        return MatrixGroup(self.p, self.d, gens, name=label, perm_image=H.as_group(label))

    def matrix_subgroup(self, mats: Iterable[MatrixLike], name: str = "") -> Subgroup:
        """The subgroup of the permutation image generated by the given matrices."""
        return self.perm_image.subgroup([self.index_of_matrix(A) for A in mats], name=name)

    def vector_maps(self, H: Optional[Subgroup] = None) -> List[np.ndarray]:
        """Vector permutations of the generators of H (default: the whole group)."""
        H = self.whole if H is None else H
        return [self.perm_image.elements[g].astype(np.int64) for g in H.gens]

    def dual_maps(self, H: Optional[Subgroup] = None) -> List[np.ndarray]:
        """Covector permutations c -> c (A^-1)^T of the generators of H."""
        H = self.whole if H is None else H
        return [perm_of_matrix(mat_inv(self.matrices[g], self.p).T, self.p) for g in H.gens]

    def vector_orbits(self, H: Optional[Subgroup] = None):
        """(representatives, orbit index per vector, sizes) of H on GF(p)^d."""
        return orbit_partition(orbit_labels(self.module.size, self.vector_maps(H)))

    def n_orbits(self, H: Optional[Subgroup] = None) -> int:
        return len(self.vector_orbits(H)[0])


def matrix_group(p: int, d: int, generators: Iterable[MatrixLike], name: str = "", cap: Optional[int] = None) -> MatrixGroup:
    """Build and enumerate a matrix group.

    Raises:
        SingularGenerator: If a generator has zero determinant mod p.
        CapExceeded: If p^d or the group order exceeds the configured caps.
    """
    G = MatrixGroup(p, d, generators, name=name, cap=cap)
    G.perm_image.enumerate_elements()
    logger.info(f"{G.name}: order {G.order} on GF({p})^{d}")
    return G


def gl_generators(d: int, p: int) -> List[np.ndarray]:
    """diag(a, 1, ..., 1) for a primitive root a, the transvection I + E_12 and the cyclic shift."""
    gens = []
    if p > 2:
        A = identity_matrix(d)
        A[0, 0] = int(primitive_root(p))
        gens.append(A)
    if d >= 2:
        E = identity_matrix(d)
        E[0, 1] = 1
        gens.append(E)
        C = np.zeros((d, d), dtype=np.int64)
        for i in range(d - 1):
            C[i, i + 1] = 1
        C[d - 1, 0] = 1
        gens.append(C)
    return gens


def general_linear_group(d: int, p: int) -> MatrixGroup:
    return matrix_group(p, d, gl_generators(d, p), name=f"GL({d},{p})")
