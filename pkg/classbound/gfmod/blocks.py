"""
Imprimitive modules V = V_1 ⊕ ... ⊕ V_n in block form.

:func:`induced_block_group` builds subgroups of H_1 wr P acting on
GF(p)^(n d); :class:`ModuleDecomposition` recovers the block action, its
kernel N and the subgroups the block lemmas are phrased in.
"""

import logging
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from classbound.config import get_config
from classbound.core.constructions import normal_closure, quotient_group
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.core.subgroups import subgroups_for_all
from classbound.errors import HypothesisFailed, NotTransitive
from classbound.gfmod.linalg import (
    block_diagonal,
    block_permutation_matrix,
    identity_matrix,
    restrict_to_subspace,
)
from classbound.gfmod.matrix_group import MatrixGroup

logger = logging.getLogger(__name__)

MIXINGS = ("full", "diagonal", "mixed")


def _is_transitive(P: FiniteGroup) -> bool:
    seen, frontier = {0}, [0]
    while frontier:
        x = frontier.pop()
        for g in P.generators:
            y = g.images[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == P.degree


def mixed_subgroups(H1: MatrixGroup, seed: int) -> Tuple[Subgroup, Subgroup]:
    """The seeded pair (W, C) behind the ``mixed`` block groups.

    W is a nontrivial subgroup of H1 and C the normal closure in W of one of
    its elements. The block kernel of the mixed group is the set of
    (a_1, ..., a_n) in W^n with every a_i a_j^-1 in C, so (W, C) determines it.
    """
    rng = np.random.default_rng(seed)
    subgroups, _ = subgroups_for_all(H1.whole, seed=seed)
    nontrivial = [S for S in subgroups if S.order > 1]
    W = nontrivial[int(rng.integers(len(nontrivial)))]
    u = int(rng.choice(W.members))
    C = normal_closure(W, [u], name="C")
    logger.debug(f"mixed seed {seed}: |W| = {W.order}, |C| = {C.order}")
    return W, C


def induced_block_group(
    H1: MatrixGroup,
    P: FiniteGroup,
    mixing: str = "full",
    seed: Optional[int] = None,
    name: str = "",
) -> MatrixGroup:
    """A subgroup of H1 wr P on GF(p)^(n d) whose block action is P.

    ``full`` gives the whole wreath product and ``diagonal`` the diagonal copy
    of H1 with P. ``mixed`` takes the seeded pair (W, C) of
    :func:`mixed_subgroups`: the diagonal copy of W, the normal closure C
    placed in the first block, and P.

    Raises:
        NotTransitive: If P is not transitive.
        CapExceeded: If the group is too large to enumerate.
    """
    if mixing not in MIXINGS:
        raise ValueError(f"Unknown mixing {mixing!r}; expected one of {MIXINGS}")
    if not _is_transitive(P):
        error_msg = f"{P.name} is not transitive on {P.degree} blocks"
        logger.error(error_msg)
        raise NotTransitive(error_msg)
    n, d, p = P.degree, H1.d, H1.p
    ident = identity_matrix(d)
    gens: List[np.ndarray] = []
    label = f"{H1.name}wr{P.name}" if mixing == "full" else f"{H1.name}~{P.name}:{mixing}"
    if mixing == "full":
        gens += [block_diagonal([h] + [ident] * (n - 1)) for h in H1.generators]
    elif mixing == "diagonal":
        gens += [block_diagonal([h] * n) for h in H1.generators]
    else:
        seed = get_config().seed if seed is None else seed
        W, C = mixed_subgroups(H1, seed)
        gens += [block_diagonal([H1.matrix(w)] * n) for w in W.gens]
        gens += [block_diagonal([H1.matrix(c)] + [ident] * (n - 1)) for c in C.gens if c != H1.identity_index]
        label += f":seed{seed}"
    gens += [block_permutation_matrix(g.images, d) for g in P.generators]
    G = MatrixGroup(p, n * d, gens, name=name or label, block_count=n)
    G.perm_image.enumerate_elements()
    logger.info(f"{G.name}: order {G.order} on GF({p})^{n * d}")
    return G


class ModuleDecomposition:
    """V = V_1 ⊕ ... ⊕ V_n for a block-monomial matrix group.

    Nothing is enumerated at construction; the block data are computed on
    first use.

    Attributes:
        G: The matrix group on GF(p)^(n d).
        n: Number of blocks.
        block_dim: Dimension d of each block.
    """

    def __init__(self, G: MatrixGroup, n: Optional[int] = None, name: str = ""):
        self.G = G
        self.n = int(n if n is not None else (G.block_count or 1))
        if G.d % self.n:
            error_msg = f"Dimension {G.d} is not divisible into {self.n} blocks"
            logger.error(error_msg)
            raise ValueError(error_msg)
        self.block_dim = G.d // self.n
        self.p = G.p
        self.name = name or G.name

    @property
    def block_size(self) -> int:
        """|V_1|."""
        return self.p ** self.block_dim

    @property
    def size(self) -> int:
        """|V|."""
        return self.p ** self.G.d

    def _blocks(self, mats: np.ndarray) -> np.ndarray:
        n, d = self.n, self.block_dim
        return mats.reshape(mats.shape[0], n, d, n, d).transpose(0, 1, 3, 2, 4)

    def block_images_of(self, mats: np.ndarray) -> np.ndarray:
        """Block images (i -> j) of a stack of block-monomial matrices.

        Raises:
            HypothesisFailed: If some matrix does not map blocks to blocks.
        """
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, self.G.d, self.G.d)
        nonzero = np.any(self._blocks(mats) != 0, axis=(3, 4))
        if np.any(nonzero.sum(axis=2) != 1):
            error_msg = f"{self.name} is not block-monomial for {self.n} blocks"
            logger.error(error_msg)
            raise HypothesisFailed(error_msg)
        return np.argmax(nonzero, axis=2)

    @cached_property
    def block_images(self) -> np.ndarray:
        """Image of every block under every element, shape (order, n)."""
        return self.block_images_of(self.G.matrices)

    def block_permutation(self, g: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.block_images[int(g)])

    def restrict(self, g: int, block: int = 0) -> np.ndarray:
        """The d x d block of g taking V_block to its image."""
        target = int(self.block_images[int(g), block])
        d = self.block_dim
        return self.G.matrices[int(g)][block * d:(block + 1) * d, target * d:(target + 1) * d].copy()

    def block_basis(self, blocks: Sequence[int]) -> np.ndarray:
        d = self.block_dim
        rows = [i * d + j for i in blocks for j in range(d)]
        return identity_matrix(self.G.d)[rows] if rows else np.zeros((0, self.G.d), dtype=np.int64)

    @property
    def V1_basis(self) -> np.ndarray:
        return self.block_basis([0])

    @property
    def W2_basis(self) -> np.ndarray:
        """V_2 ⊕ ... ⊕ V_n."""
        return self.block_basis(range(1, self.n))

    # ------------------------------------------------------------------ subgroups

    def _where(self, mask: np.ndarray, name: str) -> Subgroup:
        members = self.G.whole.members[mask]
        return Subgroup(self.G.perm_image, members, name=name)

    def _diagonal_identity(self, block: int) -> np.ndarray:
        d = self.block_dim
        blocks = self.G.matrices[:, block * d:(block + 1) * d, block * d:(block + 1) * d]
        return np.all(blocks == identity_matrix(d)[None], axis=(1, 2)) & (self.block_images[:, block] == block)

    @cached_property
    def N(self) -> Subgroup:
        """Kernel of the block action."""
        return self._where(np.all(self.block_images == np.arange(self.n)[None, :], axis=1), "N")

    @cached_property
    def H(self) -> Subgroup:
        """N_G(V_1)."""
        return self._where(self.block_images[:, 0] == 0, "H")

    @cached_property
    def centralizer_V1(self) -> Subgroup:
        """C_G(V_1)."""
        return self._where(self._diagonal_identity(0), "C(V1)")

    def centralizer_in_N(self, blocks: Sequence[int], name: str = "") -> Subgroup:
        """C_N of the sum of the given blocks."""
        mask = np.all(self.block_images == np.arange(self.n)[None, :], axis=1)
        for b in blocks:
            mask &= self._diagonal_identity(b)
        return self._where(mask, name or f"C_N({','.join(str(b + 1) for b in blocks)})")

    def K(self, i: int) -> Subgroup:
        """K_i = C_N(sum of V_j for j != i)."""
        return self.centralizer_in_N([j for j in range(self.n) if j != i], name=f"K{i + 1}")

    @cached_property
    def N0(self) -> Subgroup:
        return self.K(0)

    @cached_property
    def N1(self) -> Subgroup:
        members = np.unique(np.concatenate([self.K(i).members for i in range(self.n)]))
        parent = self.G.perm_image
        return Subgroup(parent, parent.closure(members), name="N1")

    @cached_property
    def J(self) -> FiniteGroup:
        quotient, _ = quotient_group(self.N, self.N1, name="J")
        return quotient

    def image_group(self, S: Subgroup, blocks: Sequence[int], name: str = "") -> MatrixGroup:
        """The faithful image of S (normalizing each listed block) on their sum."""
        blocks = list(blocks)
        basis = self.block_basis(blocks)
        mats = restrict_to_subspace(self.G.matrices[S.gens], basis, self.p) if len(S.gens) else []
        label = name or f"{S.name}|V{''.join(str(b + 1) for b in blocks)}"
        return MatrixGroup(self.p, len(blocks) * self.block_dim, list(mats), name=label)

    @cached_property
    def U1(self) -> MatrixGroup:
        """N_G(V_1)/C_G(V_1) in its action on V_1."""
        return self.image_group(self.H, [0], name="U1")

    def block_kernel_quotient_order(self) -> int:
        """|N/C_N(V_1)|."""
        return self.image_group(self.N, [0]).order
