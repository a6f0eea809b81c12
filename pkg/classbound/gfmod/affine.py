"""
Affine groups H ⋉ W for H a subgroup of a matrix group G and W an H-invariant
subspace of V = GF(p)^d.

Elements are pairs (g, v) with product (g1, v1)(g2, v2) = (g1 g2, v1 g2 + v2),
encoded as the integer ``g * p**d + v`` where g is an element index of
``G.perm_image`` and v a vector index. The encoding is shared by every affine
group over the same G, so elements of a smaller affine group can be
conjugated by elements of a larger one directly.

Classes come from one of two routes:

* structured, when gcd(|H|, p) = 1: classes over an H-class with
  representative m correspond to C_H(m)-orbits on C_W(m);
* brute force, through the permutation action v' -> v' g + v on V.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from classbound.config import get_config
from classbound.core.classes import centralizer, conjugacy_classes
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.core.orbits import orbit_labels, orbit_partition
from classbound.core.permutation import Permutation
from classbound.errors import CapExceeded, ClassMismatch, NotInvariant
from classbound.gfmod.linalg import (
    all_vectors,
    basis_indices,
    echelon_basis,
    identity_matrix,
    mat_mul,
    nullspace,
    span_indices,
    vector_index,
)
from classbound.gfmod.matrix_group import MatrixGroup

logger = logging.getLogger(__name__)


def brute_limit(degree: int) -> int:
    """Largest group handled by brute force on ``degree`` points within the table budget."""
    cfg = get_config()
    return min(cfg.brute_cap, max(1, cfg.structured_limit // degree))


class AffineGroup:
    """H ⋉ W inside G ⋉ V.

    Attributes:
        G: The ambient matrix group.
        linear: The linear part H, a subgroup of ``G.perm_image``.
        basis: Reduced echelon basis of W.
        W: Sorted vector indices of W.
        name: Label used in logs and reports.
    """

    def __init__(
        self,
        G: MatrixGroup,
        linear: Optional[Subgroup] = None,
        subspace: Optional[np.ndarray] = None,
        name: str = "",
    ):
        self.G = G
        self.linear = G.whole if linear is None else linear
        self.p, self.d = G.p, G.d
        self.q = self.p ** self.d
        source = identity_matrix(self.d) if subspace is None else subspace
        self.basis, self.pivots = echelon_basis(source, self.p, self.d)
        self.W = span_indices(self.basis, self.p, self.d)
        self.name = name or f"{self.linear.name}⋉GF({self.p})^{len(self.pivots)}"
        self._check_invariant()

    def __repr__(self) -> str:
        return f"AffineGroup({self.name!r}, order={self.order})"

    def _check_invariant(self) -> None:
        rows = self.G.perm_image.elements
        for s in self.linear.gens:
            images = np.sort(rows[s, self.W].astype(np.int64))
            if not np.array_equal(images, self.W):
                error_msg = f"Subspace of {self.name} is not invariant under {self.linear.name}"
                logger.error(error_msg)
                raise NotInvariant(error_msg)

    # ------------------------------------------------------------------ arithmetic

    @property
    def order(self) -> int:
        return self.linear.order * len(self.W)

    @property
    def module_size(self) -> int:
        return len(self.W)

    def is_coprime(self) -> bool:
        return self.linear.order % self.p != 0

    def encode(self, g, v=0) -> np.ndarray:
        return np.asarray(g, dtype=np.int64) * self.q + np.asarray(v, dtype=np.int64)

    def decode(self, e) -> Tuple[np.ndarray, np.ndarray]:
        return np.divmod(np.asarray(e, dtype=np.int64), self.q)

    def _vectors(self, v) -> np.ndarray:
        return all_vectors(self.p, self.d)[np.asarray(v, dtype=np.int64)]

    def add(self, v, w) -> np.ndarray:
        return vector_index(self._vectors(v) + self._vectors(w), self.p)

    def act(self, v, g) -> np.ndarray:
        """Vector indices of v g."""
        rows = self.G.perm_image.elements
        v, g = np.broadcast_arrays(np.asarray(v, dtype=np.int64), np.asarray(g, dtype=np.int64))
        return rows[g, v].astype(np.int64)

    def mul(self, a, b) -> np.ndarray:
        g1, v1 = self.decode(a)
        g2, v2 = self.decode(b)
        return self.encode(self.G.perm_image.mul(g1, g2), self.add(self.act(v1, g2), v2))

    def inv(self, a) -> np.ndarray:
        g, v = self.decode(a)
        gi = self.G.perm_image.inv(g)
        return self.encode(gi, vector_index(-self._vectors(self.act(v, gi)), self.p))

    def conj(self, a, s) -> np.ndarray:
        """a ** s = s^-1 a s."""
        return self.mul(self.mul(self.inv(s), a), s)

    @property
    def identity(self) -> int:
        return int(self.encode(self.G.identity_index, 0))

    def contains(self, e) -> np.ndarray:
        g, v = self.decode(e)
        pos = np.minimum(np.searchsorted(self.W, v), len(self.W) - 1)
        return self.linear.contains(g) & (self.W[pos] == v)

    @cached_property
    def generators(self) -> np.ndarray:
        translations = vector_index(self.basis, self.p) if len(self.basis) else np.empty(0, dtype=np.int64)
        return np.concatenate([
            self.encode(self.linear.gens, 0),
            self.encode(np.full(len(translations), self.G.identity_index), translations),
        ])

    @cached_property
    def members(self) -> np.ndarray:
        return (self.linear.members[:, None] * self.q + self.W[None, :]).ravel()

    def normalized_by(self, s) -> bool:
        return bool(self.contains(self.conj(self.generators, s)).all())

    # ------------------------------------------------------------------ permutation action

    def permutation_rows(self, e) -> np.ndarray:
        """Permutation of V induced by each element: x -> x g + v."""
        g, v = self.decode(np.atleast_1d(e))
        rows = self.G.perm_image.elements[g].astype(np.int64)
        return vector_index(all_vectors(self.p, self.d)[rows] + self._vectors(v)[:, None, :], self.p)

    @property
    def permutation_base(self) -> Tuple[int, ...]:
        return (0,) + basis_indices(self.p, self.d)

    def as_permutation_group(self, extra: Iterable[int] = (), cap: Optional[int] = None) -> FiniteGroup:
        """The group generated by this group and ``extra`` acting on the p^d vectors."""
        gens = np.concatenate([self.generators, np.asarray(list(extra), dtype=np.int64)])
        perms = [Permutation.from_array(row) for row in self.permutation_rows(gens)] if len(gens) else []
        cap = cap if cap is not None else brute_limit(self.q)
        return FiniteGroup(self.q, perms, name=f"perm({self.name})", base=self.permutation_base, cap=cap)

    def permutation_indices(self, group: FiniteGroup, e) -> np.ndarray:
        """Indices in ``group`` (built by :meth:`as_permutation_group`) of encoded elements."""
        g, v = self.decode(np.atleast_1d(e))
        images = self.add(self.act(np.asarray(basis_indices(self.p, self.d))[None, :], g[:, None]), v[:, None])
        return group.index_from_base(np.concatenate([v[:, None], images], axis=1))

    def from_permutation_rows(self, rows: np.ndarray) -> np.ndarray:
        """Encodings of permutation rows of affine maps."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        v = rows[:, 0]
        images = rows[:, list(basis_indices(self.p, self.d))]
        linear = self._vectors(images) - self._vectors(v)[:, None, :]
        g = self.G.perm_image.index_from_base(vector_index(linear, self.p))
        return self.encode(g, v)


@dataclass
class _LinearClass:
    """Structured data over one class of the linear part."""
    rep: int
    size: int
    offset: int
    fixed: np.ndarray
    labels: np.ndarray
    orbit_reps: np.ndarray
    orbit_sizes: np.ndarray
    projection: np.ndarray


@dataclass(eq=False)
class AffineClassSet:
    """Conjugacy classes of an affine group.

    Attributes:
        group: The affine group.
        representatives: Encoded class representatives.
        sizes: Class sizes.
        method: ``structured`` or ``brute``.
    """
    group: AffineGroup
    representatives: np.ndarray
    sizes: np.ndarray
    method: str
    linear_classes: Optional[List[_LinearClass]] = None
    perm_group: Optional[FiniteGroup] = None

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def k(self) -> int:
        return len(self.representatives)

    @cached_property
    def _keys(self) -> Tuple[np.ndarray, np.ndarray]:
        q = self.group.q
        keys = np.concatenate([i * q + lc.fixed for i, lc in enumerate(self.linear_classes)])
        ids = np.concatenate([lc.offset + lc.labels for lc in self.linear_classes])
        order = np.argsort(keys)
        return keys[order], ids[order]

    @cached_property
    def _projections(self) -> np.ndarray:
        return np.stack([lc.projection for lc in self.linear_classes])

    def class_of(self, e) -> np.ndarray:
        """Class numbers of encoded elements of the group."""
        GV = self.group
        e = np.atleast_1d(np.asarray(e, dtype=np.int64))
        if self.method == "brute":
            idx = GV.permutation_indices(self.perm_group, e)
            return conjugacy_classes(self.perm_group).class_of(idx)
        parent = GV.G.perm_image
        g, v = GV.decode(e)
        linear_classes = conjugacy_classes(GV.linear)
        c = linear_classes.class_of(g)
        t = linear_classes.conjugators[GV.linear.position(g)]
        moved = GV.act(v, parent.inv(t))
        vecs = GV._vectors(moved)
        projected = vector_index(np.einsum("nd,nde->ne", vecs, self._projections[c]) % GV.p, GV.p)
        keys, ids = self._keys
        pos = np.searchsorted(keys, c * GV.q + projected)
        return ids[pos]


def _projection_onto_fixed(A: np.ndarray, order: int, p: int) -> np.ndarray:
    """(1/o) * sum of A^k over k < o, the projection V -> C_V(A) along [V, A]."""
    d = A.shape[0]
    total = np.zeros((d, d), dtype=np.int64)
    power = identity_matrix(d)
    for _ in range(order):
        total = (total + power) % p
        power = mat_mul(power, A, p)
    return (total * pow(order, -1, p)) % p


def _structured_classes(GV: AffineGroup) -> AffineClassSet:
    G = GV.G
    parent = G.perm_image
    rows = parent.elements
    classes = conjugacy_classes(GV.linear)
    data: List[_LinearClass] = []
    reps: List[np.ndarray] = []
    sizes: List[np.ndarray] = []
    offset = 0
    for m, csize in zip(classes.representatives, classes.sizes):
        m = int(m)
        fixed = GV.W[rows[m, GV.W] == GV.W]
        C = centralizer(GV.linear, m)
        maps = [np.searchsorted(fixed, rows[s, fixed]) for s in C.gens]
        orbit_reps, labels, orbit_sizes = orbit_partition(orbit_labels(len(fixed), maps))
        projection = _projection_onto_fixed(G.matrices[m], int(parent.element_orders[m]), GV.p)
        data.append(_LinearClass(m, int(csize), offset, fixed, labels, fixed[orbit_reps], orbit_sizes, projection))
        reps.append(GV.encode(m, fixed[orbit_reps]))
        sizes.append(int(csize) * orbit_sizes * (len(GV.W) // len(fixed)))
        offset += len(orbit_reps)
    logger.debug(f"{GV.name}: {offset} classes over {classes.k} linear classes")
    return AffineClassSet(GV, np.concatenate(reps), np.concatenate(sizes), "structured", linear_classes=data)


def _brute_classes(GV: AffineGroup) -> AffineClassSet:
    perm_group = GV.as_permutation_group()
    classes = conjugacy_classes(perm_group)
    reps = GV.from_permutation_rows(perm_group.elements[classes.representatives])
    return AffineClassSet(GV, reps, classes.sizes.copy(), "brute", perm_group=perm_group)


def affine_semidirect(G: MatrixGroup, linear: Optional[Subgroup] = None, subspace=None, name: str = "") -> AffineGroup:
    return AffineGroup(G, linear, subspace, name=name)


def affine_classes(GV: AffineGroup, method: str = "auto") -> AffineClassSet:
    """Conjugacy classes of GV (cached on the group for ``auto``).

    Raises:
        CapExceeded: If brute force is required and |GV| is above the brute-force cap.
    """
    if method == "auto":
        cached = getattr(GV, "_classes", None)
        if cached is not None:
            return cached
        method = "structured" if GV.is_coprime() else "brute"
        result = affine_classes(GV, method)
        GV._classes = result
        return result
    if method == "structured":
        if not GV.is_coprime():
            error_msg = f"Structured classes need gcd(|H|, p) = 1 for {GV.name}"
            logger.error(error_msg)
            raise ValueError(error_msg)
        return _structured_classes(GV)
    if method == "brute":
        cap = brute_limit(GV.q)
        if GV.order > cap:
            error_msg = f"{GV.name} has order {GV.order}, above the brute-force cap {cap}"
            logger.error(error_msg)
            raise CapExceeded(error_msg)
        return _brute_classes(GV)
    raise ValueError(f"Unknown class method {method!r}")


def affine_class_count(GV: AffineGroup) -> int:
    return affine_classes(GV).k


def class_identify(GV: AffineGroup, e) -> np.ndarray:
    return affine_classes(GV).class_of(e)


def cross_check_classes(GV: AffineGroup) -> int:
    """Compare the structured and brute-force partitions element by element.

    Returns:
        The common class count.

    Raises:
        ClassMismatch: If the two partitions differ.
    """
    structured = affine_classes(GV, "structured")
    brute = affine_classes(GV, "brute")
    if structured.k != brute.k or sorted(structured.sizes.tolist()) != sorted(brute.sizes.tolist()):
        error_msg = f"{GV.name}: structured gives {structured.k} classes, brute force {brute.k}"
        logger.error(error_msg)
        raise ClassMismatch(error_msg)
    members = GV.members
    ids_s = structured.class_of(members)
    ids_b = brute.class_of(members)
    pairs = np.unique(ids_s * brute.k + ids_b)
    if len(pairs) != structured.k:
        error_msg = f"{GV.name}: structured and brute-force partitions differ"
        logger.error(error_msg)
        raise ClassMismatch(error_msg)
    logger.info(f"{GV.name}: {structured.k} classes, structured and brute force agree")
    return structured.k


def fixed_classes_affine(NV: AffineGroup, g) -> int:
    """Number of classes of NV fixed by conjugation with the encoded element g.

    Raises:
        NotInvariant: If g does not normalize NV.
    """
    g = int(g)
    if not NV.normalized_by(g):
        error_msg = f"Element {NV.decode(g)} does not normalize {NV.name}"
        logger.error(error_msg)
        raise NotInvariant(error_msg)
    classes = affine_classes(NV)
    images = NV.conj(classes.representatives, g)
    fixed = classes.class_of(images) == np.arange(classes.k)
    count = int(np.count_nonzero(fixed))
    logger.debug(f"{NV.name}: {count} of {classes.k} classes fixed")
    return count


def vector_stabilizer(G: MatrixGroup, H: Subgroup, v: int, name: str = "") -> Subgroup:
    rows = G.perm_image.elements
    return Subgroup(G.perm_image, H.members[rows[H.members, int(v)] == int(v)], name=name or f"C({H.name},v{v})")


@dataclass(frozen=True)
class DualCharacter:
    """The character v -> zeta^(v . c) of V, stored as the covector c."""
    covector: Tuple[int, ...]
    p: int

    def value(self, v: Sequence[int]) -> int:
        """Exponent of zeta at v."""
        return int(np.dot(np.asarray(v, dtype=np.int64), np.asarray(self.covector, dtype=np.int64)) % self.p)

    def stabilizer(self, G: MatrixGroup, H: Optional[Subgroup] = None, name: str = "") -> Subgroup:
        """C_H(lambda): the g with A c = c, equivalently lambda(v g) = lambda(v)."""
        H = G.whole if H is None else H
        c = np.asarray(self.covector, dtype=np.int64)
        images = np.einsum("nij,j->ni", G.matrices[H.members], c) % self.p
        keep = np.all(images == c[None, :], axis=1)
        return Subgroup(G.perm_image, H.members[keep], name=name or f"C({H.name},λ)")


@dataclass
class DualOrbits:
    """Orbits of a matrix group on a G-invariant set of covectors."""
    characters: List[DualCharacter]
    sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.characters)


def dual_orbits(G: MatrixGroup, H: Optional[Subgroup] = None, annihilates: Optional[np.ndarray] = None) -> DualOrbits:
    """Orbits of H on Irr(V) under lambda^g(v) = lambda(v g^-1).

    With ``annihilates`` (a basis of a complement V2), only covectors vanishing on
    V2 are used; these are the characters of V/V2.
    """
    H = G.whole if H is None else H
    p, d = G.p, G.d
    if annihilates is not None and len(annihilates):
        domain = span_indices(nullspace(np.asarray(annihilates, dtype=np.int64).T, p), p, d)
    else:
        domain = np.arange(p ** d, dtype=np.int64)
    maps = [np.searchsorted(domain, m[domain]) for m in G.dual_maps(H)]
    reps, _, sizes = orbit_partition(orbit_labels(len(domain), maps))
    vectors = all_vectors(p, d)[domain[reps]]
    return DualOrbits([DualCharacter(tuple(int(x) for x in row), p) for row in vectors], sizes)
