"""
Finite permutation groups with cached full enumeration.

Elements are stored once, as rows of an ``(order x degree)`` numpy array
sorted lexicographically by image sequence, and every later operation works
on row indices. Products only need the images of a base (a point set whose
images determine the element), so multiplying two elements costs
``O(len(base))`` rather than ``O(degree)``.
"""

import logging
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from classbound.config import get_config
from classbound.core.permutation import Permutation
from classbound.errors import CapExceeded, ElementNotInGroup

logger = logging.getLogger(__name__)

_HASH_SEEDS = (20240607, 31337, 4242)
_CHUNK = 1 << 22


class _HashCollision(Exception):
    pass


def _row_dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


def _zobrist(width: int, degree: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, np.iinfo(np.uint64).max, size=(width, degree), dtype=np.uint64, endpoint=True)


def _hash(cols: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Zobrist hash of each row of ``cols`` (shape ``(m, width)``)."""
    m, width = cols.shape
    out = np.empty(m, dtype=np.uint64)
    step = max(1, _CHUNK // max(width, 1))
    pos = np.arange(width)[None, :]
    for start in range(0, m, step):
        block = cols[start:start + step].astype(np.int64)
        out[start:start + step] = table[pos, block].sum(axis=1, dtype=np.uint64)
    return out


class FiniteGroup:
    """A permutation group given by generators.

    Attributes:
        degree: Number of points acted on.
        generators: Generating permutations.
        name: Label used in logs and reports.
        blocks: Optional imprimitivity blocks (tuples of points), set by
            constructions such as wreath products.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Union[Permutation, Sequence[int]]],
        name: str = "",
        base: Optional[Sequence[int]] = None,
        cap: Optional[int] = None,
        blocks: Optional[List[Tuple[int, ...]]] = None,
    ):
        self.degree = int(degree)
        gens = []
        for g in generators:
            perm = g if isinstance(g, Permutation) else Permutation.from_array(g)
            if perm.degree != self.degree:
                error_msg = f"Generator {perm} has degree {perm.degree}, expected {self.degree}"
                logger.error(error_msg)
                raise ValueError(error_msg)
            gens.append(perm)
        self.generators: Tuple[Permutation, ...] = tuple(gens)
        self.name = name or f"G<{len(gens)} gens on {self.degree}>"
        self.blocks = blocks
        self._base = tuple(int(b) for b in base) if base is not None else None
        self._cap = cap
        self._rows: Optional[np.ndarray] = None
        self._keys: Optional[np.ndarray] = None
        self._key_order: Optional[np.ndarray] = None
        self._table: Optional[np.ndarray] = None

    @classmethod
    def from_elements(
        cls,
        rows: np.ndarray,
        generators: Iterable[Permutation],
        name: str = "",
        base: Optional[Sequence[int]] = None,
        blocks: Optional[List[Tuple[int, ...]]] = None,
    ) -> "FiniteGroup":
        """Wrap an already enumerated, lexicographically sorted element table."""
        group = cls(rows.shape[1], generators, name=name, base=base, blocks=blocks)
        group._rows = np.ascontiguousarray(rows, dtype=_row_dtype(rows.shape[1]))
        group._finish()
        return group

    def __repr__(self) -> str:
        state = f"order={len(self._rows)}" if self._rows is not None else "not enumerated"
        return f"FiniteGroup({self.name!r}, degree={self.degree}, {state})"

    # ------------------------------------------------------------------ enumeration

    def enumerate_elements(self) -> np.ndarray:
        """Enumerate the closure of the generators (cached).

        Raises:
            CapExceeded: If the closure grows past the configured cap.
        """
        if self._rows is not None:
            return self._rows
        cap = self._cap if self._cap is not None else get_config().cap
        cols = np.asarray(self._base if self._base is not None else range(self.degree), dtype=np.int64)
        for seed in _HASH_SEEDS:
            table = _zobrist(len(cols), self.degree, seed)
            try:
                rows = self._breadth_first(cols, table, cap)
                break
            except _HashCollision:
                logger.warning(f"Hash collision while enumerating {self.name}, retrying")
        else:
            raise RuntimeError(f"Could not enumerate {self.name}: repeated hash collisions")
        order = np.lexsort(rows.T[::-1])
        self._rows = np.ascontiguousarray(rows[order])
        self._finish()
        logger.info(f"Enumerated {self.name}: order {len(self._rows)}")
        return self._rows

    def _breadth_first(self, cols: np.ndarray, table: np.ndarray, cap: int) -> np.ndarray:
        dtype = _row_dtype(self.degree)
        identity = np.arange(self.degree, dtype=dtype)
        gens = [g.as_array().astype(dtype) for g in self.generators if not g.is_identity()]
        chunks = [identity[None, :]]
        seen_keys = _hash(identity[None, cols], table)
        seen_cols = identity[None, cols].copy()
        seen_ptr = np.zeros(1, dtype=np.int64)
        frontier = identity[None, :]
        total = 1
        while frontier.shape[0] and gens:
            cand = np.concatenate([g[frontier] for g in gens])
            keys = _hash(cand[:, cols], table)
            keys, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
            if not np.array_equal(cand[first[inverse]][:, cols], cand[:, cols]):
                raise _HashCollision()
            cand = cand[first]
            pos = np.minimum(np.searchsorted(seen_keys, keys), len(seen_keys) - 1)
            found = seen_keys[pos] == keys
            if found.any():
                stored = seen_cols[seen_ptr[pos[found]]]
                if not np.array_equal(stored, cand[found][:, cols]):
                    raise _HashCollision()
            new = cand[~found]
            total += new.shape[0]
            if total > cap:
                error_msg = f"Enumeration of {self.name} exceeded the cap of {cap} elements"
                logger.error(error_msg)
                raise CapExceeded(error_msg)
            if new.shape[0] == 0:
                break
            new_keys = keys[~found]
            ptr = np.arange(len(seen_cols), len(seen_cols) + new.shape[0], dtype=np.int64)
            seen_cols = np.concatenate([seen_cols, new[:, cols]])
            merged = np.concatenate([seen_keys, new_keys])
            merged_ptr = np.concatenate([seen_ptr, ptr])
            srt = np.argsort(merged, kind="mergesort")
            seen_keys, seen_ptr = merged[srt], merged_ptr[srt]
            chunks.append(new)
            frontier = new
            logger.debug(f"{self.name}: {total} elements so far")
        return np.concatenate(chunks)

    def _finish(self) -> None:
        rows = self._rows
        if self._base is None:
            self._base = self._greedy_base(rows)
        base = np.asarray(self._base, dtype=np.int64)
        for seed in _HASH_SEEDS:
            table = _zobrist(len(base), self.degree, seed)
            keys = _hash(rows[:, base], table)
            order = np.argsort(keys, kind="mergesort")
            if np.all(np.diff(keys[order].astype(np.uint64)) != 0) or len(keys) < 2:
                self._table, self._keys, self._key_order = table, keys[order], order
                break
        else:
            raise RuntimeError(f"Could not index {self.name}: repeated hash collisions")
        self._base_arr = base
        self._identity = int(self._lookup(np.arange(self.degree)[None, base])[0])

    def _greedy_base(self, rows: np.ndarray) -> Tuple[int, ...]:
        n = rows.shape[0]
        if n == 1:
            return (0,) if self.degree else ()
        table = _zobrist(self.degree, self.degree, _HASH_SEEDS[0])
        acc = np.zeros(n, dtype=np.uint64)
        base: List[int] = []
        distinct = 1
        for point in range(self.degree):
            trial = acc + table[point, rows[:, point].astype(np.int64)]
            count = len(np.unique(trial))
            if count > distinct:
                base.append(point)
                acc, distinct = trial, count
                if distinct == n:
                    break
        if distinct < n:
            base = list(range(self.degree))
        return tuple(base)

    # ------------------------------------------------------------------ basic accessors

    @property
    def elements(self) -> np.ndarray:
        return self.enumerate_elements()

    @property
    def order(self) -> int:
        return int(self.enumerate_elements().shape[0])

    @property
    def base(self) -> Tuple[int, ...]:
        self.enumerate_elements()
        return self._base

    @property
    def identity_index(self) -> int:
        self.enumerate_elements()
        return self._identity

    def element(self, index: int) -> Permutation:
        return Permutation.from_array(self.elements[int(index)])

    def _lookup(self, base_images: np.ndarray) -> np.ndarray:
        """Element indices for rows of base images, ``-1`` where absent."""
        base_images = np.asarray(base_images, dtype=np.int64)
        shape = base_images.shape[:-1]
        flat = base_images.reshape(-1, len(self._base_arr))
        keys = _hash(flat, self._table)
        pos = np.minimum(np.searchsorted(self._keys, keys), len(self._keys) - 1)
        idx = self._key_order[pos]
        ok = (self._keys[pos] == keys) & np.all(self._rows[idx][:, self._base_arr] == flat, axis=1)
        return np.where(ok, idx, -1).reshape(shape)

    def index_from_base(self, base_images) -> np.ndarray:
        """Element indices from the images of the base points, ``-1`` where absent."""
        self.enumerate_elements()
        return self._lookup(base_images)

    def index_many(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of full permutation rows, ``-1`` for non-members."""
        self.enumerate_elements()
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        idx = self._lookup(rows[:, self._base_arr])
        hit = idx >= 0
        exact = np.zeros(len(idx), dtype=bool)
        exact[hit] = np.all(self._rows[idx[hit]] == rows[hit], axis=1)
        return np.where(exact, idx, -1)

    def index_of(self, perm: Union[Permutation, Sequence[int]]) -> int:
        """Index of a permutation in the element table.

        Raises:
            ElementNotInGroup: If ``perm`` is not a member.
        """
        row = perm.as_array() if isinstance(perm, Permutation) else np.asarray(perm)
        if len(row) != self.degree:
            raise ElementNotInGroup(f"Degree mismatch for {self.name}")
        idx = int(self.index_many(row[None, :])[0])
        if idx < 0:
            error_msg = f"{Permutation.from_array(row)} is not an element of {self.name}"
            logger.error(error_msg)
            raise ElementNotInGroup(error_msg)
        return idx

    def contains(self, perm: Union[Permutation, Sequence[int]]) -> bool:
        row = perm.as_array() if isinstance(perm, Permutation) else np.asarray(perm)
        return len(row) == self.degree and int(self.index_many(row[None, :])[0]) >= 0

    # ------------------------------------------------------------------ index arithmetic

    def mul(self, a, b) -> np.ndarray:
        """Indices of ``a * b`` (apply ``a`` then ``b``), broadcasting over arrays."""
        rows = self.enumerate_elements()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        images = rows[b[..., None], rows[a[..., None], self._base_arr]]
        return self._lookup(images)

    @cached_property
    def inverses(self) -> np.ndarray:
        rows = self.enumerate_elements()
        images = np.stack([np.argmax(rows == b, axis=1) for b in self._base_arr], axis=-1)
        return self._lookup(images)

    def inv(self, a) -> np.ndarray:
        return self.inverses[np.asarray(a, dtype=np.int64)]

    def conj(self, a, s) -> np.ndarray:
        """Indices of ``a ** s = s^-1 * a * s``."""
        return self.mul(self.mul(self.inv(s), a), s)

    def power(self, a, exponent: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result = np.full(a.shape, self.identity_index, dtype=np.int64)
        for _ in range(exponent):
            result = self.mul(result, a)
        return result

    @cached_property
    def generator_indices(self) -> np.ndarray:
        return np.asarray([self.index_of(g) for g in self.generators], dtype=np.int64)

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Order of every element, by repeated multiplication."""
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        current = np.arange(n, dtype=np.int64)
        pending = current != self.identity_index
        step = 1
        while pending.any():
            step += 1
            idx = np.nonzero(pending)[0]
            current[idx] = self.mul(current[idx], idx)
            done = current[idx] == self.identity_index
            orders[idx[done]] = step
            pending[idx[done]] = False
        return orders

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order), self.generator_indices, name=self.name)

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by element indices ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        seen = np.asarray([self.identity_index], dtype=np.int64)
        gens = gens[gens != self.identity_index]
        frontier = seen
        while frontier.size and gens.size:
            cand = np.unique(self.mul(frontier[:, None], gens[None, :]).ravel())
            new = np.setdiff1d(cand, seen, assume_unique=True)
            seen = np.union1d(seen, new)
            frontier = new
        return seen

    def subgroup(self, gens: Iterable[Union[int, Permutation]], name: str = "") -> "Subgroup":
        idx = [g if isinstance(g, (int, np.integer)) else self.index_of(g) for g in gens]
        idx = np.asarray(idx, dtype=np.int64)
        return Subgroup(self, self.closure(idx), idx, name=name)

    def trivial_subgroup(self) -> "Subgroup":
        ident = np.asarray([self.identity_index], dtype=np.int64)
        return Subgroup(self, ident, np.empty(0, dtype=np.int64), name="1")


class Subgroup:
    """A subgroup of an enumerated parent, stored as sorted parent indices.

    Attributes:
        parent: The group whose element table the indices refer to.
        members: Sorted element indices.
        name: Label used in reports.
    """

    def __init__(
        self,
        parent: FiniteGroup,
        members: Iterable[int],
        generators: Optional[Iterable[int]] = None,
        name: str = "",
    ):
        self.parent = parent
        self.members = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray) else members, dtype=np.int64))
        self._gens = None if generators is None else np.asarray(list(generators), dtype=np.int64)
        self.name = name or f"<{len(self.members)} in {parent.name}>"

    def __repr__(self) -> str:
        return f"Subgroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return int(len(self.members))

    def key(self) -> bytes:
        return self.members.tobytes()

    def contains(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.members, idx), len(self.members) - 1)
        return self.members[pos] == idx

    def position(self, idx) -> np.ndarray:
        """Position of parent indices within ``members`` (``-1`` if absent)."""
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.members, idx), len(self.members) - 1)
        return np.where(self.members[pos] == idx, pos, -1)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and bool(np.all(other.contains(self.members)))

    @property
    def gens(self) -> np.ndarray:
        """A generating set, computed greedily when none was supplied."""
        if self._gens is None:
            self._gens = self._greedy_generators()
        return self._gens

    def _greedy_generators(self) -> np.ndarray:
        orders = self.parent.element_orders[self.members]
        candidates = self.members[np.lexsort((self.members, -orders))]
        gens: List[int] = []
        current = np.asarray([self.parent.identity_index], dtype=np.int64)
        for x in candidates:
            if len(current) == self.order:
                break
            pos = np.searchsorted(current, x)
            if pos < len(current) and current[pos] == x:
                continue
            gens.append(int(x))
            current = self.parent.closure(gens)
        return np.asarray(gens, dtype=np.int64)

    def is_normalized_by(self, elements: Iterable[int]) -> bool:
        for s in np.asarray(list(elements), dtype=np.int64):
            if not self.contains(self.parent.conj(self.members, s)).all():
                return False
        return True

    def is_normal_in(self, other: "Subgroup") -> bool:
        if other.parent is self.parent and other.order == self.parent.order:
            return self.is_normal
        return self.is_subgroup_of(other) and self.is_normalized_by(other.gens)

    @cached_property
    def is_normal(self) -> bool:
        """Normal in the whole parent."""
        return self.is_normalized_by(self.parent.whole.gens)

    def intersection(self, other: "Subgroup", name: str = "") -> "Subgroup":
        return Subgroup(self.parent, np.intersect1d(self.members, other.members), name=name)

    def join(self, other: "Subgroup", name: str = "") -> "Subgroup":
        gens = np.concatenate([self.gens, other.gens])
        return Subgroup(self.parent, self.parent.closure(gens), gens, name=name)

    def as_group(self, name: str = "") -> FiniteGroup:
        """This subgroup as a standalone group on the same points."""
        gens = [self.parent.element(i) for i in self.gens]
        return FiniteGroup.from_elements(
            self.parent.elements[self.members], gens, name=name or self.name,
            base=self.parent.base, blocks=self.parent.blocks,
        )

    def element_orders(self) -> np.ndarray:
        return self.parent.element_orders[self.members]


GroupLike = Union[FiniteGroup, Subgroup]


def as_subgroup(group: GroupLike) -> Subgroup:
    return group.whole if isinstance(group, FiniteGroup) else group


def as_index(parent: FiniteGroup, g: Union[int, np.integer, Permutation, Sequence[int]]) -> int:
    if isinstance(g, (int, np.integer)):
        return int(g)
    return parent.index_of(g)
