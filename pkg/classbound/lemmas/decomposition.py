"""
Internal direct products M = M_1 x ... x M_l with an element g and N <= M.

This is the setting of the fixed-class product lemmas: g normalizes N and
either normalizes every factor or permutes the factors.
"""

import logging
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from classbound.core.classes import conjugacy_classes
from classbound.core.constructions import quotient_group
from classbound.core.finite_group import FiniteGroup, Subgroup, as_index
from classbound.errors import NotASubgroup, NotInvariant

logger = logging.getLogger(__name__)


class ProductDecomposition:
    """M = M_1 x ... x M_l inside ``ambient``, with g and a g-invariant N <= M.

    Attributes:
        ambient: Group containing every factor and g.
        factors: The subgroups M_i.
        g: Parent index of the acting element.
        N: Subgroup of M normalized by g.
        name: Instance descriptor.
    """

    def __init__(self, ambient: FiniteGroup, factors: Sequence[Subgroup], g, N: Subgroup, name: str = ""):
        self.ambient = ambient
        self.factors: List[Subgroup] = list(factors)
        self.g = as_index(ambient, g)
        self.N = N
        self.name = name or f"{'x'.join(f.name for f in self.factors)} with {N.name}"
        self._validate()

    def _validate(self) -> None:
        parent = self.ambient
        total = 1
        for i, A in enumerate(self.factors):
            if A.parent is not parent:
                raise NotASubgroup(f"Factor {A.name} lives in a different group")
            total *= A.order
            for B in self.factors[i + 1:]:
                commute = parent.mul(A.gens[:, None], B.gens[None, :]) == parent.mul(B.gens[None, :], A.gens[:, None])
                if not commute.all() or A.intersection(B).order != 1:
                    error_msg = f"Factors {A.name} and {B.name} do not form a direct product"
                    logger.error(error_msg)
                    raise NotASubgroup(error_msg)
        if self.M.order != total:
            error_msg = f"Product of factors has order {self.M.order}, expected {total}"
            logger.error(error_msg)
            raise NotASubgroup(error_msg)
        if not self.N.is_subgroup_of(self.M):
            raise NotASubgroup(f"{self.N.name} is not contained in the product of the factors")
        if not self.N.contains(parent.conj(self.N.members, self.g)).all():
            error_msg = f"g does not normalize {self.N.name}"
            logger.error(error_msg)
            raise NotInvariant(error_msg)

    @property
    def l(self) -> int:
        return len(self.factors)

    @cached_property
    def M(self) -> Subgroup:
        gens = np.concatenate([f.gens for f in self.factors]) if self.factors else np.empty(0, dtype=np.int64)
        return Subgroup(self.ambient, self.ambient.closure(gens), gens, name="M")

    @cached_property
    def G(self) -> Subgroup:
        """<M, g>."""
        gens = np.concatenate([self.M.gens, [self.g]])
        return Subgroup(self.ambient, self.ambient.closure(gens), gens, name="<M,g>")

    @property
    def m(self) -> int:
        return self.G.order // self.M.order

    @cached_property
    def _component_table(self) -> Tuple[np.ndarray, np.ndarray]:
        parent = self.ambient
        products = np.asarray([parent.identity_index], dtype=np.int64)
        comps = np.zeros((1, 0), dtype=np.int64)
        for A in self.factors:
            products = parent.mul(products[:, None], A.members[None, :]).ravel()
            comps = np.concatenate(
                [np.repeat(comps, A.order, axis=0), np.tile(A.members, len(comps))[:, None]], axis=1
            )
        order = np.argsort(products)
        return products[order], comps[order]

    def components(self, x) -> np.ndarray:
        """The unique (x_1, ..., x_l) with x = x_1 ... x_l, as parent indices."""
        products, comps = self._component_table
        x = np.asarray(x, dtype=np.int64)
        pos = np.searchsorted(products, x)
        if np.any(pos >= len(products)) or np.any(products[np.minimum(pos, len(products) - 1)] != x):
            raise NotASubgroup("Element outside the product of the factors")
        return comps[pos]

    @cached_property
    def factor_permutation(self) -> Optional[Tuple[int, ...]]:
        """sigma with M_i**g = M_sigma(i), or None if g does not permute the factors."""
        parent = self.ambient
        image = []
        for A in self.factors:
            conj = np.unique(parent.conj(A.members, self.g))
            target = [j for j, B in enumerate(self.factors) if np.array_equal(B.members, conj)]
            if not target:
                return None
            image.append(target[0])
        return tuple(image)

    def normalizes_factors(self) -> bool:
        sigma = self.factor_permutation
        return sigma is not None and all(i == j for i, j in enumerate(sigma))

    def is_transitive(self) -> bool:
        sigma = self.factor_permutation
        if sigma is None:
            return False
        seen, i = {0}, sigma[0]
        while i not in seen:
            seen.add(i)
            i = sigma[i]
        return len(seen) == self.l

    def grouped_by_orbits(self) -> "ProductDecomposition":
        """Merge factors along the orbits of <g>, so that g normalizes each new factor."""
        sigma = self.factor_permutation
        if sigma is None:
            raise NotInvariant("g does not permute the factors")
        seen, groups = set(), []
        for start in range(self.l):
            if start in seen:
                continue
            orbit, i = [], start
            while i not in seen:
                seen.add(i)
                orbit.append(i)
                i = sigma[i]
            groups.append(sorted(orbit))
        merged = []
        for orbit in groups:
            gens = np.concatenate([self.factors[i].gens for i in orbit])
            label = "x".join(self.factors[i].name for i in orbit)
            merged.append(Subgroup(self.ambient, self.ambient.closure(gens), gens, name=label))
        return ProductDecomposition(self.ambient, merged, self.g, self.N, name=self.name)

    # ---------------------------------------------------------------- derived subgroups

    def projection(self, i: int = 0) -> np.ndarray:
        """Sorted i-th components of the elements of N."""
        return np.unique(self.components(self.N.members)[:, i])

    @cached_property
    def L(self) -> Subgroup:
        """{y in M_1 : y a in N for some a in M_2 x ... x M_l}."""
        members = self.projection(0)
        return Subgroup(self.ambient, members, name="L")

    @cached_property
    def N0(self) -> Subgroup:
        return self.N.intersection(self.factors[0], name="N0")

    @cached_property
    def N1(self) -> Subgroup:
        """Product of the N cap M_i, i.e. N0 x N0**g x ... when g is transitive."""
        gens = np.concatenate([self.N.intersection(A).members for A in self.factors])
        return Subgroup(self.ambient, self.ambient.closure(gens), name="N1")

    @cached_property
    def J(self) -> FiniteGroup:
        quotient, _ = quotient_group(self.N, self.N1, name="J")
        return quotient

    def K(self, x_components: np.ndarray, i: int) -> np.ndarray:
        """K_i: i-th components of elements of N whose first i components are x_1..x_{i-1}."""
        comps = self.components(self.N.members)
        mask = np.all(comps[:, :i] == np.asarray(x_components[:i])[None, :], axis=1)
        return np.unique(comps[mask, i])

    def k(self, subgroup: Subgroup) -> int:
        return conjugacy_classes(subgroup).k
