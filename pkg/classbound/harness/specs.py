"""
Group specifications.

A spec is a small JSON-serializable description of a permutation or matrix
group; ``build()`` turns it into a :class:`FiniteGroup` or :class:`MatrixGroup`.
"""

import logging
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from classbound.core.constructions import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    frobenius_group,
    quaternion_group,
    symmetric_group,
    wreath_product,
)
from classbound.core.finite_group import FiniteGroup
from classbound.core.permutation import parse_generators
from classbound.core.subgroups import all_subgroups
from classbound.gfmod.blocks import MIXINGS, induced_block_group
from classbound.gfmod.complement import five_complement_gl25
from classbound.gfmod.matrix_group import MatrixGroup, general_linear_group, matrix_group

logger = logging.getLogger(__name__)

FAMILIES = ("symmetric", "alternating", "cyclic", "dihedral", "quaternion", "frobenius")


class PermSpec(BaseModel):
    """Generators in cycle notation on ``{0, ..., degree-1}``."""
    kind: Literal["perm"] = "perm"
    degree: int
    generators: List[str] = Field(default_factory=list)
    name: str = ""

    def build(self) -> FiniteGroup:
        G = FiniteGroup(self.degree, parse_generators(self.generators, self.degree), name=self.name)
        G.enumerate_elements()
        return G


class NamedSpec(BaseModel):
    """A standard family, e.g. ``{"family": "frobenius", "args": [3, 7]}``."""
    kind: Literal["named"] = "named"
    family: str
    args: List[int] = Field(default_factory=list)

    @field_validator("family")
    @classmethod
    def _known_family(cls, v: str) -> str:
        if v not in FAMILIES:
            raise ValueError(f"Unknown family {v!r}; expected one of {FAMILIES}")
        return v

    def build(self) -> FiniteGroup:
        builders = {
            "symmetric": symmetric_group,
            "alternating": alternating_group,
            "cyclic": cyclic_group,
            "dihedral": dihedral_group,
            "quaternion": quaternion_group,
            "frobenius": frobenius_group,
        }
        G = builders[self.family](*self.args)
        G.enumerate_elements()
        return G


PermLike = Annotated[Union[PermSpec, NamedSpec], Field(discriminator="kind")]


class WreathSpec(BaseModel):
    """``base wr top`` in its imprimitive action."""
    kind: Literal["wreath"] = "wreath"
    base: PermLike
    top: PermLike

    def build(self) -> FiniteGroup:
        G = wreath_product(self.base.build(), self.top.build())
        G.enumerate_elements()
        return G


class MatrixSpec(BaseModel):
    """Generators over GF(p), each given row-major (flat or nested)."""
    kind: Literal["matrix-gfp"] = "matrix-gfp"
    p: int
    dim: int
    generators: List[List] = Field(default_factory=list)
    name: str = ""

    def build(self) -> MatrixGroup:
        return matrix_group(self.p, self.dim, self.generators, name=self.name)


class GLSpec(BaseModel):
    kind: Literal["general-linear"] = "general-linear"
    p: int
    dim: int

    def build(self) -> MatrixGroup:
        return general_linear_group(self.dim, self.p)


class ComplementSpec(BaseModel):
    """The order-96 5-complement of GL(2,5), or its first subgroup of a given order."""
    kind: Literal["five-complement"] = "five-complement"
    seed: Optional[int] = None
    subgroup_order: Optional[int] = None

    def build(self) -> MatrixGroup:
        L = five_complement_gl25(self.seed)
        if self.subgroup_order is None or self.subgroup_order == L.order:
            return L
        for S in all_subgroups(L.whole):
            if S.order == self.subgroup_order:
                return L.subgroup(S, name=f"L{self.subgroup_order}")
        error_msg = f"L has no subgroup of order {self.subgroup_order}"
        logger.error(error_msg)
        raise ValueError(error_msg)


MatrixLikeSpec = Annotated[Union[MatrixSpec, GLSpec, ComplementSpec], Field(discriminator="kind")]


class InducedSpec(BaseModel):
    """A block group inside ``base wr top`` acting on GF(p)^(n d)."""
    kind: Literal["induced"] = "induced"
    base: MatrixLikeSpec
    top: PermLike
    mixing: str = "full"
    seed: Optional[int] = None

    @field_validator("mixing")
    @classmethod
    def _known_mixing(cls, v: str) -> str:
        if v not in MIXINGS:
            raise ValueError(f"Unknown mixing {v!r}; expected one of {MIXINGS}")
        return v

    def build(self) -> MatrixGroup:
        return induced_block_group(self.base.build(), self.top.build(), self.mixing, self.seed)


GroupSpec = Annotated[
    Union[PermSpec, NamedSpec, WreathSpec, MatrixSpec, GLSpec, ComplementSpec, InducedSpec],
    Field(discriminator="kind"),
]

PERMUTATION_KINDS = ("perm", "named", "wreath")
