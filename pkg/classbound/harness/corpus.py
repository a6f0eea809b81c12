"""
Instance corpus.

A :class:`CorpusItem` names a group spec plus the subgroups, element and
module data the lemmas need, the lemma ids to run on it and any expected
values. :class:`Instance` builds those objects lazily.
"""

import json
import logging
import math
from functools import cached_property
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from classbound.config import get_config
from classbound.core.constructions import frobenius_group
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.core.permutation import Permutation, parse_generators, shift
from classbound.errors import HypothesisFailed
from classbound.gfmod.blocks import ModuleDecomposition, mixed_subgroups
from classbound.gfmod.linalg import block_permutation_matrix
from classbound.gfmod.matrix_group import MatrixGroup
from classbound.gfmod.verifiers import resolve_element
from classbound.harness.specs import (
    ComplementSpec,
    GLSpec,
    GroupSpec,
    InducedSpec,
    MatrixSpec,
    NamedSpec,
    WreathSpec,
)
from classbound.lemmas.decomposition import ProductDecomposition

logger = logging.getLogger(__name__)


class Expected(BaseModel):
    """A pinned value and where it comes from."""
    value: Union[int, float]
    provenance: Literal["STATED", "DERIVED", "TRIVIAL"] = "DERIVED"


class CorpusItem(BaseModel):
    """One instance of the corpus.

    Attributes:
        name: Unique instance name.
        group: Spec of the ambient group (absent for purely numeric items).
        normal: Generators of N in cycle notation (permutation items).
        subgroup: Generators of H in cycle notation (permutation items).
        element: g, as a cycle string or a matrix; block items default to
            the block permutation of the first top generator.
        factors: Generators of each direct factor M_i (permutation items).
        V1, V2: Bases of a module splitting (matrix items).
        params: Lemma-specific parameters.
        lemmas: Lemma ids to run.
        expected: Expected quantities by name.
    """
    name: str
    group: Optional[GroupSpec] = None
    normal: Optional[List[str]] = None
    subgroup: Optional[List[str]] = None
    element: Optional[Union[str, List[List[int]]]] = None
    factors: Optional[List[List[str]]] = None
    V1: Optional[List[List[int]]] = None
    V2: Optional[List[List[int]]] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    lemmas: List[str] = Field(default_factory=list)
    expected: Dict[str, Expected] = Field(default_factory=dict)


class Instance:
    """Built objects of a corpus item, each computed on first use."""

    def __init__(self, item: CorpusItem):
        self.item = item
        self.name = item.name
        self.params = item.params

    def __repr__(self) -> str:
        return f"Instance({self.name!r})"

    def _missing(self, what: str) -> HypothesisFailed:
        error_msg = f"{self.name}: no {what} given"
        logger.error(error_msg)
        return HypothesisFailed(error_msg)

    @cached_property
    def group(self) -> Union[FiniteGroup, MatrixGroup]:
        if self.item.group is None:
            raise self._missing("group")
        return self.item.group.build()

    @property
    def is_matrix(self) -> bool:
        return isinstance(self.group, MatrixGroup)

    @property
    def parent(self) -> FiniteGroup:
        return self.group.perm_image if self.is_matrix else self.group

    @property
    def whole(self) -> Subgroup:
        return self.group.whole

    def _subgroup(self, cycles: Optional[List[str]], label: str) -> Subgroup:
        if cycles is None:
            raise self._missing(label)
        return self.parent.subgroup(parse_generators(cycles, self.parent.degree), name=label)

    @cached_property
    def N(self) -> Subgroup:
        if self.is_matrix and self.item.normal is None:
            return self.blocks.N
        return self._subgroup(self.item.normal, "N")

    @cached_property
    def H(self) -> Subgroup:
        return self._subgroup(self.item.subgroup, "H")

    @cached_property
    def g(self) -> int:
        element = self.item.element
        if self.is_matrix:
            if element is None:
                if not isinstance(self.item.group, InducedSpec):
                    raise self._missing("element")
                top = self.item.group.top.build()
                element = block_permutation_matrix(top.generators[0].images, self.blocks.block_dim)
            return resolve_element(self.group, element)
        if element is None:
            raise self._missing("element")
        return self.parent.index_of(Permutation.from_cycles(element, self.parent.degree))

    @cached_property
    def decomposition(self) -> ProductDecomposition:
        if self.item.factors is None:
            raise self._missing("factors")
        factors = [self._subgroup(f, f"M{i + 1}") for i, f in enumerate(self.item.factors)]
        return ProductDecomposition(self.parent, factors, self.g, self.N, name=self.name)

    @cached_property
    def blocks(self) -> ModuleDecomposition:
        return ModuleDecomposition(self.group, name=self.name)

    def subspaces(self):
        if self.item.V1 is None or self.item.V2 is None:
            raise self._missing("V1/V2")
        return self.item.V1, self.item.V2


def load_corpus(path: str) -> List[CorpusItem]:
    """Read a JSON file holding one corpus item or a list of them."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except IOError as e:
        logger.error(f"Error reading corpus file {path}: {e}")
        raise
    data = data if isinstance(data, list) else [data]
    return [CorpusItem.model_validate(entry) for entry in data]


# ---------------------------------------------------------------------- standard corpus


def _cycle(points) -> str:
    return "(" + " ".join(str(x) for x in points) + ")"


def _swap(d: int) -> str:
    return "".join(f"({a} {a + d})" for a in range(d))


def _permutation_items() -> List[CorpusItem]:
    items = []
    perm_lemmas = ["lemma-1.1", "lemma-b3", "index-bound", "maroti", "triple-oracle", "lemma-c1", "conjugation-invariance"]
    for n in range(3, 8):
        items.append(CorpusItem(
            name=f"S{n}",
            group=NamedSpec(family="symmetric", args=[n]),
            normal=[f"(0 1 {i})" for i in range(2, n)],
            subgroup=["(1 2)", _cycle(range(1, n))] if n > 3 else ["(1 2)"],
            element="(0 1)",
            lemmas=perm_lemmas + ["lemma-b1"],
            expected={"order": Expected(value=math.factorial(n), provenance="TRIVIAL")},
        ))
    for n in range(4, 8):
        items.append(CorpusItem(
            name=f"A{n}",
            group=NamedSpec(family="alternating", args=[n]),
            normal=["(0 1)(2 3)", "(0 2)(1 3)"] if n == 4 else [f"(0 1 {i})" for i in range(2, n)],
            element="(0 1 2)",
            lemmas=["lemma-1.1", "lemma-b3", "index-bound", "maroti", "triple-oracle", "conjugation-invariance"],
        ))
    for n in (4, 6, 8):
        items.append(CorpusItem(
            name=f"C{n}",
            group=NamedSpec(family="cyclic", args=[n]),
            normal=[_cycle(range(n))],
            element=_cycle(range(n)),
            lemmas=["maroti", "brauer-abelian", "triple-oracle"],
            expected={"k": Expected(value=n, provenance="TRIVIAL")},
        ))
    for n in (4, 5, 6):
        rotation = _cycle(range(n))
        reflection = "".join(f"({i} {n - i})" for i in range(1, (n + 1) // 2))
        items.append(CorpusItem(
            name=f"D{2 * n}",
            group=NamedSpec(family="dihedral", args=[n]),
            normal=[rotation],
            element=reflection,
            lemmas=perm_lemmas + ["brauer-abelian"],
        ))
    items.append(CorpusItem(
        name="Q8",
        group=NamedSpec(family="quaternion"),
        normal=["(0 1)(2 3)(4 5)(6 7)"],
        element="(0 2 1 3)(4 7 5 6)",
        lemmas=["lemma-1.1", "lemma-b3", "index-bound", "triple-oracle", "brauer-abelian", "conjugation-invariance"],
        expected={"k": Expected(value=5, provenance="TRIVIAL")},
    ))
    items.append(CorpusItem(
        name="s3wrc2",
        group=WreathSpec(base=NamedSpec(family="symmetric", args=[3]), top=NamedSpec(family="cyclic", args=[2])),
        normal=["(0 1)", "(0 1 2)", "(3 4)", "(3 4 5)"],
        subgroup=["(0 1)", "(0 1 2)", "(3 4)", "(3 4 5)"],
        element=_swap(3),
        lemmas=["lemma-1.1", "lemma-b1", "lemma-b3", "index-bound", "lemma-c1", "triple-oracle"],
        expected={"order": Expected(value=72, provenance="TRIVIAL")},
    ))
    return items


def _frobenius_items() -> List[CorpusItem]:
    items = []
    for q, p in ((2, 3), (2, 5), (2, 7), (3, 7), (3, 13)):
        F = frobenius_group(q, p)
        t, s = F.generators
        items.append(CorpusItem(
            name=f"F({q},{p})",
            group=NamedSpec(family="frobenius", args=[q, p]),
            normal=[t.cycle_string()],
            subgroup=[s.cycle_string()],
            element=s.cycle_string(),
            lemmas=["lemma-1.1", "lemma-b1", "lemma-b3", "index-bound", "maroti", "brauer-abelian", "triple-oracle"],
            expected={"order": Expected(value=q * p, provenance="TRIVIAL")},
        ))
        d = 2 * p
        diagonal = (shift(s, 0, d) * shift(s, p, d)).cycle_string()
        fixed = p + 1 if q == 2 else 1 + (p - 1) // q + q - 1
        items.append(CorpusItem(
            name=f"frobenius-wr-q{q}p{p}",
            group=WreathSpec(base=NamedSpec(family="frobenius", args=[q, p]), top=NamedSpec(family="cyclic", args=[2])),
            normal=[shift(t, 0, d).cycle_string(), shift(t, p, d).cycle_string(), diagonal],
            element=_swap(p),
            factors=[
                [shift(t, 0, d).cycle_string(), shift(s, 0, d).cycle_string()],
                [shift(t, p, d).cycle_string(), shift(s, p, d).cycle_string()],
            ],
            lemmas=["lemma-1.2", "lemma-2", "lemma-c2", "triple-oracle"],
            expected={"fixed": Expected(value=fixed, provenance="STATED" if (q, p) == (3, 7) else "DERIVED")},
        ))
    items.append(CorpusItem(
        name="ex0.3a",
        group=WreathSpec(base=NamedSpec(family="symmetric", args=[3]), top=NamedSpec(family="cyclic", args=[2])),
        normal=["(0 1 2)", "(3 4 5)", "(1 2)(4 5)"],
        element=_swap(3),
        factors=[["(0 1)", "(0 1 2)"], ["(3 4)", "(3 4 5)"]],
        lemmas=["lemma-1.2", "lemma-2", "lemma-c2", "triple-oracle"],
        expected={
            "k(N)": Expected(value=6, provenance="STATED"),
            "fixed": Expected(value=4, provenance="STATED"),
            "lem2-bound": Expected(value=6, provenance="STATED"),
        },
    ))
    return items


def _matrix_items() -> List[CorpusItem]:
    e0, e1 = [[1, 0]], [[0, 1]]
    module_lemmas = ["lema3", "leme1", "affine-cross-check", "brauer-dual"]
    return [
        CorpusItem(
            name="GL(2,5)",
            group=GLSpec(p=5, dim=2),
            lemmas=["lema3"],
            expected={"order": Expected(value=480, provenance="TRIVIAL"), "vector-orbits": Expected(value=2, provenance="TRIVIAL")},
        ),
        CorpusItem(
            name="GL(2,3)",
            group=GLSpec(p=3, dim=2),
            lemmas=["lema3"],
            expected={"order": Expected(value=48, provenance="TRIVIAL")},
        ),
        CorpusItem(
            name="L-gl25",
            group=ComplementSpec(),
            lemmas=["lema3", "affine-cross-check", "brauer-dual", "noncoprime"],
            params={"noncoprime": {"which": "theoremd1", "bound": {"W": 25}}},
            expected={
                "order": Expected(value=96, provenance="STATED"),
                "dual-orbits": Expected(value=2),
                "vector-orbits": Expected(value=2),
                "center-order": Expected(value=4),
            },
        ),
        CorpusItem(
            name="minus-I-gl25",
            group=MatrixSpec(p=5, dim=2, generators=[[[4, 0], [0, 4]]], name="<-I>"),
            element=[[4, 0], [0, 4]],
            V1=e0, V2=e1,
            lemmas=module_lemmas + ["brauer-module"],
            expected={"k(GV)": Expected(value=14), "dual-orbits": Expected(value=13)},
        ),
        CorpusItem(
            name="scalar-C4-gl25",
            group=MatrixSpec(p=5, dim=2, generators=[[[2, 0], [0, 2]]], name="<2I>"),
            V1=e0, V2=e1,
            lemmas=module_lemmas,
            expected={"k(GV)": Expected(value=10)},
        ),
        CorpusItem(
            name="Q8-gl25",
            group=MatrixSpec(p=5, dim=2, generators=[[[0, 1], [4, 0]], [[2, 0], [0, 3]]], name="Q8"),
            lemmas=["lema3", "affine-cross-check", "brauer-dual"],
            expected={"order": Expected(value=8, provenance="TRIVIAL"), "k(GV)": Expected(value=8)},
        ),
        CorpusItem(
            name="diag21-gl25",
            group=MatrixSpec(p=5, dim=2, generators=[[[2, 0], [0, 1]]], name="<diag(2,1)>"),
            element=[[2, 0], [0, 1]],
            V1=e0, V2=e1,
            lemmas=module_lemmas + ["brauer-module"],
            expected={"k(GV)": Expected(value=25)},
        ),
        CorpusItem(
            name="trivial-gl25",
            group=MatrixSpec(p=5, dim=2, name="1"),
            V1=e0, V2=e1,
            lemmas=module_lemmas,
            expected={"k(GV)": Expected(value=25, provenance="TRIVIAL"), "dual-orbits": Expected(value=25, provenance="TRIVIAL")},
        ),
    ]


MIXED_ITEMS = 6
MIXED_DRAWS = 64


def _block_items(seed: int) -> List[CorpusItem]:
    c2 = NamedSpec(family="cyclic", args=[2])
    c3 = NamedSpec(family="cyclic", args=[3])
    block_lemmas = ["leme2", "lemc4", "lemd2", "theoremC"]
    items = [
        CorpusItem(
            name="L-wr-C2",
            group=InducedSpec(base=ComplementSpec(), top=c2, mixing="full"),
            lemmas=block_lemmas + ["lemma-b2"],
            expected={"order": Expected(value=96 * 96 * 2, provenance="TRIVIAL")},
        ),
        CorpusItem(
            name="L-diag-C2",
            group=InducedSpec(base=ComplementSpec(), top=c2, mixing="diagonal"),
            lemmas=block_lemmas + ["lemma-b2"],
            expected={"order": Expected(value=192, provenance="TRIVIAL")},
        ),
        CorpusItem(
            name="L-diag-C3",
            group=InducedSpec(base=ComplementSpec(), top=c3, mixing="diagonal"),
            lemmas=block_lemmas,
        ),
        CorpusItem(name="L-wr-C3", group=InducedSpec(base=ComplementSpec(), top=c3, mixing="full"), lemmas=["leme2"]),
    ]
    for order in (48, 16, 8):
        items.append(CorpusItem(
            name=f"L{order}-wr-C2",
            group=InducedSpec(base=ComplementSpec(subgroup_order=order), top=c2, mixing="full"),
            lemmas=block_lemmas,
        ))
    # mixed seeds are kept only when their block kernel is new
    L = ComplementSpec().build()
    whole, trivial = L.whole.key(), L.perm_image.trivial_subgroup().key()
    kernels = {(whole, whole), (whole, trivial)}
    rng = np.random.default_rng(seed)
    mixed = []
    for s in (int(x) for x in rng.integers(0, 2 ** 31 - 1, size=MIXED_DRAWS)):
        W, C = mixed_subgroups(L, s)
        if (W.key(), C.key()) in kernels:
            continue
        kernels.add((W.key(), C.key()))
        mixed.append(s)
        if len(mixed) == MIXED_ITEMS:
            break
    for s in sorted(mixed):
        items.append(CorpusItem(
            name=f"L-mixed-C2-s{s}",
            group=InducedSpec(base=ComplementSpec(), top=c2, mixing="mixed", seed=s),
            lemmas=block_lemmas,
        ))
    return items


def _numeric_items() -> List[CorpusItem]:
    items = [
        CorpusItem(name="leme2-p5", params={"p": 5}, lemmas=["leme2-bound"]),
        CorpusItem(name="leme2-p7", params={"p": 7}, lemmas=["leme2-bound"]),
        CorpusItem(name="leme2-p3-L48", group=ComplementSpec(subgroup_order=48), params={"p": 3}, lemmas=["leme2-bound"]),
        CorpusItem(name="leme2-p3-L", group=ComplementSpec(), params={"p": 3}, lemmas=["leme2-bound"]),
        CorpusItem(name="theoremC-excluded", lemmas=["theoremC-excluded"]),
        CorpusItem(name="lemd4-2^47", params={"logW": 47, "n": 2}, lemmas=["lemd4"]),
        CorpusItem(name="corf3-constant", lemmas=["corf3-constant"]),
        CorpusItem(
            name="theorem7_4-n2",
            params={"noncoprime": {"which": "theorem7_4", "bound": {"n": 2, "V1": 25, "n1": 4, "C1": 0, "C2": 1}}},
            lemmas=["noncoprime"],
        ),
        CorpusItem(
            name="corf3-n5",
            params={"noncoprime": {"which": "corf3", "bound": {"n": 5, "V1": 25, "n1": 4, "t0": 20}}},
            lemmas=["noncoprime"],
        ),
    ]
    items += [CorpusItem(name=f"theoremC-n{n}", params={"n": n}, lemmas=["theoremC-numeric"]) for n in range(3, 7)]
    return items


def corpus_standard(seed: Optional[int] = None) -> List[CorpusItem]:
    """The standard corpus, in a fixed order; seeded instances carry their seed in the name."""
    seed = get_config().seed if seed is None else seed
    items = _permutation_items() + _frobenius_items() + _matrix_items() + _block_items(seed) + _numeric_items()
    names = [item.name for item in items]
    if len(set(names)) != len(names):
        raise ValueError("Corpus item names must be unique")
    logger.info(f"Standard corpus: {len(items)} items (seed {seed})")
    return items
