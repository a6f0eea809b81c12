"""
Lemma b2 on a block module: the hypotheses on H W and on the subgroups of
G/N imply k(GW) <= f(|W|).
"""

import logging
import math
from typing import Optional

import numpy as np

from classbound.config import get_config
from classbound.core.classes import class_count, conjugacy_classes
from classbound.core.constructions import quotient_group
from classbound.core.subgroups import subgroups_for_all
from classbound.errors import HypothesisFailed, NotTransitive
from classbound.gfmod.affine import AffineGroup, affine_class_count, fixed_classes_affine
from classbound.gfmod.blocks import ModuleDecomposition
from classbound.gfmod.bounds import BoundFunction
from classbound.gfmod.linalg import echelon_basis
from classbound.lemmas.records import LemmaCheckRecord, make_record

logger = logging.getLogger(__name__)


def _block_orbit(D: ModuleDecomposition) -> int:
    images = D.block_images
    seen = {0}
    frontier = [0]
    while frontier:
        b = frontier.pop()
        for c in np.unique(images[:, b]):
            if int(c) not in seen:
                seen.add(int(c))
                frontier.append(int(c))
    return len(seen)


def max_fixed_low_support(D: ModuleDecomposition) -> int:
    """m_0: the largest |C_cl(NV)(g)| over class representatives g of G with at most n/2 fixed blocks."""
    G = D.G
    NV = AffineGroup(G, D.N, name=f"{D.name}:NV")
    best = 0
    for g in conjugacy_classes(G.whole).representatives:
        perm = D.block_permutation(int(g))
        if 2 * sum(1 for i, j in enumerate(perm) if i == j) > D.n:
            continue
        best = max(best, fixed_classes_affine(NV, NV.encode(int(g))))
    return best


def verify_lemma_b2(
    D: ModuleDecomposition,
    W_basis=None,
    W_complement=None,
    f: Optional[BoundFunction] = None,
    instance: str = "",
) -> LemmaCheckRecord:
    """k(GW) <= f(|W|) from (i) k(HW) <= f(|W|) and (ii) k(UN/N) <= (f(|W|)/m_0)^(1/2) / sqrt(n+1).

    W defaults to V with a zero complement. Hypothesis (ii) is checked over the
    subgroups of G/N, since k(UN/N) depends only on UN/N.

    Raises:
        NotTransitive: If G does not permute the blocks transitively.
        NotInvariant: If W or its complement is not a G-module.
        HypothesisFailed: If the summands do not split V or (i) or (ii) fails.
    """
    G = D.G
    d, p = G.d, G.p
    f = f or BoundFunction()
    if _block_orbit(D) != D.n:
        error_msg = f"{D.name}: G is not transitive on the {D.n} blocks"
        logger.error(error_msg)
        raise NotTransitive(error_msg)
    W = np.eye(d, dtype=np.int64) if W_basis is None else np.asarray(W_basis, dtype=np.int64).reshape(-1, d)
    Wc = np.zeros((0, d), dtype=np.int64) if W_complement is None else np.asarray(W_complement, dtype=np.int64).reshape(-1, d)
    B, _ = echelon_basis(W, p, d)
    Bc, _ = echelon_basis(Wc, p, d)
    _, pivots = echelon_basis(np.concatenate([B, Bc]), p, d)
    if len(pivots) != d or len(B) + len(Bc) != d:
        error_msg = f"{D.name}: W and W' do not split V"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    AffineGroup(G, subspace=Bc, name="GW'")
    GW = AffineGroup(G, subspace=B, name=f"{G.name}⋉W")
    size = GW.module_size
    fW = float(f(size))
    instance = instance or f"{D.name} with |W|={size}"

    kHW = affine_class_count(AffineGroup(G, D.H, B, name="H⋉W"))
    if kHW > fW:
        error_msg = f"lemma-b2 on {instance}: (i) fails, k(HW) = {kHW} > {fW}"
        logger.warning(error_msg)
        raise HypothesisFailed(error_msg)

    m0 = max_fixed_low_support(D)
    limit = math.sqrt(fW / m0) / math.sqrt(D.n + 1) if m0 else math.inf
    Q, _ = quotient_group(G.whole, D.N)
    subgroups, exhaustive = subgroups_for_all(Q, seed=get_config().seed)
    top = max(class_count(U) for U in subgroups)
    if top > limit:
        error_msg = f"lemma-b2 on {instance}: (ii) fails, k(UN/N) = {top} > {limit}"
        logger.warning(error_msg)
        raise HypothesisFailed(error_msg)
    if not exhaustive:
        logger.warning(f"lemma-b2 on {instance}: (ii) checked on sampled subgroups of G/N")

    return make_record(
        "lemma-b2", instance, affine_class_count(GW), fW,
        mode="exact" if exhaustive else "sampled",
        extras={
            "f": f.describe(), "k(HW)": kHW, "m0": m0, "max_k(UN/N)": top,
            "ii_bound": limit, "|G/N|": Q.order, "n": D.n,
        },
    )
