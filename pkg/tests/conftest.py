"""Shared fixtures: small permutation groups, the order-96 complement L and block instances."""

import pytest

from classbound.config import Config, set_config
from classbound.core.constructions import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    frobenius_group,
    quaternion_group,
    symmetric_group,
    wreath_product,
)
from classbound.gfmod.blocks import ModuleDecomposition, induced_block_group
from classbound.gfmod.complement import complement_report
from classbound.gfmod.matrix_group import matrix_group
from classbound.harness.corpus import Instance, corpus_standard


@pytest.fixture(autouse=True)
def default_config():
    """Every test starts from the default limits, independent of the environment."""
    set_config(Config())
    yield
    set_config(Config())


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s4():
    return symmetric_group(4)


@pytest.fixture(scope="session")
def a4():
    return alternating_group(4)


@pytest.fixture(scope="session")
def d8():
    return dihedral_group(4)


@pytest.fixture(scope="session")
def q8():
    return quaternion_group()


@pytest.fixture(scope="session")
def c6():
    return cyclic_group(6)


@pytest.fixture(scope="session")
def f37():
    return frobenius_group(3, 7)


@pytest.fixture(scope="session")
def s3_wr_c2():
    return wreath_product(symmetric_group(3), cyclic_group(2))


@pytest.fixture(scope="session")
def standard_items():
    return {item.name: item for item in corpus_standard(42)}


@pytest.fixture(scope="session")
def ex03a(standard_items):
    return Instance(standard_items["ex0.3a"])


@pytest.fixture(scope="session")
def L_report():
    return complement_report()


@pytest.fixture(scope="session")
def L(L_report):
    return L_report.group


@pytest.fixture(scope="session")
def minus_identity():
    return matrix_group(5, 2, [[[4, 0], [0, 4]]], name="<-I>")


@pytest.fixture(scope="session")
def L_diag_c2(L):
    return ModuleDecomposition(induced_block_group(L, cyclic_group(2), "diagonal"), name="L-diag-C2")


@pytest.fixture(scope="session")
def L_wr_c2(L):
    return ModuleDecomposition(induced_block_group(L, cyclic_group(2), "full"), name="L-wr-C2")
