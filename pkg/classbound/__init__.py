"""classbound - finite-group class-number bounds, verified instance by instance.

classbound computes conjugacy classes, classes fixed by an automorphism and
classes of affine groups G⋉V over GF(p), and checks the inequalities of the
class-number bound for coprime and noncoprime module actions on concrete
instances.

Example:
    Fixed classes of the block swap on a subgroup of S3 wr C2:

    >>> from classbound.harness.corpus import Instance, corpus_standard
    >>> item = next(i for i in corpus_standard() if i.name == "ex0.3a")
    >>> from classbound.lemmas import fixed_class_count
    >>> inst = Instance(item)
    >>> fixed_class_count(inst.N, inst.g)
    4
"""

import logging

__version__ = "0.1.0"

# Configure logging for the package
_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())


def setup_logging(level: int = logging.INFO) -> None:
    """Configure logging for classbound.

    Args:
        level: Logging level (default: logging.INFO).
               Use logging.DEBUG for verbose output.

    Example:
        >>> import logging
        >>> from classbound import setup_logging
        >>> setup_logging(level=logging.DEBUG)
    """
    handler = logging.StreamHandler()
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    handler.setFormatter(formatter)

    # Set logging for all classbound modules
    logger = logging.getLogger('classbound')
    logger.setLevel(level)
    logger.addHandler(handler)


# Make key classes easily importable
from classbound.config import Config, get_config, set_config
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.core.permutation import Permutation
from classbound.gfmod.affine import AffineGroup
from classbound.gfmod.matrix_group import MatrixGroup
from classbound.harness.campaign import CampaignReport, run_campaign
from classbound.lemmas.records import LemmaCheckRecord, SkipRecord
from classbound.utils.report_exporter import ReportExporter

__all__ = [
    'AffineGroup',
    'CampaignReport',
    'Config',
    'FiniteGroup',
    'LemmaCheckRecord',
    'MatrixGroup',
    'Permutation',
    'ReportExporter',
    'SkipRecord',
    'Subgroup',
    'get_config',
    'run_campaign',
    'set_config',
    'setup_logging',
]
