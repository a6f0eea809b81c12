"""
Runtime configuration.

Values come from the environment (optionally via a ``.env`` file) and can be
replaced process-wide with :func:`set_config`.
"""

import logging
import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class Config:
    """Limits and numeric settings shared by all operations.

    Attributes:
        cap: Maximum number of elements a single enumeration may produce.
        brute_cap: Largest affine group handled by brute-force class enumeration.
        exhaustive_limit: Largest group whose full subgroup lattice is enumerated.
        lemma_1_2_limit: Largest N for which Lemma 1.2(a) is checked element by element.
        oracle_limit: Largest N for the quadratic centralizer-averaging oracle.
        structured_limit: Budget (rows times degree) for stored element tables.
        degree_cap: Largest vector count p^d for matrix permutation images.
        tolerance: Relative tolerance for floating-point bound comparisons.
        precision: Decimal digits used by mpmath evaluations.
        seed: Default seed for sampled searches.
    """
    cap: int = 20_000_000
    brute_cap: int = 1_000_000
    exhaustive_limit: int = 100
    lemma_1_2_limit: int = 2000
    oracle_limit: int = 20_000
    structured_limit: int = 20_000_000
    degree_cap: int = 20_000
    tolerance: float = 1e-9
    precision: int = 30
    seed: int = 42

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return asdict(self)

    @classmethod
    def from_env(cls) -> "Config":
        """Build a configuration from CLASSBOUND_* environment variables."""
        load_dotenv()
        config = cls()
        for name, attr in (
            ("CLASSBOUND_CAP", "cap"),
            ("CLASSBOUND_BRUTE_CAP", "brute_cap"),
            ("CLASSBOUND_SEED", "seed"),
        ):
            raw = os.environ.get(name)
            if raw is None:
                continue
            try:
                setattr(config, attr, int(raw))
            except ValueError as e:
                error_msg = f"{name} must be an integer, got {raw!r}"
                logger.error(error_msg)
                raise ValueError(error_msg) from e
            logger.debug(f"{attr} set to {raw} from {name}")
        return config


_config: Optional[Config] = None


def get_config() -> Config:
    """Return the process-wide configuration, loading it on first use."""
    global _config
    if _config is None:
        _config = Config.from_env()
    return _config


def set_config(config: Optional[Config]) -> None:
    """Replace the process-wide configuration (``None`` reloads from the environment)."""
    global _config
    _config = config
