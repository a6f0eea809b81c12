"""
Verification records.

A :class:`LemmaCheckRecord` is one checked instance of one inequality or
equality; a :class:`SkipRecord` is an instance that could not be checked and
says why.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Literal, Optional, Union

import numpy as np
from mpmath import mpf
from pydantic import BaseModel, Field

from classbound.config import get_config

logger = logging.getLogger(__name__)

Number = Union[int, float]


class LemmaCheckRecord(BaseModel):
    """One verified instance of one lemma.

    Attributes:
        lemma: Lemma identifier, e.g. ``lemma-1.1`` or ``leme2``.
        instance: Instance descriptor.
        lhs: Left-hand side value.
        rhs: Right-hand side value.
        holds: ``lhs <= rhs`` for inequalities, ``lhs == rhs`` for equalities.
        slack: ``rhs - lhs``.
        mode: ``sampled`` when some "for all" quantifier was sampled.
        relation: ``<=`` or ``==``.
        extras: Named intermediate values.
    """
    lemma: str
    instance: str
    lhs: Number
    rhs: Number
    holds: bool
    slack: Number
    mode: Literal["exact", "sampled"] = "exact"
    relation: Literal["<=", "=="] = "<="
    extras: Dict[str, Any] = Field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        """A sampled failure only under-reports the quantity it maximizes."""
        return not self.holds and self.mode == "sampled"

    @property
    def status(self) -> str:
        if self.holds:
            return "holds"
        return "inconclusive" if self.inconclusive else "fails"


class SkipRecord(BaseModel):
    """An instance that was not checked, with the reason."""
    lemma: str
    instance: str
    kind: Literal["not-applicable", "cap-exceeded", "error"]
    reason: str


def plain(value: Any) -> Any:
    """Convert numpy, mpmath and Fraction values into JSON-friendly Python values."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating, mpf, Fraction)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [plain(v) for v in value]
    return value


def _compare(lhs: Number, rhs: Number, relation: str, tolerance: float) -> bool:
    if isinstance(lhs, int) and isinstance(rhs, int):
        return lhs == rhs if relation == "==" else lhs <= rhs
    margin = tolerance * max(1.0, abs(float(rhs)))
    if relation == "==":
        return abs(float(lhs) - float(rhs)) <= margin
    return float(lhs) <= float(rhs) + margin


def make_record(
    lemma: str,
    instance: str,
    lhs: Any,
    rhs: Any,
    relation: str = "<=",
    mode: str = "exact",
    extras: Optional[Dict[str, Any]] = None,
    tolerance: Optional[float] = None,
) -> LemmaCheckRecord:
    """Build a record, deciding ``holds`` exactly for integers and with tolerance otherwise."""
    lhs, rhs = plain(lhs), plain(rhs)
    tolerance = get_config().tolerance if tolerance is None else tolerance
    holds = _compare(lhs, rhs, relation, tolerance)
    record = LemmaCheckRecord(
        lemma=lemma,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        slack=rhs - lhs,
        mode=mode,
        relation=relation,
        extras=plain(extras or {}),
    )
    if not holds:
        level = logging.WARNING if mode == "sampled" else logging.ERROR
        logger.log(level, f"{lemma} on {instance}: {lhs} {relation} {rhs} does not hold ({mode})")
    else:
        logger.debug(f"{lemma} on {instance}: {lhs} {relation} {rhs}")
    return record
