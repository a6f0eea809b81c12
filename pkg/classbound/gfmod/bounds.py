"""
Closed-form bounds of the coprime and noncoprime reductions.

Everything is evaluated with mpmath at the configured precision; records
compare with the configured relative tolerance.
"""

import logging
from typing import Literal, Optional, Tuple

from mpmath import log, mp, mpf, sqrt
from pydantic import BaseModel, Field, field_validator

from classbound.config import get_config
from classbound.errors import ExcludedDegree, HypothesisFailed
from classbound.lemmas.records import LemmaCheckRecord, make_record

logger = logging.getLogger(__name__)

NONCOPRIME_BOUNDS = ("theoremd1", "theoremf2", "corf3", "theoremD", "theorem7_4")


def log2(x) -> mpf:
    return log(mpf(x), 2)


class BoundFunction(BaseModel):
    """f(x) = C x (``linear``) or C x log2 x (``xlogx``)."""
    kind: Literal["linear", "xlogx"] = "linear"
    C: float = 1.0

    def __call__(self, x) -> mpf:
        x = mpf(x)
        value = mpf(self.C) * x
        return value * log2(x) if self.kind == "xlogx" else value

    def describe(self) -> str:
        return f"{self.C}*x" + ("*log2(x)" if self.kind == "xlogx" else "")


class BoundParams(BaseModel):
    """Parameters of the block bounds.

    Attributes:
        p: Prime order of the acting element, or cycle length.
        n: Number of blocks.
        f: Number of p-cycles on the blocks.
        V1: |V_1|.
        B: 6 in the |W| = 7^4 symplectic exception, else 1.
        t0: max k(U V_1) over U <= N/C_N(V_1).
        n1: |N/C_N(V_1)|.
        C, C1, C2: Constants of the noncoprime statements.
        group_order: |G| for the primitive-module bound.
        W: |W| for the primitive-module bound (defaults to V1).
        quotient_order: |G/N|.
        bound: The function f of the noncoprime reduction.
        fstar_alternating: Caller-supplied flag: F*(G/N) is a product of alternating groups.
    """
    p: int = 2
    n: int = 2
    f: int = 1
    V1: int = 25
    B: int = 1
    t0: Optional[float] = None
    n1: Optional[int] = None
    C: float = 1.0
    C1: float = 0.0
    C2: float = 1.0
    group_order: Optional[int] = None
    W: Optional[int] = None
    quotient_order: Optional[int] = None
    bound: BoundFunction = Field(default_factory=BoundFunction)
    fstar_alternating: bool = False

    @field_validator("B")
    @classmethod
    def _check_B(cls, value: int) -> int:
        if value not in (1, 6):
            raise ValueError(f"B must be 1 or 6, got {value}")
        return value

    @property
    def V(self) -> int:
        return self.V1 ** self.n

    @property
    def A1(self) -> mpf:
        """B |V1|^2 log2 |V1|."""
        with mp.workdps(get_config().precision):
            return mpf(self.B) * mpf(self.V1) ** 2 * log2(self.V1)

    @property
    def A2(self) -> mpf:
        """|V1|^((2p^2+1)/(2p+1)) (B log2 |V1|)^((2p-2)/(2p+1))."""
        p = self.p
        with mp.workdps(get_config().precision):
            return (
                mpf(self.V1) ** (mpf(2 * p * p + 1) / (2 * p + 1))
                * (self.B * log2(self.V1)) ** (mpf(2 * p - 2) / (2 * p + 1))
            )


def eval_lemd2_bounds(params: BoundParams) -> Tuple[mpf, mpf]:
    """A_i^f |V1|^(n - p f) for i = 1, 2.

    Raises:
        HypothesisFailed: If f < 1 or n < p f.
    """
    if params.f < 1 or params.n < params.p * params.f:
        error_msg = f"Need f >= 1 and n >= p f, got n={params.n}, p={params.p}, f={params.f}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    with mp.workdps(get_config().precision):
        rest = mpf(params.V1) ** (params.n - params.p * params.f)
        return params.A1 ** params.f * rest, params.A2 ** params.f * rest


def check_lemd4_thresholds(W: int, n: int = 2, B: int = 1) -> Tuple[LemmaCheckRecord, LemmaCheckRecord]:
    """The sufficient inequalities for the two parts of the large-|W| reduction.

    Part (a): 3^((n-1)/2) <= |W|^(n/40) / (sqrt(n+1) (B log2|W|)^(n/20)), and for
    n = 2 also 2 <= |W|^(1/20) / (sqrt(3) (B log2|W|)^(1/10)).
    Part (b): 2^10 (log2|W|)^2 <= |W|.
    """
    instance = f"|W|=2^{float(log2(W)):.6g}, n={n}, B={B}"
    with mp.workdps(get_config().precision):
        lw = log2(W)
        general_lhs = mpf(3) ** (mpf(n - 1) / 2)
        general_rhs = mpf(W) ** (mpf(n) / 40) / (sqrt(n + 1) * (B * lw) ** (mpf(n) / 20))
        extras = {"general_lhs": general_lhs, "general_rhs": general_rhs, "general_margin": general_rhs / general_lhs - 1}
        lhs, rhs = general_lhs, general_rhs
        if n == 2:
            pair_rhs = mpf(W) ** (mpf(1) / 20) / (sqrt(3) * (B * lw) ** (mpf(1) / 10))
            extras.update({"n2_lhs": 2, "n2_rhs": pair_rhs, "n2_margin": pair_rhs / 2 - 1})
            if pair_rhs / 2 < general_rhs / general_lhs:
                lhs, rhs = mpf(2), pair_rhs
        part_a = make_record("lemd4a", instance, lhs, rhs, extras=extras)
        b_lhs = mpf(2) ** 10 * lw ** 2
        part_b = make_record("lemd4b", instance, b_lhs, mpf(W), extras={"margin": mpf(W) / b_lhs - 1})
    return part_a, part_b


def lemd4b_hypothesis_rhs(V: int, W: int, n: int) -> mpf:
    """|V| - (3^((n-1)/2) + 1) |V|^(9/10) (6 log2|W|)^(n/5)."""
    with mp.workdps(get_config().precision):
        return mpf(V) - (mpf(3) ** (mpf(n - 1) / 2) + 1) * mpf(V) ** (mpf(9) / 10) * (6 * log2(W)) ** (mpf(n) / 5)


def theoremC_numeric(n: int, V1: int = 25) -> LemmaCheckRecord:
    """The numeric closing step for n >= 3 blocks of size |V1| = 25.

    n = 3: (4/5)|V| + 2|V|^0.74 <= |V|; n >= 4: 5 * 3^((n-1)/2) <= 5^(0.52 n).

    Raises:
        ExcludedDegree: If n < 3.
    """
    if n < 3:
        error_msg = f"The numeric step needs n >= 3, got {n}"
        logger.error(error_msg)
        raise ExcludedDegree(error_msg)
    with mp.workdps(get_config().precision):
        V = mpf(V1) ** n
        if n == 3:
            lhs = mpf(4) / 5 * V + 2 * V ** mpf("0.74")
            return make_record("theoremC-numeric", f"n={n}", lhs, V, extras={"|V|": V})
        lhs = 5 * mpf(3) ** (mpf(n - 1) / 2)
        rhs = mpf(5) ** (mpf("0.52") * n)
        return make_record("theoremC-numeric", f"n={n}", lhs, rhs, extras={"|V|": V})


def corf3_constant_check() -> LemmaCheckRecord:
    """1/50 <= (1 - 1/5)^(14/15) / 2^(14/3)."""
    with mp.workdps(get_config().precision):
        rhs = (1 - mpf(1) / 5) ** (mpf(14) / 15) / mpf(2) ** (mpf(14) / 3)
        return make_record("corf3-constant", "n>=5", mpf(1) / 50, rhs)


def _require(value, label: str, which: str):
    if value is None:
        error_msg = f"{which} needs {label}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    return value


def _hypothesis(params: BoundParams, which: str):
    """(lhs, rhs, conclusion bound, extras) of a noncoprime statement."""
    n, V1, V = params.n, params.V1, params.V
    e = mpf(14) / (3 * n)
    if which == "theoremd1":
        W = params.W or V1
        order = _require(params.group_order, "group_order", which)
        return mpf(order), mpf(W) * log2(W), None, {"|W|": W}
    n1 = mpf(_require(params.n1, "n1", which))
    if which == "theoremf2":
        t0 = mpf(_require(params.t0, "t0", which))
        quotient = mpf(_require(params.quotient_order, "quotient_order", which))
        fV = params.bound(V)
        rhs = (1 - 1 / quotient) ** e * fV ** e / (mpf(2) ** (mpf(14) / 3) * V1 * t0 ** (mpf(8) / 3))
        extras = {
            "f": params.bound.describe(),
            "fixed_class_bound": t0 ** (mpf(4) * n / 7) * (n1 * V1) ** (mpf(3) * n / 14),
            "reading": "hypothesis on n1 read as standalone",
        }
        return n1, rhs, fV, extras
    if which == "corf3":
        if n < 5:
            error_msg = f"corf3 needs n >= 5, got {n}"
            logger.error(error_msg)
            raise HypothesisFailed(error_msg)
        t0 = mpf(_require(params.t0, "t0", which))
        rhs = mpf(1) / 50 * mpf(params.C) ** e * mpf(V1) ** (mpf(11) / 3) / t0 ** (mpf(8) / 3) * log2(V) ** e
        return n1, rhs, mpf(params.C) * V * log2(V), {}
    if which == "theoremD":
        exponent = e - mpf(8) / 3
        rhs = mpf(1) / 50 * mpf(params.C) ** exponent * V1 * log2(V) ** exponent
        return n1, rhs, mpf(params.C) * V * log2(V), {}
    if which == "theorem7_4":
        rhs = mpf(1) / 4 * mpf(params.C2 - params.C1) ** (mpf(2) / n) * V1 * log2(V) ** (mpf(2) / n)
        return n1, rhs, mpf(params.C2) * V * log2(V), {"fixed_class_bound": (n1 * V1) ** (mpf(n) / 2)}
    raise ValueError(f"Unknown bound {which!r}; expected one of {NONCOPRIME_BOUNDS}")


def eval_noncoprime_bounds(
    params: BoundParams,
    which: str,
    k_GV: Optional[int] = None,
    instance: str = "",
) -> LemmaCheckRecord:
    """Evaluate a noncoprime hypothesis, or its conclusion on a counted instance.

    Without ``k_GV`` the record compares the hypothesis quantity with its
    right-hand side. With ``k_GV`` (a class count computed by the caller) the
    hypothesis must hold and the record checks the conclusion k(GV) <= bound.

    Raises:
        HypothesisFailed: If required data are missing, F*(G/N) is a product of
            alternating groups, or the hypothesis fails on a counted instance.
    """
    label = instance or f"n={params.n}, |V1|={params.V1}"
    if which in ("theoremf2", "corf3", "theoremD") and params.fstar_alternating:
        error_msg = f"{which}: F*(G/N) is a product of alternating groups"
        logger.warning(error_msg)
        raise HypothesisFailed(error_msg)
    with mp.workdps(get_config().precision):
        lhs, rhs, conclusion, extras = _hypothesis(params, which)
        if k_GV is None or which == "theoremd1":
            return make_record(f"{which}-hypothesis" if which != "theoremd1" else which, label, lhs, rhs, extras=extras)
        if lhs > rhs:
            error_msg = f"{which} hypothesis fails on {label}: {float(lhs)} > {float(rhs)}"
            logger.warning(error_msg)
            raise HypothesisFailed(error_msg)
        extras.update({"hypothesis_lhs": lhs, "hypothesis_rhs": rhs})
        return make_record(which, label, k_GV, conclusion, extras=extras)
