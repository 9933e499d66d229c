from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..nt.arith import require_odd_prime


@dataclass(frozen=True)
class SumParams:
    """Modulus, congruence sign and dyadic scales of one sum.

    ``N1`` and ``N2`` are only needed for the C-sums, where ``N = N1 * N2``.
    """

    q: int
    sign: int
    M: float
    N: float = 0.0
    N1: float | None = None
    N2: float | None = None

    def __post_init__(self):
        require_odd_prime(self.q)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if (self.N1 is None) != (self.N2 is None):
            raise ValueError("give both N1 and N2 or neither")
        if self.N1 is not None:
            if self.N1 > self.N2:
                raise ValueError("need N1 <= N2")
            object.__setattr__(self, "N", self.N1 * self.N2)

    @property
    def sign_char(self) -> str:
        return "+" if self.sign > 0 else "-"


def parse_sign(text: str) -> int:
    if text in ("+", "+1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {text!r}")


def support(scale: float) -> np.ndarray:
    """Integers n with W(n / scale) possibly nonzero, i.e. scale/2 < n < 2 scale."""
    lo = math.floor(scale / 2) + 1
    hi = math.ceil(2 * scale) - 1
    return np.arange(max(lo, 1), hi + 1, dtype=np.int64)


def support_count(scale: float) -> int:
    """Closed form for ``len(support(scale))``."""
    return max(0, math.ceil(2 * scale) - 1 - max(math.floor(scale / 2), 0))


@dataclass
class SumReport:
    value: float | complex
    terms: int
    method: str
    error_estimate: float | None = None
    flagged: bool = False
    parts: dict = field(default_factory=dict)
