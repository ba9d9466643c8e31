"""Scalar functions the checkers instantiate: real powers and logarithms.

Both evaluate elementwise on floats or arrays via the host's pow/log
primitives, exactly as written (no rewriting of t**r).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import FUNC_LOG, FUNC_POWER
from .errors import DomainError


@dataclass(frozen=True)
class Power:
    """f(t) = t**r for real r; defined for t > 0 (all reals when r is a
    nonnegative integer)."""

    r: float

    def __call__(self, t):
        return t**self.r

    def domain_contains(self, t) -> bool:
        t = np.asarray(t, dtype=np.float64)
        if float(self.r).is_integer() and self.r >= 0:
            return bool(np.all(np.isfinite(t)))
        return bool(np.all(t > 0.0))

    @property
    def kernel_id(self):
        return FUNC_POWER, float(self.r)

    def label(self) -> str:
        return f"pow:{self.r:g}"


@dataclass(frozen=True)
class Log:
    """f(t) = log_base(t), defined for t > 0.  Base 10 by default (the
    two-bound comparison example uses the common logarithm)."""

    base: float = 10.0

    def __post_init__(self):
        if not self.base > 1.0:
            raise DomainError(f"log base must exceed 1, got {self.base}")

    def __call__(self, t):
        if isinstance(t, np.ndarray):
            return np.log(t) / math.log(self.base)
        return math.log(t) / math.log(self.base)

    def domain_contains(self, t) -> bool:
        return bool(np.all(np.asarray(t, dtype=np.float64) > 0.0))

    @property
    def kernel_id(self):
        return FUNC_LOG, 1.0 / math.log(self.base)

    def label(self) -> str:
        return f"log:{self.base:g}"


ScalarFunction = Power | Log


def parse_function(spec: str) -> ScalarFunction:
    """Parse the CLI mini-grammar: 'pow:<r>' or 'log:<base>'."""
    kind, _, arg = spec.partition(":")
    if kind == "pow" and arg:
        return Power(float(arg))
    if kind == "log":
        return Log(float(arg)) if arg else Log()
    raise ValueError(f"bad function spec {spec!r} (expected pow:<r> or log:<base>)")
