"""Electron magnetic moment: Schwinger, Sommerfield and a factorial continued fraction.

The continued fraction nests terms ``k! * alpha/(2 pi)`` for k = 1, 2, 4, 6, ...
with the sign pattern ``-, +, -, -, +, -, -, +, ...`` counted from the outside,
and closes the innermost level with 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from scipy import constants as _sc

MAX_FACTORIAL_ARG = 18
TERM_GROWTH_MAX_N = 20
_ZERO_DENOMINATOR = 1e-300

# printed values the quoted preset is pinned to
QUOTED_BOHR_MAGNETON = -9.27401452557e-24
QUOTED_SCHWINGER = -9.28478137856e-24
QUOTED_SOMMERFIELD = -9.284764966e-24
QUOTED_FRACTION_18 = -9.28476339e-24
QUOTED_FRACTION_6 = -9.28476377e-24
SOMMERFIELD_COEFF = 1.312


@dataclass(frozen=True)
class PhysConstants:
    """Electron constants.  ``mu_b`` carries the sign of the electron charge."""

    mu_b: float
    alpha: float
    provenance: Literal["quoted", "standard_tables", "custom"] = "custom"

    def __post_init__(self):
        if not (math.isfinite(self.mu_b) and math.isfinite(self.alpha)):
            raise ValueError("constants must be finite")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")

    @classmethod
    def quoted(cls) -> "PhysConstants":
        # alpha is back-derived from the quoted Schwinger value, mu_e/mu_B - 1 = alpha/2pi
        alpha = 2 * math.pi * (QUOTED_SCHWINGER / QUOTED_BOHR_MAGNETON - 1)
        return cls(QUOTED_BOHR_MAGNETON, alpha, "quoted")

    @classmethod
    def standard_tables(cls) -> "PhysConstants":
        mu_b = _sc.physical_constants["Bohr magneton"][0]
        return cls(-mu_b, _sc.alpha, "standard_tables")

    @classmethod
    def preset(cls, name: str) -> "PhysConstants":
        if name == "quoted":
            return cls.quoted()
        if name == "standard_tables":
            return cls.standard_tables()
        raise ValueError(f"unknown constants preset {name!r}")

    def with_alpha(self, alpha: float) -> "PhysConstants":
        return PhysConstants(self.mu_b, alpha, "custom")


def _allowed_args() -> tuple[int, ...]:
    return (1,) + tuple(range(2, MAX_FACTORIAL_ARG + 1, 2))


@dataclass(frozen=True)
class FractionSpec:
    """Truncation of the continued fraction.

    ``max_factorial_arg`` is the deepest factorial argument kept; arguments
    run 1, 2, 4, 6, ... up to it.
    """

    max_factorial_arg: int = MAX_FACTORIAL_ARG
    tail_value: float = 1.0

    def __post_init__(self):
        if self.max_factorial_arg not in _allowed_args():
            raise ValueError(
                f"max_factorial_arg must be one of {_allowed_args()}, "
                f"got {self.max_factorial_arg!r}"
            )

    @property
    def factorial_args(self) -> tuple[int, ...]:
        return tuple(k for k in _allowed_args() if k <= self.max_factorial_arg)


@dataclass(frozen=True)
class FractionTerm:
    factorial_arg: int
    sign: int
    term: float
    denominator: float


@dataclass(frozen=True)
class MomentResult:
    value: float
    terms: list[FractionTerm] = field(default_factory=list)
    spec: FractionSpec = field(default_factory=FractionSpec)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(t.sign for t in self.terms)


class FractionEvaluationError(ArithmeticError):
    def __init__(self, factorial_arg: int, denominator: float):
        super().__init__(
            f"partial denominator {denominator!r} at level {factorial_arg}! is too close to zero"
        )
        self.factorial_arg = factorial_arg
        self.denominator = denominator


def fraction_sign(factorial_arg: int) -> int:
    """Sign attached to the ``k! alpha/2pi`` term."""
    if factorial_arg == 1:
        return -1
    if factorial_arg == 2:
        return 1
    if factorial_arg < 4 or factorial_arg % 2:
        raise ValueError(f"no term for factorial argument {factorial_arg}")
    return (-1, -1, 1)[((factorial_arg - 4) // 2) % 3]


def alpha_over_2pi(c: PhysConstants) -> float:
    return c.alpha / (2 * math.pi)


def term_growth(n: int, c: PhysConstants) -> float:
    """``n! alpha/2pi`` with an exact integer factorial."""
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= TERM_GROWTH_MAX_N:
        raise ValueError(f"n must be an integer in [1, {TERM_GROWTH_MAX_N}], got {n!r}")
    return float(math.factorial(n)) * alpha_over_2pi(c)


def limiting_index(c: PhysConstants) -> int:
    """Largest n whose term ``n! alpha/2pi`` stays below 1.

    The scan stops at ``TERM_GROWTH_MAX_N``.  Raises if even the first term
    reaches 1.
    """
    best = 0
    for n in range(1, TERM_GROWTH_MAX_N + 1):
        if term_growth(n, c) < 1:
            best = n
        else:
            break
    if best == 0:
        raise ValueError("alpha/2pi >= 1: no term stays below unity")
    return best


def continued_fraction_mu(spec: FractionSpec, c: PhysConstants) -> MomentResult:
    """Evaluate the factorial continued fraction bottom-up."""
    x = alpha_over_2pi(c)
    denom = spec.tail_value
    terms = []
    for k in reversed(spec.factorial_args):
        sign = fraction_sign(k)
        if abs(denom) < _ZERO_DENOMINATOR:
            raise FractionEvaluationError(k, denom)
        term = math.factorial(k) * x
        denom = 1 + sign * term / denom
        terms.append(FractionTerm(k, sign, term, denom))
    if abs(denom) < _ZERO_DENOMINATOR:
        raise FractionEvaluationError(spec.factorial_args[0], denom)
    terms.reverse()
    return MomentResult(value=c.mu_b / denom, terms=terms, spec=spec)


def schwinger_mu(c: PhysConstants) -> float:
    return c.mu_b * (1 + alpha_over_2pi(c))


def sommerfield_mu(c: PhysConstants) -> float:
    x = alpha_over_2pi(c)
    return c.mu_b * (1 + x - SOMMERFIELD_COEFF * x * x)
