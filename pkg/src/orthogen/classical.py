"""Closed-form recurrence coefficients for the classical weight functions,
plus the log-gamma support function they need.

Families covered: Legendre on (-1,1) and on (0,1), Chebyshev of the first
through fourth kinds, Jacobi (1-t)^a (1+t)^b on (-1,1), generalized
Laguerre t^a e^-t on (0,inf), and Hermite e^{-t^2} on the real line.
Fourth-kind Chebyshev is first-class: its alphas are the negatives of the
third-kind alphas with identical betas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    InvalidOptionError,
    OutOfRangeError,
    OverflowRangeError,
    RecurrenceTable,
    huge,
    working_eps,
)

__all__ = [
    "ClassicalKind", "LEGENDRE", "LEGENDRE_SHIFTED", "CHEBYSHEV1", "CHEBYSHEV2",
    "CHEBYSHEV3", "CHEBYSHEV4", "HERMITE", "jacobi", "gen_laguerre",
    "classical_coeffs", "log_gamma", "gamma_fn",
]

_FAMILIES = (
    "legendre", "legendre_shifted", "chebyshev1", "chebyshev2",
    "chebyshev3", "chebyshev4", "jacobi", "laguerre", "hermite",
)


@dataclass(frozen=True)
class ClassicalKind:
    """A classical weight family, with parameters where the family has them
    (``a``, ``b`` for Jacobi, ``a`` for generalized Laguerre)."""

    family: str
    a: Optional[float] = None
    b: Optional[float] = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidOptionError(f"unknown classical family {self.family!r}")
        if self.family == "jacobi":
            if self.a is None or self.b is None:
                raise InvalidOptionError("jacobi needs both parameters")
            if self.a <= -1.0 or self.b <= -1.0:
                raise InvalidOptionError("jacobi parameters must exceed -1")
        elif self.family == "laguerre":
            if self.a is None:
                raise InvalidOptionError("generalized laguerre needs a parameter")
            if self.a <= -1.0:
                raise InvalidOptionError("laguerre parameter must exceed -1")


LEGENDRE = ClassicalKind("legendre")
LEGENDRE_SHIFTED = ClassicalKind("legendre_shifted")
CHEBYSHEV1 = ClassicalKind("chebyshev1")
CHEBYSHEV2 = ClassicalKind("chebyshev2")
CHEBYSHEV3 = ClassicalKind("chebyshev3")
CHEBYSHEV4 = ClassicalKind("chebyshev4")
HERMITE = ClassicalKind("hermite")


def jacobi(a: float, b: float) -> ClassicalKind:
    return ClassicalKind("jacobi", a, b)


def gen_laguerre(a: float) -> ClassicalKind:
    return ClassicalKind("laguerre", a)


# ---------------------------------------------------------------------------
# log-gamma by the Stirling series with argument shift
# ---------------------------------------------------------------------------

# B_{2m} / (2m (2m-1)), m = 1..9, Bernoulli numbers B_2..B_18
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
)
_B20 = -174611.0 / 330.0  # bounds the first neglected term

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _stirling_threshold() -> float:
    # Smallest y such that the truncation error of the 9-term series stays
    # below half an ulp of the d decimal digits carried at working precision.
    n = len(_STIRLING)
    d = -math.log10(0.5 * working_eps())
    return math.exp((d * math.log(10.0)
                     + math.log(2.0 * abs(_B20) / ((2 * n + 2) * (2 * n + 1))))
                    / (2 * n + 1))


_Y0 = _stirling_threshold()


def _stirling_series(y: float) -> float:
    s = 0.0
    y2 = y * y
    t = 1.0 / y
    for c in _STIRLING:
        s += c * t
        t /= y2
    return (y - 0.5) * math.log(y) - y + _HALF_LOG_2PI + s


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for x > 0.

    Uses the truncated Stirling series directly for arguments above a
    precision-derived threshold, and shifts smaller arguments up with
    ln G(x) = ln G(x + k0) - ln(x (x+1) ... (x+k0-1)).
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise InvalidOptionError(f"log_gamma requires x > 0, got {x}")
    if x >= _Y0:
        return _stirling_series(x)
    k0 = int(math.ceil(_Y0 - x))
    # accumulate ln p as a plain product unless it could overflow
    sqrt_huge = math.sqrt(huge())
    p = 1.0
    logp = 0.0
    for j in range(k0):
        if p > sqrt_huge:
            logp += math.log(p)
            p = 1.0
        p *= x + j
    logp += math.log(p)
    return _stirling_series(x + k0) - logp


def gamma_fn(x: float) -> float:
    """Gamma function by exponentiating its logarithm; overflow is an error."""
    lg = log_gamma(x)
    if lg > math.log(huge()):
        raise OverflowRangeError(f"gamma({x}) exceeds the largest finite value")
    return math.exp(lg)


def _log_beta0_jacobi(a: float, b: float) -> float:
    return ((a + b + 1.0) * math.log(2.0)
            + log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0))


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------

def _legendre(n):
    alpha = np.zeros(n)
    beta = np.empty(n)
    beta[0] = 2.0
    k = np.arange(1, n, dtype=float)
    beta[1:] = k * k / (4.0 * k * k - 1.0)
    return alpha, beta


def _legendre_shifted(n):
    alpha = np.full(n, 0.5)
    beta = np.empty(n)
    beta[0] = 1.0
    k = np.arange(1, n, dtype=float)
    beta[1:] = 0.25 * k * k / (4.0 * k * k - 1.0)
    return alpha, beta


def _chebyshev(n, kind):
    alpha = np.zeros(n)
    beta = np.full(n, 0.25)
    if kind == 1:
        beta[0] = math.pi
        if n > 1:
            beta[1] = 0.5
    elif kind == 2:
        beta[0] = 0.5 * math.pi
    else:  # third kind; fourth flips the sign of alpha_0
        beta[0] = math.pi
        alpha[0] = 0.5 if kind == 3 else -0.5
    return alpha, beta


def _jacobi(n, a, b):
    alpha = np.zeros(n)
    beta = np.empty(n)
    ab = a + b
    alpha[0] = (b - a) / (ab + 2.0)
    lb0 = _log_beta0_jacobi(a, b)
    if lb0 > math.log(huge()):
        raise OverflowRangeError(
            f"beta_0 for jacobi({a}, {b}) overflows; ln beta_0 = {lb0}")
    beta[0] = math.exp(lb0)
    if n > 1:
        k = np.arange(1, n, dtype=float)
        kab = 2.0 * k + ab
        alpha[1:] = (b * b - a * a) / (kab * (kab + 2.0))
        beta[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
        if n > 2:
            k = k[1:]
            kab = kab[1:]
            beta[2:] = (4.0 * k * (k + a) * (k + b) * (k + ab)
                        / (kab * kab * (kab + 1.0) * (kab - 1.0)))
    return alpha, beta


def _laguerre(n, a):
    k = np.arange(n, dtype=float)
    alpha = 2.0 * k + a + 1.0
    beta = np.empty(n)
    lb0 = log_gamma(a + 1.0)
    if lb0 > math.log(huge()):
        raise OverflowRangeError(f"beta_0 for laguerre({a}) overflows")
    beta[0] = math.exp(lb0)
    beta[1:] = k[1:] * (k[1:] + a)
    return alpha, beta


def _hermite(n):
    alpha = np.zeros(n)
    beta = np.empty(n)
    beta[0] = math.sqrt(math.pi)
    beta[1:] = 0.5 * np.arange(1, n, dtype=float)
    return alpha, beta


def classical_coeffs(kind: ClassicalKind | str, n: int) -> RecurrenceTable:
    """First ``n`` recurrence coefficient pairs for a classical weight.

    Parameters
    ----------
    kind : ClassicalKind or str
        Weight family; a bare string names a parameterless family.
    n : int
        Number of coefficient pairs.

    Returns
    -------
    RecurrenceTable
    """
    if isinstance(kind, str):
        kind = ClassicalKind(kind)
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    fam = kind.family
    if fam == "legendre":
        alpha, beta = _legendre(n)
    elif fam == "legendre_shifted":
        alpha, beta = _legendre_shifted(n)
    elif fam.startswith("chebyshev"):
        alpha, beta = _chebyshev(n, int(fam[-1]))
    elif fam == "jacobi":
        alpha, beta = _jacobi(n, kind.a, kind.b)
    elif fam == "laguerre":
        alpha, beta = _laguerre(n, kind.a)
    else:
        alpha, beta = _hermite(n)
    return RecurrenceTable(alpha, beta)
