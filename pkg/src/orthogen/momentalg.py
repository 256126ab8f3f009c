"""Moment-based generation of recurrence coefficients.

The central routine is :func:`modified_chebyshev`, which maps 2n modified
moments (taken against a known reference family of monic polynomials)
into n coefficient pairs.  With a zero reference it degenerates to the
classical moment algorithm, whose severe ill-conditioning is kept on
purpose as a demonstration path.

Two families of moment builders are provided: the elliptic-type weight
[(1 - w^2 t^2)(1 - t^2)]^{-1/2} on (-1,1), and the logarithmic weight
t^sigma ln(1/t) on (0,1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classical import LEGENDRE_SHIFTED, classical_coeffs
from .core import (
    InvalidOptionError,
    NonConvergenceError,
    OutOfRangeError,
    OverflowRangeError,
    RecurrenceTable,
    UnderflowRangeError,
    huge,
    tiny,
)

__all__ = [
    "MomentVector", "modified_chebyshev",
    "elliptic_modified_moments", "elliptic_ordinary_moments",
    "log_weight_moments",
]


@dataclass(frozen=True, eq=False)
class MomentVector:
    """2n moments plus the recurrence pairs of the defining polynomials.

    ``reference`` holds the 2n-1 leading coefficient pairs (a_k, b_k) of
    the monic family the moments were taken against; ``None`` means
    ordinary power moments (a_k = b_k = 0).
    """

    values: np.ndarray
    reference: Optional[RecurrenceTable] = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64).reshape(-1)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if vals.size < 2 or vals.size % 2 != 0:
            raise OutOfRangeError(f"moment count must be even and >= 2, got {vals.size}")
        if self.reference is not None and self.reference.n != vals.size - 1:
            raise OutOfRangeError(
                f"reference table must hold {vals.size - 1} pairs, got {self.reference.n}")

    @property
    def n(self) -> int:
        return int(self.values.size) // 2

    def to_record(self) -> dict:
        rec = {"record": "moment_vector", "version": 1, "values": self.values.tolist()}
        if self.reference is not None:
            rec["reference"] = self.reference.to_record()
        return rec

    @staticmethod
    def from_record(rec: dict) -> "MomentVector":
        ref = rec.get("reference")
        return MomentVector(np.asarray(rec["values"]),
                            RecurrenceTable.from_record(ref) if ref else None)


def modified_chebyshev(n: int, m: MomentVector, scale: float = 1.0):
    """Map 2n (modified) moments to n recurrence coefficient pairs.

    Parameters
    ----------
    n : int
        Number of coefficient pairs wanted; ``m`` must hold 2n moments.
    m : MomentVector
        Moments and the reference recurrence pairs (absent for ordinary
        moments).
    scale : float
        Optional guard against under/overflow on machines with a narrow
        exponent range: the moments are multiplied by ``scale`` going in,
        and beta_0 and the returned norms are divided back out.

    Returns
    -------
    (RecurrenceTable, ndarray)
        The coefficient table and normsq, where normsq[k] is the squared
        norm of the k-th monic orthogonal polynomial.
    """
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if m.n < n:
        raise OutOfRangeError(f"need {2 * n} moments, got {2 * m.n}")
    nu = m.values[:2 * n] * scale
    if m.reference is None:
        a = np.zeros(max(2 * n - 1, 1))
        b = np.zeros(max(2 * n - 1, 1))
    else:
        a = m.reference.alpha[:2 * n - 1]
        b = m.reference.beta[:2 * n - 1]
    if abs(nu[0]) < tiny():
        raise InvalidOptionError("leading moment is below the underflow threshold")

    alpha = np.zeros(n)
    beta = np.zeros(n)
    normsq = np.zeros(n)
    alpha[0] = a[0] + nu[1] / nu[0]
    beta[0] = nu[0]
    normsq[0] = nu[0]

    s_prev2 = np.zeros(2 * n)   # sigma_{k-2, .}
    s_prev = nu.copy()          # sigma_{k-1, .}
    lo, hi = huge(), tiny()
    for k in range(1, n):
        s_cur = np.zeros(2 * n)
        ls = slice(k, 2 * n - k)
        l = np.arange(k, 2 * n - k)
        s_cur[ls] = (s_prev[k + 1: 2 * n - k + 1]
                     - (alpha[k - 1] - a[l]) * s_prev[ls]
                     - beta[k - 1] * s_prev2[ls]
                     + b[l] * s_prev[k - 1: 2 * n - k - 1])
        skk = s_cur[k]
        if abs(skk) < tiny():
            raise UnderflowRangeError(
                "squared norm about to underflow", index=k)
        if abs(skk) > huge() * 2.0 ** -52:
            raise OverflowRangeError(
                "squared norm about to overflow", index=k)
        alpha[k] = a[k] + s_cur[k + 1] / skk - s_prev[k] / s_prev[k - 1]
        beta[k] = skk / s_prev[k - 1]
        normsq[k] = skk
        s_prev2, s_prev = s_prev, s_cur

    beta[0] /= scale
    return RecurrenceTable(alpha, beta), normsq / scale


# ---------------------------------------------------------------------------
# Elliptic-type weight  [(1 - w^2 t^2)(1 - t^2)]^{-1/2}
# ---------------------------------------------------------------------------

_COS_START = 64
_COS_DOUBLINGS = 20


def _fourier_cos_coeffs(nmax: int, omsq: float, eps: float) -> np.ndarray:
    """C_r, r = 0..nmax, in the half-range cosine expansion of
    (1 - omsq sin^2 theta)^{-1/2}, by a midpoint cosine transform with
    point-count doubling until successive values agree to ``eps``."""
    N = _COS_START
    prev = None
    for _ in range(_COS_DOUBLINGS + 1):
        # midpoint rule on [0, pi]; the integrand is smooth and pi-periodic,
        # so the error decays geometrically in N
        theta = (np.arange(N) + 0.5) * (math.pi / N)
        f = 1.0 / np.sqrt(1.0 - omsq * np.sin(theta) ** 2)
        r = np.arange(nmax + 1)
        cur = (np.cos(np.outer(r, 2.0 * theta)) @ f) / N
        if prev is not None:
            ref = np.maximum(np.abs(cur), np.abs(cur[0]) * 2 ** -80)
            if np.all(np.abs(cur - prev) <= eps * ref):
                return cur
        prev = cur
        N *= 2
    raise NonConvergenceError(
        f"cosine coefficients did not settle to {eps} within "
        f"{_COS_DOUBLINGS} doublings (omsq = {omsq})")


def elliptic_modified_moments(n: int, omsq: float, eps: float) -> MomentVector:
    """2n modified moments of the elliptic-type weight against monic
    first-kind Chebyshev polynomials; odd-index moments vanish."""
    if not 0.0 <= omsq < 1.0:
        raise InvalidOptionError(f"need 0 <= omsq < 1, got {omsq}")
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    C = _fourier_cos_coeffs(n - 1, omsq, eps)
    nu = np.zeros(2 * n)
    nu[0] = math.pi * C[0]
    mm = np.arange(1, n)
    nu[2 * mm] = (-1.0) ** mm * math.pi * 2.0 ** (1 - 2 * mm) * C[mm]
    return MomentVector(nu, classical_coeffs("chebyshev1", 2 * n - 1))


def _gamma_row(m: int) -> np.ndarray:
    g = np.empty(m + 1)
    g[0] = 1.0
    for r in range(1, m):
        g[r] = (2 * m + 1 - r) / r * g[r - 1]
    g[m] = (m + 1) / (2.0 * m) * g[m - 1]
    return g


def elliptic_ordinary_moments(n: int, omsq: float, eps: float) -> MomentVector:
    """2n ordinary power moments of the elliptic-type weight."""
    if not 0.0 <= omsq < 1.0:
        raise InvalidOptionError(f"need 0 <= omsq < 1, got {omsq}")
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    C = _fourier_cos_coeffs(n - 1, omsq, eps)
    mu = np.zeros(2 * n)
    mu[0] = math.pi * C[0]
    for m in range(1, n):
        g = _gamma_row(m)
        signs = (-1.0) ** np.arange(m + 1)
        mu[2 * m] = (-1.0) ** m * math.pi * 2.0 ** (1 - 2 * m) * np.dot(signs * g, C[m::-1])
    return MomentVector(mu, None)


# ---------------------------------------------------------------------------
# Logarithmic weight  t^sigma ln(1/t) on (0,1]
# ---------------------------------------------------------------------------

def log_weight_moments(n: int, sigma: float, integer_sigma: bool = False,
                       modified: bool = True) -> MomentVector:
    """2n moments of t^sigma ln(1/t) on (0,1].

    Ordinary moments are 1/(sigma+1+k); modified moments are taken against
    monic shifted Legendre polynomials and come in two closed forms, one
    for integer sigma < k and one for everything else.
    """
    if sigma <= -1.0:
        raise InvalidOptionError(f"need sigma > -1, got {sigma}")
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if integer_sigma and sigma != round(sigma):
        raise InvalidOptionError(f"integer_sigma set but sigma = {sigma} is not integral")

    k = np.arange(2 * n, dtype=float)
    if not modified:
        return MomentVector(1.0 / (sigma + 1.0 + k), None)

    nu = np.empty(2 * n)
    c = 1.0  # k!^2 / (2k)!
    s1 = sigma + 1.0
    isig = int(round(sigma))
    for j in range(2 * n):
        if integer_sigma and 0 <= isig < j:
            # (-1)^(j-sigma) sigma!^2 (j-sigma-1)! / (j+sigma+1)!
            v = (-1.0) ** (j - isig) * math.exp(
                2.0 * math.lgamma(isig + 1.0)
                + math.lgamma(j - isig) - math.lgamma(j + isig + 2.0))
        else:
            r = np.arange(1, j + 1, dtype=float)
            terms = 1.0 / (s1 + r) - 1.0 / (s1 - r)
            v = (1.0 / s1) * (1.0 / s1 + terms.sum()) * np.prod((s1 - r) / (s1 + r))
        nu[j] = c * v
        c *= 0.5 * (j + 1.0) / (2.0 * j + 1.0)

    return MomentVector(nu, classical_coeffs(LEGENDRE_SHIFTED, 2 * n - 1))
