"""Recurrence coefficients of discrete measures.

Two routes to the same coefficients: the Stieltjes bootstrap, which
alternates the inner-product formulas for (alpha_k, beta_k) with the
recurrence itself, and a Lanczos-type orthogonal reduction of the
bordered node/weight matrix.  The bootstrap can turn unstable once k
grows past a measure-dependent point; the reduction does not, at the
price of more arithmetic.  The choice stays with the caller.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DiscreteMeasure,
    OutOfRangeError,
    OverflowRangeError,
    RecurrenceTable,
    UnderflowRangeError,
    huge,
    tiny,
)

__all__ = ["stieltjes", "lanczos_reduce", "discrete_chebyshev_reference"]


def stieltjes(n: int, d: DiscreteMeasure) -> RecurrenceTable:
    """Stieltjes bootstrap for the first ``n`` coefficient pairs of a
    discrete measure.

    Builds the orthogonal polynomials degree by degree on the support
    points, reading alpha_k and beta_k off the discrete inner products.
    Impending over/underflow of the squared norms raises with the
    offending index; rescaling the input weights is the usual remedy.
    """
    if not 1 <= n <= d.N:
        raise OutOfRangeError(f"need 1 <= n <= {d.N}, got n = {n}")
    x = d.nodes
    w = d.weights
    alpha = np.zeros(n)
    beta = np.zeros(n)
    s0 = float(np.sum(w))
    beta[0] = s0
    alpha[0] = float(np.sum(w * x)) / s0
    if n == 1:
        return RecurrenceTable(alpha, beta)

    wsum = abs(s0)
    lo = tiny() * wsum
    hi = huge() / max(wsum, 1.0)
    p1 = np.zeros_like(x)
    p2 = np.ones_like(x)
    for k in range(n - 1):
        p0, p1 = p1, p2
        p2 = (x - alpha[k]) * p1 - beta[k] * p0
        t = w * p2 * p2
        s1 = float(np.sum(t))
        s2 = float(np.sum(t * x))
        if abs(s1) < lo:
            raise UnderflowRangeError("squared norm about to underflow", index=k + 1)
        if abs(s1) > hi or not np.all(np.abs(p2) < hi):
            raise OverflowRangeError("polynomial values about to overflow", index=k + 1)
        alpha[k + 1] = s2 / s1
        beta[k + 1] = s1 / s0
        s0 = s1
    return RecurrenceTable(alpha, beta)


def lanczos_reduce(n: int, d: DiscreteMeasure) -> RecurrenceTable:
    """Lanczos-type orthogonal reduction of a discrete measure.

    Mathematically the same output as :func:`stieltjes`, but stable for
    all n <= N.  The node/weight data are viewed as a bordered diagonal
    matrix orthogonally similar to the tridiagonal of the recurrence
    coefficients; nodes are folded in one at a time by a sweep of Givens
    rotations (the rotation-based update never divides by a polynomial
    value, which is where the bootstrap loses accuracy).

    Sweep detail: two work vectors hold the evolving diagonal (seeded
    with the nodes) and the squared first-row couplings (seeded with the
    first weight).  Folding in node i+1 with weight w_{i+1} chases one
    rotation through positions 0..i+1, carrying the rotated coupling
    ``pi`` and the displacement ``t`` forward; each position updates its
    diagonal entry in place and swaps its coupling for gam * (old + pi).
    """
    if not 1 <= n <= d.N:
        raise OutOfRangeError(f"need 1 <= n <= {d.N}, got n = {n}")
    N = d.N
    diag = [float(v) for v in d.nodes]
    coup = [0.0] * N
    coup[0] = float(d.weights[0])
    for i in range(N - 1):
        pi = float(d.weights[i + 1])
        gam = 1.0
        sig = 0.0
        t = 0.0
        xlam = float(d.nodes[i + 1])
        for k in range(i + 2):
            rho = coup[k] + pi
            tmp = gam * rho
            tsig = sig
            if rho <= 0.0:
                gam = 1.0
                sig = 0.0
            else:
                gam = coup[k] / rho
                sig = pi / rho
            tk = sig * (diag[k] - xlam) - gam * t
            diag[k] -= tk - t
            t = tk
            if sig <= 0.0:
                pi = tsig * coup[k]
            else:
                pi = t * t / sig
            coup[k] = tmp
    return RecurrenceTable(np.array(diag[:n]), np.array(coup[:n]))


def discrete_chebyshev_reference(N: int) -> RecurrenceTable:
    """Exact coefficients for the N-point equal-weight measure on the
    uniform grid x_k = -1 + 2(k-1)/(N-1), w_k = 2/N (a test oracle).

    All alphas vanish; beta_0 = 2 and
    beta_k = (1 + 1/(N-1))^2 (1 - (k/N)^2) / (4 - k^{-2}).
    """
    if N < 2:
        raise OutOfRangeError(f"need N >= 2, got {N}")
    alpha = np.zeros(N)
    beta = np.empty(N)
    beta[0] = 2.0
    k = np.arange(1, N, dtype=float)
    beta[1:] = (1.0 + 1.0 / (N - 1)) ** 2 * (1.0 - (k / N) ** 2) / (4.0 - 1.0 / (k * k))
    return RecurrenceTable(alpha, beta)
