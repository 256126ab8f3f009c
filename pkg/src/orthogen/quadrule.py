"""Gauss, Gauss-Radau, and Gauss-Lobatto rules from recurrence tables.

The nodes of the n-point Gauss rule are the eigenvalues of the symmetric
tridiagonal matrix built from the coefficients (alphas on the diagonal,
square roots of the betas off it); the weights are beta_0 times the
squared first components of the normalized eigenvectors.  Radau and
Lobatto rules prescribe one or both extreme nodes by doctoring the last
diagonal entry (and, for Lobatto, the last off-diagonal) before calling
the same eigensolver.

The eigensolver is an implicit-shift QL iteration specialized to this
use: only the first eigenvector components are carried, never the full
eigenvector matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    InvalidOptionError,
    NonConvergenceError,
    OutOfRangeError,
    QuadratureRule,
    RecurrenceTable,
    SingularSystemError,
    working_eps,
)

__all__ = ["SymTridiagonal", "gauss_rule", "radau_rule", "lobatto_rule",
           "polynomial_eval"]

_MAX_SWEEPS = 30


@dataclass(frozen=True, eq=False)
class SymTridiagonal:
    """Jacobi matrix: diagonal of alphas, off-diagonal of sqrt(betas)."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", np.array(self.diag, dtype=float))
        object.__setattr__(self, "offdiag", np.array(self.offdiag, dtype=float))
        if self.offdiag.size != max(self.diag.size - 1, 0):
            raise OutOfRangeError("off-diagonal must be one shorter than the diagonal")

    @staticmethod
    def from_table(t: RecurrenceTable, n: int) -> "SymTridiagonal":
        if not 1 <= n <= t.n:
            raise OutOfRangeError(f"need 1 <= n <= {t.n}, got {n}")
        b = t.beta[1:n]
        if np.any(b < 0.0):
            k = int(np.argmax(b < 0.0)) + 1
            raise InvalidOptionError(f"beta[{k}] < 0: matrix would be complex", index=k)
        return SymTridiagonal(t.alpha[:n].copy(), np.sqrt(b))


def _ql_first_components(diag, offdiag, eps):
    """Eigenvalues of a symmetric tridiagonal plus the first components of
    its normalized eigenvectors, by implicit-shift QL with deflation.

    Returns (values, firstcomp), unsorted.  Raises NonConvergenceError
    with the eigenvalue index if 30 sweeps do not converge.
    """
    n = diag.size
    d = diag.astype(float).copy()
    e = np.zeros(n)
    e[: n - 1] = offdiag
    z = np.zeros(n)
    z[0] = 1.0
    if n == 1:
        return d, z

    for l in range(n):
        for sweep in range(_MAX_SWEEPS + 1):
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if sweep == _MAX_SWEEPS:
                raise NonConvergenceError(
                    f"eigenvalue {l} not converged in {_MAX_SWEEPS} sweeps", index=l)
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return d, z


def gauss_rule(n: int, t: RecurrenceTable, eps: float | None = None) -> QuadratureRule:
    """n-point Gauss rule for the measure behind ``t``.

    Parameters
    ----------
    n : int
        Number of nodes; ``t`` must hold at least n coefficient pairs
        with beta_k > 0 for 1 <= k < n.
    t : RecurrenceTable
    eps : float, optional
        Deflation tolerance for the eigensolver (defaults to the working
        epsilon).

    Returns
    -------
    QuadratureRule
        Ascending nodes, positive weights, degree of exactness 2n-1.
    """
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if eps is None:
        eps = working_eps()
    J = SymTridiagonal.from_table(t, n)
    vals, first = _ql_first_components(J.diag, J.offdiag, eps)
    order = np.argsort(vals, kind="stable")
    nodes = vals[order]
    weights = t.beta[0] * first[order] ** 2
    if n > 1:
        scale = max(abs(nodes[0]), abs(nodes[-1]), 1.0)
        if np.min(np.diff(nodes)) <= 4.0 * working_eps() * scale:
            raise SingularSystemError("coincident quadrature nodes after deflation")
    return QuadratureRule(nodes, weights, 2 * n - 1)


def polynomial_eval(t: RecurrenceTable, k: int, x):
    """Monic orthogonal polynomial pi_k at ``x`` by the forward recurrence.

    ``x`` may be real, complex, or an ndarray; degree k <= t.n.
    """
    if not 0 <= k <= t.n:
        raise OutOfRangeError(f"degree {k} out of range for table of length {t.n}")
    pm1 = 0.0
    p = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    for j in range(k):
        pm1, p = p, (x - t.alpha[j]) * p - t.beta[j] * pm1
    return p


def radau_rule(n: int, t: RecurrenceTable, x0: float) -> QuadratureRule:
    """(n+1)-point rule with one prescribed node ``x0``; exactness 2n.

    Requires n+1 coefficient pairs.  The last diagonal entry is replaced
    by x0 - beta_n pi_{n-1}(x0)/pi_n(x0).  For x0 at (or beyond) the edge
    of the support this is the Gauss-Radau (Christoffel-type) rule.
    """
    if t.n < n + 1:
        raise OutOfRangeError(f"need a table of length {n + 1}, got {t.n}")
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    p0 = 0.0
    p1 = 1.0
    for k in range(n):
        p0, p1 = p1, (x0 - t.alpha[k]) * p1 - t.beta[k] * p0
    if p1 == 0.0:
        raise SingularSystemError(f"pi_{n}({x0}) = 0: prescribed node is a Gauss node")
    alpha = t.alpha[: n + 1].copy()
    alpha[n] = x0 - t.beta[n] * p0 / p1
    rule = gauss_rule(n + 1, RecurrenceTable(alpha, t.beta[: n + 1]))
    return QuadratureRule(rule.nodes, rule.weights, 2 * n)


def lobatto_rule(n: int, t: RecurrenceTable, x0: float, xnp1: float) -> QuadratureRule:
    """(n+2)-point rule with both extreme nodes prescribed; exactness 2n+1.

    Requires n+2 coefficient pairs and x0 < xnp1.  The last diagonal and
    off-diagonal entries solve the 2x2 system that forces pi*_{n+2} to
    vanish at both prescribed points.
    """
    if t.n < n + 2:
        raise OutOfRangeError(f"need a table of length {n + 2}, got {t.n}")
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if not x0 < xnp1:
        raise InvalidOptionError(f"need x0 < xnp1, got {x0} >= {xnp1}")
    p0l = p0r = 0.0
    p1l = p1r = 1.0
    for k in range(n + 1):
        p0l, p1l = p1l, (x0 - t.alpha[k]) * p1l - t.beta[k] * p0l
        p0r, p1r = p1r, (xnp1 - t.alpha[k]) * p1r - t.beta[k] * p0r
    det = p1l * p0r - p1r * p0l
    if det == 0.0:
        raise SingularSystemError("prescribed endpoints make the bordering system singular")
    astar = (x0 * p1l * p0r - xnp1 * p1r * p0l) / det
    bstar = (xnp1 - x0) * p1l * p1r / det
    if bstar <= 0.0:
        raise InvalidOptionError(
            f"bordered off-diagonal would be imaginary (beta* = {bstar})")
    alpha = t.alpha[: n + 2].copy()
    beta = t.beta[: n + 2].copy()
    alpha[n + 1] = astar
    beta[n + 1] = bstar
    rule = gauss_rule(n + 2, RecurrenceTable(alpha, beta))
    return QuadratureRule(rule.nodes, rule.weights, 2 * n + 1)
