"""Multiple-component discretization of continuous and mixed measures.

The driver :func:`mcdis` approximates each continuous component of a
measure by an N_0-point discrete rule, appends the point masses, runs a
discrete engine (Stieltjes or Lanczos) on the union, and grows N_0
through a fixed schedule until every beta coefficient settles to the
requested tolerance.  :func:`mccheb` applies the same iteration to
discretized modified moments driven through the modified Chebyshev
algorithm instead of inner products.

A general-purpose discretizer based on transformed Fejer rules is
provided for weights with no obvious natural discretization; it only
requires the component intervals to be disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .core import (
    DiscreteMeasure,
    InvalidOptionError,
    MeasureSpec,
    NonConvergenceError,
    OrthogenError,
    OutOfRangeError,
    QuadratureRule,
    RecurrenceTable,
    tiny,
)
from .discrete import lanczos_reduce, stieltjes
from .momentalg import MomentVector, modified_chebyshev
from .quadrule import polynomial_eval

__all__ = [
    "DiscretizationPolicy", "DiscretizationReport", "fejer_rule",
    "gp_discretizer", "mcdis", "mccheb", "jacobi_point_mass_reference",
]

_ENGINES = {"stieltjes": stieltjes, "lanczos": lanczos_reduce}


@dataclass(frozen=True)
class DiscretizationPolicy:
    """Knobs of the discretization iteration.

    ``quad(N, i)`` must return the N-point nodes and weights discretizing
    the inner product on component i (weight function folded into the
    weights); leave it ``None`` for the general-purpose Fejer path.
    ``idelta`` is 2 when the per-component rules are Gauss-quality (degree
    of exactness about twice the point count), else 1.
    """

    eps: float
    n0_max: int = 500
    idelta: int = 1
    engine: str = "lanczos"
    quad: Optional[Callable[[int, int], Tuple[np.ndarray, np.ndarray]]] = None

    def __post_init__(self):
        if not self.eps > 0.0:
            raise InvalidOptionError(f"need eps > 0, got {self.eps}")
        if self.idelta not in (1, 2):
            raise InvalidOptionError(f"idelta must be 1 or 2, got {self.idelta}")
        if self.engine not in _ENGINES:
            raise InvalidOptionError(f"engine must be one of {sorted(_ENGINES)}")


@dataclass(frozen=True)
class DiscretizationReport:
    ncap: int
    kount: int
    warnings: tuple = ()


# ---------------------------------------------------------------------------
# Fejer rule and the general-purpose discretizer
# ---------------------------------------------------------------------------

def fejer_rule(N: int) -> QuadratureRule:
    """N-point Fejer (first kind) rule on [-1,1]; exactness N-1.

    Nodes are the Chebyshev points cos((2r-1)pi/2N); the weights follow
    from the closed trigonometric sum and are all positive.
    """
    if N < 1:
        raise OutOfRangeError(f"need N >= 1, got {N}")
    r = np.arange(1, N + 1)
    theta = (2 * r - 1) * math.pi / (2 * N)
    nodes = np.cos(theta)
    m = np.arange(1, N // 2 + 1)
    if m.size:
        sums = np.cos(2.0 * np.outer(theta, m)) @ (1.0 / (4.0 * m * m - 1.0))
    else:
        sums = np.zeros(N)
    weights = (2.0 / N) * (1.0 - 2.0 * sums)
    order = np.argsort(nodes, kind="stable")
    return QuadratureRule(nodes[order], weights[order], N - 1)


def _map_component(left: float, right: float, xf: np.ndarray):
    """Map Fejer nodes on [-1,1] to the component interval; returns the
    transformed abscissae and the Jacobian factor phi'."""
    linf = np.isneginf(left)
    rinf = np.isposinf(right)
    if not linf and not rinf:
        half = 0.5 * (right - left)
        return left + half * (xf + 1.0), np.full_like(xf, half)
    if linf and rinf:
        den = 1.0 - xf * xf
        return xf / den, (1.0 + xf * xf) / (den * den)
    if not linf:  # [a, +inf)
        return left + (1.0 + xf) / (1.0 - xf), 2.0 / (1.0 - xf) ** 2
    # (-inf, b]
    return right - (1.0 - xf) / (1.0 + xf), 2.0 / (1.0 + xf) ** 2


def gp_discretizer(N: int, i: int, spec: MeasureSpec,
                   _fejer: Optional[QuadratureRule] = None) -> DiscreteMeasure:
    """General-purpose discretization of component ``i``: the N-point
    Fejer rule carried onto the component interval by a monotone map
    (linear for finite intervals, rational for infinite ones), with the
    component weight function and the map Jacobian folded into the
    weights.  Component intervals must be disjoint."""
    comps = spec.components
    if not 0 <= i < len(comps):
        raise OutOfRangeError(f"component index {i} out of range")
    for a, b in zip(comps[:-1], comps[1:]):
        if a.right > b.left:
            raise InvalidOptionError(
                "general-purpose discretization needs disjoint component intervals")
    comp = comps[i]
    if np.isneginf(comp.left) and np.isposinf(comp.right) and len(comps) > 1:
        raise InvalidOptionError(
            "a doubly infinite interval must be the only component")
    if comp.weight is None:
        raise InvalidOptionError(f"component {i} has no weight evaluator")
    fej = _fejer if _fejer is not None and _fejer.n == N else fejer_rule(N)
    x, dphi = _map_component(comp.left, comp.right, fej.nodes)
    w = fej.weights * np.asarray(comp.weight(x), dtype=float) * dphi
    return DiscreteMeasure(x, w, indefinite=True)


# ---------------------------------------------------------------------------
# The discretization iteration
# ---------------------------------------------------------------------------

def _schedule(n: int, idelta: int, n0_max: int):
    """Yield (s, N0) pairs: N0_0 = 1 + floor((2n-1)/idelta), increment 1,
    then 2^(s//5) * n per step, stopping beyond n0_max."""
    n0 = 1 + (2 * n - 1) // idelta
    s = 0
    while n0 <= n0_max:
        yield s, n0
        s += 1
        n0 += 1 if s == 1 else (1 << (s // 5)) * n


def _discretize_once(n0: int, spec: MeasureSpec, policy: DiscretizationPolicy):
    """One combined discrete measure at resolution n0: every component
    discretized with n0 points, masses appended."""
    warnings = []
    xs, ws = [], []
    fej = fejer_rule(n0) if policy.quad is None and spec.m > 0 else None
    for i in range(spec.m):
        if policy.quad is not None:
            try:
                x, w = policy.quad(n0, i)
            except OrthogenError as exc:
                exc.index = i
                raise
            x = np.asarray(x, dtype=float)
            w = np.asarray(w, dtype=float)
            if x.size != n0 or w.size != n0:
                raise InvalidOptionError(
                    f"component {i} discretizer returned {x.size} points, wanted {n0}",
                    index=i)
        else:
            d = gp_discretizer(n0, i, spec, _fejer=fej)
            x, w = d.nodes, np.array(d.weights)
        small = np.abs(w) < tiny()
        if np.any(small & (w != 0.0)):
            warnings.append(
                f"component {i}: {int(np.count_nonzero(small & (w != 0.0)))} "
                f"weights below the underflow threshold clamped to zero")
            w = np.where(small, 0.0, w)
        xs.append(x)
        ws.append(w)
    if spec.p:
        xs.append(np.array([pm.x for pm in spec.masses], dtype=float))
        ws.append(np.array([pm.y for pm in spec.masses], dtype=float))
    nodes = np.concatenate(xs) if xs else np.empty(0)
    weights = np.concatenate(ws) if ws else np.empty(0)
    return DiscreteMeasure(nodes, weights, indefinite=True), warnings


def mcdis(n: int, spec: MeasureSpec, policy: DiscretizationPolicy):
    """Recurrence coefficients of a continuous or mixed measure by
    iterated discretization.

    Parameters
    ----------
    n : int
        Number of coefficient pairs wanted.
    spec : MeasureSpec
        The measure (components and point masses).
    policy : DiscretizationPolicy
        Tolerance, resolution cap, schedule exponent, engine, and the
        per-component discretizer.

    Returns
    -------
    (RecurrenceTable, DiscretizationReport)
        ``report.kount`` counts iterations from the first pass that
        satisfies the stopping test; ``report.ncap`` is the resolution
        that achieved it.

    Notes
    -----
    The stopping test requires |beta_k - beta_k_prev| <= eps * |beta_k|
    for every k (absolute value on the right so that sign-changing
    measures still terminate).  The first pass only seeds the comparison;
    convergence is declared at the earliest s >= 1 satisfying the test.
    """
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if spec.m == 0 and spec.p == 0:
        raise InvalidOptionError("measure has no components and no masses")
    if policy.n0_max < 2 * n:
        raise InvalidOptionError(
            f"resolution cap {policy.n0_max} cannot resolve {n} coefficients")
    engine = _ENGINES[policy.engine]
    prev_beta = None
    warnings: list = []
    for s, n0 in _schedule(n, policy.idelta, policy.n0_max):
        d, warns = _discretize_once(n0, spec, policy)
        warnings.extend(warns)
        table = engine(n, d)
        if prev_beta is not None and np.all(
                np.abs(table.beta - prev_beta) <= policy.eps * np.abs(table.beta)):
            return table, DiscretizationReport(ncap=n0, kount=s, warnings=tuple(warnings))
        prev_beta = table.beta
    raise NonConvergenceError(
        f"discretization not converged within resolution cap {policy.n0_max}",
        index=policy.n0_max)


def mccheb(n: int, spec: MeasureSpec, policy: DiscretizationPolicy,
           reference: RecurrenceTable):
    """Discretized modified Chebyshev algorithm.

    Approximates the 2n modified moments against the monic family defined
    by ``reference`` (2n-1 pairs) on the same discretization schedule as
    :func:`mcdis`, mapping each moment set through the modified Chebyshev
    algorithm.  Convergence is tested on the betas, never on the moments
    themselves.
    """
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if reference.n < 2 * n - 1:
        raise OutOfRangeError(
            f"reference table must hold {2 * n - 1} pairs, got {reference.n}")
    if policy.n0_max < 2 * n:
        raise InvalidOptionError(
            f"resolution cap {policy.n0_max} cannot resolve {n} coefficients")
    ref = reference.truncated(2 * n - 1) if reference.n > 2 * n - 1 else reference
    prev_beta = None
    warnings: list = []
    for s, n0 in _schedule(n, policy.idelta, policy.n0_max):
        d, warns = _discretize_once(n0, spec, policy)
        warnings.extend(warns)
        nu = np.empty(2 * n)
        pm1 = np.zeros(d.N)
        p = np.ones(d.N)
        nu[0] = np.sum(d.weights)
        for k in range(1, 2 * n):
            pm1, p = p, (d.nodes - ref.alpha[k - 1]) * p - ref.beta[k - 1] * pm1
            nu[k] = np.sum(d.weights * p)
        table, _ = modified_chebyshev(n, MomentVector(nu, ref))
        if prev_beta is not None and np.all(
                np.abs(table.beta - prev_beta) <= policy.eps * np.abs(table.beta)):
            return table, DiscretizationReport(ncap=n0, kount=s, warnings=tuple(warnings))
        prev_beta = table.beta
    raise NonConvergenceError(
        f"discretized moments not converged within resolution cap {policy.n0_max}",
        index=policy.n0_max)


# ---------------------------------------------------------------------------
# Closed-form oracle: Jacobi weight with a mass at the left endpoint
# ---------------------------------------------------------------------------

def jacobi_point_mass_reference(n: int, a: float, b: float, y: float) -> RecurrenceTable:
    """Exact coefficients for the normalized Jacobi weight on (-1,1) plus
    a point mass of jump ``y`` at -1 (a test oracle).

    The normalized weight integrates to 1, so beta_0 = 1 + y.  The
    remaining coefficients follow from the Jacobi ones through the
    correction factors c_k built on the cumulative products d_k.
    """
    if a <= -1.0 or b <= -1.0:
        raise InvalidOptionError("jacobi parameters must exceed -1")
    if y < 0.0:
        raise InvalidOptionError(f"mass jump must be nonnegative, got {y}")
    from .classical import classical_coeffs, jacobi as jacobi_kind

    J = classical_coeffs(jacobi_kind(a, b), n + 1)
    alJ = J.alpha
    beJ = J.beta.copy()
    beJ[0] = 1.0  # normalized weight
    alpha = np.empty(n)
    beta = np.empty(n)
    alpha[0] = (alJ[0] - y) / (1.0 + y)
    beta[0] = beJ[0] + y
    c_prev = 1.0 + y
    d = 1.0
    for k in range(1, n):
        if k > 1:
            d *= (b + k) * (a + b + k) / ((a + k - 1.0) * (k - 1.0))
        num = 1.0 + (b + k + 1.0) * (a + b + k + 1.0) / (k * (a + k)) * y * d
        c = num / (1.0 + y * d)
        alpha[k] = (alJ[k]
                    + 2.0 * k * (a + k) / ((a + b + 2.0 * k) * (a + b + 2.0 * k + 1.0))
                    * (c - 1.0)
                    + 2.0 * (b + k + 1.0) * (a + b + k + 1.0)
                    / ((a + b + 2.0 * k + 1.0) * (a + b + 2.0 * k + 2.0))
                    * (1.0 / c - 1.0))
        beta[k] = c / c_prev * beJ[k]
        c_prev = c
    return RecurrenceTable(alpha, beta)
