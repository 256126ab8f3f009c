"""Shared domain types, validation, and the error taxonomy.

Every quantity in this package is expressed through a handful of value
types: a table of three-term recurrence coefficients, a description of a
measure (continuous components plus point masses), a finite discrete
measure, a quadrature rule, and a sequence of complex backward-recurrence
values.  All of them are immutable after construction and safe to share
across threads.

Machine constants are funneled through :func:`working_eps`,
:func:`tiny` and :func:`huge`; no other module hard-codes them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

RECORD_VERSION = 1


def working_eps() -> float:
    """Working-precision machine epsilon (binary64)."""
    return float(np.finfo(np.float64).eps)


def tiny() -> float:
    """Smallest positive normal number at working precision."""
    return float(np.finfo(np.float64).tiny)


def huge() -> float:
    """Largest finite number at working precision."""
    return float(np.finfo(np.float64).max)


# ---------------------------------------------------------------------------
# Error taxonomy
# ---------------------------------------------------------------------------

class ErrorKind(Enum):
    """Classification of every failure mode raised by this package."""

    OUT_OF_RANGE = "OutOfRange"
    OVERFLOW = "Overflow"
    UNDERFLOW = "Underflow"
    NON_CONVERGENCE = "NonConvergence"
    INVALID_OPTION = "InvalidOption"
    SINGULAR_SYSTEM = "SingularSystem"


class OrthogenError(Exception):
    """Base error; ``kind`` identifies the failure class, ``index`` the
    coefficient or component index where it was detected (if any)."""

    kind: ErrorKind

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index

    def __str__(self):
        base = super().__str__()
        if self.index is not None:
            return f"{base} (index {self.index})"
        return base


class OutOfRangeError(OrthogenError):
    kind = ErrorKind.OUT_OF_RANGE


class OverflowRangeError(OrthogenError):
    kind = ErrorKind.OVERFLOW


class UnderflowRangeError(OrthogenError):
    kind = ErrorKind.UNDERFLOW


class NonConvergenceError(OrthogenError):
    kind = ErrorKind.NON_CONVERGENCE


class InvalidOptionError(OrthogenError):
    kind = ErrorKind.INVALID_OPTION


class SingularSystemError(OrthogenError):
    kind = ErrorKind.SINGULAR_SYSTEM


def _readonly(a) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True).reshape(-1)
    out.flags.writeable = False
    return out


# ---------------------------------------------------------------------------
# Recurrence tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """Coefficients (alpha_k, beta_k), k = 0..n-1, of the monic three-term
    recurrence pi_{k+1}(t) = (t - alpha_k) pi_k(t) - beta_k pi_{k-1}(t).

    ``beta[0]`` always carries the total mass of the measure.
    """

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _readonly(self.alpha))
        object.__setattr__(self, "beta", _readonly(self.beta))
        if self.alpha.size != self.beta.size:
            raise OutOfRangeError(
                f"alpha and beta lengths differ: {self.alpha.size} vs {self.beta.size}")
        if self.alpha.size < 1:
            raise OutOfRangeError("a recurrence table needs at least one coefficient pair")
        if not (np.all(np.isfinite(self.alpha)) and np.all(np.isfinite(self.beta))):
            raise OverflowRangeError("non-finite entry in recurrence table")

    @property
    def n(self) -> int:
        return int(self.alpha.size)

    def truncated(self, n: int) -> "RecurrenceTable":
        """First ``n`` coefficient pairs as a new table."""
        if not 1 <= n <= self.n:
            raise OutOfRangeError(f"cannot truncate table of length {self.n} to {n}")
        return RecurrenceTable(self.alpha[:n], self.beta[:n])

    def is_symmetric(self) -> bool:
        """True when all alpha_k vanish (measure symmetric about 0)."""
        return bool(np.all(self.alpha == 0.0))

    def to_record(self) -> dict:
        return {
            "record": "recurrence_table",
            "version": RECORD_VERSION,
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
        }

    @staticmethod
    def from_record(rec: dict) -> "RecurrenceTable":
        _check_record(rec, "recurrence_table")
        return RecurrenceTable(np.asarray(rec["alpha"]), np.asarray(rec["beta"]))


def validate_table(t: RecurrenceTable, positive: bool = True) -> RecurrenceTable:
    """Check table invariants and return the table unchanged.

    With ``positive`` set, every beta_k must be strictly positive (the
    defining property for a positive measure); pass ``positive=False``
    for tables of indefinite, sign-changing measures.
    """
    if t.alpha.size != t.beta.size:
        raise OutOfRangeError("alpha/beta length mismatch")
    if not (np.all(np.isfinite(t.alpha)) and np.all(np.isfinite(t.beta))):
        raise OverflowRangeError("non-finite entry in recurrence table")
    if positive and not np.all(t.beta > 0.0):
        k = int(np.argmax(t.beta <= 0.0))
        raise InvalidOptionError(
            f"beta[{k}] = {t.beta[k]} not positive for a positive measure", index=k)
    return t


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasureComponent:
    """One continuous component: a weight function on an interval.

    ``weight`` maps an ndarray of abscissae to weight values; ``left`` may
    be ``-inf`` and ``right`` ``+inf``.  ``hint`` optionally names the
    discretization a caller-supplied rule intends for this component.
    """

    left: float
    right: float
    weight: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hint: Optional[str] = None

    def __post_init__(self):
        if not self.left < self.right:
            raise InvalidOptionError(f"empty component interval [{self.left}, {self.right}]")


@dataclass(frozen=True)
class PointMass:
    x: float
    y: float


@dataclass(frozen=True)
class MeasureSpec:
    """A measure: continuous components plus point masses."""

    components: tuple = ()
    masses: tuple = ()
    indefinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "masses", tuple(self.masses))
        xs = [m.x for m in self.masses]
        if len(set(xs)) != len(xs):
            raise InvalidOptionError("point-mass abscissae must be pairwise distinct")
        if not self.indefinite and any(m.y <= 0 for m in self.masses):
            raise InvalidOptionError("point-mass jumps must be positive")
        for i, c in enumerate(self.components):
            if np.isneginf(c.left) and i != 0:
                raise InvalidOptionError(
                    "an interval extending to -inf must be the first component")
            if np.isposinf(c.right) and i != len(self.components) - 1:
                raise InvalidOptionError(
                    "an interval extending to +inf must be the last component")

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def p(self) -> int:
        return len(self.masses)


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finite node/weight pairs (x_k, w_k) defining a discrete inner product."""

    nodes: np.ndarray
    weights: np.ndarray
    indefinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nodes", _readonly(self.nodes))
        object.__setattr__(self, "weights", _readonly(self.weights))
        if self.nodes.size != self.weights.size:
            raise OutOfRangeError("node and weight arrays must have equal length")
        if not self.indefinite and np.any(self.weights < 0.0):
            raise InvalidOptionError("discrete weights must be nonnegative")

    @property
    def N(self) -> int:
        return int(self.nodes.size)


# ---------------------------------------------------------------------------
# Quadrature rules and complex sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes (strictly ascending), weights, and a declared degree of
    exactness.  ``positive`` is cleared for Christoffel-type rules whose
    prescribed nodes lie outside the support of the measure."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    positive: bool = True

    def __post_init__(self):
        object.__setattr__(self, "nodes", _readonly(self.nodes))
        object.__setattr__(self, "weights", _readonly(self.weights))
        if self.nodes.size != self.weights.size:
            raise OutOfRangeError("node and weight arrays must have equal length")
        if not (np.all(np.isfinite(self.nodes)) and np.all(np.isfinite(self.weights))):
            raise OverflowRangeError("non-finite entry in quadrature rule")
        if np.any(np.diff(self.nodes) <= 0.0):
            raise SingularSystemError("quadrature nodes must be strictly ascending")

    @property
    def n(self) -> int:
        return int(self.nodes.size)

    def to_record(self) -> dict:
        return {
            "record": "quadrature_rule",
            "version": RECORD_VERSION,
            "nodes": self.nodes.tolist(),
            "weights": self.weights.tolist(),
            "exactness": int(self.exactness),
            "positive": bool(self.positive),
        }

    @staticmethod
    def from_record(rec: dict) -> "QuadratureRule":
        _check_record(rec, "quadrature_rule")
        return QuadratureRule(np.asarray(rec["nodes"]), np.asarray(rec["weights"]),
                              int(rec["exactness"]), bool(rec.get("positive", True)))


def validate_rule(rule: QuadratureRule, beta0: float) -> QuadratureRule:
    """Check rule invariants against the mass of the originating table."""
    if rule.positive and np.any(rule.weights <= 0.0):
        k = int(np.argmax(rule.weights <= 0.0))
        raise InvalidOptionError("nonpositive weight in positive quadrature rule", index=k)
    s = float(np.sum(rule.weights))
    if abs(s - beta0) > 8.0 * working_eps() * abs(beta0):
        raise InvalidOptionError(
            f"weights sum to {s!r}, expected total mass {beta0!r}")
    return rule


@dataclass(frozen=True, eq=False)
class ComplexSequence:
    """Values rho_k(z) or K_k(z), k = 0..n, produced by backward recurrence
    at the complex point ``z``; ``nu_used`` records the start index that
    achieved convergence."""

    values: np.ndarray
    z: complex
    nu_used: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.array(self.values, dtype=np.complex128))
        self.values.flags.writeable = False

    @property
    def n(self) -> int:
        return int(self.values.size) - 1


# ---------------------------------------------------------------------------
# Record serialization (text form keeps full round-trip precision)
# ---------------------------------------------------------------------------

def _check_record(rec: dict, kind: str):
    if rec.get("record") != kind:
        raise InvalidOptionError(f"expected a {kind!r} record, got {rec.get('record')!r}")
    if rec.get("version") != RECORD_VERSION:
        raise InvalidOptionError(f"unsupported record version {rec.get('version')!r}")


def dump_record(obj) -> str:
    """One-line JSON text for a record-bearing object (lossless floats)."""
    return json.dumps(obj.to_record(), separators=(", ", ": "))


def load_record(text: str):
    """Inverse of :func:`dump_record`; dispatches on the record tag."""
    rec = json.loads(text)
    kind = rec.get("record")
    if kind == "recurrence_table":
        return RecurrenceTable.from_record(rec)
    if kind == "quadrature_rule":
        return QuadratureRule.from_record(rec)
    raise InvalidOptionError(f"unknown record tag {kind!r}")
