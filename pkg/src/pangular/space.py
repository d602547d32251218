"""Finite-dimensional real normed spaces, norm triples and radial power maps.

Vectors are plain 1-D ``numpy`` float arrays. The batch helpers (``norms``)
accept stacked vectors of shape ``(n, dim)`` and reduce over the last axis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSpace,
    NonFiniteCoordinate,
    TripleInfeasible,
    ZeroVector,
)

__all__ = [
    "NormKind",
    "SpaceSpec",
    "NormTriple",
    "parse_space",
    "as_vector",
    "norm",
    "norms",
    "validate_triple",
    "triple_of",
    "radial_transform",
]

# Floating norms of a collinear pair can miss |a-b| <= c <= a+b by a few ulps.
TRIPLE_REL_TOL = 1e-12


class NormKind(str, enum.Enum):
    LP = "LP"
    LINF = "LINF"
    WEIGHTED_L2 = "WEIGHTED_L2"
    EUCLIDEAN = "EUCLIDEAN"


@dataclass(frozen=True)
class SpaceSpec:
    kind: NormKind
    dim: int
    p_exponent: float | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind(self.kind))
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidSpace(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.kind is NormKind.LP:
            if self.p_exponent is None or not math.isfinite(self.p_exponent) or self.p_exponent < 1:
                raise InvalidSpace(f"LP norm needs exponent >= 1, got {self.p_exponent!r}")
            object.__setattr__(self, "p_exponent", float(self.p_exponent))
        elif self.p_exponent is not None:
            raise InvalidSpace(f"exponent only applies to LP spaces, not {self.kind.value}")
        if self.kind is NormKind.WEIGHTED_L2:
            if self.weights is None or len(self.weights) != self.dim:
                raise InvalidSpace("WEIGHTED_L2 needs exactly one weight per coordinate")
            w = tuple(float(v) for v in self.weights)
            if not all(math.isfinite(v) and v > 0 for v in w):
                raise InvalidSpace("weights must be positive and finite")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise InvalidSpace(f"weights only apply to WEIGHTED_L2 spaces, not {self.kind.value}")

    def is_ips(self) -> bool:
        """True when the norm comes from an inner product."""
        if self.kind in (NormKind.EUCLIDEAN, NormKind.WEIGHTED_L2):
            return True
        return self.kind is NormKind.LP and self.p_exponent == 2.0

    def to_syntax(self) -> str:
        if self.kind is NormKind.EUCLIDEAN:
            return f"l2:{self.dim}"
        if self.kind is NormKind.LINF:
            return f"linf:{self.dim}"
        if self.kind is NormKind.LP:
            return f"lp:{self.p_exponent!r}:{self.dim}"
        return f"wl2:{self.dim}:w=" + ",".join(repr(w) for w in self.weights)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "p_exponent": self.p_exponent,
            "weights": list(self.weights) if self.weights is not None else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpaceSpec":
        w = d.get("weights")
        return cls(d["kind"], d["dim"], d.get("p_exponent"), tuple(w) if w is not None else None)

    @classmethod
    def euclidean(cls, dim: int) -> "SpaceSpec":
        return cls(NormKind.EUCLIDEAN, dim)

    @classmethod
    def lp(cls, p: float, dim: int) -> "SpaceSpec":
        return cls(NormKind.LP, dim, p_exponent=p)

    @classmethod
    def linf(cls, dim: int) -> "SpaceSpec":
        return cls(NormKind.LINF, dim)

    @classmethod
    def weighted_l2(cls, weights) -> "SpaceSpec":
        w = tuple(weights)
        return cls(NormKind.WEIGHTED_L2, len(w), weights=w)


def parse_space(text: str) -> SpaceSpec:
    """Parse ``l2:3``, ``lp:1.0:2``, ``linf:2`` or ``wl2:2:w=1,4``."""
    parts = text.strip().split(":")
    head = parts[0].lower()
    try:
        if head == "l2" and len(parts) == 2:
            return SpaceSpec.euclidean(int(parts[1]))
        if head == "linf" and len(parts) == 2:
            return SpaceSpec.linf(int(parts[1]))
        if head == "lp" and len(parts) == 3:
            return SpaceSpec.lp(float(parts[1]), int(parts[2]))
        if head == "wl2" and len(parts) == 3 and parts[2].startswith("w="):
            weights = tuple(float(w) for w in parts[2][2:].split(","))
            dim = int(parts[1])
            return SpaceSpec(NormKind.WEIGHTED_L2, dim, weights=weights)
    except ValueError as exc:
        if isinstance(exc, InvalidSpace):
            raise
        raise InvalidSpace(f"cannot parse space {text!r}: {exc}") from None
    raise InvalidSpace(f"cannot parse space {text!r}")


def as_vector(space: SpaceSpec, v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != space.dim:
        raise DimensionMismatch(f"expected a vector of length {space.dim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteCoordinate("vector has NaN or infinite coordinates")
    return arr


def norms(space: SpaceSpec, V: np.ndarray) -> np.ndarray:
    """Norm along the last axis; no validation (hot path)."""
    A = np.abs(V)
    if space.kind is NormKind.LINF:
        return np.max(A, axis=-1)
    if space.kind is NormKind.LP and space.p_exponent == 1.0:
        return np.sum(A, axis=-1)
    # scale by the largest entry so squares and powers neither overflow nor underflow
    s = np.max(A, axis=-1, keepdims=True)
    safe = np.where(s > 0, s, 1.0)
    U = A / safe
    s = np.squeeze(safe, -1)
    if space.kind is NormKind.WEIGHTED_L2:
        return s * np.sqrt(np.sum(np.asarray(space.weights) * U * U, axis=-1))
    q = 2.0 if space.kind is NormKind.EUCLIDEAN else space.p_exponent
    if q == 2.0:
        return s * np.sqrt(np.sum(U * U, axis=-1))
    return s * np.sum(U**q, axis=-1) ** (1.0 / q)


def norm(space: SpaceSpec, v) -> float:
    return float(norms(space, as_vector(space, v)))


@dataclass(frozen=True)
class NormTriple:
    """The scalars (||x||, ||y||, ||x - y||) every triple-level bound works on."""

    a: float
    b: float
    c: float

    @property
    def lo(self) -> float:
        return min(self.a, self.b)

    @property
    def hi(self) -> float:
        return max(self.a, self.b)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def validate_triple(a: float, b: float, c: float) -> NormTriple:
    """Check a > 0, b > 0 and |a - b| <= c <= a + b.

    A violation within ``TRIPLE_REL_TOL * (a + b)`` is treated as rounding and
    ``c`` is clamped into range; anything larger raises ``TripleInfeasible``.
    """
    a, b, c = float(a), float(b), float(c)
    if not all(math.isfinite(t) for t in (a, b, c)):
        raise TripleInfeasible(f"non-finite triple ({a}, {b}, {c})")
    if a <= 0 or b <= 0:
        raise TripleInfeasible(f"norms must be positive, got a={a}, b={b}")
    slack = TRIPLE_REL_TOL * (a + b)
    lo, hi = abs(a - b), a + b
    if c < lo - slack or c > hi + slack:
        raise TripleInfeasible(f"triangle inequality fails for ({a}, {b}, {c})")
    return NormTriple(a, b, min(max(c, lo), hi))


def triple_of(space: SpaceSpec, x, y) -> NormTriple:
    x = as_vector(space, x)
    y = as_vector(space, y)
    a, b = norm(space, x), norm(space, y)
    if a == 0 or b == 0:
        raise ZeroVector("norm triples need nonzero vectors")
    return validate_triple(a, b, norm(space, x - y))


def radial_transform(space: SpaceSpec, v, s: float) -> np.ndarray:
    """Return ||v||^(s-1) v, so that the result has norm ||v||^s."""
    v = as_vector(space, v)
    n = float(norms(space, v))
    if n == 0:
        raise ZeroVector("radial transform of the zero vector")
    return v * n ** (s - 1.0)
