"""p-angular and skew p-angular distances, inner-product closed forms, power means.

Every vector-level distance is computed after dividing both vectors by the
larger of their norms and restoring the scale through homogeneity
(``alpha_p[tx, ty] = t**p * alpha_p[x, y]``), so large ``|p|`` does not
overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroVector
from .space import NormTriple, SpaceSpec, as_vector, norms

__all__ = [
    "DistanceParams",
    "alpha_p",
    "beta_p",
    "angular_distance",
    "alpha_p_batch",
    "beta_p_batch",
    "ips_alpha_p_sq",
    "identity_residual",
    "power_mean",
]


@dataclass(frozen=True)
class DistanceParams:
    """Indices for a distance relation: main index p, second index q, mean index r."""

    p: float = 0.0
    q: float | None = None
    r: float | None = None

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        if self.r is not None and math.isnan(self.r):
            raise ValueError("r must not be NaN")

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r}

    @classmethod
    def from_dict(cls, d: dict) -> "DistanceParams":
        return cls(d.get("p", 0.0), d.get("q"), d.get("r"))


def _scaled(space: SpaceSpec, X: np.ndarray, Y: np.ndarray):
    a = norms(space, X)
    b = norms(space, Y)
    if np.any(a == 0) or np.any(b == 0):
        raise ZeroVector("angular distances need nonzero vectors")
    t = np.maximum(a, b)
    return a / t, b / t, X / t[..., None], Y / t[..., None], t


def alpha_p_batch(space: SpaceSpec, X, Y, p: float) -> np.ndarray:
    """alpha_p over stacked pairs; ``X`` and ``Y`` have shape (n, dim)."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    a, b, Xs, Ys, t = _scaled(space, X, Y)
    d = Xs * (a ** (p - 1.0))[..., None] - Ys * (b ** (p - 1.0))[..., None]
    return norms(space, d) * t**p


def beta_p_batch(space: SpaceSpec, X, Y, p: float) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    a, b, Xs, Ys, t = _scaled(space, X, Y)
    d = Xs * (b ** (p - 1.0))[..., None] - Ys * (a ** (p - 1.0))[..., None]
    return norms(space, d) * t**p


def alpha_p(space: SpaceSpec, x, y, p: float) -> float:
    """|| ||x||^(p-1) x - ||y||^(p-1) y ||.

    >>> from pangular.space import SpaceSpec
    >>> round(alpha_p(SpaceSpec.euclidean(2), [3, 0], [0, 4], 2.0) ** 2, 9)
    337.0
    """
    x = as_vector(space, x)
    y = as_vector(space, y)
    return float(alpha_p_batch(space, x[None, :], y[None, :], p)[0])


def beta_p(space: SpaceSpec, x, y, p: float) -> float:
    """Skew variant: || ||y||^(p-1) x - ||x||^(p-1) y ||."""
    x = as_vector(space, x)
    y = as_vector(space, y)
    return float(beta_p_batch(space, x[None, :], y[None, :], p)[0])


def angular_distance(space: SpaceSpec, x, y) -> float:
    """Distance between x/||x|| and y/||y||."""
    return alpha_p(space, x, y, 0.0)


def ips_alpha_p_sq(t: NormTriple, p: float) -> float:
    """Value of alpha_p**2 in any inner-product space realizing the triple."""
    return float(ips_alpha_p_sq_array(t.a, t.b, t.c, p))


def ips_alpha_p_sq_array(a, b, c, p: float):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    # scale to max norm 1; the result has degree 2p
    s = np.maximum(a, b)
    a, b, c = a / s, b / s, c / s
    val = (a * b) ** (p - 1.0) * c * c + (a ** (p - 1.0) - b ** (p - 1.0)) * (
        a ** (p + 1.0) - b ** (p + 1.0)
    )
    return np.maximum(val, 0.0) * s ** (2.0 * p)


def identity_residual(space: SpaceSpec, x, y, p: float) -> float:
    """alpha_p**2 - [(a^p - b^p)**2 + a^p b^p alpha**2]; zero in inner-product spaces."""
    x = as_vector(space, x)
    y = as_vector(space, y)
    X, Y = x[None, :], y[None, :]
    return float(identity_residual_batch(space, X, Y, p)[0])


def identity_residual_batch(space: SpaceSpec, X, Y, p: float) -> np.ndarray:
    a = norms(space, X)
    b = norms(space, Y)
    ap = alpha_p_batch(space, X, Y, p)
    al = alpha_p_batch(space, X, Y, 0.0)
    return ap * ap - ((a**p - b**p) ** 2 + a**p * b**p * al * al)


def power_mean(r: float, a: float, b: float) -> float:
    """Equal-weight two-point power mean ((a^r + b^r) / 2)^(1/r).

    r = 0 gives the geometric mean and r = -inf / +inf the min / max.
    """
    if a <= 0 or b <= 0:
        raise ValueError("power mean needs positive arguments")
    if r == math.inf:
        return max(a, b)
    if r == -math.inf:
        return min(a, b)
    if r == 0:
        return math.sqrt(a * b)
    return float(power_mean_array(r, np.float64(a), np.float64(b)))


def power_mean_array(r: float, a, b):
    """Vectorized power mean for finite or infinite r."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if r == math.inf:
        return np.maximum(a, b)
    if r == -math.inf:
        return np.minimum(a, b)
    if r == 0:
        return np.sqrt(a * b)
    # M_r = sqrt(ab) * exp(log(cosh(r L / 2)) / r) with L = log(a / b); the
    # symmetric form keeps full precision as r -> 0 and never overflows
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        z = np.abs(r * (np.log(a) - np.log(b)) / 2.0)
        log_cosh = np.where(
            z > 1.0,
            z + np.log1p(np.exp(-2.0 * z)) - math.log(2.0),
            np.log1p(2.0 * np.sinh(np.minimum(z, 1.0) / 2.0) ** 2),
        )
        val = np.sqrt(a) * np.sqrt(b) * np.exp(log_cosh / r)
        # a zero argument (e.g. an underflowed power) has a closed-form mean
        zero = np.maximum(a, b) * 2.0 ** (-1.0 / r) if r > 0 else np.zeros_like(val)
        val = np.where(np.minimum(a, b) == 0, zero, val)
    return np.where(a == b, a, val)
