"""Counterexample search for inequalities that characterize inner-product spaces.

A positive violation margin at some pair (x, y) proves the norm is not an
inner-product norm. The search is a seeded random-restart hill climber over
pairs with coordinates in [-10, 10] and norms kept in [1e-3, 10].
"""

from __future__ import annotations

import itertools
import json
import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import bounds as B
from .bounds import BoundId, Direction, Scope
from .distance import DistanceParams, alpha_p_batch, beta_p_batch
from .errors import DegenerateTriple, DimensionTooSmall, ParamOutOfDomain
from .space import SpaceSpec, as_vector, norms, radial_transform

__all__ = [
    "FOUND_THRESHOLD",
    "SearchConfig",
    "SearchResult",
    "Verdict",
    "margin_batch",
    "violation_margin",
    "search_violation",
    "map_pomocna_witness",
    "classify_space",
    "default_panel",
]

FOUND_THRESHOLD = 1e-6
COORD_BOX = 10.0
NORM_MIN, NORM_MAX = 1e-3, 10.0
STALL_STEPS = 20
LATTICE_MAX_PAIRS = 20_000


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 8
    steps_per_restart: int = 400
    seed: int = 0
    step_scale: float = 0.5
    # (p, q) grid for the HILE3 part of the classification panel
    pq_grid: tuple = ((2.0, 1.0), (3.0, 1.0), (2.0, 0.0), (-1.0, 1.0))

    def __post_init__(self):
        if self.restarts < 1 or self.steps_per_restart < 1:
            raise ValueError("restarts and steps_per_restart must be at least 1")
        if not self.step_scale > 0:
            raise ValueError("step_scale must be positive")
        object.__setattr__(self, "seed", int(self.seed) % 2**64)
        object.__setattr__(self, "pq_grid", tuple(tuple(map(float, pq)) for pq in self.pq_grid))

    def to_dict(self) -> dict:
        return {
            "restarts": self.restarts,
            "steps_per_restart": self.steps_per_restart,
            "seed": self.seed,
            "step_scale": self.step_scale,
            "pq_grid": [list(pq) for pq in self.pq_grid],
        }


@dataclass
class SearchResult:
    ineq_id: BoundId
    params: DistanceParams
    space: SpaceSpec
    best_pair: tuple
    margin: float
    found: bool
    trace: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        x, y = self.best_pair
        return {
            "schema": 1,
            "ineq_id": self.ineq_id.value,
            "params": self.params.to_dict(),
            "space": self.space.to_dict(),
            "best_pair": {"x": [float(v) for v in x], "y": [float(v) for v in y]},
            "margin": self.margin,
            "found": self.found,
            "trace": self.trace,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResult":
        if d.get("schema") != 1:
            raise ValueError(f"unsupported result schema {d.get('schema')!r}")
        pair = (np.asarray(d["best_pair"]["x"], float), np.asarray(d["best_pair"]["y"], float))
        return cls(BoundId(d["ineq_id"]), DistanceParams.from_dict(d["params"]),
                   SpaceSpec.from_dict(d["space"]), pair, d["margin"], d["found"],
                   dict(d["trace"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# --------------------------------------------------------------------------
# margins


def _check_target(ineq_id, params: DistanceParams, space: SpaceSpec):
    spec = B.get_spec(ineq_id)
    regime = B.select_regime(spec.id, params)
    ips_only_regime = spec.id is BoundId.HILE_EXT and regime == "p/q<=-1"
    if spec.scope is Scope.ALL_SPACES and not ips_only_regime:
        raise ParamOutOfDomain(
            f"{spec.id.value} holds in every normed space; there is nothing to search for"
        )
    if space.dim < spec.min_dim:
        raise DimensionTooSmall(f"{spec.id.value} needs dim >= {spec.min_dim}, space has {space.dim}")
    return spec


def margin_batch(ineq_id, params: DistanceParams, space: SpaceSpec, X, Y) -> np.ndarray:
    """Signed violation margins for stacked pairs; NaN where undefined.

    For lower bounds (>=-form) the margin is bound - distance, for upper
    bounds distance - bound. Positive means violated.
    """
    spec = _check_target(ineq_id, params, space)
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    a, b = norms(space, X), norms(space, Y)
    c = np.clip(norms(space, X - Y), np.abs(a - b), a + b)
    al = alpha_p_batch(space, X, Y, 0.0) if ("alpha" in spec.needs or spec.subject == "alpha_0") else None
    aq = alpha_p_batch(space, X, Y, params.q) if "alpha_q" in spec.needs else None
    _, bound = B.evaluate_batch(spec.id, params, a, b, c, alpha=al, alpha_q=aq)
    idx = spec.subject_index(params)
    if spec.subject == "alpha_0":
        subject = al
    elif spec.subject.startswith("beta"):
        subject = beta_p_batch(space, X, Y, idx)
    else:
        subject = alpha_p_batch(space, X, Y, idx)
    if spec.direction is Direction.CONDITIONAL:
        lower = al <= math.sqrt(2)
        return np.where(lower, bound - subject, subject - bound)
    if spec.direction is Direction.LOWER:
        return bound - subject
    return subject - bound


def violation_margin(ineq_id, params: DistanceParams, space: SpaceSpec, x, y) -> float:
    """Signed margin of one pair; positive means the inequality fails at (x, y)."""
    x = as_vector(space, x)
    y = as_vector(space, y)
    m = float(margin_batch(ineq_id, params, space, x[None, :], y[None, :])[0])
    if math.isnan(m):
        raise DegenerateTriple(f"{B.BoundId(ineq_id).value} is undefined at this pair")
    return m


def map_pomocna_witness(space: SpaceSpec, x, y, p: float):
    """Send a POMOCNA(r = q/p) violation to a HILE3(p, q) violation via x -> ||x||^(1/p - 1) x."""
    if p == 0:
        raise ParamOutOfDomain("the reduction needs p != 0")
    return radial_transform(space, x, 1.0 / p), radial_transform(space, y, 1.0 / p)


# --------------------------------------------------------------------------
# search


def _clamp(space: SpaceSpec, V: np.ndarray) -> np.ndarray:
    """Clip coordinates to the box, then rescale norms into [NORM_MIN, NORM_MAX].

    Works on one vector or on stacked vectors; zero vectors pass through.
    """
    V = np.clip(V, -COORD_BOX, COORD_BOX)
    n = norms(space, V)
    safe = np.where(n > 0, n, 1.0)
    factor = np.where(n > NORM_MAX, NORM_MAX / safe, np.where((n > 0) & (n < NORM_MIN), NORM_MIN / safe, 1.0))
    return V * factor[..., None]


def _lattice_pairs(space: SpaceSpec, rng):
    pts = None
    for levels in ((-2.0, -1.0, 0.0, 1.0, 2.0), (-1.0, 0.0, 1.0)):
        if (len(levels) ** space.dim - 1) ** 2 <= LATTICE_MAX_PAIRS:
            pts = np.array([v for v in itertools.product(levels, repeat=space.dim) if any(v)])
            break
    if pts is None:
        # too many lattice points to enumerate: draw them instead
        pts = rng.integers(-1, 2, (2 * LATTICE_MAX_PAIRS, space.dim)).astype(np.float64)
        pts = pts[np.any(pts != 0, axis=1)]
    n = len(pts)
    if n * n <= LATTICE_MAX_PAIRS:
        i, j = np.divmod(np.arange(n * n), n)
    else:
        i = rng.integers(0, n, LATTICE_MAX_PAIRS)
        j = rng.integers(0, n, LATTICE_MAX_PAIRS)
    return pts[i], pts[j]


def _seed_starts(spec, params, space, rng, evaluate_many):
    """Best structured start point: lattice pairs plus, for SREDINE with r > 1,
    anti-parallel pairs (where the power-mean bound is known to be sharp)."""
    X, Y = _lattice_pairs(space, rng)
    if spec.id is BoundId.SREDINE and params.r is not None and params.r > 1:
        k = 64
        base = rng.uniform(-COORD_BOX, COORD_BOX, (k, space.dim))
        lam = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), k))
        X = np.vstack([X, base])
        Y = np.vstack([Y, -lam[:, None] * base])
    X, Y = _clamp(space, X), _clamp(space, Y)
    m = evaluate_many(X, Y)
    i = int(np.argmax(np.where(np.isnan(m), -np.inf, m)))
    return X[i], Y[i], len(X)


def _climb(spec, params, space, cfg, restart, evaluate_many, salt):
    rng = np.random.default_rng([cfg.seed, salt, restart])
    evaluations = 0
    if restart == 0:
        x, y, evaluations = _seed_starts(spec, params, space, rng, evaluate_many)
    else:
        x = _clamp(space, rng.uniform(-COORD_BOX, COORD_BOX, space.dim))
        y = _clamp(space, rng.uniform(-COORD_BOX, COORD_BOX, space.dim))

    def score(x, y):
        m = float(evaluate_many(x[None, :], y[None, :])[0])
        return -math.inf if math.isnan(m) else m

    best = score(x, y)
    evaluations += 1
    best_step = 0
    s = cfg.step_scale
    stall = 0
    z = np.concatenate([x, y])
    d = space.dim
    for step in range(1, cfg.steps_per_restart + 1):
        mask = rng.random(2 * d) < 0.5
        mask[rng.integers(0, 2 * d)] = True
        jitter = 0.1 * float(np.max(np.abs(z))) * rng.standard_normal(2 * d)
        trial = np.where(mask, z * (1.0 + s * rng.standard_normal(2 * d)) + s * jitter, z)
        tx, ty = _clamp(space, trial[:d]), _clamp(space, trial[d:])
        if not (np.any(tx) and np.any(ty)):
            continue
        m = score(tx, ty)
        evaluations += 1
        if m > best:
            best, best_step, stall = m, step, 0
            z = np.concatenate([tx, ty])
        else:
            stall += 1
            if stall >= STALL_STEPS:
                s *= 0.5
                stall = 0
    return best, z[:d].copy(), z[d:].copy(), best_step, evaluations


def _run_search(spec, params, space, cfg):
    def evaluate_many(X, Y):
        return margin_batch(spec.id, params, space, X, Y)

    salt = zlib.crc32(f"{spec.id.value}|{params.p!r}|{params.q!r}|{params.r!r}".encode())
    best = None
    total = 0
    for restart in range(cfg.restarts):
        m, x, y, step, n_eval = _climb(spec, params, space, cfg, restart, evaluate_many, salt)
        total += n_eval
        # strict comparison keeps the lowest restart index on ties
        if best is None or m > best[0]:
            best = (m, x, y, restart, step)
    m, x, y, restart, step = best
    trace = {"seed": cfg.seed, "restart": restart, "step": step, "evaluations": total,
             "route": "direct"}
    return SearchResult(spec.id, params, space, (x, y), m, m > FOUND_THRESHOLD, trace)


def search_violation(ineq_id, params: DistanceParams, space: SpaceSpec,
                     cfg: SearchConfig = SearchConfig(), reduction: str = "auto") -> SearchResult:
    """Maximize the violation margin of one inequality over vector pairs.

    For HILE3 with q != 0, a stalled direct search (``reduction="auto"``) or
    ``reduction="always"`` also searches POMOCNA with r = q/p and maps any
    violation back through the radial power map with exponent 1/p.
    """
    spec = _check_target(ineq_id, params, space)
    result = _run_search(spec, params, space, cfg)
    want = reduction == "always" or (reduction == "auto" and not result.found)
    if spec.id is not BoundId.HILE3 or not want or not params.q:
        return result
    r = params.q / params.p
    reduced = _run_search(B.get_spec(BoundId.POMOCNA), DistanceParams(0.0, r=r), space, cfg)
    evaluations = result.trace["evaluations"] + reduced.trace["evaluations"]
    result.trace["evaluations"] = evaluations
    if not reduced.found:
        return result
    mx, my = map_pomocna_witness(space, *reduced.best_pair, params.p)
    m = violation_margin(spec.id, params, space, mx, my)
    if m <= FOUND_THRESHOLD or (result.found and m <= result.margin):
        return result
    trace = dict(reduced.trace, evaluations=evaluations, route="pomocna_mapped",
                 reduced_margin=reduced.margin, reduced_r=r)
    return SearchResult(spec.id, params, space, (mx, my), m, True, trace)


# --------------------------------------------------------------------------
# classification


@dataclass
class Verdict:
    status: str  # "NOT_IPS" or "CONSISTENT_WITH_IPS"; never a positive certificate
    witness: SearchResult | None
    results: list

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness else None,
            "results": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        if d.get("schema") != 1:
            raise ValueError(f"unsupported verdict schema {d.get('schema')!r}")
        w = d.get("witness")
        return cls(d["status"], SearchResult.from_dict(w) if w else None,
                   [SearchResult.from_dict(r) for r in d["results"]])


def default_panel(space: SpaceSpec, cfg: SearchConfig = SearchConfig()):
    """(ineq_id, params) pairs tried by ``classify_space``.

    Inequalities whose characterizing power is only known for dim >= 3 join
    the panel only for such spaces.
    """
    P = DistanceParams
    panel = [(BoundId.POMOCNA, P(0.0, r=r)) for r in (-1.0, 0.5, -0.5)]
    panel += [(BoundId.HILE3, P(p, q)) for p, q in cfg.pq_grid]
    panel += [(BoundId.KS, P(0.0)), (BoundId.ALRASHED, P(0.0, 0.5))]
    panel += [(BoundId.KARAKTER, P(0.0, r=r)) for r in (0.5, 1.0)]
    panel += [(BoundId.SREDINE, P(2.0, r=r)) for r in (0.0, 0.5, 1.0)]
    if space.dim >= 3:
        panel += [(BoundId.PAMETNO, P(p)) for p in (1.0, 2.0)]
        panel += [
            (BoundId.KORIJENJE, P(2.0, 1.0)),
            (BoundId.THA_II, P(1.0, 2.0)),
            (BoundId.THA_III, P(1.0, 2.0)),
            (BoundId.THA_V, P(1.0, 2.0, 1.0)),
            (BoundId.THA_VI, P(1.0, 2.0)),
        ]
    return panel


def classify_space(space: SpaceSpec, cfg: SearchConfig = SearchConfig(), panel=None,
                   stop_early: bool = True) -> Verdict:
    """NOT_IPS with a witness if any panel inequality is violated, else
    CONSISTENT_WITH_IPS. Sampling cannot prove the universal statement, so no
    positive certificate is ever issued."""
    results = []
    witness = None
    for bid, params in panel if panel is not None else default_panel(space, cfg):
        res = search_violation(bid, params, space, cfg)
        results.append(res)
        if res.found and (witness is None or res.margin > witness.margin):
            witness = res
            if stop_early:
                break
    return Verdict("NOT_IPS" if witness else "CONSISTENT_WITH_IPS", witness, results)
