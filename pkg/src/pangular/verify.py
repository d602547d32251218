"""Seeded randomized verification of identities, orderings and bounds.

Pairs are drawn with numpy's PCG64 generator seeded from
``SeedSequence([seed, index])``, so every sample is a pure function of
``(seed, index)`` and reports are reproducible across runs and platforms.

Tolerance policy: a relation ``lhs <= rhs`` is violated when
``lhs - rhs > tol * max(1, |lhs|, |rhs|)``; an equality when
``|lhs - rhs|`` exceeds the same slack.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import bounds as B
from .bounds import BoundId, Direction, Scope
from .distance import (
    DistanceParams,
    alpha_p_batch,
    beta_p_batch,
    identity_residual_batch,
    ips_alpha_p_sq_array,
)
from .errors import NoConvergence, ParamOutOfDomain, UnknownProperty
from .space import NormTriple, SpaceSpec, norms, validate_triple

__all__ = [
    "PRNG_NAME",
    "SampleConfig",
    "VerificationReport",
    "RegionReport",
    "SeqId",
    "sample_pair",
    "sample_pairs",
    "sample_triples",
    "realize_triple",
    "check_property",
    "property_ids",
    "asymptotic_value",
    "witness_family",
    "positivity_scan",
    "bound_check_params",
]

PRNG_NAME = "numpy.PCG64(SeedSequence([seed, index]))"
STRATA = (0.6, 0.2, 0.2)  # generic box, near-equal norms, near-collinear
REALIZE_MAX_STEPS = 10_000


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    n_samples: int
    space: SpaceSpec
    norm_range: tuple[float, float] = (0.1, 10.0)

    def __post_init__(self):
        lo, hi = self.norm_range
        if not (lo > 0 and hi >= lo):
            raise ValueError("norm_range needs 0 < lo <= hi")
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        object.__setattr__(self, "norm_range", (float(lo), float(hi)))
        object.__setattr__(self, "seed", int(self.seed) % 2**64)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_samples": self.n_samples,
            "space": self.space.to_dict(),
            "norm_range": list(self.norm_range),
        }


# --------------------------------------------------------------------------
# sampling


def _draw_norm(rng, lo, hi):
    if lo == hi:
        return lo
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def _direction(rng, space):
    while True:
        v = rng.standard_normal(space.dim)
        n = float(norms(space, v))
        if n > 0:
            return v / n


def sample_pair(cfg: SampleConfig, index: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic nonzero pair for ``(cfg.seed, index)``.

    The stratum is picked first: a generic pair with log-uniform norms, a pair
    with nearly equal norms, or a nearly collinear pair (parallel or
    anti-parallel). With ``norm_range = (r, r)`` the first two strata put both
    vectors on the sphere of radius r.
    """
    if not 0 <= index < cfg.n_samples:
        raise IndexError(f"sample index {index} outside [0, {cfg.n_samples})")
    rng = np.random.default_rng([cfg.seed, index])
    lo, hi = cfg.norm_range
    space = cfg.space
    u = rng.random()
    x = _direction(rng, space) * _draw_norm(rng, lo, hi)
    if u < STRATA[0]:
        y = _direction(rng, space) * _draw_norm(rng, lo, hi)
    elif u < STRATA[0] + STRATA[1]:
        ratio = 1.0
        if lo != hi:
            ratio += rng.choice((-1.0, 1.0)) * 10.0 ** rng.uniform(-12, -2)
        y = _direction(rng, space) * float(norms(space, x)) * ratio
    else:
        sign = rng.choice((-1.0, 1.0))
        target = _draw_norm(rng, lo, hi)
        noise = _direction(rng, space) * 10.0 ** rng.uniform(-10, -1)
        y = sign * x / float(norms(space, x)) + noise
        y = y * (target / float(norms(space, y)))
    return x, y


@lru_cache(maxsize=64)
def _cached_pairs(cfg: SampleConfig):
    X = np.empty((cfg.n_samples, cfg.space.dim))
    Y = np.empty_like(X)
    for i in range(cfg.n_samples):
        X[i], Y[i] = sample_pair(cfg, i)
    X.flags.writeable = False
    Y.flags.writeable = False
    return X, Y


def sample_pairs(cfg: SampleConfig) -> tuple[np.ndarray, np.ndarray]:
    """All pairs of ``cfg`` stacked into two ``(n_samples, dim)`` arrays."""
    return _cached_pairs(cfg)


def sample_triples(cfg: SampleConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    X, Y = sample_pairs(cfg)
    a, b, c = norms(cfg.space, X), norms(cfg.space, Y), norms(cfg.space, X - Y)
    # clamp rounding-level triangle misses exactly like validate_triple
    c = np.clip(c, np.abs(a - b), a + b)
    return a, b, c


def realize_triple(space: SpaceSpec, t: NormTriple, tol: float = 1e-12):
    """Find x, y in ``space`` with (||x||, ||y||, ||x - y||) == t within ``tol``.

    Rotates y in the plane of the first two coordinates from the ray of x
    (distance |a - b|) to the opposite ray (distance a + b) and bisects on the
    angle; continuity of the norm gives a root.
    """
    if space.dim < 2:
        raise ParamOutOfDomain("realizing a triple needs dim >= 2")
    e1 = np.zeros(space.dim)
    e2 = np.zeros(space.dim)
    e1[0], e2[1] = 1.0, 1.0
    x = e1 * (t.a / float(norms(space, e1)))

    def y_at(theta):
        u = math.cos(theta) * e1 + math.sin(theta) * e2
        return u * (t.b / float(norms(space, u)))

    target_err = tol * max(t.c, t.a)

    def excess(theta):
        return float(norms(space, x - y_at(theta))) - t.c

    lo, hi = 0.0, math.pi
    for theta in (lo, hi):
        if abs(excess(theta)) <= target_err:
            return x, y_at(theta)
    for _ in range(REALIZE_MAX_STEPS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # interval exhausted at double resolution
        f = excess(mid)
        if abs(f) <= target_err:
            return x, y_at(mid)
        if f < 0:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(f"could not realize triple {t.as_tuple()} to tolerance {tol}")


# --------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    property_id: str
    samples_run: int
    violations: list
    max_violation_gap: float
    passed: bool
    seed: int
    space: str = ""
    params: dict = field(default_factory=dict)
    tol: float = 1e-9
    prng: str = PRNG_NAME

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "property_id": self.property_id,
            "samples_run": self.samples_run,
            "violations": self.violations,
            "max_violation_gap": self.max_violation_gap,
            "passed": self.passed,
            "seed": self.seed,
            "space": self.space,
            "params": self.params,
            "tol": self.tol,
            "prng": self.prng,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if d.get("schema") != 1:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        fields = {k: v for k, v in d.items() if k != "schema"}
        return cls(**fields)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def violations_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "relation", "x", "y", "lhs", "rhs", "gap"])
        for v in self.violations:
            w.writerow([
                v["index"], v["relation"],
                " ".join(f"{c:.17g}" for c in v["x"]),
                " ".join(f"{c:.17g}" for c in v["y"]),
                f"{v['lhs']:.17g}", f"{v['rhs']:.17g}", f"{v['gap']:.17g}",
            ])
        return buf.getvalue()


# --------------------------------------------------------------------------
# property registry: each returns a list of (label, lhs, rhs, kind[, opts]);
# kind is "<=", "==" or "<=_raw" (no slack); opts may override "tol" or add a "scale"


def _golden(n):
    # deterministic per-index scalar in (0, 1)
    return np.mod((np.arange(n) + 1) * 0.6180339887498949, 1.0)


def _triangle(space, P, X, Y):
    return [("||x+y||<=||x||+||y||", norms(space, X + Y), norms(space, X) + norms(space, Y), "<=")]


def _norm_homogeneity(space, P, X, Y):
    t = 20.0 * _golden(len(X)) - 10.0
    return [("||tx||==|t|*||x||", norms(space, X * t[:, None]), np.abs(t) * norms(space, X), "==")]


def _radial_composition(space, P, X, Y):
    s = P.p
    t = P.q if P.q is not None else 0.5
    nx = norms(space, X)
    inner = X * (nx ** (t - 1))[:, None]
    ni = norms(space, inner)
    lhs = inner * (ni ** (s - 1))[:, None]
    rhs = X * (nx ** (s * t - 1))[:, None]
    diff = norms(space, lhs - rhs)
    return [("T_s(T_t x)==T_st x", diff, np.zeros_like(diff), "==", {"scale": norms(space, rhs)})]


def _triple_valid(space, P, X, Y):
    a, b, c = norms(space, X), norms(space, Y), norms(space, X - Y)
    slack = 1e-12 * (a + b)
    return [("|a-b|<=c", np.abs(a - b) - slack, c, "<=_raw"), ("c<=a+b", c - slack, a + b, "<=_raw")]


def _alpha_homogeneity(space, P, X, Y):
    t = 10.0 * (1.0 - _golden(len(X)))  # in (0, 10]
    lhs = alpha_p_batch(space, X * t[:, None], Y * t[:, None], P.p)
    rhs = t**P.p * alpha_p_batch(space, X, Y, P.p)
    return [("alpha_p[tx,ty]==t^p alpha_p", lhs, rhs, "==")]


def _veza(space, P, X, Y):
    a, b = norms(space, X), norms(space, Y)
    lhs = beta_p_batch(space, X, Y, P.p)
    rhs = (a * b) ** (P.p - 1) * alpha_p_batch(space, X, Y, 2 - P.p)
    return [("beta_p==(ab)^(p-1) alpha_(2-p)", lhs, rhs, "==")]


def _identitet0(space, P, X, Y):
    a, b = norms(space, X), norms(space, Y)
    ap = alpha_p_batch(space, X, Y, P.p)
    res = identity_residual_batch(space, X, Y, P.p)
    return [("alpha_p^2==(a^p-b^p)^2+a^p b^p alpha^2", ap * ap, ap * ap - res, "==")]


def _zap(space, P, X, Y):
    a, b, c = norms(space, X), norms(space, Y), norms(space, X - Y)
    ap = alpha_p_batch(space, X, Y, P.p)
    return [("alpha_p^2==closed form", ap * ap, ips_alpha_p_sq_array(a, b, c, P.p), "==")]


def _tha_iv(space, P, X, Y):
    a, b = norms(space, X), norms(space, Y)
    lhs = alpha_p_batch(space, X, Y, -P.p)
    rhs = (a * b) ** (-P.p) * alpha_p_batch(space, X, Y, P.p)
    return [("alpha_-p==(ab)^-p alpha_p", lhs, rhs, "==")]


def _chain(required):
    def f(space, P, X, Y):
        regime = "p>=1" if P.p >= 1 else "p<1"
        if regime != required:
            raise ParamOutOfDomain(f"property needs {required}, got p={P.p!r}")
        a, b, c = _triples(space, X, Y)
        ap = alpha_p_batch(space, X, Y, P.p)
        _, values, _ = B.chain_arrays(P.p, a, b, c, ap)
        out = []
        for lhs, rhs, kind in B._chain_relations(regime):
            if kind == "==":
                out.append((f"{lhs}=={rhs}", values[lhs], values[rhs], "==", {"tol": B.CHAIN_EQ_TOL}))
            else:
                out.append((f"{lhs}<={rhs}", values[lhs], values[rhs], "<="))
        return out

    return f


def _triples(space, X, Y):
    a, b, c = norms(space, X), norms(space, Y), norms(space, X - Y)
    return a, b, np.clip(c, np.abs(a - b), a + b)


def _dominance_upper(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    g, K = B.evaluate_batch(BoundId.NEW_K, P, a, b, c)
    gm, Mal = B.evaluate_batch(BoundId.MAL_UP, P, a, b, c)
    return [(f"K({g})<=MAL_UP({gm})", K, Mal, "<=")]


def _dominance_lower(space, P, X, Y):
    if not 0 <= P.p < 1:
        raise ParamOutOfDomain("lower dominance needs 0 <= p < 1")
    a, b, c = _triples(space, X, Y)
    _, m = B.evaluate_batch(BoundId.MAL_LO, P, a, b, c)
    _, k = B.evaluate_batch(BoundId.NEW_k, P, a, b, c)
    return [("MAL_LO(0<=p<1)<=k(p<1)", m, k, "<=")]


def _hile_dominance(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    _, K = B.evaluate_batch(BoundId.NEW_K, P, a, b, c)
    _, H = B.evaluate_batch(BoundId.HILE, P, a, b, c)
    return [("K(p>=1)<=HILE", K, H, "<=")]


def _positivity_k(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    _, k = B.evaluate_batch(BoundId.NEW_k, P, a, b, c)
    return [("0<=k", np.zeros_like(k), k, "<=")]


def _refined_vs_ang(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    _, ru = B.evaluate_batch(BoundId.REFINED_UP, P, a, b, c)
    _, rl = B.evaluate_batch(BoundId.REFINED_LO, P, a, b, c)
    _, au = B.evaluate_batch(BoundId.ANG_UP, P, a, b, c)
    _, al = B.evaluate_batch(BoundId.ANG_LO, P, a, b, c)
    return [("REFINED_UP<=ANG_UP", ru, au, "<="), ("ANG_LO<=REFINED_LO", al, rl, "<=")]


def _za_r1(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    one = DistanceParams(P.p, P.q, 1.0)
    _, ru = B.evaluate_batch(BoundId.REFINED_UP, one, a, b, c)
    _, rl = B.evaluate_batch(BoundId.REFINED_LO, one, a, b, c)
    _, zu = B.evaluate_batch(BoundId.ZA_R1_UP, one, a, b, c)
    _, zl = B.evaluate_batch(BoundId.ZA_R1_LO, one, a, b, c)
    return [("ZA_R1_UP==REFINED_UP(r=1)", zu, ru, "=="), ("ZA_R1_LO==REFINED_LO(r=1)", zl, rl, "==")]


def _kvadratik2(space, P, X, Y):
    a, b, c = _triples(space, X, Y)
    al = alpha_p_batch(space, X, Y, 0.0)
    ap = alpha_p_batch(space, X, Y, P.p)
    _, bound = B.evaluate_batch(BoundId.KVADRATIK2, P, a, b, c, alpha=al)
    low = al <= math.sqrt(2)
    return [
        ("alpha<=sqrt2: bound<=alpha_p", np.where(low, bound, -np.inf), np.where(low, ap, np.inf), "<="),
        ("alpha>sqrt2: alpha_p<=bound", np.where(low, -np.inf, ap), np.where(low, np.inf, bound), "<="),
    ]


def _subject_values(spec, P, space, X, Y):
    idx = spec.subject_index(P)
    if spec.subject.startswith("beta"):
        return beta_p_batch(space, X, Y, idx)
    return alpha_p_batch(space, X, Y, idx)


def _bound_property(bid):
    spec = B.get_spec(bid)

    def f(space, P, X, Y):
        if space.dim < spec.min_dim:
            raise ParamOutOfDomain(f"{bid.value} needs dim >= {spec.min_dim}")
        a, b, c = _triples(space, X, Y)
        al = alpha_p_batch(space, X, Y, 0.0) if "alpha" in spec.needs else None
        aq = alpha_p_batch(space, X, Y, P.q) if "alpha_q" in spec.needs else None
        _, bound = B.evaluate_batch(bid, P, a, b, c, alpha=al, alpha_q=aq)
        subj = _subject_values(spec, P, space, X, Y)
        if bid is BoundId.KVADRATIK2:
            low = al <= math.sqrt(2)
            lhs = np.where(low, bound, subj)
            rhs = np.where(low, subj, bound)
        elif spec.direction is Direction.UPPER:
            lhs, rhs = subj, bound
        else:
            lhs, rhs = bound, subj
        # NaN marks points outside the formula's definition (e.g. a == b for Hile)
        return [(f"{bid.value}", lhs, rhs, "<=")]

    return f


_PROPERTIES = {
    "triangle_inequality": _triangle,
    "norm_homogeneity": _norm_homogeneity,
    "radial_composition": _radial_composition,
    "triple_valid": _triple_valid,
    "alpha_homogeneity": _alpha_homogeneity,
    "veza_identity": _veza,
    "identitet0_zero": _identitet0,
    "zap_formula": _zap,
    "tha_iv_identity": _tha_iv,
    "chain_p_ge_1": _chain("p>=1"),
    "chain_p_lt_1": _chain("p<1"),
    "dominance_upper": _dominance_upper,
    "dominance_lower": _dominance_lower,
    "hile_dominance": _hile_dominance,
    "positivity_k": _positivity_k,
    "refined_vs_ang": _refined_vs_ang,
    "za_r1_equals_refined": _za_r1,
    "kvadratik2_conditional": _kvadratik2,
}
for _bid in BoundId:
    _PROPERTIES[f"bound:{_bid.value}"] = _bound_property(_bid)


def property_ids() -> list[str]:
    return list(_PROPERTIES)


def check_property(property_id: str, cfg: SampleConfig, params: DistanceParams,
                   tol: float = 1e-9) -> VerificationReport:
    """Run one registered property over all samples of ``cfg``."""
    try:
        prop = _PROPERTIES[property_id]
    except KeyError:
        raise UnknownProperty(f"unknown property {property_id!r}") from None
    X, Y = sample_pairs(cfg)
    relations = prop(cfg.space, params, X, Y)
    n = len(X)
    evaluated = np.zeros(n, dtype=bool)
    found = []
    for rel in relations:
        label, lhs, rhs, kind = rel[:4]
        opts = rel[4] if len(rel) > 4 else {}
        rel_tol = opts.get("tol", tol)
        lhs = np.broadcast_to(np.asarray(lhs, dtype=np.float64), (n,))
        rhs = np.broadcast_to(np.asarray(rhs, dtype=np.float64), (n,))
        ok = ~(np.isnan(lhs) | np.isnan(rhs))
        # +-inf marks samples that belong to a different cell of the relation
        active = ok & np.isfinite(lhs) & np.isfinite(rhs)
        evaluated |= active
        with np.errstate(invalid="ignore", over="ignore"):
            if kind == "<=_raw":
                gap = lhs - rhs
                slack = np.zeros(n)
            else:
                scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
                if "scale" in opts:
                    scale = np.maximum(scale, np.abs(opts["scale"]))
                gap = np.abs(lhs - rhs) if kind == "==" else lhs - rhs
                slack = rel_tol * scale
            bad = active & (gap > slack)
        for i in np.flatnonzero(bad):
            found.append({
                "index": int(i),
                "relation": label,
                "x": [float(v) for v in X[i]],
                "y": [float(v) for v in Y[i]],
                "lhs": float(lhs[i]),
                "rhs": float(rhs[i]),
                "gap": float(gap[i]),
            })
    found.sort(key=lambda v: (v["index"], v["relation"]))
    return VerificationReport(
        property_id=property_id,
        samples_run=int(evaluated.sum()),
        violations=found,
        max_violation_gap=max((v["gap"] for v in found), default=0.0),
        passed=not found,
        seed=cfg.seed,
        space=cfg.space.to_syntax(),
        params=params.to_dict(),
        tol=tol,
    )


# --------------------------------------------------------------------------
# asymptotic witness sequences and positivity regions


class SeqId(str, enum.Enum):
    PHI = "PHI"
    PSI = "PSI"
    XI = "XI"


def asymptotic_value(seq_id, p: float, n: int) -> float:
    """Terms of the sequences built on norms (n, n + 1) and distance 1 + 1/n.

    PHI -> 2 - p, PSI -> p, XI -> -2 (p - 1)^2 / (2p - 1) as n grows. Powers
    of n/(n+1) are formed with log1p/expm1 so large n keeps full precision.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    seq = SeqId(seq_id)
    n = float(n)
    shrink = math.expm1(-(p - 1) * math.log1p(1 / n))  # (n/(n+1))^(p-1) - 1
    if seq is SeqId.PHI:
        return n * shrink + 1 + 1 / n
    if seq is SeqId.PSI:
        grow = math.expm1((p - 1) * math.log1p(1 / n))  # ((n+1)/n)^(p-1) - 1
        return (n + 1) * grow + 1 + 1 / n
    return n * shrink + (p - 1) / (2 * p - 1) * (1 + 1 / n)


def witness_family(n_max: int):
    """Triples (n, n + 1, 1 + 1/n) for n = 1..n_max as three arrays."""
    n = np.arange(1, n_max + 1, dtype=np.float64)
    return n, n + 1, 1 + 1 / n


@dataclass
class RegionReport:
    bound_id: str
    entries: list  # one dict per p

    def negative_found(self, p: float) -> bool:
        return next(e["negative_found"] for e in self.entries if e["p"] == p)

    def to_dict(self) -> dict:
        return {"schema": 1, "bound_id": self.bound_id, "entries": self.entries}


def positivity_scan(bound_id, p_grid, cfg: SampleConfig, family_n: int = 10_000,
                    tol: float = 1e-9) -> RegionReport:
    """Minimum of a triple-only lower bound over sampled and witness triples.

    A value counts as negative when it is below ``-tol * M**degree`` with M
    the larger norm, i.e. clearly below rounding at the triple's own scale.
    """
    spec = B.get_spec(bound_id)
    if spec.direction is not Direction.LOWER or spec.needs:
        raise ParamOutOfDomain(f"{spec.id.value} is not a triple-only lower bound")
    sa, sb, sc = sample_triples(cfg)
    fa, fb, fc = witness_family(family_n)
    a = np.concatenate([sa, fa])
    b = np.concatenate([sb, fb])
    c = np.concatenate([sc, fc])
    source = np.array(["sample"] * len(sa) + ["family"] * len(fa))
    entries = []
    for p in p_grid:
        P = DistanceParams(float(p))
        regime, vals = B.evaluate_batch(spec.id, P, a, b, c)
        degree = B._entry(spec.id).degree(P)
        scaled = vals / np.maximum(a, b) ** degree
        i = int(np.nanargmin(scaled))
        negative = scaled < -tol
        entries.append({
            "p": float(p),
            "regime": regime,
            "min_value": float(vals[i]),
            "min_triple": [float(a[i]), float(b[i]), float(c[i])],
            "min_source": str(source[i]),
            "negative_found": bool(np.any(negative)),
            "negative_count": int(np.sum(negative)),
            "samples": int(len(a)),
        })
    return RegionReport(spec.id.value, entries)


def bound_check_params(bid) -> list[DistanceParams]:
    """A parameter panel inside the domain of each registry entry, for sweeps."""
    bid = BoundId(bid)
    P = DistanceParams
    p_grid = (-1.0, 0.0, 0.5, 1.0, 2.0, 3.0)
    table = {
        BoundId.HILE: [P(p) for p in (1.0, 1.5, 2.0, 3.0)],
        BoundId.HILE_EXT: [P(2.0, 1.0), P(3.0, 1.5), P(-2.0, -1.0), P(1.0, 0.5)],
        BoundId.DEHGHAN_UP: [P(0.0)],
        BoundId.DEHGHAN_LO: [P(0.0)],
        BoundId.ANG_UP: [P(0.0)],
        BoundId.ANG_LO: [P(0.0)],
        BoundId.REFINED_UP: [P(0.0, r=r) for r in (0.25, 1.0, 3.0)],
        BoundId.REFINED_LO: [P(0.0, r=r) for r in (0.25, 1.0, 3.0)],
        BoundId.ZA_R1_UP: [P(0.0)],
        BoundId.ZA_R1_LO: [P(0.0)],
        BoundId.SREDINE: [P(p, r=r) for p in (-1.0, 2.0) for r in (-1.0, 0.0, 1.0)],
        BoundId.KVADRATIK2: [P(p) for p in (-1.0, 0.5, 2.0)],
        BoundId.HILE3: [P(2.0, 1.0), P(3.0, 1.0), P(2.0, 0.0), P(-1.0, 1.0)],
        BoundId.POMOCNA: [P(0.0, r=r) for r in (-1.0, -0.5, 0.5)],
        BoundId.KORIJENJE: [P(2.0, 1.0), P(-2.0, 1.0)],
        BoundId.PAMETNO: [P(1.0), P(2.0), P(-1.0)],
        BoundId.KARAKTER: [P(0.0, r=r) for r in (0.5, 1.0)],
        BoundId.THA_II: [P(1.0, 2.0), P(0.0, 1.0)],
        BoundId.THA_III: [P(1.0, 2.0), P(1.0, -2.0)],
        BoundId.THA_V: [P(1.0, 2.0, 1.0), P(0.0, 1.0, 0.5)],
        BoundId.THA_VI: [P(1.0, 2.0)],
        BoundId.KS: [P(0.0)],
        BoundId.ALRASHED: [P(0.0, 0.5), P(0.0, 1.0)],
    }
    return table.get(bid, [P(p) for p in p_grid])


def ips_scopes() -> tuple[Scope, ...]:
    return (Scope.IPS_CHAR, Scope.IPS_ONLY_VALID)
