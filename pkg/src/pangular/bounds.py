"""Registry of bounds and characterizing inequalities for the p-angular distance.

Every formula is a function of the norm triple ``(a, b, c) = (||x||, ||y||,
||x - y||)``, plus the angular distance ``alpha`` or a second distance
``alpha_q`` where the inequality compares two indices. Throughout,
``m = min(a, b)``, ``M = max(a, b)``, ``gap = a + b - c`` and
``spread = |a - b|``.

Formulas are evaluated on the triple rescaled to ``M = 1`` and the result is
scaled back by homogeneity, which keeps large ``|p|`` finite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distance import DistanceParams, power_mean_array
from .errors import DegenerateTriple, ParamOutOfDomain, UnknownBound
from .space import NormTriple

__all__ = [
    "BoundId",
    "Direction",
    "Scope",
    "InequalitySpec",
    "BoundResult",
    "ChainReport",
    "bound_catalog",
    "get_spec",
    "evaluate_bound",
    "evaluate_batch",
    "regime_formula",
    "chain_values",
    "chain_arrays",
    "CHAIN_INEQ_TOL",
    "CHAIN_EQ_TOL",
]

CHAIN_INEQ_TOL = 1e-9
CHAIN_EQ_TOL = 1e-12


class BoundId(str, enum.Enum):
    MAL_UP = "MAL_UP"
    MAL_LO = "MAL_LO"
    DRG_D = "DRG_D"
    DRG_S = "DRG_S"
    DRG_d = "DRG_d"
    DRG_s = "DRG_s"
    NEW_K = "NEW_K"
    NEW_k = "NEW_k"
    HILE = "HILE"
    HILE_EXT = "HILE_EXT"
    SKEW_UP = "SKEW_UP"
    SKEW_LO = "SKEW_LO"
    DEHGHAN_UP = "DEHGHAN_UP"
    DEHGHAN_LO = "DEHGHAN_LO"
    ALPHAREL_UP = "ALPHAREL_UP"
    ALPHAREL_LO = "ALPHAREL_LO"
    ANG_UP = "ANG_UP"
    ANG_LO = "ANG_LO"
    REFINED_UP = "REFINED_UP"
    REFINED_LO = "REFINED_LO"
    ZA_R1_UP = "ZA_R1_UP"
    ZA_R1_LO = "ZA_R1_LO"
    SREDINE = "SREDINE"
    KVADRATIK2 = "KVADRATIK2"
    HILE3 = "HILE3"
    POMOCNA = "POMOCNA"
    KORIJENJE = "KORIJENJE"
    PAMETNO = "PAMETNO"
    KARAKTER = "KARAKTER"
    THA_II = "THA_II"
    THA_III = "THA_III"
    THA_V = "THA_V"
    THA_VI = "THA_VI"
    KS = "KS"
    ALRASHED = "ALRASHED"


class Direction(str, enum.Enum):
    UPPER = "upper"
    LOWER = "lower"
    # upper or lower depending on the supplied angular distance
    CONDITIONAL = "conditional"


class Scope(str, enum.Enum):
    ALL_SPACES = "ALL_SPACES"
    IPS_CHAR = "IPS_CHAR"
    IPS_ONLY_VALID = "IPS_ONLY_VALID"


@dataclass(frozen=True)
class InequalitySpec:
    id: BoundId
    direction: Direction
    param_domain: str
    scope: Scope
    citation: str
    # which distance the bound constrains: alpha_p, beta_p, alpha_0, beta_0, alpha_r
    subject: str
    needs: tuple[str, ...] = ()
    min_dim: int = 1

    def subject_index(self, params: DistanceParams) -> float:
        if self.subject in ("alpha_p", "beta_p"):
            return params.p
        if self.subject == "alpha_r":
            return _req(self.id, params.r, "r")
        return 0.0

    def to_row(self) -> dict:
        return {
            "id": self.id.value,
            "direction": self.direction.value,
            "param_domain": self.param_domain,
            "scope": self.scope.value,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class BoundResult:
    id: BoundId
    regime: str
    value: float
    meaningful: bool
    requires_ips: bool
    direction: Direction

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "regime": self.regime,
            "value": self.value,
            "meaningful": self.meaningful,
            "requires_ips": self.requires_ips,
            "direction": self.direction.value,
        }


def _req(bid, value, name):
    if value is None:
        raise ParamOutOfDomain(f"{BoundId(bid).value} needs parameter {name}")
    return value


# --------------------------------------------------------------------------
# regime selection: map parameters to a branch label or raise


def _regime_mal(P):
    if P.p >= 1:
        return "p>=1"
    return "0<=p<1" if P.p >= 0 else "p<0"


def _regime_split1(P):
    return "p>=1" if P.p >= 1 else "p<1"


def _regime_hile(P):
    if P.p < 1:
        raise ParamOutOfDomain("HILE needs p >= 1")
    return "p>=1"


def _regime_hile_ext(P):
    q = _req(BoundId.HILE_EXT, P.q, "q")
    if q == 0:
        raise ParamOutOfDomain("HILE_EXT needs q != 0")
    ratio = P.p / q
    if ratio >= 1:
        return "p/q>=1"
    if ratio <= -1:
        return "p/q<=-1"
    raise ParamOutOfDomain("HILE_EXT needs |p/q| >= 1")


def _regime_skew(P):
    return "p<=1" if P.p <= 1 else "p>1"


def _regime_alpharel(P):
    return "p>=0" if P.p >= 0 else "p<0"


def _regime_all(P):
    return "all"


def _regime_r_pos(bid):
    def f(P):
        r = _req(bid, P.r, "r")
        if not (r > 0 and math.isfinite(r)):
            raise ParamOutOfDomain(f"{bid.value} needs finite r > 0")
        return "r>0"

    return f


def _regime_karakter(P):
    r = _req(BoundId.KARAKTER, P.r, "r")
    if not (0 < r <= 1):
        raise ParamOutOfDomain("KARAKTER needs 0 < r <= 1")
    return "0<r<=1"


def _regime_sredine(P):
    r = _req(BoundId.SREDINE, P.r, "r")
    return "r<=1" if r <= 1 else "r>1"


def _regime_abs_pq(bid, *, p_dominates: bool):
    def f(P):
        q = _req(bid, P.q, "q")
        if P.p == q:
            raise ParamOutOfDomain(f"{bid.value} needs p != q")
        if p_dominates and abs(P.p) < abs(q):
            raise ParamOutOfDomain(f"{bid.value} needs |p| >= |q|")
        if not p_dominates and abs(P.p) > abs(q):
            raise ParamOutOfDomain(f"{bid.value} needs |p| <= |q|")
        return "|p|>=|q|" if p_dominates else "|p|<=|q|"

    return f


def _regime_ratio(bid, lo_closed: bool):
    def f(P):
        q = _req(bid, P.q, "q")
        if q == 0:
            raise ParamOutOfDomain(f"{bid.value} needs q != 0")
        ratio = P.p / q
        ok = (0 <= ratio < 1) if lo_closed else (0 < ratio < 1)
        if not ok:
            raise ParamOutOfDomain(
                f"{bid.value} needs {'0<=' if lo_closed else '0<'}p/q<1, got {ratio!r}"
            )
        return "0<=p/q<1" if lo_closed else "0<p/q<1"

    return f


def _regime_tha_v(P):
    _req(BoundId.THA_V, P.r, "r")
    return _regime_ratio(BoundId.THA_V, True)(P)


def _regime_pomocna(P):
    r = _req(BoundId.POMOCNA, P.r, "r")
    if r == -1:
        return "r=-1"
    if 0 < abs(r) < 1:
        return "0<|r|<1"
    raise ParamOutOfDomain("POMOCNA needs 0 < |r| < 1 or r = -1")


def _regime_pametno(P):
    if P.p == 0:
        raise ParamOutOfDomain("PAMETNO needs p != 0")
    return "p!=0"


def _regime_alrashed(P):
    q = _req(BoundId.ALRASHED, P.q, "q")
    if not (0 < q <= 1):
        raise ParamOutOfDomain("ALRASHED needs 0 < q <= 1")
    return "0<q<=1"


def _regime_kvadratik(P):
    return "alpha<=sqrt2|alpha>sqrt2"


# --------------------------------------------------------------------------
# formulas; a, b, c are arrays with max(a, b) == 1 after rescaling


def _parts(a, b, c):
    m = np.minimum(a, b)
    M = np.maximum(a, b)
    return m, M, a + b - c, np.abs(a - b)


def _mal_up(p, regime, a, b, c):
    m, M, _, _ = _parts(a, b, c)
    if regime == "p>=1":
        return p * M ** (p - 1) * c
    if regime == "0<=p<1":
        return (2 - p) * M ** (p - 1) * c
    return (2 - p) * (m**p / M) * c


def _mal_lo(p, regime, a, b, c):
    m, M, _, _ = _parts(a, b, c)
    if regime == "p>=1":
        return p / (2 * p - 1) * M ** (p - 1) * c
    if regime == "0<=p<1":
        return p * M ** (p - 1) * c
    return p / (2 * p - 1) * (m**p / M) * c


def _new_upper(p, regime, a, b, c):
    m, M, gap, _ = _parts(a, b, c)
    shrink = m if regime == "p>=1" else M
    return a**p + b**p - gap * shrink ** (p - 1)


def _new_lower(p, regime, a, b, c):
    m, M, gap, _ = _parts(a, b, c)
    shrink = M if regime == "p>=1" else m
    return a**p + b**p - gap * shrink ** (p - 1)


def _dragomir(kind):
    # (sign, which power base multiplies c, which norm multiplies the power gap)
    table = {
        ("D", "p>=1"): (+1, "m", "M"),
        ("D", "p<1"): (+1, "M", "M"),
        ("S", "p>=1"): (+1, "M", "m"),
        ("S", "p<1"): (+1, "m", "m"),
        ("d", "p>=1"): (-1, "M", "M"),
        ("d", "p<1"): (-1, "m", "M"),
        ("s", "p>=1"): (-1, "m", "m"),
        ("s", "p<1"): (-1, "M", "m"),
    }

    def f(p, regime, a, b, c):
        m, M, _, _ = _parts(a, b, c)
        sign, base, weight = table[(kind, regime)]
        pick = {"m": m, "M": M}
        power_gap = np.abs(a ** (p - 1) - b ** (p - 1))
        return c * pick[base] ** (p - 1) + sign * power_gap * pick[weight]

    return f


def _difference_quotient(p, a, b):
    """(b^p - a^p) / (b - a), evaluated without cancellation; NaN where a == b."""
    m = np.minimum(a, b)
    u = (np.maximum(a, b) - m) / m
    with np.errstate(invalid="ignore", divide="ignore"):
        q = m ** (p - 1) * np.expm1(p * np.log1p(u)) / u
    return np.where(u > 0, q, np.nan)


def _skew(upper):
    def f(p, regime, a, b, c):
        m, M, gap, _ = _parts(a, b, c)
        use_max = upper == (regime == "p<=1")
        base = M if use_max else m
        return a * b ** (p - 1) + a ** (p - 1) * b - gap / base ** (1 - p)

    return f


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Entry:
    spec: InequalitySpec
    regime: Callable[[DistanceParams], str]
    # kernel(params, regime, a, b, c, alpha, alpha_q) on rescaled inputs
    kernel: Callable
    # homogeneity degree of the bound value
    degree: Callable[[DistanceParams], float]


def _deg_p(P):
    return P.p


def _deg_0(P):
    return 0.0


def _deg_r(P):
    return P.r


_REGISTRY: dict[BoundId, _Entry] = {}


def _register(bid, direction, domain, scope, citation, subject, regime, kernel, degree,
              needs=(), min_dim=1):
    spec = InequalitySpec(bid, direction, domain, scope, citation, subject, tuple(needs), min_dim)
    _REGISTRY[bid] = _Entry(spec, regime, kernel, degree)


U, L = Direction.UPPER, Direction.LOWER
ALL, CHAR, IPSV = Scope.ALL_SPACES, Scope.IPS_CHAR, Scope.IPS_ONLY_VALID

_register(BoundId.MAL_UP, U, "p in R (branches p>=1, 0<=p<1, p<0)", ALL,
          "Maligranda p-dependent upper bound", "alpha_p", _regime_mal,
          lambda P, g, a, b, c, al, aq: _mal_up(P.p, g, a, b, c), _deg_p)
_register(BoundId.MAL_LO, L, "p in R (branches p>=1, 0<=p<1, p<0)", ALL,
          "Rooin et al. lower bounds matching Maligranda", "alpha_p", _regime_mal,
          lambda P, g, a, b, c, al, aq: _mal_lo(P.p, g, a, b, c), _deg_p)
for _kind, _bid, _dir in (("D", BoundId.DRG_D, U), ("S", BoundId.DRG_S, U),
                          ("d", BoundId.DRG_d, L), ("s", BoundId.DRG_s, L)):
    _register(_bid, _dir, "p in R (branches p>=1, p<1)", ALL,
              f"Dragomir triangle-type bound {_kind}", "alpha_p", _regime_split1,
              (lambda f: lambda P, g, a, b, c, al, aq: f(P.p, g, a, b, c))(_dragomir(_kind)),
              _deg_p)
_register(BoundId.NEW_K, U, "p in R (branches p>=1, p<1)", ALL,
          "triangle refinement with weight t^(p-1), upper side", "alpha_p", _regime_split1,
          lambda P, g, a, b, c, al, aq: _new_upper(P.p, g, a, b, c), _deg_p)
_register(BoundId.NEW_k, L, "p in R (branches p>=1, p<1)", ALL,
          "triangle refinement with weight t^(p-1), lower side", "alpha_p", _regime_split1,
          lambda P, g, a, b, c, al, aq: _new_lower(P.p, g, a, b, c), _deg_p)
_register(BoundId.HILE, U, "p>=1, a!=b", ALL, "Hile inequality", "alpha_p", _regime_hile,
          lambda P, g, a, b, c, al, aq: _difference_quotient(P.p, a, b) * c, _deg_p)


def _hile_ext_kernel(P, g, a, b, c, al, aq):
    m = np.minimum(a, b)
    u = (np.maximum(a, b) - m) / m
    log_ratio = np.log1p(u)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.abs(np.expm1(P.p * log_ratio) / np.expm1(P.q * log_ratio))
    ratio = np.where(u > 0, ratio, np.nan)
    return m ** (P.p - P.q) * ratio * aq


_register(BoundId.HILE_EXT, U, "p/q>=1 (all spaces); p/q<=-1 (inner-product spaces only), a!=b",
          ALL, "extended Hile inequality in terms of alpha_q", "alpha_p", _regime_hile_ext,
          _hile_ext_kernel, _deg_p, needs=("alpha_q",))
_register(BoundId.SKEW_UP, U, "p in R (branches p<=1, p>1)", ALL,
          "skew p-angular distance, upper side", "beta_p", _regime_skew,
          lambda P, g, a, b, c, al, aq: _skew(True)(P.p, g, a, b, c), _deg_p)
_register(BoundId.SKEW_LO, L, "p in R (branches p<=1, p>1)", ALL,
          "skew p-angular distance, lower side", "beta_p", _regime_skew,
          lambda P, g, a, b, c, al, aq: _skew(False)(P.p, g, a, b, c), _deg_p)


def _dehghan(upper):
    def k(P, g, a, b, c, al, aq):
        m, M, _, spread = _parts(a, b, c)
        return c / M + spread / m if upper else c / m - spread / M

    return k


_register(BoundId.DEHGHAN_UP, U, "skew angular distance (index 0)", ALL,
          "Dehghan skew angular bound, upper", "beta_0", _regime_all, _dehghan(True), _deg_0)
_register(BoundId.DEHGHAN_LO, L, "skew angular distance (index 0)", ALL,
          "Dehghan skew angular bound, lower", "beta_0", _regime_all, _dehghan(False), _deg_0)


def _alpharel(upper):
    def k(P, g, a, b, c, al, aq):
        m, M, _, _ = _parts(a, b, c)
        p = P.p
        power_gap = np.abs(a**p - b**p)
        small, big = (m, M) if g == "p>=0" else (M, m)
        if upper:
            return small**p * al + power_gap
        return big**p * al - power_gap

    return k


_register(BoundId.ALPHAREL_UP, U, "p in R (branches p>=0, p<0)", ALL,
          "alpha_p against angular distance via homogeneity, upper", "alpha_p",
          _regime_alpharel, _alpharel(True), _deg_p, needs=("alpha",))
_register(BoundId.ALPHAREL_LO, L, "p in R (branches p>=0, p<0)", ALL,
          "alpha_p against angular distance via homogeneity, lower", "alpha_p",
          _regime_alpharel, _alpharel(False), _deg_p, needs=("alpha",))


def _ang_ab(a, b, c):
    m, M, _, spread = _parts(a, b, c)
    return (c - spread) / m, (c + spread) / M


_register(BoundId.ANG_UP, U, "angular distance", ALL, "Maligranda angular upper bound",
          "alpha_0", _regime_all, lambda P, g, a, b, c, al, aq: _ang_ab(a, b, c)[1], _deg_0)
_register(BoundId.ANG_LO, L, "angular distance", ALL, "Maligranda angular lower bound",
          "alpha_0", _regime_all, lambda P, g, a, b, c, al, aq: _ang_ab(a, b, c)[0], _deg_0)


def _ratio_lo_up(a, b, c):
    lo, up = _ang_ab(a, b, c)
    with np.errstate(invalid="ignore", divide="ignore"):
        return lo, up, lo / up


def _refined(upper):
    def k(P, g, a, b, c, al, aq):
        r = P.r
        lo, up, ratio = _ratio_lo_up(a, b, c)
        factor = ((1 + ratio**r) / 2) ** (1 / r)
        return factor * up if upper else lo / factor

    return k


_register(BoundId.REFINED_UP, U, "r>0, x!=y", IPSV,
          "power-mean refinement of angular bounds, upper", "alpha_0",
          _regime_r_pos(BoundId.REFINED_UP), _refined(True), _deg_0)
_register(BoundId.REFINED_LO, L, "r>0, x!=y", IPSV,
          "power-mean refinement of angular bounds, lower", "alpha_0",
          _regime_r_pos(BoundId.REFINED_LO), _refined(False), _deg_0)
_register(BoundId.KARAKTER, U, "0<r<=1, x!=y", CHAR,
          "power-mean refined angular upper bound as characterization", "alpha_0",
          _regime_karakter, _refined(True), _deg_0)


def _za_r1(upper):
    def k(P, g, a, b, c, al, aq):
        spread = np.abs(a - b)
        mid = c * (a + b) - spread**2
        with np.errstate(invalid="ignore", divide="ignore"):
            if upper:
                return mid / (2 * a * b)
            return 2 * (c * c - spread**2) / mid

    return k


_register(BoundId.ZA_R1_UP, U, "x!=y", IPSV, "arithmetic-mean refinement of angular bound",
          "alpha_0", _regime_all, _za_r1(True), _deg_0)
_register(BoundId.ZA_R1_LO, L, "x!=y", IPSV, "harmonic-mean refinement of angular bound",
          "alpha_0", _regime_all, _za_r1(False), _deg_0)
_register(BoundId.SREDINE, L, "r<=1 characterizes (r>1 fails in general)", CHAR,
          "power-mean lower bound on alpha_p", "alpha_p", _regime_sredine,
          lambda P, g, a, b, c, al, aq: power_mean_array(P.r, a**P.p, b**P.p) * al, _deg_p,
          needs=("alpha",))
_register(BoundId.KVADRATIK2, Direction.CONDITIONAL,
          "p in R; lower if alpha<=sqrt2, upper if alpha>sqrt2", IPSV,
          "quadratic-mean comparison in inner-product spaces", "alpha_p", _regime_kvadratik,
          lambda P, g, a, b, c, al, aq: np.sqrt((a ** (2 * P.p) + b ** (2 * P.p)) / 2) * al,
          _deg_p, needs=("alpha",))
_register(BoundId.HILE3, L, "|p|>=|q|, p!=q", CHAR,
          "Hile-type lower bound characterizing inner-product spaces", "alpha_p",
          _regime_abs_pq(BoundId.HILE3, p_dominates=True),
          lambda P, g, a, b, c, al, aq: (a**P.p + b**P.p) / (a**P.q + b**P.q) * aq, _deg_p,
          needs=("alpha_q",))
_register(BoundId.POMOCNA, U, "0<|r|<1 or r=-1", CHAR,
          "reduced Hile-type bound on alpha_r in terms of ||x-y||", "alpha_r", _regime_pomocna,
          lambda P, g, a, b, c, al, aq: (a**P.r + b**P.r) / (a + b) * c, _deg_r)
_register(BoundId.KORIJENJE, L, "|p|>=|q|, p!=q", CHAR,
          "geometric-mean comparison of alpha_p and alpha_q", "alpha_p",
          _regime_abs_pq(BoundId.KORIJENJE, p_dominates=True),
          lambda P, g, a, b, c, al, aq: (a * b) ** ((P.p - P.q) / 2) * aq, _deg_p,
          needs=("alpha_q",), min_dim=3)


def _pametno_kernel(P, g, a, b, c, al, aq):
    ap, bp = a**P.p, b**P.p
    return (2 * ap * bp * al + (ap - bp) ** 2) / (ap + bp)


_register(BoundId.PAMETNO, L, "p!=0, dim>=3", CHAR,
          "harmonic-mean lower bound on alpha_p via angular distance", "alpha_p",
          _regime_pametno, _pametno_kernel, _deg_p, needs=("alpha",), min_dim=3)
_register(BoundId.THA_II, U, "|p|<=|q|, p!=q, 0<=p/q<1, dim>=3", CHAR,
          "Rooin et al. characterization (arithmetic mean form)", "alpha_p",
          _regime_ratio(BoundId.THA_II, True),
          lambda P, g, a, b, c, al, aq: 2 * aq / (a ** (P.q - P.p) + b ** (P.q - P.p)), _deg_p,
          needs=("alpha_q",), min_dim=3)
_register(BoundId.THA_III, U, "|p|<=|q|, p!=q, dim>=3", CHAR,
          "Rooin et al. characterization (geometric mean form)", "alpha_p",
          _regime_abs_pq(BoundId.THA_III, p_dominates=False),
          lambda P, g, a, b, c, al, aq: (a * b) ** ((P.p - P.q) / 2) * aq, _deg_p,
          needs=("alpha_q",), min_dim=3)
_register(BoundId.THA_V, U, "0<=p/q<1, r in R, dim>=3", CHAR,
          "Rooin et al. characterization (power mean form)", "alpha_p", _regime_tha_v,
          lambda P, g, a, b, c, al, aq: aq / power_mean_array(P.r, a ** (P.q - P.p),
                                                             b ** (P.q - P.p)),
          _deg_p, needs=("alpha_q",), min_dim=3)


def _tha_vi_kernel(P, g, a, b, c, al, aq):
    v = aq / np.minimum(a ** (P.q - P.p), b ** (P.q - P.p))
    return np.where(a != b, v, np.nan)


_register(BoundId.THA_VI, U, "0<p/q<1, a!=b, dim>=3 (strict)", CHAR,
          "Rooin et al. characterization (minimum form)", "alpha_p",
          _regime_ratio(BoundId.THA_VI, False), _tha_vi_kernel, _deg_p,
          needs=("alpha_q",), min_dim=3)
_register(BoundId.KS, U, "angular distance", CHAR, "Kirk-Smiley (Dunkl-Williams constant 2)",
          "alpha_0", _regime_all, lambda P, g, a, b, c, al, aq: 2 * c / (a + b), _deg_0)
_register(BoundId.ALRASHED, U, "0<q<=1", CHAR, "Al-Rashed power-mean angular bound",
          "alpha_0", _regime_alrashed,
          lambda P, g, a, b, c, al, aq: c / power_mean_array(P.q, a, b), _deg_0)


def bound_catalog() -> list[InequalitySpec]:
    """All registry entries in declaration order."""
    return [e.spec for e in _REGISTRY.values()]


def get_spec(bid) -> InequalitySpec:
    return _entry(bid).spec


def _entry(bid) -> _Entry:
    try:
        return _REGISTRY[BoundId(bid)]
    except ValueError:
        raise UnknownBound(f"unknown bound id {bid!r}") from None


def select_regime(bid, params: DistanceParams, regime: str | None = None) -> str:
    """Branch label for ``params``; an explicit ``regime`` must agree with it."""
    entry = _entry(bid)
    actual = entry.regime(params)
    if regime is not None and regime != actual:
        raise ParamOutOfDomain(
            f"{entry.spec.id.value}: parameters {params.to_dict()} fall in regime "
            f"{actual!r}, not the requested {regime!r}"
        )
    return actual


def regime_formula(bid, regime: str) -> Callable:
    """Raw branch formula ``f(p, a, b, c)`` for the triple-only bound families.

    No domain check is made, so a branch can be evaluated outside its range
    (used to compare formulas that coincide across branches).
    """
    kernels = {
        BoundId.MAL_UP: _mal_up,
        BoundId.MAL_LO: _mal_lo,
        BoundId.NEW_K: _new_upper,
        BoundId.NEW_k: _new_lower,
        BoundId.DRG_D: _dragomir("D"),
        BoundId.DRG_S: _dragomir("S"),
        BoundId.DRG_d: _dragomir("d"),
        BoundId.DRG_s: _dragomir("s"),
    }
    f = kernels[BoundId(bid)]

    def formula(p, a, b, c):
        return f(p, regime, np.asarray(a, float), np.asarray(b, float), np.asarray(c, float))

    return formula


def evaluate_batch(bid, params: DistanceParams, a, b, c, alpha=None, alpha_q=None,
                   regime: str | None = None, hile_limit: bool = False):
    """Evaluate a bound on arrays of triples. Returns ``(regime, values)``.

    Entries outside a formula's definition (``a == b`` for the Hile family,
    ``x == y`` for the refined angular bounds) come back as NaN.
    """
    entry = _entry(bid)
    spec = entry.spec
    g = select_regime(bid, params, regime)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if "alpha" in spec.needs:
        alpha = np.asarray(_req(bid, alpha, "alpha (angular distance)"), dtype=np.float64)
    if "alpha_q" in spec.needs:
        alpha_q = np.asarray(_req(bid, alpha_q, "alpha_q"), dtype=np.float64)
    t = np.maximum(a, b)
    a_s, b_s, c_s = a / t, b / t, c / t
    aq_s = alpha_q / t**params.q if alpha_q is not None and params.q is not None else alpha_q
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        val = entry.kernel(params, g, a_s, b_s, c_s, alpha, aq_s)
        if hile_limit and spec.id in (BoundId.HILE, BoundId.HILE_EXT):
            val = np.where(a_s == b_s, _hile_limit(spec.id, params, a_s, c_s, aq_s), val)
        val = val * t ** entry.degree(params)
    return g, val


def _hile_limit(bid, params, a, c, aq):
    p = params.p
    if bid is BoundId.HILE:
        return p * a ** (p - 1) * c
    return np.abs(p / params.q) * a ** (p - params.q) * aq


def evaluate_bound(bid, params: DistanceParams, t: NormTriple, alpha: float | None = None,
                   alpha_q: float | None = None, regime: str | None = None,
                   hile_limit: bool = False) -> BoundResult:
    """Evaluate one registry bound on a validated triple.

    ``alpha`` (angular distance) and ``alpha_q`` are vector-level quantities the
    caller supplies for entries that need them. For KVADRATIK2 the direction is
    decided by ``alpha``.
    """
    entry = _entry(bid)
    spec = entry.spec
    if spec.id in (BoundId.HILE, BoundId.HILE_EXT) and t.a == t.b and not hile_limit:
        raise DegenerateTriple(f"{spec.id.value} is undefined when ||x|| == ||y||")
    if spec.id in (BoundId.REFINED_UP, BoundId.REFINED_LO, BoundId.KARAKTER,
                   BoundId.ZA_R1_UP, BoundId.ZA_R1_LO) and t.c == 0:
        raise DegenerateTriple(f"{spec.id.value} needs x != y")
    if spec.id is BoundId.THA_VI and t.a == t.b:
        raise DegenerateTriple("THA_VI needs ||x|| != ||y||")
    g, val = evaluate_batch(bid, params, t.a, t.b, t.c, alpha, alpha_q, regime, hile_limit)
    value = float(val)
    direction = spec.direction
    if direction is Direction.CONDITIONAL:
        if alpha <= math.sqrt(2):
            direction, g = Direction.LOWER, "alpha<=sqrt2"
        else:
            direction, g = Direction.UPPER, "alpha>sqrt2"
    requires_ips = spec.scope is not Scope.ALL_SPACES or g == "p/q<=-1"
    meaningful = direction is Direction.UPPER or value >= 0
    return BoundResult(spec.id, g, value, meaningful, requires_ips, direction)


# --------------------------------------------------------------------------
# ordering chain s <= d <= k <= alpha_p <= K <= D <= S

CHAIN_KEYS = ("s", "d", "k", "alpha_p", "K", "D", "S")


def _chain_relations(regime):
    """(lhs, rhs, kind) triples; kind is '<=' or '=='."""
    if regime == "p>=1":
        return [("s", "d", "<="), ("d", "k", "<="), ("k", "alpha_p", "<="),
                ("alpha_p", "K", "<="), ("K", "D", "=="), ("D", "S", "<=")]
    return [("s", "d", "<="), ("d", "k", "=="), ("k", "alpha_p", "<="),
            ("alpha_p", "K", "<="), ("K", "D", "<="), ("D", "S", "<=")]


def chain_arrays(p: float, a, b, c, alpha_p_values, ineq_tol: float = CHAIN_INEQ_TOL,
                 eq_tol: float = CHAIN_EQ_TOL):
    """Vectorized chain evaluation.

    Returns ``(regime, values, checks)`` where ``values`` maps each chain key to
    an array and ``checks`` is a list of ``(relation, gap, violated)`` with
    ``gap`` the signed excess over the allowed slack.
    """
    P = DistanceParams(p)
    ids = {"s": BoundId.DRG_s, "d": BoundId.DRG_d, "k": BoundId.NEW_k,
           "K": BoundId.NEW_K, "D": BoundId.DRG_D, "S": BoundId.DRG_S}
    values = {}
    regime = _regime_split1(P)
    for key, bid in ids.items():
        _, values[key] = evaluate_batch(bid, P, a, b, c)
    values["alpha_p"] = np.asarray(alpha_p_values, dtype=np.float64)
    values = {k: values[k] for k in CHAIN_KEYS}
    checks = []
    for lhs, rhs, kind in _chain_relations(regime):
        lv, rv = values[lhs], values[rhs]
        scale = np.maximum(1.0, np.maximum(np.abs(lv), np.abs(rv)))
        if kind == "<=":
            excess = (lv - rv) - ineq_tol * scale
        else:
            excess = np.abs(lv - rv) - eq_tol * scale
        checks.append((f"{lhs}{kind}{rhs}", lv - rv, excess > 0))
    return regime, values, checks


@dataclass(frozen=True)
class ChainReport:
    p: float
    regime: str
    triple: tuple[float, float, float]
    values: dict
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def ordered(self) -> list[tuple[str, float]]:
        return [(k, self.values[k]) for k in CHAIN_KEYS]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "p": self.p,
            "regime": self.regime,
            "triple": list(self.triple),
            "values": dict(self.ordered()),
            "violations": list(self.violations),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChainReport":
        return cls(d["p"], d["regime"], tuple(d["triple"]), dict(d["values"]),
                   tuple(d["violations"]))


def chain_values(p: float, t: NormTriple, alpha_p_value: float) -> ChainReport:
    """Evaluate the ordering chain for one triple and a measured alpha_p."""
    if alpha_p_value < 0:
        raise ValueError("alpha_p must be nonnegative")
    regime, values, checks = chain_arrays(p, t.a, t.b, t.c, alpha_p_value)
    violations = tuple(rel for rel, _, bad in checks if bool(bad))
    return ChainReport(p, regime, t.as_tuple(), {k: float(v) for k, v in values.items()},
                       violations)
