"""p-angular distances in finite-dimensional normed spaces.

Modules:
    space     norms, norm triples, radial power maps
    distance  alpha_p, beta_p, inner-product closed forms, power means
    bounds    registry of bounds on alpha_p and the ordering chain
    verify    seeded property checks and positivity scans
    probe     counterexample search and space classification
    cli       the ``pangular`` command
"""

from .bounds import (
    BoundId,
    BoundResult,
    ChainReport,
    Direction,
    Scope,
    bound_catalog,
    chain_values,
    evaluate_bound,
)
from .distance import (
    DistanceParams,
    alpha_p,
    angular_distance,
    beta_p,
    identity_residual,
    ips_alpha_p_sq,
    power_mean,
)
from .errors import PangularError
from .probe import SearchConfig, SearchResult, Verdict, classify_space, search_violation, violation_margin
from .space import NormKind, NormTriple, SpaceSpec, parse_space, radial_transform, triple_of, validate_triple
from .verify import (
    SampleConfig,
    VerificationReport,
    asymptotic_value,
    check_property,
    positivity_scan,
    realize_triple,
    sample_pair,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
