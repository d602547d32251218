import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pangular.space import SpaceSpec

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SPACES = [
    SpaceSpec.euclidean(2),
    SpaceSpec.euclidean(3),
    SpaceSpec.lp(1.0, 2),
    SpaceSpec.lp(3.0, 3),
    SpaceSpec.linf(2),
    SpaceSpec.linf(4),
    SpaceSpec.weighted_l2((1.0, 4.0)),
]

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def vectors(dim):
    """Vectors with coordinates in [-10, 10] and norm well away from zero."""
    return st.lists(coord, min_size=dim, max_size=dim).map(np.array).filter(
        lambda v: np.max(np.abs(v)) > 1e-2
    )


@pytest.fixture(params=SPACES, ids=lambda s: s.to_syntax())
def space(request):
    return request.param
