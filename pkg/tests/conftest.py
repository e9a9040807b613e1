import pytest
from hypothesis import HealthCheck, settings

from finsemi.core import builtin_structure

settings.register_profile(
    "suite", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("suite")

FIXTURE_NAMES = (
    ["boolean"]
    + [f"zmod({n})" for n in range(2, 7)]
    + [f"truncated-nat({k})" for k in range(2, 5)]
    + [f"chain-lattice({n})" for n in range(2, 5)]
    + ["product(zmod(2),zmod(2))", "product(zmod(2),boolean)", "product(boolean,boolean)", "product(zmod(2),zmod(3))"]
)

SMALL_NAMES = ["zmod(2)", "boolean", "zmod(3)", "truncated-nat(2)", "chain-lattice(3)", "zmod(4)"]


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_semiring(request):
    return builtin_structure(request.param)
