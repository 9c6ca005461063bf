import numpy as np
import pytest
from hypothesis import strategies as st

from povmrange import catalog
from povmrange.povm import Effect, validate_povm


def projective_z():
    return validate_povm([Effect(0.5, (0, 0, 0.5)), Effect(0.5, (0, 0, -0.5))], label="Z")


@pytest.fixture
def z_povm():
    return projective_z()


@pytest.fixture(params=[k.value for k in catalog.CatalogKind])
def catalog_kind(request):
    return catalog.CatalogKind(request.param)


def symmetric_psd(draw_floats, n):
    """Random PSD matrix of rank <= n built from a drawn factor."""
    a = np.array(draw_floats).reshape(n, -1)
    return a @ a.T


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split("] ")[1].split(".")[0])):
            terminalreporter.write_line(line)
