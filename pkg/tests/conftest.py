import numpy as np
import pytest
from hypothesis import settings, strategies as st

from spectre import _pykernels
from spectre._backend import available_backends
from spectre.filtration import ColorFiltrationSpec
from spectre.graph import ColoredGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

PALETTE = ("red", "blue", "green")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@st.composite
def colored_graphs(draw, min_n=1, max_n=9, colors=PALETTE):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    cols = draw(st.lists(st.sampled_from(colors), min_size=n, max_size=n))
    return ColoredGraph.build(n, [p for p, keep in zip(pairs, mask) if keep], cols, list(colors))


@st.composite
def color_specs(draw, colors=PALETTE, integer=True):
    cols = sorted(colors)
    pairs = [(a, b) for i, a in enumerate(cols) for b in cols[i:]]
    if integer:
        vals = st.integers(0, 3).map(float)
        evals = st.integers(1, 3).map(float)
    else:
        vals = st.floats(-5, 5, allow_nan=False)
        evals = st.floats(0.01, 5, allow_nan=False)
    fv = {c: draw(vals) for c in cols}
    fe = {p: draw(evals) for p in pairs}
    return ColorFiltrationSpec(fv, fe)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


@pytest.fixture
def pykernels():
    return _pykernels


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
