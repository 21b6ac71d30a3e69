"""Shared fixtures: memoized full-pipeline runs, reused across test modules."""

import pytest

from milnor.chebyshev import ChebyshevSpec, canonical_spec
from milnor.poly import parse_polynomial
from milnor.report import RunConfig, analyze

KUMMER_TEXT = (
    "x0^4 + x1^4 + x2^4 + x3^4"
    " - x0^2*x1^2 - x0^2*x2^2 - x0^2*x3^2"
    " - x1^2*x2^2 - x1^2*x3^2 - x2^2*x3^2"
)

FERMAT_TEXT = "x0^4 + x1^4 + x2^4 + x3^4"


class PipelineCache:
    """One analyze() per hypersurface per test session."""

    def __init__(self):
        self._reports = {}

    def cc(self, n, d, k=None):
        key = ("cc", n, d, k)
        if key not in self._reports:
            spec = canonical_spec(n, d) if k is None else ChebyshevSpec(n, d, k)
            self._reports[key] = analyze(chebyshev=spec,
                                         config=RunConfig(seed=0))
        return self._reports[key]

    def poly(self, name, text, num_vars=None):
        key = ("poly", name)
        if key not in self._reports:
            f = parse_polynomial(text, num_vars=num_vars)
            self._reports[key] = analyze(f, source=name,
                                         config=RunConfig(seed=0))
        return self._reports[key]


@pytest.fixture(scope="session")
def pipeline():
    return PipelineCache()


@pytest.fixture(scope="session")
def kummer(pipeline):
    return pipeline.poly("kummer", KUMMER_TEXT, num_vars=4)


@pytest.fixture(scope="session")
def fermat(pipeline):
    return pipeline.poly("fermat", FERMAT_TEXT, num_vars=4)
