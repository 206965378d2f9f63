import numpy as np
import pytest
from hypothesis import settings

from hardykernels.hardy import FiniteBlaschke
from hardykernels.rational import Polynomial, RationalFn, canonicalize

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def disc_point(rng, rmax=0.8):
    return rmax * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


def outside_point(rng, rmin=1.3, rmax=3.0):
    return rng.uniform(rmin, rmax) * np.exp(2j * np.pi * rng.uniform())


def random_blaschke(rng, deg, rmax=0.8):
    return FiniteBlaschke([disc_point(rng, rmax) for _ in range(deg)])


def random_rational(rng, max_num=4, max_poles=2, min_num=0):
    """Rational function with zeros in |z| <= 0.8 or 1.3 <= |z| <= 3 and
    poles in 1.3 <= |z| <= 3."""
    nz = rng.integers(min_num, max_num + 1)
    zeros = [disc_point(rng) if rng.uniform() < 0.5 else outside_point(rng) for _ in range(nz)]
    poles = [outside_point(rng) for _ in range(rng.integers(0, max_poles + 1))]
    lead = (0.5 + rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    return canonicalize(RationalFn(Polynomial.from_roots(zeros, lead), Polynomial.from_roots(poles)))


def random_outer(rng, max_num=3, max_poles=2):
    zeros = [outside_point(rng) for _ in range(rng.integers(0, max_num + 1))]
    poles = [outside_point(rng) for _ in range(rng.integers(0, max_poles + 1))]
    lead = 0.5 + rng.uniform()
    return canonicalize(RationalFn(Polynomial.from_roots(zeros, lead), Polynomial.from_roots(poles)))


def circle(n=256):
    return np.exp(2j * np.pi * np.arange(n) / n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
