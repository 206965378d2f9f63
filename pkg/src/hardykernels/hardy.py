"""Hardy/Smirnov classification, finite Blaschke products and their lattice.

Functions here are exact in the sense of the rational layer: every answer is
computed from roots and coefficients, never from boundary samples.  The one
sampled quantity, :func:`reflected_negative_mass`, exists to cross-check the
structural answers.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import HardyKernelError, NotSmirnov, ZeroFunction
from .rational import (
    ROOT_TOL,
    Polynomial,
    RationalFn,
    backward_shift,
    boundary_conjugate,
    canonicalize,
    rational,
    region_classify,
)

__all__ = [
    "Cyclicity", "HardyClass", "FiniteBlaschke", "HardyFunction",
    "classify_and_factor", "as_hardy", "blaschke_gcd", "blaschke_lcm",
    "blaschke_divides", "backward_shift", "minimal_inner",
    "one_component_membership", "cyclicity_flag", "times_rational",
    "reflected_negative_mass", "lacunary_cyclic",
]


class HardyClass(str, enum.Enum):
    HP_ALL = "HpAll"
    SMIRNOV_ONLY = "SmirnovOnly"
    NOT_SMIRNOV = "NotSmirnov"


class Cyclicity(str, enum.Enum):
    NON_CYCLIC = "NonCyclic"
    CYCLIC_DECLARED = "CyclicDeclared"
    UNKNOWN = "Unknown"


def _sorted_zeros(zeros):
    z = np.atleast_1d(np.asarray(zeros, dtype=np.complex128)).ravel()
    return z[np.lexsort((z.imag, z.real))] if z.size else z


@dataclass(frozen=True, eq=False)
class FiniteBlaschke:
    """const * prod (z - a) / (1 - conj(a) z) over the zero multiset."""

    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    const: complex = 1.0 + 0j

    def __post_init__(self):
        z = _sorted_zeros(self.zeros)
        if z.size and np.max(np.abs(z)) >= 1:
            raise HardyKernelError(f"Blaschke zeros must lie in the open disc: {z}")
        c = complex(self.const)
        if abs(abs(c) - 1) > 1e-12:
            raise HardyKernelError(f"Blaschke constant must be unimodular, got {c}")
        z.flags.writeable = False
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "const", c)

    @property
    def degree(self):
        return int(self.zeros.size)

    def __call__(self, z):
        if np.ndim(z) == 0:
            return complex(_kernels.blaschke_eval(self.zeros, self.const, np.array([z]))[0])
        return _kernels.blaschke_eval(self.zeros, self.const, z)

    def __mul__(self, other):
        return FiniteBlaschke(np.concatenate([self.zeros, other.zeros]),
                              self.const * other.const)

    def to_rational(self):
        num = Polynomial.from_roots(self.zeros, self.const)
        den = Polynomial([1])
        for a in self.zeros:
            den = den * Polynomial([1, -np.conj(a)])
        return canonicalize(RationalFn(num, den))

    def without(self, index):
        """The product with the zero at position ``index`` removed."""
        return FiniteBlaschke(np.delete(self.zeros, index), self.const)

    def same_as(self, other, tol=ROOT_TOL):
        """Equality up to the unimodular constant."""
        return blaschke_divides(self, other, tol) and blaschke_divides(other, self, tol)

    def __repr__(self):
        return f"FiniteBlaschke(zeros={np.round(self.zeros, 12).tolist()})"


def blaschke_factor(a):
    return FiniteBlaschke([a])


def z_power(k):
    return FiniteBlaschke(np.zeros(k, complex))


def _match(a, b, tol):
    """Greedy multiset matching; returns (matched from a, unmatched a, unmatched b)."""
    free = list(b)
    common, only_a = [], []
    for x in a:
        if free:
            d = np.abs(np.asarray(free) - x)
            j = int(np.argmin(d))
            if d[j] <= tol:
                common.append(0.5 * (x + free.pop(j)))
                continue
        only_a.append(x)
    return common, only_a, free


def blaschke_gcd(b1, b2, tol=ROOT_TOL):
    common, _, _ = _match(b1.zeros, b2.zeros, tol)
    return FiniteBlaschke(common)


def blaschke_lcm(b1, b2, tol=ROOT_TOL):
    common, only1, only2 = _match(b1.zeros, b2.zeros, tol)
    return FiniteBlaschke(common + only1 + list(only2))


def blaschke_divides(b1, b2, tol=ROOT_TOL):
    """True when the zero multiset of ``b1`` is contained in that of ``b2``."""
    _, only1, _ = _match(b1.zeros, b2.zeros, tol)
    return not only1


@dataclass(frozen=True, eq=False)
class HardyFunction:
    value: RationalFn
    cls: HardyClass
    inner: "FiniteBlaschke | None"
    outer: "RationalFn | None"
    cyclicity: Cyclicity = Cyclicity.NON_CYCLIC

    def __call__(self, z):
        return self.value(z)

    @property
    def is_hardy(self):
        return self.cls is HardyClass.HP_ALL


def classify_and_factor(f, cyclicity=None):
    """Classify a rational function and split it into inner and outer parts.

    The inner part is the Blaschke product over the zeros in the open disc
    (constant 1); the outer part is the exact quotient, so that
    ``inner * outer == f``.  Zeros on the circle stay with the outer part.
    """
    f = canonicalize(f)
    if f.is_zero():
        raise ZeroFunction("cannot classify the zero function")
    rep = region_classify(f)
    declared = Cyclicity(cyclicity) if cyclicity is not None else None
    if rep.poles_in_disc.size or rep.poles_on_circle.size:
        return HardyFunction(f, HardyClass.NOT_SMIRNOV, None, None,
                             declared or Cyclicity.UNKNOWN)
    inner = FiniteBlaschke(rep.zeros_in_disc)
    outer = f / inner.to_rational() if inner.degree else f
    if declared is not Cyclicity.CYCLIC_DECLARED:
        declared = Cyclicity.NON_CYCLIC
    return HardyFunction(f, HardyClass.HP_ALL, inner, outer, declared)


def as_hardy(x, cyclicity=None):
    """Accept a HardyFunction, RationalFn, Polynomial or number."""
    if isinstance(x, HardyFunction):
        return x
    if isinstance(x, Polynomial):
        x = RationalFn(x, Polynomial([1]))
    elif not isinstance(x, RationalFn):
        x = RationalFn.const(x)
    return classify_and_factor(x, cyclicity)


def times_rational(h, r):
    """h * r with h's cyclicity flag carried over.

    Multiplying by a nonzero rational function cannot change cyclicity for the
    backward shift, which is what lets a declared flag survive quotients.
    """
    return classify_and_factor(h.value * r, h.cyclicity
                               if h.cyclicity is Cyclicity.CYCLIC_DECLARED else None)


def _value(h):
    if isinstance(h, HardyFunction):
        if not h.is_hardy:
            raise NotSmirnov("function has poles in the closed disc")
        return h.value
    f = canonicalize(h if isinstance(h, RationalFn) else RationalFn.const(h))
    if not f.is_zero():
        rep = region_classify(f)
        if rep.poles_in_disc.size or rep.poles_on_circle.size:
            raise NotSmirnov("function has poles in the closed disc")
    return f


def minimal_inner(h):
    """Smallest Blaschke product B with conj(z) * B * conj(h) analytic.

    The zeros of B are the poles inside the disc of the continuation
    ``boundary_conjugate(h)(z) / z``, with multiplicity.
    """
    f = _value(h)
    if f.is_zero():
        return FiniteBlaschke()
    reflected = boundary_conjugate(f) * RationalFn.z_power(-1)
    return FiniteBlaschke(region_classify(reflected).poles_in_disc)


def one_component_membership(h, theta):
    return blaschke_divides(minimal_inner(h), theta)


def cyclicity_flag(h):
    if isinstance(h, HardyFunction):
        if h.cyclicity is Cyclicity.CYCLIC_DECLARED:
            return Cyclicity.CYCLIC_DECLARED
        return Cyclicity.NON_CYCLIC if h.is_hardy else Cyclicity.UNKNOWN
    return Cyclicity.NON_CYCLIC


def reflected_negative_mass(h, theta, n_samples=4096, modes=64):
    """Relative l2 mass of the first ``modes`` negative Fourier modes of
    conj(z) * theta * conj(h) on an ``n_samples`` grid."""
    f = _value(h)
    w = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    g = np.conj(w) * theta(w) * np.conj(f(w))
    c = np.fft.fft(g) / n_samples
    total = np.linalg.norm(c)
    if total == 0:
        return 0.0
    return float(np.linalg.norm(c[n_samples - modes:]) / total)


def lacunary_cyclic(terms=8, ratio=0.5):
    """Truncated lacunary series sum ratio^k z^(2^k), flagged as cyclic.

    A polynomial is never cyclic for the backward shift; this is a finite
    stand-in for the infinite lacunary series (which is), used to exercise the
    cyclic branches.  The flag is a declaration, not a computed property.
    """
    c = np.zeros(2 ** (terms - 1) + 1, dtype=np.complex128)
    for k in range(terms):
        c[2 ** k] += ratio ** k
    f = rational(c)
    return classify_and_factor(f, Cyclicity.CYCLIC_DECLARED)
