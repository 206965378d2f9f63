"""Boundary values on the unit circle: sampling, Fourier data, Riesz projection
and outer functions with prescribed modulus."""
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    GridMismatch,
    NotHardy,
    NotLogIntegrable,
    PoleOnCircle,
    TruncationTooSmall,
)
from .hardy import FiniteBlaschke, HardyFunction, as_hardy
from .rational import (
    CIRCLE_TOL,
    Polynomial,
    RationalFn,
    as_rational,
    canonicalize,
    region_classify,
)

DEFAULT_GRID = 4096
MIN_GRID = 256
CLAMP_FLOOR = 1e-12


def unit_grid(n):
    return np.exp(2j * np.pi * np.arange(n) / n)


def _check_size(n):
    if n < MIN_GRID or n & (n - 1):
        raise TruncationTooSmall(f"grid size must be a power of two >= {MIN_GRID}, got {n}")


@dataclass(frozen=True, eq=False)
class BoundaryGrid:
    """Samples at the n-th roots of unity, exp(2 pi i k / n), k = 0..n-1."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.complex128).ravel().copy()
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @property
    def n_samples(self):
        return self.samples.size

    @cached_property
    def coeffs(self):
        """Fourier coefficients in numpy FFT order (index k mod n)."""
        c = np.fft.fft(self.samples) / self.n_samples
        c.flags.writeable = False
        return c

    def coeff(self, k):
        return self.coeffs[k % self.n_samples]

    def centered_coeffs(self):
        """(frequencies -n/2..n/2-1, coefficients)."""
        n = self.n_samples
        return np.arange(-n // 2, n // 2), np.fft.fftshift(self.coeffs)

    @classmethod
    def from_coeffs(cls, coeffs, n):
        """Grid of the trigonometric polynomial sum_k coeffs[k] z^k, k >= 0."""
        c = np.zeros(n, dtype=np.complex128)
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.size > n // 2:
            raise TruncationTooSmall("too many coefficients for the grid")
        c[: coeffs.size] = coeffs
        return cls(np.fft.ifft(c) * n)

    # arithmetic ---------------------------------------------------------
    def _other(self, other):
        if isinstance(other, BoundaryGrid):
            if other.n_samples != self.n_samples:
                raise GridMismatch(f"{self.n_samples} vs {other.n_samples} samples")
            return other.samples
        if np.isscalar(other):
            return other
        return to_grid(other, self.n_samples).samples

    def __mul__(self, other):
        return BoundaryGrid(self.samples * self._other(other))

    __rmul__ = __mul__

    def __add__(self, other):
        return BoundaryGrid(self.samples + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BoundaryGrid(self.samples - self._other(other))

    def __rsub__(self, other):
        return BoundaryGrid(self._other(other) - self.samples)

    def __truediv__(self, other):
        return BoundaryGrid(self.samples / self._other(other))

    def __rtruediv__(self, other):
        return BoundaryGrid(self._other(other) / self.samples)

    def __neg__(self):
        return BoundaryGrid(-self.samples)

    def conj(self):
        return BoundaryGrid(np.conj(self.samples))

    def abs(self):
        return BoundaryGrid(np.abs(self.samples))

    def norm(self):
        """L2(dm) norm, i.e. the root mean square of the samples."""
        return float(np.sqrt(np.mean(np.abs(self.samples) ** 2)))

    def sup(self):
        return float(np.max(np.abs(self.samples)))

    def at_zero(self):
        """Value at 0 of the analytic (Riesz) part."""
        return complex(self.coeffs[0])


def sample_fourier(f, n=DEFAULT_GRID):
    """Sample a rational/Blaschke/Hardy function or callable on the n-point grid."""
    _check_size(n)
    return to_grid(f, n)


def to_grid(f, n):
    if isinstance(f, BoundaryGrid):
        if f.n_samples != n:
            raise GridMismatch(f"grid has {f.n_samples} samples, wanted {n}")
        return f
    if isinstance(f, OuterNumeric):
        return to_grid(f.boundary, n)
    if isinstance(f, HardyFunction):
        f = f.value
    if isinstance(f, Polynomial):
        f = RationalFn(f, Polynomial([1]))
    w = unit_grid(n)
    if isinstance(f, RationalFn):
        f = canonicalize(f)
        if f.den.degree > 0:
            rep = region_classify(f, CIRCLE_TOL)
            if rep.poles_on_circle.size:
                raise PoleOnCircle(f"{f!r} has a pole on the circle")
        return BoundaryGrid(f.num(w) / f.den(w))
    if isinstance(f, FiniteBlaschke):
        return BoundaryGrid(f(w))
    if callable(f):
        return BoundaryGrid(np.broadcast_to(np.asarray(f(w), dtype=np.complex128), (n,)))
    return BoundaryGrid(np.full(n, complex(f)))


def riesz_project(g):
    """Zero every strictly negative frequency (the Nyquist mode counts as negative)."""
    c = np.array(g.coeffs)
    n = g.n_samples
    c[n // 2:] = 0
    return BoundaryGrid(np.fft.ifft(c) * n)


def negative_mass(g, modes=None):
    """||negative-frequency part|| / ||g|| on the grid (first ``modes`` modes if given)."""
    c = g.coeffs
    n = g.n_samples
    total = np.linalg.norm(c)
    if total == 0:
        return 0.0
    neg = c[n // 2:] if modes is None else c[n - modes:]
    return float(np.linalg.norm(neg) / total)


def winding_number(g):
    """Winding number of the closed sample curve around 0."""
    s = g.samples
    steps = np.angle(np.roll(s, -1) / s)
    return int(np.rint(np.sum(steps) / (2 * np.pi)))


@dataclass(frozen=True, eq=False)
class OuterNumeric:
    """Outer function known through its boundary values; value at 0 is real positive."""

    boundary: BoundaryGrid
    log_modulus: BoundaryGrid
    warnings: tuple = field(default_factory=tuple)

    @property
    def n_samples(self):
        return self.boundary.n_samples

    def at_zero(self):
        return self.boundary.at_zero()

    def winding(self):
        return winding_number(self.boundary)

    def modulus_error(self, target):
        target = np.abs(to_grid(target, self.n_samples).samples)
        return float(np.max(np.abs(np.abs(self.boundary.samples) - target)))


def _outer_on_grid(mod, clamp):
    n = mod.size
    low = mod < clamp
    logm = np.log(np.maximum(mod, clamp))
    c = np.fft.fft(logm) / n
    # analytic completion of the real log-modulus: c0 + 2 sum_{k>0} c_k z^k
    h = np.zeros(n, dtype=np.complex128)
    h[0] = c[0].real
    h[1:n // 2] = 2 * c[1:n // 2]
    h[n // 2] = c[n // 2].real
    log_u = np.fft.ifft(h) * n
    return np.exp(log_u), logm, float(np.mean(low))


def outer_from_modulus(m, n=DEFAULT_GRID, clamp=CLAMP_FLOOR, alias_check=True):
    """Outer function u with |u| = m on the circle and u(0) > 0.

    ``m`` is a BoundaryGrid of positive values or a callable on the circle.
    The conjugate function is applied spectrally (multiplier -i sign k).  For
    callables the construction is repeated on a 2n grid and the two results
    must agree to 1e-7, otherwise :class:`TruncationTooSmall` is raised.
    """
    notes = []
    if isinstance(m, BoundaryGrid):
        mod = np.abs(m.samples)
        n = m.n_samples
        _check_size(n)
        fine = None
    else:
        _check_size(n)
        w = unit_grid(n)
        mod = np.abs(np.asarray(m(w), dtype=np.complex128)) * np.ones(n)
        fine = m if alias_check else None
    u, logm, frac_low = _outer_on_grid(mod, clamp)
    if frac_low > 0:
        notes.append(f"modulus clamped to {clamp:g} on {frac_low:.2%} of the grid")
    if frac_low > 0.01:
        warnings.warn(NotLogIntegrable.__doc__ + " " + notes[-1], RuntimeWarning)
        notes.append(NotLogIntegrable.code)
    if fine is not None:
        w2 = unit_grid(2 * n)
        mod2 = np.abs(np.asarray(fine(w2), dtype=np.complex128)) * np.ones(2 * n)
        u2, _, _ = _outer_on_grid(mod2, clamp)
        gap = float(np.max(np.abs(u2[::2] - u)))
        if gap >= 1e-7 * max(1.0, float(np.max(np.abs(u)))):
            raise TruncationTooSmall(f"outer function not resolved on {n} points (diff {gap:.2e})")
    return OuterNumeric(BoundaryGrid(u), BoundaryGrid(logm), tuple(notes))


def majorant_outer(functions, n=DEFAULT_GRID):
    """Outer u with |u| = |f_1| + ... + |f_k| + 1 for Hardy functions f_i."""
    vals = []
    for f in functions:
        v = f.value if isinstance(f, HardyFunction) else as_rational(f)
        if v.is_zero():
            continue
        if not as_hardy(v).is_hardy:
            raise NotHardy(f"{v!r} has a pole in the closed disc")
        vals.append(v)

    def modulus(w):
        total = np.ones(w.shape, dtype=float)
        for v in vals:
            total += np.abs(v.num(w) / v.den(w))
        return total

    return outer_from_modulus(modulus, n)
