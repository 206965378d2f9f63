"""Complex polynomials and rational functions in double precision.

Everything in the package that has a closed form is carried as a
:class:`RationalFn`; boundary grids are only used for genuinely non-rational
objects (numerically constructed outer functions).
"""
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import _kernels
from .errors import PoleAtOrigin, PoleHit, PoleOnCircle, ZeroPolynomial

#: absolute distance under which two roots are treated as the same point
ROOT_TOL = 1e-8
#: half-width of the band ``||r| - 1| <= CIRCLE_TOL`` counted as "on the circle"
CIRCLE_TOL = 1e-9
#: radius inside which eigenvalues are tested as one multiple root
_CLUSTER_RADIUS = 1e-3
# coefficients below this fraction of the operand scale are cancellation noise
_CANCEL_RTOL = 1e-13


class Polynomial:
    """Immutable complex polynomial, coefficients in ascending degree."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=(0,)):
        c = np.atleast_1d(np.array(coeffs, dtype=np.complex128)).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.flags.writeable = False
        self._c = c

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        c = np.array([1.0 + 0j])
        for r in np.atleast_1d(np.asarray(roots, dtype=np.complex128)):
            c = np.concatenate([[0j], c]) - r * np.concatenate([c, [0j]])
        return cls(lead * c)

    @classmethod
    def monomial(cls, k, c=1.0):
        out = np.zeros(k + 1, dtype=np.complex128)
        out[k] = c
        return cls(out)

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return -1 if self.is_zero() else self._c.size - 1

    @property
    def lead(self):
        return self._c[-1]

    def is_zero(self):
        return self._c.size == 1 and self._c[0] == 0

    def scale(self):
        return float(np.max(np.abs(self._c)))

    def __call__(self, z):
        if np.ndim(z) == 0:
            acc = 0j
            for c in self._c[::-1]:
                acc = acc * z + c
            return acc
        return _kernels.horner(self._c, z)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Polynomial({np.round(self._c, 12).tolist()})"

    def __neg__(self):
        return Polynomial(-self._c)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self._c.size, other._c.size)
        out = np.zeros(n, dtype=np.complex128)
        out[: self._c.size] += self._c
        out[: other._c.size] += other._c
        scale = max(self.scale(), other.scale())
        out[np.abs(out) <= _CANCEL_RTOL * scale] = 0
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial(self._c * other)
        other = _as_poly(other)
        return Polynomial(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def derivative(self, k=1):
        c = self._c
        for _ in range(k):
            if c.size == 1:
                return Polynomial([0])
            c = c[1:] * np.arange(1, c.size)
        return Polynomial(c)

    def deflate(self, r):
        """Quotient of synthetic division by (z - r); the remainder is dropped."""
        c = self._c
        if c.size == 1:
            return Polynomial([0])
        q = np.zeros(c.size - 1, dtype=np.complex128)
        acc = c[-1]
        for k in range(c.size - 2, -1, -1):
            q[k] = acc
            acc = c[k] + acc * r
        return Polynomial(q)

    def conj_coeffs(self):
        return Polynomial(np.conj(self._c))

    def reversed(self, degree=None):
        """``z**degree * p(1/z)``; ``degree`` defaults to deg p."""
        d = self.degree if degree is None else degree
        c = np.zeros(d + 1, dtype=np.complex128)
        c[d - self._c.size + 1:] = self._c[::-1]
        return Polynomial(c)

    def shift(self, k):
        """Multiply by z**k (k >= 0)."""
        return Polynomial(np.concatenate([np.zeros(k, dtype=np.complex128), self._c]))


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


def _cluster_is_multiple_root(p, c, m):
    """True when p and its first m-1 derivatives vanish at c to working accuracy."""
    ac = abs(c)
    a = np.abs(p.coeffs)
    for k in range(m):
        dk = p.derivative(k)
        # bound on |p^(k)| at radius |c| from the absolute coefficients
        j = np.arange(k, a.size)
        s = np.sum(a[k:] * np.array([factorial(int(t)) / factorial(int(t - k)) for t in j])
                   * ac ** (j - k))
        if abs(dk(c)) > 1e-7 * max(s, 1e-300):
            return False
    return True


def _newton(q, r, steps=2):
    dq = q.derivative()
    for _ in range(steps):
        d = dq(r)
        if d == 0:
            break
        nr = r - q(r) / d
        if abs(q(nr)) <= abs(q(r)):
            r = nr
    return r


def _clusters(raw):
    """Single-linkage groups of eigenvalues closer than the cluster radius."""
    groups = []
    for r in raw:
        hits = [g for g in groups
                if any(abs(r - s) <= _CLUSTER_RADIUS * max(1.0, abs(r)) for s in g)]
        merged = [r]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def root_multiplicities(p):
    """Distinct roots of ``p`` with their multiplicities, as a list of pairs."""
    if p.is_zero():
        raise ZeroPolynomial("poly_roots of the zero polynomial")
    c = p.coeffs
    k0 = int(np.flatnonzero(c)[0])
    out = [(0j, k0)] if k0 else []
    q = Polynomial(c[k0:])
    if q.degree <= 0:
        return out
    raw = np.roots(q.coeffs[::-1]).astype(np.complex128)
    for g in _clusters(raw):
        m = len(g)
        if m > 1:
            # the mean of a perturbed m-fold eigenvalue is accurate; polish it as
            # the simple root of the (m-1)-th derivative
            centre = _newton(q.derivative(m - 1), complex(np.mean(g)))
            if _cluster_is_multiple_root(q, centre, m):
                out.append((complex(centre), m))
                continue
        out.extend((complex(_newton(q, r)), 1) for r in g)
    return out


def poly_roots(p):
    """Roots of ``p`` repeated according to multiplicity.

    Companion-matrix eigenvalues, two Newton steps per root, then nearby
    eigenvalues are merged into one multiple root when the derivatives
    confirm it.
    """
    roots = [r for r, m in root_multiplicities(p) for _ in range(m)]
    return np.array(sorted(roots, key=lambda r: (round(r.real, 9), round(r.imag, 9))),
                    dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class RationalFn:
    """num(z) / den(z).  Use :func:`rational` to get the canonical form."""

    num: Polynomial
    den: Polynomial

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls(Polynomial([c]), Polynomial([1]))

    @classmethod
    def z_power(cls, k):
        if k >= 0:
            return cls(Polynomial.monomial(k), Polynomial([1]))
        return cls(Polynomial([1]), Polynomial.monomial(-k))

    @classmethod
    def from_roots(cls, zeros=(), poles=(), lead=1.0):
        return cls(Polynomial.from_roots(zeros, lead), Polynomial.from_roots(poles))

    def canonical(self):
        return canonicalize(self)

    # queries -----------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def zeros(self):
        return poly_roots(self.num) if not self.num.is_zero() else np.zeros(0, complex)

    def poles(self):
        return poly_roots(self.den)

    def __call__(self, z):
        return rational_eval(self, z)

    def __repr__(self):
        return f"RationalFn(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"

    def same_as(self, other, tol=1e-10):
        """Coefficient-wise comparison of canonical forms."""
        a, b = canonicalize(self), canonicalize(other)
        if a.num.degree != b.num.degree or a.den.degree != b.den.degree:
            return False
        s = max(a.num.scale(), b.num.scale(), 1.0)
        return (np.max(np.abs(a.num.coeffs - b.num.coeffs)) <= tol * s
                and np.max(np.abs(a.den.coeffs - b.den.coeffs)) <= tol * s)

    # arithmetic --------------------------------------------------------
    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __add__(self, other):
        other = as_rational(other)
        if self.den == other.den:
            return canonicalize(RationalFn(self.num + other.num, self.den))
        return canonicalize(RationalFn(self.num * other.den + other.num * self.den,
                                       self.den * other.den))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_rational(other))

    def __rsub__(self, other):
        return as_rational(other) - self

    def __mul__(self, other):
        other = as_rational(other)
        return canonicalize(RationalFn(self.num * other.num, self.den * other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return canonicalize(RationalFn(self.num * other.den, self.den * other.num))

    def __rtruediv__(self, other):
        return as_rational(other) / self

    def __pow__(self, k):
        out = RationalFn.const(1)
        base = self if k >= 0 else 1 / self
        for _ in range(abs(int(k))):
            out = out * base
        return out


def as_rational(x):
    """Coerce a number, Polynomial or RationalFn to a RationalFn."""
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, Polynomial):
        return RationalFn(x, Polynomial([1]))
    return RationalFn.const(x)


def rational(num, den=1):
    """Canonical rational function from coefficient lists or polynomials."""
    return canonicalize(RationalFn(_as_poly_like(num), _as_poly_like(den)))


def _as_poly_like(x):
    if isinstance(x, Polynomial):
        return x
    if np.isscalar(x):
        return Polynomial([x])
    return Polynomial(x)


def canonicalize(f):
    """Cancel common roots and make the denominator monic (idempotent)."""
    num, den = f.num, f.den
    if den.is_zero():
        raise ZeroPolynomial("rational function with zero denominator")
    if num.is_zero():
        return RationalFn(Polynomial([0]), Polynomial([1]))
    if num.degree > 0 and den.degree > 0:
        zs = root_multiplicities(num)
        ps = root_multiplicities(den)
        for rz, mz in zs:
            for i, (rp, mp) in enumerate(ps):
                if mp and abs(rz - rp) <= ROOT_TOL:
                    k = min(mz, mp)
                    r = 0.5 * (rz + rp)
                    for _ in range(k):
                        num = num.deflate(r)
                        den = den.deflate(r)
                    ps[i] = (rp, mp - k)
                    break
    lead = den.lead
    if lead != 1:
        num = Polynomial(num.coeffs / lead)
        den = Polynomial(den.coeffs / lead)
    return RationalFn(num, den)


def rational_eval(f, z, tol=1e-13):
    """Value of the canonical form of ``f`` at ``z`` (scalar or array)."""
    f = canonicalize(f)
    z_arr = np.asarray(z, dtype=np.complex128)
    d = f.den(z_arr)
    bound = _kernels.horner(np.abs(f.den.coeffs).astype(np.complex128),
                            np.abs(z_arr)).real
    if np.any(np.abs(d) <= tol * np.maximum(bound, 1.0)):
        raise PoleHit(f"evaluation at a pole of {f!r}")
    out = f.num(z_arr) / d
    return complex(out) if np.ndim(z) == 0 else out


def rational_normalize_eval(f, z):
    """Canonicalize ``f`` and evaluate it at ``z``; returns (canonical f, value)."""
    g = canonicalize(f)
    return g, rational_eval(g, z)


def boundary_conjugate(f):
    """Rational R with R(z) = conj(f(z)) on |z| = 1."""
    f = canonicalize(f)
    if f.den.degree > 0:
        poles = f.poles()
        if np.any(np.abs(np.abs(poles) - 1) <= CIRCLE_TOL):
            raise PoleOnCircle(f"{f!r} has a pole on the unit circle")
    if f.is_zero():
        return f
    m, n = f.num.degree, f.den.degree
    num = f.num.conj_coeffs().reversed()
    den = f.den.conj_coeffs().reversed()
    if n >= m:
        num = num.shift(n - m)
    else:
        den = den.shift(m - n)
    return canonicalize(RationalFn(num, den))


def backward_shift(f):
    """(f - f(0)) / z, canonicalized."""
    f = canonicalize(f)
    if abs(f.den.coeffs[0]) <= ROOT_TOL * f.den.scale():
        raise PoleAtOrigin(f"{f!r} has a pole at 0")
    f0 = f.num.coeffs[0] / f.den.coeffs[0]
    top = f.num - f.den * f0
    c = np.array(top.coeffs)
    c[0] = 0
    top = Polynomial(c[1:]) if c.size > 1 else Polynomial([0])
    return canonicalize(RationalFn(top, f.den))


@dataclass(frozen=True)
class RegionReport:
    zeros_in_disc: np.ndarray
    zeros_on_circle: np.ndarray
    zeros_outside: np.ndarray
    poles_in_disc: np.ndarray
    poles_on_circle: np.ndarray
    poles_outside: np.ndarray


def _split(roots, tol):
    r = np.abs(roots)
    return roots[r < 1 - tol], roots[np.abs(r - 1) <= tol], roots[r > 1 + tol]


def region_classify(f, tol=CIRCLE_TOL):
    f = canonicalize(f)
    zs = f.zeros()
    ps = f.poles() if f.den.degree > 0 else np.zeros(0, complex)
    return RegionReport(*_split(zs, tol), *_split(ps, tol))


# JSON ---------------------------------------------------------------------

def poly_to_json(p):
    return [[float(c.real), float(c.imag)] for c in p.coeffs]


def poly_from_json(obj):
    return Polynomial([complex(re, im) for re, im in obj])


def rational_to_json(f):
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rational_from_json(obj):
    return rational(poly_from_json(obj["num"]), poly_from_json(obj["den"]))
