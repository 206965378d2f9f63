"""Symbols whose Toeplitz kernel is the smallest one containing given functions.

Three constructions live here:

* :func:`minimal_kernel_symbol` for a single vector (any length n),
* :func:`kmin_pair_scalar` for two scalar functions,
* :func:`kmin_pair_vector` for two vectors in C^2.

Exact rational data is used wherever the construction allows it; the only
sampled ingredients are outer functions built from a modulus majorant.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .boundary import (
    DEFAULT_GRID,
    BoundaryGrid,
    OuterNumeric,
    majorant_outer,
    outer_from_modulus,
    to_grid,
)
from .errors import HypothesisFails, NotHardy, ZeroInput, ZeroPivot
from .hardy import (
    Cyclicity,
    FiniteBlaschke,
    HardyFunction,
    as_hardy,
    blaschke_gcd,
    blaschke_lcm,
    cyclicity_flag,
    minimal_inner,
    times_rational,
)
from .rational import RationalFn, as_rational, boundary_conjugate, rational
from .toeplitz import MatrixSymbol, membership_residual

__all__ = [
    "KminKind", "KminResult", "minimal_kernel_symbol", "kmin_pair_scalar",
    "coprime_symbol_verify", "CoprimeReport", "kmin_pair_vector",
    "recover_conjugate_analytic",
]

ZBAR = RationalFn.z_power(-1)


class KminKind(str, enum.Enum):
    SYMBOL = "Symbol"
    WHOLE_SPACE = "WholeSpace"


@dataclass(frozen=True, eq=False)
class KminResult:
    kind: KminKind
    symbol: "MatrixSymbol | None"
    theta: "FiniteBlaschke | None"
    branch: str
    warnings: tuple = ()
    residuals: tuple = ()
    notes: dict = field(default_factory=dict)


def _hardy_or_grid(x):
    if isinstance(x, (BoundaryGrid, OuterNumeric)):
        return x
    h = x if isinstance(x, HardyFunction) else None
    if h is None:
        r = as_rational(x)
        if r.is_zero():
            return r
        h = as_hardy(r)
    if not h.is_hardy:
        raise NotHardy(f"{h.value!r} has a pole in the closed disc")
    return h


def _is_zero(x):
    if isinstance(x, RationalFn):
        return x.is_zero()
    if isinstance(x, HardyFunction):
        return x.value.is_zero()
    if isinstance(x, OuterNumeric):
        return False
    return x.sup() == 0


def _value(x):
    return x.value if isinstance(x, HardyFunction) else x


def _outer_part(x, n_samples):
    if isinstance(x, HardyFunction):
        return x.outer
    return outer_from_modulus(to_grid(x, n_samples).abs(), n_samples)


def pivot_entry(phi, n_samples=DEFAULT_GRID):
    """conj(z phi) / phi_outer on the circle; exact when phi is rational."""
    if isinstance(phi, HardyFunction):
        return boundary_conjugate(phi.value) * ZBAR / phi.outer
    g = to_grid(phi, n_samples)
    u = _outer_part(g, n_samples)
    w = to_grid(ZBAR, n_samples)
    return g.conj() * w / u.boundary


def minimal_kernel_symbol(phis, pivot=0, n_samples=DEFAULT_GRID):
    """Symbol G with ker T_G the smallest Toeplitz kernel containing ``phis``.

    Parameters
    ----------
    phis : sequence
        Coordinates of one vector: Hardy/rational functions or boundary grids.
    pivot : int
        0-based coordinate used for the conjugate-over-outer row.  Any
        coordinate that is not identically zero gives the same kernel.

    Returns
    -------
    MatrixSymbol
        Row ``pivot`` holds conj(z phi_p)/phi_p^o in column ``pivot``; each
        other row i holds phi_p/u in column i and -phi_i/u in column pivot,
        with u outer and |u| = sum |phi_k| + 1.
    """
    coords = [_hardy_or_grid(x) for x in phis]
    n = len(coords)
    if not 0 <= pivot < n:
        raise ValueError(f"pivot {pivot} out of range for {n} coordinates")
    if _is_zero(coords[pivot]):
        raise ZeroPivot(f"coordinate {pivot} is identically zero")
    rows = [[0] * n for _ in range(n)]
    rows[pivot][pivot] = pivot_entry(coords[pivot], n_samples)
    if n > 1:
        u = _majorant(coords, n_samples).boundary
        p = to_grid(_value(coords[pivot]), n_samples)
        for i in range(n):
            if i == pivot:
                continue
            rows[i][i] = p / u
            rows[i][pivot] = -to_grid(_value(coords[i]), n_samples) / u
    return MatrixSymbol(tuple(tuple(r) for r in rows), n_samples)


def _majorant(coords, n_samples):
    if all(isinstance(c, (HardyFunction, RationalFn)) for c in coords):
        return majorant_outer(coords, n_samples)
    total = BoundaryGrid(np.ones(n_samples))
    for c in coords:
        total = total + to_grid(_value(c), n_samples).abs()
    return outer_from_modulus(total, n_samples)


def _conj_inner(theta):
    return boundary_conjugate(theta.to_rational())


def scalar_minimal_symbol(f, theta):
    """conj(f_o) conj(theta) / f_o as an exact rational."""
    fo = f.outer
    return boundary_conjugate(fo) * _conj_inner(theta) / fo


def _quotient(g, f):
    """g / f_outer keeping g's cyclicity declaration."""
    if isinstance(g, HardyFunction):
        return times_rational(g, 1 / f.outer)
    return as_hardy(as_rational(g) / f.outer)


def kmin_pair_scalar(f, g, n_samples=DEFAULT_GRID):
    """Smallest Toeplitz kernel containing two scalar functions.

    A declared-cyclic quotient g/f_outer gives the whole space.  Otherwise
    theta = lcm(minimal_inner(g/f_o), minimal_inner(f_inner)) and the symbol
    is conj(f_o theta)/f_o.
    """
    f = _hardy_or_grid(f)
    if not isinstance(f, HardyFunction):
        raise ZeroInput("first function must be a nonzero rational function")
    g = _hardy_or_grid(g)
    if isinstance(g, RationalFn):
        q = g
    else:
        q = _quotient(g, f)
    if isinstance(q, HardyFunction) and cyclicity_flag(q) is Cyclicity.CYCLIC_DECLARED:
        return KminResult(KminKind.WHOLE_SPACE, None, None, "scalar-cyclic")
    theta = blaschke_lcm(minimal_inner(q), minimal_inner(f.inner.to_rational()))
    G = MatrixSymbol.scalar(scalar_minimal_symbol(f, theta), n_samples)
    res = tuple(membership_residual(G, [_value(x)]) for x in (f, g))
    return KminResult(KminKind.SYMBOL, G, theta, "scalar-noncyclic", residuals=res)


# coprime check ---------------------------------------------------------------

def recover_conjugate_analytic(h, tol=1e-8, max_degree=None):
    """Return p with h = conj(z p) on the circle.

    Exact for rational ``h``; for a grid the Fourier data must be supported
    on frequencies <= -1 and p is rebuilt as a polynomial from them.
    Raises HypothesisFails when h has non-negligible mass at frequencies >= 0.
    """
    if isinstance(h, RationalFn):
        p = boundary_conjugate(h) * ZBAR
        if not p.is_zero():
            p_h = as_hardy(p)
            if not p_h.is_hardy:
                raise HypothesisFails(f"{h!r} is not the conjugate of z times an analytic function")
        return p
    c = h.coeffs
    n = h.n_samples
    total = np.linalg.norm(c)
    pos = np.linalg.norm(c[: n // 2])
    if total and pos > tol * total:
        raise HypothesisFails(f"analytic mass {pos / total:.2e} exceeds {tol:g}")
    # p_k = conj(h_{-k-1})
    pk = np.conj(c[::-1][: n // 2])
    keep = np.flatnonzero(np.abs(pk) > 1e-10 * max(total, 1e-300))
    deg = int(keep[-1]) if keep.size else 0
    limit = max_degree if max_degree is not None else n // 8
    if deg > limit:
        raise HypothesisFails(f"conjugate part needs degree {deg} > {limit}; not recoverable")
    return rational(pk[: deg + 1])


@dataclass(frozen=True)
class CoprimeReport:
    holds: bool
    factors: tuple
    inner_factors: tuple
    gcd: FiniteBlaschke

    def __bool__(self):
        return self.holds


def _scalar_symbol(g, n_samples):
    if isinstance(g, MatrixSymbol):
        if g.n != 1:
            raise ValueError("expected a 1x1 symbol")
        return g.entry(0, 0)
    if isinstance(g, (BoundaryGrid, OuterNumeric)):
        return g if isinstance(g, BoundaryGrid) else g.boundary
    return as_rational(g)


def coprime_symbol_verify(g, fs, n_samples=DEFAULT_GRID, tol=1e-8):
    """Check whether ker T_g is exactly the smallest kernel containing ``fs``.

    Each g f_j must equal conj(z p_j); the criterion holds when the inner
    parts of the p_j have trivial common divisor.
    """
    g = _scalar_symbol(g, n_samples)
    ps = []
    for f in fs:
        f = _value(_hardy_or_grid(f))
        if isinstance(g, RationalFn) and isinstance(f, RationalFn):
            h = g * f
            grid = to_grid(h, n_samples)
            c = grid.coeffs
            if np.linalg.norm(c[: n_samples // 2]) > tol * max(np.linalg.norm(c), 1e-300):
                raise HypothesisFails(f"g*f has analytic part for f={f!r}")
        else:
            h = to_grid(g, n_samples) * to_grid(f, n_samples)
        ps.append(recover_conjugate_analytic(h, tol))
    inners = tuple(FiniteBlaschke() if p.is_zero() else as_hardy(p).inner for p in ps)
    nonzero = [b for b, p in zip(inners, ps) if not p.is_zero()]
    if not nonzero:
        raise HypothesisFails("every g*f_j vanishes")
    d = nonzero[0]
    for b in nonzero[1:]:
        d = blaschke_gcd(d, b)
    return CoprimeReport(d.degree == 0, tuple(ps), inners, d)


# pairs of vectors -------------------------------------------------------------

def _pair_rationals(vec):
    out = []
    for x in vec:
        h = _hardy_or_grid(x)
        if isinstance(h, (BoundaryGrid, OuterNumeric)):
            raise NotHardy("vector-pair construction needs rational coordinates")
        out.append(h)
    return out


def _det(phi, psi):
    return _value(phi[0]) * _value(psi[1]) - _value(psi[0]) * _value(phi[1])


def _coord_value(x):
    return x if isinstance(x, RationalFn) else x.value


def kmin_pair_vector(phi, psi, n_samples=DEFAULT_GRID):
    """Smallest Toeplitz kernel in H^2(C^2) containing two vectors.

    Branches, decided exactly on the rational determinant
    det = phi_1 psi_2 - psi_1 phi_2:

    ``det-nonzero``
        symbol z conj(u1)/conj(u2) times the inverse of [phi psi], where u1 is
        the outer factor of det and |u2| = sum of all moduli + 1.
    ``det-zero-noncyclic``
        [[phi_2/u, -phi_1/u], [0, chi]] with chi the two-function scalar
        symbol of (phi_2, psi_2).
    ``det-zero-cyclic``
        the same with a zero bottom row.

    When phi_2 vanishes identically the coordinates are swapped first.
    """
    phi = _pair_rationals(phi)
    psi = _pair_rationals(psi)
    if len(phi) != 2 or len(psi) != 2:
        raise ValueError("vector pairs must have two coordinates")
    if all(_is_zero(x) for x in phi):
        raise ZeroInput("first vector is identically zero")
    det = _det(phi, psi)
    if not det.is_zero():
        return _pair_invertible(phi, psi, det, n_samples)
    swapped = _is_zero(phi[1])
    if swapped:
        phi, psi = phi[::-1], psi[::-1]
    f2 = as_hardy(_coord_value(phi[1]))
    g2 = psi[1]
    q = g2 if isinstance(g2, RationalFn) else _quotient(g2, f2)
    u = majorant_outer(phi, n_samples).boundary
    top = (to_grid(_coord_value(phi[1]), n_samples) / u,
           -to_grid(_coord_value(phi[0]), n_samples) / u)
    cyclic = isinstance(q, HardyFunction) and cyclicity_flag(q) is Cyclicity.CYCLIC_DECLARED
    if cyclic:
        theta, chi, branch = None, 0, "det-zero-cyclic"
    else:
        theta = blaschke_lcm(minimal_inner(q), minimal_inner(f2.inner.to_rational()))
        chi, branch = scalar_minimal_symbol(f2, theta), "det-zero-noncyclic"
    rows = [list(top), [0, chi]]
    if swapped:
        rows = [r[::-1] for r in rows]
        phi, psi = phi[::-1], psi[::-1]
    G = MatrixSymbol(tuple(tuple(r) for r in rows), n_samples)
    res = tuple(membership_residual(G, [_coord_value(x) for x in v]) for v in (phi, psi))
    notes = {"swapped": swapped}
    return KminResult(KminKind.SYMBOL, G, theta, branch, residuals=res, notes=notes)


def _pair_invertible(phi, psi, det, n_samples):
    d = as_hardy(det)
    if not d.is_hardy:
        raise NotHardy("determinant has a pole in the closed disc")
    u2 = majorant_outer(list(phi) + list(psi), n_samples).boundary
    # conj(u1)/det with u1 the exact outer factor of det
    scale = boundary_conjugate(d.outer) * ZBAR / det
    adj = ((_coord_value(psi[1]), -_coord_value(psi[0])),
           (-_coord_value(phi[1]), _coord_value(phi[0])))
    w = to_grid(scale, n_samples) / u2.conj()
    rows = tuple(tuple(w * to_grid(a, n_samples) for a in row) for row in adj)
    G = MatrixSymbol(rows, n_samples)
    res = tuple(membership_residual(G, [_coord_value(x) for x in v]) for v in (phi, psi))
    return KminResult(KminKind.SYMBOL, G, None, "det-nonzero", residuals=res,
                      notes={"det_outer": d.outer})
