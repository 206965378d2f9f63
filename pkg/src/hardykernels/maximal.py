"""Maximal functions of Toeplitz kernels: detection, construction and checks.

A kernel element m is maximal when the smallest Toeplitz kernel containing m
is the whole kernel.  For matrix symbols at p = 2 the numerical criterion is:
the kernel values at 0 span a line and the kernel is not shift invariant.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .boundary import DEFAULT_GRID, BoundaryGrid, negative_mass, outer_from_modulus, to_grid
from .errors import (
    DetNotInvertible,
    EmptyKernel,
    FactorizationMismatch,
    HypothesisFails,
    IllConditioned,
    InnerNotVanishing,
    NotCyclicFlag,
    NotInner,
    NotInnerVanishing,
    NotIsometric,
)
from .hardy import (
    Cyclicity,
    FiniteBlaschke,
    HardyFunction,
    as_hardy,
    backward_shift,
    cyclicity_flag,
    times_rational,
)
from .minimal_kernels import (
    _scalar_symbol,
    coprime_symbol_verify,
    kmin_pair_vector,
    minimal_kernel_symbol,
    recover_conjugate_analytic,
)
from .rational import RationalFn, as_rational, rational
from .toeplitz import (
    DEFAULT_TRUNC,
    MatrixSymbol,
    build_truncated,
    kernel_basis,
    kernel_dim_at_zero,
    kernel_inclusion_check,
    membership_residual,
    numerical_kernel,
    shift_residuals,
    vector_samples,
)

__all__ = [
    "MaxStatus", "MaximalityVerdict", "maximality_status", "scalar_maximal",
    "model_space_maximal_verify", "verify_maximal_decomp", "maximal_pair",
    "unimodular_normalize", "factored_kernel_verify", "shift_invariant_pair_verify",
    "takenaka_basis",
]

ZBAR = RationalFn.z_power(-1)


class MaxStatus(str, enum.Enum):
    HAS_MAX = "HasMax"
    NO_MAX_DIM_AT_ZERO = "NoMax_DimAtZero"
    NO_MAX_SHIFT_INVARIANT = "NoMax_ShiftInvariant"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class MaximalityVerdict:
    status: MaxStatus
    dim_at_zero: int
    witness: "np.ndarray | None" = None
    evidence: dict = field(default_factory=dict)


def _witness(G, B, smax, tol):
    """Kernel vectors v for which z v leaves the kernel (orthogonal complement)."""
    n, K = G.n, B.order
    T1 = build_truncated(G, K + 1)
    shifted = np.zeros((B.dim, K + 1, n), dtype=np.complex128)
    shifted[:, 1:, :] = B.vectors.transpose(0, 2, 1)
    A = T1.tall @ shifted.reshape(B.dim, -1).T
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    s_full = np.zeros(B.dim)
    s_full[: s.size] = s
    out = s_full > 1e-6 * smax
    comb = vh[out].conj()
    return np.einsum("ri,ink->rnk", comb, B.vectors), s_full


def maximality_status(G, K=DEFAULT_TRUNC, tol=1e-8, roundtrip=True):
    """Decide whether ker T_G has a maximal function, from a truncated kernel.

    The answer is finite-truncation evidence: dimension of the kernel values
    at 0, then a shift-invariance test, then (when a maximal function should
    exist) extraction of the witness and an optional round trip through the
    single-vector minimal-kernel symbol.
    """
    evidence = {"truncation": K, "tol": tol}
    try:
        B = kernel_basis(build_truncated(G, K), tol)
    except IllConditioned as exc:
        evidence["error"] = str(exc)
        return MaximalityVerdict(MaxStatus.INCONCLUSIVE, 0, None, evidence)
    evidence.update(kernel_dim=B.dim, gap=B.gap,
                    residual_max=float(B.residuals.max()) if B.dim else 0.0)
    if B.dim == 0:
        evidence["error"] = EmptyKernel.code
        return MaximalityVerdict(MaxStatus.INCONCLUSIVE, 0, None, evidence)
    d0 = kernel_dim_at_zero(B)
    if d0 > 1:
        return MaximalityVerdict(MaxStatus.NO_MAX_DIM_AT_ZERO, d0, None, evidence)
    if d0 == 0:
        evidence["error"] = "kernel values at 0 vanish numerically"
        return MaximalityVerdict(MaxStatus.INCONCLUSIVE, d0, None, evidence)
    shifts = shift_residuals(G, B)
    evidence["shift_residual_max"] = float(shifts.max())
    if np.all(shifts < 1e-6):
        return MaximalityVerdict(MaxStatus.NO_MAX_SHIFT_INVARIANT, d0, None, evidence)
    smax = float(B.singular_values[0])
    wit, s_shift = _witness(G, B, smax, tol)
    evidence["shift_singular_values"] = s_shift
    if wit.shape[0] != 1:
        evidence["error"] = f"complement of the shift-stable part has dimension {wit.shape[0]}"
        return MaximalityVerdict(MaxStatus.INCONCLUSIVE, d0, None, evidence)
    m = wit[0]
    evidence["witness_residual"] = membership_residual(G, m)
    if roundtrip:
        evidence["roundtrip"] = _roundtrip(G, m, K)
    return MaximalityVerdict(MaxStatus.HAS_MAX, d0, m, evidence)


def _roundtrip(G, m, K):
    grids = [BoundaryGrid.from_coeffs(row, G.n_samples) for row in m]
    pivot = int(np.argmax([g.norm() for g in grids]))
    H = minimal_kernel_symbol(grids, pivot=pivot, n_samples=G.n_samples)
    return bool(kernel_inclusion_check(G, H, K=K) and kernel_inclusion_check(H, G, K=K))


# scalar maximal functions ------------------------------------------------------

def _product(g, f, n_samples):
    if isinstance(g, RationalFn) and isinstance(f, RationalFn):
        return g * f
    return to_grid(g, n_samples) * to_grid(f, n_samples)


def _fn(x):
    if isinstance(x, HardyFunction):
        return x
    return as_hardy(as_rational(x))


def scalar_maximal(g, f_seed, n_samples=DEFAULT_GRID, tol=1e-6):
    """Maximal function m = f_seed * inner(p) where g f_seed = conj(z p)."""
    sym = _scalar_symbol(g, n_samples)
    f = _fn(f_seed)
    G = MatrixSymbol.scalar(sym, n_samples)
    res = membership_residual(G, [f.value])
    if res >= tol:
        raise HypothesisFails(f"seed is not in the kernel (residual {res:.2e})")
    p = recover_conjugate_analytic(_product(sym, f.value, n_samples))
    if p.is_zero():
        raise HypothesisFails("g * f_seed vanishes identically")
    inner = as_hardy(p).inner
    m = times_rational(f, inner.to_rational()) if inner.degree else f
    check = coprime_symbol_verify(sym, [m], n_samples)
    if not check.holds:
        raise HypothesisFails("round trip left a nontrivial inner factor")
    return m


def takenaka_basis(I):
    """Orthonormal rational basis of the model space of a finite Blaschke product."""
    out = []
    prefix = RationalFn.const(1)
    for a in I.zeros:
        k = rational([np.sqrt(1 - abs(a) ** 2)], [1, -np.conj(a)])
        out.append(prefix * k)
        prefix = prefix * FiniteBlaschke([a]).to_rational()
    return out


def model_space_maximal_verify(g, q, I, n_samples=DEFAULT_GRID, tol=1e-6):
    """Check that q I conj(z) is a maximal function of ker T_g and q K_I sits inside."""
    if abs(I(0.0)) > 1e-12:
        raise InnerNotVanishing(f"inner function does not vanish at 0 (|I(0)| = {abs(I(0.0)):.3g})")
    sym = _scalar_symbol(g, n_samples)
    G = MatrixSymbol.scalar(sym, n_samples)
    q = _fn(q)
    m = q.value * I.to_rational() * ZBAR
    if membership_residual(G, [m]) >= tol:
        return False
    if any(membership_residual(G, [q.value * e]) >= tol for e in takenaka_basis(I)):
        return False
    mm = scalar_maximal(sym, m, n_samples)
    return mm.value.same_as(m, 1e-8) or _proportional(mm.value, m, n_samples)


def _proportional(a, b, n_samples):
    x, y = to_grid(a, n_samples).samples, to_grid(b, n_samples).samples
    c = np.vdot(y, x) / np.vdot(y, y)
    return float(np.max(np.abs(x - c * y))) < 1e-8 * float(np.max(np.abs(x)))


def verify_maximal_decomp(g, m, K=DEFAULT_TRUNC, n_samples=DEFAULT_GRID, test_degree=8,
                          tol=1e-5):
    """Check ker T_g = m conj(N+) intersected with H^2 on a truncation.

    Every kernel vector divided by m must be antianalytic, and every analytic
    m conj(z^k), k <= test_degree, must lie in the kernel.
    """
    sym = _scalar_symbol(g, n_samples)
    G = MatrixSymbol.scalar(sym, n_samples)
    m = _fn(m)
    if membership_residual(G, [m.value]) >= 1e-6:
        raise HypothesisFails("m is not in the kernel")
    B = numerical_kernel(G, K)
    mg = to_grid(m.value, n_samples)
    for v in B.vectors:
        ratio = (BoundaryGrid.from_coeffs(v[0], n_samples) / mg).conj()
        if negative_mass(ratio) >= tol:
            return False
    for k in range(test_degree + 1):
        cand = mg * to_grid(RationalFn.z_power(-k), n_samples)
        if negative_mass(cand) < 1e-8 and membership_residual(G, [cand]) >= tol:
            return False
    return True


# matrix constructions --------------------------------------------------------------

def _matrix_grid(M, n_samples):
    """(rows, cols, N) samples of a nested list of functions."""
    return np.array([[to_grid(_cell(x), n_samples).samples for x in row] for row in M])


def _cell(x):
    if isinstance(x, HardyFunction):
        return x.value
    if isinstance(x, (BoundaryGrid, FiniteBlaschke)):
        return x
    return as_rational(x)


def _value_at_zero(x, n_samples):
    x = _cell(x)
    if isinstance(x, RationalFn):
        return complex(x(0.0))
    return to_grid(x, n_samples).at_zero()


def _isometry_error(Wg):
    # W*(w) W(w) - I at every grid point
    gram = np.einsum("ijk,ilk->jlk", Wg.conj(), Wg)
    eye = np.eye(Wg.shape[1])[:, :, None]
    return float(np.max(np.abs(gram - eye)))


def maximal_pair(W, Phi, n_samples=DEFAULT_GRID, tol=1e-8):
    """Columns of W Phi conj(z): a maximal r-tuple of the kernel built from (W, Phi).

    ``W`` is an n x r matrix with orthonormal columns on the circle and
    ``Phi`` an r x r inner matrix with Phi(0) = 0.  Returns r vectors, exact
    rationals when every input entry is rational and grids otherwise.
    """
    r = len(Phi)
    if any(abs(_value_at_zero(x, n_samples)) > 1e-10 for row in Phi for x in row):
        raise NotInnerVanishing("Phi(0) is not the zero matrix")
    Wg = _matrix_grid(W, n_samples)
    if Wg.shape[1] != r:
        raise ValueError("W must have as many columns as Phi has rows")
    err = _isometry_error(Wg)
    if err > tol:
        raise NotIsometric(f"columns of W are not orthonormal on the circle (error {err:.2e})")
    exact = all(isinstance(_cell(x), RationalFn) for M in (W, Phi) for row in M for x in row)
    out = []
    for i in range(r):
        col = [_cell(Phi[k][i]) for k in range(r)]
        if exact:
            vec = tuple(sum((as_rational(W[a][k]) * col[k] * ZBAR for k in range(r)),
                            RationalFn.const(0)) for a in range(len(W)))
            grids = [to_grid(v, n_samples) for v in vec]
        else:
            Pg = np.array([to_grid(c, n_samples).samples for c in col])
            zb = to_grid(ZBAR, n_samples).samples
            grids = [BoundaryGrid(s) for s in np.einsum("akn,kn->an", Wg, Pg) * zb]
            vec = tuple(grids)
        if any(negative_mass(gr) >= 1e-8 for gr in grids):
            raise HypothesisFails(f"column {i} of W Phi conj(z) is not analytic")
        out.append(vec)
    return out


def unimodular_normalize(G, threshold=1e-8):
    """Divide the first row of G by conj(q), q outer with |q| = |det G|."""
    det = G.det_samples()
    low = float(np.min(np.abs(det)))
    if low <= threshold:
        raise DetNotInvertible(f"min |det G| on the grid is {low:.2e}")
    q = outer_from_modulus(BoundaryGrid(np.abs(det)), G.n_samples)
    qc = q.boundary.conj()
    rows = [list(r) for r in G.entries]
    rows[0] = [to_grid(x, G.n_samples) / qc for x in rows[0]]
    return MatrixSymbol(tuple(tuple(r) for r in rows), G.n_samples)


def _as_symbol(M, n_samples):
    if isinstance(M, MatrixSymbol):
        return M
    return MatrixSymbol(tuple(tuple(_cell(x) for x in row) for row in M), n_samples)


def factored_kernel_verify(G, G1_outer, G1_inner, G2_inner, G2_outer, K=DEFAULT_TRUNC,
                           tol=1e-5):
    """Check the description of ker T_G from a factorization G = G2* G1.

    With G1 = G1_outer G1_inner and G2 = G2_inner G2_outer, f lies in ker T_G
    exactly when G1 f lies in the model space of G2_inner.  Both directions
    are tested on the truncated kernel bases.
    """
    N = G.n_samples
    G1o, G1i = _as_symbol(G1_outer, N), _as_symbol(G1_inner, N)
    G2i, G2o = _as_symbol(G2_inner, N), _as_symbol(G2_outer, N)
    for name, U in (("G2 inner", G2i), ("G1 inner", G1i)):
        if _isometry_error(U.samples) > 1e-6:
            raise NotInner(f"{name} factor is not unitary on the circle")
    g1 = np.einsum("ijk,jlk->ilk", G1o.samples, G1i.samples)
    g2 = np.einsum("ijk,jlk->ilk", G2i.samples, G2o.samples)
    recon = np.einsum("jik,jlk->ilk", g2.conj(), g1)
    mismatch = float(np.max(np.abs(recon - G.samples)))
    if mismatch >= 1e-6:
        raise FactorizationMismatch(f"G differs from G2* G1 by {mismatch:.2e}")
    model = G2i.conj_transpose()
    # forward: G1 f is in the model space for every kernel vector f
    B = numerical_kernel(G, K)
    for v in B.vectors:
        fv = vector_samples(v, N)
        image = np.einsum("ijk,jk->ik", g1, fv)
        if any(negative_mass(BoundaryGrid(r)) >= tol for r in image):
            return False
        if membership_residual(model, [BoundaryGrid(r) for r in image]) >= tol:
            return False
    # converse: G1_inner* G1_outer^-1 k lies in ker T_G for model-space vectors k
    inv_o = np.linalg.inv(G1o.samples.transpose(2, 0, 1)).transpose(1, 2, 0)
    Bm = numerical_kernel(model, K)
    for k in Bm.vectors:
        kv = vector_samples(k, N)
        f = np.einsum("jik,jk->ik", G1i.samples.conj(), np.einsum("ijk,jk->ik", inv_o, kv))
        if any(negative_mass(BoundaryGrid(r)) >= 1e-8 for r in f):
            continue
        if membership_residual(G, [BoundaryGrid(r) for r in f]) >= tol:
            return False
    return True


def shift_invariant_pair_verify(W1, f, depth=16, symbols=None, n_samples=DEFAULT_GRID,
                                tol=1e-5):
    """Finite-depth evidence that the smallest kernel holding W1 and W1 f is W1 H^2.

    For each candidate symbol H whose kernel contains W1 and W1 f, the
    vectors W1 B^k f (B the backward shift) must stay in ker T_H for
    k = 0..depth.  The minimal-pair symbol of (W1, W1 f) is always among the
    candidates.
    """
    W = [_cell(x) for x in W1]
    Wg = np.array([to_grid(x, n_samples).samples for x in W])
    err = float(np.max(np.abs(np.sum(np.abs(Wg) ** 2, axis=0) - 1)))
    if err > 1e-8:
        raise NotIsometric(f"|W1| differs from 1 on the circle by {err:.2e}")
    if cyclicity_flag(f) is not Cyclicity.CYCLIC_DECLARED:
        raise NotCyclicFlag("f must carry a cyclic declaration")
    wf = [times_rational(f, as_rational(w)) if not as_rational(w).is_zero() else w for w in W]
    candidates = list(symbols or [])
    candidates.append(kmin_pair_vector(W, wf, n_samples).symbol)
    g = f.value
    chain = [g]
    for _ in range(depth):
        g = backward_shift(g)
        chain.append(g)
    checked = 0
    for H in candidates:
        if membership_residual(H, W) >= tol or membership_residual(H, [x.value if isinstance(
                x, HardyFunction) else x for x in wf]) >= tol:
            continue
        checked += 1
        for h in chain:
            if membership_residual(H, [as_rational(w) * h for w in W]) >= tol:
                return False
    return checked > 0
