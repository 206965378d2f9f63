"""Truncated block-Toeplitz matrices and numerical kernels of T_G f = P(G f).

The truncation maps coefficient vectors of degree < K to the first K + L
output coefficients (L = K by default).  The extra L rows keep the
positive-frequency part of the symbol from leaking out of the finite section,
which would otherwise create spurious near-null vectors at the tail.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .boundary import DEFAULT_GRID, BoundaryGrid, OuterNumeric, negative_mass, riesz_project, to_grid
from .errors import (
    EmptyKernel,
    GridMismatch,
    IllConditioned,
    NotDivisible,
    TruncationTooSmall,
)
from .hardy import FiniteBlaschke, HardyFunction, blaschke_divides, classify_and_factor
from .rational import RationalFn, as_rational, boundary_conjugate

DEFAULT_TRUNC = 256
MIN_TRUNC = 8


def _entry(x, n_samples):
    if isinstance(x, OuterNumeric):
        x = x.boundary
    if isinstance(x, BoundaryGrid):
        if x.n_samples != n_samples:
            raise GridMismatch(f"entry has {x.n_samples} samples, symbol uses {n_samples}")
        return x
    if isinstance(x, HardyFunction):
        return x.value
    return as_rational(x)


@dataclass(frozen=True, eq=False)
class MatrixSymbol:
    """n x n symbol; entries are RationalFn (exact) or BoundaryGrid (sampled)."""

    entries: tuple
    n_samples: int = DEFAULT_GRID

    def __post_init__(self):
        rows = tuple(tuple(_entry(x, self.n_samples) for x in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix symbol must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def scalar(cls, g, n_samples=DEFAULT_GRID):
        return cls(((g,),), n_samples)

    @classmethod
    def diag(cls, *gs, n_samples=DEFAULT_GRID):
        n = len(gs)
        return cls(tuple(tuple(gs[i] if i == j else 0 for j in range(n)) for i in range(n)),
                   n_samples)

    @property
    def n(self):
        return len(self.entries)

    def entry(self, i, j):
        return self.entries[i][j]

    def is_rational(self):
        return all(isinstance(x, RationalFn) for row in self.entries for x in row)

    @cached_property
    def samples(self):
        """Array (n, n, N) of boundary values."""
        out = np.empty((self.n, self.n, self.n_samples), dtype=np.complex128)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                out[i, j] = to_grid(x, self.n_samples).samples
        out.flags.writeable = False
        return out

    @cached_property
    def coeffs(self):
        """Fourier coefficients, shape (N, n, n), wrapped frequency order."""
        c = np.fft.fft(self.samples, axis=-1) / self.n_samples
        return np.ascontiguousarray(c.transpose(2, 0, 1))

    @cached_property
    def essential_sup(self):
        return float(np.max(np.abs(self.samples)))

    def entry_sup(self):
        """Entrywise sup of |G_ij| on the grid, shape (n, n)."""
        return np.max(np.abs(self.samples), axis=-1)

    def op_norm(self):
        """Sup over the grid of the spectral norm of G(z)."""
        s = np.linalg.svd(self.samples.transpose(2, 0, 1), compute_uv=False)
        return float(np.max(s))

    def apply(self, vec):
        """G f on the grid for f of shape (n, N); returns (n, N)."""
        return np.einsum("ijk,jk->ik", self.samples, vec)

    def conj_transpose(self):
        rows = []
        for j in range(self.n):
            row = []
            for i in range(self.n):
                x = self.entries[i][j]
                row.append(boundary_conjugate(x) if isinstance(x, RationalFn) else x.conj())
            rows.append(tuple(row))
        return MatrixSymbol(tuple(rows), self.n_samples)

    def __matmul__(self, other):
        prod = np.einsum("ijk,jlk->ilk", self.samples, other.samples)
        return MatrixSymbol.from_samples(prod)

    @classmethod
    def from_samples(cls, arr):
        arr = np.asarray(arr)
        n = arr.shape[0]
        return cls(tuple(tuple(BoundaryGrid(arr[i, j]) for j in range(n)) for i in range(n)),
                   arr.shape[-1])

    def det_samples(self):
        return np.linalg.det(self.samples.transpose(2, 0, 1))


# vectors -------------------------------------------------------------------

def vector_samples(f, n_samples):
    """Boundary samples (n, N) of a vector given as functions or coefficient rows.

    ``f`` may be a sequence of Hardy/rational/grid coordinates or a 2-D array
    of Taylor coefficients (one row per coordinate).
    """
    if isinstance(f, np.ndarray) and f.ndim == 2:
        return np.stack([BoundaryGrid.from_coeffs(row, n_samples).samples for row in f])
    return np.stack([to_grid(_coord(x), n_samples).samples for x in f])


def _coord(x):
    if isinstance(x, (BoundaryGrid, OuterNumeric, FiniteBlaschke)):
        return x
    if isinstance(x, HardyFunction):
        return x.value
    return as_rational(x)


def _grid_norm(vec):
    return float(np.sqrt(np.sum(np.mean(np.abs(vec) ** 2, axis=-1))))


def membership_residual(G, f):
    """||P(G f)|| / ||f|| on the symbol's grid; 0 means f is in ker T_G."""
    vec = vector_samples(f, G.n_samples)
    if vec.shape[0] != G.n:
        raise GridMismatch(f"vector has {vec.shape[0]} coordinates, symbol is {G.n}x{G.n}")
    norm = _grid_norm(vec)
    if norm == 0:
        return 0.0
    gf = G.apply(vec)
    proj = np.stack([riesz_project(BoundaryGrid(row)).samples for row in gf])
    return _grid_norm(proj) / norm


# truncation ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TruncatedToeplitz:
    symbol: MatrixSymbol
    order: int
    tall: np.ndarray

    @property
    def matrix(self):
        """Square (nK) x (nK) finite section; block (j, k) is G^(j - k)."""
        m = self.symbol.n * self.order
        return self.tall[:m]

    @property
    def rows(self):
        return self.tall.shape[0] // self.symbol.n


def build_truncated(G, K=DEFAULT_TRUNC, extra=None):
    """Finite section of T_G on polynomials of degree < K.

    The returned object carries the (K + extra) x K block matrix; ``matrix``
    is its square top part.
    """
    if K < MIN_TRUNC or K > G.n_samples // 4:
        raise TruncationTooSmall(
            f"truncation order must satisfy {MIN_TRUNC} <= K <= {G.n_samples // 4}, got {K}")
    extra = K if extra is None else extra
    rows = K + extra
    if rows > G.n_samples // 2:
        raise TruncationTooSmall("grid too coarse for the requested number of rows")
    tall = _kernels.toeplitz_fill(G.coeffs, rows, K)
    return TruncatedToeplitz(G, K, tall)


@dataclass(frozen=True, eq=False)
class KernelBasis:
    """Orthonormal numerical kernel; ``vectors`` has shape (r, n, K)."""

    vectors: np.ndarray
    singular_values: np.ndarray
    tol: float
    gap: float
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def dim(self):
        return self.vectors.shape[0]

    @property
    def order(self):
        return self.vectors.shape[2]

    def at_zero(self):
        """(n, r) matrix whose columns are the basis vectors evaluated at 0."""
        return self.vectors[:, :, 0].T

    def coords(self, i):
        return self.vectors[i]


def kernel_basis(T, tol=1e-8, require_gap=10.0):
    """Right singular vectors of the truncation with sigma <= tol * sigma_max."""
    n, K = T.symbol.n, T.order
    u, s, vh = np.linalg.svd(T.tall, full_matrices=False)
    smax = s[0] if s.size else 0.0
    if smax == 0:
        null = np.arange(s.size)
    else:
        null = np.flatnonzero(s <= tol * smax)
    r = null.size
    below = s[null[0]] if r else tol * smax
    above = s[null[0] - 1] if r and null[0] > 0 else (s[-1] if not r else np.inf)
    gap = np.inf if below == 0 else float(above / below)
    if gap < require_gap:
        raise IllConditioned(
            f"spectral gap {gap:.3g} at threshold {tol:g} (K={K}); kernel dimension unreliable")
    vecs = vh[null].conj().reshape(r, K, n).transpose(0, 2, 1)
    res = np.linalg.norm(T.tall @ vh[null].conj().T, axis=0) if r else np.zeros(0)
    return KernelBasis(np.ascontiguousarray(vecs), s, tol, gap, res)


def numerical_kernel(G, K=DEFAULT_TRUNC, tol=1e-8):
    return kernel_basis(build_truncated(G, K), tol)


def kernel_dimension(T, tol=1e-8):
    """Numerical kernel dimension from singular values alone (no vectors)."""
    s = np.linalg.svd(T.tall, compute_uv=False)
    if s[0] == 0:
        return s.size
    return int(np.sum(s <= tol * s[0]))


def stabilized_dim(G, K=DEFAULT_TRUNC, tol=1e-8):
    """Kernel dimensions at K and 2K (doubling heuristic for truncation convergence)."""
    return (kernel_dimension(build_truncated(G, K), tol),
            kernel_dimension(build_truncated(G, 2 * K), tol))


def kernel_dim_at_zero(B, tol=1e-8):
    if B.dim == 0:
        raise EmptyKernel("kernel basis is empty")
    s = np.linalg.svd(B.at_zero(), compute_uv=False)
    return int(np.sum(s > tol))


def shift_residuals(G, B):
    if B.dim == 0:
        raise EmptyKernel("kernel basis is empty")
    out = []
    for v in B.vectors:
        zv = np.concatenate([np.zeros((v.shape[0], 1), dtype=v.dtype), v], axis=1)
        out.append(membership_residual(G, zv))
    return np.array(out)


def shift_invariance_test(G, B, tol=1e-6):
    """True when z * v stays in the kernel for every basis vector v."""
    return bool(np.all(shift_residuals(G, B) < tol))


def near_invariance_check(G, f, eta, tol=1e-8):
    """Membership residual of conj(eta) * f, after checking eta divides f."""
    eta_r = eta.to_rational()
    coords = []
    for x in f:
        x = _coord(x)
        if isinstance(x, RationalFn):
            if not x.is_zero() and not blaschke_divides(eta, classify_and_factor(x).inner):
                raise NotDivisible(f"{eta!r} does not divide {x!r}")
            coords.append(x / eta_r)
        else:
            g = to_grid(x, G.n_samples) * to_grid(eta, G.n_samples).conj()
            if negative_mass(g) > tol:
                raise NotDivisible("conj(eta) * f is not analytic on the grid")
            coords.append(g)
    return membership_residual(G, coords)


def kernel_inclusion_check(G, H, tol=1e-5, K=DEFAULT_TRUNC, kernel_tol=1e-8):
    """True when every numerical kernel vector of T_G lies in ker T_H."""
    B = numerical_kernel(G, K, kernel_tol)
    if B.dim == 0:
        raise EmptyKernel("kernel of the first symbol is trivial at this truncation")
    return all(membership_residual(H, v) < tol for v in B.vectors)
