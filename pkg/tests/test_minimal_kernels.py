import numpy as np
import pytest

from conftest import random_blaschke, random_outer, random_rational
from hardykernels.boundary import BoundaryGrid, to_grid
from hardykernels.errors import HypothesisFails, NotHardy, ZeroInput, ZeroPivot
from hardykernels.hardy import (
    FiniteBlaschke,
    as_hardy,
    blaschke_divides,
    lacunary_cyclic,
    z_power,
)
from hardykernels.minimal_kernels import (
    KminKind,
    coprime_symbol_verify,
    kmin_pair_scalar,
    kmin_pair_vector,
    minimal_kernel_symbol,
    recover_conjugate_analytic,
)
from hardykernels.rational import Polynomial, RationalFn, boundary_conjugate, rational
from hardykernels.toeplitz import (
    MatrixSymbol,
    kernel_inclusion_check,
    membership_residual,
    numerical_kernel,
    shift_invariance_test,
)

Z = RationalFn.z_power(1)
ZBAR = RationalFn.z_power(-1)


def _mutual(G, H):
    return kernel_inclusion_check(G, H) and kernel_inclusion_check(H, G)


def test_scalar_symbol_of_z_squared():
    G = minimal_kernel_symbol([Z * Z])
    assert np.allclose(G.samples[0, 0], to_grid(ZBAR ** 3, G.n_samples).samples, atol=1e-12)
    assert numerical_kernel(G).dim == 3


def test_scalar_symbol_has_unit_modulus(rng):
    for _ in range(10):
        G = minimal_kernel_symbol([random_rational(rng, min_num=1)])
        assert np.allclose(np.abs(G.samples[0, 0]), 1, atol=1e-10)


def test_vector_one_z():
    G = minimal_kernel_symbol([1, Z])
    N = G.n_samples
    w = np.exp(2j * np.pi * np.arange(N) / N)
    assert np.allclose(G.samples[0, 0], 1 / w, atol=1e-12)
    assert np.allclose(G.samples[0, 1], 0)
    assert np.allclose(G.samples[1, 0], -w / 3, atol=1e-10)
    assert np.allclose(G.samples[1, 1], 1 / 3, atol=1e-10)
    assert membership_residual(G, [1, Z]) < 1e-12
    B = numerical_kernel(G)
    assert B.dim == 1
    v = B.vectors[0]
    assert abs(abs(v[0, 0]) - 1 / np.sqrt(2)) < 1e-10
    assert abs(v[1, 1] / v[0, 0] - 1) < 1e-10


def test_pivot_choice_gives_same_kernel(rng):
    for n in (2, 3):
        phis = [random_rational(rng, min_num=1) for _ in range(n)]
        G0 = minimal_kernel_symbol(phis, pivot=0)
        for p in range(1, n):
            assert _mutual(G0, minimal_kernel_symbol(phis, pivot=p))


def test_entries_bounded(rng):
    for _ in range(5):
        phis = [random_rational(rng) for _ in range(3)]
        G = minimal_kernel_symbol(phis)
        assert float(G.entry_sup().max()) <= 1 + 1e-8


def test_grid_input_matches_rational(rng):
    phis = [random_rational(rng, min_num=1), random_rational(rng, min_num=1)]
    G = minimal_kernel_symbol(phis)
    Gg = minimal_kernel_symbol([to_grid(p, 4096) for p in phis])
    assert isinstance(Gg, MatrixSymbol)
    assert membership_residual(Gg, phis) < 1e-6
    assert _mutual(G, Gg)


def test_symbol_errors():
    with pytest.raises(ZeroPivot):
        minimal_kernel_symbol([0, Z], pivot=0)
    with pytest.raises(ValueError):
        minimal_kernel_symbol([1, Z], pivot=2)
    with pytest.raises(NotHardy):
        minimal_kernel_symbol([ZBAR])


def test_kmin_z_and_one():
    r = kmin_pair_scalar(Z, 1)
    assert r.kind is KminKind.SYMBOL and r.branch == "scalar-noncyclic"
    assert r.theta.same_as(z_power(2))
    B = numerical_kernel(r.symbol)
    assert B.dim == 2
    assert max(r.residuals) < 1e-10


def test_kmin_contains_both(rng):
    for _ in range(10):
        f = random_rational(rng, min_num=1)
        g = random_rational(rng)
        r = kmin_pair_scalar(f, g)
        assert max(r.residuals) < 1e-6
        # the pair's kernel contains each single-function kernel
        for h in (f, g):
            if not h.is_zero():
                assert kernel_inclusion_check(minimal_kernel_symbol([h]), r.symbol)


def test_kmin_cyclic_is_whole_space():
    r = kmin_pair_scalar(1, lacunary_cyclic())
    assert r.kind is KminKind.WHOLE_SPACE and r.symbol is None
    assert r.branch == "scalar-cyclic"


def test_kmin_needs_nonzero_first():
    with pytest.raises(ZeroInput):
        kmin_pair_scalar(0, Z)


def test_recover_examples():
    p = recover_conjugate_analytic(ZBAR)
    assert p.same_as(RationalFn.const(1))
    f = rational(Polynomial([2, -1]))
    h = boundary_conjugate(Z * f)
    assert recover_conjugate_analytic(h).same_as(f)
    with pytest.raises(HypothesisFails):
        recover_conjugate_analytic(Z)
    g = to_grid(boundary_conjugate(Z * Z * Z), 1024)
    assert recover_conjugate_analytic(g).same_as(Z * Z, 1e-10)
    with pytest.raises(HypothesisFails):
        recover_conjugate_analytic(BoundaryGrid(to_grid(Z, 1024).samples))


def test_coprime_examples():
    g = ZBAR ** 2
    assert coprime_symbol_verify(g, [1, Z]).holds
    rep = coprime_symbol_verify(g, [1])
    assert not rep.holds and rep.gcd.same_as(z_power(1))
    assert not coprime_symbol_verify(g, [1, 0])
    with pytest.raises(HypothesisFails):
        coprime_symbol_verify(g, [Z * Z])


def test_coprime_random(rng):
    for _ in range(10):
        b = random_blaschke(rng, 2)
        fo = random_outer(rng)
        g = boundary_conjugate(Z * b.to_rational() * fo) / fo
        rep = coprime_symbol_verify(g, [fo])
        assert rep.inner_factors[0].same_as(b)
        assert rep.holds == (b.degree == 0)


def test_pair_invertible_example():
    r = kmin_pair_vector([1, 0], [0, 1])
    assert r.branch == "det-nonzero"
    assert np.allclose(r.symbol.samples[0, 0], to_grid(ZBAR / 3, r.symbol.n_samples).samples,
                       atol=1e-10)
    assert np.allclose(r.symbol.samples[0, 1], 0, atol=1e-12)
    assert numerical_kernel(r.symbol).dim == 2


def test_pair_dependent_example():
    r = kmin_pair_vector([1, Z], [Z, Z * Z])
    assert r.branch == "det-zero-noncyclic"
    assert r.theta.same_as(z_power(3))
    B = numerical_kernel(r.symbol)
    assert B.dim == 2
    assert not shift_invariance_test(r.symbol, B)
    assert max(r.residuals) < 1e-10


def test_pair_cyclic_example():
    c = lacunary_cyclic()
    r = kmin_pair_vector([1, 1], [c, c])
    assert r.branch == "det-zero-cyclic" and r.theta is None
    assert shift_invariance_test(r.symbol, numerical_kernel(r.symbol))


def test_pair_swap():
    r = kmin_pair_vector([Z, 0], [1, 0])
    assert r.notes["swapped"]
    assert max(r.residuals) < 1e-10
    assert numerical_kernel(r.symbol).dim >= 2


def test_pair_errors():
    with pytest.raises(ZeroInput):
        kmin_pair_vector([0, 0], [1, Z])
    with pytest.raises(ValueError):
        kmin_pair_vector([1, Z, Z], [1, 1, 1])
    with pytest.raises(NotHardy):
        kmin_pair_vector([to_grid(Z, 1024), 1], [1, 1])


def test_pair_residuals_random(rng):
    for _ in range(5):
        phi = [random_rational(rng, min_num=1) for _ in range(2)]
        psi = [random_rational(rng, min_num=1) for _ in range(2)]
        r = kmin_pair_vector(phi, psi)
        assert max(r.residuals) < 1e-6


def test_blaschke_multiple_keeps_divisor(rng):
    b = FiniteBlaschke([0.3 + 0.4j])
    h = as_hardy(b.to_rational() * random_outer(rng))
    r = kmin_pair_scalar(h, 1)
    assert blaschke_divides(b * z_power(1), r.theta)
    assert membership_residual(r.symbol, [h.value]) < 1e-10
