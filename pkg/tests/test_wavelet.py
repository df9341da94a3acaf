import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfrwt import (
    FracOrder,
    SampledField,
    WaveletCoefficients,
    admissibility_constant,
    daughter,
    default_translation_grid,
    energy_ratio,
    gabor,
    gaussian,
    hermite1,
    hermite_superposition,
    inner_product,
    inner_product_relation_check,
    kernel_gram,
    l2_norm,
    make_grid,
    make_scale_grid,
    mfrwt_direct,
    mfrwt_spectral,
    property_suite,
    reconstruct,
    reproduce,
    reproducing_kernel,
    sample,
)
from mfrwt import _backend
from mfrwt.errors import AdmissibilityError, ConvergenceError, GridError, ParameterError, RatioUndefinedError, ScaleError
from mfrwt.wavelet import (
    AdmissibilityReport,
    default_admissibility_axes,
    dilation_constant,
    generator_spectrum,
    spectral_grid_for,
    wavelet_id,
    wavelet_spectra,
)
from mfrwt.frft import frft_direct


def hermite1_constant(alpha, lam):
    """Closed form of C for ψ = t e^{-t²/2}, one axis.

    F ψ is (derivative of the Gaussian transform) a multiple of
    u·exp(-u²/(2s)) with s = (1 + λ⁴cot²α)/(λ⁴csc²α); integrating
    |Fψ|²/|u| gives C = 2π λ²|csc α| / sqrt(1 + λ⁴cot²α).
    """
    l4 = lam**4
    return 2 * np.pi * lam**2 / abs(np.sin(alpha)) / np.sqrt(1 + l4 / np.tan(alpha) ** 2)


# -- daughters ---------------------------------------------------------------


def test_daughter_identity_at_quarter_turn():
    g = make_grid(1, 8.0, 64)
    D = daughter(hermite1(1), 1.0, 0.0, FracOrder((np.pi / 2,), 1.0), g)
    assert np.allclose(D.values, sample(hermite1(1), g).values, atol=1e-15)


@pytest.mark.parametrize("a, b", [(2.0, 0.0), (-0.5, 1.25), (3.0, -2.0)])
def test_daughter_modulus(a, b):
    o = FracOrder((2.0,), 0.8)
    g = make_grid(1, 16.0, 512)
    D = daughter(hermite1(1), a, b, o, g)
    t = g.axis(0)
    expected = abs(o.kernel_constant) * np.abs(hermite1(1)((t - b) / a)) / np.sqrt(abs(a))
    assert np.allclose(np.abs(D.values), expected, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("a, b", [(1.0, 0.0), (0.7, 1.0), (-1.8, -0.5)])
def test_daughter_norm(ref, a, b):
    D = daughter(ref.psi, a, b, ref.order, ref.grid)
    psi_norm = l2_norm(sample(ref.psi, ref.grid))
    assert l2_norm(D) == pytest.approx(abs(ref.order.kernel_constant) * psi_norm, rel=1e-8)


def test_daughter_rejects_zero_scale(ref):
    with pytest.raises(ScaleError):
        daughter(ref.psi, 0.0, 0.0, ref.order, ref.grid)


# -- admissibility -----------------------------------------------------------


@pytest.mark.parametrize("alpha, lam", [(np.pi / 2, 1.0), (2 * np.pi / 5, 1.2), (0.7, 0.8), (-2.3, 1.5)])
def test_admissibility_closed_form(alpha, lam):
    rep = admissibility_constant(hermite1(1), FracOrder((alpha,), lam))
    assert rep.converged and rep.admissible
    assert rep.constant == pytest.approx(hermite1_constant(alpha, lam), rel=1e-5)


def test_admissibility_quarter_turn_is_two_pi():
    assert admissibility_constant(hermite1(1), FracOrder((np.pi / 2,), 1.0)).constant == pytest.approx(2 * np.pi, rel=1e-6)


def test_admissibility_refinement_stable(ref):
    axes = default_admissibility_axes(ref.psi, ref.order, ratio=1.005)
    fine = make_scale_grid(1, axes[0][0], axes[0][1], axes[0][2], True)
    assert admissibility_constant(ref.psi, ref.order, fine).constant == pytest.approx(ref.C, rel=0.01)


def test_admissibility_quadratic_in_psi(ref):
    doubled = admissibility_constant(ref.psi.scaled(2.0), ref.order).constant
    assert doubled == pytest.approx(4 * ref.C, rel=1e-12)


def test_admissibility_separable_2d():
    o = FracOrder((1.0, 2.2), 0.9)
    rep = admissibility_constant(hermite1(2), o)
    expected = hermite1_constant(1.0, 0.9) * hermite1_constant(2.2, 0.9)
    assert rep.constant == pytest.approx(expected, rel=1e-4)


def test_gaussian_not_admissible():
    o = FracOrder((np.pi / 2,), 1.0)
    with pytest.raises(AdmissibilityError):
        admissibility_constant(gaussian(1), o)
    rep = admissibility_constant(gaussian(1), o, strict=False)
    assert not rep.admissible and not rep.converged
    # each octave below a_min adds the same amount: the log divergence
    incs = rep.increments[0]
    assert np.allclose(incs, incs[0], rtol=0.05)


def test_truncated_scale_grid_not_converged(ref):
    narrow = make_scale_grid(1, 0.5, 2.0, 20, True)
    rep = admissibility_constant(ref.psi, ref.order, narrow)
    assert not rep.converged
    with pytest.raises(ConvergenceError):
        rep.require()


def test_generator_spectrum_matches_direct_transform(ref):
    g = make_grid(1, 16.0, 1024)
    F = frft_direct(sample(ref.psi, g), ref.order, make_grid(1, 4.0, 40))
    spec = generator_spectrum(ref.psi, ref.order, F.grid.points)
    assert np.max(np.abs(spec - F.values.ravel())) <= 1e-10


# -- forward transforms --------------------------------------------------------


def test_self_coefficient(ref):
    a0, b0 = 1.5, -1.0
    D = daughter(ref.psi, a0, b0, ref.order, ref.grid)
    sg = make_scale_grid(1, 1.5, 3.0, 2, False)
    W = mfrwt_direct(D, ref.psi, sg, make_grid(1, 2.0, 4), ref.order)
    assert W.values[0, 1] == pytest.approx(l2_norm(D) ** 2, rel=1e-12)


def test_zero_signal(ref):
    zero = SampledField(ref.grid, np.zeros(ref.grid.shape))
    sg = make_scale_grid(1, 0.5, 2.0, 3, True)
    assert np.all(mfrwt_direct(zero, ref.psi, sg, ref.grid, ref.order).values == 0)
    assert np.all(mfrwt_spectral(zero, ref.psi, sg, ref.order).values == 0)
    W = mfrwt_spectral(zero, ref.psi, sg, ref.order)
    assert np.all(reconstruct(W, admissibility=ref.C).values == 0)


def test_linearity_in_signal(ref):
    sg = make_scale_grid(1, 0.25, 4.0, 6, True)
    tg = make_grid(1, 8.0, 128)
    f, g = sample(hermite_superposition(1, seed=1), ref.grid), sample(gabor(1), ref.grid)
    lhs = mfrwt_direct(f * 2.0 + g, ref.psi, sg, tg, ref.order).values
    rhs = 2 * mfrwt_direct(f, ref.psi, sg, tg, ref.order).values + mfrwt_direct(g, ref.psi, sg, tg, ref.order).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


def test_conjugate_linear_in_wavelet(ref):
    sg = make_scale_grid(1, 0.25, 4.0, 6, True)
    tg = make_grid(1, 8.0, 64)
    f = sample(hermite_superposition(1, seed=4), ref.grid)
    c = 2.0 + 0.5j
    lhs = mfrwt_direct(f, ref.psi.scaled(c), sg, tg, ref.order).values
    rhs = np.conj(c) * mfrwt_direct(f, ref.psi, sg, tg, ref.order).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


@pytest.mark.parametrize("alpha, lam", [(1.1, 0.9), (2 * np.pi / 5, 1.2), (-2.0, 1.4)])
def test_spectral_matches_direct(alpha, lam):
    o = FracOrder((alpha,), lam)
    g = make_grid(1, 8.0, 128)
    f = sample(hermite_superposition(1, seed=2), g)
    sg = make_scale_grid(1, 0.5, 4.0, 4, True)  # 8 scale points
    Wd = mfrwt_direct(f, hermite1(1), sg, g, o)
    Ws = mfrwt_spectral(f, hermite1(1), sg, o, g)
    assert np.max(np.abs(Ws.values - Wd.values)) <= 1e-4 * np.max(np.abs(Wd.values))


def test_spectral_matches_direct_reference(ref):
    Wd = mfrwt_direct(ref.f, ref.psi, ref.scales, ref.tgrid, ref.order)
    assert np.max(np.abs(ref.W.values - Wd.values)) <= 1e-4 * np.max(np.abs(Wd.values))


def test_spectral_matches_classical_cwt():
    o = FracOrder((np.pi / 2,), 1.0)
    g = make_grid(1, 8.0, 128)
    f = sample(hermite_superposition(1, seed=2), g)
    sg = make_scale_grid(1, 0.5, 4.0, 4, True)
    W = mfrwt_spectral(f, hermite1(1), sg, o, g)
    t = g.axis(0)
    psi = hermite1(1)
    cwt = np.array(
        [[np.sum(f.values * np.conj(psi((t - b) / a))) * g.spacing[0] / np.sqrt(abs(a)) for b in t] for a in sg.points[:, 0]]
    )
    assert np.max(np.abs(W.values - cwt)) <= 1e-6 * np.max(np.abs(cwt))


def test_spectral_2d_matches_direct():
    o = FracOrder((1.0, 2.1), 1.1)
    g = make_grid(2, 5.0, 32)
    f = sample(hermite_superposition(2, seed=8, width=0.8), g)
    psi = hermite1(2)
    sg = make_scale_grid(2, 0.5, 1.0, 2, True)
    tg = make_grid(2, 2.5, 16)
    Wd = mfrwt_direct(f, psi, sg, tg, o)
    Ws = mfrwt_spectral(f, psi, sg, o, tg)
    assert np.max(np.abs(Ws.values - Wd.values)) <= 1e-4 * np.max(np.abs(Wd.values))


def test_spectral_cache_and_errors(ref):
    sg = make_scale_grid(1, 0.5, 2.0, 3, True)
    xg = spectral_grid_for(ref.grid, sg, ref.psi, ref.order)
    S = wavelet_spectra(ref.psi, sg, ref.order, xg)
    a = mfrwt_spectral(ref.f, ref.psi, sg, ref.order, psi_spectra=S)
    b = mfrwt_spectral(ref.f, ref.psi, sg, ref.order)
    assert np.array_equal(a.values, b.values)
    with pytest.raises(GridError):
        mfrwt_spectral(ref.f, ref.psi, sg, ref.order, psi_spectra=S[:, :-1])
    with pytest.raises(GridError):
        mfrwt_spectral(ref.f, ref.psi, sg, ref.order, make_grid(1, 8.0, 100))


def test_coefficient_container_validation(ref):
    sg = make_scale_grid(1, 0.5, 2.0, 3, True)
    with pytest.raises(GridError):
        WaveletCoefficients(sg, ref.grid, ref.order, np.zeros((5, 256)))
    with pytest.raises(ParameterError):
        WaveletCoefficients(sg, ref.grid, ref.order, np.full((6, 256), np.nan))
    assert wavelet_id(hermite_superposition(1, seed=3)) == "hermite_superposition;N=1;c=0;w=1;seed=3"


def test_default_translation_grid_holds_coefficients(ref):
    tg = ref.tgrid
    assert tg.spacing == ref.grid.spacing
    energy = np.sum(np.abs(ref.W.values) ** 2 * ref.scales.weights[:, None], axis=0)
    assert SampledField(tg, np.sqrt(energy)).boundary_energy_fraction() < 1e-10


# -- identities ----------------------------------------------------------------


def test_energy_relation_reference(ref):
    ratio = energy_ratio(ref.W, ref.f, ref.C)
    assert 0.95 <= ratio <= 1.05


def test_inner_product_relation(ref):
    g = sample(hermite1(1).translated(0.4).with_linear_phase(0.3), ref.grid)
    sg = ref.scales
    ratio = inner_product_relation_check(ref.f, g, ref.psi, sg, ref.tgrid, ref.order, ref.admissibility)
    assert abs(ratio - 1) <= 0.05
    twice = inner_product_relation_check(ref.f * 2.0, g, ref.psi, sg, ref.tgrid, ref.order, ref.C)
    assert twice == pytest.approx(ratio, rel=1e-12)
    same = inner_product_relation_check(ref.f, ref.f, ref.psi, sg, ref.tgrid, ref.order, ref.C)
    assert same.real == pytest.approx(energy_ratio(ref.W, ref.f, ref.C), rel=1e-6)
    assert abs(same.imag) < 1e-12


def test_inner_product_relation_undefined(ref):
    even = sample(gaussian(1), ref.grid)
    with pytest.raises(RatioUndefinedError):
        inner_product_relation_check(ref.f, even, ref.psi, ref.scales, ref.grid, ref.order, ref.C)


def test_reconstruction_reference(ref):
    fhat = reconstruct(ref.W, admissibility=ref.C, grid=ref.grid)
    assert l2_norm(fhat - ref.f) <= 0.05 * l2_norm(ref.f)


def test_reconstruct_daughter(ref):
    D = daughter(ref.psi, 1.0, 1.0, ref.order, ref.grid)
    tg = default_translation_grid(ref.grid, ref.scales, ref.psi, D)
    W = mfrwt_spectral(D, ref.psi, ref.scales, ref.order, tg)
    assert l2_norm(reconstruct(W, admissibility=ref.C, grid=ref.grid) - D) <= 0.05 * l2_norm(D)


@pytest.mark.slow
def test_reconstruction_improves_with_coverage(ref):
    r = 64 ** (1 / 15)
    errors = []
    for k in (0, 2, 4):
        sg = make_scale_grid(1, 1 / (8 * r**k), 8 * r**k, 16 + 2 * k, True)
        tg = default_translation_grid(ref.grid, sg, ref.psi, ref.f)
        W = mfrwt_spectral(ref.f, ref.psi, sg, ref.order, tg)
        errors.append(l2_norm(reconstruct(W, admissibility=ref.C, grid=ref.grid) - ref.f) / l2_norm(ref.f))
    assert all(e2 <= e1 + 1e-3 for e1, e2 in zip(errors, errors[1:]))
    assert errors[-1] < errors[0] / 2


def test_reconstruct_needs_wavelet(ref):
    bare = WaveletCoefficients(ref.W.scale_grid, ref.W.translation_grid, ref.order, ref.W.values)
    with pytest.raises(ParameterError):
        reconstruct(bare, admissibility=ref.C)


def test_nonconverged_constant_blocks_reconstruction(ref):
    bad = AdmissibilityReport(1.0, None, None, shell_fraction=0.2, converged=False)
    with pytest.raises(ConvergenceError):
        reconstruct(ref.W, admissibility=bad)


def test_kernel_diagonal_and_hermitian(ref):
    p, q = (0.8, 0.5), (-1.5, -1.0)
    kpp = reproducing_kernel(*p, *p, ref.psi, ref.order, ref.grid, ref.C)
    assert kpp.real > 0 and kpp == pytest.approx(l2_norm(daughter(ref.psi, *p, ref.order, ref.grid)) ** 2 / ref.C)
    kpq = reproducing_kernel(*p, *q, ref.psi, ref.order, ref.grid, ref.C)
    kqp = reproducing_kernel(*q, *p, ref.psi, ref.order, ref.grid, ref.C)
    assert kpq == pytest.approx(np.conj(kqp), rel=1e-12)


def test_kernel_gram_psd(ref, rng):
    pairs = [(rng.choice([-1, 1]) * np.exp(rng.uniform(-1.5, 1.5)), rng.uniform(-4, 4)) for _ in range(30)]
    G = kernel_gram(pairs, ref.psi, ref.order, ref.grid, ref.C)
    assert np.allclose(G, G.conj().T, atol=1e-14)
    eig = np.linalg.eigvalsh(G)
    assert eig.min() >= -1e-8 * np.trace(G).real
    assert G[3, 7] == pytest.approx(reproducing_kernel(*pairs[3], *pairs[7], ref.psi, ref.order, ref.grid, ref.C), rel=1e-12)


def test_reproducing_identity(ref):
    rng = np.random.default_rng(0)
    mag = np.abs(ref.W.values)
    idx = np.argwhere(mag >= 0.25 * mag.max())
    pick = idx[rng.choice(len(idx), 10, replace=False)]
    probes = [(ref.scales.points[i], ref.tgrid.points[j]) for i, j in pick]
    got = reproduce(ref.W, probes, ref.C, ref.grid)
    want = np.array([ref.W.values[i, j] for i, j in pick])
    assert np.all(np.abs(got - want) <= 0.05 * np.abs(want))


# -- structural properties ---------------------------------------------------------


@pytest.fixture(scope="module")
def suite_inputs():
    g = make_grid(1, 16.0, 128)
    scales = make_scale_grid(1, 0.5, 2.0, 3, True).points
    bpoints = g.axis(0)[48:80:4][:, None]
    return g, scales, bpoints


def test_property_suite_matched(ref, suite_inputs):
    g, scales, bpoints = suite_inputs
    f = hermite_superposition(1, seed=4, max_order=3)
    out = property_suite(f, ref.psi, ref.order, g, scales, bpoints)
    assert set(out) == {"linearity", "anti_linearity", "dilation", "conjugacy", "parity", "translation"}
    for name, d in out.items():
        assert d["abs"] <= 1e-8, name


def test_property_suite_shared_grid_refines(ref):
    f = hermite_superposition(1, seed=4, max_order=3)
    scales = make_scale_grid(1, 0.5, 2.0, 3, True).points
    errs = []
    for M in (64, 128, 256):
        g = make_grid(1, 16.0, M)
        errs.append(property_suite(f, ref.psi, ref.order, g, scales, np.array([[0.0], [1.0]]), dilation_grid="shared")["dilation"]["rel"])
    # the mismatch is pure quadrature error: it collapses once the grid resolves the chirp
    assert errs[1] < errs[0] / 1000 and errs[2] < 1e-12


def test_property_suite_trivial_cases(ref, suite_inputs):
    g, scales, bpoints = suite_inputs
    assert dilation_constant(ref.order, 1.0) == pytest.approx(1.0, rel=1e-15)
    out = property_suite(hermite1(1), ref.psi, ref.order, g, scales, bpoints, sigmas=(1.0,), shifts=[0.0])
    assert out["dilation"]["abs"] <= 1e-15 and out["translation"]["abs"] <= 1e-15


def test_property_suite_errors(ref, suite_inputs):
    g, scales, bpoints = suite_inputs
    with pytest.raises(ParameterError):
        property_suite(hermite1(1), ref.psi, ref.order, g, scales, bpoints, sigmas=(0.0,))
    with pytest.raises(ParameterError):
        property_suite(hermite1(1), ref.psi, ref.order, g, scales, bpoints, shifts=[0.1])
    with pytest.raises(ParameterError):
        property_suite(hermite1(1), ref.psi, ref.order, g, scales, bpoints, dilation_grid="other")


@given(st.floats(0.3, 3.0))
@settings(max_examples=20, deadline=None)
def test_dilation_constant_is_real(sigma):
    o = FracOrder((0.9, -2.0), 1.3)
    # with the unitary kernel constant the ratio κ_λ/κ_{λ/σ} is σ^N
    assert dilation_constant(o, sigma) == pytest.approx(sigma ** (o.dims / 2) * sigma**o.dims, rel=1e-12)


# -- backends -----------------------------------------------------------------------


@pytest.mark.skipif(not _backend.NUMBA_AVAILABLE, reason="numba missing")
def test_backend_parity(ref):
    sg = make_scale_grid(1, 0.25, 4.0, 4, True)
    tg = make_grid(1, 6.0, 48)
    results = {}
    previous = _backend.get_backend()
    try:
        for name in ("numba", "numpy"):
            _backend.set_backend(name)
            W = mfrwt_direct(ref.f, ref.psi, sg, tg, ref.order)
            results[name] = (W.values, reconstruct(W, admissibility=ref.C, grid=ref.grid).values, frft_direct(ref.f, ref.order, method="points").values)
    finally:
        _backend.set_backend(previous)
    for a, b in zip(results["numba"], results["numpy"]):
        assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))


def test_backend_selection_errors():
    with pytest.raises(ValueError):
        _backend.set_backend("fortran")
    assert _backend.get_backend() in ("numba", "numpy")
