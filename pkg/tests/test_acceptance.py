"""Exit criteria, one test per criterion, at the stated tolerances."""

import math
import time

import numpy as np
import pytest

from chainent.ed_engine import (
    XXZModel,
    check_density_matrix,
    entropy_profile_ed,
    ground_state,
    reduced_density_matrix,
)
from chainent.errors import DegenerateGroundStateError
from chainent.scaling import fit_central_charge, gamma_subleading, increment_ratio, saturation_analysis
from chainent.spectra import (
    binary_entropy,
    effective_rank_from_modes,
    majorization_compare,
    reduced_spectrum_full,
    shannon_entropy,
)
from chainent.xy_exact import (
    XYModel,
    block_correlation,
    block_entropy,
    coupling_coefficients,
    entropy_profile,
    mode_occupations,
)
from oracles import dense_spectrum, dense_xxz

ISING = XYModel(1.0, 1.0)
XX = XYModel(0.0, 0.0)


@pytest.fixture(scope="module")
def ising_profile():
    return entropy_profile(ISING, 100)


@pytest.fixture(scope="module")
def xx_profile():
    return entropy_profile(XX, 100)


@pytest.fixture(scope="module")
def xxx20():
    model = XXZModel(1.0, 0.0, 20, "antiferro", "periodic")
    return entropy_profile_ed(model)


@pytest.mark.criterion("1a", "critical Ising fit over L in [20,100]: c+cbar = 1.00 +- 0.05, runtime < 10 s")
def test_critical_ising_central_charge():
    start = time.perf_counter()
    fit = fit_central_charge(entropy_profile(ISING, 100), (20, 100))
    elapsed = time.perf_counter() - start
    print(f"c+cbar = {fit.central_charge_sum:.5f}, elapsed {elapsed:.2f} s")
    assert fit.central_charge_sum == pytest.approx(1.00, abs=0.05)
    assert elapsed < 10.0


@pytest.mark.criterion("1b", "critical Ising fit over L in [20,100]: intercept 1.05 +- 0.10 (pi/3)")
def test_critical_ising_intercept(ising_profile):
    fit = fit_central_charge(ising_profile, (20, 100))
    print(f"intercept = {fit.intercept:.5f}")
    assert fit.intercept == pytest.approx(1.05, abs=0.10)


@pytest.mark.criterion("2", "XX (h=0) fit over L in [20,100]: c+cbar = 2.0 +- 0.1")
def test_xx_central_charge(xx_profile):
    fit = fit_central_charge(xx_profile, (20, 100))
    print(f"c+cbar = {fit.central_charge_sum:.5f}, intercept = {fit.intercept:.5f}")
    assert fit.central_charge_sum == pytest.approx(2.0, abs=0.1)


@pytest.mark.criterion("3", "XX / Ising mean increment ratio over L in [50,100] = 2.0 +- 0.1")
def test_increment_ratio(xx_profile, ising_profile):
    ratio = increment_ratio(xx_profile, ising_profile, (50, 100))
    print(f"ratio = {ratio:.5f}")
    assert ratio == pytest.approx(2.0, abs=0.1)


@pytest.mark.criterion("4", "a=1, gamma=0.5: c+cbar = 1.0 +- 0.1, shift 1/6 +- 0.02; gamma=0.25: shift 1/3 +- 0.03")
def test_marginal_deformation():
    fit = fit_central_charge(entropy_profile(XYModel(1.0, 0.5), 100), (20, 100))
    half = gamma_subleading(0.5, 100)
    quarter = gamma_subleading(0.25, 100)
    print(f"c+cbar(0.5) = {fit.central_charge_sum:.5f}, shift(0.5) = {half:.5f}, shift(0.25) = {quarter:.5f}")
    assert fit.central_charge_sum == pytest.approx(1.0, abs=0.1)
    assert half == pytest.approx(1 / 6, abs=0.02)
    assert quarter == pytest.approx(1 / 3, abs=0.03)


@pytest.fixture(scope="module")
def near_critical_ising():
    return entropy_profile(XYModel.from_a(1.05, 1.0), 200)


@pytest.mark.criterion("5a", "a=1.05 Ising, L<=200 converges (increments < 1e-4); a=1 does not")
def test_saturation_convergence(near_critical_ising):
    est = saturation_analysis(near_critical_ising, eps_inc=1e-4, delta=0.01)
    critical = saturation_analysis(entropy_profile(ISING, 200), eps_inc=1e-4, delta=0.01)
    print(f"a=1.05: converged={est.converged}, length={est.entanglement_length}; a=1: converged={critical.converged}")
    assert est.converged
    assert not critical.converged


@pytest.mark.criterion("5b", "a=1.05 Ising saturation value S_max = 0.72 +- 0.15 bits")
def test_saturation_value(near_critical_ising):
    est = saturation_analysis(near_critical_ising, eps_inc=1e-4, delta=0.01)
    print(f"S_max = {est.S_max:.5f}")
    assert est.S_max == pytest.approx(0.72, abs=0.15)


@pytest.mark.criterion("6", "spectrum(L+2) majorized by spectrum(L), violation <= 1e-10, L odd 1..17, Ising and XX")
@pytest.mark.parametrize("model", [ISING, XX], ids=["ising", "xx"])
def test_majorization(model):
    g = coupling_coefficients(model, 18)
    spectra = {}
    for L in range(1, 20, 2):
        spectra[L] = reduced_spectrum_full(mode_occupations(block_correlation(g, L)))
    worst = 0.0
    for L in range(1, 18, 2):
        rep = majorization_compare(spectra[L], spectra[L + 2], tol=1e-10)
        worst = max(worst, rep.max_violation)
        assert rep.holds, f"L={L}: violation {rep.max_violation} at {rep.worst_index}"
    print(f"max violation = {worst:.3e}")


@pytest.mark.criterion("7", "Lanczos vs dense energy within 1e-10 on a 3x3 (delta, lambda) grid, N in {8,10,12}; rho_L invariants")
@pytest.mark.parametrize("N", [8, 10, 12])
def test_ed_oracle_equivalence(N):
    worst = 0.0
    for delta in (0.5, 1.0, 1.5):
        for lam in (0.0, 0.1, 0.25):
            model = XXZModel(delta, lam, N)
            gs = ground_state(model)
            w, _ = dense_spectrum(dense_xxz(delta, lam, N), N)
            worst = max(worst, abs(gs.energy - w[0]))
            assert gs.energy == pytest.approx(w[0], abs=1e-10)
            for L in range(1, N):
                rho = reduced_density_matrix(gs.state, N, L, check=False)
                assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
                assert abs(np.trace(rho) - 1) <= 1e-10
                assert np.linalg.eigvalsh(rho)[0] >= -1e-10
                check_density_matrix(rho)
    print(f"N={N}: worst energy difference {worst:.2e}")


@pytest.mark.criterion("8", "XXX N=20 ring: log growth L=1..5 (slope 1/3 +-30% per step), turnover by L=6..10, S_L = S_{20-L}; paper-ferro degenerate")
def test_xxx_twenty(xxx20):
    S = dict(zip(xxx20.L.tolist(), xxx20.S.tolist()))
    ratios = {L: (S[L + 1] - S[L]) / (math.log2((L + 1) / L) / 3) for L in range(1, 10)}
    print("step ratios to 1/3 log2:", {L: round(r, 3) for L, r in ratios.items()})
    for L in range(1, 5):
        assert 0.7 <= ratios[L] <= 1.3
    for L in range(6, 10):
        assert ratios[L] < 0.7
    assert max(S, key=S.get) == 10
    np.testing.assert_allclose(xxx20.S, xxx20.S[::-1], atol=1e-10)
    with pytest.raises(DegenerateGroundStateError):
        ground_state(XXZModel(1.0, 0.0, 20, "paper-ferro", "periodic"))


@pytest.mark.criterion("9", "Shannon entropy of full spectrum = mode-entropy sum within 1e-10, L <= 20, 5 models")
def test_entropy_consistency():
    models = [ISING, XX, XYModel(0.5, 0.0), XYModel(1.0, 0.5), XYModel(1 / 1.05, 1.0)]
    worst = 0.0
    for model in models:
        g = coupling_coefficients(model, 19)
        for L in range(1, 21):
            nu = mode_occupations(block_correlation(g, L))
            diff = abs(shannon_entropy(reduced_spectrum_full(nu)) - block_entropy(nu))
            worst = max(worst, diff)
            assert diff <= 1e-10
    print(f"worst difference {worst:.2e}")


@pytest.mark.criterion("10", "effective rank (eps=1e-6): critical L=40 > L=10; a=1.2 equal")
def test_effective_rank_growth():
    def rank(model, L):
        g = coupling_coefficients(model, L - 1)
        return effective_rank_from_modes(mode_occupations(block_correlation(g, L)), 1e-6)

    crit = rank(ISING, 10), rank(ISING, 40)
    gapped_model = XYModel.from_a(1.2, 1.0)
    gapped = rank(gapped_model, 10), rank(gapped_model, 40)
    print(f"critical {crit}, a=1.2 {gapped}")
    assert crit[1] > crit[0]
    assert gapped[0] == gapped[1]


@pytest.mark.criterion("11", "quadrature vs closed forms (gamma=0; critical Ising) within 1e-9 for |l| <= 100")
def test_coupling_oracles():
    lags = np.arange(-100, 101)
    worst = 0.0
    for h in (0.0, 0.25, 0.5, 0.75, 1.0):
        model = XYModel(h, 0.0)
        quad = coupling_coefficients(model, 100, method="quadrature").values
        phi_a = math.acos(h)
        closed = np.where(lags == 0, 2 * phi_a / math.pi - 1,
                          2 * np.sin(lags * phi_a) / (np.where(lags == 0, 1, lags) * math.pi))
        worst = max(worst, float(np.max(np.abs(quad - closed))))
    quad = coupling_coefficients(ISING, 100, method="quadrature").values
    worst = max(worst, float(np.max(np.abs(quad + 2 / (math.pi * (2 * lags + 1))))))
    print(f"worst deviation {worst:.2e}")
    assert worst <= 1e-9


def test_single_site_entropy_binary_form():
    """Sanity link between the criteria above: S_1 at critical Ising from |g_0| = 2/pi."""
    assert block_entropy(mode_occupations(block_correlation(coupling_coefficients(ISING, 0), 1))) == \
        pytest.approx(binary_entropy((1 + 2 / math.pi) / 2), abs=1e-15)
