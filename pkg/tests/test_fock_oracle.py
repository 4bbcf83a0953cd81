import numpy as np
import pytest

from gaussiana import fock_oracle as fock, metrics, phasespace, states


def test_mode_ops_commutator():
    cutoff = 20
    a, adag, q, p = fock.mode_ops(cutoff)
    comm = a @ adag - adag @ a
    assert np.allclose(comm[: cutoff - 1, : cutoff - 1], np.eye(cutoff - 1))
    assert np.allclose(q, q.conj().T)
    assert np.allclose(p, p.conj().T)
    vac = np.zeros(cutoff)
    vac[0] = 1.0
    assert abs(vac @ (q @ q) @ vac - 0.5) < 1e-14


def test_vacuum_density():
    v = fock.vacuum(8, 2)
    assert v.rho[0, 0] == 1.0
    assert abs(np.trace(v.rho) - 1.0) < 1e-15


def test_thermal_trace_tail():
    n, cutoff = 1.2, 25
    t = fock.thermal(cutoff, n)
    tail = (n / (1.0 + n)) ** cutoff
    assert 0 <= t.trace_deficit <= tail + 1e-12
    assert abs(t.trace_deficit - tail) < 1e-12


def test_twb_schmidt_coefficients():
    r, cutoff = 0.7, 16
    t = fock.twb(cutoff, r)
    for m in (0, 1, 5):
        idx = m * cutoff + m
        expected = np.tanh(r) ** (2 * m) / np.cosh(r) ** 2
        assert abs(t.rho[idx, idx].real - expected) < 1e-12
    # cross-check the closed-form amplitudes against the matrix exponential;
    # the truncated exponential degrades near the cutoff corner
    via_expm = fock.two_mode_squeezed_thermal(cutoff, r)
    assert np.max(np.abs(t.rho - via_expm.rho)) < 5e-4
    half = cutoff // 2
    idx = np.array([m * cutoff + mm for m in range(half) for mm in range(half)])
    assert np.max(np.abs(t.rho[np.ix_(idx, idx)] - via_expm.rho[np.ix_(idx, idx)])) < 1e-6


def test_cm_of_named_states():
    cov, mean = fock.cm_of(fock.vacuum(10))
    assert np.allclose(cov, 0.5 * np.eye(2), atol=1e-12)
    cov, mean = fock.cm_of(fock.single_mode_general(30, r=0.3))
    assert np.allclose(np.diag(cov), [0.5 * np.exp(0.6), 0.5 * np.exp(-0.6)], atol=1e-6)
    cov, mean = fock.cm_of(fock.coherent(25, 0.8 - 0.2j))
    assert np.allclose(mean, np.sqrt(2) * np.array([0.8, -0.2]), atol=1e-9)


def test_entropy_of():
    assert fock.entropy_of(fock.vacuum(10)) < 1e-12
    n = 0.9
    got = fock.entropy_of(fock.thermal(60, n))
    assert abs(got - metrics.f_entropy(n + 0.5)) < 1e-8


def test_partial_trace_of_twb_is_thermal():
    r = 0.6
    reduced = fock.partial_trace(fock.twb(30, r), [0])
    n_eff = np.sinh(r) ** 2
    expected = fock.thermal(30, n_eff)
    assert np.max(np.abs(reduced.rho - expected.rho)) < 1e-10
    assert abs(fock.entropy_of(reduced) - metrics.f_entropy(n_eff + 0.5)) < 1e-8


def test_partial_trace_keeps_marginal_of_product():
    rho = fock.build_state("thermal", 12, photons=[0.3, 1.1])
    kept = fock.partial_trace(rho, [1])
    # tracing the truncated first factor rescales by its trace deficit
    tail = fock.thermal(12, 0.3).trace_deficit
    assert np.max(np.abs(kept.rho - (1.0 - tail) * fock.thermal(12, 1.1).rho)) < 1e-14


def test_partial_transpose_involution_and_spectrum():
    r = 0.5
    t = fock.twb(20, r)
    pt = fock.partial_transpose(t, 0)
    assert np.max(np.abs(fock.partial_transpose(pt, 0).rho - t.rho)) < 1e-15
    assert np.linalg.eigvalsh(pt.rho).min() < -1e-6  # entangled
    sep = fock.build_state("thermal", 12, photons=[0.4, 0.4])
    assert np.linalg.eigvalsh(fock.partial_transpose(sep, 0).rho).min() > -1e-12


def test_uhlmann_fidelity_basic():
    v = fock.vacuum(25)
    assert abs(fock.uhlmann_fidelity(v, v) - 1.0) < 1e-12
    c = fock.coherent(25, 0.6)
    expected = np.exp(-0.36)
    assert abs(fock.uhlmann_fidelity(v, c) - expected) < 1e-10
    t = fock.thermal(25, 0.7)
    assert abs(fock.uhlmann_fidelity(v, t) - 1.0 / (1.0 + 0.7)) < 1e-6


def test_project_coherent_on_product_state():
    rho = fock.build_state("coherent", 20, alpha=[0.4 + 0.1j, -0.2j])
    cond, density = fock.project_coherent(rho, 0, 0.4 + 0.1j)
    assert abs(density - 1.0 / np.pi) < 1e-10  # projecting onto itself
    assert np.max(np.abs(cond.rho - fock.coherent(20, -0.2j).rho)) < 1e-12


def test_wigner_trace_matches_phasespace():
    cases = [
        (fock.vacuum(25), states.vacuum(1), [0.0, 0.0]),
        (fock.vacuum(25), states.vacuum(1), [0.5, -0.3]),
        (fock.thermal(35, 0.6), states.thermal([0.6]), [0.2, 0.4]),
        (fock.single_mode_general(35, r=0.3), states.single_mode_general(r=0.3), [0.3, 0.1]),
    ]
    for rho, state, x in cases:
        assert abs(fock.wigner_trace(rho, x) - phasespace.wigner(state, x)) < 1e-6


def test_wigner_trace_thermal_positive_at_origin():
    assert fock.wigner_trace(fock.thermal(30, 1.1), [0.0, 0.0]) > 0


def test_wigner_trace_displacement_covariance():
    cutoff = 30
    rho = fock.thermal(cutoff, 0.5)
    lam = np.array([0.6, -0.2])
    d = fock.displacement_op(cutoff, (lam[0] + 1j * lam[1]) / np.sqrt(2.0))
    displaced = fock.FockDensity(cutoff, 1, d @ rho.rho @ d.conj().T)
    x = np.array([0.3, 0.5])
    assert abs(fock.wigner_trace(displaced, x) - fock.wigner_trace(rho, x - lam)) < 1e-7


def test_twb_photon_number_difference_is_sharp():
    r, cutoff = 0.7, 30
    t = fock.twb(cutoff, r)
    a, adag, _, _ = fock.mode_ops(cutoff)
    num = adag @ a
    eye = np.eye(cutoff)
    diff = np.kron(num, eye) - np.kron(eye, num)
    mean = np.trace(t.rho @ diff).real
    second = np.trace(t.rho @ diff @ diff).real
    assert abs(mean) < 1e-12
    assert abs(second - mean**2) < 1e-10


def test_build_state_vocabulary():
    assert fock.build_state("vacuum", 8, n=2).n_modes == 2
    assert fock.build_state("twb", 8, r=0.3).n_modes == 2
    assert fock.build_state("dsts", 12, alpha=0.2, r=0.1).n_modes == 1
    with pytest.raises(ValueError):
        fock.build_state("cat", 8)


def test_oracle_cm_close_to_fast_path_within_truncation():
    r, n1, n2 = 0.5, 0.4, 0.2
    oracle = fock.two_mode_squeezed_thermal(26, r, n1, n2)
    cov, mean = fock.cm_of(oracle)
    fast = states.two_mode_squeezed_thermal(r, n1, n2)
    assert np.max(np.abs(cov - fast.cov)) < 10 * max(oracle.trace_deficit, 1e-8)
