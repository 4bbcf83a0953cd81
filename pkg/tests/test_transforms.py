import numpy as np
import pytest

from gaussiana import core, metrics, states, transforms
from gaussiana.exceptions import PhysicsError

from conftest import random_state


def mean_photons(state):
    """Per-mode <a^dag a> from the CM and first moments."""
    total = 0.0
    for k in range(state.n_modes):
        block = state.cov[2 * k : 2 * k + 2, 2 * k : 2 * k + 2]
        m = state.mean[2 * k : 2 * k + 2]
        total += 0.5 * (np.trace(block) + m @ m) - 0.5
    return total


def test_displacement_zero_is_identity():
    state = states.vacuum(1)
    f, d = transforms.displacement([0.0, 0.0])
    out = transforms.apply(state, f, d, modes=[0])
    assert np.allclose(out.cov, state.cov)
    assert np.allclose(out.mean, state.mean)


def test_displacement_gives_coherent_state():
    alpha = 1.0 + 0.0j
    f, d = transforms.displacement(np.sqrt(2.0) * np.array([alpha.real, alpha.imag]))
    out = transforms.apply(states.vacuum(1), f, d, modes=[0])
    assert np.allclose(out.mean, [np.sqrt(2.0), 0.0])
    assert np.allclose(out.cov, 0.5 * np.eye(2))


def test_displacement_group_inverse(rng):
    state = random_state(2, rng)
    shift = rng.normal(size=4)
    f, d = transforms.displacement(shift)
    back = transforms.apply(transforms.apply(state, f, d), f, -d)
    assert np.allclose(back.mean, state.mean, atol=1e-12)
    assert np.allclose(back.cov, state.cov)


def test_phase_rotation_values():
    assert np.allclose(transforms.phase_rotation(0.0), np.eye(2))
    assert np.allclose(transforms.phase_rotation(np.pi / 2), [[0, 1], [-1, 0]], atol=1e-15)
    theta = 0.37
    prod = transforms.phase_rotation(theta) @ transforms.phase_rotation(-theta)
    assert np.allclose(prod, np.eye(2), atol=1e-15)


def test_beam_splitter_structure():
    assert np.allclose(transforms.beam_splitter(0.0, 0.3), np.eye(4))
    f = transforms.beam_splitter(np.pi / 4, 0.0)
    assert np.allclose(f[:2, :2], np.eye(2) / np.sqrt(2))
    assert np.allclose(f[:2, 2:], np.eye(2) / np.sqrt(2))
    assert np.allclose(f @ f.T, np.eye(4), atol=1e-15)  # passive device


def test_beam_splitter_conserves_photon_number(rng):
    for _ in range(10):
        state = random_state(2, rng)
        f = transforms.beam_splitter(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        out = transforms.apply(state, f)
        assert abs(mean_photons(out) - mean_photons(state)) < 1e-10


def test_squeezer_single_diagonal_at_zero_phase():
    f = transforms.squeezer_single(0.5, 0.0)
    assert np.allclose(f, np.diag([np.exp(0.5), np.exp(-0.5)]))
    assert np.allclose(transforms.squeezer_single(0.0, 1.3), np.eye(2))


def test_squeezer_preserves_purity():
    out = transforms.apply(states.vacuum(1), transforms.squeezer_single(0.7, 0.4))
    assert abs(np.linalg.det(out.cov) - 0.25) < 1e-12


def test_negative_r_matches_shifted_phase():
    f1 = transforms.squeezer_single(-0.6, 0.9)
    f2 = transforms.squeezer_single(0.6, 0.9 + np.pi)
    assert np.allclose(f1, f2, atol=1e-15)


def test_squeezer_two_mode_on_vacuum_gives_twb():
    r = 0.6
    f = transforms.squeezer_two_mode(r, 0.0)
    out = transforms.apply(states.vacuum(2), f)
    assert np.max(np.abs(out.cov - states.twb(r).cov)) < 1e-12


def test_twb_duality_under_balanced_splitter():
    r = 0.6
    s2 = transforms.squeezer_two_mode(r, 0.0)
    bs = transforms.beam_splitter(np.pi / 4, 0.0)
    cov = (bs @ s2) @ (0.5 * np.eye(4)) @ (bs @ s2).T
    target = np.zeros((4, 4))
    plus = transforms.squeezer_single(r, 0.0)
    minus = transforms.squeezer_single(-r, 0.0)
    target[:2, :2] = plus @ (0.5 * np.eye(2)) @ plus.T
    target[2:, 2:] = minus @ (0.5 * np.eye(2)) @ minus.T
    assert np.max(np.abs(cov - target)) < 1e-12


def test_splitter_on_opposite_squeezed_pair_gives_twb():
    r = 0.45
    sq = np.zeros((4, 4))
    sq[:2, :2] = transforms.squeezer_single(r, 0.0) @ (0.5 * np.eye(2)) @ transforms.squeezer_single(r, 0.0).T
    sq[2:, 2:] = transforms.squeezer_single(-r, 0.0) @ (0.5 * np.eye(2)) @ transforms.squeezer_single(-r, 0.0).T
    state = core.GaussianState(sq)
    out = transforms.apply(state, transforms.beam_splitter(-np.pi / 4, 0.0))
    assert np.max(np.abs(out.cov - states.twb(r).cov)) < 1e-12


def test_apply_identity_and_thermal_rotation_invariance(rng):
    state = states.thermal([0.8])
    out = transforms.apply(state, transforms.phase_rotation(1.1), modes=[0])
    assert np.allclose(out.cov, state.cov)


def test_apply_embeds_on_selected_mode():
    state = states.thermal([0.0, 1.0])
    out = transforms.apply(state, transforms.squeezer_single(0.3, 0.0), modes=[1])
    assert np.allclose(out.cov[:2, :2], 0.5 * np.eye(2))
    assert not np.allclose(out.cov[2:, 2:], state.cov[2:, 2:])


def test_apply_composition(rng):
    state = random_state(2, rng)
    f1 = transforms.beam_splitter(0.4, 1.2)
    f2 = transforms.squeezer_two_mode(0.3, 0.5)
    once = transforms.apply(transforms.apply(state, f1), f2)
    combined = transforms.apply(state, f2 @ f1)
    assert np.max(np.abs(once.cov - combined.cov)) < 1e-10
    assert np.max(np.abs(once.mean - combined.mean)) < 1e-10


def test_apply_preserves_symplectic_spectrum(rng):
    state = random_state(2, rng)
    f = transforms.squeezer_two_mode(0.4, 0.9)
    out = transforms.apply(state, f)
    assert np.allclose(
        out.symplectic_eigenvalues(), state.symplectic_eigenvalues(), atol=1e-10
    )
    assert abs(metrics.purity(out) - metrics.purity(state)) < 1e-10


def test_apply_errors():
    state = states.vacuum(2)
    with pytest.raises(ValueError):
        transforms.apply(state, transforms.phase_rotation(0.2), modes=[5])
    with pytest.raises(ValueError):
        transforms.apply(state, transforms.beam_splitter(0.3), modes=[0, 0])
    with pytest.raises(PhysicsError):
        transforms.apply(state, np.diag([2.0, 2.0]), modes=[0])


def test_mode_order_matters_for_beam_splitter(rng):
    state = random_state(2, rng)
    f = transforms.beam_splitter(0.7, 0.3)
    fwd = transforms.apply(state, f, modes=[0, 1])
    rev = transforms.apply(state, f, modes=[1, 0])
    assert not np.allclose(fwd.cov, rev.cov)
