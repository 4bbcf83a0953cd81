import numpy as np
import pytest

from gaussiana import core, fidelity, fock_oracle as fock, states, transforms

from conftest import random_state, random_symplectic


def test_overlap_examples():
    v = states.vacuum(1)
    assert abs(fidelity.overlap(v, v) - 1.0) < 1e-14
    n = 0.9
    t = states.thermal([n])
    assert abs(fidelity.overlap(t, t) - 1.0 / (1.0 + 2.0 * n)) < 1e-14
    a, b = 0.7 + 0.3j, -0.1 + 0.5j
    got = fidelity.overlap(states.coherent([a]), states.coherent([b]))
    assert abs(got - np.exp(-abs(a - b) ** 2)) < 1e-13


def test_overlap_matches_fock_trace():
    s1 = states.single_mode_general(alpha=0.3, r=0.4, psi=0.7, photons=0.5)
    s2 = states.thermal([0.8])
    f1 = fock.single_mode_general(40, alpha=0.3, r=0.4, psi=0.7, photons=0.5)
    f2 = fock.thermal(40, 0.8)
    oracle = float(np.trace(f1.rho @ f2.rho).real)
    assert abs(fidelity.overlap(s1, s2) - oracle) < 1e-8


def test_fidelity_1m_self_is_one(rng):
    for _ in range(5):
        s = random_state(1, rng)
        assert abs(fidelity.fidelity_1m(s, s) - 1.0) < 1e-9


def test_fidelity_1m_coherent_pair():
    a, b = 0.9 + 0.1j, 0.4 - 0.6j
    got = fidelity.fidelity_1m(states.coherent([a]), states.coherent([b]))
    assert abs(got - np.exp(-abs(a - b) ** 2)) < 1e-12


def test_fidelity_1m_against_fock_oracle():
    cutoff = 40
    cases = [
        (dict(alpha=0.5 + 0.2j), dict(alpha=0.1 - 0.4j)),
        (dict(photons=0.8), dict()),
        (dict(photons=2.0), dict()),
        (dict(r=0.4), dict(photons=0.5)),
        (dict(alpha=0.3, r=0.3, psi=1.0, photons=0.4), dict(alpha=-0.2 + 0.1j, r=0.2, psi=0.3, photons=0.7)),
    ]
    for kw1, kw2 in cases:
        s1 = states.single_mode_general(**kw1)
        s2 = states.single_mode_general(**kw2)
        f1 = fock.single_mode_general(cutoff, **kw1)
        f2 = fock.single_mode_general(cutoff, **kw2)
        got = fidelity.fidelity_1m(s1, s2)
        oracle = fock.uhlmann_fidelity(f1, f2)
        assert abs(got - oracle) < 1e-6


def test_fidelity_2m_self_and_twb_pairs():
    tw = states.twb(0.7)
    assert abs(fidelity.fidelity_2m(tw, tw) - 1.0) < 1e-9
    got = fidelity.fidelity_2m(states.twb(0.4), states.twb(0.6))
    oracle = fock.uhlmann_fidelity(fock.twb(35, 0.4), fock.twb(35, 0.6))
    assert abs(got - oracle) < 1e-4


def test_fidelity_2m_mixed_pair_against_fock_oracle():
    s1 = states.two_mode_squeezed_thermal(0.3, 0.2, 0.1)
    s2 = states.twb(0.5)
    f1 = fock.two_mode_squeezed_thermal(35, 0.3, 0.2, 0.1)
    f2 = fock.twb(35, 0.5)
    assert abs(fidelity.fidelity_2m(s1, s2) - fock.uhlmann_fidelity(f1, f2)) < 1e-4


def test_fidelity_2m_factorizes_on_products():
    a = states.coherent([0.4 + 0.2j, -0.3j])
    b = states.coherent([0.1 - 0.1j, 0.2 + 0.5j])
    got = fidelity.fidelity_2m(a, b)
    f1 = fidelity.fidelity_1m(a.reduced([0]), b.reduced([0]))
    f2 = fidelity.fidelity_1m(a.reduced([1]), b.reduced([1]))
    assert abs(got - f1 * f2) < 1e-9
    # also against a mixed product pair
    a = core.GaussianState(np.diag([0.9, 0.9, 0.6, 0.6]), [0.3, 0.0, -0.2, 0.4])
    b = core.GaussianState(np.diag([0.7, 0.7, 1.4, 1.4]), [0.0, 0.1, 0.0, 0.0])
    got = fidelity.fidelity_2m(a, b)
    f1 = fidelity.fidelity_1m(a.reduced([0]), b.reduced([0]))
    f2 = fidelity.fidelity_1m(a.reduced([1]), b.reduced([1]))
    assert abs(got - f1 * f2) < 1e-9


def test_fidelity_symmetry(rng):
    for _ in range(10):
        s1, s2 = random_state(1, rng), random_state(1, rng)
        assert abs(fidelity.fidelity_1m(s1, s2) - fidelity.fidelity_1m(s2, s1)) < 1e-12
        t1, t2 = random_state(2, rng), random_state(2, rng)
        assert abs(fidelity.fidelity_2m(t1, t2) - fidelity.fidelity_2m(t2, t1)) < 1e-12


def test_fidelity_unitary_invariance(rng):
    for _ in range(5):
        s1, s2 = random_state(2, rng), random_state(2, rng)
        base = fidelity.fidelity_2m(s1, s2)
        f = random_symplectic(2, rng)
        shift = rng.normal(size=4)
        u1 = core.GaussianState(f @ s1.cov @ f.T, f @ s1.mean + shift)
        u2 = core.GaussianState(f @ s2.cov @ f.T, f @ s2.mean + shift)
        assert abs(fidelity.fidelity_2m(u1, u2) - base) < 1e-9


def test_fidelity_bounds_and_equality(rng):
    for _ in range(20):
        s1, s2 = random_state(2, rng), random_state(2, rng)
        value = fidelity.fidelity_2m(s1, s2)
        assert 0.0 < value <= 1.0 + 1e-12
        assert value < 1.0 - 1e-6  # distinct random states


def test_pure_state_reduction_to_overlap(rng):
    for _ in range(10):
        s1 = random_state(2, rng, pure=True)
        s2 = random_state(2, rng, pure=True)
        assert abs(fidelity.fidelity_2m(s1, s2) - fidelity.overlap(s1, s2)) < 1e-9


def test_dimension_mismatch_errors():
    with pytest.raises(ValueError):
        fidelity.overlap(states.vacuum(1), states.vacuum(2))
    with pytest.raises(ValueError):
        fidelity.fidelity_1m(states.vacuum(2), states.vacuum(2))
    with pytest.raises(ValueError):
        fidelity.fidelity_2m(states.vacuum(1), states.vacuum(1))
