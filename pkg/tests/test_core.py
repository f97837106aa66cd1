from __future__ import annotations

import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nematic_relief.core import (
    E_Z,
    DistortionState,
    ElasticConstants,
    InconsistentGradientError,
    as_director,
    decompose_gradient,
    d_tensor,
    ericksen_satisfied,
    nematic_equal,
    oseen_frank_energy,
    planar_state_from_angle,
    polar_state_from_angle,
    q_identity_residual,
)

X, Y, Z = sp.symbols("x y z", real=True)


def symbolic_gradient(expr, point):
    """Exact ``n`` and ``grad n`` of a sympy director field at ``point``."""
    n = sp.Matrix(expr)
    J = n.jacobian([X, Y, Z])
    sub = dict(zip((X, Y, Z), point))
    return np.array(n.subs(sub), dtype=float).ravel(), np.array(J.subs(sub), dtype=float)


def random_consistent_gradient(rng):
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    M = rng.normal(size=(3, 3))
    return n, (np.eye(3) - np.outer(n, n)) @ M


unit_floats = st.floats(-3.0, 3.0, allow_nan=False)


# director helpers ---------------------------------------------------------------


def test_as_director_embeds_planar_vectors():
    n = as_director([0.6, 0.8])
    assert n.tolist() == [0.6, 0.8, 0.0]


def test_as_director_rejects_non_unit():
    with pytest.raises(InconsistentGradientError):
        as_director([1.0, 1.0, 0.0])


def test_nematic_equality_ignores_sign():
    n = np.array([0.0, 0.6, 0.8])
    assert nematic_equal(n, -n)
    assert not nematic_equal(n, np.array([0.6, 0.0, 0.8]))


# decomposition examples -----------------------------------------------------------


def test_constant_field_has_no_distortion():
    st_ = decompose_gradient(E_Z, np.zeros((3, 3)))
    assert (st_.S, st_.T, st_.b1, st_.b2, st_.q) == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_pure_bend_at_unit_radius():
    r = sp.sqrt(X**2 + Y**2)
    n, G = symbolic_gradient([-Y / r, X / r, 0], (1, 0, 0))
    st_ = decompose_gradient(n, G)
    assert st_.S == pytest.approx(0.0, abs=1e-14)
    assert st_.T == pytest.approx(0.0, abs=1e-14)
    assert st_.q == pytest.approx(0.0, abs=1e-14)
    assert st_.B == pytest.approx(1.0, abs=1e-14)
    # the bend vector points along e_r
    assert np.allclose(st_.bend, [1.0, 0.0, 0.0], atol=1e-14)


def test_planar_splay_at_radius_two():
    r = sp.sqrt(X**2 + Y**2)
    n, G = symbolic_gradient([X / r, Y / r, 0], (2, 0, 0))
    st_ = decompose_gradient(n, G)
    assert st_.S == pytest.approx(0.5, abs=1e-14)
    assert st_.q == pytest.approx(0.25, abs=1e-14)
    assert st_.T == pytest.approx(0.0, abs=1e-14)
    assert st_.B == pytest.approx(0.0, abs=1e-14)


def test_hedgehog_is_pure_splay():
    r = sp.sqrt(X**2 + Y**2 + Z**2)
    n, G = symbolic_gradient([X / r, Y / r, Z / r], (sp.Rational(1, 2), 1, -1))
    st_ = decompose_gradient(n, G)
    R = 1.5
    assert st_.S == pytest.approx(2.0 / R, abs=1e-13)
    assert st_.q == pytest.approx(0.0, abs=1e-13)
    assert st_.B == pytest.approx(0.0, abs=1e-13)


def test_cholesteric_twist():
    k = 1.7
    n, G = symbolic_gradient([sp.cos(k * Z), sp.sin(k * Z), 0], (0, 0, sp.Rational(3, 10)))
    st_ = decompose_gradient(n, G)
    assert st_.S == pytest.approx(0.0, abs=1e-14)
    assert st_.T == pytest.approx(-k, abs=1e-13)
    assert st_.q == pytest.approx(0.5 * k, abs=1e-13)


def test_non_orthogonal_gradient_is_rejected():
    G = np.zeros((3, 3))
    G[2, 0] = 1.0  # d n_z / dx for n = e_z violates |n| = 1
    with pytest.raises(InconsistentGradientError):
        decompose_gradient(E_Z, G)


def test_non_unit_director_is_rejected():
    with pytest.raises(InconsistentGradientError):
        decompose_gradient([0.0, 0.0, 2.0], np.zeros((3, 3)))


def test_fallback_frame_uses_smallest_index_axis():
    st_ = decompose_gradient(E_Z, np.zeros((3, 3)))
    assert np.allclose(st_.frame.n1, [1.0, 0.0, 0.0])
    assert np.allclose(st_.frame.n2, [0.0, 1.0, 0.0])


# invariants ---------------------------------------------------------------------


@given(st.integers(0, 10_000))
def test_reassembly_reproduces_gradient(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    st_ = decompose_gradient(n, G)
    assert np.max(np.abs(st_.reassemble() - G)) < 1e-10


@given(st.integers(0, 10_000))
def test_frame_is_orthonormal_and_right_handed(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    fr = decompose_gradient(n, G).frame
    assert fr.orthonormality_error() < 1e-12
    assert fr.handedness_error() < 1e-12


@given(st.integers(0, 10_000))
def test_d_tensor_is_symmetric_traceless_and_annihilates_n(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    st_ = decompose_gradient(n, G)
    D = d_tensor(n, G, st_)
    assert np.max(np.abs(D - D.T)) < 1e-12
    assert abs(np.trace(D)) < 1e-12
    assert np.max(np.abs(D @ n)) < 1e-12
    assert st_.q >= 0.0
    assert np.allclose(D @ st_.frame.n1, st_.q * st_.frame.n1, atol=1e-12)


@given(st.integers(0, 10_000))
def test_identity_residual_vanishes_for_source_gradient(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    st_ = decompose_gradient(n, G)
    assert abs(q_identity_residual(G, st_)) < 1e-10


@given(st.integers(0, 10_000))
def test_canonical_bend_sign(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    st_ = decompose_gradient(n, G)
    assert st_.b1 >= 0.0


@given(st.integers(0, 10_000))
def test_nematic_flip_symmetry(seed):
    n, G = random_consistent_gradient(np.random.default_rng(seed))
    a = decompose_gradient(n, G)
    b = decompose_gradient(-n, -G)
    assert b.S == pytest.approx(-a.S, abs=1e-12)
    assert b.T == pytest.approx(a.T, abs=1e-12)
    assert b.q == pytest.approx(a.q, abs=1e-12)
    assert b.B == pytest.approx(a.B, abs=1e-12)


def test_identity_residual_detects_wrong_q():
    r = sp.sqrt(X**2 + Y**2)
    n, G = symbolic_gradient([X / r, Y / r, 0], (2, 0, 0))
    st_ = decompose_gradient(n, G)
    bad = DistortionState(st_.S, st_.T, st_.b1, st_.b2, st_.q + 1.0, st_.frame)
    expected = 2 * (st_.q + 1.0) ** 2 - 2 * st_.q**2
    assert q_identity_residual(G, bad) == pytest.approx(expected, abs=1e-12)
    assert q_identity_residual(G, st_) == pytest.approx(0.0, abs=1e-14)


# planar and polar states --------------------------------------------------------


def test_planar_state_examples():
    a = planar_state_from_angle(math.pi / 2, 1.0, 0.0)
    assert (a.S, a.T, a.q) == pytest.approx((-1.0, 0.0, 0.5), abs=1e-15)
    assert a.B == pytest.approx(0.0, abs=1e-15)
    b = planar_state_from_angle(0.7, 0.0, 0.0)
    assert np.allclose(b.characteristics(), 0.0)
    c = planar_state_from_angle(0.0, 0.0, 1.0)
    assert (c.S, c.q) == (1.0, 0.5)
    assert np.allclose(c.frame.n2, E_Z)


@given(unit_floats, unit_floats, unit_floats)
def test_planar_state_matches_general_decomposition(phi, px, py):
    st_ = planar_state_from_angle(phi, px, py)
    c, s = math.cos(phi), math.sin(phi)
    n = np.array([c, s, 0.0])
    G = np.zeros((3, 3))
    G[:2, 0] = np.array([-s, c]) * px
    G[:2, 1] = np.array([-s, c]) * py
    ref = decompose_gradient(n, G)
    assert st_.T == 0.0
    assert abs(abs(st_.S) - 2 * st_.q) < 1e-12
    assert st_.S == pytest.approx(ref.S, abs=1e-12)
    assert st_.q == pytest.approx(ref.q, abs=1e-12)
    assert st_.B == pytest.approx(ref.B, abs=1e-12)
    assert np.max(np.abs(st_.reassemble() - G)) < 1e-12
    assert st_.frame.handedness_error() < 1e-12


def test_polar_state_examples():
    a = polar_state_from_angle(0.0, 0.0, 0.0, 2.0)
    assert (a.S, a.b1) == pytest.approx((0.5, 0.0), abs=1e-15)
    b = polar_state_from_angle(math.pi / 2, 0.0, 0.0, 1.0)
    assert b.S == pytest.approx(0.0, abs=1e-15)
    assert b.b1 == pytest.approx(1.0, abs=1e-15)
    c = polar_state_from_angle(math.atan(2.0), 0.0, 0.0, 1.0)
    assert c.b1 / c.S == pytest.approx(2.0, abs=1e-14)


def test_polar_state_rejects_origin():
    with pytest.raises(ValueError):
        polar_state_from_angle(0.0, 0.0, 0.0, 0.0)


@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.2, 5), st.floats(0, 6.28))
def test_polar_state_reassembles_cartesian_gradient(alpha, ar, at, r, theta):
    st_ = polar_state_from_angle(alpha, ar, at, r, theta)
    # phi = alpha + theta; chain rule to Cartesian derivatives
    phi = alpha + theta
    phi_r, phi_t = ar, 1.0 + at
    px = math.cos(theta) * phi_r - math.sin(theta) * phi_t / r
    py = math.sin(theta) * phi_r + math.cos(theta) * phi_t / r
    G = np.zeros((3, 3))
    G[:2, 0] = np.array([-math.sin(phi), math.cos(phi)]) * px
    G[:2, 1] = np.array([-math.sin(phi), math.cos(phi)]) * py
    assert np.max(np.abs(st_.reassemble() - G)) < 1e-12
    assert st_.frame.orthonormality_error() < 1e-12
    assert st_.frame.handedness_error() < 1e-12


# energy -------------------------------------------------------------------------


def test_energy_of_constant_field():
    st_ = decompose_gradient(E_Z, np.zeros((3, 3)))
    assert oseen_frank_energy(st_, 0.0, ElasticConstants(1, 2, 3, 0.5), np.zeros((3, 3))) == (0.0, 0.0)


@pytest.mark.parametrize("K", [(1, 1, 1, 0), (2, 3, 5, 1), (0.3, 0.1, 4, 0.05)])
def test_pure_bend_energy(K):
    r = sp.sqrt(X**2 + Y**2)
    n, G = symbolic_gradient([-Y / r, X / r, 0], (1, 0, 0))
    st_ = decompose_gradient(n, G)
    wd, wm = oseen_frank_energy(st_, st_.B, ElasticConstants(*K), G)
    assert wd == pytest.approx(K[2] / 2, abs=1e-13)
    assert wm == pytest.approx(K[2] / 2, abs=1e-13)


@given(st.integers(0, 10_000))
def test_energy_forms_agree(seed):
    rng = np.random.default_rng(seed)
    n, G = random_consistent_gradient(rng)
    K = ElasticConstants(*rng.uniform(0, 3, 4))
    st_ = decompose_gradient(n, G)
    wd, wm = oseen_frank_energy(st_, st_.B, K, G)
    assert abs(wd - wm) < 1e-10 * max(1.0, abs(wd))


def test_energy_rejects_inconsistent_state():
    n, G = random_consistent_gradient(np.random.default_rng(3))
    st_ = decompose_gradient(n, G)
    with pytest.raises(ValueError):
        oseen_frank_energy(st_, st_.B + 1.0, ElasticConstants(1, 1, 1, 0), G)


def test_elastic_constants_must_be_nonnegative():
    with pytest.raises(ValueError):
        ElasticConstants(1, 1, -1, 0)


@pytest.mark.parametrize(
    "K, ok",
    [((1, 1, 1, 1), True), ((1, 1, 1, 2), False), ((2, 3, 0, 1), True), ((1, 0.5, 1, 0.6), False), ((0, 0, 0, 0), True)],
)
def test_ericksen_truth_table(K, ok):
    assert ericksen_satisfied(ElasticConstants(*K)) is ok
