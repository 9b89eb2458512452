import math

import numpy as np
import pytest
from hypothesis import given, settings

from hyperwalk.operators import (
    SIGMA_X,
    OrthoPair,
    SU2Params,
    WalkKind,
    WalkVariant,
    apply_coin,
    coin_matrix,
    coined_line_step,
    evolve,
    hv_pair,
    jplate_matrix,
    jplate_tilde_matrix,
    pair_from_params,
    pair_matrix,
    parse_plate,
    parse_variant,
    qplate_pair,
    shift_sigma,
    shift_sigma_modified,
    shift_x,
    shift_x_inverse,
    shift_y,
    shift_y_modified,
    step,
)
from hyperwalk.state import InitialStateParams, WalkState, make_initial_state, norm_squared, probability_distribution

from conftest import max_diff, ortho_pairs, random_params, random_state, su2_params, walk_states

R2 = 1 / math.sqrt(2)
QPLATE_PARAMS = SU2Params(0, -math.pi / 2, math.pi / 4)


def single(coin, x=0, m=0, amp=1.0):
    return WalkState({(coin, x, m): complex(amp)})


def unitary_error(u):
    return np.max(np.abs(u.conj().T @ u - np.eye(2)))


# --- matrices -------------------------------------------------------------

def test_coin_identity():
    np.testing.assert_allclose(coin_matrix(SU2Params(0, 0, 0)), np.eye(2), atol=1e-15)


def test_coin_qplate_params():
    expected = R2 * np.array([[1, -1j], [-1j, 1]])
    np.testing.assert_allclose(coin_matrix(QPLATE_PARAMS), expected, atol=1e-15)


def test_coin_quarter_turn():
    expected = R2 * np.array([[1j, 1j], [1j, -1j]])
    np.testing.assert_allclose(coin_matrix(SU2Params(math.pi / 2, math.pi / 2, math.pi / 4)), expected, atol=1e-15)


@given(su2_params)
def test_coin_is_special_unitary(p):
    c = coin_matrix(p)
    assert unitary_error(c) < 1e-12
    assert abs(np.linalg.det(c) - 1) < 1e-12


def test_pair_from_params_examples():
    pair = pair_from_params(SU2Params(0, 0, 0))
    assert pair.u1 == (1, 0) and pair.u2 == (0, 1)
    pair = pair_from_params(QPLATE_PARAMS)
    np.testing.assert_allclose(pair.u1, [R2, -1j * R2], atol=1e-15)
    np.testing.assert_allclose(pair.u2, [-1j * R2, R2], atol=1e-15)
    # second column is |L> times exp(-i pi/2)
    np.testing.assert_allclose(pair.u2, -1j * np.array(qplate_pair().u2), atol=1e-15)


@given(su2_params)
def test_pair_from_params_columns(p):
    pair = pair_from_params(p)
    np.testing.assert_array_equal(pair_matrix(pair), coin_matrix(p))


def test_qplate_pair():
    pair = qplate_pair()
    assert pair.u1 == (R2, -1j * R2)
    assert pair.u2 == (R2, 1j * R2)
    assert abs(np.vdot(pair.u1, pair.u2)) < 1e-16


def test_orthopair_rejects_bad_vectors():
    with pytest.raises(ValueError):
        OrthoPair((1, 0), (1, 0))
    with pytest.raises(ValueError):
        OrthoPair((1, 1), (1, -1))


def test_jplate_examples():
    np.testing.assert_allclose(jplate_matrix(0, hv_pair()), SIGMA_X, atol=1e-15)
    r = np.array(qplate_pair().u1)
    l = np.array(qplate_pair().u2)
    expected = np.outer(l, r.conj()) + np.outer(r, l.conj())
    np.testing.assert_allclose(jplate_matrix(0, qplate_pair()), expected, atol=1e-15)


def test_jplate_tilde_examples(rng):
    for _ in range(5):
        pair = pair_from_params(random_params(rng))
        np.testing.assert_allclose(jplate_tilde_matrix(0, pair), np.eye(2), atol=1e-14)
    np.testing.assert_allclose(jplate_tilde_matrix(math.pi / 2, hv_pair()), np.diag([-1j, 1j]), atol=1e-15)


@given(ortho_pairs(), su2_params)
def test_plates_unitary(pair, p):
    phi = p.theta
    assert unitary_error(jplate_matrix(phi, pair)) < 1e-12
    assert unitary_error(jplate_tilde_matrix(phi, pair)) < 1e-12


def test_jplate_swaps_pair_with_oam_phase():
    pair = qplate_pair()
    phi = 0.37
    out = jplate_matrix(phi, pair) @ np.array(pair.u1)
    np.testing.assert_allclose(out, np.exp(-1j * phi) * np.array(pair.u2), atol=1e-15)


# --- coin and shifts ------------------------------------------------------

def test_apply_coin_identity(rng):
    s = random_state(rng)
    assert max_diff(apply_coin(s, np.eye(2)), s) == 0


@given(walk_states(), su2_params)
def test_apply_coin_roundtrip(s, p):
    c = coin_matrix(p)
    assert max_diff(apply_coin(apply_coin(s, c), c.conj().T), s) < 1e-14


def test_apply_coin_bit_flip():
    assert apply_coin(single(0), SIGMA_X).amplitudes == {(1, 0, 0): 1}


def test_shift_x_examples():
    assert shift_x(single(0)).amplitudes == {(0, -1, 0): 1}
    assert shift_x(single(1, 3, 2)).amplitudes == {(1, 4, 2): 1}
    s = make_initial_state(InitialStateParams(math.pi / 4, 0))
    out = shift_x(s)
    assert set(out.amplitudes) == {(0, -1, 0), (1, 1, 0)}
    assert out.get(0, -1, 0) == pytest.approx(R2) and out.get(1, 1, 0) == pytest.approx(R2)


@given(walk_states())
def test_shift_x_inverse(s):
    assert shift_x_inverse(shift_x(s)).amplitudes == s.amplitudes
    assert shift_x(shift_x_inverse(s)).amplitudes == s.amplitudes


def test_shift_y_examples():
    assert shift_y(single(0)).amplitudes == {(0, 0, -1): 1}
    assert shift_y(single(1)).amplitudes == {(1, 0, 1): 1}


@given(walk_states())
def test_shifts_preserve_norm(s):
    for op in (shift_x, shift_y, shift_y_modified):
        assert abs(norm_squared(op(s)) - norm_squared(s)) < 1e-14


def test_shift_y_modified_examples():
    assert shift_y_modified(single(0)).amplitudes == {(1, 0, -1): 1}
    assert shift_y_modified(single(1)).amplitudes == {(0, 0, 1): 1}


@given(walk_states())
def test_shift_y_modified_is_flip_after_shift(s):
    assert max_diff(shift_y_modified(s), apply_coin(shift_y(s), SIGMA_X)) < 1e-14


def test_shift_sigma_examples():
    assert max_diff(shift_sigma(single(0), hv_pair()), single(0, 0, -1)) < 1e-15
    r = WalkState({(0, 0, 0): R2, (1, 0, 0): -1j * R2})
    expected = WalkState({(0, 0, -1): R2, (1, 0, -1): -1j * R2})
    assert max_diff(shift_sigma(r, qplate_pair()), expected) < 1e-15


@settings(max_examples=50)
@given(walk_states(), su2_params)
def test_shift_sigma_is_conjugated_shift_y(s, p):
    c = coin_matrix(p)
    composed = apply_coin(shift_y(apply_coin(s, c.conj().T)), c)
    assert max_diff(shift_sigma(s, pair_from_params(p)), composed) < 1e-13


@settings(max_examples=50)
@given(walk_states(), su2_params)
def test_shift_sigma_modified_is_conjugated_modified_shift(s, p):
    c = coin_matrix(p)
    composed = apply_coin(shift_y_modified(apply_coin(s, c.conj().T)), c)
    assert max_diff(shift_sigma_modified(s, pair_from_params(p)), composed) < 1e-13


def test_shift_sigma_modified_examples():
    r = WalkState({(0, 0, 0): R2, (1, 0, 0): -1j * R2})
    to_l = WalkState({(0, 0, -1): R2, (1, 0, -1): 1j * R2})
    assert max_diff(shift_sigma_modified(r, qplate_pair()), to_l) < 1e-15
    assert max_diff(shift_sigma_modified(single(0), hv_pair()), single(1, 0, -1)) < 1e-15
    twice = shift_sigma_modified(shift_sigma_modified(r, qplate_pair()), qplate_pair())
    assert max_diff(twice, r) < 1e-15


# --- steps ----------------------------------------------------------------

def test_step_four_corners():
    # hand expansion: <R|psi> = (1+i)/2 goes to |L> at m-1, <L|psi> = (1-i)/2 to |R> at m+1,
    # then H moves to x-1 and V to x+1
    s = step(make_initial_state(InitialStateParams(math.pi / 4, 0)), WalkVariant("modified-pauli", qplate_pair()))
    k = 1 / (2 * math.sqrt(2))
    expected = WalkState(
        {
            (0, -1, -1): (1 + 1j) * k,
            (1, 1, -1): (-1 + 1j) * k,
            (0, -1, 1): (1 - 1j) * k,
            (1, 1, 1): (-1 - 1j) * k,
        },
        1,
    )
    assert s.steps == 1
    assert max_diff(s, expected) < 1e-15


def test_step_hv_returns_after_two():
    v = WalkVariant("modified-pauli", hv_pair())
    s1 = step(single(0), v)
    assert max_diff(s1, single(1, 1, -1)) < 1e-15
    s2 = step(s1, v)
    assert max_diff(s2, single(0)) < 1e-15
    assert s2.steps == 2


@pytest.mark.parametrize("seed", range(5))
def test_alternate_equals_pauli(seed):
    rng = np.random.default_rng(seed)
    p = random_params(rng)
    s = random_state(rng, spread=2)
    alt = evolve(s, WalkVariant(WalkKind.ALTERNATE, p), 5)
    pauli = evolve(s, WalkVariant(WalkKind.PAULI, p), 5)
    assert max_diff(alt, pauli) < 1e-12
    mod_alt = evolve(s, WalkVariant(WalkKind.MODIFIED_ALTERNATE, p), 5)
    mod_pauli = evolve(s, WalkVariant(WalkKind.MODIFIED_PAULI, p), 5)
    assert max_diff(mod_alt, mod_pauli) < 1e-12


def test_alternate_with_pair_plate(rng):
    pair = parse_plate("elliptic")
    s = random_state(rng, spread=2)
    alt = evolve(s, WalkVariant(WalkKind.ALTERNATE, pair), 4)
    pauli = evolve(s, WalkVariant(WalkKind.PAULI, pair), 4)
    assert max_diff(alt, pauli) < 1e-12


def test_evolve_zero_steps(rng):
    s = random_state(rng)
    assert evolve(s, WalkVariant("pauli", qplate_pair()), 0) is s
    with pytest.raises(ValueError):
        evolve(s, WalkVariant("pauli", qplate_pair()), -1)


@pytest.mark.parametrize("kind", list(WalkKind))
def test_norm_conserved(kind, rng):
    s = make_initial_state(InitialStateParams(0.4, -0.9))
    out = evolve(s, WalkVariant(kind, random_params(rng)), 30)
    assert abs(norm_squared(out) - 1) < 1e-12


def test_qplate_preset_vs_coin_columns_differ_by_oam_gauge():
    """Coin columns carry u2 = -i|L>; that phase becomes i**m on the OAM label."""
    init = make_initial_state(InitialStateParams(math.pi / 4, 0))
    n = 15
    preset = evolve(init, WalkVariant("modified-pauli", qplate_pair()), n)
    columns = evolve(init, WalkVariant("modified-pauli", QPLATE_PARAMS), n)
    assert max_diff(preset, columns) > 0.1
    gauged = WalkState({(c, x, m): a * 1j ** (m % 4) for (c, x, m), a in preset.amplitudes.items()}, n)
    assert max_diff(gauged, columns) < 1e-12
    d1, d2 = probability_distribution(preset), probability_distribution(columns)
    assert max(abs(d1[k] - d2.get(k, 0)) for k in d1) < 1e-14


def test_coined_line_step():
    s = coined_line_step(single(0), coin_matrix(SU2Params(0, 0, math.pi / 4)))
    assert s.steps == 1
    assert probability_distribution(s) == pytest.approx({(-1, 0): 0.5, (1, 0): 0.5})


# --- parsing --------------------------------------------------------------

def test_parse_plate_forms():
    assert parse_plate("q") == qplate_pair()
    assert parse_plate('{"xi": 0, "zeta": -1.5, "theta": 0.7}') == SU2Params(0, -1.5, 0.7)
    pair = parse_plate({"u1": [0.7071067812, 0, -0.7071067812, 0], "u2": [0.7071067812, 0, 0.7071067812, 0]})
    np.testing.assert_allclose(pair.u1, [R2, -R2], atol=1e-15)
    np.testing.assert_allclose(pair.u2, [R2, R2], atol=1e-15)


@pytest.mark.parametrize("bad", ["nope", "{}", '{"u1": [1, 0, 0, 0], "u2": [1, 0, 0, 0]}', '{"xi": 1}', "[1, 2]"])
def test_parse_plate_rejects(bad):
    with pytest.raises(ValueError):
        parse_plate(bad)


def test_parse_variant():
    v = parse_variant('{"kind": "alternate", "plate": {"xi": 0, "zeta": 0, "theta": 0.3}}')
    assert v.kind is WalkKind.ALTERNATE
    assert v.plate == SU2Params(0, 0, 0.3)
    with pytest.raises(ValueError):
        parse_variant({"kind": "grover"})
