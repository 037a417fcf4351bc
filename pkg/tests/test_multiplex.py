import numpy as np
import pytest

from debranges import (
    build_frame_system,
    decode_f,
    decode_g,
    encode,
    orthogonality_residual_E,
    orthogonality_residual_F,
    preset_pair,
    reconstruct_in_E,
    reconstruct_in_F,
    simulate_channel,
)

from conftest import random_combination


def _system(pair="pw", n=100, alpha=0.0):
    e, f = preset_pair(pair)
    return (e, f), build_frame_system(e, f, alpha, -n, n)


def test_toy_stream_closed_form(rng):
    # equal exponentials: lambda_n = n/2 and the stream collapses to
    # e^{-i pi n/2} (f(lambda_n) + (-1)^n g(lambda_n))
    (e, f), system = _system("pw", 20)
    cf = random_combination(rng, e, 2)
    cg = random_combination(rng, f, 2)
    lam = system.lambdas.astype(complex)
    stream = encode(system, cf(lam), cg(lam))
    n = np.arange(-20, 21)
    closed = np.exp(-1j * np.pi * n / 2) * (cf(lam) + (-1.0) ** n * cg(lam))
    np.testing.assert_allclose(stream.values, closed, atol=1e-12)


@pytest.mark.parametrize("pair", ["pw", "poly"])
def test_decode_identities_exact(pair, rng):
    # decoding error against the in-space reconstruction equals the other
    # channel's orthogonality residual, identically at any finite window
    (e, f), system = _system(pair, 80, alpha=0.35)
    cf = random_combination(rng, e, 2)
    cg = random_combination(rng, f, 2)
    lam = system.lambdas.astype(complex)
    sf, sg = cf(lam), cg(lam)
    stream = encode(system, sf, sg)
    zs = np.linspace(-2, 2, 33)
    lhs_f = decode_f(stream, zs) - reconstruct_in_E(system, sf, zs)
    rhs_f = orthogonality_residual_F(system, sg, zs)
    np.testing.assert_allclose(lhs_f, rhs_f, atol=1e-12)
    lhs_g = decode_g(stream, zs) - reconstruct_in_F(system, sg, zs)
    rhs_g = orthogonality_residual_E(system, sf, zs)
    np.testing.assert_allclose(lhs_g, rhs_g, atol=1e-12)


def test_single_channel_decodes_as_reconstruction(rng):
    (e, f), system = _system("poly", 60)
    cf = random_combination(rng, e, 2)
    lam = system.lambdas.astype(complex)
    sf = cf(lam)
    stream = encode(system, sf, np.zeros(len(system)))
    zs = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(
        decode_f(stream, zs), reconstruct_in_E(system, sf, zs), atol=1e-14
    )


def test_channel_noiseless_is_identity(rng):
    (e, f), system = _system("pw", 30)
    cf = random_combination(rng, e, 2)
    cg = random_combination(rng, f, 2)
    lam = system.lambdas.astype(complex)
    stream = encode(system, cf(lam), cg(lam))
    out = simulate_channel(stream, 0.0, 0.0, seed=3)
    np.testing.assert_array_equal(out.values, stream.values)


def test_channel_deterministic_per_seed(rng):
    (e, f), system = _system("pw", 30)
    cf = random_combination(rng, e, 2)
    lam = system.lambdas.astype(complex)
    stream = encode(system, cf(lam), np.zeros(len(system)))
    a = simulate_channel(stream, 0.1, 0.2, seed=11)
    b = simulate_channel(stream, 0.1, 0.2, seed=11)
    c = simulate_channel(stream, 0.1, 0.2, seed=12)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_channel_drop_all_and_noise_scale(rng):
    (e, f), system = _system("pw", 30)
    cf = random_combination(rng, e, 2)
    lam = system.lambdas.astype(complex)
    stream = encode(system, cf(lam), np.zeros(len(system)))
    dead = simulate_channel(stream, 0.0, 1.0, seed=5)
    assert np.all(dead.values == 0)
    noisy = simulate_channel(stream, 1e-3, 0.0, seed=5)
    dev = np.abs(noisy.values - stream.values)
    assert 0 < dev.max() < 1e-2


def test_channel_validation(rng):
    (e, f), system = _system("pw", 5)
    cf = random_combination(rng, e, 2)
    lam = system.lambdas.astype(complex)
    stream = encode(system, cf(lam), np.zeros(len(system)))
    with pytest.raises(ValueError):
        simulate_channel(stream, -1.0, 0.0, seed=0)
    with pytest.raises(ValueError):
        simulate_channel(stream, 0.0, 1.5, seed=0)


def test_encode_length_validation(rng):
    (e, f), system = _system("pw", 5)
    with pytest.raises(ValueError):
        encode(system, np.zeros(3), np.zeros(len(system)))
