"""Two-channel multiplexed sampling on a shared node set.

One scalar per node carries both channels:

    m_n = f(lambda_n) * F(lambda_n) + g(lambda_n) * Estar(lambda_n).

Decoding runs the Parseval-frame expansion with the mixed stream in place of
the pure samples; the cross-channel contribution is exactly the finite-window
orthogonality sum, so on any window

    decode_f(encode(f, g)) = reconstruct_in_E(f samples)
                             + orthogonality_residual_F(g samples)

holds algebraically (and the mirror identity for decode_g), with the residual
terms vanishing as the window grows.
"""

import dataclasses

import numpy as np

from .frames import _check_samples, _kernel_sum

__all__ = ["MultiplexedStream", "encode", "decode_f", "decode_g", "simulate_channel"]


@dataclasses.dataclass(frozen=True, eq=False)
class MultiplexedStream:
    """One mixed sample per node of the underlying FrameSystem."""

    system: object
    values: np.ndarray

    def __len__(self):
        return self.values.shape[0]


def encode(system, samples_f, samples_g):
    """Mix two channels of node samples into one stream."""
    samples_f = _check_samples(len(system), samples_f, "encode samples_f")
    samples_g = _check_samples(len(system), samples_g, "encode samples_g")
    values = samples_f * system.weights_F + samples_g * system.weights_Estar
    return MultiplexedStream(system=system, values=values)


def decode_f(stream, z):
    """First channel: sum_n m_n conj(F(lambda_n)) K_E(lambda_n, z) / diag."""
    system = stream.system
    coeffs = stream.values * np.conj(system.weights_F) / system.diag_EF
    return _kernel_sum(system.E, system.lambdas, coeffs, z)


def decode_g(stream, z):
    """Second channel: sum_n m_n E(lambda_n) K_F(lambda_n, z) / diag."""
    system = stream.system
    coeffs = stream.values * np.conj(system.weights_Estar) / system.diag_EF
    return _kernel_sum(system.F, system.lambdas, coeffs, z)


def simulate_channel(stream, noise_sigma, drop_probability, seed):
    """Additive complex Gaussian noise plus independent erasures.

    noise_sigma is the per-component (real and imaginary) standard deviation;
    dropped entries are zeroed.  A single generator seeded with ``seed`` draws
    first the (n, 2) normals, then the n erasure uniforms, so identical
    arguments give identical streams.
    """
    if noise_sigma < 0.0:
        raise ValueError(f"noise_sigma must be >= 0, got {noise_sigma!r}")
    if not 0.0 <= drop_probability <= 1.0:
        raise ValueError(f"drop_probability must lie in [0, 1], got {drop_probability!r}")
    rng = np.random.default_rng(seed)
    n = len(stream)
    normals = rng.standard_normal((n, 2))
    keep = rng.random(n) >= drop_probability
    values = stream.values + noise_sigma * (normals[:, 0] + 1j * normals[:, 1])
    values = np.where(keep, values, 0.0 + 0.0j)
    return MultiplexedStream(system=stream.system, values=values)
