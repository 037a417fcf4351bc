import numpy as np
import pytest

from debranges import HermiteBiehlerFunction, KernelCombination


@pytest.fixture
def rng():
    return np.random.default_rng(0xDEB)


def random_hb(rng, n_roots=3, a_lo=0.2, a_hi=3.0):
    """A generator with random exponential rate and lower-half-plane roots."""
    a = float(rng.uniform(a_lo, a_hi))
    roots = tuple(
        complex(rng.uniform(-3, 3), -rng.uniform(0.1, 2.0)) for _ in range(n_roots)
    )
    scale = complex(rng.uniform(0.5, 2.0), rng.uniform(-1, 1))
    return HermiteBiehlerFunction(a, roots, scale)


def random_combination(rng, generator, n_centers, re_max=2.0, im_max=0.5):
    """Kernel combination with well-separated random centers."""
    while True:
        centers = rng.uniform(-re_max, re_max, n_centers) + 1j * rng.uniform(
            -im_max, im_max, n_centers
        )
        sep = np.abs(centers[:, None] - centers[None, :])
        sep[np.diag_indices_from(sep)] = np.inf
        if float(sep.min()) > 0.1:
            break
    coeffs = rng.standard_normal(n_centers) + 1j * rng.standard_normal(n_centers)
    return KernelCombination(generator, tuple(centers), tuple(coeffs))
