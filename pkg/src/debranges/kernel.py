"""Reproducing kernels and finite kernel combinations.

For a Hermite-Biehler function E, the kernel of the space it generates is

    K(w, z) = [conj(E(w))*E(z) - E(conj w)*Estar(z)] / (2j*pi*(conj(w) - z)),

with the removable singularity at z = conj(w) filled by the analytic limit
(see the backend modules).  On the real diagonal the closed form

    K(x, x) = phi'(x) * |E(x)|^2 / pi

holds, which is what kernel_diag computes; the two routes agreeing is one of
the package's standing invariants.

Gram orientation: gram(E, pts)[j][k] = kernel(E, pts[k], pts[j]) so that for
f = sum_j c_j K(pts[j], .) the squared norm is the quadratic form c* G c.
"""

import dataclasses

import numpy as np

from .backend import as_complex_array, as_float_array, core
from .errors import DuplicatePointError

__all__ = [
    "EPS_DIAG",
    "kernel",
    "kernel_diag",
    "kernel_matrix",
    "gram",
    "KernelCombination",
]

# Separation below which kernel evaluation switches to the analytic limit.
EPS_DIAG = 1e-6

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)


def kernel(e, w, z):
    """K(w, z) for scalar center w and scalar or 1-D array z."""
    out = core.kernel_matrix(
        e.exp_coefficient, e.leading_scale, np.asarray(e.roots, dtype=np.complex128),
        as_complex_array(w), as_complex_array(z), EPS_DIAG,
    )[0]
    return complex(out[0]) if isinstance(z, _SCALARS) else out


def kernel_matrix(e, w, z):
    """Matrix K[j, i] = kernel(e, w[j], z[i]) for 1-D arrays w and z."""
    return core.kernel_matrix(
        e.exp_coefficient, e.leading_scale, np.asarray(e.roots, dtype=np.complex128),
        as_complex_array(w), as_complex_array(z), EPS_DIAG,
    )


def kernel_diag(e, x):
    """K(x, x) on the real axis via the phase identity phi'(x)*|E(x)|^2/pi."""
    xs = as_float_array(x)
    _, phip = e.phase_arrays(xs)
    abs2 = np.abs(e(xs.astype(np.complex128))) ** 2
    out = phip * abs2 / np.pi
    return float(out[0]) if isinstance(x, _SCALARS) else out


def gram(e, points):
    """Gram matrix G[j][k] = kernel(e, points[k], points[j]); Hermitian PSD.

    Coincident points would make the matrix singular by construction, so they
    are rejected with the offending index pair.
    """
    pts = as_complex_array(points)
    if len(pts) > 1:
        sep = np.abs(pts[:, None] - pts[None, :])
        sep[np.diag_indices_from(sep)] = np.inf
        j, k = np.unravel_index(np.argmin(sep), sep.shape)
        if sep[j, k] == 0.0:
            raise DuplicatePointError(
                f"points {min(j, k)} and {max(j, k)} coincide ({pts[j]})",
                indices=(int(min(j, k)), int(max(j, k))),
            )
    return kernel_matrix(e, pts, pts).T.copy()


@dataclasses.dataclass(frozen=True)
class KernelCombination:
    """Finite combination f = sum_j coefficients[j] * K(centers[j], .).

    These are the concrete members of the space generated by
    ``space_generator`` that the package manipulates; evaluation goes through
    the backend's fused kernel sum.
    """

    space_generator: object
    centers: tuple
    coefficients: tuple

    def __post_init__(self):
        centers = tuple(complex(c) for c in self.centers)
        coeffs = tuple(complex(c) for c in self.coefficients)
        if len(centers) != len(coeffs):
            raise ValueError(
                f"{len(centers)} centers but {len(coeffs)} coefficients"
            )
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, z):
        """f(z) for scalar or 1-D array z."""
        e = self.space_generator
        out = core.kernel_sum(
            e.exp_coefficient, e.leading_scale,
            np.asarray(e.roots, dtype=np.complex128),
            np.asarray(self.centers, dtype=np.complex128),
            np.asarray(self.coefficients, dtype=np.complex128),
            as_complex_array(z), EPS_DIAG,
        )
        return complex(out[0]) if isinstance(z, _SCALARS) else out

    def norm_squared(self):
        """||f||^2 = c* G c; the imaginary residual must stay below 1e-10."""
        if not self.centers:
            return 0.0
        g = gram(self.space_generator, self.centers)
        c = np.asarray(self.coefficients, dtype=np.complex128)
        value = complex(np.conj(c) @ g @ c)
        if abs(value.imag) > 1e-10:
            raise ValueError(
                f"norm_squared produced imaginary residual {value.imag:.3e} > 1e-10; "
                "Gram assembly is inconsistent"
            )
        return value.real
