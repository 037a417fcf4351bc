"""Pure-numpy implementation of the evaluation core.

Mirrors the API of the compiled module ``debranges._native`` exactly; one of
the two is selected at import time by ``debranges.backend``.  All functions
take C-contiguous float64/complex128 arrays (callers coerce) and never mutate
their inputs.

Conventions, shared with the compiled core:

* an entire function is given by ``scale * exp(-1j*a*z) * prod(z - roots)``;
* ``star`` denotes ``conj(f(conj(z)))``;
* the reproducing kernel of the space generated by E is
  ``[conj(E(w))*E(z) - E(conj(w))*Estar(z)] / (2j*pi*(conj(w) - z))``
  with the removable singularity at ``z == conj(w)`` filled by the analytic
  limit ``[conj(E(w))*E'(m) - E(conj(w))*Estar'(m)] / (-2j*pi)`` evaluated at
  the midpoint ``m = (conj(w) + z)/2`` whenever ``|conj(w) - z| <= eps_diag``.
"""

import numpy as np

TWO_PI_I = 2j * np.pi


def hb_eval(a, scale, roots, z):
    """Evaluate scale * exp(-1j*a*z) * prod_k (z - roots[k]) elementwise."""
    out = np.full(z.shape, scale, dtype=np.complex128)
    if a != 0.0:
        out *= np.exp((-1j * a) * z)
    for w in roots:
        out *= z - w
    return out


def hb_eval_derivative(a, scale, roots, z):
    """Derivative of hb_eval with respect to z, valid at roots as well.

    Uses the single-pass product-rule recurrence: after absorbing factor f,
    (P', P) -> (P'*f + P, P*f).  No division, so multiple roots are fine.
    """
    p = np.ones(z.shape, dtype=np.complex128)
    s = np.zeros(z.shape, dtype=np.complex128)
    for w in roots:
        f = z - w
        s = s * f + p
        p = p * f
    pre = np.full(z.shape, scale, dtype=np.complex128)
    if a != 0.0:
        pre *= np.exp((-1j * a) * z)
    return pre * (s + (-1j * a) * p)


def phase_eval(a, arg_scale, roots, x):
    """Phase function and its derivative on the real axis.

    phi(x) = a*x - arg_scale + sum_k -atan2(|Im w_k|, x - Re w_k), each arctan
    term valued in (0, pi) so no unwrapping step is ever needed; phi' > 0.
    Returns (phi, phi_prime) as float64 arrays.
    """
    phi = a * x - arg_scale
    phip = np.full(x.shape, a, dtype=np.float64)
    for w in roots:
        b = -w.imag
        dx = x - w.real
        phi = phi - np.arctan2(b, dx)
        phip = phip + b / (dx * dx + b * b)
    return phi, phip


def _kernel_block(a, scale, roots, w, z, eps_diag, ez, esz, A, B):
    """Kernel matrix block given precomputed per-center and per-point values."""
    wbar = np.conj(w)
    denom = TWO_PI_I * (wbar[:, None] - z[None, :])
    num = A[:, None] * ez[None, :] - B[:, None] * esz[None, :]
    near = np.abs(wbar[:, None] - z[None, :]) <= eps_diag
    out = np.empty(denom.shape, dtype=np.complex128)
    np.divide(num, denom, out=out, where=~near)
    if near.any():
        jj, ii = np.nonzero(near)
        m = (wbar[jj] + z[ii]) / 2.0
        dm = hb_eval_derivative(a, scale, roots, m)
        dsm = np.conj(hb_eval_derivative(a, scale, roots, np.conj(m)))
        out[jj, ii] = (A[jj] * dm - B[jj] * dsm) / (-TWO_PI_I)
    return out


def kernel_matrix(a, scale, roots, w, z, eps_diag):
    """Matrix K[j, i] = kernel with center w[j] evaluated at z[i]."""
    ew = hb_eval(a, scale, roots, w)
    ewbar = hb_eval(a, scale, roots, np.conj(w))
    ez = hb_eval(a, scale, roots, z)
    esz = np.conj(hb_eval(a, scale, roots, np.conj(z)))
    return _kernel_block(a, scale, roots, w, z, eps_diag, ez, esz, np.conj(ew), ewbar)


def kernel_sum(a, scale, roots, centers, coeffs, z, eps_diag):
    """Evaluate sum_j coeffs[j] * kernel(center=centers[j], z) on the grid z.

    Blocked over centers so windows of thousands of nodes do not materialize
    a full matrix.
    """
    out = np.zeros(z.shape, dtype=np.complex128)
    if centers.shape[0] == 0:
        return out
    ez = hb_eval(a, scale, roots, z)
    esz = np.conj(hb_eval(a, scale, roots, np.conj(z)))
    block = 512
    for start in range(0, centers.shape[0], block):
        cblk = centers[start : start + block]
        ew = hb_eval(a, scale, roots, cblk)
        ewbar = hb_eval(a, scale, roots, np.conj(cblk))
        mat = _kernel_block(
            a, scale, roots, cblk, z, eps_diag, ez, esz, np.conj(ew), ewbar
        )
        out += coeffs[start : start + block] @ mat
    return out
