# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation core.

Same API and conventions as debranges._fallback; see that module's docstring.
The hot loops here avoid the temporary arrays of the numpy version.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, exp, sin

cnp.import_array()

cdef double PI = 3.141592653589793238462643383279502884
cdef double complex IUNIT = 1j


cdef inline double complex _cis(double a, double complex z) noexcept nogil:
    # exp(-1j*a*z) = exp(a*Im z) * (cos(a*Re z) - i sin(a*Re z))
    cdef double mod = exp(a * z.imag)
    return mod * cos(a * z.real) - IUNIT * (mod * sin(a * z.real))


cdef inline double complex _eval_one(
    double a, double complex scale, double complex[::1] roots, double complex z
) noexcept nogil:
    cdef double complex acc = scale
    cdef Py_ssize_t k
    if a != 0.0:
        acc = acc * _cis(a, z)
    for k in range(roots.shape[0]):
        acc = acc * (z - roots[k])
    return acc


cdef inline double complex _deriv_one(
    double a, double complex scale, double complex[::1] roots, double complex z
) noexcept nogil:
    cdef double complex p = 1.0 + 0.0j
    cdef double complex s = 0.0 + 0.0j
    cdef double complex f
    cdef double complex pre = scale
    cdef Py_ssize_t k
    for k in range(roots.shape[0]):
        f = z - roots[k]
        s = s * f + p
        p = p * f
    if a != 0.0:
        pre = pre * _cis(a, z)
    return pre * (s - IUNIT * a * p)


def hb_eval(double a, double complex scale, double complex[::1] roots,
            double complex[::1] z):
    """Evaluate scale * exp(-1j*a*z) * prod_k (z - roots[k]) elementwise."""
    cdef Py_ssize_t i, n = z.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _eval_one(a, scale, roots, z[i])
    return out


def hb_eval_derivative(double a, double complex scale, double complex[::1] roots,
                       double complex[::1] z):
    """Derivative of hb_eval with respect to z, valid at roots as well."""
    cdef Py_ssize_t i, n = z.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _deriv_one(a, scale, roots, z[i])
    return out


def phase_eval(double a, double arg_scale, double complex[::1] roots,
               double[::1] x):
    """Phase function and its derivative on the real axis; see fallback."""
    cdef Py_ssize_t i, k, n = x.shape[0], m = roots.shape[0]
    phi_arr = np.empty(n, dtype=np.float64)
    phip_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] phi = phi_arr
    cdef double[::1] phip = phip_arr
    cdef double b, dx, acc, accp
    with nogil:
        for i in range(n):
            acc = a * x[i] - arg_scale
            accp = a
            for k in range(m):
                b = -roots[k].imag
                dx = x[i] - roots[k].real
                acc -= atan2(b, dx)
                accp += b / (dx * dx + b * b)
            phi[i] = acc
            phip[i] = accp
    return phi_arr, phip_arr


cdef inline double complex _kernel_one(
    double a, double complex scale, double complex[::1] roots,
    double complex wbar, double complex A, double complex B,
    double complex z, double complex ez, double complex esz,
    double eps_diag,
) noexcept nogil:
    cdef double complex d = wbar - z
    cdef double complex m
    if d.real * d.real + d.imag * d.imag <= eps_diag * eps_diag:
        m = (wbar + z) / 2.0
        return (A * _deriv_one(a, scale, roots, m)
                - B * (_deriv_one(a, scale, roots, m.conjugate())).conjugate()) \
            / (-2.0 * PI * IUNIT)
    return (A * ez - B * esz) / (2.0 * PI * IUNIT * d)


def kernel_matrix(double a, double complex scale, double complex[::1] roots,
                  double complex[::1] w, double complex[::1] z, double eps_diag):
    """Matrix K[j, i] = kernel with center w[j] evaluated at z[i]."""
    cdef Py_ssize_t j, i, nw = w.shape[0], nz = z.shape[0]
    out = np.empty((nw, nz), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    ez_arr = np.empty(nz, dtype=np.complex128)
    esz_arr = np.empty(nz, dtype=np.complex128)
    cdef double complex[::1] ez = ez_arr
    cdef double complex[::1] esz = esz_arr
    cdef double complex wbar, A, B
    with nogil:
        for i in range(nz):
            ez[i] = _eval_one(a, scale, roots, z[i])
            esz[i] = (_eval_one(a, scale, roots, z[i].conjugate())).conjugate()
        for j in range(nw):
            A = (_eval_one(a, scale, roots, w[j])).conjugate()
            wbar = w[j].conjugate()
            B = _eval_one(a, scale, roots, wbar)
            for i in range(nz):
                o[j, i] = _kernel_one(a, scale, roots, wbar, A, B,
                                      z[i], ez[i], esz[i], eps_diag)
    return out


def kernel_sum(double a, double complex scale, double complex[::1] roots,
               double complex[::1] centers, double complex[::1] coeffs,
               double complex[::1] z, double eps_diag):
    """Evaluate sum_j coeffs[j] * kernel(center=centers[j], z) on the grid z."""
    cdef Py_ssize_t j, i, nc = centers.shape[0], nz = z.shape[0]
    out = np.zeros(nz, dtype=np.complex128)
    cdef double complex[::1] o = out
    if nc == 0:
        return out
    ez_arr = np.empty(nz, dtype=np.complex128)
    esz_arr = np.empty(nz, dtype=np.complex128)
    cdef double complex[::1] ez = ez_arr
    cdef double complex[::1] esz = esz_arr
    cdef double complex wbar, A, B, c
    with nogil:
        for i in range(nz):
            ez[i] = _eval_one(a, scale, roots, z[i])
            esz[i] = (_eval_one(a, scale, roots, z[i].conjugate())).conjugate()
        for j in range(nc):
            A = (_eval_one(a, scale, roots, centers[j])).conjugate()
            wbar = centers[j].conjugate()
            B = _eval_one(a, scale, roots, wbar)
            c = coeffs[j]
            for i in range(nz):
                o[i] = o[i] + c * _kernel_one(a, scale, roots, wbar, A, B,
                                              z[i], ez[i], esz[i], eps_diag)
    return out
