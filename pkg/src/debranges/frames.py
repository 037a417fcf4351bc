"""Sampling expansions and Parseval frames on a product space.

Three families of reconstruction live here, all driven by samples on a node
set and all reducing to weighted kernel sums:

* the orthogonal-basis expansion for a single space (nodes solved on E
  itself): f(z) = sum_n f(lambda_n) K_E(lambda_n, z) / K_E(lambda_n, lambda_n);
* the Parseval-frame expansion for a pair (nodes solved on the product E*F):
  f(z) = sum_n f(lambda_n) |F(lambda_n)|^2 K_E(lambda_n, z) / K_EF(lambda_n,
  lambda_n), and its mirror for the second space;
* the companion orthogonality sums which converge to zero and whose finite
  windows are exactly the cross-talk of multiplexed decoding.

The dilated-system Gram (naimark_gram) is assembled algebraically from the
two component kernels and the identity

    K_EF(w, z) = conj(F(w)) F(z) K_E(w, z) + E(conj w) Estar(z) K_F(w, z),

so a phase-spaced node set must produce the identity matrix; its minimum
eigenvalue over growing windows is the package's completeness diagnostic.
"""

import dataclasses

import numpy as np
import scipy.linalg

from .backend import as_complex_array, as_float_array, core
from .errors import IllConditionedError
from .kernel import EPS_DIAG, gram, kernel_diag, kernel_matrix
from .nodes import RESIDUAL_TOL, solve_nodes

__all__ = [
    "FrameSystem",
    "build_frame_system",
    "reconstruct_onb",
    "norm_from_samples",
    "reconstruct_in_E",
    "reconstruct_in_F",
    "orthogonality_residual_E",
    "orthogonality_residual_F",
    "frame_bounds",
    "dual_coefficients",
    "naimark_gram",
    "naimark_gram_at",
]

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)

_COND_LIMIT = 1e12


def _kernel_sum(e, centers, coeffs, z):
    """sum_j coeffs[j] * K_e(centers[j], z), scalar-or-array in z."""
    out = core.kernel_sum(
        e.exp_coefficient, e.leading_scale, np.asarray(e.roots, dtype=np.complex128),
        np.ascontiguousarray(centers, dtype=np.complex128),
        np.ascontiguousarray(coeffs, dtype=np.complex128),
        as_complex_array(z), EPS_DIAG,
    )
    return complex(out[0]) if isinstance(z, _SCALARS) else out


def _check_samples(n, samples, what):
    arr = np.ascontiguousarray(samples, dtype=np.complex128)
    if arr.shape != (n,):
        raise ValueError(f"{what}: expected {n} samples, got shape {arr.shape}")
    return arr


@dataclasses.dataclass(frozen=True, eq=False)
class FrameSystem:
    """A pair (E, F) with nodes solved on the product and cached node data.

    weights_F[n] = F(lambda_n), weights_Estar[n] = Estar(lambda_n), and
    diag_EF[n] = K_EF(lambda_n, lambda_n); every reconstruction weight in this
    module is a ratio of these.
    """

    E: object
    F: object
    nodes: object
    weights_F: np.ndarray
    weights_Estar: np.ndarray
    diag_EF: np.ndarray

    def __len__(self):
        return len(self.nodes)

    @property
    def lambdas(self):
        return self.nodes.nodes

    def restrict(self, index_lo, index_hi):
        """Sub-window of the system (same pair, sliced node data)."""
        sub = self.nodes.restrict(index_lo, index_hi)
        a = sub.index_lo - self.nodes.index_lo
        b = a + len(sub)
        return FrameSystem(
            E=self.E, F=self.F, nodes=sub,
            weights_F=self.weights_F[a:b],
            weights_Estar=self.weights_Estar[a:b],
            diag_EF=self.diag_EF[a:b],
        )


def build_frame_system(e, f, alpha, index_lo, index_hi, residual_tol=RESIDUAL_TOL):
    """Solve nodes on the product E*F and cache the per-node weights."""
    product = e.product(f)
    node_set = solve_nodes(product, alpha, index_lo, index_hi, residual_tol=residual_tol)
    lam = node_set.nodes.astype(np.complex128)
    return FrameSystem(
        E=e, F=f, nodes=node_set,
        weights_F=f(lam),
        weights_Estar=e.star(lam),
        diag_EF=kernel_diag(product, node_set.nodes),
    )


def reconstruct_onb(e, node_set, samples, z):
    """Orthogonal-basis expansion from samples on nodes solved on e itself."""
    if node_set.generator != e:
        raise ValueError("node_set was not solved on this generator")
    samples = _check_samples(len(node_set), samples, "reconstruct_onb")
    coeffs = samples / kernel_diag(e, node_set.nodes)
    return _kernel_sum(e, node_set.nodes, coeffs, z)


def norm_from_samples(e, node_set, samples):
    """||f||^2 = sum_n |f(lambda_n)/E(lambda_n)|^2 * pi / phi'(lambda_n)."""
    if node_set.generator != e:
        raise ValueError("node_set was not solved on this generator")
    samples = _check_samples(len(node_set), samples, "norm_from_samples")
    lam = node_set.nodes
    e_at = e(lam.astype(np.complex128))
    _, phip = e.phase_arrays(lam)
    return float(np.sum(np.abs(samples / e_at) ** 2 * np.pi / phip))


def reconstruct_in_E(system, samples_f, z):
    """Parseval-frame expansion of the first channel from product-node samples."""
    samples_f = _check_samples(len(system), samples_f, "reconstruct_in_E")
    coeffs = samples_f * np.abs(system.weights_F) ** 2 / system.diag_EF
    return _kernel_sum(system.E, system.lambdas, coeffs, z)


def reconstruct_in_F(system, samples_g, z):
    """Mirror expansion for the second channel (weights |E(lambda_n)|^2)."""
    samples_g = _check_samples(len(system), samples_g, "reconstruct_in_F")
    coeffs = samples_g * np.abs(system.weights_Estar) ** 2 / system.diag_EF
    return _kernel_sum(system.F, system.lambdas, coeffs, z)


def orthogonality_residual_E(system, samples_f, z):
    """Window of sum_n f(lambda_n) F(lambda_n) E(lambda_n) K_F(lambda_n, z) /
    diag; converges to zero as the window grows."""
    samples_f = _check_samples(len(system), samples_f, "orthogonality_residual_E")
    e_at = np.conj(system.weights_Estar)  # E(lambda_n) on the real axis
    coeffs = samples_f * system.weights_F * e_at / system.diag_EF
    return _kernel_sum(system.F, system.lambdas, coeffs, z)


def orthogonality_residual_F(system, samples_g, z):
    """Window of sum_n g(lambda_n) Estar(lambda_n) conj(F(lambda_n))
    K_E(lambda_n, z) / diag; converges to zero as the window grows."""
    samples_g = _check_samples(len(system), samples_g, "orthogonality_residual_F")
    coeffs = samples_g * system.weights_Estar * np.conj(system.weights_F) / system.diag_EF
    return _kernel_sum(system.E, system.lambdas, coeffs, z)


def frame_bounds(e0, node_set, normalize, probe_centers):
    """Extremal generalized eigenvalues of the sampled quadratic form.

    On the span of the probe kernels K_e0(mu_j, .), compares
    sum_n w_n |f(lambda_n)|^2 against ||f||^2, with w_n = 1/K_e0(lambda_n,
    lambda_n) when normalize else 1.  Returns (A_est, B_est).
    """
    probes = as_complex_array(probe_centers)
    g = gram(e0, probes)
    cond = np.linalg.cond(g)
    if cond > _COND_LIMIT:
        raise IllConditionedError(
            f"probe Gram condition number {cond:.3e} exceeds {_COND_LIMIT:g}",
            cond=float(cond),
        )
    lam = node_set.nodes
    if lam.shape[0] == 0:
        return 0.0, 0.0
    v = kernel_matrix(e0, probes, lam.astype(np.complex128))
    if normalize:
        w = 1.0 / kernel_diag(e0, lam)
    else:
        w = np.ones(lam.shape[0])
    s = (np.conj(v) * w[None, :]) @ v.T
    s = 0.5 * (s + s.conj().T)
    gh = 0.5 * (g + g.conj().T)
    try:
        eigs = scipy.linalg.eigh(s, gh, eigvals_only=True)
    except scipy.linalg.LinAlgError as exc:
        raise IllConditionedError(
            f"generalized eigensolve failed on the probe Gram: {exc}",
            cond=float(cond),
        ) from exc
    return float(eigs[0]), float(eigs[-1])


def dual_coefficients(e0, node_set, target, ridge_scale=1e-12, cond_limit=_COND_LIMIT):
    """Least-squares coefficients expressing target over the node kernels.

    Solves the ridge-regularized normal equations (G + ridge*I) c = b with
    G the node-kernel Gram, b_n = target(lambda_n) (the reproducing property)
    and ridge = ridge_scale * trace(G).  Raises IllConditionedError when the
    regularized matrix is still too ill-conditioned to trust.
    """
    if target.space_generator != e0:
        raise ValueError("target must live in the space generated by e0")
    lam = node_set.nodes
    g = gram(e0, lam)
    ridge = ridge_scale * float(np.trace(g).real)
    greg = g + ridge * np.eye(g.shape[0])
    cond = np.linalg.cond(greg)
    if cond > cond_limit:
        raise IllConditionedError(
            f"regularized node Gram condition number {cond:.3e} exceeds "
            f"{cond_limit:g}", cond=float(cond),
        )
    b = target(lam.astype(np.complex128))
    return scipy.linalg.solve(greg, b, assume_a="her")


def _naimark(e, f, lam, w_f, w_estar, diag):
    """Gram of the normalized dilated vectors via the kernel decomposition."""
    lamc = lam.astype(np.complex128)
    k_e = kernel_matrix(e, lamc, lamc)
    k_f = kernel_matrix(f, lamc, lamc)
    e_at = np.conj(w_estar)  # E(lambda) on the real axis
    term1 = np.conj(w_f)[:, None] * w_f[None, :] * k_e
    term2 = e_at[:, None] * np.conj(e_at)[None, :] * k_f
    scale = np.sqrt(np.outer(diag, diag))
    return (term1 + term2) / scale


def naimark_gram(system, index_lo=None, index_hi=None):
    """Dilated-system Gram on a node window; identity for phase-spaced nodes."""
    if index_lo is None:
        index_lo = system.nodes.index_lo
    if index_hi is None:
        index_hi = system.nodes.index_hi
    sub = system.restrict(index_lo, index_hi)
    return _naimark(
        sub.E, sub.F, sub.lambdas, sub.weights_F, sub.weights_Estar, sub.diag_EF
    )


def naimark_gram_at(e, f, lambdas):
    """Same Gram at arbitrary real points (for jitter/perturbation studies)."""
    lam = as_float_array(lambdas)
    lamc = lam.astype(np.complex128)
    product = e.product(f)
    return _naimark(e, f, lam, f(lamc), e.star(lamc), kernel_diag(product, lam))
