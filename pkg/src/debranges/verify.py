"""Executable invariant suite behind the ``verify`` CLI command.

Each check exercises one contract of the package on a preset pair and
reports a measured number next to the threshold it was held to, so a failure
is directly actionable.  The full suite is desk-scale (seconds, not minutes);
``fast=True`` shrinks the windows for use in smoke tests.
"""

import dataclasses
import math

import numpy as np

from . import frames, multiplex
from .kernel import KernelCombination, gram, kernel, kernel_diag
from .nodes import solve_nodes
from .presets import preset_pair
from .space import QuadratureSpec, cross_inner_EF, inner_product

__all__ = ["CheckResult", "run_checks", "PAIR_SEEDS"]

PAIR_SEEDS = {"pw": 101, "poly": 202}


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name, passed, detail):
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _random_combination(rng, generator, n_centers, re_max=2.0, im_max=0.5):
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


def run_checks(pair_name="pw", fast=False, node_residual_tol=1e-10, quad_rel_tol=1e-8):
    """Run every invariant check on a preset pair; returns a list of CheckResult."""
    e, f = preset_pair(pair_name)
    product = e.product(f)
    rng = np.random.default_rng(PAIR_SEEDS[pair_name])
    half = 50 if fast else 300
    results = []

    # 1. diagonal identity: kernel(x, x) == phi'(x)|E(x)|^2/pi on all generators
    xs = rng.uniform(-40.0, 40.0, 60 if fast else 200)
    worst = 0.0
    for gen in (e, f, product):
        diag = kernel_diag(gen, xs)
        direct = np.array([kernel(gen, x, x).real for x in xs])
        worst = max(worst, float(np.max(np.abs(direct - diag) / diag)))
    results.append(_result(
        "diagonal-identity", worst <= 1e-8, f"max rel err {worst:.2e} <= 1e-8"
    ))

    # 2. strict inequality |Estar(z)| < |E(z)| on the upper half-plane
    zs = rng.uniform(-5, 5, 100) + 1j * rng.uniform(0.05, 3.0, 100)
    ratio = max(
        float(np.max(np.abs(gen.star(zs)) / np.abs(gen(zs)))) for gen in (e, f, product)
    )
    results.append(_result(
        "upper-half-plane-inequality", ratio < 1.0, f"max |Estar/E| {ratio:.6f} < 1"
    ))

    # 3. phase consistency and product additivity of phi'
    xr = rng.uniform(-20.0, 20.0, 100)
    phi_e, phip_e = e.phase_arrays(xr)
    phi_f, phip_f = f.phase_arrays(xr)
    _, phip_p = product.phase_arrays(xr)
    vals = e(xr.astype(np.complex128))
    recon = np.abs(vals) * np.exp(-1j * phi_e)
    c1 = float(np.max(np.abs(vals - recon) / np.abs(vals)))
    c2 = float(np.max(np.abs(phip_p - (phip_e + phip_f)) / phip_p))
    ok = c1 <= 1e-12 and c2 <= 1e-12 and (phip_e > 0).all()
    results.append(_result(
        "phase-consistency", ok,
        f"polar rel err {c1:.2e}, phi' additivity {c2:.2e} <= 1e-12"
    ))

    # 4. Gram: Hermitian, PSD, duplicate rejection handled elsewhere
    pts = rng.uniform(-3, 3, 8) + 1j * rng.uniform(-1, 1, 8)
    g_mat = gram(e, pts)
    herm = float(np.max(np.abs(g_mat - g_mat.conj().T)))
    min_eig = float(np.linalg.eigvalsh(0.5 * (g_mat + g_mat.conj().T))[0])
    results.append(_result(
        "gram-hermitian-psd", herm <= 1e-10 and min_eig >= -1e-10,
        f"hermitian dev {herm:.2e}, min eig {min_eig:.2e} >= -1e-10"
    ))

    # 5. node solver: residuals, pi gaps, alpha = pi/2 zero correspondence
    nodes = solve_nodes(product, 0.3, -half, half, residual_tol=node_residual_tol)
    phi, _ = product.phase_arrays(nodes.nodes)
    gap = float(np.max(np.abs(np.diff(phi) - math.pi)))
    res = float(np.max(nodes.residuals))
    half_pi = solve_nodes(product, math.pi / 2, -half, half)
    lam = half_pi.nodes.astype(np.complex128)
    hvals = np.abs(product(lam) + product.star(lam))
    rel = float(np.max(hvals / np.abs(product(lam))))
    ok = res <= node_residual_tol and gap <= 1e-9 and rel <= 1e-8
    results.append(_result(
        "node-solver", ok,
        f"residual {res:.2e}, pi-gap dev {gap:.2e}, zero-set rel {rel:.2e}"
    ))

    # 6. kernel decomposition on the product space
    wz = rng.uniform(-3, 3, (50, 2)) + 1j * rng.uniform(-1, 1, (50, 2))
    worst = 0.0
    for w, z in wz:
        if abs(np.conj(w) - z) < 1e-3:
            continue
        lhs = kernel(product, w, z)
        rhs = (
            np.conj(f(w)) * f(z) * kernel(e, w, z)
            + e(complex(np.conj(w))) * e.star(z) * kernel(f, w, z)
        )
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    results.append(_result(
        "kernel-decomposition", worst <= 1e-9, f"max rel err {worst:.2e} <= 1e-9"
    ))

    # 7. reproducing closure: <f, K(w, .)> via extended Gram equals f(w)
    comb = _random_combination(rng, e, 3)
    w = complex(rng.uniform(-2, 2) + 1j * rng.uniform(-0.5, 0.5))
    ext = gram(e, comb.centers + (w,))
    c_f = np.append(np.asarray(comb.coefficients), 0.0)
    c_g = np.zeros(len(comb.centers) + 1, dtype=np.complex128)
    c_g[-1] = 1.0
    via_gram = complex(np.conj(c_g) @ ext @ c_f)
    direct = comb(w)
    dev = abs(via_gram - direct) / max(1.0, abs(direct))
    results.append(_result(
        "reproducing-closure", dev <= 1e-9, f"rel err {dev:.2e} <= 1e-9"
    ))

    # 8. Parseval partial sums: nondecreasing, small deficit
    system = frames.build_frame_system(e, f, 0.0, -4 * half, 4 * half)
    lamc = system.lambdas.astype(np.complex128)
    worst_deficit = 0.0
    monotone = True
    for _ in range(3 if fast else 5):
        cb = _random_combination(rng, e, 3)
        terms = (
            np.abs(cb(lamc)) ** 2 * np.abs(system.weights_F) ** 2 / system.diag_EF
        )
        monotone = monotone and (terms >= 0).all()
        deficit = 1.0 - float(np.sum(terms)) / cb.norm_squared()
        worst_deficit = max(worst_deficit, deficit)
    results.append(_result(
        "parseval-partial-sums", monotone and worst_deficit <= 0.05,
        f"max deficit {worst_deficit:.4f} <= 0.05"
    ))

    # 9. reconstruction error shrinks with the window
    zgrid = np.linspace(-2.5, 2.5, 41)
    cb = _random_combination(rng, e, 2)
    ref = cb(zgrid.astype(np.complex128))
    errs = []
    for mult in (1, 4):
        sub = system.restrict(-mult * half, mult * half)
        rec = frames.reconstruct_in_E(sub, cb(sub.lambdas.astype(np.complex128)), zgrid)
        errs.append(float(np.max(np.abs(rec - ref))))
    results.append(_result(
        "reconstruction-convergence", errs[1] <= errs[0],
        f"max err {errs[0]:.2e} (N) -> {errs[1]:.2e} (4N)"
    ))

    # 10. orthogonality sums decay on average
    cg = _random_combination(rng, f, 2)
    means = []
    for mult in (1, 4):
        sub = system.restrict(-mult * half, mult * half)
        resid = frames.orthogonality_residual_E(
            sub, cb(sub.lambdas.astype(np.complex128)), zgrid
        )
        means.append(float(np.mean(np.abs(resid))))
    results.append(_result(
        "orthogonality-decay", means[1] <= means[0],
        f"mean |residual| {means[0]:.2e} (N) -> {means[1]:.2e} (4N)"
    ))

    # 11. multiplex round trip is exact on any window
    sub = system.restrict(-half, half)
    sl = sub.lambdas.astype(np.complex128)
    sf, sg = cb(sl), cg(sl)
    stream = multiplex.encode(sub, sf, sg)
    lhs = multiplex.decode_f(stream, zgrid) - frames.reconstruct_in_E(sub, sf, zgrid)
    rhs = frames.orthogonality_residual_F(sub, sg, zgrid)
    d1 = float(np.max(np.abs(lhs - rhs)))
    lhs = multiplex.decode_g(stream, zgrid) - frames.reconstruct_in_F(sub, sg, zgrid)
    rhs = frames.orthogonality_residual_E(sub, sf, zgrid)
    d2 = float(np.max(np.abs(lhs - rhs)))
    results.append(_result(
        "multiplex-roundtrip", d1 <= 1e-12 and d2 <= 1e-12,
        f"identity residuals {d1:.2e}, {d2:.2e} <= 1e-12"
    ))

    # 12. dilated-system Gram: identity at phase-spaced nodes
    win = 25 if fast else 50
    m = frames.naimark_gram(system, -win, win)
    dev = float(np.max(np.abs(m - np.eye(m.shape[0]))))
    results.append(_result(
        "naimark-identity", dev <= 1e-9, f"max dev from identity {dev:.2e} <= 1e-9"
    ))

    # 13. quadrature oracle vs Gram algebra
    spec = QuadratureSpec(rel_tol=quad_rel_tol)
    worst_ratio = 0.0
    ok = True
    for _ in range(2 if fast else 3):
        ca = _random_combination(rng, e, 2)
        cbq = _random_combination(rng, e, 2)
        r = inner_product(ca, cbq, spec=spec)
        # reproducing property: <f, sum_k c_k K(w_k, .)> = sum_k conj(c_k) f(w_k)
        exact = complex(
            np.conj(np.asarray(cbq.coefficients))
            @ ca(np.asarray(cbq.centers))
        )
        tol = max(1e-6, 3.0 * r.estimate)
        ok = ok and abs(r.value - exact) <= tol and r.converged
        worst_ratio = max(worst_ratio, abs(r.value - exact) / tol)
        cx = cross_inner_EF(ca, _random_combination(rng, f, 2), e, f, spec=spec)
        ok = ok and abs(cx.value) <= 10.0 * cx.estimate
    results.append(_result(
        "quadrature-oracle", ok, f"worst |quad-gram|/tol {worst_ratio:.3f} <= 1"
    ))

    # 14. per-node sufficiency inequality and normalized frame-bound sandwich
    lam_r = sub.lambdas
    _, pe = e.phase_arrays(lam_r)
    _, pf = f.phase_arrays(lam_r)
    lhs_node = np.abs(sub.weights_F) ** 2 / sub.diag_EF
    rhs_node = 1.0 / kernel_diag(e, lam_r)
    node_ok = (lhs_node <= rhs_node * (1.0 + 1e-12)).all()
    probes = np.array([0.0, 0.45, 1.3, -0.8])
    a_est, b_est = frames.frame_bounds(e, sub.nodes, True, probes)
    lo_bound = (1.0 - 0.05) * float(np.min(pe / (pe + pf)))
    hi_bound = (1.0 + 0.05) * float(np.max((pe + pf) / pe))
    ok = node_ok and a_est >= lo_bound and b_est <= hi_bound
    results.append(_result(
        "sufficiency-bounds", ok,
        f"per-node ineq {'holds' if node_ok else 'fails'}, "
        f"A {a_est:.4f} >= {lo_bound:.4f}, B {b_est:.4f} <= {hi_bound:.4f}"
    ))

    return results
