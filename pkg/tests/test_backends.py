import subprocess
import sys

import numpy as np
import pytest

from debranges import EPS_DIAG, backend_name
from debranges import _fallback

native = pytest.importorskip(
    "debranges._native", reason="compiled backend not built"
)


def _inputs(seed):
    rng = np.random.default_rng(seed)
    a = float(rng.uniform(0, 3))
    scale = complex(rng.uniform(0.5, 2), rng.uniform(-1, 1))
    roots = np.ascontiguousarray(
        rng.uniform(-3, 3, 4) - 1j * rng.uniform(0.1, 2, 4)
    )
    z = np.ascontiguousarray(rng.uniform(-5, 5, 40) + 1j * rng.uniform(-2, 2, 40))
    x = np.ascontiguousarray(rng.uniform(-10, 10, 40))
    return a, scale, roots, z, x


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_eval_parity(seed):
    a, scale, roots, z, _ = _inputs(seed)
    np.testing.assert_allclose(
        native.hb_eval(a, scale, roots, z),
        _fallback.hb_eval(a, scale, roots, z),
        rtol=1e-12,
    )


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_derivative_parity(seed):
    a, scale, roots, z, _ = _inputs(seed)
    np.testing.assert_allclose(
        native.hb_eval_derivative(a, scale, roots, z),
        _fallback.hb_eval_derivative(a, scale, roots, z),
        rtol=1e-12,
    )


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_phase_parity(seed):
    a, scale, roots, _, x = _inputs(seed)
    arg = float(np.angle(scale))
    phi_n, phip_n = native.phase_eval(a, arg, roots, x)
    phi_p, phip_p = _fallback.phase_eval(a, arg, roots, x)
    np.testing.assert_allclose(phi_n, phi_p, rtol=1e-13)
    np.testing.assert_allclose(phip_n, phip_p, rtol=1e-13)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_kernel_matrix_parity(seed):
    a, scale, roots, z, x = _inputs(seed)
    w = z[:10]
    m_n = native.kernel_matrix(a, scale, roots, w, z, EPS_DIAG)
    m_p = _fallback.kernel_matrix(a, scale, roots, w, z, EPS_DIAG)
    np.testing.assert_allclose(m_n, m_p, rtol=1e-11, atol=1e-13 * np.abs(m_p).max())


def test_kernel_matrix_parity_near_diagonal():
    # pairs straddling the branch switch must take the same branch in both
    # implementations; just outside the band the direct formula loses ~6
    # digits to cancellation, so parity there is only good to ~1e-9
    a, scale = 2.0, 1.0 + 0.3j
    roots = np.array([0.5 - 0.4j, -1.0 - 1.0j])
    w = np.array([1.0 + 0.2j])
    z = np.conj(w[0]) + np.array(
        [0.0, 0.3 * EPS_DIAG, 0.99 * EPS_DIAG, 1.01 * EPS_DIAG, 5 * EPS_DIAG]
    )
    m_n = native.kernel_matrix(a, scale, roots, w, z, EPS_DIAG)
    m_p = _fallback.kernel_matrix(a, scale, roots, w, z, EPS_DIAG)
    inside = [0, 1, 2]
    np.testing.assert_allclose(m_n[:, inside], m_p[:, inside], rtol=1e-12)
    np.testing.assert_allclose(m_n, m_p, rtol=1e-9)


@pytest.mark.parametrize("seed", [1, 2])
def test_kernel_sum_parity(seed):
    a, scale, roots, z, x = _inputs(seed)
    rng = np.random.default_rng(seed + 100)
    centers = np.ascontiguousarray(x[:6] + 0j)
    coeffs = np.ascontiguousarray(
        rng.standard_normal(6) + 1j * rng.standard_normal(6)
    )
    s_n = native.kernel_sum(a, scale, roots, centers, coeffs, z, EPS_DIAG)
    s_p = _fallback.kernel_sum(a, scale, roots, centers, coeffs, z, EPS_DIAG)
    np.testing.assert_allclose(s_n, s_p, rtol=1e-11, atol=1e-12 * np.abs(s_p).max())


def _spawn_backend(env_value):
    code = "import debranges; print(debranges.backend_name())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "DEBRANGES_BACKEND": env_value},
    )
    return out


def test_env_forces_python_backend():
    out = _spawn_backend("python")
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


def test_env_forces_native_backend():
    out = _spawn_backend("native")
    assert out.returncode == 0
    assert out.stdout.strip() == "native"


def test_env_rejects_unknown_backend():
    out = _spawn_backend("cuda")
    assert out.returncode != 0
    assert "DEBRANGES_BACKEND" in out.stderr


def test_this_session_reports_a_backend():
    assert backend_name() in ("native", "python")
