import math

import numpy as np
import pytest

from debranges import (
    HermiteBiehlerFunction,
    PhaseRangeError,
    preset_hb,
    solve_nodes,
)

from conftest import random_hb


PW = preset_hb("pw")
PW2 = preset_hb("pw2")
BARE = HermiteBiehlerFunction(0.0, (-1j,))


def test_pw2_integer_half_lattice():
    ns = solve_nodes(PW2, 0.0, -4, 4)
    np.testing.assert_allclose(ns.nodes, np.arange(-4, 5) * 0.5, atol=1e-14)
    assert np.max(ns.residuals) <= 1e-10
    assert list(ns.indices) == list(range(-4, 5))


def test_pw_offset_lattice():
    # phase pi*x, alpha = pi/2 puts nodes at half-integers
    ns = solve_nodes(PW, math.pi / 2, 0, 3)
    np.testing.assert_allclose(ns.nodes, [0.5, 1.5, 2.5, 3.5], atol=1e-12)


def test_random_generator_hits_targets(rng):
    e = random_hb(rng)
    alpha = float(rng.uniform(0, math.pi))
    ns = solve_nodes(e, alpha, -40, 40)
    phi, _ = e.phase_arrays(ns.nodes)
    targets = np.arange(-40, 41) * math.pi + alpha
    np.testing.assert_allclose(phi, targets, atol=1e-9)
    assert (np.diff(ns.nodes) > 0).all()


def test_phase_gaps_are_pi(rng):
    e = random_hb(rng)
    ns = solve_nodes(e, 0.25, -100, 100)
    phi, _ = e.phase_arrays(ns.nodes)
    np.testing.assert_allclose(np.diff(phi), math.pi, atol=1e-9)


def test_alpha_continuity(rng):
    # first-order response of a node to an alpha shift is delta / phi'(node)
    e = random_hb(rng)
    ns = solve_nodes(e, 0.7, -10, 10)
    delta = 1e-5
    shifted = solve_nodes(e, 0.7 + delta, -10, 10)
    _, phip = e.phase_arrays(ns.nodes)
    np.testing.assert_allclose(
        shifted.nodes - ns.nodes, delta / phip, rtol=1e-3
    )


def test_restrict_window():
    ns = solve_nodes(PW2, 0.0, -4, 4)
    sub = ns.restrict(-1, 2)
    assert list(sub.indices) == [-1, 0, 1, 2]
    np.testing.assert_allclose(sub.nodes, [-0.5, 0.0, 0.5, 1.0], atol=1e-14)
    empty = ns.restrict(3, 1)
    assert len(empty) == 0


def test_rate_zero_attainable_window():
    # single root at -i: attainable phase targets are (-pi, 0)
    ns = solve_nodes(BARE, 1.5, -1, -1)
    assert ns.nodes[0] == pytest.approx(-math.cos(1.5) / math.sin(1.5), abs=1e-12)


def test_rate_zero_out_of_range_names_index():
    with pytest.raises(PhaseRangeError) as exc:
        solve_nodes(BARE, 1.5, -1, 0)
    assert "0" in str(exc.value)
    lo, hi = exc.value.attainable
    assert lo == pytest.approx(-math.pi)
    assert hi == pytest.approx(0.0, abs=1e-15)


def test_alpha_domain_validation():
    with pytest.raises(ValueError):
        solve_nodes(PW, -0.1, 0, 1)
    with pytest.raises(ValueError):
        solve_nodes(PW, math.pi, 0, 1)
    with pytest.raises(ValueError):
        solve_nodes(PW, 0.0, 2, 1)


def test_large_window_stays_cheap_and_exact():
    ns = solve_nodes(PW, 0.0, -2000, 2000)
    np.testing.assert_allclose(ns.nodes, np.arange(-2000, 2001), atol=1e-11)


def test_residual_tolerance_is_honored(rng):
    e = random_hb(rng)
    ns = solve_nodes(e, 0.1, -50, 50, residual_tol=1e-12)
    assert np.max(ns.residuals) <= 1e-12
