import json
import math

import numpy as np
import pytest

from debranges import (
    HBConstructionError,
    HermiteBiehlerFunction,
    dump_hb,
    hb_from_dict,
    hb_to_dict,
    load_hb,
    preset_hb,
)

from conftest import random_hb


PW = preset_hb("pw")
POLY = preset_hb("poly")


def test_pw_value():
    # e^{-i pi z} at z = i is e^{pi}
    assert PW(1j) == pytest.approx(math.exp(math.pi))
    assert PW(0.0) == 1.0 + 0j


def test_poly_value_and_derivative():
    bare = HermiteBiehlerFunction(0.0, (-1j,))
    assert bare(0.0) == 1j
    # product rule with the exponential: E'(0) = 1 + pi for (z+i)e^{-i pi z}
    assert POLY.derivative(0.0) == pytest.approx(1 + math.pi)


def test_derivative_matches_finite_difference(rng):
    e = random_hb(rng)
    z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
    h = 1e-6
    fd = (e(z + h) - e(z - h)) / (2 * h)
    assert e.derivative(z) == pytest.approx(fd, rel=1e-7)


def test_derivative_exact_at_multiple_root():
    # triple root: derivative at the root must vanish identically, no 0/0
    w = 1.0 - 0.5j
    e = HermiteBiehlerFunction(0.0, (w, w, w))
    assert e.derivative(w) == 0.0
    # and one factor away the derivative is the product of the others
    e2 = HermiteBiehlerFunction(0.0, (w, w))
    assert e2.derivative(w) == 0.0


def test_star_is_reflected_conjugate(rng):
    e = random_hb(rng)
    for _ in range(10):
        z = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
        assert e.star(z) == pytest.approx(np.conj(e(np.conj(z))))


def test_strict_modulus_inequality_upper_half_plane(rng):
    for _ in range(5):
        e = random_hb(rng)
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 2))
        assert abs(e.star(z)) < abs(e(z))


def test_phase_term_ranges(rng):
    # each root contributes a branch-free increment inside (-pi, 0)
    e = random_hb(rng, n_roots=5)
    x = float(rng.uniform(-10, 10))
    total = e.phase(x).phi - (e.exp_coefficient * x - e.scale_arg)
    assert -5 * math.pi < total < 0
    one = HermiteBiehlerFunction(0.0, (complex(0, -0.3),))
    for x in (-50.0, -1.0, 0.0, 1.0, 50.0):
        assert -math.pi < one.phase(x).phi < 0


def test_phase_monotone_and_derivative(rng):
    e = random_hb(rng)
    xs = np.linspace(-5, 5, 201)
    phi, phip = e.phase_arrays(xs)
    assert (np.diff(phi) > 0).all()
    assert (phip > 0).all()
    # phi' against a tight central difference at scattered points
    h = 1e-4
    for x in rng.uniform(-5, 5, 20):
        fd = (e.phase(x + h).phi - e.phase(x - h).phi) / (2 * h)
        assert e.phase(x).phi_prime == pytest.approx(fd, rel=1e-5)


def test_phase_polar_form(rng):
    e = random_hb(rng)
    x = float(rng.uniform(-4, 4))
    pv = e.phase(x)
    assert e(complex(x)) == pytest.approx(abs(e(complex(x))) * np.exp(-1j * pv.phi))


def test_product_composes(rng):
    e, f = random_hb(rng), random_hb(rng)
    g = e.product(f)
    z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
    assert g(z) == pytest.approx(e(z) * f(z))
    x = float(rng.uniform(-3, 3))
    assert g.phase(x).phi_prime == pytest.approx(
        e.phase(x).phi_prime + f.phase(x).phi_prime
    )


def test_rejects_negative_rate():
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(-0.1)


def test_rejects_upper_half_plane_root_naming_index():
    with pytest.raises(HBConstructionError) as exc:
        HermiteBiehlerFunction(1.0, (-1j, 0.5 + 0.2j))
    assert exc.value.root_index == 1
    assert "1" in str(exc.value)


def test_rejects_real_root():
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(1.0, (2.0 + 0j,))


def test_rejects_zero_scale_and_degenerate():
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(1.0, (), 0.0)
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(0.0)  # constant: no rate, no roots


def test_rejects_nonfinite():
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(float("nan"))
    with pytest.raises(HBConstructionError):
        HermiteBiehlerFunction(1.0, (complex(float("inf"), -1),))


def test_scalar_in_scalar_out():
    assert isinstance(PW(0.5), complex)
    out = PW(np.array([0.5, 1.0], dtype=complex))
    assert isinstance(out, np.ndarray) and out.shape == (2,)


def test_dict_round_trip_exact(rng):
    e = random_hb(rng)
    d = hb_to_dict(e)
    e2 = hb_from_dict(d)
    assert e2.exp_coefficient == e.exp_coefficient
    assert e2.roots == e.roots
    assert e2.leading_scale == e.leading_scale


def test_file_round_trip(tmp_path, rng):
    e = random_hb(rng)
    path = tmp_path / "gen.json"
    dump_hb(e, path)
    e2 = load_hb(path)
    assert e2.roots == e.roots


def test_load_errors_name_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ValueError) as exc:
        load_hb(path)
    assert "bad.json" in str(exc.value)


def test_from_dict_rejects_bad_schema():
    with pytest.raises(ValueError):
        hb_from_dict({"exp_coefficient": 1.0, "roots": [[0.0, -1.0, 9.0]]})
    with pytest.raises(ValueError):
        hb_from_dict({"roots": []})
    with pytest.raises(HBConstructionError):
        hb_from_dict({"exp_coefficient": 1.0, "roots": [[0.0, 1.0]]})


def test_json_file_is_plain_data(tmp_path):
    path = tmp_path / "pw.json"
    dump_hb(PW, path)
    data = json.loads(path.read_text())
    assert set(data) == {"exp_coefficient", "roots", "leading_scale"}
