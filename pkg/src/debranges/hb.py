"""Hermite-Biehler functions in structural form.

A function is stored as the triple

    E(z) = leading_scale * exp(-1j * exp_coefficient * z) * prod_k (z - roots[k])

with exp_coefficient >= 0, every root strictly in the lower half-plane and a
nonzero leading scale.  Such an E satisfies |E(conj z)| < |E(z)| on the upper
half-plane and generates a reproducing-kernel Hilbert space of entire
functions with norm ||f||^2 = integral of |f(t)|^2 / |E(t)|^2 over the real
line.  The structural form gives closed-form evaluation, derivative and phase,
so no root-finding or unwrapping happens anywhere downstream.

On the real axis E(x) = |E(x)| * exp(-1j*phi(x)) for the continuous, strictly
increasing phase

    phi(x) = a*x - arg(leading_scale) + sum_k -atan2(|Im w_k|, x - Re w_k),

each arctangent valued in (0, pi).
"""

import cmath
import dataclasses
import json
import math

import numpy as np

from .backend import as_complex_array, as_float_array, core
from .errors import HBConstructionError

__all__ = [
    "HermiteBiehlerFunction",
    "PhaseValue",
    "hb_from_dict",
    "hb_to_dict",
    "load_hb",
    "dump_hb",
]

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)


@dataclasses.dataclass(frozen=True)
class PhaseValue:
    """Phase phi and derivative phi' of a Hermite-Biehler function at real x."""

    x: float
    phi: float
    phi_prime: float


@dataclasses.dataclass(frozen=True)
class HermiteBiehlerFunction:
    """Structural Hermite-Biehler function; see the module docstring."""

    exp_coefficient: float
    roots: tuple = ()
    leading_scale: complex = 1.0 + 0.0j

    def __post_init__(self):
        a = float(self.exp_coefficient)
        if not math.isfinite(a) or a < 0.0:
            raise HBConstructionError(
                f"exp_coefficient must be finite and >= 0, got {self.exp_coefficient!r}"
            )
        roots = tuple(complex(w) for w in self.roots)
        for k, w in enumerate(roots):
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                raise HBConstructionError(f"root {k} is not finite: {w!r}", root_index=k)
            if w.imag >= 0.0:
                raise HBConstructionError(
                    f"root {k} = {w!r} lies in the closed upper half-plane; "
                    "all roots must have Im < 0",
                    root_index=k,
                )
        scale = complex(self.leading_scale)
        if scale == 0 or not (math.isfinite(scale.real) and math.isfinite(scale.imag)):
            raise HBConstructionError(
                f"leading_scale must be finite and nonzero, got {self.leading_scale!r}"
            )
        if a == 0.0 and not roots:
            raise HBConstructionError(
                "degenerate function: exp_coefficient 0 with no roots is a constant"
            )
        object.__setattr__(self, "exp_coefficient", a)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "leading_scale", scale)

    @property
    def scale_arg(self):
        """arg(leading_scale), the constant term of the phase."""
        return cmath.phase(self.leading_scale)

    def _root_array(self):
        return np.asarray(self.roots, dtype=np.complex128)

    def __call__(self, z):
        """E(z) for scalar or 1-D array z."""
        out = core.hb_eval(
            self.exp_coefficient, self.leading_scale, self._root_array(),
            as_complex_array(z),
        )
        return complex(out[0]) if isinstance(z, _SCALARS) else out

    def star(self, z):
        """E*(z) = conj(E(conj z)) for scalar or 1-D array z."""
        out = np.conj(
            core.hb_eval(
                self.exp_coefficient, self.leading_scale, self._root_array(),
                np.conj(as_complex_array(z)),
            )
        )
        return complex(out[0]) if isinstance(z, _SCALARS) else out

    def derivative(self, z):
        """E'(z) for scalar or 1-D array z; exact at the roots as well."""
        out = core.hb_eval_derivative(
            self.exp_coefficient, self.leading_scale, self._root_array(),
            as_complex_array(z),
        )
        return complex(out[0]) if isinstance(z, _SCALARS) else out

    def phase(self, x):
        """PhaseValue at real scalar x."""
        phi, phip = self.phase_arrays(as_float_array(x))
        return PhaseValue(x=float(x), phi=float(phi[0]), phi_prime=float(phip[0]))

    def phase_arrays(self, x):
        """(phi, phi_prime) arrays over a real 1-D grid x."""
        return core.phase_eval(
            self.exp_coefficient, self.scale_arg, self._root_array(),
            as_float_array(x),
        )

    def product(self, other):
        """Structural product E*F: coefficients add, roots concatenate."""
        return HermiteBiehlerFunction(
            exp_coefficient=self.exp_coefficient + other.exp_coefficient,
            roots=self.roots + other.roots,
            leading_scale=self.leading_scale * other.leading_scale,
        )


def hb_from_dict(data):
    """Build a function from the JSON dict form; raises HBConstructionError.

    Schema: {"exp_coefficient": real, "roots": [[re, im], ...],
             "leading_scale": [re, im]}.
    """
    if not isinstance(data, dict):
        raise HBConstructionError(f"expected an object, got {type(data).__name__}")
    missing = {"exp_coefficient", "roots", "leading_scale"} - set(data)
    if missing:
        raise HBConstructionError(f"missing fields: {sorted(missing)}")
    try:
        a = float(data["exp_coefficient"])
    except (TypeError, ValueError) as exc:
        raise HBConstructionError(f"exp_coefficient is not a real number: {exc}") from exc
    raw_roots = data["roots"]
    if not isinstance(raw_roots, list):
        raise HBConstructionError("roots must be a list of [re, im] pairs")
    roots = []
    for k, pair in enumerate(raw_roots):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise HBConstructionError(f"root {k} is not a [re, im] pair", root_index=k)
        try:
            roots.append(complex(float(pair[0]), float(pair[1])))
        except (TypeError, ValueError) as exc:
            raise HBConstructionError(f"root {k} is not numeric: {exc}", root_index=k) from exc
    scale_pair = data["leading_scale"]
    if not (isinstance(scale_pair, (list, tuple)) and len(scale_pair) == 2):
        raise HBConstructionError("leading_scale must be a [re, im] pair")
    scale = complex(float(scale_pair[0]), float(scale_pair[1]))
    return HermiteBiehlerFunction(
        exp_coefficient=a, roots=tuple(roots), leading_scale=scale
    )


def hb_to_dict(e):
    """Inverse of hb_from_dict; floats pass through unchanged (exact round trip)."""
    return {
        "exp_coefficient": e.exp_coefficient,
        "roots": [[w.real, w.imag] for w in e.roots],
        "leading_scale": [e.leading_scale.real, e.leading_scale.imag],
    }


def load_hb(path):
    """Read a function from a JSON file; errors name the file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise HBConstructionError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return hb_from_dict(data)
    except HBConstructionError as exc:
        raise HBConstructionError(f"{path}: {exc}", root_index=exc.root_index) from exc


def dump_hb(e, path):
    """Write the JSON form of a function to a file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(hb_to_dict(e), fh, indent=2, sort_keys=True)
        fh.write("\n")
