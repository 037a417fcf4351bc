"""Sampling nodes from the phase equation phi(lambda) = n*pi + alpha.

The phase of a structural Hermite-Biehler function is smooth and strictly
increasing, so each target value has at most one solution.  For a generator
with exp_coefficient a > 0 the root-free bound

    a*x - arg(c) - m*pi < phi(x) < a*x - arg(c)        (m = number of roots)

gives a closed-form bracket per target; for a = 0 the phase is bounded with
the exact attainable range (-arg(c) - m*pi, -arg(c)), targets outside it are
rejected, and brackets come from doubling expansion away from x = 0.  Inside
the bracket a vectorized Newton iteration runs with bisection as safeguard:
any step leaving its bracket is replaced by the midpoint, so convergence is
guaranteed and quadratic near the solution.
"""

import dataclasses
import math

import numpy as np

from .errors import PhaseRangeError, SolverConvergenceError

__all__ = ["NodeSet", "solve_nodes", "RESIDUAL_TOL"]

# Contractual ceiling on |phi(lambda_n) - (n*pi + alpha)|.
RESIDUAL_TOL = 1e-10

_MAX_ITER = 200
_DOUBLING_CAP = 1e12


@dataclasses.dataclass(frozen=True, eq=False)
class NodeSet:
    """Solved nodes lambda_n, strictly increasing, one per index in the range."""

    generator: object
    alpha: float
    index_lo: int
    index_hi: int
    nodes: np.ndarray
    residuals: np.ndarray

    def __len__(self):
        return self.nodes.shape[0]

    @property
    def indices(self):
        return np.arange(self.index_lo, self.index_hi + 1)

    def restrict(self, index_lo, index_hi):
        """Sub-window [index_lo, index_hi] intersected with this set (may be empty)."""
        lo = max(self.index_lo, index_lo)
        hi = min(self.index_hi, index_hi)
        if lo > hi:
            return NodeSet(
                generator=self.generator, alpha=self.alpha,
                index_lo=lo, index_hi=lo - 1,
                nodes=self.nodes[:0], residuals=self.residuals[:0],
            )
        a = lo - self.index_lo
        b = hi - self.index_lo + 1
        return NodeSet(
            generator=self.generator, alpha=self.alpha, index_lo=lo, index_hi=hi,
            nodes=self.nodes[a:b], residuals=self.residuals[a:b],
        )


def _doubling_bracket(generator, t_min, t_max):
    """Expand from 0 until the phase straddles all targets; a = 0 path."""
    left = -1.0
    while generator.phase_arrays(np.array([left]))[0][0] >= t_min:
        left *= 2.0
        if -left > _DOUBLING_CAP:
            raise SolverConvergenceError(
                f"bracket expansion passed {-_DOUBLING_CAP:g} without straddling "
                f"target {t_min:.6g}", bracket=(left, 0.0),
            )
    right = 1.0
    while generator.phase_arrays(np.array([right]))[0][0] <= t_max:
        right *= 2.0
        if right > _DOUBLING_CAP:
            raise SolverConvergenceError(
                f"bracket expansion passed {_DOUBLING_CAP:g} without straddling "
                f"target {t_max:.6g}", bracket=(0.0, right),
            )
    return left, right


def solve_nodes(generator, alpha, index_lo, index_hi, residual_tol=RESIDUAL_TOL):
    """Solve phi(lambda_n) = n*pi + alpha for every n in [index_lo, index_hi].

    alpha must lie in [0, pi).  Raises PhaseRangeError when the generator has
    exp_coefficient 0 and some target is outside the attainable phase range,
    SolverConvergenceError if the residual tolerance cannot be met.
    """
    if not (0.0 <= alpha < math.pi):
        raise ValueError(f"alpha must lie in [0, pi), got {alpha!r}")
    index_lo = int(index_lo)
    index_hi = int(index_hi)
    if index_lo > index_hi:
        raise ValueError(f"index_lo {index_lo} exceeds index_hi {index_hi}")

    targets = alpha + math.pi * np.arange(index_lo, index_hi + 1, dtype=np.float64)
    a = generator.exp_coefficient
    arg_c = generator.scale_arg
    m = len(generator.roots)

    if a == 0.0:
        inf_phi = -arg_c - m * math.pi
        sup_phi = -arg_c
        bad = (targets <= inf_phi) | (targets >= sup_phi)
        if bad.any():
            n_bad = int(np.arange(index_lo, index_hi + 1)[bad][0])
            raise PhaseRangeError(
                f"target phase for n = {n_bad} is outside the attainable range "
                f"({inf_phi:.12g}, {sup_phi:.12g}) of this exp_coefficient-0 "
                "generator",
                attainable=(inf_phi, sup_phi),
            )
        left, right = _doubling_bracket(generator, targets[0], targets[-1])
        lo = np.full_like(targets, left)
        hi = np.full_like(targets, right)
    else:
        lo = (targets + arg_c) / a
        hi = (targets + arg_c + m * math.pi) / a

    x = 0.5 * (lo + hi)
    eps = np.finfo(np.float64).eps
    inner_tol = np.maximum(1e-13, 16.0 * eps * (np.abs(targets) + 1.0))
    residual = None
    for _ in range(_MAX_ITER):
        phi, phip = generator.phase_arrays(x)
        residual = phi - targets
        if (np.abs(residual) <= inner_tol).all():
            break
        hi = np.where(residual > 0.0, np.minimum(hi, x), hi)
        lo = np.where(residual > 0.0, lo, np.maximum(lo, x))
        step = residual / phip
        candidate = x - step
        inside = (candidate > lo) & (candidate < hi)
        x = np.where(inside, candidate, 0.5 * (lo + hi))

    final = np.abs(residual)
    if (final > residual_tol).any():
        worst = int(np.argmax(final))
        raise SolverConvergenceError(
            f"residual {final[worst]:.3e} > {residual_tol:g} at index "
            f"{index_lo + worst} after {_MAX_ITER} iterations",
            bracket=(float(lo[worst]), float(hi[worst])),
        )
    if not (np.diff(x) > 0.0).all():
        raise SolverConvergenceError(
            "solved nodes are not strictly increasing; phase evaluation is "
            "inconsistent", bracket=None,
        )
    return NodeSet(
        generator=generator, alpha=float(alpha),
        index_lo=index_lo, index_hi=index_hi,
        nodes=x, residuals=final,
    )
