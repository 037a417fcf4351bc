"""Sampling, frames, and multiplexed reconstruction in de Branges spaces.

The package works with Hermite-Biehler functions in structural form
(exponential coefficient, lower half-plane roots, leading scale), the
reproducing kernels of the spaces they generate, node sets solved from the
phase equation phi(lambda) = n*pi + alpha, Parseval-frame reconstruction for
a product space H(E*F), and two-channel multiplexed sampling on the shared
node set.  An independent quadrature oracle cross-checks every inner product.
"""

from .backend import backend_name
from .errors import (
    DuplicatePointError,
    HBConstructionError,
    IllConditionedError,
    PhaseRangeError,
    SolverConvergenceError,
)
from .frames import (
    FrameSystem,
    build_frame_system,
    dual_coefficients,
    frame_bounds,
    naimark_gram,
    naimark_gram_at,
    norm_from_samples,
    orthogonality_residual_E,
    orthogonality_residual_F,
    reconstruct_in_E,
    reconstruct_in_F,
    reconstruct_onb,
)
from .hb import (
    HermiteBiehlerFunction,
    PhaseValue,
    dump_hb,
    hb_from_dict,
    hb_to_dict,
    load_hb,
)
from .kernel import EPS_DIAG, KernelCombination, gram, kernel, kernel_diag, kernel_matrix
from .multiplex import MultiplexedStream, decode_f, decode_g, encode, simulate_channel
from .nodes import NodeSet, solve_nodes
from .presets import PRESET_PAIRS, PRESETS, preset_hb, preset_pair
from .space import IntegralResult, QuadratureSpec, cross_inner_EF, inner_product

__version__ = "0.1.0"

__all__ = [
    "HermiteBiehlerFunction",
    "PhaseValue",
    "hb_from_dict",
    "hb_to_dict",
    "load_hb",
    "dump_hb",
    "EPS_DIAG",
    "kernel",
    "kernel_diag",
    "kernel_matrix",
    "gram",
    "KernelCombination",
    "NodeSet",
    "solve_nodes",
    "QuadratureSpec",
    "IntegralResult",
    "inner_product",
    "cross_inner_EF",
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
    "MultiplexedStream",
    "encode",
    "decode_f",
    "decode_g",
    "simulate_channel",
    "PRESETS",
    "PRESET_PAIRS",
    "preset_hb",
    "preset_pair",
    "backend_name",
    "HBConstructionError",
    "DuplicatePointError",
    "PhaseRangeError",
    "SolverConvergenceError",
    "IllConditionedError",
]
