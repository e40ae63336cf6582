"""Homological CSS codes on closed manifolds, with a matching decoder and sweep harness."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .codes import CodeParameters, CssCode, NoLogicalQubitsError, build_code, distances
from .complexes import ChainComplex, CubicSpec, SurfaceSpec, build
from .harness import ExperimentConfig, ExperimentRecord, compare, run_point, sweep
from .homology import HomologyBasis, betti_numbers, homology_basis
from .matching import Decoder, build_matching_graph, judge, mwpm_decode
from .noise import NoiseModel, PauliFrame, Syndrome, detection_events, extract_syndrome, sample_error

__all__ = [
    "BACKEND",
    "ChainComplex", "SurfaceSpec", "CubicSpec", "build",
    "HomologyBasis", "betti_numbers", "homology_basis",
    "CssCode", "CodeParameters", "NoLogicalQubitsError", "build_code", "distances",
    "NoiseModel", "PauliFrame", "Syndrome", "sample_error", "extract_syndrome", "detection_events",
    "Decoder", "build_matching_graph", "mwpm_decode", "judge",
    "ExperimentConfig", "ExperimentRecord", "run_point", "sweep", "compare",
]
