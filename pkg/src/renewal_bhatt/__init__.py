"""Bhattacharyya bound and Bayes error for classifying heavy-tailed Pareto renewal processes."""

__version__ = "0.1.0"

from .bounds import (ClassPair, DerivedParams, asymptotic_bound, bhatt_error_bound,
                     derived_params, mc_bhatt, oracle_bhatt)
from .classify import ClassificationResult, classify_trajectory, mc_error_prob
from .distributions import (GeomMeanLaw, ParetoClass, bhatt_coefficient, g12_eval,
                            g12_quantile, pareto_eval, pareto_quantile)
from .errors import ConfigError, DegeneratePairError, DomainError
from .montecarlo import McEstimate
from .renewal import Trajectory, log_likelihood, simulate_trajectory
from .rng import RngStream
from .sweep import CellResult, GridSpec, build_grid, run_sweep, write_csv
from .heatmap import emit_heatmap

__all__ = [
    "ClassPair", "DerivedParams", "asymptotic_bound", "bhatt_error_bound", "derived_params",
    "mc_bhatt", "oracle_bhatt", "ClassificationResult", "classify_trajectory", "mc_error_prob",
    "GeomMeanLaw", "ParetoClass", "bhatt_coefficient", "g12_eval", "g12_quantile",
    "pareto_eval", "pareto_quantile", "ConfigError", "DegeneratePairError", "DomainError",
    "McEstimate", "Trajectory", "log_likelihood", "simulate_trajectory", "RngStream",
    "CellResult", "GridSpec", "build_grid", "run_sweep", "write_csv", "emit_heatmap",
]
