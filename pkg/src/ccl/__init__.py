"""Reliability analysis of finite constellations under isotropic Cauchy noise.

The package computes exact geometric descriptors (distance spectra,
convex hull classes, recession-cone angular patches), closed-form
small-noise union bounds, seeded Monte Carlo symbol error estimates, and
a descriptor-level design screen, and exposes them through a CLI and a
small JSON HTTP service.
"""

from .bounds import (
    BoundReport,
    asymptotic_coefficient_average,
    asymptotic_coefficient_symbol,
    bound_report,
    burden,
    burden_max,
    pairwise_error_term,
    union_bound_average,
    union_bound_symbol,
)
from .catalog import CATALOG, CatalogEntry, catalog_get, catalog_names
from .descriptors import (
    ReliabilityReport,
    ScreenEntry,
    ScreenResult,
    joint_objective,
    normalized_burden_max,
    report,
    screen,
)
from .detector import (
    McConfig,
    McEstimate,
    estimate,
    ml_decode,
    ml_decode_via_likelihood,
    sweep,
    wilson_interval,
)
from .errors import CclError
from .geometry import (
    AngularPatch2D,
    Constellation,
    DistanceSpectrum,
    HullTag,
    angular_fraction,
    angular_patch_2d,
    average_power,
    cone_contains,
    distance_spectrum,
    hull_classify,
    min_distance,
    pairwise_direction,
    patch_angular_distance,
    sphere_fraction_mc,
)
from .noise import NoiseModel, cauchy_cdf, log_density, projection_ks, sample, sample_batch
from .rng import RngStream
from .serialization import load_constellation, save_constellation

__version__ = "0.1.0"

__all__ = [
    "AngularPatch2D",
    "BoundReport",
    "CATALOG",
    "CatalogEntry",
    "CclError",
    "Constellation",
    "DistanceSpectrum",
    "HullTag",
    "McConfig",
    "McEstimate",
    "NoiseModel",
    "ReliabilityReport",
    "RngStream",
    "ScreenEntry",
    "ScreenResult",
    "angular_fraction",
    "angular_patch_2d",
    "asymptotic_coefficient_average",
    "asymptotic_coefficient_symbol",
    "average_power",
    "bound_report",
    "burden",
    "burden_max",
    "catalog_get",
    "catalog_names",
    "cauchy_cdf",
    "cone_contains",
    "distance_spectrum",
    "estimate",
    "hull_classify",
    "joint_objective",
    "load_constellation",
    "log_density",
    "min_distance",
    "ml_decode",
    "ml_decode_via_likelihood",
    "normalized_burden_max",
    "pairwise_direction",
    "pairwise_error_term",
    "patch_angular_distance",
    "projection_ks",
    "report",
    "sample",
    "sample_batch",
    "save_constellation",
    "screen",
    "sphere_fraction_mc",
    "sweep",
    "union_bound_average",
    "union_bound_symbol",
    "wilson_interval",
]
