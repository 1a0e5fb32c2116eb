"""Inference for two Weibull populations under balanced joint progressive Type-II censoring."""

from .estimate import WeibullFit, fit_amle, fit_mle, xi_constants
from .intervals import asymptotic_ci, bootstrap_ci, observed_information
from .model import (BjpcSample, CensoringScheme, WeibullParams, a_of_alpha, load_bundled,
                    load_dataset, validate_scheme)
from .ocs import enumerate_schemes, expected_volume, search_optimum
from .region import alpha_confidence_interval, joint_region, lambda_sum_bounds, region_volume
from .simulate import RngStream, expected_time_on_test, simulate_mechanism, simulate_spacings

__all__ = [
    "BjpcSample", "CensoringScheme", "RngStream", "WeibullFit", "WeibullParams",
    "a_of_alpha", "alpha_confidence_interval", "asymptotic_ci", "bootstrap_ci",
    "enumerate_schemes", "expected_time_on_test", "expected_volume", "fit_amle", "fit_mle",
    "joint_region", "lambda_sum_bounds", "load_bundled", "load_dataset", "observed_information",
    "region_volume", "search_optimum", "simulate_mechanism", "simulate_spacings",
    "validate_scheme", "xi_constants",
]

__version__ = "0.1.0"
