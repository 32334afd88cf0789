"""Spectral Galerkin solver for the stochastic Burgers equation on (0, 1)."""

from ._core import (
    BlowUp,
    InvalidArgument,
    ModelParams,
    apply_semigroup,
    default_config,
    eigenvalue,
    energy_pairing,
    eval_F,
    eval_F_direct,
    fit_slope,
    growth_constant,
    hr_norm,
    run_rates,
    selftest,
    simulate,
)

__all__ = [
    "BlowUp",
    "InvalidArgument",
    "ModelParams",
    "apply_semigroup",
    "default_config",
    "eigenvalue",
    "energy_pairing",
    "eval_F",
    "eval_F_direct",
    "fit_slope",
    "growth_constant",
    "hr_norm",
    "run_rates",
    "selftest",
    "simulate",
]
