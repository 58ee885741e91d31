"""Evaluation configuration: every tolerance and truncation limit used by the
numerical operations lives here, never inline in the operations themselves.

The default config can be overridden globally by pointing the environment
variable ``WBIDENT_CONFIG`` at a JSON file whose keys are field names.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

ENV_CONFIG_VAR = "WBIDENT_CONFIG"


@dataclass(frozen=True)
class EvalConfig:
    # series evaluators (Kummer M, modified Bessel I)
    series_rel_tol: float = 1e-16
    series_max_terms: int = 1000

    # trapezoid quadrature for K_nu
    quad_step: float = 1.0 / 64
    quad_cutoff: float | None = None      # None -> from the integrand decay bound
    quad_rel_tol: float = 1e-12
    quad_max_halvings: int = 12

    # finite differences
    fd_step: float = 1e-2
    fd_instability_floor: float = 1e-6    # residuals below this are FD noise

    # parameter-degeneracy handling
    k_zero_threshold: float = 0.0         # |k| <= this counts as the exact k=0 branch
    k_refuse_threshold: float = 1e-3      # 0 < k below this is refused in double precision
    mu_degeneracy_tol: float = 1e-6       # warn when 2*mu is this close to an integer

    # collocation oracle
    collocation_cond_limit: float = 1e10
    collocation_escalate_cond: float = 1e6
    collocation_resid_tol: float = 1e-8

    # check thresholds
    top_coeff_tol: float = 1e-10
    coupled_tol: float = 1e-12
    identity_tol: float = 1e-6
    ode4_tol: float = 1e-4
    whittaker_eq_tol: float = 1e-6
    itilde_recurrence_tol: float = 1e-8
    bessel_derivative_tol: float = 1e-7
    kernel_cross_tol: float = 1e-10
    realness_tol: float = 1e-10
    indicial_tol: float = 1e-10
    constants_relation_tol: float = 1e-10
    reconstruction_tol: float = 1e-6
    oracle_match_tol: float = 1e-8

    # high-precision oracle
    oracle_dps: int = 50

    def __post_init__(self):
        positive = [
            "series_rel_tol", "quad_step", "quad_rel_tol", "fd_step",
            "fd_instability_floor", "k_refuse_threshold", "mu_degeneracy_tol",
            "collocation_cond_limit", "collocation_escalate_cond",
            "collocation_resid_tol", "top_coeff_tol", "coupled_tol",
            "identity_tol", "ode4_tol", "whittaker_eq_tol",
            "itilde_recurrence_tol", "bessel_derivative_tol",
            "kernel_cross_tol", "realness_tol", "indicial_tol",
            "constants_relation_tol", "reconstruction_tol", "oracle_match_tol",
        ]
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"EvalConfig.{name} must be positive")
        if self.series_max_terms < 10:
            raise ValueError("EvalConfig.series_max_terms must be >= 10")
        if self.quad_cutoff is not None and self.quad_cutoff <= 0:
            raise ValueError("EvalConfig.quad_cutoff must be positive or None")
        if self.k_zero_threshold < 0:
            raise ValueError("EvalConfig.k_zero_threshold must be >= 0")
        if self.quad_max_halvings < 1:
            raise ValueError("EvalConfig.quad_max_halvings must be >= 1")
        if self.oracle_dps < 20:
            raise ValueError("EvalConfig.oracle_dps must be >= 20")

    def replace(self, **kw) -> "EvalConfig":
        return dataclasses.replace(self, **kw)


def load_config(path: str) -> EvalConfig:
    """Read an EvalConfig from a JSON file; missing keys keep their defaults."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    known = {f.name for f in dataclasses.fields(EvalConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown EvalConfig keys in {path}: {sorted(unknown)}")
    return EvalConfig(**data)


def default_config() -> EvalConfig:
    """Built-in defaults, unless WBIDENT_CONFIG points at a JSON override."""
    path = os.environ.get(ENV_CONFIG_VAR)
    if path:
        return load_config(path)
    return EvalConfig()
