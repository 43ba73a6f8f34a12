"""Exact and Monte Carlo verification of absolute-value binomial sums.

The main entry points are re-exported here; see the submodules for the
individual proof-step verifiers.
"""
from .exact_core import LaurentPoly, apply_x_ddx, binomial, eval_at_one, pascal_row, poly_binomial_power
from .identities import (
    IdentityId,
    IdentityReport,
    moment,
    moment_via_genfun,
    s0_closed,
    s0_direct,
    s1_closed,
    s1_direct,
    s2_closed,
    s3_closed,
    s3_direct,
    verify_all,
)
from .oracle import SumHistogram, enumerate_histogram, oracle_s0, oracle_s1
from .stochastic import MCEstimate, RngSpec, mc_mean_abs, mc_mean_absdiffsq

__version__ = "0.1.0"
