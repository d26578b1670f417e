"""Verification suites and use-case reproduction"""

from .asymptote import AsymptoteFit, empirical_asymptote, regime_spec
from .gradcheck import GradientCheckResult, gradient_check, numeric_directions
from .use_cases import (
    DEFAULT_TABLE,
    UseCaseConfig,
    UseCaseReport,
    UseCaseTable,
    load_use_case_table,
    reproduce_use_cases,
)
from .verify import CountReport, SpecGenerator, measure, summarize, verify_counts
from .xor import XorResult, xor_demo, xor_sweep
