"""Operator angular-distance inequalities: evaluators, equality witnesses and seeded checks."""
from .dw import CheckReport, angular_bound, difference_bound, gpl_residual, p_angular_bound, polar_power_bound
from .kernels import PolarForm, abs_op, frac_power, p_angular_distance, polar
from .order import DEFAULT_POLICY, OrderVerdict, TolerancePolicy, loewner_leq
from .st import characterize_polar_equality, conjugate_exponent_bound, polar_difference_bound
from .suites import TrialConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "CheckReport", "DEFAULT_POLICY", "OrderVerdict", "PolarForm", "TolerancePolicy", "TrialConfig",
    "abs_op", "angular_bound", "characterize_polar_equality", "conjugate_exponent_bound",
    "difference_bound", "frac_power", "gpl_residual", "loewner_leq", "p_angular_bound",
    "p_angular_distance", "polar", "polar_difference_bound", "polar_power_bound", "run_suite",
]
