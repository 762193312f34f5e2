"""Parallel Left-to-Right scheduling for energy-minimizing deadline scheduling
on parallel processors with power-down."""

from ._backend import BACKEND
from .flow import CutCertificate, InfeasibleError, build_network, certify, is_feasible, max_flow
from .model import BoundProfile, CostBreakdown, Instance, Job, Schedule, check_stair, check_valid, compute_cost
from .oracle import approximation_report, brute_force_opt, edf_feasible
from .realize import realize, schedule_from_result
from .solver import PltrResult, run

__all__ = [
    "BACKEND", "BoundProfile", "CostBreakdown", "CutCertificate", "InfeasibleError", "Instance", "Job",
    "PltrResult", "Schedule", "approximation_report", "brute_force_opt", "build_network", "certify",
    "check_stair", "check_valid", "compute_cost", "edf_feasible", "is_feasible", "max_flow", "realize",
    "run", "schedule_from_result",
]
