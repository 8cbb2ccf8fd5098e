"""
Scenario files, the check registry, the asynchronous check executor and CSV reports.
"""

from .registry import (
    CheckInfo,
    CheckOutcome,
    CheckRegistry,
    get_check,
    get_check_info,
    list_checks,
    list_checks_with_info,
    register_check,
    search_checks,
)
from . import builtin  # noqa: F401  registers the built-in checks
from .identity import IDENTITY_TOLERANCES, IdentityIntegral, identity_integral
from .report import ReportRow, all_passed, read_report, render_csv, write_report
from .runner import CheckExecutionResult, CheckExecutor
from .scenario import FieldSpec, Scenario, SuiteConfig, load_suite, parse_suite

__all__ = [
    "CheckExecutionResult",
    "CheckExecutor",
    "CheckInfo",
    "CheckOutcome",
    "CheckRegistry",
    "FieldSpec",
    "IDENTITY_TOLERANCES",
    "IdentityIntegral",
    "ReportRow",
    "Scenario",
    "SuiteConfig",
    "all_passed",
    "get_check",
    "get_check_info",
    "identity_integral",
    "list_checks",
    "list_checks_with_info",
    "load_suite",
    "parse_suite",
    "read_report",
    "register_check",
    "render_csv",
    "search_checks",
    "write_report",
]
