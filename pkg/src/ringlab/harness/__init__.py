"""Theorem registry, suite runner and bounded property search."""

from .config import ConfigError, SuiteConfig, load_config, parse_config, resolve_cap
from .model import Context, InstanceResult, Precondition, TheoremCheck, TheoremReport
from .registry import IDS, REGISTRY
from .suite import SuiteReport, run_suite, verify_theorem

__all__ = [
    "ConfigError", "Context", "IDS", "InstanceResult", "Precondition", "REGISTRY", "SuiteConfig",
    "SuiteReport", "TheoremCheck", "TheoremReport", "load_config", "parse_config",
    "resolve_cap", "run_suite", "verify_theorem",
]
