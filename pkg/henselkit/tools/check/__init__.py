"""Check - seeded property suites."""

from .suites import SUITES, SuiteResult, run_suites

__all__ = ["SUITES", "SuiteResult", "run_suites"]
