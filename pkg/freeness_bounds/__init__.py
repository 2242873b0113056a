# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
import pytest

from freeness_bounds.bounds import bound_report, lower_construction
from freeness_bounds.certified_reals import (
    RadicalSum,
    compare,
    enclose,
    floor_certified,
    parse_radsum,
)
from freeness_bounds.chains import Chain, SixfoldProfile, validate_chain, validate_profile
from freeness_bounds.evaluator import f_eval, g_eval
from freeness_bounds.intervals import DyadicInterval
from freeness_bounds.lambert_w import delta, lambert_w
from freeness_bounds.runner import SuiteRunner
from freeness_bounds.solver import build_table, solve_F, solve_G_sixfold

__all__ = [
    "Chain",
    "DyadicInterval",
    "RadicalSum",
    "SixfoldProfile",
    "SuiteRunner",
    "bound_report",
    "build_table",
    "compare",
    "delta",
    "enclose",
    "f_eval",
    "floor_certified",
    "g_eval",
    "lambert_w",
    "lower_construction",
    "parse_radsum",
    "solve_F",
    "solve_G_sixfold",
    "validate_chain",
    "validate_profile",
]


@pytest.fixture(scope="function")
def suite_runner():
    yield SuiteRunner()
