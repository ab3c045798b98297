"""Skeleton spectral sequences for the sphere, the integers and the relative theory."""

from .compare import ComparisonReport, compare_all, compare_fixture, fixture_for, fixture_ids, load_fixture
from .pages import (Page, check_dd_zero, compute_page, corestriction_map, d2_by_labels, e2_cell,
                    e2_page, run_d2, run_d3, run_d4, run_d5, turn)
from .stems import INTEGERS, RELATIVE, SPHERE, StemTable, ring

__all__ = ["ComparisonReport", "compare_all", "compare_fixture", "fixture_for", "fixture_ids",
           "load_fixture", "Page", "check_dd_zero", "compute_page", "corestriction_map",
           "d2_by_labels", "e2_cell", "e2_page", "run_d2", "run_d3", "run_d4", "run_d5", "turn",
           "INTEGERS", "RELATIVE", "SPHERE", "StemTable", "ring"]
