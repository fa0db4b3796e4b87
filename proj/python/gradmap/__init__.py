"""Python bindings for the gradmap library."""

import json

from ._core import (
    CompatibleGroup,
    GradmapError,
    convex_hull,
    grad_norm_square,
    gradient_map,
    integrate_flow,
    kn_value,
    majorization_membership,
    moment_map,
    norm_square,
    permutohedron,
    run_suite_json,
    scenario_group,
    scenario_names,
    suite_names,
    symmetric_distance,
)


def run_suite(scenario, suite, seed=7, scale=1.0, n=0):
    """Run one suite and return its report as a dict."""
    return json.loads(run_suite_json(scenario, suite, seed=seed, scale=scale, n=n))


__all__ = [
    "CompatibleGroup",
    "GradmapError",
    "convex_hull",
    "grad_norm_square",
    "gradient_map",
    "integrate_flow",
    "kn_value",
    "majorization_membership",
    "moment_map",
    "norm_square",
    "permutohedron",
    "run_suite",
    "scenario_group",
    "scenario_names",
    "suite_names",
    "symmetric_distance",
]
