import math

import numpy as np
import pytest

import gradmap


def test_registry():
    assert gradmap.scenario_names() == [
        "sl2r-p1",
        "torus-pn",
        "two-orbit-p2",
        "rpn-coisotropic",
        "gl2r-unique-closed",
    ]
    assert "abelian-polytope" in gradmap.suite_names()


def test_gradient_map_values():
    gl2 = gradmap.CompatibleGroup.real_general_linear(2)
    sl2 = gradmap.CompatibleGroup.real_special_linear(2)
    e1 = np.array([1, 0], dtype=complex)
    assert np.allclose(gradmap.gradient_map(gl2, e1), np.diag([0.5, 0]))
    assert gradmap.norm_square(sl2, e1) == pytest.approx(1 / 16)
    zero = np.array([1, 1j]) / math.sqrt(2)
    assert np.linalg.norm(gradmap.gradient_map(sl2, zero)) < 1e-14
    # moment map is -(i/2) v v^*
    v = np.array([0.6, 0.8j])
    assert np.allclose(gradmap.moment_map(v), -0.5j * np.outer(v, v.conj()))


def test_flow_reaches_zero_fiber():
    sl2 = gradmap.CompatibleGroup.real_special_linear(2)
    tr = gradmap.integrate_flow(sl2, np.array([1, 0.3j]))
    assert tr["converged"]
    limit = tr["limit"]
    target = np.array([1, 1j]) / math.sqrt(2)
    assert abs(abs(np.vdot(target, limit)) - 1) < 1e-12
    assert all(np.diff(tr["f_values"]) <= 1e-12)


def test_kempf_ness_and_distance():
    h = np.diag([1.0, -1.0])
    g = np.diag([math.exp(0.7), math.exp(-0.7)])
    assert gradmap.kn_value(np.array([1, 0], dtype=complex), g) == pytest.approx(0.25 * 2 * 0.7)
    assert gradmap.symmetric_distance(np.eye(2), g) == pytest.approx(np.linalg.norm(0.7 * h))


def test_convex_helpers():
    hexagon = gradmap.permutohedron(np.array([1.0, 0.0, -1.0]))
    assert hexagon.shape == (6, 3)
    assert gradmap.majorization_membership(np.zeros(3), np.array([1.0, 0.0, -1.0]))
    square = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]], dtype=float)
    assert gradmap.convex_hull(square).shape == (4, 2)


def test_errors_are_translated():
    with pytest.raises(gradmap.GradmapError):
        gradmap.run_suite("sl2r-p1", "no-such-suite")
    with pytest.raises(ValueError):
        gradmap.scenario_group("nope")


def test_run_suite_report():
    report = gradmap.run_suite("torus-pn", "abelian-polytope", seed=7, scale=0.1)
    assert report["schema"] == "gradmap-report/1"
    assert report["verdict"] == "pass"
    assert report["parameters"]["n"] == 3
