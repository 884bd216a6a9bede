"""Smoke tests for the python bindings: geometry, penalties, a small solve,
and oracle verification. The heavy property testing lives in the C++ suites.
"""

import numpy as np
import pytest

import _visharp as vs


def test_geometry_roundtrip():
    ball = vs.ConvexSet.ball(np.zeros(2), 1.0)
    assert ball.dim == 2
    p = vs.project(ball, np.array([2.0, 0.0]))
    assert np.allclose(p, [1.0, 0.0])
    assert vs.distance(ball, np.array([3.0, 0.0])) == pytest.approx(2.0)
    assert vs.contains(ball, np.zeros(2))
    assert not vs.contains(ball, np.array([1.5, 0.0]))
    assert vs.minkowski_gauge(ball, np.array([3.0, 0.0]), np.zeros(2)) == \
        pytest.approx(3.0, abs=1e-8)
    wide = vs.expand(ball, 0.5)
    assert vs.distance(wide, np.array([2.0, 0.0])) == pytest.approx(0.5)


def test_sharp_penalty_zones():
    box = vs.ConvexSet.box(np.array([-1.0]), np.array([1.0]))
    method = vs.PenaltyMethod(vs.PenaltyVariant.Projection, 0.1)
    outside = vs.sharp_penalty(box, np.array([2.0]), method)
    assert outside.zone == vs.PenaltyZone.Outside
    assert outside.strong
    assert outside.direction[0] == pytest.approx(1.0)
    inside = vs.sharp_penalty(box, np.array([0.3]), method)
    assert inside.zone == vs.PenaltyZone.Inside
    assert np.linalg.norm(inside.direction) == 0.0


def test_solve_builtin():
    problem = vs.builtin_problem("fig1")
    cfg = vs.SolverConfig()
    cfg.epsilon = 0.05
    cfg.rho_f = problem.op.rho_f
    cfg.x0 = np.array([0.9])
    cfg.max_iters = 20000
    cfg.trace_every = 100
    result = vs.solve(problem, cfg, vs.PenaltyMethod())
    assert result.certified_eps <= 0.05
    assert result.iters_run == 20000
    assert result.trace[0].x[0] == 0.9
    assert result.lambda_ == pytest.approx(2.0 * result.lambda_eps)


def test_custom_operator_and_oracle():
    op = vs.ViOperator()
    op.dim = 1
    op.eval = lambda x: x - 0.3
    op.monotone = True
    op.rho_f = 2.0
    box = vs.ConvexSet.box(np.array([-1.0]), np.array([1.0]))
    problem = vs.Problem(op, box)
    cert = vs.oracle_extragradient(problem)
    assert cert.x_star[0] == pytest.approx(0.3, abs=1e-7)
    assert cert.residual <= 1e-8

    cfg = vs.SolverConfig()
    cfg.rho_f = 2.0
    cfg.x0 = np.array([-0.5])
    cfg.max_iters = 20000
    cfg.trace_every = 100
    result = vs.solve(problem, cfg, vs.PenaltyMethod())
    assert vs.verify_eps_solution(problem, result.best, 0.05, cert)


def test_errors_surface_as_python_exceptions():
    ball = vs.ConvexSet.ball(np.zeros(2), 1.0)
    with pytest.raises(vs.VisharpError):
        vs.project(ball, np.zeros(3))
    problem = vs.builtin_problem("fig1")
    cfg = vs.SolverConfig()
    cfg.rho_f = 2.0
    cfg.x0 = np.array([5.0])  # outside rho_f * B
    with pytest.raises(vs.VisharpError):
        vs.solve(problem, cfg, vs.PenaltyMethod())
    with pytest.raises(vs.VisharpError):
        vs.builtin_problem("nope")
