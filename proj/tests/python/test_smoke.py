import json
import math
import os
from pathlib import Path

import pytest

import spso_dpp as sp

CONFIGS = Path(os.environ.get("SPSODPP_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def flat_world(extent=1000.0):
    n = 11
    grid = sp.TerrainGrid(n, n, extent / (n - 1), 0.0, 0.0, [0.0] * (n * n))
    return sp.Environment(grid, [], 1.0, 10.0)


def flat_problem(n=6):
    p = sp.PathProblem()
    p.n = n
    p.start = (100, 100, 150)
    p.goal = (900, 700, 150)
    p.bounds = sp.Box((0, 0, 0), (1000, 1000, 400))
    p.h_min, p.h_max = 100.0, 200.0
    p.rho_max = sp.default_rho_max(p.start, p.goal, n)
    return p


def test_encode_decode_roundtrip():
    path = [(0, 0, 0), (10, 0, 0), (10, 5, 3), (30, 0, 0)]
    config = sp.encode(path)
    assert len(config) == 2
    p = sp.PathProblem()
    p.n = 4
    p.start, p.goal = path[0], path[-1]
    back = sp.decode(config, p)
    for got, want in zip(back, path):
        assert all(abs(a - b) < 1e-9 for a, b in zip(got, want))


def test_cost_kernels():
    env = sp.Environment(flat_world().terrain, [], 1.0, 3.0)
    t = sp.ThreatCylinder(0, 0, 2)
    assert sp.threat_kernel(7.0, env, t) == 0.0
    assert sp.threat_kernel(4.5, env, t) == 1.5
    assert math.isinf(sp.threat_kernel(2.5, env, t))
    assert sp.path_length_cost([(0, 0, 0), (3, 4, 0)]) == 5.0


def test_dem_roundtrip_and_query():
    grid = sp.load_dem("ncols 2\nnrows 2\ncellsize 10\nxll 0\nyll 0\n1 2\n3 4\n")
    assert grid.heights == [1, 2, 3, 4]
    assert sp.ground_height(grid, 0, 10) == 1.0
    assert sp.load_dem(sp.save_dem(grid)) == grid
    with pytest.raises(ValueError):
        sp.load_dem("ncols 2\nnrows 2\ncellsize 10\nxll 0\nyll 0\n1 2 3\n")


def test_solvers_reach_the_straight_line():
    env, problem = flat_world(), flat_problem()
    weights = sp.CostWeights(1, 0, 0, 0)
    params = sp.SwarmParams()
    params.swarm_size, params.iterations = 20, 20
    ga = sp.GAParams()
    ga.population, ga.generations = 20, 20
    straight = math.dist(tuple(problem.start), tuple(problem.goal))
    for result in (
        sp.spso_solve(problem, env, weights, params),
        sp.pso_solve(problem, env, weights, params),
        sp.ga_solve(problem, env, weights, ga),
    ):
        assert result.best_cost.total <= 1.05 * straight
        assert result.history == sorted(result.history, reverse=True)
        assert len(result.best_waypoints) == problem.n


def test_mission_and_comparison():
    config = sp.load_scenario(str(CONFIGS / "case1.cfg"))
    config.seeds = [1]
    for params in (config.spso, config.pso):
        params.swarm_size, params.iterations = 10, 5
    config.ga.population, config.ga.generations = 10, 5
    problem, env = sp.build_scenario(config)

    solver = sp.SolverConfig()
    solver.swarm = config.spso
    log = sp.run_mission(problem, env, config.weights, config.motion, solver, 3)
    assert len(log.checkpoint_costs) == 8
    assert len(log.final_path) == 10
    assert json.loads(log.to_json())["seed"] == 3

    report = sp.run_comparison(config, ["spso", "ga"], sp.MotionMode.shared)
    lines = report.to_csv().splitlines()
    assert lines[1] == "cost,spso,ga"
    assert len(lines) == 10
    assert report.to_csv() == sp.run_comparison(config, ["spso", "ga"], sp.MotionMode.shared).to_csv()


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError, match="colour"):
        sp.parse_scenario("start: [1, 1]\ngoal: [2, 2]\ncolour: red\n")
