"""Spherical-vector PSO dynamic path planning with PSO and GA baselines."""

from ._core import (
    Box,
    CostBreakdown,
    CostWeights,
    Environment,
    GAParams,
    Method,
    MissionLog,
    MotionMode,
    PathProblem,
    RhoBand,
    ScenarioConfig,
    SolverConfig,
    SolverResult,
    SphericalTriple,
    SwarmParams,
    TerrainGrid,
    ThreatCylinder,
    ThreatMotionModel,
    Waypoint,
    altitude_cost,
    build_scenario,
    clamp_config,
    decode,
    default_rho_max,
    encode,
    evaluate_path,
    ga_solve,
    ground_height,
    load_dem,
    load_scenario,
    parse_scenario,
    path_length_cost,
    pso_solve,
    run_comparison,
    run_mission,
    save_dem,
    segment_threat_distance,
    smoothness_cost,
    spso_solve,
    step_threats,
    synth_terrain,
    threat_cost,
    threat_kernel,
    total_cost,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
