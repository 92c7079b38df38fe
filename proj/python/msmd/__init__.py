"""Stochastic multi-objective optimization toolkit (MSMD method and baselines)."""

from ._msmd import (
    bk1_front_distance,
    compute_m_star,
    compute_m_star_preference,
    entropy_prox,
    euclidean_prox,
    evaluate,
    gradient,
    hypervolume,
    list_problems,
    mgda_minnorm,
    multi_start,
    nondominated_filter,
    pareto_stationarity_measure,
    pcgrad_direction,
    problem_info,
    rate_slope,
    solve,
)

__all__ = [
    "bk1_front_distance",
    "compute_m_star",
    "compute_m_star_preference",
    "entropy_prox",
    "euclidean_prox",
    "evaluate",
    "gradient",
    "hypervolume",
    "list_problems",
    "mgda_minnorm",
    "multi_start",
    "nondominated_filter",
    "pareto_stationarity_measure",
    "pcgrad_direction",
    "problem_info",
    "rate_slope",
    "solve",
]
