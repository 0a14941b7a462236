"""Exact solver, strategies and claim checks for the one-cop damage game."""

from .engine import (
    INF,
    BudgetExceeded,
    GameState,
    IllegalMove,
    Side,
    Terminal,
    Variant,
    capture_time,
    damage_given_start,
    damage_number,
    damage_number_prime,
    damage_number_restricted,
    relative_capture_time,
    solve_values,
)
from .families import build_family
from .graph import Graph, GraphError, cartesian_product
from .graph6 import encode_graph6, parse_graph6

__version__ = "0.1.0"

__all__ = [
    "INF", "BudgetExceeded", "GameState", "Graph", "GraphError", "IllegalMove", "Side",
    "Terminal", "Variant", "build_family", "capture_time", "cartesian_product",
    "damage_given_start", "damage_number", "damage_number_prime", "damage_number_restricted",
    "encode_graph6", "parse_graph6", "relative_capture_time", "solve_values", "__version__",
]
