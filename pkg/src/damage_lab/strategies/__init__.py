from .base import Move, Strategy, StrategyError, Transcript, TranscriptEntry, replay, simulate
from .best_response import LOWER, UPPER, BoundCertificate, best_response
from .cops import (
    COP_STRATEGIES,
    CopCoordinateMatch,
    CopCycleOpposition,
    CopOscillationC6,
    CopProductTwoPhase,
    CopSolverOptimal,
    CopStationary,
    CopTreeCenterPursuit,
    CopTreeProductEquidistant,
    solver_factor_policy,
)
from .robbers import (
    ROBBER_STRATEGIES,
    RobberEvenProductOpening,
    RobberShadowCycleProduct,
    RobberSolverOptimal,
    RobberStationary,
)

__all__ = [
    "BoundCertificate", "COP_STRATEGIES", "CopCoordinateMatch", "CopCycleOpposition",
    "CopOscillationC6", "CopProductTwoPhase", "CopSolverOptimal", "CopStationary",
    "CopTreeCenterPursuit", "CopTreeProductEquidistant", "LOWER", "Move",
    "ROBBER_STRATEGIES", "RobberEvenProductOpening", "RobberShadowCycleProduct",
    "RobberSolverOptimal", "RobberStationary", "Strategy", "StrategyError", "Transcript",
    "TranscriptEntry", "UPPER", "best_response", "replay", "simulate", "solver_factor_policy",
]
