"""Complete search: DPLL with 2sJW branching, enumeration, splitting, checkpoints."""

from .cubes import CubeReport, CubeResult, count_models_cubes, solve_cube, solve_cubes
from .reference import (brute_force_models, choose_branch, dpll_reference, jw_weight,
                        residual, unit_propagate)
from .solver import (CheckpointError, Cube, Engine, SearchState, SolveResult, SolveStats,
                     Verdict, checkpoint_load, checkpoint_save, count_models, cubes_from_text,
                     cubes_to_text, dpll, dpll_enumerate, formula_digest, split)

__all__ = [
    "CubeReport", "CubeResult", "count_models_cubes", "solve_cube", "solve_cubes",
    "brute_force_models", "choose_branch", "dpll_reference", "jw_weight", "residual",
    "unit_propagate", "CheckpointError", "Cube", "Engine", "SearchState", "SolveResult",
    "SolveStats", "Verdict", "checkpoint_load", "checkpoint_save", "count_models",
    "cubes_from_text", "cubes_to_text", "dpll", "dpll_enumerate", "formula_digest", "split",
]
