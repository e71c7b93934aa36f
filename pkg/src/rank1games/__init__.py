"""Rank-1 bimatrix games with exponentially many Nash equilibria, in exact arithmetic."""

from .construct import BimatrixGame, Indexing, Rank1Params, build_rank1_game, rank1_factors, shift_payoffs
from .equilibria import (
    build_support_equilibrium,
    enumerate_constructed_equilibria,
    equilibrium_lambda,
    expected_row_payoffs,
    integer_weights,
)
from .exact import RatMatrix, Singular, rank, solve_linear_system
from .murty import ParametricLP, grid_oracle, murty_instance, solve_at, trace_path
from .oracle import enumerate_equilibria, solve_support_pair
from .profile import EquilibriumProfile, Support
from .symmetrize import pair_to_equilibrium, product_equilibria, symmetrize
from .verify import best_responses, is_nash, nondegeneracy_check

__version__ = "0.1.0"
