import ast
from fractions import Fraction as F
from pathlib import Path

import pytest

import rank1games.oracle as oracle_module
from rank1games.construct import BimatrixGame, Indexing, Rank1Params, build_rank1_game
from rank1games.equilibria import enumerate_constructed_equilibria
from rank1games.errors import SizeError
from rank1games.exact import RatMatrix
from rank1games.oracle import DegenerateGameError, EnumerationResult, enumerate_equilibria, solve_support_pair
from rank1games.profile import Support
from rank1games.verify import is_nash


def test_full_support_pair_n2():
    g = build_rank1_game(Rank1Params(3, 2))
    eq = solve_support_pair(g, Support.of([0, 1]), Support.of([0, 1]))
    assert eq.x == eq.y == (F(3, 4), F(1, 4))
    assert eq.payoff_row == F(81, 4)


def test_mismatched_pure_pair():
    g = build_rank1_game(Rank1Params(3, 2))
    assert solve_support_pair(g, Support.of([0]), Support.of([1])) is None


def test_coordination_corner():
    I2 = RatMatrix.identity(2)
    eq = solve_support_pair(BimatrixGame(I2, I2), Support.of([0]), Support.of([0]))
    assert eq.x == eq.y == (1, 0)


def test_unequal_sizes_rejected():
    g = build_rank1_game(Rank1Params(3, 2))
    with pytest.raises(ValueError):
        solve_support_pair(g, Support.of([0]), Support.of([0, 1]))


def test_singular_systems_counted():
    # every column pays the row player the same, so the 2x2 indifference system is singular
    g = BimatrixGame.from_rows([[1, 1], [2, 2]], [[1, 2], [3, 4]])
    res = EnumerationResult()
    assert solve_support_pair(g, Support.of([0, 1]), Support.of([0, 1]), res) is None
    assert res.singular_systems == 1


def test_n2_family():
    res = enumerate_equilibria(build_rank1_game(Rank1Params(3, 2)))
    assert len(res.equilibria) == 3
    assert all(e.x == e.y for e in res.equilibria)
    assert res.supports_examined == 4 + 1


@pytest.mark.parametrize("variant", list(Indexing))
def test_n4_matches_construction(variant):
    params = Rank1Params(3, 4, variant)
    res = enumerate_equilibria(build_rank1_game(params))
    assert res.equilibria == enumerate_constructed_equilibria(params)
    assert all(e.support_x == e.support_y for e in res.equilibria)


def test_coordination_game_has_seven():
    I3 = RatMatrix.identity(3)
    res = enumerate_equilibria(BimatrixGame(I3, I3))
    assert len(res.equilibria) == 7
    g = BimatrixGame(I3, I3)
    assert all(is_nash(g, e.x, e.y) for e in res.equilibria)


def test_canonical_order():
    res = enumerate_equilibria(build_rank1_game(Rank1Params(4, 3)))
    keys = [(e.support_x.mask, e.support_y.mask) for e in res.equilibria]
    assert keys == sorted(keys)


def test_size_cap():
    with pytest.raises(SizeError):
        enumerate_equilibria(build_rank1_game(Rank1Params(3, 6)))


def test_degenerate_game_aborts():
    ones = [[1, 1], [1, 1]]
    with pytest.raises(DegenerateGameError) as info:
        enumerate_equilibria(BimatrixGame.from_rows(ones, ones))
    assert info.value.witness is not None


def test_oracle_is_independent_of_construction():
    tree = ast.parse(Path(oracle_module.__file__).read_text())
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert "equilibria" not in imported and not any(m and m.endswith("equilibria") for m in imported)
