"""Exit criteria for the package, one marker per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.  All checks are exact; none uses a
numerical tolerance.
"""

import subprocess
import sys
import time
from fractions import Fraction as F
from itertools import combinations

import pytest

from rank1games.construct import Rank1Params, build_rank1_game, rank1_factors
from rank1games.equilibria import (
    build_support_equilibrium,
    enumerate_constructed_equilibria,
    equilibrium_lambda,
    expected_row_payoffs,
    integer_weights,
)
from rank1games.exact import outer, rank
from rank1games.murty import Sense, Status, grid_oracle, lambda_grid, murty_instance, solve_at, trace_path
from rank1games.oracle import enumerate_equilibria
from rank1games.profile import all_supports
from rank1games.symmetrize import product_equilibria, symmetrize
from rank1games.verify import is_nash, nondegeneracy_check


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "oracle count 2^n - 1 equals the constructed set")
@pytest.mark.parametrize("p", [3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_equilibrium_count(p, n):
    params = Rank1Params(p, n)
    start = time.perf_counter()
    found = enumerate_equilibria(build_rank1_game(params)).equilibria
    elapsed = time.perf_counter() - start
    constructed = enumerate_constructed_equilibria(params)
    assert len(found) == 2 ** n - 1
    assert [(e.x, e.y) for e in found] == [(e.x, e.y) for e in constructed]
    assert elapsed < (120 if n == 5 else 10)


@criterion(2, "rank(A+B) = 1 and A+B = alpha beta^T")
@pytest.mark.parametrize("p", [3, 4, 5])
@pytest.mark.parametrize("n", range(1, 11))
def test_rank_one(p, n):
    params = Rank1Params(p, n)
    g = build_rank1_game(params)
    alpha, beta = rank1_factors(params)
    assert g.A + g.B == outer(alpha, beta)
    assert rank(g.A + g.B) == 1


@criterion(3, "vertex-based nondegeneracy")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nondegenerate(n):
    report = nondegeneracy_check(build_rank1_game(Rank1Params(3, n)))
    assert report.nondegenerate and report.witness is None


@criterion(4, "backward construction: indifference on S, strict loss off S, Nash")
@pytest.mark.parametrize("n", range(1, 9))
def test_construction_procedure(n):
    g = build_rank1_game(Rank1Params(3, n))
    for S in all_supports(n):
        eq = build_support_equilibrium(g, S)
        u = eq.payoff_row
        Ay = expected_row_payoffs(g.A, eq.y)
        assert all(Ay[i] == u for i in S)
        assert all(Ay[i] < u for i in range(n) if i not in S)
        assert is_nash(g, eq.x, eq.y)


@criterion(5, "integer pre-normalization weights starting from u = a_ss")
@pytest.mark.parametrize("p", [3, 4])
@pytest.mark.parametrize("n", range(1, 9))
def test_integer_weights(p, n):
    params = Rank1Params(p, n)
    g = build_rank1_game(params)
    for S in all_supports(n):
        w = integer_weights(params, S)
        assert all(isinstance(k, int) for k in w)
        assert all((k > 0) == (i in S) for i, k in enumerate(w))
        ref = build_support_equilibrium(g, S)
        assert tuple(F(k, sum(w)) for k in w) == ref.y


@criterion(6, "x.alpha values pairwise distinct")
@pytest.mark.parametrize("n", range(1, 6))
def test_hyperplane_intersections(n):
    params = Rank1Params(3, n)
    alpha, _ = rank1_factors(params)
    values = [equilibrium_lambda(e, alpha) for e in enumerate_constructed_equilibria(params)]
    assert len(values) == 2 ** n - 1
    assert all(a != b for a, b in combinations(values, 2))


@criterion(7, "symmetrization: paired profiles are distinct equilibria of (C, C^T)")
@pytest.mark.parametrize("n", [2, 3])
def test_symmetrization(n):
    params = Rank1Params(3, n)
    sym = symmetrize(build_rank1_game(params))
    eqs = enumerate_constructed_equilibria(params)
    paired = product_equilibria(sym, eqs)
    assert len(paired) == (2 ** n - 1) ** 2
    assert len(set(paired)) == len(paired)
    assert all(is_nash(sym.game, e.x, e.y) for e in paired)
    if n == 2:
        found = set(enumerate_equilibria(sym.game).equilibria)
        assert all(e in found for e in paired)


@criterion(8, "Murty path: trace agrees with per-lambda oracle; literal max is unbounded")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_murty_path(n):
    lp = murty_instance(n, Sense.MINIMIZE)
    trace = trace_path(lp)
    assert not trace.unbounded
    lo = min(trace.breakpoints + [F(-4)]) - 1
    hi = max(trace.breakpoints + [F(8)]) + 1
    grid = lambda_grid(lo, hi, F(1, 8))
    assert len(grid) >= 50
    for lam, status, value in grid_oracle(lp, grid):
        assert status is Status.OPTIMAL
        assert trace.value(lam) == value
    literal = murty_instance(n, Sense.MAXIMIZE)
    assert trace_path(literal).unbounded
    assert all(solve_at(literal, lam).status is Status.UNBOUNDED for lam in (-100, 0, 1, 100))
    print(f"murty n={n} minimize: {len(trace.segments)} segments, breakpoints {trace.breakpoints}")


@criterion(8, "Murty path: trace agrees with per-lambda oracle; literal max is unbounded")
def test_murty_report_has_counts_and_caveat():
    out = subprocess.run([sys.executable, "-m", "rank1games.cli", "murty", "--n", "4", "--format", "json"],
                         capture_output=True, text=True, check=True).stdout
    assert '"segment_count"' in out and '"caveat"' in out and '"agrees": true' in out


COMMANDS = [
    ["generate", "--p", "3", "--n", "4"],
    ["generate", "--p", "4", "--n", "3", "--format", "nfg-text"],
    ["construct", "--n", "4", "--support", "1,3,4"],
    ["enumerate", "--n", "4", "--check", "oracle", "--format", "json"],
    ["oracle", "--p", "4", "--n", "3"],
    ["nondegenerate", "--n", "3", "--format", "json"],
    ["rank", "--p", "5", "--n", "6"],
    ["lambda", "--n", "4"],
    ["symmetrize", "--n", "2", "--format", "json"],
    ["pair-map", "--n", "2", "--format", "json"],
    ["murty", "--n", "3"],
    ["murty", "--n", "2", "--sense", "max", "--format", "json"],
]


@criterion(9, "byte-identical output for identical flags")
@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a))
def test_determinism(args):
    cmd = [sys.executable, "-m", "rank1games.cli", *args]
    runs = [subprocess.run(cmd, capture_output=True, check=True) for _ in range(2)]
    assert runs[0].stdout and runs[0].stdout == runs[1].stdout
