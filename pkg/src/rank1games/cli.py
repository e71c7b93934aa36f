"""Command-line entry point: ``rank1games <command> [options]``.

Every command prints either a human-readable table (default) or a JSON
report (``--format json``) to standard output; ``--output PATH`` also
writes the JSON report (or, for ``generate``, the game file) to disk.

Exit status: 0 on success, 1 when a requested check fails, 2 on usage
errors, 3 when a module raises.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import gameio
from .construct import BimatrixGame, Indexing, Rank1Params, build_rank1_game, rank1_factors
from .equilibria import (
    DEFAULT_CAP,
    build_support_equilibrium,
    enumerate_constructed_equilibria,
    equilibrium_lambda,
    expected_row_payoffs,
)
from .exact import outer, rank
from .murty import Sense, grid_oracle, lambda_grid, murty_instance, trace_path, Status
from .oracle import DEFAULT_ORACLE_CAP, enumerate_equilibria
from .profile import Support
from .symmetrize import pair_to_equilibrium, product_equilibria, symmetrize
from .verify import DEFAULT_NONDEGENERACY_CAP, is_nash, nondegeneracy_check

COMMANDS = (
    "generate", "construct", "enumerate", "oracle", "verify", "nondegenerate",
    "rank", "lambda", "symmetrize", "pair-map", "murty",
)
GAME_OUTPUT = {"generate", "symmetrize"}

MURTY_CAVEAT = (
    "The LP as printed (maximize with >= constraints, z >= 0, c > 0) is unbounded for every lambda; "
    "the minimize reading is traced instead. Its measured segment count is reported as is and is "
    "not the 2^n path length attributed to Murty's construction."
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int = 3
    n: int = 2
    variant: Indexing = Indexing.ONE_BASED
    support: Optional[Support] = None
    support2: Optional[Support] = None
    output_format: str = "table"
    output_path: Optional[Path] = None
    game_path: Optional[Path] = None
    game_format: str = "json"
    profile_path: Optional[Path] = None
    check: str = "none"
    caps: dict = field(default_factory=lambda: {
        "construct": DEFAULT_CAP,
        "oracle": DEFAULT_ORACLE_CAP,
        "nondegenerate": DEFAULT_NONDEGENERACY_CAP,
    })
    lp_sense: Sense = Sense.MINIMIZE
    grid_step: Fraction = Fraction(1, 8)

    @property
    def params(self) -> Rank1Params:
        return Rank1Params(self.p, self.n, self.variant)

    @property
    def first(self) -> int:
        return self.params.first if self.game_path is None else 1


@dataclass
class Outcome:
    status: int
    report: dict
    table: str
    artifact: Optional[bytes] = None  # game file written by --output for game commands


# ---------------------------------------------------------------- parsing


def parse_support_list(text: str) -> list[int]:
    try:
        labels = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"support list must be comma-separated integers, got {text!r}") from None
    if not labels:
        raise UsageError("support list is empty")
    if len(set(labels)) != len(labels):
        raise UsageError(f"support list repeats a strategy: {text!r}")
    return labels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rank1games", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--p", type=int, default=3, help="base of the payoffs, an integer > 2")
    parser.add_argument("--n", type=int, default=2, help="number of pure strategies per player")
    parser.add_argument("--variant", choices=[v.value for v in Indexing], default=Indexing.ONE_BASED.value)
    parser.add_argument("--support", help="comma list of strategy labels, e.g. 1,3")
    parser.add_argument("--support-mask", type=int, help="support as a bitmask, bit k = k-th strategy")
    parser.add_argument("--support2", help="second support for pair-map (comma list)")
    parser.add_argument("--support2-mask", type=int, help="second support for pair-map (bitmask)")
    parser.add_argument("--format", dest="output_format", choices=["table", "json", "nfg-text"])
    parser.add_argument("--output", type=Path, help="also write the report (or game) to this file")
    parser.add_argument("--game", type=Path, help="read the game from a file instead of building it")
    parser.add_argument("--game-format", choices=gameio.FORMATS, default="json")
    parser.add_argument("--profile", type=Path, help="JSON file with keys x and y (verify)")
    parser.add_argument("--check", choices=["none", "oracle", "nash"], default="none")
    parser.add_argument("--sense", choices=[s.value for s in Sense], default=Sense.MINIMIZE.value)
    parser.add_argument("--cap", type=int, help="override the size cap of the command")
    return parser


def _support_arg(labels: Optional[str], mask: Optional[int], first: int, name: str) -> Optional[Support]:
    if labels is not None and mask is not None:
        raise UsageError(f"give either --{name} or --{name}-mask, not both")
    if labels is not None:
        try:
            return Support.from_labels(parse_support_list(labels), first)
        except ValueError as exc:
            raise UsageError(f"--{name}: {exc}") from None
    if mask is not None:
        if mask <= 0:
            raise UsageError(f"--{name}-mask must be positive")
        return Support(mask)
    return None


def config_from_args(argv: Optional[list[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, p=args.p, n=args.n, variant=Indexing(args.variant))
    try:
        params = cfg.params
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg.game_path = args.game
    cfg.game_format = args.game_format
    cfg.profile_path = args.profile
    cfg.check = args.check
    cfg.lp_sense = Sense(args.sense)
    cfg.output_path = args.output
    first = 1 if args.game else params.first
    cfg.support = _support_arg(args.support, args.support_mask, first, "support")
    cfg.support2 = _support_arg(args.support2, args.support2_mask, first, "support2")

    default_format = "json" if cfg.command == "generate" else "table"
    cfg.output_format = args.output_format or default_format
    if cfg.output_format == "nfg-text" and cfg.command not in GAME_OUTPUT:
        raise UsageError(f"--format nfg-text only applies to {sorted(GAME_OUTPUT)}")
    if cfg.command == "construct" and cfg.support is None:
        raise UsageError("construct needs --support or --support-mask")
    if cfg.command == "pair-map" and (cfg.support is None) != (cfg.support2 is None):
        raise UsageError("pair-map needs both supports, or neither for all pairs")
    if cfg.command == "verify" and cfg.profile_path is None:
        raise UsageError("verify needs --profile")
    if cfg.check != "none" and cfg.command != "enumerate":
        raise UsageError("--check only applies to enumerate")
    if cfg.game_path is not None and cfg.command in {"generate", "construct", "enumerate", "rank", "lambda", "pair-map", "murty"}:
        raise UsageError(f"{cfg.command} works on the built family game; --game is not accepted")
    for support in (cfg.support, cfg.support2):
        if support is not None and cfg.game_path is None and not support.fits(cfg.n):
            raise UsageError(f"support {list(support.labels(first))} does not fit n={cfg.n}")
    if args.cap is not None:
        key = {"enumerate": "construct", "oracle": "oracle", "nondegenerate": "nondegenerate"}.get(cfg.command)
        if key is None:
            raise UsageError(f"--cap does not apply to {cfg.command}")
        cfg.caps[key] = args.cap
    return cfg


# ---------------------------------------------------------------- helpers


def _load_game(cfg: RunConfig) -> BimatrixGame:
    if cfg.game_path is None:
        return build_rank1_game(cfg.params)
    return gameio.parse_game(cfg.game_path.read_bytes(), cfg.game_format)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _matrix_text(name: str, rows: list[list[str]]) -> str:
    return _table([name] + [str(j + 1) for j in range(len(rows[0]))],
                  [[i + 1] + r for i, r in enumerate(rows)])


def _labels(S: Support, first: int) -> str:
    return "{" + ",".join(str(k) for k in S.labels(first)) + "}"


def _vec(v) -> str:
    return "(" + ", ".join(str(t) for t in v) + ")"


def _game_meta(cfg: RunConfig, game: BimatrixGame) -> dict:
    meta = {"label": game.label, "shape": list(game.shape)}
    if cfg.game_path is None:
        meta.update(p=cfg.p, n=cfg.n, variant=cfg.variant.value)
    return meta


# ---------------------------------------------------------------- commands


def cmd_generate(cfg: RunConfig) -> Outcome:
    game = build_rank1_game(cfg.params)
    fmt = cfg.output_format if cfg.output_format != "table" else "json"
    data = gameio.serialize_game(game, fmt)
    report = {"command": "generate", "game": gameio.game_to_dict(game)}
    if cfg.output_format == "table":
        text = (f"{game.label}\n\n{_matrix_text('A', gameio.matrix_to_json(game.A))}\n\n"
                f"{_matrix_text('B', gameio.matrix_to_json(game.B))}")
    else:
        text = data.decode().rstrip("\n")
    return Outcome(0, report, text, artifact=data)


def cmd_construct(cfg: RunConfig) -> Outcome:
    game = build_rank1_game(cfg.params)
    eq = build_support_equilibrium(game, cfg.support)
    cert = is_nash(game, eq.x, eq.y)
    payoffs = expected_row_payoffs(game.A, eq.y)
    report = {
        "command": "construct",
        "game": _game_meta(cfg, game),
        "equilibrium": gameio.profile_to_dict(eq, cfg.first),
        "row_payoffs": gameio.vector_to_json(payoffs),
        "is_nash": cert.is_equilibrium,
    }
    rows = [[k + cfg.first, eq.weights[k], eq.y[k], payoffs[k], "yes" if k in eq.support_y else ""]
            for k in range(len(eq.y))]
    text = (f"{game.label}  support={_labels(cfg.support, cfg.first)}  u={eq.payoff_row}  "
            f"is_nash={str(cert.is_equilibrium).lower()}\n\n"
            + _table(["strategy", "weight", "y", "(Ay)", "in support"], rows))
    return Outcome(0 if cert else 1, report, text)


def cmd_enumerate(cfg: RunConfig) -> Outcome:
    game = build_rank1_game(cfg.params)
    eqs = enumerate_constructed_equilibria(cfg.params, cap=cfg.caps["construct"])
    report = {
        "command": "enumerate",
        "game": _game_meta(cfg, game),
        "constructed": len(eqs),
        "expected": 2 ** cfg.n - 1,
        "equilibria": [gameio.profile_to_dict(e, cfg.first) for e in eqs],
    }
    summary = f"constructed={len(eqs)}"
    status = 0
    if cfg.check == "oracle":
        found = enumerate_equilibria(game, cap=cfg.caps["oracle"]).equilibria
        match = found == eqs
        report.update(oracle=len(found), match=match)
        summary += f" oracle={len(found)} match={str(match).lower()}"
        status = 0 if match else 1
    elif cfg.check == "nash":
        passed = sum(bool(is_nash(game, e.x, e.y)) for e in eqs)
        report.update(nash_passed=passed, match=passed == len(eqs))
        summary += f" nash_passed={passed} match={str(passed == len(eqs)).lower()}"
        status = 0 if passed == len(eqs) else 1
    rows = [[_labels(e.support_y, cfg.first), _vec(e.y), e.payoff_row] for e in eqs]
    text = f"{game.label}  {summary}\n\n" + _table(["support", "x = y", "payoff"], rows)
    return Outcome(status, report, text)


def cmd_oracle(cfg: RunConfig) -> Outcome:
    game = _load_game(cfg)
    result = enumerate_equilibria(game, cap=cfg.caps["oracle"])
    report = {
        "command": "oracle",
        "game": _game_meta(cfg, game),
        "count": len(result.equilibria),
        "supports_examined": result.supports_examined,
        "singular_systems": result.singular_systems,
        "equilibria": [gameio.profile_to_dict(e, cfg.first) for e in result.equilibria],
    }
    rows = [[_labels(e.support_x, cfg.first), _labels(e.support_y, cfg.first), _vec(e.x), _vec(e.y),
             e.payoff_row, e.payoff_col] for e in result.equilibria]
    text = (f"{game.label}  equilibria={len(result.equilibria)}  support_pairs={result.supports_examined}  "
            f"singular={result.singular_systems}\n\n"
            + _table(["supp x", "supp y", "x", "y", "u", "v"], rows))
    return Outcome(0, report, text)


def cmd_verify(cfg: RunConfig) -> Outcome:
    game = _load_game(cfg)
    try:
        data = json.loads(cfg.profile_path.read_text())
    except json.JSONDecodeError as exc:
        raise gameio.ParseError(exc.msg, exc.lineno, exc.colno) from None
    x, y = gameio.profile_from_dict(data)
    cert = is_nash(game, x, y)
    report = {
        "command": "verify",
        "game": _game_meta(cfg, game),
        "x": gameio.vector_to_json(x),
        "y": gameio.vector_to_json(y),
        "is_equilibrium": cert.is_equilibrium,
        "row_payoff": str(cert.row_payoff),
        "col_payoff": str(cert.col_payoff),
        "row_best_responses": list(cert.row_best_responses.labels(cfg.first)),
        "col_best_responses": list(cert.col_best_responses.labels(cfg.first)),
        "violation": None if cert.violation is None else {
            "player": cert.violation.player,
            "strategy": cert.violation.strategy + cfg.first,
            "gap": str(cert.violation.gap),
        },
    }
    text = (f"is_equilibrium={str(cert.is_equilibrium).lower()}  row_payoff={cert.row_payoff}  "
            f"col_payoff={cert.col_payoff}")
    if cert.violation is not None:
        v = cert.violation
        text += f"\n{v.player} player gains {v.gap} by switching to strategy {v.strategy + cfg.first}"
    return Outcome(0 if cert else 1, report, text)


def cmd_nondegenerate(cfg: RunConfig) -> Outcome:
    game = _load_game(cfg)
    rep = nondegeneracy_check(game, cap=cfg.caps["nondegenerate"])
    report = {
        "command": "nondegenerate",
        "game": _game_meta(cfg, game),
        "nondegenerate": rep.nondegenerate,
        "vertices_checked": rep.vertices_checked,
        "witness": None if rep.witness is None else {
            "player": rep.witness.player,
            "strategy": gameio.vector_to_json(rep.witness.strategy),
            "support_size": rep.witness.support_size,
            "best_response_count": rep.witness.best_response_count,
        },
    }
    text = f"{game.label}  nondegenerate={str(rep.nondegenerate).lower()}  vertices={rep.vertices_checked}"
    if rep.witness is not None:
        w = rep.witness
        text += (f"\nwitness: {w.player} strategy {_vec(w.strategy)} has {w.best_response_count} "
                 f"pure best responses on a support of size {w.support_size}")
    return Outcome(0, report, text)


def cmd_rank(cfg: RunConfig) -> Outcome:
    game = build_rank1_game(cfg.params)
    alpha, beta = rank1_factors(cfg.params)
    total = game.A + game.B
    r = rank(total)
    factored = total == outer(alpha, beta)
    report = {
        "command": "rank",
        "game": _game_meta(cfg, game),
        "rank": r,
        "alpha": gameio.vector_to_json(alpha),
        "beta": gameio.vector_to_json(beta),
        "factorization_exact": factored,
    }
    text = (f"{game.label}  rank(A+B)={r}  A+B==alpha*beta^T: {str(factored).lower()}\n"
            f"alpha={_vec(alpha)}\nbeta={_vec(beta)}")
    return Outcome(0 if r == 1 and factored else 1, report, text)


def cmd_lambda(cfg: RunConfig) -> Outcome:
    alpha, _ = rank1_factors(cfg.params)
    eqs = enumerate_constructed_equilibria(cfg.params, cap=cfg.caps["construct"])
    values = [equilibrium_lambda(e, alpha) for e in eqs]
    distinct = len(set(values)) == len(values)
    report = {
        "command": "lambda",
        "game": _game_meta(cfg, build_rank1_game(cfg.params)),
        "alpha": gameio.vector_to_json(alpha),
        "values": [{"support": list(e.support_x.labels(cfg.first)), "lambda": str(v)} for e, v in zip(eqs, values)],
        "distinct": distinct,
    }
    rows = [[_labels(e.support_x, cfg.first), v] for e, v in zip(eqs, values)]
    text = (f"{cfg.params.label}  intersections={len(values)}  distinct={str(distinct).lower()}\n\n"
            + _table(["support", "x.alpha"], rows))
    return Outcome(0 if distinct else 1, report, text)


def cmd_symmetrize(cfg: RunConfig) -> Outcome:
    game = _load_game(cfg)
    sym = symmetrize(game)
    played = sym.game
    report = {
        "command": "symmetrize",
        "game": _game_meta(cfg, game),
        "shift": str(sym.shift),
        "block_split": sym.block_split,
        "C": gameio.matrix_to_json(sym.C),
    }
    if cfg.output_format == "nfg-text":
        data = gameio.serialize_game(played, "nfg-text")
        return Outcome(0, report, data.decode().rstrip("\n"), artifact=data)
    text = f"{played.label}  shift={sym.shift}  block_split={sym.block_split}\n\n" + _matrix_text(
        "C", gameio.matrix_to_json(sym.C))
    return Outcome(0, report, text, artifact=gameio.serialize_game(played, "json"))


def cmd_pair_map(cfg: RunConfig) -> Outcome:
    game = build_rank1_game(cfg.params)
    sym = symmetrize(game)
    if cfg.support is not None:
        eq1 = build_support_equilibrium(game, cfg.support)
        eq2 = build_support_equilibrium(game, cfg.support2)
        paired = [pair_to_equilibrium(sym, eq1, eq2)]
    else:
        paired = product_equilibria(sym, enumerate_constructed_equilibria(cfg.params, cap=cfg.caps["construct"]))
    played = sym.game
    passed = sum(bool(is_nash(played, e.x, e.y)) for e in paired)
    distinct = len(set(paired)) == len(paired)
    report = {
        "command": "pair-map",
        "game": _game_meta(cfg, game),
        "shift": str(sym.shift),
        "count": len(paired),
        "nash_passed": passed,
        "distinct": distinct,
        "equilibria": [gameio.profile_to_dict(e, 1) for e in paired],
    }
    rows = [[_vec(e.x), _vec(e.y), e.payoff_row, e.payoff_col] for e in paired]
    text = (f"{played.label}  paired={len(paired)}  nash_passed={passed}  distinct={str(distinct).lower()}\n\n"
            + _table(["player 1", "player 2", "payoff 1", "payoff 2"], rows))
    ok = passed == len(paired) and distinct
    return Outcome(0 if ok else 1, report, text)


def cmd_murty(cfg: RunConfig) -> Outcome:
    lp = murty_instance(cfg.n, cfg.lp_sense)
    trace = trace_path(lp)
    report = {
        "command": "murty",
        "n": cfg.n,
        "sense": cfg.lp_sense.value,
        "pivot_rule": trace.pivot_rule,
        "c": gameio.vector_to_json(lp.c),
        "b": gameio.vector_to_json(lp.b),
        "caveat": MURTY_CAVEAT,
    }
    if trace.unbounded:
        report.update(outcome="unbounded for all lambda", segments=None)
        text = (f"murty n={cfg.n} sense={cfg.lp_sense.value}: unbounded for all lambda\n"
                "explanation: c > 0, A >= 0 and every constraint is a lower bound, so increasing "
                "any z_j keeps the point feasible and the objective grows without limit.")
        return Outcome(0, report, text)

    lo = min(trace.breakpoints + [Fraction(-4)]) - 1
    hi = max(trace.breakpoints + [Fraction(8)]) + 1
    grid = lambda_grid(lo, hi, cfg.grid_step)
    mismatches = []
    for lam, status, value in grid_oracle(lp, grid):
        traced = trace.value(lam)
        if not ((status is Status.OPTIMAL and traced == value) or (status is Status.INFEASIBLE and traced is None)):
            mismatches.append(str(lam))
    segs = [
        {
            "lambda_lo": None if s.lambda_lo is None else str(s.lambda_lo),
            "lambda_hi": None if s.lambda_hi is None else str(s.lambda_hi),
            "basis": list(s.basis),
            "value_slope": str(s.value_slope),
            "value_intercept": str(s.value_intercept),
        }
        for s in trace.segments
    ]
    report.update(
        outcome="traced",
        segment_count=len(trace.segments),
        breakpoints=[str(b) for b in trace.breakpoints],
        segments=segs,
        infeasible_below=trace.infeasible_below,
        infeasible_above=trace.infeasible_above,
        grid={"lo": str(lo), "hi": str(hi), "step": str(cfg.grid_step), "points": len(grid)},
        grid_mismatches=mismatches,
        agrees=not mismatches,
    )
    rows = [["-inf" if s.lambda_lo is None else s.lambda_lo, "+inf" if s.lambda_hi is None else s.lambda_hi,
             list(s.basis), f"{s.value_intercept} + {s.value_slope}*lambda"] for s in trace.segments]
    text = (f"murty n={cfg.n} sense={cfg.lp_sense.value}  segments={len(trace.segments)}  "
            f"grid_points={len(grid)}  agrees={str(not mismatches).lower()}\n\n"
            + _table(["lambda from", "lambda to", "basis", "optimal value"], rows)
            + f"\n\nnote: {MURTY_CAVEAT}")
    return Outcome(0 if not mismatches else 1, report, text)


DISPATCH: dict[str, Callable[[RunConfig], Outcome]] = {
    "generate": cmd_generate,
    "construct": cmd_construct,
    "enumerate": cmd_enumerate,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "nondegenerate": cmd_nondegenerate,
    "rank": cmd_rank,
    "lambda": cmd_lambda,
    "symmetrize": cmd_symmetrize,
    "pair-map": cmd_pair_map,
    "murty": cmd_murty,
}


def run(cfg: RunConfig) -> Outcome:
    try:
        return DISPATCH[cfg.command](cfg)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        report = {"command": cfg.command, "error": type(exc).__name__, "message": str(exc)}
        for attr in ("line", "column", "index"):
            if hasattr(exc, attr):
                report[attr] = getattr(exc, attr)
        return Outcome(3, report, f"error: {type(exc).__name__}: {exc}")


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(f"rank1games: error: {exc}", file=sys.stderr)
        return 2
    out = run(cfg)
    if cfg.output_format == "json" and cfg.command != "generate":
        text = gameio.dumps_report(out.report)
    else:
        text = out.table + "\n"
    stream = sys.stderr if out.status == 3 and cfg.output_format != "json" else sys.stdout
    stream.write(text)
    if cfg.output_path is not None and out.status != 3:
        if out.artifact is not None and cfg.command in GAME_OUTPUT:
            cfg.output_path.write_bytes(out.artifact)
        else:
            cfg.output_path.write_text(gameio.dumps_report(out.report))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
