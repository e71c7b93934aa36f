"""Exact serialization of games and equilibria.

Two game formats:

``json``
    ``{"A": [["9", "54"], ...], "B": [...], "label": ..., "schema": ...}``
    with every number an exact ``"num/den"`` (or integer) string.

``nfg-text``
    Gambit-style strategic form: a header
    ``NFG 1 R "label" { "Player 1" "Player 2" } { m n }`` followed by the
    payoff pairs ``a_ij b_ij`` with the row index varying fastest.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional, Sequence

from .construct import BimatrixGame
from .exact import RatMatrix
from .profile import EquilibriumProfile, Support

GAME_SCHEMA = "rank1games.game/1"
REPORT_SCHEMA = "rank1games.report/1"
FORMATS = ("json", "nfg-text")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class StructureError(ValueError):
    """Well-formed input whose dimensions do not fit together."""


def fmt(q: Fraction) -> str:
    return str(q)


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise ParseError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def matrix_to_json(M: RatMatrix) -> list[list[str]]:
    return [[fmt(v) for v in M.row(i)] for i in range(M.rows)]


def matrix_from_json(rows: Any, name: str) -> RatMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise StructureError(f"{name} must be a nonempty list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise StructureError(f"{name} has ragged or empty rows")
    return RatMatrix.from_rows([[parse_rational(v) for v in r] for r in rows])


def game_to_dict(game: BimatrixGame) -> dict:
    return {
        "A": matrix_to_json(game.A),
        "B": matrix_to_json(game.B),
        "label": game.label,
        "schema": GAME_SCHEMA,
    }


def game_from_dict(data: Any) -> BimatrixGame:
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise StructureError("game object needs keys 'A' and 'B'")
    A = matrix_from_json(data["A"], "A")
    B = matrix_from_json(data["B"], "B")
    if A.shape != B.shape:
        raise StructureError(f"A is {A.rows}x{A.cols} but B is {B.rows}x{B.cols}")
    return BimatrixGame(A, B, str(data.get("label", "")))


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", " ")


def to_nfg(game: BimatrixGame) -> str:
    m, n = game.shape
    pairs = []
    for j in range(n):
        for i in range(m):
            pairs.append(f"{fmt(game.A[i, j])} {fmt(game.B[i, j])}")
    header = f'NFG 1 R "{_escape(game.label)}" {{ "Player 1" "Player 2" }} {{ {m} {n} }}'
    return header + "\n\n" + "\n".join(pairs) + "\n"


_TOKEN = re.compile(r'\s+|(?P<str>"(?:[^"\\]|\\.)*")|(?P<brace>[{}])|(?P<word>[^\s{}"]+)')


def _tokens(text: str):
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError("unterminated string", line, pos - line_start + 1)
        kind = mt.lastgroup
        if kind is not None:
            yield kind, mt.group(kind), line, pos - line_start + 1
        chunk = mt.group(0)
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = mt.end()


def from_nfg(text: str) -> BimatrixGame:
    toks = list(_tokens(text))
    it = iter(toks)
    last = (1, 1)

    def take(kind: Optional[str] = None, value: Optional[str] = None):
        nonlocal last
        try:
            tk = next(it)
        except StopIteration:
            raise ParseError(f"unexpected end of input, expected {value or kind}", *last) from None
        last = (tk[2], tk[3])
        if (kind and tk[0] != kind) or (value and tk[1] != value):
            raise ParseError(f"expected {value or kind}, got {tk[1]!r}", tk[2], tk[3])
        return tk

    take("word", "NFG")
    take("word", "1")
    take("word", "R")
    label = take("str")[1][1:-1].replace('\\"', '"').replace("\\\\", "\\")
    take("brace", "{")
    players = 0
    while True:
        tk = take()
        if tk[1] == "}":
            break
        if tk[0] != "str":
            raise ParseError(f"expected player name, got {tk[1]!r}", tk[2], tk[3])
        players += 1
    if players != 2:
        raise StructureError(f"expected 2 players, found {players}")
    take("brace", "{")
    dims = []
    while True:
        tk = take()
        if tk[1] == "}":
            break
        if tk[0] != "word" or not tk[1].isdigit():
            raise ParseError(f"expected a strategy count, got {tk[1]!r}", tk[2], tk[3])
        dims.append(int(tk[1]))
    if len(dims) != 2 or min(dims) < 1:
        raise StructureError(f"expected two positive strategy counts, got {dims}")
    m, n = dims
    values = []
    for kind, val, line, col in it:
        if kind == "str":
            continue  # optional comment string after the header
        if kind != "word":
            raise ParseError(f"unexpected {val!r}", line, col)
        try:
            values.append(Fraction(val))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad payoff {val!r}", line, col) from None
        last = (line, col)
    if len(values) != 2 * m * n:
        if len(values) < 2 * m * n:
            raise ParseError(f"expected {2 * m * n} payoffs, found {len(values)} (truncated input?)", *last)
        raise StructureError(f"expected {2 * m * n} payoffs, found {len(values)}")
    A = [[Fraction(0)] * n for _ in range(m)]
    B = [[Fraction(0)] * n for _ in range(m)]
    k = 0
    for j in range(n):
        for i in range(m):
            A[i][j], B[i][j] = values[k], values[k + 1]
            k += 2
    return BimatrixGame(RatMatrix.from_rows(A), RatMatrix.from_rows(B), label)


def serialize_game(game: BimatrixGame, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(game_to_dict(game), separators=(",", ":")) + "\n").encode()
    if format == "nfg-text":
        return to_nfg(game).encode()
    raise ValueError(f"unknown game format {format!r}; choose from {FORMATS}")


def parse_game(data: bytes | str, format: str = "json") -> BimatrixGame:
    text = data.decode() if isinstance(data, bytes) else data
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return game_from_dict(obj)
    if format == "nfg-text":
        return from_nfg(text)
    raise ValueError(f"unknown game format {format!r}; choose from {FORMATS}")


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [fmt(t) for t in v]


def vector_from_json(v: Any, name: str) -> tuple[Fraction, ...]:
    if not isinstance(v, list):
        raise StructureError(f"{name} must be a list")
    return tuple(parse_rational(t) for t in v)


def support_to_json(S: Support, first: int = 1) -> list[int]:
    return list(S.labels(first))


def profile_to_dict(eq: EquilibriumProfile, first: int = 1) -> dict:
    out = {
        "support_x": support_to_json(eq.support_x, first),
        "support_y": support_to_json(eq.support_y, first),
        "x": vector_to_json(eq.x),
        "y": vector_to_json(eq.y),
        "payoff_row": fmt(eq.payoff_row),
        "payoff_col": fmt(eq.payoff_col),
    }
    if eq.weights:
        out["weights"] = list(eq.weights)
    return out


def profile_from_dict(data: Any) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Strategy pair ``(x, y)`` from a profile object; other keys are ignored."""
    if not isinstance(data, dict) or "x" not in data or "y" not in data:
        raise StructureError("profile object needs keys 'x' and 'y'")
    return vector_from_json(data["x"], "x"), vector_from_json(data["y"], "y")


def dumps_report(report: dict) -> str:
    return json.dumps({"schema": REPORT_SCHEMA, **report}, indent=2) + "\n"
