"""Solvability decision by complete search.

solve() runs a depth-first search over move sequences with a memo set of
canonical state encodings; a state proved non-winning is never re-expanded.
The classification (Solvable / Unsolvable) is independent of exploration
order; the witness follows the fixed move-ordering heuristic (ray toward
the target first, ties by row-major coordinate then U,R,D,L; zero-effect
moves explored last).

Zero-effect moves can in fact be pruned soundly: dropping a move that fills
nothing yields a board whose filled set is equal and whose tile set is a
subset, and solvability is monotone in both (a solving sequence for the
smaller board replays on the larger one, filling at least as much).  The
prune stays opt-in (prune_zero_effect) and off by default; the default
search explores such moves last instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import search
from .board import Board, Move, apply_move, is_solved
from .errors import NotATile, OutOfBounds, ParseError, ReplayError, ZhedError

_DIR_BY_INDEX = "URDL"
_INDEX_BY_DIR = {d: i for i, d in enumerate(_DIR_BY_INDEX)}


@dataclass(frozen=True)
class SolveLimits:
    """Search budget; None means unlimited.  Both must be positive when set."""
    max_states: int | None = None
    max_millis: int | None = None

    def __post_init__(self):
        if self.max_states is not None and self.max_states <= 0:
            raise ValueError("max_states must be positive")
        if self.max_millis is not None and self.max_millis <= 0:
            raise ValueError("max_millis must be positive")


UNLIMITED = SolveLimits()


@dataclass(frozen=True)
class Solvable:
    moves: tuple[Move, ...]
    states_visited: int


@dataclass(frozen=True)
class Unsolvable:
    states_visited: int


@dataclass(frozen=True)
class ResourceExhausted:
    states_visited: int


SolveResult = Solvable | Unsolvable | ResourceExhausted


def encode_move(board: Board, move: Move) -> int:
    return (move.row * board.width + move.col) * 4 + _INDEX_BY_DIR[move.direction]


def decode_move(board: Board, encoded: int) -> Move:
    idx, d = encoded >> 2, encoded & 3
    return Move(idx // board.width, idx % board.width, _DIR_BY_INDEX[d])


def solve(board: Board, limits: SolveLimits | None = None, *,
          prune_zero_effect: bool = False) -> SolveResult:
    """Decide solvability; complete within the given limits.

    Solvable results carry a witness that replays to a solved board (checked
    before returning); Unsolvable means no move sequence fills the target.
    When a limit stops the search first, ResourceExhausted reports the memo
    insertion count reached.
    """
    limits = limits or UNLIMITED
    target = board.target[0] * board.width + board.target[1]
    status, encoded, states = search.solve(
        board.cells, board.width, board.height, target,
        limits.max_states or 0, limits.max_millis or 0, prune_zero_effect)
    if status == search.SOLVED:
        moves = tuple(decode_move(board, m) for m in encoded)
        if not is_solved(replay(board, moves)):
            raise AssertionError("solver returned a witness that does not solve the board")
        return Solvable(moves, states)
    if status == search.UNSOLVED:
        return Unsolvable(states)
    return ResourceExhausted(states)


def replay(board: Board, moves) -> Board:
    """Fold apply_move over the sequence; annotates failures with the index."""
    current = board
    for i, move in enumerate(moves):
        try:
            current = apply_move(current, move)
        except (NotATile, OutOfBounds) as exc:
            raise ReplayError(i, exc) from exc
    return current


# -- solution trace format ----------------------------------------------------
#
# One move per line: "<row> <col> <U|D|L|R>".  Lines starting with '#' are
# comments; blank lines are ignored.

def render_trace(moves) -> str:
    return "".join(f"{m.row} {m.col} {m.direction}\n" for m in moves)


def parse_trace(text: str) -> list[Move]:
    moves = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[2] not in _INDEX_BY_DIR:
            raise ParseError("expected '<row> <col> <U|D|L|R>'", lineno)
        try:
            moves.append(Move(int(parts[0]), int(parts[1]), parts[2]))
        except ValueError:
            raise ParseError("non-integer move coordinate", lineno) from None
    return moves
