"""ZHED puzzle engine, exhaustive solver, and RPM-3SAT board compiler.

The hot search loops live in a compiled extension (search_fast) with a
pure-Python twin (search_slow) selected automatically at import; see
zhedkit.search.KERNEL for which one is active.
"""

from .board import (BLANK, EMPTY, Board, Move, apply_move, canonical_encoding,
                    is_solved, legal_moves, parse_board, render_board)
from .solver import (ResourceExhausted, Solvable, SolveLimits, Unsolvable,
                     parse_trace, render_trace, replay, solve)

__version__ = "0.1.0"

__all__ = [
    "BLANK", "EMPTY", "Board", "Move", "apply_move", "canonical_encoding",
    "is_solved", "legal_moves", "parse_board", "render_board",
    "ResourceExhausted", "Solvable", "SolveLimits", "Unsolvable",
    "parse_trace", "render_trace", "replay", "solve", "__version__",
]
