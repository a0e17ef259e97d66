"""Executable certification of the gadget laws and the reduction.

Gadget-level checks run full searches over isolated gadget boards: the
threshold law (target fillable iff enough sources pre-filled) must hold
under every move order, fills must stay inside the declared bounding box,
variable strips must never feed readers on both sides, and a crossover
played in the wrong order must perturb the horizontal gadget's reach by
exactly one square.

The equivalence suite compares sat_oracle against solve(compile(F)) over
small formula families and replays the intended solution on satisfiable
instances.  A report never claims agreement when the solver ran out of
budget; such outcomes are carried separately.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import reducer, rpm3sat
from .board import BLANK, Board, Move, is_solved, render_board
from .errors import CertificationFailure, NotEmbeddable
from .gadgets import instantiate, make_threshold, make_variable, rect_union
from .rpm3sat import Formula, render_instance, sat_oracle
from .solver import (ResourceExhausted, Solvable, SolveLimits, Unsolvable,
                     render_trace, replay, solve)
from . import search

CERT_B_MAX = 6  # search-space guard for exhaustive threshold certification


@dataclass
class GadgetReport:
    gadget: str
    parameters: dict
    verdicts: dict = field(default_factory=dict)
    containment_ok: bool = True
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.containment_ok


@dataclass
class EquivalenceReport:
    formula: str
    oracle_satisfiable: bool
    solver_verdict: str         # "solvable" | "unsolvable" | "exhausted"
    states_visited: int
    replay_ok: bool | None      # None when the formula is unsatisfiable
    agreement: bool | None      # None when the solver was exhausted

    @property
    def exhausted(self) -> bool:
        return self.solver_verdict == "exhausted"


def _save_artifact(artifacts_dir, name: str, board: Board, moves=None) -> None:
    if artifacts_dir is None:
        return
    path = Path(artifacts_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / f"{name}.board").write_text(render_board(board), encoding="utf-8")
    if moves is not None:
        (path / f"{name}.trace").write_text(render_trace(moves), encoding="utf-8")


def _explore_board(board: Board, limits: SolveLimits):
    target = board.target[0] * board.width + board.target[1]
    return search.explore(board.cells, board.width, board.height, target,
                          limits.max_states or 0, limits.max_millis or 0)


def certify_threshold(b_max: int = 5, k_max: int | None = None,
                      shifted: bool = False, limits: SolveLimits | None = None,
                      artifacts_dir=None) -> GadgetReport:
    """Threshold law and containment, exhaustively.

    For every gap count b <= b_max and every subset of pre-filled sources,
    one full walk of the isolated gadget's state space decides fillability
    of every k's target at once (a cell is fillable iff some reachable
    state fills it) and yields the union of all filled cells for the
    containment check.
    """
    if b_max > CERT_B_MAX:
        raise CertificationFailure(f"b_max {b_max} exceeds exhaustive guard {CERT_B_MAX}")
    limits = limits or SolveLimits()
    report = GadgetReport(gadget="shifted-threshold" if shifted else "threshold",
                          parameters={"b_max": b_max, "k_max": k_max, "shifted": shifted})
    for b in range(1, b_max + 1):
        bp = make_threshold((2, 2), "H", "R", b, b, shifted=shifted)
        r0, c0, r1, c1 = rect_union(bp.bbox, (*bp.target, *bp.target))
        width, height = c1 + 2, r1 + 2
        sigma = 1 if shifted else 0
        last = bp.tiles[-1]
        for subset in itertools.product((0, 1), repeat=b):
            j = sum(subset)
            prefills = tuple(bp.sources[i] for i in range(b) if subset[i])
            work = make_threshold((2, 2), "H", "R", b, b, shifted=shifted,
                                  prefilled=prefills)
            board = instantiate([work], work.target, width=width, height=height)
            fillable, union, states, complete = _explore_board(board, limits)
            if not complete:
                report.failures.append(f"b={b} subset={subset}: search budget exceeded")
                continue
            for k in range(1, min(k_max or b, b) + 1):
                target = (2, 2 + 2 * b + k + 1 + sigma)
                got = bool(union[target[0] * width + target[1]])
                want = j >= k
                report.verdicts[(b, k, subset)] = got
                if got != want:
                    report.failures.append(
                        f"b={b} k={k} j={j} subset={subset}: fillable={got}, law says {want}")
                    counter = Board(width, height, target, board.cells)
                    witness = None
                    if got:
                        result = solve(counter, limits)
                        witness = result.moves if isinstance(result, Solvable) else None
                    _save_artifact(artifacts_dir,
                                   f"threshold-b{b}-k{k}-j{j}", counter, witness)
            # containment over the whole frontier
            rr0, cc0, rr1, cc1 = work.bbox
            for idx, filled in enumerate(union):
                if not filled:
                    continue
                r, c = divmod(idx, width)
                if not (rr0 <= r <= rr1 and cc0 <= c <= cc1):
                    report.containment_ok = False
                    report.failures.append(
                        f"b={b} subset={subset}: fill at {(r, c)} escapes bbox {work.bbox}")
                    escape = Board(width, height, (r, c), board.cells)
                    result = solve(escape, limits)
                    witness = result.moves if isinstance(result, Solvable) else None
                    _save_artifact(artifacts_dir, f"containment-b{b}-j{j}", escape, witness)
    return report


def _activation_reach(board: Board, blueprint, extra_prefills=()) -> int:
    """Cells filled beyond the last tile after the intended activation."""
    state = board
    if extra_prefills:
        cells = bytearray(board.cells)
        for r, c in extra_prefills:
            cells[r * board.width + c] = BLANK
        state = Board(board.width, board.height, board.target, bytes(cells))
    state = replay(state, blueprint.activation_order)
    dr, dc = blueprint.delta
    r, c = blueprint.tiles[-1]
    reach = 0
    r, c = r + dr, c + dc
    while 0 <= r < state.height and 0 <= c < state.width and state.at(r, c) != 0:
        reach += 1
        r, c = r + dr, c + dc
    return reach


def certify_variable(length: int = 8, artifacts_dir=None) -> GadgetReport:
    """Split safety: readers on both sides never fire together.

    Exhausts all 2^L left/right assignments; a reader at distance d is
    reached iff the strip's reach on that side is at least d, and readers
    sit at distances L/2+1 .. L.
    """
    if length > 10:
        raise CertificationFailure(f"L={length} exceeds the exhaustiveness bound 10")
    report = GadgetReport(gadget="variable", parameters={"L": length})
    half = length // 2
    bp = make_variable((2, 2 + 3 * half), length)
    width = bp.bbox[3] + 2
    board = instantiate([bp], (0, 0), width=width, height=5)
    for dirs in itertools.product("LR", repeat=length):
        x = dirs.count("L")
        y = length - x
        for order in (range(length), reversed(range(length))):
            moves = [Move(bp.row, bp.col0 + i, dirs[i]) for i in order]
            end = replay(board, moves)
            left = right = 0
            c = bp.col0 - 1
            while c >= 0 and end.at(bp.row, c) != 0:
                left += 1
                c -= 1
            c = bp.col0 + length
            while c < width and end.at(bp.row, c) != 0:
                right += 1
                c += 1
            if left != x or right != y:
                report.failures.append(
                    f"dirs={''.join(dirs)}: reach ({left},{right}), expected ({x},{y})")
                _save_artifact(artifacts_dir, f"variable-{''.join(dirs)}", end)
            if left >= half + 1 and right >= half + 1:
                report.failures.append(
                    f"dirs={''.join(dirs)}: readers reachable on both sides")
                _save_artifact(artifacts_dir, f"variable-split-{''.join(dirs)}", end)
        report.verdicts[dirs] = (x, y)
    return report


def certify_crossover(artifacts_dir=None) -> GadgetReport:
    """Crossover order tolerance.

    Builds a horizontal and a vertical threshold gadget sharing a blank
    intersection.  Horizontal-first play preserves both laws with the
    vertical k already incremented; vertical-first play extends the
    horizontal gadget's reach by exactly one square.
    """
    report = GadgetReport(gadget="crossover", parameters={})

    def build():
        h = make_threshold((6, 2), "H", "R", 3, 1)
        v = make_threshold((9, 7), "V", "U", 3, 1)
        assert (6, 7) in h.sources and (6, 7) in v.sources
        from .gadgets import make_crossover
        spec = make_crossover(h, v, (6, 7))
        return h, v, spec

    h, v, spec = build()
    board = instantiate([h, v], v.target, width=16, height=13)
    if board.at(*spec.intersection) != 0:
        report.failures.append("intersection square is not empty before play")

    externals = [s for s in h.sources if s != spec.intersection]
    for j_h in range(len(externals) + 1):
        # reach of the horizontal gadget alone, with j_h sources pre-filled
        h2, v2, _ = build()
        b2 = instantiate([h2], (0, 0), width=16, height=13)
        ext2 = [s for s in h2.sources if s != spec.intersection]
        alone = _activation_reach(b2, h2, ext2[:j_h])

        # vertical first, then horizontal: reach grows by exactly one
        h3, v3, _ = build()
        b3 = instantiate([h3, v3], v3.target, width=16, height=13)
        cells = bytearray(b3.cells)
        for r, c in [s for s in h3.sources if s != spec.intersection][:j_h]:
            cells[r * b3.width + c] = BLANK
        b3 = Board(b3.width, b3.height, b3.target, bytes(cells))
        after_v = replay(b3, v3.activation_order)
        reach = _activation_reach(after_v, h3)
        report.verdicts[("vertical-first", j_h)] = reach
        if reach != alone + 1:
            report.failures.append(
                f"vertical-first with j={j_h}: horizontal reach {reach}, "
                f"expected {alone} + 1")
            _save_artifact(artifacts_dir, f"crossover-vfirst-j{j_h}", after_v)

    # horizontal first: the vertical gadget obeys its original law
    # (one real source) relative to the moved target
    for j_v in (0, 1):
        h4, v4, spec4 = build()
        b4 = instantiate([h4, v4], v4.target, width=16, height=13)
        cells = bytearray(b4.cells)
        for r, c in [s for s in v4.sources if s != spec4.intersection][:j_v]:
            cells[r * b4.width + c] = BLANK
        for r, c in h4.sources[:1]:  # let the horizontal gadget activate
            cells[r * b4.width + c] = BLANK
        b4 = Board(b4.width, b4.height, b4.target, bytes(cells))
        state = replay(b4, h4.activation_order)
        state = replay(state, v4.activation_order)
        got = is_solved(state)
        want = j_v >= 1
        report.verdicts[("horizontal-first", j_v)] = got
        if got != want:
            report.failures.append(
                f"horizontal-first with j={j_v}: target filled={got}, law says {want}")
            _save_artifact(artifacts_dir, f"crossover-hfirst-j{j_v}", state)
    return report


def certify_shift_equivalence(b_max: int = 4, limits: SolveLimits | None = None,
                              artifacts_dir=None) -> GadgetReport:
    """Shifted and unshifted gadgets share one verdict table."""
    plain = certify_threshold(b_max, None, False, limits, artifacts_dir)
    shifted = certify_threshold(b_max, None, True, limits, artifacts_dir)
    report = GadgetReport(gadget="shift-equivalence", parameters={"b_max": b_max})
    report.failures = plain.failures + shifted.failures
    report.containment_ok = plain.containment_ok and shifted.containment_ok
    for key, verdict in plain.verdicts.items():
        if shifted.verdicts.get(key) != verdict:
            report.failures.append(f"verdicts diverge at (b, k, subset)={key}")
    report.verdicts = plain.verdicts
    return report


# -- equivalence ----------------------------------------------------------------

def enumerate_formulas(max_vars: int, max_clauses: int):
    """All monotone formulas (clause multisets) over 1..max_vars variables."""
    for n in range(1, max_vars + 1):
        universe = []
        for size in (1, 2, 3):
            for vars_ in itertools.combinations(range(1, n + 1), size):
                for pol in (rpm3sat.POSITIVE, rpm3sat.NEGATIVE):
                    universe.append(rpm3sat.Clause(pol, vars_))
        for m in range(1, max_clauses + 1):
            for clauses in itertools.combinations_with_replacement(universe, m):
                yield Formula(n, clauses)


def check_instance(formula: Formula, limits: SolveLimits,
                   params: reducer.LayoutParams | None = None) -> EquivalenceReport:
    embedding = rpm3sat.auto_embed(formula)
    puzzle = reducer.compile(formula, embedding, params)
    assignment = sat_oracle(formula)
    result = solve(puzzle.board, limits)
    if isinstance(result, Solvable):
        verdict = "solvable"
    elif isinstance(result, Unsolvable):
        verdict = "unsolvable"
    else:
        verdict = "exhausted"
    replay_ok = None
    if assignment is not None:
        end = replay(puzzle.board, reducer.intended_solution(puzzle, assignment))
        replay_ok = is_solved(end)
    agreement = None
    if verdict != "exhausted":
        agreement = (assignment is not None) == (verdict == "solvable")
    return EquivalenceReport(
        formula=render_instance(formula).strip().replace("\n", "; "),
        oracle_satisfiable=assignment is not None,
        solver_verdict=verdict,
        states_visited=result.states_visited,
        replay_ok=replay_ok,
        agreement=agreement)


def equivalence_suite(max_vars: int = 3, max_clauses: int = 2,
                      limits: SolveLimits | None = None,
                      params: reducer.LayoutParams | None = None,
                      fail_fast: bool = False) -> list[EquivalenceReport]:
    """sat_oracle vs solve(compile(F)) over every auto-embeddable formula.

    With fail_fast, stops at the first disagreement or budget exhaustion;
    the remaining instances still get their intended-solution replay check.
    """
    limits = limits or SolveLimits(max_states=10_000_000)
    reports = []
    solver_enabled = True
    for formula in enumerate_formulas(max_vars, max_clauses):
        try:
            embedding = rpm3sat.auto_embed(formula)
        except NotEmbeddable:
            continue
        if solver_enabled:
            report = check_instance(formula, limits, params)
            if fail_fast and (report.exhausted or report.agreement is False):
                solver_enabled = False
        else:
            puzzle = reducer.compile(formula, embedding, params)
            assignment = sat_oracle(formula)
            replay_ok = None
            if assignment is not None:
                end = replay(puzzle.board, reducer.intended_solution(puzzle, assignment))
                replay_ok = is_solved(end)
            report = EquivalenceReport(
                formula=render_instance(formula).strip().replace("\n", "; "),
                oracle_satisfiable=assignment is not None,
                solver_verdict="skipped",
                states_visited=0, replay_ok=replay_ok, agreement=None)
        reports.append(report)
    return reports


def random_satisfiable_formula(rng: random.Random, max_vars: int = 8,
                               max_clauses: int = 6) -> Formula:
    """Seeded rejection sampler: auto-embeddable and satisfiable."""
    while True:
        n = rng.randint(1, max_vars)
        m = rng.randint(1, max_clauses)
        clauses = []
        for _ in range(m):
            size = rng.randint(1, min(3, n))
            vars_ = tuple(sorted(rng.sample(range(1, n + 1), size)))
            pol = rng.choice((rpm3sat.POSITIVE, rpm3sat.NEGATIVE))
            clauses.append(rpm3sat.Clause(pol, vars_))
        formula = Formula(n, tuple(clauses))
        try:
            rpm3sat.auto_embed(formula)
        except NotEmbeddable:
            continue
        if sat_oracle(formula) is None:
            continue
        return formula


def intended_replay_suite(count: int = 20, seed: int = 2024,
                          max_vars: int = 8, max_clauses: int = 6,
                          params: reducer.LayoutParams | None = None):
    """Replay the intended solution on seeded random satisfiable instances.

    Returns (ok_count, results) where each result carries the formula, the
    replay verdict, and the move-count / tile-count bound check.
    """
    rng = random.Random(seed)
    results = []
    ok = 0
    for _ in range(count):
        formula = random_satisfiable_formula(rng, max_vars, max_clauses)
        puzzle = reducer.compile(formula, None, params)
        assignment = sat_oracle(formula)
        moves = reducer.intended_solution(puzzle, assignment)
        solved = is_solved(replay(puzzle.board, moves))
        bound_ok = len(moves) <= puzzle.board.tile_count()
        if solved and bound_ok:
            ok += 1
        results.append({
            "formula": render_instance(formula).strip().replace("\n", "; "),
            "solved": solved,
            "moves": len(moves),
            "tiles": puzzle.board.tile_count(),
            "bound_ok": bound_ok,
        })
    return ok, results
