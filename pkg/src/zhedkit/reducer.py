"""Compiler from RPM-3SAT instances to ZHED boards.

Layout scheme (virtual coordinates, normalized before instantiation):

* Variables sit on the central row (base_row), left to right in embedding
  order, spaced so that no two footprints touch.
* A positive clause at level l gets a horizontal bar (its OR gadget) on row
  base_row - (2*pitch*l - 1); negative clauses mirror below.  All bar rows
  share parity, which keeps every crossover intersection on a source gap.
* A clause's literal wires attach on the right side of its variables for
  positive clauses and on the left side for negative ones, so expanding a
  variable rightward (true) feeds exactly the positive readers and leftward
  (false) the negative ones.  Wires run on even columns, 4 apart.
* Each clause bar ends in a reserved corridor column where its propagator
  rises (or descends) to the extreme AND row, crossing the bars of clauses
  nested above it through crossover gadgets.  A clause crossed x times gets
  thick wires of g = x + 1 parallel wires, so the crossings alone can never
  satisfy it.
* The two extreme AND gadgets run rightward to a shared far-right column,
  where a final vertical AND (k=2) drops to the puzzle target near the
  bottom right.  Shift gadgets absorb every parity mismatch: a clause bar
  is shifted when its thickness is odd, a propagator when its crossover
  count is even, and the extreme ANDs as their extension to the shared
  column demands.

The certificate maps every formula element to its gadget anchors; the
intended-solution generator and the verifier both consume it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import Board, Move
from .errors import (EmbeddingInvalid, LayoutOverflow, ParityUnfixable,
                     UnsatisfiedAssignment)
from .gadgets import (ChainedPair, CrossoverSpec, GadgetBlueprint, ReadLink,
                      ThickWire, VariableBlueprint, chain, instantiate,
                      make_crossover, make_threshold, make_variable,
                      rect_union, rects_intersect)
from .rpm3sat import (Embedding, Formula, NEGATIVE, POSITIVE, auto_embed,
                      validate_embedding)


@dataclass(frozen=True)
class LayoutParams:
    gadget_margin: int = 2
    base_row: int = 0
    wire_separation: int = 4
    row_pitch: int = 3

    def __post_init__(self):
        if self.gadget_margin < 1:
            raise EmbeddingInvalid("gadget_margin must be >= 1")
        if self.wire_separation != 4:
            raise EmbeddingInvalid("wire separation is fixed at 4")
        if self.row_pitch < 3:
            raise EmbeddingInvalid("row_pitch must be >= 3")


def unchecked_params(gadget_margin: int, base_row: int = 0,
                     wire_separation: int = 4, row_pitch: int = 3) -> LayoutParams:
    """LayoutParams that skips validation; for adversarial spacing tests."""
    p = object.__new__(LayoutParams)
    object.__setattr__(p, "gadget_margin", gadget_margin)
    object.__setattr__(p, "base_row", base_row)
    object.__setattr__(p, "wire_separation", wire_separation)
    object.__setattr__(p, "row_pitch", row_pitch)
    return p


@dataclass
class ClauseRecord:
    index: int
    polarity: str
    level: int
    g: int
    bar_crossings: int        # x: propagators piercing this clause's bar
    prop_crossings: int       # bars this clause's propagator pierces
    bar: GadgetBlueprint
    wires: list[ThickWire]    # one thick wire per literal, variable order
    propagator: GadgetBlueprint
    corridor_col: int


@dataclass
class VariableRecord:
    index: int
    blueprint: VariableBlueprint
    wire_columns: dict  # (clause index, side) -> list of columns


@dataclass
class Certificate:
    variables: list[VariableRecord]
    clauses: list[ClauseRecord]
    upper: GadgetBlueprint        # extreme AND (or constant emitter) above
    lower: GadgetBlueprint        # and below
    final: GadgetBlueprint
    chains: list[ChainedPair]
    crossovers: list[CrossoverSpec]
    reads: list[ReadLink]
    target: tuple[int, int]

    def gadget_blueprints(self) -> list:
        out = [rec.blueprint for rec in self.variables]
        for cr in self.clauses:
            out.append(cr.bar)
            for tw in cr.wires:
                out.extend(tw.wires)
            out.append(cr.propagator)
        out.extend([self.upper, self.lower, self.final])
        return out


@dataclass
class CompiledPuzzle:
    board: Board
    certificate: Certificate
    formula: Formula
    embedding: Embedding
    params: LayoutParams


# -- internal planning --------------------------------------------------------

@dataclass
class _ClausePlan:
    ci: int
    polarity: str
    level: int
    var_positions: list[int]      # sorted positions of its variables
    lpos: int
    rpos: int
    x_bar: int = 0
    x_prop: int = 0
    crossed: list[int] = field(default_factory=list)  # clause indices whose bar we pierce
    g: int = 1
    bar_shift: int = 0            # 1 when the bar is a shift gadget
    prop_shift: int = 0
    wire_cols: dict = field(default_factory=dict)     # var position -> list of columns
    corridor: int | None = None


def _plan_clauses(formula: Formula, embedding: Embedding) -> list[_ClausePlan]:
    pos_of = {v: i for i, v in enumerate(embedding.var_order)}
    plans = []
    for ci, cl in enumerate(formula.clauses):
        positions = sorted(pos_of[v] for v in cl.vars)
        plans.append(_ClausePlan(
            ci=ci, polarity=cl.polarity, level=embedding.clause_level[ci],
            var_positions=positions, lpos=positions[0], rpos=positions[-1]))
    # crossing structure: the propagator of c pierces the bar of every
    # same-side clause D at a higher level whose bar spans c's corridor,
    # i.e. lpos(D) < rpos(c) <= rpos(D)
    for c in plans:
        for d in plans:
            if d.polarity != c.polarity or d.level <= c.level:
                continue
            if d.lpos < c.rpos <= d.rpos:
                c.x_prop += 1
                c.crossed.append(d.ci)
                d.x_bar += 1
    for c in plans:
        c.g = c.x_bar + 1          # strictly larger than x, minimal
        c.bar_shift = c.g & 1      # keeps the target on an even column
        c.prop_shift = c.x_prop & 1
        c.crossed.sort(key=lambda ci: plans[ci].level)
    return plans


@dataclass
class _WindowItem:
    plan: _ClausePlan
    role: int            # 1 rightmost var here, 2 middle, 3 leftmost
    rear_host: bool      # this window holds the clause's rear tile


@dataclass
class _WindowLayout:
    items: list[_WindowItem] = field(default_factory=list)
    wire_offsets: dict = field(default_factory=dict)   # clause index -> [offsets]
    corridor_offsets: dict = field(default_factory=dict)
    last_wire: int = -1
    rel_min: int = 0
    rel_max: int = -1


def _layout_window(items: list[_WindowItem], margin: int) -> _WindowLayout:
    out = _WindowLayout(items=items)
    for item in items:
        p = item.plan
        # a bar's rear can spill fillable+1 squares behind its rear tile
        # (backward expansions skip filled gaps), plus two for a shift tile
        rear_spill = (len(p.var_positions) * p.g + p.x_bar + 1
                      + 2 * p.bar_shift) if item.rear_host else 0
        if out.rel_max < 0:
            # first item: pokes left of the window start are row-disjoint
            # from everything there; inter-variable spacing absorbs them
            first = 0
        elif item.rear_host:
            first = out.rel_max + margin + 1 + rear_spill
        else:
            first = out.rel_max + margin + 1
        first += first & 1  # wires sit on even columns
        cols = [first + 4 * j for j in range(p.g)]
        out.wire_offsets[p.ci] = cols
        block_end = cols[-1]
        out.last_wire = block_end
        if item.rear_host:
            out.rel_min = min(out.rel_min, first - 1 - rear_spill)
        else:
            out.rel_min = min(out.rel_min, first - 1)
        out.rel_max = max(out.rel_max, block_end + 1)
        if item.role == 1:
            corridor = block_end + p.g + p.bar_shift + 2
            out.corridor_offsets[p.ci] = corridor
            lit = len(p.var_positions)
            bar_right = block_end + lit * p.g + p.x_bar + p.bar_shift + 3
            out.rel_max = max(out.rel_max, bar_right)
        cursor = out.rel_max + 1
    return out


def _window_items(plans, side: str, position: int) -> list[_WindowItem]:
    """Slot order that keeps every wire clear of lower clause bars."""
    role1, role2, role3 = [], [], []
    for p in plans:
        if p.polarity != side or position not in p.var_positions:
            continue
        if position == p.rpos:
            role1.append(_WindowItem(p, 1, rear_host=(p.lpos == p.rpos)))
        elif position == p.lpos:
            role3.append(_WindowItem(p, 3, rear_host=True))
        else:
            role2.append(_WindowItem(p, 2, rear_host=False))
    role1.sort(key=lambda it: (it.plan.level, it.plan.ci))
    role2.sort(key=lambda it: (it.plan.level, it.plan.ci))
    role3.sort(key=lambda it: (-it.plan.level, it.plan.ci))
    return role1 + role2 + role3


def _fit_length(rw: _WindowLayout, lw: _WindowLayout, margin: int) -> int:
    """Smallest usable even L for a variable given its two window layouts."""
    rw_used = bool(rw.items)
    lw_used = bool(lw.items)

    def fits(length: int) -> bool:
        if rw_used and rw.last_wire > length // 2 - 1:
            return False
        if lw_used and lw.last_wire > length // 2 - 1:
            return False
        if rw_used and lw_used:
            if length % 4:
                return False  # window parity needs L divisible by 4
            # left-side spill must stay clear of the right window's pokes
            if 5 * length // 2 + rw.rel_min - lw.rel_max < margin:
                return False
        elif lw_used:
            if length > 2 and length % 4:
                return False
        elif rw_used and length > 2 and length % 4:
            return False
        return True

    if not rw_used and not lw_used:
        return 2
    candidates = [2, 4] + list(range(8, 8 + 4 * (rw.last_wire + lw.last_wire + 32), 4))
    for length in candidates:
        if fits(length):
            return length
    raise LayoutOverflow("no variable length fits the window layout")


# -- compilation ---------------------------------------------------------------

def compile(formula: Formula, embedding: Embedding | None = None,
            params: LayoutParams | None = None) -> CompiledPuzzle:
    """Assemble the complete board for a formula with a valid embedding."""
    params = params or LayoutParams()
    if embedding is None:
        embedding = auto_embed(formula)
    violations = validate_embedding(formula, embedding)
    if violations:
        raise EmbeddingInvalid("; ".join(v.detail for v in violations))

    margin = params.gadget_margin
    base = params.base_row
    n = formula.num_vars
    plans = _plan_clauses(formula, embedding)
    sides = {POSITIVE: [p for p in plans if p.polarity == POSITIVE],
             NEGATIVE: [p for p in plans if p.polarity == NEGATIVE]}

    # propagators spill fillable+1 squares behind their rear tile; the level
    # pitch grows until every spill clears the variable row and lower bars
    pitch = params.row_pitch
    for p in plans:
        spill = p.x_prop + 2 * p.prop_shift
        pitch = max(pitch,
                    -(-(spill + 6) // (2 * p.level)),  # clear the variable row
                    -(-(spill + 5) // 2))              # clear the next bar down


    def bar_row(p: _ClausePlan) -> int:
        off = 2 * pitch * p.level - 1
        return base - off if p.polarity == POSITIVE else base + off

    # extreme AND row offsets (even, both sides)
    and_offset = {}
    for side, members in sides.items():
        need = max(4, margin + 3)
        for p in members:
            lmax = max(q.level for q in members)
            need = max(need, 2 * pitch * lmax + margin + 1)
            need = max(need, 2 * pitch * p.level + 3 * p.x_prop + p.prop_shift + 2)
            if p.crossed:
                ltop = max(plans[ci].level for ci in p.crossed)
                need = max(need, 2 * pitch * ltop + p.x_prop + p.prop_shift + 2)
        and_offset[side] = need + (need & 1)
    and_row = {POSITIVE: base - and_offset[POSITIVE],
               NEGATIVE: base + and_offset[NEGATIVE]}

    # window layouts (relative offsets, independent of L and absolute position)
    window = {}
    for vp in range(n):
        for side in (POSITIVE, NEGATIVE):
            window[(vp, side)] = _layout_window(
                _window_items(plans, side, vp), margin)

    lengths = [_fit_length(window[(vp, POSITIVE)], window[(vp, NEGATIVE)], margin)
               for vp in range(n)]

    # place variables left to right
    var_x: list[int] = []
    prev_right = None
    for vp in range(n):
        length = lengths[vp]
        rw, lw = window[(vp, POSITIVE)], window[(vp, NEGATIVE)]
        left_reach = 3 * length // 2
        if lw.items:
            left_reach = max(left_reach, length - lw.rel_min)
        if rw.items:
            left_reach = max(left_reach, -(3 * length // 2) - rw.rel_min)
        vx = 0 if prev_right is None else prev_right + margin + left_reach
        if length % 4 == 0:
            vx += vx & 1
        elif rw.items:  # L == 2, right window only: start vx + 3 must be even
            vx += (vx & 1) ^ 1
        else:
            vx += vx & 1
        var_x.append(vx)
        right = vx + length - 1 + 3 * length // 2
        if rw.items:
            right = max(right, vx + 3 * length // 2 + rw.rel_max)
        if lw.items:
            right = max(right, vx - length + lw.rel_max)
        prev_right = right

    # absolute wire and corridor columns
    for vp in range(n):
        length = lengths[vp]
        for side, start in ((POSITIVE, var_x[vp] + 3 * length // 2),
                            (NEGATIVE, var_x[vp] - length)):
            w = window[(vp, side)]
            for ci, offsets in w.wire_offsets.items():
                plans[ci].wire_cols[vp] = [start + o for o in offsets]
            for ci, off in w.corridor_offsets.items():
                plans[ci].corridor = start + off

    # blueprints
    variables = []
    for vp in range(n):
        bp = make_variable((base, var_x[vp]), lengths[vp],
                           gadget_id=f"var{embedding.var_order[vp]}")
        variables.append(VariableRecord(embedding.var_order[vp], bp, {}))

    chains: list[ChainedPair] = []
    crossovers: list[CrossoverSpec] = []
    reads: list[ReadLink] = []
    records: list[ClauseRecord] = []
    bars: dict[int, GadgetBlueprint] = {}

    for p in sorted(plans, key=lambda q: q.ci):
        row = bar_row(p)
        up = p.polarity == POSITIVE
        cid = f"clause{p.ci + 1}"
        all_cols = sorted(c for cols in p.wire_cols.values() for c in cols)
        if p.corridor is None:
            raise LayoutOverflow(f"clause {p.ci} never received a corridor")
        origin = (row, all_cols[0] - 1)
        last_col = p.corridor - p.g - 1 - p.bar_shift
        if last_col < all_cols[-1] + 1 or (last_col - origin[1]) % 2:
            raise ParityUnfixable(f"bar extent for clause {p.ci} is inconsistent")
        bar = make_threshold(origin, "H", "R", (last_col - origin[1]) // 2, p.g,
                             shifted=bool(p.bar_shift),
                             fillable=len(p.var_positions) * p.g,
                             kind="clause-or", gadget_id=f"{cid}.or")
        if bar.target != (row, p.corridor):
            raise ParityUnfixable(f"bar target off corridor for clause {p.ci}")
        bars[p.ci] = bar

        wires = []
        for vp in p.var_positions:
            group = []
            for wi, col in enumerate(p.wire_cols[vp]):
                rear = (base + 1, col) if up else (base - 1, col)
                span = 2 * pitch * p.level - 1
                gaps = (span - 1) // 2
                wire = make_threshold(rear, "V", "U" if up else "D", gaps, 1,
                                      fillable=1, kind="wire",
                                      gadget_id=f"{cid}.v{embedding.var_order[vp]}.w{wi}")
                if wire.target != (row, col):
                    raise ParityUnfixable(f"wire misses bar row for clause {p.ci}")
                chains.append(chain(wire, bar))
                anchor = (base, col)
                vb = variables[vp].blueprint
                lo, hi = (vb.right_window if up else vb.left_window)
                if not lo <= col <= hi:
                    raise LayoutOverflow(
                        f"wire column {col} outside attach window {(lo, hi)}")
                reads.append(ReadLink(vb, wire, anchor, "R" if up else "L"))
                variables[vp].wire_columns.setdefault((p.ci, p.polarity), []).append(col)
                group.append(wire)
            wires.append(ThickWire(p.g, tuple(group)))

        # propagator: rear gap on the bar's target, target on the AND row
        # (before its crossover adjustments it stops x short of it)
        r_and = and_row[p.polarity]
        span = abs(row - r_and)
        gaps = (span - 1 - p.x_prop - p.prop_shift) // 2
        if (span - 1 - p.x_prop - p.prop_shift) % 2 or gaps < 1 + p.x_prop:
            raise ParityUnfixable(f"propagator span for clause {p.ci} is inconsistent")
        rear = (row + 1, p.corridor) if up else (row - 1, p.corridor)
        prop = make_threshold(rear, "V", "U" if up else "D", gaps, 1,
                              shifted=bool(p.prop_shift), fillable=1,
                              kind="propagator", gadget_id=f"{cid}.prop")
        chains.append(chain(bar, prop))
        records.append(ClauseRecord(
            index=p.ci, polarity=p.polarity, level=p.level, g=p.g,
            bar_crossings=p.x_bar, prop_crossings=p.x_prop, bar=bar,
            wires=wires, propagator=prop, corridor_col=p.corridor))

    # crossovers, now that every bar exists
    for p in plans:
        rec = records[p.ci]
        for di in p.crossed:
            point = (bar_row(plans[di]), p.corridor)
            crossovers.append(make_crossover(bars[di], rec.propagator, point))
        r_and = and_row[p.polarity]
        if rec.propagator.target != (r_and, p.corridor):
            raise ParityUnfixable(
                f"propagator for clause {p.ci} ends at {rec.propagator.target}, "
                f"wanted {(r_and, p.corridor)}")

    # final column: right of every placed bounding box
    global_right = 0
    for rec in records:
        global_right = max(global_right, rec.bar.bbox[3], rec.propagator.bbox[3],
                           *(w.bbox[3] for tw in rec.wires for w in tw.wires))
    for vr in variables:
        global_right = max(global_right, vr.blueprint.bbox[3])
    final_col = global_right + margin + 1
    for side in (POSITIVE, NEGATIVE):
        members = [rec for rec in records if rec.polarity == side]
        if members:
            natural = max(rec.corridor_col for rec in members) + 1
            final_col = max(final_col, natural + len(members) + 2)

    def make_and(side: str) -> GadgetBlueprint:
        gid = "and.pos" if side == POSITIVE else "and.neg"
        row = and_row[side]
        members = [rec for rec in records if rec.polarity == side]
        if not members:
            # degenerate side: a constant-true emitter, a wire whose single
            # source is pre-filled on the board
            origin = (row, final_col - 4)
            return make_threshold(origin, "H", "R", 1, 1, fillable=1,
                                  kind="emitter", gadget_id=gid,
                                  prefilled=((row, final_col - 3),))
        cols = sorted(rec.corridor_col for rec in members)
        k = len(members)
        shift = (final_col - k - 1 - (cols[-1] + 1)) & 1
        last = final_col - k - 1 - shift
        origin = (row, cols[0] - 1)
        if last < cols[-1] + 1 or (last - origin[1]) % 2:
            raise ParityUnfixable("extreme AND extent is inconsistent")
        bp = make_threshold(origin, "H", "R", (last - origin[1]) // 2, k,
                            shifted=bool(shift), fillable=k,
                            kind="and", gadget_id=gid)
        if bp.target != (row, final_col):
            raise ParityUnfixable("extreme AND target misses the final column")
        for rec in members:
            chains.append(chain(rec.propagator, bp))
        return bp

    upper = make_and(POSITIVE)
    lower = make_and(NEGATIVE)

    span = and_row[NEGATIVE] - and_row[POSITIVE]
    final = make_threshold((and_row[POSITIVE] - 1, final_col), "V", "D",
                           span // 2 + 1, 2, fillable=2, kind="final",
                           gadget_id="final")
    chains.append(chain(upper, final))
    chains.append(chain(lower, final))
    target = final.target

    certificate = Certificate(variables=variables, clauses=records,
                              upper=upper, lower=lower, final=final,
                              chains=chains, crossovers=crossovers,
                              reads=reads, target=target)

    # normalize to a 1-square border and instantiate
    box = None
    for bp in certificate.gadget_blueprints():
        box = bp.bbox if box is None else rect_union(box, bp.bbox)
    box = rect_union(box, (*target, *target))
    dr, dc = 1 - box[0], 1 - box[1]
    for bp in certificate.gadget_blueprints():
        bp.translate(dr, dc)
    certificate.target = (target[0] + dr, target[1] + dc)
    chains2 = [ChainedPair(c.upstream, c.downstream,
                           (c.anchor[0] + dr, c.anchor[1] + dc)) for c in chains]
    crossovers2 = [CrossoverSpec(c.horizontal, c.vertical,
                                 (c.intersection[0] + dr, c.intersection[1] + dc))
                   for c in crossovers]
    reads2 = [ReadLink(r.variable, r.wire, (r.anchor[0] + dr, r.anchor[1] + dc), r.side)
              for r in reads]
    certificate.chains = chains2
    certificate.crossovers = crossovers2
    certificate.reads = reads2

    board = instantiate(certificate.gadget_blueprints(), certificate.target,
                        width=box[3] - box[1] + 3, height=box[2] - box[0] + 3)
    return CompiledPuzzle(board=board, certificate=certificate,
                          formula=formula, embedding=embedding, params=params)


# -- intended solution ----------------------------------------------------------

def intended_solution(puzzle: CompiledPuzzle, assignment) -> list[Move]:
    """Move script that solves the board for a satisfying assignment.

    Stage order: variable strips (right for true, left for false), then all
    reader wires toward their clauses, clause bars rightward, propagators,
    the two extreme ANDs rightward, and the final AND downward.  Horizontal
    gadgets always precede the vertical gadgets that cross them, which is
    the order the crossover compensation assumes.
    """
    formula = puzzle.formula
    if len(assignment) != formula.num_vars:
        raise UnsatisfiedAssignment("assignment length mismatch")
    if not formula.evaluate(tuple(assignment)):
        raise UnsatisfiedAssignment("assignment does not satisfy the formula")

    cert = puzzle.certificate
    moves: list[Move] = []
    for vr in cert.variables:
        direction = "R" if assignment[vr.index - 1] else "L"
        moves.extend(vr.blueprint.moves(direction))
    ordered = sorted(cert.clauses, key=lambda r: (r.polarity, r.level, r.index))
    for rec in ordered:
        for tw in rec.wires:
            for wire in tw.wires:
                moves.extend(wire.activation_order)
    for rec in ordered:
        moves.extend(rec.bar.activation_order)
    for rec in ordered:
        moves.extend(rec.propagator.activation_order)
    moves.extend(cert.upper.activation_order)
    moves.extend(cert.lower.activation_order)
    moves.extend(cert.final.activation_order)
    return moves


# -- audits ----------------------------------------------------------------------

@dataclass(frozen=True)
class AuditViolation:
    first: str
    second: str
    detail: str


def _blueprint_index(cert: Certificate) -> dict[str, object]:
    return {bp.gadget_id: bp for bp in cert.gadget_blueprints()}


def audit_bboxes(puzzle: CompiledPuzzle) -> list[AuditViolation]:
    """Pairwise bounding-box audit.

    Boxes must be disjoint unless the pair is registered as a chain link, a
    crossover, or a variable read.
    """
    cert = puzzle.certificate
    allowed = set()
    for c in cert.chains:
        allowed.add(frozenset((c.upstream.gadget_id, c.downstream.gadget_id)))
    for c in cert.crossovers:
        allowed.add(frozenset((c.horizontal.gadget_id, c.vertical.gadget_id)))
    for r in cert.reads:
        allowed.add(frozenset((r.variable.gadget_id, r.wire.gadget_id)))
    blueprints = cert.gadget_blueprints()
    out = []
    for i, a in enumerate(blueprints):
        for b in blueprints[i + 1:]:
            if not rects_intersect(a.bbox, b.bbox):
                continue
            if frozenset((a.gadget_id, b.gadget_id)) in allowed:
                continue
            out.append(AuditViolation(a.gadget_id, b.gadget_id,
                                      f"boxes {a.bbox} and {b.bbox} overlap"))
    return out


def check_certificate(puzzle: CompiledPuzzle) -> list[str]:
    """Structural invariants of a compiled puzzle; empty when sound."""
    cert = puzzle.certificate
    board = puzzle.board
    problems = []

    for rec in cert.clauses:
        if rec.g != rec.bar_crossings + 1:
            problems.append(f"clause {rec.index}: g={rec.g} but x={rec.bar_crossings}")

    parities = {rec.bar.origin[0] & 1 for rec in cert.clauses}
    if len(parities) > 1:
        problems.append("clause bar rows mix parities")

    for c in cert.crossovers:
        r, col = c.intersection
        if board.at(r, col) != 0:
            problems.append(f"crossover intersection {c.intersection} is not empty")
        for rr, cc in ((r, col - 1), (r, col + 1), (r - 1, col), (r + 1, col)):
            if board.at(rr, cc) == 0:
                problems.append(f"crossover at {c.intersection} lacks a tile at {(rr, cc)}")

    for link in cert.chains:
        if link.upstream.target != link.anchor or link.anchor not in link.downstream.sources:
            problems.append(f"chain {link.upstream.gadget_id}->{link.downstream.gadget_id} "
                            "anchor mismatch")

    owners: dict[tuple[int, int], str] = {}
    for bp in cert.gadget_blueprints():
        for t in bp.tiles:
            if t in owners:
                problems.append(f"tile {t} owned by {owners[t]} and {bp.gadget_id}")
            owners[t] = bp.gadget_id
    board_tiles = {(r, c) for r, c, _ in board.tiles()}
    if board_tiles != set(owners):
        problems.append("board tiles do not match certificate ownership")

    # the final target sits right of every non-terminal gadget's box
    tcol = cert.target[1]
    for bp in cert.gadget_blueprints():
        if bp.gadget_id in (cert.upper.gadget_id, cert.lower.gadget_id,
                            cert.final.gadget_id):
            continue
        if bp.bbox[3] >= tcol:
            problems.append(f"{bp.gadget_id} reaches column {bp.bbox[3]}, "
                            f"not left of the target column {tcol}")
    return problems


# -- certificate text form --------------------------------------------------------

def render_certificate(puzzle: CompiledPuzzle) -> str:
    """Deterministic text record of the compiled structure."""
    cert = puzzle.certificate
    lines = [f"zhed-cert v1",
             f"board {puzzle.board.width} {puzzle.board.height}",
             f"target {cert.target[0]} {cert.target[1]}"]
    for vr in cert.variables:
        bp = vr.blueprint
        lines.append(f"variable {vr.index} row {bp.row} col {bp.col0} L {bp.length}")
    for bp in sorted(cert.gadget_blueprints(), key=lambda b: b.gadget_id):
        if isinstance(bp, VariableBlueprint):
            continue
        r0, c0, r1, c1 = bp.bbox
        lines.append(
            f"gadget {bp.gadget_id} kind {bp.kind} axis {bp.axis} forward {bp.forward} "
            f"k {bp.k} shifted {int(bp.shifted)} gaps {bp.gaps} "
            f"target {bp.target[0]} {bp.target[1]} bbox {r0} {c0} {r1} {c1}")
        lines.append(f"tiles {bp.gadget_id} " +
                     " ".join(f"{r},{c}" for r, c in bp.tiles))
    for rec in cert.clauses:
        wire_ids = ";".join(",".join(w.gadget_id for w in tw.wires) for tw in rec.wires)
        lines.append(f"clause {rec.index + 1} {rec.polarity} level {rec.level} "
                     f"g {rec.g} x {rec.bar_crossings} or {rec.bar.gadget_id} "
                     f"prop {rec.propagator.gadget_id} wires {wire_ids}")
    for link in cert.chains:
        lines.append(f"chain {link.upstream.gadget_id} {link.downstream.gadget_id} "
                     f"{link.anchor[0]} {link.anchor[1]}")
    for c in cert.crossovers:
        lines.append(f"crossover {c.horizontal.gadget_id} {c.vertical.gadget_id} "
                     f"{c.intersection[0]} {c.intersection[1]}")
    for r in cert.reads:
        lines.append(f"read {r.variable.gadget_id} {r.wire.gadget_id} "
                     f"{r.anchor[0]} {r.anchor[1]} {r.side}")
    return "\n".join(lines) + "\n"
