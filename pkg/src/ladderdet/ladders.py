"""Two-sided ladders: validation, subladders, bands, interiors, the
antidiagonal profile, chamfering and width descent.

A ladder is stored by its upper-outside corners (b, a) and lower-outside
corners (d, c) inside a k x l grid.  Cell membership:

    x[i,j] in L  iff  (some upper corner has i >= b, j <= a)
                 and  (some lower corner has i <= d, j >= c).

Corner lists are kept as given (lower corners may share a row or column,
as in ladders whose first two lower corners sit in the same column); the
canonical minimal corner list is recomputed when a ladder is rebuilt from
its cell set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .poly import Minor

Cell = tuple[int, int]


class LadderError(ValueError):
    pass


class ChamferError(LadderError):
    pass


@dataclass(frozen=True)
class Ladder:
    shape: tuple[int, int]
    upper: tuple[tuple[int, int], ...]  # (b, a): NE staircase corners
    lower: tuple[tuple[int, int], ...]  # (d, c): SW staircase corners

    def __post_init__(self):
        k, l = self.shape
        object.__setattr__(self, "shape", (int(k), int(l)))
        object.__setattr__(self, "upper", tuple((int(b), int(a)) for b, a in self.upper))
        object.__setattr__(self, "lower", tuple((int(d), int(c)) for d, c in self.lower))
        if k < 1 or l < 1:
            raise LadderError(f"bad shape {self.shape}")
        if bool(self.upper) != bool(self.lower):
            raise LadderError("upper and lower corner lists must be both empty or both nonempty")
        for b, a in self.upper:
            if not (1 <= b <= k and 1 <= a <= l):
                raise LadderError(f"upper corner ({b},{a}) outside {k}x{l} grid")
        for d, c in self.lower:
            if not (1 <= d <= k and 1 <= c <= l):
                raise LadderError(f"lower corner ({d},{c}) outside {k}x{l} grid")
        bs = [b for b, _ in self.upper]
        as_ = [a for _, a in self.upper]
        if sorted(set(bs)) != bs or sorted(set(as_)) != as_:
            raise LadderError("upper corners must strictly increase in both coordinates")
        ds = [d for d, _ in self.lower]
        cs = [c for _, c in self.lower]
        if sorted(ds) != ds or sorted(cs) != cs:
            raise LadderError("lower corners must be nondecreasing in both coordinates")
        if any(self.lower[i] == self.lower[i + 1] for i in range(len(self.lower) - 1)):
            raise LadderError("consecutive lower corners coincide")

    # -- membership

    @cached_property
    def cells(self) -> frozenset[Cell]:
        k, l = self.shape
        out = set()
        for i in range(1, k + 1):
            for j in range(1, l + 1):
                if self.contains(i, j):
                    out.add((i, j))
        return frozenset(out)

    def contains(self, i: int, j: int) -> bool:
        if not any(i >= b and j <= a for b, a in self.upper):
            return False
        return any(i <= d and j >= c for d, c in self.lower)

    @property
    def is_empty(self) -> bool:
        return not self.upper or not self.cells

    @property
    def num_upper(self) -> int:
        return len(self.upper)

    @property
    def num_lower(self) -> int:
        return len(self.lower)

    # -- derived ladders

    @classmethod
    def empty(cls, shape) -> "Ladder":
        return cls(tuple(shape), (), ())

    @classmethod
    def full(cls, k: int, l: int) -> "Ladder":
        return cls((k, l), ((1, l),), ((k, 1),))

    @classmethod
    def from_cells(cls, shape, cells) -> "Ladder":
        """Rebuild a ladder from a cell set, recomputing minimal corners."""
        cells = set(map(tuple, cells))
        if not cells:
            return cls.empty(shape)
        rows = sorted({i for i, _ in cells})
        lo = {i: min(j for r, j in cells if r == i) for i in rows}
        hi = {i: max(j for r, j in cells if r == i) for i in rows}
        for i in rows:
            for j in range(lo[i], hi[i] + 1):
                if (i, j) not in cells:
                    raise LadderError("cell set is not a ladder region (row gap)")
        upper = []
        lower = []
        for idx, i in enumerate(rows):
            if idx == 0 or hi[i] > hi[rows[idx - 1]]:
                upper.append((i, hi[i]))
            if idx == len(rows) - 1 or lo[rows[idx + 1]] > lo[i]:
                lower.append((i, lo[i]))
        ladder = cls(tuple(shape), tuple(upper), tuple(lower))
        if ladder.cells != frozenset(cells):
            raise LadderError("cell set is not a two-sided ladder region")
        return ladder

    def subladder(self, j: int) -> "Ladder":
        """L_j: the cells with row <= d_j and column >= c_j (1-based j)."""
        if not 1 <= j <= len(self.lower):
            raise LadderError(f"subladder index {j} out of range 1..{len(self.lower)}")
        d, c = self.lower[j - 1]
        return Ladder.from_cells(self.shape, {(i, a) for i, a in self.cells if i <= d and a >= c})

    def band(self, axis: str, lo: int, hi: int) -> "Ladder":
        """Intersection with a column band (axis='cols') or row band ('rows')."""
        k, l = self.shape
        limit = l if axis == "cols" else k
        if axis not in ("cols", "rows"):
            raise LadderError(f"axis must be 'cols' or 'rows': {axis}")
        if not (1 <= lo <= hi <= limit):
            raise LadderError(f"band [{lo},{hi}] outside 1..{limit}")
        if axis == "cols":
            kept = {(i, j) for i, j in self.cells if lo <= j <= hi}
        else:
            kept = {(i, j) for i, j in self.cells if lo <= i <= hi}
        return Ladder.from_cells(self.shape, kept)

    def interior_cells(self, t) -> frozenset[Cell]:
        """The interior: same upper corners, lower corners shifted by t_j."""
        t = _as_spec(t, len(self.lower))
        shifted = [(d - tj + 1, c + tj - 1) for (d, c), tj in zip(self.lower, t)]
        k, l = self.shape
        out = set()
        for i, j in self.cells:
            if not any(i >= b and j <= a for b, a in self.upper):
                continue
            if any(i <= d and j >= c for d, c in shifted):
                out.add((i, j))
        return frozenset(out)

    def interior(self, t) -> "Ladder":
        return Ladder.from_cells(self.shape, self.interior_cells(t))

    def max_square_in(self) -> int:
        """Side of the largest full square submatrix inside the ladder."""
        k, l = self.shape
        best = 0
        size = {}
        for i in range(1, k + 1):
            for j in range(1, l + 1):
                if (i, j) in self.cells:
                    size[(i, j)] = 1 + min(
                        size.get((i - 1, j), 0), size.get((i, j - 1), 0), size.get((i - 1, j - 1), 0)
                    )
                    best = max(best, size[(i, j)])
        return best

    def tighten(self) -> tuple["Ladder", tuple[int, int]]:
        """Crop to the bounding box; returns (ladder, (row_offset, col_offset))."""
        if self.is_empty:
            return self, (0, 0)
        r0 = min(i for i, _ in self.cells) - 1
        c0 = min(j for _, j in self.cells) - 1
        r1 = max(i for i, _ in self.cells)
        c1 = max(j for _, j in self.cells)
        moved = {(i - r0, j - c0) for i, j in self.cells}
        return Ladder.from_cells((r1 - r0, c1 - c0), moved), (r0, c0)

    def embed(self, shape, row_off: int = 0, col_off: int = 0) -> "Ladder":
        """Translate into a (possibly larger) grid."""
        k, l = shape
        upper = tuple((b + row_off, a + col_off) for b, a in self.upper)
        lower = tuple((d + row_off, c + col_off) for d, c in self.lower)
        return Ladder((k, l), upper, lower)

    # -- serialization and display

    def to_json(self, t=None) -> str:
        obj = {"shape": list(self.shape), "upper": [list(c) for c in self.upper],
               "lower": [list(c) for c in self.lower]}
        if t is not None:
            obj["t"] = list(t)
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> tuple["Ladder", tuple[int, ...] | None]:
        obj = json.loads(text)
        try:
            ladder = cls(tuple(obj["shape"]), tuple(map(tuple, obj["upper"])),
                         tuple(map(tuple, obj["lower"])))
        except KeyError as exc:
            raise LadderError(f"ladder JSON missing field: {exc}") from None
        t = tuple(obj["t"]) if "t" in obj and obj["t"] is not None else None
        return ladder, t

    def render(self) -> str:
        k, l = self.shape
        lines = []
        for i in range(1, k + 1):
            lines.append("".join("#" if (i, j) in self.cells else "." for j in range(1, l + 1)))
        return "\n".join(lines)

    def __repr__(self):
        return f"Ladder({self.shape}, upper={list(self.upper)}, lower={list(self.lower)})"


def _as_spec(t, v: int) -> tuple[int, ...]:
    if isinstance(t, int):
        t = (t,) * v
    t = tuple(int(x) for x in t)
    if len(t) != v:
        raise LadderError(f"mixed spec length {len(t)} != number of lower corners {v}")
    if any(x < 1 for x in t):
        raise LadderError(f"minor sizes must be positive: {t}")
    return t


# ---------------------------------------------------------------------------
# Validation against the running assumptions


@dataclass(frozen=True)
class AssumptionCheck:
    number: int
    passed: bool
    detail: str


@dataclass(frozen=True)
class LadderReport:
    valid: bool
    spans_grid: bool
    u: int
    v: int
    checks: tuple[AssumptionCheck, ...]
    notes: tuple[str, ...] = ()

    def as_text(self) -> str:
        lines = [f"valid={'yes' if self.valid else 'no'} u={self.u} v={self.v}"]
        for c in self.checks:
            lines.append(f"  ({c.number}) {'pass' if c.passed else 'FAIL'}: {c.detail}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def covered_cells(L: Ladder, t) -> frozenset[Cell]:
    """Cells of L hit by a generating minor of the mixed ladder ideal."""
    from .ideals import minors_in_ladder

    t = _as_spec(t, len(L.lower))
    out: set[Cell] = set()
    for j, tj in enumerate(t, start=1):
        sub = L.subladder(j)
        for m in minors_in_ladder(sub, tj):
            out.update(m.cells())
    return frozenset(out)


def validate(L: Ladder, t) -> LadderReport:
    """Check the running assumptions (1)-(4) for the pair (L, t).

    (4), minimality of the ambient grid, is reported but kept out of the
    overall verdict: bands, interiors and chamfer outputs legitimately sit
    inside a larger grid and are read relative to their bounding box.
    """
    checks = []
    notes = []
    if L.is_empty:
        return LadderReport(False, False, 0, 0,
                            (AssumptionCheck(1, False, "ladder has no cells"),))
    t = _as_spec(t, len(L.lower))

    corner_cells_ok = all(L.contains(b, a) for b, a in L.upper) and all(
        L.contains(d, c) for d, c in L.lower
    )
    if not corner_cells_ok:
        notes.append("some listed corner is not a cell of the ladder")

    # (1) every entry appears in a generating minor
    covered = covered_cells(L, t)
    missing = sorted(L.cells - covered)
    checks.append(
        AssumptionCheck(1, not missing,
                        "all entries meet a generating minor" if not missing
                        else f"uncovered entries: {missing[:5]}{'...' if len(missing) > 5 else ''}")
    )

    # (2) corner sanity: constructor enforces monotonicity; upper corners
    # never share a row or column by strictness, consecutive corners differ.
    checks.append(AssumptionCheck(2, corner_cells_ok,
                                  "corners distinct and on the ladder" if corner_cells_ok
                                  else "corner cell missing from ladder"))

    # (3) pairwise non-inclusion of the summands, via the corner/size gaps
    bad = []
    for j in range(len(t) - 1):
        d0, c0 = L.lower[j]
        d1, c1 = L.lower[j + 1]
        if not (d1 - d0 > t[j + 1] - t[j] and c1 - c0 > t[j] - t[j + 1]):
            bad.append(j + 1)
    nonempty = []
    for j, tj in enumerate(t, start=1):
        if L.subladder(j).max_square_in() < tj:
            nonempty.append(j)
    ok3 = not bad and not nonempty
    detail3 = "summands pairwise incomparable"
    if bad:
        detail3 = f"degenerate corner gaps at j={bad}"
    if nonempty:
        detail3 = (detail3 if not bad else detail3 + "; ") + f"no t_j-minor fits in L_j for j={nonempty}"
    checks.append(AssumptionCheck(3, ok3, detail3))

    # (4) the ladder spans its ambient grid
    rows = {i for i, _ in L.cells}
    cols = {j for _, j in L.cells}
    spans = 1 in rows and L.shape[0] in rows and 1 in cols and L.shape[1] in cols
    checks.append(AssumptionCheck(4, spans,
                                  "ladder spans the ambient grid" if spans
                                  else "a border row or column of the grid is empty"))

    valid = corner_cells_ok and checks[0].passed and checks[2].passed
    return LadderReport(valid, spans, len(L.upper), len(L.lower), tuple(checks), tuple(notes))


# ---------------------------------------------------------------------------
# Heights and the antidiagonal profile


def height(L: Ladder, t) -> int:
    """Height of the mixed ladder ideal: the number of interior cells."""
    return len(L.interior_cells(t))


@dataclass(frozen=True)
class LevelData:
    r: int
    w: int
    p: int
    a: int
    b: int
    gamma: int
    count: int
    minor: Minor


@dataclass(frozen=True)
class AntidiagonalProfile:
    levels: tuple[LevelData, ...]       # one per antidiagonal level in A
    b_levels: tuple[int, ...]           # the subset B with nonnegative count
    interior_size: int

    @property
    def a_levels(self) -> tuple[int, ...]:
        return tuple(ld.r for ld in self.levels)

    def level(self, r: int) -> LevelData:
        for ld in self.levels:
            if ld.r == r:
                return ld
        raise KeyError(r)

    @property
    def witness_factors(self) -> tuple[Minor, ...]:
        return tuple(ld.minor for ld in self.levels if ld.r in self.b_levels)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(ld.count for ld in self.levels if ld.r in self.b_levels)


class ProfileError(LadderError):
    pass


def antidiagonal_profile(L: Ladder, t) -> AntidiagonalProfile:
    """Per-level data (w_r, p_r, a_r, b_r, gamma_r, Y_r) for the witness.

    Verifies the counting identity: the counts over B add up to the number
    of interior cells (= the height of the mixed ladder ideal).
    """
    t = _as_spec(t, len(L.lower))
    k, l = L.shape
    interior = L.interior_cells(t)
    subladders = [L.subladder(j) for j in range(1, len(t) + 1)]
    sub_interiors = [s.interior_cells((tj,) * len(s.lower)) for s, tj in zip(subladders, t)]

    levels = []
    for r in range(2, k + l + 1):
        diag = [(i, r - i) for i in range(max(1, r - l), min(k, r - 1) + 1)]
        hits = [cell for cell in diag if cell in interior]
        if not hits:
            continue
        w = max(i for i, _ in hits)
        p = max(j + 1 for j in range(len(t)) if (w, r - w) in sub_interiors[j])
        in_sub = [i for i, jj in diag if (i, jj) in subladders[p - 1].cells]
        a, b = min(in_sub), max(in_sub)
        gamma = b - a + 1
        minor = Minor(tuple(range(a, b + 1)), tuple(range(r - b, r - a + 1)))
        if not all(cell in subladders[p - 1].cells for cell in minor.cells()):
            raise ProfileError(f"level {r}: antidiagonal square leaves its subladder")
        levels.append(LevelData(r, w, p, a, b, gamma, gamma - t[p - 1] + 1, minor))

    b_levels = tuple(ld.r for ld in levels if ld.count >= 0)
    total = sum(ld.count for ld in levels if ld.count >= 0)
    if total != len(interior):
        raise ProfileError(
            f"count identity failed: sum of counts {total} != interior size {len(interior)}"
        )
    return AntidiagonalProfile(tuple(levels), b_levels, len(interior))


# ---------------------------------------------------------------------------
# Chamfering


def total_width(t) -> int:
    """Sum over pairs i<j of |t_i - t_j|."""
    t = tuple(t)
    return sum(abs(t[i] - t[j]) for i in range(len(t)) for j in range(i + 1, len(t)))


def chamfer(L: Ladder, t, j: int) -> tuple[Ladder, tuple[int, ...]]:
    """Move lower corner j one step NE and shrink its minor size by one.

    Legality is judged by validating the output (relative to its bounding
    box), not by any a-priori inequality between neighbouring corners.
    When t_j is already 1 the corner disappears together with its summand;
    this requires the remaining corners to keep every cell covered.
    """
    t = _as_spec(t, len(L.lower))
    if not 1 <= j <= len(L.lower):
        raise ChamferError(f"corner index {j} out of range")
    d, c = L.lower[j - 1]
    if t[j - 1] == 1:
        new_lower = L.lower[: j - 1] + L.lower[j:]
        new_t = t[: j - 1] + t[j:]
        if not new_lower:
            raise ChamferError("cannot chamfer away the only lower corner")
    else:
        if d - 1 < 1 or c + 1 > L.shape[1]:
            raise ChamferError(f"corner ({d},{c}) cannot move NE inside the grid")
        new_lower = L.lower[: j - 1] + ((d - 1, c + 1),) + L.lower[j:]
        new_t = t[: j - 1] + (t[j - 1] - 1,) + t[j:]
    try:
        out = Ladder(L.shape, L.upper, new_lower)
    except LadderError as exc:
        raise ChamferError(f"chamfer at corner {j} breaks the ladder: {exc}") from None
    report = validate(out, new_t)
    if not report.valid:
        raise ChamferError(f"chamfer at corner {j} yields an invalid ladder:\n{report.as_text()}")
    return out, new_t


def unchamfer(L: Ladder, t, j: int) -> tuple[Ladder, tuple[int, ...]]:
    """Inverse move: corner j one step SW, minor size grown by one.

    Guaranteed to succeed for some j with t_j minimal; may need a larger
    ambient grid (see `reduce_to_unmixed`, which pre-embeds with a margin).
    """
    t = _as_spec(t, len(L.lower))
    if not 1 <= j <= len(L.lower):
        raise ChamferError(f"corner index {j} out of range")
    d, c = L.lower[j - 1]
    if d + 1 > L.shape[0] or c - 1 < 1:
        raise ChamferError(
            f"corner ({d},{c}) cannot move SW inside the {L.shape} grid; embed with a margin first"
        )
    new_lower = L.lower[: j - 1] + ((d + 1, c - 1),) + L.lower[j:]
    new_t = t[: j - 1] + (t[j - 1] + 1,) + t[j:]
    try:
        out = Ladder(L.shape, L.upper, new_lower)
    except LadderError as exc:
        raise ChamferError(f"unchamfer at corner {j} breaks the ladder: {exc}") from None
    report = validate(out, new_t)
    if not report.valid:
        raise ChamferError(f"unchamfer at corner {j} yields an invalid ladder:\n{report.as_text()}")
    return out, new_t


@dataclass(frozen=True)
class UnmixReduction:
    """Unchamfer trail from (L, t) to an unmixed pair, with replay data."""

    original: Ladder
    original_t: tuple[int, ...]
    start: Ladder                  # unmixed ladder, inside the padded grid
    start_t: tuple[int, ...]
    moves: tuple[int, ...]         # chamfer corner indices, replay order
    offset: tuple[int, int]        # translation used by the padded embedding

    def replay(self) -> tuple[Ladder, tuple[int, ...]]:
        """Chamfer along `moves` from the start pair; returns (L, t)."""
        cur, cur_t = self.start, self.start_t
        for j in self.moves:
            cur, cur_t = chamfer(cur, cur_t, j)
        k, l = self.original.shape
        ro, co = self.offset
        cells = {(i - ro, j - co) for i, j in cur.cells}
        return Ladder(
            (k, l),
            tuple((b - ro, a - co) for b, a in cur.upper),
            tuple((d - ro, c - co) for d, c in cur.lower),
        ), cur_t


def unmix_distance(t) -> int:
    """Moves left before the size vector is constant: sum of max(t) - t_j.

    Strictly drops by one per unchamfer at a minimal entry, and is bounded
    by total_width(t), which gives the advertised step bound.  (Raising a
    minimal entry can *increase* the total width itself once three or more
    corners are in play, e.g. (2,3,2,2) -> (3,3,2,2).)
    """
    t = tuple(t)
    return sum(max(t) - x for x in t)


def reduce_to_unmixed(L: Ladder, t) -> UnmixReduction:
    """Unchamfer at minimal-size corners until the size vector is constant.

    Terminates in unmix_distance(t) <= total_width(t) moves.  The ladder
    is first embedded with a margin so corner moves never leave the grid.
    """
    t = _as_spec(t, len(L.lower))
    margin = max(t) - min(t)
    k, l = L.shape
    cur = L.embed((k + margin, l + margin), 0, margin)
    cur_t = t
    moves: list[int] = []
    while len(set(cur_t)) > 1:
        candidates = [j for j in range(1, len(cur_t) + 1) if cur_t[j - 1] == min(cur_t)]
        for j in candidates:
            try:
                nxt, nxt_t = unchamfer(cur, cur_t, j)
            except ChamferError:
                continue
            if unmix_distance(nxt_t) >= unmix_distance(cur_t):
                continue
            cur, cur_t = nxt, nxt_t
            moves.append(j)
            break
        else:
            raise ChamferError("no legal unchamfer at a minimal-size corner; ladder is degenerate")
    return UnmixReduction(L, t, cur, cur_t, tuple(reversed(moves)), (0, margin))


# ---------------------------------------------------------------------------
# Seeded random valid ladders (fixtures for the property suites)


def random_valid_ladder(rng, max_rows: int, max_cols: int, mixed: bool = False,
                        max_t: int = 3, attempts: int = 2000):
    """A uniform-ish random (ladder, t) pair passing validation."""
    for _ in range(attempts):
        k = rng.randint(2, max_rows)
        l = rng.randint(2, max_cols)
        u = rng.randint(1, min(3, k, l))
        v = rng.randint(1, min(4 if mixed else 3, k, l))
        try:
            bs = sorted(rng.sample(range(1, k + 1), u))
            as_ = sorted(rng.sample(range(1, l + 1), u))
            if bs[0] != 1:
                bs[0] = 1
            if as_[-1] != l:
                as_[-1] = l
            ds = sorted(rng.choices(range(1, k + 1), k=v))
            cs = sorted(rng.choices(range(1, l + 1), k=v))
            ds[-1] = k
            cs[0] = 1
            ladder = Ladder((k, l), tuple(zip(bs, as_)), tuple(zip(ds, cs)))
        except LadderError:
            continue
        if mixed:
            t = tuple(rng.randint(1, max_t) for _ in range(v))
        else:
            t = (rng.randint(1, max_t),) * v
        try:
            if validate(ladder, t).valid:
                return ladder, t
        except LadderError:
            continue
    raise LadderError("could not sample a valid ladder; loosen the parameters")
