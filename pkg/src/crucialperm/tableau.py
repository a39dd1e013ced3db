"""
Young diagrams and standard Young tableaux.

Shapes are tuples of weakly decreasing positive row lengths. A ``Tableau``
stores its rows top to bottom (English convention); ``entry(r, c)`` is
1-indexed, row first.

Besides generation and hook-length counting this module holds the
increasing-chain predicates that characterize crucial permutations through
their RSK tableaux, and two explicit constructions used in counting minimal
tricrucial permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

from .errors import BudgetError, ConstraintError, ShapeError, ValidationError
from .permcore import CrucialClass, Params

if TYPE_CHECKING:
    from .rsk import TableauPair

Shape = tuple[int, ...]
Cell = tuple[int, int]

DEFAULT_SYT_CAP = 16


# --- shapes ------------------------------------------------------------------


def as_shape(parts: Iterable[int]) -> Shape:
    shape = tuple(int(x) for x in parts)
    if not shape:
        raise ValidationError("a shape needs at least one part")
    if any(x < 1 for x in shape):
        raise ValidationError(f"shape parts must be positive: {shape}")
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise ValidationError(f"shape parts must be weakly decreasing: {shape}")
    return shape


def conjugate(shape: Sequence[int]) -> Shape:
    """Transpose of a Young diagram.

    >>> conjugate((3, 2))
    (2, 2, 1)
    """
    if not shape:
        return ()
    return tuple(sum(1 for part in shape if part > c) for c in range(shape[0]))


def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Shape]:
    """Partitions of ``n`` in reverse lexicographic order, optionally confined
    to parts <= ``max_part`` and at most ``max_len`` parts."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n

    def rec(rest: int, cap: int, slots: int) -> Iterator[Shape]:
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            if first * slots < rest:
                break
            for tail in rec(rest - first, first, slots - 1):
                yield (first,) + tail

    yield from rec(n, max_part, max_len)


def shapes_in_box(n: int, cols: int, rows: int) -> list[Shape]:
    """Shapes with ``n`` cells, exactly ``cols`` columns and exactly ``rows`` rows."""
    return [s for s in partitions(n, cols, rows) if s[0] == cols and len(s) == rows]


def hook_lengths(shape: Sequence[int]) -> list[list[int]]:
    conj = conjugate(shape)
    return [[(row - c - 1) + (conj[c] - r - 1) + 1 for c in range(row)] for r, row in enumerate(shape)]


def hook_count(shape: Sequence[int]) -> int:
    """Number of SYT of ``shape``: n! over the product of hook lengths.

    >>> hook_count((3, 2))
    5
    """
    shape = as_shape(shape)
    denom = 1
    for row in hook_lengths(shape):
        for h in row:
            denom *= h
    q, r = divmod(factorial(sum(shape)), denom)
    assert r == 0, f"hook product does not divide n! for {shape}"
    return q


# --- tableaux ----------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> Tableau:
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def shape(self) -> Shape:
        return tuple(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, r: int, c: int) -> int:
        """1-indexed (row, column) lookup."""
        if r < 1 or c < 1 or r > len(self.rows) or c > len(self.rows[r - 1]):
            raise IndexError(f"no cell ({r},{c}) in shape {self.shape}")
        return self.rows[r - 1][c - 1]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c - 1] for row in self.rows if len(row) >= c)

    def cells(self) -> dict[Cell, int]:
        return {(r, c): v for r, row in enumerate(self.rows, 1) for c, v in enumerate(row, 1)}

    def reading_word(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def is_standard(self) -> bool:
        try:
            as_shape(self.shape)
        except ValidationError:
            return False
        if sorted(self.reading_word()) != list(range(1, self.n + 1)):
            return False
        for r, row in enumerate(self.rows):
            if any(a >= b for a, b in zip(row, row[1:])):
                return False
            if r and any(self.rows[r - 1][c] >= row[c] for c in range(len(row))):
                return False
        return True

    def __str__(self):
        return "/".join("[" + " ".join(map(str, row)) + "]" for row in self.rows)


def transpose(t: Tableau) -> Tableau:
    if not t.rows:
        return t
    return Tableau(tuple(t.column(c) for c in range(1, t.num_cols + 1)))


def enumerate_syt(shape: Sequence[int], *, cap: int = DEFAULT_SYT_CAP) -> Iterator[Tableau]:
    """Every SYT of ``shape``, in lexicographic order of the row-major reading word.

    Cells are filled in reading order with the smallest admissible value first;
    a value is admissible only if enough larger values remain for the cells
    weakly south-east of it.
    """
    shape = as_shape(shape)
    n = sum(shape)
    if n > cap:
        raise BudgetError("SYT enumeration", n, cap)
    positions = [(r, c) for r, width in enumerate(shape) for c in range(width)]
    # cells strictly south-east (weakly in both coordinates, excluding itself)
    below_right = [
        sum(max(0, shape[rr] - c) for rr in range(r, len(shape))) - 1 for r, c in positions
    ]
    grid = [[0] * width for width in shape]
    used = [False] * (n + 2)

    def rec(idx: int) -> Iterator[Tableau]:
        if idx == n:
            yield Tableau(tuple(tuple(row) for row in grid))
            return
        r, c = positions[idx]
        low = 0
        if c:
            low = grid[r][c - 1]
        if r and grid[r - 1][c] > low:
            low = grid[r - 1][c]
        need = below_right[idx]
        larger_free = sum(1 for v in range(low + 1, n + 1) if not used[v])
        for v in range(low + 1, n + 1):
            if used[v]:
                continue
            larger_free -= 1
            if larger_free < need:
                break
            used[v] = True
            grid[r][c] = v
            yield from rec(idx + 1)
            used[v] = False
        grid[r][c] = 0

    yield from rec(0)


# --- chain predicates --------------------------------------------------------


def _require_box(t: Tableau, params: Params) -> None:
    if t.num_cols != params.k - 1 or t.num_rows != params.ell - 1:
        raise ShapeError(
            f"tableau of shape {t.shape} needs exactly {params.k - 1} columns and {params.ell - 1} rows"
        )


def has_row_chain(t: Tableau, params: Params) -> bool:
    """Is there an increasing sequence t(1,k-1) < t(2,j2) < ... < t(ell-1,j_{ell-1})?

    Rows are sorted, so taking the smallest admissible entry in each row is optimal.
    """
    _require_box(t, params)
    cur = t.rows[0][-1]
    for row in t.rows[1:]:
        nxt = next((v for v in row if v > cur), None)
        if nxt is None:
            return False
        cur = nxt
    return True


def has_col_chain(t: Tableau, params: Params) -> bool:
    """Is there an increasing sequence t(ell-1,1) < t(i2,2) < ... < t(i_{k-1},k-1)?"""
    _require_box(t, params)
    cur = t.rows[-1][0]
    for c in range(2, t.num_cols + 1):
        nxt = next((v for v in t.column(c) if v > cur), None)
        if nxt is None:
            return False
        cur = nxt
    return True


def has_row_chain_exhaustive(t: Tableau, params: Params) -> bool:
    """Reference version of ``has_row_chain`` trying every column choice."""
    _require_box(t, params)
    start = t.rows[0][-1]
    for choice in product(*t.rows[1:]):
        seq = (start,) + choice
        if all(a < b for a, b in zip(seq, seq[1:])):
            return True
    return False


def has_col_chain_exhaustive(t: Tableau, params: Params) -> bool:
    _require_box(t, params)
    start = t.rows[-1][0]
    cols = [t.column(c) for c in range(2, t.num_cols + 1)]
    for choice in product(*cols):
        seq = (start,) + choice
        if all(a < b for a, b in zip(seq, seq[1:])):
            return True
    return False


def p_conditions(t: Tableau, params: Params, cls: CrucialClass) -> bool:
    """Conditions the characterization puts on the insertion tableau alone."""
    if t.num_cols != params.k - 1 or t.num_rows != params.ell - 1:
        return False
    if not has_row_chain(t, params):
        return False
    if cls is CrucialClass.RIGHT_CRUCIAL:
        return True
    return has_col_chain(t, params)


def q_conditions(t: Tableau, params: Params, cls: CrucialClass) -> bool:
    """Conditions the characterization puts on the recording tableau alone."""
    if t.num_cols != params.k - 1 or t.num_rows != params.ell - 1:
        return False
    if cls in (CrucialClass.RIGHT_CRUCIAL, CrucialClass.BICRUCIAL):
        return True
    if not has_row_chain(t, params):
        return False
    if cls is CrucialClass.TRICRUCIAL:
        return True
    return has_col_chain(t, params)


def pair_satisfies(pair: TableauPair, params: Params, cls: CrucialClass) -> bool:
    """Tableau-side characterization of ``cls``: both tableaux have k-1
    columns and ell-1 rows, plus the chain conditions of the class."""
    if pair.P.shape != pair.Q.shape:
        return False
    return p_conditions(pair.P, params, cls) and q_conditions(pair.Q, params, cls)


# --- explicit constructions --------------------------------------------------


def minimal_tricrucial_P(params: Params) -> Tableau:
    """The insertion tableau shared by all minimal tricrucial permutations
    (k > ell), of shape (k-1, 2, ..., 2).

    Row 1 is 1, ell, ell+1, ..., k+ell-3; column 1 is 1, ..., ell-1; column 2
    below row 1 is k+ell-2, ..., k+2*ell-5.
    """
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    rows = [[1] + list(range(ell, k + ell - 2))]
    for r in range(2, ell):
        rows.append([r, k + ell - 4 + r])
    return Tableau.from_rows(rows)


def _bijection_shapes(params: Params) -> tuple[Shape, Shape]:
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    codomain = (k - 1,) + (2,) * (ell - 2)
    domain = (ell - 1, ell - 1) + (1,) * (k - 3)
    return domain, codomain


def in_bijection_domain(tp: Tableau, params: Params) -> bool:
    """SYT of shape (ell-1, ell-1, 1^{k-3}) with t'(1,ell-1) < t'(2,j) < t'(3,1) for some j.

    The row-3 bound is vacuous when k = 3 (no third row).
    """
    domain, _ = _bijection_shapes(params)
    if tp.shape != domain or not tp.is_standard():
        return False
    return has_row_chain(tp, Params(params.ell, params.k))


def in_bijection_codomain(t: Tableau, params: Params) -> bool:
    """SYT of shape (k-1, 2^{ell-2}) with t(1,k-1) < t(2,2)."""
    _, codomain = _bijection_shapes(params)
    if t.shape != codomain or not t.is_standard():
        return False
    return t.entry(1, params.k - 1) < t.entry(2, 2)


def bijection_forward(tp: Tableau, params: Params) -> Tableau:
    """Map a domain tableau T' of shape (ell-1, ell-1, 1^{k-3}) to T of shape
    (k-1, 2^{ell-2}) with t(1,k-1) < t(2,2).

    The entries above t'(1,ell-1) occupy the last i cells of row 2 and all of
    column 1 below row 2; they are shifted down onto row 1 and the top of
    column 1 of T. The remaining entries are complemented (v -> n+1-v) and
    rotated into the rest of T.
    """
    if not in_bijection_domain(tp, params):
        raise ConstraintError(f"{tp} is not in the bijection's domain for {params}")
    k, ell = params.k, params.ell
    n = tp.n
    corner = tp.entry(1, ell - 1)
    i = sum(1 for v in tp.rows[1] if v > corner)
    offset = 2 * ell - i - 2
    t: dict[Cell, int] = {(1, k - 1): n + 1 - corner}
    for r in range(1, i + 1):
        t[(r, 1)] = tp.entry(2, r + ell - i - 1) - offset
    for r in range(i + 1, ell):
        t[(r, 1)] = n + 1 - tp.entry(2, ell - r)
    for r in range(2, ell):
        t[(r, 2)] = n + 1 - tp.entry(1, ell - r)
    for r in range(2, k - 1):
        t[(1, r)] = tp.entry(r + 1, 1) - offset
    _, codomain = _bijection_shapes(params)
    out = _from_cells(t, codomain)
    assert in_bijection_codomain(out, params), (tp, out)
    return out


def bijection_backward(t: Tableau, params: Params) -> Tableau:
    """Inverse of ``bijection_forward``."""
    if not in_bijection_codomain(t, params):
        raise ConstraintError(f"{t} is not in the bijection's codomain for {params}")
    k, ell = params.k, params.ell
    n = t.n
    corner = t.entry(1, k - 1)
    i = sum(1 for v in t.column(1) if v < corner)
    offset = 2 * ell - i - 2
    tp: dict[Cell, int] = {(1, ell - 1): n + 1 - corner}
    for r in range(1, i + 1):
        tp[(2, r + ell - i - 1)] = t.entry(r, 1) + offset
    for r in range(i + 1, ell):
        tp[(2, ell - r)] = n + 1 - t.entry(r, 1)
    for r in range(2, ell):
        tp[(1, ell - r)] = n + 1 - t.entry(r, 2)
    for r in range(2, k - 1):
        tp[(r + 1, 1)] = t.entry(1, r) + offset
    domain, _ = _bijection_shapes(params)
    out = _from_cells(tp, domain)
    assert in_bijection_domain(out, params), (t, out)
    return out


def _from_cells(cells: Mapping[Cell, int], shape: Shape) -> Tableau:
    rows = [[cells[(r, c)] for c in range(1, width + 1)] for r, width in enumerate(shape, 1)]
    return Tableau.from_rows(rows)


def complement_rotate(cells: Mapping[Cell, int], m: int) -> dict[Cell, int]:
    """Replace each value v by m+1-v and turn the diagram through 180 degrees.

    The result is anchored so its bounding box starts at (1, 1), which makes
    the operation an involution on anchored fillings.
    """
    if not cells:
        return {}
    cells = _anchor(cells)
    height = max(r for r, _ in cells)
    width = max(c for _, c in cells)
    return {(height - r + 1, width - c + 1): m + 1 - v for (r, c), v in cells.items()}


def _anchor(cells: Mapping[Cell, int]) -> dict[Cell, int]:
    rmin = min(r for r, _ in cells)
    cmin = min(c for _, c in cells)
    return {(r - rmin + 1, c - cmin + 1): v for (r, c), v in cells.items()}


def filling_to_tableau(cells: Mapping[Cell, int]) -> Tableau | None:
    """Read an anchored filling as a tableau if it occupies a straight shape."""
    rows: dict[int, dict[int, int]] = {}
    for (r, c), v in cells.items():
        rows.setdefault(r, {})[c] = v
    out = []
    for r in range(1, len(rows) + 1):
        row = rows.get(r)
        if not row or sorted(row) != list(range(1, len(row) + 1)):
            return None
        out.append([row[c] for c in range(1, len(row) + 1)])
    t = Tableau.from_rows(out)
    try:
        as_shape(t.shape)
    except ValidationError:
        return None
    return t
