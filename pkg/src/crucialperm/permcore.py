"""
Permutations, monotone-pattern avoidance, the four one-point extensions and
brute-force cruciality.

Permutations are plain tuples in one-line notation over 1..n. Positions,
values and extension slots are all 1-indexed.
"""
from __future__ import annotations

import enum
import os
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError, DomainError, ValidationError

Permutation = tuple[int, ...]

DEFAULT_MAX_N = 11
MAX_N_ENV = "CRUCIALPERM_MAX_N"


@dataclass(frozen=True)
class Params:
    """Forbidden pattern lengths: no increasing run of length ``k``, no
    decreasing run of length ``ell``."""

    k: int
    ell: int

    def __post_init__(self):
        if self.k < 1 or self.ell < 1:
            raise DomainError(f"k and ell must be positive, got k={self.k}, ell={self.ell}")

    def require_theorem_range(self, *, k_ge_ell: bool = False) -> None:
        if self.k < 3 or self.ell < 3:
            raise DomainError(f"need k, ell >= 3, got k={self.k}, ell={self.ell}")
        if k_ge_ell and self.k < self.ell:
            raise DomainError(f"need k >= ell, got k={self.k}, ell={self.ell}")

    def __str__(self):
        return f"({self.k},{self.ell})"


class Direction(enum.Enum):
    RIGHT = "right"
    LEFT = "left"
    TOP = "top"
    BOTTOM = "bottom"


class CrucialClass(enum.Enum):
    RIGHT_CRUCIAL = "right"
    BICRUCIAL = "bicrucial"
    TRICRUCIAL = "tricrucial"
    QUADROCRUCIAL = "quadrocrucial"

    @property
    def directions(self) -> tuple[Direction, ...]:
        return _CLASS_DIRECTIONS[self]

    @classmethod
    def parse(cls, name: str) -> CrucialClass:
        key = name.strip().lower().replace("_", "-")
        try:
            return _CLASS_ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown crucial class {name!r}") from None


_CLASS_DIRECTIONS = {
    CrucialClass.RIGHT_CRUCIAL: (Direction.RIGHT,),
    CrucialClass.BICRUCIAL: (Direction.RIGHT, Direction.LEFT),
    CrucialClass.TRICRUCIAL: (Direction.RIGHT, Direction.LEFT, Direction.TOP),
    CrucialClass.QUADROCRUCIAL: (Direction.RIGHT, Direction.LEFT, Direction.TOP, Direction.BOTTOM),
}

_CLASS_ALIASES = {
    "right": CrucialClass.RIGHT_CRUCIAL,
    "right-crucial": CrucialClass.RIGHT_CRUCIAL,
    "rightcrucial": CrucialClass.RIGHT_CRUCIAL,
    "bi": CrucialClass.BICRUCIAL,
    "bicrucial": CrucialClass.BICRUCIAL,
    "tri": CrucialClass.TRICRUCIAL,
    "tricrucial": CrucialClass.TRICRUCIAL,
    "quadro": CrucialClass.QUADROCRUCIAL,
    "quadrocrucial": CrucialClass.QUADROCRUCIAL,
}

ALL_CLASSES = tuple(CrucialClass)


def as_permutation(values: Iterable[int]) -> Permutation:
    """Validate ``values`` as one-line notation over 1..n and return a tuple.

    >>> as_permutation([2, 4, 1, 3])
    (2, 4, 1, 3)
    """
    p = tuple(int(v) for v in values)
    if not p:
        raise ValidationError("a permutation must have length at least 1")
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValidationError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def lis(p: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting).

    >>> lis((2, 4, 1, 3))
    2
    """
    piles: list[int] = []
    for x in p:
        i = bisect_left(piles, x)
        if i == len(piles):
            piles.append(x)
        else:
            piles[i] = x
    return len(piles)


def lds(p: Sequence[int]) -> int:
    """Length of the longest strictly decreasing subsequence."""
    return lis([-x for x in p])


def avoids(p: Sequence[int], params: Params) -> bool:
    return lis(p) < params.k and lds(p) < params.ell


def reverse(p: Sequence[int]) -> Permutation:
    return tuple(reversed(p))


def extend(p: Sequence[int], direction: Direction, slot: int) -> Permutation:
    """Lengthen ``p`` by one entry.

    RIGHT/LEFT append/prepend the value ``slot`` after bumping every existing
    value >= ``slot``. TOP inserts n+1 at position ``slot``; BOTTOM bumps every
    value and inserts 1 at position ``slot``.
    """
    n = len(p)
    if not 1 <= slot <= n + 1:
        raise IndexError(f"slot {slot} out of range 1..{n + 1}")
    if direction is Direction.RIGHT:
        return tuple(x + 1 if x >= slot else x for x in p) + (slot,)
    if direction is Direction.LEFT:
        return (slot,) + tuple(x + 1 if x >= slot else x for x in p)
    if direction is Direction.TOP:
        return tuple(p[: slot - 1]) + (n + 1,) + tuple(p[slot - 1 :])
    shifted = tuple(x + 1 for x in p)
    return shifted[: slot - 1] + (1,) + shifted[slot - 1 :]


def is_crucial(p: Sequence[int], params: Params, cls: CrucialClass) -> bool:
    """Literal definition: ``p`` avoids, and every extension in every
    direction of ``cls`` does not."""
    if not avoids(p, params):
        return False
    n = len(p)
    return all(
        not avoids(extend(p, d, slot), params)
        for d in cls.directions
        for slot in range(1, n + 2)
    )


def max_n() -> int:
    """The brute-force length cap, honouring ``CRUCIALPERM_MAX_N``."""
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None


def _check_budget(n: int, cap: int | None) -> None:
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    limit = max_n() if cap is None else cap
    if n > limit:
        raise BudgetError("brute-force enumeration", n, limit)


# --- fast enumeration ------------------------------------------------------
#
# Depth-first search over prefixes in lexicographic order. A prefix is kept
# only while it avoids both monotone patterns, so the leaves are exactly the
# avoiding permutations. At a leaf the four extension families are decided
# from the lengths of the longest monotone runs ending/starting at each entry:
# a one-point extension can only create a forbidden run that passes through
# the new point.


def _leaf_flags(p: list[int], inc_end: list[int], dec_end: list[int], k: int, ell: int) -> int:
    """Bitmask of the directions in which every extension of ``p`` fails to
    avoid: bit 0 right, 1 left, 2 top, 3 bottom."""
    n = len(p)
    inc_start = [1] * n
    dec_start = [1] * n
    for a in range(n - 1, -1, -1):
        pa = p[a]
        bi = bd = 0
        for b in range(a + 1, n):
            pb = p[b]
            if pb > pa:
                if inc_start[b] > bi:
                    bi = inc_start[b]
            elif dec_start[b] > bd:
                bd = dec_start[b]
        inc_start[a] = bi + 1
        dec_start[a] = bd + 1

    km, lm = k - 1, ell - 1
    flags = 0

    # by value: index v-1 holds the statistic of the entry whose value is v
    ie = [0] * n
    de = [0] * n
    ist = [0] * n
    dst = [0] * n
    for a in range(n):
        v = p[a] - 1
        ie[v] = inc_end[a]
        de[v] = dec_end[a]
        ist[v] = inc_start[a]
        dst[v] = dec_start[a]

    # RIGHT with new value s: increasing runs ending below s, decreasing runs
    # ending at values >= s.
    if _all_slots_blocked(ie, de, km, lm):
        flags |= 1
    # LEFT with new value s: increasing runs starting at values >= s,
    # decreasing runs starting below s.
    if _all_slots_blocked(dst, ist, lm, km):
        flags |= 2
    # TOP at position s: increasing runs ending before s, decreasing runs
    # starting at or after s.
    if _all_slots_blocked(inc_end, dec_start, km, lm):
        flags |= 4
    # BOTTOM at position s: decreasing runs ending before s, increasing runs
    # starting at or after s.
    if _all_slots_blocked(dec_end, inc_start, lm, km):
        flags |= 8
    return flags


def _all_slots_blocked(before: list[int], after: list[int], need_before: int, need_after: int) -> bool:
    """True iff for every cut point s in 0..n, max(before[:s]) >= need_before
    or max(after[s:]) >= need_after."""
    n = len(before)
    suffix = [0] * (n + 1)
    m = 0
    for a in range(n - 1, -1, -1):
        if after[a] > m:
            m = after[a]
        suffix[a] = m
    prefix = 0
    for s in range(n + 1):
        if prefix < need_before and suffix[s] < need_after:
            return False
        if s < n and before[s] > prefix:
            prefix = before[s]
    return True


_CLASS_MASKS = {
    CrucialClass.RIGHT_CRUCIAL: 0b0001,
    CrucialClass.BICRUCIAL: 0b0011,
    CrucialClass.TRICRUCIAL: 0b0111,
    CrucialClass.QUADROCRUCIAL: 0b1111,
}


def _avoiders(n: int, k: int, ell: int, first: int | None = None) -> Iterator[tuple[list[int], list[int], list[int]]]:
    """Yield (p, inc_end, dec_end) for every avoider of length n in
    lexicographic order; the yielded lists are reused, copy before keeping."""
    p: list[int] = []
    inc_end: list[int] = []
    dec_end: list[int] = []
    used = [False] * (n + 2)

    def rec() -> Iterator[tuple[list[int], list[int], list[int]]]:
        depth = len(p)
        if depth == n:
            yield p, inc_end, dec_end
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            bi = bd = 0
            for a in range(depth):
                pa = p[a]
                if pa < v:
                    if inc_end[a] > bi:
                        bi = inc_end[a]
                elif dec_end[a] > bd:
                    bd = dec_end[a]
            if bi + 1 >= k or bd + 1 >= ell:
                continue
            used[v] = True
            p.append(v)
            inc_end.append(bi + 1)
            dec_end.append(bd + 1)
            yield from rec()
            p.pop()
            inc_end.pop()
            dec_end.pop()
            used[v] = False

    if first is None:
        yield from rec()
        return
    if not 1 <= first <= n:
        return
    if k <= 1 or ell <= 1:
        return
    used[first] = True
    p.append(first)
    inc_end.append(1)
    dec_end.append(1)
    yield from rec()


def enumerate_crucial(n: int, params: Params, cls: CrucialClass, *, cap: int | None = None) -> Iterator[Permutation]:
    """Stream every crucial permutation of length ``n`` in lexicographic order.

    Raises BudgetError when ``n`` exceeds ``cap`` (default: ``max_n()``).
    """
    _check_budget(n, cap)
    mask = _CLASS_MASKS[cls]
    k, ell = params.k, params.ell
    for p, inc_end, dec_end in _avoiders(n, k, ell):
        if _leaf_flags(p, inc_end, dec_end, k, ell) & mask == mask:
            yield tuple(p)


def count_partition(n: int, params: Params, first: int) -> dict[CrucialClass, int]:
    """Per-class counts among permutations of length ``n`` starting with ``first``."""
    counts = dict.fromkeys(ALL_CLASSES, 0)
    k, ell = params.k, params.ell
    for p, inc_end, dec_end in _avoiders(n, k, ell, first=first):
        flags = _leaf_flags(p, inc_end, dec_end, k, ell)
        if flags & 1:
            for cls, mask in _CLASS_MASKS.items():
                if flags & mask == mask:
                    counts[cls] += 1
    return counts


def _count_partition_star(args: tuple[int, int, int, int]) -> dict[CrucialClass, int]:
    n, k, ell, first = args
    return count_partition(n, Params(k, ell), first)


def count_crucial_partitioned(
    n: int, params: Params, *, cap: int | None = None, workers: int = 1
) -> list[dict[CrucialClass, int]]:
    """Counts for all four classes, split by first entry (index 0 is first=1).

    With ``workers > 1`` the partitions run in a process pool; results are
    identical either way.
    """
    _check_budget(n, cap)
    jobs = [(n, params.k, params.ell, first) for first in range(1, n + 1)]
    if workers > 1 and n >= 8:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_count_partition_star, jobs))
    return [_count_partition_star(job) for job in jobs]


def count_crucial(n: int, params: Params, *, cap: int | None = None, workers: int = 1) -> dict[CrucialClass, int]:
    """Brute-force counts of crucial permutations of length ``n``, all classes at once."""
    total = dict.fromkeys(ALL_CLASSES, 0)
    for part in count_crucial_partitioned(n, params, cap=cap, workers=workers):
        for cls, c in part.items():
            total[cls] += c
    return total
