"""
Closed-form counts of crucial permutations and of the constrained tableau
families behind them.

Everything is exact integer arithmetic. Where a formula has a rational
prefactor the numerator is multiplied out first and divided once at the end;
``InexactDivision`` is raised if that division leaves a remainder, which can
only mean a mistranscribed formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .errors import DomainError
from .permcore import CrucialClass, Params


class InexactDivision(ArithmeticError):
    pass


def _div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InexactDivision(f"{num} is not divisible by {den}")
    return q


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def binomial(a: int, b: int) -> int:
    """C(a, b), taken to be 0 when b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def multinomial(a: int, *parts: int) -> int:
    """a! / (b! c! ...); the parts must be nonnegative and sum to ``a``."""
    if any(p < 0 for p in parts) or sum(parts) != a:
        raise DomainError(f"multinomial parts {parts} do not sum to {a}")
    out = factorial(a)
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class FormulaReport:
    theorem_id: str
    params: Params
    value: int
    n: int | None = None
    indices: dict[str, int] = field(default_factory=dict)
    special_cased: bool = False


# --- right-crucial ---------------------------------------------------------


def right_crucial_next(params: Params) -> int:
    """Right-crucial permutations of the next-minimal length k+ell-2."""
    params.require_theorem_range()
    k, ell = params.k, params.ell
    return _div((k - 2) * (ell - 2) * (k + ell - 4) * binomial(k + ell - 2, ell - 1), k + ell - 3)


# --- bicrucial ---------------------------------------------------------------


def bicrucial_next(params: Params) -> int:
    """Bicrucial permutations of length k+2*ell-4 (k >= ell)."""
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    if (k, ell) == (4, 3):
        return 25
    if (k, ell) == (4, 4):
        return 756
    main = _div(
        (1 + _delta(k, ell))
        * (k + 2 * ell - 7) * (k + 2 * ell - 4) * (k - 3)
        * multinomial(k + 2 * ell - 5, k - 2, ell - 3, ell),
        (k + ell - 4) * (k + ell - 3),
    )
    extra = 0
    if k - 1 == ell:
        extra = _div((3 * k - 6) * multinomial(3 * k - 7, k - 4, k - 2, k - 1), (2 * k - 5) * (2 * k - 4))
    return main + extra


def _two_row_col_chain(k: int, n: int) -> int:
    # SYT of shape (k-1, n-k+1) with n at the end of row 2 and the column chain
    with_max = _div((2 * k - n) * binomial(n, k), n)
    without_chain = _div((2 * k - n - 1) * binomial(n - 1, k - 1), n - 1)
    return with_max - without_chain


def _square_case(k: int) -> int:
    return _div(binomial(2 * k - 2, k - 1), k) ** 2


def bicrucial_k3(k: int, n: int) -> int:
    """(k,3)-bicrucial permutations of length n; 0 outside k+1..2k-2."""
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    if k + 1 <= n <= 2 * k - 3:
        return _div((2 * k - n - 1) * binomial(n + 1, k), n + 1) * _two_row_col_chain(k, n)
    if n == 2 * k - 2:
        return _square_case(k)
    return 0


# --- tricrucial --------------------------------------------------------------


def _corner_split(k: int, ell: int, i: int) -> int:
    return _div(i * binomial(k + i - 4, i - 1) * binomial(2 * ell - i - 2, ell - 1), 2 * ell - i - 2)


def tricrucial_min(params: Params) -> int:
    """Tricrucial permutations of the minimal length k+2*ell-5 (k >= ell)."""
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    total = sum(_corner_split(k, ell, i) for i in range(1, ell))
    return (1 + _delta(k, ell)) * total


TRI_NEXT_POLICIES = ("corrected", "printed", "clamped")


def tricrucial_next(params: Params, policy: str = "corrected") -> int:
    """Tricrucial permutations of length k+2*ell-4 (k >= ell).

    ``policy`` selects how the inner sum over j is read. "printed" runs j up
    to i+1 with the signed factor (ell-j-2); "clamped" does the same with that
    factor floored at 0; "corrected" (the default) stops at j = i, where the
    counted tableau family is nonempty. Only "corrected" agrees with
    exhaustive enumeration for ell >= 4.
    """
    params.require_theorem_range(k_ge_ell=True)
    if (params.k, params.ell) == (4, 3):
        return 25
    if (params.k, params.ell) == (4, 4):
        return 540
    return tricrucial_next_general(params, policy)


DELTA_ORIENTATIONS = ("printed", "swapped")


def tricrucial_next_general(params: Params, policy: str = "corrected", delta_orientation: str = "printed") -> int:
    """The general tricrucial next-minimal expression with no special-cased
    parameters.

    ``delta_orientation`` chooses the trailing sum present when k-1 = ell:
    "printed" sums C(ell+i-4, i-1) C(2k-i-2, k-1) terms over i < k, "swapped"
    exchanges k and ell (summing over i < ell).
    """
    if policy not in TRI_NEXT_POLICIES:
        raise DomainError(f"unknown policy {policy!r}; expected one of {TRI_NEXT_POLICIES}")
    if delta_orientation not in DELTA_ORIENTATIONS:
        raise DomainError(f"unknown orientation {delta_orientation!r}; expected one of {DELTA_ORIENTATIONS}")
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    total = 0
    for i in range(0, ell - 1):
        j_top = i if policy == "corrected" else i + 1
        inner = 0
        for j in range(0, j_top + 1):
            weight = ell - j - 2
            if policy == "clamped" and weight < 0:
                weight = 0
            inner += weight * binomial(ell + j - 2, ell - 2)
        total += binomial(ell + k - i - 5, k - 3) * inner + _wide_corner_inner(k, ell, i)
    total *= (1 + _delta(k, ell)) * (k + 2 * ell - 7)
    if k - 1 == ell:
        if delta_orientation == "printed":
            total += sum(_corner_split(ell, k, i) for i in range(1, k))
        else:
            total += sum(_corner_split(k, ell, i) for i in range(1, ell))
    return total


def _wide_corner_inner(k: int, ell: int, i: int) -> int:
    return _div(
        (ell + k - i - 3) * (k - 3) * (ell - i - 2)
        * binomial(ell + k - i - 5, k - 3) * binomial(ell + i - 1, ell - 1),
        (k - 2) * (ell + i - 1),
    )


def tricrucial_k3(k: int, n: int) -> int:
    """(k,3)-tricrucial permutations of length n; 0 outside k+1..2k-2."""
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    if k + 1 <= n <= 2 * k - 3:
        return _div((2 * k - n) * binomial(n, k), n) * _two_row_col_chain(k, n)
    if n == 2 * k - 2:
        return _square_case(k)
    return 0


# --- quadrocrucial -----------------------------------------------------------


def quadrocrucial_next(params: Params) -> int:
    """Quadrocrucial permutations of length k+2*ell-4 (k >= ell)."""
    params.require_theorem_range(k_ge_ell=True)
    k, ell = params.k, params.ell
    if (k, ell) == (4, 3):
        return 25
    if (k, ell) == (4, 4):
        return 756
    return (1 + _delta(k, ell)) * (k + 2 * ell - 7) ** 2 + _delta(k - 1, ell)


def quadrocrucial_k3(k: int, n: int) -> int:
    """(k,3)-quadrocrucial permutations of length n; 0 outside k+1..2k-2."""
    if k < 3:
        raise DomainError(f"need k >= 3, got {k}")
    if k + 1 <= n <= 2 * k - 3:
        return _two_row_col_chain(k, n) ** 2
    if n == 2 * k - 2:
        return _square_case(k)
    return 0


# --- constrained tableau families ------------------------------------------
#
# Each entry: (description, index names, domain check, closed form). The
# domain check returns an error message or None.

def _need(cond: bool, msg: str) -> str | None:
    return None if cond else msg


def _lemma_corner_split(k, ell, i):
    return _corner_split(k, ell, i)


def _lemma_two_row(k, ell, n):
    return _two_row_col_chain(k, n)


def _lemma_wide_inner(k, ell, i):
    return _wide_corner_inner(k, ell, i)


def _lemma_wide_outer(k, ell, i, j):
    return (ell - j - 2) * binomial(ell + k - i - 5, k - 3) * binomial(ell + j - 2, ell - 2)


LEMMAS = {
    "corner_split": (
        "SYT of shape (k-1, 2^(ell-2)) whose entries below t(1,k-1) are the rest of "
        "row 1 and the top i cells of column 1",
        ("i",),
        lambda k, ell, i: _need(k >= 3 and ell >= 3 and 1 <= i <= ell - 1, "need k, ell >= 3 and 1 <= i <= ell-1"),
        _lemma_corner_split,
    ),
    "two_row_column_chain": (
        "SYT of shape (k-1, n-k+1) with n ending row 2 and an increasing "
        "t(2,1) < t(i2,2) < ... < t(i_{k-1},k-1)",
        ("n",),
        lambda k, ell, n: _need(k >= 4 and k + 1 <= n <= 2 * k - 3, "need k >= 4 and k+1 <= n <= 2k-3"),
        _lemma_two_row,
    ),
    "wide_inner_corner": (
        "SYT of shape (k-1, 3, 2^(ell-3)) with t(2,3) < t(3,2) whose entries below "
        "t(1,k-1) are the rest of row 1, the top ell-i-1 cells of column 1 and (2,2)",
        ("i",),
        lambda k, ell, i: _need(k >= 4 and ell >= 3 and 0 <= i <= ell - 2, "need k >= 4, ell >= 3, 0 <= i <= ell-2"),
        _lemma_wide_inner,
    ),
    "wide_outer_corner": (
        "SYT of shape (k-1, 3, 2^(ell-3)) whose entries below t(1,k-1) are the rest "
        "of row 1 and the top ell-i-1 cells of column 1, with t(2,2) = t(1,k-1)+i-j+1",
        ("i", "j"),
        lambda k, ell, i, j: _need(
            k >= 4 and ell >= 3 and 0 <= i <= ell - 2 and 0 <= j <= i,
            "need k >= 4, ell >= 3, 0 <= i <= ell-2, 0 <= j <= i",
        ),
        _lemma_wide_outer,
    ),
    "hook_row_chain": (
        "SYT of shape (k-1, 2, 1^(ell-3)) with t(1,k-1) < t(2,j) < t(3,1) for some j",
        (),
        lambda k, ell: _need(k >= 3 and ell >= 3, "need k, ell >= 3"),
        lambda k, ell: k + ell - 4,
    ),
    "wide_both_chains": (
        "SYT of shape (k-1, 3, 2^(ell-3)) satisfying both the row chain from "
        "t(1,k-1) and the column chain from t(ell-1,1)",
        (),
        lambda k, ell: _need(k >= 5 and k >= ell >= 3, "need k >= 5 and k >= ell >= 3"),
        lambda k, ell: k + 2 * ell - 7,
    ),
    "tall_both_chains": (
        "SYT of shape (k-1, k-1, 2, 1^(ell-4)) satisfying both chains; the "
        "transpose of wide_both_chains with k and ell exchanged",
        (),
        lambda k, ell: _need(ell >= 5 and ell >= k >= 3, "need ell >= 5 and ell >= k >= 3"),
        lambda k, ell: 2 * k + ell - 7,
    ),
    "full_rows_both_chains": (
        "SYT of shape (k-1, k-1, 1^(k-4)) with t(1,k-1) < t(2,j) < t(3,1) for some j "
        "and t(k-2,1) < t(2,2)",
        (),
        lambda k, ell: _need(k >= 5 and ell == k - 1, "need k >= 5 and ell = k-1"),
        lambda k, ell: 1,
    ),
    "corner_bijection": (
        "size of either side of the explicit bijection between SYT of shape "
        "(k-1, 2^(ell-2)) with t(1,k-1) < t(2,2) and SYT of shape "
        "(ell-1, ell-1, 1^(k-3)) with t'(1,ell-1) < t'(2,j) < t'(3,1)",
        (),
        lambda k, ell: _need(k >= ell >= 3, "need k >= ell >= 3"),
        lambda k, ell: sum(_corner_split(k, ell, i) for i in range(1, ell)),
    ),
}


def lemma_count(lemma_id: str, params: Params, **indices: int) -> int:
    """Closed-form size of the constrained SYT family ``lemma_id``."""
    try:
        _, names, check, closed_form = LEMMAS[lemma_id]
    except KeyError:
        raise DomainError(f"unknown lemma {lemma_id!r}; known: {sorted(LEMMAS)}") from None
    if set(indices) != set(names):
        raise DomainError(f"{lemma_id} takes indices {names}, got {sorted(indices)}")
    args = [indices[name] for name in names]
    problem = check(params.k, params.ell, *args)
    if problem:
        raise DomainError(f"{lemma_id} at {params} {indices}: {problem}")
    return closed_form(params.k, params.ell, *args)


def lemma_index_range(lemma_id: str, params: Params) -> list[dict[str, int]]:
    """Every index assignment inside the lemma's domain (empty if none)."""
    _, names, check, _ = LEMMAS[lemma_id]
    k, ell = params.k, params.ell
    if not names:
        candidates = [{}]
    elif names == ("i",):
        candidates = [{"i": i} for i in range(0, ell)]
    elif names == ("n",):
        candidates = [{"n": n} for n in range(k + 1, 2 * k - 2)]
    else:
        candidates = [{"i": i, "j": j} for i in range(0, ell - 1) for j in range(0, i + 2)]
    return [c for c in candidates if check(k, ell, *(c[name] for name in names)) is None]


# --- length bounds and formula lookup ----------------------------------------


def length_bounds(params: Params, cls: CrucialClass) -> tuple[int, int, int]:
    """(minimal length, next-minimal length, stated maximal length)."""
    params.require_theorem_range()
    k, ell = params.k, params.ell
    low = k + ell - 3 if cls is CrucialClass.RIGHT_CRUCIAL else k + 2 * ell - 5
    return low, low + 1, (k - 1) * (ell - 1) - 1


def formulas_for(cls: CrucialClass, params: Params, n: int, *, tri_policy: str = "corrected") -> list[FormulaReport]:
    """Every closed form that claims to count ``cls`` at (params, n).

    Empty when nothing covers the cell. Bicrucial/tricrucial/quadrocrucial
    formulas assume k >= ell.
    """
    k, ell = params.k, params.ell
    if k < 3 or ell < 3:
        return []
    out: list[FormulaReport] = []
    special = (k, ell) in ((4, 3), (4, 4))
    if cls is CrucialClass.RIGHT_CRUCIAL:
        if n == k + ell - 2:
            out.append(FormulaReport("right_crucial_next", params, right_crucial_next(params), n))
        return out
    if k < ell:
        return out
    nxt = k + 2 * ell - 4
    if cls is CrucialClass.BICRUCIAL:
        if n == nxt:
            out.append(FormulaReport("bicrucial_next", params, bicrucial_next(params), n, special_cased=special))
        if ell == 3 and k + 1 <= n <= 2 * k - 2:
            out.append(FormulaReport("bicrucial_k3", params, bicrucial_k3(k, n), n))
    elif cls is CrucialClass.TRICRUCIAL:
        if n == nxt - 1:
            out.append(FormulaReport("tricrucial_min", params, tricrucial_min(params), n))
        if n == nxt:
            out.append(
                FormulaReport(
                    "tricrucial_next", params, tricrucial_next(params, tri_policy), n,
                    indices={}, special_cased=special,
                )
            )
        if ell == 3 and k + 1 <= n <= 2 * k - 2:
            out.append(FormulaReport("tricrucial_k3", params, tricrucial_k3(k, n), n))
    else:
        if n == nxt:
            out.append(FormulaReport("quadrocrucial_next", params, quadrocrucial_next(params), n, special_cased=special))
        if ell == 3 and k + 1 <= n <= 2 * k - 2:
            out.append(FormulaReport("quadrocrucial_k3", params, quadrocrucial_k3(k, n), n))
    return out
