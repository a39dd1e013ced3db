"""Robinson-Schensted row insertion and its inverse."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .permcore import Permutation
from .tableau import Tableau


@dataclass(frozen=True)
class TableauPair:
    P: Tableau
    Q: Tableau

    @property
    def shape(self) -> tuple[int, ...]:
        return self.P.shape

    def validate(self) -> None:
        if self.P.shape != self.Q.shape:
            raise ValidationError(f"P has shape {self.P.shape} but Q has shape {self.Q.shape}")
        for name, t in (("P", self.P), ("Q", self.Q)):
            if not t.is_standard():
                raise ValidationError(f"{name} is not a standard Young tableau: {t}")


def rsk(p: Sequence[int]) -> TableauPair:
    """Insert p_1, ..., p_n into P by row bumping; Q records where each new
    cell appeared."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(p, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            current = P[row]
            # values are distinct, so bisect_right finds the first entry > x
            j = bisect_right(current, x)
            if j == len(current):
                current.append(x)
                Q[row].append(step)
                break
            current[j], x = x, current[j]
            row += 1
    return TableauPair(Tableau.from_rows(P), Tableau.from_rows(Q))


def inverse_rsk(pair: TableauPair) -> Permutation:
    """Recover the permutation by reverse bumping, removing the cell labelled
    n, n-1, ..., 1 in Q."""
    pair.validate()
    P = [list(r) for r in pair.P.rows]
    n = pair.Q.n
    where = {v: (r, c) for r, row in enumerate(pair.Q.rows) for c, v in enumerate(row)}
    out = [0] * n
    for step in range(n, 0, -1):
        r, c = where[step]
        x = P[r].pop(c)
        if not P[r]:
            P.pop(r)
        for above in range(r - 1, -1, -1):
            current = P[above]
            # largest entry smaller than x gets bumped back up
            j = bisect_right(current, x) - 1
            current[j], x = x, current[j]
        out[step - 1] = x
    return tuple(out)
