"""Ground-truth lattice-point counts for dilated Birkhoff polytopes.

H_n(t) is the number of n x n nonnegative integer matrices whose rows and
columns all sum to t. Two independent counters live here: a pruned
entry-by-entry enumerator (tiny cases only) and a column-by-column dynamic
program over partial row sums.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .exact import weak_compositions

RowStateTable = Dict[Tuple[int, ...], int]


@dataclass(frozen=True)
class EhrhartInstance:
    n: int
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"matrix order must be >= 1, got {self.n}")
        if self.t < 0:
            raise ValueError(f"dilation must be >= 0, got {self.t}")


def count_naive(n: int, t: int) -> int:
    """Count by filling the matrix one entry at a time (row-major) with pruning."""
    EhrhartInstance(n, t)
    col_sums = [0] * n

    def fill(i: int, j: int, row_sum: int) -> int:
        if i == n:
            return 1
        if j == n - 1:
            # last entry of a row is forced
            x = t - row_sum
            if col_sums[j] + x > t:
                return 0
            if i == n - 1 and col_sums[j] + x != t:
                return 0
            col_sums[j] += x
            total = fill(i + 1, 0, 0)
            col_sums[j] -= x
            return total
        if i == n - 1:
            # last row is forced too
            x = t - col_sums[j]
            if row_sum + x > t:
                return 0
            col_sums[j] += x
            total = fill(i, j + 1, row_sum + x)
            col_sums[j] -= x
            return total
        total = 0
        for x in range(min(t - row_sum, t - col_sums[j]) + 1):
            col_sums[j] += x
            total += fill(i, j + 1, row_sum + x)
            col_sums[j] -= x
        return total

    return fill(0, 0, 0)


def _advance(table: RowStateTable, n: int, t: int) -> RowStateTable:
    out: RowStateTable = defaultdict(int)
    columns = list(weak_compositions(t, n))
    for state, mult in table.items():
        for col in columns:
            new = tuple(s + c for s, c in zip(state, col))
            if max(new) > t:
                continue
            out[new] += mult
    return dict(out)


def row_state_tables(n: int, t: int, columns: int) -> RowStateTable:
    """Partial row-sum table after placing ``columns`` columns."""
    table: RowStateTable = {(0,) * n: 1}
    for _ in range(columns):
        table = _advance(table, n, t)
    return table


def count_dp(n: int, t: int, order: str = "columns") -> int:
    """Transfer count over partial line sums.

    ``order="rows"`` runs the same recursion on the transposed matrix (states
    are partial column sums); the two must agree.
    """
    EhrhartInstance(n, t)
    if order not in ("columns", "rows"):
        raise ValueError(f"order must be 'columns' or 'rows', got {order!r}")
    if t == 0 or n == 1:
        return 1
    if order == "rows":
        return _count_rows(n, t)
    # the last column is forced: every state after n-1 columns completes uniquely
    table = row_state_tables(n, t, n - 1)
    return sum(table.values())


def _count_rows(n: int, t: int) -> int:
    # written independently of _advance so the two orders cross-check each other
    table: RowStateTable = {(0,) * n: 1}
    rows = list(weak_compositions(t, n))
    for _ in range(n):
        nxt: RowStateTable = defaultdict(int)
        for colsum, mult in table.items():
            for row in rows:
                new = tuple(a + b for a, b in zip(colsum, row))
                if all(v <= t for v in new):
                    nxt[new] += mult
        table = dict(nxt)
    return table.get((t,) * n, 0)


def count_series(n: int, t_max: int) -> List[int]:
    """[H_n(0), ..., H_n(t_max)]."""
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    return [count_dp(n, t) for t in range(t_max + 1)]
