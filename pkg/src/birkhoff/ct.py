"""Constant-term engine for H_n(t).

H_n(t) is the coefficient of z_1^t ... z_n^t in h_t(z)^n, one factor of the
complete homogeneous polynomial per matrix column. Writing

    h_t(z) = sum_j z_j^(t+n-1) / prod_{k != j} (z_j - z_k)

and expanding the n-th power multinomially turns the count into a sum over
weak compositions m of n of

    sign(m) * multinomial(n; m) * CT[ prod_j z_j^(m_j(t+n-1) - t)
                                       * prod_{j<k} (z_j - z_k)^-(m_j+m_k) ]

where CT is the constant term of the Laurent expansion on
|z_1| > |z_2| > ... > |z_n| and sign(m) = (-1)^sum_k (k-1) m_k. Each
composition is an independent integer task.
"""
from __future__ import annotations

import math
import re
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

Exponents = Tuple[int, ...]

_TASK_ID = re.compile(r"n=(\d+);t=(\d+);lo=(\d+);hi=(\d+)")


def composition_count(n: int) -> int:
    """Number of weak compositions of n into n parts, C(2n-1, n-1)."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    return math.comb(2 * n - 1, n - 1)


def _tail_count(total: int, parts: int) -> int:
    # weak compositions of `total` into `parts` parts
    if parts == 0:
        return 1 if total == 0 else 0
    return math.comb(total + parts - 1, parts - 1)


def composition_unrank(n: int, index: int) -> Tuple[int, ...]:
    """The index-th weak composition of n into n parts, lexicographically decreasing."""
    size = composition_count(n)
    if not 0 <= index < size:
        raise IndexError(f"composition index {index} out of range [0, {size})")
    out = []
    remaining = n
    for pos in range(n - 1):
        parts_after = n - pos - 1
        v = remaining
        while True:
            block = _tail_count(remaining - v, parts_after)
            if index < block:
                break
            index -= block
            v -= 1
        out.append(v)
        remaining -= v
    out.append(remaining)
    return tuple(out)


def composition_rank(m: Iterable[int]) -> int:
    m = tuple(m)
    n = len(m)
    if sum(m) != n or any(x < 0 for x in m):
        raise ValueError(f"{m} is not a weak composition of {n} into {n} parts")
    rank = 0
    remaining = n
    for pos in range(n - 1):
        parts_after = n - pos - 1
        for v in range(remaining, m[pos], -1):
            rank += _tail_count(remaining - v, parts_after)
        remaining -= m[pos]
    return rank


@dataclass(frozen=True)
class CompositionTask:
    n: int
    t: int
    m: Tuple[int, ...]
    index: int

    @classmethod
    def from_index(cls, n: int, t: int, index: int) -> CompositionTask:
        return cls(n, t, composition_unrank(n, index), index)


def task_id(n: int, t: int, lo: int, hi: int) -> str:
    return f"n={n};t={t};lo={lo};hi={hi}"


def parse_task_id(text: str) -> Tuple[int, int, int, int]:
    match = _TASK_ID.fullmatch(text)
    if match is None:
        raise ValueError(f"malformed task id {text!r}")
    n, t, lo, hi = (int(g) for g in match.groups())
    return n, t, lo, hi


def composition_sign(m: Tuple[int, ...]) -> int:
    return -1 if sum(k * mk for k, mk in enumerate(m)) % 2 else 1


def multinomial(m: Tuple[int, ...]) -> int:
    out = math.factorial(sum(m))
    for x in m:
        out //= math.factorial(x)
    return out


def cone_constant_term(exponents: Exponents, pair_powers: Dict[Tuple[int, int], int]) -> int:
    """Constant term of prod z_j^a_j * prod_{j<k} (z_j - z_k)^-e_jk on |z_1| > ... > |z_n|.

    Variables are extracted innermost first. At extraction of z_v every pair
    factor (z_j - z_v)^-e with j < v expands as
    sum_i C(e-1+i, i) z_v^i z_j^(-e-i); only index tuples with sum i = -X_v
    survive, where X_v is the current exponent of z_v. The frontier maps the
    exponent vector of the not yet extracted variables to its coefficient.
    """
    n = len(exponents)
    frontier: Dict[Exponents, int] = {tuple(exponents): 1}
    for v in range(n - 1, -1, -1):
        partners = [(j, pair_powers.get((j, v), 0)) for j in range(v)]
        partners = [(j, e) for j, e in partners if e > 0]
        # (exponents of z_1..z_v-1, still-needed power of z_v) -> coefficient
        work: Dict[Tuple[Exponents, int], int] = defaultdict(int)
        for key, coeff in frontier.items():
            x_v = key[v]
            if x_v > 0:
                continue
            if not partners and x_v != 0:
                continue
            # every partner takes at least z_j^-e regardless of i
            base = list(key[:v])
            for j, e in partners:
                base[j] -= e
            work[(tuple(base), -x_v)] += coeff
        for idx, (j, e) in enumerate(partners):
            last = idx == len(partners) - 1
            nxt: Dict[Tuple[Exponents, int], int] = defaultdict(int)
            for (key, need), coeff in work.items():
                choices = (need,) if last else range(need + 1)
                for i in choices:
                    new = list(key)
                    new[j] -= i
                    nxt[(tuple(new), need - i)] += coeff * math.comb(e - 1 + i, i)
            work = nxt
        frontier = defaultdict(int)
        for (key, need), coeff in work.items():
            if need == 0 and coeff:
                frontier[key] += coeff
    return sum(frontier.values())


def term_value(task: CompositionTask, early_exit: bool = True) -> int:
    """Signed integer contribution of one composition to H_n(t)."""
    n, t, m = task.n, task.t, tuple(task.m)
    if t < 1:
        raise ValueError("term_value needs t >= 1; H_n(0) = 1 is handled by the caller")
    if len(m) != n or sum(m) != n or any(x < 0 for x in m):
        raise ValueError(f"{m} is not a weak composition of {n} into {n} parts")
    if early_exit and m[-1] * (t + n - 1) - t > 0:
        # the innermost variable can only gain degree, so it never reaches z_n^0
        return 0
    exponents = tuple(mj * (t + n - 1) - t for mj in m)
    pair_powers = {(j, k): m[j] + m[k] for j in range(n) for k in range(j + 1, n)}
    ct = cone_constant_term(exponents, pair_powers)
    return composition_sign(m) * multinomial(m) * ct


def range_sum(n: int, t: int, lo: int, hi: int) -> int:
    return sum(term_value(CompositionTask.from_index(n, t, i)) for i in range(lo, hi))


def ct_count(n: int, t: int, task_range: Optional[Tuple[int, int]] = None, jobs: int = 1) -> int:
    """H_n(t) (or a partial sum over a composition index range) via constant terms."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if t < 0:
        raise ValueError(f"dilation must be >= 0, got {t}")
    size = composition_count(n)
    lo, hi = (0, size) if task_range is None else task_range
    if not (isinstance(lo, int) and isinstance(hi, int) and 0 <= lo <= hi <= size):
        raise ValueError(f"malformed task range [{lo}, {hi}) for {size} compositions")
    if t == 0:
        # the single zero matrix is booked against composition 0 so ranges still partition
        return 1 if lo == 0 < hi else 0
    if jobs <= 1 or hi - lo <= 1:
        return range_sum(n, t, lo, hi)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(range_sum, n, t, i, i + 1) for i in range(lo, hi)]
        return sum(f.result() for f in futures)
