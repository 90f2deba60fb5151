"""Ehrhart polynomial assembly from a minimal set of counts.

H_n has degree d = (n-1)^2. Besides the anchor H(0) = 1, reciprocity gives
zeros at -1, ..., -(n-1) and the functional equation
H(-n-t) = (-1)^(n-1) H(t). With these, the fresh values H(1..T),
T = (n-1)(n-2)/2, fix d+2 interpolation points: one more than needed. The
spare point is the built-in consistency check. H(1) = n! (the permutation
matrices) is checked as well whenever H(1) is an input.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .exact import Polynomial, format_rational, interpolate, parse_rational


class AssemblyError(Exception):
    """Base class for assembly and validation failures."""


class ConsistencyError(AssemblyError):
    pass


class IntegralityError(AssemblyError):
    pass


class StructuralError(AssemblyError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"structural check {check!r} failed: {detail}")
        self.check = check


def required_value_count(n: int) -> int:
    if n <= 1:
        return 0
    return (n - 1) * (n - 2) // 2


def degree_for(n: int) -> int:
    return (n - 1) ** 2


def reflection_sign(n: int) -> int:
    return -1 if (n - 1) % 2 else 1


@dataclass(frozen=True)
class ValueSet:
    n: int
    values: Mapping[int, int]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"assembly needs n >= 2, got {self.n}")
        need = set(range(1, required_value_count(self.n) + 1))
        missing = need - set(self.values)
        if missing:
            raise ValueError(f"value set for n={self.n} is missing t={sorted(missing)}")
        bad = [t for t in need if self.values[t] <= 0]
        if bad:
            raise ValueError(f"values must be positive, got nonpositive at t={bad}")


@dataclass(frozen=True)
class EhrhartResult:
    n: int
    poly: Polynomial
    engine: str = "ct"


@dataclass(frozen=True)
class VolumeReport:
    n: int
    leading: Fraction
    volume: Fraction


def constraint_points(vs: ValueSet) -> List[Tuple[int, int]]:
    """Interpolation points in assembly order; the final point is the spare one."""
    n, big_t = vs.n, required_value_count(vs.n)
    mirrored = {0: 1, **{k: vs.values[k] for k in range(1, big_t + 1)}}
    sign = reflection_sign(n)
    points = [(0, 1)]
    points += [(k, mirrored[k]) for k in range(1, big_t + 1)]
    points += [(-j, 0) for j in range(1, n)]
    points += [(-n - k, sign * mirrored[k]) for k in range(big_t + 1)]
    return points


def integrality_window(n: int) -> range:
    big_t = required_value_count(n)
    return range(-(2 * n + big_t), big_t + 1)


def assemble(vs: ValueSet, engine: str = "ct") -> EhrhartResult:
    points = constraint_points(vs)
    d = degree_for(vs.n)
    assert len(points) == d + 2
    poly = interpolate(points[: d + 1])
    if 1 in vs.values and vs.values[1] != math.factorial(vs.n):
        raise ConsistencyError(f"n={vs.n}: H(1) = {vs.values[1]}, but there are {vs.n}! permutation matrices")
    x, y = points[-1]
    got = poly(x)
    if got != y:
        raise ConsistencyError(
            f"n={vs.n}: spare point H({x}) should be {y}, interpolant gives {format_rational(got)}"
        )
    for t in integrality_window(vs.n):
        value = poly(t)
        if value.denominator != 1:
            raise IntegralityError(f"n={vs.n}: H({t}) = {format_rational(value)} is not an integer")
    return EhrhartResult(vs.n, poly, engine)


def volume_from_polynomial(res: EhrhartResult) -> VolumeReport:
    d = degree_for(res.n)
    if res.poly.degree != d:
        raise AssemblyError(f"n={res.n}: expected degree {d}, got {res.poly.degree}")
    leading = res.poly.leading
    return VolumeReport(res.n, leading, leading * res.n ** (res.n - 1))


def structural_checks(res: EhrhartResult) -> Dict[str, bool]:
    """Exact structural validation; raises StructuralError naming the first failure."""
    n, poly = res.n, res.poly
    big_t = required_value_count(n)
    if poly.degree != degree_for(n):
        raise StructuralError("degree", f"expected {degree_for(n)}, got {poly.degree}")
    if poly(0) != 1:
        raise StructuralError("anchor", f"poly(0) = {format_rational(poly(0))}, expected 1")
    for j in range(1, n):
        if poly(-j) != 0:
            raise StructuralError("reciprocity-zeros", f"poly({-j}) = {format_rational(poly(-j))}")
    sign = reflection_sign(n)
    for t in range(2 * big_t + 3):
        if poly(-n - t) != sign * poly(t):
            raise StructuralError(
                "functional-equation",
                f"poly({-n - t}) = {format_rational(poly(-n - t))} but {sign} * poly({t}) = "
                f"{format_rational(sign * poly(t))}",
            )
    if poly(1) != math.factorial(n):
        raise StructuralError("permutations", f"poly(1) = {format_rational(poly(1))}, expected {n}!")
    if poly.leading <= 0:
        raise StructuralError("positivity", "leading coefficient is not positive")
    return {
        "degree": True,
        "anchor": True,
        "reciprocity-zeros": True,
        "functional-equation": True,
        "permutations": True,
        "positivity": True,
    }


def count_with(engine: str, n: int, t: int) -> int:
    from .ct import ct_count
    from .oracle import count_dp, count_naive

    counters = {"ct": ct_count, "dp": count_dp, "naive": count_naive}
    if engine not in counters:
        raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(counters)}")
    return counters[engine](n, t)


def collect_values(n: int, engine: str = "ct", jobs: int = 1) -> ValueSet:
    ts = list(range(1, required_value_count(n) + 1))
    if jobs > 1 and len(ts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(count_with, [engine] * len(ts), [n] * len(ts), ts))
    else:
        counts = [count_with(engine, n, t) for t in ts]
    return ValueSet(n, dict(zip(ts, counts)))


def ehrhart_polynomial(n: int, engine: str = "ct", jobs: int = 1) -> EhrhartResult:
    """Full pipeline: count H_n(1..T) with the chosen engine, then assemble."""
    return assemble(collect_values(n, engine, jobs), engine=engine)


# -- result document ---------------------------------------------------------

RESULT_KEYS = ("n", "degree", "coefficients", "leading", "volume", "engine", "task-count")


def format_result(
    res: EhrhartResult,
    task_count: int = 0,
    wall_time: Optional[float] = None,
) -> str:
    """Flat ``key=value`` record, one key per line; rationals as ``p/q``.

    ``wall_time`` is only written when given so that --out files stay
    byte-identical across runs.
    """
    report = volume_from_polynomial(res)
    fields = {
        "n": str(res.n),
        "degree": str(res.poly.degree),
        "coefficients": ",".join(format_rational(c) for c in res.poly.coeffs),
        "leading": format_rational(report.leading),
        "volume": format_rational(report.volume),
        "engine": res.engine,
        "task-count": str(task_count),
    }
    if wall_time is not None:
        fields["wall-time"] = f"{wall_time:.3f}"
    return "".join(f"{k}={v}\n" for k, v in fields.items())


@dataclass
class ResultDocument:
    fields: Dict[str, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.fields["n"])

    @property
    def volume(self) -> Fraction:
        return parse_rational(self.fields["volume"])

    @property
    def leading(self) -> Fraction:
        return parse_rational(self.fields["leading"])

    def to_result(self) -> EhrhartResult:
        coeffs = [parse_rational(c) for c in self.fields["coefficients"].split(",")]
        return EhrhartResult(self.n, Polynomial(coeffs), self.fields.get("engine", "ct"))


def parse_result(text: str) -> ResultDocument:
    fields: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        fields[key.strip()] = value.strip()
    return ResultDocument(fields)
