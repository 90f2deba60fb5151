from fractions import Fraction

import pytest

from birkhoff.assembly import (
    ConsistencyError,
    EhrhartResult,
    StructuralError,
    ValueSet,
    assemble,
    collect_values,
    constraint_points,
    ehrhart_polynomial,
    format_result,
    integrality_window,
    parse_result,
    required_value_count,
    structural_checks,
    volume_from_polynomial,
)
from birkhoff.exact import Polynomial, interpolate
from birkhoff.oracle import count_dp, count_series


@pytest.mark.parametrize("n, expected", [(3, 1), (10, 36), (4, 3), (1, 0), (2, 0)])
def test_required_value_count(n, expected):
    assert required_value_count(n) == expected


def test_assemble_n2():
    res = assemble(ValueSet(2, {}))
    assert res.poly == Polynomial([1, 1])


def test_assemble_n3():
    res = assemble(ValueSet(3, {1: 6}))
    assert res.poly.degree == 4
    assert [res.poly(t) for t in (2, 3, 4)] == [21, 55, 120]
    assert res.poly == interpolate(list(enumerate(count_series(3, 4))))


def test_assemble_n4_matches_dp_beyond_inputs():
    res = assemble(ValueSet(4, {1: 24, 2: 282, 3: 2008}))
    assert res.poly.degree == 9
    for t in range(4, 10):
        assert res.poly(t) == count_dp(4, t)


def test_engine_agreement():
    for n in (3, 4):
        oracle = interpolate(list(enumerate(count_series(n, (n - 1) ** 2))))
        assert ehrhart_polynomial(n, "ct").poly == oracle


@pytest.mark.parametrize("n, leading, volume", [(2, Fraction(1), Fraction(2)), (3, Fraction(1, 8), Fraction(9, 8))])
def test_volume_examples(n, leading, volume):
    report = volume_from_polynomial(ehrhart_polynomial(n, "dp"))
    assert (report.leading, report.volume) == (leading, volume)


def test_volume_degree_mismatch():
    with pytest.raises(Exception):
        volume_from_polynomial(EhrhartResult(3, Polynomial([1, 1])))


def test_structural_checks_pass_and_values():
    r3 = ehrhart_polynomial(3, "ct")
    assert all(structural_checks(r3).values())
    assert r3.poly(-3) == 1
    r2 = ehrhart_polynomial(2, "ct")
    structural_checks(r2)
    assert r2.poly(-2) == -1


def test_structural_checks_catch_tampered_anchor():
    good = ehrhart_polynomial(3, "ct").poly
    tampered = EhrhartResult(3, Polynomial([2, *good.coeffs[1:]]))
    with pytest.raises(StructuralError) as info:
        structural_checks(tampered)
    assert info.value.check == "anchor"


def test_integrality_and_positivity():
    for n in range(2, 6):
        res = ehrhart_polynomial(n, "ct")
        big_t = required_value_count(n)
        for t in range(-(2 * n + big_t), big_t + 6):
            assert res.poly(t).denominator == 1
        report = volume_from_polynomial(res)
        assert report.leading > 0 and report.volume > 0
        assert report.volume == report.leading * n ** (n - 1)


def test_point_count_is_degree_plus_two():
    for n in range(2, 8):
        vs = ValueSet(n, {t: 1 for t in range(1, required_value_count(n) + 1)})
        assert len(constraint_points(vs)) == (n - 1) ** 2 + 2


@pytest.mark.parametrize("n", [3, 4])
def test_single_point_corruption_trips_spare_point(n):
    """Corrupting any one interpolation point by +-1 is always detected."""
    points = constraint_points(collect_values(n, "dp"))
    d = (n - 1) ** 2
    for i in range(len(points)):
        for delta in (1, -1):
            bad = list(points)
            bad[i] = (bad[i][0], bad[i][1] + delta)
            poly = interpolate(bad[: d + 1])
            x, y = bad[-1]
            assert poly(x) != y


def test_untampered_spare_point_passes():
    for n in (3, 4, 5):
        assemble(collect_values(n, "ct"))


def test_valueset_validation():
    with pytest.raises(ValueError):
        ValueSet(4, {1: 24, 2: 282})
    with pytest.raises(ValueError):
        ValueSet(3, {1: 0})


def test_integrality_window_bounds():
    w = integrality_window(4)
    assert (w.start, w.stop - 1) == (-11, 3)


def test_result_document_round_trip():
    res = ehrhart_polynomial(4, "ct")
    text = format_result(res, task_count=105)
    doc = parse_result(text)
    assert doc.to_result().poly == res.poly
    assert doc.volume == Fraction(176, 2835)
    assert doc.fields["task-count"] == "105"
    assert "wall-time" not in doc.fields
    assert "wall-time=1.500" in format_result(res, 105, wall_time=1.5)


def test_consistency_error_on_inconsistent_spare(monkeypatch):
    import birkhoff.assembly as asm

    real = asm.constraint_points

    def skewed(vs):
        pts = real(vs)
        x, y = pts[-1]
        return pts[:-1] + [(x, y + 1)]

    monkeypatch.setattr(asm, "constraint_points", skewed)
    with pytest.raises(ConsistencyError):
        asm.assemble(ValueSet(3, {1: 6}))
