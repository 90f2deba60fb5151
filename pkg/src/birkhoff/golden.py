"""Published reference volumes, read from the checked-in constants files."""
from __future__ import annotations

from fractions import Fraction
from importlib import resources
from typing import Dict, Union

from .assembly import VolumeReport, parse_result
from .exact import canonicalize

GOLDEN_FILES: Dict[str, str] = {"b10": "b10_volume.txt"}


def golden_path(name: str):
    if name not in GOLDEN_FILES:
        raise KeyError(f"unknown golden value {name!r}; known: {', '.join(sorted(GOLDEN_FILES))}")
    return resources.files("birkhoff") / "data" / GOLDEN_FILES[name]


def golden_volume(name: str) -> Fraction:
    return parse_result(golden_path(name).read_text(encoding="ascii")).volume


def verify_golden(volume: Union[VolumeReport, Fraction], golden_num: int, golden_den: int) -> bool:
    """Rational equality by cross-multiplication, so 9/8 matches 27/24."""
    value = volume.volume if isinstance(volume, VolumeReport) else Fraction(volume)
    golden = canonicalize(golden_num, golden_den)
    return value.numerator * golden.denominator == golden.numerator * value.denominator
