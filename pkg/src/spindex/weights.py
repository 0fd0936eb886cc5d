"""Weights as exact rational coordinate vectors.

A weight is a plain ``tuple`` of ``Fraction`` in the fundamental-weight basis
(omega_1, ..., omega_r).  With this convention the pairing of a weight with the
i-th simple coroot is just its i-th coordinate, so dominance and admissibility
tests are coordinate-local.  Tuples give hashability and value equality for
free; every function here returns normalized tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Weight = tuple[Fraction, ...]


def weight(coords: Iterable[Fraction | int | str]) -> Weight:
    """Normalize an iterable of rational-like values into a Weight."""
    return tuple(Fraction(c) for c in coords)


def parse_weight(text: str) -> Weight:
    """Parse a comma-separated rational vector such as ``"3/2,0,-1"``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed weight string: {text!r}")
    return tuple(Fraction(p) for p in parts)


def format_weight(w: Sequence[Fraction]) -> str:
    """Inverse of :func:`parse_weight`; exact, no floats."""
    return ",".join(str(c) for c in w)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(c: Fraction | int, a: Weight) -> Weight:
    c = Fraction(c)
    return tuple(c * x for x in a)


def wdot(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> Fraction:
    """Plain coordinate pairing (used for expansion directions, not a W-invariant form)."""
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b, strict=True)), Fraction(0))


def is_integral(w: Weight) -> bool:
    """True when the weight lies in the weight lattice (all integer coordinates)."""
    return all(c.denominator == 1 for c in w)


def is_dominant(w: Weight) -> bool:
    return all(c >= 0 for c in w)


def is_strictly_dominant(w: Weight) -> bool:
    return all(c > 0 for c in w)


def zero_weight(rank: int) -> Weight:
    return (Fraction(0),) * rank


def weight_to_json(w: Weight) -> list[str]:
    """Rationals as strings, bit-exact round trip."""
    return [str(c) for c in w]


def weight_from_json(obj: Sequence[str]) -> Weight:
    return tuple(Fraction(c) for c in obj)
