"""Admissible coadjoint orbits and their equivariant spin-c indices.

An orbit through a dominant weight ``mu`` lying on the chamber face ``sigma``
is admissible when ``mu - rho + rho_sigma`` is a lattice weight.  Its spin-c
index is either zero (when ``mu + rho_sigma`` is singular) or the irreducible
representation with infinitesimal character ``mu + rho_sigma``; reports always
show both that character and the highest weight obtained by subtracting rho.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyFaceRegion, NotAdmissible, NotDominant
from .roots import Face, RootSystem, face_of, is_regular
from .weights import (
    Weight,
    format_weight,
    is_dominant,
    is_integral,
    wadd,
    wsub,
)

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CoadjointOrbit:
    """Orbit through its dominant representative, tagged with the containing face."""

    mu: Weight
    face: Face

    def label(self) -> str:
        return f"K.({format_weight(self.mu)})"


@dataclass(frozen=True)
class OrbitIndex:
    """Spin-c index of an admissible orbit: zero or one irreducible.

    ``lam`` is the infinitesimal character of the irreducible (strictly
    dominant, integral); the highest weight is ``lam - rho``.
    """

    lam: Weight | None

    @classmethod
    def zero(cls) -> "OrbitIndex":
        return cls(None)

    @classmethod
    def irreducible(cls, lam: Weight) -> "OrbitIndex":
        return cls(lam)

    @property
    def is_zero(self) -> bool:
        return self.lam is None

    def label(self) -> str:
        if self.lam is None:
            return "0"
        return f"pi({format_weight(self.lam)})"


def coadjoint_orbit(mu: Weight, rs: RootSystem) -> CoadjointOrbit:
    """Wrap a dominant weight as the orbit through it."""
    mu = tuple(Fraction(c) for c in mu)
    if not is_dominant(mu):
        raise NotDominant(f"orbit representative must be dominant, got {mu}")
    return CoadjointOrbit(mu, face_of(mu, rs))


def is_admissible(mu: Weight, rs: RootSystem) -> bool:
    """Lattice test mu - rho + rho_sigma integral, with sigma the face of mu."""
    if not is_dominant(mu):
        raise NotDominant(f"admissibility test requires a dominant weight, got {mu}")
    sigma = face_of(mu, rs)
    return is_integral(wadd(wsub(mu, rs.rho), sigma.rho_sigma))


def orbit_spin_index(orbit: CoadjointOrbit, rs: RootSystem) -> OrbitIndex:
    """Index of an admissible orbit: zero on a wall, else one irreducible."""
    if not is_admissible(orbit.mu, rs):
        raise NotAdmissible(f"orbit {orbit.label()} is not admissible")
    shifted = wadd(orbit.mu, orbit.face.rho_sigma)
    if not is_regular(shifted, rs):
        return OrbitIndex.zero()
    # a regular shift of an admissible point is dominant and integral
    assert is_dominant(shifted) and is_integral(shifted)
    return OrbitIndex.irreducible(shifted)


def _free_indices(face: Face, rank: int) -> list[int]:
    return [i for i in range(rank) if (i + 1) not in face.vanishing_set]


def _admissible_values(base_residue: Fraction, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Values c > 0 in [lo, hi] with c congruent to base_residue mod 1."""
    start = max(lo, Fraction(0))
    # smallest value >= start, strictly positive, in the residue class
    offset = (base_residue - start) % 1
    c = start + offset
    if c == 0:
        c += 1
    out = []
    while c <= hi:
        if c > 0:
            out.append(c)
        c += 1
    return out


def admissible_orbits_on_face(
    face: Face,
    bounds,
    rs: RootSystem,
) -> list[CoadjointOrbit]:
    """Admissible orbits in a bounded region of a face's relative interior.

    ``bounds`` is a single ``(lo, hi)`` interval applied to every free
    coordinate, or a mapping from 1-based free coordinate index to such an
    interval.  The region is always intersected with the open face, so a lower
    bound of 0 means "arbitrarily small positive".  The vertex face needs no
    bounds.  Results are sorted by their free-parameter tuple.
    """
    rank = rs.rank
    free = _free_indices(face, rank)
    if not free:
        mu = tuple(Fraction(0) for _ in range(rank))
        return [coadjoint_orbit(mu, rs)] if is_admissible(mu, rs) else []
    if bounds is None:
        raise EmptyFaceRegion(f"face {face.label()} has free coordinates; bounds required")
    if isinstance(bounds, dict):
        per_coord = {}
        for i in free:
            if (i + 1) not in bounds:
                raise EmptyFaceRegion(f"no bounds for free coordinate {i + 1}")
            lo, hi = bounds[i + 1]
            per_coord[i] = (Fraction(lo), Fraction(hi))
    else:
        lo, hi = bounds
        per_coord = {i: (Fraction(lo), Fraction(hi)) for i in free}
    for lo, hi in per_coord.values():
        if hi < lo:
            raise EmptyFaceRegion(f"empty interval [{lo}, {hi}]")
    # fixed coordinates must themselves satisfy the integrality condition
    shift = wsub(rs.rho, face.rho_sigma)
    if any(shift[i - 1].denominator != 1 for i in face.vanishing_set):
        return []
    choices = []
    for i in free:
        lo, hi = per_coord[i]
        vals = _admissible_values(shift[i] % 1, lo, hi)
        if not vals:
            return []
        choices.append(vals)
    orbits = []
    for combo in sorted(itertools.product(*choices)):
        mu = [Fraction(0)] * rank
        for i, c in zip(free, combo):
            mu[i] = c
        orbit = coadjoint_orbit(tuple(mu), rs)
        assert is_admissible(orbit.mu, rs)
        orbits.append(orbit)
    return orbits
