"""Fixed-point localization for equivariant spin-c indices.

A manifold enters as a finite list of isolated torus-fixed points, each
carrying the determinant-line weight eta_p and the list of tangent weights.
The index is the finite Laurent polynomial

    sum_p  t^{eta_p/2} prod_j (t^{alpha_pj/2} - t^{-alpha_pj/2})^{-1},

computed by orienting every tangent weight against a generic rational
direction xi (each flip contributes a sign), expanding each inverted factor as
a geometric series t^{-alpha/2} sum_k t^{-k alpha}, truncating at a pairing
depth N along xi, and summing over fixed points.  All terms below the true
support cancel across fixed points; the engine verifies this by requiring the
results at depths N and N + stability_margin to coincide.

The per-fixed-point parity condition eta_p - sum_j alpha_pj in 2*Lambda is
checked at construction: it is exactly what makes every exponent above land in
the weight lattice.

All exponent bookkeeping runs on packed int64 lattice keys under numpy, with
explicit bound checks so the arithmetic stays exact.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import VirtualCharacter
from .errors import (
    NonGenericDirection,
    NotAdmissible,
    ParityViolation,
    SingularSamplePoint,
    SpindexError,
    UnstableCutoff,
)
from .orbits import CoadjointOrbit, _admissible_values, coadjoint_orbit, is_admissible
from .roots import (
    Face,
    RootSystem,
    StabilizerClass,
    build_root_system,
    face_from_vanishing_set,
    face_of,
    stabilizer_class_of_face,
)
from .weights import (
    Weight,
    format_weight,
    is_dominant,
    is_integral,
    wadd,
    wdot,
    weight,
    weight_from_json,
    weight_to_json,
    wneg,
    wscale,
    wsub,
    zero_weight,
)

CUTOFF_ENV_VAR = "SPINDEX_CUTOFF"

_A2_CACHE: RootSystem | None = None


def _a2() -> RootSystem:
    global _A2_CACHE
    if _A2_CACHE is None:
        _A2_CACHE = build_root_system("A2")
    return _A2_CACHE


@dataclass(frozen=True)
class FixedPointDatum:
    """Local data at one isolated fixed point: determinant weight and tangent weights."""

    label: str
    det_weight: Weight
    tangent_weights: tuple[Weight, ...]

    def __post_init__(self):
        object.__setattr__(self, "det_weight", weight(self.det_weight))
        object.__setattr__(
            self, "tangent_weights", tuple(weight(a) for a in self.tangent_weights))
        if not is_integral(self.det_weight):
            raise ParityViolation(
                f"fixed point {self.label!r}: determinant weight must be integral")
        for a in self.tangent_weights:
            if not is_integral(a):
                raise ParityViolation(
                    f"fixed point {self.label!r}: tangent weight {a} must be integral")
            if all(c == 0 for c in a):
                raise ParityViolation(
                    f"fixed point {self.label!r}: zero tangent weight (fixed points must be isolated)")
        gap = wsub(self.det_weight, _sum_weights(self.tangent_weights, len(self.det_weight)))
        if any(c.denominator != 1 or c.numerator % 2 for c in gap):
            raise ParityViolation(
                f"fixed point {self.label!r}: eta - sum(tangent weights) = "
                f"({format_weight(gap)}) is not in 2*Lambda; no spin-c structure "
                f"has this determinant")


def _sum_weights(ws, rank: int) -> Weight:
    total = zero_weight(rank)
    for w in ws:
        total = wadd(total, w)
    return total


@dataclass(frozen=True)
class KirwanPiece:
    """Declared portion of the Kirwan set lying in the closure of one face.

    Ray faces may carry closed segments along the ray; any face may carry a
    finite point list, read as the convex hull of the points.
    """

    face: Face
    segments: tuple[tuple[Fraction, Fraction], ...] = ()
    points: tuple[Weight, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "segments",
            tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.segments))
        object.__setattr__(self, "points", tuple(weight(p) for p in self.points))


@dataclass(frozen=True)
class KirwanSet:
    pieces: tuple[KirwanPiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))


@dataclass(frozen=True)
class ExpansionConfig:
    """Expansion direction and truncation depth for the localization engine.

    ``None`` fields resolve per model: the direction comes from a fixed list
    of candidates (first one pairing nonzero against every tangent weight),
    the cutoff from a provable window bound, overridable through the
    SPINDEX_CUTOFF environment variable.
    """

    direction_xi: Weight | None = None
    cutoff: int | None = None
    stability_margin: int = 5

    def __post_init__(self):
        if self.direction_xi is not None:
            object.__setattr__(self, "direction_xi", weight(self.direction_xi))
        if self.cutoff is not None and self.cutoff < 1:
            raise SpindexError("cutoff must be a positive integer")
        if self.stability_margin < 1:
            raise SpindexError("stability margin must be a positive integer")


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    """A spin-c K-manifold at localization resolution.

    Fixed-point data drives the index; the generic stabilizer class and the
    declared Kirwan set are metadata consumed by the reduction bookkeeping.
    """

    root_system: RootSystem
    fixed_points: tuple[FixedPointDatum, ...]
    generic_stabilizer: StabilizerClass
    kirwan: KirwanSet
    name: str
    info: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "fixed_points", tuple(self.fixed_points))
        object.__setattr__(self, "info", tuple(self.info))
        rs = self.root_system
        for fp in self.fixed_points:
            if len(fp.det_weight) != rs.rank:
                raise SpindexError(
                    f"fixed point {fp.label!r} has rank-{len(fp.det_weight)} data "
                    f"but the group has rank {rs.rank}")
        for piece in self.kirwan.pieces:
            honest = face_from_vanishing_set(piece.face.vanishing_set, rs)
            if piece.face != honest:
                raise SpindexError(
                    f"Kirwan piece face {piece.face.label()} is not a chamber face")
            free = [i for i in range(rs.rank) if (i + 1) not in piece.face.vanishing_set]
            if piece.segments and len(free) != 1:
                raise SpindexError("segment pieces are only defined on ray faces")
            for lo, hi in piece.segments:
                if lo < 0 or hi < lo:
                    raise SpindexError(f"malformed Kirwan segment [{lo}, {hi}]")
            for p in piece.points:
                if len(p) != rs.rank or not is_dominant(p):
                    raise SpindexError(f"Kirwan point {p} is not in the dominant chamber")
                if any(p[i - 1] != 0 for i in piece.face.vanishing_set):
                    raise SpindexError(
                        f"Kirwan point {p} is not in the closure of {piece.face.label()}")

    def info_dict(self) -> dict[str, str]:
        return dict(self.info)


# -- expansion direction ------------------------------------------------------


def _direction_candidates(rs: RootSystem) -> list[Weight]:
    r = rs.rank
    h = weight(rs._height_fun)
    cands = [h]
    cands.append(wadd(h, weight(Fraction(k, 2 * r + 3) for k in range(1, r + 1))))
    cands.append(wadd(h, weight(Fraction((r + 2) ** k, 97) for k in range(r))))
    cands.append(weight(1 + Fraction(1, 97 ** k) for k in range(1, r + 1)))
    cands.append(wadd(h, weight(Fraction((2 * r + 5) ** k, 8191) for k in range(r))))
    return cands


def _tangent_set(model: ManifoldModel) -> set[Weight]:
    return {a for fp in model.fixed_points for a in fp.tangent_weights}


def _is_generic(xi: Weight, tangents) -> bool:
    return all(wdot(a, xi) != 0 for a in tangents)


def resolve_config(model: ManifoldModel, cfg: ExpansionConfig | None) -> ExpansionConfig:
    """Fill in direction and cutoff defaults for a model; pure and deterministic."""
    cfg = cfg or ExpansionConfig()
    tangents = _tangent_set(model)
    if cfg.direction_xi is not None:
        if not _is_generic(cfg.direction_xi, tangents):
            bad = next(a for a in sorted(tangents) if wdot(a, cfg.direction_xi) == 0)
            raise NonGenericDirection(
                f"direction {format_weight(cfg.direction_xi)} is orthogonal to "
                f"tangent weight {format_weight(bad)}")
        xi = cfg.direction_xi
    else:
        xi = next((c for c in _direction_candidates(model.root_system)
                   if _is_generic(c, tangents)), None)
        if xi is None:
            raise NonGenericDirection(
                f"no candidate expansion direction is generic for model {model.name!r}")
    cutoff = cfg.cutoff
    if cutoff is None and os.environ.get(CUTOFF_ENV_VAR):
        cutoff = int(os.environ[CUTOFF_ENV_VAR])
    return ExpansionConfig(direction_xi=xi, cutoff=cutoff,
                           stability_margin=cfg.stability_margin)


# -- the engine ----------------------------------------------------------------


def _scale_direction(xi: Weight) -> tuple[tuple[int, ...], int]:
    den = math.lcm(*(c.denominator for c in xi))
    return tuple(int(c * den) for c in xi), den


class _PointData:
    __slots__ = ("label", "nu", "oriented", "sign", "base", "pairs")

    def __init__(self, fp: FixedPointDatum, xi_int):
        sign = 1
        oriented = []
        pairs = []
        for a in fp.tangent_weights:
            p = sum(int(c) * x for c, x in zip(a, xi_int))
            if p < 0:
                a = wneg(a)
                p = -p
                sign = -sign
            oriented.append(tuple(int(c) for c in a))
            pairs.append(p)
        nu = wscale(Fraction(1, 2),
                    wsub(fp.det_weight, _sum_weights([weight(a) for a in oriented],
                                                     len(fp.det_weight))))
        assert is_integral(nu)  # guaranteed by the parity check
        self.label = fp.label
        self.nu = tuple(int(c) for c in nu)
        self.oriented = oriented
        self.sign = sign
        self.base = sum(n * x for n, x in zip(self.nu, xi_int))
        self.pairs = pairs


def _packing(points: list[_PointData], slab: int) -> tuple[list[int], list[int]]:
    """Per-axis offsets and strides covering every exponent reachable in the slab."""
    rank = len(points[0].nu) if points else 0
    bounds = []
    for i in range(rank):
        reach = Fraction(0)
        for pd in points:
            for a, n in zip(pd.oriented, pd.pairs):
                if a[i]:
                    reach = max(reach, Fraction(abs(a[i]) * slab, n))
        base = max(abs(pd.nu[i]) for pd in points) + math.ceil(reach)
        bounds.append(base + 1)
    strides = []
    acc = 1
    for b in bounds:
        strides.append(acc)
        acc *= 2 * b + 1
    if acc >= 2 ** 62:
        raise SpindexError("expansion window too large to pack into 64-bit keys")
    return bounds, strides


def _expand_point(pd: _PointData, floor: int, strides) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All series terms of one fixed point with pairing >= floor."""
    if pd.base < floor:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    key0 = sum(c * s for c, s in zip(pd.nu, strides))
    keys = np.array([key0], dtype=np.int64)
    pair = np.array([pd.base], dtype=np.int64)
    coef = np.array([1], dtype=np.int64)
    for a, n in zip(pd.oriented, pd.pairs):
        step = sum(c * s for c, s in zip(a, strides))
        kmax = (pair - floor) // n
        counts = kmax + 1
        total = int(counts.sum())
        if total == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty, empty
        reps = np.repeat(np.arange(len(keys)), counts)
        karr = np.arange(total, dtype=np.int64) - np.repeat(counts.cumsum() - counts, counts)
        keys = keys[reps] - karr * step
        pair = pair[reps] - karr * n
        coef = coef[reps]
        keys, pair, coef = _combine(keys, pair, coef)
        # series lengths are < 2^13 at desk scale, so sums of values below
        # 2^48 cannot wrap int64 in the next combine
        if len(coef) and int(coef.max()) >= 2 ** 48:
            raise SpindexError("coefficient growth exceeded the exact int64 budget")
    if pd.sign < 0:
        coef = -coef
    return keys, pair, coef


def _combine(keys, pair, coef):
    if len(keys) == 0:
        return keys, pair, coef
    order = np.argsort(keys, kind="stable")
    keys, pair, coef = keys[order], pair[order], coef[order]
    fresh = np.empty(len(keys), dtype=bool)
    fresh[0] = True
    fresh[1:] = keys[1:] != keys[:-1]
    starts = np.flatnonzero(fresh)
    return keys[starts], pair[starts], np.add.reduceat(coef, starts)


def localized_index(model: ManifoldModel, cfg: ExpansionConfig | None = None) -> VirtualCharacter:
    """Equivariant index of the model as a finite virtual character.

    Raises UnstableCutoff when the truncation window is too shallow: the
    results at depth N and N + stability_margin must be identical.
    """
    rs = model.root_system
    for fp in model.fixed_points:
        FixedPointDatum(fp.label, fp.det_weight, fp.tangent_weights)  # re-check parity
    if not model.fixed_points:
        return VirtualCharacter.zero()
    cfg = resolve_config(model, cfg)
    xi_int, den = _scale_direction(cfg.direction_xi)
    points = [_PointData(fp, xi_int) for fp in model.fixed_points]
    top = max(pd.base for pd in points)
    low = min(pd.base - sum(pd.pairs) for pd in points)
    cutoff = cfg.cutoff
    if cutoff is None:
        cutoff = max(1, math.ceil(Fraction(top - low, den))) + 2
    margin = cfg.stability_margin
    floor = top - (cutoff + margin) * den
    result_floor = top - cutoff * den
    bounds, strides = _packing(points, top - floor)
    parts = [_expand_point(pd, floor, strides) for pd in points]
    keys = np.concatenate([p[0] for p in parts])
    pair = np.concatenate([p[1] for p in parts])
    coef = np.concatenate([p[2] for p in parts])
    if len(keys) == 0:
        return VirtualCharacter.zero()
    keys, pair, coef = _combine(keys, pair, coef)
    live = coef != 0
    keys, pair, coef = keys[live], pair[live], coef[live]
    unstable = pair < result_floor
    if np.any(unstable):
        raise UnstableCutoff(
            f"cutoff {cutoff} is too shallow for model {model.name!r}: "
            f"{int(unstable.sum())} uncanceled terms in the stability margin; raise N")
    # balanced mixed-radix decode: shift into nonnegative digits, then peel
    offset = sum(b * s for b, s in zip(bounds, strides))
    terms = []
    for key, c in zip(keys.tolist(), coef.tolist()):
        k = int(key) + offset
        coords = []
        for b in bounds:
            k, digit = divmod(k, 2 * b + 1)
            coords.append(digit - b)
        assert k == 0
        terms.append((weight(coords), int(c)))
    return VirtualCharacter(terms)


def numeric_cross_check(model: ManifoldModel, chi: VirtualCharacter,
                        trials: int = 20, seed: int = 0) -> float:
    """Max deviation between the exact rational fixed-point sum and chi at random torus points.

    Sample points too close to a singular hyperplane of any tangent weight are
    rejected and redrawn; exhausting the retry budget raises
    SingularSamplePoint.
    """
    rank = model.root_system.rank
    rng = random.Random(seed)
    tangents = sorted(_tangent_set(model))
    worst = 0.0
    for _ in range(trials):
        theta = None
        for _attempt in range(200):
            cand = [2.0 * math.pi * rng.random() for _ in range(rank)]
            sines = [math.sin(sum(float(c) * t for c, t in zip(a, cand)) / 2.0)
                     for a in tangents]
            if all(abs(s) >= 0.1 for s in sines):
                theta = cand
                break
        if theta is None:
            raise SingularSamplePoint(
                "no numerically safe torus point found within the retry budget")
        total = 0j
        for fp in model.fixed_points:
            num = np.exp(1j * sum(float(c) * t for c, t in zip(fp.det_weight, theta)) / 2.0)
            den = 1.0 + 0j
            for a in fp.tangent_weights:
                ang = sum(float(c) * t for c, t in zip(a, theta)) / 2.0
                den *= np.exp(1j * ang) - np.exp(-1j * ang)
            total += num / den
        worst = max(worst, abs(total - chi.evaluate(theta)))
    return worst


# -- model builders -------------------------------------------------------------


def orbit_model(rs: RootSystem, mu: Weight) -> ManifoldModel:
    """Localization model of the coadjoint orbit through an admissible dominant weight.

    Fixed points sit at the Weyl images of mu (one per coset of the face
    stabilizer); the determinant weight at the image w(mu) is 2 w(mu) and the
    tangent weights are the w-images of the positive roots outside the Levi.
    """
    mu = weight(mu)
    if not is_admissible(mu, rs):
        raise NotAdmissible(f"orbit through ({format_weight(mu)}) is not admissible")
    sigma = face_of(mu, rs)
    levi = set(sigma.levi_positive_roots)
    moving = [beta for beta in rs.positive_roots if beta not in levi]
    seen: dict[Weight, FixedPointDatum] = {}
    for w in rs.weyl_elements:
        image = w.apply(mu)
        if image in seen:
            continue
        seen[image] = FixedPointDatum(
            label=f"w({format_weight(image)})",
            det_weight=wscale(2, image),
            tangent_weights=tuple(w.apply(beta) for beta in moving),
        )
    return ManifoldModel(
        root_system=rs,
        fixed_points=tuple(seen.values()),
        generic_stabilizer=stabilizer_class_of_face(sigma, rs),
        kirwan=KirwanSet((KirwanPiece(face=sigma, points=(mu,)),)),
        name=f"orbit:{rs.label}:{format_weight(mu)}",
        info=(("builder", "orbit"), ("group", rs.label), ("mu", format_weight(mu))),
    )


LITERAL_CONVENTION = "literal"
CALIBRATED_CONVENTION = "calibrated"


def su3_flag_bundle(a: int, b: int, convention: str = CALIBRATED_CONVENTION) -> ManifoldModel:
    """The SU(3) family: the partial flag bundle fibered in projective lines.

    Six fixed points, indexed by an unordered pair {i,j} in {1,2,3} (the plane
    spanned by e_i, e_j) and a line choice (the remaining basis vector e_k, or
    the external direction e_4).  Line-bundle weights at a fixed point are
    x_i + x_j for the plane determinant and x_k (or 0 for the external line)
    for the quotient line, with x_1, x_2, x_3 the weights of the defining
    representation.

    The naive determinant labeling (2a+1, 2b+1) on the two line bundles is not
    a spin-c determinant: it fails the parity check at the external-line fixed
    points.  Passing convention="literal" keeps that labeling and raises
    ParityViolation, documenting the gap.  The calibrated convention is the
    unique parity-respecting affine relabeling matching the known index
    decompositions of the family:

        det = 2(a-b+2) * (plane weight) + 2(-b) * (line weight) + anticanonical,

    equivalently the twisted-Dolbeault determinant of the (a-b+2, -b) line
    bundle.  Under it the fixed-point moment values land exactly on the
    declared Kirwan endpoints: (a+1) omega_2 at internal-line points and
    (b-a) omega_1 at external-line points.

    For b > a the declared Kirwan set is the non-convex union
    [0, b-a] omega_1 + [0, a+1] omega_2; for a >= b (the symplectic regime) it
    is the single segment [max(0, a-b), a+1] omega_2, the convex hull of the
    moment values in the chamber.
    """
    if a < 0 or b < 0:
        raise SpindexError("flag bundle parameters must be nonnegative integers")
    if convention not in (CALIBRATED_CONVENTION, LITERAL_CONVENTION):
        raise SpindexError(f"unknown determinant convention {convention!r}")
    rs = _a2()
    x = {1: weight([1, 0]), 2: weight([-1, 1]), 3: weight([0, -1])}
    fixed = []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        k = ({1, 2, 3} - {i, j}).pop()
        plane = wadd(x[i], x[j])
        for line_label, line_weight, last_tangent in (
            (f"e{k}", x[k], wneg(x[k])),
            ("e4", zero_weight(2), x[k]),
        ):
            tangents = (wsub(x[k], x[i]), wsub(x[k], x[j]), last_tangent)
            if convention == CALIBRATED_CONVENTION:
                det = wadd(wadd(wscale(2 * (a - b + 2), plane), wscale(-2 * b, line_weight)),
                           _sum_weights(tangents, 2))
            else:
                det = wadd(wscale(2 * a + 1, plane), wscale(2 * b + 1, line_weight))
            fixed.append(FixedPointDatum(
                label=f"plane=e{i}e{j},line={line_label}",
                det_weight=det,
                tangent_weights=tangents,
            ))
    ray_omega1 = face_from_vanishing_set(frozenset({2}), rs)
    ray_omega2 = face_from_vanishing_set(frozenset({1}), rs)
    if b > a:
        pieces = (
            KirwanPiece(face=ray_omega1, segments=((Fraction(0), Fraction(b - a)),)),
            KirwanPiece(face=ray_omega2, segments=((Fraction(0), Fraction(a + 1)),)),
        )
    else:
        pieces = (
            KirwanPiece(face=ray_omega2,
                        segments=((Fraction(max(0, a - b)), Fraction(a + 1)),)),
        )
    return ManifoldModel(
        root_system=rs,
        fixed_points=tuple(fixed),
        generic_stabilizer=stabilizer_class_of_face(ray_omega2, rs),
        kirwan=KirwanSet(pieces),
        name=f"su3-flag-bundle(a={a},b={b})",
        info=(
            ("builder", "su3-flag-bundle"),
            ("a", str(a)),
            ("b", str(b)),
            ("determinant_convention", convention),
            ("determinant_rule",
             "2(a-b+2)*plane - 2b*line + anticanonical" if convention == CALIBRATED_CONVENTION
             else "(2a+1)*plane + (2b+1)*line"),
        ),
    )


# -- Kirwan-set queries ---------------------------------------------------------


def _free_coordinate(face: Face, rank: int) -> int:
    free = [i for i in range(rank) if (i + 1) not in face.vanishing_set]
    assert len(free) == 1
    return free[0]


def _affine_solve(points: list[Weight], x: Weight) -> bool:
    """Exact test for one affinely independent subset: x = sum l_i p_i, l >= 0, sum l = 1."""
    rank = len(x)
    rows = [[p[i] for p in points] + [x[i]] for i in range(rank)]
    rows.append([Fraction(1)] * len(points) + [Fraction(1)])
    pivots = []
    r = 0
    for col in range(len(points)):
        piv = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            return False  # affinely dependent subset; skip
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = rows[r][col]
        rows[r] = [v / scale for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [v - f * u for v, u in zip(rows[k], rows[r])]
        pivots.append(r)
        r += 1
    if any(any(v != 0 for v in rows[k][:-1]) or rows[k][-1] != 0 for k in range(r, len(rows))):
        return False  # inconsistent
    coeffs = [rows[k][-1] for k in pivots]
    return all(c >= 0 for c in coeffs)


def _in_hull(points: tuple[Weight, ...], x: Weight) -> bool:
    if x in points:
        return True
    rank = len(x)
    for size in range(1, min(len(points), rank + 1) + 1):
        for subset in itertools.combinations(points, size):
            if _affine_solve(list(subset), x):
                return True
    return False


def kirwan_contains(kirwan: KirwanSet, x: Weight, rs: RootSystem) -> bool:
    """Whether the declared Kirwan set covers the dominant point x."""
    x = weight(x)
    for piece in kirwan.pieces:
        if piece.segments:
            j = _free_coordinate(piece.face, rs.rank)
            if all(c == 0 for i, c in enumerate(x) if i != j):
                c = x[j]
                if any(lo <= c <= hi for lo, hi in piece.segments):
                    return True
        if piece.points and _in_hull(piece.points, x):
            return True
    return False


def kirwan_faces_met(kirwan: KirwanSet, rs: RootSystem) -> set[Face]:
    """Faces whose relative interior meets the declared Kirwan set."""
    met: set[Face] = set()
    vertex = face_from_vanishing_set(frozenset(range(1, rs.rank + 1)), rs)
    for piece in kirwan.pieces:
        for lo, hi in piece.segments:
            if hi > 0:
                met.add(piece.face)
            if lo == 0:
                met.add(vertex)
        if piece.points:
            for size in range(1, len(piece.points) + 1):
                for subset in itertools.combinations(piece.points, size):
                    zeros = frozenset(
                        i + 1 for i in range(rs.rank) if all(p[i] == 0 for p in subset))
                    met.add(face_from_vanishing_set(zeros, rs))
    return met


def kirwan_admissible_orbits(kirwan: KirwanSet, face: Face, rs: RootSystem) -> list[CoadjointOrbit]:
    """Admissible orbits whose representative lies in rel-int(face) and in the Kirwan set."""
    found: set[Weight] = set()
    shift = wsub(rs.rho, face.rho_sigma)
    if any(shift[i - 1].denominator != 1 for i in face.vanishing_set):
        return []
    free = [i for i in range(rs.rank) if (i + 1) not in face.vanishing_set]
    for piece in kirwan.pieces:
        if piece.segments and piece.face == face:
            j = _free_coordinate(face, rs.rank)
            for lo, hi in piece.segments:
                for c in _progression(shift[j] % 1, lo, hi):
                    mu = tuple(c if i == j else Fraction(0) for i in range(rs.rank))
                    found.add(mu)
        if piece.points:
            boxes = []
            ok = True
            for i in free:
                lo = min(p[i] for p in piece.points)
                hi = max(p[i] for p in piece.points)
                vals = _progression(shift[i] % 1, lo, hi)
                if not vals:
                    ok = False
                    break
                boxes.append(vals)
            if not ok:
                continue
            for combo in itertools.product(*boxes):
                mu = [Fraction(0)] * rs.rank
                for i, c in zip(free, combo):
                    mu[i] = c
                mu = tuple(mu)
                if _in_hull(piece.points, mu):
                    found.add(mu)
    orbits = [coadjoint_orbit(mu, rs) for mu in sorted(found)]
    return [o for o in orbits if o.face == face and is_admissible(o.mu, rs)]


_progression = _admissible_values  # strictly positive residue-class points in [lo, hi]


# -- moment sanity report --------------------------------------------------------


def moment_report(model: ManifoldModel) -> list[dict]:
    """Compare fixed-point moment values (eta_p / 2) against the declared Kirwan set.

    Purely informational: declared Kirwan data is connection-dependent
    metadata, so mismatches are surfaced, never fatal.
    """
    from .roots import dominant_representative

    rs = model.root_system
    rows = []
    for fp in model.fixed_points:
        moment = wscale(Fraction(1, 2), fp.det_weight)
        dom, _ = dominant_representative(moment, rs)
        rows.append({
            "label": fp.label,
            "moment": moment,
            "dominant_representative": dom,
            "in_declared_kirwan": kirwan_contains(model.kirwan, dom, rs),
        })
    return rows


# -- JSON model files -------------------------------------------------------------


def model_to_json_obj(model: ManifoldModel) -> dict:
    rs = model.root_system
    obj: dict = {"name": model.name}
    if rs.label != "custom":
        obj["group"] = rs.label
    else:
        obj["cartan_matrix"] = [list(row) for row in rs.cartan_matrix]
    obj["info"] = {k: v for k, v in model.info}
    obj["fixed_points"] = [
        {
            "label": fp.label,
            "det_weight": weight_to_json(fp.det_weight),
            "tangent_weights": [weight_to_json(a) for a in fp.tangent_weights],
        }
        for fp in model.fixed_points
    ]
    obj["generic_stabilizer"] = [
        sorted(f.vanishing_set) for f in model.generic_stabilizer.representative_faces
    ]
    obj["kirwan"] = [
        {
            "face": sorted(piece.face.vanishing_set),
            "segments": [[str(lo), str(hi)] for lo, hi in piece.segments],
            "points": [weight_to_json(p) for p in piece.points],
        }
        for piece in model.kirwan.pieces
    ]
    return obj


def model_from_json_obj(obj: dict) -> ManifoldModel:
    if "group" in obj:
        rs = build_root_system(obj["group"])
    else:
        rs = build_root_system(obj["cartan_matrix"])
    fixed = tuple(
        FixedPointDatum(
            label=e["label"],
            det_weight=weight_from_json(e["det_weight"]),
            tangent_weights=tuple(weight_from_json(t) for t in e["tangent_weights"]),
        )
        for e in obj["fixed_points"]
    )
    faces = tuple(
        face_from_vanishing_set(frozenset(s), rs) for s in obj["generic_stabilizer"]
    )
    if not faces:
        raise SpindexError("generic_stabilizer must list at least one face")
    from .roots import levi_conjugate

    for f in faces[1:]:
        if levi_conjugate(faces[0], f, rs) is None:
            raise SpindexError("generic_stabilizer faces are not mutually Levi-conjugate")
    pieces = tuple(
        KirwanPiece(
            face=face_from_vanishing_set(frozenset(e["face"]), rs),
            segments=tuple((Fraction(lo), Fraction(hi)) for lo, hi in e.get("segments", [])),
            points=tuple(weight_from_json(p) for p in e.get("points", [])),
        )
        for e in obj["kirwan"]
    )
    return ManifoldModel(
        root_system=rs,
        fixed_points=fixed,
        generic_stabilizer=StabilizerClass(faces),
        kirwan=KirwanSet(pieces),
        name=obj.get("name", "model"),
        info=tuple(sorted(obj.get("info", {}).items())),
    )
