"""Root systems, Weyl groups, chamber faces, and Levi combinatorics.

Everything is driven by a finite-type Cartan matrix over exact integer and
rational arithmetic.  The convention throughout: ``cartan[i][j]`` is the
pairing of the j-th simple root against the i-th simple coroot, so column j of
the Cartan matrix holds the fundamental-weight coordinates of alpha_j.  A
weight is dominant iff its coordinates are nonnegative, and the pairing with
the i-th simple coroot is coordinate i.

Weyl groups are generated by closure of the simple reflections acting on
fundamental-weight coordinates, with a hard size cap so desk-scale use fails
loudly instead of blowing up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import NotDominant, UnknownType, WeylGroupTooLarge
from .weights import Weight, is_dominant, wadd, weight, wscale, zero_weight

IntMatrix = tuple[tuple[int, ...], ...]

DEFAULT_WEYL_CAP = 1024


def _mat_apply(m: IntMatrix, w: Weight) -> Weight:
    # preserves the coordinate type: integer tuples stay integer tuples
    return tuple(sum(row[k] * w[k] for k in range(len(w))) for row in m)


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_inv_int(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular-up-to-sign integer matrix."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = a[i][n:]
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return tuple(out)


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on fundamental-weight coordinates, with parity sign."""

    matrix: IntMatrix
    sign: int

    def apply(self, w: Weight) -> Weight:
        return _mat_apply(self.matrix, w)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other: (self * other)(w) = self(other(w))."""
        return WeylElement(_mat_mul(self.matrix, other.matrix), self.sign * other.sign)

    def inverse(self) -> "WeylElement":
        return WeylElement(_mat_inv_int(self.matrix), self.sign)

    def is_identity(self) -> bool:
        return self.matrix == _identity(len(self.matrix))


@dataclass(frozen=True)
class Face:
    """Relative interior of a dominant-chamber face.

    Encoded by the set of simple-root indices (1-based) whose coroot pairing
    vanishes on the face; carries the half-sum of the Levi positive roots.
    """

    vanishing_set: frozenset[int]
    rho_sigma: Weight
    levi_positive_roots: tuple[Weight, ...]

    def label(self) -> str:
        if not self.vanishing_set:
            return "S={}"
        return "S={" + ",".join(str(i) for i in sorted(self.vanishing_set)) + "}"


@dataclass(frozen=True)
class StabilizerClass:
    """A Levi-conjugacy class of faces; any member presents the stabilizer type."""

    representative_faces: tuple[Face, ...]

    def semisimple_positive_roots(self) -> tuple[Weight, ...]:
        return self.representative_faces[0].levi_positive_roots

    def label(self) -> str:
        return " ~ ".join(f.label() for f in self.representative_faces)


# Cartan matrices, finite types, Bourbaki numbering.

def _chain(n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    return c


def _cartan_of_type(letter: str, n: int) -> list[list[int]]:
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter == "B" and n >= 2:
        c = _chain(n)
        c[n - 1][n - 2] = -2  # last simple root short
        return c
    if letter == "C" and n >= 2:
        c = _chain(n)
        c[n - 2][n - 1] = -2  # last simple root long
        return c
    if letter == "D" and n >= 3:
        c = _chain(n - 1)
        for row in c:
            row.append(0)
        c.append([0] * n)
        c[n - 1][n - 1] = 2
        c[n - 3][n - 1] = -1
        c[n - 1][n - 3] = -1
        c[n - 2][n - 1] = 0
        c[n - 1][n - 2] = 0
        return c
    if letter == "E" and n in (6, 7, 8):
        # node 2 hangs off node 4 of the chain 1-3-4-5-...-n
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        for a, b in zip(chain, chain[1:]):
            c[a - 1][b - 1] = -1
            c[b - 1][a - 1] = -1
        c[1][3] = -1
        c[3][1] = -1
        return c
    if letter == "F" and n == 4:
        c = _chain(4)
        c[2][1] = -2  # alpha_3, alpha_4 short
        c[1][2] = -1
        return c
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise UnknownType(f"unsupported simple type {letter}{n}")


def _parse_type_label(label: str) -> list[list[int]]:
    blocks = []
    for part in label.replace(" ", "").split("x"):
        if len(part) < 2 or part[0].upper() not in "ABCDEFG":
            raise UnknownType(f"cannot parse type label {part!r}")
        try:
            n = int(part[1:])
        except ValueError as exc:
            raise UnknownType(f"cannot parse rank in {part!r}") from exc
        blocks.append(_cartan_of_type(part[0].upper(), n))
    size = sum(len(b) for b in blocks)
    cartan = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            cartan[off + i][off: off + len(b)] = row
        off += len(b)
    return cartan


def _leading_minors_positive(c: list[list[int]]) -> bool:
    n = len(c)
    a = [[Fraction(x) for x in row] for row in c]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return False
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        # running leading minor after eliminating this column
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        if det <= 0:
            return False
    return True


def _symmetrizer(c: list[list[int]]) -> list[Fraction] | None:
    """Positive d_i with d_i c_ij = d_j c_ji, or None if none exist."""
    n = len(c)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i == j or c[i][j] == 0:
                    continue
                want = d[i] * Fraction(c[i][j], c[j][i])
                if d[j] is None:
                    d[j] = want
                    queue.append(j)
                elif d[j] != want:
                    return None
    return [x for x in d]  # type: ignore[misc]


def _validate_cartan(c: list[list[int]]) -> None:
    n = len(c)
    if n == 0 or any(len(row) != n for row in c):
        raise UnknownType("Cartan matrix must be square and nonempty")
    for i in range(n):
        for j in range(n):
            if not isinstance(c[i][j], int):
                raise UnknownType("Cartan matrix entries must be integers")
            if i == j and c[i][j] != 2:
                raise UnknownType("Cartan matrix diagonal must be 2")
            if i != j and c[i][j] > 0:
                raise UnknownType("Cartan matrix off-diagonal entries must be <= 0")
            if i != j and (c[i][j] == 0) != (c[j][i] == 0):
                raise UnknownType("Cartan matrix zero pattern must be symmetric")
    if _symmetrizer(c) is None or not _leading_minors_positive(c):
        raise UnknownType("Cartan matrix is not of finite type")


class RootSystem:
    """Cartan-matrix-driven combinatorics of a compact semisimple group.

    Fields follow the build contract: ``rank``, ``cartan_matrix``,
    ``simple_roots`` (omega-coordinates), ``positive_roots``, ``rho``, and the
    full list of ``weyl_elements``.  Instances are immutable after
    construction and safe to share.
    """

    def __init__(self, cartan: list[list[int]], weyl_cap: int = DEFAULT_WEYL_CAP,
                 label: str | None = None):
        _validate_cartan(cartan)
        self.label = label or "custom"
        self.rank = len(cartan)
        self.cartan_matrix: IntMatrix = tuple(tuple(row) for row in cartan)
        self.simple_roots: tuple[Weight, ...] = tuple(
            weight(self.cartan_matrix[i][j] for i in range(self.rank)) for j in range(self.rank)
        )
        self.weyl_elements: tuple[WeylElement, ...] = self._generate_weyl(weyl_cap)
        self._element_index = {w.matrix: w for w in self.weyl_elements}
        self._cartan_inverse = self._invert_cartan()
        self.positive_roots: tuple[Weight, ...] = self._find_positive_roots()
        self.rho: Weight = wscale(Fraction(1, 2),
                                  reduce(wadd, self.positive_roots, zero_weight(self.rank)))
        assert self.rho == weight([1] * self.rank), "rho must be all-ones in omega coordinates"
        self._coroot_funs, self._root_reflections = self._coroot_data()
        # 2 rho-check functional: positive on the open chamber, Weyl-orbit maxima dominant
        self._height_fun = tuple(
            sum(f[i] for f in self._coroot_funs.values()) for i in range(self.rank)
        )
        self._face_cache: dict[frozenset[int], Face] = {}
        self._class_cache: list[StabilizerClass] | None = None
        self.char_cache: dict = {}  # used by the character module

    # -- construction helpers -------------------------------------------------

    def _simple_reflection(self, i: int) -> WeylElement:
        m = [[1 if r == c else 0 for c in range(self.rank)] for r in range(self.rank)]
        for r in range(self.rank):
            m[r][i] -= self.cartan_matrix[r][i]
        return WeylElement(tuple(tuple(row) for row in m), -1)

    def _generate_weyl(self, cap: int) -> tuple[WeylElement, ...]:
        gens = [self._simple_reflection(i) for i in range(self.rank)]
        ident = WeylElement(_identity(self.rank), 1)
        seen = {ident.matrix: ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = g.compose(s)
                    if h.matrix not in seen:
                        seen[h.matrix] = h
                        nxt.append(h)
                        if len(seen) > cap:
                            raise WeylGroupTooLarge(
                                f"Weyl group of {self.label} exceeds cap {cap}")
            frontier = nxt
        order = [ident] + [w for w in seen.values() if w is not ident]
        return tuple(order)

    def _invert_cartan(self):
        n = self.rank
        a = [[Fraction(self.cartan_matrix[i][j]) for j in range(n)] for i in range(n)]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            s = a[col][col]
            a[col] = [x / s for x in a[col]]
            inv[col] = [x / s for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return tuple(tuple(row) for row in inv)

    def root_coordinates(self, w: Weight) -> Weight:
        """Coordinates of a vector in the simple-root basis."""
        return tuple(
            sum((self._cartan_inverse[i][j] * w[j] for j in range(self.rank)), Fraction(0))
            for i in range(self.rank)
        )

    def _find_positive_roots(self) -> tuple[Weight, ...]:
        roots = {w.apply(alpha) for w in self.weyl_elements for alpha in self.simple_roots}
        pos = []
        for beta in roots:
            k = self.root_coordinates(beta)
            if all(c >= 0 for c in k):
                assert all(c.denominator == 1 for c in k)
                pos.append((sum(k), beta))
        pos.sort(key=lambda p: (p[0], p[1]))
        return tuple(beta for _, beta in pos)

    def _coroot_data(self):
        funs: dict[Weight, tuple[int, ...]] = {}
        refl: dict[Weight, WeylElement] = {}
        targets = set(self.positive_roots)
        simple_refl = [self._simple_reflection(i) for i in range(self.rank)]
        for w in self.weyl_elements:
            if not targets - funs.keys():
                break
            w_inv = w.inverse()
            for i, alpha in enumerate(self.simple_roots):
                beta = w.apply(alpha)
                if beta in targets and beta not in funs:
                    funs[beta] = w_inv.matrix[i]
                    refl[beta] = w.compose(simple_refl[i]).compose(w_inv)
        assert set(funs) == targets
        return funs, refl

    # -- queries ---------------------------------------------------------------

    def coroot_pairing(self, lam: Weight, beta: Weight) -> Fraction:
        """Pairing of a weight with the coroot of a positive root."""
        fun = self._coroot_funs[beta]
        return sum((Fraction(fun[i]) * lam[i] for i in range(self.rank)), Fraction(0))

    def root_reflection(self, beta: Weight) -> WeylElement:
        return self._root_reflections[beta]

    def weyl_order(self) -> int:
        return len(self.weyl_elements)

    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(self._simple_reflection(i) for i in range(self.rank))

    def height_key(self, w: Weight):
        """Order key making the dominant member of each Weyl orbit maximal; lex tie-break."""
        ht = sum(h * c for h, c in zip(self._height_fun, w))
        return (ht, w)

    def identity(self) -> WeylElement:
        return self.weyl_elements[0]


def build_root_system(type_or_cartan, weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    """Build a root system from a type label ("A2", "B2", "A1xA1") or Cartan matrix."""
    if isinstance(type_or_cartan, str):
        cartan = _parse_type_label(type_or_cartan)
        return RootSystem(cartan, weyl_cap=weyl_cap, label=type_or_cartan.replace(" ", ""))
    cartan = [list(row) for row in type_or_cartan]
    return RootSystem(cartan, weyl_cap=weyl_cap)


def dominant_representative(w: Weight, rs: RootSystem) -> tuple[Weight, WeylElement]:
    """Dominant member of the Weyl orbit of ``w`` plus a witness mapping w to it."""
    cur = tuple(Fraction(c) for c in w)
    acc = rs.identity()
    while True:
        i = next((k for k, c in enumerate(cur) if c < 0), None)
        if i is None:
            return cur, acc
        refl = rs._simple_reflection(i)
        cur = refl.apply(cur)
        acc = refl.compose(acc)


def face_of(w: Weight, rs: RootSystem) -> Face:
    """Face of the dominant chamber whose relative interior contains ``w``."""
    if not is_dominant(w):
        raise NotDominant(f"face_of requires a dominant weight, got {w}")
    vanishing = frozenset(i + 1 for i, c in enumerate(w) if c == 0)
    return face_from_vanishing_set(vanishing, rs)


def face_from_vanishing_set(vanishing: frozenset[int], rs: RootSystem) -> Face:
    vanishing = frozenset(vanishing)
    if not vanishing <= set(range(1, rs.rank + 1)):
        raise UnknownType(f"vanishing set {set(vanishing)} out of range for rank {rs.rank}")
    cached = rs._face_cache.get(vanishing)
    if cached is not None:
        return cached
    levi = tuple(
        beta for beta in rs.positive_roots
        if all(c == 0 or (i + 1) in vanishing
               for i, c in enumerate(rs.root_coordinates(beta)))
    )
    rho_sigma = wscale(Fraction(1, 2), reduce(wadd, levi, zero_weight(rs.rank)))
    f = Face(vanishing, rho_sigma, levi)
    rs._face_cache[vanishing] = f
    return f


def all_faces(rs: RootSystem) -> list[Face]:
    """All 2^rank chamber faces, smallest vanishing sets first."""
    out = []
    for r in range(rs.rank + 1):
        for combo in itertools.combinations(range(1, rs.rank + 1), r):
            out.append(face_from_vanishing_set(frozenset(combo), rs))
    return out


def is_regular(w: Weight, rs: RootSystem) -> bool:
    """True iff the weight pairs nonzero against every positive coroot."""
    return all(rs.coroot_pairing(w, beta) != 0 for beta in rs.positive_roots)


def _maps_levi_onto(elem: WeylElement, source: tuple[Weight, ...],
                    target: tuple[Weight, ...]) -> bool:
    allowed = set(target) | {tuple(-c for c in t) for t in target}
    return all(elem.apply(beta) in allowed for beta in source)


def levi_conjugate(f1: Face, f2: Face, rs: RootSystem) -> WeylElement | None:
    """Witness mapping the Levi root set of f1 onto that of f2 (up to sign), if any."""
    if len(f1.levi_positive_roots) != len(f2.levi_positive_roots):
        return None
    for elem in rs.weyl_elements:
        if _maps_levi_onto(elem, f1.levi_positive_roots, f2.levi_positive_roots):
            return elem
    return None


def stabilizer_classes(rs: RootSystem) -> list[StabilizerClass]:
    """Partition of all chamber faces into Levi-conjugacy classes."""
    if rs._class_cache is not None:
        return rs._class_cache
    faces = all_faces(rs)
    classes: list[list[Face]] = []
    for f in faces:
        for cls in classes:
            if levi_conjugate(cls[0], f, rs) is not None:
                cls.append(f)
                break
        else:
            classes.append([f])
    result = [StabilizerClass(tuple(cls)) for cls in classes]
    rs._class_cache = result
    return result


def stabilizer_class_of_face(f: Face, rs: RootSystem) -> StabilizerClass:
    for cls in stabilizer_classes(rs):
        if f in cls.representative_faces:
            return cls
    raise UnknownType(f"face {f.label()} is not a chamber face of {rs.label}")
