"""Exact virtual-character arithmetic.

A virtual character is a finite integer combination of torus weights, stored
as a sparse map keyed by exact coordinates.  Irreducible characters are built
by exact division of alternating sums (the product with the Weyl denominator
is eliminated leading term by leading term), and decomposition into
irreducibles runs two independent algorithms - antisymmetrization and peeling
- whose agreement is enforced on every call.

Characters are indexed by infinitesimal character: ``pi(lam)`` has highest
weight ``lam - rho``.
"""

from __future__ import annotations

import cmath
import heapq
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    MethodMismatch,
    NotInShiftedLattice,
    NotRegularDominant,
    NotWeylInvariant,
    NonDominantLeadingTerm,
)
from .roots import RootSystem, WeylElement
from .weights import (
    Weight,
    format_weight,
    is_integral,
    is_strictly_dominant,
    wadd,
    wdot,
    weight_from_json,
    weight_to_json,
    wsub,
)

_DIVISION_STEP_CAP = 5_000_000


def _as_int(x) -> int:
    if isinstance(x, int):
        return x
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return f.numerator


class VirtualCharacter:
    """Finite integer-coefficient formal sum of lattice weights."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for w, c in items:
            # store integer tuples: they hash and compare equal to the
            # Fraction form, and keep the hot loops on machine integers
            try:
                w = tuple(_as_int(x) for x in w)
            except ValueError:
                raise NotInShiftedLattice(
                    f"character weight {tuple(w)} is not a lattice weight") from None
            c = int(c)
            if c:
                acc[w] = acc.get(w, 0) + c
                if acc[w] == 0:
                    del acc[w]
        self._terms = acc

    @classmethod
    def zero(cls) -> "VirtualCharacter":
        return cls()

    @classmethod
    def monomial(cls, w: Weight, coeff: int = 1) -> "VirtualCharacter":
        return cls([(w, coeff)])

    def terms(self) -> dict[Weight, int]:
        return dict(self._terms)

    def coefficient(self, w: Weight) -> int:
        return self._terms.get(tuple(Fraction(x) for x in w), 0)

    def support(self) -> list[Weight]:
        return sorted(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualCharacter) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
            if acc[w] == 0:
                del acc[w]
        out = VirtualCharacter.zero()
        out._terms = acc
        return out

    def __neg__(self) -> "VirtualCharacter":
        out = VirtualCharacter.zero()
        out._terms = {w: -c for w, c in self._terms.items()}
        return out

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return VirtualCharacter.zero()
            out = VirtualCharacter.zero()
            out._terms = {w: c * other for w, c in self._terms.items()}
            return out
        if isinstance(other, VirtualCharacter):
            acc: dict[tuple[int, ...], int] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    key = tuple(a + b for a, b in zip(w1, w2))
                    acc[key] = acc.get(key, 0) + c1 * c2
            out = VirtualCharacter.zero()
            out._terms = {w: c for w, c in acc.items() if c}
            return out
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, elem: WeylElement) -> "VirtualCharacter":
        out = VirtualCharacter.zero()
        out._terms = {elem.apply(w): c for w, c in self._terms.items()}
        return out

    def is_weyl_invariant(self, rs: RootSystem) -> bool:
        return all(self.apply(s) == self for s in rs.simple_reflections())

    def evaluate(self, theta: Iterable[float]) -> complex:
        """Numeric value sum c_mu exp(i <mu, theta>) in double precision."""
        theta = list(theta)
        total = 0j
        for w, c in self._terms.items():
            ang = sum(float(x) * t for x, t in zip(w, theta))
            total += c * cmath.exp(1j * ang)
        return total

    def to_json_obj(self) -> list[dict]:
        return [
            {"weight": weight_to_json(w), "coeff": c}
            for w, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json_obj(cls, obj) -> "VirtualCharacter":
        return cls([(weight_from_json(e["weight"]), int(e["coeff"])) for e in obj])

    def __repr__(self) -> str:
        if not self._terms:
            return "VirtualCharacter(0)"
        parts = [f"{c}*t^({format_weight(w)})" for w, c in sorted(self._terms.items())]
        return "VirtualCharacter(" + " + ".join(parts) + ")"


class Decomposition:
    """Multiplicities of irreducibles, keyed by infinitesimal character."""

    __slots__ = ("_mult",)

    def __init__(self, mult: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        items = mult.items() if isinstance(mult, Mapping) else mult
        acc: dict[Weight, int] = {}
        for lam, m in items:
            lam = tuple(Fraction(x) for x in lam)
            m = int(m)
            if m:
                acc[lam] = acc.get(lam, 0) + m
                if acc[lam] == 0:
                    del acc[lam]
        self._mult = acc

    def multiplicities(self) -> dict[Weight, int]:
        return dict(self._mult)

    def multiplicity(self, lam: Weight) -> int:
        return self._mult.get(tuple(Fraction(x) for x in lam), 0)

    def items_sorted(self) -> list[tuple[Weight, int]]:
        return sorted(self._mult.items())

    def __bool__(self) -> bool:
        return bool(self._mult)

    def __len__(self) -> int:
        return len(self._mult)

    def __eq__(self, other) -> bool:
        return isinstance(other, Decomposition) and self._mult == other._mult

    def __hash__(self):
        return hash(frozenset(self._mult.items()))

    def reconstruct(self, rs: RootSystem) -> VirtualCharacter:
        """Sum of m_lam * chi_lam; exact inverse of decompose."""
        total = VirtualCharacter.zero()
        for lam, m in self._mult.items():
            total = total + m * weyl_character(lam, rs)
        return total

    def to_json_obj(self, rs: RootSystem) -> list[dict]:
        return [
            {
                "infinitesimal_character": weight_to_json(lam),
                "highest_weight": weight_to_json(wsub(lam, rs.rho)),
                "multiplicity": m,
                "dimension": dimension(lam, rs),
            }
            for lam, m in self.items_sorted()
        ]

    def __repr__(self) -> str:
        if not self._mult:
            return "Decomposition(0)"
        parts = [f"pi({format_weight(l)})^{m}" for l, m in self.items_sorted()]
        return "Decomposition(" + " + ".join(parts) + ")"


def _require_infinitesimal_character(lam: Weight, rs: RootSystem) -> Weight:
    lam = tuple(Fraction(x) for x in lam)
    if not is_integral(lam):
        raise NotInShiftedLattice(f"{lam} has non-integer coordinates")
    if not is_strictly_dominant(lam):
        raise NotRegularDominant(f"{lam} is not strictly dominant")
    return lam


def weyl_denominator(rs: RootSystem) -> VirtualCharacter:
    """Alternating sum over the rho orbit; cached per root system."""
    cached = rs.char_cache.get("denominator")
    if cached is None:
        cached = _alternating_sum(rs.rho, rs)
        rs.char_cache["denominator"] = cached
    return cached


def _alternating_sum(lam: Weight, rs: RootSystem) -> VirtualCharacter:
    lam = tuple(_as_int(c) for c in lam)
    return VirtualCharacter([(w.apply(lam), w.sign) for w in rs.weyl_elements])


def _divide_by_denominator(numer: VirtualCharacter, rs: RootSystem) -> VirtualCharacter:
    """Exact quotient numer / denominator via leading-term elimination.

    Uses the additive total order (coroot height, lex); the denominator's
    maximal term is rho with coefficient +1, so each step strictly lowers the
    remainder's maximal term.  Divisibility is guaranteed for genuine
    alternating sums; a step cap turns a non-divisible input into a loud error.
    """
    hfun = rs._height_fun
    rank = rs.rank

    def entry(w):
        return (-sum(h * c for h, c in zip(hfun, w)), tuple(-c for c in w), w)

    denom = list(weyl_denominator(rs).terms().items())
    rho = tuple(int(c) for c in rs.rho)
    rem = numer.terms()
    quot: dict[tuple[int, ...], int] = {}
    heap = [entry(w) for w in rem]
    heapq.heapify(heap)
    steps = 0
    while heap:
        top = heapq.heappop(heap)[2]
        c = rem.get(top, 0)
        if c == 0:
            continue
        exp = tuple(top[i] - rho[i] for i in range(rank))
        quot[exp] = quot.get(exp, 0) + c
        for nu, d in denom:
            key = tuple(exp[i] + nu[i] for i in range(rank))
            new = rem.get(key, 0) - c * d
            steps += 1
            if steps > _DIVISION_STEP_CAP:
                raise MethodMismatch("division by the Weyl denominator did not terminate")
            if new:
                rem[key] = new
                heapq.heappush(heap, entry(key))
            else:
                rem.pop(key, None)
    assert not rem
    return VirtualCharacter(quot)


def weyl_character(lam: Weight, rs: RootSystem) -> VirtualCharacter:
    """Character of the irreducible with infinitesimal character lam.

    Satisfies chi * D = sum_w sign(w) e^{w lam} with D the Weyl denominator;
    computed by exact division and cached per root system.
    """
    lam = _require_infinitesimal_character(lam, rs)
    cached = rs.char_cache.get(("chi", lam))
    if cached is None:
        cached = _divide_by_denominator(_alternating_sum(lam, rs), rs)
        rs.char_cache[("chi", lam)] = cached
    return cached


def dimension(lam: Weight, rs: RootSystem) -> int:
    """Dimension of pi(lam) by the quotient-of-pairings product formula."""
    lam = _require_infinitesimal_character(lam, rs)
    num = Fraction(1)
    for beta in rs.positive_roots:
        num *= rs.coroot_pairing(lam, beta) / rs.coroot_pairing(rs.rho, beta)
    assert num.denominator == 1 and num > 0
    return int(num)


def evaluate_numeric(chi: VirtualCharacter, theta: Iterable[float]) -> complex:
    """Module-level alias for the character's numeric evaluation."""
    return chi.evaluate(theta)


def _peel(chi: VirtualCharacter, rs: RootSystem) -> dict[Weight, int]:
    """Decompose by repeatedly subtracting the top irreducible.

    The leading weight is the maximal dominant support weight under the
    (coroot height, lex) order; height makes the dominant member of each Weyl
    orbit maximal, which literal lex alone does not.
    """
    rem = chi
    out: dict[Weight, int] = {}
    while rem:
        nu = max(rem._terms, key=rs.height_key)
        if any(c < 0 for c in nu):
            raise NonDominantLeadingTerm(
                f"leading weight {nu} is not dominant; not a character of the group")
        lam = wadd(nu, rs.rho)
        c = rem._terms[nu]
        out[lam] = out.get(lam, 0) + c
        rem = rem - c * weyl_character(lam, rs)
    return {lam: m for lam, m in out.items() if m}


def _antisymmetrize(chi: VirtualCharacter, rs: RootSystem) -> dict[Weight, int]:
    """Multiplicities read off the strictly dominant part of chi * D."""
    product = chi * weyl_denominator(rs)
    return {
        w: c for w, c in product.terms().items() if is_strictly_dominant(w)
    }


def decompose(chi: VirtualCharacter, rs: RootSystem) -> Decomposition:
    """Decompose a Weyl-invariant virtual character into irreducibles.

    Runs antisymmetrization and peeling independently and insists they agree;
    a disagreement is a bug signal, never silently resolved.
    """
    if not chi.is_weyl_invariant(rs):
        raise NotWeylInvariant("input character is not Weyl-invariant")
    by_peeling = _peel(chi, rs)
    by_antisym = _antisymmetrize(chi, rs)
    if by_peeling != by_antisym:
        raise MethodMismatch(
            f"peeling gave {by_peeling} but antisymmetrization gave {by_antisym}")
    return Decomposition(by_peeling)
