"""Exception types shared across the package.

Everything raised on bad mathematical input derives from ``SpindexError`` so
the CLI can map computation failures to a single exit code.
"""

from __future__ import annotations


class SpindexError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownType(SpindexError):
    """Unrecognized group type label or malformed Cartan matrix."""


class WeylGroupTooLarge(SpindexError):
    """Weyl group generation exceeded the configured size cap."""


class NotDominant(SpindexError):
    """A weight required to be dominant has a negative coordinate."""


class NotAdmissible(SpindexError):
    """A coadjoint orbit fails the admissibility lattice condition."""


class EmptyFaceRegion(SpindexError):
    """An enumeration region for a face is empty or missing bounds."""


class NotRegularDominant(SpindexError):
    """A weight required to be strictly dominant lies on a wall."""


class NotInShiftedLattice(SpindexError):
    """A weight has non-integer coordinates where integral ones are required."""


class NotWeylInvariant(SpindexError):
    """A character fed to the decomposer is not Weyl-invariant."""


class NonDominantLeadingTerm(SpindexError):
    """Peeling found a leading weight that is not dominant."""


class MethodMismatch(SpindexError):
    """The two independent decomposition methods disagree (internal bug)."""


class ParityViolation(SpindexError):
    """Fixed-point data admits no spin-c structure with the given determinant."""


class NonGenericDirection(SpindexError):
    """The expansion direction is orthogonal to some tangent weight."""


class UnstableCutoff(SpindexError):
    """Truncated expansions at N and N+margin disagree; N must be raised."""


class SingularSamplePoint(SpindexError):
    """Could not draw a numerically safe torus point within the retry budget."""


class ProviderMissingOrbit(SpindexError):
    """A table provider has no entry for a required orbit."""


class ProviderInvalid(SpindexError):
    """A reduced-index provider is used outside its validity domain."""
