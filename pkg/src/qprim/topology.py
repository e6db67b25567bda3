"""Spec, Prim and QPrim of a finite ring with the Zariski-style topology.

Closed sets are ``V(I) = {Q : I ⊆ √Q}``. Point sets are frozensets of point
positions in ``Spectrum.points``; all topological questions are decided by
direct search over the finite lattice of closed sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import EmptySpectrum, NotAProductSpec, NotIrreducible
from .ideals import Ideal, IdealLattice, generate, lattice_of, principal, minimal_primes_over, preimage_ideal
from .rings import FiniteRing, RingElement, RingHom


class Kind(str, Enum):
    SPEC = "spec"
    PRIM = "prim"
    QPRIM = "qprim"


_CLASSIFIER = {
    Kind.SPEC: lambda I: I.is_prime,
    Kind.PRIM: lambda I: I.is_primary,
    Kind.QPRIM: lambda I: I.is_quasi_primary,
}

SpectrumPoint = Ideal


class Spectrum:
    """The materialised point set of one kind, in lattice order."""

    def __init__(self, ring: FiniteRing, kind: Kind, lattice: IdealLattice):
        self.ring = ring
        self.kind = Kind(kind)
        self.lattice = lattice
        classify = _CLASSIFIER[self.kind]
        self.points: tuple = tuple(I for I in lattice if classify(I))
        self._pos = {Q.elements: k for k, Q in enumerate(self.points)}
        self._basic: dict = {}
        if self.points:
            self.radical_masks = np.array([Q.radical.mask for Q in self.points])
        else:
            self.radical_masks = np.zeros((0, ring.order), dtype=bool)

    def __repr__(self) -> str:
        return f"<{self.kind.value}({self.ring.label}): {len(self.points)} points>"

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def full(self) -> frozenset:
        return frozenset(range(len(self.points)))

    def index(self, Q: Ideal) -> int:
        return self._pos[Q.elements]

    def __contains__(self, Q: Ideal) -> bool:
        return Q.ring is self.ring and Q.elements in self._pos

    def points_containing(self, elements: Iterable[int]) -> frozenset:
        """{Q : elements ⊆ √Q}."""
        idx = list(elements)
        if not idx:
            return self.full
        return frozenset(int(k) for k in np.flatnonzero(self.radical_masks[:, idx].all(axis=1)))

    @cached_property
    def topology(self) -> "TopologyLattice":
        return topology_lattice(self)


@dataclass(frozen=True, eq=False)
class ClosedSet:
    spectrum: Spectrum
    points: frozenset
    witness: Ideal

    def __eq__(self, other):
        if not isinstance(other, ClosedSet):
            return NotImplemented
        return self.spectrum is other.spectrum and self.points == other.points

    def __hash__(self):
        return hash((id(self.spectrum), self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return "V" + repr(sorted(self.points))

    def point_ideals(self) -> list:
        return [self.spectrum.points[k] for k in sorted(self.points)]


@dataclass(frozen=True, eq=False)
class OpenSet:
    spectrum: Spectrum
    points: frozenset
    complement: ClosedSet
    basic: int | None = None

    def __eq__(self, other):
        if not isinstance(other, OpenSet):
            return NotImplemented
        return self.spectrum is other.spectrum and self.points == other.points

    def __hash__(self):
        return hash((id(self.spectrum), self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        tag = f"U_{self.basic}" if self.basic is not None else "U"
        return tag + repr(sorted(self.points))


def _set_key(points: frozenset):
    return (len(points), sorted(points))


@dataclass
class TopologyLattice:
    spectrum: Spectrum
    closed: tuple  # distinct ClosedSets, ordered by (size, points)
    by_points: dict = field(repr=False)

    @property
    def opens(self) -> list:
        full = self.spectrum.full
        return sorted((OpenSet(self.spectrum, full - C.points, C) for C in self.closed),
                      key=lambda U: _set_key(U.points))

    def is_closed(self, points: Iterable[int]) -> bool:
        return frozenset(points) in self.by_points

    def is_open(self, points: Iterable[int]) -> bool:
        return self.spectrum.full - frozenset(points) in self.by_points

    def closed_containing(self, points: Iterable[int]) -> list:
        pts = frozenset(points)
        return [C for C in self.closed if pts <= C.points]

    def containment(self) -> list:
        """Hasse edges (i, j): closed[i] ⊊ closed[j] with nothing strictly between."""
        sets = [C.points for C in self.closed]
        edges = []
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if a < b and not any(a < c < b for c in sets):
                    edges.append((i, j))
        return edges


def spectrum(R: FiniteRing, kind: Kind | str = Kind.QPRIM, *, lattice: IdealLattice | None = None) -> Spectrum:
    kind = Kind(kind)
    key = ("spectrum", kind)
    if lattice is None and key in R._memo:
        return R._memo[key]
    sp = Spectrum(R, kind, lattice if lattice is not None else lattice_of(R))
    if lattice is None:
        R._memo[key] = sp
    return sp


def _elements(S) -> list:
    if isinstance(S, Ideal):
        return list(S.elements)
    if isinstance(S, RingElement):
        return [S.index]
    return [x.index if isinstance(x, RingElement) else int(x) for x in S]


def v_q(sp: Spectrum, S: Union[Ideal, Iterable[int]]) -> ClosedSet:
    """V(S) = {Q : S ⊆ √Q}, with witness ideal (S)."""
    elems = _elements(S)
    witness = S if isinstance(S, Ideal) else generate(sp.ring, elems)
    return ClosedSet(sp, sp.points_containing(elems), witness)


def basic_open(sp: Spectrum, a: int | RingElement) -> OpenSet:
    a = a.index if isinstance(a, RingElement) else int(a)
    if a not in sp._basic:
        C = v_q(sp, [a])
        sp._basic[a] = OpenSet(sp, sp.full - C.points, C, basic=a)
    return sp._basic[a]


def topology_lattice(sp: Spectrum) -> TopologyLattice:
    """V(I) for every ideal, deduplicated by point set; first witness in lattice order kept."""
    by_points: dict = {}
    for I in sp.lattice:
        C = v_q(sp, I)
        by_points.setdefault(C.points, C)
    closed = tuple(sorted(by_points.values(), key=lambda C: _set_key(C.points)))
    return TopologyLattice(sp, closed, by_points)


def closure(sp: Spectrum, Q: Ideal) -> ClosedSet:
    return v_q(sp, Q)


def closure_by_intersection(sp: Spectrum, Q: Ideal) -> frozenset:
    """Intersection of every closed set containing Q (definition of closure)."""
    k = sp.index(Q)
    pts = sp.full
    for C in sp.topology.closed:
        if k in C.points:
            pts &= C.points
    return pts


def basis_containment(R: FiniteRing, a: int, b: int) -> bool:
    """U_a ⊆ U_b, decided algebraically as a ∈ √(b)."""
    return a in principal(R, b).radical


def _as_closed(target) -> ClosedSet:
    if isinstance(target, Spectrum):
        return v_q(target, [0])
    return target


def is_irreducible(target: Union[Spectrum, ClosedSet]) -> bool:
    """Nonempty and not a union of two proper closed subsets."""
    C = _as_closed(target)
    if not C.points:
        return False
    proper = [D.points for D in C.spectrum.topology.closed if D.points < C.points]
    return not any(a | b == C.points for a, b in itertools.combinations_with_replacement(proper, 2))


def irreducible_closed_sets(sp: Spectrum) -> list:
    return [C for C in sp.topology.closed if is_irreducible(C)]


def irreducible_components(sp: Spectrum) -> list:
    irr = irreducible_closed_sets(sp)
    return [C for C in irr if not any(C.points < D.points for D in irr)]


def generic_points(C: ClosedSet) -> list:
    """Points whose closure is all of C."""
    if not is_irreducible(C):
        raise NotIrreducible(f"{C!r} is not irreducible")
    sp = C.spectrum
    return [sp.points[k] for k in sorted(C.points) if closure(sp, sp.points[k]).points == C.points]


def decompose_closed(C: ClosedSet) -> list:
    """V(I) = V(P_1) ∪ ... ∪ V(P_n) over the minimal primes P_i of the witness."""
    if not C.witness.is_proper:
        return []
    return [v_q(C.spectrum, P) for P in minimal_primes_over(C.witness)]


def clopen_partitions(sp: Spectrum) -> list:
    """Pairs (A, B) of disjoint nonempty closed sets covering the space."""
    closed = [C for C in sp.topology.closed if C.points and C.points != sp.full]
    out = []
    for A, B in itertools.combinations(closed, 2):
        if not (A.points & B.points) and (A.points | B.points) == sp.full:
            out.append((A, B))
    return out


def is_connected(sp: Spectrum) -> bool:
    return not clopen_partitions(sp)


@dataclass(frozen=True)
class ChainDimension:
    terms: int
    krull: int


def chain_dimension(sp: Spectrum) -> ChainDimension:
    """Longest strictly increasing chain of irreducible closed sets."""
    if not sp.points:
        raise EmptySpectrum(f"{sp!r} is empty")
    irr = sorted(irreducible_closed_sets(sp), key=len)
    longest = []
    for i, C in enumerate(irr):
        below = [longest[j] for j in range(i) if irr[j].points < C.points]
        longest.append(1 + max(below, default=0))
    terms = max(longest)
    return ChainDimension(terms, terms - 1)


def krull_dimension(R: FiniteRing) -> int:
    """Length of the longest chain of primes of R (-1 for the zero ring)."""
    primes = sorted(lattice_of(R).primes(), key=len)
    if not primes:
        return -1
    longest = []
    for i, P in enumerate(primes):
        longest.append(1 + max((longest[j] for j in range(i) if primes[j] < P), default=0))
    return max(longest) - 1


def induced_closed_sets(sub: Spectrum, sp: Spectrum) -> set:
    """Closed sets of ``sp`` intersected with the points of ``sub``, as ``sub`` positions."""
    embed = {sp.index(Q): k for k, Q in enumerate(sub.points)}
    return {frozenset(embed[i] for i in C.points if i in embed) for C in sp.topology.closed}


def subspace_topology_agrees(sub: Spectrum, sp: Spectrum) -> bool:
    """The topology ``sub`` inherits from ``sp`` equals its own Zariski topology."""
    return induced_closed_sets(sub, sp) == set(sub.topology.by_points)


class AssociatedMap:
    """Q ↦ φ⁻¹(Q) from the target spectrum to the source spectrum."""

    def __init__(self, phi: RingHom, kind: Kind | str = Kind.QPRIM):
        self.phi = phi
        self.kind = Kind(kind)
        self.target = spectrum(phi.target, self.kind)
        self.source = spectrum(phi.source, self.kind)
        self.images = tuple(preimage_ideal(phi, Q) for Q in self.target.points)

    def __call__(self, Q: Ideal) -> Ideal:
        return self.images[self.target.index(Q)]

    def lands_in_source(self) -> bool:
        return all(I in self.source for I in self.images)

    def as_indices(self) -> tuple:
        return tuple(self.source.index(I) for I in self.images)

    def continuity_violation(self):
        """First source ideal A with (φ^a)⁻¹(V(A)) ≠ V(φ(A)), or None."""
        m = self.as_indices()
        for A in self.source.lattice:
            V = v_q(self.source, A).points
            pre = frozenset(k for k, s in enumerate(m) if s in V)
            image = np.unique(self.phi.map[list(A.elements)]).tolist()
            if pre != self.target.points_containing(image):
                return A
        return None

    def is_continuous(self) -> bool:
        return self.lands_in_source() and self.continuity_violation() is None


def associated_map(phi: RingHom, kind: Kind | str = Kind.QPRIM) -> AssociatedMap:
    return AssociatedMap(phi, kind)


def embed_map_is_homeomorphism(small: Spectrum, big: Spectrum, embed: dict) -> bool:
    """``embed`` (small position -> big position) is a homeomorphism onto its image.

    Closed sets of ``small`` must be exactly the traces of closed sets of ``big``
    on the image, transported back along ``embed``.
    """
    image = set(embed.values())
    if len(image) != len(embed) or set(embed) != set(range(len(small))):
        return False
    back = {v: k for k, v in embed.items()}
    traces = {frozenset(back[i] for i in C.points if i in image) for C in big.topology.closed}
    return traces == set(small.topology.by_points)


@dataclass
class Decomposition:
    blocks: list  # frozensets of QPrim(R) positions, one per factor
    partition: bool
    clopen: list
    homeomorphic: list
    total: int
    disjoint_union_count: int
    product_count: int

    @property
    def verified(self) -> bool:
        return self.partition and all(self.clopen) and all(self.homeomorphic)

    @property
    def matches_disjoint_union(self) -> bool:
        return self.total == self.disjoint_union_count

    @property
    def matches_product(self) -> bool:
        return self.total == self.product_count


def factor_embedding(R: FiniteRing, i: int, Q: Ideal) -> Ideal:
    """R_1 × ... × Q × ... × R_n with Q in slot i."""
    members = [x for x in range(R.order) if R.coords(x)[i] in Q]
    return Ideal(R, tuple(members))


def disjoint_decomposition(R: FiniteRing, kind: Kind | str = Kind.QPRIM) -> Decomposition:
    """Split the spectrum of a product ring into one clopen block per factor."""
    if not R.factors:
        raise NotAProductSpec(f"{R.label} was not built from a product spec")
    sp = spectrum(R, kind)
    blocks, homeo, sizes = [], [], []
    for i, F in enumerate(R.factors):
        sp_i = spectrum(F, kind)
        sizes.append(len(sp_i))
        embed = {}
        for k, Q in enumerate(sp_i.points):
            E = factor_embedding(R, i, Q)
            if E in sp:
                embed[k] = sp.index(E)
        blocks.append(frozenset(embed.values()))
        homeo.append(len(embed) == len(sp_i) and embed_map_is_homeomorphism(sp_i, sp, embed))
    covered = frozenset().union(*blocks)
    partition = covered == sp.full and sum(map(len, blocks)) == len(sp)
    topo = sp.topology
    clopen = [topo.is_closed(b) and topo.is_open(b) for b in blocks]
    product = 1
    for s in sizes:
        product *= s
    return Decomposition(blocks, partition, clopen, homeo, len(sp), sum(sizes), product)

