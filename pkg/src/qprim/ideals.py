"""Ideals of a finite ring as explicit element sets.

The lattice of all ideals is enumerated from the principal ideals by closing
under pairwise sums; radicals use the per-element power orbits of the ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import IdealCountCapExceeded, ImproperIdeal, MixedRings
from .rings import FiniteRing, RingHom

DEFAULT_IDEAL_CAP = 4096


def _additive_closure(R: FiniteRing, seeds: Iterable[int]) -> np.ndarray:
    """Boolean mask of the additive subgroup generated by ``seeds``."""
    gens = np.unique(np.fromiter(seeds, dtype=np.int64))
    mask = np.zeros(R.order, dtype=bool)
    mask[0] = True
    if gens.size == 0:
        return mask
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        reached = np.unique(R.add_table[np.ix_(frontier, gens)])
        frontier = reached[~mask[reached]]
        mask[frontier] = True
    return mask


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    elements: tuple  # sorted element indices

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.ring), self.elements))

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self.elements)) + ")"

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __le__(self, other: "Ideal") -> bool:
        _same(self, other)
        return bool((~self.mask | other.mask).all())

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and len(self) < len(other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __and__(self, other):
        return intersect(self, other)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.elements)] = True
        m.setflags(write=False)
        return m

    @property
    def is_proper(self) -> bool:
        return len(self.elements) < self.ring.order

    @cached_property
    def radical(self) -> "Ideal":
        return radical(self)

    @cached_property
    def is_prime(self) -> bool:
        return is_prime(self)

    @cached_property
    def is_primary(self) -> bool:
        return is_primary(self)

    @cached_property
    def is_quasi_primary(self) -> bool:
        return is_quasi_primary(self)

    def label(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _same(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring:
        raise MixedRings("ideals of different rings")


def ideal_from_mask(R: FiniteRing, mask: np.ndarray) -> Ideal:
    return Ideal(R, tuple(int(x) for x in np.flatnonzero(mask)))


def is_ideal_set(R: FiniteRing, elements: Iterable[int]) -> bool:
    """Definition check: contains 0, closed under + and under multiplication by R."""
    idx = np.array(sorted(set(elements)), dtype=np.int64)
    if idx.size == 0 or idx[0] != 0:
        return False
    mask = np.zeros(R.order, dtype=bool)
    mask[idx] = True
    return bool(mask[R.add_table[np.ix_(idx, idx)]].all() and mask[R.mul_table[:, idx]].all())


def as_ideal(R: FiniteRing, elements: Iterable[int]) -> Ideal:
    """Wrap a set already known to be an ideal."""
    return Ideal(R, tuple(sorted(set(int(x) for x in elements))))


def generate(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``: additive closure of {r·g}."""
    gens = [int(g) for g in gens]
    if not gens:
        return Ideal(R, (0,))
    products = R.mul_table[:, gens].ravel()
    return ideal_from_mask(R, _additive_closure(R, products))


def principal(R: FiniteRing, a: int) -> Ideal:
    """(a), memoised on the ring."""
    key = ("principal", int(a))
    if key not in R._memo:
        R._memo[key] = generate(R, [a])
    return R._memo[key]


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, (0,))


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, tuple(range(R.order)))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    R = I.ring
    sums = R.add_table[np.ix_(list(I.elements), list(J.elements))]
    return as_ideal(R, np.unique(sums).tolist())


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    R = I.ring
    prods = R.mul_table[np.ix_(list(I.elements), list(J.elements))].ravel()
    return ideal_from_mask(R, _additive_closure(R, prods))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return ideal_from_mask(I.ring, I.mask & J.mask)


def radical(I: Ideal) -> Ideal:
    """{x : x^k in I for some k >= 1}, via each element's power orbit."""
    R, mask = I.ring, I.mask
    return Ideal(R, tuple(x for x in range(R.order) if any(mask[p] for p in R.power_orbits[x])))


def nilradical(R: FiniteRing) -> Ideal:
    return zero_ideal(R).radical


def _no_violation(I: Ideal, allowed_b: np.ndarray) -> bool:
    """No a, b with ab ∈ I, a ∉ I, b ∉ ``allowed_b``."""
    R = I.ring
    a_idx = np.flatnonzero(~I.mask)
    b_idx = np.flatnonzero(~allowed_b)
    if a_idx.size == 0 or b_idx.size == 0:
        return True
    return not I.mask[R.mul_table[np.ix_(a_idx, b_idx)]].any()


def is_prime(I: Ideal) -> bool:
    return I.is_proper and _no_violation(I, I.mask)


def is_primary(I: Ideal) -> bool:
    return I.is_proper and _no_violation(I, I.radical.mask)


def is_quasi_primary(I: Ideal) -> bool:
    return I.is_proper and I.radical.is_prime


def kernel(phi: RingHom) -> Ideal:
    return ideal_from_mask(phi.source, phi.map == 0)


def preimage_ideal(phi: RingHom, J: Ideal) -> Ideal:
    """{r : φ(r) ∈ J}."""
    if J.ring is not phi.target:
        raise MixedRings("ideal does not live in the target ring")
    return ideal_from_mask(phi.source, J.mask[phi.map])


def image_ideal(phi: RingHom, I: Ideal) -> Ideal:
    """Ideal of the target generated by φ(I) (the extension I·R')."""
    if I.ring is not phi.source:
        raise MixedRings("ideal does not live in the source ring")
    return generate(phi.target, np.unique(phi.map[list(I.elements)]).tolist())


class IdealLattice:
    """All ideals of a ring, in lexicographic order of their element lists."""

    def __init__(self, ring: FiniteRing, ideals: Sequence[Ideal]):
        self.ring = ring
        self.ideals = tuple(sorted(ideals, key=lambda I: I.elements))
        self._pos = {I.elements: k for k, I in enumerate(self.ideals)}
        masks = np.array([I.mask for I in self.ideals])
        # leq[i, j]: ideals[i] ⊆ ideals[j]
        self.leq = ~(masks[:, None, :] & ~masks[None, :, :]).any(axis=2)
        self.leq.setflags(write=False)

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __getitem__(self, k: int) -> Ideal:
        return self.ideals[k]

    def index(self, I: Ideal) -> int:
        return self._pos[I.elements]

    def find(self, elements: Iterable[int]) -> Ideal:
        return self.ideals[self._pos[tuple(sorted(set(elements)))]]

    def __contains__(self, I: Ideal) -> bool:
        return I.ring is self.ring and I.elements in self._pos

    @property
    def zero(self) -> Ideal:
        return self.find([0])

    @property
    def whole(self) -> Ideal:
        return self.find(range(self.ring.order))

    def primes(self) -> list:
        return [I for I in self.ideals if I.is_prime]


def all_ideals(R: FiniteRing, *, cap: int = DEFAULT_IDEAL_CAP) -> IdealLattice:
    """Every ideal of R: principal ideals closed under pairwise sum to a fixpoint."""
    cached = R._memo.get(("lattice", cap))
    if cached is not None:
        return cached
    found: dict = {}
    frontier = []
    for x in range(R.order):
        I = generate(R, [x])
        if I.elements not in found:
            found[I.elements] = I
            frontier.append(I)
    principal = list(found.values())
    while frontier:
        if len(found) > cap:
            raise IdealCountCapExceeded(f"{R.label} has more than {cap} ideals")
        nxt = []
        for I in frontier:
            # every ideal is a sum of principal ideals, so adding principals suffices
            for P in principal:
                S = ideal_sum(I, P)
                if S.elements not in found:
                    found[S.elements] = S
                    nxt.append(S)
        frontier = nxt
    if len(found) > cap:
        raise IdealCountCapExceeded(f"{R.label} has more than {cap} ideals")
    lattice = IdealLattice(R, list(found.values()))
    R._memo[("lattice", cap)] = lattice
    return lattice


def lattice_of(R: FiniteRing) -> IdealLattice:
    """The memoised lattice if one was computed (under any cap), else compute with the default cap."""
    for key, value in R._memo.items():
        if isinstance(key, tuple) and key[0] == "lattice":
            return value
    return all_ideals(R)


def minimal_primes_over(I: Ideal) -> list:
    """Minimal primes containing a proper ideal, in lattice order."""
    if not I.is_proper:
        raise ImproperIdeal("minimal primes are only defined over proper ideals")
    over = [P for P in lattice_of(I.ring).primes() if I <= P]
    return [P for P in over if not any(Q < P for Q in over)]


def brute_force_ideals(R: FiniteRing) -> list:
    """All subsets satisfying the ideal axioms, by subset enumeration (oracle; small rings only)."""
    n = R.order
    mul_masks = [sum(1 << int(y) for y in set(R.mul_table[:, x].tolist())) for x in range(n)]
    add_rows = [R.add_table[x].tolist() for x in range(n)]
    out = []
    for bits in range(1 << (n - 1)):
        mask = (bits << 1) | 1  # 0 always present
        members = [x for x in range(n) if mask >> x & 1]
        if any(mul_masks[x] & ~mask for x in members):
            continue
        if all(mask >> add_rows[x][y] & 1 for x in members for y in members):
            out.append(tuple(members))
    return out
