"""Localization of finite rings.

In a finite ring every element outside the kernel that becomes a non-zero-divisor
is a unit, so ``R_S`` is realised as the quotient ``R / {r : s·r = 0 for some s ∈ S}``.
For ``S`` the powers of ``a`` there is a second, independent realisation: the
corner ring ``eR`` for the idempotent power ``e`` of ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import NotAHom, NotPrime
from .ideals import Ideal, ideal_from_mask, image_ideal, preimage_ideal
from .rings import FiniteRing, RingElement, RingHom, build_hom, idempotent_power, quotient_map
from .topology import Kind, embed_map_is_homeomorphism, spectrum


@dataclass(eq=False)
class LocalizedRing:
    source: FiniteRing
    mult_set: frozenset
    ring: FiniteRing
    hom: RingHom
    idempotent_form: "IdempotentForm | None" = None

    def __repr__(self) -> str:
        return f"<LocalizedRing {self.ring.label} order={self.ring.order}>"

    @property
    def kernel(self) -> Ideal:
        return ideal_from_mask(self.source, self.hom.map == 0)

    def representative(self, y: int) -> int:
        """Least source element mapping to ``y``."""
        return int(self.ring._memo["reps"][y])

    def fraction(self, r: int, s: int) -> int:
        """The element r/s (s must lie in the multiplicative set)."""
        inv = self.ring.inverse(self.hom(s))
        if inv is None:
            raise ValueError(f"{s} does not become a unit")
        return self.ring.mul(self.hom(r), inv)

    def units_ok(self) -> bool:
        return all(self.ring.is_unit(self.hom(s)) for s in self.mult_set)


def multiplicative_closure(R: FiniteRing, S: Iterable[int]) -> frozenset:
    closed = {R.one}
    frontier = set(int(s) for s in S) - closed
    closed |= frontier
    while frontier:
        new = set()
        for s in frontier:
            for t in list(closed):
                p = R.mul(s, t)
                if p not in closed:
                    new.add(p)
        closed |= new
        frontier = new
    return frozenset(closed)


def localize_multset(R: FiniteRing, S: Iterable[int], *, label: str | None = None) -> LocalizedRing:
    """R_S as the quotient of R by the S-torsion."""
    mult = multiplicative_closure(R, S)
    torsion = (R.mul_table[sorted(mult)] == 0).any(axis=0)
    ring, hom = quotient_map(R, np.flatnonzero(torsion).tolist(), label=label or f"{R.label}_S")
    loc = LocalizedRing(R, mult, ring, hom)
    if not loc.units_ok():
        raise AssertionError(f"multiplicative set does not become units in {ring.label}")
    return loc


@dataclass(eq=False)
class IdempotentForm:
    """The corner ring eR with identity e, where e is the idempotent power of a."""

    e: int
    exponent: int
    carrier: tuple
    ring: FiniteRing
    hom: RingHom  # r -> r·e
    iso: RingHom = field(default=None)  # quotient realisation -> corner ring


def idempotent_form(R: FiniteRing, a: int) -> IdempotentForm:
    e_el, k = idempotent_power(RingElement(R, a))
    e = e_el.index
    carrier = sorted(set(R.mul_table[e].tolist()))
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[carrier] = np.arange(len(carrier))
    c = np.array(carrier, dtype=np.int64)
    corner = FiniteRing(pos[R.add_table[np.ix_(c, c)]], pos[R.mul_table[np.ix_(c, c)]],
                        int(pos[e]), label=f"{R.label}·{e}")
    hom = build_hom(R, corner, pos[R.mul_table[:, e]])
    return IdempotentForm(e, k, tuple(carrier), corner, hom)


def localize_element(R: FiniteRing, a: int | RingElement) -> LocalizedRing:
    """R_a at the powers of a, cross-validated against the corner ring eR."""
    a = a.index if isinstance(a, RingElement) else int(a)
    key = ("loc_elem", a)
    if key in R._memo:
        return R._memo[key]
    loc = localize_multset(R, [a], label=f"{R.label}_{a}")
    form = idempotent_form(R, a)
    reps = loc.ring._memo["reps"]
    iso = build_hom(loc.ring, form.ring, form.hom.map[reps])
    if not iso.is_bijective() or not np.array_equal(iso.map[loc.hom.map], form.hom.map):
        raise AssertionError(f"localization realisations disagree for {R.label}, a={a}")
    form.iso = iso
    loc.idempotent_form = form
    R._memo[key] = loc
    return loc


def localize_prime(R: FiniteRing, P: Ideal) -> LocalizedRing:
    """R_P at the complement of a prime P; the result is verified local."""
    if P.ring is not R or not P.is_prime:
        raise NotPrime(f"{P!r} is not a prime ideal of {R.label}")
    key = ("loc_prime", P.elements)
    if key in R._memo:
        return R._memo[key]
    loc = localize_multset(R, np.flatnonzero(~P.mask).tolist(), label=f"{R.label}_{P!r}")
    if not loc.ring.is_local():
        raise AssertionError(f"localization of {R.label} at {P!r} is not local")
    R._memo[key] = loc
    return loc


def factor_through(loc: LocalizedRing, psi: RingHom) -> RingHom:
    """The unique χ with χ ∘ (R → R_S) = ψ, for ψ sending S to units."""
    if psi.source is not loc.source:
        raise NotAHom("ψ does not start at the localized ring's source")
    for s in loc.mult_set:
        if not psi.target.is_unit(psi(s)):
            raise NotAHom(f"ψ does not send {s} to a unit")
    reps = loc.ring._memo["reps"]
    chi = build_hom(loc.ring, psi.target, psi.map[reps])
    if not np.array_equal(chi.map[loc.hom.map], psi.map):
        raise NotAHom("ψ is not constant on the fibres of the canonical map")
    return chi


def all_homs(A: FiniteRing, B: FiniteRing) -> list:
    """Every unital ring hom A -> B, by backtracking over element images (small rings only)."""
    n = A.order
    image = [-1] * n
    image[0] = 0
    out = []

    def ok(x: int) -> bool:
        for y in range(n):
            if image[y] < 0:
                continue
            for table_a, table_b in ((A.add_table, B.add_table), (A.mul_table, B.mul_table)):
                z = int(table_a[x, y])
                if image[z] >= 0 and image[z] != int(table_b[image[x], image[y]]):
                    return False
        return True

    def go(x: int) -> None:
        if x == n:
            if image[A.one] == B.one:
                out.append(RingHom(A, B, np.array(image)))
            return
        for y in ([B.one] if x == A.one else range(B.order)):
            image[x] = y
            if ok(x):
                go(x + 1)
            image[x] = -1

    if n == 1:
        return [RingHom(A, B, np.array([0]))] if B.order == 1 else []
    go(1)
    return out


def factorisations(loc: LocalizedRing, psi: RingHom) -> list:
    """All homs χ: R_S -> T with χ ∘ canonical = ψ, found by exhaustive hom enumeration."""
    return [chi for chi in all_homs(loc.ring, psi.target)
            if np.array_equal(chi.map[loc.hom.map], psi.map)]


@dataclass
class CorrespondenceReport:
    mult_set: tuple
    contractions_quasi_primary: bool
    extensions_quasi_primary: bool
    bijective: bool
    round_trip: bool
    homeomorphic: bool
    local_points: int
    subspace_points: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.contractions_quasi_primary and self.extensions_quasi_primary and self.bijective
                and self.round_trip and self.homeomorphic)


def contraction_extension_checks(R: FiniteRing, S: int | Iterable[int]) -> CorrespondenceReport:
    """Compare QPrim(R_S) with the points of QPrim(R) whose radical misses S."""
    loc = localize_element(R, S) if isinstance(S, (int, np.integer)) else localize_multset(R, S)
    phi = loc.hom
    sp = spectrum(R, Kind.QPRIM)
    sp_s = spectrum(loc.ring, Kind.QPRIM)
    mult = sorted(loc.mult_set)
    failures = []

    contracted = [preimage_ideal(phi, Q) for Q in sp_s.points]
    contr_ok = True
    for Q, C in zip(sp_s.points, contracted):
        if not C.is_quasi_primary:
            contr_ok = False
            failures.append({"contraction_not_qp": list(Q.elements)})

    u_s = [k for k, Q in enumerate(sp.points) if not Q.radical.mask[mult].any()]
    ext_ok, round_trip = True, True
    for k in u_s:
        E = image_ideal(phi, sp.points[k])
        if not E.is_quasi_primary:
            ext_ok = False
            failures.append({"extension_not_qp": list(sp.points[k].elements)})
        elif preimage_ideal(phi, E) != sp.points[k]:
            round_trip = False
            failures.append({"contraction_of_extension": list(sp.points[k].elements)})
    for Q, C in zip(sp_s.points, contracted):
        if image_ideal(phi, C) != Q:
            round_trip = False
            failures.append({"extension_of_contraction": list(Q.elements)})

    embed = {}
    for j, C in enumerate(contracted):
        if C in sp:
            embed[j] = sp.index(C)
    bijective = len(embed) == len(sp_s) and sorted(embed.values()) == u_s
    homeo = bijective and embed_map_is_homeomorphism(sp_s, sp, embed)
    return CorrespondenceReport(tuple(mult), contr_ok, ext_ok, bijective, round_trip, homeo,
                                len(sp_s), len(u_s), failures)
