"""The sheaf U_a ↦ R_a on a spectrum, its sections, stalks and sheaf axioms.

Each distinct basic open is represented by its least element index ``a``.
Restrictions ``R_b → R_a`` (for ``U_a ⊆ U_b``) are the unique homs commuting
with the canonical maps out of R. Sections over an open U are the
restriction-compatible tuples indexed by the representatives below U; stalks
are direct limits computed with a union-find over tagged elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import CoverEnumerationCapExceeded, NotAHom, NotContained
from .isomorphism import ring_isomorphic
from .localization import LocalizedRing, localize_element, localize_prime
from .rings import FiniteRing, RingHom, build_hom, identity_hom
from .topology import Kind, OpenSet, Spectrum, basic_open, basis_containment, spectrum

DEFAULT_COVER_CAP = 1 << 12


def _points(U) -> frozenset:
    return U.points if isinstance(U, OpenSet) else frozenset(U)


@dataclass(eq=False)
class SectionRing:
    """F(U): compatible tuples (x_a) over the representatives a with U_a ⊆ U."""

    open: frozenset
    index: tuple  # representatives, ascending
    tuples: tuple  # sorted; tuples[0] is the zero section
    ring: FiniteRing
    lookup: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.tuples)

    def section(self, k: int) -> "Section":
        return Section(self, self.tuples[k])

    def position(self, values) -> int:
        return self.lookup[tuple(values)]


@dataclass(frozen=True)
class Section:
    owner: SectionRing
    values: tuple

    @property
    def open(self) -> frozenset:
        return self.owner.open

    def component(self, a: int) -> int:
        return self.values[self.owner.index.index(a)]


class SheafAssignment:
    """U_a ↦ R_a with restriction maps, over a Spec or QPrim spectrum."""

    def __init__(self, sp: Spectrum):
        self.spectrum = sp
        self.ring = R = sp.ring
        self.basic: dict = {}  # representative -> OpenSet
        self.rep_of: list = []
        by_points: dict = {}
        for a in range(R.order):
            U = basic_open(sp, a)
            rep = by_points.setdefault(U.points, a)
            if rep == a:
                self.basic[a] = U
            self.rep_of.append(rep)
        self.reps = tuple(sorted(self.basic))
        self._res: dict = {}
        self._sections: dict = {}

    def __repr__(self) -> str:
        return f"<SheafAssignment on {self.spectrum!r}: {len(self.reps)} basic opens>"

    def local_ring(self, a: int) -> LocalizedRing:
        return localize_element(self.ring, a)

    def ring_at(self, a: int) -> FiniteRing:
        return self.local_ring(a).ring

    def contained(self, a: int, b: int) -> bool:
        """U_a ⊆ U_b as point sets."""
        return basic_open(self.spectrum, a).points <= basic_open(self.spectrum, b).points

    def restriction_map(self, b: int, a: int) -> RingHom:
        """res_{U_b, U_a}: R_b → R_a, defined when a ∈ √(b)."""
        key = (b, a)
        if key in self._res:
            return self._res[key]
        if not basis_containment(self.ring, a, b):
            raise NotContained(f"U_{a} is not contained in U_{b}")
        src, dst = self.local_ring(b), self.local_ring(a)
        reps = src.ring._memo["reps"]
        hom = build_hom(src.ring, dst.ring, dst.hom.map[reps])
        self._res[key] = hom
        return hom

    def attachment(self, a: int) -> RingHom:
        """Canonical isomorphism R_a → R_rep for the representative of U_a."""
        rep = self.rep_of[a]
        hom = self.restriction_map(a, rep)
        if not hom.is_bijective():
            raise AssertionError(f"R_{a} and R_{rep} are not canonically isomorphic")
        return hom

    def reps_below(self, U) -> tuple:
        pts = _points(U)
        return tuple(a for a in self.reps if self.basic[a].points <= pts)

    def sections(self, U) -> SectionRing:
        """F(U) as the inverse limit over representatives below U."""
        pts = _points(U)
        if pts in self._sections:
            return self._sections[pts]
        index = self.reps_below(pts)
        sr = self._limit(pts, index)
        self._sections[pts] = sr
        return sr

    def _limit(self, pts: frozenset, index: tuple) -> SectionRing:
        below = {b: [a for a in index if a != b and self.basic[a].points <= self.basic[b].points]
                 for b in index}
        maximal = [b for b in index if not any(b in below[c] for c in index)]
        rings = {a: self.ring_at(a) for a in index}
        common = {}
        for m1, m2 in itertools.combinations(maximal, 2):
            common[(m1, m2)] = [c for c in index if c in below[m1] and c in below[m2]]

        found = []

        def assign(k: int, chosen: dict) -> None:
            if k == len(maximal):
                found.append(dict(chosen))
                return
            m = maximal[k]
            for x in range(rings[m].order):
                good = True
                for prev in maximal[:k]:
                    for c in common[(prev, m)]:
                        if self.restriction_map(prev, c)(chosen[prev]) != self.restriction_map(m, c)(x):
                            good = False
                            break
                    if not good:
                        break
                if good:
                    chosen[m] = x
                    assign(k + 1, chosen)
                    del chosen[m]

        assign(0, {})
        tuples = set()
        for chosen in found:
            values = {}
            for a in index:
                if a in chosen:
                    values[a] = chosen[a]
                else:
                    m = next(m for m in maximal if a in below[m])
                    values[a] = self.restriction_map(m, a)(chosen[m])
            # compatibility filter over every containment pair
            if all(self.restriction_map(b, a)(values[b]) == values[a] for b in index for a in below[b]):
                tuples.add(tuple(values[a] for a in index))
        ordered = tuple(sorted(tuples))
        return _section_ring(pts, index, ordered, rings)

    def restrict_section(self, V, U, s: Section) -> Section:
        """res_{V,U}: keep the components indexed by representatives below U."""
        v_pts, u_pts = _points(V), _points(U)
        if not u_pts <= v_pts:
            raise NotContained("U is not contained in V")
        target = self.sections(u_pts)
        source = self.sections(v_pts)
        pos = [source.index.index(a) for a in target.index]
        return Section(target, tuple(s.values[p] for p in pos))

    def section_restriction(self, V, U) -> RingHom:
        """res_{V,U} as a ring hom F(V) → F(U)."""
        source, target = self.sections(V), self.sections(U)
        if not target.open <= source.open:
            raise NotContained("U is not contained in V")
        pos = [source.index.index(a) for a in target.index]
        mapping = [target.lookup[tuple(t[p] for p in pos)] for t in source.tuples]
        return build_hom(source.ring, target.ring, mapping)

    def global_map(self) -> RingHom:
        """R → F(whole space), r ↦ (image of r in each R_a)."""
        top = self.sections(self.spectrum.full)
        mapping = [top.lookup[tuple(self.local_ring(a).hom(r) for a in top.index)]
                   for r in range(self.ring.order)]
        return build_hom(self.ring, top.ring, mapping)


def _section_ring(pts, index, tuples, rings) -> SectionRing:
    n = len(tuples)
    if not index:
        # empty limit: the zero ring
        zero = FiniteRing(np.zeros((1, 1)), np.zeros((1, 1)), 0, label="0")
        return SectionRing(pts, index, ((),), zero, {(): 0})
    arr = np.array(tuples, dtype=np.int64).reshape(n, len(index))
    lookup = {t: k for k, t in enumerate(tuples)}
    sizes = np.array([rings[a].order for a in index], dtype=np.int64)
    weights = np.array([int(np.prod(sizes[j + 1:])) for j in range(len(index))], dtype=np.int64)
    codes = arr @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]

    def table(name: str) -> np.ndarray:
        out_codes = np.zeros((n, n), dtype=np.int64)
        for j, a in enumerate(index):
            t = getattr(rings[a], name)
            out_codes += t[arr[:, j][:, None], arr[:, j][None, :]] * weights[j]
        pos = np.searchsorted(sorted_codes, out_codes)
        return order[pos]

    one = lookup[tuple(rings[a].one for a in index)]
    ring = FiniteRing(table("add_table"), table("mul_table"), one, label=f"F({sorted(pts)})")
    return SectionRing(pts, index, tuples, ring, lookup)


# ---------------------------------------------------------------- checks


def presheaf_violations(F: SheafAssignment) -> list:
    """Identity and composition laws over the representative system, plus attachments."""
    bad = []
    for a in F.reps:
        if not np.array_equal(F.restriction_map(a, a).map, identity_hom(F.ring_at(a)).map):
            bad.append({"identity": a})
    for c, b, a in itertools.product(F.reps, repeat=3):
        if F.contained(b, c) and F.contained(a, b):
            lhs = F.restriction_map(b, a).compose(F.restriction_map(c, b))
            if not np.array_equal(lhs.map, F.restriction_map(c, a).map):
                bad.append({"composition": [c, b, a]})
    for x in range(F.ring.order):
        rep = F.rep_of[x]
        att = F.attachment(x)
        for b in F.reps:
            if F.contained(x, b) and not np.array_equal(
                    att.compose(F.restriction_map(b, x)).map, F.restriction_map(b, rep).map):
                bad.append({"attachment": [x, b]})
    return bad


def fraction_formula_violations(F: SheafAssignment, b: int, a: int, exponents: Iterable[int] = (0, 1, 2)) -> list:
    """Compare res_{U_b,U_a} with r/b^m ↦ t^m r / a^{nm}, for a witness a^n = t·b."""
    R = F.ring
    witness = None
    for n in range(1, R.order + 1):
        an = R.pow(a, n)
        t = next((t for t in range(R.order) if R.mul(t, b) == an), None)
        if t is not None:
            witness = (n, t)
            break
    if witness is None:
        raise NotContained(f"no a^n = t·b witness for a={a}, b={b}")
    n, t = witness
    res = F.restriction_map(b, a)
    loc_b, loc_a = F.local_ring(b), F.local_ring(a)
    bad = []
    for r in range(R.order):
        for m in exponents:
            lhs = res(loc_b.fraction(r, R.pow(b, m)))
            rhs = loc_a.fraction(R.mul(R.pow(t, m), r), R.pow(a, n * m))
            if lhs != rhs:
                bad.append({"r": r, "m": m, "n": n, "t": t})
    return bad


def covers_of(F: SheafAssignment, U, cap: int = DEFAULT_COVER_CAP, strict: bool = False):
    """Subsets of the lattice opens inside U whose union is U; (covers, truncated)."""
    pts = _points(U)
    inside = [V.points for V in F.spectrum.topology.opens if V.points <= pts]
    total = 1 << len(inside)
    truncated = total > cap
    if truncated and strict:
        raise CoverEnumerationCapExceeded(f"{total} candidate covers exceed cap {cap}")
    covers = []
    for bits in range(min(total, cap)):
        members = [inside[k] for k in range(len(inside)) if bits >> k & 1]
        if frozenset().union(*members) == pts:
            covers.append(members)
    return covers, truncated


def _compatible_families(F: SheafAssignment, cover: list) -> int:
    """Number of families (s_i ∈ F(V_i)) agreeing on every pairwise overlap."""
    order = sorted(range(len(cover)), key=lambda i: -len(cover[i]))
    cover = [cover[i] for i in order]
    rings = [F.sections(V) for V in cover]
    res = {}
    for i, j in itertools.combinations(range(len(cover)), 2):
        W = cover[i] & cover[j]
        res[(i, j)] = (F.section_restriction(cover[i], W).map, F.section_restriction(cover[j], W).map)
    count = 0

    def go(k: int, chosen: list) -> None:
        nonlocal count
        if k == len(cover):
            count += 1
            return
        for x in range(len(rings[k])):
            if all(res[(i, k)][0][chosen[i]] == res[(i, k)][1][x] for i in range(k)):
                chosen.append(x)
                go(k + 1, chosen)
                chosen.pop()

    go(0, [])
    return count


@dataclass
class SheafReport:
    opens_checked: int = 0
    covers_checked: int = 0
    identity_failures: list = field(default_factory=list)
    gluing_failures: list = field(default_factory=list)
    truncated: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.identity_failures and not self.gluing_failures


def check_sheaf_axioms(F: SheafAssignment, *, cover_cap: int = DEFAULT_COVER_CAP, strict: bool = False) -> SheafReport:
    """Identity and gluing for every lattice open and every enumerated cover."""
    report = SheafReport()
    for U in F.spectrum.topology.opens:
        report.opens_checked += 1
        covers, truncated = covers_of(F, U, cover_cap, strict)
        if truncated:
            report.truncated.append(sorted(U.points))
        FU = F.sections(U)
        for cover in covers:
            report.covers_checked += 1
            maps = [F.section_restriction(U.points, V).map for V in cover]
            families = {tuple(int(m[s]) for m in maps) for s in range(len(FU))}
            zero_family = tuple(0 for _ in cover)
            killed = [s for s in range(len(FU)) if tuple(int(m[s]) for m in maps) == zero_family]
            where = {"open": sorted(U.points), "cover": [sorted(V) for V in cover]}
            if killed != [0]:
                report.identity_failures.append(where)
            elif len(families) != len(FU) or _compatible_families(F, cover) != len(FU):
                report.gluing_failures.append(where)
    return report


@dataclass(eq=False)
class Stalk:
    point: int
    index: tuple  # representatives whose basic open contains the point
    ring: FiniteRing
    germ: dict  # (a, x) -> class index


def stalk(F: SheafAssignment, Q) -> Stalk:
    """Direct limit of F(U_a) over the basic opens containing Q."""
    sp = F.spectrum
    k = sp.index(Q) if not isinstance(Q, int) else Q
    index = tuple(a for a in F.reps if k in F.basic[a].points)
    tags = [(a, x) for a in index for x in range(F.ring_at(a).order)]
    parent = {t: t for t in tags}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for b in index:
        for a in index:
            if a != b and F.basic[a].points <= F.basic[b].points:
                res = F.restriction_map(b, a)
                for x in range(F.ring_at(b).order):
                    ra, rb = find((a, res(x))), find((b, x))
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    classes: dict = {}
    germ = {}
    first = []
    for t in tags:
        root = find(t)
        if root not in classes:
            classes[root] = len(classes)
            first.append(t)
        germ[t] = classes[root]

    def meet(a: int, b: int) -> int:
        inside = F.basic[a].points & F.basic[b].points
        cands = [c for c in index if F.basic[c].points <= inside]
        return min(cands, key=lambda c: (len(F.basic[c].points), c))

    n = len(classes)
    add_t = np.zeros((n, n), dtype=np.int64)
    mul_t = np.zeros((n, n), dtype=np.int64)
    for i, (a, x) in enumerate(first):
        for j, (b, y) in enumerate(first):
            c = meet(a, b)
            xc, yc = F.restriction_map(a, c)(x), F.restriction_map(b, c)(y)
            Rc = F.ring_at(c)
            add_t[i, j] = germ[(c, Rc.add(xc, yc))]
            mul_t[i, j] = germ[(c, Rc.mul(xc, yc))]
    a0 = index[0]
    ring = FiniteRing(add_t, mul_t, germ[(a0, F.ring_at(a0).one)], label=f"stalk@{k}")
    return Stalk(k, index, ring, germ)


@dataclass
class StalkReport:
    point: list
    order: int
    local: bool
    matches_localization: bool


def check_stalk(F: SheafAssignment, Q) -> StalkReport:
    st = stalk(F, Q)
    P = F.spectrum.points[st.point].radical
    loc = localize_prime(F.ring, P)
    iso = ring_isomorphic(st.ring, loc.ring)
    return StalkReport(list(F.spectrum.points[st.point].elements), st.ring.order, st.ring.is_local(), iso is not None)


@dataclass
class DirectImageReport:
    continuous: bool = True
    basic_preimages: bool = True
    opens_checked: int = 0
    section_isos: bool = True
    natural: bool = True
    global_sections: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.continuous and self.basic_preimages and self.section_isos
                and self.natural and self.global_sections)


def _tuple_map(F_sec: SectionRing, O_sec: SectionRing):
    """Identity-on-components map F(U) → O(W) when both index the same representatives."""
    if F_sec.index != O_sec.index:
        return None
    try:
        return [O_sec.lookup[t] for t in F_sec.tuples]
    except KeyError:
        return None


def direct_image_check(R: FiniteRing) -> DirectImageReport:
    """Compare F on QPrim(R) with ι_*O for the inclusion ι: Spec(R) → QPrim(R)."""
    qp, sp = spectrum(R, Kind.QPRIM), spectrum(R, Kind.SPEC)
    F, O = SheafAssignment(qp), SheafAssignment(sp)
    report = DirectImageReport()
    iota = {k: qp.index(P) for k, P in enumerate(sp.points)}

    def pullback(pts: frozenset) -> frozenset:
        return frozenset(k for k, q in iota.items() if q in pts)

    for C in qp.topology.closed:
        if not sp.topology.is_closed(pullback(C.points)):
            report.continuous = False
            report.failures.append({"closed_preimage_not_closed": sorted(C.points)})

    for a in range(R.order):
        pre = pullback(basic_open(qp, a).points)
        direct = frozenset(k for k, P in enumerate(sp.points) if a not in P)
        if pre != direct or pre != basic_open(sp, a).points:
            report.basic_preimages = False
            report.failures.append({"basic_preimage": a})

    isos = {}
    for U in qp.topology.opens:
        report.opens_checked += 1
        W = pullback(U.points)
        FU, OW = F.sections(U), O.sections(W)
        mapping = _tuple_map(FU, OW)
        hom = None
        if mapping is not None:
            try:
                hom = build_hom(FU.ring, OW.ring, mapping)
            except NotAHom:
                hom = None
        if hom is None or not hom.is_bijective():
            report.section_isos = False
            report.failures.append({"sections": sorted(U.points)})
            continue
        isos[U.points] = (W, hom)
    for (V, (WV, hV)), (U, (WU, hU)) in itertools.product(isos.items(), repeat=2):
        if U <= V:
            lhs = O.section_restriction(WV, WU).compose(hV)
            rhs = hU.compose(F.section_restriction(V, U))
            if not np.array_equal(lhs.map, rhs.map):
                report.natural = False
                report.failures.append({"naturality": [sorted(V), sorted(U)]})

    g = F.global_map()
    if not g.is_bijective() or ring_isomorphic(R, F.sections(qp.full).ring) is None:
        report.global_sections = False
        report.failures.append({"global_sections": True})
    return report


def sheaf_on(R: FiniteRing, kind: Kind | str = Kind.QPRIM) -> SheafAssignment:
    key = ("sheaf", Kind(kind))
    if key not in R._memo:
        R._memo[key] = SheafAssignment(spectrum(R, kind))
    return R._memo[key]

