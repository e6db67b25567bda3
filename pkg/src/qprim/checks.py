"""Executable checks of the quasi-primary spectrum theory over a ring corpus.

Every check is a pair of functions: ``cases(ctx)`` yields JSON-ready payloads
(ideals as element lists, elements as indices) and ``holds(ctx, payload)``
decides one payload. A failing payload is the counterexample, so replaying a
verdict is just ``holds`` on the recorded payload.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .corpus import CorpusEntry
from .errors import CapExceeded
from .ideals import (
    DEFAULT_IDEAL_CAP,
    Ideal,
    all_ideals,
    brute_force_ideals,
    minimal_primes_over,
    nilradical,
    principal,
)
from .localization import (
    contraction_extension_checks,
    factor_through,
    factorisations,
    localize_element,
    localize_prime,
)
from .rings import DEFAULT_ORDER_CAP, build_ring, quotient_map
from .sheaf import (
    check_sheaf_axioms,
    check_stalk,
    direct_image_check,
    fraction_formula_violations,
    presheaf_violations,
    sheaf_on,
)
from .specs import spec_from_json, spec_to_json
from .topology import (
    Kind,
    associated_map,
    basic_open,
    basis_containment,
    chain_dimension,
    closure,
    closure_by_intersection,
    decompose_closed,
    disjoint_decomposition,
    embed_map_is_homeomorphism,
    generic_points,
    irreducible_components,
    is_connected,
    is_irreducible,
    krull_dimension,
    spectrum,
    subspace_topology_agrees,
    v_q,
)

EXHAUSTIVE_LATTICE = 64
SAMPLE_TUPLES = 2000
ORACLE_ORDER = 16
UNIVERSAL_SPOT_CHECKS = 3


class RingContext:
    """Lazily computed structure of one corpus ring, shared by all checks."""

    def __init__(self, entry: CorpusEntry, *, seed: int = 0,
                 order_cap: int = DEFAULT_ORDER_CAP, ideal_cap: int = DEFAULT_IDEAL_CAP):
        self.entry = entry
        self.seed = seed
        self.ring = build_ring(entry.spec, order_cap=order_cap)
        self.lattice = all_ideals(self.ring, cap=ideal_cap)
        self.sampled = False

    @cached_property
    def qprim(self):
        return spectrum(self.ring, Kind.QPRIM)

    @cached_property
    def spec(self):
        return spectrum(self.ring, Kind.SPEC)

    @cached_property
    def prim(self):
        return spectrum(self.ring, Kind.PRIM)

    @cached_property
    def sheaf(self):
        return sheaf_on(self.ring, Kind.QPRIM)

    def ideal(self, elements) -> Ideal:
        return self.lattice.find(elements)

    def tuples(self, k: int) -> Iterable[tuple]:
        """All k-tuples of ideals when the lattice is small, else a seeded sample."""
        ideals = self.lattice.ideals
        if len(ideals) <= EXHAUSTIVE_LATTICE:
            return itertools.product(ideals, repeat=k)
        self.sampled = True
        rng = np.random.default_rng(self.seed)
        picks = rng.integers(0, len(ideals), size=(SAMPLE_TUPLES, k))
        return [tuple(ideals[i] for i in row) for row in picks]

    def closed_points(self, elements) -> frozenset:
        return v_q(self.qprim, self.ideal(elements)).points


def _el(I: Ideal) -> list:
    return list(I.elements)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    cases: Callable
    holds: Callable
    details: Callable | None = None
    applies: Callable | None = None  # returns a skip reason or None


REGISTRY: dict = {}


def check(check_id: str, anchor: str, *, details=None, applies=None):
    def register(cases):
        def wrap(holds):
            REGISTRY[check_id] = Check(check_id, anchor, cases, holds, details, applies)
            return holds
        return wrap
    return register


# -- C01: closed-set identities ------------------------------------------------


def _c01_cases(ctx):
    yield {"law": "extremes"}
    for I in ctx.lattice:
        yield {"law": "radical", "I": _el(I)}
    for I, J in ctx.tuples(2):
        yield {"law": "monotone", "I": _el(I), "J": _el(J)}
        yield {"law": "union", "I": _el(I), "J": _el(J)}
        yield {"law": "sum", "I": [_el(I), _el(J)]}
    for triple in ctx.tuples(3):
        yield {"law": "sum", "I": [_el(I) for I in triple]}


@check("C01_VQ_IDENTITIES", "I⊆J ⇒ V(J)⊆V(I); V(0)=QPrim, V(R)=∅; V(I∩J)=V(IJ)=V(I)∪V(J); V(ΣI_λ)=∩V(I_λ); V(I)=V(√I)")(_c01_cases)
def _c01(ctx, p):
    sp = ctx.qprim
    V = ctx.closed_points
    law = p["law"]
    if law == "extremes":
        return V([0]) == sp.full and V(range(ctx.ring.order)) == frozenset()
    if law == "radical":
        I = ctx.ideal(p["I"])
        return V(I.elements) == V(I.radical.elements)
    if law == "sum":
        ideals = [ctx.ideal(x) for x in p["I"]]
        total = ideals[0]
        for I in ideals[1:]:
            total = total + I
        return V(total.elements) == frozenset.intersection(*[V(I.elements) for I in ideals])
    I, J = ctx.ideal(p["I"]), ctx.ideal(p["J"])
    if law == "monotone":
        return not (I <= J) or V(J.elements) <= V(I.elements)
    if law == "union":
        union = V(I.elements) | V(J.elements)
        return V((I & J).elements) == union and V((I * J).elements) == union
    raise KeyError(law)


# -- C02: closed-set axioms -------------------------------------------------------


def _c02_cases(ctx):
    yield {"law": "extremes"}
    closed = ctx.qprim.topology.closed
    for A, B in itertools.combinations_with_replacement(closed, 2):
        yield {"law": "pair", "A": _el(A.witness), "B": _el(B.witness)}


@check("C02_CLOSED_AXIOMS", "{V(I)} contains ∅ and QPrim and is closed under finite unions and intersections")(_c02_cases)
def _c02(ctx, p):
    topo = ctx.qprim.topology
    if p["law"] == "extremes":
        return topo.is_closed(frozenset()) and topo.is_closed(ctx.qprim.full)
    A, B = ctx.closed_points(p["A"]), ctx.closed_points(p["B"])
    return topo.is_closed(A | B) and topo.is_closed(A & B)


# -- C03: basis ----------------------------------------------------------------------


def _c03_cases(ctx):
    for U in ctx.qprim.topology.opens:
        yield {"open_complement": _el(U.complement.witness)}


@check("C03_BASIS", "{U_a} is a base: every open set is a union of basic opens U_a")(_c03_cases)
def _c03(ctx, p):
    sp = ctx.qprim
    U = sp.full - ctx.closed_points(p["open_complement"])
    inside = [basic_open(sp, a).points for a in range(ctx.ring.order)]
    return frozenset().union(*[B for B in inside if B <= U]) == U


# -- C04: basic opens ------------------------------------------------------------------


def _c04_cases(ctx):
    n = ctx.ring.order
    yield {"law": "zero_and_units"}
    for a in range(n):
        yield {"law": "nilpotent", "a": a}
        yield {"law": "quasi_compact", "a": a}
    for a, b in itertools.product(range(n), repeat=2):
        yield {"law": "pair", "a": a, "b": b}


@check("C04_BASIC_OPENS", "U_0=∅, U_unit=QPrim; √(a)=√(b) ⇔ U_a=U_b; U_ab=U_a∩U_b; U_a=∅ ⇔ a nilpotent; "
       "U_a⊆U_b ⇔ a∈√(b); U_a quasi-compact")(_c04_cases)
def _c04(ctx, p):
    R, sp = ctx.ring, ctx.qprim
    U = lambda a: basic_open(sp, a).points  # noqa: E731
    law = p["law"]
    if law == "zero_and_units":
        return U(0) == frozenset() and all(U(u) == sp.full for u in R.units)
    if law == "nilpotent":
        return (U(p["a"]) == frozenset()) == R.is_nilpotent(p["a"])
    if law == "quasi_compact":
        # the cover by all basic opens inside U_a is finite, so it is its own finite subcover
        cover = [U(b) for b in range(R.order) if U(b) <= U(p["a"])]
        return len(cover) <= R.order and frozenset().union(*cover) == U(p["a"])
    a, b = p["a"], p["b"]
    same_radical = principal(R, a).radical == principal(R, b).radical
    return ((U(a) == U(b)) == same_radical
            and U(R.mul(a, b)) == U(a) & U(b)
            and (U(a) <= U(b)) == basis_containment(R, a, b))


# -- C05: quasi-primary basics ------------------------------------------------------------


def _c05_cases(ctx):
    for I in ctx.lattice:
        yield {"I": _el(I)}


@check("C05_PRIMARY_IS_QP_UNIQUE_MINIMAL_PRIME",
       "primary ⇒ quasi-primary; a quasi-primary ideal has exactly one minimal prime")(_c05_cases)
def _c05(ctx, p):
    I = ctx.ideal(p["I"])
    if I.is_primary and not I.is_quasi_primary:
        return False
    if I.is_quasi_primary:
        return minimal_primes_over(I) == [I.radical]
    return True


# -- C06: localization ---------------------------------------------------------------------


def _c06_cases(ctx):
    R = ctx.ring
    for a in range(R.order):
        yield {"law": "two_algorithm", "a": a}
        yield {"law": "powers", "a": a}
    for P in ctx.lattice.primes():
        yield {"law": "prime_complement", "P": _el(P)}
    spots = 0
    for a in range(R.order):
        if spots >= UNIVERSAL_SPOT_CHECKS:
            break
        if localize_element(R, a).ring.order <= 12 and not R.is_nilpotent(a):
            for b in range(R.order):
                if localize_element(R, R.mul(a, b)).ring.order > 1:
                    yield {"law": "universal", "a": a, "b": b}
                    spots += 1
                    break


@check("C06_LOCALIZATION", "IR_S quasi-primary in R_S ⇒ IR_S∩R quasi-primary; √I∩S=∅ ⇒ IR_S quasi-primary; "
       "QPrim(R_S) ≅ {Q : √Q∩S=∅} as a subspace")(_c06_cases)
def _c06(ctx, p):
    R = ctx.ring
    law = p["law"]
    if law == "two_algorithm":
        loc = localize_element(R, p["a"])
        form = loc.idempotent_form
        return (form.iso.is_bijective()
                and np.array_equal(form.iso.map[loc.hom.map], form.hom.map))
    if law == "powers":
        return contraction_extension_checks(R, p["a"]).ok
    if law == "prime_complement":
        P = ctx.ideal(p["P"])
        localize_prime(R, P)
        return contraction_extension_checks(R, np.flatnonzero(~P.mask).tolist()).ok
    if law == "universal":
        # ψ: R -> R_ab sends the powers of a to units, so it factors through R_a exactly once
        loc = localize_element(R, p["a"])
        psi = localize_element(R, R.mul(p["a"], p["b"])).hom
        chi = factor_through(loc, psi)
        found = factorisations(loc, psi)
        return len(found) == 1 and np.array_equal(found[0].map, chi.map)
    raise KeyError(law)


# -- C07 / C08: products of quasi-primary ideals --------------------------------------------


def _c07_cases(ctx):
    pts = ctx.qprim.points
    for Q1, Q2 in itertools.product(pts, repeat=2):
        if Q1.radical <= Q2.radical:
            yield {"Q1": _el(Q1), "Q2": _el(Q2)}


@check("C07_QP_PRODUCT", "Q1, Q2 quasi-primary with √Q1 ⊆ √Q2 ⇒ Q1Q2 quasi-primary with √(Q1Q2) = √Q1")(_c07_cases)
def _c07(ctx, p):
    Q1, Q2 = ctx.ideal(p["Q1"]), ctx.ideal(p["Q2"])
    prod = Q1 * Q2
    return prod.is_quasi_primary and prod.radical == Q1.radical


def _c08_cases(ctx):
    pts = ctx.qprim.points
    for Q1, Q2 in itertools.product(pts, repeat=2):
        if Q1 <= Q2:
            for I in ctx.lattice:
                yield {"Q1": _el(Q1), "Q2": _el(Q2), "I": _el(I)}


@check("C08_VQ_PRODUCT", "Q1 ⊆ Q2 quasi-primary, Q1 ∈ V(I) ⇒ Q1Q2 ∈ V(I)")(_c08_cases)
def _c08(ctx, p):
    Q1, Q2, I = ctx.ideal(p["Q1"]), ctx.ideal(p["Q2"]), ctx.ideal(p["I"])
    in_v = lambda Q: I <= Q.radical  # noqa: E731
    prod = Q1 * Q2
    return not in_v(Q1) or (prod in ctx.qprim and in_v(prod))


# -- C09 .. C14: closures, irreducibility, components --------------------------------------


def _points_cases(ctx):
    for Q in ctx.qprim.points:
        yield {"Q": _el(Q)}


def _closure_table(ctx):
    sp = ctx.qprim
    return {"closures": [{"point": _el(Q), "closure": [_el(P) for P in closure(sp, Q).point_ideals()]}
                         for Q in sp.points]}


@check("C09_CLOSURE", "Cl({Q}) = ∩{V(S) : Q ∈ V(S)} = V(Q)", details=_closure_table)(_points_cases)
def _c09(ctx, p):
    Q = ctx.ideal(p["Q"])
    return closure_by_intersection(ctx.qprim, Q) == closure(ctx.qprim, Q).points


@check("C10_IRREDUCIBLE_IFF_NILRADICAL_QP", "QPrim(R) irreducible ⇔ N(R) quasi-primary")(lambda ctx: [{}])
def _c10(ctx, p):
    return is_irreducible(ctx.qprim) == nilradical(ctx.ring).is_quasi_primary


def _closed_cases(ctx):
    for C in ctx.qprim.topology.closed:
        yield {"C": _el(C.witness)}


@check("C11_CORRESPONDENCE", "Y irreducible closed ⇔ Y = V(Q) for some Q ∈ QPrim(R)")(_closed_cases)
def _c11(ctx, p):
    sp = ctx.qprim
    C = v_q(sp, ctx.ideal(p["C"]))
    of_point = any(closure(sp, Q).points == C.points for Q in sp.points)
    return is_irreducible(C) == of_point


def _c12_cases(ctx):
    for I in ctx.lattice:
        yield {"I": _el(I)}


@check("C12_DECOMPOSITION", "V(I) = V(P_1) ∪ ... ∪ V(P_n) over the minimal primes P_i of I")(_c12_cases)
def _c12(ctx, p):
    C = v_q(ctx.qprim, ctx.ideal(p["I"]))
    parts = decompose_closed(C)
    if frozenset().union(*[D.points for D in parts]) != C.points:
        return False
    for k, D in enumerate(parts):
        others = frozenset().union(*[E.points for j, E in enumerate(parts) if j != k])
        if not is_irreducible(D) or D.points <= others:
            return False
    return True


def _c13_cases(ctx):
    yield from _closed_cases(ctx)
    yield from _points_cases(ctx)


@check("C13_GENERIC_POINTS", "every irreducible closed set has a generic point")(_c13_cases)
def _c13(ctx, p):
    sp = ctx.qprim
    if "Q" in p:
        Q = ctx.ideal(p["Q"])
        return Q in generic_points(closure(sp, Q))
    C = v_q(sp, ctx.ideal(p["C"]))
    return not is_irreducible(C) or len(generic_points(C)) >= 1


@check("C14_COMPONENTS", "irreducible components = {V(Q) : √Q a minimal prime of R}")(lambda ctx: [{}])
def _c14(ctx, p):
    sp = ctx.qprim
    comps = irreducible_components(sp)
    zero = ctx.lattice.zero
    expected = {v_q(sp, P).points for P in minimal_primes_over(zero)} if zero.is_proper else set()
    via_points = {closure(sp, Q).points for Q in sp.points
                  if zero.is_proper and Q.radical in minimal_primes_over(zero)}
    return ({C.points for C in comps} == expected == via_points
            and all(generic_points(C) for C in comps))


# -- C15: product rings ----------------------------------------------------------------------


def _c15_details(ctx):
    R = ctx.ring
    if not R.factors:
        n = len(ctx.qprim)
        return {"factors": 1, "total": n, "disjoint_union_count": n, "product_count": n,
                "note": "single factor: identity partition"}
    d = disjoint_decomposition(R)
    details = {
        "factors": len(R.factors),
        "total": d.total,
        "disjoint_union_count": d.disjoint_union_count,
        "product_count": d.product_count,
        "matches_disjoint_union": d.matches_disjoint_union,
        "matches_product": d.matches_product,
    }
    if not d.matches_product:
        details["note"] = (f"informational: |QPrim(R)| = {d.total} differs from the cartesian product count "
                           f"{d.product_count}; the disjoint-union decomposition is what holds")
    return details


@check("C15_PRODUCT_DECOMPOSITION",
       "QPrim(R_1×...×R_n) splits into clopen blocks homeomorphic to QPrim(R_i) (disjoint-union reading)",
       details=_c15_details)(lambda ctx: [{}])
def _c15(ctx, p):
    R = ctx.ring
    if not R.factors:
        sp = ctx.qprim
        return embed_map_is_homeomorphism(sp, sp, {k: k for k in range(len(sp))})
    d = disjoint_decomposition(R)
    return d.verified and d.matches_disjoint_union


# -- C16: connectedness ------------------------------------------------------------------------


def _c16_cases(ctx):
    yield {"law": "iff"}
    for e in ctx.ring.nontrivial_idempotents():
        yield {"law": "split", "e": e}


def _c16_details(ctx):
    return {"connected": is_connected(ctx.qprim),
            "interpretation": "disconnection = union of two disjoint nonempty closed sets V(e) ∪ V(1-e); "
                              "the split ring is R ≅ Re × R(1-e)"}


@check("C16_CONNECTEDNESS", "QPrim(R) disconnected ⇔ R has an idempotent e ∉ {0, 1}",
       details=_c16_details)(_c16_cases)
def _c16(ctx, p):
    R, sp = ctx.ring, ctx.qprim
    if p["law"] == "iff":
        return is_connected(sp) == (not R.nontrivial_idempotents())
    e = p["e"]
    A = v_q(sp, [e]).points
    B = v_q(sp, [R.sub(R.one, e)]).points
    return A and B and not (A & B) and (A | B) == sp.full


# -- C17: dimension and subspaces ----------------------------------------------------------------


@check("C17_DIMENSION_SUBSPACE", "dim QPrim(R) is finite and equals dim R; Spec(R), Prim(R) carry the subspace topology")(
    lambda ctx: [{"law": "dimension"}, {"law": "subspace"}])
def _c17(ctx, p):
    if p["law"] == "dimension":
        if not ctx.qprim.points:
            return krull_dimension(ctx.ring) == -1
        dim = chain_dimension(ctx.qprim)
        return dim.terms >= 1 and dim.krull == dim.terms - 1 == krull_dimension(ctx.ring)
    return subspace_topology_agrees(ctx.spec, ctx.qprim) and subspace_topology_agrees(ctx.prim, ctx.qprim)


# -- C18: associated maps ------------------------------------------------------------------------


def _c18_cases(ctx):
    for I in ctx.lattice:
        yield {"hom": "quotient", "I": _el(I)}
    for a in range(ctx.ring.order):
        yield {"hom": "localize", "a": a}


@check("C18_ASSOCIATED_MAP", "φ^a(Q) = φ⁻¹(Q) is quasi-primary and (φ^a)⁻¹(V(A)) = V(φ(A))")(_c18_cases)
def _c18(ctx, p):
    R = ctx.ring
    if p["hom"] == "quotient":
        _, phi = quotient_map(R, ctx.ideal(p["I"]))
    else:
        phi = localize_element(R, p["a"]).hom
    return all(associated_map(phi, kind).is_continuous() for kind in (Kind.QPRIM, Kind.SPEC))


# -- C19: sheaf ------------------------------------------------------------------------------------


def _c19_cases(ctx):
    F = ctx.sheaf
    yield {"law": "presheaf"}
    yield {"law": "axioms"}
    for Q in ctx.qprim.points:
        yield {"law": "stalk", "Q": _el(Q)}
    for b, a in itertools.product(F.reps, repeat=2):
        if F.contained(a, b):
            yield {"law": "fraction", "b": b, "a": a}


def _c19_details(ctx):
    F = ctx.sheaf
    return {"basic_opens": len(F.reps),
            "sections": [{"open": sorted(U.points), "order": len(F.sections(U))}
                         for U in ctx.qprim.topology.opens]}


@check("C19_SHEAF", "U_a ↦ R_a with r/b^m ↦ t^m r/a^{nm} is a sheaf of rings; stalk at Q is R_√Q, a local ring",
       details=_c19_details)(_c19_cases)
def _c19(ctx, p):
    F = ctx.sheaf
    law = p["law"]
    if law == "presheaf":
        return not presheaf_violations(F)
    if law == "axioms":
        report = check_sheaf_axioms(F)
        return report.ok and not report.truncated
    if law == "stalk":
        st = check_stalk(F, ctx.ideal(p["Q"]))
        return st.local and st.matches_localization
    if law == "fraction":
        return not fraction_formula_violations(F, p["b"], p["a"])
    raise KeyError(law)


@check("C20_DIRECT_IMAGE", "F = ι_*O for ι: Spec(R) → QPrim(R); F(QPrim(R)) ≅ R")(lambda ctx: [{}])
def _c20(ctx, p):
    return direct_image_check(ctx.ring).ok


@check("C21_QP_IFF_PRIMARY", "finite rings: quasi-primary ⇔ primary (every prime is maximal)")(
    _c12_cases)
def _c21(ctx, p):
    I = ctx.ideal(p["I"])
    return I.is_quasi_primary == I.is_primary


def _c22_applies(ctx):
    if ctx.ring.order > ORACLE_ORDER:
        return f"order {ctx.ring.order} above subset-oracle cap {ORACLE_ORDER}"
    return None


@check("C22_LATTICE_ORACLE", "principal-sum fixpoint = all subsets satisfying the ideal axioms",
       applies=_c22_applies)(lambda ctx: [{}])
def _c22(ctx, p):
    return set(brute_force_ideals(ctx.ring)) == {I.elements for I in ctx.lattice}


# -- running --------------------------------------------------------------------------------------


@dataclass
class Verdict:
    check: str
    label: str
    ring: dict
    status: str
    anchor: str
    counterexample: dict | None = None
    cases: int = 0
    sampled: bool = False
    details: dict | None = None
    ms: int | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out = {
            "ring": self.ring,
            "label": self.label,
            "check": self.check,
            "status": self.status,
            "anchor": self.anchor,
            "counterexample": self.counterexample,
            "cases": self.cases,
            "sampled": self.sampled,
            "ms": self.ms,
        }
        if self.details is not None:
            out["details"] = self.details
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def select_checks(filters: Iterable[str] | None) -> list:
    """Checks whose id equals or starts with any filter (``C09`` selects ``C09_CLOSURE``)."""
    ids = sorted(REGISTRY)
    if not filters:
        return [REGISTRY[i] for i in ids]
    wanted = [f.strip() for f in filters if f.strip()]
    match = lambda i, f: i == f or i.startswith(f + "_")  # noqa: E731
    chosen = [i for i in ids if any(match(i, f) for f in wanted)]
    unknown = [f for f in wanted if not any(match(i, f) for i in ids)]
    if unknown:
        raise KeyError(f"unknown check id(s): {', '.join(unknown)}")
    return [REGISTRY[i] for i in chosen]


def run_check(ctx: RingContext, chk: Check, *, timing: bool = False) -> Verdict:
    start = time.perf_counter()
    ring_json = spec_to_json(ctx.entry.spec)
    verdict = Verdict(chk.id, ctx.entry.label, ring_json, "pass", chk.anchor)
    reason = chk.applies(ctx) if chk.applies else None
    if reason:
        verdict.status, verdict.reason = "skipped", reason
    else:
        ctx.sampled = False
        try:
            for payload in chk.cases(ctx):
                verdict.cases += 1
                if not chk.holds(ctx, payload):
                    verdict.status = "fail"
                    verdict.counterexample = payload
                    break
            if chk.details:
                verdict.details = chk.details(ctx)
        except CapExceeded as exc:
            verdict.status, verdict.reason = "skipped", f"cap exceeded: {exc}"
        verdict.sampled = ctx.sampled
    if timing:
        verdict.ms = int(round((time.perf_counter() - start) * 1000))
    return verdict


def run_suite(corpus: Iterable[CorpusEntry], checks: Iterable[str] | None = None, *, seed: int = 0,
              timing: bool = False, order_cap: int = DEFAULT_ORDER_CAP,
              ideal_cap: int = DEFAULT_IDEAL_CAP) -> list:
    """Run the selected checks on every ring; verdicts ordered by (corpus index, check id)."""
    selected = select_checks(checks)
    verdicts = []
    for entry in corpus:
        try:
            ctx = RingContext(entry, seed=seed, order_cap=order_cap, ideal_cap=ideal_cap)
        except CapExceeded as exc:
            for chk in selected:
                verdicts.append(Verdict(chk.id, entry.label, spec_to_json(entry.spec), "skipped", chk.anchor,
                                        reason=f"cap exceeded: {exc}"))
            continue
        for chk in selected:
            verdicts.append(run_check(ctx, chk, timing=timing))
    return verdicts


def summarize(verdicts: list) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for v in verdicts:
        counts[v.status] += 1
    return counts


def report_json(verdicts: list, *, seed: int = 0) -> str:
    payload = {
        "seed": seed,
        "summary": summarize(verdicts),
        "verdicts": [v.to_json() for v in verdicts],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def replay(entry: dict, *, seed: int = 0) -> bool:
    """True when the recorded counterexample still fails its check."""
    chk = REGISTRY[entry["check"]]
    spec = spec_from_json(entry["ring"])
    ctx = RingContext(CorpusEntry(entry.get("label", ""), spec), seed=seed)
    return not chk.holds(ctx, entry["counterexample"])
