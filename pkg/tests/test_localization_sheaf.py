from __future__ import annotations

import numpy as np
import pytest

from qprim import (Kind, PolyQuotient, Product, ZMod, all_ideals, build_ring, check_sheaf_axioms,
                   direct_image_check, localize_element, localize_multset, localize_prime, sheaf_on, spectrum,
                   stalk)
from qprim.errors import CoverEnumerationCapExceeded, NotAHom, NotContained, NotPrime
from qprim.isomorphism import are_isomorphic
from qprim.localization import (all_homs, contraction_extension_checks, factor_through, factorisations,
                                idempotent_form)
from qprim.rings import build_hom
from qprim.sheaf import check_stalk, covers_of, fraction_formula_violations, presheaf_violations

from conftest import zmod_localization_order


@pytest.mark.parametrize("n", [1, 2, 6, 12, 24, 36, 60])
def test_element_localization_orders(n):
    R = build_ring(ZMod(n))
    for a in range(n):
        loc = localize_element(R, a)
        assert loc.ring.order == zmod_localization_order(n, a)
        assert loc.units_ok()


def test_z12_localizations(z12):
    assert localize_element(z12, 2).ring.order == 3
    form = idempotent_form(z12, 2)
    assert (form.e, form.exponent, form.carrier) == (4, 2, (0, 4, 8))
    assert idempotent_form(z12, 3).e == 9
    assert localize_element(z12, 1).ring.order == 12
    assert localize_element(z12, 0).ring.order == 1
    odds = localize_multset(z12, [1, 3, 5, 7, 9, 11])
    assert odds.ring.order == 4
    L = all_ideals(z12)
    assert localize_prime(z12, L.find((0, 2, 4, 6, 8, 10))).ring.order == 4
    assert localize_prime(z12, L.find((0, 3, 6, 9))).ring.order == 3
    with pytest.raises(NotPrime):
        localize_prime(z12, L.find((0, 4, 8)))


def test_localization_is_isomorphic_to_factor(z12):
    loc = localize_element(z12, 2)
    assert are_isomorphic(loc.ring, build_ring(ZMod(3)))
    # fraction arithmetic: 1/2 * 2 = 1 in (Z/12)_2
    half = loc.fraction(1, 2)
    assert loc.ring.mul(half, loc.hom(2)) == loc.ring.one


def test_universal_property(z12):
    z3 = build_ring(ZMod(3))
    psi = build_hom(z12, z3, lambda x: x % 3)
    loc = localize_element(z12, 2)
    chi = factor_through(loc, psi)
    assert np.array_equal(chi.map[loc.hom.map], psi.map)
    found = factorisations(loc, psi)
    assert len(found) == 1 and np.array_equal(found[0].map, chi.map)
    z4 = build_ring(ZMod(4))
    with pytest.raises(NotAHom):
        factor_through(loc, build_hom(z12, z4, lambda x: x % 4))


def test_all_homs_counts():
    assert len(all_homs(build_ring(ZMod(12)), build_ring(ZMod(4)))) == 1
    assert len(all_homs(build_ring(ZMod(4)), build_ring(ZMod(12)))) == 0
    assert len(all_homs(build_ring(Product((ZMod(2), ZMod(2)))), build_ring(ZMod(2)))) == 2
    assert len(all_homs(build_ring(ZMod(1)), build_ring(ZMod(1)))) == 1


@pytest.mark.parametrize("spec", [ZMod(12), ZMod(36), Product((ZMod(2), ZMod(2), ZMod(3))),
                                  Product((ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1))))], ids=str)
def test_correspondence_with_localization(spec):
    R = build_ring(spec)
    for a in range(R.order):
        report = contraction_extension_checks(R, a)
        assert report.ok, report.failures


def test_sheaf_on_z12(z12):
    F = sheaf_on(z12)
    sp = F.spectrum
    assert len(F.sections(sp.full)) == 12
    assert len(F.sections(frozenset())) == 1
    assert len(F.sections(frozenset({1}))) == 3  # U_2 = {(3)}, sections are (Z/12)_2
    assert presheaf_violations(F) == []
    assert F.global_map().is_bijective()
    with pytest.raises(NotContained):
        F.restriction_map(2, 3)
    for b in F.reps:
        for a in F.reps:
            if F.contained(a, b):
                assert fraction_formula_violations(F, b, a) == []


def test_sections_over_u3(z12):
    sp = spectrum(z12)
    F = sheaf_on(z12)
    U3 = frozenset(k for k in sp.full if 3 not in sp.points[k].radical)
    assert U3 == {0, 2}
    assert len(F.sections(U3)) == 4


@pytest.mark.parametrize("spec", [ZMod(12), ZMod(4), Product((ZMod(2), ZMod(2))),
                                  PolyQuotient(ZMod(2), (0, 0, 1)), ZMod(36)], ids=str)
def test_sheaf_axioms(spec):
    report = check_sheaf_axioms(sheaf_on(build_ring(spec)))
    assert report.ok and not report.truncated
    assert report.covers_checked > 0


def test_cover_cap_strict():
    F = sheaf_on(build_ring(ZMod(60)))
    with pytest.raises(CoverEnumerationCapExceeded):
        covers_of(F, F.spectrum.full, cap=4, strict=True)
    covers, truncated = covers_of(F, F.spectrum.full, cap=4)
    assert truncated


def test_stalks_z12(z12):
    F = sheaf_on(z12)
    k = spectrum(z12).index(all_ideals(z12).find((0, 4, 8)))
    st = stalk(F, k)
    assert st.ring.order == 4 and st.ring.is_local()
    for j in range(len(F.spectrum)):
        rep = check_stalk(F, j)
        assert rep.local and rep.matches_localization


@pytest.mark.parametrize("spec", [ZMod(1), ZMod(12), ZMod(60), Product((ZMod(2), ZMod(2), ZMod(3)))], ids=str)
def test_direct_image(spec):
    report = direct_image_check(build_ring(spec))
    assert report.ok, report.failures


def test_sheaf_on_spec_too(z12):
    F = sheaf_on(z12, Kind.SPEC)
    assert check_sheaf_axioms(F).ok
    assert len(F.sections(F.spectrum.full)) == 12
