from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprim import PolyQuotient, Product, ZMod, all_ideals, build_ring, generate
from qprim.errors import IdealCountCapExceeded, ImproperIdeal, MixedRings
from qprim.ideals import brute_force_ideals, is_ideal_set, minimal_primes_over, nilradical, principal, unit_ideal

from conftest import divisors, zmod_ideal

SMALL = [ZMod(1), ZMod(2), ZMod(4), ZMod(6), ZMod(8), ZMod(12), ZMod(16),
         PolyQuotient(ZMod(2), (0, 0, 1)), PolyQuotient(ZMod(2), (0, 0, 0, 1)), PolyQuotient(ZMod(3), (0, 0, 1)),
         Product((ZMod(2), ZMod(2))), Product((ZMod(2), ZMod(2), ZMod(3))), Product((ZMod(4), ZMod(2)))]


def def_radical(I) -> set:
    R = I.ring
    return {x for x in range(R.order) if any(R.pow(x, k) in I for k in range(1, R.order + 1))}


def def_prime(I) -> bool:
    R = I.ring
    return I.is_proper and all(a in I or b in I for a in range(R.order) for b in range(R.order)
                               if R.mul(a, b) in I)


def def_primary(I) -> bool:
    R = I.ring
    rad = def_radical(I)
    return I.is_proper and all(a in I or b in rad for a in range(R.order) for b in range(R.order)
                               if R.mul(a, b) in I)


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_lattice_matches_subset_oracle(spec):
    R = build_ring(spec)
    assert [I.elements for I in all_ideals(R)] == sorted(brute_force_ideals(R))


@pytest.mark.parametrize("n", [1, 5, 12, 30, 36, 60, 64])
def test_zmod_ideals_are_divisor_ideals(n):
    R = build_ring(ZMod(n))
    assert sorted(I.elements for I in all_ideals(R)) == sorted({zmod_ideal(n, d) for d in divisors(n)})


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_classifiers_match_definitions(spec):
    R = build_ring(spec)
    for I in all_ideals(R):
        assert set(I.radical.elements) == def_radical(I)
        assert I.is_prime == def_prime(I)
        assert I.is_primary == def_primary(I)
        rad = I.radical
        assert I.is_quasi_primary == (I.is_proper and def_prime(rad))


def test_z12_values(z12):
    L = all_ideals(z12)
    assert len(L) == 6
    assert generate(z12, [4, 6]).elements == (0, 2, 4, 6, 8, 10)
    assert nilradical(z12).elements == (0, 6)
    mins = minimal_primes_over(L.zero)
    assert [P.elements for P in mins] == [(0, 2, 4, 6, 8, 10), (0, 3, 6, 9)]
    with pytest.raises(ImproperIdeal):
        minimal_primes_over(unit_ideal(z12))
    assert principal(z12, 8) is principal(z12, 8)


def test_ideal_arithmetic_and_errors(z12):
    I, J = principal(z12, 4), principal(z12, 6)
    assert (I + J).elements == (0, 2, 4, 6, 8, 10)
    assert (I * J).elements == (0,)
    assert (I & J).elements == (0,)
    assert I <= principal(z12, 2) and not I <= J
    assert is_ideal_set(z12, [0, 4, 8]) and not is_ideal_set(z12, [0, 4])
    with pytest.raises(MixedRings):
        I + principal(build_ring(ZMod(4)), 2)


def test_ideal_cap():
    R = build_ring(Product((ZMod(2), ZMod(2), ZMod(2))))
    with pytest.raises(IdealCountCapExceeded):
        all_ideals(R, cap=4)


ring_and_pair = st.sampled_from([ZMod(12), ZMod(36), ZMod(16), Product((ZMod(4), ZMod(3))),
                                 Product((ZMod(2), PolyQuotient(ZMod(2), (0, 0, 1))))]).flatmap(
    lambda spec: st.tuples(st.just(spec), st.integers(0, 10_000), st.integers(0, 10_000)))


@settings(max_examples=60, deadline=None)
@given(ring_and_pair)
def test_radical_identities(args):
    spec, i, j = args
    R = build_ring(spec)
    L = all_ideals(R)
    I, J = L[i % len(L)], L[j % len(L)]
    assert I <= I.radical
    assert I.radical.radical == I.radical
    assert (I * J).radical == (I & J).radical == (I.radical & J.radical)
    if I.is_primary:
        assert I.is_quasi_primary
    if I.is_prime:
        assert I.is_primary and I.radical == I


@pytest.mark.parametrize("spec", SMALL + [ZMod(36), ZMod(60), Product((ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1))))],
                         ids=str)
def test_primary_equals_quasi_primary_in_finite_rings(spec):
    # every prime of a finite ring is maximal, so a prime radical forces primary
    for I in all_ideals(build_ring(spec)):
        assert I.is_primary == I.is_quasi_primary


def test_product_lattice_is_product_of_lattices():
    mixed = build_ring(Product((ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1)))))
    assert len(all_ideals(mixed)) == 3 * 3
