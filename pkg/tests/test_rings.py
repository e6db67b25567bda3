from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprim import PolyQuotient, Product, Table, ZMod, build_ring, idempotent_power, spec_from_json, spec_to_json
from qprim.errors import (BadModulus, MixedRings, NotAHom, OrderCapExceeded, RingSpecError, TableNoIdentity,
                          TableNotCommutative, TableNotRing)
from qprim.isomorphism import are_isomorphic, ring_isomorphic
from qprim.rings import build_hom, classify_element, quotient_map


def brute_axioms(R) -> bool:
    n = range(R.order)
    for a, b, c in itertools.product(n, repeat=3):
        if R.add(R.add(a, b), c) != R.add(a, R.add(b, c)):
            return False
        if R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)):
            return False
        if R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c)):
            return False
    return all(R.add(a, b) == R.add(b, a) and R.mul(a, b) == R.mul(b, a) for a in n for b in n) and all(
        R.mul(R.one, a) == a and R.add(0, a) == a for a in n)


def test_zmod_tables_match_integer_arithmetic():
    R = build_ring(ZMod(12))
    for a in range(12):
        for b in range(12):
            assert R.add(a, b) == (a + b) % 12
            assert R.mul(a, b) == (a * b) % 12


def test_product_indexing_first_factor_most_significant():
    R = build_ring(Product((ZMod(4), ZMod(3))))
    assert R.order == 12
    assert R.coords(5) == (1, 2)
    assert R.from_coords((3, 1)) == 10
    assert R.one == R.from_coords((1, 1))
    x, y = R.from_coords((2, 1)), R.from_coords((3, 2))
    assert R.coords(R.mul(x, y)) == (2, 2)


def test_poly_quotients():
    dual = build_ring(PolyQuotient(ZMod(2), (0, 0, 1)))
    x = 2  # base-2 digits: c0 + 2*c1
    assert dual.mul(x, x) == 0
    f4 = build_ring(PolyQuotient(ZMod(2), (1, 1, 1)))
    assert set(f4.units) == {1, 2, 3}
    assert dual.nilpotents == (0, 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([ZMod(1), ZMod(2), ZMod(6), ZMod(9), Product((ZMod(2), ZMod(3))),
                        PolyQuotient(ZMod(3), (0, 0, 1)), PolyQuotient(ZMod(2), (1, 0, 1)),
                        Product((ZMod(2), PolyQuotient(ZMod(2), (0, 0, 1))))]))
def test_built_rings_satisfy_axioms(spec):
    assert brute_axioms(build_ring(spec))


@given(st.integers(1, 40), st.data())
def test_idempotent_power_is_a_power_and_idempotent(n, data):
    R = build_ring(ZMod(n))
    a = data.draw(st.integers(0, n - 1))
    e, k = idempotent_power(R[a])
    assert k >= 1
    assert e.index == pow(a, k, n)
    assert R.mul(e.index, e.index) == e.index


def test_classify_elements_of_z12(z12):
    assert set(z12.units) == {1, 5, 7, 11}
    assert set(z12.idempotents) == {0, 1, 4, 9}
    assert set(z12.nilpotents) == {0, 6}
    c = classify_element(z12[6])
    assert c.is_nilpotent and c.is_zero_divisor and not c.is_unit
    assert not z12.is_local()
    assert build_ring(ZMod(9)).is_local()
    assert not build_ring(ZMod(1)).is_local()


def test_spec_json_round_trip():
    spec = Product((ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1))))
    assert spec_from_json(spec_to_json(spec)) == spec
    assert spec_from_json({"type": "zmod", "p": 5}) == ZMod(5)


@pytest.mark.parametrize("bad", [
    {"type": "zmod", "n": 0},
    {"type": "zmod", "n": "7"},
    {"type": "nope"},
    {"type": "product", "factors": []},
    {"type": "poly_quotient", "base": {"type": "zmod", "n": 2}, "modulus": [1]},
    {"type": "table", "order": 2, "add": [[0, 1]], "mul": [[0, 0], [0, 1]]},
])
def test_bad_specs_rejected(bad):
    with pytest.raises(RingSpecError):
        spec_from_json(bad)


def test_table_errors():
    add = ((0, 1), (1, 0))
    with pytest.raises(TableNoIdentity):
        build_ring(Table(2, add, ((0, 0), (0, 0))))
    add3 = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    noncomm = ((0, 0, 0), (0, 1, 2), (0, 1, 2))
    with pytest.raises(TableNotCommutative):
        build_ring(Table(3, add3, noncomm))
    # commutative with identity 1, but 2·2 = 2 breaks distributivity
    with pytest.raises(TableNotRing) as info:
        build_ring(Table(3, add3, ((0, 0, 0), (0, 1, 2), (0, 2, 2))))
    assert info.value.witness is not None


def test_table_ring_accepted():
    R = build_ring(Table(2, ((0, 1), (1, 0)), ((0, 0), (0, 1))))
    assert R.order == 2 and R.one == 1


def test_bad_modulus_and_order_cap():
    with pytest.raises(BadModulus):
        build_ring(PolyQuotient(ZMod(4), (1, 0, 2)))
    with pytest.raises(OrderCapExceeded):
        build_ring(ZMod(600))
    with pytest.raises(OrderCapExceeded):
        build_ring(Product((ZMod(10), ZMod(10))), order_cap=50)


def test_mixed_rings_and_homs(z12):
    z4 = build_ring(ZMod(4))
    with pytest.raises(MixedRings):
        z12[1] + z4[1]
    with pytest.raises(NotAHom) as info:
        build_hom(z12, z4, lambda x: (2 * x) % 4)
    assert info.value.witness[0] in {"one", "add", "mul"}
    phi = build_hom(z12, z4, lambda x: x % 4)
    Q, pi = quotient_map(z12, [0, 4, 8])
    assert Q.order == 4
    psi = build_hom(Q, z4, lambda y: int(Q._memo["reps"][y]) % 4)
    assert np.array_equal(psi.compose(pi).map, phi.map)
    assert psi.is_bijective() and np.array_equal(psi.inverse().compose(psi).map, np.arange(4))


def test_isomorphism_search():
    z12 = build_ring(ZMod(12))
    z43 = build_ring(Product((ZMod(4), ZMod(3))))
    iso = ring_isomorphic(z12, z43)
    assert iso is not None and iso.is_bijective()
    build_hom(z12, z43, iso.map)  # re-verified independently
    assert ring_isomorphic(build_ring(ZMod(4)), build_ring(Product((ZMod(2), ZMod(2))))) is None
    assert not are_isomorphic(build_ring(ZMod(4)), build_ring(PolyQuotient(ZMod(2), (0, 0, 1))))
    assert are_isomorphic(build_ring(ZMod(6)), build_ring(Product((ZMod(3), ZMod(2)))))
