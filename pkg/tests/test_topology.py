from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprim import Kind, PolyQuotient, Product, ZMod, all_ideals, basic_open, build_ring, closure, spectrum, v_q
from qprim.dot import closed_lattice_dot, specialization_dot
from qprim.errors import EmptySpectrum, NotAProductSpec, NotIrreducible
from qprim.rings import quotient_map
from qprim.topology import (associated_map, chain_dimension, closure_by_intersection, decompose_closed,
                            disjoint_decomposition, generic_points, irreducible_components, is_connected,
                            is_irreducible, krull_dimension, subspace_topology_agrees)

from conftest import zmod_qprim

TWO, THREE, FOUR = (0, 2, 4, 6, 8, 10), (0, 3, 6, 9), (0, 4, 8)


@pytest.mark.parametrize("n", [1, 2, 4, 12, 24, 36, 60, 64, 90])
def test_zmod_qprim_matches_divisor_oracle(n):
    sp = spectrum(build_ring(ZMod(n)), Kind.QPRIM)
    assert sorted(Q.elements for Q in sp.points) == zmod_qprim(n)


def test_z12_spectra(z12):
    assert [Q.elements for Q in spectrum(z12, Kind.QPRIM).points] == [TWO, THREE, FOUR]
    assert [Q.elements for Q in spectrum(z12, Kind.SPEC).points] == [TWO, THREE]
    assert len(spectrum(z12, Kind.PRIM)) == 3
    assert len(spectrum(z12).topology.closed) == 4


def test_extreme_closed_and_open_sets(z12):
    sp = spectrum(z12)
    L = all_ideals(z12)
    assert v_q(sp, L.zero).points == sp.full
    assert v_q(sp, L.whole).points == frozenset()
    assert basic_open(sp, 0).points == frozenset()
    for u in z12.units:
        assert basic_open(sp, u).points == sp.full
    assert basic_open(sp, 2).points == {1}


def test_closure_is_not_t0(z12):
    sp = spectrum(z12)
    L = all_ideals(z12)
    c2, c4 = closure(sp, L.find(TWO)), closure(sp, L.find(FOUR))
    assert c2 == c4 and c2.points == {0, 2}
    for Q in sp.points:
        assert closure_by_intersection(sp, Q) == closure(sp, Q).points


ring_specs = st.sampled_from([ZMod(12), ZMod(36), ZMod(60), ZMod(16), Product((ZMod(2), ZMod(2), ZMod(3))),
                              Product((ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1))))])


@settings(max_examples=60, deadline=None)
@given(ring_specs, st.integers(0, 10_000), st.integers(0, 10_000))
def test_closed_set_identities(spec, i, j):
    R = build_ring(spec)
    sp, L = spectrum(R), all_ideals(R)
    I, J = L[i % len(L)], L[j % len(L)]
    V = lambda A: v_q(sp, A).points  # noqa: E731
    assert V(I) | V(J) == V(I * J) == V(I & J)
    assert V(I + J) == V(I) & V(J)
    assert V(I) == V(I.radical)
    if I <= J:
        assert V(J) <= V(I)
    # definition: Q ∈ V(I) iff I ⊆ √Q
    assert V(I) == {k for k, Q in enumerate(sp.points) if I <= Q.radical}


@settings(max_examples=40, deadline=None)
@given(ring_specs, st.integers(0, 10_000), st.integers(0, 10_000))
def test_basic_opens_meet(spec, a, b):
    R = build_ring(spec)
    sp = spectrum(R)
    a, b = a % R.order, b % R.order
    assert basic_open(sp, a).points & basic_open(sp, b).points == basic_open(sp, R.mul(a, b)).points


def test_z12_structure(z12):
    sp = spectrum(z12)
    comps = irreducible_components(sp)
    assert sorted(sorted(C.points) for C in comps) == [[0, 2], [1]]
    assert not is_connected(sp) and not is_irreducible(sp)
    assert chain_dimension(sp).krull == 0 and krull_dimension(z12) == 0
    both = [C for C in comps if len(C) == 2][0]
    assert [Q.elements for Q in generic_points(both)] == [TWO, FOUR]
    with pytest.raises(NotIrreducible):
        generic_points(v_q(sp, all_ideals(z12).zero))
    pieces = decompose_closed(v_q(sp, [6]))
    assert len(pieces) == 2


def test_local_ring_is_irreducible_and_connected():
    sp = spectrum(build_ring(ZMod(16)))
    assert is_irreducible(sp) and is_connected(sp)
    assert len(sp) == 4  # (2), (4), (8), (0)


def test_zero_ring():
    R = build_ring(ZMod(1))
    sp = spectrum(R)
    assert len(sp) == 0 and len(sp.topology.closed) == 1
    assert krull_dimension(R) == -1
    with pytest.raises(EmptySpectrum):
        chain_dimension(sp)
    assert not is_irreducible(sp)


def test_spec_is_a_subspace(z12):
    assert subspace_topology_agrees(spectrum(z12, Kind.SPEC), spectrum(z12))


def test_associated_map_of_quotient(z12):
    Q, pi = quotient_map(z12, [0, 4, 8])
    m = associated_map(pi)
    assert m.lands_in_source() and m.is_continuous()
    # QPrim(Z/4) = {(0), (2)} pulls back to (4) and (2)
    assert [I.elements for I in m.images] == [FOUR, TWO]


def test_product_decomposition():
    d = disjoint_decomposition(build_ring(Product((ZMod(2), ZMod(2)))))
    assert d.verified and d.matches_disjoint_union
    assert (d.total, d.disjoint_union_count, d.product_count) == (2, 2, 1)
    d = disjoint_decomposition(build_ring(Product((ZMod(4), ZMod(3)))))
    assert d.verified and (d.total, d.product_count) == (3, 2)
    with pytest.raises(NotAProductSpec):
        disjoint_decomposition(build_ring(ZMod(12)))


def test_dot_export(z12):
    sp = spectrum(z12)
    spec_dot = specialization_dot(sp)
    assert spec_dot.startswith("digraph")
    assert spec_dot.count("[label=") == 3
    edges = [line.strip() for line in spec_dot.splitlines() if "->" in line]
    assert edges == ["p0 -> p2;", "p2 -> p0;"]
    assert '"{0,4,8}"' in spec_dot
    lat = closed_lattice_dot(sp)
    assert lat.count("shape=box") == 4 and '"∅"' in lat
    assert sum("->" in line for line in lat.splitlines()) == 4
    assert specialization_dot(sp) == spec_dot
