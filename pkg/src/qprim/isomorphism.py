"""Ring isomorphism search for small finite rings.

Invariants (order, characteristic, unit/idempotent/nilpotent counts, additive
order histogram, per-element signatures) prune first. The search then picks
additive generators of the source, with 1 forced to 1, and backtracks over
images of equal signature, extending each partial map additively and
checking multiplicativity on the span built so far.
"""
from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import SearchCapExceeded
from .rings import DEFAULT_ORDER_CAP, FiniteRing, RingHom, build_hom

DEFAULT_NODE_BUDGET = 200_000


def element_signatures(R: FiniteRing) -> list:
    memo = R._memo.get("signatures")
    if memo is not None:
        return memo
    ann = (R.mul_table == 0).sum(axis=1)
    sigs = [
        (
            int(R.additive_orders[x]),
            R.is_unit(x),
            R.is_nilpotent(x),
            R.is_idempotent(x),
            len(R.power_orbits[x]),
            int(ann[x]),
        )
        for x in range(R.order)
    ]
    R._memo["signatures"] = sigs
    return sigs


def ring_invariants(R: FiniteRing) -> tuple:
    return (
        R.order,
        R.characteristic,
        len(R.units),
        len(R.idempotents),
        len(R.nilpotents),
        tuple(sorted(Counter(R.additive_orders.tolist()).items())),
        tuple(sorted(Counter(element_signatures(R)).items())),
    )


def _span_with(R: FiniteRing, span: list, g: int) -> list:
    """Pairs (x, s, k) with x = s + k·g for s in span, k in 1..ord(g)-1."""
    out = []
    kg = g
    for k in range(1, int(R.additive_orders[g])):
        for s in span:
            out.append((int(R.add_table[s, kg]), s, k))
        kg = int(R.add_table[kg, g])
    return out


def ring_isomorphic(A: FiniteRing, B: FiniteRing, *, order_cap: int = DEFAULT_ORDER_CAP,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> RingHom | None:
    """A verified isomorphism A -> B, or None when none exists."""
    if max(A.order, B.order) > order_cap:
        raise SearchCapExceeded(f"isomorphism search beyond order cap {order_cap}")
    if ring_invariants(A) != ring_invariants(B):
        return None
    n = A.order
    sig_a, sig_b = element_signatures(A), element_signatures(B)
    by_sig: dict = {}
    for y in range(B.order):
        by_sig.setdefault(sig_b[y], []).append(y)

    image = np.full(n, -1, dtype=np.int64)
    used = np.zeros(B.order, dtype=bool)
    image[0] = 0
    used[0] = True
    nodes = 0

    def consistent(domain: np.ndarray) -> bool:
        prod = A.mul_table[np.ix_(domain, domain)]
        known = image[prod] >= 0
        lhs = image[prod][known]
        rhs = B.mul_table[np.ix_(image[domain], image[domain])][known]
        return bool((lhs == rhs).all())

    def extend(g: int, gi: int, span: list):
        """Extend the map to span + <g> with g -> gi; returns new elements or None."""
        added = []
        for x, s, k in _span_with(A, span, g):
            y = int(B.add_table[image[s], B.mul_by_int(gi, k)])
            if image[x] >= 0:
                if image[x] != y:
                    break
                continue
            if used[y]:
                break
            image[x] = y
            used[y] = True
            added.append(x)
        else:
            return added
        for x in added:
            used[image[x]] = False
            image[x] = -1
        return None

    def search(span: list, forced: int | None) -> bool:
        nonlocal nodes
        if len(span) == n:
            return True
        in_span = np.zeros(n, dtype=bool)
        in_span[span] = True
        if forced is not None:
            g, candidates = forced, [B.one]
        else:
            rest = [x for x in range(n) if not in_span[x]]
            g = max(rest, key=lambda x: (A.additive_orders[x], -x))
            candidates = [y for y in by_sig.get(sig_a[g], []) if not used[y]]
        for gi in candidates:
            nodes += 1
            if nodes > node_budget:
                raise SearchCapExceeded(f"isomorphism search exceeded {node_budget} nodes")
            added = extend(g, gi, span)
            if added is None:
                continue
            new_span = span + added
            if consistent(np.array(new_span, dtype=np.int64)) and search(new_span, None):
                return True
            for x in added:
                used[image[x]] = False
                image[x] = -1
        return False

    if n == 1:
        return build_hom(A, B, [0])
    if not search([0], A.one):
        return None
    return build_hom(A, B, image)


def are_isomorphic(A: FiniteRing, B: FiniteRing) -> bool:
    return ring_isomorphic(A, B) is not None
