"""Finite commutative rings with identity, stored as Cayley tables on indices.

Every ring has elements ``0 .. order-1``; index 0 is always zero. Rings are
built from a :mod:`qprim.specs` description with :func:`build_ring` and are
immutable afterwards. The ``_memo`` dict holds derived data (ideal lattice,
spectra, ...) filled by other modules; entries are pure functions of the ring,
so recomputation always writes the same value.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadModulus,
    MixedRings,
    NotAHom,
    OrderCapExceeded,
    RingSpecError,
    TableNoIdentity,
    TableNotCommutative,
    TableNotRing,
)
from .specs import PolyQuotient, Product, RingSpec, Table, ZMod, spec_label

DEFAULT_ORDER_CAP = 512
EXHAUSTIVE_AXIOM_ORDER = 64
SAMPLED_TRIPLES = 10_000


class FiniteRing:
    """A finite commutative ring with identity on element indices."""

    def __init__(self, add, mul, one: int, *, spec: RingSpec | None = None,
                 label: str | None = None, factors: Sequence["FiniteRing"] = ()):
        self.add_table = np.ascontiguousarray(add, dtype=np.int64)
        self.mul_table = np.ascontiguousarray(mul, dtype=np.int64)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self.order = int(self.add_table.shape[0])
        self.one = int(one)
        self.spec = spec
        self.label = label or (spec_label(spec) if spec is not None else f"Ring({self.order})")
        self.factors = tuple(factors)
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"<FiniteRing {self.label} order={self.order}>"

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, index: int) -> "RingElement":
        return self.element(index)

    def element(self, index: int) -> "RingElement":
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} out of range for {self}")
        return RingElement(self, int(index))

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = np.argmax(self.add_table == 0, axis=1)
        table.setflags(write=False)
        return table

    # index-level arithmetic; RingElement wraps these

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.one, a
        while k:
            if k & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            k >>= 1
        return result

    def mul_by_int(self, a: int, k: int) -> int:
        """``a + a + ... + a`` (k times); k may be negative."""
        if k < 0:
            return self.neg(self.mul_by_int(a, -k))
        result = 0
        for _ in range(k):
            result = int(self.add_table[result, a])
        return result

    @cached_property
    def power_orbits(self) -> tuple:
        """For each element x, the distinct powers x^1, x^2, ... up to the first repeat."""
        orbits = []
        for x in range(self.order):
            seen, seq, p = set(), [], x
            while p not in seen:
                seen.add(p)
                seq.append(p)
                p = int(self.mul_table[p, x])
            orbits.append(tuple(seq))
        return tuple(orbits)

    @cached_property
    def additive_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            k, p = 1, x
            while p != 0:
                p = int(self.add_table[p, x])
                k += 1
            orders[x] = k
        return orders

    @cached_property
    def characteristic(self) -> int:
        return int(self.additive_orders[self.one])

    @cached_property
    def units(self) -> tuple:
        return tuple(int(x) for x in np.flatnonzero((self.mul_table == self.one).any(axis=1)))

    @cached_property
    def idempotents(self) -> tuple:
        diag = self.mul_table[np.arange(self.order), np.arange(self.order)]
        return tuple(int(x) for x in np.flatnonzero(diag == np.arange(self.order)))

    @cached_property
    def nilpotents(self) -> tuple:
        return tuple(x for x in range(self.order) if 0 in self.power_orbits[x])

    def inverse(self, a: int) -> int | None:
        hits = np.flatnonzero(self.mul_table[a] == self.one)
        return int(hits[0]) if hits.size else None

    def is_unit(self, a: int) -> bool:
        return bool((self.mul_table[a] == self.one).any())

    def is_nilpotent(self, a: int) -> bool:
        return 0 in self.power_orbits[a]

    def is_idempotent(self, a: int) -> bool:
        return int(self.mul_table[a, a]) == a

    def is_zero_divisor(self, a: int) -> bool:
        return bool((self.mul_table[a, 1:] == 0).any())

    def is_zero_ring(self) -> bool:
        return self.order == 1

    def nontrivial_idempotents(self) -> tuple:
        return tuple(e for e in self.idempotents if e not in (0, self.one))

    def is_local(self) -> bool:
        """Non-units form an ideal (equivalently: a unique maximal ideal)."""
        if self.order == 1:
            return False
        nonunit = np.ones(self.order, dtype=bool)
        nonunit[list(self.units)] = False
        idx = np.flatnonzero(nonunit)
        return bool(nonunit[self.add_table[np.ix_(idx, idx)]].all())

    # product coordinates

    def coords(self, index: int) -> tuple:
        if not self.factors:
            return (index,)
        out = []
        for f in reversed(self.factors):
            index, r = divmod(index, f.order)
            out.append(r)
        return tuple(reversed(out))

    def from_coords(self, coords: Sequence[int]) -> int:
        if not self.factors:
            (c,) = coords
            return int(c)
        index = 0
        for f, c in zip(self.factors, coords):
            index = index * f.order + int(c)
        return index


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: FiniteRing
    index: int

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.index == other.index

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __repr__(self) -> str:
        return f"{self.ring.label}[{self.index}]"

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            raise MixedRings(f"elements of different rings: {self!r}, {other!r}")

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))

    def __pow__(self, k: int):
        return pow(self, k)


def add(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    return RingElement(a.ring, a.ring.add(a.index, b.index))


def mul(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    return RingElement(a.ring, a.ring.mul(a.index, b.index))


def neg(a: RingElement) -> RingElement:
    return RingElement(a.ring, a.ring.neg(a.index))


def pow(a: RingElement, k: int) -> RingElement:  # noqa: A001 - mirrors ring vocabulary
    return RingElement(a.ring, a.ring.pow(a.index, k))


class ElementClass(NamedTuple):
    is_unit: bool
    is_nilpotent: bool
    is_idempotent: bool
    is_zero_divisor: bool


def classify_element(a: RingElement) -> ElementClass:
    R, x = a.ring, a.index
    return ElementClass(R.is_unit(x), R.is_nilpotent(x), R.is_idempotent(x), R.is_zero_divisor(x))


def idempotent_power(a: RingElement) -> tuple[RingElement, int]:
    """Least k >= 1 with a^k idempotent, and that idempotent."""
    R = a.ring
    for k, p in enumerate(R.power_orbits[a.index], start=1):
        if R.is_idempotent(p):
            return RingElement(R, p), k
    # the orbit is eventually periodic, so its cycle always holds an idempotent
    raise AssertionError("no idempotent power found")


# ---------------------------------------------------------------- verification


def _first_false(mask: np.ndarray):
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if bad.size else None


def check_ring_axioms(add_t: np.ndarray, mul_t: np.ndarray, one: int, *,
                      exhaustive: bool = True, samples: int = SAMPLED_TRIPLES, seed: int = 0) -> None:
    """Raise a :class:`RingSpecError` subclass naming a witness if an axiom fails."""
    n = add_t.shape[0]
    if add_t.shape != (n, n) or mul_t.shape != (n, n):
        raise TableNotRing("tables must be square and of equal size")
    if add_t.min() < 0 or add_t.max() >= n or mul_t.min() < 0 or mul_t.max() >= n:
        raise TableNotRing("table entries out of range")
    for name, t in (("addition", add_t), ("multiplication", mul_t)):
        w = _first_false(t == t.T)
        if w is not None:
            raise TableNotCommutative(f"{name} not commutative at {w}")
    w = _first_false(add_t[0] == np.arange(n))
    if w is not None:
        raise TableNotRing(f"index 0 is not the additive identity (0+{w[0]})", witness=(0, w[0]))
    if not (add_t == 0).any(axis=1).all():
        x = int(np.flatnonzero(~(add_t == 0).any(axis=1))[0])
        raise TableNotRing(f"element {x} has no additive inverse", witness=(x,))
    if not 0 <= one < n or not (mul_t[one] == np.arange(n)).all():
        raise TableNoIdentity(f"index {one} is not a multiplicative identity")

    def triples():
        if exhaustive:
            for a in range(n):
                yield a, None
        else:
            rng = np.random.default_rng(seed)
            yield None, rng.integers(0, n, size=(samples, 3))

    for a, sample in triples():
        if sample is None:
            laws = {
                "additive associativity": (add_t[add_t[a]], add_t[a][add_t]),
                "multiplicative associativity": (mul_t[mul_t[a]], mul_t[a][mul_t]),
                "distributivity": (mul_t[a][add_t], add_t[mul_t[a][:, None], mul_t[a][None, :]]),
            }
            for law, (lhs, rhs) in laws.items():
                w = _first_false(lhs == rhs)
                if w is not None:
                    raise TableNotRing(f"{law} fails at {(a,) + w}", witness=(a,) + w)
        else:
            x, y, z = sample.T
            laws = {
                "additive associativity": (add_t[add_t[x, y], z], add_t[x, add_t[y, z]]),
                "multiplicative associativity": (mul_t[mul_t[x, y], z], mul_t[x, mul_t[y, z]]),
                "distributivity": (mul_t[x, add_t[y, z]], add_t[mul_t[x, y], mul_t[x, z]]),
            }
            for law, (lhs, rhs) in laws.items():
                bad = np.flatnonzero(lhs != rhs)
                if bad.size:
                    i = bad[0]
                    w = (int(x[i]), int(y[i]), int(z[i]))
                    raise TableNotRing(f"{law} fails at {w}", witness=w)


def verify_ring(R: FiniteRing, *, seed: int = 0) -> None:
    """Exhaustive axiom scan for order <= 64, else 10^4 sampled triples."""
    check_ring_axioms(R.add_table, R.mul_table, R.one,
                      exhaustive=R.order <= EXHAUSTIVE_AXIOM_ORDER, seed=seed)


# ---------------------------------------------------------------- construction


def _spec_order(spec: RingSpec) -> int:
    if isinstance(spec, ZMod):
        if isinstance(spec.n, bool) or not isinstance(spec.n, int) or spec.n < 1:
            raise RingSpecError(f"zmod modulus must be a positive integer, got {spec.n!r}")
        return spec.n
    if isinstance(spec, Product):
        return math.prod(_spec_order(f) for f in spec.factors)
    if isinstance(spec, PolyQuotient):
        return spec.base.n ** (len(spec.modulus) - 1)
    if isinstance(spec, Table):
        return spec.order
    raise RingSpecError(f"not a ring spec: {spec!r}")


def _zmod(spec: ZMod) -> FiniteRing:
    n = spec.n
    r = np.arange(n)
    return FiniteRing(np.add.outer(r, r) % n, np.multiply.outer(r, r) % n, 1 % n, spec=spec)


def _product(spec: Product, cap: int) -> FiniteRing:
    factors = [build_ring(f, order_cap=cap) for f in spec.factors]
    sizes = [f.order for f in factors]
    coords = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64)
    weights = np.array([math.prod(sizes[k + 1:]) for k in range(len(sizes))], dtype=np.int64)

    def combine(tables):
        out = np.zeros((len(coords), len(coords)), dtype=np.int64)
        for k, t in enumerate(tables):
            out += t[coords[:, k][:, None], coords[:, k][None, :]] * weights[k]
        return out

    add_t = combine([f.add_table for f in factors])
    mul_t = combine([f.mul_table for f in factors])
    one = int(sum(f.one * w for f, w in zip(factors, weights)))
    return FiniteRing(add_t, mul_t, one, spec=spec, factors=factors)


def _poly_quotient(spec: PolyQuotient) -> FiniteRing:
    q = spec.base.n
    modulus = [c % q for c in spec.modulus]
    d = len(modulus) - 1
    lead_inv = next((u for u in range(q) if (u * modulus[-1]) % q == 1 % q), None)
    if lead_inv is None:
        raise BadModulus(f"leading coefficient {spec.modulus[-1]} is not a unit mod {q}")
    # x^k reduced to degree < d, for k < 2d - 1
    red = np.zeros((max(2 * d - 1, d), d), dtype=np.int64)
    for k in range(d):
        red[k, k] = 1
    for k in range(d, 2 * d - 1):
        prev = red[k - 1]
        shifted = np.concatenate(([0], prev[:-1]))
        top = prev[-1]
        # x^d = -lead^{-1} * (m_0 + ... + m_{d-1} x^{d-1})
        shifted = shifted - top * lead_inv * np.array(modulus[:d], dtype=np.int64)
        red[k] = shifted % q
    n = q**d
    digits = np.array([[(i // q**k) % q for k in range(d)] for i in range(n)], dtype=np.int64)
    place = q ** np.arange(d, dtype=np.int64)
    add_t = ((digits[:, None, :] + digits[None, :, :]) % q) @ place
    conv = np.zeros((n, n, 2 * d - 1), dtype=np.int64)
    for s in range(d):
        for t in range(d):
            conv[:, :, s + t] += np.multiply.outer(digits[:, s], digits[:, t])
    mul_t = ((conv % q) @ red[: 2 * d - 1] % q) @ place
    return FiniteRing(add_t, mul_t, 1 % n, spec=spec)


def _table(spec: Table) -> FiniteRing:
    add_t = np.array(spec.add, dtype=np.int64)
    mul_t = np.array(spec.mul, dtype=np.int64)
    n = spec.order
    if add_t.shape != (n, n) or mul_t.shape != (n, n):
        raise TableNotRing("tables must be order x order")
    if add_t.min() < 0 or add_t.max() >= n or mul_t.min() < 0 or mul_t.max() >= n:
        raise TableNotRing("table entries out of range")
    ones = [u for u in range(n) if (mul_t[u] == np.arange(n)).all()]
    if not ones:
        raise TableNoIdentity("multiplication table has no identity element")
    check_ring_axioms(add_t, mul_t, ones[0], exhaustive=True)
    return FiniteRing(add_t, mul_t, ones[0], spec=spec)


def build_ring(spec: RingSpec, *, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Construct and verify the ring described by ``spec``."""
    order = _spec_order(spec)
    if order > order_cap:
        raise OrderCapExceeded(f"ring order {order} exceeds cap {order_cap}")
    if isinstance(spec, ZMod):
        R = _zmod(spec)
    elif isinstance(spec, Product):
        R = _product(spec, order_cap)
    elif isinstance(spec, PolyQuotient):
        if spec.base.n < 1 or len(spec.modulus) < 2:
            raise BadModulus("modulus must have degree >= 1")
        R = _poly_quotient(spec)
    elif isinstance(spec, Table):
        return _table(spec)
    else:
        raise RingSpecError(f"not a ring spec: {spec!r}")
    verify_ring(R)
    return R


def ring_from_tables(add, mul, one: int, *, label: str | None = None) -> FiniteRing:
    """Wrap already-trusted tables (quotients, localizations, section rings)."""
    return FiniteRing(add, mul, one, label=label)


# ---------------------------------------------------------------- homomorphisms


class RingHom:
    """A verified ring homomorphism, given by its action on indices."""

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping):
        self.source = source
        self.target = target
        self.map = np.asarray(mapping, dtype=np.int64)
        self.map.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __repr__(self) -> str:
        return f"<RingHom {self.source.label} -> {self.target.label}>"

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self ∘ inner``."""
        if inner.target is not self.source:
            raise MixedRings("homs do not compose")
        return RingHom(inner.source, self.target, self.map[inner.map])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.map.tolist())) == self.source.order

    def inverse(self) -> "RingHom":
        if not self.is_bijective():
            raise NotAHom("map is not bijective")
        inv = np.empty(self.source.order, dtype=np.int64)
        inv[self.map] = np.arange(self.source.order)
        return RingHom(self.target, self.source, inv)


def hom_violation(source: FiniteRing, target: FiniteRing, m: np.ndarray):
    """First witness that ``m`` is not a unital ring hom, or None."""
    if m.shape != (source.order,) or (source.order and (m.min() < 0 or m.max() >= target.order)):
        return ("shape",)
    if m[0] != 0:
        return ("zero", 0)
    if m[source.one] != target.one:
        return ("one", source.one)
    for name, st, tt in (("add", source.add_table, target.add_table),
                         ("mul", source.mul_table, target.mul_table)):
        lhs = m[st]
        rhs = tt[m[:, None], m[None, :]]
        w = _first_false(lhs == rhs)
        if w is not None:
            return (name,) + w
    return None


def build_hom(source: FiniteRing, target: FiniteRing, mapping) -> RingHom:
    """Verify ``mapping`` (index -> index) preserves 0, 1, + and ·."""
    if callable(mapping):
        mapping = [mapping(x) for x in range(source.order)]
    m = np.asarray(mapping, dtype=np.int64)
    w = hom_violation(source, target, m)
    if w is not None:
        raise NotAHom(f"not a ring homomorphism: fails {w[0]} at {w[1:]}", witness=w)
    return RingHom(source, target, m)


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, np.arange(R.order))


def quotient_map(R: FiniteRing, ideal: Iterable[int] | object, *, label: str | None = None) -> tuple[FiniteRing, RingHom]:
    """R/I with least-index coset representatives, and the canonical surjection."""
    members = np.array(sorted(getattr(ideal, "elements", ideal)), dtype=np.int64)
    reps_of = R.add_table[:, members].min(axis=1)  # least element of each coset r + I
    reps = np.unique(reps_of)
    slot = np.full(R.order, -1, dtype=np.int64)
    slot[reps] = np.arange(len(reps))
    proj = slot[reps_of]
    add_t = proj[R.add_table[np.ix_(reps, reps)]]
    mul_t = proj[R.mul_table[np.ix_(reps, reps)]]
    Q = FiniteRing(add_t, mul_t, int(proj[R.one]),
                   label=label or f"{R.label}/I{len(members)}")
    Q._memo["reps"] = reps
    return Q, RingHom(R, Q, proj)
