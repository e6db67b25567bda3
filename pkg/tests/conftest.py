from __future__ import annotations

import math

import pytest

from qprim import ZMod, build_ring

ACCEPTANCE_LINES: list = []


def prime_factors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def zmod_ideal(n: int, d: int) -> tuple:
    """The ideal (d) of Z/n, as its sorted residues."""
    return tuple(range(0, n, math.gcd(d, n))) if n > 1 else (0,)


def zmod_qprim(n: int) -> list:
    """Quasi-primary ideals of Z/n: (d) with d | n, d > 1 and a single prime factor."""
    return sorted(zmod_ideal(n, d) for d in divisors(n) if d > 1 and len(prime_factors(d)) == 1)


def zmod_localization_order(n: int, a: int) -> int:
    """|(Z/n)_a|: keep the prime-power factors of n whose prime does not divide a."""
    order = 1
    for p in prime_factors(n):
        if a % p:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            order *= p ** k
    return order


@pytest.fixture(scope="session")
def z12():
    return build_ring(ZMod(12))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
