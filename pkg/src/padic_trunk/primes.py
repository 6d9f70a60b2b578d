"""Primality testing and factorization for composite-modulus solving."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

# Witness set making Miller-Rabin deterministic for all n below this limit.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


class FactorizationError(RuntimeError):
    """A composite resisted the configured factoring effort."""


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic below ~3.3e24 via the fixed witness set; larger inputs
    additionally get 20 witnesses from a PRNG seeded with n, which keeps
    the test reproducible while making the error probability < 4**-20.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases: tuple[int, ...] = _MR_BASES
    if n >= _MR_DETERMINISTIC_LIMIT:
        rng = random.Random(n)
        bases = bases + tuple(rng.randrange(2, n - 1) for _ in range(20))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> int | None:
    """Floyd-cycle rho with deterministic constants; None if budget runs out."""
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        x = y = 2
        d = 1
        steps = 0
        while d == 1 and steps < budget:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
        if 1 < d < n:
            return d
    return None


def factorize(n: int, *, trial_bound: int = 10**6, rho_budget: int = 200_000) -> list[tuple[int, int]]:
    """Prime factorization of n as a sorted list of (prime, exponent) pairs.

    Trial division up to trial_bound, then rho with a bounded iteration
    budget for whatever survives; raises FactorizationError beyond that.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    factors: dict[int, int] = {}
    m = n
    for q in (2, 3):
        while m % q == 0:
            factors[q] = factors.get(q, 0) + 1
            m //= q
    d = 5
    while d <= trial_bound and d * d <= m:
        for q in (d, d + 2):
            while m % q == 0:
                factors[q] = factors.get(q, 0) + 1
                m //= q
        d += 6
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if v == 1:
                continue
            if is_prime(v):
                factors[v] = factors.get(v, 0) + 1
                continue
            g = _pollard_rho(v, rho_budget)
            if g is None or g == v:
                raise FactorizationError(f"could not factor {v} within the configured effort")
            stack.append(g)
            stack.append(v // g)
    return sorted(factors.items())


@dataclass(frozen=True)
class PrimePower:
    """A modulus p**e whose base is certified prime at construction."""

    p: int
    e: int

    def __post_init__(self) -> None:
        if self.p < 2 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def modulus(self) -> int:
        return self.p ** self.e
