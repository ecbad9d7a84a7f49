"""Cyclotomic bookkeeping for q-brackets of integers.

With ``q = v^2`` the bracket of a nonzero integer factors as

    [n] = sign(n) * v^(2 - 2|n|) * prod_{d | 4|n|, d not in {1, 2, 4}} Phi_d(v)

so every product or ratio of integer brackets is a signed monomial in ``v``
times a product of cyclotomic powers.  This is the representation used on the
hot path of the action formulas.
"""
from __future__ import annotations

import random
from functools import lru_cache

from .poly import ONE, LaurentPoly, cyclotomic


@lru_cache(maxsize=None)
def bracket_factors(n: int) -> tuple[int, int, tuple[int, ...]]:
    """Return ``(sign, vexp, ds)`` with ``[n] = sign * v^vexp * prod Phi_d``."""
    if n == 0:
        raise ValueError("[0] = 0 has no cyclotomic factorisation")
    a = abs(n)
    m = 4 * a
    ds = tuple(d for d in range(3, m + 1) if m % d == 0 and d != 4)
    return (1 if n > 0 else -1), 2 - 2 * a, ds


@lru_cache(maxsize=4096)
def cyclo_product(exps: tuple[tuple[int, int], ...]) -> LaurentPoly:
    """``prod Phi_d^e`` for a sorted tuple of ``(d, e)`` with ``e > 0``."""
    if not exps:
        return ONE
    if len(exps) == 1:
        d, e = exps[0]
        if e == 1:
            return cyclotomic(d)
        return cyclo_product(((d, e - 1),)) * cyclotomic(d)
    half = len(exps) // 2
    return cyclo_product(exps[:half]) * cyclo_product(exps[half:])


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
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


@lru_cache(maxsize=None)
def root_of_unity_mod(d: int) -> tuple[int, int]:
    """A prime ``p = 1 (mod d)`` and an element of exact order ``d`` mod ``p``.

    Used as a cheap filter: ``Phi_d | f`` implies ``f(w) = 0 (mod p)``.
    """
    t = (1 << 61) // d
    while not _is_probable_prime(d * t + 1):
        t += 1
    p = d * t + 1
    rng = random.Random(d)
    primes = _prime_factors(d)
    while True:
        w = pow(rng.randrange(2, p - 1), (p - 1) // d, p)
        if all(pow(w, d // r, p) != 1 for r in primes):
            return p, w


def maybe_divisible(poly: LaurentPoly, d: int) -> bool:
    """False only when ``Phi_d`` certainly does not divide ``poly``."""
    if not poly.is_integral():
        return True
    p, w = root_of_unity_mod(d)
    acc = 0
    for c in reversed(poly.coeffs):
        acc = (acc * w + c) % p
    return acc == 0
