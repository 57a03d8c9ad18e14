"""Exact elementary number theory: factorization, totient, divisors, modular sums.

Everything here is exact integer arithmetic on desk-scale inputs (roughly up to
10**6); factorization is plain trial division seeded with a small prime table.
"""

from __future__ import annotations

from math import gcd, isqrt, lcm

__all__ = [
    "divisors",
    "euler_totient",
    "factorize",
    "gcd",
    "geometric_sum_mod",
    "lcm",
    "mod_pow",
    "multiplicative_order",
]


def _sieve(limit: int) -> list[int]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p : limit + 1 : p] = b"\x00" * len(range(p * p, limit + 1, p))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _sieve(1000)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (prime, exponent) pairs, primes ascending.

    factorize(1) is the empty list.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1 and n <= _SMALL_PRIMES[-1] ** 2:
        out.append((n, 1))
        return out
    # remaining cofactor exceeds the prime table's reach: continue trial division
    p = _SMALL_PRIMES[-1] + 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_totient(d: int) -> int:
    """Count of integers in [1, d] coprime to d, via the factorization of d."""
    if d < 1:
        raise ValueError(f"euler_totient requires d >= 1, got {d}")
    phi = 1
    for p, e in factorize(d):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def divisors(n: int) -> list[int]:
    """All divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    out.sort()
    return out


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus, with mod_pow(x, 0, 1) == 0 (every residue mod 1 is 0)."""
    if modulus < 1:
        raise ValueError(f"mod_pow requires modulus >= 1, got {modulus}")
    if exp < 0:
        raise ValueError(f"mod_pow requires exp >= 0, got {exp}")
    return pow(base, exp, modulus)


def geometric_sum_mod(r: int, step: int, terms: int, modulus: int) -> int:
    """Sum_{k=0}^{terms-1} r**(k*step) mod modulus.

    Equals ((r**(step*terms) - 1) / (r**step - 1)) mod modulus when r**step != 1,
    but is computed term by term so the r == 1 degenerate case (and huge powers)
    never arise.
    """
    if modulus < 1:
        raise ValueError(f"geometric_sum_mod requires modulus >= 1, got {modulus}")
    if step < 1 or terms < 1:
        raise ValueError("geometric_sum_mod requires step >= 1 and terms >= 1")
    q = pow(r, step, modulus)
    acc = 0
    t = 1 % modulus
    for _ in range(terms):
        acc = (acc + t) % modulus
        t = (t * q) % modulus
    return acc


def multiplicative_order(r: int, m: int) -> int:
    """Least t >= 1 with r**t == 1 mod m; requires gcd(r, m) == 1."""
    if m < 1:
        raise ValueError(f"multiplicative_order requires m >= 1, got {m}")
    if gcd(r, m) != 1:
        raise ValueError(f"multiplicative_order requires gcd(r, m) = 1, got gcd({r}, {m}) = {gcd(r, m)}")
    if m == 1:
        return 1
    t = 1
    acc = r % m
    while acc != 1:
        acc = (acc * r) % m
        t += 1
    return t
