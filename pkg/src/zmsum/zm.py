"""Metacyclic groups ZM(m, n, r) with all Sylow subgroups cyclic.

ZM(m, n, r) = <a, b | a^m = b^n = 1, b^-1 a b = a^r> subject to
gcd(m, n) = gcd(m, r-1) = 1 and r^n = 1 mod m. Elements are kept in the
normal form b^x a^y, stored as the pair (x, y) with 0 <= x < n, 0 <= y < m;
the induced product is

    (x1, y1) * (x2, y2) = ((x1 + x2) mod n, (y1 * r^x2 + y2) mod m)

since a * b^x = b^x * a^(r^x). Every subgroup corresponds to exactly one
triple (m1, n1, s) with m1 | m, n1 | n, 0 <= s < m1 and m1 | s * T, where T
is the geometric sum 1 + r^n1 + r^(2*n1) + ... with n/n1 terms; the matching
subgroup is <a^m1, b^n1 a^s> and has order m*n/(m1*n1). This module computes
both sides of that correspondence plus the closed-form subgroup sum; the
brute-force engine in :mod:`zmsum.groups` is the independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from . import groups
from .numtheory import divisors, euler_totient, geometric_sum_mod, mod_pow

ZmElement = tuple[int, int]  # (x, y) encoding b^x a^y

ZM_IDENTITY: ZmElement = (0, 0)


@dataclass(frozen=True)
class ZmParams:
    """A validated presentation triple; construct via validate_zm_params."""

    m: int
    n: int
    r: int

    @property
    def order(self) -> int:
        return self.m * self.n

    def label(self) -> str:
        return f"zm:{self.m},{self.n},{self.r}"


class LTriple(NamedTuple):
    """Subgroup coordinates (m1, n1, s) for <a^m1, b^n1 a^s>."""

    m1: int
    n1: int
    s: int


@dataclass(frozen=True)
class LatticeEntry:
    """One subgroup of ZM(m, n, r) as seen through its triple."""

    triple: LTriple
    order: int
    cyclic: bool
    phi_value: int
    members: frozenset[ZmElement] | None = None


def validate_zm_params(m: int, n: int, r: int) -> ZmParams | list[str]:
    """Check the presentation conditions; r is canonicalized to r mod m.

    Returns the validated ZmParams, or the list of violated conditions.
    """
    if m < 1 or n < 1:
        raise ValueError(f"validate_zm_params requires m >= 1 and n >= 1, got m={m}, n={n}")
    r %= m
    violations = []
    g = gcd(m, n)
    if g != 1:
        violations.append(f"gcd(m,n)={g} != 1")
    g = gcd(m, (r + m - 1) % m)
    if g != 1:
        violations.append(f"gcd(m,r-1)={g} != 1")
    rn = mod_pow(r, n, m)
    if rn != 1 % m:
        violations.append(f"r^n mod m = {rn} != 1")
    if violations:
        return violations
    return ZmParams(m, n, r)


def enumerate_valid_r(m: int, n: int) -> list[int]:
    """All r in [0, m) making (m, n, r) a valid ZM triple; empty if gcd(m,n) != 1."""
    if m < 1 or n < 1:
        raise ValueError(f"enumerate_valid_r requires m >= 1 and n >= 1, got m={m}, n={n}")
    if gcd(m, n) != 1:
        return []
    return [r for r in range(m) if isinstance(validate_zm_params(m, n, r), ZmParams)]


@lru_cache(maxsize=None)
def _rpow(p: ZmParams) -> tuple[int, ...]:
    # r^x mod m for 0 <= x < n
    return tuple(pow(p.r, x, p.m) for x in range(p.n))


def zm_mul(p: ZmParams, e1: ZmElement, e2: ZmElement) -> ZmElement:
    """Product of b^x1 a^y1 and b^x2 a^y2 in normal form."""
    x1, y1 = e1
    x2, y2 = e2
    return ((x1 + x2) % p.n, (y1 * _rpow(p)[x2] + y2) % p.m)


def zm_element_order(p: ZmParams, e: ZmElement) -> int:
    """Least t >= 1 with e^t = identity, by repeated multiplication."""
    cur = e
    t = 1
    while cur != ZM_IDENTITY:
        cur = zm_mul(p, cur, e)
        t += 1
    return t


def _normal_forms(p: ZmParams) -> list[ZmElement]:
    return [(x, y) for x in range(p.n) for y in range(p.m)]


def element_permutation(p: ZmParams, e: ZmElement) -> groups.Perm:
    """Right-regular permutation of e on the normal forms (x-major order).

    Matches the point labelling used by to_permutation_group, so
    group.index_of[element_permutation(p, e)] is the oracle index of e.
    """
    forms = _normal_forms(p)
    index = {f: i for i, f in enumerate(forms)}
    return tuple(index[zm_mul(p, h, e)] for h in forms)


def to_permutation_group(p: ZmParams, cap: int = groups.DEFAULT_ORDER_CAP) -> groups.FiniteGroup:
    """Oracle bridge: ZM(m, n, r) as a permutation group of order m*n,
    via the right-regular action on the normal forms."""
    gens: list[ZmElement] = []
    if p.m > 1:
        gens.append((0, 1))
    if p.n > 1:
        gens.append((1, 0))
    return groups.from_multiplication(
        _normal_forms(p), lambda e1, e2: zm_mul(p, e1, e2), gens, cap=cap)


def _in_L(p: ZmParams, t: LTriple) -> bool:
    m1, n1, s = t
    if m1 < 1 or n1 < 1 or p.m % m1 or p.n % n1 or not 0 <= s < m1:
        return False
    total = geometric_sum_mod(p.r, n1, p.n // n1, m1)
    return s * total % m1 == 0


def enumerate_L(p: ZmParams) -> list[LTriple]:
    """All subgroup triples (m1, n1, s), ordered by m1, then n1, then s.

    The divisibility condition m1 | s * (r^n - 1)/(r^n1 - 1) is evaluated as
    m1 | s * T with T the n/n1-term geometric sum of r^n1 mod m1, which stays
    exact in the r = 1 degenerate case where the fraction is 0/0.
    """
    out = []
    for m1 in divisors(p.m):
        for n1 in divisors(p.n):
            total = geometric_sum_mod(p.r, n1, p.n // n1, m1)
            for s in range(m1):
                if s * total % m1 == 0:
                    out.append(LTriple(m1, n1, s))
    return out


def subgroup_of_triple(p: ZmParams, t: LTriple) -> frozenset[ZmElement]:
    """Member set of <a^m1, b^n1 a^s>, by generator closure under zm_mul."""
    if not _in_L(p, t):
        raise ValueError(f"{t} is not a subgroup triple of ZM({p.m},{p.n},{p.r})")
    gens = [(0, t.m1 % p.m), (t.n1 % p.n, t.s)]
    members = {ZM_IDENTITY}
    frontier = [ZM_IDENTITY]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                e = zm_mul(p, f, g)
                if e not in members:
                    members.add(e)
                    nxt.append(e)
        frontier = nxt
    return frozenset(members)


def subgroup_order_formula(p: ZmParams, t: LTriple) -> int:
    """Order (= exponent) of the subgroup at t: m*n / (m1*n1)."""
    return p.m * p.n // (t.m1 * t.n1)


def is_cyclic_triple(p: ZmParams, t: LTriple) -> bool:
    """True iff the subgroup at t is cyclic: r^n1 = 1 mod (m/m1).

    The subgroup is <a^m1> (order m/m1) extended by b^n1 a^s, which acts on
    <a^m1> by raising to r^n1. Trivial action gives an abelian group with
    coprime cyclic kernel and quotient, hence cyclic; nontrivial action makes
    it non-abelian.
    """
    mod = p.m // t.m1
    return mod_pow(p.r, t.n1, mod) == 1 % mod


def s_function_formula(p: ZmParams) -> int:
    """Subgroup sum S(G) from the lattice triples alone: the totients of the
    cyclic entries' orders. Equals m*n whenever the theory holds; the verifier
    asserts that rather than assuming it."""
    return sum(
        euler_totient(subgroup_order_formula(p, t))
        for t in enumerate_L(p)
        if is_cyclic_triple(p, t)
    )


def lattice_entries(p: ZmParams, with_members: bool = False) -> list[LatticeEntry]:
    """LatticeEntry rows for every triple, in enumerate_L order."""
    out = []
    for t in enumerate_L(p):
        order = subgroup_order_formula(p, t)
        cyclic = is_cyclic_triple(p, t)
        out.append(LatticeEntry(
            triple=t,
            order=order,
            cyclic=cyclic,
            phi_value=euler_totient(order) if cyclic else 0,
            members=subgroup_of_triple(p, t) if with_members else None,
        ))
    return out
