"""Brute-force engine for small finite groups, backed by explicit permutations.

A group is the closure of a generator list under composition, with a
deterministic element index: the identity is element 0 and the rest follow
breadth-first discovery order. Index-level products go through a Cayley table
that is filled in O(1) per entry by walking the BFS provenance, so subgroup
enumeration never re-composes permutations.

Subgroups are bit masks over element indices (one Python int per subgroup),
which makes closure, join, subset tests and dedup cheap.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Union

from .numtheory import divisors, factorize

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 5000
DEFAULT_SUBGROUP_CAP = 100_000


class CapExceeded(RuntimeError):
    """A closure grew past its explicit cap (group order or subgroup count)."""


# ---------------------------------------------------------------------------
# permutations
#
# Composition is "apply p, then q": compose(p, q)[x] == q[p[x]]. With this
# convention the right-regular action h -> h*g is a homomorphism, which keeps
# permutation groups built from multiplication tables isomorphic (not
# anti-isomorphic) to their source.

def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[v] for v in p)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_from_cycles(degree: int, *cycles: Sequence[int]) -> Perm:
    """Permutation from disjoint cycles; unmentioned points are fixed."""
    image = list(range(degree))
    seen: set[int] = set()
    for cycle in cycles:
        points = list(cycle)
        for a, b in zip(points, points[1:] + points[:1]):
            if a in seen or not 0 <= a < degree:
                raise ValueError(f"bad cycle point {a} for degree {degree}")
            seen.add(a)
            image[a] = b
    return tuple(image)


def perm_order(p: Perm) -> int:
    """Order of a permutation: lcm of its cycle lengths."""
    seen = 0
    order = 1
    for start in range(len(p)):
        if (seen >> start) & 1:
            continue
        length = 0
        cur = start
        while not (seen >> cur) & 1:
            seen |= 1 << cur
            cur = p[cur]
            length += 1
        order = lcm(order, length)
    return order


def _check_perm(p: Perm, degree: int) -> None:
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError(f"not a permutation of {{0..{degree - 1}}}: {p!r}")


# ---------------------------------------------------------------------------
# groups

class FiniteGroup:
    """Closure of permutation generators, with indexed elements.

    Immutable after construction apart from the lazily built Cayley table and
    inverse list, both write-once. Use :func:`generate_group` or one of the
    builders instead of calling this directly.
    """

    __slots__ = ("degree", "generators", "elements", "index_of", "orders",
                 "_via", "_table", "_inverse")

    def __init__(self, degree: int, generators: list[Perm], elements: list[Perm],
                 index_of: dict[Perm, int], via: list[tuple[int, int] | None]):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.index_of = index_of
        self._via = via
        self.orders = [perm_order(p) for p in elements]
        self._table: list[int] | None = None
        self._inverse: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_orders(self) -> Iterator[int]:
        return iter(self.orders)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    def _ensure_table(self) -> list[int]:
        # flat row-major Cayley table: product of i and j at [i * n + j].
        # Each element k > 0 was discovered as parent * generator, so
        # i*k == (i*parent)*generator; one lookup per entry.
        if self._table is None:
            n = len(self.elements)
            gen_cols = [[self.index_of[compose(e, g)] for e in self.elements]
                        for g in self.generators]
            table = [0] * (n * n)
            for i in range(n):
                base = i * n
                table[base] = i
                for k in range(1, n):
                    parent, slot = self._via[k]  # type: ignore[misc]
                    table[base + k] = gen_cols[slot][table[base + parent]]
            self._table = table
        return self._table

    def mul(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j] (apply i, then j)."""
        return self._ensure_table()[i * len(self.elements) + j]

    def inverse(self, i: int) -> int:
        if self._inverse is None:
            self._inverse = [self.index_of[invert(p)] for p in self.elements]
        return self._inverse[i]

    # -- bit-mask subgroup machinery ------------------------------------

    def generated_mask(self, gens: Iterable[int]) -> int:
        """Bit mask of the subgroup generated by the given element indices."""
        table = self._ensure_table()
        n = len(self.elements)
        gen_list = [g for g in dict.fromkeys(gens) if g != 0]
        mask = 1
        frontier = [0]
        while frontier:
            nxt = []
            for f in frontier:
                base = f * n
                for g in gen_list:
                    t = table[base + g]
                    if not (mask >> t) & 1:
                        mask |= 1 << t
                        nxt.append(t)
            frontier = nxt
        return mask

    def cyclic_mask(self, g: int) -> int:
        """Bit mask of the cyclic subgroup generated by element g."""
        table = self._ensure_table()
        n = len(self.elements)
        mask = 1
        cur = g
        while not (mask >> cur) & 1:
            mask |= 1 << cur
            cur = table[cur * n + g]
        return mask


def mask_indices(mask: int) -> list[int]:
    """Element indices present in a subgroup bit mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Subgroup:
    """A subgroup of a FiniteGroup, identified by its member bit mask.

    Construction verifies the subgroup axioms (identity, closure, inverses)
    and Lagrange's theorem; pass check=False only for masks that are closures
    by construction.
    """

    __slots__ = ("group", "mask")

    def __init__(self, group: FiniteGroup, mask: int, check: bool = True):
        self.group = group
        self.mask = mask
        if check:
            self._check()

    def _check(self) -> None:
        if not self.mask & 1:
            raise ValueError("subgroup must contain the identity (index 0)")
        members = mask_indices(self.mask)
        n = self.group.order
        if self.mask >> n:
            raise ValueError("mask references elements outside the group")
        if n % len(members) != 0:
            raise ValueError(f"subgroup size {len(members)} does not divide group order {n}")
        table = self.group._ensure_table()
        mask = self.mask
        for a in members:
            base = a * n
            for b in members:
                if not (mask >> table[base + b]) & 1:
                    raise ValueError("member set is not closed under composition")
        # closure of a finite set containing the identity implies inverses

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> list[int]:
        return mask_indices(self.mask)

    def element_orders(self) -> Iterator[int]:
        orders = self.group.orders
        return (orders[i] for i in self.indices())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={self.indices()})"


GroupLike = Union[FiniteGroup, Subgroup]


# ---------------------------------------------------------------------------
# construction

def generate_group(degree: int, generators: Sequence[Perm],
                   cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Breadth-first closure of the generators under composition.

    The identity gets index 0; every later element is discovered as
    (earlier element) * (generator) in BFS order, which makes the indexing
    deterministic for a fixed generator list.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    gens = [tuple(g) for g in generators]
    for g in gens:
        _check_perm(g, degree)
    ident = identity_perm(degree)
    elements: list[Perm] = [ident]
    index_of: dict[Perm, int] = {ident: 0}
    via: list[tuple[int, int] | None] = [None]
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            p = elements[f]
            for slot, g in enumerate(gens):
                q = compose(p, g)
                if q not in index_of:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group order cap {cap} exceeded")
                    index_of[q] = len(elements)
                    elements.append(q)
                    via.append((f, slot))
                    nxt.append(index_of[q])
        frontier = nxt
    return FiniteGroup(degree, gens, elements, index_of, via)


def from_multiplication(elems: Sequence, mul, generators: Sequence,
                        cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Permutation group from an abstract multiplication law, via the
    right-regular action h -> h*g on the given element universe.

    `elems` must be closed under `mul`; the resulting group is the closure of
    the generators' regular permutations, so it is isomorphic to the subgroup
    the generators generate.
    """
    index = {e: i for i, e in enumerate(elems)}
    perms = [tuple(index[mul(e, g)] for e in elems) for g in generators]
    return generate_group(len(elems), perms, cap=cap)


def cyclic_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic_group requires n >= 1, got {n}")
    if n == 1:
        return generate_group(1, [], cap=cap)
    full_cycle = tuple((i + 1) % n for i in range(n))
    return generate_group(n, [full_cycle], cap=cap)


def symmetric_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"symmetric_group requires n >= 1, got {n}")
    if n == 1:
        return generate_group(1, [], cap=cap)
    gens = [perm_from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return generate_group(n, gens, cap=cap)


def alternating_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"alternating_group requires n >= 1, got {n}")
    if n <= 2:
        return generate_group(max(n, 1), [], cap=cap)
    gens = [perm_from_cycles(n, (0, 1, 2))]
    if n > 3:
        if n % 2:
            gens.append(tuple((i + 1) % n for i in range(n)))
        else:
            gens.append(perm_from_cycles(n, tuple(range(1, n))))
    return generate_group(n, gens, cap=cap)


def metacyclic_group(m: int, n: int, r: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Semidirect product Z_m x| Z_n where the Z_n generator acts by raising
    to the r-th power; requires r**n == 1 mod m so the action is well defined.

    No coprimality is required, so this also covers dihedral groups and other
    non-ZM extensions. Realized on m*n points via the regular action.
    """
    if m < 1 or n < 1:
        raise ValueError("metacyclic_group requires m >= 1 and n >= 1")
    r %= m
    if pow(r, n, m) != 1 % m:
        raise ValueError(f"metacyclic_group requires r^n = 1 mod m; got {r}^{n} mod {m}")
    rpow = [pow(r, x, m) for x in range(n)]
    elems = [(x, y) for x in range(n) for y in range(m)]

    def mul(e1, e2):
        x1, y1 = e1
        x2, y2 = e2
        return ((x1 + x2) % n, (y1 * rpow[x2] + y2) % m)

    gens = []
    if m > 1:
        gens.append((0, 1))
    if n > 1:
        gens.append((1, 0))
    return from_multiplication(elems, mul, gens, cap=cap)


def dihedral_group(k: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order 2k (k = 1 degenerates to Z_2)."""
    if k < 1:
        raise ValueError(f"dihedral_group requires k >= 1, got {k}")
    return metacyclic_group(k, 2, k - 1, cap=cap)


def dicyclic_group(k: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dicyclic group of order 4k: <a, b | a^(2k) = 1, b^2 = a^k, b a b^-1 = a^-1>.

    k = 2 is the quaternion group Q8.
    """
    if k < 1:
        raise ValueError(f"dicyclic_group requires k >= 1, got {k}")
    mm = 2 * k
    elems = [(x, y) for x in range(2) for y in range(mm)]

    def mul(e1, e2):
        x1, y1 = e1
        x2, y2 = e2
        if x2 == 0:
            return (x1, (y1 + y2) % mm)
        if x1 == 0:
            return (1, (y2 - y1) % mm)
        return (0, (y2 - y1 + k) % mm)

    return from_multiplication(elems, mul, [(0, 1), (1, 0)], cap=cap)


def direct_product(g1: FiniteGroup, g2: FiniteGroup,
                   cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Product group acting on the disjoint union of the two point sets."""
    d1, d2 = g1.degree, g2.degree
    gens: list[Perm] = []
    for g in g1.generators:
        gens.append(tuple(g) + tuple(d1 + i for i in range(d2)))
    for h in g2.generators:
        gens.append(tuple(range(d1)) + tuple(d1 + v for v in h))
    return generate_group(d1 + d2, gens, cap=cap)


# ---------------------------------------------------------------------------
# queries

def element_order(group: FiniteGroup, g: int) -> int:
    """Order of element g: least t >= 1 with g^t = identity."""
    if not 0 <= g < group.order:
        raise IndexError(f"element index {g} out of range for order-{group.order} group")
    return group.orders[g]


def exponent(g: GroupLike) -> int:
    """lcm of all element orders."""
    out = 1
    for o in g.element_orders():
        out = lcm(out, o)
    return out


def phi_of_group(g: GroupLike) -> int:
    """Number of elements whose order equals the exponent (0 when none does)."""
    exp = exponent(g)
    return sum(1 for o in g.element_orders() if o == exp)


def is_cyclic(g: GroupLike) -> bool:
    size = g.order
    return any(o == size for o in g.element_orders())


def element_count_by_order(group: FiniteGroup) -> dict[int, int]:
    """n'_d for every divisor d of |G|, zero entries included."""
    counts = {d: 0 for d in divisors(group.order)}
    for o in group.orders:
        counts[o] += 1
    return counts


def is_sylow_cyclic(group: FiniteGroup) -> bool:
    """True iff every Sylow subgroup is cyclic.

    A Sylow p-subgroup is cyclic iff the group has an element of order p^e
    (p^e the full p-part of |G|): such an element generates a cyclic Sylow
    p-subgroup, and all Sylow p-subgroups are conjugate hence isomorphic.
    """
    order_set = set(group.orders)
    return all(p**e in order_set for p, e in factorize(group.order))


def cyclic_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups generated by a single element, deduplicated,
    sorted by (order, member list)."""
    masks = {group.cyclic_mask(g) for g in range(group.order)}
    return _sorted_subgroups(group, masks)


def all_subgroups(group: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup, sorted by (order, member list).

    Seeds with the cyclic subgroups and closes under pairwise join; complete
    because every subgroup is the join of its cyclic subgroups.
    """
    group._ensure_table()
    gens_for: dict[int, tuple[int, ...]] = {1: ()}
    for g in range(1, group.order):
        mask = group.cyclic_mask(g)
        if mask not in gens_for:
            gens_for[mask] = (g,)
    work = list(gens_for)
    i = 0
    while i < len(work):
        b = work[i]
        for j in range(i):
            a = work[j]
            if a & b == a or a & b == b:  # comparable: join is the larger one
                continue
            joined = group.generated_mask(gens_for[a] + gens_for[b])
            if joined not in gens_for:
                if len(gens_for) >= cap:
                    raise CapExceeded(f"subgroup count cap {cap} exceeded")
                gens_for[joined] = gens_for[a] + gens_for[b]
                work.append(joined)
        i += 1
    return _sorted_subgroups(group, gens_for)


def _sorted_subgroups(group: FiniteGroup, masks: Iterable[int]) -> list[Subgroup]:
    keyed = sorted((m.bit_count(), mask_indices(m), m) for m in masks)
    return [Subgroup(group, m, check=False) for _, _, m in keyed]


def s_function_brute(group: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> int:
    """S(G): the sum of phi_of_group over every subgroup of G."""
    return sum(phi_of_group(h) for h in all_subgroups(group, cap=cap))
