"""Theorem harness: corpus construction and the formula-vs-brute-force checks.

Per corpus group the harness computes the brute-force subgroup sum S(G) and
checks, against the order |G|:

  * S(G) >= |G| always, with equality exactly when every Sylow subgroup is
    cyclic (for zm specs the closed-form sum must agree as well);
  * the aggregated totient identity: the totients of the cyclic-subgroup
    orders sum to |G|, and the order-d element count is (number of cyclic
    subgroups of order d) * totient(d);
  * the nilpotent corollary (equality iff cyclic) where nilpotency applies;
  * phi(G) >= 1 for groups of prime-power order;
  * for zm specs, that the (m1, n1, s) triples biject onto the brute-force
    subgroup lattice.

Failures are collected into per-group violation lists, never raised, so one
bad family cannot mask another.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import zm
from .groups import (
    DEFAULT_ORDER_CAP,
    DEFAULT_SUBGROUP_CAP,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    alternating_group,
    cyclic_group,
    cyclic_subgroups,
    dicyclic_group,
    dihedral_group,
    direct_product,
    element_count_by_order,
    exponent,
    is_cyclic,
    is_sylow_cyclic,
    metacyclic_group,
    phi_of_group,
    symmetric_group,
)
from .numtheory import euler_totient, factorize

FAMILIES = ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating",
            "product", "metacyclic", "zm")

RECORD_FIELDS = ("label", "family", "order", "s", "phi", "exponent",
                 "sylow_cyclic", "equality", "consistent", "formula_s", "ms")


@dataclass(frozen=True)
class GroupSpec:
    """Corpus descriptor: a family tag plus its integer parameters."""

    family: str
    params: tuple[int, ...]
    label: str


@dataclass(frozen=True)
class TheoremReport:
    """Per-group verdict. `consistent` is the theorem-level conjunction:
    S(G) >= |G|, equality iff Sylow-cyclic, and (zm only) the closed-form
    sum agreeing with both the brute-force sum and |G|."""

    spec: GroupSpec
    order: int
    s_value: int
    phi_value: int
    exponent: int
    sylow_cyclic: bool
    equality: bool
    consistent: bool
    formula_s: int | None
    ms: float


@dataclass(frozen=True)
class GroupResult:
    """One corpus entry's report plus the auxiliary check outcomes
    (None where a check does not apply to the group)."""

    report: TheoremReport
    gauss_ok: bool
    corollary: bool | None
    pgroup_phi: bool | None
    bijection: bool | None
    violations: tuple[str, ...]


# ---------------------------------------------------------------------------
# corpus

def build_corpus(max_order: int, families=None) -> list[GroupSpec]:
    """Deterministic corpus of small-group specs with order <= max_order."""
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    fams = set(FAMILIES) if families is None else set(families)
    unknown = fams - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown families: {sorted(unknown)}")

    specs: list[GroupSpec] = []

    def add(family: str, params: tuple[int, ...], label: str) -> None:
        specs.append(GroupSpec(family, params, label))

    if "cyclic" in fams:
        for k in range(1, max_order + 1):
            add("cyclic", (k,), f"cyclic:{k}")
    if "dihedral" in fams:
        for k in range(2, max_order // 2 + 1):
            add("dihedral", (k,), f"dihedral:{k}")
    if "dicyclic" in fams:
        for k in range(2, max_order // 4 + 1):
            add("dicyclic", (k,), f"dicyclic:{k}")
    if "symmetric" in fams:
        for n, order in ((3, 6), (4, 24), (5, 120)):
            if order <= max_order:
                add("symmetric", (n,), f"symmetric:{n}")
    if "alternating" in fams:
        for n, order in ((4, 12), (5, 60)):
            if order <= max_order:
                add("alternating", (n,), f"alternating:{n}")
    if "product" in fams:
        for count in (2, 3):
            for factors in itertools.combinations_with_replacement(
                    range(2, max_order // 2 + 1), count):
                product_order = 1
                for k in factors:
                    product_order *= k
                if product_order <= max_order:
                    label = "product:" + "x".join(f"(cyclic:{k})" for k in factors)
                    add("product", factors, label)
    if "metacyclic" in fams:
        # a fixed selection of non-ZM semidirect products (dihedral 2-groups,
        # semidihedral/modular types, non-coprime odd cases, ...)
        for m in range(3, 17):
            for n in range(2, 5):
                if m * n > max_order:
                    continue
                for r in range(2, m):
                    if pow(r, n, m) != 1:
                        continue
                    if isinstance(zm.validate_zm_params(m, n, r), zm.ZmParams):
                        continue
                    add("metacyclic", (m, n, r), f"metacyclic:{m},{n},{r}")
    if "zm" in fams:
        for m in range(1, max_order + 1):
            for n in range(1, max_order // m + 1):
                if gcd(m, n) != 1:
                    continue
                for r in zm.enumerate_valid_r(m, n):
                    if m == 1 and n == 1 and "cyclic" in fams:
                        continue  # trivial group already covered by cyclic:1
                    add("zm", (m, n, r), f"zm:{m},{n},{r}")
    return specs


def build_group(spec: GroupSpec, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Realize a corpus spec as a permutation group."""
    fam, prm = spec.family, spec.params
    if fam == "cyclic":
        return cyclic_group(prm[0], cap=cap)
    if fam == "dihedral":
        return dihedral_group(prm[0], cap=cap)
    if fam == "dicyclic":
        return dicyclic_group(prm[0], cap=cap)
    if fam == "symmetric":
        return symmetric_group(prm[0], cap=cap)
    if fam == "alternating":
        return alternating_group(prm[0], cap=cap)
    if fam == "product":
        group = cyclic_group(prm[0], cap=cap)
        for k in prm[1:]:
            group = direct_product(group, cyclic_group(k, cap=cap), cap=cap)
        return group
    if fam == "metacyclic":
        return metacyclic_group(*prm, cap=cap)
    if fam == "zm":
        params = zm.validate_zm_params(*prm)
        if not isinstance(params, zm.ZmParams):
            raise ValueError(f"invalid zm spec {spec.label}: {params}")
        return zm.to_permutation_group(params, cap=cap)
    raise ValueError(f"unknown family {fam!r}")


# ---------------------------------------------------------------------------
# checks

def _theorem_report(spec: GroupSpec, group: FiniteGroup,
                    subgroups: list[Subgroup], started: float) -> TheoremReport:
    s_value = sum(phi_of_group(h) for h in subgroups)
    sylow_cyclic = is_sylow_cyclic(group)
    equality = s_value == group.order
    formula_s: int | None = None
    if spec.family == "zm":
        params = zm.validate_zm_params(*spec.params)
        assert isinstance(params, zm.ZmParams)
        formula_s = zm.s_function_formula(params)
    consistent = (
        s_value >= group.order
        and equality == sylow_cyclic
        and (formula_s is None or formula_s == s_value == group.order)
    )
    return TheoremReport(
        spec=spec,
        order=group.order,
        s_value=s_value,
        phi_value=phi_of_group(group),
        exponent=exponent(group),
        sylow_cyclic=sylow_cyclic,
        equality=equality,
        consistent=consistent,
        formula_s=formula_s,
        ms=(time.perf_counter() - started) * 1000.0,
    )


def verify_theorem(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP,
                   subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> TheoremReport:
    """Brute-force theorem check for one spec (see TheoremReport.consistent)."""
    started = time.perf_counter()
    group = build_group(spec, cap=order_cap)
    subgroups = all_subgroups(group, cap=subgroup_cap)
    return _theorem_report(spec, group, subgroups, started)


def _gauss_ok(group: FiniteGroup) -> bool:
    by_order: dict[int, int] = {}
    total = 0
    for h in cyclic_subgroups(group):
        by_order[h.order] = by_order.get(h.order, 0) + 1
        total += euler_totient(h.order)
    if total != group.order:
        return False
    counts = element_count_by_order(group)
    return all(
        counts[d] == by_order.get(d, 0) * euler_totient(d)
        for d in counts
    )


def verify_gauss_identity(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Totients of the cyclic-subgroup orders sum to |G|, and per divisor d
    the order-d element count equals (cyclic subgroups of order d) * phi(d)."""
    return _gauss_ok(build_group(spec, cap=order_cap))


def _is_nilpotent(group: FiniteGroup, subgroups: list[Subgroup]) -> bool:
    # unique subgroup of full p-power order for every prime p dividing |G|
    for p, e in factorize(group.order):
        part = p**e
        if sum(1 for h in subgroups if h.order == part) != 1:
            return False
    return True


def _corollary_ok(group: FiniteGroup, subgroups: list[Subgroup],
                  s_value: int) -> bool | None:
    if not _is_nilpotent(group, subgroups):
        return None
    return (s_value == group.order) == is_cyclic(group)


def verify_corollary(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP,
                     subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> bool | None:
    """For nilpotent groups: equality iff cyclic. None when not nilpotent."""
    group = build_group(spec, cap=order_cap)
    subgroups = all_subgroups(group, cap=subgroup_cap)
    s_value = sum(phi_of_group(h) for h in subgroups)
    return _corollary_ok(group, subgroups, s_value)


def _pgroup_phi_ok(group: FiniteGroup) -> bool | None:
    if len(factorize(group.order)) != 1:
        return None
    return phi_of_group(group) >= 1


def verify_pgroup_phi_nonzero(spec: GroupSpec,
                              order_cap: int = DEFAULT_ORDER_CAP) -> bool | None:
    """phi(P) >= 1 for prime-power order; None otherwise."""
    return _pgroup_phi_ok(build_group(spec, cap=order_cap))


def oracle_index_map(params: zm.ZmParams, group: FiniteGroup) -> dict[zm.ZmElement, int]:
    """Normal form -> element index in the right-regular oracle group.

    Point 0 of the regular action is the identity normal form, so the
    permutation of any group element sends point 0 to the point named by that
    element; inverting that gives the correspondence in one pass.
    """
    forms = [(x, y) for x in range(params.n) for y in range(params.m)]
    return {forms[perm[0]]: i for i, perm in enumerate(group.elements)}


def _bijection_ok(params: zm.ZmParams, group: FiniteGroup,
                  subgroups: list[Subgroup]) -> bool:
    to_index = oracle_index_map(params, group)
    triple_masks = set()
    for t in zm.enumerate_L(params):
        mask = 0
        for e in zm.subgroup_of_triple(params, t):
            mask |= 1 << to_index[e]
        triple_masks.add(mask)
    if len(triple_masks) != len(zm.enumerate_L(params)):
        return False  # not injective
    return triple_masks == {h.mask for h in subgroups}


def verify_lattice_bijection(params: zm.ZmParams,
                             order_cap: int = DEFAULT_ORDER_CAP,
                             subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> bool:
    """Triples -> subgroups is injective and onto the brute-force lattice."""
    group = zm.to_permutation_group(params, cap=order_cap)
    return _bijection_ok(params, group, all_subgroups(group, cap=subgroup_cap))


# ---------------------------------------------------------------------------
# corpus runs

def evaluate_spec(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP,
                  subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> GroupResult:
    """Run every check on one spec, sharing the built group and its lattice."""
    started = time.perf_counter()
    group = build_group(spec, cap=order_cap)
    subgroups = all_subgroups(group, cap=subgroup_cap)
    report = _theorem_report(spec, group, subgroups, started)

    gauss_ok = _gauss_ok(group)
    corollary = _corollary_ok(group, subgroups, report.s_value)
    pgroup_phi = _pgroup_phi_ok(group)
    bijection: bool | None = None
    if spec.family == "zm":
        params = zm.validate_zm_params(*spec.params)
        assert isinstance(params, zm.ZmParams)
        bijection = _bijection_ok(params, group, subgroups)

    violations = []
    if report.s_value < report.order:
        violations.append(f"{spec.label}: S(G)={report.s_value} < |G|={report.order}")
    if report.equality != report.sylow_cyclic:
        violations.append(
            f"{spec.label}: equality={report.equality} but sylow_cyclic={report.sylow_cyclic}")
    if report.formula_s is not None and not (report.formula_s == report.s_value == report.order):
        violations.append(
            f"{spec.label}: formula S={report.formula_s}, brute S={report.s_value}, |G|={report.order}")
    if not gauss_ok:
        violations.append(f"{spec.label}: totient aggregation identity failed")
    if corollary is False:
        violations.append(f"{spec.label}: nilpotent corollary failed")
    if pgroup_phi is False:
        violations.append(f"{spec.label}: phi(P)=0 for a prime-power order group")
    if bijection is False:
        violations.append(f"{spec.label}: triple set does not biject onto the subgroup lattice")

    return GroupResult(
        report=report,
        gauss_ok=gauss_ok,
        corollary=corollary,
        pgroup_phi=pgroup_phi,
        bijection=bijection,
        violations=tuple(violations),
    )


def _evaluate_args(args: tuple[GroupSpec, int, int]) -> GroupResult:
    return evaluate_spec(args[0], order_cap=args[1], subgroup_cap=args[2])


def run_corpus(specs: list[GroupSpec], parallel: bool = False,
               order_cap: int = DEFAULT_ORDER_CAP,
               subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> list[GroupResult]:
    """Evaluate every spec; results are sorted by label so worker scheduling
    can never change the output."""
    jobs = [(s, order_cap, subgroup_cap) for s in specs]
    if parallel and len(specs) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_evaluate_args, jobs, chunksize=8))
    else:
        results = [_evaluate_args(j) for j in jobs]
    return sorted(results, key=lambda r: r.report.spec.label)


def report_record(report: TheoremReport, timings: bool = False) -> dict:
    """Stable wire record for one report. `ms` is 0 unless timings are
    requested, keeping repeat runs byte-identical."""
    rec = {
        "label": report.spec.label,
        "family": report.spec.family,
        "order": report.order,
        "s": report.s_value,
        "phi": report.phi_value,
        "exponent": report.exponent,
        "sylow_cyclic": report.sylow_cyclic,
        "equality": report.equality,
        "consistent": report.consistent,
    }
    if report.formula_s is not None:
        rec["formula_s"] = report.formula_s
    rec["ms"] = round(report.ms, 3) if timings else 0
    return rec
