"""Acceptance gate: every exit criterion, each as one test printing PASS/FAIL.

Criteria 1-4 share one sweep over every valid ZM triple with m <= 50,
n <= 20, mn <= 200; criteria 5-8 share one full-corpus run at max order 64.
All identities are exact, so every comparison is equality, tolerance zero.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

import json
import subprocess
import sys
import time
from dataclasses import dataclass
from math import gcd

import pytest

from zmsum import zm
from zmsum.groups import (
    Subgroup,
    all_subgroups,
    cyclic_group,
    exponent,
    is_cyclic,
    phi_of_group,
    s_function_brute,
)
from zmsum.numtheory import divisors, euler_totient
from zmsum.verifier import build_corpus, oracle_index_map, run_corpus

SWEEP_M, SWEEP_N, SWEEP_ORDER = 50, 20, 200
CORPUS_MAX_ORDER = 64


def _report(criterion: int, text: str) -> None:
    print(f"[acceptance] criterion {criterion}: PASS - {text}")


@dataclass
class TripleResult:
    params: zm.ZmParams
    s_formula: int
    s_brute: int
    sylow_cyclic: bool
    bijective: bool
    order_formula_ok: bool
    cyclicity_ok: bool


@pytest.fixture(scope="module")
def sweep():
    started = time.perf_counter()
    results = []
    for m in range(1, SWEEP_M + 1):
        for n in range(1, SWEEP_N + 1):
            if m * n > SWEEP_ORDER or gcd(m, n) != 1:
                continue
            for r in zm.enumerate_valid_r(m, n):
                params = zm.validate_zm_params(m, n, r)
                assert isinstance(params, zm.ZmParams)
                group = zm.to_permutation_group(params)
                subgroups = all_subgroups(group)
                to_index = oracle_index_map(params, group)
                triples = zm.enumerate_L(params)
                masks = {}
                for t in triples:
                    mask = 0
                    for e in zm.subgroup_of_triple(params, t):
                        mask |= 1 << to_index[e]
                    masks[t] = mask
                bijective = (
                    len(set(masks.values())) == len(triples)
                    and set(masks.values()) == {h.mask for h in subgroups}
                )
                order_ok = True
                cyclic_ok = True
                for t, mask in masks.items():
                    h = Subgroup(group, mask)
                    if not (h.order == exponent(h) == zm.subgroup_order_formula(params, t)):
                        order_ok = False
                    if zm.is_cyclic_triple(params, t) != is_cyclic(h):
                        cyclic_ok = False
                results.append(TripleResult(
                    params=params,
                    s_formula=zm.s_function_formula(params),
                    s_brute=sum(phi_of_group(h) for h in subgroups),
                    sylow_cyclic=is_sylow_cyclic(group),
                    bijective=bijective,
                    order_formula_ok=order_ok,
                    cyclicity_ok=cyclic_ok,
                ))
    elapsed = time.perf_counter() - started
    return results, elapsed


@pytest.fixture(scope="module")
def corpus_results():
    return run_corpus(build_corpus(CORPUS_MAX_ORDER))


def test_criterion_1_converse_equality(sweep):
    results, elapsed = sweep
    assert len(results) > 0
    for res in results:
        assert res.s_formula == res.s_brute == res.params.order, res.params
    assert elapsed < 120, f"sweep took {elapsed:.1f}s, budget is 2 minutes"
    _report(1, f"formula S = brute S = mn on all {len(results)} triples "
               f"({elapsed:.1f}s)")


def test_criterion_2_lattice_bijection(sweep):
    results, _ = sweep
    for res in results:
        assert res.bijective, res.params
    _report(2, f"triple set bijects onto the subgroup lattice on all {len(results)} triples")


def test_criterion_3_order_exponent_formula(sweep):
    results, _ = sweep
    for res in results:
        assert res.order_formula_ok, res.params
    _report(3, "|H| = exp(H) = mn/(m1*n1) on every lattice entry")


def test_criterion_4_cyclicity_criterion(sweep):
    results, _ = sweep
    for res in results:
        assert res.cyclicity_ok, res.params
    _report(4, "triple cyclicity criterion agrees with the oracle everywhere")


def test_criterion_5_inequality_and_characterization(corpus_results):
    labels = {r.report.spec.label for r in corpus_results}
    assert len(labels) >= 50
    for r in corpus_results:
        assert r.report.s_value >= r.report.order, r.report.spec.label
        assert r.report.equality == r.report.sylow_cyclic, r.report.spec.label

    witness = {r.report.spec.label: r.report.s_value for r in corpus_results}
    assert witness["symmetric:3"] == 6
    assert witness["product:(cyclic:2)x(cyclic:2)"] == 7
    assert witness["dicyclic:2"] == 14
    assert witness["product:(cyclic:2)x(cyclic:2)x(cyclic:2)"] == 36
    for n in range(1, 101):
        gauss = sum(euler_totient(d) for d in divisors(n))
        assert s_function_brute(cyclic_group(n)) == n == gauss
    _report(5, f"S(G) >= |G| with equality iff Sylow-cyclic on {len(labels)} specs; "
               "witness values S(S3)=6, S(V4)=7, S(Q8)=14, S(Z2^3)=36, S(Z_n)=n verified")


def test_criterion_6_gauss_identity_chain(corpus_results):
    for r in corpus_results:
        assert r.gauss_ok, r.report.spec.label
    _report(6, "totient aggregation and element-count identities hold on every corpus group")


def test_criterion_7_corollary(corpus_results):
    nilpotent = [r for r in corpus_results if r.corollary is not None]
    assert nilpotent, "corpus must contain nilpotent groups"
    for r in nilpotent:
        assert r.corollary is True, r.report.spec.label
    s3 = next(r for r in corpus_results if r.report.spec.label == "symmetric:3")
    assert s3.corollary is None and s3.report.equality
    _report(7, f"equality iff cyclic on {len(nilpotent)} nilpotent groups; "
               "S3 (non-nilpotent equality case) reported not-applicable")


def test_criterion_8_pgroup_phi_nonzero(corpus_results):
    pgroups = [r for r in corpus_results if r.pgroup_phi is not None]
    for r in pgroups:
        assert r.pgroup_phi is True, r.report.spec.label
        assert r.report.phi_value >= 1
    labels = {r.report.spec.label for r in pgroups}
    assert {"dicyclic:2", "dihedral:4", "product:(cyclic:2)x(cyclic:2)x(cyclic:2)",
            "product:(cyclic:3)x(cyclic:3)", "product:(cyclic:2)x(cyclic:4)"} <= labels
    _report(8, f"phi(P) >= 1 on all {len(pgroups)} prime-power-order corpus groups")


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "zmsum.cli", "verify",
           "--max-order", str(CORPUS_MAX_ORDER), "--format", "jsonl"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    parallel = subprocess.run(cmd + ["--parallel"], capture_output=True, check=False)
    assert first.returncode == second.returncode == parallel.returncode == 0
    assert first.stdout == second.stdout == parallel.stdout
    assert first.stdout  # non-empty stream
    records = [json.loads(line) for line in first.stdout.decode().splitlines()]
    assert all(rec["consistent"] for rec in records)
    _report(9, f"verify --max-order {CORPUS_MAX_ORDER} emits byte-identical jsonl "
               "across repeat and parallel runs")
