"""Acceptance criteria, one test per criterion.

Every check is exact (integer equality); the two timed criteria assert the
stated budgets.  Run with ``pytest tests/test_acceptance.py -v -s`` to see
one PASS line per criterion.
"""

import itertools
import math
import random
import subprocess
import sys
import time
from pathlib import Path

import eqzeta as eq
from eqzeta.gperm import classify, lefschetz_table, realize
from eqzeta.zeta import (
    classical_from_lefschetz,
    classical_lefschetz_numbers,
    elementary_zeta,
    sebastiani_thom,
    zeta_from_lefschetz,
)
from eqzeta.zg import (
    ClassicalZeta,
    ZGRingElement,
    canonical_triple,
    zg_contains,
    zg_contains_bruteforce,
)

import corpus
from conftest import canonical_triples, random_gperm
from test_zeta import _satisfies_elementary_hypotheses

FIXTURES = Path(__file__).parent / "fixtures"


def _report(number: int, message: str) -> None:
    print(f"ACCEPTANCE {number} PASS: {message}")


def test_criterion_01_solver_inverts_lefschetz_data(suite_groups):
    rng = random.Random(2024)
    start = time.monotonic()
    checked = 0
    for _, group in suite_groups:
        for _ in range(31):
            p = random_gperm(group, rng, max_points=24)
            assert p.n <= 24
            assert zeta_from_lefschetz(lefschetz_table(p)) == classify(p)
            checked += 1
    elapsed = time.monotonic() - start
    assert checked >= 200
    assert elapsed < 60.0
    _report(1, f"{checked} randomized round trips over 7 groups in {elapsed:.2f}s")


def test_criterion_02_realize_classify_roundtrip(suite_groups):
    checked = 0
    for name, group in suite_groups:
        for t in canonical_triples(group, 6):
            assert classify(realize(group, t)) == ZGRingElement.basis(group, t), (name, t)
            checked += 1
    _report(2, f"classify∘realize fixed {checked} canonical triples with m <= 6")


def test_criterion_03_containment_criterion_validated(suite_groups):
    checked = 0
    for name, group in suite_groups:
        triples = canonical_triples(group, 6)
        for t1, t2 in itertools.product(triples, repeat=2):
            assert zg_contains(group, t1, t2) == zg_contains_bruteforce(group, t1, t2), (
                name,
                t1,
                t2,
            )
            checked += 1
    _report(3, f"algebraic containment matched the quotient model on {checked} pairs")


def _classical_product(a: ClassicalZeta, b: ClassicalZeta) -> ClassicalZeta:
    """Independent oracle: the product induced by Cartesian products of
    cycles, (m) x (m') = gcd(m,m') orbits of length lcm(m,m')."""
    exps: dict[int, int] = {}
    for m1, s1 in a.factors:
        for m2, s2 in b.factors:
            m = math.lcm(m1, m2)
            exps[m] = exps.get(m, 0) + s1 * s2 * math.gcd(m1, m2)
    return ClassicalZeta.from_exponents(exps)


def test_criterion_04_forgetting_is_a_ring_homomorphism(suite_groups):
    rng = random.Random(404)
    pairs = 0
    for _, group in suite_groups:
        triples = canonical_triples(group, 4)
        for _ in range(15):
            a = ZGRingElement(
                group,
                {t: rng.randint(-3, 3) for t in rng.sample(triples, min(3, len(triples)))},
            )
            b = ZGRingElement(
                group,
                {t: rng.randint(-3, 3) for t in rng.sample(triples, min(3, len(triples)))},
            )
            assert (a * b).forget_to_classical() == _classical_product(
                a.forget_to_classical(), b.forget_to_classical()
            )
            pairs += 1
    degree_checks = 0
    for _, group in suite_groups:
        for _ in range(10):
            p = random_gperm(group, rng)
            assert classify(p).forget_to_classical().degree() == p.n
            degree_checks += 1
    assert pairs >= 100
    _report(
        4,
        f"{pairs} product pairs matched the classical product; "
        f"degree equalled the point count on {degree_checks} permutations",
    )


def test_criterion_05_euler_characteristic_routes_agree():
    cases = corpus.chi_corpus()
    assert len(cases) >= 10
    for name, k, euler in cases:
        cellwise = k.chi_cellwise()
        assert cellwise == k.chi_strata(), name
        assert cellwise.point_count() == euler, name
    _report(5, f"cellwise and stratified Euler characteristics agree on {len(cases)} complexes")


def test_criterion_06_classical_inversion_realizable(suite_groups):
    rng = random.Random(606)
    checked = 0
    for _, group in suite_groups:
        for _ in range(10):
            p = random_gperm(group, rng)
            numbers = classical_lefschetz_numbers(p)
            # classical_from_lefschetz raises when m does not divide r_m
            assert classical_from_lefschetz(numbers) == classify(p).forget_to_classical()
            checked += 1
    _report(6, f"divisor recursion reconstructed the classical zeta on {checked} sequences")


def test_criterion_07_sebastiani_thom_desk_check():
    start = time.monotonic()
    triv = eq.trivial()
    m2 = ZGRingElement.basis(triv, canonical_triple(triv, (0,), 2, 0))
    st = sebastiani_thom(m2, m2)
    assert st.is_zero()
    assert st.forget_to_classical() == ClassicalZeta.one()
    x2y2 = eq.acampo(triv, [eq.StratumRecord(chi=0, m=2, n=1, subgroup=(0,), alpha=0)])
    assert st == x2y2

    c2 = eq.cyclic(2)
    strata = [eq.StratumRecord(chi=1, m=2, n=2, subgroup=(0,), alpha=1)]
    z = eq.acampo(c2, strata)
    model = eq.GPermutation(c2, 2, [[0, 1], [1, 0]], [1, 0])
    assert z == classify(model)
    assert z.forget_to_classical() == ClassicalZeta(((2, 1),))
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _report(7, f"square-germ desk checks passed in {elapsed:.3f}s")


def test_criterion_08_elementary_formula_agrees_with_solver(suite_groups):
    checked = 0
    for _, group in suite_groups:
        for t in canonical_triples(group, 6):
            for copies in (1, 2):
                p = realize(group, t)
                for _ in range(copies - 1):
                    p = p.disjoint_union(realize(group, t))
                hypo = _satisfies_elementary_hypotheses(group, p)
                if hypo is None:
                    continue
                m0, g0 = hypo
                h = group.subgroup_classes.classes[t.h_class].elements
                orbit_count = len(eq.GSet(group, p.n, p.act, validate=False).orbits())
                assert elementary_zeta(group, orbit_count, m0, h, g0) == zeta_from_lefschetz(
                    lefschetz_table(p)
                )
                checked += 1
    assert checked > 100
    _report(8, f"elementary formula agreed with the solver on {checked} eligible models")


def test_criterion_09_classification_respects_sum_and_product(suite_groups):
    rng = random.Random(909)
    pairs = 0
    for _, group in suite_groups:
        for _ in range(8):
            p1 = random_gperm(group, rng, max_points=10)
            p2 = random_gperm(group, rng, max_points=10)
            assert classify(p1.disjoint_union(p2)) == classify(p1) + classify(p2)
            assert classify(p1.product(p2)) == classify(p1) * classify(p2)
            pairs += 1
    assert pairs >= 56
    while pairs < 100:
        group = suite_groups[pairs % len(suite_groups)][1]
        p1 = random_gperm(group, rng, max_points=10)
        p2 = random_gperm(group, rng, max_points=10)
        assert classify(p1.disjoint_union(p2)) == classify(p1) + classify(p2)
        assert classify(p1.product(p2)) == classify(p1) * classify(p2)
        pairs += 1
    _report(9, f"sum and product laws held on {pairs} random pairs")


def test_criterion_10_cli_is_deterministic():
    good = [
        ("subgroups", "group_c2.json"),
        ("subgroups", "group_s3.json"),
        ("subgroups", "group_d4.json"),
        ("subgroups", "group_c2xc2.json"),
        ("subgroups", "group_s3_gens.json"),
        ("subgroups", "group_table_c2.json"),
        ("marks", "group_s3.json"),
        ("marks", "group_d4.json"),
        ("classify", "gperm_c2_swap.json"),
        ("classify", "gperm_c2_swap_by_path.json"),
        ("classify", "gperm_trivial_3cycle.json"),
        ("classify", "gperm_s3_regular_twist.json"),
        ("lefschetz", "gperm_c2_swap.json"),
        ("lefschetz", "gperm_s3_regular_twist.json"),
        ("zeta-solve", "lefschetz_3cycle.json"),
        ("chi", "complex_square_reflection.json"),
        ("chi", "complex_point_c2.json"),
        ("zeta", "complex_square_c2.json"),
        ("zeta", "complex_point_c2.json"),
        ("acampo", "strata_x2_c2.json"),
        ("acampo", "strata_x2y2_trivial.json"),
        ("acampo", "strata_xk_trivial.json"),
        ("forget", "expr_m2_trivial.json"),
        ("forget", "expr_zero_trivial.json"),
        ("st", "expr_m2_trivial.json", "expr_m2_trivial.json"),
        ("mul", "expr_twisted_c2.json", "expr_twisted_c2.json"),
        ("add", "expr_twisted_c2.json", "expr_twisted_c2.json"),
    ]
    runs = 0
    for fmt in ("text", "structured"):
        for command, *files in good:
            argv = [command] + [str(FIXTURES / f) for f in files] + ["--format", fmt]
            first = _run_cli(argv)
            second = _run_cli(argv)
            assert first == second, argv
            assert first[0] == 0, (argv, first[2])
            runs += 1
    for command, name, code in [
        ("classify", "gperm_bad_commutation.json", 1),
        ("acampo", "strata_bad_n.json", 1),
        ("classify", "group_c2.json", 1),
    ]:
        first = _run_cli([command, str(FIXTURES / name)])
        second = _run_cli([command, str(FIXTURES / name)])
        assert first == second
        assert first[0] == code
        assert first[2] != ""
    assert _run_cli(["frobnicate"])[0] == 2
    _report(10, f"byte-identical outputs across two runs of {runs} fixture invocations")


def _run_cli(argv):
    result = subprocess.run(
        [sys.executable, "-m", "eqzeta.cli", *argv],
        capture_output=True,
        text=True,
    )
    return result.returncode, result.stdout, result.stderr
