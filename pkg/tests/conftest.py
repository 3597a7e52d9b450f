import random

import pytest

import eqzeta as eq
from eqzeta.gperm import GPermutation, realize
from eqzeta.zeta import _candidate_pairs
from eqzeta.zg import TripleClass, canonical_triple


def _build_suite():
    return [
        ("trivial", eq.trivial()),
        ("C2", eq.cyclic(2)),
        ("C3", eq.cyclic(3)),
        ("C4", eq.cyclic(4)),
        ("C2xC2", eq.product(eq.cyclic(2), eq.cyclic(2))),
        ("S3", eq.symmetric(3)),
        ("D4", eq.dihedral(4)),
    ]


_SUITE = _build_suite()


@pytest.fixture(scope="session")
def suite_groups():
    return _SUITE


@pytest.fixture(scope="session")
def small_groups():
    return [(name, g) for name, g in _SUITE if g.order <= 6]


def canonical_triples(group, max_m):
    """All canonical triples with m up to max_m."""
    return [
        TripleClass(h, m, a)
        for (h, a) in _candidate_pairs(group)
        for m in range(1, max_m + 1)
    ]


def empty_gperm(group):
    return GPermutation(group, 0, [() for _ in range(group.order)], (), validate=False)


def random_gperm(group, rng: random.Random, max_points: int = 24) -> GPermutation:
    """Disjoint union of random realized triples, relabeled at random."""
    pairs = []
    for rep in group.subgroup_classes.classes:
        for a in group.normalizer(rep.elements):
            pairs.append((rep.elements, a))
    p = empty_gperm(group)
    budget = rng.randint(1, max_points)
    while True:
        h, a = rng.choice(pairs)
        index = group.order // len(h)
        max_m = (budget - p.n) // index
        if max_m < 1:
            break
        m = rng.randint(1, max_m)
        t = canonical_triple(group, h, m, a)
        p = p.disjoint_union(realize(group, t))
        if p.n >= budget or rng.random() < 0.25:
            break
    if p.n == 0:
        p = realize(group, canonical_triple(group, range(group.order), 1, group.identity))
    tau = list(range(p.n))
    rng.shuffle(tau)
    return p.relabel(tau)
