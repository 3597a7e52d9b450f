"""Zeta-function constructors.

``zeta_from_lefschetz`` recovers the unique finite-support virtual
(Z x G)-permutation whose Lefschetz data matches a table.  The system is
triangular: the table column of one transitive class is supported on that
class's own anchor entry (value m) plus entries whose named subgroup is
conjugate into a strictly larger one, so walking candidate triples by
increasing index m*[G:H] and subtracting realized columns solves it with
exact integer arithmetic.  Any leftover residue or failed division means the
table is not the data of any element, and is reported with the offending
entry.

``classical_from_lefschetz`` is the non-equivariant special case: divisor
recursion L(phi^m) = sum_{i|m} r_i with r_m = m * s_m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EqzetaError, StratumError, TableError
from .gperm import (
    GPermutation,
    LefschetzTable,
    coset_representatives,
    lefschetz_table,
    realize,
)
from .groups import FiniteGroup, Subgroup
from .zg import (
    ClassicalZeta,
    TripleClass,
    ZGRingElement,
    canonical_pair,
    canonical_triple,
    triple_index,
    triple_z_period,
)


def _candidate_pairs(group: FiniteGroup) -> list[tuple[int, int]]:
    pairs = set()
    for rep in group.subgroup_classes.classes:
        for a in coset_representatives(group, rep.elements):
            pairs.add(canonical_pair(group, rep.elements, a))
    return sorted(pairs)


def _column(group: FiniteGroup, t: TripleClass):
    """(period, base entries grouped by m) of the realized basis column."""
    cache = group._column_cache.setdefault("columns", {})
    cached = cache.get(t)
    if cached is None:
        d = triple_z_period(group, t)
        base = lefschetz_table(realize(group, t), d)
        anchor = base.get(t.h_class, t.m, t.alpha)
        if anchor != t.m:
            raise AssertionError("basis column diagonal is off; this is a bug")
        by_m: dict[int, list] = {}
        for (h, m, a), v in base.entries.items():
            if v:
                by_m.setdefault(m, []).append((h, a, v))
        cached = (d, by_m)
        cache[t] = cached
    return cached


def zeta_from_lefschetz(table: LefschetzTable) -> ZGRingElement:
    """Solve the triangular Lefschetz system for the unique element.

    With ``m_max == 0`` the truncation is derived from the data (largest m
    carrying a nonzero entry); the residue check still runs, so inconsistent
    or truncated tables are rejected rather than silently accepted.
    """
    group = table.group
    m_max = table.m_max
    if m_max == 0:
        m_max = max((k[1] for k, v in table.entries.items() if v), default=0)
    if m_max == 0:
        return ZGRingElement.zero(group)
    candidates = [
        TripleClass(h, m, alpha)
        for (h, alpha) in _candidate_pairs(group)
        for m in range(1, m_max + 1)
    ]
    candidates.sort(key=lambda t: (triple_index(group, t), t))
    residual = dict(table.entries)
    coeffs: dict[TripleClass, int] = {}
    for t in candidates:
        value = residual.get((t.h_class, t.m, t.alpha), 0)
        if value == 0:
            continue
        k, rem = divmod(value, t.m)
        if rem:
            raise TableError(
                f"no integer solution: entry (H class {t.h_class}, m={t.m}, "
                f"a={group.labels[t.alpha]}) leaves remainder {rem} of {t.m}"
            )
        coeffs[t] = k
        d, by_m = _column(group, t)
        for m in range(t.m, m_max + 1, t.m):
            base_m = ((m - 1) % d) + 1
            for h, a, v in by_m.get(base_m, ()):
                key = (h, m, a)
                residual[key] = residual.get(key, 0) - k * v
    for key in sorted(residual):
        if residual[key]:
            h, m, a = key
            raise TableError(
                f"inconsistent table: residue {residual[key]} left at "
                f"(H class {h}, m={m}, a={group.labels[a]})"
            )
    return ZGRingElement(group, coeffs)


def predicted_table(z: ZGRingElement, m_max: int) -> LefschetzTable:
    """The Lefschetz table a virtual element would produce."""
    group = z.group
    entries: dict = {}
    for rep_class, rep in enumerate(group.subgroup_classes.classes):
        for a in coset_representatives(group, rep.elements):
            for m in range(1, m_max + 1):
                entries[(rep_class, m, a)] = 0
    for t, k in z.coeffs.items():
        d, by_m = _column(group, t)
        for m in range(1, m_max + 1):
            base_m = ((m - 1) % d) + 1
            for h, a, v in by_m.get(base_m, ()):
                entries[(h, m, a)] = entries.get((h, m, a), 0) + k * v
    return LefschetzTable(group, m_max, entries)


def classical_lefschetz_numbers(p: GPermutation, m_max: int = 0) -> list[int]:
    """Plain fixed-point counts of sigma^m for m = 1..m_max (period if 0)."""
    if m_max == 0:
        m_max = p.z_period()
    out = []
    sig_m = list(range(p.n))
    for _ in range(m_max):
        sig_m = [p.sigma[x] for x in sig_m]
        out.append(sum(1 for x in range(p.n) if sig_m[x] == x))
    return out


def classical_from_lefschetz(numbers: Sequence[int]) -> ClassicalZeta:
    """Recover prod (1-t^m)^{s_m} from Lefschetz numbers of the powers.

    The recursion L(phi^m) = sum over divisors i of m of r_i defines r; each
    r_m counts points on orbits of exact order m and so must be divisible by
    m.  A failed division identifies the first non-realizable index.
    """
    if not numbers:
        raise TableError("need at least one Lefschetz number")
    r: dict[int, int] = {}
    exps: dict[int, int] = {}
    for m, value in enumerate(numbers, start=1):
        rm = value - sum(r[i] for i in r if m % i == 0)
        if rm % m:
            raise TableError(
                f"sequence is not realizable: r_{m} = {rm} is not divisible by {m}"
            )
        r[m] = rm
        if rm:
            exps[m] = rm // m
    return ClassicalZeta.from_exponents(exps)


def elementary_zeta(
    group: FiniteGroup,
    chi_quotient: int,
    m0: int,
    subgroup: Subgroup | Iterable[int],
    g0: int,
) -> ZGRingElement:
    """Zeta of a map that shifts every orbit for m0 steps and then closes up.

    Applies when all isotropy groups lie in one class, no G-orbit returns to
    itself before step m0, and g0 composed with the m0-th power is the
    identity; the value is chi(X/G)/m0 times the class of (H, m0, g0).
    """
    if m0 < 1:
        raise EqzetaError(f"m0 must be positive, got {m0}")
    if chi_quotient % m0:
        raise EqzetaError(
            f"chi(X/G) = {chi_quotient} is not divisible by m0 = {m0}; "
            "no such map exists on a genuine model"
        )
    t = canonical_triple(group, subgroup, m0, g0)
    return ZGRingElement(group, {t: chi_quotient // m0})


def sebastiani_thom(z1: ZGRingElement, z2: ZGRingElement) -> ZGRingElement:
    """Zeta of a sum of germs on disjoint variables: z1 + z2 - z1*z2."""
    return z1 + z2 - z1 * z2


@dataclass(frozen=True)
class StratumRecord:
    """Per-stratum input for the exceptional-divisor formula.

    ``chi`` is the Euler characteristic of the stratum, ``m`` the multiplicity
    along it, ``n`` the order of the cyclic isotropy quotient acting on the
    normal direction, ``subgroup`` the kernel of that action and ``alpha`` a
    representative of the distinguished generator.  The orientation of alpha
    follows the convention that its inverse acts on the normal fibre as the
    standard primitive n-th root of unity; the library cannot verify that
    geometric choice and trusts the record.
    """

    chi: int
    m: int
    n: int
    subgroup: tuple[int, ...]
    alpha: int

    def validate(self, group: FiniteGroup) -> None:
        if self.m < 1 or self.n < 1:
            raise StratumError(f"multiplicities must be positive, got m={self.m}, n={self.n}")
        if self.m % self.n:
            raise StratumError(f"n={self.n} does not divide the multiplicity m={self.m}")
        h = tuple(sorted(self.subgroup))
        if not group.is_subgroup(h):
            raise StratumError(f"{h} is not a subgroup")
        if self.alpha not in group.normalizer(h):
            raise StratumError(f"alpha={self.alpha} does not normalize the kernel {h}")
        if group.coset_order(h, self.alpha) != self.n:
            raise StratumError(
                f"the coset of alpha={self.alpha} has order "
                f"{group.coset_order(h, self.alpha)}, expected n={self.n}"
            )


def acampo(group: FiniteGroup, strata: Sequence[StratumRecord]) -> ZGRingElement:
    """Sum chi(stratum) * [(ZxG)/(H, m/n, alpha)] over the strata."""
    out = ZGRingElement.zero(group)
    for record in strata:
        record.validate(group)
        t = canonical_triple(group, record.subgroup, record.m // record.n, record.alpha)
        out = out + ZGRingElement(group, {t: record.chi})
    return out
