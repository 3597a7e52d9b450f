"""Finite G-permutations: finite G-sets with a commuting bijection.

A G-permutation is the concrete model of a finite (Z x G)-set: the integer 1
acts by sigma, the group acts through the action table, and the two commute.
``classify`` decomposes a G-permutation into canonical triples; ``realize``
builds the coset model of a triple:

    points are pairs (k, bH) with k in Z/m and bH a coset of H in G; the
    group acts on the coset factor by left multiplication, sigma raises the
    level and twists the last step by right multiplication with a^-1.

With this convention the base point x = (0, H) satisfies a * sigma^m(x) = x,
so the triple extracted by ``classify`` matches the one realized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .burnside import BurnsideElement, GSet, extend_action
from .errors import ActionError, EqzetaError
from .groups import FiniteGroup
from .zg import TripleClass, ZGRingElement, canonical_triple, triple_rep


class GPermutation:
    """A finite G-set together with an equivariant bijection sigma."""

    __slots__ = ("group", "n", "act", "sigma")

    def __init__(
        self,
        group: FiniteGroup,
        n: int,
        act: Sequence[Sequence[int]],
        sigma: Sequence[int],
        *,
        validate: bool = True,
    ):
        self.group = group
        self.n = int(n)
        self.act = tuple(tuple(int(x) for x in row) for row in act)
        self.sigma = tuple(int(x) for x in sigma)
        if len(self.sigma) != self.n:
            raise ActionError(f"sigma has {len(self.sigma)} entries, expected {self.n}")
        if validate:
            GSet(group, self.n, self.act)  # bijections + homomorphism
            if sorted(self.sigma) != list(range(self.n)):
                raise ActionError("sigma is not a bijection")
            self._check_commutation()

    @classmethod
    def from_generator_images(
        cls,
        group: FiniteGroup,
        n: int,
        images: Sequence[Sequence[int]],
        sigma: Sequence[int],
    ) -> "GPermutation":
        return cls(group, n, extend_action(group, n, images), sigma)

    def _check_commutation(self) -> None:
        # generators suffice: the action table is already a homomorphism
        for g in self.group.generators:
            row = self.act[g]
            for x in range(self.n):
                if row[self.sigma[x]] != self.sigma[row[x]]:
                    raise ActionError(
                        f"sigma does not commute with generator {self.group.labels[g]} "
                        f"at point {x}"
                    )

    def gset(self) -> GSet:
        return GSet(self.group, self.n, self.act, validate=False)

    def power(self, m: int) -> "GPermutation":
        """Same G-set with sigma replaced by sigma^m (m >= 0)."""
        if m < 0:
            raise EqzetaError("negative powers are not needed; sigma has finite order")
        sig = tuple(range(self.n))
        for _ in range(m):
            sig = tuple(self.sigma[x] for x in sig)
        return GPermutation(self.group, self.n, self.act, sig, validate=False)

    def disjoint_union(self, other: "GPermutation") -> "GPermutation":
        if self.group is not other.group:
            raise ActionError("operands belong to different groups")
        n = self.n + other.n
        act = tuple(
            tuple(row1) + tuple(x + self.n for x in row2)
            for row1, row2 in zip(self.act, other.act)
        )
        sigma = self.sigma + tuple(x + self.n for x in other.sigma)
        return GPermutation(self.group, n, act, sigma, validate=False)

    def product(self, other: "GPermutation") -> "GPermutation":
        """Cartesian product with the diagonal action and product sigma."""
        if self.group is not other.group:
            raise ActionError("operands belong to different groups")
        n2 = other.n
        act = []
        for g in range(self.group.order):
            r1, r2 = self.act[g], other.act[g]
            act.append(
                tuple(r1[x] * n2 + r2[y] for x in range(self.n) for y in range(n2))
            )
        sigma = tuple(
            self.sigma[x] * n2 + other.sigma[y]
            for x in range(self.n)
            for y in range(n2)
        )
        return GPermutation(self.group, self.n * n2, act, sigma, validate=False)

    def relabel(self, tau: Sequence[int]) -> "GPermutation":
        """Conjugate everything by a relabeling permutation of the points."""
        if sorted(tau) != list(range(self.n)):
            raise ActionError("relabeling is not a bijection")
        inv = [0] * self.n
        for i, t in enumerate(tau):
            inv[t] = i
        act = tuple(
            tuple(tau[row[inv[x]]] for x in range(self.n)) for row in self.act
        )
        sigma = tuple(tau[self.sigma[inv[x]]] for x in range(self.n))
        return GPermutation(self.group, self.n, act, sigma, validate=False)

    def sigma_cycle_lengths(self) -> list[int]:
        seen = [False] * self.n
        out = []
        for x in range(self.n):
            if seen[x]:
                continue
            length = 0
            y = x
            while not seen[y]:
                seen[y] = True
                y = self.sigma[y]
                length += 1
            out.append(length)
        return sorted(out)

    def z_period(self) -> int:
        """lcm of the sigma cycle lengths; sigma to this power is the identity."""
        return math.lcm(*self.sigma_cycle_lengths()) if self.n else 1

    def __repr__(self) -> str:
        return f"GPermutation({self.group.name}, n={self.n})"


def validate(p: GPermutation) -> None:
    """Re-run all validation on an existing G-permutation."""
    GPermutation(p.group, p.n, p.act, p.sigma, validate=True)


def zg_orbits(p: GPermutation) -> list[list[int]]:
    """Orbits of the combined action of the group and sigma."""
    seen = [False] * p.n
    rows = [p.sigma] + [p.act[g] for g in p.group.generators]
    out = []
    for x in range(p.n):
        if seen[x]:
            continue
        orbit = [x]
        seen[x] = True
        queue = [x]
        while queue:
            y = queue.pop()
            for row in rows:
                z = row[y]
                if not seen[z]:
                    seen[z] = True
                    orbit.append(z)
                    queue.append(z)
        out.append(sorted(orbit))
    return out


def classify(p: GPermutation) -> ZGRingElement:
    """Decompose a G-permutation into canonical triples.

    For each combined orbit: H is the stabilizer of a base point x, m the
    least k > 0 with sigma^k(x) back in the G-orbit of x, and alpha the coset
    of any a with a * sigma^m(x) = x.  The result does not depend on the base
    point; the test suite checks that explicitly.
    """
    group = p.group
    coeffs: dict[TripleClass, int] = {}
    for orbit in zg_orbits(p):
        t = _classify_orbit(p, orbit[0])
        coeffs[t] = coeffs.get(t, 0) + 1
    z = ZGRingElement(group, coeffs)
    if z.point_count() != p.n:
        raise AssertionError("classification lost points; this is a bug")
    return z


def _classify_orbit(p: GPermutation, x: int) -> TripleClass:
    group = p.group
    stab = tuple(g for g in range(group.order) if p.act[g][x] == x)
    g_orbit = {p.act[g][x] for g in range(group.order)}
    y = p.sigma[x]
    m = 1
    while y not in g_orbit:
        y = p.sigma[y]
        m += 1
    a = next(g for g in range(group.order) if p.act[g][y] == x)
    return canonical_triple(group, stab, m, a)


def realize(group: FiniteGroup, t: TripleClass) -> GPermutation:
    """Coset model of a canonical triple; classify(realize(t)) == [t]."""
    h, m, a = triple_rep(group, t)
    elem2coset = [-1] * group.order
    coset_reps: list[int] = []
    for x in range(group.order):
        if elem2coset[x] < 0:
            cid = len(coset_reps)
            coset_reps.append(x)
            for hh in h:
                elem2coset[group.mul(x, hh)] = cid
    n_cosets = len(coset_reps)
    n = m * n_cosets
    act = []
    for g in range(group.order):
        g_on_coset = [elem2coset[group.mul(g, rep)] for rep in coset_reps]
        act.append(
            tuple(k * n_cosets + g_on_coset[c] for k in range(m) for c in range(n_cosets))
        )
    ia = group.inv(a)
    twist = [elem2coset[group.mul(rep, ia)] for rep in coset_reps]
    sigma = [0] * n
    for k in range(m):
        for c in range(n_cosets):
            if k < m - 1:
                sigma[k * n_cosets + c] = (k + 1) * n_cosets + c
            else:
                sigma[k * n_cosets + c] = twist[c]
    return GPermutation(group, n, act, tuple(sigma), validate=False)


def realize_element(group: FiniteGroup, z: ZGRingElement) -> GPermutation:
    """Disjoint union of realized basis triples; requires nonnegative coefficients."""
    p = GPermutation(group, 0, [() for _ in range(group.order)], (), validate=False)
    for t in sorted(z.coeffs):
        c = z.coeffs[t]
        if c < 0:
            raise EqzetaError("cannot realize an element with negative coefficients")
        for _ in range(c):
            p = p.disjoint_union(realize(group, t))
    return p


def equivariant_lefschetz(g: int, p: GPermutation) -> BurnsideElement:
    """The fixed points of g∘sigma as a class in the Burnside ring.

    Raises ActionError when that fixed set is not G-invariant, which can
    happen for non-central g in a nonabelian group; in that case no honest
    G-set of fixed points exists and the caller should work with
    ``lefschetz_table`` instead.
    """
    group = p.group
    row_g = p.act[g]
    fixed = [x for x in range(p.n) if row_g[p.sigma[x]] == x]
    fixed_set = set(fixed)
    for h in group.generators:
        row = p.act[h]
        for x in fixed:
            if row[x] not in fixed_set:
                raise ActionError(
                    f"fixed set of g∘sigma is not G-invariant: generator "
                    f"{group.labels[h]} moves fixed point {x} to {row[x]}"
                )
    reindex = {x: i for i, x in enumerate(fixed)}
    act = tuple(
        tuple(reindex[p.act[e][x]] for x in fixed) for e in range(group.order)
    )
    return GSet(group, len(fixed), act, validate=False).burnside_class()


@dataclass
class LefschetzTable:
    """Fixed-unit counts indexed by (subgroup class, m, alpha coset).

    The entry at (class of H, m, coset of a in N(H)) counts the N(H)-orbits
    of the H-fixed locus that contain a point fixed by a∘sigma^m.  For one
    transitive piece this is nonzero exactly when the subgroup of Z x G
    named by (H, m, a) is conjugate into the piece's own subgroup, which
    makes the system triangular; on abelian groups the entries agree with
    the coefficients of the honest fixed-point G-sets.

    Entries are stored densely for all 1 <= m <= m_max, all classes and all
    coset representatives (least element index in each coset); values are
    constant on simultaneous conjugation of (H, a).
    """

    group: FiniteGroup
    m_max: int
    entries: dict = field(default_factory=dict)

    def get(self, h_class: int, m: int, alpha: int) -> int:
        return self.entries.get((h_class, m, alpha), 0)

    def _check_compatible(self, other: "LefschetzTable") -> None:
        if self.group is not other.group:
            raise EqzetaError("tables belong to different groups")
        if self.m_max != other.m_max:
            raise EqzetaError("tables have different m_max")

    def __add__(self, other: "LefschetzTable") -> "LefschetzTable":
        self._check_compatible(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return LefschetzTable(self.group, self.m_max, out)

    def __sub__(self, other: "LefschetzTable") -> "LefschetzTable":
        self._check_compatible(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) - v
        return LefschetzTable(self.group, self.m_max, out)

    def __rmul__(self, k: int) -> "LefschetzTable":
        return LefschetzTable(
            self.group, self.m_max, {key: k * v for key, v in self.entries.items()}
        )

    def nonzero(self) -> dict:
        return {k: v for k, v in self.entries.items() if v}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LefschetzTable):
            return NotImplemented
        return (
            self.group is other.group
            and self.m_max == other.m_max
            and self.nonzero() == other.nonzero()
        )


def coset_representatives(group: FiniteGroup, h_elems: Sequence[int]) -> list[int]:
    """Least-element representatives of the cosets of H in its normalizer."""
    return sorted({group.coset_min(h_elems, a) for a in group.normalizer(h_elems)})


def lefschetz_table(p: GPermutation, m_max: int = 0) -> LefschetzTable:
    """Tabulate the Lefschetz data of all pairs (a, sigma^m).

    With ``m_max=0`` the table covers one full period of sigma (the lcm of
    its cycle lengths), which always determines the class of p.  An explicit
    m_max must not truncate below that period.
    """
    group = p.group
    period = p.z_period()
    if m_max == 0:
        m_max = period
    elif m_max < period:
        raise EqzetaError(
            f"m_max={m_max} is below the sigma period {period}; the table would lose data"
        )
    per_class = []
    for h_class, rep in enumerate(group.subgroup_classes.classes):
        h = rep.elements
        fixed_locus = [
            x for x in range(p.n) if all(p.act[g][x] == x for g in h)
        ]
        norm = group.normalizer(h)
        units = _orbits_under(p, norm, fixed_locus)
        reps = coset_representatives(group, h)
        per_class.append((h_class, units, reps))
    entries: dict = {}
    sig_m = list(range(p.n))
    for m in range(1, m_max + 1):
        sig_m = [p.sigma[x] for x in sig_m]
        for h_class, units, reps in per_class:
            for a in reps:
                row = p.act[a]
                count = 0
                for unit in units:
                    if any(row[sig_m[x]] == x for x in unit):
                        count += 1
                entries[(h_class, m, a)] = count
    return LefschetzTable(group, m_max, entries)


def _orbits_under(
    p: GPermutation, elements: Sequence[int], points: Sequence[int]
) -> list[list[int]]:
    point_set = set(points)
    seen = set()
    out = []
    for x in points:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        queue = [x]
        while queue:
            y = queue.pop()
            for g in elements:
                z = p.act[g][y]
                if z not in seen:
                    if z not in point_set:
                        raise AssertionError(
                            "normalizer action leaves the fixed locus; this is a bug"
                        )
                    seen.add(z)
                    orbit.append(z)
                    queue.append(z)
        out.append(orbit)
    return out
