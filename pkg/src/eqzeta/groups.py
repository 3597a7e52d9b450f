"""Finite groups as explicit multiplication tables.

Elements are dense indices ``0..order-1`` and all group data is precomputed
tables; the groups of interest are tiny, so exactness and simplicity win over
cleverness.  Composition is "left acts last": for permutation-built groups
``mul(a, b)`` is the permutation ``x -> a(b(x))``.

Canonical element orders (fixed so that documents are reproducible):

* cyclic ``n``: element ``i`` is the ``i``-th power of the generator,
* dihedral ``n`` (order ``2n``): indices ``0..n-1`` are rotations ``r^i``,
  ``n+i`` is ``r^i s``,
* symmetric ``n``: all one-line permutation tuples in lexicographic order,
* products: pairs ``(x, y)`` packed as ``x * |G2| + y``,
* permutation generators: breadth-first closure from the identity,
  right-multiplying by the generators in the order given.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import GroupError

DEFAULT_ORDER_BOUND = 5040


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted element indices."""

    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements


@dataclass(frozen=True)
class SubgroupClassTable:
    """Conjugacy classes of subgroups with canonical representatives.

    Classes are sorted by (order, element tuple); every representative is the
    lexicographically least sorted element set within its class, so class ids
    are stable across runs.  ``subconjugacy[i][j]`` is true when some
    conjugate of ``classes[i]`` is contained in ``classes[j]``.
    """

    classes: tuple[Subgroup, ...]
    class_sizes: tuple[int, ...]
    subconjugacy: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class TableOfMarks:
    """Matrix of fixed-coset counts.

    ``matrix[k][h]`` is the number of cosets in G/K fixed by H, for the class
    representatives K = classes[k], H = classes[h].  Lower triangular in the
    canonical class order, with positive diagonal.
    """

    matrix: tuple[tuple[int, ...], ...]


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # (p o q)(x) = p[q[x]]
    return tuple(p[x] for x in q)


class FiniteGroup:
    """A finite group defined by an explicit multiplication table.

    Instances are immutable after construction and safe for concurrent
    reads.  Derived data (subgroup classes, marks, normalizers) is computed
    lazily and cached on the instance.
    """

    def __init__(
        self,
        mul_table: Sequence[Sequence[int]],
        *,
        name: str = "G",
        labels: Sequence[str] | None = None,
        generators: Sequence[int] | None = None,
        validate: bool = True,
        order_bound: int = DEFAULT_ORDER_BOUND,
    ):
        n = len(mul_table)
        if n == 0:
            raise GroupError("a group needs at least one element")
        if n > order_bound:
            raise GroupError(f"group order {n} exceeds the bound {order_bound}")
        rows = []
        for i, row in enumerate(mul_table):
            r = tuple(int(x) for x in row)
            if len(r) != n:
                raise GroupError(f"multiplication table row {i} has length {len(r)}, expected {n}")
            for x in r:
                if not 0 <= x < n:
                    raise GroupError(f"multiplication table entry {x} out of range 0..{n - 1}")
            rows.append(r)
        self.order = n
        self._mul = tuple(rows)
        self.name = name

        identity = None
        for e in range(n):
            if all(self._mul[e][x] == x and self._mul[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupError("multiplication table has no two-sided identity")
        self.identity = identity

        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self._mul[a][b] == identity and self._mul[b][a] == identity:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise GroupError(f"element {a} has no two-sided inverse")
        self._inv = tuple(inv)

        if validate:
            mul = self._mul
            for a in range(n):
                row_a = mul[a]
                for b in range(n):
                    ab = row_a[b]
                    row_ab = mul[ab]
                    row_b = mul[b]
                    for c in range(n):
                        if row_ab[c] != row_a[row_b[c]]:
                            raise GroupError(
                                f"multiplication table is not associative at ({a},{b},{c})"
                            )

        if labels is None:
            labels = ["e" if i == identity else f"g{i}" for i in range(n)]
        elif len(labels) != n:
            raise GroupError("labels length does not match group order")
        self.labels = tuple(str(x) for x in labels)

        if generators is None:
            generators = [g for g in range(n) if g != identity]
        for g in generators:
            if not 0 <= g < n:
                raise GroupError(f"generator index {g} out of range")
        self.generators = tuple(int(g) for g in generators)
        if len(self.closure(self.generators)) != n:
            raise GroupError("the listed generators do not generate the group")

        # lazy caches keyed by value tuples; see zg.canonical_triple
        self._pair_cache: dict[tuple[tuple[int, ...], int], tuple[int, int]] = {}
        self._basis_product_cache: dict[tuple, dict] = {}
        self._column_cache: dict = {}

    # -- elementary operations -------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, h: int) -> int:
        """a h a^-1."""
        return self._mul[self._mul[a][h]][self._inv[a]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        out = self.identity
        while k:
            if k & 1:
                out = self._mul[out][a]
            a = self._mul[a][a]
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        out, k = a, 1
        while out != self.identity:
            out = self._mul[out][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- subgroup machinery ----------------------------------------------

    def closure(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by the seed elements."""
        elems = {self.identity}
        frontier = []
        for g in seed:
            if g not in elems:
                elems.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for a in list(elems):
                for b in frontier:
                    c = self._mul[a][b]
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
            for a in frontier:
                for b in list(elems):
                    c = self._mul[a][b]
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
            frontier = nxt
        return tuple(sorted(elems))

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self._mul[a][b] in s for a in s for b in s)

    def subgroup(self, elems: Iterable[int]) -> Subgroup:
        t = tuple(sorted(set(int(x) for x in elems)))
        if not self.is_subgroup(t):
            raise GroupError(f"{t} is not closed under multiplication")
        return Subgroup(t)

    def conjugate_subgroup(self, a: int, elems: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted(self.conj(a, h) for h in elems))

    @cached_property
    def all_subgroups(self) -> tuple[tuple[int, ...], ...]:
        """Every subgroup, found by closure over single-element extensions."""
        triv = (self.identity,)
        seen = {triv}
        frontier = [triv]
        while frontier:
            nxt = []
            for h_elems in frontier:
                h_set = set(h_elems)
                for g in range(self.order):
                    if g in h_set:
                        continue
                    k = self.closure(h_elems + (g,))
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        return tuple(sorted(seen, key=lambda t: (len(t), t)))

    @cached_property
    def subgroup_classes(self) -> SubgroupClassTable:
        canon_of: dict[tuple[int, ...], tuple[int, ...]] = {}
        sizes: dict[tuple[int, ...], int] = {}
        for h in self.all_subgroups:
            if h in canon_of:
                continue
            orbit = {self.conjugate_subgroup(a, h) for a in range(self.order)}
            rep = min(orbit)
            for k in orbit:
                canon_of[k] = rep
            sizes[rep] = len(orbit)
        reps = sorted(sizes, key=lambda t: (len(t), t))
        rep_sets = [set(r) for r in reps]
        sub = []
        for i, ri in enumerate(reps):
            row = []
            for j in range(len(reps)):
                row.append(
                    any(
                        set(self.conjugate_subgroup(a, ri)) <= rep_sets[j]
                        for a in range(self.order)
                    )
                )
            sub.append(tuple(row))
        self._canon_subgroup = canon_of
        return SubgroupClassTable(
            classes=tuple(Subgroup(r) for r in reps),
            class_sizes=tuple(sizes[r] for r in reps),
            subconjugacy=tuple(sub),
        )

    def class_of_subgroup(self, elems: Iterable[int]) -> int:
        """Class id of a subgroup (canonicalized by conjugation)."""
        t = tuple(sorted(elems))
        table = self.subgroup_classes
        canon = self._canon_subgroup.get(t)
        if canon is None:
            if not self.is_subgroup(t):
                raise GroupError(f"{t} is not a subgroup")
            canon = min(self.conjugate_subgroup(a, t) for a in range(self.order))
        for i, rep in enumerate(table.classes):
            if rep.elements == canon:
                return i
        raise GroupError(f"subgroup {t} not found in the class table")

    def normalizer(self, elems: Iterable[int]) -> tuple[int, ...]:
        """{a in G : a^-1 H a = H}; always contains H."""
        t = tuple(sorted(elems))
        if not self.is_subgroup(t):
            raise GroupError(f"{t} is not a subgroup")
        s = set(t)
        return tuple(
            a for a in range(self.order) if {self.conj(a, h) for h in t} == s
        )

    def coset_min(self, h_elems: Sequence[int], a: int) -> int:
        """Least element index in the coset a*H."""
        return min(self._mul[a][h] for h in h_elems)

    def coset_order(self, h_elems: Sequence[int], a: int) -> int:
        """Order of the coset a*H in N(H)/H (a must normalize H)."""
        h_set = set(h_elems)
        out, k = a, 1
        while out not in h_set:
            out = self._mul[out][a]
            k += 1
        return k

    @cached_property
    def table_of_marks(self) -> TableOfMarks:
        classes = self.subgroup_classes.classes
        matrix = []
        for k_sub in classes:
            k_set = set(k_sub.elements)
            # left cosets of K, one representative each
            seen = set()
            coset_reps = []
            for a in range(self.order):
                c = frozenset(self._mul[a][x] for x in k_sub.elements)
                if c not in seen:
                    seen.add(c)
                    coset_reps.append(a)
            row = []
            for h_sub in classes:
                count = 0
                for a in coset_reps:
                    ia = self._inv[a]
                    if all(
                        self._mul[ia][self._mul[h][a]] in k_set
                        for h in h_sub.elements
                    ):
                        count += 1
                row.append(count)
            matrix.append(tuple(row))
        return TableOfMarks(matrix=tuple(matrix))

    def subgroup_label(self, class_id: int) -> str:
        rep = self.subgroup_classes.classes[class_id]
        if rep.order == self.order:
            return "G"
        if rep.order == 1:
            return "e"
        return f"H{class_id}"


# -- builders --------------------------------------------------------------


def cyclic(n: int, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(
        table, name=f"C{n}", generators=gens, validate=False, order_bound=order_bound
    )


def dihedral(n: int, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"dihedral parameter must be positive, got {n}")

    def mul(i: int, j: int) -> int:
        a, b = i % n, i // n
        c, d = j % n, j // n
        rot = (a - c) % n if b else (a + c) % n
        return rot + n * (b ^ d)

    table = [[mul(i, j) for j in range(2 * n)] for i in range(2 * n)]
    gens = ([1] if n > 1 else []) + [n]
    return FiniteGroup(
        table, name=f"D{n}", generators=gens, validate=False, order_bound=order_bound
    )


def symmetric(n: int, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"symmetric group degree must be positive, got {n}")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    if len(perms) > order_bound:
        raise GroupError(f"group order {len(perms)} exceeds the bound {order_bound}")
    table = [[index[_compose(p, q)] for q in perms] for p in perms]
    gens = []
    if n >= 2:
        gens.append(index[(1, 0) + tuple(range(2, n))])
    if n >= 3:
        gens.append(index[tuple(range(1, n)) + (0,)])
    group = FiniteGroup(
        table, name=f"S{n}", generators=gens, validate=False, order_bound=order_bound
    )
    group.permutation_forms = tuple(perms)
    return group


def product(g1: FiniteGroup, g2: FiniteGroup, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > order_bound:
        raise GroupError(f"group order {n1 * n2} exceeds the bound {order_bound}")

    def pack(a: int, b: int) -> int:
        return a * n2 + b

    table = [
        [
            pack(g1.mul(i // n2, j // n2), g2.mul(i % n2, j % n2))
            for j in range(n1 * n2)
        ]
        for i in range(n1 * n2)
    ]
    gens = [pack(s, g2.identity) for s in g1.generators] + [
        pack(g1.identity, s) for s in g2.generators
    ]
    return FiniteGroup(
        table,
        name=f"{g1.name}x{g2.name}",
        generators=gens,
        validate=False,
        order_bound=order_bound,
    )


def trivial() -> FiniteGroup:
    return cyclic(1)


def from_permutations(
    n_points: int,
    generators: Sequence[Sequence[int]],
    *,
    name: str = "perm",
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> FiniteGroup:
    """Closure of permutation generators on ``n_points`` points."""
    gens = []
    for i, g in enumerate(generators):
        t = tuple(int(x) for x in g)
        if sorted(t) != list(range(n_points)):
            raise GroupError(f"generator {i} is not a bijection on {n_points} points")
        gens.append(t)
    identity = tuple(range(n_points))
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in index:
                    if len(elems) >= order_bound:
                        raise GroupError(
                            f"generated group exceeds the order bound {order_bound}"
                        )
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    table = [[index[_compose(p, q)] for q in elems] for p in elems]
    gen_idx = [index[g] for g in gens]
    group = FiniteGroup(
        table, name=name, generators=gen_idx, validate=False, order_bound=order_bound
    )
    group.permutation_forms = tuple(elems)
    return group


def build_group(spec: Mapping, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Build a group from a description mapping (see the document schemas).

    Supported ``type`` values: cyclic, dihedral, symmetric, product,
    perm-gens, table.
    """
    try:
        return _build_group(spec, order_bound)
    except KeyError as exc:
        raise GroupError(f"group description is missing field {exc.args[0]!r}") from None


def _build_group(spec: Mapping, order_bound: int) -> FiniteGroup:
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic(int(spec["n"]), order_bound=order_bound)
    if kind == "dihedral":
        return dihedral(int(spec["n"]), order_bound=order_bound)
    if kind == "symmetric":
        return symmetric(int(spec["n"]), order_bound=order_bound)
    if kind == "product":
        factors = spec["factors"]
        if len(factors) < 2:
            raise GroupError("product needs at least two factors")
        group = build_group(factors[0], order_bound=order_bound)
        for f in factors[1:]:
            group = product(group, build_group(f, order_bound=order_bound), order_bound=order_bound)
        return group
    if kind == "perm-gens":
        return from_permutations(
            int(spec["points"]), spec["generators"], order_bound=order_bound
        )
    if kind == "table":
        return FiniteGroup(
            spec["mul"],
            name=str(spec.get("name", "G")),
            labels=spec.get("labels"),
            generators=spec.get("generators"),
            order_bound=order_bound,
        )
    raise GroupError(f"unknown group type {kind!r}")


# spec-facing aliases


def enumerate_subgroup_classes(group: FiniteGroup) -> SubgroupClassTable:
    return group.subgroup_classes


def normalizer(group: FiniteGroup, subgroup: Subgroup | Iterable[int]) -> Subgroup:
    elems = subgroup.elements if isinstance(subgroup, Subgroup) else tuple(subgroup)
    return Subgroup(group.normalizer(elems))


def table_of_marks(group: FiniteGroup) -> TableOfMarks:
    return group.table_of_marks
