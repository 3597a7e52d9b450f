"""The Grothendieck ring of finite G-sets.

Elements are integer combinations of the classes [G/H] indexed by subgroup
class ids.  Addition is disjoint union; multiplication is computed through
the mark homomorphism (pointwise product of fixed-point vectors followed by
exact triangular back-substitution), which keeps everything in integers.
Direct orbit decomposition of Cartesian products is kept in the test suite
as the oracle for the marks route.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import ActionError
from .groups import FiniteGroup


class GSet:
    """A finite G-set given by one permutation of the points per element."""

    def __init__(
        self,
        group: FiniteGroup,
        n: int,
        act: Sequence[Sequence[int]],
        *,
        validate: bool = True,
    ):
        self.group = group
        self.n = int(n)
        if len(act) != group.order:
            raise ActionError(
                f"action table has {len(act)} rows, expected one per group element ({group.order})"
            )
        self.act = tuple(tuple(int(x) for x in row) for row in act)
        if validate:
            self._validate()

    @classmethod
    def from_generator_images(
        cls, group: FiniteGroup, n: int, images: Sequence[Sequence[int]]
    ) -> "GSet":
        return cls(group, n, extend_action(group, n, images))

    def _validate(self) -> None:
        n = self.n
        for g, row in enumerate(self.act):
            if sorted(row) != list(range(n)):
                raise ActionError(f"action of element {g} is not a bijection")
        e_row = self.act[self.group.identity]
        if e_row != tuple(range(n)):
            raise ActionError("the identity element does not act trivially")
        mul = self.group.mul
        for a in range(self.group.order):
            ra = self.act[a]
            for b in range(self.group.order):
                rb = self.act[b]
                rab = self.act[mul(a, b)]
                for x in range(n):
                    if rab[x] != ra[rb[x]]:
                        raise ActionError(
                            f"action is not a homomorphism at elements ({a},{b}), point {x}"
                        )

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for x in range(self.n):
            if seen[x]:
                continue
            orbit = [x]
            seen[x] = True
            queue = [x]
            while queue:
                y = queue.pop()
                for row in self.act:
                    z = row[y]
                    if not seen[z]:
                        seen[z] = True
                        orbit.append(z)
                        queue.append(z)
            out.append(sorted(orbit))
        return out

    def stabilizer(self, x: int) -> tuple[int, ...]:
        return tuple(g for g in range(self.group.order) if self.act[g][x] == x)

    def burnside_class(self) -> "BurnsideElement":
        coeffs: dict[int, int] = {}
        for orbit in self.orbits():
            cls = self.group.class_of_subgroup(self.stabilizer(orbit[0]))
            coeffs[cls] = coeffs.get(cls, 0) + 1
        return BurnsideElement(self.group, coeffs)


def extend_action(
    group: FiniteGroup, n: int, images: Sequence[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    """Extend generator images to a full per-element action table."""
    if len(images) != len(group.generators):
        raise ActionError(
            f"{len(images)} generator images given, group has {len(group.generators)} generators"
        )
    gen_perms = []
    for i, img in enumerate(images):
        t = tuple(int(x) for x in img)
        if sorted(t) != list(range(n)):
            raise ActionError(f"image of generator {i} is not a bijection on {n} points")
        gen_perms.append(t)
    identity = tuple(range(n))
    act: dict[int, tuple[int, ...]] = {group.identity: identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for g in frontier:
            pg = act[g]
            for s, ps in zip(group.generators, gen_perms):
                h = group.mul(g, s)
                if h not in act:
                    act[h] = tuple(pg[ps[x]] for x in range(n))
                    nxt.append(h)
        frontier = nxt
    if len(act) != group.order:
        raise ActionError("the listed generators do not generate the group")
    return tuple(act[g] for g in range(group.order))


class BurnsideElement:
    """Integer combination of subgroup-class generators [G/H]."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Mapping[int, int]):
        n_classes = len(group.subgroup_classes)
        clean: dict[int, int] = {}
        for cls, c in coeffs.items():
            if not 0 <= cls < n_classes:
                raise ActionError(f"invalid subgroup class id {cls}")
            if c:
                clean[cls] = int(c)
        self.group = group
        self.coeffs = clean

    @classmethod
    def zero(cls, group: FiniteGroup) -> "BurnsideElement":
        return cls(group, {})

    @classmethod
    def basis(cls, group: FiniteGroup, class_id: int) -> "BurnsideElement":
        return cls(group, {class_id: 1})

    def coefficient(self, class_id: int) -> int:
        return self.coeffs.get(class_id, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_group(self, other: "BurnsideElement") -> None:
        if self.group is not other.group:
            raise ActionError("elements belong to different groups")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    __hash__ = None  # mutable mapping inside

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check_group(other)
        out = dict(self.coeffs)
        for cls, c in other.coeffs.items():
            out[cls] = out.get(cls, 0) + c
        return BurnsideElement(self.group, out)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.group, {cls: -c for cls, c in self.coeffs.items()})

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "BurnsideElement":
        if not isinstance(k, int):
            return NotImplemented
        return BurnsideElement(self.group, {cls: k * c for cls, c in self.coeffs.items()})

    def mark_vector(self) -> tuple[int, ...]:
        """Fixed-point counts of each class representative; injective ring map."""
        marks = self.group.table_of_marks.matrix
        n = len(marks)
        out = [0] * n
        for cls, c in self.coeffs.items():
            row = marks[cls]
            for h in range(n):
                out[h] += c * row[h]
        return tuple(out)

    def __mul__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check_group(other)
        va = self.mark_vector()
        vb = other.mark_vector()
        return _from_mark_vector(self.group, [a * b for a, b in zip(va, vb)])

    def point_count(self) -> int:
        """Underlying cardinality: sum of coefficients times [G:H]."""
        classes = self.group.subgroup_classes.classes
        order = self.group.order
        return sum(c * (order // classes[cls].order) for cls, c in self.coeffs.items())

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for i, cls in enumerate(sorted(self.coeffs, reverse=True)):
            c = self.coeffs[cls]
            term = f"{abs(c)}*[G/{self.group.subgroup_label(cls)}]"
            if i == 0:
                out = term if c > 0 else "-" + term
            else:
                out += (" + " if c > 0 else " - ") + term
        return out

    def __repr__(self) -> str:
        return f"BurnsideElement({self.render()})"


def _from_mark_vector(group: FiniteGroup, marks_vec: Sequence[int]) -> BurnsideElement:
    """Invert the mark homomorphism by back-substitution (exact)."""
    marks = group.table_of_marks.matrix
    n = len(marks)
    coeffs: dict[int, int] = {}
    residual = list(marks_vec)
    for h in range(n - 1, -1, -1):
        diag = marks[h][h]
        value = residual[h]
        if value % diag:
            raise ActionError("vector is not in the image of the mark homomorphism")
        c = value // diag
        if c:
            coeffs[h] = c
            row = marks[h]
            for j in range(n):
                residual[j] -= c * row[j]
    if any(residual):
        raise ActionError("vector is not in the image of the mark homomorphism")
    return BurnsideElement(group, coeffs)


def class_of_gset(points: GSet) -> BurnsideElement:
    """Orbit decomposition of a finite G-set in the Burnside ring."""
    return points.burnside_class()


def burnside_add(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    return a + b


def burnside_mul(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    return a * b


def mark_vector(a: BurnsideElement) -> tuple[int, ...]:
    return a.mark_vector()
