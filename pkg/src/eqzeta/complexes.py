"""Finite regular G-CW data, kept purely combinatorial.

Cells carry no geometry; "fixed pointwise" is modeled as fixing the cell and
every face below it, which is all the zeta and Euler-characteristic
computations need.  The module provides the equivariant Euler characteristic
by two independent routes and a brute-force zeta oracle for cellular
automorphisms that commute with the action.
"""

from __future__ import annotations

import math
from typing import Sequence

from .burnside import BurnsideElement, GSet, extend_action
from .errors import ActionError, EqzetaError, RegularityError
from .gperm import GPermutation, LefschetzTable, classify, lefschetz_table
from .groups import FiniteGroup
from .zg import ZGRingElement

MAX_CELLS = 10_000


class GComplex:
    """Cells per dimension, boundary incidence, and a cell-permuting action.

    ``boundary[d][i]`` lists the (d-1)-cells under the i-th d-cell (empty in
    dimension 0); ``action[g][d]`` is the permutation of d-cells by the group
    element g.  Regularity: an element that maps a cell to itself must fix
    all of its faces.
    """

    def __init__(
        self,
        group: FiniteGroup,
        cells: Sequence[int],
        boundary: Sequence[Sequence[Sequence[int]]],
        action: Sequence[Sequence[Sequence[int]]],
        *,
        validate: bool = True,
    ):
        self.group = group
        self.cells = tuple(int(c) for c in cells)
        if any(c < 0 for c in self.cells):
            raise EqzetaError("cell counts must be nonnegative")
        if sum(self.cells) > MAX_CELLS:
            raise EqzetaError(f"complex exceeds {MAX_CELLS} cells")
        dims = len(self.cells)
        if len(boundary) != dims:
            raise EqzetaError(
                f"boundary data covers {len(boundary)} dimensions, expected {dims}"
            )
        self.boundary = tuple(
            tuple(tuple(sorted(set(int(f) for f in faces))) for faces in per_dim)
            for per_dim in boundary
        )
        self.action = tuple(
            tuple(tuple(int(x) for x in per_dim) for per_dim in per_elem)
            for per_elem in action
        )
        if validate:
            self._validate()

    @classmethod
    def from_generator_images(
        cls,
        group: FiniteGroup,
        cells: Sequence[int],
        boundary: Sequence[Sequence[Sequence[int]]],
        images: Sequence[Sequence[Sequence[int]]],
    ) -> "GComplex":
        """Build the full action from per-generator, per-dimension images."""
        dims = len(cells)
        for i, per_gen in enumerate(images):
            if len(per_gen) != dims:
                raise ActionError(
                    f"generator {i} gives images for {len(per_gen)} dimensions, expected {dims}"
                )
        per_dim_tables = [
            extend_action(group, cells[d], [per_gen[d] for per_gen in images])
            for d in range(dims)
        ]
        action = [
            [per_dim_tables[d][g] for d in range(dims)] for g in range(group.order)
        ]
        return cls(group, cells, boundary, action)

    def _validate(self) -> None:
        dims = len(self.cells)
        for d in range(dims):
            if len(self.boundary[d]) != self.cells[d]:
                raise EqzetaError(
                    f"dimension {d} has {len(self.boundary[d])} boundary rows, "
                    f"expected {self.cells[d]}"
                )
            for i, faces in enumerate(self.boundary[d]):
                if d == 0 and faces:
                    raise EqzetaError(f"0-cell {i} has boundary entries")
                for f in faces:
                    if not 0 <= f < (self.cells[d - 1] if d else 0):
                        raise EqzetaError(
                            f"cell ({d},{i}) lists invalid face {f}"
                        )
        if len(self.action) != self.group.order:
            raise ActionError("action table needs one row per group element")
        for d in range(dims):
            GSet(self.group, self.cells[d], [row[d] for row in self.action])
        for g in range(self.group.order):
            for d in range(1, dims):
                perm_d = self.action[g][d]
                perm_f = self.action[g][d - 1]
                for c in range(self.cells[d]):
                    image_faces = tuple(sorted(perm_f[f] for f in self.boundary[d][c]))
                    if image_faces != self.boundary[d][perm_d[c]]:
                        raise ActionError(
                            f"element {self.group.labels[g]} does not respect the "
                            f"boundary of cell ({d},{c})"
                        )
        for g in range(self.group.order):
            if g == self.group.identity:
                continue
            for d in range(dims):
                perm = self.action[g][d]
                for c in range(self.cells[d]):
                    if perm[c] == c and not self._fixes_faces(g, d, c):
                        raise RegularityError(
                            f"element {self.group.labels[g]} maps cell ({d},{c}) to "
                            "itself without fixing its faces"
                        )

    def _fixes_faces(self, g: int, d: int, c: int) -> bool:
        stack = [(d, c)]
        while stack:
            dd, cc = stack.pop()
            for f in self.boundary[dd][cc]:
                if self.action[g][dd - 1][f] != f:
                    return False
                stack.append((dd - 1, f))
        return True

    def dim_gset(self, d: int) -> GSet:
        return GSet(
            self.group, self.cells[d], [row[d] for row in self.action], validate=False
        )

    def chi_cellwise(self) -> BurnsideElement:
        """Alternating sum of the cell G-sets."""
        out = BurnsideElement.zero(self.group)
        for d in range(len(self.cells)):
            term = self.dim_gset(d).burnside_class()
            out = out + term if d % 2 == 0 else out - term
        return out

    def chi_strata(self) -> BurnsideElement:
        """Alternating orbit counts over the partition by stabilizer class."""
        tally: dict[int, int] = {}
        for d in range(len(self.cells)):
            sign = 1 if d % 2 == 0 else -1
            rows = [self.action[g][d] for g in range(self.group.order)]
            seen = [False] * self.cells[d]
            for c in range(self.cells[d]):
                if seen[c]:
                    continue
                orbit = [c]
                seen[c] = True
                queue = [c]
                while queue:
                    y = queue.pop()
                    for row in rows:
                        z = row[y]
                        if not seen[z]:
                            seen[z] = True
                            orbit.append(z)
                            queue.append(z)
                stab = tuple(
                    g for g in range(self.group.order) if self.action[g][d][c] == c
                )
                cls = self.group.class_of_subgroup(stab)
                tally[cls] = tally.get(cls, 0) + sign
        return BurnsideElement(self.group, tally)


class GCellularMap:
    """A dimension-wise cell permutation commuting with the group action
    and with the boundary incidence."""

    def __init__(self, complex_: GComplex, maps: Sequence[Sequence[int]], *, validate: bool = True):
        self.complex = complex_
        dims = len(complex_.cells)
        if len(maps) != dims:
            raise ActionError(f"map covers {len(maps)} dimensions, expected {dims}")
        self.maps = tuple(tuple(int(x) for x in per_dim) for per_dim in maps)
        if validate:
            self._validate()

    def _validate(self) -> None:
        cx = self.complex
        group = cx.group
        for d, perm in enumerate(self.maps):
            if sorted(perm) != list(range(cx.cells[d])):
                raise ActionError(f"map is not a bijection in dimension {d}")
        for g in group.generators:
            for d, perm in enumerate(self.maps):
                row = cx.action[g][d]
                for c in range(cx.cells[d]):
                    if row[perm[c]] != perm[row[c]]:
                        raise ActionError(
                            f"map does not commute with generator {group.labels[g]} "
                            f"on cell ({d},{c})"
                        )
        for d in range(1, len(cx.cells)):
            perm_d, perm_f = self.maps[d], self.maps[d - 1]
            for c in range(cx.cells[d]):
                image_faces = tuple(sorted(perm_f[f] for f in cx.boundary[d][c]))
                if image_faces != cx.boundary[d][perm_d[c]]:
                    raise ActionError(
                        f"map does not respect the boundary of cell ({d},{c})"
                    )

    def dim_gperm(self, d: int) -> GPermutation:
        cx = self.complex
        return GPermutation(
            cx.group,
            cx.cells[d],
            [row[d] for row in cx.action],
            self.maps[d],
            validate=False,
        )

    def z_period(self) -> int:
        return math.lcm(
            *(self.dim_gperm(d).z_period() for d in range(len(self.complex.cells)))
        ) if self.complex.cells else 1


def check_joint_regularity(k: GComplex, f: GCellularMap) -> None:
    """Whenever g∘f^m maps a cell to itself it must fix the cell's faces.

    Checked for every g and every power up to the combined period; reports a
    witness (element, power, cell) on failure.
    """
    group = k.group
    dims = len(k.cells)
    period = f.z_period()
    powers = [tuple(range(k.cells[d])) for d in range(dims)]
    for m in range(1, period + 1):
        powers = [
            tuple(f.maps[d][x] for x in powers[d]) for d in range(dims)
        ]
        for g in range(group.order):
            for d in range(dims):
                row = k.action[g][d]
                for c in range(k.cells[d]):
                    if row[powers[d][c]] != c:
                        continue
                    # g∘f^m fixes the cell; its faces must be fixed too
                    stack = [(d, c)]
                    while stack:
                        dd, cc = stack.pop()
                        for face in k.boundary[dd][cc]:
                            if k.action[g][dd - 1][powers[dd - 1][face]] != face:
                                raise RegularityError(
                                    f"g∘f^{m} with g={group.labels[g]} fixes cell "
                                    f"({d},{c}) but moves its face ({dd - 1},{face})"
                                )
                            stack.append((dd - 1, face))


def brute_zeta(k: GComplex, f: GCellularMap) -> ZGRingElement:
    """Alternating sum of the per-dimension classifications.

    By construction its Lefschetz data equals the equivariant Euler
    characteristic of the fixed subcomplex of each g∘f^m, so it serves as
    the oracle for the triangular solver.
    """
    if f.complex is not k:
        raise EqzetaError("map was built for a different complex")
    check_joint_regularity(k, f)
    out = ZGRingElement.zero(k.group)
    for d in range(len(k.cells)):
        term = classify(f.dim_gperm(d))
        out = out + term if d % 2 == 0 else out - term
    return out


def pair_lefschetz_table(k: GComplex, f: GCellularMap, m_max: int = 0) -> LefschetzTable:
    """Alternating combination of the per-dimension Lefschetz tables."""
    if m_max == 0:
        m_max = f.z_period()
    out = None
    for d in range(len(k.cells)):
        term = lefschetz_table(f.dim_gperm(d), m_max)
        if out is None:
            out = term
        else:
            out = out + term if d % 2 == 0 else out - term
    if out is None:
        raise EqzetaError("complex has no cells")
    return out


def chi_G_cellwise(k: GComplex) -> BurnsideElement:
    return k.chi_cellwise()


def chi_G_strata(k: GComplex) -> BurnsideElement:
    return k.chi_strata()
