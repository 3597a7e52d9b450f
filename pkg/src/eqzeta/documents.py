"""Document schemas, parsing and rendering for the command-line tool.

Documents are JSON objects with an explicit ``kind`` tag: group, gperm,
strata, lefschetz, expr, or complex.  Group references inside other
documents are either an inline group object or a path string relative to
the referencing file.  Diagnostics carry a field path such as
``strata[2].n`` and, for syntax errors, the line reported by the JSON
parser.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .burnside import BurnsideElement
from .complexes import GCellularMap, GComplex
from .errors import DocumentError, EqzetaError
from .gperm import GPermutation, LefschetzTable, coset_representatives
from .groups import FiniteGroup, build_group
from .zg import ClassicalZeta, TripleClass, ZGRingElement, canonical_pair, canonical_triple
from .zeta import StratumRecord

KINDS = ("group", "gperm", "strata", "lefschetz", "expr", "complex")


@dataclass
class InputDocument:
    kind: str
    group: FiniteGroup
    payload: Any
    raw_group: Any


def parse_document(text: str, base_dir: str | Path | None = None) -> InputDocument:
    """Parse and validate a document, or raise DocumentError with a location."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_object(obj, base_dir=base_dir)


def parse_document_file(path: str | Path) -> InputDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    try:
        return parse_document(text, base_dir=path.parent)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def parse_object(obj: Any, base_dir: str | Path | None = None) -> InputDocument:
    if not isinstance(obj, dict):
        raise DocumentError("document root must be an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    if kind == "group":
        return InputDocument(kind, _group_from(obj, "", base_dir), None, obj)
    raw_group = _need(obj, "group", "")
    group = _group_from(raw_group, "group", base_dir)
    if kind == "gperm":
        payload = _parse_gperm(obj, group)
    elif kind == "strata":
        payload = _parse_strata(obj, group)
    elif kind == "lefschetz":
        payload = _parse_lefschetz(obj, group)
    elif kind == "expr":
        payload = _parse_expr(obj, group)
    else:
        payload = _parse_complex(obj, group)
    return InputDocument(kind, group, payload, raw_group)


# -- field helpers -----------------------------------------------------------


def _loc(path: str, key: str | int) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _need(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise DocumentError(f"{_loc(path, key)}: missing field")
    return obj[key]


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{path}: expected an integer, got {value!r}")
    return value


def _as_int_list(value: Any, path: str) -> list[int]:
    if not isinstance(value, list):
        raise DocumentError(f"{path}: expected an array of integers")
    return [_as_int(x, _loc(path, i)) for i, x in enumerate(value)]


def _element(group: FiniteGroup, value: Any, path: str) -> int:
    g = _as_int(value, path)
    if not 0 <= g < group.order:
        raise DocumentError(f"{path}: element index {g} out of range 0..{group.order - 1}")
    return g


def _wrap(path: str, exc: EqzetaError) -> DocumentError:
    return DocumentError(f"{path}: {exc}")


# -- per-kind parsers --------------------------------------------------------


def _group_from(value: Any, path: str, base_dir: str | Path | None) -> FiniteGroup:
    if isinstance(value, str):
        ref = Path(value)
        if base_dir is not None and not ref.is_absolute():
            ref = Path(base_dir) / ref
        doc = parse_document_file(ref)
        if doc.kind != "group":
            raise DocumentError(f"{path}: referenced document is not a group")
        return doc.group
    if not isinstance(value, dict):
        raise DocumentError(f"{path}: expected a group object or a path string")
    if "kind" in value and value["kind"] != "group":
        raise DocumentError(f"{_loc(path, 'kind')}: expected 'group'")
    try:
        return build_group(value)
    except KeyError as exc:
        raise DocumentError(f"{path}: missing field {exc.args[0]!r}") from None
    except EqzetaError as exc:
        raise _wrap(path or "group", exc) from None


def _parse_gperm(obj: dict, group: FiniteGroup) -> GPermutation:
    n = _as_int(_need(obj, "points", ""), "points")
    if n < 0:
        raise DocumentError("points: must be nonnegative")
    action = _need(obj, "action", "")
    if not isinstance(action, list):
        raise DocumentError("action: expected an array of image arrays")
    if len(action) != len(group.generators):
        raise DocumentError(
            f"action: {len(action)} image arrays given, group has "
            f"{len(group.generators)} generators"
        )
    images = [_as_int_list(row, _loc("action", i)) for i, row in enumerate(action)]
    sigma = _as_int_list(_need(obj, "sigma", ""), "sigma")
    try:
        return GPermutation.from_generator_images(group, n, images, sigma)
    except EqzetaError as exc:
        raise _wrap("gperm", exc) from None


def _parse_strata(obj: dict, group: FiniteGroup) -> list[StratumRecord]:
    raw = _need(obj, "strata", "")
    if not isinstance(raw, list):
        raise DocumentError("strata: expected an array")
    records = []
    for i, item in enumerate(raw):
        path = _loc("strata", i)
        if not isinstance(item, dict):
            raise DocumentError(f"{path}: expected an object")
        record = StratumRecord(
            chi=_as_int(_need(item, "chi", path), _loc(path, "chi")),
            m=_as_int(_need(item, "m", path), _loc(path, "m")),
            n=_as_int(_need(item, "n", path), _loc(path, "n")),
            subgroup=tuple(
                _element(group, x, _loc(_loc(path, "H"), j))
                for j, x in enumerate(_as_int_list(_need(item, "H", path), _loc(path, "H")))
            ),
            alpha=_element(group, _need(item, "alpha", path), _loc(path, "alpha")),
        )
        try:
            record.validate(group)
        except EqzetaError as exc:
            raise _wrap(path, exc) from None
        records.append(record)
    return records


def _parse_lefschetz(obj: dict, group: FiniteGroup) -> LefschetzTable:
    m_max = _as_int(_need(obj, "m_max", ""), "m_max")
    if m_max < 1:
        raise DocumentError("m_max: must be positive")
    raw = _need(obj, "entries", "")
    if not isinstance(raw, list):
        raise DocumentError("entries: expected an array")
    classes = group.subgroup_classes.classes
    values: dict[tuple[int, int], dict] = {}
    by_pair: dict[tuple[int, int, int], int] = {}
    source: dict[tuple[int, int, int], str] = {}
    for i, item in enumerate(raw):
        path = _loc("entries", i)
        if not isinstance(item, dict):
            raise DocumentError(f"{path}: expected an object")
        h_value = _need(item, "H", path)
        if isinstance(h_value, list):
            elems = tuple(
                _element(group, x, _loc(_loc(path, "H"), j))
                for j, x in enumerate(h_value)
            )
        else:
            cls = _as_int(h_value, _loc(path, "H"))
            if not 0 <= cls < len(classes):
                raise DocumentError(f"{_loc(path, 'H')}: class id {cls} out of range")
            elems = classes[cls].elements
        g = _element(group, _need(item, "g", path), _loc(path, "g"))
        m = _as_int(_need(item, "m", path), _loc(path, "m"))
        if not 1 <= m <= m_max:
            raise DocumentError(f"{_loc(path, 'm')}: must lie in 1..m_max={m_max}")
        value = _as_int(_need(item, "value", path), _loc(path, "value"))
        try:
            h_class, alpha = canonical_pair(group, elems, g)
        except EqzetaError as exc:
            raise _wrap(path, exc) from None
        key = (h_class, m, alpha)
        if key in by_pair and by_pair[key] != value:
            raise DocumentError(
                f"{path}: conflicts with {source[key]} "
                f"(same class up to conjugation, values {by_pair[key]} != {value})"
            )
        by_pair[key] = value
        source[key] = path
    # spread conjugation-invariant values over all coset representatives
    entries: dict = {}
    for h_class, rep in enumerate(classes):
        for a in coset_representatives(group, rep.elements):
            pair = canonical_pair(group, rep.elements, a)
            for m in range(1, m_max + 1):
                entries[(h_class, m, a)] = by_pair.get((pair[0], m, pair[1]), 0)
    return LefschetzTable(group, m_max, entries)


def _parse_expr(obj: dict, group: FiniteGroup) -> ZGRingElement:
    raw = _need(obj, "terms", "")
    if not isinstance(raw, list):
        raise DocumentError("terms: expected an array")
    coeffs: dict[TripleClass, int] = {}
    for i, item in enumerate(raw):
        path = _loc("terms", i)
        if not isinstance(item, dict):
            raise DocumentError(f"{path}: expected an object")
        coeff = _as_int(_need(item, "coeff", path), _loc(path, "coeff"))
        elems = tuple(
            _element(group, x, _loc(_loc(path, "H"), j))
            for j, x in enumerate(_as_int_list(_need(item, "H", path), _loc(path, "H")))
        )
        m = _as_int(_need(item, "m", path), _loc(path, "m"))
        alpha = _element(group, _need(item, "alpha", path), _loc(path, "alpha"))
        try:
            t = canonical_triple(group, elems, m, alpha)
        except EqzetaError as exc:
            raise _wrap(path, exc) from None
        coeffs[t] = coeffs.get(t, 0) + coeff
    return ZGRingElement(group, coeffs)


def _parse_complex(obj: dict, group: FiniteGroup) -> tuple[GComplex, GCellularMap | None]:
    cells = _as_int_list(_need(obj, "cells", ""), "cells")
    raw_boundary = _need(obj, "boundary", "")
    if not isinstance(raw_boundary, list) or len(raw_boundary) != len(cells):
        raise DocumentError(
            f"boundary: expected one array per dimension ({len(cells)})"
        )
    boundary = []
    for d, per_dim in enumerate(raw_boundary):
        if not isinstance(per_dim, list):
            raise DocumentError(f"boundary[{d}]: expected an array")
        boundary.append(
            [_as_int_list(faces, _loc(_loc("boundary", d), i)) for i, faces in enumerate(per_dim)]
        )
    raw_action = _need(obj, "action", "")
    if not isinstance(raw_action, list) or len(raw_action) != len(group.generators):
        raise DocumentError(
            f"action: expected one entry per group generator ({len(group.generators)})"
        )
    images = []
    for i, per_gen in enumerate(raw_action):
        if not isinstance(per_gen, list) or len(per_gen) != len(cells):
            raise DocumentError(
                f"action[{i}]: expected one image array per dimension ({len(cells)})"
            )
        images.append(
            [_as_int_list(row, _loc(_loc("action", i), d)) for d, row in enumerate(per_gen)]
        )
    try:
        complex_ = GComplex.from_generator_images(group, cells, boundary, images)
    except EqzetaError as exc:
        raise _wrap("complex", exc) from None
    cellular_map = None
    if "sigma" in obj:
        raw_sigma = obj["sigma"]
        if not isinstance(raw_sigma, list) or len(raw_sigma) != len(cells):
            raise DocumentError(
                f"sigma: expected one image array per dimension ({len(cells)})"
            )
        maps = [_as_int_list(row, _loc("sigma", d)) for d, row in enumerate(raw_sigma)]
        try:
            cellular_map = GCellularMap(complex_, maps)
        except EqzetaError as exc:
            raise _wrap("sigma", exc) from None
    return complex_, cellular_map


# -- rendering ---------------------------------------------------------------


def render_element(x: BurnsideElement | ZGRingElement | ClassicalZeta) -> str:
    """Canonical text form of a computed element."""
    return x.render()


def structured_zg(doc_group: Any, z: ZGRingElement, classical: bool = True) -> dict:
    group = z.group
    terms = []
    for t in sorted(z.coeffs):
        rep = group.subgroup_classes.classes[t.h_class]
        terms.append(
            {
                "coeff": z.coeffs[t],
                "H": list(rep.elements),
                "m": t.m,
                "alpha": t.alpha,
            }
        )
    out = {"kind": "expr", "group": doc_group, "terms": terms}
    if classical:
        out["classical"] = structured_classical(z.forget_to_classical())
    return out


def structured_classical(c: ClassicalZeta) -> dict:
    return {"factors": [{"m": m, "s": s} for m, s in c.factors]}


def structured_burnside(doc_group: Any, b: BurnsideElement) -> dict:
    group = b.group
    terms = []
    for cls in sorted(b.coeffs, reverse=True):
        rep = group.subgroup_classes.classes[cls]
        terms.append(
            {
                "coeff": b.coeffs[cls],
                "H_class": cls,
                "H": list(rep.elements),
                "label": group.subgroup_label(cls),
            }
        )
    return {"group": doc_group, "terms": terms}


def structured_lefschetz(doc_group: Any, table: LefschetzTable) -> dict:
    entries = [
        {"H": h, "g": a, "m": m, "value": v}
        for (h, m, a), v in sorted(table.entries.items())
        if v
    ]
    return {
        "kind": "lefschetz",
        "group": doc_group,
        "m_max": table.m_max,
        "entries": entries,
    }
