"""Recipe and subgroup documents, content hashes and report emission."""
from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

from ..constructors import (GroupTable, build_free_product, build_hnn_pair, build_pointed_group,
                            build_product, build_rep_ring, build_restricted_product, cyclic_group,
                            dihedral_group, explicit_recipe, factor_subgroup, multiples,
                            ring_from_dict, so3_in_su2, symmetric_group, trivial_group)
from ..constructors import baumslag_solitar_recipe, profinite_recipe, su2_center_recipe
from ..constructors.lazy import SU2Dual, ZRing
from ..cosets import SubgroupSet, close_subgroup, trivial_subgroup
from ..fusion import FusionError, FusionRing

RECIPE_FORMAT = "qhecke-recipe/1"
SUBGROUP_FORMAT = "qhecke-subgroup/1"


class InputError(FusionError):
    """Malformed or unreadable input; maps to exit code 4."""


def read_json(path) -> tuple[dict, str]:
    """Parsed document and the sha256 of the raw bytes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc, hashlib.sha256(raw).hexdigest()


# ---------------------------------------------------------------------------
# groups


def group_from_spec(spec) -> GroupTable:
    if isinstance(spec, dict):
        return GroupTable.from_dict(spec)
    if not isinstance(spec, str):
        raise InputError(f"group: expected a table or a name, got {spec!r}")
    s = spec.strip()
    if s in ("1", "trivial"):
        return trivial_group()
    kind, num = s[0], s[1:]
    if num.isdigit() and kind in "SZD":
        n = int(num)
        return {"S": symmetric_group, "Z": cyclic_group, "D": dihedral_group}[kind](n)
    raise InputError(f"group: unknown name {spec!r} (use S<n>, Z<n>, D<n> or trivial)")


# ---------------------------------------------------------------------------
# recipes


class Built:
    """A ring, an optional default subgroup, and the recipe object for HNN."""

    def __init__(self, ring: FusionRing, sub: SubgroupSet | None = None, hnn=None):
        self.ring, self.sub, self.hnn = ring, sub, hnn


def _need(payload, key, where):
    if key not in payload:
        raise InputError(f"{where}: missing field {key!r}")
    return payload[key]


def build_from_recipe(doc: dict, where="recipe") -> Built:
    if doc.get("format", RECIPE_FORMAT) != RECIPE_FORMAT:
        raise InputError(f"{where}.format: expected {RECIPE_FORMAT!r}")
    kind = _need(doc, "builder", where)
    if kind == "pointed-group":
        b = Built(build_pointed_group(group_from_spec(_need(doc, "group", where))))
    elif kind == "rep-ring":
        b = Built(build_rep_ring(_need(doc, "ring", where)))
    elif kind == "su2-dual":
        b = Built(SU2Dual())
    elif kind == "z":
        b = Built(ZRing())
    elif kind == "product":
        fs = [build_from_recipe(f, f"{where}.factors[{i}]").ring
              for i, f in enumerate(_need(doc, "factors", where))]
        if len(fs) != 2:
            raise InputError(f"{where}.factors: need exactly two factors")
        b = Built(build_product(*fs))
    elif kind == "restricted-product":
        plus = build_from_recipe(_need(doc, "plus", where), f"{where}.plus").ring
        minus = build_from_recipe(_need(doc, "minus", where), f"{where}.minus").ring
        b = Built(build_restricted_product(plus, minus))
    elif kind == "free-product":
        fs = [build_from_recipe(f, f"{where}.factors[{i}]").ring
              for i, f in enumerate(_need(doc, "factors", where))]
        if len(fs) != 2:
            raise InputError(f"{where}.factors: need exactly two factors")
        b = Built(build_free_product(*fs, tags=doc.get("tags")))
    elif kind == "hnn":
        b = _build_hnn(doc, where)
    else:
        raise InputError(f"{where}.builder: unknown builder {kind!r}")
    if "subgroup" in doc:
        b.sub = subgroup_from_spec(b, doc["subgroup"], doc.get("closure_grade", 10), f"{where}.subgroup")
    return b


def _build_hnn(doc, where) -> Built:
    kind = doc.get("kind", "profinite")
    if kind == "profinite":
        plus = minus = None
        if "plus" in doc:
            plus = build_from_recipe(doc["plus"], f"{where}.plus").ring
        if "minus" in doc:
            minus = build_from_recipe(doc["minus"], f"{where}.minus").ring
        rec = profinite_recipe(plus, minus)
    elif kind == "baumslag-solitar":
        rec = baumslag_solitar_recipe(int(doc.get("m", 2)), int(doc.get("n", 2)))
    elif kind == "su2-center":
        rec = su2_center_recipe()
        return Built(SU2Dual(), None, rec)
    elif kind == "explicit":
        base = build_from_recipe(_need(doc, "base", where), f"{where}.base").ring
        lab = {base.label(a): a for a in base.objects_up_to(0)}

        def ids(xs, fld):
            try:
                return [lab[str(x)] for x in xs]
            except KeyError as e:
                raise InputError(f"{where}.{fld}: unknown id {e.args[0]!r}") from None

        plus = ids(_need(doc, "plus", where), "plus")
        minus = ids(_need(doc, "minus", where), "minus")
        pairs = [tuple(ids(p, "theta")) for p in _need(doc, "theta", where)]
        rec = explicit_recipe(base, plus, minus, pairs, name=doc.get("name", "hnn"))
    else:
        raise InputError(f"{where}.kind: unknown HNN kind {kind!r}")
    ring, sub = build_hnn_pair(rec)
    return Built(ring, sub, rec)


def subgroup_from_spec(b: Built, spec, g: int, where="subgroup") -> SubgroupSet:
    ring = b.ring
    if isinstance(spec, str):
        return _named_subgroup(b, spec, where)
    if not isinstance(spec, dict):
        raise InputError(f"{where}: expected an object or a name")
    if "named" in spec:
        return _named_subgroup(b, spec["named"], where)
    key = "members" if "members" in spec else "seed" if "seed" in spec else None
    if key is None:
        raise InputError(f"{where}: need 'members', 'seed' or 'named'")
    objs = []
    for i, x in enumerate(spec[key]):
        try:
            objs.append(ring.by_label(str(x), g))
        except FusionError as e:
            raise InputError(f"{where}.{key}[{i}]: {e}") from None
    sub = close_subgroup(ring, objs, g, name=spec.get("name"))
    if key == "members" and sub.members is not None and sub.finite and set(sub.members) != set(objs) | {ring.unit}:
        raise InputError(f"{where}.members: not closed; closure adds "
                         f"{sorted(ring.label(a) for a in set(sub.members) - set(objs))}")
    return sub


def _named_subgroup(b: Built, name: str, where) -> SubgroupSet:
    ring = b.ring
    if name == "trivial":
        return trivial_subgroup(ring)
    if name == "base" and b.hnn is not None and hasattr(ring, "base_subgroup"):
        return ring.base_subgroup()
    if name == "so3" and isinstance(ring, SU2Dual):
        return so3_in_su2(ring)
    if name.startswith("multiples:") and isinstance(ring, ZRing):
        return multiples(ring, int(name.split(":")[1]))
    if name.startswith("factor:") and hasattr(ring, "f"):
        return factor_subgroup(ring, int(name.split(":")[1]))
    raise InputError(f"{where}: unknown subgroup name {name!r} for {ring.name}")


def load_structure(path, g: int) -> tuple[Built, dict]:
    """A ring file or a recipe file; returns the built data and input hashes."""
    doc, h = read_json(path)
    fmt_tag = doc.get("format")
    if fmt_tag == "qhecke-ring/1":
        return Built(ring_from_dict(doc)), {str(path): h}
    if fmt_tag == RECIPE_FORMAT:
        return build_from_recipe(doc, Path(path).name), {str(path): h}
    raise InputError(f"{path}.format: expected qhecke-ring/1 or {RECIPE_FORMAT}, got {fmt_tag!r}")


def load_subgroup(path, b: Built, g: int) -> tuple[SubgroupSet, dict]:
    doc, h = read_json(path)
    if doc.get("format") != SUBGROUP_FORMAT:
        raise InputError(f"{path}.format: expected {SUBGROUP_FORMAT!r}")
    return subgroup_from_spec(b, doc, g, Path(path).name), {str(path): h}


# ---------------------------------------------------------------------------
# reports


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(rows: list, header: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
