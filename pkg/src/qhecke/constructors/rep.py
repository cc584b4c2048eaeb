"""Representation rings ingested as data (``qhecke-ring/1`` documents)."""
from __future__ import annotations

import json
from collections import Counter
from importlib import resources

from ..fusion import FiniteRing, FusionError, FusionRing, fmt, frac, validate_ring

RING_FORMAT = "qhecke-ring/1"


class RingFormatError(FusionError):
    pass


class RingValidationError(FusionError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def ring_from_dict(d: dict, validate: bool = True) -> FiniteRing:
    if d.get("format") != RING_FORMAT:
        raise RingFormatError(f"expected format {RING_FORMAT!r}, got {d.get('format')!r}")
    try:
        objs = d["objects"]
        ids = [str(o["id"]) for o in objs]
        known = set(ids)
        for i, o in enumerate(objs):
            for fld in ("dim", "qdim", "conj"):
                if fld not in o:
                    raise RingFormatError(f"objects[{i}]: missing field {fld!r}")
            if str(o["conj"]) not in known:
                raise RingFormatError(f"objects[{i}].conj: unknown id {o['conj']!r}")
            try:
                frac(o["qdim"])
            except ValueError as e:
                raise RingFormatError(f"objects[{i}].qdim: {e}") from None
        table = {}
        for i, ent in enumerate(d["fusion"]):
            a, b = str(ent["left"]), str(ent["right"])
            for fld, x in (("left", a), ("right", b)):
                if x not in known:
                    raise RingFormatError(f"fusion[{i}].{fld}: unknown id {x!r}")
            dec = Counter()
            for j, (c, m) in enumerate(ent["decomp"]):
                if str(c) not in known:
                    raise RingFormatError(f"fusion[{i}].decomp[{j}]: unknown id {c!r}")
                if not isinstance(m, int) or m < 0:
                    raise RingFormatError(f"fusion[{i}].decomp[{j}]: bad multiplicity {m!r}")
                dec[str(c)] += m
            table[(a, b)] = dec
        unit = str(d["unit"])
        if unit not in known:
            raise RingFormatError(f"unit: unknown id {unit!r}")
    except (KeyError, TypeError) as e:
        raise RingFormatError(f"malformed ring document: {e}") from None
    missing = [(a, b) for a in ids for b in ids if (a, b) not in table]
    if missing:
        raise RingFormatError(f"fusion table incomplete, e.g. {missing[0]}")
    ring = FiniteRing(
        name=d.get("name", "ring"),
        objects=ids,
        unit=unit,
        conj={str(o["id"]): str(o["conj"]) for o in objs},
        dims={str(o["id"]): int(o["dim"]) for o in objs},
        qdims={str(o["id"]): frac(o["qdim"]) for o in objs},
        grades={str(o["id"]): int(o.get("grade", 0)) for o in objs},
        table=table,
        kac=bool(d.get("unimodular_kac", True)),
    )
    if validate:
        rep = validate_ring(ring, max(ring.grade(a) for a in ids) * 3)
        if not rep.passed:
            bad = [a for a in rep.axioms if not a.passed][0]
            raise RingValidationError(f"{ring.name}: axiom {bad.name} fails at {bad.witness}", rep)
    return ring


def ring_to_dict(ring: FusionRing, g: int = 0) -> dict:
    """Serialize the grade-g window of a ring (the whole ring if finite)."""
    objs = ring.objects_up_to(g)
    lab = ring.label
    window = set(objs)
    fusion = []
    for a in objs:
        for b in objs:
            dec = ring.fuse(a, b)
            if not all(c in window for c, _ in dec):
                continue
            fusion.append({"left": lab(a), "right": lab(b), "decomp": [[lab(c), m] for c, m in dec]})
    return {
        "format": RING_FORMAT,
        "name": ring.name,
        "unimodular_kac": bool(ring.kac),
        "unit": lab(ring.unit),
        "objects": [{"id": lab(a), "dim": ring.dim(a), "qdim": fmt(ring.qdim(a)),
                     "conj": lab(ring.conj(a)), "grade": ring.grade(a)} for a in objs],
        "fusion": fusion,
    }


def build_rep_ring(source) -> FiniteRing:
    """From a dict, a path, or the name of a shipped ring (``dual_s3`` ...)."""
    if isinstance(source, dict):
        return ring_from_dict(source)
    p = str(source)
    if p in shipped():
        text = resources.files("qhecke.data").joinpath(p + ".json").read_text()
    else:
        with open(p) as f:
            text = f.read()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise RingFormatError(f"{p}: line {e.lineno}: {e.msg}") from None
    return ring_from_dict(d)


def shipped() -> list:
    return ["dual_q8", "dual_s3", "dual_z2"]


def dual_s3() -> FiniteRing:
    return build_rep_ring("dual_s3")


def dual_z2() -> FiniteRing:
    return build_rep_ring("dual_z2")


def dual_q8() -> FiniteRing:
    return build_rep_ring("dual_q8")
