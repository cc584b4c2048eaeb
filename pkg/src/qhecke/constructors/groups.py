"""Finite groups given by multiplication tables, and their pointed rings."""
from __future__ import annotations

from collections import Counter
from itertools import permutations, product

from ..fusion import FiniteRing, FusionError


class InvalidTable(FusionError):
    pass


class GroupTable:
    """A finite group.  ``mult[a][b]`` is the product ``ab``."""

    def __init__(self, name: str, elements, mult):
        self.name = name
        self.elements = list(elements)
        self.mult = {a: dict(row) for a, row in mult.items()}
        self._validate()
        self.identity = next(e for e in self.elements
                             if all(self.mult[e][x] == x == self.mult[x][e] for x in self.elements))
        self.inverse = {a: next(b for b in self.elements if self.mult[a][b] == self.identity)
                        for a in self.elements}

    def _validate(self):
        els = self.elements
        if len(set(els)) != len(els) or not els:
            raise InvalidTable(f"{self.name}: duplicate or empty element list")
        S = set(els)
        for a in els:
            row = self.mult.get(a)
            if row is None or set(row) != S or not set(row.values()) <= S:
                raise InvalidTable(f"{self.name}: incomplete row for {a!r}")
        for a, b, c in product(els, repeat=3):
            if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                raise InvalidTable(f"{self.name}: not associative at ({a!r}, {b!r}, {c!r})")
        ids = [e for e in els if all(self.mult[e][x] == x == self.mult[x][e] for x in els)]
        if len(ids) != 1:
            raise InvalidTable(f"{self.name}: no identity")
        e = ids[0]
        for a in els:
            if not any(self.mult[a][b] == e for b in els):
                raise InvalidTable(f"{self.name}: {a!r} has no inverse")

    def __call__(self, a, b):
        return self.mult[a][b]

    def order(self) -> int:
        return len(self.elements)

    def conjugacy_classes(self) -> list:
        seen, out = set(), []
        for a in self.elements:
            if a in seen:
                continue
            cls = {self(self(g, a), self.inverse[g]) for g in self.elements}
            seen |= cls
            out.append(sorted(cls, key=self.elements.index))
        return out

    def to_dict(self) -> dict:
        return {"name": self.name, "elements": self.elements,
                "mult": [[self.mult[a][b] for b in self.elements] for a in self.elements]}

    @classmethod
    def from_dict(cls, d: dict) -> "GroupTable":
        els = d["elements"]
        rows = d["mult"]
        if len(rows) != len(els) or any(len(r) != len(els) for r in rows):
            raise InvalidTable("multiplication table has wrong shape")
        return cls(d.get("name", "group"), els,
                   {a: dict(zip(els, rows[i])) for i, a in enumerate(els)})


def _perm_name(p) -> str:
    """Cycle notation on {1,..,n}; identity is ``e``."""
    n = len(p)
    seen, cycles = set(), []
    for i in range(n):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n: int = 3) -> GroupTable:
    """S_n with composition (ab)(x) = a(b(x))."""
    perms = sorted(permutations(range(n)), key=lambda p: (sum(p[i] != i for i in range(n)), p))
    names = {p: _perm_name(p) for p in perms}
    mult = {names[a]: {names[b]: names[tuple(a[b[i]] for i in range(n))] for b in perms} for a in perms}
    return GroupTable(f"S{n}", [names[p] for p in perms], mult)


def cyclic_group(n: int) -> GroupTable:
    els = [str(i) for i in range(n)]
    return GroupTable(f"Z{n}", els, {a: {b: str((int(a) + int(b)) % n) for b in els} for a in els})


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the n-gon: r^i s^j, of order 2n."""
    els = [(i, j) for j in (0, 1) for i in range(n)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    def nm(x):
        i, j = x
        return ("r%d" % i if i else "") + ("s" if j else "") or "e"

    return GroupTable(f"D{n}", [nm(x) for x in els], {nm(x): {nm(y): nm(mul(x, y)) for y in els} for x in els})


def trivial_group() -> GroupTable:
    return GroupTable("1", ["e"], {"e": {"e": "e"}})


def build_pointed_group(t: GroupTable) -> FiniteRing:
    els = t.elements
    return FiniteRing(
        name=f"pointed({t.name})",
        objects=els,
        unit=t.identity,
        conj=t.inverse,
        dims={a: 1 for a in els},
        qdims={a: 1 for a in els},
        table={(a, b): Counter({t(a, b): 1}) for a in els for b in els},
    )
