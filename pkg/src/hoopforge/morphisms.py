"""Structural layer: homomorphisms, filters, congruences, quotients,
isomorphism testing, and canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from hoopforge import kernels
from hoopforge.errors import (
    IndexOutOfRange,
    MalformedTable,
    NotACongruence,
    NotAFilter,
)
from hoopforge.hoops import FiniteHoop, leq, validate_hoop


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteHoop
    target: FiniteHoop
    map: tuple
    bounded: bool = False

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> frozenset:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self after other (other first)."""
        if other.target is not self.source and other.target != self.source:
            raise MalformedTable("composition endpoints do not match")
        return Homomorphism(other.source, self.target,
                            tuple(self.map[other.map[x]]
                                  for x in range(other.source.order)))


@dataclass(frozen=True)
class Filter:
    parent: FiniteHoop
    members: frozenset

    def sorted_members(self):
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class Congruence:
    parent: FiniteHoop
    classes: tuple     # tuple of sorted tuples, ordered by least element

    def class_of(self, x: int) -> int:
        for i, cls in enumerate(self.classes):
            if x in cls:
                return i
        raise IndexOutOfRange(f"element {x} not in any class")


def is_homomorphism(source: FiniteHoop, target: FiniteHoop, mapping,
                    bounded: bool = False):
    """Pointwise preservation check.

    Returns (True, None) or (False, witness) where the witness names the
    first failing operation and arguments.
    """
    mapping = tuple(mapping)
    if len(mapping) != source.order:
        raise IndexOutOfRange("map must be total on the source carrier")
    for v in mapping:
        if not 0 <= v < target.order:
            raise IndexOutOfRange(f"map value {v} outside target carrier")
    if mapping[source.unit] != target.unit:
        return False, {"op": "unit"}
    for x in range(source.order):
        for y in range(source.order):
            if mapping[source.mul[x][y]] != target.mul[mapping[x]][mapping[y]]:
                return False, {"op": "mul", "x": x, "y": y}
    for x in range(source.order):
        for y in range(source.order):
            if mapping[source.imp[x][y]] != target.imp[mapping[x]][mapping[y]]:
                return False, {"op": "imp", "x": x, "y": y}
    if bounded:
        if source.bottom is None or target.bottom is None:
            return False, {"op": "bottom", "reason": "missing bottom"}
        if mapping[source.bottom] != target.bottom:
            return False, {"op": "bottom"}
    return True, None


def homomorphism(source, target, mapping, bounded=False) -> Homomorphism:
    ok, witness = is_homomorphism(source, target, mapping, bounded)
    if not ok:
        raise MalformedTable(f"not a homomorphism: fails at {witness}")
    return Homomorphism(source, target, tuple(mapping), bounded)


def identity_hom(h: FiniteHoop) -> Homomorphism:
    return Homomorphism(h, h, tuple(range(h.order)))


# ---------------------------------------------------------------------------
# filters and congruences

def _is_filter_set(h: FiniteHoop, members) -> bool:
    if h.unit not in members:
        return False
    for x in members:
        for y in members:
            if h.mul[x][y] not in members:
                return False
        for y in range(h.order):
            if leq(h, x, y) and y not in members:
                return False
    return True


def make_filter(h: FiniteHoop, members) -> Filter:
    members = frozenset(members)
    for x in members:
        if not 0 <= x < h.order:
            raise IndexOutOfRange(f"filter member {x} outside carrier")
    if not _is_filter_set(h, members):
        raise NotAFilter(f"{sorted(members)} is not a filter")
    return Filter(h, members)


def kernel(hom: Homomorphism) -> Filter:
    """Preimage of the target unit; always a filter."""
    members = frozenset(x for x in range(hom.source.order)
                        if hom.map[x] == hom.target.unit)
    return make_filter(hom.source, members)


def _filters_by_scan(h: FiniteHoop):
    n = h.order
    rest = [x for x in range(n) if x != h.unit]
    out = []
    for mask in range(1 << len(rest)):
        members = {h.unit}
        for i, x in enumerate(rest):
            if (mask >> i) & 1:
                members.add(x)
        if _is_filter_set(h, members):
            out.append(frozenset(members))
    return out


def _filter_closure(h: FiniteHoop, seed) -> frozenset:
    members = set(seed) | {h.unit}
    changed = True
    while changed:
        changed = False
        for x in list(members):
            for y in list(members):
                v = h.mul[x][y]
                if v not in members:
                    members.add(v)
                    changed = True
            for y in range(h.order):
                if leq(h, x, y) and y not in members:
                    members.add(y)
                    changed = True
    return frozenset(members)


def _filters_by_closure(h: FiniteHoop):
    # closure-system enumeration: grow filters one generator at a time
    start = _filter_closure(h, ())
    seen = {start}
    queue = [start]
    while queue:
        f = queue.pop()
        for x in range(h.order):
            if x in f:
                continue
            g = _filter_closure(h, f | {x})
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return list(seen)


def filters(h: FiniteHoop, force_scan: bool = False) -> list:
    """All filters, sorted by size then lexicographic membership."""
    if h.order <= 6 or force_scan:
        found = _filters_by_scan(h)
    else:
        found = _filters_by_closure(h)
    found.sort(key=lambda m: (len(m), tuple(sorted(m))))
    return [Filter(h, m) for m in found]


def congruence_of_filter(h: FiniteHoop, f: Filter) -> Congruence:
    """Classes of theta_F: x ~ y iff (x -> y) * (y -> x) in F."""
    if not _is_filter_set(h, f.members):
        raise NotAFilter(f"{sorted(f.members)} is not a filter")

    def related(x, y):
        return h.mul[h.imp[x][y]][h.imp[y][x]] in f.members

    classes = []
    assigned = [-1] * h.order
    for x in range(h.order):
        if assigned[x] >= 0:
            continue
        cls = [y for y in range(h.order) if related(x, y)]
        for y in cls:
            assigned[y] = len(classes)
        classes.append(tuple(sorted(cls)))
    cong = Congruence(h, tuple(sorted(classes)))
    _check_congruence(h, cong)
    return cong


def _check_congruence(h: FiniteHoop, cong: Congruence):
    rep = {}
    for i, cls in enumerate(cong.classes):
        for x in cls:
            if x in rep:
                raise NotACongruence("classes overlap")
            rep[x] = i
    if len(rep) != h.order:
        raise NotACongruence("classes do not cover the carrier")
    for x in range(h.order):
        for y in range(h.order):
            for u in range(h.order):
                for v in range(h.order):
                    if rep[x] == rep[u] and rep[y] == rep[v]:
                        if rep[h.mul[x][y]] != rep[h.mul[u][v]]:
                            raise NotACongruence(
                                f"mul not compatible at {(x, y)} ~ {(u, v)}")
                        if rep[h.imp[x][y]] != rep[h.imp[u][v]]:
                            raise NotACongruence(
                                f"imp not compatible at {(x, y)} ~ {(u, v)}")


def filter_of_congruence(h: FiniteHoop, cong: Congruence) -> Filter:
    """The class of the unit."""
    _check_congruence(h, cong)
    for cls in cong.classes:
        if h.unit in cls:
            return make_filter(h, cls)
    raise NotACongruence("no class contains the unit")


def quotient(h: FiniteHoop, f: Filter):
    """Quotient hoop and the canonical projection; kernel(projection) = F."""
    cong = congruence_of_filter(h, f)
    rep = {}
    for i, cls in enumerate(cong.classes):
        for x in cls:
            rep[x] = i
    n = len(cong.classes)
    mul = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for i, ci in enumerate(cong.classes):
        for j, cj in enumerate(cong.classes):
            mul[i][j] = rep[h.mul[ci[0]][cj[0]]]
            imp[i][j] = rep[h.imp[ci[0]][cj[0]]]
    bottom = None if h.bottom is None else rep[h.bottom]
    q = validate_hoop(n, rep[h.unit], mul, imp, bottom)
    proj = homomorphism(h, q, tuple(rep[x] for x in range(h.order)))
    return q, proj


# ---------------------------------------------------------------------------
# homomorphism search

def _search_order(h: FiniteHoop):
    # unit first, then descending constraint degree (how many distinct
    # values the element's rows touch); deterministic tie-break by index
    def degree(x):
        vals = set(h.mul[x]) | set(h.imp[x])
        vals |= {h.imp[y][x] for y in range(h.order)}
        return len(vals)

    rest = sorted((x for x in range(h.order) if x != h.unit),
                  key=lambda x: (-degree(x), x))
    return [h.unit] + rest


def all_homs(source: FiniteHoop, target: FiniteHoop,
             require_injective: bool = False,
             require_surjective: bool = False) -> list:
    """All homomorphisms source -> target by pruned backtracking."""
    order = _search_order(source)
    n, m = source.order, target.order
    mapping = [-1] * n
    used = [0] * m
    out = []

    def consistent(x):
        for y in range(n):
            if mapping[y] < 0:
                continue
            for (tab_s, tab_t) in ((source.mul, target.mul),
                                   (source.imp, target.imp)):
                v = mapping[tab_s[x][y]]
                if v >= 0 and v != tab_t[mapping[x]][mapping[y]]:
                    return False
                v = mapping[tab_s[y][x]]
                if v >= 0 and v != tab_t[mapping[y]][mapping[x]]:
                    return False
        return True

    def dfs(i):
        if i == len(order):
            out.append(Homomorphism(source, target, tuple(mapping)))
            return
        x = order[i]
        if mapping[x] >= 0:
            dfs(i + 1)
            return
        for t in range(m):
            if require_injective and used[t]:
                continue
            mapping[x] = t
            used[t] += 1
            if consistent(x):
                dfs(i + 1)
            mapping[x] = -1
            used[t] -= 1

    mapping[source.unit] = target.unit
    used[target.unit] += 1
    dfs(1)
    out.sort(key=lambda hm: hm.map)
    if require_injective:
        out = [hm for hm in out if hm.is_injective()]
    if require_surjective:
        out = [hm for hm in out if hm.is_surjective()]
    return out


def subalgebra(h: FiniteHoop, members):
    """Sub-hoop on a mul/imp-closed subset containing the unit.

    Members keep their relative order; the bottom constant carries over
    only when it belongs to the subset.  Returns (sub, embedding).
    """
    elems = sorted(set(members))
    if h.unit not in elems:
        raise MalformedTable("subalgebra must contain the unit")
    index = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    mul = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            for tab, sub in ((h.mul, mul), (h.imp, imp)):
                v = tab[x][y]
                if v not in index:
                    raise MalformedTable(
                        f"subset not closed: {x} op {y} = {v}")
                sub[i][j] = index[v]
    bottom = index.get(h.bottom) if h.bottom is not None else None
    s = validate_hoop(n, index[h.unit], mul, imp, bottom)
    return s, Homomorphism(s, h, tuple(elems))


def iso(h1: FiniteHoop, h2: FiniteHoop) -> Optional[Homomorphism]:
    """A hoop isomorphism, or None."""
    if h1.order != h2.order:
        return None
    perm = kernels.iso_tables(
        h1.order, h1.unit, h1.mul_flat(), h1.imp_flat(),
        h2.order, h2.unit, h2.mul_flat(), h2.imp_flat())
    if perm is None:
        return None
    return Homomorphism(h1, h2, tuple(perm))


def canonical_form(h: FiniteHoop):
    """Canonical representative (unit last) and the relabeling onto it."""
    perm, mul_flat, imp_flat = kernels.canonical_tables(
        h.order, h.unit, h.mul_flat(), h.imp_flat())
    n = h.order
    bottom = None if h.bottom is None else perm[h.bottom]
    canon = FiniteHoop(n, n - 1, kernels.unflatten(mul_flat, n),
                       kernels.unflatten(imp_flat, n), bottom)
    return canon, Homomorphism(h, canon, tuple(perm))
