"""Finite hoops as operation tables: validation, order structure,
variety classification, standard chains, products, and enumeration.

Elements are dense indices 0..n-1.  A bounded hoop is a hoop with an
optional bottom constant, not a separate type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from hoopforge import kernels
from hoopforge.errors import (
    AxiomViolation,
    BudgetExceeded,
    IndexOutOfRange,
    MalformedTable,
    NotBasic,
    NotBounded,
)

DEFAULT_BUDGET = 10 ** 8

# Names of the defining identities, used in witnesses and reports.
AXIOM_NAMES = {
    "i.comm": "x * y = y * x",
    "i.assoc": "(x * y) * z = x * (y * z)",
    "i.unit": "x * 1 = x",
    "ii": "x -> x = 1",
    "iii": "x * (x -> y) = y * (y -> x)",
    "iv": "(x * y) -> z = x -> (y -> z)",
    "v": "0 -> x = 1",
}


@dataclass(frozen=True)
class FiniteHoop:
    """A validated finite hoop; construct through validate_hoop."""

    order: int
    unit: int
    mul: tuple
    imp: tuple
    bottom: Optional[int] = None

    @property
    def elements(self):
        return range(self.order)

    def mul_flat(self):
        return kernels.flatten(self.mul)

    def imp_flat(self):
        return kernels.flatten(self.imp)

    def with_bottom(self) -> "FiniteHoop":
        """Designate the order minimum as the bottom constant."""
        if self.bottom is not None:
            return self
        return FiniteHoop(self.order, self.unit, self.mul, self.imp,
                          minimum(self))

    def without_bottom(self) -> "FiniteHoop":
        if self.bottom is None:
            return self
        return FiniteHoop(self.order, self.unit, self.mul, self.imp, None)

    def __repr__(self):
        b = f", bottom={self.bottom}" if self.bottom is not None else ""
        return f"FiniteHoop(order={self.order}, unit={self.unit}{b})"


@dataclass(frozen=True)
class VarietyReport:
    is_hoop: bool
    is_bounded: bool
    is_basic: bool
    is_wajsberg: bool
    is_godel: bool
    is_product: bool
    is_involutive: Optional[bool]
    counterexample: Optional[tuple]
    witnesses: tuple

    def flag(self, variety: str) -> bool:
        return {
            "hoop": self.is_hoop,
            "bounded": self.is_bounded,
            "basic": self.is_basic,
            "wajsberg": self.is_wajsberg,
            "godel": self.is_godel,
            "product": self.is_product,
            "involutive": bool(self.is_involutive),
        }[variety]


def _check_table(table, n, name):
    if len(table) != n:
        raise MalformedTable(f"{name} table has {len(table)} rows, expected {n}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(
                f"{name} table row {i} has {len(row)} entries, expected {n}")
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(
                    f"{name} table entry {v!r} at row {i} out of range 0..{n - 1}")


def validate_hoop(order, unit, mul, imp, bottom=None) -> FiniteHoop:
    """Check all hoop axioms exhaustively and return the validated algebra.

    Raises MalformedTable for shape problems and AxiomViolation with the
    first failing axiom and a witness assignment otherwise.
    """
    if not isinstance(order, int) or order < 1:
        raise MalformedTable(f"order must be a positive integer, got {order!r}")
    mul = tuple(tuple(row) for row in mul)
    imp = tuple(tuple(row) for row in imp)
    _check_table(mul, order, "mul")
    _check_table(imp, order, "imp")
    if not 0 <= unit < order:
        raise MalformedTable(f"unit index {unit} out of range")
    if bottom is not None and not 0 <= bottom < order:
        raise MalformedTable(f"bottom index {bottom} out of range")
    w = kernels.hoop_axiom_witness(
        order, unit, kernels.flatten(mul), kernels.flatten(imp),
        -1 if bottom is None else bottom)
    if w is not None:
        code, x, y, z = w
        names = "xyz"
        witness = {names[i]: v for i, v in enumerate((x, y, z)) if v >= 0}
        raise AxiomViolation(code, witness)
    # The natural order is a partial order with top `unit`: reflexivity
    # is axiom (ii); antisymmetry and transitivity follow, but we check
    # them directly so a violation points at the order rather than at a
    # derived failure later.
    up = [0] * order
    for x in range(order):
        for y in range(order):
            if imp[x][y] == unit:
                up[x] |= 1 << y
    for x in range(order):
        if not (up[x] >> unit) & 1:
            raise AxiomViolation("order.top", {"x": x})
        m = up[x]
        while m:
            y = (m & -m).bit_length() - 1
            m &= m - 1
            if y != x and (up[y] >> x) & 1:
                raise AxiomViolation("order.antisym", {"x": min(x, y), "y": max(x, y)})
            if up[y] & ~up[x]:
                z = ((up[y] & ~up[x]) & -(up[y] & ~up[x])).bit_length() - 1
                raise AxiomViolation("order.trans", {"x": x, "y": y, "z": z})
    return FiniteHoop(order, unit, mul, imp, bottom)


def _check_elem(h, x):
    if not 0 <= x < h.order:
        raise IndexOutOfRange(f"element {x} out of range 0..{h.order - 1}")


def leq(h: FiniteHoop, x: int, y: int, self_check: bool = False) -> bool:
    """Natural order: x <= y iff x -> y = 1."""
    _check_elem(h, x)
    _check_elem(h, y)
    r = h.imp[x][y] == h.unit
    if self_check:
        # the divisibility form of the natural order must agree
        assert r == any(h.mul[z][y] == x for z in range(h.order))
    return r


def minimum(h: FiniteHoop) -> int:
    """The least element of the natural order (every finite hoop has one)."""
    for x in range(h.order):
        if all(leq(h, x, y) for y in range(h.order)):
            return x
    raise AxiomViolation("order.minimum", {})


def meet(h: FiniteHoop, x: int, y: int, self_check: bool = False) -> int:
    """x /\\ y = x * (x -> y); the infimum for the natural order."""
    _check_elem(h, x)
    _check_elem(h, y)
    m = h.mul[x][h.imp[x][y]]
    if self_check:
        lower = [z for z in range(h.order) if leq(h, z, x) and leq(h, z, y)]
        assert m in lower and all(leq(h, z, m) for z in lower)
    return m


def join(h: FiniteHoop, x: int, y: int, self_check: bool = False) -> int:
    """x \\/ y = ((x -> y) -> y) /\\ ((y -> x) -> x); basic hoops only."""
    _check_elem(h, x)
    _check_elem(h, y)
    if not classify(h).is_basic:
        raise NotBasic("join is only the supremum on basic hoops")
    j = meet(h, h.imp[h.imp[x][y]][y], h.imp[h.imp[y][x]][x])
    if self_check:
        upper = [z for z in range(h.order) if leq(h, x, z) and leq(h, y, z)]
        assert j in upper and all(leq(h, j, z) for z in upper)
    return j


def _scan_identity(h, name, arity, fails):
    """Lexicographically first failing assignment, or None."""
    n = h.order
    if arity == 1:
        for x in range(n):
            if fails(x):
                return (name, {"x": x})
    elif arity == 2:
        for x in range(n):
            for y in range(n):
                if fails(x, y):
                    return (name, {"x": x, "y": y})
    else:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if fails(x, y, z):
                        return (name, {"x": x, "y": y, "z": z})
    return None


@lru_cache(maxsize=None)
def classify(h: FiniteHoop) -> VarietyReport:
    """Evaluate the defining identity of every subvariety exhaustively."""
    mul, imp, unit = h.mul, h.imp, h.unit

    def basic_fails(x, y, z):
        return imp[imp[imp[x][y]][z]][imp[imp[imp[y][x]][z]][z]] != unit

    def wajsberg_fails(x, y):
        return imp[imp[x][y]][y] != imp[imp[y][x]][x]

    def godel_fails(x):
        return mul[x][x] != x

    witnesses = []
    w_basic = _scan_identity(h, "basic", 3, basic_fails)
    w_waj = _scan_identity(h, "wajsberg", 2, wajsberg_fails)
    is_basic = w_basic is None
    if w_basic:
        witnesses.append(w_basic)
    if w_waj:
        witnesses.append(w_waj)
    w_godel = _scan_identity(h, "godel", 1, godel_fails)
    is_godel = is_basic and w_godel is None
    if w_godel:
        witnesses.append(w_godel)

    is_product = False
    if is_basic:
        def product_fails(x, y, z):
            lhs = imp[y][z]
            rhs = imp[imp[y][mul[x][y]]][x]
            return meet(h, imp[imp[lhs][rhs]][rhs], imp[imp[rhs][lhs]][lhs]) != unit

        w_prod = _scan_identity(h, "product", 3, product_fails)
        is_product = w_prod is None
        if w_prod:
            witnesses.append(w_prod)
    elif w_basic:
        witnesses.append(("product", w_basic[1]))

    is_involutive = None
    if h.bottom is not None:
        b = h.bottom

        def inv_fails(x):
            return imp[imp[x][b]][b] != x

        w_inv = _scan_identity(h, "involutive", 1, inv_fails)
        is_involutive = w_inv is None
        if w_inv:
            witnesses.append(w_inv)

    counterexample = witnesses[0] if witnesses else None
    return VarietyReport(
        is_hoop=True,
        is_bounded=h.bottom is not None,
        is_basic=is_basic,
        is_wajsberg=w_waj is None,
        is_godel=is_godel,
        is_product=is_product,
        is_involutive=is_involutive,
        counterexample=counterexample,
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# standard chains and products

def lukasiewicz_chain(n: int) -> FiniteHoop:
    """Bounded Wajsberg chain on n equally spaced points of [0, 1]."""
    if n < 1:
        raise MalformedTable("chain length must be >= 1")
    m = n - 1
    mul = [[max(i + j - m, 0) for j in range(n)] for i in range(n)]
    imp = [[min(m - i + j, m) for j in range(n)] for i in range(n)]
    return validate_hoop(n, m, mul, imp, bottom=0)


def godel_chain(n: int) -> FiniteHoop:
    """Bounded Gödel chain: mul = min, imp(x, y) = 1 if x <= y else y."""
    if n < 1:
        raise MalformedTable("chain length must be >= 1")
    m = n - 1
    mul = [[min(i, j) for j in range(n)] for i in range(n)]
    imp = [[m if i <= j else j for j in range(n)] for i in range(n)]
    return validate_hoop(n, m, mul, imp, bottom=0)


def trivial_hoop(bounded: bool = False) -> FiniteHoop:
    return FiniteHoop(1, 0, ((0,),), ((0,),), 0 if bounded else None)


def pair_index(h1: FiniteHoop, h2: FiniteHoop, x1: int, x2: int) -> int:
    return x1 * h2.order + x2


def direct_product(h1: FiniteHoop, h2: FiniteHoop) -> FiniteHoop:
    """Componentwise product; element (x1, x2) gets index x1*|H2| + x2."""
    n1, n2 = h1.order, h2.order
    n = n1 * n2

    def idx(a, b):
        return a * n2 + b

    mul = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    i, j = idx(a1, a2), idx(b1, b2)
                    mul[i][j] = idx(h1.mul[a1][b1], h2.mul[a2][b2])
                    imp[i][j] = idx(h1.imp[a1][b1], h2.imp[a2][b2])
    bottom = None
    if h1.bottom is not None and h2.bottom is not None:
        bottom = idx(h1.bottom, h2.bottom)
    return validate_hoop(n, idx(h1.unit, h2.unit), mul, imp, bottom)


# ---------------------------------------------------------------------------
# enumeration

VARIETY_FILTERS = ("hoop", "basic", "wajsberg", "godel", "product")


@lru_cache(maxsize=None)
def _enumerated_tables(n: int, budget: int):
    tables, nodes, exceeded = kernels.enumerate_hoop_tables(n, budget)
    if exceeded:
        raise BudgetExceeded(nodes, budget)
    return tables


def enumerate_hoops(n: int, variety: str = "hoop",
                    budget: int = DEFAULT_BUDGET) -> list:
    """All hoops of order n up to isomorphism, canonical, deterministic.

    Output is sorted by canonical tables and filtered by the variety
    flag; `budget` caps the number of search nodes.
    """
    if variety not in VARIETY_FILTERS:
        raise ValueError(f"unknown variety filter {variety!r}")
    out = []
    for mul_flat, imp_flat in _enumerated_tables(n, budget):
        h = validate_hoop(n, n - 1, kernels.unflatten(mul_flat, n),
                          kernels.unflatten(imp_flat, n))
        if variety == "hoop" or classify(h).flag(variety):
            out.append(h)
    return out


def standard_corpus(max_order: int, variety: str = "hoop",
                    budget: int = DEFAULT_BUDGET) -> list:
    """All hoops of order <= max_order up to isomorphism."""
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_hoops(n, variety, budget))
    return out


def bounded(h: FiniteHoop) -> FiniteHoop:
    """The same hoop with its order minimum designated as bottom."""
    return h.with_bottom()


def require_bounded(h: FiniteHoop) -> int:
    if h.bottom is None:
        raise NotBounded("operation requires a bounded hoop")
    return h.bottom
