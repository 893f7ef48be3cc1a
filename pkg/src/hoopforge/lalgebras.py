"""Implication-only comparison layer: L-algebras, base operations on
them, the Rump semidirect product, and its coincidence with the hoop
semidirect implication on the invariant carrier.
"""

from __future__ import annotations

from dataclasses import dataclass

from hoopforge import kernels
from hoopforge.errors import (
    AxiomViolation,
    MalformedTable,
    SectionFailure,
    ValidationFailure,
)
from hoopforge.extensions import SplitExtension
from hoopforge.hoops import FiniteHoop


@dataclass(frozen=True)
class FiniteLAlgebra:
    order: int
    unit: int
    imp: tuple

    def __repr__(self):
        return f"FiniteLAlgebra(order={self.order}, unit={self.unit})"


@dataclass(frozen=True)
class LOperation:
    """A base operation (b, x) -> bx on an L-algebra, stored like the
    g-table of a strong action: rows over B, columns over X."""

    B: FiniteLAlgebra
    X: FiniteLAlgebra
    op: tuple


def validate_lalgebra(order, unit, imp) -> FiniteLAlgebra:
    imp = tuple(tuple(row) for row in imp)
    if len(imp) != order or any(len(r) != order for r in imp):
        raise MalformedTable(f"imp table must be {order}x{order}")
    for row in imp:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < order:
                raise MalformedTable(f"imp entry {v!r} out of range")
    if not 0 <= unit < order:
        raise MalformedTable(f"unit index {unit} out of range")
    w = kernels.lalgebra_axiom_witness(order, unit, kernels.flatten(imp))
    if w is not None:
        code, x, y, z = w
        witness = {k: v for k, v in zip("xyz", (x, y, z)) if v >= 0}
        raise AxiomViolation(code, witness)
    return FiniteLAlgebra(order, unit, imp)


def hoop_to_lalgebra(h: FiniteHoop) -> FiniteLAlgebra:
    """Forget the monoid operation; every hoop reduct satisfies L1-L3."""
    return validate_lalgebra(h.order, h.unit, h.imp)


def validate_loperation(B: FiniteLAlgebra, X: FiniteLAlgebra, op) -> LOperation:
    """Check O1 (imp distribution), O2 (exchange), O3 (unit)."""
    op = tuple(tuple(row) for row in op)
    if len(op) != B.order or any(len(r) != X.order for r in op):
        raise MalformedTable(f"op table must be {B.order}x{X.order}")
    for x in range(X.order):
        if op[B.unit][x] != x:
            raise AxiomViolation("O3", {"x": x})
    for b in range(B.order):
        for x in range(X.order):
            for y in range(X.order):
                if op[b][X.imp[x][y]] != X.imp[op[b][x]][op[b][y]]:
                    raise AxiomViolation("O1", {"b": b, "x": x, "y": y})
    for b in range(B.order):
        for b2 in range(B.order):
            for x in range(X.order):
                lhs = op[B.imp[b][b2]][op[b][x]]
                rhs = op[B.imp[b2][b]][op[b2][x]]
                if lhs != rhs:
                    raise AxiomViolation("O2", {"b": b, "b2": b2, "x": x})
    return LOperation(B, X, op)


def operation_from_action(act) -> LOperation:
    """The g-component of a strong action makes the base operate on the
    kernel's reduct."""
    B = hoop_to_lalgebra(act.B)
    X = hoop_to_lalgebra(act.X)
    return validate_loperation(B, X, act.g)


def pair_slot(X: FiniteLAlgebra, B: FiniteLAlgebra, x: int, b: int) -> int:
    return x * B.order + b


def rump_semidirect(lop: LOperation) -> FiniteLAlgebra:
    """Semidirect product on all of X x B:
    (x,b) -> (y,b') = (((b -> b')x) -> ((b' -> b)y), b -> b').
    """
    X, B, op = lop.X, lop.B, lop.op
    n = X.order * B.order
    imp = [[0] * n for _ in range(n)]
    for x in range(X.order):
        for b in range(B.order):
            i = pair_slot(X, B, x, b)
            for y in range(X.order):
                for b2 in range(B.order):
                    j = pair_slot(X, B, y, b2)
                    fwd = B.imp[b][b2]
                    bwd = B.imp[b2][b]
                    imp[i][j] = pair_slot(
                        X, B, X.imp[op[fwd][x]][op[bwd][y]], fwd)
    try:
        return validate_lalgebra(n, pair_slot(X, B, X.unit, B.unit), imp)
    except AxiomViolation as exc:
        raise ValidationFailure(
            f"semidirect product of a valid operation failed {exc}") from exc


def lalg_strong_section(X: FiniteLAlgebra, A: FiniteLAlgebra,
                        B: FiniteLAlgebra, k, p, s):
    """Strong-section equation for a split extension of L-algebras.

    Returns (True, None) or (False, (a, b)).
    """
    k, p, s = tuple(k), tuple(p), tuple(s)
    for (src, dst, m, name) in ((X, A, k, "k"), (A, B, p, "p"), (B, A, s, "s")):
        if len(m) != src.order:
            raise MalformedTable(f"{name} must be total")
        if m[src.unit] != dst.unit:
            raise SectionFailure(f"{name} does not preserve the unit")
        for x in range(src.order):
            for y in range(src.order):
                if m[src.imp[x][y]] != dst.imp[m[x]][m[y]]:
                    raise SectionFailure(
                        f"{name} does not preserve imp at ({x}, {y})")
    for b in range(B.order):
        if p[s[b]] != b:
            raise SectionFailure(f"p(s({b})) != {b}")
    for a in range(A.order):
        spa = s[p[a]]
        for b in range(B.order):
            if A.imp[a][s[b]] != A.imp[spa][s[b]]:
                return False, (a, b)
    return True, None


# ---------------------------------------------------------------------------
# comparison with the hoop semidirect product

def _rump_data(e: SplitExtension):
    from hoopforge import actions as actions_mod

    act = actions_mod.tau(e)
    lop = operation_from_action(act)
    rump = rump_semidirect(lop)
    return act, lop, rump


def embedding_check(e: SplitExtension) -> dict:
    """The map a |-> (sp(a) -> a, p(a)) into X x B.

    Asserts injectivity, image = the invariant carrier, and that it
    carries the middle algebra's implication to the Rump implication.
    """
    act, lop, rump = _rump_data(e)
    A, X, B = e.A, e.X, e.B
    kinv = e.k_inverse()
    image = []
    mapping = {}
    for a in range(A.order):
        spa = e.s.map[e.p.map[a]]
        xa = A.imp[spa][a]
        if xa not in kinv:
            raise ValidationFailure("embedding left the kernel image")
        pair = (kinv[xa], e.p.map[a])
        mapping[a] = pair
        image.append(pair)
    report = {
        "injective": len(set(image)) == A.order,
        "image_is_carrier": sorted(set(image)) == sorted(act.carrier_pairs()),
        "imp_isomorphism": True,
        "witness": None,
    }
    for a1 in range(A.order):
        for a2 in range(A.order):
            x1, b1 = mapping[a1]
            x2, b2 = mapping[a2]
            i = pair_slot(lop.X, lop.B, x1, b1)
            j = pair_slot(lop.X, lop.B, x2, b2)
            target = rump.imp[i][j]
            got = pair_slot(lop.X, lop.B, *mapping[A.imp[a1][a2]])
            if target != got:
                report["imp_isomorphism"] = False
                report["witness"] = {"a1": a1, "a2": a2}
    report["ok"] = (report["injective"] and report["image_is_carrier"]
                    and report["imp_isomorphism"])
    return report


def coincidence_check(e: SplitExtension) -> dict:
    """On the invariant carrier, the Rump implication computed through
    the section equals the implication of the strong semidirect product.
    """
    act, lop, rump = _rump_data(e)
    A = e.A
    kinv = e.k_inverse()
    pairs = act.carrier_pairs()
    report = {"carrier": len(pairs), "ok": True, "witness": None}
    for (x, b) in pairs:
        for (y, b2) in pairs:
            kx, ky = e.k.map[x], e.k.map[y]
            sfwd = e.s.map[e.B.imp[b][b2]]
            sbwd = e.s.map[e.B.imp[b2][b]]
            rump_first = kinv[A.imp[A.imp[sfwd][kx]][A.imp[sbwd][ky]]]
            thss_first = kinv[A.imp[sbwd][A.imp[kx][ky]]]
            if rump_first != thss_first:
                report["ok"] = False
                report["witness"] = {"x": x, "b": b, "y": y, "b2": b2}
            via_table = rump.imp[pair_slot(lop.X, lop.B, x, b)][
                pair_slot(lop.X, lop.B, y, b2)]
            if via_table != pair_slot(lop.X, lop.B, rump_first,
                                      e.B.imp[b][b2]):
                report["ok"] = False
                report["witness"] = {"x": x, "b": b, "y": y, "b2": b2,
                                     "where": "table"}
    return report


def self_similar_domain_check(act) -> dict:
    """If every f_b is the identity, the carrier is all of X x B."""
    identity = all(act.f[b][x] == x
                   for b in range(act.B.order) for x in range(act.X.order))
    full = len(act.carrier_pairs()) == act.B.order * act.X.order
    return {"f_identity": identity, "carrier_full": full,
            "ok": (not identity) or full}
