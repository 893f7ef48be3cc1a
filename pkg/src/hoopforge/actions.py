"""Strong external actions: axiom validation per variety, the
correspondence with split extensions with strong section (tau and mu),
semidirect lattice operations, naturality, and the Wajsberg and Gödel
special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from hoopforge import hoops, kernels
from hoopforge.errors import (
    AxiomViolation,
    MalformedTable,
    NotBasic,
    NotInCarrier,
    NotStrong,
    PreconditionUnmet,
    ValidationFailure,
)
from hoopforge.extensions import (
    SplitExtension,
    enumerate_splext_ss,
    pullback,
    validate_split_extension,
)
from hoopforge.hoops import FiniteHoop, classify, join, leq, meet, validate_hoop
from hoopforge.morphisms import Homomorphism

VARIETY_LEVELS = {"hoop": 0, "basic": 1, "godel": 1, "wajsberg": 2}

_WITNESS_SLOTS = ("b1", "b2", "b3", "x", "y", "z")


@dataclass(frozen=True)
class StrongExternalAction:
    """A pair of maps f, g : B x X -> X stored as |B| x |X| tables."""

    B: FiniteHoop
    X: FiniteHoop
    f: tuple
    g: tuple
    certificates: frozenset

    def carrier_pairs(self):
        """The invariant pairs (x, b) with f_b(x) = x, sorted."""
        return tuple((x, b) for x in range(self.X.order)
                     for b in range(self.B.order) if self.f[b][x] == x)

    def __repr__(self):
        certs = ",".join(sorted(self.certificates))
        return (f"StrongExternalAction(|B|={self.B.order}, "
                f"|X|={self.X.order}, certs={{{certs}}})")


def _witness_dict(w):
    code = w[0]
    out = {"axiom": code}
    for name, v in zip(_WITNESS_SLOTS, w[1:]):
        if v >= 0:
            out[name] = v
    if code.startswith(("E1", "E2")):
        out["map"] = code[2]
        out["axiom"] = code[:2]
    return out


def _axiom_witness(B, X, f, g, level):
    return kernels.action_axiom_witness(
        B.order, X.order, B.unit, X.unit,
        kernels.flatten(B.mul), kernels.flatten(B.imp),
        kernels.flatten(X.mul), kernels.flatten(X.imp),
        kernels.flatten(f), kernels.flatten(g), level)


def _check_tables(B, X, f, g):
    for name, t in (("f", f), ("g", g)):
        if len(t) != B.order or any(len(row) != X.order for row in t):
            raise MalformedTable(f"{name} must be a {B.order}x{X.order} table")
        for row in t:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < X.order:
                    raise MalformedTable(f"{name} entry {v!r} out of range")


def validate_action(B: FiniteHoop, X: FiniteHoop, f, g,
                    variety: str = "hoop") -> StrongExternalAction:
    """Check the action axioms for the variety, then reconstruct.

    E1-E3 are universal; E4 (and B2/W2) quantify over action-invariant
    points.  The reconstruction (the semidirect carrier must be a hoop
    with strong section reproducing f and g) is the final arbiter; its
    failure is reported as axiom "reconstruction".
    """
    if variety == "product":
        raise PreconditionUnmet(
            "product-hoop actions carry their own axiom set, which this "
            "workbench does not implement; use variety='basic' instead")
    if variety not in VARIETY_LEVELS:
        raise PreconditionUnmet(f"unknown variety {variety!r}")
    for h, role in ((B, "base"), (X, "kernel")):
        if not (variety == "hoop" or classify(h).flag(variety)):
            raise PreconditionUnmet(
                f"{role} algebra is not a {variety} hoop")
    _check_tables(B, X, f, g)
    f = tuple(tuple(row) for row in f)
    g = tuple(tuple(row) for row in g)
    w = _axiom_witness(B, X, f, g, VARIETY_LEVELS[variety])
    if w is not None:
        raise AxiomViolation(w[0][:2] if w[0][:2] in ("E1", "E2") else w[0],
                             _witness_dict(w))
    certs = {"hoop"}
    repB, repX = classify(B), classify(X)
    if repB.is_basic and repX.is_basic and _axiom_witness(B, X, f, g, 1) is None:
        certs.add("basic")
        if repB.is_godel and repX.is_godel:
            certs.add("godel")
    if (repB.is_wajsberg and repX.is_wajsberg
            and _axiom_witness(B, X, f, g, 2) is None):
        certs.add("wajsberg")
    act = StrongExternalAction(B, X, f, g, frozenset(certs))
    try:
        mu(act)
    except ValidationFailure as exc:
        raise AxiomViolation("reconstruction", {"detail": str(exc)}) from exc
    return act


# ---------------------------------------------------------------------------
# the correspondence

def _induced_tables(e: SplitExtension):
    """Raw f, g tables of the action induced by a strong section."""
    A = e.A
    kinv = e.k_inverse()
    f = []
    g = []
    for b in range(e.B.order):
        sb = e.s.map[b]
        frow = []
        grow = []
        for x in range(e.X.order):
            kx = e.k.map[x]
            fv = A.imp[sb][A.mul[sb][kx]]
            gv = A.imp[sb][kx]
            if fv not in kinv or gv not in kinv:
                raise ValidationFailure(
                    "induced action left the kernel image")
            frow.append(kinv[fv])
            grow.append(kinv[gv])
        f.append(tuple(frow))
        g.append(tuple(grow))
    return tuple(f), tuple(g)


def tau(e: SplitExtension) -> StrongExternalAction:
    """Action induced by a strong section: f_b(x) = s(b) -> (s(b) * x)
    and g_b(x) = s(b) -> x, computed inside the middle algebra and
    pulled back through the kernel embedding.
    """
    if not e.strong:
        raise NotStrong("tau needs a split extension with strong section")
    f, g = _induced_tables(e)
    return validate_action(e.B, e.X, f, g)


@lru_cache(maxsize=None)
def _mu_cached(act: StrongExternalAction):
    B, X, f, g = act.B, act.X, act.f, act.g
    pairs = act.carrier_pairs()
    index = {pb: i for i, pb in enumerate(pairs)}
    n = len(pairs)
    mul = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for i, (x, b) in enumerate(pairs):
        for j, (y, b2) in enumerate(pairs):
            mv = (f[B.mul[b][b2]][X.mul[x][y]], B.mul[b][b2])
            iv = (g[B.imp[b2][b]][X.imp[x][y]], B.imp[b][b2])
            if mv not in index or iv not in index:
                missing = mv if mv not in index else iv
                raise ValidationFailure(
                    f"semidirect carrier is not closed: {missing} escapes")
            mul[i][j] = index[mv]
            imp[i][j] = index[iv]
    try:
        A = validate_hoop(n, index[(X.unit, B.unit)], mul, imp)
    except AxiomViolation as exc:
        raise ValidationFailure(
            f"semidirect carrier is not a hoop: {exc}") from exc
    k = tuple(index[(x, B.unit)] for x in range(X.order))
    p = tuple(b for (_, b) in pairs)
    s = tuple(index[(X.unit, b)] for b in range(B.order))
    e = validate_split_extension(X, A, B, k, p, s)
    if not e.strong:
        raise ValidationFailure("semidirect extension lost its strong section")
    back_f, back_g = _induced_tables(e)
    if back_f != act.f or back_g != act.g:
        raise ValidationFailure(
            "tau of the reconstructed extension differs from the action")
    for cert, flag in (("basic", "is_basic"), ("wajsberg", "is_wajsberg"),
                       ("godel", "is_godel")):
        if cert in act.certificates and not getattr(classify(A), flag):
            raise ValidationFailure(
                f"certified {cert} action built a non-{cert} middle algebra")
    return e


def mu(act: StrongExternalAction) -> SplitExtension:
    """Semidirect product of a strong external action.

    Carrier: the invariant pairs; operations (g_{b' -> b}(x -> y),
    b -> b') and (f_{b b'}(x y), b b'); unit (1, 1).  Validation
    failures signal an axiom-checking bug, not bad input.
    """
    return _mu_cached(act)


def carrier_index(act: StrongExternalAction):
    return {pb: i for i, pb in enumerate(act.carrier_pairs())}


def semidirect_ops_strong(act: StrongExternalAction, pair1, pair2):
    """Implication and product of two carrier pairs.

    Both presentations are evaluated: the action tables directly, and
    the section formulas inside the reconstructed middle algebra; they
    must agree.  Returns (imp_result, mul_result).
    """
    index = carrier_index(act)
    if pair1 not in index or pair2 not in index:
        raise NotInCarrier(f"{pair1} or {pair2} outside the carrier")
    B, X, f, g = act.B, act.X, act.f, act.g
    (x, b), (y, b2) = pair1, pair2
    by_tables = {
        "imp": (g[B.imp[b2][b]][X.imp[x][y]], B.imp[b][b2]),
        "mul": (f[B.mul[b][b2]][X.mul[x][y]], B.mul[b][b2]),
    }
    e = mu(act)
    A, kinv = e.A, e.k_inverse()
    kx, ky = e.k.map[x], e.k.map[y]
    sb = e.s.map[B.imp[b2][b]]
    via_section_imp = (kinv[A.imp[sb][A.imp[kx][ky]]], B.imp[b][b2])
    sm = e.s.map[B.mul[b][b2]]
    via_section_mul = (kinv[A.imp[sm][A.mul[sm][A.mul[kx][ky]]]],
                       B.mul[b][b2])
    if via_section_imp != by_tables["imp"] or via_section_mul != by_tables["mul"]:
        raise ValidationFailure(
            "action tables and section formulas disagree on the carrier")
    return by_tables["imp"], by_tables["mul"]


def semidirect_lattice(act: StrongExternalAction, pair1, pair2):
    """Meet and join of carrier pairs (basic actions only).

    Evaluates the action-level formulas, the section-level formulas in
    the reconstructed middle algebra, and the brute-force inf/sup of
    the carrier's natural order; all three must coincide.
    """
    if "basic" not in act.certificates:
        raise NotBasic("lattice formulas need the basic certificate")
    index = carrier_index(act)
    if pair1 not in index or pair2 not in index:
        raise NotInCarrier(f"{pair1} or {pair2} outside the carrier")
    B, X, f, g = act.B, act.X, act.f, act.g
    (x, b), (y, b2) = pair1, pair2

    bm = meet(B, b, b2)
    bj = join(B, b, b2)
    xm = meet(X, x, y)
    inner = meet(X, X.imp[g[B.imp[b2][b]][X.imp[x][y]]][y],
                 X.imp[g[B.imp[b][b2]][X.imp[y][x]]][x])
    by_action = ((f[bm][xm], bm), (f[bj][inner], bj))

    e = mu(act)
    A, kinv = e.A, e.k_inverse()
    kx, ky = e.k.map[x], e.k.map[y]
    smeet = e.s.map[bm]
    kxy = e.k.map[xm]
    sec_meet = (kinv[A.imp[smeet][A.mul[smeet][kxy]]], bm)
    sjoin = e.s.map[bj]
    t1 = A.imp[A.imp[e.s.map[B.imp[b2][b]]][A.imp[kx][ky]]][ky]
    t2 = A.imp[A.imp[e.s.map[B.imp[b][b2]]][A.imp[ky][kx]]][kx]
    tmeet = A.mul[t1][A.imp[t1][t2]]
    sec_join = (kinv[A.imp[sjoin][A.mul[sjoin][tmeet]]], bj)

    pairs = act.carrier_pairs()
    i1, i2 = index[pair1], index[pair2]
    lower = [i for i in range(len(pairs))
             if leq(e.A, i, i1) and leq(e.A, i, i2)]
    glb = [i for i in lower if all(leq(e.A, j, i) for j in lower)]
    upper = [i for i in range(len(pairs))
             if leq(e.A, i1, i) and leq(e.A, i2, i)]
    lub = [i for i in upper if all(leq(e.A, i, j) for j in upper)]
    brute = (pairs[glb[0]], pairs[lub[0]])

    if not (by_action == (sec_meet, sec_join) == brute):
        raise ValidationFailure(
            f"lattice formulas disagree: action {by_action}, "
            f"section {(sec_meet, sec_join)}, brute {brute}")
    return by_action


def g_properties(act: StrongExternalAction) -> dict:
    """Monotonicity, multiplicativity, and imp-distributivity of g."""
    B, X, g = act.B, act.X, act.g
    report = {"monotone": (True, None), "composition": (True, None),
              "imp_distributive": (True, None)}
    for b in range(B.order):
        for x in range(X.order):
            for y in range(X.order):
                if (report["monotone"][0] and leq(X, x, y)
                        and not leq(X, g[b][x], g[b][y])):
                    report["monotone"] = (False, {"b": b, "x": x, "y": y})
    for b in range(B.order):
        for b2 in range(B.order):
            for x in range(X.order):
                if (report["composition"][0]
                        and g[B.mul[b][b2]][x] != g[b][g[b2][x]]):
                    report["composition"] = (False, {"b": b, "b2": b2, "x": x})
    for b in range(B.order):
        for x in range(X.order):
            for y in range(X.order):
                if (report["imp_distributive"][0]
                        and g[b][X.imp[x][y]] != X.imp[g[b][x]][g[b][y]]):
                    report["imp_distributive"] = (False,
                                                  {"b": b, "x": x, "y": y})
    report["ok"] = all(v[0] for k, v in report.items() if k != "ok")
    return report


def enumerate_actions(B: FiniteHoop, X: FiniteHoop, variety: str = "hoop",
                      budget: int = hoops.DEFAULT_BUDGET):
    """All strong external actions of B on X in the variety, lex order."""
    if variety == "product":
        raise PreconditionUnmet(
            "product-hoop actions carry their own axiom set, which this "
            "workbench does not implement; use variety='basic' instead")
    level = VARIETY_LEVELS[variety]
    tables, nodes, exceeded = kernels.enumerate_action_tables(
        B.order, X.order, B.unit, X.unit,
        kernels.flatten(B.mul), kernels.flatten(B.imp),
        kernels.flatten(X.mul), kernels.flatten(X.imp), level, budget)
    if exceeded:
        from hoopforge.errors import BudgetExceeded

        raise BudgetExceeded(nodes, budget)
    out = []
    for f_flat, g_flat in tables:
        f = tuple(tuple(f_flat[b * X.order:(b + 1) * X.order])
                  for b in range(B.order))
        g = tuple(tuple(g_flat[b * X.order:(b + 1) * X.order])
                  for b in range(B.order))
        out.append(validate_action(B, X, f, g, variety))
    return out


def restrict_action(act: StrongExternalAction,
                    phi: Homomorphism) -> StrongExternalAction:
    """Change of base: precompose the tables with phi."""
    if phi.target != act.B:
        raise PreconditionUnmet("restriction map must land in the base")
    f = tuple(act.f[phi.map[b]] for b in range(phi.source.order))
    g = tuple(act.g[phi.map[b]] for b in range(phi.source.order))
    return validate_action(phi.source, act.X, f, g)


# ---------------------------------------------------------------------------
# verification sweeps

def verify_bijection(B: FiniteHoop, X: FiniteHoop, variety: str = "hoop",
                     budget: int = hoops.DEFAULT_BUDGET) -> dict:
    """Compare the action enumeration against the raw extension search.

    Asserts equal cardinalities, tau o mu = identity on tables, and
    mu o tau isomorphic to the original extension.
    """
    acts = enumerate_actions(B, X, variety, budget)
    exts = enumerate_splext_ss(B, X, variety, oracle=True, budget=budget)
    report = {
        "actions": len(acts),
        "extensions": len(exts),
        "counts_equal": len(acts) == len(exts),
        "tau_mu_identity": True,
        "mu_tau_isomorphic": True,
        "images_match": True,
        "witness": None,
    }
    for act in acts:
        back = tau(mu(act))
        if back.f != act.f or back.g != act.g:
            report["tau_mu_identity"] = False
            report["witness"] = {"action": (act.f, act.g)}
    from hoopforge.extensions import iso_extensions

    images = set()
    for e in exts:
        a = tau(e)
        images.add((a.f, a.g))
        if iso_extensions(mu(a), e) is None:
            report["mu_tau_isomorphic"] = False
            report["witness"] = {"extension_middle": e.A.mul}
    if images != {(a.f, a.g) for a in acts}:
        report["images_match"] = False
    report["ok"] = (report["counts_equal"] and report["tau_mu_identity"]
                    and report["mu_tau_isomorphic"] and report["images_match"])
    return report


def verify_naturality(phi: Homomorphism, X: FiniteHoop,
                      variety: str = "hoop",
                      budget: int = hoops.DEFAULT_BUDGET) -> dict:
    """The change-of-base square commutes table-exactly."""
    B = phi.target
    report = {"actions": 0, "ok": True, "witness": None}
    for act in enumerate_actions(B, X, variety, budget):
        report["actions"] += 1
        e = mu(act)
        via_pullback = tau(pullback(e, phi))
        via_tables = restrict_action(act, phi)
        if (via_pullback.f != via_tables.f or via_pullback.g != via_tables.g):
            report["ok"] = False
            report["witness"] = {"action": (act.f, act.g)}
    return report


def mv_trivialization_check(e: SplitExtension) -> dict:
    """In bounded Wajsberg hoops a 0-preserving strong section forces
    the projection to be an isomorphism (with the section as inverse).
    """
    if not e.strong:
        raise PreconditionUnmet("extension must have a strong section")
    for h, role in ((e.A, "middle"), (e.B, "base")):
        rep = classify(h)
        if h.bottom is None or not rep.is_wajsberg:
            raise PreconditionUnmet(f"{role} must be a bounded Wajsberg hoop")
    if e.s.map[e.B.bottom] != e.A.bottom:
        raise PreconditionUnmet("section must preserve the bottom")
    for a in range(e.A.order):
        if e.s.map[e.p.map[a]] != a:
            raise ValidationFailure(
                f"s(p({a})) != {a}: contradicts the trivialization remark")
    return {"p_isomorphism": True, "middle_order": e.A.order,
            "base_order": e.B.order}


def godel_closure_check(act: StrongExternalAction) -> dict:
    """A basic action between Gödel hoops yields an idempotent carrier."""
    if not (classify(act.B).is_godel and classify(act.X).is_godel):
        raise PreconditionUnmet("both algebras must be Gödel hoops")
    if "basic" not in act.certificates:
        raise PreconditionUnmet("action must carry the basic certificate")
    A = mu(act).A
    for a in range(A.order):
        if A.mul[a][a] != a:
            raise ValidationFailure(
                f"semidirect product not idempotent at {a}")
    return {"idempotent": True, "carrier_order": A.order}
