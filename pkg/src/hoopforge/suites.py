"""Named verification suites: presets over the module operations.

Each suite returns a list of check dicts {name, passed, witness,
detail}; the CLI assembles them into a SuiteReport.  Failures embed
enough data to replay the single failing check with a dedicated
subcommand.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from hoopforge import actions as actions_mod
from hoopforge import corpus as corpus_mod
from hoopforge import extensions as ext_mod
from hoopforge import hoops, lalgebras, terms
from hoopforge.errors import HoopforgeError
from hoopforge.hoops import classify, direct_product, godel_chain, lukasiewicz_chain

DEFAULT_ORDERS = {
    "axioms": 16,
    "duality": 5,
    "semidirect": 3,
    "bijection": 3,
    "lattice": 3,
    "godel": 3,
    "naturality": 3,
    "lalgebra": 5,
}

SEMIDIRECT_MIDDLE_CAP = 9
COINCIDENCE_MIDDLE_CAP = 4


def check(name, passed, witness=None, detail=None, replay=None):
    out = {"name": name, "passed": bool(passed)}
    if witness is not None:
        out["witness"] = witness
    if detail is not None:
        out["detail"] = detail
    if replay is not None:
        out["replay"] = replay
    return out


@lru_cache(maxsize=None)
def _corpus(max_order: int, budget: int):
    return tuple(corpus_mod.corpus_up_to(max_order, budget))


def _labels(algebras):
    seen = {}
    out = []
    for h in algebras:
        seq = seen.get(h.order, 0)
        seen[h.order] = seq + 1
        out.append(f"o{h.order}.{seq}")
    return out


def _pairs(max_order, budget):
    algebras = _corpus(max_order, budget)
    labels = _labels(algebras)
    return [(lb, b, lx, x) for lb, b in zip(labels, algebras)
            for lx, x in zip(labels, algebras)]


# ---------------------------------------------------------------------------
# criterion 1: chains, classification, DSL/native agreement

def suite_axioms(max_order=16, budget=hoops.DEFAULT_BUDGET, oracle=False):
    checks = []
    axiom_idents = {name: terms.parse_identity(text)
                    for name, text in terms.HOOP_AXIOM_IDENTITIES.items()}
    variety_idents = {name: terms.parse_identity(text)
                      for name, text in terms.VARIETY_IDENTITIES.items()}
    for kind, builder in (("lukasiewicz", lukasiewicz_chain),
                          ("godel", godel_chain)):
        bad = None
        for n in range(1, max_order + 1):
            try:
                h = builder(n)
            except HoopforgeError as exc:
                bad = {"n": n, "error": str(exc)}
                break
            rep = classify(h)
            want_wajs = kind == "lukasiewicz" or n <= 2
            want_godel = kind == "godel" or n <= 2
            if not (rep.is_bounded and rep.is_basic
                    and rep.is_wajsberg == want_wajs
                    and rep.is_godel == want_godel):
                bad = {"n": n, "flags": repr(rep)}
                break
            for name, ident in axiom_idents.items():
                ok, env = terms.holds(h, ident)
                if not ok:
                    bad = {"n": n, "axiom": name, "assignment": env}
                    break
            for name, ident in variety_idents.items():
                if name == "product" and not rep.is_basic:
                    continue
                ok, _ = terms.holds(h, ident)
                native = rep.flag("involutive" if name == "involutive" else name)
                if name == "godel":
                    ok = ok and rep.is_basic
                if ok != native:
                    bad = {"n": n, "identity": name,
                           "dsl": ok, "native": native}
                    break
            if bad:
                break
        checks.append(check(f"axioms.{kind}", bad is None, witness=bad,
                            replay=f"hoopforge check <{kind}-chain file>"))
    return checks


# ---------------------------------------------------------------------------
# criterion 2: filter/congruence duality

def suite_duality(max_order=5, budget=hoops.DEFAULT_BUDGET, oracle=False):
    from hoopforge.morphisms import (
        congruence_of_filter,
        filter_of_congruence,
        filters,
        kernel,
        quotient,
    )

    checks = []
    algebras = _corpus(max_order, budget)
    labels = _labels(algebras)
    by_order = {}
    for label, h in zip(labels, algebras):
        bad = None
        count = 0
        for f in filters(h):
            count += 1
            cong = congruence_of_filter(h, f)
            if filter_of_congruence(h, cong).members != f.members:
                bad = {"hoop": label, "filter": sorted(f.members),
                       "stage": "round-trip"}
                break
            q, proj = quotient(h, f)
            if kernel(proj).members != f.members:
                bad = {"hoop": label, "filter": sorted(f.members),
                       "stage": "kernel-of-projection"}
                break
        agg = by_order.setdefault(h.order, {"hoops": 0, "filters": 0,
                                            "witness": None})
        agg["hoops"] += 1
        agg["filters"] += count
        if bad and agg["witness"] is None:
            agg["witness"] = dict(bad, algebra=terms.format_algebra(h, label))
    for order in sorted(by_order):
        agg = by_order[order]
        checks.append(check(
            f"duality.order{order}", agg["witness"] is None,
            witness=agg["witness"],
            detail={"hoops": agg["hoops"], "filters": agg["filters"]},
            replay="hoopforge filters <algebra-file>"))
    return checks


# ---------------------------------------------------------------------------
# criterion 3: the general semidirect bijection

def _semidirect_pair(args):
    lb, B, lx, X, cap, budget = args
    found = ext_mod.search_extensions(B, X, cap, "hoop", strong_only=False,
                                      budget=budget, dedupe=False)
    strong = 0
    nonstrong_example = None
    bad = None
    for e in found:
        if e.strong:
            strong += 1
        elif nonstrong_example is None:
            nonstrong_example = {"middle_mul": e.A.mul, "middle_imp": e.A.imp,
                                 "k": e.k.map, "p": e.p.map, "s": e.s.map}
        try:
            gs = ext_mod.general_semidirect(e)
            ok, witness = gs.reproduces_middle()
            if not ok:
                bad = {"pair": (lb, lx), "stage": "tables", "cell": witness}
                break
        except HoopforgeError as exc:
            bad = {"pair": (lb, lx), "stage": "bijection", "error": str(exc)}
            break
    detail = {"extensions": len(found), "strong": strong,
              "non_strong": len(found) - strong}
    if nonstrong_example is not None:
        detail["non_strong_example"] = nonstrong_example
    return check(f"semidirect.{lb}x{lx}", bad is None, witness=bad,
                 detail=detail, replay="hoopforge splitext validate <descriptor>")


def suite_semidirect(max_order=3, budget=hoops.DEFAULT_BUDGET, oracle=False,
                     jobs=1):
    units = [(lb, B, lx, X, SEMIDIRECT_MIDDLE_CAP, budget)
             for (lb, B, lx, X) in _pairs(max_order, budget)]
    _corpus(SEMIDIRECT_MIDDLE_CAP, budget)
    checks = _map_units(_semidirect_pair, units, jobs)
    total_nonstrong = sum(c["detail"]["non_strong"] for c in checks)
    checks.append(check(
        "semidirect.nonstrong_observed", True,
        detail={"non_strong_extensions": total_nonstrong,
                "note": "split extensions without strong section exist at "
                        "these orders" if total_nonstrong else
                        "no split extension without strong section found"}))
    return checks


# ---------------------------------------------------------------------------
# criterion 4: strong-section correspondence

def _bijection_pair(args):
    lb, B, lx, X, budget = args
    rep = actions_mod.verify_bijection(B, X, "hoop", budget)
    bad = None if rep["ok"] else {"pair": (lb, lx), "report": repr(rep)}
    if bad is None:
        try:
            for act in actions_mod.enumerate_actions(B, X, "hoop", budget):
                pairs = act.carrier_pairs()
                for p1 in pairs:
                    for p2 in pairs:
                        actions_mod.semidirect_ops_strong(act, p1, p2)
        except HoopforgeError as exc:
            bad = {"pair": (lb, lx), "stage": "ops-agreement",
                   "error": str(exc)}
    return check(f"bijection.{lb}x{lx}", bad is None, witness=bad,
                 detail={"classes": rep["actions"]},
                 replay="hoopforge actions verify-bijection <B-file> <X-file>")


def suite_bijection(max_order=3, budget=hoops.DEFAULT_BUDGET, oracle=False,
                    jobs=1):
    units = [(lb, B, lx, X, budget)
             for (lb, B, lx, X) in _pairs(max_order, budget)]
    _corpus(SEMIDIRECT_MIDDLE_CAP, budget)
    return _map_units(_bijection_pair, units, jobs)


# ---------------------------------------------------------------------------
# criterion 5: lattice formulas

def suite_lattice(max_order=3, budget=hoops.DEFAULT_BUDGET, oracle=False):
    checks = []
    for lb, B, lx, X in _pairs(max_order, budget):
        bad = None
        n_actions = 0
        n_checked = 0
        for act in actions_mod.enumerate_actions(B, X, "hoop", budget):
            if "basic" not in act.certificates:
                continue
            n_actions += 1
            pairs = act.carrier_pairs()
            try:
                for p1 in pairs:
                    for p2 in pairs:
                        actions_mod.semidirect_lattice(act, p1, p2)
                        n_checked += 1
            except HoopforgeError as exc:
                bad = {"pair": (lb, lx), "p1": p1, "p2": p2,
                       "error": str(exc)}
                break
        if n_actions:
            checks.append(check(
                f"lattice.{lb}x{lx}", bad is None, witness=bad,
                detail={"basic_actions": n_actions, "pairs": n_checked}))
    return checks


# ---------------------------------------------------------------------------
# criterion 6: double-negation decomposition

def suite_mvd(budget=hoops.DEFAULT_BUDGET, oracle=False, max_order=None):
    checks = []
    cases = [
        ("G3", godel_chain(3)),
        ("G4", godel_chain(4)),
        ("G3xL2", direct_product(godel_chain(3), lukasiewicz_chain(2))),
    ]
    for label, algebra in cases:
        bad = None
        detail = None
        try:
            e = ext_mod.regular_dense_decomposition(algebra)
            detail = {"middle": e.A.order, "regular": e.B.order,
                      "dense": e.X.order, "strong": e.strong}
            if not e.strong:
                bad = {"case": label, "stage": "strong-section"}
        except HoopforgeError as exc:
            bad = {"case": label, "error": str(exc)}
        checks.append(check(f"mvd.{label}", bad is None, witness=bad,
                            detail=detail,
                            replay="hoopforge splitext mvd <algebra-file>"))
    bad = None
    degenerate = []
    for n in range(2, 6):
        e = ext_mod.regular_dense_decomposition(lukasiewicz_chain(n))
        rep = actions_mod.mv_trivialization_check(e)
        degenerate.append({"n": n, "dense": e.X.order,
                           "p_isomorphism": rep["p_isomorphism"]})
        if e.X.order != 1 or not rep["p_isomorphism"]:
            bad = {"n": n}
            break
    checks.append(check("mvd.lukasiewicz_degenerate", bad is None,
                        witness=bad, detail={"chains": degenerate}))
    return checks


# ---------------------------------------------------------------------------
# criterion 7: Gödel closure

def suite_godel(max_order=3, budget=hoops.DEFAULT_BUDGET, oracle=False):
    checks = []
    algebras = [h for h in _corpus(max_order, budget)
                if classify(h).is_godel]
    labels = _labels(algebras)
    for lb, B in zip(labels, algebras):
        for lx, X in zip(labels, algebras):
            bad = None
            count = 0
            for act in actions_mod.enumerate_actions(B, X, "godel", budget):
                count += 1
                try:
                    actions_mod.godel_closure_check(act)
                except HoopforgeError as exc:
                    bad = {"pair": (lb, lx), "error": str(exc)}
                    break
            checks.append(check(f"godel.{lb}x{lx}", bad is None, witness=bad,
                                detail={"basic_actions": count}))
    return checks


# ---------------------------------------------------------------------------
# criterion 8: naturality

def suite_naturality(max_order=3, budget=hoops.DEFAULT_BUDGET, oracle=False):
    from hoopforge.morphisms import all_homs

    checks = []
    algebras = _corpus(max_order, budget)
    labels = _labels(algebras)
    for lb, B in zip(labels, algebras):
        for lx, X in zip(labels, algebras):
            bad = None
            maps = 0
            acts = 0
            for lp, Bp in zip(labels, algebras):
                for phi in all_homs(Bp, B):
                    maps += 1
                    rep = actions_mod.verify_naturality(phi, X, "hoop", budget)
                    acts += rep["actions"]
                    if not rep["ok"]:
                        bad = {"pair": (lb, lx), "from": lp,
                               "phi": phi.map, "witness": rep["witness"]}
                        break
                if bad:
                    break
            checks.append(check(
                f"naturality.{lb}x{lx}", bad is None, witness=bad,
                detail={"maps": maps, "squares": acts},
                replay="hoopforge actions verify-naturality ..."))
    return checks


# ---------------------------------------------------------------------------
# criterion 9: the L-algebra layer

def strong_extensions_with_small_middle(max_middle, budget):
    """Every strong split extension with middle order <= max_middle,
    one per (middle, filter, section) triple, via quotients."""
    from hoopforge.morphisms import all_homs, filters, quotient, subalgebra

    out = []
    for A in _corpus(max_middle, budget):
        for f in filters(A):
            X, embed = subalgebra(A, sorted(f.members))
            Q, proj = quotient(A, f)
            for s in all_homs(Q, A):
                if any(proj.map[s.map[b]] != b for b in range(Q.order)):
                    continue
                e = ext_mod.validate_split_extension(
                    X, A, Q, embed.map, proj.map, s.map)
                if e.strong:
                    out.append(e)
    return out


def suite_lalgebra(max_order=5, budget=hoops.DEFAULT_BUDGET, oracle=False,
                   action_order=3):
    checks = []
    bad = None
    count = 0
    for h in _corpus(max_order, budget):
        try:
            lalgebras.hoop_to_lalgebra(h)
            count += 1
        except HoopforgeError as exc:
            bad = {"order": h.order, "error": str(exc),
                   "algebra": terms.format_algebra(h)}
            break
    checks.append(check("lalgebra.reducts", bad is None, witness=bad,
                        detail={"hoops": count},
                        replay="hoopforge lalg validate <algebra-file>"))

    bad = None
    ops = 0
    for lb, B, lx, X in _pairs(action_order, budget):
        for act in actions_mod.enumerate_actions(B, X, "hoop", budget):
            try:
                lop = lalgebras.operation_from_action(act)
                lalgebras.rump_semidirect(lop)
                ss = lalgebras.self_similar_domain_check(act)
                if not ss["ok"]:
                    bad = {"pair": (lb, lx), "stage": "self-similar"}
                    break
                ops += 1
            except HoopforgeError as exc:
                bad = {"pair": (lb, lx), "error": str(exc)}
                break
        if bad:
            break
    checks.append(check("lalgebra.operations", bad is None, witness=bad,
                        detail={"operations": ops}))

    bad = None
    swept = 0
    for e in strong_extensions_with_small_middle(COINCIDENCE_MIDDLE_CAP,
                                                 budget):
        emb = lalgebras.embedding_check(e)
        coin = lalgebras.coincidence_check(e)
        swept += 1
        if not (emb["ok"] and coin["ok"]):
            bad = {"middle_mul": e.A.mul, "embedding": emb["witness"],
                   "coincidence": coin["witness"]}
            break
    checks.append(check("lalgebra.coincidence", bad is None, witness=bad,
                        detail={"strong_extensions": swept},
                        replay="hoopforge lalg coincide <descriptor>"))
    return checks


# ---------------------------------------------------------------------------
# driver

SUITES = {
    "axioms": suite_axioms,
    "duality": suite_duality,
    "semidirect": suite_semidirect,
    "bijection": suite_bijection,
    "lattice": suite_lattice,
    "mvd": suite_mvd,
    "godel": suite_godel,
    "naturality": suite_naturality,
    "lalgebra": suite_lalgebra,
}

_PARALLEL = {"semidirect", "bijection"}


def _map_units(fn, units, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, units))
    return [fn(u) for u in units]


def run_suites(names, max_order=None, budget=hoops.DEFAULT_BUDGET,
               oracle=False, jobs=1):
    checks = []
    for name in names:
        fn = SUITES[name]
        kwargs = {"budget": budget, "oracle": oracle}
        order = max_order or DEFAULT_ORDERS.get(name)
        if name != "mvd":
            kwargs["max_order"] = order
        if name in _PARALLEL:
            kwargs["jobs"] = jobs
        checks.extend(fn(**kwargs))
    return checks
