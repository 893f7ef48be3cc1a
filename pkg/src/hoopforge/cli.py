"""Command-line workbench: validation, enumeration, extension and
action tooling, and the named verification suites.

Reports are JSON (sorted keys); identical invocations on identical
corpora produce byte-identical reports modulo the timing field.
Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys
import time

import click

import hoopforge
from hoopforge import actions as actions_mod
from hoopforge import corpus as corpus_mod
from hoopforge import extensions as ext_mod
from hoopforge import hoops, lalgebras, suites, terms
from hoopforge.errors import HoopforgeError
from hoopforge.morphisms import filters as filters_op
from hoopforge.morphisms import homomorphism, make_filter, quotient


def _report(command, parameters, checks, started):
    passed = all(c["passed"] for c in checks)
    return {
        "command": command,
        "version": hoopforge.__version__,
        "parameters": parameters,
        "checks": checks,
        "passed": passed,
        "timing": {"seconds": round(time.time() - started, 6)},
    }


def report_bytes(report, drop_timing=False):
    data = {k: v for k, v in report.items() if not (drop_timing and k == "timing")}
    return (json.dumps(data, sort_keys=True, indent=2, default=_jsonable)
            + "\n").encode()


def _jsonable(obj):
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit(report, out):
    blob = report_bytes(report).decode()
    if out:
        with open(out, "w") as fh:
            fh.write(blob)
    else:
        click.echo(blob, nl=False)
    sys.exit(0 if report["passed"] else 1)


def _load_algebra(path):
    with open(path) as fh:
        return terms.parse_algebra_named(fh.read())


def _load_descriptor(path):
    with open(path) as fh:
        data = json.load(fh)
    base = os.path.dirname(os.path.abspath(path))

    def algebra(key):
        return _load_algebra(os.path.join(base, data[key]))[1]

    return data, algebra


def _load_extension(path):
    data, algebra = _load_descriptor(path)
    X, A, B = algebra("X"), algebra("A"), algebra("B")
    return ext_mod.validate_split_extension(
        X, A, B, tuple(data["k"]), tuple(data["p"]), tuple(data["s"]))


def _load_action(path):
    data, algebra = _load_descriptor(path)
    B, X = algebra("B"), algebra("X")
    f = tuple(tuple(row) for row in data["f"])
    g = tuple(tuple(row) for row in data["g"])
    variety = data.get("variety", "hoop")
    return actions_mod.validate_action(B, X, f, g, variety)


def _failure_check(name, exc, replay=None):
    witness = {"error": type(exc).__name__, "detail": str(exc)}
    for attr in ("axiom", "witness", "line", "col"):
        v = getattr(exc, attr, None)
        if v is not None:
            witness[attr] = v
    return suites.check(name, False, witness=witness, replay=replay)


@click.group()
def main():
    """Finite-model workbench for hoops and their split extensions."""


@main.command("check")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def check_cmd(algebra_file, out):
    """Validate an algebra file and classify its varieties."""
    started = time.time()
    checks = []
    try:
        name, h = _load_algebra(algebra_file)
        rep = hoops.classify(h)
        checks.append(suites.check(
            f"check.{name}", True,
            detail={
                "order": h.order, "unit": h.unit, "bottom": h.bottom,
                "bounded": rep.is_bounded, "basic": rep.is_basic,
                "wajsberg": rep.is_wajsberg, "godel": rep.is_godel,
                "product": rep.is_product, "involutive": rep.is_involutive,
            }))
    except HoopforgeError as exc:
        checks.append(_failure_check("check", exc,
                                     replay=f"hoopforge check {algebra_file}"))
    _emit(_report("check", {"algebra": os.path.basename(algebra_file)},
                  checks, started), out)


@main.command("check-identity")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.argument("identity_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def check_identity_cmd(algebra_file, identity_file, out):
    """Check every identity in a file against an algebra."""
    started = time.time()
    checks = []
    try:
        _, h = _load_algebra(algebra_file)
        with open(identity_file) as fh:
            idents = terms.parse_identity_file(fh.read())
        for i, ident in enumerate(idents):
            ok, env = terms.holds(h, ident)
            checks.append(suites.check(
                f"identity.{i}", ok,
                witness=None if ok else {"identity": str(ident),
                                         "assignment": env}))
    except HoopforgeError as exc:
        checks.append(_failure_check("check-identity", exc))
    _emit(_report("check-identity",
                  {"algebra": os.path.basename(algebra_file),
                   "identities": os.path.basename(identity_file)},
                  checks, started), out)


@main.command("enumerate")
@click.option("--max-order", type=int, required=True)
@click.option("--variety", default="hoop")
@click.option("--budget", type=int, default=hoops.DEFAULT_BUDGET)
@click.option("--corpus", "corpus_dir", type=click.Path(), default=None,
              help="Directory to persist the corpus into.")
@click.option("--out", type=click.Path(), default=None)
def enumerate_cmd(max_order, variety, budget, corpus_dir, out):
    """Enumerate all hoops up to the given order, up to isomorphism."""
    started = time.time()
    checks = []
    try:
        counts = {}
        algebras = []
        for n in range(1, max_order + 1):
            found = hoops.enumerate_hoops(n, variety, budget)
            counts[str(n)] = len(found)
            algebras.extend(found)
        if corpus_dir:
            corpus_mod.save_corpus(corpus_dir, algebras)
        checks.append(suites.check("enumerate", True,
                                   detail={"counts": counts,
                                           "total": len(algebras)}))
    except HoopforgeError as exc:
        checks.append(_failure_check("enumerate", exc))
    _emit(_report("enumerate", {"max_order": max_order, "variety": variety,
                                "budget": budget}, checks, started), out)


@main.command("filters")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def filters_cmd(algebra_file, out):
    """List every filter of an algebra as index arrays."""
    started = time.time()
    checks = []
    try:
        name, h = _load_algebra(algebra_file)
        fs = [list(f.sorted_members()) for f in filters_op(h)]
        checks.append(suites.check(f"filters.{name}", True,
                                   detail={"filters": fs, "count": len(fs)}))
    except HoopforgeError as exc:
        checks.append(_failure_check("filters", exc))
    _emit(_report("filters", {"algebra": os.path.basename(algebra_file)},
                  checks, started), out)


@main.command("quotient")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("--filter", "filter_spec", required=True,
              help="Comma-separated member indices, e.g. 1,2.")
@click.option("--out", type=click.Path(), default=None)
def quotient_cmd(algebra_file, filter_spec, out):
    """Quotient an algebra by a filter."""
    started = time.time()
    checks = []
    try:
        name, h = _load_algebra(algebra_file)
        members = [int(v) for v in filter_spec.split(",") if v != ""]
        f = make_filter(h, members)
        q, proj = quotient(h, f)
        checks.append(suites.check(
            f"quotient.{name}", True,
            detail={"order": q.order, "projection": list(proj.map),
                    "algebra": terms.format_algebra(q, f"{name}_quot")}))
    except HoopforgeError as exc:
        checks.append(_failure_check("quotient", exc))
    _emit(_report("quotient", {"algebra": os.path.basename(algebra_file),
                               "filter": filter_spec}, checks, started), out)


@main.group("splitext")
def splitext_group():
    """Split-extension tooling."""


@splitext_group.command("validate")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def splitext_validate(descriptor, out):
    started = time.time()
    checks = []
    try:
        e = _load_extension(descriptor)
        gs = ext_mod.general_semidirect(e)
        ok, witness = gs.reproduces_middle()
        checks.append(suites.check(
            "splitext.validate", ok,
            witness=None if ok else {"cell": witness},
            detail={"middle": e.A.order, "strong": e.strong,
                    "carrier": len(gs.carrier)}))
    except HoopforgeError as exc:
        checks.append(_failure_check("splitext.validate", exc))
    _emit(_report("splitext validate",
                  {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@splitext_group.command("strong")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def splitext_strong(descriptor, out):
    started = time.time()
    checks = []
    try:
        e = _load_extension(descriptor)
        ok, witness = ext_mod.has_strong_section(e)
        checks.append(suites.check(
            "splitext.strong", ok,
            witness=None if ok else {"a": witness[0], "b": witness[1]}))
    except HoopforgeError as exc:
        checks.append(_failure_check("splitext.strong", exc))
    _emit(_report("splitext strong",
                  {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@splitext_group.command("mvd")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def splitext_mvd(algebra_file, out):
    """Double-negation decomposition of a bounded basic hoop."""
    started = time.time()
    checks = []
    try:
        name, h = _load_algebra(algebra_file)
        e = ext_mod.regular_dense_decomposition(h)
        checks.append(suites.check(
            f"splitext.mvd.{name}", True,
            detail={"regular": list(e.s.map), "dense": list(e.k.map),
                    "projection": list(e.p.map), "strong": e.strong}))
    except HoopforgeError as exc:
        checks.append(_failure_check("splitext.mvd", exc))
    _emit(_report("splitext mvd", {"algebra": os.path.basename(algebra_file)},
                  checks, started), out)


@main.group("actions")
def actions_group():
    """Strong external action tooling."""


@actions_group.command("validate")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--variety", default=None)
@click.option("--out", type=click.Path(), default=None)
def actions_validate(descriptor, variety, out):
    started = time.time()
    checks = []
    try:
        data, algebra = _load_descriptor(descriptor)
        B, X = algebra("B"), algebra("X")
        f = tuple(tuple(row) for row in data["f"])
        g = tuple(tuple(row) for row in data["g"])
        act = actions_mod.validate_action(
            B, X, f, g, variety or data.get("variety", "hoop"))
        checks.append(suites.check(
            "actions.validate", True,
            detail={"certificates": sorted(act.certificates),
                    "carrier": len(act.carrier_pairs())}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.validate", exc))
    _emit(_report("actions validate",
                  {"descriptor": os.path.basename(descriptor),
                   "variety": variety or "hoop"}, checks, started), out)


@actions_group.command("enumerate")
@click.argument("base_file", type=click.Path(exists=True))
@click.argument("kernel_file", type=click.Path(exists=True))
@click.option("--variety", default="hoop")
@click.option("--budget", type=int, default=hoops.DEFAULT_BUDGET)
@click.option("--out", type=click.Path(), default=None)
def actions_enumerate(base_file, kernel_file, variety, budget, out):
    started = time.time()
    checks = []
    try:
        _, B = _load_algebra(base_file)
        _, X = _load_algebra(kernel_file)
        acts = actions_mod.enumerate_actions(B, X, variety, budget)
        checks.append(suites.check(
            "actions.enumerate", True,
            detail={"count": len(acts),
                    "tables": [{"f": [list(r) for r in a.f],
                                "g": [list(r) for r in a.g]}
                               for a in acts]}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.enumerate", exc))
    _emit(_report("actions enumerate",
                  {"base": os.path.basename(base_file),
                   "kernel": os.path.basename(kernel_file),
                   "variety": variety}, checks, started), out)


@actions_group.command("mu")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def actions_mu(descriptor, out):
    """Semidirect product of an action descriptor."""
    started = time.time()
    checks = []
    try:
        act = _load_action(descriptor)
        e = actions_mod.mu(act)
        checks.append(suites.check(
            "actions.mu", True,
            detail={"carrier": [list(p) for p in act.carrier_pairs()],
                    "middle": terms.format_algebra(e.A, "mu"),
                    "strong": e.strong}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.mu", exc))
    _emit(_report("actions mu", {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@actions_group.command("tau")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def actions_tau(descriptor, out):
    """Action induced by a split-extension descriptor."""
    started = time.time()
    checks = []
    try:
        e = _load_extension(descriptor)
        act = actions_mod.tau(e)
        checks.append(suites.check(
            "actions.tau", True,
            detail={"f": [list(r) for r in act.f],
                    "g": [list(r) for r in act.g],
                    "certificates": sorted(act.certificates)}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.tau", exc))
    _emit(_report("actions tau", {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@actions_group.command("verify-bijection")
@click.argument("base_file", type=click.Path(exists=True))
@click.argument("kernel_file", type=click.Path(exists=True))
@click.option("--variety", default="hoop")
@click.option("--budget", type=int, default=hoops.DEFAULT_BUDGET)
@click.option("--out", type=click.Path(), default=None)
def actions_verify_bijection(base_file, kernel_file, variety, budget, out):
    started = time.time()
    checks = []
    try:
        _, B = _load_algebra(base_file)
        _, X = _load_algebra(kernel_file)
        rep = actions_mod.verify_bijection(B, X, variety, budget)
        checks.append(suites.check("actions.verify-bijection", rep["ok"],
                                   witness=rep["witness"],
                                   detail={k: rep[k] for k in
                                           ("actions", "extensions")}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.verify-bijection", exc))
    _emit(_report("actions verify-bijection",
                  {"base": os.path.basename(base_file),
                   "kernel": os.path.basename(kernel_file),
                   "variety": variety}, checks, started), out)


@actions_group.command("verify-naturality")
@click.argument("source_file", type=click.Path(exists=True))
@click.argument("base_file", type=click.Path(exists=True))
@click.argument("kernel_file", type=click.Path(exists=True))
@click.option("--map", "map_spec", required=True,
              help="Comma-separated images of the source elements.")
@click.option("--variety", default="hoop")
@click.option("--out", type=click.Path(), default=None)
def actions_verify_naturality(source_file, base_file, kernel_file, map_spec,
                              variety, out):
    started = time.time()
    checks = []
    try:
        _, Bp = _load_algebra(source_file)
        _, B = _load_algebra(base_file)
        _, X = _load_algebra(kernel_file)
        phi = homomorphism(Bp, B, tuple(int(v) for v in map_spec.split(",")))
        rep = actions_mod.verify_naturality(phi, X, variety)
        checks.append(suites.check("actions.verify-naturality", rep["ok"],
                                   witness=rep["witness"],
                                   detail={"actions": rep["actions"]}))
    except HoopforgeError as exc:
        checks.append(_failure_check("actions.verify-naturality", exc))
    _emit(_report("actions verify-naturality",
                  {"phi": map_spec, "variety": variety}, checks, started), out)


@main.group("lalg")
def lalg_group():
    """L-algebra comparison layer."""


@lalg_group.command("validate")
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def lalg_validate(algebra_file, out):
    """Validate the implication reduct of an algebra file."""
    started = time.time()
    checks = []
    try:
        name, h = _load_algebra(algebra_file)
        lalgebras.hoop_to_lalgebra(h)
        checks.append(suites.check(f"lalg.validate.{name}", True,
                                   detail={"order": h.order}))
    except HoopforgeError as exc:
        checks.append(_failure_check("lalg.validate", exc))
    _emit(_report("lalg validate", {"algebra": os.path.basename(algebra_file)},
                  checks, started), out)


@lalg_group.command("semidirect")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def lalg_semidirect(descriptor, out):
    """Rump semidirect product of an action descriptor's operation."""
    started = time.time()
    checks = []
    try:
        act = _load_action(descriptor)
        lop = lalgebras.operation_from_action(act)
        prod = lalgebras.rump_semidirect(lop)
        checks.append(suites.check(
            "lalg.semidirect", True,
            detail={"carrier": prod.order,
                    "imp": [list(r) for r in prod.imp]}))
    except HoopforgeError as exc:
        checks.append(_failure_check("lalg.semidirect", exc))
    _emit(_report("lalg semidirect",
                  {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@lalg_group.command("coincide")
@click.argument("descriptor", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def lalg_coincide(descriptor, out):
    """Coincidence of the Rump and hoop semidirect implications."""
    started = time.time()
    checks = []
    try:
        e = _load_extension(descriptor)
        emb = lalgebras.embedding_check(e)
        coin = lalgebras.coincidence_check(e)
        ok = emb["ok"] and coin["ok"]
        checks.append(suites.check(
            "lalg.coincide", ok,
            witness=None if ok else {"embedding": emb["witness"],
                                     "coincidence": coin["witness"]},
            detail={"carrier": coin["carrier"]}))
    except HoopforgeError as exc:
        checks.append(_failure_check("lalg.coincide", exc))
    _emit(_report("lalg coincide",
                  {"descriptor": os.path.basename(descriptor)},
                  checks, started), out)


@main.command("suite")
@click.argument("name",
                type=click.Choice(sorted(suites.SUITES) + ["all",
                                                           "determinism"]))
@click.option("--max-order", type=int, default=None)
@click.option("--budget", type=int, default=hoops.DEFAULT_BUDGET)
@click.option("--jobs", type=int, default=1)
@click.option("--oracle", is_flag=True, default=False,
              help="Enable the slow independent oracles where optional.")
@click.option("--out", type=click.Path(), default=None)
def suite_cmd(name, max_order, budget, jobs, oracle, out):
    """Run a named verification suite (criteria presets)."""
    started = time.time()
    if name in suites.SUITES:
        names = [name]
        checks = suites.run_suites(names, max_order, budget, oracle, jobs)
    else:
        names = list(suites.SUITES)
        checks = suites.run_suites(names, max_order, budget, oracle, jobs)
        second = suites.run_suites(names, max_order, budget, oracle, jobs)
        identical = (json.dumps(checks, sort_keys=True, default=_jsonable)
                     == json.dumps(second, sort_keys=True, default=_jsonable))
        checks.append(suites.check("determinism.reports_identical", identical))
        if name == "determinism":
            checks = checks[-1:]
    params = {"suite": name, "max_order": max_order, "budget": budget,
              "jobs": jobs, "oracle": oracle,
              "corpus": os.environ.get(corpus_mod.ENV_VAR)}
    _emit(_report(f"suite {name}", params, checks, started), out)


if __name__ == "__main__":
    main()
