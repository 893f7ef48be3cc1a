"""Term language over the hoop signature and the brute-force identity
checker, plus parsers for the algebra text format and the identity DSL.

Grammar (LL(1)): `*` binds tighter than `/\\` and `\\/`, which bind
tighter than `->`; `->` is right-associative, the others associate to
the left.  Meet and join are macros over mul and imp, not primitive
table operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from hoopforge import hoops
from hoopforge.errors import (
    MissingBinding,
    NotBasic,
    NotBounded,
    ParseError,
    UndeclaredVariable,
)
from hoopforge.hoops import FiniteHoop


@dataclass(frozen=True)
class Term:
    kind: str                 # var | one | zero | mul | imp | meet | join
    name: Optional[str] = None
    args: tuple = ()

    def __str__(self):
        return format_term(self)


def Var(name):
    return Term("var", name)


CONST1 = Term("one")
CONST0 = Term("zero")


def Mul(l, r):
    return Term("mul", args=(l, r))


def Imp(l, r):
    return Term("imp", args=(l, r))


def Meet(l, r):
    return Term("meet", args=(l, r))


def Join(l, r):
    return Term("join", args=(l, r))


@dataclass(frozen=True)
class Identity:
    """Universally quantified equation over declared variables."""

    vars: tuple
    lhs: Term
    rhs: Term

    def __str__(self):
        q = f"forall {' '.join(self.vars)} : " if self.vars else "forall : "
        return f"{q}{format_term(self.lhs)} = {format_term(self.rhs)}"


# precedence levels: imp 0 < meet/join 1 < mul 2 < atom 3
_LEVEL = {"imp": 0, "meet": 1, "join": 1, "mul": 2,
          "var": 3, "one": 3, "zero": 3}
_SYMBOL = {"mul": "*", "imp": "->", "meet": "/\\", "join": "\\/"}


def format_term(t: Term) -> str:
    def fmt(t, ctx):
        lvl = _LEVEL[t.kind]
        if t.kind == "var":
            return t.name
        if t.kind == "one":
            return "1"
        if t.kind == "zero":
            return "0"
        l, r = t.args
        if t.kind == "imp":
            # right-associative
            s = f"{fmt(l, lvl + 1)} -> {fmt(r, lvl)}"
        else:
            s = f"{fmt(l, lvl)} {_SYMBOL[t.kind]} {fmt(r, lvl + 1)}"
        return f"({s})" if lvl < ctx else s

    return fmt(t, 0)


def term_vars(t: Term) -> set:
    if t.kind == "var":
        return {t.name}
    out = set()
    for a in t.args:
        out |= term_vars(a)
    return out


# ---------------------------------------------------------------------------
# tokenizer / parser

_PUNCT = ("->", "/\\", "\\/", "*", "(", ")", "=", ":")


def _tokenize(text):
    toks = []
    line = 1
    col = 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append((p, p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            if c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("num", text[i:j], line, col))
                col += j - i
                i = j
            elif c.isalpha() or c == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("name", text[i:j], line, col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        k, v, line, col = self.next()
        if k != kind:
            raise ParseError(f"expected {kind!r}, found {v!r}", line, col)
        return v

    def term(self):
        return self.imp_expr()

    def imp_expr(self):
        lhs = self.sum_expr()
        if self.peek()[0] == "->":
            self.next()
            return Imp(lhs, self.imp_expr())
        return lhs

    def sum_expr(self):
        t = self.mul_expr()
        while self.peek()[0] in ("/\\", "\\/"):
            op = self.next()[0]
            rhs = self.mul_expr()
            t = Meet(t, rhs) if op == "/\\" else Join(t, rhs)
        return t

    def mul_expr(self):
        t = self.atom()
        while self.peek()[0] == "*":
            self.next()
            t = Mul(t, self.atom())
        return t

    def atom(self):
        k, v, line, col = self.next()
        if k == "num":
            if v == "0":
                return CONST0
            if v == "1":
                return CONST1
            raise ParseError(f"only constants 0 and 1 are allowed, found {v}",
                             line, col)
        if k == "name":
            return Var(v)
        if k == "(":
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"unexpected token {v!r}", line, col)


def parse_term(text: str) -> Term:
    p = _Parser(_tokenize(text))
    t = p.term()
    k, v, line, col = p.peek()
    if k != "end":
        raise ParseError(f"trailing input {v!r}", line, col)
    return t


def parse_identity(text: str) -> Identity:
    toks = _tokenize(text)
    p = _Parser(toks)
    k, v, line, col = p.next()
    if (k, v) != ("name", "forall"):
        raise ParseError("identity must start with 'forall'", line, col)
    names = []
    while p.peek()[0] == "name":
        names.append(p.next()[1])
    p.expect(":")
    lhs = p.term()
    p.expect("=")
    rhs = p.term()
    k, v, line, col = p.peek()
    if k != "end":
        raise ParseError(f"trailing input {v!r}", line, col)
    declared = set(names)
    if len(declared) != len(names):
        raise ParseError("duplicate variable in quantifier", 1, 1)
    for t in (lhs, rhs):
        for name in sorted(term_vars(t)):
            if name not in declared:
                raise UndeclaredVariable(name)
    return Identity(tuple(names), lhs, rhs)


def parse_identity_file(text: str) -> list:
    """One identity per line; '#' comments and blank lines are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        try:
            out.append(parse_identity(stripped))
        except ParseError as e:
            raise ParseError(str(e), lineno, e.col) from None
    return out


# ---------------------------------------------------------------------------
# evaluation

def eval_term(h: FiniteHoop, t: Term, env: dict) -> int:
    if t.kind == "var":
        if t.name not in env:
            raise MissingBinding(f"no binding for variable {t.name!r}")
        return env[t.name]
    if t.kind == "one":
        return h.unit
    if t.kind == "zero":
        return hoops.require_bounded(h)
    l = eval_term(h, t.args[0], env)
    r = eval_term(h, t.args[1], env)
    if t.kind == "mul":
        return h.mul[l][r]
    if t.kind == "imp":
        return h.imp[l][r]
    if t.kind == "meet":
        return h.mul[l][h.imp[l][r]]
    if t.kind == "join":
        if not hoops.classify(h).is_basic:
            raise NotBasic("join is only evaluable on basic hoops")
        a = h.imp[h.imp[l][r]][r]
        b = h.imp[h.imp[r][l]][l]
        return h.mul[a][h.imp[a][b]]
    raise ValueError(f"unknown term kind {t.kind!r}")


def holds(h: FiniteHoop, ident: Identity):
    """Check an identity on every assignment.

    Returns (True, None) or (False, env) with the lexicographically
    first failing assignment (variable order as declared).
    """
    for values in product(range(h.order), repeat=len(ident.vars)):
        env = dict(zip(ident.vars, values))
        if eval_term(h, ident.lhs, env) != eval_term(h, ident.rhs, env):
            return False, env
    return True, None


# DSL forms of the hoop axioms and subvariety identities.
HOOP_AXIOM_IDENTITIES = {
    "i.comm": "forall x y : x * y = y * x",
    "i.assoc": "forall x y z : (x * y) * z = x * (y * z)",
    "i.unit": "forall x : x * 1 = x",
    "ii": "forall x : x -> x = 1",
    "iii": "forall x y : x * (x -> y) = y * (y -> x)",
    "iv": "forall x y z : (x * y) -> z = x -> (y -> z)",
    "v": "forall x : 0 -> x = 1",
}

VARIETY_IDENTITIES = {
    "basic": "forall x y z : ((x -> y) -> z) -> (((y -> x) -> z) -> z) = 1",
    "wajsberg": "forall x y : (x -> y) -> y = (y -> x) -> x",
    "godel": "forall x : x * x = x",
    "product": "forall x y z : (y -> z) \\/ ((y -> (x * y)) -> x) = 1",
    "involutive": "forall x : (x -> 0) -> 0 = x",
}


# ---------------------------------------------------------------------------
# algebra text format

def parse_algebra_named(text: str):
    """Parse the algebra text format; returns (name, FiniteHoop)."""
    lines = text.splitlines()
    fields = {}
    rows = {"mul": [], "imp": []}
    current = None
    name = None
    order = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "hoop":
            if len(parts) != 2:
                raise ParseError("expected 'hoop <name>'", lineno, 1)
            name = parts[1]
        elif key in ("elements", "unit", "bottom"):
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise ParseError(f"expected '{key} <int>'", lineno, 1)
            fields[key] = int(parts[1])
            if key == "elements":
                order = fields[key]
        elif key in ("mul", "imp"):
            if len(parts) != 1:
                raise ParseError(f"unexpected text after '{key}'", lineno,
                                 len(key) + 2)
            current = key
        else:
            if current is None:
                raise ParseError(f"unexpected line {line!r}", lineno, 1)
            if order is None:
                raise ParseError("table row before 'elements'", lineno, 1)
            if not all(p.lstrip("-").isdigit() for p in parts):
                raise ParseError("table rows must be integers", lineno, 1)
            if len(parts) != order:
                raise ParseError(
                    f"row has {len(parts)} entries, expected {order}",
                    lineno, 1)
            rows[current].append([int(p) for p in parts])
    if name is None:
        raise ParseError("missing 'hoop <name>' header", 1, 1)
    if order is None:
        raise ParseError("missing 'elements <n>' line", 1, 1)
    if "unit" not in fields:
        raise ParseError("missing 'unit <i>' line", 1, 1)
    for key in ("mul", "imp"):
        if len(rows[key]) != order:
            raise ParseError(
                f"{key} table has {len(rows[key])} rows, expected {order}",
                len(lines), 1)
    h = hoops.validate_hoop(order, fields["unit"], rows["mul"], rows["imp"],
                            fields.get("bottom"))
    return name, h


def parse_algebra(text: str) -> FiniteHoop:
    return parse_algebra_named(text)[1]


def format_algebra(h: FiniteHoop, name: str = "H") -> str:
    lines = [f"hoop {name}", f"elements {h.order}", f"unit {h.unit}"]
    if h.bottom is not None:
        lines.append(f"bottom {h.bottom}")
    lines.append("mul")
    lines.extend(" ".join(str(v) for v in row) for row in h.mul)
    lines.append("imp")
    lines.extend(" ".join(str(v) for v in row) for row in h.imp)
    return "\n".join(lines) + "\n"
