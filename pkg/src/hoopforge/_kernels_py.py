"""Pure-Python table kernels.

Reference implementation of the hot loops: axiom scans over operation
tables, lex-minimal canonical forms, isomorphism of tables, and the
depth-first enumerators for hoop tables and strong-action tables.
`hoopforge._kernels_cy` mirrors this module; `hoopforge.kernels` picks
one at import time.  All tables are flat row-major sequences of ints.

Scan orders are part of the contract (witnesses must match between
backends): axioms are checked in a fixed order and each axiom scans its
variables lexicographically.
"""

from __future__ import annotations

BACKEND = "python"

_NO_WITNESS = None


# ---------------------------------------------------------------------------
# axiom scans

def hoop_axiom_witness(n, unit, mul, imp, bottom):
    """First violated hoop axiom, or None.

    Returns (code, x, y, z) with -1 padding.  Axiom order: i.comm,
    i.assoc, i.unit, ii, iii, iv, then v when a bottom is given.
    """
    for x in range(n):
        for y in range(x + 1, n):
            if mul[x * n + y] != mul[y * n + x]:
                return ("i.comm", x, y, -1)
    for x in range(n):
        for y in range(n):
            xy = mul[x * n + y]
            for z in range(n):
                if mul[xy * n + z] != mul[x * n + mul[y * n + z]]:
                    return ("i.assoc", x, y, z)
    for x in range(n):
        if mul[unit * n + x] != x or mul[x * n + unit] != x:
            return ("i.unit", x, -1, -1)
    for x in range(n):
        if imp[x * n + x] != unit:
            return ("ii", x, -1, -1)
    for x in range(n):
        for y in range(n):
            if mul[x * n + imp[x * n + y]] != mul[y * n + imp[y * n + x]]:
                return ("iii", x, y, -1)
    for x in range(n):
        for y in range(n):
            xy = mul[x * n + y]
            for z in range(n):
                if imp[xy * n + z] != imp[x * n + imp[y * n + z]]:
                    return ("iv", x, y, z)
    if bottom >= 0:
        for x in range(n):
            if imp[bottom * n + x] != unit:
                return ("v", x, -1, -1)
    return _NO_WITNESS


def lalgebra_axiom_witness(n, unit, imp):
    """First violated L-algebra axiom (L1, L2, then the L3 quasi-identity)."""
    for x in range(n):
        if imp[unit * n + x] != x:
            return ("L1", x, -1, -1)
        if imp[x * n + x] != unit or imp[x * n + unit] != unit:
            return ("L1", x, -1, -1)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = imp[imp[x * n + y] * n + imp[x * n + z]]
                rhs = imp[imp[y * n + x] * n + imp[y * n + z]]
                if lhs != rhs:
                    return ("L2", x, y, z)
    for x in range(n):
        for y in range(n):
            if x != y and imp[x * n + y] == unit and imp[y * n + x] == unit:
                return ("L3", x, y, -1)
    return _NO_WITNESS


# ---------------------------------------------------------------------------
# colors, isomorphism, canonical form

def _refine_colors(n, unit, mul, imp):
    """Iterated invariant coloring of the carrier; stable across relabeling."""
    color = [0] * n
    color[unit] = 1
    ncol = 2
    while True:
        packed = []
        for x in range(n):
            row = sorted(
                color[y] + ncol * (
                    color[mul[x * n + y]] + ncol * (
                        color[imp[x * n + y]] + ncol * color[imp[y * n + x]]
                    )
                )
                for y in range(n)
            )
            packed.append((color[x], tuple(row)))
        order = sorted(set(packed))
        newcol = {sig: i for i, sig in enumerate(order)}
        new = [newcol[packed[x]] for x in range(n)]
        if len(order) == ncol and new == color:
            return color, ncol
        color, ncol = new, len(order)
        if ncol == n:
            return color, ncol


def _fingerprint(n, unit, mul, imp):
    """Relabeling-invariant 64-bit fingerprint used to bucket candidates."""
    color, ncol = _refine_colors(n, unit, mul, imp)
    cells = sorted(
        color[x] + ncol * (
            color[y] + ncol * (
                color[mul[x * n + y]] + ncol * color[imp[x * n + y]]
            )
        )
        for x in range(n)
        for y in range(n)
    )
    h = 1469598103934665603
    for v in cells:
        h = ((h ^ v) * 1099511628211) & 0xFFFFFFFFFFFFFFFF
    h = ((h ^ n) * 1099511628211) & 0xFFFFFFFFFFFFFFFF
    return h


def iso_tables(n1, unit1, mul1, imp1, n2, unit2, mul2, imp2):
    """A table isomorphism as a tuple (perm[old] = new), or None."""
    if n1 != n2:
        return None
    n = n1
    c1, k1 = _refine_colors(n, unit1, mul1, imp1)
    c2, k2 = _refine_colors(n, unit2, mul2, imp2)
    if k1 != k2 or sorted(c1) != sorted(c2):
        return None
    perm = [-1] * n
    used = [False] * n
    perm[unit1] = unit2
    used[unit2] = True
    if c1[unit1] != c2[unit2]:
        return None
    order = sorted(x for x in range(n) if x != unit1)

    def consistent(x):
        px = perm[x]
        for y in range(n):
            py = perm[y]
            if py < 0:
                continue
            v = perm[mul1[x * n + y]]
            if v >= 0 and v != mul2[px * n + py]:
                return False
            v = perm[mul1[y * n + x]]
            if v >= 0 and v != mul2[py * n + px]:
                return False
            v = perm[imp1[x * n + y]]
            if v >= 0 and v != imp2[px * n + py]:
                return False
            v = perm[imp1[y * n + x]]
            if v >= 0 and v != imp2[py * n + px]:
                return False
        return True

    def dfs(i):
        if i == len(order):
            return True
        x = order[i]
        for t in range(n):
            if used[t] or c2[t] != c1[x]:
                continue
            perm[x] = t
            used[t] = True
            if consistent(x) and dfs(i + 1):
                return True
            perm[x] = -1
            used[t] = False
        return False

    if dfs(0):
        return tuple(perm)
    return None


def _bottom_of(n, unit, imp):
    for x in range(n):
        ok = True
        for y in range(n):
            if imp[x * n + y] != unit:
                ok = False
                break
        if ok:
            return x
    return -1


def canonical_tables(n, unit, mul, imp):
    """Lex-minimal (mul, imp) over carrier permutations fixing the unit slot.

    The unit lands on slot n-1.  Valid hoop tables only: the order
    minimum exists and is pinned to slot 0, which is sound because the
    minimum is the unique element whose mul row is constant.
    """
    if n == 1:
        return (0,), (0,), (0,)
    bottom = _bottom_of(n, unit, imp)
    pos = [-1] * n
    inv = [-1] * n
    pos[unit] = n - 1
    inv[n - 1] = unit
    first_slot = 0
    if 0 <= bottom != unit:
        pos[bottom] = 0
        inv[0] = bottom
        first_slot = 1
    free = [x for x in range(n) if pos[x] < 0]
    nn = n * n
    best = [None]

    def build():
        bm = [0] * nn
        bi = [0] * nn
        for a in range(n):
            pa = pos[a]
            for b in range(n):
                pb = pos[b]
                bm[pa * n + pb] = pos[mul[a * n + b]]
                bi[pa * n + pb] = pos[imp[a * n + b]]
        return bm, bi

    def worse_than_best():
        # 1 when the determined prefix already exceeds the best table.
        bm, bi, _ = best[0]
        for tab, ref in ((mul, bm), (imp, bi)):
            for r in range(n):
                a = inv[r]
                if a < 0:
                    return False
                base = a * n
                rbase = r * n
                for c in range(n):
                    b = inv[c]
                    if b < 0:
                        return False
                    v = pos[tab[base + b]]
                    if v < 0:
                        return False
                    w = ref[rbase + c]
                    if v != w:
                        return v > w
        return False

    def dfs(k):
        if k == first_slot + len(free):
            bm, bi = build()
            if best[0] is None or (bm, bi) < (best[0][0], best[0][1]):
                best[0] = (bm, bi, list(pos))
            return
        for a in free:
            if pos[a] >= 0:
                continue
            pos[a] = k
            inv[k] = a
            if best[0] is None or not worse_than_best():
                dfs(k + 1)
            pos[a] = -1
            inv[k] = -1

    dfs(first_slot)
    bm, bi, perm = best[0]
    return tuple(perm), tuple(bm), tuple(bi)


# ---------------------------------------------------------------------------
# hoop enumeration

def _residuum(n, mul, down):
    """Residuum table from a completed mul table, or None if some max fails.

    Assumes the labeling is a linear extension of the divisibility
    order, so a maximum can only be the highest-index candidate.
    """
    imp = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            dy = down[y]
            s = 0
            for z in range(n):
                if (dy >> mul[z * n + x]) & 1:
                    s |= 1 << z
            m = s.bit_length() - 1
            if m < 0 or s & ~down[m]:
                return None
            imp[x * n + y] = m
    return imp


def enumerate_hoop_tables(n, budget):
    """All hoop tables of order n up to isomorphism.

    The search runs over labelings that are linear extensions of the
    divisibility order with the minimum at 0 and the unit at n-1, so
    every cell value is bounded by its smaller coordinate and the order
    is antisymmetric by construction.  Output is canonical and sorted.
    Returns (tables, nodes, exceeded); `exceeded` means the node budget
    stopped the search early.
    """
    if n == 1:
        return [((0,), (0,))], 0, False
    u = n - 1
    if n == 2:
        return [((0, 0, 0, 1), (1, 1, 0, 1))], 0, False

    nn = n * n
    mul = [-1] * nn
    for i in range(n):
        mul[u * n + i] = i
        mul[i * n + u] = i
        mul[i] = 0          # row 0: bottom is absorbing
        mul[i * n] = 0
    cells = [(i, j) for i in range(1, u) for j in range(i, u)]
    ncells = len(cells)

    down = [0] * n      # finalized down-set masks, per completed row
    down[0] = 1
    down[u] = (1 << n) - 1

    results = []
    buckets = {}
    nodes = 0
    exceeded = False
    pending = []        # residuum checks waiting on an unfinished row

    def assoc_ok(i, j):
        # triples whose evaluation may have just become defined
        for z in range(n):
            for (a, b, c) in ((i, j, z), (j, i, z), (z, i, j), (z, j, i)):
                t1 = mul[a * n + b]
                if t1 < 0:
                    continue
                t2 = mul[t1 * n + c]
                if t2 < 0:
                    continue
                t3 = mul[b * n + c]
                if t3 < 0:
                    continue
                t4 = mul[a * n + t3]
                if t4 < 0:
                    continue
                if t2 != t4:
                    return False
        for a in range(n):
            for b in range(n):
                t1 = mul[a * n + b]
                if t1 == i:
                    c = j
                elif t1 == j:
                    c = i
                else:
                    continue
                t2 = mul[t1 * n + c]
                t3 = mul[b * n + c]
                if t3 < 0 or t2 < 0:
                    continue
                t4 = mul[a * n + t3]
                if t4 >= 0 and t2 != t4:
                    return False
        for first, other in ((i, j), (j, i)):
            for b in range(n):
                for c in range(n):
                    t3 = mul[b * n + c]
                    if t3 != other:
                        continue
                    t1 = mul[first * n + b]
                    if t1 < 0:
                        continue
                    t2 = mul[t1 * n + c]
                    if t2 < 0:
                        continue
                    if t2 != mul[first * n + other]:
                        return False
        return True

    def residual_status(x, y, row_done):
        # 0 fail, 1 ok, 2 unresolved; the max can only be the highest-
        # index member of the candidate set
        dy = down[y]
        s = 0
        for z in range(n):
            if (dy >> mul[z * n + x]) & 1:
                s |= 1 << z
        m = s.bit_length() - 1
        if m < 0:
            return 0
        if m != u and m != 0 and m > row_done:
            return 2
        return 1 if s & ~down[m] == 0 else 0

    def row_checks(r):
        # finalize down[r], then run residuum existence for fresh pairs
        m = 0
        for y in range(n):
            m |= 1 << mul[r * n + y]
        down[r] = m
        fresh = [(r, y) for y in range(r + 1)] + [(y, r) for y in range(r)]
        keep = []
        for (x, y) in pending + fresh:
            st = residual_status(x, y, r)
            if st == 0:
                return None
            if st == 2:
                keep.append((x, y))
        return keep

    def leaf():
        for x in range(n):
            m = 0
            for y in range(n):
                m |= 1 << mul[x * n + y]
            down[x] = m
        imp = _residuum(n, mul, down)
        if imp is None:
            return
        fp = _fingerprint(n, u, mul, imp)
        bucket = buckets.setdefault(fp, [])
        for (bm, bi) in bucket:
            if iso_tables(n, u, mul, imp, n, u, bm, bi) is not None:
                return
        snap_m = list(mul)
        snap_i = list(imp)
        bucket.append((snap_m, snap_i))
        results.append((snap_m, snap_i))

    def dfs(ci):
        nonlocal nodes, exceeded, pending
        if ci == ncells:
            leaf()
            return
        i, j = cells[ci]
        row_end = j == u - 1
        for v in range(i + 1):
            nodes += 1
            if nodes > budget:
                exceeded = True
                return
            mul[i * n + j] = v
            mul[j * n + i] = v
            if assoc_ok(i, j):
                old_pending = pending
                ok = True
                if row_end:
                    keep = row_checks(i)
                    if keep is None:
                        ok = False
                    else:
                        pending = keep
                if ok:
                    dfs(ci + 1)
                pending = old_pending
            mul[i * n + j] = -1
            mul[j * n + i] = -1
            if exceeded:
                return

    dfs(0)
    out = []
    for (bm, bi) in results:
        _, cm, cimp = canonical_tables(n, u, bm, bi)
        out.append((cm, cimp))
    out.sort()
    return out, nodes, exceeded


# ---------------------------------------------------------------------------
# strong external actions

def action_axiom_witness(nb, nx, unitb, unitx, bmul, bimp, xmul, ximp,
                         f, g, level):
    """First violated action axiom at the given level, or None.

    level 0 checks E1-E4 (hoops), 1 adds B2 (basic and Gödel hoops),
    2 adds W2 instead (Wajsberg hoops).  Witness layout:
    (code, b1, b2, b3, x, y, z) padded with -1.

    E4, B2 and W2 quantify over action-invariant points only (tuples
    with f_{b}(w) = w for each bound pair): the action induced by a
    split extension with strong section satisfies them exactly on that
    domain, and the reconstruction theorem needs no more.
    """
    for b in range(nb):
        if f[b * nx + unitx] != unitx:
            return ("E1f", b, -1, -1, -1, -1, -1)
        if g[b * nx + unitx] != unitx:
            return ("E1g", b, -1, -1, -1, -1, -1)
    for x in range(nx):
        if f[unitb * nx + x] != x:
            return ("E2f", -1, -1, -1, x, -1, -1)
        if g[unitb * nx + x] != x:
            return ("E2g", -1, -1, -1, x, -1, -1)
    for b1 in range(nb):
        for b2 in range(nb):
            bb = bmul[b1 * nb + b2]
            for x in range(nx):
                for y in range(nx):
                    d = ximp[x * nx + y]
                    lhs = f[bb * nx + xmul[x * nx + g[b1 * nx + d]]]
                    rhs = f[bb * nx + xmul[x * nx + d]]
                    if lhs != rhs:
                        return ("E3", b1, b2, -1, x, y, -1)
    for b1 in range(nb):
        for b2 in range(nb):
            bb = bmul[b1 * nb + b2]
            for b3 in range(nb):
                gl = bimp[b3 * nb + bb]
                gr = bimp[bimp[b2 * nb + b3] * nb + b1]
                gi = bimp[b3 * nb + b2]
                for x in range(nx):
                    if f[b1 * nx + x] != x:
                        continue
                    for y in range(nx):
                        if f[b2 * nx + y] != y:
                            continue
                        fv = f[bb * nx + xmul[x * nx + y]]
                        for z in range(nx):
                            if f[b3 * nx + z] != z:
                                continue
                            lhs = g[gl * nx + ximp[fv * nx + z]]
                            rhs = g[gr * nx + ximp[x * nx + g[gi * nx + ximp[y * nx + z]]]]
                            if lhs != rhs:
                                return ("E4", b1, b2, b3, x, y, z)
    if level == 1:
        for b1 in range(nb):
            for b2 in range(nb):
                i12 = bimp[b1 * nb + b2]
                i21 = bimp[b2 * nb + b1]
                for b3 in range(nb):
                    bt = bimp[bimp[bimp[i21 * nb + b3] * nb + b3] * nb
                              + bimp[i12 * nb + b3]]
                    gp = bimp[b3 * nb + i12]
                    gq = bimp[b3 * nb + i21]
                    for x in range(nx):
                        if f[b1 * nx + x] != x:
                            continue
                        for y in range(nx):
                            if f[b2 * nx + y] != y:
                                continue
                            gxy = g[i21 * nx + ximp[x * nx + y]]
                            gyx = g[i12 * nx + ximp[y * nx + x]]
                            for z in range(nx):
                                if f[b3 * nx + z] != z:
                                    continue
                                p = g[gp * nx + ximp[gxy * nx + z]]
                                q = g[gq * nx + ximp[gyx * nx + z]]
                                v = g[bt * nx + ximp[p * nx + ximp[q * nx + z]]]
                                if v != unitx:
                                    return ("B2", b1, b2, b3, x, y, z)
    elif level == 2:
        for b1 in range(nb):
            for b2 in range(nb):
                i21 = bimp[b2 * nb + b1]
                i12 = bimp[b1 * nb + b2]
                for x in range(nx):
                    if f[b1 * nx + x] != x:
                        continue
                    for y in range(nx):
                        if f[b2 * nx + y] != y:
                            continue
                        lhs = ximp[g[i21 * nx + ximp[x * nx + y]] * nx + y]
                        rhs = ximp[g[i12 * nx + ximp[y * nx + x]] * nx + x]
                        if lhs != rhs:
                            return ("W2", b1, b2, -1, x, y, -1)
    return _NO_WITNESS


def enumerate_action_tables(nb, nx, unitb, unitx, bmul, bimp, xmul, ximp,
                            level, budget):
    """All (f, g) tables passing the level's axioms, in lex order."""
    f = [-1] * (nb * nx)
    g = [-1] * (nb * nx)
    for x in range(nx):
        f[unitb * nx + x] = x
        g[unitb * nx + x] = x
    for b in range(nb):
        f[b * nx + unitx] = unitx
        g[b * nx + unitx] = unitx
    cells = []
    for tab in (0, 1):
        for b in range(nb):
            if b == unitb:
                continue
            for x in range(nx):
                if x == unitx:
                    continue
                cells.append((tab, b, x))
    out = []
    nodes = 0
    exceeded = False

    def dfs(ci):
        nonlocal nodes, exceeded
        if ci == len(cells):
            if action_axiom_witness(nb, nx, unitb, unitx, bmul, bimp,
                                    xmul, ximp, f, g, level) is None:
                out.append((tuple(f), tuple(g)))
            return
        tab, b, x = cells[ci]
        t = f if tab == 0 else g
        for v in range(nx):
            nodes += 1
            if nodes > budget:
                exceeded = True
                return
            t[b * nx + x] = v
            dfs(ci + 1)
            t[b * nx + x] = -1
            if exceeded:
                return

    dfs(0)
    return out, nodes, exceeded
