# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled table kernels; mirrors hoopforge._kernels_py exactly
(same functions, scan orders, witnesses, and output order).
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "compiled"

ctypedef long long i64


cdef int* _alloc(Py_ssize_t k) except NULL:
    cdef int* p = <int*> PyMem_Malloc(k * sizeof(int))
    if p == NULL:
        raise MemoryError()
    return p


cdef void _fill(int* dst, seq, Py_ssize_t k):
    cdef Py_ssize_t i
    for i in range(k):
        dst[i] = seq[i]


# ---------------------------------------------------------------------------
# axiom scans

def hoop_axiom_witness(int n, int unit, mul, imp, int bottom):
    """First violated hoop axiom, or None; see the python backend."""
    cdef int* m = _alloc(n * n)
    cdef int* im = _alloc(n * n)
    cdef int x, y, z, xy
    try:
        _fill(m, mul, n * n)
        _fill(im, imp, n * n)
        for x in range(n):
            for y in range(x + 1, n):
                if m[x * n + y] != m[y * n + x]:
                    return ("i.comm", x, y, -1)
        for x in range(n):
            for y in range(n):
                xy = m[x * n + y]
                for z in range(n):
                    if m[xy * n + z] != m[x * n + m[y * n + z]]:
                        return ("i.assoc", x, y, z)
        for x in range(n):
            if m[unit * n + x] != x or m[x * n + unit] != x:
                return ("i.unit", x, -1, -1)
        for x in range(n):
            if im[x * n + x] != unit:
                return ("ii", x, -1, -1)
        for x in range(n):
            for y in range(n):
                if m[x * n + im[x * n + y]] != m[y * n + im[y * n + x]]:
                    return ("iii", x, y, -1)
        for x in range(n):
            for y in range(n):
                xy = m[x * n + y]
                for z in range(n):
                    if im[xy * n + z] != im[x * n + im[y * n + z]]:
                        return ("iv", x, y, z)
        if bottom >= 0:
            for x in range(n):
                if im[bottom * n + x] != unit:
                    return ("v", x, -1, -1)
        return None
    finally:
        PyMem_Free(m)
        PyMem_Free(im)


def lalgebra_axiom_witness(int n, int unit, imp):
    cdef int* im = _alloc(n * n)
    cdef int x, y, z, lhs, rhs
    try:
        _fill(im, imp, n * n)
        for x in range(n):
            if im[unit * n + x] != x:
                return ("L1", x, -1, -1)
            if im[x * n + x] != unit or im[x * n + unit] != unit:
                return ("L1", x, -1, -1)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = im[im[x * n + y] * n + im[x * n + z]]
                    rhs = im[im[y * n + x] * n + im[y * n + z]]
                    if lhs != rhs:
                        return ("L2", x, y, z)
        for x in range(n):
            for y in range(n):
                if x != y and im[x * n + y] == unit and im[y * n + x] == unit:
                    return ("L3", x, y, -1)
        return None
    finally:
        PyMem_Free(im)


# ---------------------------------------------------------------------------
# colors / fingerprint / isomorphism

cdef inline int _sig_cmp(i64* sig, int a, int b, int n):
    cdef int k
    cdef Py_ssize_t pa = a * (n + 1), pb = b * (n + 1)
    for k in range(n + 1):
        if sig[pa + k] < sig[pb + k]:
            return -1
        if sig[pa + k] > sig[pb + k]:
            return 1
    return 0


cdef int _refine_colors_c(int n, int unit, int* mul, int* imp, int* color):
    """Iterated invariant coloring; returns the number of colors."""
    cdef int ncol = 2, newn, x, y, i, j, changed, ti
    cdef i64 base, tmp
    cdef i64* sig = <i64*> PyMem_Malloc(n * (n + 1) * sizeof(i64))
    cdef int* order = _alloc(n)
    cdef int* newc = _alloc(n)
    if sig == NULL:
        PyMem_Free(order)
        PyMem_Free(newc)
        raise MemoryError()
    try:
        for x in range(n):
            color[x] = 1 if x == unit else 0
        while True:
            base = ncol
            for x in range(n):
                sig[x * (n + 1)] = color[x]
                for y in range(n):
                    sig[x * (n + 1) + 1 + y] = (
                        color[y] + base * (
                            color[mul[x * n + y]] + base * (
                                color[imp[x * n + y]]
                                + base * color[imp[y * n + x]])))
                for i in range(2, n + 1):
                    tmp = sig[x * (n + 1) + i]
                    j = i
                    while j > 1 and sig[x * (n + 1) + j - 1] > tmp:
                        sig[x * (n + 1) + j] = sig[x * (n + 1) + j - 1]
                        j -= 1
                    sig[x * (n + 1) + j] = tmp
            for x in range(n):
                order[x] = x
            for i in range(1, n):
                ti = order[i]
                j = i
                while j > 0 and _sig_cmp(sig, order[j - 1], ti, n) > 0:
                    order[j] = order[j - 1]
                    j -= 1
                order[j] = ti
            newn = 0
            newc[order[0]] = 0
            for i in range(1, n):
                if _sig_cmp(sig, order[i - 1], order[i], n) != 0:
                    newn += 1
                newc[order[i]] = newn
            newn += 1
            changed = 0
            if newn != ncol:
                changed = 1
            else:
                for x in range(n):
                    if newc[x] != color[x]:
                        changed = 1
                        break
            for x in range(n):
                color[x] = newc[x]
            ncol = newn
            if not changed:
                return ncol
            if ncol == n:
                return ncol
    finally:
        PyMem_Free(sig)
        PyMem_Free(order)
        PyMem_Free(newc)


cdef unsigned long long _fingerprint_c(int n, int unit, int* mul, int* imp,
                                       int* color_buf, i64* cell_buf):
    cdef int ncol = _refine_colors_c(n, unit, mul, imp, color_buf)
    cdef i64 base = ncol
    cdef int x, y, i, j
    cdef i64 tmp
    cdef unsigned long long h = 1469598103934665603ULL
    for x in range(n):
        for y in range(n):
            cell_buf[x * n + y] = (
                color_buf[x] + base * (
                    color_buf[y] + base * (
                        color_buf[mul[x * n + y]]
                        + base * color_buf[imp[x * n + y]])))
    for i in range(1, n * n):
        tmp = cell_buf[i]
        j = i
        while j > 0 and cell_buf[j - 1] > tmp:
            cell_buf[j] = cell_buf[j - 1]
            j -= 1
        cell_buf[j] = tmp
    for i in range(n * n):
        h = (h ^ <unsigned long long> cell_buf[i]) * 1099511628211ULL
    h = (h ^ <unsigned long long> n) * 1099511628211ULL
    return h


cdef class _IsoSearch:
    cdef int n
    cdef int* mul1
    cdef int* imp1
    cdef int* mul2
    cdef int* imp2
    cdef int* c1
    cdef int* c2
    cdef int* perm
    cdef int* used
    cdef int* order

    def __cinit__(self, int n):
        self.n = n
        self.mul1 = _alloc(n * n)
        self.imp1 = _alloc(n * n)
        self.mul2 = _alloc(n * n)
        self.imp2 = _alloc(n * n)
        self.c1 = _alloc(n)
        self.c2 = _alloc(n)
        self.perm = _alloc(n)
        self.used = _alloc(n)
        self.order = _alloc(n)

    def __dealloc__(self):
        PyMem_Free(self.mul1)
        PyMem_Free(self.imp1)
        PyMem_Free(self.mul2)
        PyMem_Free(self.imp2)
        PyMem_Free(self.c1)
        PyMem_Free(self.c2)
        PyMem_Free(self.perm)
        PyMem_Free(self.used)
        PyMem_Free(self.order)

    cdef int consistent(self, int x):
        cdef int n = self.n, y, px, py, v
        px = self.perm[x]
        for y in range(n):
            py = self.perm[y]
            if py < 0:
                continue
            v = self.perm[self.mul1[x * n + y]]
            if v >= 0 and v != self.mul2[px * n + py]:
                return 0
            v = self.perm[self.mul1[y * n + x]]
            if v >= 0 and v != self.mul2[py * n + px]:
                return 0
            v = self.perm[self.imp1[x * n + y]]
            if v >= 0 and v != self.imp2[px * n + py]:
                return 0
            v = self.perm[self.imp1[y * n + x]]
            if v >= 0 and v != self.imp2[py * n + px]:
                return 0
        return 1

    cdef int dfs(self, int i, int nfree):
        cdef int n = self.n, x, t
        if i == nfree:
            return 1
        x = self.order[i]
        for t in range(n):
            if self.used[t] or self.c2[t] != self.c1[x]:
                continue
            self.perm[x] = t
            self.used[t] = 1
            if self.consistent(x) and self.dfs(i + 1, nfree):
                return 1
            self.perm[x] = -1
            self.used[t] = 0
        return 0


cdef int _iso_tables_c(_IsoSearch s, int unit1, int unit2):
    cdef int n = s.n, x, y, k1, k2, cnt, nfree
    k1 = _refine_colors_c(n, unit1, s.mul1, s.imp1, s.c1)
    k2 = _refine_colors_c(n, unit2, s.mul2, s.imp2, s.c2)
    if k1 != k2:
        return 0
    for x in range(k1):
        cnt = 0
        for y in range(n):
            if s.c1[y] == x:
                cnt += 1
            if s.c2[y] == x:
                cnt -= 1
        if cnt != 0:
            return 0
    if s.c1[unit1] != s.c2[unit2]:
        return 0
    for x in range(n):
        s.perm[x] = -1
        s.used[x] = 0
    s.perm[unit1] = unit2
    s.used[unit2] = 1
    nfree = 0
    for x in range(n):
        if x != unit1:
            s.order[nfree] = x
            nfree += 1
    return s.dfs(0, nfree)


def iso_tables(int n1, int unit1, mul1, imp1, int n2, int unit2, mul2, imp2):
    if n1 != n2:
        return None
    cdef _IsoSearch s = _IsoSearch(n1)
    cdef int i
    _fill(s.mul1, mul1, n1 * n1)
    _fill(s.imp1, imp1, n1 * n1)
    _fill(s.mul2, mul2, n1 * n1)
    _fill(s.imp2, imp2, n1 * n1)
    if _iso_tables_c(s, unit1, unit2):
        return tuple(s.perm[i] for i in range(n1))
    return None


# ---------------------------------------------------------------------------
# canonical form

cdef class _CanonSearch:
    cdef int n, first_slot, nfree, have_best
    cdef int* mul
    cdef int* imp
    cdef int* pos
    cdef int* inv
    cdef int* free_elts
    cdef int* best_mul
    cdef int* best_imp
    cdef int* best_pos
    cdef int* tmp_mul
    cdef int* tmp_imp

    def __cinit__(self, int n):
        self.n = n
        self.mul = _alloc(n * n)
        self.imp = _alloc(n * n)
        self.pos = _alloc(n)
        self.inv = _alloc(n)
        self.free_elts = _alloc(n)
        self.best_mul = _alloc(n * n)
        self.best_imp = _alloc(n * n)
        self.best_pos = _alloc(n)
        self.tmp_mul = _alloc(n * n)
        self.tmp_imp = _alloc(n * n)
        self.have_best = 0

    def __dealloc__(self):
        PyMem_Free(self.mul)
        PyMem_Free(self.imp)
        PyMem_Free(self.pos)
        PyMem_Free(self.inv)
        PyMem_Free(self.free_elts)
        PyMem_Free(self.best_mul)
        PyMem_Free(self.best_imp)
        PyMem_Free(self.best_pos)
        PyMem_Free(self.tmp_mul)
        PyMem_Free(self.tmp_imp)

    cdef int worse_than_best(self):
        cdef int n = self.n, r, c, a, b, v, w, t
        cdef int* tab
        cdef int* ref
        for t in range(2):
            tab = self.mul if t == 0 else self.imp
            ref = self.best_mul if t == 0 else self.best_imp
            for r in range(n):
                a = self.inv[r]
                if a < 0:
                    return 0
                for c in range(n):
                    b = self.inv[c]
                    if b < 0:
                        return 0
                    v = self.pos[tab[a * n + b]]
                    if v < 0:
                        return 0
                    w = ref[r * n + c]
                    if v != w:
                        return 1 if v > w else 0
        return 0

    cdef void take_if_better(self):
        cdef int n = self.n, a, b, pa, r, better, decided
        for a in range(n):
            pa = self.pos[a]
            for b in range(n):
                self.tmp_mul[pa * n + self.pos[b]] = self.pos[self.mul[a * n + b]]
                self.tmp_imp[pa * n + self.pos[b]] = self.pos[self.imp[a * n + b]]
        better = 0
        if not self.have_best:
            better = 1
        else:
            decided = 0
            for r in range(n * n):
                if self.tmp_mul[r] != self.best_mul[r]:
                    better = 1 if self.tmp_mul[r] < self.best_mul[r] else 0
                    decided = 1
                    break
            if not decided:
                for r in range(n * n):
                    if self.tmp_imp[r] != self.best_imp[r]:
                        better = 1 if self.tmp_imp[r] < self.best_imp[r] else 0
                        break
        if better:
            for r in range(n * n):
                self.best_mul[r] = self.tmp_mul[r]
                self.best_imp[r] = self.tmp_imp[r]
            for r in range(n):
                self.best_pos[r] = self.pos[r]
            self.have_best = 1

    cdef void dfs(self, int k):
        cdef int i, a
        if k == self.first_slot + self.nfree:
            self.take_if_better()
            return
        for i in range(self.nfree):
            a = self.free_elts[i]
            if self.pos[a] >= 0:
                continue
            self.pos[a] = k
            self.inv[k] = a
            if not self.have_best or not self.worse_than_best():
                self.dfs(k + 1)
            self.pos[a] = -1
            self.inv[k] = -1


cdef void _canonical_c(_CanonSearch s, int unit):
    cdef int n = s.n, x, y, bottom, ok
    bottom = -1
    for x in range(n):
        ok = 1
        for y in range(n):
            if s.imp[x * n + y] != unit:
                ok = 0
                break
        if ok:
            bottom = x
            break
    for x in range(n):
        s.pos[x] = -1
        s.inv[x] = -1
    s.pos[unit] = n - 1
    s.inv[n - 1] = unit
    s.first_slot = 0
    if bottom >= 0 and bottom != unit:
        s.pos[bottom] = 0
        s.inv[0] = bottom
        s.first_slot = 1
    s.nfree = 0
    for x in range(n):
        if s.pos[x] < 0:
            s.free_elts[s.nfree] = x
            s.nfree += 1
    s.have_best = 0
    s.dfs(s.first_slot)


def canonical_tables(int n, int unit, mul, imp):
    if n == 1:
        return (0,), (0,), (0,)
    cdef _CanonSearch s = _CanonSearch(n)
    cdef int i
    _fill(s.mul, mul, n * n)
    _fill(s.imp, imp, n * n)
    _canonical_c(s, unit)
    perm = tuple(s.best_pos[i] for i in range(n))
    bm = tuple(s.best_mul[i] for i in range(n * n))
    bi = tuple(s.best_imp[i] for i in range(n * n))
    return perm, bm, bi


# ---------------------------------------------------------------------------
# hoop enumeration

cdef class _HoopEnum:
    cdef int n, u, ncells, exceeded
    cdef long long nodes, budget
    cdef int* mul
    cdef int* ci_row
    cdef int* ci_col
    cdef unsigned long long* down
    cdef int* color_buf
    cdef i64* cell_buf
    cdef int* imp_buf
    cdef list pending
    cdef dict buckets
    cdef list results
    cdef _IsoSearch iso

    def __cinit__(self, int n, long long budget):
        cdef int i, j, k
        self.n = n
        self.u = n - 1
        self.budget = budget
        self.nodes = 0
        self.exceeded = 0
        self.mul = _alloc(n * n)
        self.ci_row = _alloc(n * n)
        self.ci_col = _alloc(n * n)
        self.down = <unsigned long long*> PyMem_Malloc(
            n * sizeof(unsigned long long))
        self.color_buf = _alloc(n)
        self.cell_buf = <i64*> PyMem_Malloc(n * n * sizeof(i64))
        self.imp_buf = _alloc(n * n)
        if self.down == NULL or self.cell_buf == NULL:
            raise MemoryError()
        for i in range(n * n):
            self.mul[i] = -1
        for i in range(n):
            self.mul[self.u * n + i] = i
            self.mul[i * n + self.u] = i
            self.mul[i] = 0
            self.mul[i * n] = 0
        k = 0
        for i in range(1, self.u):
            for j in range(i, self.u):
                self.ci_row[k] = i
                self.ci_col[k] = j
                k += 1
        self.ncells = k
        self.down[0] = 1
        self.down[self.u] = ((<unsigned long long> 1) << n) - 1
        self.pending = []
        self.buckets = {}
        self.results = []
        self.iso = _IsoSearch(n)

    def __dealloc__(self):
        PyMem_Free(self.mul)
        PyMem_Free(self.ci_row)
        PyMem_Free(self.ci_col)
        PyMem_Free(self.down)
        PyMem_Free(self.color_buf)
        PyMem_Free(self.cell_buf)
        PyMem_Free(self.imp_buf)

    cdef int assoc_ok(self, int i, int j):
        cdef int n = self.n, z, a, b, c, t1, t2, t3, t4, q, first, other
        cdef int* m = self.mul
        for z in range(n):
            for q in range(4):
                if q == 0:
                    a = i; b = j; c = z
                elif q == 1:
                    a = j; b = i; c = z
                elif q == 2:
                    a = z; b = i; c = j
                else:
                    a = z; b = j; c = i
                t1 = m[a * n + b]
                if t1 < 0:
                    continue
                t2 = m[t1 * n + c]
                if t2 < 0:
                    continue
                t3 = m[b * n + c]
                if t3 < 0:
                    continue
                t4 = m[a * n + t3]
                if t4 < 0:
                    continue
                if t2 != t4:
                    return 0
        for a in range(n):
            for b in range(n):
                t1 = m[a * n + b]
                if t1 == i:
                    c = j
                elif t1 == j:
                    c = i
                else:
                    continue
                t2 = m[t1 * n + c]
                t3 = m[b * n + c]
                if t3 < 0 or t2 < 0:
                    continue
                t4 = m[a * n + t3]
                if t4 >= 0 and t2 != t4:
                    return 0
        for q in range(2):
            first = i if q == 0 else j
            other = j if q == 0 else i
            for b in range(n):
                for c in range(n):
                    t3 = m[b * n + c]
                    if t3 != other:
                        continue
                    t1 = m[first * n + b]
                    if t1 < 0:
                        continue
                    t2 = m[t1 * n + c]
                    if t2 < 0:
                        continue
                    if t2 != m[first * n + other]:
                        return 0
        return 1

    cdef int residual_status(self, int x, int y, int row_done):
        cdef int n = self.n, z, mm
        cdef unsigned long long dy = self.down[y], s = 0
        cdef int* m = self.mul
        for z in range(n):
            if (dy >> m[z * n + x]) & 1:
                s |= (<unsigned long long> 1) << z
        if s == 0:
            return 0
        mm = n - 1
        while not (s >> mm) & 1:
            mm -= 1
        if mm != self.u and mm != 0 and mm > row_done:
            return 2
        return 1 if (s & ~self.down[mm]) == 0 else 0

    cdef object row_checks(self, int r):
        cdef int n = self.n, y, st
        cdef unsigned long long mask = 0
        for y in range(n):
            mask |= (<unsigned long long> 1) << self.mul[r * n + y]
        self.down[r] = mask
        keep = []
        for (x, y) in self.pending:
            st = self.residual_status(x, y, r)
            if st == 0:
                return None
            if st == 2:
                keep.append((x, y))
        for y in range(r + 1):
            st = self.residual_status(r, y, r)
            if st == 0:
                return None
            if st == 2:
                keep.append((r, y))
        for y in range(r):
            st = self.residual_status(y, r, r)
            if st == 0:
                return None
            if st == 2:
                keep.append((y, r))
        return keep

    cdef int residuum(self):
        cdef int n = self.n, x, y, z, mm
        cdef unsigned long long dy, s
        for x in range(n):
            s = 0
            for y in range(n):
                s |= (<unsigned long long> 1) << self.mul[x * n + y]
            self.down[x] = s
        for x in range(n):
            for y in range(n):
                dy = self.down[y]
                s = 0
                for z in range(n):
                    if (dy >> self.mul[z * n + x]) & 1:
                        s |= (<unsigned long long> 1) << z
                if s == 0:
                    return 0
                mm = n - 1
                while not (s >> mm) & 1:
                    mm -= 1
                if s & ~self.down[mm]:
                    return 0
                self.imp_buf[x * n + y] = mm
        return 1

    cdef void leaf(self):
        cdef int n = self.n, q
        cdef unsigned long long fp
        if not self.residuum():
            return
        fp = _fingerprint_c(n, self.u, self.mul, self.imp_buf,
                            self.color_buf, self.cell_buf)
        key = fp
        bucket = self.buckets.get(key)
        if bucket is None:
            bucket = []
            self.buckets[key] = bucket
        snap_m = tuple(self.mul[q] for q in range(n * n))
        snap_i = tuple(self.imp_buf[q] for q in range(n * n))
        for (bm, bi) in bucket:
            _fill(self.iso.mul1, snap_m, n * n)
            _fill(self.iso.imp1, snap_i, n * n)
            _fill(self.iso.mul2, bm, n * n)
            _fill(self.iso.imp2, bi, n * n)
            if _iso_tables_c(self.iso, self.u, self.u):
                return
        bucket.append((snap_m, snap_i))
        self.results.append((snap_m, snap_i))

    cdef void dfs(self, int ci):
        cdef int n = self.n, i, j, v, row_end, ok
        if ci == self.ncells:
            self.leaf()
            return
        i = self.ci_row[ci]
        j = self.ci_col[ci]
        row_end = 1 if j == self.u - 1 else 0
        for v in range(i + 1):
            self.nodes += 1
            if self.nodes > self.budget:
                self.exceeded = 1
                return
            self.mul[i * n + j] = v
            self.mul[j * n + i] = v
            if self.assoc_ok(i, j):
                old_pending = self.pending
                ok = 1
                if row_end:
                    keep = self.row_checks(i)
                    if keep is None:
                        ok = 0
                    else:
                        self.pending = keep
                if ok:
                    self.dfs(ci + 1)
                self.pending = old_pending
            self.mul[i * n + j] = -1
            self.mul[j * n + i] = -1
            if self.exceeded:
                return


def enumerate_hoop_tables(int n, long long budget):
    if n == 1:
        return [((0,), (0,))], 0, False
    if n == 2:
        return [((0, 0, 0, 1), (1, 1, 0, 1))], 0, False
    cdef _HoopEnum e = _HoopEnum(n, budget)
    e.dfs(0)
    out = []
    for (bm, bi) in e.results:
        _, cm, ci = canonical_tables(n, n - 1, bm, bi)
        out.append((cm, ci))
    out.sort()
    return out, e.nodes, bool(e.exceeded)


# ---------------------------------------------------------------------------
# strong external actions

cdef int _action_witness_c(int nb, int nx, int unitb, int unitx,
                           int* bmul, int* bimp, int* xmul, int* ximp,
                           int* f, int* g, int level, int partial,
                           int* wout):
    """0 = no violation; 1 = violation (wout filled).

    With partial=1, instances touching unassigned cells (-1) are
    skipped; E1/E2 are skipped too since the enumerator pins them.
    E4/B2/W2 quantify over action-invariant points only.
    """
    cdef int b, b1, b2, b3, x, y, z, bb, d, gl, gr, gi, fv, lhs, rhs
    cdef int i12, i21, bt, gp, gq, gxy, gyx, p, q, v, t
    if not partial:
        for b in range(nb):
            if f[b * nx + unitx] != unitx:
                wout[0] = 0; wout[1] = b
                return 1
            if g[b * nx + unitx] != unitx:
                wout[0] = 1; wout[1] = b
                return 1
        for x in range(nx):
            if f[unitb * nx + x] != x:
                wout[0] = 2; wout[4] = x
                return 1
            if g[unitb * nx + x] != x:
                wout[0] = 3; wout[4] = x
                return 1
    for b1 in range(nb):
        for b2 in range(nb):
            bb = bmul[b1 * nb + b2]
            for x in range(nx):
                for y in range(nx):
                    d = ximp[x * nx + y]
                    t = g[b1 * nx + d]
                    if t < 0:
                        continue
                    lhs = f[bb * nx + xmul[x * nx + t]]
                    rhs = f[bb * nx + xmul[x * nx + d]]
                    if lhs < 0 or rhs < 0:
                        continue
                    if lhs != rhs:
                        wout[0] = 4
                        wout[1] = b1; wout[2] = b2
                        wout[4] = x; wout[5] = y
                        return 1
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
                        if fv < 0:
                            continue
                        for z in range(nx):
                            if f[b3 * nx + z] != z:
                                continue
                            lhs = g[gl * nx + ximp[fv * nx + z]]
                            t = g[gi * nx + ximp[y * nx + z]]
                            if lhs < 0 or t < 0:
                                continue
                            rhs = g[gr * nx + ximp[x * nx + t]]
                            if rhs < 0:
                                continue
                            if lhs != rhs:
                                wout[0] = 5
                                wout[1] = b1; wout[2] = b2; wout[3] = b3
                                wout[4] = x; wout[5] = y; wout[6] = z
                                return 1
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
                            if gxy < 0 or gyx < 0:
                                continue
                            for z in range(nx):
                                if f[b3 * nx + z] != z:
                                    continue
                                p = g[gp * nx + ximp[gxy * nx + z]]
                                q = g[gq * nx + ximp[gyx * nx + z]]
                                if p < 0 or q < 0:
                                    continue
                                v = g[bt * nx + ximp[p * nx + ximp[q * nx + z]]]
                                if v < 0:
                                    continue
                                if v != unitx:
                                    wout[0] = 6
                                    wout[1] = b1; wout[2] = b2; wout[3] = b3
                                    wout[4] = x; wout[5] = y; wout[6] = z
                                    return 1
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
                        p = g[i21 * nx + ximp[x * nx + y]]
                        q = g[i12 * nx + ximp[y * nx + x]]
                        if p < 0 or q < 0:
                            continue
                        lhs = ximp[p * nx + y]
                        rhs = ximp[q * nx + x]
                        if lhs != rhs:
                            wout[0] = 7
                            wout[1] = b1; wout[2] = b2
                            wout[4] = x; wout[5] = y
                            return 1
    return 0


_ACTION_CODES = ("E1f", "E1g", "E2f", "E2g", "E3", "E4", "B2", "W2")


def action_axiom_witness(int nb, int nx, int unitb, int unitx,
                         bmul, bimp, xmul, ximp, f, g, int level):
    cdef int* bm = _alloc(nb * nb)
    cdef int* bi = _alloc(nb * nb)
    cdef int* xm = _alloc(nx * nx)
    cdef int* xi = _alloc(nx * nx)
    cdef int* fa = _alloc(nb * nx)
    cdef int* ga = _alloc(nb * nx)
    cdef int w[7]
    cdef int k
    try:
        _fill(bm, bmul, nb * nb)
        _fill(bi, bimp, nb * nb)
        _fill(xm, xmul, nx * nx)
        _fill(xi, ximp, nx * nx)
        _fill(fa, f, nb * nx)
        _fill(ga, g, nb * nx)
        for k in range(7):
            w[k] = -1
        if _action_witness_c(nb, nx, unitb, unitx, bm, bi, xm, xi,
                             fa, ga, level, 0, w):
            return (_ACTION_CODES[w[0]], w[1], w[2], w[3], w[4], w[5], w[6])
        return None
    finally:
        PyMem_Free(bm)
        PyMem_Free(bi)
        PyMem_Free(xm)
        PyMem_Free(xi)
        PyMem_Free(fa)
        PyMem_Free(ga)


cdef class _ActionEnum:
    cdef int nb, nx, unitb, unitx, level, ncells, exceeded
    cdef long long nodes, budget
    cdef int* bmul
    cdef int* bimp
    cdef int* xmul
    cdef int* ximp
    cdef int* f
    cdef int* g
    cdef int* cell_tab
    cdef int* cell_b
    cdef int* cell_x
    cdef list out

    def __cinit__(self, int nb, int nx, int unitb, int unitx, int level,
                  long long budget):
        cdef int b, x, k, tab
        self.nb = nb
        self.nx = nx
        self.unitb = unitb
        self.unitx = unitx
        self.level = level
        self.budget = budget
        self.nodes = 0
        self.exceeded = 0
        self.bmul = _alloc(nb * nb)
        self.bimp = _alloc(nb * nb)
        self.xmul = _alloc(nx * nx)
        self.ximp = _alloc(nx * nx)
        self.f = _alloc(nb * nx)
        self.g = _alloc(nb * nx)
        self.cell_tab = _alloc(2 * nb * nx)
        self.cell_b = _alloc(2 * nb * nx)
        self.cell_x = _alloc(2 * nb * nx)
        for k in range(nb * nx):
            self.f[k] = -1
            self.g[k] = -1
        for x in range(nx):
            self.f[unitb * nx + x] = x
            self.g[unitb * nx + x] = x
        for b in range(nb):
            self.f[b * nx + unitx] = unitx
            self.g[b * nx + unitx] = unitx
        k = 0
        for tab in range(2):
            for b in range(nb):
                if b == unitb:
                    continue
                for x in range(nx):
                    if x == unitx:
                        continue
                    self.cell_tab[k] = tab
                    self.cell_b[k] = b
                    self.cell_x[k] = x
                    k += 1
        self.ncells = k
        self.out = []

    def __dealloc__(self):
        PyMem_Free(self.bmul)
        PyMem_Free(self.bimp)
        PyMem_Free(self.xmul)
        PyMem_Free(self.ximp)
        PyMem_Free(self.f)
        PyMem_Free(self.g)
        PyMem_Free(self.cell_tab)
        PyMem_Free(self.cell_b)
        PyMem_Free(self.cell_x)

    cdef void dfs(self, int ci):
        cdef int v, pos
        cdef int w[7]
        cdef int* t
        if ci == self.ncells:
            if not _action_witness_c(self.nb, self.nx, self.unitb, self.unitx,
                                     self.bmul, self.bimp, self.xmul,
                                     self.ximp, self.f, self.g, self.level,
                                     0, w):
                self.out.append((
                    tuple(self.f[v] for v in range(self.nb * self.nx)),
                    tuple(self.g[v] for v in range(self.nb * self.nx))))
            return
        t = self.f if self.cell_tab[ci] == 0 else self.g
        pos = self.cell_b[ci] * self.nx + self.cell_x[ci]
        for v in range(self.nx):
            self.nodes += 1
            if self.nodes > self.budget:
                self.exceeded = 1
                return
            t[pos] = v
            if not _action_witness_c(self.nb, self.nx, self.unitb, self.unitx,
                                     self.bmul, self.bimp, self.xmul,
                                     self.ximp, self.f, self.g, self.level,
                                     1, w):
                self.dfs(ci + 1)
            t[pos] = -1
            if self.exceeded:
                return


def enumerate_action_tables(int nb, int nx, int unitb, int unitx,
                            bmul, bimp, xmul, ximp, int level,
                            long long budget):
    cdef _ActionEnum e = _ActionEnum(nb, nx, unitb, unitx, level, budget)
    _fill(e.bmul, bmul, nb * nb)
    _fill(e.bimp, bimp, nb * nb)
    _fill(e.xmul, xmul, nx * nx)
    _fill(e.ximp, ximp, nx * nx)
    e.dfs(0)
    return e.out, e.nodes, bool(e.exceeded)
