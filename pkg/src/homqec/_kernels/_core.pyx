# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Signatures mirror ``_pure``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, int64_t, uint8_t

cnp.import_array()


def gf2_rref(uint64_t[:, ::1] words, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = words.shape[0], nw = words.shape[1]
    cdef Py_ssize_t col, prow = 0, r, i, k, w
    cdef uint64_t bit, tmp
    pivots = []
    for col in range(ncols):
        if prow == nrows:
            break
        w = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        r = -1
        for i in range(prow, nrows):
            if words[i, w] & bit:
                r = i
                break
        if r < 0:
            continue
        if r != prow:
            for k in range(nw):
                tmp = words[r, k]
                words[r, k] = words[prow, k]
                words[prow, k] = tmp
        for i in range(nrows):
            if i != prow and (words[i, w] & bit):
                for k in range(w, nw):
                    words[i, k] ^= words[prow, k]
        pivots.append(col)
        prow += 1
    return pivots


def bfs_all_pairs(Py_ssize_t n_nodes, link_a, link_b):
    cdef int32_t[::1] a = np.ascontiguousarray(link_a, dtype=np.int32)
    cdef int32_t[::1] b = np.ascontiguousarray(link_b, dtype=np.int32)
    cdef Py_ssize_t m = a.shape[0], e, r, u, v, k, head, tail
    cdef int32_t[::1] deg = np.zeros(n_nodes + 1, dtype=np.int32)
    for e in range(m):
        deg[a[e] + 1] += 1
        if a[e] != b[e]:
            deg[b[e] + 1] += 1
    for u in range(n_nodes):
        deg[u + 1] += deg[u]
    cdef int32_t[::1] fill = np.array(deg[:n_nodes], dtype=np.int32)
    cdef int32_t[::1] nbr = np.empty(deg[n_nodes], dtype=np.int32)
    cdef int32_t[::1] via = np.empty(deg[n_nodes], dtype=np.int32)
    for e in range(m):
        u = a[e]
        v = b[e]
        nbr[fill[u]] = v
        via[fill[u]] = e
        fill[u] += 1
        if u != v:
            nbr[fill[v]] = u
            via[fill[v]] = e
            fill[v] += 1
    dist_arr = np.full((n_nodes, n_nodes), -1, dtype=np.int32)
    step_arr = np.full((n_nodes, n_nodes), -1, dtype=np.int32)
    cdef int32_t[:, ::1] dist = dist_arr
    cdef int32_t[:, ::1] step = step_arr
    cdef int32_t[::1] queue = np.empty(max(n_nodes, 1), dtype=np.int32)
    for r in range(n_nodes):
        dist[r, r] = 0
        queue[0] = r
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(deg[u], deg[u + 1]):
                v = nbr[k]
                if dist[r, v] < 0:
                    dist[r, v] = dist[r, u] + 1
                    step[r, v] = via[k]
                    queue[tail] = v
                    tail += 1
    return dist_arr, step_arr


def apply_paths(int32_t[:, ::1] step, link_a, link_b, nodes, mate,
                uint8_t[::1] out):
    cdef int32_t[::1] a = np.ascontiguousarray(link_a, dtype=np.int32)
    cdef int32_t[::1] b = np.ascontiguousarray(link_b, dtype=np.int32)
    cdef int64_t[::1] nd = np.ascontiguousarray(nodes, dtype=np.int64)
    cdef int64_t[::1] mt = np.ascontiguousarray(mate, dtype=np.int64)
    cdef Py_ssize_t i, j, cur, target, e
    for i in range(nd.shape[0]):
        j = mt[i]
        if j <= i:
            continue
        target = nd[j]
        cur = nd[i]
        while cur != target:
            e = step[target, cur]
            out[e] ^= 1
            if a[e] == cur:
                cur = b[e]
            else:
                cur = a[e]


cdef class _Blossom:
    # vertices 1..n, blossoms n+1..2n; eu/ev/ew[x, y] is the best edge between x and y
    cdef int n, n_x, size, stamp, qhead, qtail
    cdef int64_t[:, ::1] ew
    cdef int32_t[:, ::1] eu
    cdef int32_t[:, ::1] ev
    cdef int32_t[:, ::1] flower
    cdef int32_t[:, ::1] flower_from
    cdef int32_t[::1] flen, match, slack, st, pa, S, vis, queue, tmp
    cdef int64_t[::1] lab

    def __init__(self, int64_t[:, ::1] weights, int n):
        cdef int u, v, size = 2 * n + 1
        self.n = n
        self.n_x = n
        self.size = size
        self.stamp = 0
        self.ew = np.zeros((size, size), dtype=np.int64)
        self.eu = np.empty((size, size), dtype=np.int32)
        self.ev = np.empty((size, size), dtype=np.int32)
        for u in range(size):
            for v in range(size):
                self.eu[u, v] = u
                self.ev[u, v] = v
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                self.ew[u, v] = weights[u, v]
        self.flower = np.zeros((size, size), dtype=np.int32)
        self.flower_from = np.zeros((size, n + 1), dtype=np.int32)
        for u in range(1, n + 1):
            self.flower_from[u, u] = u
        self.flen = np.zeros(size, dtype=np.int32)
        self.match = np.zeros(size, dtype=np.int32)
        self.slack = np.zeros(size, dtype=np.int32)
        self.st = np.arange(size, dtype=np.int32)
        self.pa = np.zeros(size, dtype=np.int32)
        self.S = np.full(size, -1, dtype=np.int32)
        self.vis = np.zeros(size, dtype=np.int32)
        self.queue = np.zeros(4 * size * size + 4, dtype=np.int32)
        self.tmp = np.zeros(size, dtype=np.int32)
        self.lab = np.zeros(size, dtype=np.int64)
        self.qhead = 0
        self.qtail = 0

    cdef inline int64_t dist(self, int x, int y):
        return self.lab[self.eu[x, y]] + self.lab[self.ev[x, y]] - 2 * self.ew[x, y]

    cdef inline void update_slack(self, int u, int x):
        cdef int s = self.slack[x]
        if s == 0 or self.dist(u, x) < self.dist(s, x):
            self.slack[x] = u

    cdef void set_slack(self, int x):
        cdef int u
        self.slack[x] = 0
        for u in range(1, self.n + 1):
            if self.ew[u, x] > 0 and self.st[u] != x and self.S[self.st[u]] == 0:
                self.update_slack(u, x)

    cdef void q_push(self, int x):
        cdef int i
        if x <= self.n:
            self.queue[self.qtail] = x
            self.qtail += 1
        else:
            for i in range(self.flen[x]):
                self.q_push(self.flower[x, i])

    cdef void set_st(self, int x, int b):
        cdef int i
        self.st[x] = b
        if x > self.n:
            for i in range(self.flen[x]):
                self.set_st(self.flower[x, i], b)

    cdef void reverse_tail(self, int b):
        cdef int i = 1, j = self.flen[b] - 1, t
        while i < j:
            t = self.flower[b, i]
            self.flower[b, i] = self.flower[b, j]
            self.flower[b, j] = t
            i += 1
            j -= 1

    cdef int get_pr(self, int b, int xr):
        cdef int pr = 0, L = self.flen[b]
        while self.flower[b, pr] != xr:
            pr += 1
        if pr % 2 == 1:
            self.reverse_tail(b)
            return L - pr
        return pr

    cdef void rotate(self, int b, int pr):
        cdef int i, L = self.flen[b]
        for i in range(L):
            self.tmp[i] = self.flower[b, (i + pr) % L]
        for i in range(L):
            self.flower[b, i] = self.tmp[i]

    cdef void set_match(self, int u, int v):
        cdef int xr, pr, i
        self.match[u] = self.ev[u, v]
        if u > self.n:
            xr = self.flower_from[u, self.eu[u, v]]
            pr = self.get_pr(u, xr)
            for i in range(pr):
                self.set_match(self.flower[u, i], self.flower[u, i ^ 1])
            self.set_match(xr, v)
            self.rotate(u, pr)

    cdef void augment(self, int u, int v):
        cdef int xnv
        while True:
            xnv = self.st[self.match[u]]
            self.set_match(u, v)
            if xnv == 0:
                return
            self.set_match(xnv, self.st[self.pa[xnv]])
            u = self.st[self.pa[xnv]]
            v = xnv

    cdef int get_lca(self, int u, int v):
        cdef int t, tmp
        self.stamp += 1
        t = self.stamp
        while u != 0 or v != 0:
            if u != 0:
                if self.vis[u] == t:
                    return u
                self.vis[u] = t
                u = self.st[self.match[u]]
                if u != 0:
                    u = self.st[self.pa[u]]
            tmp = u
            u = v
            v = tmp
        return 0

    cdef void add_blossom(self, int u, int lca, int v):
        cdef int b = self.n + 1, x, y, i, xs
        while b <= self.n_x and self.st[b] != 0:
            b += 1
        if b > self.n_x:
            self.n_x += 1
        self.lab[b] = 0
        self.S[b] = 0
        self.match[b] = self.match[lca]
        self.flen[b] = 0
        self.flower[b, 0] = lca
        self.flen[b] = 1
        x = u
        while x != lca:
            y = self.st[self.match[x]]
            self.flower[b, self.flen[b]] = x
            self.flower[b, self.flen[b] + 1] = y
            self.flen[b] += 2
            self.q_push(y)
            x = self.st[self.pa[y]]
        self.reverse_tail(b)
        x = v
        while x != lca:
            y = self.st[self.match[x]]
            self.flower[b, self.flen[b]] = x
            self.flower[b, self.flen[b] + 1] = y
            self.flen[b] += 2
            self.q_push(y)
            x = self.st[self.pa[y]]
        self.set_st(b, b)
        for x in range(1, self.n_x + 1):
            self.ew[b, x] = 0
            self.ew[x, b] = 0
        for x in range(1, self.n + 1):
            self.flower_from[b, x] = 0
        for i in range(self.flen[b]):
            xs = self.flower[b, i]
            for x in range(1, self.n_x + 1):
                if self.ew[b, x] == 0 or self.dist(xs, x) < self.dist(b, x):
                    self.eu[b, x] = self.eu[xs, x]
                    self.ev[b, x] = self.ev[xs, x]
                    self.ew[b, x] = self.ew[xs, x]
                    self.eu[x, b] = self.eu[x, xs]
                    self.ev[x, b] = self.ev[x, xs]
                    self.ew[x, b] = self.ew[x, xs]
            for x in range(1, self.n + 1):
                if self.flower_from[xs, x] != 0:
                    self.flower_from[b, x] = xs
        self.set_slack(b)

    cdef void expand_blossom(self, int b):
        cdef int i, xr, pr, xs, xns
        for i in range(self.flen[b]):
            self.set_st(self.flower[b, i], self.flower[b, i])
        xr = self.flower_from[b, self.eu[b, self.pa[b]]]
        pr = self.get_pr(b, xr)
        i = 0
        while i < pr:
            xs = self.flower[b, i]
            xns = self.flower[b, i + 1]
            self.pa[xs] = self.eu[xns, xs]
            self.S[xs] = 1
            self.S[xns] = 0
            self.slack[xs] = 0
            self.set_slack(xns)
            self.q_push(xns)
            i += 2
        self.S[xr] = 1
        self.pa[xr] = self.pa[b]
        for i in range(pr + 1, self.flen[b]):
            xs = self.flower[b, i]
            self.S[xs] = -1
            self.set_slack(xs)
        self.st[b] = 0

    cdef bint on_found_edge(self, int x, int y):
        cdef int eu = self.eu[x, y], ev = self.ev[x, y]
        cdef int u = self.st[eu], v = self.st[ev], nu, lca
        if self.S[v] == -1:
            self.pa[v] = eu
            self.S[v] = 1
            nu = self.st[self.match[v]]
            self.slack[v] = 0
            self.slack[nu] = 0
            self.S[nu] = 0
            self.q_push(nu)
        elif self.S[v] == 0:
            lca = self.get_lca(u, v)
            if lca == 0:
                self.augment(u, v)
                self.augment(v, u)
                return True
            self.add_blossom(u, lca, v)
        return False

    cdef bint matching_round(self):
        cdef int x, u, v, b, s, su
        cdef int64_t d, cand
        cdef bint have
        for x in range(1, self.n_x + 1):
            self.S[x] = -1
            self.slack[x] = 0
        self.qhead = 0
        self.qtail = 0
        for x in range(1, self.n_x + 1):
            if self.st[x] == x and self.match[x] == 0:
                self.pa[x] = 0
                self.S[x] = 0
                self.q_push(x)
        if self.qtail == 0:
            return False
        while True:
            while self.qhead < self.qtail:
                u = self.queue[self.qhead]
                self.qhead += 1
                if self.S[self.st[u]] == 1:
                    continue
                for v in range(1, self.n + 1):
                    if self.ew[u, v] > 0 and self.st[u] != self.st[v]:
                        if self.dist(u, v) == 0:
                            if self.on_found_edge(u, v):
                                return True
                        else:
                            self.update_slack(u, self.st[v])
            have = False
            d = 0
            for b in range(self.n + 1, self.n_x + 1):
                if self.st[b] == b and self.S[b] == 1:
                    cand = self.lab[b] // 2
                    if not have or cand < d:
                        d = cand
                        have = True
            for x in range(1, self.n_x + 1):
                s = self.slack[x]
                if self.st[x] == x and s != 0:
                    if self.S[x] == -1:
                        cand = self.dist(s, x)
                    elif self.S[x] == 0:
                        cand = self.dist(s, x) // 2
                    else:
                        continue
                    if not have or cand < d:
                        d = cand
                        have = True
            for u in range(1, self.n + 1):
                su = self.S[self.st[u]]
                if su == 0:
                    if self.lab[u] <= d:
                        return False
                    self.lab[u] -= d
                elif su == 1:
                    self.lab[u] += d
            for b in range(self.n + 1, self.n_x + 1):
                if self.st[b] == b:
                    if self.S[b] == 0:
                        self.lab[b] += 2 * d
                    elif self.S[b] == 1:
                        self.lab[b] -= 2 * d
            self.qhead = 0
            self.qtail = 0
            for x in range(1, self.n_x + 1):
                s = self.slack[x]
                if self.st[x] == x and s != 0 and self.st[s] != x and self.dist(s, x) == 0:
                    if self.on_found_edge(s, x):
                        return True
            for b in range(self.n + 1, self.n_x + 1):
                if self.st[b] == b and self.S[b] == 1 and self.lab[b] == 0:
                    self.expand_blossom(b)

    def solve(self):
        cdef int u, v
        cdef int64_t wmax = 0
        for u in range(1, self.n + 1):
            for v in range(1, self.n + 1):
                if self.ew[u, v] > wmax:
                    wmax = self.ew[u, v]
        for u in range(1, self.n + 1):
            self.lab[u] = wmax
        while self.matching_round():
            pass
        return np.asarray(self.match[:self.n + 1]).copy()


def min_weight_perfect_matching(cost):
    cdef Py_ssize_t n = cost.shape[0], i, j
    if n % 2:
        raise ValueError("perfect matching needs an even number of nodes")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 2:
        return np.array([1, 0], dtype=np.int64)
    cdef int64_t[:, ::1] c = np.ascontiguousarray(cost, dtype=np.int64)
    cdef int64_t cmax = 0
    for i in range(n):
        for j in range(n):
            if c[i, j] > cmax:
                cmax = c[i, j]
    cdef int64_t shift = n * (cmax + 1) + 1
    w_arr = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef int64_t[:, ::1] w = w_arr
    for i in range(n):
        for j in range(n):
            if i != j:
                w[i + 1, j + 1] = 2 * (shift - c[i, j])
    mate1 = _Blossom(w_arr, <int>n).solve()
    return (mate1[1:] - 1).astype(np.int64)
