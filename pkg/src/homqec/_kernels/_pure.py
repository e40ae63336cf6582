"""Pure-Python/numpy versions of the hot kernels.

Every function here has a twin with the same signature in ``_core.pyx``.
The package imports the compiled twin when it is available and falls back
to this module otherwise, so both must stay behaviourally identical.
"""

from __future__ import annotations

from collections import deque

import numpy as np

_ONE = np.uint64(1)


def gf2_rref(words: np.ndarray, ncols: int) -> list[int]:
    """Reduce bit-packed rows to reduced row-echelon form, in place.

    ``words`` has shape ``(rows, nwords)`` and dtype uint64; bit ``c % 64``
    of word ``c // 64`` holds column ``c``. Pivots are taken column by
    column, first nonzero row at or below the current pivot row.

    Returns the list of pivot columns (its length is the rank).
    """
    nrows = words.shape[0]
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow == nrows:
            break
        w, b = divmod(col, 64)
        colbits = (words[prow:, w] >> np.uint64(b)) & _ONE
        hits = np.flatnonzero(colbits)
        if hits.size == 0:
            continue
        r = prow + int(hits[0])
        if r != prow:
            words[[prow, r]] = words[[r, prow]]
        mask = ((words[:, w] >> np.uint64(b)) & _ONE).astype(bool)
        mask[prow] = False
        if mask.any():
            words[mask] ^= words[prow]
        pivots.append(col)
        prow += 1
    return pivots


def bfs_all_pairs(n_nodes: int, link_a: np.ndarray, link_b: np.ndarray):
    """Unit-weight all-pairs shortest paths on a multigraph.

    Returns ``(dist, step)``, both int32 arrays of shape ``(n, n)``.
    ``dist[r, v]`` is the hop distance (-1 if unreachable) and
    ``step[r, v]`` is the link to take from ``v`` to move one hop closer
    to ``r`` (-1 on the diagonal). Neighbours are scanned in link order,
    which makes tie-breaking deterministic.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for e in range(len(link_a)):
        a, b = int(link_a[e]), int(link_b[e])
        adj[a].append((b, e))
        if a != b:
            adj[b].append((a, e))
    dist = np.full((n_nodes, n_nodes), -1, dtype=np.int32)
    step = np.full((n_nodes, n_nodes), -1, dtype=np.int32)
    for r in range(n_nodes):
        drow = dist[r]
        srow = step[r]
        drow[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            du = drow[u] + 1
            for v, e in adj[u]:
                if drow[v] < 0:
                    drow[v] = du
                    srow[v] = e
                    queue.append(v)
    return dist, step


def apply_paths(step: np.ndarray, link_a: np.ndarray, link_b: np.ndarray,
                nodes: np.ndarray, mate: np.ndarray, out: np.ndarray) -> None:
    """XOR the shortest path between every matched pair of ``nodes`` into ``out``."""
    for i in range(len(nodes)):
        j = int(mate[i])
        if j <= i:
            continue
        target = int(nodes[j])
        cur = int(nodes[i])
        while cur != target:
            e = int(step[target, cur])
            out[e] ^= 1
            a = int(link_a[e])
            cur = int(link_b[e]) if a == cur else a


def min_weight_perfect_matching(cost: np.ndarray) -> np.ndarray:
    """Exact minimum-weight perfect matching on a complete graph.

    ``cost`` is a symmetric ``(n, n)`` matrix of non-negative integers with
    ``n`` even. Returns ``mate`` with ``mate[i]`` the partner of ``i``.

    Minimum cost is turned into maximum weight with a shift large enough
    that every maximum-weight matching is perfect, then solved with the
    O(n^3) primal-dual blossom method on the dense weight matrix.
    """
    n = cost.shape[0]
    if n % 2:
        raise ValueError("perfect matching needs an even number of nodes")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 2:
        return np.array([1, 0], dtype=np.int64)
    cmax = int(cost.max())
    shift = n * (cmax + 1) + 1
    weights = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        row = weights[i + 1]
        for j in range(n):
            if i != j:
                row[j + 1] = 2 * (shift - int(cost[i, j]))
    mate1 = _Blossom(weights, n).solve()
    return np.array([mate1[i + 1] - 1 for i in range(n)], dtype=np.int64)


class _Blossom:
    """Dense weighted blossom; vertices are 1..n, blossoms n+1..2n.

    ``eu/ev/ew[x][y]`` hold the original endpoints and weight of the best
    edge between (possibly contracted) nodes ``x`` and ``y``.
    """

    def __init__(self, weights: list[list[int]], n: int):
        size = 2 * n + 1
        self.n = n
        self.n_x = n
        self.eu = [[x] * size for x in range(size)]
        self.ev = [list(range(size)) for _ in range(size)]
        self.ew = [[0] * size for _ in range(size)]
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                self.ew[u][v] = weights[u][v]
        self.lab = [0] * size
        self.match = [0] * size
        self.slack = [0] * size
        self.st = list(range(size))
        self.pa = [0] * size
        self.S = [-1] * size
        self.vis = [0] * size
        self.stamp = 0
        self.flower: list[list[int]] = [[] for _ in range(size)]
        self.flower_from = [[0] * (n + 1) for _ in range(size)]
        for u in range(1, n + 1):
            self.flower_from[u][u] = u
        self.queue: deque[int] = deque()

    def dist(self, x: int, y: int) -> int:
        u = self.eu[x][y]
        v = self.ev[x][y]
        return self.lab[u] + self.lab[v] - 2 * self.ew[x][y]

    def update_slack(self, u: int, x: int) -> None:
        s = self.slack[x]
        if not s or self.dist(u, x) < self.dist(s, x):
            self.slack[x] = u

    def set_slack(self, x: int) -> None:
        self.slack[x] = 0
        st, S, ew = self.st, self.S, self.ew
        for u in range(1, self.n + 1):
            if ew[u][x] > 0 and st[u] != x and S[st[u]] == 0:
                self.update_slack(u, x)

    def q_push(self, x: int) -> None:
        if x <= self.n:
            self.queue.append(x)
        else:
            for y in self.flower[x]:
                self.q_push(y)

    def set_st(self, x: int, b: int) -> None:
        self.st[x] = b
        if x > self.n:
            for y in self.flower[x]:
                self.set_st(y, b)

    def get_pr(self, b: int, xr: int) -> int:
        fl = self.flower[b]
        pr = fl.index(xr)
        if pr % 2 == 1:
            fl[1:] = fl[1:][::-1]
            return len(fl) - pr
        return pr

    def set_match(self, u: int, v: int) -> None:
        self.match[u] = self.ev[u][v]
        if u > self.n:
            xr = self.flower_from[u][self.eu[u][v]]
            pr = self.get_pr(u, xr)
            fl = self.flower[u]
            for i in range(pr):
                self.set_match(fl[i], fl[i ^ 1])
            self.set_match(xr, v)
            self.flower[u] = fl[pr:] + fl[:pr]

    def augment(self, u: int, v: int) -> None:
        while True:
            xnv = self.st[self.match[u]]
            self.set_match(u, v)
            if not xnv:
                return
            self.set_match(xnv, self.st[self.pa[xnv]])
            u = self.st[self.pa[xnv]]
            v = xnv

    def get_lca(self, u: int, v: int) -> int:
        self.stamp += 1
        t = self.stamp
        vis, st, match, pa = self.vis, self.st, self.match, self.pa
        while u or v:
            if u:
                if vis[u] == t:
                    return u
                vis[u] = t
                u = st[match[u]]
                if u:
                    u = st[pa[u]]
            u, v = v, u
        return 0

    def add_blossom(self, u: int, lca: int, v: int) -> None:
        n = self.n
        st = self.st
        b = n + 1
        while b <= self.n_x and st[b]:
            b += 1
        if b > self.n_x:
            self.n_x += 1
        self.lab[b] = 0
        self.S[b] = 0
        self.match[b] = self.match[lca]
        fl = [lca]
        x = u
        while x != lca:
            y = st[self.match[x]]
            fl.append(x)
            fl.append(y)
            self.q_push(y)
            x = st[self.pa[y]]
        fl[1:] = fl[1:][::-1]
        x = v
        while x != lca:
            y = st[self.match[x]]
            fl.append(x)
            fl.append(y)
            self.q_push(y)
            x = st[self.pa[y]]
        self.flower[b] = fl
        self.set_st(b, b)
        eu, ev, ew = self.eu, self.ev, self.ew
        for x in range(1, self.n_x + 1):
            ew[b][x] = 0
            ew[x][b] = 0
        ffb = self.flower_from[b]
        for x in range(1, n + 1):
            ffb[x] = 0
        for xs in fl:
            for x in range(1, self.n_x + 1):
                if ew[b][x] == 0 or self.dist(xs, x) < self.dist(b, x):
                    eu[b][x], ev[b][x], ew[b][x] = eu[xs][x], ev[xs][x], ew[xs][x]
                    eu[x][b], ev[x][b], ew[x][b] = eu[x][xs], ev[x][xs], ew[x][xs]
            ffx = self.flower_from[xs]
            for x in range(1, n + 1):
                if ffx[x]:
                    ffb[x] = xs
        self.set_slack(b)

    def expand_blossom(self, b: int) -> None:
        fl = self.flower[b]
        for x in fl:
            self.set_st(x, x)
        xr = self.flower_from[b][self.eu[b][self.pa[b]]]
        pr = self.get_pr(b, xr)
        fl = self.flower[b]
        for i in range(0, pr, 2):
            xs = fl[i]
            xns = fl[i + 1]
            self.pa[xs] = self.eu[xns][xs]
            self.S[xs] = 1
            self.S[xns] = 0
            self.slack[xs] = 0
            self.set_slack(xns)
            self.q_push(xns)
        self.S[xr] = 1
        self.pa[xr] = self.pa[b]
        for i in range(pr + 1, len(fl)):
            xs = fl[i]
            self.S[xs] = -1
            self.set_slack(xs)
        self.st[b] = 0

    def on_found_edge(self, x: int, y: int) -> bool:
        eu = self.eu[x][y]
        ev = self.ev[x][y]
        u = self.st[eu]
        v = self.st[ev]
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
            if not lca:
                self.augment(u, v)
                self.augment(v, u)
                return True
            self.add_blossom(u, lca, v)
        return False

    def matching_round(self) -> bool:
        n = self.n
        st, S, slack, lab = self.st, self.S, self.slack, self.lab
        for x in range(1, self.n_x + 1):
            S[x] = -1
            slack[x] = 0
        self.queue.clear()
        for x in range(1, self.n_x + 1):
            if st[x] == x and not self.match[x]:
                self.pa[x] = 0
                S[x] = 0
                self.q_push(x)
        if not self.queue:
            return False
        ew = self.ew
        while True:
            while self.queue:
                u = self.queue.popleft()
                if S[st[u]] == 1:
                    continue
                for v in range(1, n + 1):
                    if ew[u][v] > 0 and st[u] != st[v]:
                        if self.dist(u, v) == 0:
                            if self.on_found_edge(u, v):
                                return True
                        else:
                            self.update_slack(u, st[v])
            d = None
            for b in range(n + 1, self.n_x + 1):
                if st[b] == b and S[b] == 1:
                    cand = lab[b] // 2
                    if d is None or cand < d:
                        d = cand
            for x in range(1, self.n_x + 1):
                if st[x] == x and slack[x]:
                    if S[x] == -1:
                        cand = self.dist(slack[x], x)
                    elif S[x] == 0:
                        cand = self.dist(slack[x], x) // 2
                    else:
                        continue
                    if d is None or cand < d:
                        d = cand
            if d is None:
                d = 0
            for u in range(1, n + 1):
                su = S[st[u]]
                if su == 0:
                    if lab[u] <= d:
                        return False
                    lab[u] -= d
                elif su == 1:
                    lab[u] += d
            for b in range(n + 1, self.n_x + 1):
                if st[b] == b:
                    if S[b] == 0:
                        lab[b] += 2 * d
                    elif S[b] == 1:
                        lab[b] -= 2 * d
            self.queue.clear()
            for x in range(1, self.n_x + 1):
                s = slack[x]
                if st[x] == x and s and st[s] != x and self.dist(s, x) == 0:
                    if self.on_found_edge(s, x):
                        return True
            for b in range(n + 1, self.n_x + 1):
                if st[b] == b and S[b] == 1 and lab[b] == 0:
                    self.expand_blossom(b)

    def solve(self) -> list[int]:
        wmax = 0
        for u in range(1, self.n + 1):
            wmax = max(wmax, max(self.ew[u][1:self.n + 1]))
        for u in range(1, self.n + 1):
            self.lab[u] = wmax
        while self.matching_round():
            pass
        return self.match[:self.n + 1]
