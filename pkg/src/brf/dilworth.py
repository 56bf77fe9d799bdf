"""Maximum antichain and minimum chain cover of a corner-free family.

For a corner-free family two members intersect exactly when they are
comparable under the order ``R ↪ S`` (``R_x ⊆ S_x`` and ``S_y ⊆ R_y``).
Dilworth's theorem then gives a maximum independent set (antichain) and a
minimum hitting set (one point per chain) of equal size, both read off a
maximum matching of the split bipartite graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .enumeration import CfiFamily
from .errors import EmptyChainIntersection, InvariantViolation
from .geometry import Point

_INF = float("inf")


@dataclass
class Hookup:
    """The strict order ``↪`` on ``k`` family members as successor lists."""

    k: int
    succ: list  # succ[i] = sorted j with K_i ↪ K_j

    @property
    def pairs(self):
        return [(i, j) for i in range(self.k) for j in self.succ[i]]

    def __len__(self):
        return sum(len(s) for s in self.succ)


@dataclass
class ChainCover:
    chains: list  # each chain lists family indices, ordered by ↪

    def __len__(self):
        return len(self.chains)


def hooks(r, s) -> bool:
    """``r ↪ s``: r is horizontally inside s and s is vertically inside r."""
    return (s.a.x <= r.a.x and r.b.x <= s.b.x
            and r.a.y <= s.a.y and s.b.y <= r.b.y and r != s)


def comparability_edges(cfi: CfiFamily) -> Hookup:
    rects = cfi.rects
    k = len(rects)
    if k == 0:
        return Hookup(0, [])
    arr = np.array([(r.a.x, r.a.y, r.b.x, r.b.y) for r in rects], dtype=np.int64)
    ax, ay, bx, by = arr.T
    succ = []
    for i in range(k):
        mask = (ax <= ax[i]) & (bx[i] <= bx) & (ay[i] <= ay) & (by <= by[i])
        mask[i] = False
        succ.append(np.nonzero(mask)[0].tolist())
    return Hookup(k, succ)


def max_matching(n_left: int, n_right: int, edges) -> dict:
    """Hopcroft–Karp maximum matching; returns ``{left: right}``.

    ``edges`` is an iterable of ``(left, right)`` pairs or a list of
    adjacency lists indexed by left node.
    """
    if isinstance(edges, list) and len(edges) == n_left and all(isinstance(e, list) for e in edges):
        adj = edges
    else:
        adj = [[] for _ in range(n_left)]
        for u, v in edges:
            adj[u].append(v)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs():
        q = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = _INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def augment(root):
        # iterative DFS along the layered graph
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w < 0:
                    path.append((u, v))
                    for pu, pv in path:
                        match_l[pu] = pv
                        match_r[pv] = pu
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                augment(u)
    return {u: v for u, v in enumerate(match_l) if v >= 0}


def antichain_and_chains(cfi: CfiFamily, hookup: Hookup):
    """Maximum antichain and minimum chain cover via the split graph.

    Left copy ``u_i`` is joined to right copy ``v_j`` when ``K_i ↪ K_j``.
    Chains follow matched edges.  The antichain is read from König's vertex
    cover, using alternating reachability from unmatched left nodes: ``i`` is
    in the antichain when ``u_i`` is reachable and ``v_i`` is not.
    """
    k = hookup.k
    match = max_matching(k, k, hookup.succ)
    matched_right = {v: u for u, v in match.items()}

    chains = []
    for start in range(k):
        if start in matched_right:
            continue
        chain = [start]
        while chain[-1] in match:
            chain.append(match[chain[-1]])
        chains.append(chain)

    seen_l = [False] * k
    seen_r = [False] * k
    q = deque(u for u in range(k) if u not in match)
    for u in q:
        seen_l[u] = True
    while q:
        u = q.popleft()
        for v in hookup.succ[u]:
            if seen_r[v] or match.get(u) == v:
                continue
            seen_r[v] = True
            w = matched_right.get(v)
            if w is not None and not seen_l[w]:
                seen_l[w] = True
                q.append(w)
    antichain = [i for i in range(k) if seen_l[i] and not seen_r[i]]
    if len(antichain) != len(chains):
        raise InvariantViolation(
            f"antichain of size {len(antichain)} but {len(chains)} chains")
    return antichain, ChainCover(chains)


def chains_to_hitting(cfi: CfiFamily, cover: ChainCover) -> list:
    """One point per chain: the bottom-left corner of the chain's common intersection."""
    points = []
    for chain in cover.chains:
        rs = [cfi.rects[i] for i in chain]
        p = Point(max(r.a.x for r in rs), max(r.a.y for r in rs))
        if p.x > min(r.b.x for r in rs) or p.y > min(r.b.y for r in rs):
            raise EmptyChainIntersection(f"chain {chain} has no common point")
        points.append(p)
    if len(set(points)) != len(points):
        raise InvariantViolation("two chains share their hitting point")
    return points
