"""Dynamic planar point multiset with orthogonal range queries.

A segment tree over the x-axis whose nodes hold the points of their x-slab
as a sorted list of ``(y, x)`` keys.  Insert and delete touch O(log N) nodes;
a query visits O(log N) canonical nodes and bisects each one, so every
operation is O(log^2 N) up to the sorted-list constant.
"""
from __future__ import annotations

from typing import Iterable, Optional

from sortedcontainers import SortedList

from .errors import MissingPoint
from .geometry import Point

_NEG = -(1 << 62)


class DynamicPointIndex:
    """Multiset of integer points with x in ``1..size``.

    Query rectangles are closed and given as ``(x1, y1, x2, y2)`` or as any
    object with ``a``/``b`` corner attributes (e.g. :class:`~brf.geometry.Rect`).
    """

    def __init__(self, size: int, points: Iterable = ()):
        if size < 1:
            raise ValueError("size must be positive")
        self.size = size
        cap = 1
        while cap < size:
            cap *= 2
        self._cap = cap
        self._nodes: list = [None] * (2 * cap)
        self._count: dict = {}
        self._total = 0
        for p in points:
            self.insert(p)

    def __len__(self):
        return self._total

    def __iter__(self):
        for p, m in sorted(self._count.items()):
            for _ in range(m):
                yield p

    def __contains__(self, p):
        return self._count.get(tuple(p), 0) > 0

    def multiplicity(self, p) -> int:
        return self._count.get(tuple(p), 0)

    def insert(self, p) -> None:
        p = Point(*p)
        if not 1 <= p.x <= self.size:
            raise ValueError(f"x-coordinate {p.x} outside 1..{self.size}")
        m = self._count.get(p, 0)
        self._count[p] = m + 1
        self._total += 1
        if m:
            return
        key = (p.y, p.x)
        i = self._cap + p.x - 1
        nodes = self._nodes
        while i:
            sl = nodes[i]
            if sl is None:
                sl = nodes[i] = SortedList()
            sl.add(key)
            i >>= 1

    def delete(self, p) -> None:
        p = Point(*p)
        m = self._count.get(p, 0)
        if not m:
            raise MissingPoint(p)
        self._total -= 1
        if m > 1:
            self._count[p] = m - 1
            return
        del self._count[p]
        key = (p.y, p.x)
        i = self._cap + p.x - 1
        while i:
            self._nodes[i].remove(key)
            i >>= 1

    # -- queries -------------------------------------------------------------

    @staticmethod
    def _bounds(q):
        if hasattr(q, "a"):
            return q.a.x, q.a.y, q.b.x, q.b.y
        return q

    def _canonical(self, x1, x2):
        """Canonical nodes covering leaves ``x1..x2``, ordered left to right."""
        lo = self._cap + max(x1, 1) - 1
        hi = self._cap + min(x2, self.size)  # exclusive
        left, right = [], []
        while lo < hi:
            if lo & 1:
                left.append(lo)
                lo += 1
            if hi & 1:
                hi -= 1
                right.append(hi)
            lo >>= 1
            hi >>= 1
        return left + right[::-1]

    def _lowest(self, node, y1, y2):
        sl = self._nodes[node]
        if not sl:
            return None
        k = sl.bisect_left((y1, _NEG))
        if k < len(sl):
            key = sl[k]
            if key[0] <= y2:
                return key
        return None

    def min_y_in(self, q) -> Optional[Point]:
        """Point of minimum y in closed ``q`` (ties: smaller x), or ``None``."""
        x1, y1, x2, y2 = self._bounds(q)
        if x1 > x2 or y1 > y2:
            return None
        best = None
        for node in self._canonical(x1, x2):
            key = self._lowest(node, y1, y2)
            if key is not None and (best is None or key < best):
                best = key
        return None if best is None else Point(best[1], best[0])

    def any_in(self, q) -> Optional[Point]:
        return self.min_y_in(q)

    def max_x_in(self, q) -> Optional[Point]:
        """Point of maximum x in closed ``q`` (ties: smaller y), or ``None``."""
        x1, y1, x2, y2 = self._bounds(q)
        if x1 > x2 or y1 > y2:
            return None
        for node in reversed(self._canonical(x1, x2)):
            if self._lowest(node, y1, y2) is None:
                continue
            while node < self._cap:
                node = 2 * node + 1 if self._lowest(2 * node + 1, y1, y2) else 2 * node
            key = self._lowest(node, y1, y2)
            return Point(key[1], key[0])
        return None

    def __repr__(self):
        return f"DynamicPointIndex(size={self.size}, n={self._total})"
