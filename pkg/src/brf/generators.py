"""Seeded instance generators.

Every generator draws from ``numpy.random.default_rng(seed)`` (PCG64), whose
stream is fixed across platforms, and emits integer raw coordinates, so the
same :class:`GenSpec` always yields the same instance.

``size`` is the total number of points ``|A| + |B|`` except for
``cross-grid``, where it is the number of strips per direction.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .geometry import Instance, leq, normalize
from .weighted import WeightedInstance

KINDS = ("random-unrestricted", "permutation", "convex", "interval-bigraph",
         "restricted-z", "cross-grid")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    size: int
    seed: int = 0
    weights: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return asdict(self)


def _split(rng, size):
    """Number of A points; both colors nonempty when size >= 2."""
    if size == 1:
        return int(rng.integers(0, 2))
    return int(rng.integers(1, size))


def _random_unrestricted(rng, size):
    na = _split(rng, size)
    xs = rng.permutation(size) + 1
    ys = rng.permutation(size) + 1
    pts = [(int(x), int(y)) for x, y in zip(xs, ys)]
    return pts[:na], pts[na:], None


def _antichain(rng, coords_x, coords_y):
    xs = sorted(int(v) for v in coords_x)
    ys = sorted((int(v) for v in coords_y), reverse=True)
    return list(zip(xs, ys))


def _permutation(rng, size):
    na = _split(rng, size)
    xs = rng.permutation(size) + 1
    # B's y-values are drawn from a window shifted up, otherwise both
    # antichains hug the same curve and almost no pair is comparable
    shift = int(rng.integers(size // 2, size + 1))
    ys_a = rng.choice(np.arange(2 * size), size=na, replace=False)
    rest = np.setdiff1d(np.arange(shift, shift + 2 * size), ys_a)
    ys_b = rng.choice(rest, size=size - na, replace=False)
    return _antichain(rng, xs[:na], ys_a + 1), _antichain(rng, xs[na:], ys_b + 1), None


def _distinct_line_points(rng, k, side, spread):
    """``k`` points strictly on one side of the line ``x + y = 0`` (``side`` = +1/-1)
    with coordinates drawn without replacement from ``[-spread, spread]``."""
    out = []
    used_x, used_y = set(), set()
    while len(out) < k:
        x, y = (int(v) for v in rng.integers(-spread, spread + 1, 2))
        if x in used_x or y in used_y or (x + y) * side <= 0:
            continue
        used_x.add(x)
        used_y.add(y)
        out.append((x, y))
    return out


def _scaled(pts, f=2):
    return [(f * x, f * y) for x, y in pts]


def _convex(rng, size):
    na = _split(rng, size)
    nb = size - na
    spread = 4 * size + 4
    # A on x + y = 0 uses odd coordinates, B above it even ones, so no collisions
    ax = rng.choice(np.arange(-spread, spread + 1), size=na, replace=False)
    a = [(2 * int(x) + 1, -(2 * int(x) + 1)) for x in ax]
    b = _scaled(_distinct_line_points(rng, nb, +1, spread))
    return a, b, None


def _interval_bigraph(rng, size):
    na = _split(rng, size)
    spread = 4 * size + 4
    a = _distinct_line_points(rng, na, -1, spread)
    b = _distinct_line_points(rng, size - na, +1, spread)
    # shift B to odd coordinates so the two colors never share a value
    a = _scaled(a)
    b = [(2 * x + 1, 2 * y + 1) for x, y in b]
    return a, b, None


def _restricted_z(rng, size):
    span = 10 * size + 10
    boxes = []
    for _ in range(int(rng.integers(1, 4))):
        x1, y1 = (int(v) for v in rng.integers(0, span // 2, 2))
        w, h = (int(v) for v in rng.integers(span // 4, span // 2 + 1, 2))
        boxes.append((x1, y1, x1 + w, y1 + h))
    pts, used_x, used_y = [], set(), set()
    while len(pts) < size:
        x1, y1, x2, y2 = boxes[int(rng.integers(0, len(boxes)))]
        x, y = int(rng.integers(x1, x2 + 1)), int(rng.integers(y1, y2 + 1))
        if x in used_x or y in used_y:
            continue
        used_x.add(x)
        used_y.add(y)
        pts.append((x, y))
    na = _split(rng, size)
    return pts[:na], pts[na:], boxes


def cross_grid(k: int, seed=None):
    """``k`` thin vertical and ``k`` thin horizontal strips, each vertical crossing
    each horizontal, with the region equal to their union.

    The family is exactly the ``2k`` strips: any other corner pair spans cells
    outside the union.  All crossings are corner-free, so ``K`` is the whole
    family and ``I(K)`` has ``k^2`` edges.  A seed jitters strip widths, gaps
    and overhangs without changing that structure.
    """
    if seed is None:
        gaps = [1] * (2 * k)
        widths = [1] * (2 * k)
        over = [list(range(k)) for _ in range(4)]
    else:
        rng = np.random.default_rng(seed)
        gaps = [int(v) for v in rng.integers(1, 4, 2 * k)]
        widths = [int(v) for v in rng.integers(1, 3, 2 * k)]
        over = [[int(v) for v in rng.permutation(k)] for _ in range(4)]
    # interleave vertical (even slots) and horizontal (odd slots) positions so
    # no two strips share a coordinate
    pos, lo = [], 0
    for g, w in zip(gaps, widths):
        lo += g
        pos.append((lo, lo + w))
        lo += w
    m = lo + 10
    a, b, z = [], [], []
    for i in range(k):
        (x1, x2), y1, y2 = pos[2 * i], -m - over[0][i], m + over[1][i]
        a.append((x1, y1))
        b.append((x2, y2))
        z.append((x1, y1, x2, y2))
    for j in range(k):
        (y1, y2), x1, x2 = pos[2 * j + 1], -m - k - over[2][j], m + k + over[3][j]
        a.append((x1, y1))
        b.append((x2, y2))
        z.append((x1, y1, x2, y2))
    return a, b, z


_BUILDERS = {
    "random-unrestricted": _random_unrestricted,
    "permutation": _permutation,
    "convex": _convex,
    "interval-bigraph": _interval_bigraph,
    "restricted-z": _restricted_z,
}


def raw_points(spec: GenSpec):
    """``(rawA, rawB, rawZ)`` for ``spec``; ``rawZ`` is ``None`` for the full plane."""
    if spec.kind == "cross-grid":
        return cross_grid(spec.size, spec.seed)
    rng = np.random.default_rng(spec.seed)
    return _BUILDERS[spec.kind](rng, spec.size)


def random_weights(inst: Instance, seed: int, density: float = 0.7, max_num: int = 9,
                   max_den: int = 4) -> dict:
    """Nonnegative rational weights on a random subset of comparable pairs."""
    rng = np.random.default_rng([seed, 1])
    w = {}
    for i, a in enumerate(inst.A):
        for j, b in enumerate(inst.B):
            if leq(a, b) and rng.random() < density:
                w[i, j] = Fraction(int(rng.integers(0, max_num + 1)), int(rng.integers(1, max_den + 1)))
    return w


def generate(spec: GenSpec):
    """Instance for ``spec``; a :class:`WeightedInstance` when ``spec.weights``."""
    a, b, z = raw_points(spec)
    inst = normalize(a, b, z)
    if spec.weights:
        return WeightedInstance(inst, random_weights(inst, spec.seed))
    return inst


def random_rectangle_family(m: int, seed: int, span: int = 40):
    """``m`` rectangles ``(x1, y1, x2, y2)`` whose ``2m`` corners share no coordinate."""
    rng = np.random.default_rng([seed, 2])
    xs = rng.choice(np.arange(span * max(m, 1)), size=2 * m, replace=False)
    ys = rng.choice(np.arange(span * max(m, 1)), size=2 * m, replace=False)
    out = []
    for i in range(m):
        x1, x2 = sorted(int(v) for v in xs[2 * i:2 * i + 2])
        y1, y2 = sorted(int(v) for v in ys[2 * i:2 * i + 2])
        out.append((x1, y1, x2, y2))
    return out


def five_cycle_instance() -> Instance:
    """A family whose intersection graph has an induced 5-cycle.

    Five rectangles arranged in a ring, each meeting only its two neighbours,
    so ``x = 1/2`` on them is feasible for the clique-constrained relaxation
    with value ``5/2``.
    """
    return normalize(_FIVE_CYCLE_A, _FIVE_CYCLE_B)


# found by search over small random instances; FIVE_CYCLE lists the ring as
# (a_idx, b_idx) pairs in cyclic order
_FIVE_CYCLE_A = [(2, 7), (10, 2), (1, 1), (6, 4), (4, 6)]
_FIVE_CYCLE_B = [(5, 9), (9, 3), (7, 10), (8, 5), (3, 8)]
FIVE_CYCLE = [(0, 0), (2, 4), (2, 3), (3, 2), (4, 2)]
