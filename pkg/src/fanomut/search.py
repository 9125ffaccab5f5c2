"""Generators and exhaustive searches over Fano polygons.

The box enumerator walks primitive lattice points in angular order and
extends strictly convex chains; a chain closing around the origin is exactly
a Fano polygon with vertices in the box.  Pruning hooks keep targeted
searches (e.g. by T-cone count) fast.
"""

from __future__ import annotations

import functools
import random
from collections.abc import Iterator

from . import polygon as pg
from .errors import LatticeError
from .lattice import IntVec, det2, is_primitive
from .polygon import FanoPolytope, make_fano


def primitive_points(bound: int) -> list[IntVec]:
    """Primitive nonzero points of the box, sorted counter-clockwise from (1,0)."""
    pts = [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if (x, y) != (0, 0) and is_primitive((x, y))
    ]

    def half(p):  # 0 for upper half plane starting at angle 0, 1 for lower
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        d = det2(p, q)
        return 0 if d == 0 else (-1 if d > 0 else 1)

    return sorted(pts, key=functools.cmp_to_key(cmp))


def _edge_tcones(a: IntVec, b: IntVec) -> int:
    """T-cone count of the edge from a to b (origin on the left)."""
    d = b[0] - a[0], b[1] - a[1]
    import math

    g = math.gcd(abs(d[0]), abs(d[1]))
    direction = (d[0] // g, d[1] // g)
    height = -(-direction[1] * a[0] + direction[0] * a[1])
    return g // height


def _cycle_polygon(chain: list[IntVec]) -> FanoPolytope:
    """Wrap a validated ccw cycle without re-running hull normalization."""
    k = chain.index(min(chain))
    return FanoPolytope(2, tuple(chain[k:] + chain[:k]))


def enumerate_fano_polygons(bound: int, max_tcones: int | None = None) -> Iterator[FanoPolytope]:
    """All Fano polygons with vertices in [-bound, bound]^2, one per vertex set.

    ``max_tcones`` prunes chains whose closed edges already exceed the given
    total T-cone count, which makes small-content searches fast.
    """
    pts = primitive_points(bound)
    n = len(pts)

    def convex_turn(u, v, w):
        return det2((v[0] - u[0], v[1] - u[1]), (w[0] - v[0], w[1] - v[1])) > 0

    def extend(chain: list[IntVec], last_idx: int, tcones: int):
        for j in range(last_idx + 1, n):
            p = pts[j]
            if det2(chain[-1], p) <= 0:
                continue  # origin must stay strictly left of every edge
            if len(chain) >= 2 and not convex_turn(chain[-2], chain[-1], p):
                continue
            t = tcones + _edge_tcones(chain[-1], p)
            if max_tcones is not None and t > max_tcones:
                continue
            chain.append(p)
            if (
                len(chain) >= 3
                and det2(p, chain[0]) > 0
                and convex_turn(chain[-2], p, chain[0])
                and convex_turn(p, chain[0], chain[1])
            ):
                t_close = t + _edge_tcones(p, chain[0])
                if max_tcones is None or t_close <= max_tcones:
                    yield _cycle_polygon(chain)
            yield from extend(chain, j, t)
            chain.pop()

    for i in range(n):
        yield from extend([pts[i]], i, 0)


def random_fano_polygon(rng: random.Random, bound: int = 5, max_vertices: int = 6) -> FanoPolytope:
    """Rejection-sample a Fano polygon from primitive points in a box."""
    pts = [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if (x, y) != (0, 0) and is_primitive((x, y))
    ]
    while True:
        k = rng.randint(3, max_vertices)
        sample = rng.sample(pts, k)
        try:
            return make_fano(sample)
        except LatticeError:
            continue


def random_valid_edge_mutation(rng: random.Random, p: FanoPolytope):
    """A uniformly chosen edge of p with at least one T-cone, or None."""
    options = [e for e in pg.edges(p) if e.tcone_count >= 1]
    if not options:
        return None
    return rng.choice(options)
