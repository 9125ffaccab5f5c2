"""Exact integer/rational linear algebra and low-dimensional convex geometry.

Everything here is exact: coordinates are Python ints or ``fractions.Fraction``
and no operation ever touches floating point.  Polytopes are kept in vertex
form; 2D polygons as counter-clockwise cycles starting at the lexicographically
least vertex, 3D polytopes together with their facet cycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .errors import Degenerate, OriginNotInterior, RankDeficient, ZeroVector

IntVec = tuple[int, ...]
QVec = tuple[Fraction, ...]
IntMat = tuple[IntVec, ...]


# ---------------------------------------------------------------------------
# vector and matrix helpers


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def primitive_part(v) -> tuple[IntVec, int]:
    """Factor an integer vector as g * u with u primitive and g = gcd >= 1."""
    g = 0
    for a in v:
        g = math.gcd(g, abs(a))
    if g == 0:
        raise ZeroVector("zero vector has no primitive part")
    return tuple(a // g for a in v), g


def is_primitive(v) -> bool:
    try:
        _, g = primitive_part(v)
    except ZeroVector:
        return False
    return g == 1


def identity_matrix(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def matmul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m):
    return tuple(zip(*m))


def mat_det(m) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    if n == 2:
        return Fraction(det2(m[0], m[1]))
    if n == 3:
        return Fraction(dot(m[0], cross3(m[1], m[2])))
    rows = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def matrix_rank(m) -> int:
    if not m:
        return 0
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def solve_rational(a, b) -> QVec:
    """Solve a x = b exactly; a must be square and nonsingular."""
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise RankDeficient("singular system")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(rows[i][n] for i in range(n))


def mat_inverse(m):
    """Exact inverse of a nonsingular square matrix (Fraction entries)."""
    n = len(m)
    cols = [solve_rational(m, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    return tuple(zip(*[list(c) for c in cols]))


# ---------------------------------------------------------------------------
# Hermite normal form and integer kernels


def hermite_normal_form(a) -> tuple[IntMat, IntMat]:
    """Left Hermite form H = U A for a full-row-rank integer matrix.

    For square input H is lower triangular with positive diagonal pivots and,
    in every row, the entries left of the diagonal reduced modulo the pivot of
    their column.  This is the unique representative of the GL(n,Z) left
    orbit, so two matrices are related by a unimodular left factor iff their
    forms agree.  U is returned alongside and always satisfies |det U| = 1.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m > n:
        raise RankDeficient("more rows than columns")
    h = [list(row) for row in a]
    u = [list(row) for row in identity_matrix(m)]

    def rowop(dst, src, q):
        h[dst] = [x - q * y for x, y in zip(h[dst], h[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    # pivot of row i goes to column (n - m + i); eliminate bottom-up
    for i in range(m - 1, -1, -1):
        col = n - m + i
        while True:
            nz = [r for r in range(i + 1) if h[r][col] != 0]
            if not nz:
                raise RankDeficient("matrix does not have full row rank")
            r0 = min(nz, key=lambda r: abs(h[r][col]))
            done = True
            for r in nz:
                if r == r0:
                    continue
                rowop(r, r0, h[r][col] // h[r0][col])
                if h[r][col] != 0:
                    done = False
            if done:
                break
        nz = [r for r in range(i + 1) if h[r][col] != 0]
        r0 = nz[0]
        if r0 != i:
            h[r0], h[i] = h[i], h[r0]
            u[r0], u[i] = u[i], u[r0]
        if h[i][col] < 0:
            h[i] = [-x for x in h[i]]
            u[i] = [-x for x in u[i]]
    # reduce entries below each pivot column, right-to-left so earlier
    # reductions are not disturbed (row i only touches columns <= its pivot)
    for r in range(m):
        for i in range(r - 1, -1, -1):
            piv = h[i][n - m + i]
            q = h[r][n - m + i] // piv
            if q:
                rowop(r, i, q)
    hh = tuple(tuple(row) for row in h)
    uu = tuple(tuple(row) for row in u)
    if abs(round(mat_det(uu))) != 1:
        raise RankDeficient("internal: transform not unimodular")
    return hh, uu


def integer_kernel(a) -> tuple[IntVec, ...]:
    """Basis of the saturated integer kernel {x : a x = 0}.

    Computed by unimodular row reduction of the transpose; the rows of the
    transform matching zero rows of the echelon span the kernel and are
    automatically a basis of a saturated sublattice.
    """
    if not a:
        return ()
    ncols = len(a[0])
    rows = [list(col) for col in zip(*a)]  # transpose: ncols x nrows
    u = [list(r) for r in identity_matrix(ncols)]
    pivot_row = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        while True:
            nz = [r for r in range(pivot_row, ncols) if rows[r][col] != 0]
            if not nz:
                break
            r0 = min(nz, key=lambda r: abs(rows[r][col]))
            others = [r for r in nz if r != r0]
            if not others:
                if r0 != pivot_row:
                    rows[r0], rows[pivot_row] = rows[pivot_row], rows[r0]
                    u[r0], u[pivot_row] = u[pivot_row], u[r0]
                pivot_row += 1
                break
            for r in others:
                q = rows[r][col] // rows[r0][col]
                rows[r] = [x - q * y for x, y in zip(rows[r], rows[r0])]
                u[r] = [x - q * y for x, y in zip(u[r], u[r0])]
    return tuple(tuple(u[r]) for r in range(pivot_row, ncols))


def solve_integer_combination(basis, target) -> IntVec:
    """Coefficients c with sum c_i basis_i = target; asserts integrality."""
    if not basis:
        raise RankDeficient("empty basis")
    n = len(target)
    r = len(basis)
    # pick r independent coordinate rows to invert
    idx = []
    test = []
    for coord in range(n):
        cand = test + [[b[coord] for b in basis]]
        if matrix_rank(cand) == len(cand):
            test = cand
            idx.append(coord)
        if len(idx) == r:
            break
    if len(idx) < r:
        raise RankDeficient("basis is not independent")
    a = tuple(tuple(basis[j][i] for j in range(r)) for i in idx)
    b = tuple(target[i] for i in idx)
    sol = solve_rational(a, b)
    if any(x.denominator != 1 for x in sol):
        raise RankDeficient("target is not an integer combination")
    coeffs = tuple(int(x) for x in sol)
    if any(sum(c * b[i] for c, b in zip(coeffs, basis)) != target[i] for i in range(n)):
        raise RankDeficient("target not in the span of the basis")
    return coeffs


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class RationalPolytope:
    """Full-dimensional polytope given by its irredundant vertices.

    2D: ``vertices`` is a counter-clockwise cycle starting at the
    lexicographically least vertex.  3D: ``vertices`` is lexicographically
    sorted and ``facets`` holds one index cycle per facet, oriented
    counter-clockwise as seen from outside.
    """

    dim: int
    vertices: tuple[QVec, ...]
    facets: tuple[tuple[int, ...], ...] | None = None


def _as_frac_vec(p) -> QVec:
    return tuple(Fraction(x) for x in p)


def hull2d(points) -> tuple[QVec, ...]:
    """Monotone chain; strict turns only, so output vertices are irredundant."""
    pts = sorted(set(_as_frac_vec(p) for p in points))
    if len(pts) < 3:
        raise Degenerate("need at least three distinct points")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:
        raise Degenerate("points are collinear")
    return tuple(cycle)  # ccw, starts at lexicographic minimum


def _plane_key(p0, p1, p2, sample_points):
    """Primitive integer outward-ish normal and offset for a 3-point plane."""
    n = cross3(vsub(p1, p0), vsub(p2, p0))
    den_lcm = 1
    for x in n:
        den_lcm = den_lcm * x.denominator // math.gcd(den_lcm, x.denominator)
    ni = tuple(int(x * den_lcm) for x in n)
    ni, _ = primitive_part(ni)
    c = dot(ni, p0)
    for q in sample_points:
        s = dot(ni, q) - c
        if s > 0:
            ni, c = vneg(ni), -c
            break
        if s < 0:
            break
    return ni, c


def hull3d(points) -> tuple[tuple[QVec, ...], tuple[tuple[int, ...], ...]]:
    """Incremental 3D hull with exact orientation predicates.

    Returns lexicographically sorted vertices and facet cycles (indices into
    the vertex tuple), each cycle counter-clockwise seen from outside.
    """
    pts = sorted(set(_as_frac_vec(p) for p in points))
    if len(pts) < 4:
        raise Degenerate("need at least four distinct points")

    def orient(ia, ib, ic, id_):
        return dot(cross3(vsub(pts[ib], pts[ia]), vsub(pts[ic], pts[ia])), vsub(pts[id_], pts[ia]))

    # initial affinely independent quadruple
    i0 = 0
    i1 = next((i for i in range(len(pts)) if pts[i] != pts[i0]), None)
    i2 = next(
        (i for i in range(len(pts)) if i not in (i0, i1) and any(cross3(vsub(pts[i1], pts[i0]), vsub(pts[i], pts[i0])))),
        None,
    )
    if i2 is None:
        raise Degenerate("points are collinear")
    i3 = next((i for i in range(len(pts)) if i not in (i0, i1, i2) and orient(i0, i1, i2, i) != 0), None)
    if i3 is None:
        raise Degenerate("points are coplanar")
    if orient(i0, i1, i2, i3) > 0:
        i1, i2 = i2, i1
    faces = {(i0, i1, i2), (i0, i3, i1), (i1, i3, i2), (i0, i2, i3)}

    for ip in range(len(pts)):
        if ip in (i0, i1, i2, i3):
            continue
        visible = {f for f in faces if orient(f[0], f[1], f[2], ip) > 0}
        if not visible:
            continue
        horizon = []
        edges = set()
        for f in visible:
            for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                edges.add(e)
        for a, b in edges:
            if (b, a) not in edges:
                horizon.append((a, b))
        faces -= visible
        for a, b in horizon:
            faces.add((a, b, ip))

    # group coplanar triangles into facets and rebuild their vertex cycles
    plane_groups: dict[tuple, None] = {}
    for f in faces:
        key = _plane_key(pts[f[0]], pts[f[1]], pts[f[2]], pts)
        plane_groups[key] = None
    facet_cycles = []
    used: set[QVec] = set()
    for ni, c in sorted(plane_groups):
        on_plane = [p for p in pts if dot(ni, p) == c]
        q0 = on_plane[0]
        q1 = next(p for p in on_plane if p != q0)
        uvec = vsub(q1, q0)
        q2 = next(p for p in on_plane if any(cross3(uvec, vsub(p, q0))))
        wvec = vsub(q2, q0)
        if dot(cross3(uvec, wvec), tuple(Fraction(x) for x in ni)) < 0:
            uvec, wvec = wvec, uvec
        denom = dot(cross3(uvec, wvec), tuple(Fraction(x) for x in ni))
        flat = []
        for p in on_plane:
            d = vsub(p, q0)
            s = Fraction(dot(cross3(d, wvec), tuple(Fraction(x) for x in ni)), 1) / denom
            t = Fraction(dot(cross3(uvec, d), tuple(Fraction(x) for x in ni)), 1) / denom
            flat.append(((s, t), p))
        coord_map = dict(flat)
        cycle2d = hull2d([st for st, _ in flat])
        facet_cycles.append(tuple(coord_map[st] for st in cycle2d))
        used.update(facet_cycles[-1])

    verts = tuple(sorted(used))
    index = {v: i for i, v in enumerate(verts)}
    norm_facets = []
    for cyc in facet_cycles:
        idx = tuple(index[v] for v in cyc)
        k = idx.index(min(idx))
        norm_facets.append(idx[k:] + idx[:k])
    return verts, tuple(sorted(norm_facets))


def convex_hull(points, dim: int | None = None) -> RationalPolytope:
    """Irredundant vertex description; deterministic for a fixed input set."""
    pts = [_as_frac_vec(p) for p in points]
    if not pts:
        raise Degenerate("no points")
    if dim is None:
        dim = len(pts[0])
    if dim == 2:
        return RationalPolytope(2, hull2d(pts))
    if dim == 3:
        verts, facets = hull3d(pts)
        return RationalPolytope(3, verts, facets)
    raise Degenerate(f"unsupported dimension {dim}")


def polytope_edges(p: RationalPolytope) -> tuple[tuple[QVec, QVec], ...]:
    if p.dim == 2:
        v = p.vertices
        return tuple((v[i], v[(i + 1) % len(v)]) for i in range(len(v)))
    seen = set()
    out = []
    for cyc in p.facets:
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            key = (min(a, b), max(a, b))
            if key not in seen:
                seen.add(key)
                out.append((p.vertices[key[0]], p.vertices[key[1]]))
    return tuple(out)


def facet_planes(p: RationalPolytope) -> tuple[tuple[IntVec, Fraction], ...]:
    """Outward primitive integer normals with offsets: <n, x> = c on the facet."""
    planes = []
    if p.dim == 2:
        v = p.vertices
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            d = vsub(b, a)
            # ccw cycle: outward normal is the clockwise rotation of d
            n = (d[1], -d[0])
            den_lcm = 1
            for x in n:
                den_lcm = den_lcm * x.denominator // math.gcd(den_lcm, x.denominator)
            ni, _ = primitive_part(tuple(int(x * den_lcm) for x in n))
            planes.append((ni, dot(ni, a)))
        return tuple(planes)
    for cyc in p.facets:
        a, b, c = (p.vertices[cyc[k]] for k in range(3))
        planes.append(_plane_key(a, b, c, p.vertices))
    return tuple(planes)


def contains_origin_strictly(p: RationalPolytope) -> bool:
    return all(c > 0 for _, c in facet_planes(p))


def polytope_dual(p: RationalPolytope) -> RationalPolytope:
    """Dual {u : <u, v> >= -1 for all v in P}; needs the origin strictly inside.

    With this convention an edge at lattice height h dualizes to the vertex
    w/h where w is the primitive inward normal, and the double dual returns
    the original polytope exactly.
    """
    duals = []
    for n, c in facet_planes(p):
        if c <= 0:
            raise OriginNotInterior("dual needs the origin strictly inside")
        duals.append(tuple(Fraction(-x, 1) / c for x in n))
    return convex_hull(duals, p.dim)


def volume(p: RationalPolytope) -> Fraction:
    """Euclidean volume: shoelace in 2D, facet fan from a vertex in 3D."""
    if p.dim == 2:
        v = p.vertices
        acc = Fraction(0)
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            acc += det2(a, b)
        return abs(acc) / 2
    apex = p.vertices[0]
    total = Fraction(0)
    for cyc in p.facets:
        c0 = p.vertices[cyc[0]]
        acc = Fraction(0)
        for i in range(1, len(cyc) - 1):
            ci = p.vertices[cyc[i]]
            cj = p.vertices[cyc[i + 1]]
            acc += dot(cross3(vsub(c0, apex), vsub(ci, apex)), vsub(cj, apex))
        total += abs(acc)
    return total / 6


# ---------------------------------------------------------------------------
# canonical forms under GL(n, Z)


def canonical_polygon(vertices: tuple[IntVec, ...]) -> tuple[tuple[IntVec, ...], IntMat]:
    """Deterministic GL(2,Z)-orbit representative of a lattice polygon.

    For every ordered pair of cyclically adjacent vertices, in both cycle
    orientations, the pair matrix is brought to Hermite form; the transform is
    applied to the whole cycle starting at the pair; the lexicographically
    least resulting vertex list wins.  Two polygons are GL(2,Z)-equivalent iff
    their canonical lists agree.
    """
    n = len(vertices)
    best = None
    best_u = None
    for orient in (1, -1):
        cyc = vertices if orient == 1 else tuple(reversed(vertices))
        for s in range(n):
            a, b = cyc[s], cyc[(s + 1) % n]
            mat = ((a[0], b[0]), (a[1], b[1]))
            if det2(a, b) == 0:
                continue
            _, u = hermite_normal_form(mat)
            cand = tuple(matvec(u, cyc[(s + k) % n]) for k in range(n))
            if best is None or cand < best:
                best, best_u = cand, u
    if best is None:
        raise Degenerate("no independent adjacent vertex pair")
    return best, best_u


def unimodular_key_3d(vertices) -> tuple:
    """GL(3,Z)-orbit invariant of an integer vertex set.

    Minimum over ordered independent vertex triples of the sorted vertex list
    after the Hermite transform of the triple matrix.  The candidate set is
    equivariant under GL(3,Z), so the key is constant on orbits and equal keys
    exhibit an explicit equivalence.
    """
    verts = tuple(tuple(int(x) for x in v) for v in vertices)
    best = None
    for tri in permutations(range(len(verts)), 3):
        a, b, c = (verts[t] for t in tri)
        mat = tuple(zip(a, b, c))
        if mat_det(mat) == 0:
            continue
        _, u = hermite_normal_form(mat)
        cand = tuple(sorted(matvec(u, v) for v in verts))
        if best is None or cand < best:
            best = cand
    if best is None:
        raise Degenerate("vertex set is not full dimensional")
    return best


def enumerate_unimodular_2x2(bound: int):
    """All 2x2 integer matrices with entries in [-bound, bound] and det +-1."""
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if abs(a * d - b * c) == 1:
                        yield ((a, b), (c, d))


def random_unimodular(rng, dim: int, steps: int = 8) -> IntMat:
    """Random GL(dim,Z) element from shears, swaps, and sign flips."""
    m = [list(r) for r in identity_matrix(dim)]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        op = rng.randrange(3)
        if op == 0:
            q = rng.randint(-2, 2)
            m[i] = [x + q * y for x, y in zip(m[i], m[j])]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return tuple(tuple(r) for r in m)


def lattice_points_2d(p: RationalPolytope):
    """All lattice points inside a polygon, by exact row scans."""
    ys = [v[1] for v in p.vertices]
    y0 = math.ceil(min(ys))
    y1 = math.floor(max(ys))
    edges = polytope_edges(p)
    for y in range(y0, y1 + 1):
        xs = []
        for a, b in edges:
            lo, hi = (a, b) if a[1] <= b[1] else (b, a)
            if lo[1] <= y <= hi[1]:
                if lo[1] == hi[1]:
                    xs.extend((lo[0], hi[0]))
                else:
                    t = Fraction(y - lo[1]) / (hi[1] - lo[1])
                    xs.append(lo[0] + t * (hi[0] - lo[0]))
        if not xs:
            continue
        for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
            yield (x, y)
