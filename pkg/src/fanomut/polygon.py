"""Fano polytopes, their edge data, and singularity content.

A Fano polytope has the origin strictly in its interior and primitive
vertices.  For polygons each edge carries a height (lattice distance from the
origin), a lattice length, and the count of width-equals-height T-cones; the
leftover residual cones form the basket of the singularity content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .errors import Degenerate, NonPrimitiveVertex, NotFano, OriginNotInterior
from .lattice import (
    IntMat,
    IntVec,
    RationalPolytope,
    canonical_polygon,
    convex_hull,
    det2,
    dot,
    is_primitive,
    matvec,
    primitive_part,
    vsub,
)


@dataclass(frozen=True)
class FanoPolytope:
    """Lattice polytope with primitive vertices and the origin strictly inside.

    2D vertex tuples are counter-clockwise cycles starting at the
    lexicographically least vertex; 3D ones are sorted, with facet index
    cycles alongside.
    """

    dim: int
    vertices: tuple[IntVec, ...]
    facets: tuple[tuple[int, ...], ...] | None = None

    def as_rational(self) -> RationalPolytope:
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        return RationalPolytope(self.dim, verts, self.facets)

    def max_coordinate(self) -> int:
        return max(abs(x) for v in self.vertices for x in v)


@dataclass(frozen=True)
class EdgeData:
    """One polygon edge: endpoints in ccw order plus its mutation data."""

    endpoints: tuple[IntVec, IntVec]
    normal: IntVec  # primitive inward normal
    direction: IntVec  # primitive edge direction, pointing counter-clockwise
    height: int  # edge lies on <normal, .> = -height
    length: int  # lattice length
    tcone_count: int  # floor(length / height)
    residue_width: int  # length mod height


@dataclass(frozen=True)
class ResidueCone:
    """Residual (non-smoothable) cone left after removing all T-cones."""

    height: int
    width: int
    normal: IntVec
    cyclic_type: tuple[int, int]  # (R, a): the quotient singularity 1/R(1, a)


@dataclass(frozen=True)
class SingularityContent:
    tcones: int
    basket: tuple[ResidueCone, ...]

    def key(self):
        """Comparison key: T-cone total plus the basket as a multiset of types."""
        return (self.tcones, tuple(sorted(r.cyclic_type for r in self.basket)))


def make_fano(vertices, dim: int | None = None) -> FanoPolytope:
    """Validate and normalize a Fano polytope from integer points.

    Points interior to the hull (or interior to its facets) are dropped by
    hull normalization; the surviving vertices must be primitive and the
    origin strictly interior.
    """
    for orig in vertices:
        for x in orig:
            if isinstance(x, bool) or not isinstance(x, int):
                raise NonPrimitiveVertex(f"vertex coordinates must be integers: {orig!r}")
    pts = [tuple(int(x) for x in v) for v in vertices]
    if not pts:
        raise Degenerate("no vertices")
    if dim is None:
        dim = len(pts[0])
    if dim not in (2, 3):
        raise Degenerate(f"unsupported dimension {dim}")
    if any(len(p) != dim for p in pts):
        raise Degenerate("mixed vertex dimensions")
    hull = convex_hull(pts, dim)
    verts = tuple(tuple(int(x) for x in v) for v in hull.vertices)
    for v in verts:
        if not is_primitive(v):
            raise NonPrimitiveVertex(f"vertex {v} is not primitive")
    if not lattice.contains_origin_strictly(hull):
        raise OriginNotInterior("origin must be strictly interior")
    return FanoPolytope(dim, verts, hull.facets)


def edges(p: FanoPolytope) -> tuple[EdgeData, ...]:
    """Edge data in counter-clockwise order (polygons only)."""
    if p.dim != 2:
        raise Degenerate("edge data is defined for polygons")
    out = []
    verts = p.vertices
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        direction, length = primitive_part(vsub(b, a))
        normal = (-direction[1], direction[0])  # inward for a ccw cycle
        height = -dot(normal, a)
        if height <= 0 or dot(normal, b) != -height:
            raise NotFano("inconsistent edge geometry")
        out.append(
            EdgeData(
                endpoints=(a, b),
                normal=normal,
                direction=direction,
                height=height,
                length=length,
                tcone_count=length // height,
                residue_width=length % height,
            )
        )
    return tuple(out)


def _cone_cyclic_type(u: IntVec, v: IntVec) -> tuple[int, int]:
    """Type (R, a) of the 2D cone spanned by rays u, v: the singularity 1/R(1,a).

    Normalized so the pair is insensitive to ray order and reflections, i.e.
    a is the smaller of the two inverse-related residues.
    """
    u, _ = primitive_part(u)
    v, _ = primitive_part(v)
    r = abs(det2(u, v))
    if r == 1:
        return (1, 0)
    if det2(u, v) < 0:
        u, v = v, u
    # complete u to a det-1 basis (u, u'), write v = s u + r u'
    g, x, y = _xgcd(u[0], u[1])
    assert g == 1
    uprime = (-y, x)  # det2(u, uprime) = x*u0 + y*u1 = 1
    s = det2(v, uprime) % r
    a = (-pow(s, -1, r)) % r
    a_flip = pow(a, -1, r)
    return (r, min(a, a_flip))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def residue_cone(e: EdgeData) -> ResidueCone | None:
    """Residual cone of an edge, or None when the edge splits into T-cones.

    The residual piece is the cone over the leftover segment of width
    ``length mod height`` after cutting ``tcone_count`` T-cones from one end;
    its singularity type does not depend on which end is cut.
    """
    if e.residue_width == 0:
        return None
    a, b = e.endpoints
    step = lattice.vscale(e.height, e.direction)
    cut = a
    for _ in range(e.tcone_count):
        cut = lattice.vadd(cut, step)
    ctype = _cone_cyclic_type(cut, b)
    return ResidueCone(height=e.height, width=e.residue_width, normal=e.normal, cyclic_type=ctype)


def singularity_content(p: FanoPolytope) -> SingularityContent:
    """Total T-cone count plus the multiset of residual cones, edge by edge."""
    total = 0
    basket = []
    for e in edges(p):
        total += e.tcone_count
        res = residue_cone(e)
        if res is not None:
            basket.append(res)
    return SingularityContent(tcones=total, basket=tuple(basket))


def canonical_form(p: FanoPolytope) -> tuple[tuple[IntVec, ...], IntMat]:
    """GL(2,Z)-canonical vertex list of a Fano polygon, with the map applied."""
    if p.dim != 2:
        raise NotFano("canonical form is certified in dimension 2 only")
    return canonical_polygon(p.vertices)


def canonical_key(p: FanoPolytope) -> tuple:
    """Hashable equivalence key: exact in 2D, HNF-triple invariant in 3D."""
    if p.dim == 2:
        return canonical_polygon(p.vertices)[0]
    return lattice.unimodular_key_3d(p.vertices)


def apply_unimodular(p: FanoPolytope, u: IntMat) -> FanoPolytope:
    if abs(round(lattice.mat_det(u))) != 1:
        raise NotFano("map is not unimodular")
    return make_fano([matvec(u, v) for v in p.vertices], p.dim)


def polytope_json(p: FanoPolytope) -> dict:
    return {"dim": p.dim, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json(data: dict) -> FanoPolytope:
    if not isinstance(data, dict) or "vertices" not in data:
        raise Degenerate("polytope JSON needs a 'vertices' field")
    verts = data["vertices"]
    for v in verts:
        for x in v:
            if isinstance(x, bool) or not isinstance(x, int):
                raise NonPrimitiveVertex(f"polytope JSON must contain integers only, got {x!r}")
    dim = data.get("dim")
    return make_fano(verts, dim)
