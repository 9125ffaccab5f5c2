"""Algebraic mutation of Laurent polynomials and combinatorial mutation of
Fano polytopes, linked through Newton polytopes.

The algebraic map sends z^n to z^n (1 + z^f)^{<w,n>} for a weight w and a
factor f annihilated by w.  On the dual side the piecewise-linear map
T(m) = m + max(0, <m,f>) w acts on the dual polytope; a polytope mutates when
the image is convex, which is decided exactly by a volume comparison (both
linear pieces of T are measure preserving).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice, polygon
from .errors import Degenerate, InvariantViolation, NotAnnihilating, NotConvex, NotDivisible, NotLaurent, NonPrimitive, ZeroVector
from .lattice import IntVec, RationalPolytope, convex_hull, dot, polytope_dual, polytope_edges, vadd, vscale, vsub, volume
from .laurent import LaurentPolynomial, binomial_power, laurent_divide_exact
from .polygon import FanoPolytope, make_fano


@dataclass(frozen=True)
class MutationData:
    """A weight/factor pair: weight in the dual lattice, factor annihilated by it."""

    weight: IntVec
    factor: IntVec

    def __post_init__(self):
        if len(self.weight) != len(self.factor):
            raise ZeroVector("weight and factor must share a dimension")
        if dot(self.weight, self.factor) != 0:
            raise NotAnnihilating(f"<w,f> = {dot(self.weight, self.factor)} != 0")

    @property
    def dim(self) -> int:
        return len(self.weight)

    def require_primitive(self):
        if not (lattice.is_primitive(self.weight) and lattice.is_primitive(self.factor)):
            raise NonPrimitive(f"mutation data {self} must have primitive entries")
        return self

    def inverse(self) -> "MutationData":
        """Data whose piecewise-linear map undoes this one."""
        return MutationData(tuple(-x for x in self.weight), self.factor)

    def negated(self) -> "MutationData":
        return MutationData(tuple(-x for x in self.weight), tuple(-x for x in self.factor))


def algebraic_mutate(w: LaurentPolynomial, d: MutationData) -> LaurentPolynomial:
    """Pullback of w along z^n -> z^n (1+z^f)^{<w,n>}; NotLaurent if not regular.

    Negative pairings are cleared with a global factor (1+z^f)^K followed by
    one exact division, so regularity is decided exactly.
    """
    if w.is_zero():
        raise ZeroVector("cannot mutate the zero polynomial")
    if w.dim != d.dim:
        raise ZeroVector("dimension mismatch")
    pairings = {e: dot(d.weight, e) for e in w.support()}
    k = max(0, -min(pairings.values()))
    cleared = LaurentPolynomial.zero(w.dim)
    for e, c in w.items():
        cleared = cleared + binomial_power(w.dim, d.factor, pairings[e] + k).shift(e) * c
    if k == 0:
        return cleared
    try:
        return laurent_divide_exact(cleared, binomial_power(w.dim, d.factor, k))
    except NotDivisible as exc:
        raise NotLaurent(f"mutation by {d} does not preserve regularity") from exc


def pl_transform(q: RationalPolytope, d: MutationData) -> RationalPolytope:
    """Image of q under m -> m + max(0, <m,f>) w, if convex.

    The polytope is split along <.,f> = 0; each closed piece maps by a
    unimodular linear map, so the image is convex exactly when the hull of
    the mapped vertices and cut points has the same volume as q.
    """
    if q.dim != d.dim:
        raise ZeroVector("dimension mismatch")

    def image(m):
        s = dot(m, d.factor)
        if s > 0:
            return vadd(m, vscale(s, tuple(Fraction(x) for x in d.weight)))
        return m

    pts = [image(v) for v in q.vertices]
    for a, b in polytope_edges(q):
        sa, sb = dot(a, d.factor), dot(b, d.factor)
        if (sa > 0 > sb) or (sb > 0 > sa):
            t = Fraction(sa) / (sa - sb)
            pts.append(vadd(a, vscale(t, vsub(b, a))))
    try:
        hull = convex_hull(pts, q.dim)
    except Degenerate as exc:
        raise NotConvex("piecewise-linear image is degenerate") from exc
    if volume(hull) != volume(q):
        raise NotConvex("piecewise-linear image is not convex")
    return hull


def combinatorial_mutate(p: FanoPolytope, d: MutationData) -> FanoPolytope:
    """Mutate a Fano polytope: dualize, transform, dualize back."""
    dual = polytope_dual(p.as_rational())
    moved = pl_transform(dual, d)
    back = polytope_dual(moved)
    verts = []
    for v in back.vertices:
        if any(x.denominator != 1 for x in v):
            raise InvariantViolation(f"mutated polytope has non-integral vertex {v}")
        verts.append(tuple(int(x) for x in v))
    return make_fano(verts, p.dim)


def newton_polytope(w: LaurentPolynomial) -> RationalPolytope:
    """Convex hull of the support."""
    return convex_hull(w.support(), w.dim)


def newton_fano(w: LaurentPolynomial) -> FanoPolytope:
    """Newton polytope as a Fano polytope; raises if it is not one."""
    hull = newton_polytope(w)
    return make_fano([tuple(int(x) for x in v) for v in hull.vertices], w.dim)


def algebraic_partner(d: MutationData) -> MutationData:
    """Data pairing with d across the Newton-polytope identity.

    Under the dual convention {u : <u,v> >= -1}, the pullback with factor f
    matches the piecewise-linear map with factor -f: the two images differ by
    the unimodular shear m -> m + <m,f> w, which the sign flip absorbs.
    """
    return MutationData(d.weight, tuple(-x for x in d.factor))


def newton_compatible(w: LaurentPolynomial, d: MutationData) -> bool:
    """Exact Newton-polytope compatibility of the two mutation notions.

    Checks dual(Newt(pullback(w, d))) == pl_transform(dual(Newt(w)), partner)
    where partner carries the negated factor; both sides are exact rational
    polytopes, so equality is literal.
    """
    mutated = algebraic_mutate(w, d)
    lhs = polytope_dual(newton_polytope(mutated))
    rhs = pl_transform(polytope_dual(newton_polytope(w)), algebraic_partner(d))
    return lhs.vertices == rhs.vertices
