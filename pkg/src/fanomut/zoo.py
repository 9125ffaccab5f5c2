"""Named Fano polygons used across experiments and tests.

Each constructor documents the quiver shape its polygon produces; the
finite-type instances were located by exhaustive search over small boxes and
are verified from scratch by the test suite.
"""

from __future__ import annotations

from .polygon import FanoPolytope, make_fano


def projective_plane() -> FanoPolytope:
    """Triangle whose quiver is the triple-arrow three-cycle (Markov dynamics)."""
    return make_fano([(1, 0), (0, 1), (-1, -1)])


def weighted_114() -> FanoPolytope:
    """First Markov mutation of the plane triangle."""
    return make_fano([(1, 0), (0, 1), (-1, -4)])


def diamond() -> FanoPolytope:
    """Crosspolytope; adjacent normals pair with determinant 2 (Kronecker)."""
    return make_fano([(1, 0), (0, 1), (-1, 0), (0, -1)])


def square() -> FanoPolytope:
    """Product of two lines; eight T-cone indices, no Kronecker pair."""
    return make_fano([(1, 1), (-1, 1), (-1, -1), (1, -1)])


def weighted_113() -> FanoPolytope:
    """Triangle with a width-one height-three residual cone and a 5-arrow pair."""
    return make_fano([(1, 0), (0, 1), (-1, -3)])


def hexagon() -> FanoPolytope:
    """Del Pezzo hexagon: six unit edges, connected 6-vertex quiver."""
    return make_fano([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])


def a2_pentagon_class() -> FanoPolytope:
    """Quadrilateral with two unit T-cones on a unimodular normal pair.

    Its mutation class is the full pentagon (five polygons).
    """
    return make_fano([(1, 0), (1, 1), (0, 1), (-3, -7)])


def a2_box_instance() -> FanoPolytope:
    """In-box pentagon with T-cone count two and unimodular normal pair."""
    return make_fano([(1, 0), (1, 1), (0, 1), (-3, -1), (-1, -3)])


def a2_singleton() -> FanoPolytope:
    """Polygon with two T-cones, unimodular normals, and a one-element
    mutation class: every mutation returns an equivalent polygon."""
    return make_fano([(-2, -3), (-1, -3), (1, 0), (2, 3), (1, 3), (-1, 1), (-2, -1)])


def a1_parallel() -> FanoPolytope:
    """Six T-cone copies on two parallel edges: quiver with no arrows."""
    return make_fano([(1, 1), (-1, 1), (-2, -1), (2, -1)])


def a3_instance() -> FanoPolytope:
    """Two edges with T-cone counts two and one meeting at determinant one."""
    return make_fano([(1, 1), (-1, 1), (-1, 0), (2, -5)])


def d4_instance() -> FanoPolytope:
    """Edge with three T-cones plus a unimodular partner: star-shaped quiver."""
    return make_fano([(2, 1), (-1, 1), (-1, 0), (1, -3)])


def curated() -> dict[str, FanoPolytope]:
    """Polygons spanning finite and infinite mutation type."""
    return {
        "projective_plane": projective_plane(),
        "weighted_114": weighted_114(),
        "weighted_113": weighted_113(),
        "diamond": diamond(),
        "square": square(),
        "hexagon": hexagon(),
        "a2_pentagon_class": a2_pentagon_class(),
        "a2_box_instance": a2_box_instance(),
        "a2_singleton": a2_singleton(),
        "a1_parallel": a1_parallel(),
        "a3_instance": a3_instance(),
        "d4_instance": d4_instance(),
    }
