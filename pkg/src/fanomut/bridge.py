"""The polygon/cluster correspondence.

A Fano polygon determines a quiver: one unfrozen vertex per T-cone of each
edge and one frozen vertex per basket element, with arrow counts given by
determinants of the primitive inward normals.  Polygon mutation at an edge
intertwines quiver mutation at any of the edge's unfrozen indices, which is
what makes the finite-type classification computable.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field

from . import cluster as cl
from . import lattice, polygon as pg
from .errors import NotConvex, NotKronecker, NotFanoSupport, InvariantViolation, ZeroVector
from .lattice import IntVec, det2
from .laurent import LaurentPolynomial
from .mutation import MutationData, algebraic_mutate, algebraic_partner, combinatorial_mutate, newton_fano
from .polygon import FanoPolytope, EdgeData, ResidueCone, SingularityContent


@dataclass(frozen=True)
class PolygonSeed:
    """Index data of a polygon: unfrozen prefix of T-cone slots, frozen basket."""

    polytope: FanoPolytope
    normals: tuple[IntVec, ...]  # value of the lattice map at each index
    edge_of: tuple[int, ...]  # unfrozen index -> position in edges(polytope)
    basket: tuple[ResidueCone, ...]  # frozen index order matches this tuple
    quiver: cl.Quiver

    @property
    def unfrozen_count(self) -> int:
        return len(self.edge_of)


def polygon_seed(p: FanoPolytope) -> PolygonSeed:
    """Build the seed: edges in ccw order contribute their T-cone copies, then
    the basket, with the skew form given by 2x2 determinants of normals."""
    edges = pg.edges(p)
    normals: list[IntVec] = []
    edge_of: list[int] = []
    basket: list[ResidueCone] = []
    for pos, e in enumerate(edges):
        for _ in range(e.tcone_count):
            normals.append(e.normal)
            edge_of.append(pos)
    for e in edges:
        res = pg.residue_cone(e)
        if res is not None:
            basket.append(res)
            normals.append(res.normal)
    m = len(normals)
    b = tuple(tuple(det2(normals[i], normals[j]) for j in range(m)) for i in range(m))
    frozen = frozenset(range(len(edge_of), m))
    return PolygonSeed(p, tuple(normals), tuple(edge_of), tuple(basket), cl.Quiver(b, frozen))


def mutation_data_for_edge(e: EdgeData) -> MutationData:
    """Weight = primitive inward normal, factor = ccw edge direction."""
    return MutationData(e.normal, e.direction)


def polygon_mutate_at(p: FanoPolytope, k: int, verify: bool = True) -> FanoPolytope:
    """Mutate the polygon at the edge owning unfrozen index k.

    With ``verify`` the quiver of the result is checked against quiver
    mutation of the original seed, up to isomorphism.
    """
    seed = polygon_seed(p)
    if not 0 <= k < seed.unfrozen_count:
        raise ZeroVector(f"index {k} is not unfrozen")
    e = pg.edges(p)[seed.edge_of[k]]
    result = combinatorial_mutate(p, mutation_data_for_edge(e))
    if verify:
        expected = cl.quiver_mutate(seed.quiver, k)
        got = polygon_seed(result).quiver
        ok, _ = cl.quiver_isomorphic(expected, got)
        if not ok:
            raise InvariantViolation("polygon mutation does not intertwine quiver mutation")
    return result


@dataclass(frozen=True)
class MutationGraph:
    nodes: tuple[tuple[IntVec, ...], ...]  # canonical vertex lists, discovery order
    edges: tuple[tuple[int, int, int], ...]  # (source node, edge position, target node)
    status: str  # "complete" | "exceeded"
    reason: str | None = None

    @property
    def exceeded(self) -> bool:
        return self.status == "exceeded"

    def node_ids(self) -> tuple[str, ...]:
        return tuple(graph_node_id(v) for v in self.nodes)


def graph_node_id(canonical_vertices) -> str:
    payload = repr(tuple(tuple(v) for v in canonical_vertices)).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def _mutable_edges(p: FanoPolytope):
    return [(pos, e) for pos, e in enumerate(pg.edges(p)) if e.tcone_count >= 1]


def polygon_mutation_graph(p: FanoPolytope, max_nodes: int = 10000, max_coord: int = 10**6) -> MutationGraph:
    """BFS over canonical polygon classes along valid edge mutations.

    All T-cone copies of one edge induce the same polygon mutation, so one
    attempt per edge suffices.  The search reports ``exceeded`` as soon as
    the node budget or a coordinate bound is passed.
    """
    start_key = pg.canonical_key(p)
    index = {start_key: 0}
    nodes = [start_key]
    reps = [pg.make_fano(start_key, 2)]
    edges_out = set()
    frontier = deque([0])
    status, reason = "complete", None
    while frontier:
        cur = frontier.popleft()
        cur_poly = reps[cur]
        for pos, e in _mutable_edges(cur_poly):
            try:
                img = combinatorial_mutate(cur_poly, mutation_data_for_edge(e))
            except NotConvex:
                continue
            key = pg.canonical_key(img)
            if key not in index:
                if len(nodes) >= max_nodes:
                    status, reason = "exceeded", "max_nodes"
                    break
                if max(abs(x) for v in key for x in v) > max_coord:
                    status, reason = "exceeded", "max_coord"
                    break
                index[key] = len(nodes)
                nodes.append(key)
                reps.append(pg.make_fano(key, 2))
                frontier.append(index[key])
            edges_out.add((cur, pos, index[key]))
        if status == "exceeded":
            break
    return MutationGraph(tuple(nodes), tuple(sorted(edges_out)), status, reason)


@dataclass(frozen=True)
class FiniteTypeReport:
    quiver_type: str
    polygon_class_size: int | None
    polygon_status: str  # "complete" | "exceeded" | "skipped"
    kronecker: bool
    verdict: str  # "finite" | "infinite" | "inconclusive"
    content: SingularityContent
    quiver: cl.Quiver


_FINITE_TYPES = ("A2", "A3", "D4")


def classify(
    p: FanoPolytope,
    max_nodes: int = 10000,
    max_coord: int = 10**6,
    quiver_cutoff: int = 200,
    kronecker_shortcut: bool = True,
) -> FiniteTypeReport:
    """Finite-type verdict from the quiver criterion plus direct polygon search.

    ``finite`` needs the quiver type to be one of the four finite shapes and
    the polygon search to complete; a Kronecker pair forces ``infinite`` when
    the shortcut is enabled (it implies unbounded edge heights).  A matched
    quiver type with a truncated polygon search is ``inconclusive``.
    """
    seed = polygon_seed(p)
    kron = cl.has_kronecker(seed.quiver)
    qtype = cl.dynkin_type(seed.quiver, cutoff=quiver_cutoff)
    graph = polygon_mutation_graph(p, max_nodes=max_nodes, max_coord=max_coord)
    finite_shape = qtype.startswith("A1^") or qtype in _FINITE_TYPES
    if kronecker_shortcut and kron:
        verdict = "infinite"
    elif finite_shape and not graph.exceeded:
        verdict = "finite"
    elif not finite_shape and graph.exceeded:
        verdict = "infinite"
    else:
        verdict = "inconclusive"
    return FiniteTypeReport(
        quiver_type=qtype,
        polygon_class_size=len(graph.nodes),
        polygon_status=graph.status,
        kronecker=kron,
        verdict=verdict,
        content=pg.singularity_content(p),
        quiver=seed.quiver,
    )


def kronecker_growth_trace(p: FanoPolytope, pair: tuple[int, int], steps: int) -> list[tuple[int, int]]:
    """Alternately mutate at a Kronecker pair of edges, recording their heights.

    The recorded sequence starts with the initial pair of heights; the growth
    inequality h_new >= k * h_other - h_old is asserted at every step.
    """
    seed = polygon_seed(p)
    i, j = pair
    for idx in (i, j):
        if not 0 <= idx < seed.unfrozen_count:
            raise NotKronecker(f"index {idx} is not unfrozen")
    k = abs(seed.quiver.b[i][j])
    if k < 2:
        raise NotKronecker(f"pair {pair} spans {k} arrows, need at least 2")
    edges = pg.edges(p)
    tracked = [edges[seed.edge_of[i]].normal, edges[seed.edge_of[j]].normal]

    def edge_with_normal(poly, normal):
        for e in pg.edges(poly):
            if e.normal == normal:
                return e
        raise NotKronecker(f"no edge with inward normal {normal}")

    heights = [(edge_with_normal(p, tracked[0]).height, edge_with_normal(p, tracked[1]).height)]
    cur = p
    active = 0
    for _ in range(steps):
        e = edge_with_normal(cur, tracked[active])
        cur = combinatorial_mutate(cur, mutation_data_for_edge(e))
        tracked[active] = tuple(-x for x in tracked[active])
        h = (edge_with_normal(cur, tracked[0]).height, edge_with_normal(cur, tracked[1]).height)
        old = heights[-1]
        if active == 0:
            if not (h[0] >= k * old[1] - old[0] and h[1] == old[1]):
                raise InvariantViolation(f"height growth bound violated: {old} -> {h}")
        else:
            if not (h[1] >= k * old[0] - old[1] and h[0] == old[0]):
                raise InvariantViolation(f"height growth bound violated: {old} -> {h}")
        heights.append(h)
        active = 1 - active
    return heights


@dataclass(frozen=True)
class MutabilityReport:
    passed: bool
    depth: int
    mutations_checked: int
    failure_path: tuple[tuple[tuple[IntVec, ...], int], ...] | None = None


def maximally_mutable(w: LaurentPolynomial, depth: int = 4) -> MutabilityReport:
    """Check that w stays Laurent under every chain of polygon mutations.

    Walks all mutation paths of the Newton polygon to the given depth,
    transporting w algebraically along each edge; the first failing path is
    reported.  The Newton polytope must be a Fano polygon.
    """
    try:
        start = newton_fano(w)
    except Exception as exc:
        raise NotFanoSupport("support must span a Fano polygon") from exc
    if start.dim != 2:
        raise NotFanoSupport("mutability walk is for polygons")
    checked = 0

    def walk(cur_w, cur_p, path, remaining):
        nonlocal checked
        if remaining == 0:
            return None
        for pos, e in _mutable_edges(cur_p):
            d = mutation_data_for_edge(e)
            try:
                img_p = combinatorial_mutate(cur_p, d)
            except NotConvex:
                continue
            checked += 1
            try:
                # the pullback pairing with the polytope map carries -f
                img_w = algebraic_mutate(cur_w, algebraic_partner(d))
            except Exception:
                return path + ((cur_p.vertices, pos),)
            if newton_fano(img_w).vertices != img_p.vertices:
                raise InvariantViolation("Newton polytope disagrees with combinatorial mutation")
            fail = walk(img_w, img_p, path + ((cur_p.vertices, pos),), remaining - 1)
            if fail is not None:
                return fail
        return None

    failure = walk(w, start, (), depth)
    return MutabilityReport(failure is None, depth, checked, failure)
