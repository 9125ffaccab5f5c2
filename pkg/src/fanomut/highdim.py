"""Compatible collections of mutation data in any dimension.

A collection of weight/factor pairs is compatible when the pairing matrix
<w_i, f_j> is skew-symmetric; it then carries a quiver and a mutation rule of
its own, and corresponds to a cluster seed together with a choice of kernel
subspace of the exchange form.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cluster as cl
from .errors import (
    CompatibilityBroken,
    Incompatible,
    NonPrimitive,
    NotAnnihilating,
    NotConvex,
    NotInKernel,
    RankDeficient,
    ZeroVector,
)
from .lattice import IntMat, IntVec, dot, identity_matrix, integer_kernel, matrix_rank, solve_integer_combination
from .mutation import MutationData, combinatorial_mutate
from .polygon import FanoPolytope, canonical_key


@dataclass(frozen=True)
class CompatibleCollection:
    """Mutation data items with their skew pairing matrix <w_i, f_j>."""

    items: tuple[MutationData, ...]
    form: IntMat

    @property
    def dim(self) -> int:
        return self.items[0].dim

    def __len__(self):
        return len(self.items)


def pairing_matrix(items) -> IntMat:
    return tuple(tuple(dot(a.weight, b.factor) for b in items) for a in items)


def check_compatible(items, require_primitive: bool = True) -> CompatibleCollection:
    """Validate pairwise antisymmetry (and primitivity for user-supplied data)."""
    items = tuple(items if isinstance(items, (list, tuple)) else list(items))
    if not items:
        raise ZeroVector("empty collection")
    dim = items[0].dim
    data = []
    for it in items:
        if not isinstance(it, MutationData):
            it = MutationData(tuple(it[0]), tuple(it[1]))
        if it.dim != dim:
            raise ZeroVector("mixed dimensions in collection")
        if dot(it.weight, it.factor) != 0:
            raise NotAnnihilating(f"{it} does not annihilate itself")
        if require_primitive:
            it.require_primitive()
        data.append(it)
    form = pairing_matrix(data)
    n = len(data)
    for i in range(n):
        for j in range(i + 1, n):
            if form[i][j] != -form[j][i]:
                raise Incompatible(
                    f"items {i},{j}: <w_{i},f_{j}> = {form[i][j]} but <w_{j},f_{i}> = {form[j][i]}"
                )
    return CompatibleCollection(tuple(data), form)


def collection_quiver(e: CompatibleCollection) -> cl.Quiver:
    """Quiver with b_ij = <w_i, f_j> arrows from i to j (sign = orientation)."""
    return cl.Quiver(e.form)


def collection_mutate(e: CompatibleCollection, k: int) -> CompatibleCollection:
    """Mutate the collection at index k.

    The moving pair flips sign; every other pair gains max(<w_i, f_k>, 0)
    copies of it, matching the mutation of seed basis vectors so that the
    quiver transforms by matrix mutation.  Compatibility of the result is
    asserted, not assumed.
    """
    if not 0 <= k < len(e.items):
        raise ZeroVector(f"index {k} out of range")
    new_items = []
    for i, it in enumerate(e.items):
        if i == k:
            new_items.append(e.items[k].negated())
        else:
            c = max(e.form[i][k], 0)
            w = tuple(x + c * y for x, y in zip(it.weight, e.items[k].weight))
            f = tuple(x + c * y for x, y in zip(it.factor, e.items[k].factor))
            new_items.append(MutationData(w, f))
    try:
        out = check_compatible(new_items, require_primitive=False)
    except Incompatible as exc:
        raise CompatibilityBroken(str(exc)) from exc
    expected = cl.quiver_mutate(cl.Quiver(e.form), k).b
    if out.form != expected:
        raise CompatibilityBroken("pairing matrix does not follow matrix mutation")
    return out


def seed_vector_mutate(vectors: tuple[IntVec, ...], form: IntMat, k: int) -> tuple[IntVec, ...]:
    """Abstract seed-data mutation in coordinates, over a fixed ambient form.

    The skew value of two coordinate vectors is u^T form v; index k flips and
    every other vector gains max(skew(v_i, v_k), 0) copies of vector k.
    """

    def skew(u, v):
        return sum(u[a] * form[a][b] * v[b] for a in range(len(u)) for b in range(len(v)))

    out = []
    for i, v in enumerate(vectors):
        if i == k:
            out.append(tuple(-x for x in v))
        else:
            c = max(skew(v, vectors[k]), 0)
            out.append(tuple(x + c * y for x, y in zip(v, vectors[k])))
    return tuple(out)


def theta_map(e: CompatibleCollection, coeffs: IntVec) -> MutationData | tuple[IntVec, IntVec]:
    """Integer combination of the collection's pairs in the ambient direct sum."""
    dim = e.dim
    w = tuple(sum(c * it.weight[a] for c, it in zip(coeffs, e.items)) for a in range(dim))
    f = tuple(sum(c * it.factor[a] for c, it in zip(coeffs, e.items)) for a in range(dim))
    return (w, f)


def from_cluster_seed(b: IntMat, kernel_vectors=()) -> CompatibleCollection:
    """Collection determined by a skew exchange matrix and a kernel subspace.

    Weights are the images of the standard basis in the quotient by the
    (saturated) span of the kernel vectors, in coordinates given by an
    annihilator basis; factors are the forms {e_i, -} descended to the
    quotient.  The output pairing is the transpose of b: the construction
    fixes the arrow-orientation convention globally, and this choice keeps
    the torus-map commutation exact.
    """
    n = len(b)
    bq = cl.Quiver(tuple(tuple(row) for row in b))  # validates skew-symmetry
    kv = [tuple(int(x) for x in v) for v in kernel_vectors]
    for v in kv:
        if any(sum(b[i][j] * v[j] for j in range(n)) != 0 for i in range(n)):
            raise NotInKernel(f"{v} is not in the kernel of the form")
    if kv:
        ann = integer_kernel(tuple(kv))
    else:
        ann = identity_matrix(n)
    if not ann:
        raise RankDeficient("kernel subspace is everything; no quotient left")
    items = []
    for i in range(n):
        w = tuple(a[i] for a in ann)
        row = tuple(b[i][j] for j in range(n))
        f = solve_integer_combination(ann, row)
        items.append(MutationData(w, f))
    return check_compatible(items, require_primitive=False)


def mutate_polytope_3d(p: FanoPolytope, d: MutationData) -> FanoPolytope:
    """Combinatorial mutation in dimension 3; NotConvex is an expected outcome."""
    if p.dim != 3:
        raise ZeroVector("expected a three-dimensional polytope")
    return combinatorial_mutate(p, d)


@dataclass(frozen=True)
class WalkResult:
    polytopes: tuple
    collections: tuple[CompatibleCollection, ...]
    closed: bool
    distinct: int
    failed_step: int | None = None


def _walk_key(p):
    """Equivalence key for walk closure: exact orbit key when integral."""
    if isinstance(p, FanoPolytope):
        return canonical_key(p)
    if all(x.denominator == 1 for v in p.vertices for x in v):
        from .lattice import unimodular_key_3d

        return unimodular_key_3d([tuple(int(x) for x in v) for v in p.vertices])
    return tuple(sorted(p.vertices))


def pentagon_walk(p, e: CompatibleCollection, max_steps: int = 5, order=(0, 1)) -> WalkResult:
    """Alternately mutate a 3D polytope along a 2-item collection.

    The collection is transported by its own mutation rule after each step.
    ``p`` may be a Fano polytope (mutations act through its dual) or a raw
    rational polytope (the piecewise-linear map acts on it directly; this is
    the default model for cone-type degeneration polytopes whose duals are
    not Fano).  Success means returning to a polytope equivalent to the
    start, by the 3D orbit key, at step ``max_steps``; a NotConvex step is
    reported with its index rather than raised.
    """
    if len(e.items) != 2:
        raise ZeroVector("pentagon walk needs a 2-item collection")
    if abs(e.form[0][1]) > 1:
        raise ZeroVector("pentagon walk expects an A2 or commuting pair")
    fano_side = isinstance(p, FanoPolytope)
    polys = [p]
    colls = [e]
    cur_p, cur_e = p, e
    keys = {_walk_key(p)}
    for step in range(max_steps):
        k = order[step % len(order)]
        try:
            if fano_side:
                cur_p = mutate_polytope_3d(cur_p, cur_e.items[k])
            else:
                from .mutation import pl_transform

                cur_p = pl_transform(cur_p, cur_e.items[k])
        except NotConvex:
            return WalkResult(tuple(polys), tuple(colls), False, len(keys), failed_step=step)
        cur_e = collection_mutate(cur_e, k)
        polys.append(cur_p)
        colls.append(cur_e)
        keys.add(_walk_key(cur_p))
    closed = _walk_key(polys[-1]) == _walk_key(polys[0])
    return WalkResult(tuple(polys), tuple(colls), closed, len(keys))


def b5_degeneration_polytope():
    """Cone-type polytope for the quintic threefold degeneration walk.

    Pyramid with apex the origin over the anticanonical pentagon of the
    two-node quintic del Pezzo surface, placed at height one.  Derived, not
    copied: its dual-side companion (the spanning-fan polytope of the same
    degeneration) is ``b5_fan_polytope``.
    """
    from .lattice import convex_hull

    base = [(1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    return convex_hull([(0, 0, 0)] + [(x, y, 1) for x, y in base], 3)


def b5_fan_polytope() -> FanoPolytope:
    """Spanning-fan Fano polytope of the cone over the two-node quintic surface."""
    from .polygon import make_fano

    return make_fano([(0, 0, 1), (1, 0, -1), (0, 1, -1), (-1, 1, -1), (-1, -1, -1), (1, -1, -1)])


def b5_collection() -> CompatibleCollection:
    """The two mutation data driving the quintic-threefold pentagon."""
    return check_compatible(
        [MutationData((-1, 0, 0), (0, 1, 1)), MutationData((0, 0, -1), (-1, 0, 0))]
    )


def collection_json(e: CompatibleCollection) -> dict:
    return {
        "dim": e.dim,
        "items": [{"w": list(it.weight), "f": list(it.factor)} for it in e.items],
    }


def collection_from_json(data: dict) -> CompatibleCollection:
    items = []
    for entry in data["items"]:
        w, f = entry["w"], entry["f"]
        for x in list(w) + list(f):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ZeroVector(f"collection entries must be integers, got {x!r}")
        items.append(MutationData(tuple(w), tuple(f)))
    return check_compatible(items, require_primitive=False)
