"""Quivers, seeds, cluster mutation, exchange graphs, and type recognition.

Quivers are skew-symmetric integer matrices with a frozen index set; matrix
mutation is the primary operation and the arrow picture is a view.  Seeds
carry basis vectors in an ambient lattice whose skew form is the initial
exchange matrix, together with cluster variables kept as exact Laurent
polynomials in the initial variables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import FrozenVertex, InternalNonLaurent, NotDivisible, SizeLimit, ZeroVector
from .lattice import IntMat, IntVec, identity_matrix
from .laurent import LaurentPolynomial, laurent_divide_exact


@dataclass(frozen=True)
class Quiver:
    b: IntMat
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        n = len(self.b)
        object.__setattr__(self, "b", tuple(tuple(int(x) for x in row) for row in self.b))
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        for i in range(n):
            if len(self.b[i]) != n:
                raise ZeroVector("exchange matrix must be square")
            if self.b[i][i] != 0:
                raise ZeroVector("exchange matrix must have zero diagonal")
            for j in range(i):
                if self.b[i][j] != -self.b[j][i]:
                    raise ZeroVector("exchange matrix must be skew-symmetric")
        for k in self.frozen:
            if not 0 <= k < n:
                raise ZeroVector(f"frozen index {k} out of range")

    @property
    def size(self) -> int:
        return len(self.b)

    @property
    def unfrozen(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if i not in self.frozen)

    def unfrozen_part(self) -> "Quiver":
        idx = self.unfrozen
        return Quiver(tuple(tuple(self.b[i][j] for j in idx) for i in idx))


def quiver_mutate(q: Quiver, k: int) -> Quiver:
    """Standard matrix mutation at an unfrozen index."""
    if k in q.frozen:
        raise FrozenVertex(f"index {k} is frozen")
    if not 0 <= k < q.size:
        raise ZeroVector(f"index {k} out of range")
    b = q.b
    new = []
    for i in range(q.size):
        row = []
        for j in range(q.size):
            if i == k or j == k:
                row.append(-b[i][j])
            elif b[i][k] > 0 and b[k][j] > 0:
                row.append(b[i][j] + b[i][k] * b[k][j])
            elif b[i][k] < 0 and b[k][j] < 0:
                row.append(b[i][j] - b[i][k] * b[k][j])
            else:
                row.append(b[i][j])
        new.append(tuple(row))
    return Quiver(tuple(new), q.frozen)


def has_kronecker(q: Quiver) -> bool:
    """True iff some unfrozen pair is joined by two or more parallel arrows."""
    idx = q.unfrozen
    return any(abs(q.b[i][j]) >= 2 for i in idx for j in idx if i < j)


# ---------------------------------------------------------------------------
# isomorphism and canonical labelling


def _signature(q: Quiver, i: int):
    return (i in q.frozen, tuple(sorted(q.b[i])), tuple(sorted(abs(x) for x in q.b[i])))


def canonical_quiver(q: Quiver) -> tuple[tuple, tuple[int, ...]]:
    """Lexicographically least relabelled matrix over frozen-respecting maps.

    Unfrozen indices are listed first.  Returns the key and one witness
    ordering (new position -> old index).  Quivers are isomorphic iff their
    keys agree.
    """
    if q.size > 12:
        raise SizeLimit("canonical labelling is restricted to size <= 12")
    order_unfrozen = sorted(q.unfrozen)
    order_frozen = sorted(q.frozen)
    slots = [False] * len(order_unfrozen) + [True] * len(order_frozen)

    best: list[list[int]] | None = None
    best_perm: list[int] | None = None

    def rows_for(perm):
        return [[q.b[a][bb] for bb in perm] for a in perm]

    def backtrack(perm: list[int], used: set[int]):
        nonlocal best, best_perm
        pos = len(perm)
        if pos == q.size:
            mat = rows_for(perm)
            if best is None or mat < best:
                best, best_perm = mat, list(perm)
            return
        want_frozen = slots[pos]
        cands = []
        seen_profiles = set()
        for i in (order_frozen if want_frozen else order_unfrozen):
            if i in used:
                continue
            profile = (_signature(q, i), tuple(q.b[i][p] for p in perm), tuple(q.b[p][i] for p in perm))
            if profile in seen_profiles:
                continue  # interchangeable with an already tried candidate
            seen_profiles.add(profile)
            cands.append((tuple(q.b[p][i] for p in perm), i))
        if best is not None:
            # prune: the next matrix row prefix is determined by column entries
            pass
        for _, i in sorted(cands):
            perm.append(i)
            used.add(i)
            backtrack(perm, used)
            perm.pop()
            used.remove(i)

    backtrack([], set())
    key = (len(order_unfrozen), len(order_frozen), tuple(tuple(r) for r in best))
    return key, tuple(best_perm)


def quiver_isomorphic(q1: Quiver, q2: Quiver) -> tuple[bool, tuple[int, ...] | None]:
    """Isomorphism test with a witness map (index of q1 -> index of q2)."""
    if q1.size != q2.size or len(q1.frozen) != len(q2.frozen):
        return False, None
    k1, p1 = canonical_quiver(q1)
    k2, p2 = canonical_quiver(q2)
    if k1 != k2:
        return False, None
    witness = [0] * q1.size
    for pos in range(q1.size):
        witness[p1[pos]] = p2[pos]
    return True, tuple(witness)


@dataclass(frozen=True)
class ClassResult:
    representatives: tuple[Quiver, ...]
    status: str  # "complete" | "exceeded"

    @property
    def exceeded(self) -> bool:
        return self.status == "exceeded"


def quiver_mutation_class(q: Quiver, max_size: int, max_depth: int | None = None) -> ClassResult:
    """BFS over unfrozen mutations modulo isomorphism, bounded by max_size."""
    start_key, _ = canonical_quiver(q)
    seen = {start_key: q}
    frontier = deque([(q, 0)])
    while frontier:
        cur, depth = frontier.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for k in cur.unfrozen:
            nxt = quiver_mutate(cur, k)
            key, _ = canonical_quiver(nxt)
            if key in seen:
                continue
            if len(seen) >= max_size:
                return ClassResult(tuple(seen.values()), "exceeded")
            seen[key] = nxt
            frontier.append((nxt, depth + 1))
    return ClassResult(tuple(seen.values()), "complete")


# ---------------------------------------------------------------------------
# Dynkin type recognition


def _is_orientation_of_target(q: Quiver) -> str | None:
    """Match against the four finite-type shapes on the unfrozen part."""
    n = q.size
    entries = [abs(q.b[i][j]) for i in range(n) for j in range(i + 1, n)]
    if any(e > 1 for e in entries):
        return None
    degrees = sorted(sum(1 for j in range(n) if q.b[i][j] != 0) for i in range(n))
    edge_count = sum(entries)
    if edge_count == 0:
        return f"A1^{n}"
    if n == 2 and edge_count == 1:
        return "A2"
    if n == 3 and edge_count == 2 and degrees == [1, 1, 2]:
        return "A3"
    if n == 4 and edge_count == 3 and degrees == [1, 1, 1, 3]:
        return "D4"
    return None


def dynkin_type(q: Quiver, cutoff: int = 512) -> str:
    """One of ``A1^n``, ``A2``, ``A3``, ``D4`` or ``other``.

    Works on the unfrozen part only and searches the mutation class (up to
    ``cutoff`` members) for an orientation of one of the four target graphs.
    """
    base = q.unfrozen_part()
    hit = _is_orientation_of_target(base)
    if hit:
        return hit
    start_key, _ = canonical_quiver(base)
    seen = {start_key}
    frontier = deque([base])
    while frontier:
        cur = frontier.popleft()
        for k in range(cur.size):
            nxt = quiver_mutate(cur, k)
            key, _ = canonical_quiver(nxt)
            if key in seen:
                continue
            hit = _is_orientation_of_target(nxt)
            if hit:
                return hit
            if len(seen) >= cutoff:
                return "other"
            seen.add(key)
            frontier.append(nxt)
    return "other"


# ---------------------------------------------------------------------------
# seeds and exchange graphs


@dataclass(frozen=True)
class Seed:
    """Exchange data: quiver, ambient basis vectors, and cluster variables.

    The ambient lattice is Z^size with skew form given by the initial
    exchange matrix (held in ``form``); the current quiver entries always
    equal the form evaluated on the basis vectors.
    """

    quiver: Quiver
    basis: tuple[IntVec, ...]
    variables: tuple[LaurentPolynomial, ...]
    form: IntMat

    def skew(self, u: IntVec, v: IntVec) -> int:
        return sum(u[i] * self.form[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def initial_seed(q: Quiver, frozen_mode: str = "unit") -> Seed:
    """Seed with standard basis and initial variables.

    ``frozen_mode='unit'`` sets every frozen variable to the constant 1;
    ``'symbolic'`` keeps them as genuine variables of the ambient Laurent
    ring.
    """
    if frozen_mode not in ("unit", "symbolic"):
        raise ZeroVector(f"unknown frozen mode {frozen_mode!r}")
    n = q.size
    basis = identity_matrix(n)
    variables = []
    for i in range(n):
        if i in q.frozen and frozen_mode == "unit":
            variables.append(LaurentPolynomial.constant(n, 1))
        else:
            variables.append(LaurentPolynomial.variable(n, i))
    return Seed(q, basis, tuple(variables), q.b)


def seed_mutate(s: Seed, k: int) -> Seed:
    """Mutate basis vectors and cluster variables at an unfrozen index.

    The moving basis vector flips sign and every other vector gains
    max(b_ik, 0) copies of it; the new variable is given by the exchange
    relation, with the division performed exactly.
    """
    q = s.quiver
    if k in q.frozen:
        raise FrozenVertex(f"index {k} is frozen")
    b = q.b
    n = q.size
    new_basis = []
    for i in range(n):
        if i == k:
            new_basis.append(tuple(-x for x in s.basis[k]))
        else:
            c = max(b[i][k], 0)
            new_basis.append(tuple(x + c * y for x, y in zip(s.basis[i], s.basis[k])))
    pos = LaurentPolynomial.constant(n, 1)
    neg = LaurentPolynomial.constant(n, 1)
    for j in range(n):
        if b[k][j] > 0:
            pos = pos * s.variables[j] ** b[k][j]
        elif b[k][j] < 0:
            neg = neg * s.variables[j] ** (-b[k][j])
    try:
        new_var = laurent_divide_exact(pos + neg, s.variables[k])
    except NotDivisible as exc:
        raise InternalNonLaurent("exchange relation division failed") from exc
    new_vars = tuple(new_var if i == k else s.variables[i] for i in range(n))
    return Seed(quiver_mutate(q, k), tuple(new_basis), new_vars, s.form)


def cluster_key(s: Seed) -> frozenset:
    """Cluster identity: the unordered set of unfrozen variable values."""
    return frozenset(s.variables[i].key() for i in s.quiver.unfrozen)


@dataclass(frozen=True)
class ExchangeGraph:
    clusters: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...]
    status: str  # "complete" | "exceeded"

    @property
    def exceeded(self) -> bool:
        return self.status == "exceeded"

    def degree_sequence(self) -> tuple[int, ...]:
        deg = [0] * len(self.clusters)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(sorted(deg))

    def is_cycle(self) -> bool:
        n = len(self.clusters)
        if n < 3 or len(self.edges) != n:
            return False
        if any(d != 2 for d in self.degree_sequence()):
            return False
        adj = {i: set() for i in range(n)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == n


def cluster_exchange_graph(s: Seed, max_clusters: int = 1000) -> ExchangeGraph:
    """BFS over seeds, identifying nodes by their unordered clusters.

    Every produced variable is checked to be a genuine Laurent polynomial in
    the initial variables (the exchange division raises otherwise).
    """
    start = cluster_key(s)
    index = {start: 0}
    clusters = [start]
    edges = set()
    frontier = deque([s])
    status = "complete"
    while frontier:
        cur = frontier.popleft()
        cur_idx = index[cluster_key(cur)]
        for k in cur.quiver.unfrozen:
            nxt = seed_mutate(cur, k)
            key = cluster_key(nxt)
            if key not in index:
                if len(clusters) >= max_clusters:
                    status = "exceeded"
                    continue
                index[key] = len(clusters)
                clusters.append(key)
                frontier.append(nxt)
            j = index.get(key)
            if j is not None and j != cur_idx:
                edges.add((min(cur_idx, j), max(cur_idx, j)))
        if status == "exceeded":
            break
    return ExchangeGraph(tuple(clusters), tuple(sorted(edges)), status)


def quiver_json(q: Quiver) -> dict:
    return {"size": q.size, "frozen": sorted(q.frozen), "b": [list(r) for r in q.b]}


def quiver_from_json(data: dict) -> Quiver:
    b = data["b"]
    for row in b:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ZeroVector(f"exchange matrix entries must be integers, got {x!r}")
    size = data.get("size", len(b))
    if size != len(b):
        raise ZeroVector("size field disagrees with matrix")
    return Quiver(tuple(tuple(r) for r in b), frozenset(data.get("frozen", ())))


def quiver_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    for i in range(q.size):
        shape = "box" if i in q.frozen else "circle"
        lines.append(f'  v{i} [shape={shape}, label="{i}"];')
    for i in range(q.size):
        for j in range(q.size):
            if q.b[i][j] > 0:
                label = f' [label="{q.b[i][j]}"]' if q.b[i][j] > 1 else ""
                lines.append(f"  v{i} -> v{j}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
