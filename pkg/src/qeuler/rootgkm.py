"""Root systems of types A-D, Weyl groups, parabolic quotients, GKM graphs,
and the minimum-area chain bound for coadjoint orbits.

Vectors live in the standard coordinate realizations with exact ``Fraction``
entries.  Weyl groups are generated by breadth-first closure over the simple
reflections acting on ambient coordinates, so element lengths come for free
from the search depth.  The graph of torus-fixed points and invariant curves
has one vertex per coset of the parabolic subgroup and one edge germ per
crossing positive root; the oscillation bound is a minimum-weight path
between the identity coset and the coset of the longest element, computed
by Dijkstra's algorithm over exact rationals with deterministic tie breaks
(fewest edges, then vertex order).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import InvalidShape, NotRegular, TooLarge, UnsupportedType

Vector = tuple
Matrix = tuple


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def pairing(weight: Vector, root: Vector) -> Fraction:
    """<weight, coroot(root)> = 2 (weight, root) / (root, root)."""
    return 2 * dot(weight, root) / dot(root, root)


def coroot(root: Vector) -> Vector:
    scale = Fraction(2) / dot(root, root)
    return tuple(scale * x for x in root)


def _vec(values) -> Vector:
    return tuple(Fraction(x) for x in values)


def _unit(dim: int, i: int, value=1) -> list:
    v = [Fraction(0)] * dim
    v[i] = Fraction(value)
    return v


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    dim: int
    simple_roots: tuple
    positive_roots: tuple

    @property
    def roots(self):
        return self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots)

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank})"


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Standard realization of A_r, B_r, C_r, D_r."""
    family = family.upper()
    if family not in ("A", "B", "C", "D"):
        raise UnsupportedType(f"family {family!r} not supported (A-D only)")
    if rank < 1:
        raise InvalidShape("rank must be >= 1")
    if family == "D" and rank < 2:
        raise InvalidShape("type D needs rank >= 2")

    if family == "A":
        dim = rank + 1
        simple = [
            tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, i + 1)))
            for i in range(rank)
        ]
        positive = [
            tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, j)))
            for i in range(dim)
            for j in range(i + 1, dim)
        ]
    else:
        dim = rank
        simple = [
            tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, i + 1)))
            for i in range(rank - 1)
        ]
        positive = [
            tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, j)))
            for i in range(dim)
            for j in range(i + 1, dim)
        ] + [
            tuple(a + b for a, b in zip(_unit(dim, i), _unit(dim, j)))
            for i in range(dim)
            for j in range(i + 1, dim)
        ]
        if family == "B":
            simple.append(tuple(_unit(dim, rank - 1)))
            positive += [tuple(_unit(dim, i)) for i in range(dim)]
        elif family == "C":
            simple.append(tuple(_unit(dim, rank - 1, 2)))
            positive += [tuple(_unit(dim, i, 2)) for i in range(dim)]
        else:
            simple.append(tuple(
                a + b for a, b in zip(_unit(dim, rank - 2), _unit(dim, rank - 1))))

    rs = RootSystem(family, rank, dim, tuple(simple), tuple(positive))
    expected = {"A": rank * (rank + 1) // 2, "B": rank * rank,
                "C": rank * rank, "D": rank * (rank - 1)}[family]
    assert len(rs.positive_roots) == expected
    return rs


def reflection_matrix(root: Vector, dim: int) -> Matrix:
    co = coroot(root)
    return tuple(
        tuple(
            (Fraction(1) if i == j else Fraction(0)) - root[i] * co[j]
            for j in range(dim)
        )
        for i in range(dim)
    )


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(n)), Fraction(0))
              for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0))
                 for row in a)


def _identity(dim: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim))
        for i in range(dim)
    )


@lru_cache(maxsize=None)
def weyl_elements(family: str, rank: int):
    """All Weyl group elements as (matrix, shortest word) in search order.

    Breadth-first closure over right multiplication by simple reflections;
    the level at which an element first appears is its Coxeter length, and
    within a level words are produced in lexicographic order.
    """
    rs = build_root_system(family, rank)
    gens = [reflection_matrix(r, rs.dim) for r in rs.simple_roots]
    start = _identity(rs.dim)
    seen = {start: ()}
    order = [(start, ())]
    frontier = [(start, ())]
    while frontier:
        new_frontier = []
        for mat, word in frontier:
            for i, g in enumerate(gens):
                nxt = _mat_mul(mat, g)
                if nxt not in seen:
                    nword = word + (i + 1,)
                    seen[nxt] = nword
                    order.append((nxt, nword))
                    new_frontier.append((nxt, nword))
        frontier = new_frontier
    return tuple(order)


def weyl_order(family: str, rank: int) -> int:
    return len(weyl_elements(family, rank))


def longest_element(family: str, rank: int):
    """The unique element of maximal length, with its word."""
    elements = weyl_elements(family, rank)
    top_len = len(elements[-1][1])
    top = [e for e in elements if len(e[1]) == top_len]
    assert len(top) == 1
    return top[0]


@lru_cache(maxsize=None)
def fundamental_weights(rs: RootSystem):
    """Vectors w_a in the span of the simple roots with <w_a, b-coroot> = delta."""
    k = rs.rank
    m = [
        [pairing(rs.simple_roots[b], rs.simple_roots[beta]) for b in range(k)]
        for beta in range(k)
    ]
    inv = linalg.solve(m, linalg.identity(k, Fraction(1), Fraction(0)))
    weights = []
    for a in range(k):
        vec = [Fraction(0)] * rs.dim
        for b in range(k):
            for t in range(rs.dim):
                vec[t] += inv[b][a] * rs.simple_roots[b][t]
        weights.append(tuple(vec))
    return tuple(weights)


def coroot_coordinates(rs: RootSystem, root: Vector):
    """Coefficients of the coroot over the simple coroots.

    Pairing against the fundamental weights reads them off directly:
    <w_a, x> picks the a-th coordinate of any x in the coroot lattice.
    """
    weights = fundamental_weights(rs)
    return tuple(pairing(weights[a], root) for a in range(rs.rank))


def simple_root_coordinates(rs: RootSystem, root: Vector):
    """Coefficients of a root over the simple roots (exact, integral)."""
    d = coroot_coordinates(rs, root)
    norm = dot(root, root)
    return tuple(
        d[a] * norm / dot(rs.simple_roots[a], rs.simple_roots[a])
        for a in range(rs.rank)
    )


# ---------------------------------------------------------------------------
# orbit data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitSpec:
    """A flag manifold: root system, parabolic subset, and a regular weight.

    ``parabolic`` holds 1-based indices of the simple roots in S_P.  The
    weight must pair to zero with those roots and strictly positively with
    the rest.
    """

    root_system: RootSystem
    parabolic: tuple
    weight: Vector

    def __post_init__(self):
        rs = self.root_system
        pset = set(self.parabolic)
        for i in self.parabolic:
            if not 1 <= i <= rs.rank:
                raise InvalidShape(f"parabolic index {i} out of range 1..{rs.rank}")
        if len(self.weight) != rs.dim:
            raise InvalidShape(
                f"weight has {len(self.weight)} coordinates, expected {rs.dim}")
        for a in range(rs.rank):
            value = pairing(self.weight, rs.simple_roots[a])
            if (a + 1) in pset:
                if value != 0:
                    raise NotRegular(
                        f"weight must pair to 0 with simple root {a + 1}, got {value}")
            elif value <= 0:
                raise NotRegular(
                    f"weight must pair positively with simple root {a + 1}, got {value}")


def make_orbit_spec(family: str, rank: int, parabolic, weight) -> OrbitSpec:
    rs = build_root_system(family, rank)
    return OrbitSpec(rs, tuple(sorted(parabolic)), _vec(weight))


def crossing_roots(rs: RootSystem, parabolic) -> tuple:
    """Positive roots outside the parabolic subsystem R+_P."""
    pset = set(parabolic)
    out = []
    for root in rs.positive_roots:
        coords = simple_root_coordinates(rs, root)
        if any(coords[a] != 0 and (a + 1) not in pset for a in range(rs.rank)):
            out.append(root)
    return tuple(out)


def chern_numbers(spec: OrbitSpec) -> dict:
    """Pairings of the anticanonical weight with the crossing simple coroots,
    and their gcd N."""
    rs = spec.root_system
    crossing = crossing_roots(rs, spec.parabolic)
    total = tuple(
        sum((r[t] for r in crossing), Fraction(0)) for t in range(rs.dim))
    pset = set(spec.parabolic)
    values = {}
    for a in range(rs.rank):
        if (a + 1) in pset:
            continue
        value = pairing(total, rs.simple_roots[a])
        assert value.denominator == 1 and value > 0
        values[a + 1] = int(value)
    n = 0
    for v in values.values():
        n = gcd(n, v)
    return {"n": values, "N": n}


def monotone_weight(family: str, rank: int, parabolic, kappa=1) -> Vector:
    """The weight (1/kappa) * sum of crossing positive roots."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise InvalidShape("kappa must be positive")
    rs = build_root_system(family, rank)
    crossing = crossing_roots(rs, tuple(sorted(parabolic)))
    return tuple(
        sum((r[t] for r in crossing), Fraction(0)) / kappa
        for t in range(rs.dim)
    )


def is_monotone(spec: OrbitSpec):
    """The constant kappa with n_alpha = kappa * <weight, coroot>, or None."""
    rs = spec.root_system
    numbers = chern_numbers(spec)["n"]
    kappa = None
    for a, n_a in numbers.items():
        value = pairing(spec.weight, rs.simple_roots[a - 1])
        ratio = Fraction(n_a) / value
        if kappa is None:
            kappa = ratio
        elif kappa != ratio:
            return None
    return kappa


# ---------------------------------------------------------------------------
# cosets and the fixed-point graph
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _coset_skeleton(family: str, rank: int, parabolic: tuple):
    """Combinatorial data independent of the particular regular weight.

    Returns (reps, germs) where reps is a list of (matrix, word) of
    minimal-length coset representatives (identity first) and germs is a
    list of (source_index, target_index, crossing_root_index) triples.
    """
    rs = build_root_system(family, rank)
    pset = set(parabolic)
    # reference vector regular for exactly this parabolic
    weights = fundamental_weights(rs)
    ref = [Fraction(0)] * rs.dim
    for a in range(rs.rank):
        if (a + 1) not in pset:
            for t in range(rs.dim):
                ref[t] += weights[a][t]
    ref = tuple(ref)

    reps = []
    key_to_index = {}
    for mat, word in weyl_elements(family, rank):
        key = _mat_vec(mat, ref)
        if key not in key_to_index:
            key_to_index[key] = len(reps)
            reps.append((mat, word))

    crossing = crossing_roots(rs, parabolic)
    # u . s_alpha applied to ref is u(s_alpha(ref)): one matrix-vector product
    reflected_refs = [
        _mat_vec(reflection_matrix(r, rs.dim), ref) for r in crossing
    ]
    germs = []
    for idx, (mat, _) in enumerate(reps):
        for r_idx, s_ref in enumerate(reflected_refs):
            target = _mat_vec(mat, s_ref)
            germs.append((idx, key_to_index[target], r_idx))
    return tuple(reps), tuple(germs)


def weyl_cosets(spec: OrbitSpec):
    """Minimal-length representatives of W / W_P as (matrix, word) pairs."""
    reps, _ = _coset_skeleton(
        spec.root_system.family, spec.root_system.rank, spec.parabolic)
    return list(reps)


@dataclass(frozen=True)
class GkmVertex:
    index: int
    word: tuple   # shortest word in simple reflections
    point: Vector  # image of the weight under the representative


@dataclass(frozen=True)
class GkmEdge:
    source: int
    target: int
    root: Vector          # crossing positive root alpha with target = source . s_alpha
    weight: Fraction      # <weight, coroot(alpha)>
    degree: tuple         # coroot coordinates of alpha outside S_P


@dataclass(frozen=True)
class GkmGraph:
    vertices: tuple
    edges: tuple
    germs_per_vertex: int
    free_simple_indices: tuple  # 1-based indices of S minus S_P


def gkm_graph(spec: OrbitSpec) -> GkmGraph:
    """Fixed points and invariant curves, with parallel germs merged to the
    cheapest one."""
    rs = spec.root_system
    reps, germs = _coset_skeleton(rs.family, rs.rank, spec.parabolic)
    crossing = crossing_roots(rs, spec.parabolic)
    pset = set(spec.parabolic)
    free = tuple(a + 1 for a in range(rs.rank) if (a + 1) not in pset)

    weights = [pairing(spec.weight, r) for r in crossing]
    degrees = []
    for r in crossing:
        coords = coroot_coordinates(rs, r)
        assert all(c.denominator == 1 for c in coords)
        degrees.append(tuple(int(coords[a - 1]) for a in free))

    vertices = tuple(
        GkmVertex(i, word, _mat_vec(mat, spec.weight))
        for i, (mat, word) in enumerate(reps)
    )
    best = {}
    for u, v, r_idx in germs:
        key = (u, v) if u < v else (v, u)
        cand = (weights[r_idx], r_idx)
        if key not in best or cand < best[key]:
            best[key] = cand
    edges = tuple(
        GkmEdge(u, v, crossing[r_idx], w, degrees[r_idx])
        for (u, v), (w, r_idx) in sorted(best.items())
    )
    return GkmGraph(vertices, edges, len(crossing), free)


@dataclass(frozen=True)
class CapacityBound:
    bound: Fraction
    chain: tuple   # GkmEdges along a realizing path
    degree: tuple  # sum of edge degrees, on S minus S_P


def hz_upper_bound(spec: OrbitSpec) -> CapacityBound:
    """Minimum-weight path between the identity coset and the coset of the
    longest element.  A tree containing both endpoints never beats its own
    endpoint-to-endpoint path because all weights are positive, so shortest
    paths give the minimum over invariant chains."""
    graph = gkm_graph(spec)
    rs = spec.root_system
    reps, _ = _coset_skeleton(rs.family, rs.rank, spec.parabolic)
    source = 0
    w0_mat, _ = longest_element(rs.family, rs.rank)
    w0_point = _mat_vec(w0_mat, spec.weight)
    target = next(v.index for v in graph.vertices if v.point == w0_point)

    adjacency = {}
    for e_idx, e in enumerate(graph.edges):
        adjacency.setdefault(e.source, []).append((e.target, e_idx))
        adjacency.setdefault(e.target, []).append((e.source, e_idx))

    dist = {source: (Fraction(0), 0)}
    parent = {}
    heap = [(Fraction(0), 0, source)]
    done = set()
    while heap:
        d, n_edges, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            break
        for v, e_idx in adjacency.get(u, ()):
            if v in done:
                continue
            cand = (d + graph.edges[e_idx].weight, n_edges + 1)
            if v not in dist or (cand[0], cand[1], u) < (
                    dist[v][0], dist[v][1], parent[v][0]):
                dist[v] = cand
                parent[v] = (u, e_idx)
                heapq.heappush(heap, (cand[0], cand[1], v))
    if target not in dist and target != source:
        raise NotRegular("fixed-point graph is not connected")

    chain = []
    node = target
    while node != source:
        prev, e_idx = parent[node]
        chain.append(graph.edges[e_idx])
        node = prev
    chain.reverse()
    degree = tuple(
        sum(e.degree[t] for e in chain) for t in range(len(graph.free_simple_indices)))
    bound = dist[target][0] if target != source else Fraction(0)
    return CapacityBound(bound, tuple(chain), degree)


def brute_force_bound(spec: OrbitSpec, max_edges: int | None = None) -> Fraction:
    """Exhaustive minimum over simple paths; independent check of Dijkstra.

    Guarded to at most 30 cosets.  Prunes a partial path as soon as its
    weight reaches the best complete path found so far, which is sound
    because every edge weight is positive.
    """
    graph = gkm_graph(spec)
    n = len(graph.vertices)
    if n > 30:
        raise TooLarge(f"{n} cosets exceed the brute-force guard of 30")
    rs = spec.root_system
    w0_mat, _ = longest_element(rs.family, rs.rank)
    w0_point = _mat_vec(w0_mat, spec.weight)
    target = next(v.index for v in graph.vertices if v.point == w0_point)
    if max_edges is None:
        max_edges = n - 1

    adjacency = {}
    for e in graph.edges:
        adjacency.setdefault(e.source, []).append((e.target, e.weight))
        adjacency.setdefault(e.target, []).append((e.source, e.weight))
    for lists in adjacency.values():
        lists.sort(key=lambda t: t[1])

    best = [None]
    visited = [False] * n
    visited[0] = True

    def search(u, total, edges_used):
        if u == target:
            if best[0] is None or total < best[0]:
                best[0] = total
            return
        if edges_used == max_edges:
            return
        for v, w in adjacency.get(u, ()):
            if visited[v]:
                continue
            nt = total + w
            if best[0] is not None and nt >= best[0]:
                break  # neighbors sorted by weight; all later ones are worse
            visited[v] = True
            search(v, nt, edges_used + 1)
            visited[v] = False

    search(0, Fraction(0), 0)
    if best[0] is None:
        raise NotRegular("no path to the longest-element coset")
    return best[0]


def un_closed_form(lam) -> tuple:
    """Closed-form oscillation bound for a regular unitary-group orbit, plus
    the matching full-flag orbit data.

    Returns (value, spec) with value = half the sum of |lam_k - lam_{n-k+1}|.
    """
    lam = [Fraction(x) for x in lam]
    n = len(lam)
    if n < 2:
        raise InvalidShape("need at least two eigenvalues")
    for i in range(n - 1):
        if lam[i] == lam[i + 1]:
            raise NotRegular(f"entries {i + 1} and {i + 2} repeat: {lam[i]}")
        if lam[i] < lam[i + 1]:
            raise NotRegular("entries must be strictly decreasing")
    value = sum(abs(lam[k] - lam[n - 1 - k]) for k in range(n)) / 2
    spec = make_orbit_spec("A", n - 1, (), lam)
    return value, spec


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def word_text(word) -> str:
    return "e" if not word else " ".join(f"s{i}" for i in word)


def root_text(rs: RootSystem, root: Vector) -> str:
    coords = simple_root_coordinates(rs, root)
    parts = []
    for a, c in enumerate(coords, start=1):
        if c == 0:
            continue
        if c == 1:
            parts.append(f"a{a}")
        else:
            parts.append(f"{c}*a{a}")
    return "+".join(parts) if parts else "0"


def to_dot(spec: OrbitSpec, graph: GkmGraph | None = None) -> str:
    """Graphviz rendering: vertices named by reduced words, edges annotated
    with the crossing root and the curve area."""
    if graph is None:
        graph = gkm_graph(spec)
    rs = spec.root_system
    lines = ["graph gkm {"]
    for v in graph.vertices:
        lines.append(f'  v{v.index} [label="{word_text(v.word)}"];')
    for e in graph.edges:
        label = f"{root_text(rs, e.root)} | {e.weight}"
        lines.append(f'  v{e.source} -- v{e.target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def bound_to_json(spec: OrbitSpec, result: CapacityBound) -> dict:
    rs = spec.root_system
    graph_free = [a for a in range(1, rs.rank + 1) if a not in set(spec.parabolic)]
    reps, _ = _coset_skeleton(rs.family, rs.rank, spec.parabolic)
    chain = []
    for e in result.chain:
        chain.append({
            "from": word_text(reps[e.source][1]),
            "to": word_text(reps[e.target][1]),
            "root": root_text(rs, e.root),
            "weight": str(e.weight),
        })
    return {
        "bound": str(result.bound),
        "chain": chain,
        "degree": {f"a{a}": d for a, d in zip(graph_free, result.degree)},
    }
