"""Many-one counting reductions from the 0/1 permanent to vertex-cover counting.

The pipeline is a chain of weight-preserving gadgets:

  0/1 matrix A                                (permanent)
    -> block matrix [[A, -I], [-I, 0]]        (partial permanent; the -1
       pendant entries cancel every summand that leaves a row or column
       uncovered, leaving exactly the full permutations)
    -> row/column conflict graph, weights instantiated, incidence applied
       (cover polynomial with weights in {0, 1, -1})
    -> zero weights removed, each neighbor gaining a self-loop
    -> -1 weights simulated by pendant leaves, counting modulo
       N = 2**(vertex count before leaves) + 1, where a block of k leaves
       multiplies the in-cover weight of its vertex by 2**k = N - 1.

The instance construction never counts anything; recovering the permanent
is a single mod-N reduction of the final cover count.  A bipartite variant
inserts the double-incidence step before weight elimination and resolves
the forced loops by deletion (the per-vertex -1 deletions pair up, so no
sign is left behind).

Leaf blocks are stored compressed (a per-vertex count) so instances stay
cheap to build; serialization expands them to plain vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ParseError, SatPolyError
from .formulas import Formula
from .graphs import (
    WeightedGraph,
    bipartize,
    build_partial_perm_graph,
    two_coloring,
)
from .posets import Poset, or1_formula_of_poset
from .relations import BUILTIN_RELATIONS


class UnweightedGraph:
    """Plain graph for cover counting: edges, self-loops, compressed leaf blocks."""

    __slots__ = ("vertices", "edges", "loops", "leaf_counts")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        leaf_counts: Optional[dict[int, int]] = None,
    ):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(
            (u, v) if u <= v else (v, u) for u, v in edges if u != v
        )
        self.loops = frozenset(loops)
        self.leaf_counts = dict(leaf_counts or {})
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
        if not self.loops <= self.vertices:
            raise ValueError("loop on a missing vertex")
        if not set(self.leaf_counts) <= self.vertices:
            raise ValueError("leaf block on a missing vertex")

    def vertex_count(self) -> int:
        return len(self.vertices) + sum(self.leaf_counts.values())

    def edge_count(self) -> int:
        return len(self.edges) + len(self.loops) + sum(self.leaf_counts.values())

    def expand(self) -> "UnweightedGraph":
        """Materialize leaf blocks as real pendant vertices."""
        if not self.leaf_counts:
            return self
        next_id = max(self.vertices, default=-1) + 1
        vertices = set(self.vertices)
        edges = list(self.edges)
        for v in sorted(self.leaf_counts):
            for _ in range(self.leaf_counts[v]):
                vertices.add(next_id)
                edges.append((v, next_id))
                next_id += 1
        return UnweightedGraph(vertices, edges, self.loops, {})

    def __repr__(self):
        return (
            f"UnweightedGraph(|V|={self.vertex_count()}, |E|={self.edge_count()}, "
            f"loops={len(self.loops)})"
        )


@dataclass(frozen=True)
class ReductionInstance:
    """Unweighted counting instance plus the modulus recovering the source value."""

    graph: UnweightedGraph
    modulus: int
    provenance: dict = field(compare=False)

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")


# ---------------------------------------------------------------------------
# Gadget steps


def _check_01_matrix(matrix) -> list[list[int]]:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    for r in rows:
        for x in r:
            if x not in (0, 1):
                raise ValueError("entries must be 0 or 1")
    return rows


def perm_to_partial_perm(matrix) -> list[list[int]]:
    """Block gadget [[A, -I], [-I, 0]]: its partial permanent is the permanent of A.

    Toggling the -1 pendant entry of any uncovered row (or column) flips a
    summand's sign, cancelling everything except the full permutations.
    """
    a = _check_01_matrix(matrix)
    n = len(a)
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
        out[i][n + i] = -1
        out[n + i][i] = -1
    return out


def partial_perm_to_vc(matrix) -> WeightedGraph:
    """Weighted cover instance whose cover polynomial equals the partial permanent.

    Instantiates the row/column conflict graph with the matrix entries and
    applies the incidence construction; the sign (-1)**edges is +1 because
    the conflict graph always has an even edge count.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    if m == 0 or any(len(r) != m for r in rows):
        raise ValueError("matrix must be square and nonempty")
    for r in rows:
        for x in r:
            if x not in (-1, 0, 1):
                raise ValueError("entries must be -1, 0 or 1")
    core = build_partial_perm_graph(m)
    weights = {i * m + j: Fraction(rows[i][j]) for i in range(m) for j in range(m)}
    weighted_core = WeightedGraph(weights, core.edges)
    from .graphs import incidence_transform

    return incidence_transform(weighted_core)


def _zero_polynomial_graph() -> WeightedGraph:
    # isolated weight -1 vertex: cover polynomial 1 + (-1) = 0
    return WeightedGraph({0: Fraction(-1)}, [])


def eliminate_zero_weights(g: WeightedGraph) -> WeightedGraph:
    """Drop zero-weight vertices; each neighbor gains a self-loop.

    Covers through a zero-weight vertex contribute nothing, and covers
    avoiding it must take all its neighbors, which is what the loops
    enforce; the cover polynomial is unchanged.  If two zero vertices are
    adjacent, or a zero vertex carries a loop, the polynomial is
    identically zero and a canonical zero-valued graph is returned.
    """
    zeros = set()
    for v, w in g.vertices.items():
        if not isinstance(w, Fraction):
            raise SatPolyError("zero elimination needs numeric weights")
        if w == 0:
            zeros.add(v)
    if not zeros:
        return g
    for u, v in g.edges:
        if u in zeros and v in zeros:  # includes a loop on a zero vertex
            return _zero_polynomial_graph()
    vertices = {v: w for v, w in g.vertices.items() if v not in zeros}
    edges: set[tuple[int, int]] = set()
    for u, v in g.edges:
        if u in zeros:
            edges.add((v, v))
        elif v in zeros:
            edges.add((u, u))
        else:
            edges.add((u, v))
    return WeightedGraph(vertices, edges)


def resolve_forced_loops(g: WeightedGraph) -> tuple[WeightedGraph, int]:
    """Delete looped vertices (forced into every cover), returning the weight sign.

    Only +/-1 weights are supported on looped vertices; the accumulated
    product is returned so the caller can track it.  Deleting a forced
    vertex also deletes its covered edges, so the output is loop-free.
    """
    looped = g.loops()
    if not looped:
        return g, 1
    sign = 1
    for u in sorted(looped):
        w = g.vertices[u]
        if not isinstance(w, Fraction) or w not in (1, -1):
            raise SatPolyError("loop resolution needs +/-1 weights on looped vertices")
        sign *= int(w)
    vertices = {v: w for v, w in g.vertices.items() if v not in looped}
    edges = [
        (u, v) for u, v in g.edges if u not in looped and v not in looped
    ]
    return WeightedGraph(vertices, edges), sign


def simulate_neg_weights(
    g: WeightedGraph, provenance: Optional[dict] = None
) -> ReductionInstance:
    """Replace -1 weights by pendant-leaf blocks, counting modulo N = 2**v + 1.

    v is the vertex count before leaves are attached; a block of v leaves
    multiplies the in-cover weight of its vertex by 2**v = N - 1 = -1
    (mod N).  For pipeline graphs the true cover polynomial value lies in
    [0, N), so the count modulo N recovers it exactly.
    """
    for v, w in g.vertices.items():
        if not isinstance(w, Fraction) or w not in (1, -1):
            raise SatPolyError(f"vertex {v} has weight {w}; need +/-1 weights")
    v_count = len(g.vertices)
    modulus = (1 << v_count) + 1
    leaf_counts = {v: v_count for v, w in g.vertices.items() if w == -1}
    graph = UnweightedGraph(g.vertices, g.plain_edges(), g.loops(), leaf_counts)
    prov = dict(provenance or {})
    prov.setdefault("modulus", str(modulus))
    return ReductionInstance(graph, modulus, prov)


# ---------------------------------------------------------------------------
# Exact cover counting


def _simplify(adj: dict[int, set[int]], in_w: dict[int, int], out_w: dict[int, int]) -> int:
    """Apply forced/isolated/pendant reductions to fixpoint; return the factor."""
    factor = 1
    pending = list(adj)
    while pending:
        v = pending.pop()
        if v not in adj:
            continue
        neighbors = adj[v]
        if out_w[v] == 0:
            factor *= in_w[v]
            for u in neighbors:
                adj[u].discard(v)
                pending.append(u)
            del adj[v], in_w[v], out_w[v]
        elif not neighbors:
            factor *= in_w[v] + out_w[v]
            del adj[v], in_w[v], out_w[v]
        elif len(neighbors) == 1:
            u = next(iter(neighbors))
            in_w[u] *= in_w[v] + out_w[v]
            out_w[u] *= in_w[v]
            adj[u].discard(v)
            del adj[v], in_w[v], out_w[v]
            pending.append(u)
    return factor


def _component_key(comp: list[int], adj, in_w, out_w):
    pos = {v: i for i, v in enumerate(comp)}
    edges = frozenset(
        (pos[u], pos[v]) if pos[u] <= pos[v] else (pos[v], pos[u])
        for u in comp
        for v in adj[u]
        if pos[u] < pos[v]
    )
    return tuple((in_w[v], out_w[v]) for v in comp), edges


def _count_weighted(adj, in_w, out_w, memo) -> int:
    factor = _simplify(adj, in_w, out_w)
    if factor == 0:
        return 0
    if not adj:
        return factor
    result = factor
    seen: set[int] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        i = 0
        while i < len(comp):
            for u in adj[comp[i]]:
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
            i += 1
        comp.sort()
        result *= _count_component(comp, adj, in_w, out_w, memo)
    return result


def _count_component(comp, adj, in_w, out_w, memo) -> int:
    key = _component_key(comp, adj, in_w, out_w)
    if key in memo:
        return memo[key]
    branch = min(comp, key=lambda u: (-len(adj[u]), u))
    # vertex in the cover: its edges are covered
    adj_in = {v: set(adj[v]) - {branch} for v in comp if v != branch}
    in_in = {v: in_w[v] for v in comp if v != branch}
    out_in = {v: out_w[v] for v in comp if v != branch}
    total = in_w[branch] * _count_weighted(adj_in, in_in, out_in, memo)
    # vertex out of the cover: every neighbor is forced in
    adj_out = {v: set(adj[v]) - {branch} for v in comp if v != branch}
    in_out = {v: in_w[v] for v in comp if v != branch}
    out_out = {v: out_w[v] for v in comp if v != branch}
    for u in adj[branch]:
        out_out[u] = 0
    total += out_w[branch] * _count_weighted(adj_out, in_out, out_out, memo)
    memo[key] = total
    return total


def count_vertex_covers(g: UnweightedGraph) -> int:
    """Exact cover count: loops force, leaf blocks fold, components branch.

    Worst case exponential, but the forced/isolated/pendant reductions
    collapse the leaf-heavy pipeline instances almost entirely.
    """
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    in_w = {v: 1 << g.leaf_counts.get(v, 0) for v in g.vertices}
    out_w = {v: 0 if v in g.loops else 1 for v in g.vertices}
    return _count_weighted(adj, in_w, out_w, {})


def brute_count_vertex_covers(g: UnweightedGraph) -> int:
    """Independent oracle: direct enumeration of all vertex subsets."""
    h = g.expand()
    verts = sorted(h.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    if n > 24:
        raise SatPolyError("brute-force enumeration is limited to 24 vertices")
    edges = [(pos[u], pos[v]) for u, v in h.edges]
    loop_mask = 0
    for v in h.loops:
        loop_mask |= 1 << pos[v]
    count = 0
    for s in range(1 << n):
        if loop_mask & ~s:
            continue
        if all(s >> u & 1 or s >> v & 1 for u, v in edges):
            count += 1
    return count


# ---------------------------------------------------------------------------
# End-to-end composition


def emit_instance(matrix, bipartite: bool = False) -> ReductionInstance:
    """Pure instance construction for the permanent; performs no counting."""
    a = _check_01_matrix(matrix)
    n = len(a)
    block = perm_to_partial_perm(a)
    weighted = partial_perm_to_vc(block)
    steps = [
        {"step": "perm_to_partial_perm", "n": n},
        {"step": "partial_perm_to_vc", "dim": 2 * n},
    ]
    if bipartite:
        weighted = bipartize(weighted)
        steps.append({"step": "bipartize", "edges": len(weighted.edges)})
    no_zeros = eliminate_zero_weights(weighted)
    steps.append({"step": "eliminate_zero_weights", "vertices": len(no_zeros.vertices)})
    provenance = {
        "source_matrix": a,
        "bipartite": bipartite,
        "steps": steps,
        "sign": 1,
    }
    if bipartite:
        no_zeros, sign = resolve_forced_loops(no_zeros)
        if sign != 1:
            raise SatPolyError("loop resolution produced a sign; not a pipeline instance")
        steps.append({"step": "resolve_forced_loops", "vertices": len(no_zeros.vertices)})
        coloring = two_coloring(no_zeros)
        if coloring is None:
            raise SatPolyError("bipartite pipeline produced a non-bipartite core")
        provenance["bipartition"] = sorted(v for v, c in coloring.items() if c == 0)
    return simulate_neg_weights(no_zeros, provenance)


def to_bipartite_vc(weighted: WeightedGraph) -> ReductionInstance:
    """Bipartite counting instance from a weighted pipeline cover instance.

    The double-incidence step runs before weight elimination (the input
    must be loop-free); the forced loops that elimination then introduces
    sit on dedicated -1 vertices and are resolved by deletion, which pairs
    the signs away and keeps the graph 2-colorable.
    """
    g = bipartize(weighted)
    g = eliminate_zero_weights(g)
    g, sign = resolve_forced_loops(g)
    if sign != 1:
        raise SatPolyError("loop resolution produced a sign; not a pipeline instance")
    coloring = two_coloring(g)
    if coloring is None:
        raise SatPolyError("bipartite pipeline produced a non-bipartite core")
    prov = {
        "bipartite": True,
        "steps": [{"step": "to_bipartite_vc"}],
        "sign": 1,
        "bipartition": sorted(v for v, c in coloring.items() if c == 0),
    }
    return simulate_neg_weights(g, prov)


def perm_via_vc(matrix, bipartite: bool = False) -> int:
    """Permanent of a 0/1 matrix through the full reduction: count, then mod."""
    inst = emit_instance(matrix, bipartite)
    return count_vertex_covers(inst.graph) % inst.modulus


def replay_provenance(provenance: dict) -> ReductionInstance:
    """Re-run a recorded transcript on its source; must reproduce the instance."""
    return emit_instance(provenance["source_matrix"], provenance.get("bipartite", False))


# ---------------------------------------------------------------------------
# Counting problems as 2-clause formulas


def _graph_structure(g) -> tuple[list[int], list[tuple[int, int]], list[int]]:
    if isinstance(g, WeightedGraph):
        return sorted(g.vertices), g.plain_edges(), sorted(g.loops())
    return sorted(g.vertices), sorted(g.edges), sorted(g.loops)


def vc_to_positive2sat(g) -> Formula:
    """Positive 2-clauses counting the vertex covers of g.

    One OR0 clause per edge; a self-loop becomes the diagonal clause
    OR0(x, x), a unit clause forcing its vertex into the cover.
    """
    verts, edges, loops = _graph_structure(g)
    pos = {v: i for i, v in enumerate(verts)}
    rel = BUILTIN_RELATIONS["OR0"]
    cons = [(rel, (pos[u], pos[v])) for u, v in edges]
    cons += [(rel, (pos[u], pos[u])) for u in loops]
    return Formula(max(len(verts), 1), tuple(cons))


def is_to_negative2sat(g) -> Formula:
    """Negative 2-clauses counting the independent sets of g.

    One OR2 clause per edge; a self-loop becomes the diagonal clause
    OR2(x, x), forcing its vertex out of every set.
    """
    verts, edges, loops = _graph_structure(g)
    pos = {v: i for i, v in enumerate(verts)}
    rel = BUILTIN_RELATIONS["OR2"]
    cons = [(rel, (pos[u], pos[v])) for u, v in edges]
    cons += [(rel, (pos[u], pos[u])) for u in loops]
    return Formula(max(len(verts), 1), tuple(cons))


def ideal_to_implicative2sat(p: Poset) -> Formula:
    """Implicative 2-clauses counting the ideals of p."""
    return or1_formula_of_poset(p)


# ---------------------------------------------------------------------------
# Instance and matrix file formats


def format_instance_file(inst: ReductionInstance) -> str:
    g = inst.graph.expand()
    lines = [f"p graph {len(g.vertices)} {len(g.edges) + len(g.loops)}"]
    for v in sorted(g.vertices):
        lines.append(f"v {v} 1")
    all_edges = sorted(set(g.edges) | {(u, u) for u in g.loops})
    for u, v in all_edges:
        lines.append(f"e {u} {v}")
    lines.append(f"modulus {inst.modulus}")
    lines.append(
        "provenance " + json.dumps(inst.provenance, sort_keys=True, separators=(",", ":"))
    )
    return "\n".join(lines) + "\n"


def parse_instance_file(text: str) -> ReductionInstance:
    n = None
    vertices: set[int] = set()
    edges: list[tuple[int, int]] = []
    loops: set[int] = set()
    modulus = None
    provenance: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if parts[0] == "provenance":
            try:
                provenance = json.loads(parts[1])
            except (IndexError, json.JSONDecodeError):
                raise ParseError(f"line {lineno}: bad provenance JSON") from None
            continue
        parts = line.split()
        if parts[0] == "p":
            n = int(parts[2])
        elif parts[0] == "v":
            vertices.add(int(parts[1]))
        elif parts[0] == "e":
            u, v = int(parts[1]), int(parts[2])
            if u == v:
                loops.add(u)
            else:
                edges.append((u, v))
        elif parts[0] == "modulus":
            modulus = int(parts[1])
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None or modulus is None:
        raise ParseError("instance needs a 'p graph' header and a 'modulus' line")
    if len(vertices) != n:
        raise ParseError(f"header declares {n} vertices, found {len(vertices)}")
    return ReductionInstance(UnweightedGraph(vertices, edges, loops), modulus, provenance)


def parse_matrix_file(text: str) -> list[list[int]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"bad matrix row {line!r}") from None
    if not rows:
        raise ParseError("empty matrix")
    return rows
