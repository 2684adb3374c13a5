"""Core graph values: simple graphs, digraphs, vertex partitions.

Vertices are dense integer ids 0..n-1.  All values are immutable after
construction and every operation is a pure function, so concurrent use is
safe.  Constructors document the id layout of their outputs (join: a-then-b;
paste: g1-then-unmerged-g2) to keep downstream embeddings reproducible.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph with adjacency sets."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple] = ()):
        if n < 0:
            raise GraphError("negative vertex count")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)

    # -- accessors -------------------------------------------------------

    def edges(self) -> list:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(s) for s in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def closed_neighborhood(self, v: int) -> frozenset:
        return self.adj[v] | {v}

    def is_clique(self, vs) -> bool:
        vs = list(vs)
        return all(vs[j] in self.adj[vs[i]]
                   for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_independent(self, vs) -> bool:
        vs = list(vs)
        return not any(vs[j] in self.adj[vs[i]]
                       for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def subgraph(self, vertices) -> tuple:
        """Induced subgraph on `vertices` relabeled by ascending id.

        Returns (graph, order) where order[new_id] = old_id.
        """
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u]
                 if v in index and u < v]
        return Graph(len(order), edges), order

    def adjacency_masks(self) -> list:
        """Neighborhoods as int bitmasks (used by the exact oracles)."""
        return [sum(1 << w for w in s) for s in self.adj]

    def components(self) -> list:
        """Connected components as sorted vertex lists, in id order."""
        seen = set()
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                for w in self.adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(sorted(comp))
        return out

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": self.edges()})

    @staticmethod
    def from_json(text: str) -> "Graph":
        data = json.loads(text)
        n = data["n"]
        edges = data["edges"]
        seen = set()
        for e in edges:
            u, v = e
            if u >= v:
                raise GraphError(f"edge {e} not in u<v form")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add((u, v))
        return Graph(n, [tuple(e) for e in edges])

    def __eq__(self, other):
        return (isinstance(other, Graph)
                and self.n == other.n and self.adj == other.adj)

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Directed graph; both uv and vu may be present."""

    __slots__ = ("n", "arcs")

    def __init__(self, n: int, arcs: Iterable[tuple] = ()):
        if n < 0:
            raise GraphError("negative vertex count")
        aset = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            aset.add((u, v))
        self.n = n
        self.arcs = frozenset(aset)

    def indegree(self, v: int) -> int:
        return sum(1 for (_, h) in self.arcs if h == v)

    def max_indegree(self) -> int:
        counts = [0] * self.n
        for (_, h) in self.arcs:
            counts[h] += 1
        return max(counts, default=0)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "arcs": sorted(map(list, self.arcs))})

    @staticmethod
    def from_json(text: str) -> "Digraph":
        data = json.loads(text)
        arcs = [tuple(a) for a in data["arcs"]]
        if len(arcs) != len(set(arcs)):
            raise GraphError("duplicate arcs")
        return Digraph(data["n"], arcs)

    def __eq__(self, other):
        return (isinstance(other, Digraph)
                and self.n == other.n and self.arcs == other.arcs)

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


def bidirect(g: Graph) -> Digraph:
    """Both orientations of every edge."""
    arcs = []
    for u, v in g.edges():
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, arcs)


def underlying(d: Digraph) -> Graph:
    return Graph(d.n, [(u, v) for (u, v) in d.arcs if u < v or (v, u) not in d.arcs])


class VertexPartition:
    """Partition of 0..n-1 into non-empty parts."""

    __slots__ = ("n", "parts", "part_of")

    def __init__(self, n: int, parts: Iterable):
        parts = tuple(frozenset(p) for p in parts)
        part_of = [-1] * n
        for i, p in enumerate(parts):
            if not p:
                raise GraphError("empty part")
            for v in p:
                if not (0 <= v < n):
                    raise GraphError(f"vertex {v} out of range")
                if part_of[v] != -1:
                    raise GraphError(f"vertex {v} in two parts")
                part_of[v] = i
        if any(i == -1 for i in part_of):
            missing = part_of.index(-1)
            raise GraphError(f"vertex {missing} not covered")
        self.n = n
        self.parts = parts
        self.part_of = tuple(part_of)

    @staticmethod
    def singletons(n: int) -> "VertexPartition":
        return VertexPartition(n, [{v} for v in range(n)])

    def __repr__(self):
        return f"VertexPartition(n={self.n}, parts={len(self.parts)})"


# -- operations ----------------------------------------------------------

def complete_join(a: Graph, b: Graph) -> Graph:
    """A + B: disjoint union plus all cross edges; a's ids first."""
    edges = list(a.edges())
    edges += [(u + a.n, v + a.n) for u, v in b.edges()]
    edges += [(u, v + a.n) for u in range(a.n) for v in range(b.n)]
    return Graph(a.n + b.n, edges)


def apex(g: Graph) -> Graph:
    """g plus one dominant vertex with id g.n."""
    return complete_join(g, Graph(1))


def quotient(g: Graph, p: VertexPartition) -> Graph:
    """One vertex per part; cross parts adjacent iff some cross edge exists."""
    if p.n != g.n:
        raise GraphError("partition size mismatch")
    edges = set()
    for u in range(g.n):
        for v in g.adj[u]:
            pu, pv = p.part_of[u], p.part_of[v]
            if pu != pv:
                edges.add((min(pu, pv), max(pu, pv)))
    return Graph(len(p.parts), edges)


def clique_paste(g1: Graph, c1, g2: Graph, c2) -> Graph:
    """Paste g1 and g2 by identifying c2[i] with c1[i].

    Id layout: g1's vertices keep their ids; g2's non-clique vertices follow
    in ascending original id order.
    """
    c1, c2 = list(c1), list(c2)
    if len(c1) != len(c2):
        raise GraphError("clique size mismatch")
    if len(set(c1)) != len(c1) or len(set(c2)) != len(c2):
        raise GraphError("repeated clique vertex")
    if not g1.is_clique(c1):
        raise GraphError("c1 is not a clique in g1")
    if not g2.is_clique(c2):
        raise GraphError("c2 is not a clique in g2")
    remap = {}
    nxt = g1.n
    for v in range(g2.n):
        if v in c2:
            remap[v] = c1[c2.index(v)]
        else:
            remap[v] = nxt
            nxt += 1
    edges = set(g1.edges())
    for u, v in g2.edges():
        a, b = remap[u], remap[v]
        edges.add((min(a, b), max(a, b)))
    return Graph(nxt, edges)


def subgraph_contained(h: Graph, g: Graph) -> Optional[dict]:
    """Injective map phi with uv in E(h) => phi(u)phi(v) in E(g), or None.

    Backtracking over guest vertices in descending-degree order (ties by id),
    pruning candidates by degree and adjacency to already-mapped neighbours.
    Deterministic: host candidates are tried in ascending id.
    """
    if h.n > g.n:
        return None
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    # mapped neighbours of each guest vertex, precomputed per search depth
    mapped_nbrs = [[w for w in h.adj[v] if pos[w] < pos[v]] for v in order]

    assignment = {}
    used = set()

    def backtrack(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        need = mapped_nbrs[depth]
        if need:
            # candidates: common host neighbours of images of mapped guest nbrs
            cands = set(g.adj[assignment[need[0]]])
            for w in need[1:]:
                cands &= g.adj[assignment[w]]
            cands = sorted(cands)
        else:
            cands = range(g.n)
        dv = h.degree(v)
        for x in cands:
            if x in used or g.degree(x) < dv:
                continue
            assignment[v] = x
            used.add(x)
            if backtrack(depth + 1):
                return True
            del assignment[v]
            used.remove(x)
        return False

    if backtrack(0):
        return dict(sorted(assignment.items()))
    return None


def is_valid_subgraph_map(h: Graph, g: Graph, phi: dict) -> bool:
    """Independent check that phi witnesses h contained in g."""
    if sorted(phi.keys()) != list(range(h.n)):
        return False
    if len(set(phi.values())) != h.n:
        return False
    if not all(0 <= x < g.n for x in phi.values()):
        return False
    return all(g.has_edge(phi[u], phi[v]) for u, v in h.edges())
