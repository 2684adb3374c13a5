"""Shared helpers: seeded random instances and independent mini-oracles.

The mini-oracles here are deliberately written differently from the package
implementations (definition-first brute force) so the two can disagree.
"""

import itertools

from prodstruct.graphs import Graph
from prodstruct.rng import SplitMix64


def random_graph(rng: SplitMix64, n: int, p_num=1, p_den=2) -> Graph:
    """Edge-probability p_num/p_den graph on n vertices."""
    edges = [e for e in itertools.combinations(range(n), 2)
             if rng.randrange(p_den) < p_num]
    return Graph(n, edges)


def random_graph_max_degree(rng: SplitMix64, n: int, max_deg: int) -> Graph:
    cand = list(itertools.combinations(range(n), 2))
    rng.shuffle(cand)
    deg = [0] * n
    edges = []
    for u, v in cand:
        if deg[u] < max_deg and deg[v] < max_deg and rng.randrange(2):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_tree(rng: SplitMix64, n: int) -> Graph:
    """Random labeled tree: each vertex attaches to a random earlier one."""
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def connected_atlas(max_n: int):
    """One representative per isomorphism class of connected graphs, n <= max_n."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g
    out = []
    for G in graph_atlas_g():
        n = G.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(G):
            out.append(Graph(n, [tuple(sorted(e)) for e in G.edges()]))
    return out


# -- definition-first mini-oracles (for n <= ~7) --------------------------

def brute_bandwidth(g: Graph) -> int:
    best = g.n
    for perm in itertools.permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        span = max((abs(pos[u] - pos[v]) for u, v in g.edges()), default=0)
        best = min(best, span)
    return best


def brute_treedepth(g: Graph) -> int:
    def rec(vs):
        vs = frozenset(vs)
        if not vs:
            return 0
        sub, order = g.subgraph(vs)
        comps = sub.components()
        if len(comps) > 1:
            return max(rec({order[v] for v in c}) for c in comps)
        return 1 + min(rec(vs - {order[v]}) for v in range(sub.n))
    return rec(range(g.n))


def brute_vertex_separation(g: Graph) -> int:
    """Pathwidth as min over orderings of max boundary."""
    best = g.n
    for perm in itertools.permutations(range(g.n)):
        worst = 0
        seen = set()
        for v in perm:
            seen.add(v)
            boundary = {w for u in seen for w in g.adj[u]} - seen
            worst = max(worst, len(boundary))
        best = min(best, worst)
    return best


def check_elimination_forest(g: Graph, parent, depth: int) -> bool:
    """parent array is a forest whose closure contains g, height == depth."""
    if len(parent) != g.n:
        return False

    def ancestors(v):
        out = []
        while parent[v] != -1:
            v = parent[v]
            out.append(v)
        return out

    heights = [1 + len(ancestors(v)) for v in range(g.n)]
    if g.n and max(heights) != depth:
        return False
    for u, v in g.edges():
        if u not in ancestors(v) and v not in ancestors(u):
            return False
    return True
