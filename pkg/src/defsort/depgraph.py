"""Dependency graph over flattened definition nodes.

Edges point from the user to the definition it uses.  All traversals visit
nodes and neighbours in collection order, which keeps every result of this
module deterministic for a given source module.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .defcollect import FlatModule, NodeKey, type_dependency_links
from .diag import CycleError, Loc
from .freevars import def_use_sites


@dataclass(frozen=True)
class Edge:
    user: NodeKey
    used: NodeKey
    at: Loc  # earliest use site witnessing the edge

    @property
    def user_name(self):
        return self.user[1]

    @property
    def used_name(self):
        return self.used[1]


class DepGraph:
    def __init__(self, nodes: dict, edges=()):
        self.nodes = dict(nodes)  # NodeKey -> DefNode, collection order
        self._edges: dict = {}  # (user, used) -> Edge
        for e in edges:
            self.add_edge(e)

    @property
    def edges(self) -> list:
        return list(self._edges.values())

    def add_edge(self, e: Edge):
        if e.user not in self.nodes or e.used not in self.nodes:
            raise KeyError(f"edge endpoints must be graph nodes: {e}")
        old = self._edges.get((e.user, e.used))
        if old is None or (e.at.line, e.at.col) < (old.at.line, old.at.col):
            self._edges[(e.user, e.used)] = e

    def edge(self, user: NodeKey, used: NodeKey) -> Edge:
        return self._edges[(user, used)]

    def has_edge(self, user: NodeKey, used: NodeKey) -> bool:
        return (user, used) in self._edges

    def remove_edge(self, user: NodeKey, used: NodeKey):
        del self._edges[(user, used)]

    def out(self, key: NodeKey) -> list:
        """Dependencies of `key`, in collection order of the target."""
        targets = [used for (user, used) in self._edges if user == key]
        targets.sort(key=lambda k: self.nodes[k].index)
        return targets

    def in_degree(self) -> dict:
        deg = {k: 0 for k in self.nodes}
        for e in self._edges.values():
            deg[e.used] += 1
        return deg

    def _ordered_keys(self) -> list:
        return sorted(self.nodes, key=lambda k: self.nodes[k].index)


def build_graph(fm: FlatModule) -> DepGraph:
    """Graph of every flattened node with signature and body dependencies."""
    g = DepGraph({n.key: n for n in fm.nodes})
    for link in type_dependency_links(fm):
        g.add_edge(Edge(link.user, link.used, link.at))
    for node in fm.nodes:
        for use, target in def_use_sites(node, fm):
            g.add_edge(Edge(node.key, target.key, use.at))
    return g


@dataclass(frozen=True)
class Cycle:
    """A closed walk through one strongly connected component."""

    keys: tuple  # walk of node keys, first == last
    members: tuple  # same walk as bare names

    def __len__(self):
        return len(self.keys) - 1


def _tarjan_sccs(g: DepGraph) -> list:
    """Strongly connected components, iteratively, in discovery order."""
    index_of: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs: list = []
    counter = [0]

    for root in g._ordered_keys():
        if root in index_of:
            continue
        work = [(root, iter(g.out(root)))]
        index_of[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index_of:
                    index_of[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def intra_scc_pairs(g: DepGraph) -> set:
    """Edges that live inside a strongly connected component."""
    pairs: set = set()
    for comp in _tarjan_sccs(g):
        if len(comp) < 2:
            continue
        members = set(comp)
        for (user, used) in g._edges:
            if user in members and used in members:
                pairs.add((user, used))
    return pairs


def find_cycles(g: DepGraph) -> list:
    """One closed-walk witness per strongly connected component of size > 1."""
    cycles: list = []
    for comp in _tarjan_sccs(g):
        if len(comp) < 2:
            continue
        members = set(comp)
        start = min(comp, key=lambda k: g.nodes[k].index)
        # breadth-first parents give the shortest closed walk through start
        parents = {start: None}
        queue = [start]
        walk = None
        while queue and walk is None:
            u = queue.pop(0)
            for v in g.out(u):
                if v not in members:
                    continue
                if v == start:
                    path = [u]
                    while parents[path[-1]] is not None:
                        path.append(parents[path[-1]])
                    path.reverse()
                    walk = path + [start]
                    break
                if v not in parents:
                    parents[v] = u
                    queue.append(v)
        keys = tuple(walk)
        cycles.append(Cycle(keys, tuple(g.nodes[k].name for k in keys)))
    cycles.sort(key=lambda c: g.nodes[c.keys[0]].index)
    return cycles


def _first_back_edge(g: DepGraph):
    """First edge closing a cycle when searching in collection order."""
    color: dict = {}  # 1 = on the current path, 2 = finished
    for root in g._ordered_keys():
        if root in color:
            continue
        color[root] = 1
        work = [(root, iter(g.out(root)))]
        while work:
            u, it = work[-1]
            advanced = False
            for v in it:
                if color.get(v) == 1:
                    return g.edge(u, v)
                if v not in color:
                    color[v] = 1
                    work.append((v, iter(g.out(v))))
                    advanced = True
                    break
            if not advanced:
                color[u] = 2
                work.pop()
    return None


def break_cycles(g: DepGraph) -> list:
    """Remove back edges until the graph is acyclic; returns what was cut.

    Deliberately naive: one depth-first pass per removal, restarted from
    scratch, so the edge cut is always the first one that closes a cycle in
    declaration order.
    """
    removed: list = []
    while True:
        back = _first_back_edge(g)
        if back is None:
            return removed
        g.remove_edge(back.user, back.used)
        removed.append(back)


def start_points(g: DepGraph) -> list:
    """Nodes no other definition depends on, by declaration location."""
    deg = g.in_degree()
    starts = [g.nodes[k] for k, d in deg.items() if d == 0]
    starts.sort(key=lambda n: (n.location.line, n.location.col))
    return starts


def kahn_sort(g: DepGraph) -> list:
    """Keys in dependency order: a node comes after everything it uses.

    Ties are broken by collection order, so among simultaneously-ready nodes
    the earliest-declared user definition is emitted first and synthetic
    invariants drain last.
    """
    remaining = {k: 0 for k in g.nodes}
    users_of: dict = {k: [] for k in g.nodes}
    for e in g.edges:
        remaining[e.user] += 1
        users_of[e.used].append(e.user)
    by_index = {g.nodes[k].index: k for k in g.nodes}
    heap = [g.nodes[k].index for k, r in remaining.items() if r == 0]
    heapq.heapify(heap)
    emitted: list = []
    while heap:
        key = by_index[heapq.heappop(heap)]
        emitted.append(key)
        for user in users_of[key]:
            remaining[user] -= 1
            if remaining[user] == 0:
                heapq.heappush(heap, g.nodes[user].index)
    if len(emitted) != len(g.nodes):
        stuck = sorted(set(g.nodes) - set(emitted), key=lambda k: g.nodes[k].index)
        raise CycleError(f"cycle prevents sorting: {', '.join(k[1] for k in stuck)}")
    return emitted
