"""Import-order analysis across modules.

Modules are emitted imported-before-importer so the most depended-on module
loads first; ties fall back to the order the modules were given in.  Import
cycles are broken the same way definition cycles are: drop the first edge
that closes a cycle, warn, repeat.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .diag import Diagnostic


@dataclass
class ModuleGraph:
    nodes: list  # module names, input order
    edges: list  # (importer, imported) pairs, input order


def build_module_graph(mods: list):
    """Graph of resolvable imports; unresolved ones only produce warnings."""
    warnings: list = []
    byname: dict = {}
    for m in mods:
        if m.name in byname:
            warnings.append(Diagnostic(
                "warning", "dup-module",
                f"duplicate module {m.name!r}; keeping the first definition",
                m.name_loc,
            ))
            continue
        byname[m.name] = m
    edges: list = []
    for name, m in byname.items():
        for imp in m.imports:
            if imp.module not in byname:
                warnings.append(Diagnostic(
                    "warning", "unresolved-import",
                    f"module {name} imports unknown module {imp.module}",
                    m.name_loc,
                ))
            elif (name, imp.module) not in edges:
                edges.append((name, imp.module))
    return ModuleGraph(list(byname), edges), warnings


def _first_back_edge(nodes: list, deps: dict):
    pos = {n: i for i, n in enumerate(nodes)}
    color: dict = {}
    for root in nodes:
        if root in color:
            continue
        color[root] = 1
        work = [(root, iter(sorted(deps[root], key=pos.get)))]
        while work:
            u, it = work[-1]
            advanced = False
            for v in it:
                if color.get(v) == 1:
                    return (u, v)
                if v not in color:
                    color[v] = 1
                    work.append((v, iter(sorted(deps[v], key=pos.get))))
                    advanced = True
                    break
            if not advanced:
                color[u] = 2
                work.pop()
    return None


def order_modules(mods: list):
    """Returns (ordered module names, removed (importer, imported) edges,
    warnings)."""
    mg, warnings = build_module_graph(mods)
    deps = {n: [] for n in mg.nodes}
    for importer, imported in mg.edges:
        deps[importer].append(imported)

    removed: list = []
    while True:
        back = _first_back_edge(mg.nodes, deps)
        if back is None:
            break
        importer, imported = back
        deps[importer].remove(imported)
        removed.append(back)
        warnings.append(Diagnostic(
            "warning", "import-cycle",
            f"import cycle broken: ignoring import of {imported} by {importer}",
            next(m.name_loc for m in mods if m.name == importer),
        ))

    pos = {n: i for i, n in enumerate(mg.nodes)}
    remaining = {n: len(deps[n]) for n in mg.nodes}
    importers_of: dict = {n: [] for n in mg.nodes}
    for importer, targets in deps.items():
        for t in targets:
            importers_of[t].append(importer)
    heap = [pos[n] for n, r in remaining.items() if r == 0]
    heapq.heapify(heap)
    ordered: list = []
    while heap:
        name = mg.nodes[heapq.heappop(heap)]
        ordered.append(name)
        for importer in importers_of[name]:
            remaining[importer] -= 1
            if remaining[importer] == 0:
                heapq.heappush(heap, pos[importer])
    return ordered, removed, warnings
