"""Structural inference over the class taxonomy.

Computes the reflexive-transitive subsumption closure, realizes individuals
into every class they belong to, and resolves which properties apply to a
class through domain inheritance. No constructor-level reasoning happens
here; the taxonomy must be a DAG and cycles are hard errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

from .model import (
    Diagnostic,
    E_CYCLE,
    Ontology,
    SubClassOf,
    THING,
    error,
)


@dataclass(frozen=True)
class TaxonomyClosure:
    """Transitive closure of the subclass relation.

    `ancestors` is strict (a class is not its own ancestor) and includes
    Thing for every other class; `descendants` is its inverse;
    `direct_parents` keeps only the direct edges the closure was built from.
    """

    ancestors: dict[str, frozenset[str]]
    descendants: dict[str, frozenset[str]]
    direct_parents: dict[str, frozenset[str]]

    @cached_property
    def direct_children(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {c: set() for c in self.ancestors}
        for child, parents in self.direct_parents.items():
            for parent in parents:
                acc[parent].add(child)
        return {c: frozenset(kids) for c, kids in acc.items()}


@dataclass(frozen=True)
class Realization:
    """Inferred individual memberships under subsumption."""

    members_of: dict[str, frozenset[str]]
    types_of: dict[str, frozenset[str]]


def _strongly_connected(
    nodes: Iterable[str], successors: Callable[[str], list[str]]
) -> list[list[str]]:
    """Iterative Tarjan; returns components in discovery order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work: list[tuple[str, list[str], int]] = [(root, successors(root), 0)]
        while work:
            node, succ, i = work[-1]
            pushed = False
            while i < len(succ):
                child = succ[i]
                i += 1
                if child not in index:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work[-1] = (node, succ, i)
                    work.append((child, successors(child), 0))
                    pushed = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if pushed:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
    return components


def compute_closure(o: Ontology) -> tuple[Optional[TaxonomyClosure], list[Diagnostic]]:
    """Close the subclass relation over direct edges (implicit root included).

    If any subclass cycle exists, returns one E_CYCLE diagnostic per cycle,
    naming every class on it, and no closure.
    """
    parents: dict[str, frozenset[str]] = dict(o.direct_parents)
    parents[THING] = frozenset()
    nodes = sorted(parents)

    components = _strongly_connected(nodes, lambda n: sorted(parents[n]))
    cycles = sorted(sorted(c) for c in components if len(c) > 1)
    if cycles:
        diags = []
        for cycle in cycles:
            members = set(cycle)
            edges = [
                ax
                for ax in o.axioms
                if isinstance(ax, SubClassOf)
                and ax.child in members
                and ax.parent in members
            ]
            anchor = min(edges, key=lambda ax: (ax.file, ax.line), default=None)
            diags.append(
                error(
                    E_CYCLE,
                    "classes form a subclass cycle: " + ", ".join(cycle),
                    anchor.file if anchor else "",
                    anchor.line if anchor else 0,
                )
            )
        return None, diags

    ancestors: dict[str, frozenset[str]] = {}
    for start in nodes:
        stack = [start]
        while stack:
            node = stack[-1]
            if node in ancestors:
                stack.pop()
                continue
            pending = [p for p in parents[node] if p not in ancestors]
            if pending:
                stack.extend(pending)
                continue
            acc: set[str] = set()
            for p in parents[node]:
                acc.add(p)
                acc |= ancestors[p]
            ancestors[node] = frozenset(acc)
            stack.pop()

    descendants: dict[str, set[str]] = {n: set() for n in nodes}
    for node, ancs in ancestors.items():
        for a in ancs:
            descendants[a].add(node)
    closure = TaxonomyClosure(
        ancestors=ancestors,
        descendants={n: frozenset(s) for n, s in descendants.items()},
        direct_parents=parents,
    )
    return closure, []


def realize(o: Ontology, closure: TaxonomyClosure) -> Realization:
    """Infer each individual's full class membership.

    An individual belongs to its asserted types and to every ancestor of
    those types; `members_of` holds the inverse view with an entry (possibly
    empty) for every class.
    """
    types_of: dict[str, frozenset[str]] = {}
    for ind in sorted(o.individuals):
        acc: set[str] = set()
        for t in o.asserted_types.get(ind, frozenset()):
            acc.add(t)
            acc |= closure.ancestors[t]
        types_of[ind] = frozenset(acc)
    members: dict[str, set[str]] = {c: set() for c in closure.ancestors}
    for ind, types in types_of.items():
        for t in types:
            members[t].add(ind)
    return Realization(
        members_of={c: frozenset(s) for c, s in members.items()},
        types_of=types_of,
    )


def applicable_properties(
    o: Ontology, closure: TaxonomyClosure, cls: str
) -> set[str]:
    """Properties usable on a class: domain is the class itself, one of its
    ancestors, or unspecified (unspecified means applicable everywhere).
    """
    if cls != THING and cls not in o.classes:
        raise ValueError(f"unknown class: {cls}")
    scope = {cls} | closure.ancestors[cls]
    applicable: set[str] = set()
    for prop in o.object_properties | o.data_properties:
        domain = o.domains.get(prop)
        if domain is None or domain in scope:
            applicable.add(prop)
    return applicable
