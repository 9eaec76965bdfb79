"""Partial orders over crash-prone stations.

A poset is stored as its transitive reduction (cover pairs) plus a
precomputed strict-predecessor table, so crash-legality queries during a
simulation are set lookups.  Width computations (maximum antichain, minimum
chain cover) are exact: brute force for small posets, Dilworth via maximum
bipartite matching on the comparability relation otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import BadLengths, CycleDetected, NotFaultProne, TooLarge, UnknownElement

EXACT_SOLVE_CAP = 20
_BRUTE_FORCE_BELOW = 12


@dataclass(frozen=True)
class Poset:
    """Immutable partial order: elements plus cover pairs (a immediately below b)."""

    elements: frozenset[int]
    covers: frozenset[tuple[int, int]]
    # strict predecessors / successors per element, under the full closure
    below: dict[int, frozenset[int]] = field(compare=False, repr=False, default_factory=dict)
    above: dict[int, frozenset[int]] = field(compare=False, repr=False, default_factory=dict)

    def precedes(self, a: int, b: int) -> bool:
        return a in self.below[b]

    def comparable(self, a: int, b: int) -> bool:
        return a in self.below[b] or b in self.below[a]

    def predecessors(self, e: int) -> frozenset[int]:
        if e not in self.below:
            raise NotFaultProne(f"station {e} is not in the poset")
        return self.below[e]

    def topological(self) -> list[int]:
        """Elements sorted so every element follows all its predecessors."""
        return sorted(self.elements, key=lambda e: (len(self.below[e]), e))

    def to_config(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "covers": sorted([a, b] for a, b in self.covers),
        }


def _closure_from_relations(
    elements: set[int], relations: Iterable[tuple[int, int]]
) -> dict[int, set[int]]:
    """Strict-successor sets of the transitive closure; raises on cycles."""
    succ: dict[int, set[int]] = {e: set() for e in elements}
    for a, b in relations:
        if a not in elements or b not in elements:
            raise UnknownElement(f"relation ({a}, {b}) mentions an unknown element")
        succ[a].add(b)
    # Floyd-Warshall style closure; element counts are small by design.
    changed = True
    while changed:
        changed = False
        for a in elements:
            extra = set()
            for b in succ[a]:
                extra |= succ[b] - succ[a]
            if extra:
                succ[a] |= extra
                changed = True
    for e in elements:
        if e in succ[e]:
            raise CycleDetected(f"element {e} precedes itself under closure")
    return succ


def build_poset(elements: Iterable[int], relations: Iterable[tuple[int, int]]) -> Poset:
    """Build a poset from arbitrary (acyclic) precedence pairs.

    The stored cover set is the transitive reduction of the closure of
    ``relations``; redundant pairs are dropped.
    """
    elems = set(int(e) for e in elements)
    succ = _closure_from_relations(elems, [(int(a), int(b)) for a, b in relations])
    covers = set()
    for a in elems:
        for b in succ[a]:
            # (a, b) is a cover unless some c sits strictly between
            if not any(c in succ[a] and b in succ[c] for c in elems):
                covers.add((a, b))
    below = {e: frozenset(a for a in elems if e in succ[a]) for e in elems}
    above = {e: frozenset(succ[e]) for e in elems}
    return Poset(frozenset(elems), frozenset(covers), below, above)


def crash_is_legal(poset: Poset, already_crashed: set[int], candidate: int) -> bool:
    """True iff every strict predecessor of the candidate is already crashed."""
    if candidate not in poset.elements:
        raise NotFaultProne(f"station {candidate} is not fault-prone")
    return poset.below[candidate] <= already_crashed


def batch_is_legal(poset: Poset, already_crashed: set[int], batch: Sequence[int]) -> bool:
    """Validate a same-round crash batch.

    The batch is ordered topologically and each member is checked with
    earlier batch members counted as crashed.
    """
    pending = set(batch)
    seen = set(already_crashed)
    ordered = sorted(pending, key=lambda e: (len(poset.below.get(e, frozenset())), e))
    for e in ordered:
        if not crash_is_legal(poset, seen, e):
            return False
        seen.add(e)
    return True


def _brute_force_antichain(poset: Poset) -> set[int]:
    elems = sorted(poset.elements)
    best: tuple[int, ...] = ()
    for size in range(len(elems), 0, -1):
        for combo in combinations(elems, size):
            if all(not poset.comparable(a, b) for a, b in combinations(combo, 2)):
                best = combo
                break
        if best:
            break
    return set(best)


def _max_matching(left: list[int], adj: dict[int, set[int]]) -> dict[int, int]:
    """Simple augmenting-path bipartite matching; returns right->left matches."""
    match_r: dict[int, int] = {}

    def try_augment(u: int, visited: set[int]) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_r or try_augment(match_r[v], visited):
                match_r[v] = u
                return True
        return False

    for u in left:
        try_augment(u, set())
    return match_r


def max_antichain(poset: Poset) -> set[int]:
    """A maximum-cardinality set of pairwise incomparable elements (exact)."""
    n = len(poset.elements)
    if n == 0:
        return set()
    if n > EXACT_SOLVE_CAP:
        raise TooLarge(f"poset has {n} elements, exact cap is {EXACT_SOLVE_CAP}")
    if n < _BRUTE_FORCE_BELOW:
        return _brute_force_antichain(poset)
    # Koenig construction on the comparability split: left copy a -> right
    # copy b for every a strictly below b.
    elems = sorted(poset.elements)
    adj = {a: set(poset.above[a]) for a in elems}
    match_r = _max_matching(elems, adj)
    match_l = {u: v for v, u in match_r.items()}
    # Alternating BFS from unmatched left vertices to build a min vertex cover.
    visited_l, visited_r = set(), set()
    frontier = [u for u in elems if u not in match_l]
    visited_l.update(frontier)
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v in visited_r:
                    continue
                visited_r.add(v)
                w = match_r.get(v)
                if w is not None and w not in visited_l:
                    visited_l.add(w)
                    nxt.append(w)
        frontier = nxt
    cover_l = set(elems) - visited_l
    cover_r = visited_r
    return {e for e in elems if e not in cover_l and e not in cover_r}


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[tuple[int, ...], ...]


def min_chain_cover(poset: Poset) -> ChainDecomposition:
    """Partition into the minimum number of chains (Dilworth-minimal, exact)."""
    n = len(poset.elements)
    if n > EXACT_SOLVE_CAP:
        raise TooLarge(f"poset has {n} elements, exact cap is {EXACT_SOLVE_CAP}")
    elems = sorted(poset.elements)
    adj = {a: set(poset.above[a]) for a in elems}
    match_r = _max_matching(elems, adj)
    nxt = {u: v for v, u in match_r.items()}  # successor within a chain
    has_pred = set(match_r.keys())
    chains = []
    for e in elems:
        if e in has_pred:
            continue
        chain = [e]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(tuple(chain))
    return ChainDecomposition(tuple(chains))


def thickness(poset: Poset) -> int:
    return len(max_antichain(poset))


# --- generators for the order families used by the adversary hierarchy ---


def chain(ids: Sequence[int]) -> Poset:
    """Linear order: ids[0] must crash first, ids[-1] last."""
    ids = list(ids)
    return build_poset(ids, [(a, b) for a, b in zip(ids, ids[1:])])


def antichain(ids: Sequence[int]) -> Poset:
    return build_poset(ids, [])


def k_chains(ids: Sequence[int], lengths: Sequence[int]) -> Poset:
    """Disjoint chains over ids, consumed in order, with the given lengths."""
    ids = list(ids)
    if sum(lengths) != len(ids):
        raise BadLengths(f"lengths {list(lengths)} do not sum to {len(ids)}")
    relations = []
    pos = 0
    for ln in lengths:
        seg = ids[pos : pos + ln]
        relations.extend(zip(seg, seg[1:]))
        pos += ln
    return build_poset(ids, relations)


def random_poset(ids: Sequence[int], edge_density: float, seed: int) -> Poset:
    """Random DAG over ids (edges respect id order), transitively reduced."""
    ids = sorted(ids)
    rng = np.random.Generator(np.random.Philox(key=seed))
    relations = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if rng.random() < edge_density:
                relations.append((a, b))
    return build_poset(ids, relations)


def generate(spec: dict, ids: Sequence[int] | None = None) -> Poset:
    """Build a poset from a config literal.

    Accepts either an explicit ``{"elements": [...], "covers": [[a, b], ...]}``
    or a family form ``{"family": "chain"|"antichain"|"k_chains"|"random", ...}``
    over the supplied fault-prone ids.
    """
    if "elements" in spec:
        return build_poset(spec["elements"], [tuple(p) for p in spec.get("covers", [])])
    family = spec["family"]
    if ids is None:
        ids = spec.get("ids")
    if ids is None:
        raise UnknownElement("family-form poset literal needs the fault-prone ids")
    if family == "chain":
        return chain(ids)
    if family == "antichain":
        return antichain(ids)
    if family == "k_chains":
        return k_chains(ids, spec["lengths"])
    if family == "random":
        return random_poset(ids, spec.get("edge_density", 0.3), spec.get("seed", 0))
    raise UnknownElement(f"unknown poset family {family!r}")
