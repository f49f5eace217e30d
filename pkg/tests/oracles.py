"""Independent brute-force oracles: slower routes that never share code with
the operations they check."""

from __future__ import annotations

import numpy as np


def order_by_iteration(G, g):
    """Smallest k >= 1 with g^k = 1, by repeated multiplication."""
    k = 1
    cur = g
    while cur != G.identity:
        cur = G.mul(cur, g)
        k += 1
        assert k <= G.order
    return k


def power_by_iteration(G, g, k):
    if k < 0:
        return power_by_iteration(G, G.inv(g), -k)
    cur = G.identity
    for _ in range(k):
        cur = G.mul(cur, g)
    return cur


def frattini_by_maximal_intersection(G):
    """Intersection of all maximal subgroups, from the enumerated subgroups."""
    subs = [s for _, s in G.maximal_subgroups()]
    out = set(subs[0])
    for s in subs[1:]:
        out &= s
    return frozenset(out)


def derived_by_all_commutators(G):
    """Closure of the commutators of all element pairs."""
    els = G.elements()
    comms = {G.commutator(g, h) for g in els for h in els}
    return G.closure(comms)


def subgroup_is_abelian(G, elements):
    elements = sorted(elements)
    for x in elements:
        for y in elements:
            if G.mul(x, y) != G.mul(y, x):
                return False
    return True


def regular_table(G):
    """All right-multiplication permutations as one |G| x |G| array."""
    els = G.elements()
    rank = G.rank
    return np.array([[rank(G.mul(h, g)) for h in els] for g in els], dtype=np.int64)


def check_regular_action_exhaustive(G):
    """R(g)R(h) = R(gh) on every pair and every point: associativity in bulk."""
    table = regular_table(G)
    rank = G.rank
    els = G.elements()
    for gi, g in enumerate(els):
        pg = table[gi]
        for hi, h in enumerate(els):
            # compose R(g) then R(h), compare with R(gh)
            if not np.array_equal(table[hi][pg], table[rank(G.mul(g, h))]):
                return False
    return True


def membership_by_enumeration(group_elements, perm):
    return tuple(perm) in {tuple(p) for p in group_elements}
