"""Weyl group actions: simple reflections, dominant representatives, the
longest element, duality and the dominance partial order.

Weyl words are tuples of 1-based simple-reflection indices; a word acts by
composition with the rightmost letter applied first.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .rootdata import RootDatum, Weight, root_coordinates, wneg, wsub

WeylWord = tuple[int, ...]


class DominantResult(NamedTuple):
    dominant: Weight
    word: WeylWord
    regular: bool


def reflect(datum: RootDatum, i: int, lam: Weight) -> Weight:
    """Simple reflection s_i(lam) = lam - <lam, alpha_i^vee> alpha_i (1-based i)."""
    lam = datum.check_weight(lam)
    if not 1 <= i <= datum.rank:
        raise IndexError(f"reflection index {i} out of range 1..{datum.rank}")
    c = lam[i - 1]
    if c == 0:
        return lam
    col = datum.cartan_columns[i - 1]
    return tuple(x - c * a for x, a in zip(lam, col))


def apply_word(datum: RootDatum, word, lam: Weight) -> Weight:
    """Apply a Weyl word; the last letter acts first."""
    for i in reversed(tuple(word)):
        lam = reflect(datum, i, lam)
    return lam


def word_sign(word) -> int:
    return -1 if len(tuple(word)) % 2 else 1


def make_dominant(datum: RootDatum, lam: Weight) -> DominantResult:
    """Unique dominant W-orbit representative via greedy leftmost-negative
    reflections.  ``regular`` is False iff the representative lies on a wall
    (has a zero coordinate)."""
    lam = datum.check_weight(lam)
    applied = []
    while True:
        neg = next((i for i, x in enumerate(lam) if x < 0), None)
        if neg is None:
            break
        applied.append(neg + 1)
        c = lam[neg]
        col = datum.cartan_columns[neg]
        lam = tuple(x - c * a for x, a in zip(lam, col))
    word = tuple(reversed(applied))
    return DominantResult(lam, word, all(x > 0 for x in lam))


def _batch_make_dominant(datum: RootDatum, arr: np.ndarray):
    """Vectorized make_dominant for an (N, rank) int array.

    Returns (dominant rows, signs) where sign = (-1)^(number of reflections).
    Rows are modified in place.
    """
    cols = datum._np_cartan_cols  # cols[:, i] = alpha_i
    sign = np.ones(len(arr), dtype=np.int64)
    active = np.arange(len(arr))
    while len(active):
        sub = arr[active]
        negmask = sub < 0
        has_neg = negmask.any(axis=1)
        active = active[has_neg]
        if not len(active):
            break
        sub = arr[active]
        first = (sub < 0).argmax(axis=1)
        for i in np.unique(first):
            rows = active[first == i]
            coef = arr[rows, i]
            arr[rows] -= coef[:, None] * cols[:, i][None, :]
            sign[rows] = -sign[rows]
    return arr, sign


def w0_action(datum: RootDatum, lam: Weight) -> Weight:
    """Action of the longest element, realized as the linear extension of
    w0(omega_i) = -omega_i* with the duality read off make_dominant."""
    lam = datum.check_weight(lam)
    tau = _diagram_involution(datum)
    return tuple(-lam[tau[i]] for i in range(datum.rank))


def _diagram_involution(datum: RootDatum) -> tuple[int, ...]:
    if datum._diagram_involution is None:
        tau = []
        for i in range(datum.rank):
            omega = tuple(1 if j == i else 0 for j in range(datum.rank))
            dual = make_dominant(datum, wneg(omega)).dominant
            nonzero = [j for j, x in enumerate(dual) if x]
            assert len(nonzero) == 1 and dual[nonzero[0]] == 1
            tau.append(nonzero[0])
        datum._diagram_involution = tuple(tau)
    return datum._diagram_involution


def dual_weight(datum: RootDatum, lam: Weight) -> Weight:
    """Highest weight of the dual module; involution on dominant weights."""
    lam = datum.check_weight(lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"dual_weight requires a dominant weight, got {lam}")
    return make_dominant(datum, wneg(lam)).dominant


def dominance_leq(datum: RootDatum, mu: Weight, lam: Weight) -> bool:
    """mu <= lam iff lam - mu is a nonnegative integer combination of simple roots."""
    diff = wsub(datum.check_weight(lam), datum.check_weight(mu))
    return all(k.denominator == 1 and k >= 0 for k in root_coordinates(datum, diff))


def orbit(datum: RootDatum, lam: Weight) -> frozenset[Weight]:
    """Full W-orbit of a weight (exponential in rank; small data only)."""
    lam = datum.check_weight(lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, datum.rank + 1):
                r = reflect(datum, i, w)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return frozenset(seen)


def orbit_size(datum: RootDatum, lam: Weight) -> int:
    """|W . lam| for dominant lam, via the parabolic stabilizer W_J, J = zeros."""
    lam = datum.check_weight(lam)
    if any(x < 0 for x in lam):
        raise ValueError("orbit_size expects a dominant weight")
    zero_nodes = [i for i, x in enumerate(lam) if x == 0]
    stab = 1
    for comp in _connected_components(datum, zero_nodes):
        stab *= _component_weyl_order(datum, comp)
    assert datum.weyl_order % stab == 0
    return datum.weyl_order // stab


def _connected_components(datum: RootDatum, nodes) -> list[list[int]]:
    nodes = set(nodes)
    comps = []
    while nodes:
        start = min(nodes)
        comp, stack = [], [start]
        nodes.discard(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in datum.neighbors[v]:
                if u in nodes:
                    nodes.discard(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _component_weyl_order(datum: RootDatum, comp: list[int]) -> int:
    """Weyl order of an irreducible induced subdiagram, classified by shape."""
    from .rootdata import weyl_group_order

    n = len(comp)
    if n == 1:
        return 2
    inside = set(comp)
    deg = {i: sum(1 for j in datum.neighbors[i] if j in inside) for i in comp}
    bonds = [(i, j) for i in comp for j in comp
             if i < j and datum.cartan[i][j] * datum.cartan[j][i] > 1]
    triple = any(datum.cartan[i][j] * datum.cartan[j][i] == 3 for i, j in bonds)
    if triple:
        return weyl_group_order("G", 2)
    if bonds:
        i, j = bonds[0]
        if deg[i] == 1 or deg[j] == 1:
            return weyl_group_order("B", n)
        return weyl_group_order("F", 4)
    branch = [i for i in comp if deg[i] == 3]
    if not branch:
        return weyl_group_order("A", n)
    arms = sorted(_arm_lengths(datum, branch[0], inside))
    if arms[0] == 1 and arms[1] == 1:
        return weyl_group_order("D", n)
    return weyl_group_order("E", n)


def _arm_lengths(datum: RootDatum, center: int, inside: set[int]) -> list[int]:
    lengths = []
    for start in datum.neighbors[center]:
        if start not in inside:
            continue
        length, prev, cur = 1, center, start
        while True:
            nxt = [u for u in datum.neighbors[cur] if u in inside and u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


def weyl_group_elements(datum: RootDatum, max_order: int = 100000) -> list[WeylWord]:
    """One word per Weyl group element, by BFS on the orbit of the Weyl
    vector.  Guarded by max_order; meant for small groups."""
    if datum.weyl_order > max_order:
        raise ValueError(f"Weyl group of order {datum.weyl_order} exceeds bound {max_order}")
    rho = datum.weyl_vector
    words = {rho: ()}
    frontier = [rho]
    while frontier:
        nxt = []
        for w in frontier:
            base = words[w]
            for i in range(1, datum.rank + 1):
                r = reflect(datum, i, w)
                if r not in words:
                    # s_i applied after the word reaching w
                    words[r] = (i,) + base
                    nxt.append(r)
        frontier = nxt
    assert len(words) == datum.weyl_order
    return sorted(words.values(), key=lambda w: (len(w), w))
