"""Metrics on (tree, linear arrangement) pairs and minimum-D solvers.

D is the sum of dependency distances (edge lengths), C the number of edge
crossings.  The solvers return exact minima of D under three regimes:
unconstrained, planar (no crossings) and projective (planar with an
uncovered root).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NoEdgesError, SizeLimitExceededError
from .trees import Arrangement, FreeTree, RootedTree, _check_same_size

DEFAULT_EXHAUSTIVE_BOUND = 10

Tree = Union[FreeTree, RootedTree]


@dataclass(frozen=True)
class ArrangementFlags:
    projective: bool
    planar: bool
    one_endpoint_crossing: bool


@dataclass(frozen=True)
class FluxProfile:
    """Per-gap flux: gap g separates positions g and g+1."""

    sizes: tuple[int, ...]
    weights: tuple[int, ...]

    @property
    def total_size(self) -> int:
        return sum(self.sizes)

    @property
    def max_size(self) -> int:
        return max(self.sizes)

    @property
    def max_weight(self) -> int:
        return max(self.weights)


@dataclass(frozen=True)
class MinArrangementResult:
    value: int
    arrangement: Arrangement


def _positioned_edges(t: Tree, a: Arrangement) -> list[tuple[int, int]]:
    """Edges as (l, r) position pairs with l < r."""
    pos = a.position
    out = []
    for u, v in t.edges():
        pu, pv = pos[u], pos[v]
        out.append((pu, pv) if pu < pv else (pv, pu))
    return out


def sum_edge_lengths(t: Tree, a: Arrangement) -> int:
    _check_same_size(t, a)
    pos = a.position
    return sum(abs(pos[u] - pos[v]) for u, v in t.edges())


def _crossings_brute(edges: list[tuple[int, int]]) -> int:
    c = 0
    for (a, b), (x, y) in itertools.combinations(edges, 2):
        if a < x < b < y or x < a < y < b:
            c += 1
    return c


def _crossings_sweep(edges: list[tuple[int, int]], n: int) -> int:
    # Fenwick tree over right endpoints of already-opened edges.
    bit = [0] * (n + 1)

    def add(i: int) -> None:
        while i <= n:
            bit[i] += 1
            i += i & -i

    def prefix(i: int) -> int:
        s = 0
        while i > 0:
            s += bit[i]
            i -= i & -i
        return s

    by_left: list[list[int]] = [[] for _ in range(n + 1)]
    for l, r in edges:
        by_left[l].append(r)
    c = 0
    for p in range(1, n + 1):
        rights = by_left[p]
        for r in rights:
            # open edges (l' < p) crossing (p, r) have r' in (p, r)
            c += prefix(r - 1) - prefix(p)
        for r in rights:
            add(r)
    return c


def num_crossings(t: Tree, a: Arrangement, algorithm: str = "sweep") -> int:
    _check_same_size(t, a)
    edges = _positioned_edges(t, a)
    if algorithm == "brute_pairs":
        return _crossings_brute(edges)
    if algorithm == "sweep":
        return _crossings_sweep(edges, t.n)
    raise ValueError(f"unknown crossings algorithm: {algorithm!r}")


def classify_arrangement(t: RootedTree, a: Arrangement) -> ArrangementFlags:
    _check_same_size(t, a)
    edges = _positioned_edges(t, a)
    crossing_sets: list[list[int]] = [[] for _ in edges]
    any_crossing = False
    for i, j in itertools.combinations(range(len(edges)), 2):
        ai, bi = edges[i]
        aj, bj = edges[j]
        if ai < aj < bi < bj or aj < ai < bj < bi:
            crossing_sets[i].append(j)
            crossing_sets[j].append(i)
            any_crossing = True
    planar = not any_crossing
    rp = a.position[t.root]
    projective = planar and not any(l < rp < r for l, r in edges)
    one_ec = True
    for i, crossers in enumerate(crossing_sets):
        if len(crossers) < 2:
            continue
        common = set(edges[crossers[0]])
        for j in crossers[1:]:
            common &= set(edges[j])
            if not common:
                one_ec = False
                break
        if not one_ec:
            break
    return ArrangementFlags(projective=projective, planar=planar, one_endpoint_crossing=one_ec)


def head_initial_ratio(t: RootedTree, a: Arrangement) -> Fraction:
    _check_same_size(t, a)
    if t.n < 2:
        raise NoEdgesError("head-initial ratio undefined on a single vertex")
    pos = a.position
    head_first = sum(1 for head, dep in t.edges() if pos[head] < pos[dep])
    return Fraction(head_first, t.n - 1)


def _max_matching_forest(vertices: set[int], edges: list[tuple[int, int]]) -> int:
    """Maximum matching of a forest, by greedy leaf matching (optimal on forests)."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    matched: set[int] = set()
    visited: set[int] = set()
    count = 0
    for start in vertices:
        if start in visited:
            continue
        # iterative post-order over the component
        order = []
        parent = {start: 0}
        stack = [start]
        visited.add(start)
        while stack:
            x = stack.pop()
            order.append(x)
            for y in adj[x]:
                if y not in visited:
                    visited.add(y)
                    parent[y] = x
                    stack.append(y)
        for x in reversed(order):
            p = parent[x]
            if p and x not in matched and p not in matched:
                matched.add(x)
                matched.add(p)
                count += 1
    return count


def flux(t: Tree, a: Arrangement) -> FluxProfile:
    _check_same_size(t, a)
    if t.n < 2:
        raise NoEdgesError("flux undefined on a single vertex")
    edges = _positioned_edges(t, a)
    sizes = []
    weights = []
    for g in range(1, t.n):
        spanning = [(l, r) for l, r in edges if l <= g < r]
        sizes.append(len(spanning))
        if spanning:
            verts = {p for e in spanning for p in e}
            weights.append(_max_matching_forest(verts, spanning))
        else:
            weights.append(0)
    return FluxProfile(sizes=tuple(sizes), weights=tuple(weights))


# ---------------------------------------------------------------------------
# Minimum-D solvers
#
# Projectivity is equivalent to every subtree occupying a contiguous interval,
# so the projective minimum is solved exactly by a block-placement DP: for
# each vertex, child blocks are placed on both sides with larger blocks
# farther out, and an O(k^2) DP picks the side of each block.  A planar
# arrangement of a free tree is exactly a projective arrangement of the tree
# rooted at the vertex occupying the leftmost position, hence the planar
# minimum is the best projective minimum over all rootings.  The unconstrained
# minimum coincides with the planar one on trees (an optimal arrangement can
# always be taken crossing-free); this is cross-validated in the test suite
# against independent exhaustive and subset-DP oracles.
# ---------------------------------------------------------------------------


def _assign_sides(blocks: list[tuple[int, list[int]]], anchored: bool):
    """Place blocks (size, layout) on two sides of a pivot vertex.

    Returns (extra_cost, left_layouts, right_layouts) where extra_cost counts
    the gaps each block's edge to the pivot has to cross, plus, if anchored,
    the pivot's own edge crossing every block on the anchor (left) side.
    Within a side larger blocks go farther out; sides are chosen by DP over
    blocks in decreasing size order.
    """
    if not blocks:
        return 0, [], []
    blocks = sorted(blocks, key=lambda b: -b[0])
    k = len(blocks)
    INF = float("inf")
    # dp[nL] = min cost after placing a prefix; choice[j][nL] = placed left?
    dp = {0: 0}
    choice: list[dict[int, bool]] = []
    for j in range(k):
        b = blocks[j][0]
        ndp: dict[int, float] = {}
        ch: dict[int, bool] = {}
        for nL, cost in dp.items():
            nR = j - nL
            left_cost = cost + b * nL + (b if anchored else 0)
            if ndp.get(nL + 1, INF) > left_cost:
                ndp[nL + 1] = left_cost
                ch[nL + 1] = True
            right_cost = cost + b * nR
            if ndp.get(nL, INF) > right_cost:
                ndp[nL] = right_cost
                ch[nL] = False
        dp = ndp
        choice.append(ch)
    best_nL = min(dp, key=dp.get)
    extra = dp[best_nL]
    sides = []
    nL = best_nL
    for j in range(k - 1, -1, -1):
        if choice[j].get(nL, False):
            sides.append(True)
            nL -= 1
        else:
            sides.append(False)
    sides.reverse()
    left = [blocks[j][1] for j in range(k) if sides[j]]
    right = [blocks[j][1] for j in range(k) if not sides[j]]
    return extra, left, right


def _min_projective(t: RootedTree) -> tuple[int, list[int]]:
    """Exact projective minimum of D with a witness vertex order."""
    n = t.n
    children = t.children
    # children-before-parent order
    topo = [t.root]
    for v in topo:
        topo.extend(children[v])
    size = [1] * (n + 1)
    anch_cost = [0] * (n + 1)
    anch_layout: list[list[int]] = [None] * (n + 1)  # anchor adjacent on the left
    for v in reversed(topo):
        blocks = [(size[c], anch_layout[c]) for c in children[v]]
        base = sum(anch_cost[c] for c in children[v])
        for c in children[v]:
            size[v] += size[c]
        if v == t.root:
            extra, left, right = _assign_sides(blocks, anchored=False)
            cost = base + extra
        else:
            extra, left, right = _assign_sides(blocks, anchored=True)
            cost = base + extra + 1
        layout: list[int] = []
        for blk in left:  # largest farthest from v; anchor of each is to its right
            layout.extend(reversed(blk))
        layout.append(v)
        for blk in reversed(right):  # smallest adjacent to v
            layout.extend(blk)
        anch_cost[v] = cost
        anch_layout[v] = layout
    return anch_cost[t.root], anch_layout[t.root]


def min_D_projective(t: RootedTree, algorithm: str = "gt_alemany",
                     max_n: int = DEFAULT_EXHAUSTIVE_BOUND) -> MinArrangementResult:
    algorithm = algorithm.lower()
    if algorithm == "exhaustive":
        return _min_D_exhaustive(t, "projective", max_n)
    if algorithm != "gt_alemany":
        raise ValueError(f"unknown projective solver: {algorithm!r}")
    value, order = _min_projective(t)
    return MinArrangementResult(value, Arrangement.from_vertex_order(order))


def min_D_planar(t: Tree, algorithm: str = "hs_alemany",
                 max_n: int = DEFAULT_EXHAUSTIVE_BOUND) -> MinArrangementResult:
    free = t.to_free() if isinstance(t, RootedTree) else t
    algorithm = algorithm.lower()
    if algorithm == "exhaustive":
        return _min_D_exhaustive(free, "planar", max_n)
    if algorithm != "hs_alemany":
        raise ValueError(f"unknown planar solver: {algorithm!r}")
    best = None
    best_order = None
    for r in free.vertices():
        value, order = _min_projective(RootedTree.root_at(free, r))
        if best is None or value < best:
            best, best_order = value, order
    return MinArrangementResult(best, Arrangement.from_vertex_order(best_order))


def min_D_unconstrained(t: Tree, algorithm: str = "shiloach",
                        max_n: int = DEFAULT_EXHAUSTIVE_BOUND) -> MinArrangementResult:
    free = t.to_free() if isinstance(t, RootedTree) else t
    algorithm = algorithm.lower()
    if algorithm == "exhaustive":
        return _min_D_exhaustive(free, "unconstrained", max_n)
    if algorithm not in ("shiloach", "chung_2"):
        raise ValueError(f"unknown unconstrained solver: {algorithm!r}")
    return min_D_planar(free)


def _min_D_exhaustive(t: Tree, constraint: str, max_n: int) -> MinArrangementResult:
    if t.n > max_n:
        raise SizeLimitExceededError(
            f"exhaustive search over {t.n}! arrangements exceeds bound n <= {max_n}")
    if constraint == "projective" and not isinstance(t, RootedTree):
        raise TypeError("projective constraint requires a RootedTree")
    edges = list(t.edges())
    n = t.n
    best = None
    best_perm = None
    for perm in itertools.permutations(range(1, n + 1)):
        # perm maps position index (0-based) -> vertex
        pos = [0] * (n + 1)
        for p, v in enumerate(perm, start=1):
            pos[v] = p
        D = sum(abs(pos[u] - pos[v]) for u, v in edges)
        if best is not None and D >= best:
            continue
        if constraint in ("planar", "projective"):
            pedges = [(pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u])
                      for u, v in edges]
            if _crossings_brute(pedges):
                continue
            if constraint == "projective":
                rp = pos[t.root]
                if any(l < rp < r for l, r in pedges):
                    continue
        best = D
        best_perm = perm
    return MinArrangementResult(best, Arrangement.from_vertex_order(best_perm))
