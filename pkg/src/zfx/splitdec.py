"""Splits, graph-labelled trees, canonical split decomposition, and the
structural reductions used by the unique-prime-bag arguments.

A decomposition is built by recursive splitting (replace G by G_A + marker
and G_B + marker joined by a tree edge) and then reduced to a fixed point of
three merge rules: contract clique-clique edges, contract star edges joined
center-to-leaf, and absorb bags with at most two label vertices.  All three
are instances of one tree-edge contraction that preserves accessibility, so
reduction never changes the represented graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import kernels
from .errors import CapacityError, InvariantViolation, TreeError
from .graphs import (
    Graph,
    are_isomorphic,
    bits,
    classify_kind,
    induced_subgraph,
    is_connected,
    mask_of,
)

SPLIT_BUDGET_N = 24

CLIQUE = "clique"
STAR = "star"
PRIME = "prime"


@dataclass(frozen=True, slots=True)
class Split:
    """Bipartition (A,B) whose cross edges are exactly A1 x B1."""

    a_mask: int
    b_mask: int
    a1_mask: int
    b1_mask: int


def find_split(
    g: Graph, budget: Optional[int] = None, reverse: bool = False
) -> Optional[Split]:
    """Deterministic first split of a connected graph, or None.

    Scans A-sides containing vertex 0 in increasing mask order (decreasing
    with ``reverse``).  No split exists below 4 vertices.
    """
    limit = SPLIT_BUDGET_N if budget is None else budget
    if g.n > limit:
        raise CapacityError(f"split scan over {g.n} vertices exceeds budget {limit}")
    if not is_connected(g):
        raise ValueError("find_split expects a connected graph")
    if g.n < 4:
        return None
    a_mask = kernels.find_split_mask(g.n, g.adj, reverse)
    if not a_mask:
        return None
    b_mask = g.full_mask ^ a_mask
    a1 = 0
    b1 = 0
    for a in bits(a_mask):
        cross = g.adj[a] & b_mask
        if cross:
            a1 |= 1 << a
            b1 = cross
    return Split(a_mask, b_mask, a1, b1)


@dataclass(frozen=True, slots=True)
class Bag:
    """One node of a graph-labelled tree.

    ``ordinary`` maps label vertices to original graph vertices; ``markers``
    maps incident tree-edge ids to the label vertex standing in for the rest
    of the graph across that edge.
    """

    label: Graph
    kind: str
    ordinary: dict[int, int]
    markers: dict[int, int]
    star_center: Optional[int] = None

    def marker_locals(self) -> set[int]:
        return set(self.markers.values())

    def local_of_edge(self, edge: int) -> int:
        return self.markers[edge]


@dataclass(frozen=True, slots=True)
class GraphLabelledTree:
    bags: dict[int, Bag]
    tree_edges: dict[int, tuple[int, int]]
    vertex_ids: tuple[int, ...]

    def bag_neighbors(self, bag_id: int) -> Iterator[tuple[int, int]]:
        """(edge id, neighbor bag id) pairs, ascending by edge id."""
        for e in sorted(self.bags[bag_id].markers):
            x, y = self.tree_edges[e]
            yield e, (y if x == bag_id else x)

    def bag_degree(self, bag_id: int) -> int:
        return len(self.bags[bag_id].markers)

    def is_leaf_bag(self, bag_id: int) -> bool:
        return self.bag_degree(bag_id) == 1

    def prime_bag_ids(self) -> list[int]:
        return [b for b in sorted(self.bags) if self.bags[b].kind == PRIME]


@dataclass(frozen=True, slots=True)
class DecompositionSummary:
    prime_bag_count: int
    prime_labels: tuple[Graph, ...]
    is_dh: bool
    unique_prime: Optional[int]
    star_centered_at_prime: bool


# --- mutable builder --------------------------------------------------------


class _MBag:
    __slots__ = ("label", "ordinary", "markers")

    def __init__(self, label: Graph, ordinary: dict, markers: dict):
        self.label = label
        self.ordinary = ordinary  # local -> original id
        self.markers = markers  # edge id -> local


class _Builder:
    def __init__(self) -> None:
        self.bags: dict[int, _MBag] = {}
        self.edge_ends: dict[int, list] = {}
        self._next_bag = 0
        self._next_edge = 0

    def new_edge(self) -> int:
        e = self._next_edge
        self._next_edge += 1
        self.edge_ends[e] = [None, None]
        return e

    def add_bag(self, label: Graph, tokens: tuple) -> int:
        bid = self._next_bag
        self._next_bag += 1
        ordinary: dict[int, int] = {}
        markers: dict[int, int] = {}
        for local, tok in enumerate(tokens):
            if isinstance(tok, int):
                ordinary[local] = tok
            else:
                _, e, side = tok
                markers[e] = local
                self.edge_ends[e][side] = bid
        self.bags[bid] = _MBag(label, ordinary, markers)
        return bid

    @classmethod
    def from_tree(cls, t: GraphLabelledTree) -> "_Builder":
        b = cls()
        for bid in t.bags:
            bag = t.bags[bid]
            b.bags[bid] = _MBag(bag.label, dict(bag.ordinary), dict(bag.markers))
        for e, (x, y) in t.tree_edges.items():
            b.edge_ends[e] = [x, y]
        b._next_bag = max(t.bags, default=-1) + 1
        b._next_edge = max(t.tree_edges, default=-1) + 1
        return b

    def contract_edge(self, e: int) -> None:
        """Merge the two end bags of ``e`` into one, preserving accessibility."""
        x, y = self.edge_ends[e]
        bx, by = self.bags[x], self.bags[y]
        mx, my = bx.markers[e], by.markers[e]
        x_locals = [l for l in range(bx.label.n) if l != mx]
        y_locals = [l for l in range(by.label.n) if l != my]
        remap_x = {l: i for i, l in enumerate(x_locals)}
        remap_y = {l: len(x_locals) + i for i, l in enumerate(y_locals)}
        nn = len(x_locals) + len(y_locals)
        adj = [0] * nn
        for u in x_locals:
            row = 0
            for w in bits(bx.label.adj[u]):
                if w != mx:
                    row |= 1 << remap_x[w]
            if bx.label.has_edge(u, mx):
                for v in y_locals:
                    if by.label.has_edge(my, v):
                        row |= 1 << remap_y[v]
            adj[remap_x[u]] = row
        for v in y_locals:
            row = 0
            for w in bits(by.label.adj[v]):
                if w != my:
                    row |= 1 << remap_y[w]
            if by.label.has_edge(my, v):
                for u in x_locals:
                    if bx.label.has_edge(u, mx):
                        row |= 1 << remap_x[u]
            adj[remap_y[v]] |= row
        ordinary = {remap_x[l]: o for l, o in bx.ordinary.items()}
        ordinary.update({remap_y[l]: o for l, o in by.ordinary.items()})
        markers = {}
        for e2, l in bx.markers.items():
            if e2 != e:
                markers[e2] = remap_x[l]
        for e2, l in by.markers.items():
            if e2 != e:
                markers[e2] = remap_y[l]
        keep, drop = min(x, y), max(x, y)
        self.bags[keep] = _MBag(Graph(nn, tuple(adj)), ordinary, markers)
        del self.bags[drop]
        del self.edge_ends[e]
        for e2 in markers:
            ends = self.edge_ends[e2]
            for i in (0, 1):
                if ends[i] in (x, y):
                    ends[i] = keep

    def delete_leaf_bag(self, bid: int, e: int) -> None:
        del self.bags[bid]
        del self.edge_ends[e]

    def _mergeable_edge(self) -> Optional[int]:
        for e in sorted(self.edge_ends):
            x, y = self.edge_ends[e]
            bx, by = self.bags[x], self.bags[y]
            if bx.label.n <= 2 or by.label.n <= 2:
                return e
            kx = classify_kind(bx.label)
            ky = classify_kind(by.label)
            if kx.tag == CLIQUE and ky.tag == CLIQUE:
                return e
            if kx.tag == STAR and ky.tag == STAR:
                x_center = bx.markers[e] == kx.center
                y_center = by.markers[e] == ky.center
                if x_center != y_center:
                    return e
        return None

    def reduce(self) -> None:
        while True:
            e = self._mergeable_edge()
            if e is None:
                return
            x, y = self.edge_ends[e]
            for bid in (x, y):
                bag = self.bags[bid]
                if bag.label.n == 2 and len(bag.markers) == 2:
                    if not bag.label.has_edge(0, 1):
                        raise InvariantViolation(
                            "2-vertex pass-through bag with nonadjacent markers"
                        )
            self.contract_edge(e)

    def freeze(self) -> GraphLabelledTree:
        bags = {}
        for bid in sorted(self.bags):
            mb = self.bags[bid]
            kind = classify_kind(mb.label)
            tag = PRIME if kind.tag == "other" else kind.tag
            bags[bid] = Bag(
                label=mb.label,
                kind=tag,
                ordinary=dict(mb.ordinary),
                markers=dict(mb.markers),
                star_center=kind.center,
            )
        tree_edges = {}
        for e, (x, y) in self.edge_ends.items():
            if x is None or y is None:
                raise TreeError(f"tree edge {e} misses an endpoint")
            tree_edges[e] = (min(x, y), max(x, y))
        ids = sorted(o for mb in self.bags.values() for o in mb.ordinary.values())
        t = GraphLabelledTree(bags=bags, tree_edges=tree_edges, vertex_ids=tuple(ids))
        check_tree(t)
        return t


# --- decomposition ----------------------------------------------------------


def decompose(
    g: Graph,
    budget: Optional[int] = None,
    split_order: str = "min",
) -> GraphLabelledTree:
    """Canonical split decomposition as a reduced graph-labelled tree.

    ``split_order`` picks which valid split the recursion uses ("min" or
    "max" mask scan); the reduced result must not depend on it, which the
    test suite exercises.
    """
    if g.n < 1:
        raise ValueError("decompose needs a nonempty graph")
    if not is_connected(g):
        raise ValueError("decompose expects a connected graph")
    if split_order not in ("min", "max"):
        raise ValueError("split_order must be 'min' or 'max'")
    builder = _Builder()
    _decompose_into(builder, g, tuple(range(g.n)), budget, split_order == "max")
    builder.reduce()
    return builder.freeze()


def _decompose_into(
    builder: _Builder, g: Graph, tokens: tuple, budget: Optional[int], reverse: bool
) -> None:
    split = None
    if classify_kind(g).tag == "other":
        split = find_split(g, budget, reverse)
    if split is None:
        builder.add_bag(g, tokens)
        return
    e = builder.new_edge()
    for side, part, frontier in (
        (0, split.a_mask, split.a1_mask),
        (1, split.b_mask, split.b1_mask),
    ):
        sub, kept = induced_subgraph(g, part)
        local_frontier = mask_of(i for i, v in enumerate(kept) if (frontier >> v) & 1)
        m = sub.n
        adj = [sub.adj[i] | (((local_frontier >> i) & 1) << m) for i in range(m)]
        adj.append(local_frontier)
        part_tokens = tuple(tokens[v] for v in kept) + (("m", e, side),)
        _decompose_into(builder, Graph(m + 1, tuple(adj)), part_tokens, budget, reverse)


# --- reconstruction and validation -------------------------------------------


def check_tree(t: GraphLabelledTree) -> None:
    """Structural validity; raises TreeError on violation."""
    seen_ids: dict[int, int] = {}
    for bid, bag in t.bags.items():
        locals_seen = set(bag.ordinary) | set(bag.markers.values())
        if len(locals_seen) != bag.label.n or len(bag.ordinary) + len(
            bag.markers
        ) != bag.label.n:
            raise TreeError(f"bag {bid}: markers and ordinary must partition label")
        for e in bag.markers:
            if e not in t.tree_edges:
                raise TreeError(f"bag {bid} references unknown edge {e}")
            if bid not in t.tree_edges[e]:
                raise TreeError(f"bag {bid} not an endpoint of its edge {e}")
        for orig in bag.ordinary.values():
            if orig in seen_ids:
                raise TreeError(f"original vertex {orig} appears in two bags")
            seen_ids[orig] = bid
    if tuple(sorted(seen_ids)) != t.vertex_ids:
        raise TreeError("vertex_ids do not match the bags' ordinary vertices")
    for e, (x, y) in t.tree_edges.items():
        if x == y or x not in t.bags or y not in t.bags:
            raise TreeError(f"edge {e} has bad endpoints")
        if e not in t.bags[x].markers or e not in t.bags[y].markers:
            raise TreeError(f"edge {e} lacks a marker binding at an endpoint")
    if len(t.tree_edges) != len(t.bags) - 1:
        raise TreeError("bag graph is not a tree (edge count)")
    if t.bags:
        first = next(iter(sorted(t.bags)))
        reach = {first}
        stack = [first]
        while stack:
            b = stack.pop()
            for _, other in t.bag_neighbors(b):
                if other not in reach:
                    reach.add(other)
                    stack.append(other)
        if len(reach) != len(t.bags):
            raise TreeError("bag graph is not connected")


def reconstruct(t: GraphLabelledTree) -> Graph:
    """Graph represented by the tree, on vertices compacted from the sorted
    original ids (identity when the ids are 0..n-1)."""
    check_tree(t)
    idx = {orig: i for i, orig in enumerate(t.vertex_ids)}
    n = len(t.vertex_ids)
    adj = [0] * n
    marker_edge = {
        bid: {l: e for e, l in bag.markers.items()} for bid, bag in t.bags.items()
    }
    for bid, bag in t.bags.items():
        for u_local, u_orig in bag.ordinary.items():
            src = idx[u_orig]
            stack = [(bid, bag.label.adj[u_local])]
            while stack:
                b2, active = stack.pop()
                bag2 = t.bags[b2]
                for w in bits(active):
                    if w in bag2.ordinary:
                        adj[src] |= 1 << idx[bag2.ordinary[w]]
                    else:
                        e = marker_edge[b2][w]
                        x, y = t.tree_edges[e]
                        other = y if x == b2 else x
                        m2 = t.bags[other].markers[e]
                        stack.append((other, t.bags[other].label.adj[m2]))
    g = Graph(n, tuple(adj))
    for v in range(n):
        if (g.adj[v] >> v) & 1:
            raise TreeError("accessibility produced a loop")
    return g


def validate_reduced(t: GraphLabelledTree) -> list[str]:
    """Reducedness violations; empty list iff the tree is reduced.

    The single-bag tree is exempt from the minimum-size rule: the whole
    graph is one bag there, and 1- or 2-vertex graphs are legitimate.
    """
    out = []
    multi = len(t.bags) > 1
    for bid in sorted(t.bags):
        bag = t.bags[bid]
        if multi and bag.kind in (CLIQUE, STAR) and bag.label.n < 3:
            out.append(f"bag {bid}: {bag.kind} bag with fewer than 3 vertices")
        if t.is_leaf_bag(bid):
            if bag.kind == CLIQUE and len(bag.ordinary) < 2:
                out.append(f"bag {bid}: clique leaf bag with <2 ordinary vertices")
            if bag.kind == STAR:
                (e,) = bag.markers
                if bag.markers[e] == bag.star_center and len(bag.ordinary) < 2:
                    out.append(
                        f"bag {bid}: center-attached star leaf bag with <2 "
                        "ordinary leaves"
                    )
    for e in sorted(t.tree_edges):
        x, y = t.tree_edges[e]
        bx, by = t.bags[x], t.bags[y]
        if bx.kind == CLIQUE and by.kind == CLIQUE:
            out.append(f"edge {e}: joins two clique bags (KK)")
        if bx.kind == STAR and by.kind == STAR:
            x_center = bx.markers[e] == bx.star_center
            y_center = by.markers[e] == by.star_center
            if x_center != y_center:
                out.append(f"edge {e}: star center joined to star leaf (SpSc)")
    return out


def summarize(t: GraphLabelledTree) -> DecompositionSummary:
    primes = t.prime_bag_ids()
    unique = primes[0] if len(primes) == 1 else None
    star_centered = False
    if unique is not None:
        star_centered = all(
            t.is_leaf_bag(b) and next(t.bag_neighbors(b))[1] == unique
            for b in t.bags
            if b != unique
        )
    return DecompositionSummary(
        prime_bag_count=len(primes),
        prime_labels=tuple(t.bags[b].label for b in primes),
        is_dh=not primes,
        unique_prime=unique,
        star_centered_at_prime=star_centered,
    )


def dump_tree(t: GraphLabelledTree) -> str:
    """Stable textual dump: one bag per line, then one line per tree edge."""
    lines = []
    for bid in sorted(t.bags):
        bag = t.bags[bid]
        edges = ",".join(f"{u}-{v}" for u, v in bag.label.edges())
        ordinary = ",".join(
            f"{l}:{bag.ordinary[l]}" for l in sorted(bag.ordinary)
        )
        markers = ",".join(f"{e}:{bag.markers[e]}" for e in sorted(bag.markers))
        line = (
            f"bag {bid} kind={bag.kind} n={bag.label.n} "
            f"edges={edges or '-'} ordinary={ordinary or '-'} "
            f"markers={markers or '-'}"
        )
        if bag.kind == STAR:
            line += f" center={bag.star_center}"
        lines.append(line)
    for e in sorted(t.tree_edges):
        x, y = t.tree_edges[e]
        lines.append(f"edge {e} {x}-{y}")
    return "\n".join(lines)


# --- leaf-bag structure -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class LeafBagClass:
    kind: str  # "clique" | "star_center_attached" | "star_leaf_attached"
    ordinary_leaves: Optional[int] = None


def classify_leaf_bag(t: GraphLabelledTree, bag_id: int) -> LeafBagClass:
    bag = t.bags[bag_id]
    if not t.is_leaf_bag(bag_id):
        raise ValueError(f"bag {bag_id} is not a leaf bag")
    if bag.kind == PRIME:
        raise ValueError(f"bag {bag_id} is prime")
    if bag.kind == CLIQUE:
        return LeafBagClass("clique")
    (e,) = bag.markers
    marker_local = bag.markers[e]
    if marker_local == bag.star_center:
        return LeafBagClass("star_center_attached", len(bag.ordinary))
    return LeafBagClass("star_leaf_attached", len(bag.ordinary) - 1)


def twin_from_leaf_bag(
    t: GraphLabelledTree, bag_id: int
) -> Optional[tuple[int, int]]:
    """Twin pair of the represented graph read off a non-prime leaf bag.

    Clique bags give true twins; center-attached stars and multi-leaf
    leaf-attached stars give false twins; a leaf-attached star with exactly
    one ordinary leaf gives none.  The returned pair is verified against the
    reconstructed graph.
    """
    bag = t.bags[bag_id]
    cls = classify_leaf_bag(t, bag_id)
    if cls.kind == "clique":
        cands = sorted(bag.ordinary.values())
        expected = "true"
    elif cls.kind == "star_center_attached":
        cands = sorted(bag.ordinary.values())
        expected = "false"
    else:
        cands = sorted(
            orig for l, orig in bag.ordinary.items() if l != bag.star_center
        )
        expected = "false"
        if len(cands) < 2:
            return None
    if len(cands) < 2:
        raise InvariantViolation(
            f"bag {bag_id} violates the reduced leaf-bag facts ({cls.kind})"
        )
    u, v = cands[0], cands[1]
    g = reconstruct(t)
    idx = {orig: i for i, orig in enumerate(t.vertex_ids)}
    iu, iv = idx[u], idx[v]
    adjacent = g.has_edge(iu, iv)
    nu = g.adj[iu] & ~(1 << iv)
    nv = g.adj[iv] & ~(1 << iu)
    ok = (adjacent and expected == "true" and nu == nv) or (
        not adjacent and expected == "false" and g.adj[iu] == g.adj[iv]
    )
    if not ok:
        raise InvariantViolation(
            f"bag {bag_id}: vertices {u},{v} are not {expected} twins"
        )
    return (u, v)


def pick_peelable_bag(t: GraphLabelledTree) -> Optional[int]:
    """A leaf bag at maximum distance >= 2 from the unique prime bag, or
    None when the tree is a star centered at the prime bag."""
    primes = t.prime_bag_ids()
    if len(primes) != 1:
        raise ValueError(f"expected exactly one prime bag, found {len(primes)}")
    root = primes[0]
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for b in frontier:
            for _, other in t.bag_neighbors(b):
                if other not in dist:
                    dist[other] = dist[b] + 1
                    nxt.append(other)
        frontier = nxt
    far = max(dist.values())
    if far <= 1:
        return None
    return min(b for b, d in dist.items() if d == far)


# --- peel and prime-core extraction ------------------------------------------


def _prime_label_keys(t: GraphLabelledTree) -> list:
    return sorted(
        kernels.canon_adj(bag.label.n, bag.label.adj)
        for bag in t.bags.values()
        if bag.kind == PRIME
    )


def peel(t: GraphLabelledTree, bag_id: int) -> tuple[GraphLabelledTree, GraphLabelledTree]:
    """Remove a far leaf-attached star bag with one ordinary leaf x and
    center c; return reduced trees for G-x and G-{x,c}.

    Both results are verified on the spot: they must reconstruct to the
    direct vertex deletions, stay reduced, and keep the prime labels.
    """
    bag = t.bags[bag_id]
    if not t.is_leaf_bag(bag_id):
        raise ValueError(f"bag {bag_id} is not a leaf bag")
    if bag.kind != STAR:
        raise ValueError(f"bag {bag_id} is not a star bag")
    (e,) = bag.markers
    if bag.markers[e] == bag.star_center:
        raise ValueError(f"bag {bag_id} is center-attached")
    leaves = [orig for l, orig in bag.ordinary.items() if l != bag.star_center]
    if len(leaves) != 1:
        raise ValueError(f"bag {bag_id} must have exactly one ordinary leaf")
    x_orig = leaves[0]
    c_orig = bag.ordinary[bag.star_center]
    x_edge, y_edge = t.tree_edges[e]
    nbr = y_edge if x_edge == bag_id else x_edge
    nbag = t.bags[nbr]
    if nbag.kind == PRIME:
        raise ValueError(f"neighbor bag {nbr} is prime")
    a_local = nbag.markers[e]
    if nbag.kind == STAR and a_local == nbag.star_center:
        raise InvariantViolation(
            "neighbor star attached through its center (forbidden SpSc edge)"
        )

    # (1) G - x: drop the bag, reinterpret the neighbor marker as c
    b1 = _Builder.from_tree(t)
    b1.delete_leaf_bag(bag_id, e)
    mb = b1.bags[nbr]
    del mb.markers[e]
    mb.ordinary[a_local] = c_orig
    b1.reduce()
    t1 = b1.freeze()

    # (2) G - {x, c}: drop the bag and delete the neighbor marker vertex
    b2 = _Builder.from_tree(t)
    b2.delete_leaf_bag(bag_id, e)
    mb = b2.bags[nbr]
    keep_mask = mb.label.full_mask & ~(1 << a_local)
    sub, kept = induced_subgraph(mb.label, keep_mask)
    remap = {old: i for i, old in enumerate(kept)}
    mb.label = sub
    mb.ordinary = {remap[l]: o for l, o in mb.ordinary.items()}
    mb.markers = {e2: remap[l] for e2, l in mb.markers.items() if e2 != e}
    b2.reduce()
    t2 = b2.freeze()

    _verify_peel(t, t1, t2, x_orig, c_orig)
    return t1, t2


def _verify_peel(t, t1, t2, x_orig, c_orig):
    g = reconstruct(t)
    idx = {orig: i for i, orig in enumerate(t.vertex_ids)}
    gx_expect, _ = induced_subgraph(g, g.full_mask & ~(1 << idx[x_orig]))
    gxc_expect, _ = induced_subgraph(
        g, g.full_mask & ~(1 << idx[x_orig]) & ~(1 << idx[c_orig])
    )
    if t1.vertex_ids != tuple(v for v in t.vertex_ids if v != x_orig):
        raise InvariantViolation("peel result (1) has wrong vertex ids")
    if t2.vertex_ids != tuple(
        v for v in t.vertex_ids if v not in (x_orig, c_orig)
    ):
        raise InvariantViolation("peel result (2) has wrong vertex ids")
    if reconstruct(t1) != gx_expect:
        raise InvariantViolation("peel result (1) does not reconstruct G-x")
    if reconstruct(t2) != gxc_expect:
        raise InvariantViolation("peel result (2) does not reconstruct G-{x,c}")
    for tt, name in ((t1, "G-x"), (t2, "G-{x,c}")):
        if validate_reduced(tt):
            raise InvariantViolation(f"peel result for {name} is not reduced")
        if _prime_label_keys(tt) != _prime_label_keys(t):
            raise InvariantViolation(f"peel result for {name} changed a prime label")


@dataclass(frozen=True, slots=True)
class PrimeCoreResult:
    """Either a twin pair of G, or the prime core Q plus the pendant plan."""

    twins: Optional[tuple[int, int]] = None
    core: Optional[Graph] = None
    core_ids: Optional[tuple[int, ...]] = None
    attach: tuple[int, ...] = ()


def extract_prime_core(t: GraphLabelledTree) -> PrimeCoreResult:
    """Resolve a star-centered-at-prime tree into twins or a pendant plan.

    Any attached bag yielding a twin pair short-circuits; otherwise every
    attached bag is a one-leaf star, G is Q plus pendants, and Q is verified
    isomorphic to the prime label with the pendant rebuild matching G.
    """
    primes = t.prime_bag_ids()
    if len(primes) != 1:
        raise ValueError(f"expected exactly one prime bag, found {len(primes)}")
    p = primes[0]
    others = [b for b in sorted(t.bags) if b != p]
    for b in others:
        if not t.is_leaf_bag(b) or next(t.bag_neighbors(b))[1] != p:
            raise ValueError("tree is not a star centered at the prime bag")
    for b in others:
        pair = twin_from_leaf_bag(t, b)
        if pair is not None:
            return PrimeCoreResult(twins=pair)
    pendants = []  # (x_orig, c_orig) per attached bag, ascending bag id
    for b in others:
        bag = t.bags[b]
        x = next(o for l, o in bag.ordinary.items() if l != bag.star_center)
        pendants.append((x, bag.ordinary[bag.star_center]))
    g = reconstruct(t)
    idx = {orig: i for i, orig in enumerate(t.vertex_ids)}
    core_origs = sorted(t.bags[p].ordinary.values())
    core_origs += [c for _, c in pendants]
    core_origs.sort()
    keep = mask_of(idx[o] for o in core_origs)
    core, kept = induced_subgraph(g, keep)
    core_ids = tuple(t.vertex_ids[i] for i in kept)
    pos = {orig: i for i, orig in enumerate(core_ids)}
    attach = tuple(pos[c] for _, c in pendants)
    _verify_prime_core(t, p, g, core, attach)
    return PrimeCoreResult(core=core, core_ids=core_ids, attach=attach)


def _verify_prime_core(t, p, g, core, attach):
    from .extremal import attach_pendants

    if not are_isomorphic(core, t.bags[p].label):
        raise InvariantViolation("extracted core is not isomorphic to the prime label")
    rebuilt = attach_pendants(core, list(attach))
    if not are_isomorphic(rebuilt, g):
        raise InvariantViolation("core plus pendants does not rebuild the graph")
