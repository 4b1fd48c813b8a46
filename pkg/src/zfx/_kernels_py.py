"""Pure-Python implementations of the hot kernels.

Graphs enter as ``(n, adj)`` where ``adj`` is a sequence of n ints, bit j of
``adj[i]`` set iff ij is an edge.  The compiled backend in ``_kernels_cy``
implements the same five functions with identical semantics; ``zfx.kernels``
picks one at import time.
"""

from __future__ import annotations

BACKEND = "python"

# Forcing-status memo tables above this size cost more memory than they save.
MEMO_LIMIT = 20


def closure_mask(n: int, adj, s: int) -> int:
    """Zero forcing closure of the blue set ``s``.

    Work-queue propagation: a blue vertex with exactly one white neighbor
    forces it; after each force only the new vertex and its blue neighbors
    need re-examination.
    """
    full = (1 << n) - 1
    blue = s & full
    white = full ^ blue
    if not white:
        return blue
    stack = []
    b = blue
    while b:
        low = b & -b
        stack.append(low.bit_length() - 1)
        b ^= low
    while stack:
        v = stack.pop()
        w = adj[v] & white
        if w and not (w & (w - 1)):
            blue |= w
            white ^= w
            u = w.bit_length() - 1
            stack.append(u)
            nb = adj[u] & blue
            while nb:
                low = nb & -nb
                stack.append(low.bit_length() - 1)
                nb ^= low
    return blue


def profile_counts(n: int, adj) -> list:
    """Exact count of zero forcing sets per size, index k = 0..n.

    Enumerates subset masks in increasing numeric order (subsets precede
    supersets), so a known-forcing subset short-circuits the closure of each
    superset via the memo table.  Matches unpruned enumeration exactly.
    """
    if n == 0:
        return [1]
    full = (1 << n) - 1
    z = [0] * (n + 1)
    size = 1 << n
    memo = bytearray(size) if n <= MEMO_LIMIT else None
    for m in range(1, size):
        forcing = False
        if memo is not None:
            mm = m
            while mm:
                low = mm & -mm
                if memo[m ^ low]:
                    forcing = True
                    break
                mm ^= low
        if not forcing:
            forcing = closure_mask(n, adj, m) == full
        if forcing:
            if memo is not None:
                memo[m] = 1
            z[bin(m).count("1")] += 1
    return z


def canon_adj(n: int, adj) -> tuple:
    """Canonically relabeled adjacency rows.

    The relabeling minimizes the row-major upper-triangle bit string of the
    adjacency matrix over all n! vertex orders.  The search fixes positions
    left to right, keeping only candidates whose next row is minimal given
    the cell structure committed so far; ties branch, with twin candidates
    collapsed (swapping twins is an automorphism).  Exactness is checked
    against the literal factorial minimum in the test suite.
    """
    if n <= 1:
        return tuple(adj)

    best_acc = None
    best_order = None
    total_bits = n * (n - 1) // 2

    def dfs(cells, acc, bits_done, order):
        nonlocal best_acc, best_order
        if not cells:
            if best_acc is None or acc < best_acc:
                best_acc = acc
                best_order = list(order)
            return
        i = len(order)
        rem = n - 1 - i
        c0 = cells[0]
        # minimal achievable row for each candidate in the first cell
        best_pat = None
        tied = []
        for u in c0:
            au = adj[u]
            pat = 0
            rest0 = len(c0) - 1
            ones0 = 0
            for v in c0:
                if v != u and (au >> v) & 1:
                    ones0 += 1
            pat = (pat << rest0) | ((1 << ones0) - 1)
            for cell in cells[1:]:
                ones = 0
                for v in cell:
                    if (au >> v) & 1:
                        ones += 1
                pat = (pat << len(cell)) | ((1 << ones) - 1)
            if best_pat is None or pat < best_pat:
                best_pat = pat
                tied = [u]
            elif pat == best_pat:
                tied.append(u)
        acc2 = (acc << rem) | best_pat
        bits2 = bits_done + rem
        if best_acc is not None and acc2 > (best_acc >> (total_bits - bits2)):
            return
        # drop tied candidates that are twins of an earlier one
        unplaced = 0
        for cell in cells:
            for v in cell:
                unplaced |= 1 << v
        survivors = []
        for u in tied:
            dup = False
            for w in survivors:
                mu = adj[u] & unplaced & ~(1 << w) & ~(1 << u)
                mw = adj[w] & unplaced & ~(1 << u) & ~(1 << w)
                if mu == mw:
                    dup = True
                    break
            if not dup:
                survivors.append(u)
        for u in survivors:
            au = adj[u]
            new_cells = []
            first = [v for v in c0 if v != u]
            for cell in [first] + cells[1:]:
                non = [v for v in cell if not (au >> v) & 1]
                yes = [v for v in cell if (au >> v) & 1]
                if non:
                    new_cells.append(non)
                if yes:
                    new_cells.append(yes)
            order.append(u)
            dfs(new_cells, acc2, bits2, order)
            order.pop()

    dfs([list(range(n))], 0, 0, [])
    pos = {v: i for i, v in enumerate(best_order)}
    out = []
    for p in range(n):
        row = 0
        av = adj[best_order[p]]
        while av:
            low = av & -av
            row |= 1 << pos[low.bit_length() - 1]
            av ^= low
        out.append(row)
    return tuple(out)


def _bfs_dist(n, adj, src, within):
    """Distance list from src inside the induced mask (-1 = unreachable)."""
    dist = [-1] * n
    dist[src] = 0
    seen = 1 << src
    frontier = 1 << src
    d = 0
    while frontier:
        d += 1
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & within & ~seen
        seen |= frontier
        f = frontier
        while f:
            low = f & -f
            dist[low.bit_length() - 1] = d
            f ^= low
    return dist


def metric_dh(n: int, adj) -> bool:
    """True iff every connected induced subgraph preserves distances.

    Assumes the input graph is connected.  Runs all-pairs BFS once, then for
    every connected induced vertex subset BFS again and compares; exits on
    the first stretched pair.
    """
    if n <= 2:
        return True
    full = (1 << n) - 1
    gdist = [_bfs_dist(n, adj, u, full) for u in range(n)]
    for mask in range(1, full + 1):
        if bin(mask).count("1") < 3:
            continue
        start = (mask & -mask).bit_length() - 1
        comp = _component(n, adj, start, mask)
        if comp != mask:
            continue
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            sub = _bfs_dist(n, adj, u, mask)
            gu = gdist[u]
            chk = mask
            while chk:
                lw = chk & -chk
                v = lw.bit_length() - 1
                chk ^= lw
                if sub[v] != gu[v]:
                    return False
    return True


def _component(n, adj, start, within):
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def find_split_mask(n: int, adj, reverse: bool = False) -> int:
    """First valid split of a connected graph, as the A-side mask.

    Scans A-side masks containing vertex 0 in increasing numeric order
    (decreasing when ``reverse``); returns 0 when no split exists.  A
    bipartition is a split iff every A-vertex with cross edges sees the same
    nonempty cross neighborhood.
    """
    if n < 4:
        return 0
    full = (1 << n) - 1
    lo, hi = 1, 1 << (n - 1)
    rng = range(hi - 1, lo - 1, -1) if reverse else range(lo, hi)
    for m in rng:
        a_mask = (m << 1) | 1
        pa = bin(a_mask).count("1")
        if pa < 2 or pa > n - 2:
            continue
        b_mask = full ^ a_mask
        b1 = 0
        ok = True
        am = a_mask
        while am:
            low = am & -am
            am ^= low
            cross = adj[low.bit_length() - 1] & b_mask
            if cross:
                if not b1:
                    b1 = cross
                elif cross != b1:
                    ok = False
                    break
        if ok and b1:
            return a_mask
    return 0
