# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``_kernels_py``.

Same functions, same outputs; graphs arrive as (n, adj-row ints) with
n <= 64 so every mask fits a 64-bit word.  The canonical search packs its
encoding into one u64, capping it at n = 11 (the dispatcher falls back to
the big-int Python search above that).
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)

ctypedef unsigned long long u64

BACKEND = "cython"
MEMO_LIMIT = 20

cdef int CANON_MAX_N = 11


cdef u64 _closure(int n, u64* adj, u64 s):
    cdef u64 full = (<u64>1 << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef u64 blue = s & full
    cdef u64 white = full ^ blue
    cdef u64 w, nb, low
    cdef int stack[4480]
    cdef int top = 0
    cdef int v, u
    if white == 0:
        return blue
    nb = blue
    while nb:
        low = nb & (~nb + 1)
        stack[top] = __builtin_ctzll(low)
        top += 1
        nb ^= low
    while top > 0:
        top -= 1
        v = stack[top]
        w = adj[v] & white
        if w != 0 and (w & (w - 1)) == 0:
            blue |= w
            white ^= w
            u = __builtin_ctzll(w)
            stack[top] = u
            top += 1
            nb = adj[u] & blue
            while nb:
                low = nb & (~nb + 1)
                stack[top] = __builtin_ctzll(low)
                top += 1
                nb ^= low
    return blue


def closure_mask(int n, adj, s):
    cdef u64 cadj[64]
    cdef int i
    for i in range(n):
        cadj[i] = <u64>adj[i]
    return <object>_closure(n, cadj, <u64>s)


def profile_counts(int n, adj):
    cdef u64 cadj[64]
    cdef int i, k
    cdef u64 m, mm, low, size, full
    cdef long long zc[65]
    cdef unsigned char* memo = NULL
    cdef bint forcing
    if n == 0:
        return [1]
    if n > 62:
        raise OverflowError("profile_counts supports n <= 62")
    for i in range(n):
        cadj[i] = <u64>adj[i]
    for k in range(n + 1):
        zc[k] = 0
    full = (<u64>1 << n) - 1
    size = <u64>1 << n
    if n <= MEMO_LIMIT:
        memo = <unsigned char*>malloc(size)
        if memo == NULL:
            raise MemoryError()
        memset(memo, 0, size)
    try:
        m = 1
        while m < size:
            forcing = False
            if memo != NULL:
                mm = m
                while mm:
                    low = mm & (~mm + 1)
                    if memo[m ^ low]:
                        forcing = True
                        break
                    mm ^= low
            if not forcing:
                forcing = _closure(n, cadj, m) == full
            if forcing:
                if memo != NULL:
                    memo[m] = 1
                zc[__builtin_popcountll(m)] += 1
            m += 1
    finally:
        if memo != NULL:
            free(memo)
    return [zc[k] for k in range(n + 1)]


# --- canonical form -----------------------------------------------------------

cdef struct _Canon:
    int n
    int total_bits
    u64 adj[64]
    u64 best_acc
    bint best_set
    int best_order[64]


cdef void _canon_dfs(_Canon* st, int* verts, int* starts, int ncells,
                     u64 acc, int bits_done, int* order, int depth):
    cdef int n = st.n
    cdef int i, j, c, u, w, size, ones, nsurv, ntied, rem
    cdef u64 pat, best_pat, acc2, au, mu, mw, unplaced
    cdef int tied[64]
    cdef int surv[64]
    cdef int nverts[64]
    cdef int nstarts[66]
    cdef int pos, cstart, cend, nc
    cdef bint dup, have_pat

    if ncells == 0:
        if not st.best_set or acc < st.best_acc:
            st.best_acc = acc
            st.best_set = True
            for i in range(n):
                st.best_order[i] = order[i]
        return

    rem = n - 1 - depth
    best_pat = 0
    have_pat = False
    ntied = 0
    for i in range(starts[0], starts[1]):
        u = verts[i]
        au = st.adj[u]
        pat = 0
        # remainder of the first cell
        size = starts[1] - starts[0] - 1
        ones = 0
        for j in range(starts[0], starts[1]):
            w = verts[j]
            if w != u and (au >> w) & 1:
                ones += 1
        pat = (pat << size) | (((<u64>1) << ones) - 1)
        for c in range(1, ncells):
            size = starts[c + 1] - starts[c]
            ones = 0
            for j in range(starts[c], starts[c + 1]):
                if (au >> verts[j]) & 1:
                    ones += 1
            pat = (pat << size) | (((<u64>1) << ones) - 1)
        if not have_pat or pat < best_pat:
            best_pat = pat
            have_pat = True
            ntied = 0
            tied[ntied] = u
            ntied += 1
        elif pat == best_pat:
            tied[ntied] = u
            ntied += 1

    acc2 = (acc << rem) | best_pat
    if st.best_set and acc2 > (st.best_acc >> (st.total_bits - bits_done - rem)):
        return

    unplaced = 0
    for i in range(starts[0], starts[ncells]):
        unplaced |= (<u64>1) << verts[i]
    nsurv = 0
    for i in range(ntied):
        u = tied[i]
        dup = False
        for j in range(nsurv):
            w = surv[j]
            mu = st.adj[u] & unplaced & ~((<u64>1) << w) & ~((<u64>1) << u)
            mw = st.adj[w] & unplaced & ~((<u64>1) << u) & ~((<u64>1) << w)
            if mu == mw:
                dup = True
                break
        if not dup:
            surv[nsurv] = u
            nsurv += 1

    for i in range(nsurv):
        u = surv[i]
        au = st.adj[u]
        pos = 0
        nc = 0
        nstarts[0] = 0
        for c in range(ncells):
            cstart = starts[c]
            cend = starts[c + 1]
            # non-neighbors first, then neighbors, cell 0 skipping u
            size = pos
            for j in range(cstart, cend):
                w = verts[j]
                if w != u and not (au >> w) & 1:
                    nverts[pos] = w
                    pos += 1
            if pos > size:
                nc += 1
                nstarts[nc] = pos
            size = pos
            for j in range(cstart, cend):
                w = verts[j]
                if w != u and (au >> w) & 1:
                    nverts[pos] = w
                    pos += 1
            if pos > size:
                nc += 1
                nstarts[nc] = pos
        order[depth] = u
        _canon_dfs(st, nverts, nstarts, nc, acc2, bits_done + rem, order, depth + 1)


def canon_adj(int n, adj):
    cdef _Canon st
    cdef int verts[64]
    cdef int starts[66]
    cdef int order[64]
    cdef int i, p
    cdef u64 av, low
    if n <= 1:
        return tuple(adj)
    if n > CANON_MAX_N:
        raise OverflowError(f"compiled canon_adj supports n <= {CANON_MAX_N}")
    st.n = n
    st.total_bits = n * (n - 1) // 2
    st.best_set = False
    st.best_acc = 0
    for i in range(n):
        st.adj[i] = <u64>adj[i]
        verts[i] = i
    starts[0] = 0
    starts[1] = n
    _canon_dfs(&st, verts, starts, 1, 0, 0, order, 0)
    cdef list pos = [0] * n
    for p in range(n):
        pos[st.best_order[p]] = p
    out = []
    for p in range(n):
        av = st.adj[st.best_order[p]]
        row = 0
        while av:
            low = av & (~av + 1)
            row |= 1 << (<object>pos[__builtin_ctzll(low)])
            av ^= low
        out.append(row)
    return tuple(out)


# --- metric oracle -------------------------------------------------------------

cdef void _bfs_all(int n, u64* adj, u64 within, int src, signed char* dist):
    cdef int i, d
    cdef u64 seen, frontier, nxt, f, low
    for i in range(n):
        dist[i] = -1
    dist[src] = 0
    seen = (<u64>1) << src
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        f = frontier
        while f:
            low = f & (~f + 1)
            nxt |= adj[__builtin_ctzll(low)]
            f ^= low
        frontier = nxt & within & ~seen
        seen |= frontier
        f = frontier
        while f:
            low = f & (~f + 1)
            dist[__builtin_ctzll(low)] = <signed char>d
            f ^= low


cdef u64 _component_c(int n, u64* adj, int start, u64 within):
    cdef u64 comp = (<u64>1) << start
    cdef u64 frontier = comp
    cdef u64 nxt, f, low
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & (~f + 1)
            nxt |= adj[__builtin_ctzll(low)]
            f ^= low
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def metric_dh(int n, adj):
    cdef u64 cadj[64]
    cdef signed char gdist[64][64]
    cdef signed char sub[64]
    cdef int i, u, v
    cdef u64 full, mask, m, low, chk, lw
    if n <= 2:
        return True
    if n > 24:
        raise OverflowError("metric_dh supports n <= 24")
    for i in range(n):
        cadj[i] = <u64>adj[i]
    full = ((<u64>1) << n) - 1
    for u in range(n):
        _bfs_all(n, cadj, full, u, gdist[u])
    mask = 1
    while mask <= full:
        if __builtin_popcountll(mask) >= 3:
            u = __builtin_ctzll(mask & (~mask + 1))
            if _component_c(n, cadj, u, mask) == mask:
                m = mask
                while m:
                    low = m & (~m + 1)
                    u = __builtin_ctzll(low)
                    m ^= low
                    _bfs_all(n, cadj, mask, u, sub)
                    chk = mask
                    while chk:
                        lw = chk & (~chk + 1)
                        v = __builtin_ctzll(lw)
                        chk ^= lw
                        if sub[v] != gdist[u][v]:
                            return False
        mask += 1
    return True


def find_split_mask(int n, adj, bint reverse=False):
    cdef u64 cadj[64]
    cdef int i, pa
    cdef u64 full, m, a_mask, b_mask, b1, cross, am, low
    cdef bint ok
    if n < 4:
        return 0
    for i in range(n):
        cadj[i] = <u64>adj[i]
    full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    m = ((<u64>1) << (n - 1)) - 1 if reverse else 1
    while 1 <= m < ((<u64>1) << (n - 1)):
        a_mask = (m << 1) | 1
        pa = __builtin_popcountll(a_mask)
        if 2 <= pa <= n - 2:
            b_mask = full ^ a_mask
            b1 = 0
            ok = True
            am = a_mask
            while am:
                low = am & (~am + 1)
                am ^= low
                cross = cadj[__builtin_ctzll(low)] & b_mask
                if cross:
                    if b1 == 0:
                        b1 = cross
                    elif cross != b1:
                        ok = False
                        break
            if ok and b1 != 0:
                return <object>a_mask
        if reverse:
            m -= 1
        else:
            m += 1
    return 0
