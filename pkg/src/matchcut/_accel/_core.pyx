# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.

Strict mirrors of the pure Python kernels in ``_pure`` (and, for the rule
engine, of ``propagation.run_rules_raw``): identical answers, identical
deterministic choices, identical refusal witnesses and firing counts.  Size
caps (enforced by the ``_accel`` wrappers): 63 vertices for colouring scans
and the rule engine, 128 host / 30 pattern vertices for the induced search,
16 vertices for canonical codes.
"""

from libc.stdlib cimport free, malloc, qsort, realloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64

cdef inline int _pc(u64 m) nogil:
    return __builtin_popcountll(m)

cdef inline int _ctz(u64 m) nogil:
    return __builtin_ctzll(m)

cdef inline int _pc128(u128 m) nogil:
    return __builtin_popcountll(<u64>m) + __builtin_popcountll(<u64>(m >> 64))

cdef inline int _ctz128(u128 m) nogil:
    cdef u64 lo = <u64>m
    if lo:
        return __builtin_ctzll(lo)
    return 64 + __builtin_ctzll(<u64>(m >> 64))


# -- total-colouring checks ---------------------------------------------------------

VALID = 1
PERFECT = 2


cdef inline bint _check_level_c(int n, u64* adj, int level, u64 blue, u64 full) nogil:
    cdef u64 red = full & ~blue
    cdef u64 opp
    cdef int v, c
    if red == 0 or blue == 0:
        return False
    for v in range(n):
        if (blue >> v) & 1:
            opp = adj[v] & red
        else:
            opp = adj[v] & blue
        c = _pc(opp)
        if level == 2:
            if c != 1:
                return False
        elif c > 1:
            return False
    return True


cdef int _load_adj(object masks, int n, u64* adj) except -1:
    cdef int i
    for i in range(n):
        adj[i] = <u64>masks[i]
    return 0


def check_level(int n, masks, int level, object blue_mask):
    """Total colouring check; level 1 = valid, level 2 = perfect."""
    cdef u64 adj[64]
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>(-1)
    _load_adj(masks, n, adj)
    return bool(_check_level_c(n, adj, level, (<u64>blue_mask) & full, full))


def scan_colourings(int n, masks, int level, object start_b):
    """First counter ``b`` in ``[start_b, 2^(n-1))`` passing ``level``, or -1.

    Vertex 0 is red; vertex ``i >= 1`` is blue iff bit ``i - 1`` of ``b`` is set.
    """
    if n < 1:
        return -1
    cdef u64 adj[64]
    _load_adj(masks, n, adj)
    cdef u64 full = ((<u64>1) << n) - 1
    cdef u64 total = (<u64>1) << (n - 1)
    cdef u64 b = <u64>start_b
    with nogil:
        while b < total:
            if _check_level_c(n, adj, level, b << 1, full):
                break
            b += 1
    if b < total:
        return b
    return -1


def enumerate_level_masked(int n, masks, int level, object red_mask, object blue_mask):
    """Blue-masks of all passing colourings with the given vertices pre-forced.

    Free vertices are assigned in increasing vertex order (the lowest free
    vertex is the least significant enumeration bit, value 1 = blue).
    """
    cdef u64 adj[64]
    cdef int free_v[64]
    cdef int nfree = 0, v, j
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>(-1)
    cdef u64 red = <u64>red_mask
    cdef u64 blue0 = <u64>blue_mask
    cdef u64 forced = red | blue0
    cdef u64 assign, blue
    _load_adj(masks, n, adj)
    for v in range(n):
        if not (forced >> v) & 1:
            free_v[nfree] = v
            nfree += 1
    out = []
    for assign in range((<u64>1) << nfree):
        blue = blue0
        for j in range(nfree):
            if (assign >> j) & 1:
                blue |= (<u64>1) << free_v[j]
        if _check_level_c(n, adj, level, blue & full, full):
            out.append(blue & full)
    return out


def enumerate_level_grouped(
    int n, masks, int level, object red_mask, object blue_mask, groups
):
    """Blue-masks of passing colourings where each group is coloured wholesale.

    Enumeration bit ``j`` = 1 colours ``groups[j]`` blue, 0 colours it red.
    """
    cdef u64 adj[64]
    cdef u64 grp[64]
    cdef int ngroups = len(groups), j
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>(-1)
    cdef u64 blue0 = <u64>blue_mask
    cdef u64 assign, blue
    _load_adj(masks, n, adj)
    for j in range(ngroups):
        grp[j] = <u64>groups[j]
    out = []
    for assign in range((<u64>1) << ngroups):
        blue = blue0
        for j in range(ngroups):
            if (assign >> j) & 1:
                blue |= grp[j]
        if _check_level_c(n, adj, level, blue & full, full):
            out.append(blue & full)
    return out


# -- induced-subgraph search --------------------------------------------------------

cdef u128 _obj_to_u128(object x):
    cdef u64 lo = <u64>(x & 0xFFFFFFFFFFFFFFFF)
    cdef u64 hi = <u64>((x >> 64) & 0xFFFFFFFFFFFFFFFF)
    return ((<u128>hi) << 64) | (<u128>lo)


cdef struct _ISearch:
    int hn
    int pn
    u128 full
    u128 hadj[128]
    u64 padj[30]
    int order[30]
    int ncons[30]
    int cons[30][30]
    int img_at[30]
    int image[30]


cdef bint _isearch_dfs(_ISearch* S, int pos, u128 used) nogil:
    cdef int p, q_pos, q, a_pos, k, v
    cdef u128 c, low, below
    if pos == S.pn:
        return True
    p = S.order[pos]
    c = S.full & ~used
    for q_pos in range(pos):
        q = S.order[q_pos]
        if (S.padj[p] >> q) & 1:
            c &= S.hadj[S.img_at[q_pos]]
        else:
            c &= ~S.hadj[S.img_at[q_pos]]
    for k in range(S.ncons[pos]):
        a_pos = S.cons[pos][k]
        if S.img_at[a_pos] + 1 >= 128:
            c = 0
        else:
            below = ((<u128>1) << (S.img_at[a_pos] + 1)) - 1
            c &= ~below
    c &= S.full
    while c:
        low = c & (~c + 1)
        c ^= low
        v = _ctz128(low)
        S.image[p] = v
        S.img_at[pos] = v
        if _isearch_dfs(S, pos + 1, used | low):
            return True
    return False


def induced_search(int hn, hadj, int pn, padj, order, constraints, lexmin):
    """Backtracking induced-subgraph search; mirrors the pure kernel.

    ``constraints`` are position pairs ``(a, b)`` requiring the host image at
    position ``a`` to be smaller than the image at position ``b``.
    """
    cdef _ISearch S
    cdef int i, a, b
    cdef bint found
    S.hn = hn
    S.pn = pn
    if hn >= 128:
        S.full = ~(<u128>0)
    else:
        S.full = ((<u128>1) << hn) - 1
    for i in range(hn):
        S.hadj[i] = _obj_to_u128(hadj[i])
    for i in range(pn):
        S.padj[i] = <u64>padj[i]
        S.order[i] = order[i]
        S.ncons[i] = 0
        S.image[i] = -1
    for a, b in constraints:
        S.cons[b][S.ncons[b]] = a
        S.ncons[b] += 1
    with nogil:
        found = _isearch_dfs(&S, 0, <u128>0)
    if not found:
        return None
    return [S.image[i] for i in range(pn)]


# -- induced path-union search -------------------------------------------------------

cdef struct _PUnion:
    int hn
    int k
    u128 hadj[128]
    int lengths[30]


cdef bint _pu_comp_at_least(u128* hadj, int w, u128 allowed, int want) nogil:
    # component of w in allowed + w, early exit once `want` vertices seen
    cdef u128 reach = (<u128>1) << w
    cdef u128 frontier = hadj[w] & allowed
    cdef u128 nxt, f, low
    while frontier:
        reach |= frontier
        if _pc128(reach) >= want:
            return True
        nxt = <u128>0
        f = frontier
        while f:
            low = f & (~f + 1)
            f ^= low
            nxt |= hadj[_ctz128(low)]
        frontier = nxt & allowed & ~reach
    return _pc128(reach) >= want


cdef bint _pu_dfs(_PUnion* S, int copy, int start, int w, int r,
                  u128 allowed, int need) nogil:
    # r > 0: extending the current copy from endpoint w, r vertices to go.
    # r == 0: copy complete (w < 0 when there is no just-finished copy);
    # check the canonical direction, then start the next copy.
    cdef u128 c, low, below, rest
    cdef int s, length
    if r == 0:
        if w >= 0:
            if w < start:
                return False  # canonical direction: start < end
            allowed &= ~S.hadj[w]
            copy += 1
        if copy == S.k:
            return True
        if _pc128(allowed) < need:
            return False
        length = S.lengths[copy]
        c = allowed
        if copy > 0 and S.lengths[copy - 1] == length:
            # equal lengths: starts increase
            if start + 1 >= 128:
                c = <u128>0
            else:
                below = ((<u128>1) << (start + 1)) - 1
                c &= ~below
        while c:
            low = c & (~c + 1)
            c ^= low
            s = _ctz128(low)
            if length == 1:
                if _pu_dfs(S, copy + 1, s, -1, 0,
                           allowed & ~low & ~S.hadj[s], need - 1):
                    return True
            elif _pu_dfs(S, copy, s, s, length - 1, allowed & ~low, need - 1):
                return True
        return False
    if _pc128(allowed) < need:
        return False
    if r >= 3 and not _pu_comp_at_least(S.hadj, w, allowed, r + 1):
        return False
    rest = allowed & ~S.hadj[w]
    c = S.hadj[w] & allowed
    while c:
        low = c & (~c + 1)
        c ^= low
        if _pu_dfs(S, copy, start, _ctz128(low), r - 1, rest, need - 1):
            return True
    return False


# Multi-path patterns enumerate every induced copy of each required path order
# once, as (vertex mask, closed neighbourhood mask) pairs.  Two induced copies
# may coexist in the pattern exactly when mask & closure == 0 (a symmetric
# test), so compatibility with every chosen copy aggregates into one OR-ed
# closure mask and candidate index arrays can be filtered level by level.

DEF _PU_MAX_COPIES = 4194304

cdef struct _MC:
    u128 mask
    u128 clo


cdef struct _PUVec:
    _MC* a
    size_t n
    size_t cap
    bint overflow


cdef bint _puv_push(_PUVec* V, u128 m, u128 c) noexcept nogil:
    cdef _MC* na
    cdef size_t nc
    if V.n == V.cap:
        nc = V.cap * 2 if V.cap else 1024
        if nc > _PU_MAX_COPIES:
            V.overflow = True
            return False
        na = <_MC*>realloc(V.a, nc * sizeof(_MC))
        if na == NULL:
            V.overflow = True
            return False
        V.a = na
        V.cap = nc
    V.a[V.n].mask = m
    V.a[V.n].clo = c
    V.n += 1
    return True


cdef void _pu_collect(u128* hadj, int start, int w, int r, u128 used, u128 clo,
                      u128 allowed, _PUVec* V) noexcept nogil:
    # enumerate induced paths extending `used` from endpoint w, r vertices to
    # go; canonical direction start < end lists each vertex set exactly once
    cdef u128 c, low, rest
    cdef int v
    if V.overflow:
        return
    if r == 0:
        if w > start:
            _puv_push(V, used, clo)
        return
    if r >= 3 and not _pu_comp_at_least(hadj, w, allowed, r + 1):
        return
    rest = allowed & ~hadj[w]
    c = hadj[w] & allowed
    while c:
        low = c & (~c + 1)
        c ^= low
        v = _ctz128(low)
        _pu_collect(hadj, start, v, r - 1, used | low, clo | hadj[v], rest, V)


cdef int _mc_cmp(const void* pa, const void* pb) noexcept nogil:
    # descending closure popcount, then ascending mask: a deterministic total
    # order that front-loads the blockiest copies
    cdef _MC* a = <_MC*>pa
    cdef _MC* b = <_MC*>pb
    cdef int ca = _pc128(a.clo)
    cdef int cb = _pc128(b.clo)
    if ca != cb:
        return cb - ca
    if a.mask < b.mask:
        return -1
    if a.mask > b.mask:
        return 1
    return 0


cdef struct _PUMulti:
    int nlevels
    int group_of[30]     # level -> group id
    int glen[30]         # group id -> path order
    _PUVec lists[30]     # group id -> enumerated copies
    int* buf[30]         # level -> filtered candidate index buffer
    int tail_need[31]    # vertices required by levels t..end


cdef bint _pum_dfs(_PUMulti* M, int t, int* parent, size_t pn, size_t frm,
                   u128 aggclo, u128 avail) noexcept nogil:
    cdef int g, cand
    cdef size_t p, m
    cdef _PUVec* L
    cdef _MC* e
    cdef bint fresh
    cdef int* buf
    if t == M.nlevels:
        return True
    if _pc128(avail) < M.tail_need[t]:
        return False
    g = M.group_of[t]
    fresh = t == 0 or M.group_of[t - 1] != g
    L = &M.lists[g]
    if fresh:
        parent = NULL
        pn = L.n
        frm = 0
    if t == M.nlevels - 1:
        # deepest level: first compatible candidate wins, no buffer fill
        for p in range(frm, pn):
            cand = parent[p] if parent != NULL else <int>p
            if L.a[cand].mask & aggclo == 0:
                return True
        return False
    buf = M.buf[t]
    m = 0
    for p in range(frm, pn):
        cand = parent[p] if parent != NULL else <int>p
        if L.a[cand].mask & aggclo == 0:
            buf[m] = cand
            m += 1
    for p in range(m):
        e = &L.a[buf[p]]
        if _pum_dfs(M, t + 1, buf, m, p + 1, aggclo | e.clo, avail & ~e.clo):
            return True
    return False


cdef bint _pu_multi(u128* hadj, int hn, int* lengths, int k, u128 full,
                    int total, bint* fellback) noexcept nogil:
    cdef _PUMulti M
    cdef int i, g, ng = 0, L, s, t
    cdef u128 bit
    cdef bint ok, found
    for i in range(30):
        M.lists[i].a = NULL
        M.lists[i].n = 0
        M.lists[i].cap = 0
        M.lists[i].overflow = False
        M.buf[i] = NULL
    # group identical lengths (input is sorted descending)
    M.nlevels = k
    for i in range(k):
        if i > 0 and lengths[i] == lengths[i - 1]:
            M.group_of[i] = ng - 1
        else:
            M.glen[ng] = lengths[i]
            M.group_of[i] = ng
            ng += 1
    M.tail_need[k] = 0
    for i in range(k - 1, -1, -1):
        M.tail_need[i] = M.tail_need[i + 1] + lengths[i]
    ok = True
    for g in range(ng):
        L = M.glen[g]
        if L == 1:
            for s in range(hn):
                bit = (<u128>1) << s
                if not _puv_push(&M.lists[g], bit, bit | hadj[s]):
                    break
        else:
            for s in range(hn):
                bit = (<u128>1) << s
                _pu_collect(hadj, s, s, L - 1, bit, bit | hadj[s],
                            full & ~bit, &M.lists[g])
                if M.lists[g].overflow:
                    break
        if M.lists[g].overflow:
            ok = False
            break
        qsort(M.lists[g].a, M.lists[g].n, sizeof(_MC), _mc_cmp)
    if ok:
        for t in range(k - 1):
            # deepest level scans without a buffer; earlier levels need one
            M.buf[t] = <int*>malloc(M.lists[M.group_of[t]].n * sizeof(int) + 1)
            if M.buf[t] == NULL:
                ok = False
                break
    found = False
    if ok:
        fellback[0] = False
        found = _pum_dfs(&M, 0, NULL, 0, 0, <u128>0, full)
    else:
        fellback[0] = True
    for g in range(ng):
        if M.lists[g].a != NULL:
            free(M.lists[g].a)
    for t in range(30):
        if M.buf[t] != NULL:
            free(M.buf[t])
    return found


def path_union_search(int hn, hadj, lengths):
    """Existence of an induced disjoint union of paths; mirrors the pure kernel.

    ``lengths`` holds the path orders, sorted longest first.
    """
    cdef _PUnion S
    cdef int i, total = 0
    cdef u128 full
    cdef bint found, fellback
    S.hn = hn
    S.k = len(lengths)
    for i in range(S.k):
        S.lengths[i] = lengths[i]
        total += lengths[i]
    if total > hn:
        return False
    for i in range(hn):
        S.hadj[i] = _obj_to_u128(hadj[i])
    if hn >= 128:
        full = ~(<u128>0)
    else:
        full = ((<u128>1) << hn) - 1
    fellback = False
    with nogil:
        if S.k >= 2:
            found = _pu_multi(S.hadj, hn, S.lengths, S.k, full, total, &fellback)
        if S.k < 2 or fellback:
            found = _pu_dfs(&S, 0, -1, -1, 0, full, total)
    return bool(found)


# -- canonical codes ----------------------------------------------------------------

cdef struct _Canon:
    int n
    u64 adj[16]
    int perm[16]
    int rows[16]
    bint used[16]
    int best[16]
    bint has_best


cdef void _canon_dfs(_Canon* C, int k, bint tight) nogil:
    cdef int cand_row[16]
    cdef int cand_v[16]
    cdef int ncand = 0, i, j, v, row, t
    cdef bint t2, better
    cdef u64 av
    if k == C.n:
        if not C.has_best:
            better = True
        else:
            better = False
            for i in range(C.n):
                if C.rows[i] != C.best[i]:
                    better = C.rows[i] < C.best[i]
                    break
        if better:
            for i in range(C.n):
                C.best[i] = C.rows[i]
            C.has_best = True
        return
    for v in range(C.n):
        if C.used[v]:
            continue
        row = 0
        av = C.adj[v]
        for j in range(k):
            if (av >> C.perm[j]) & 1:
                row |= 1 << j
        # insertion sort by (row, v); v ascends already, so strict row compare
        i = ncand
        while i > 0 and cand_row[i - 1] > row:
            cand_row[i] = cand_row[i - 1]
            cand_v[i] = cand_v[i - 1]
            i -= 1
        cand_row[i] = row
        cand_v[i] = v
        ncand += 1
    for i in range(ncand):
        row = cand_row[i]
        v = cand_v[i]
        t2 = tight
        if C.has_best and t2:
            if row > C.best[k]:
                break  # candidates are sorted; the rest are no better
            if row < C.best[k]:
                t2 = False
        C.used[v] = True
        C.perm[k] = v
        C.rows[k] = row
        _canon_dfs(C, k + 1, t2)
        C.used[v] = False


def canon_code(int n, masks):
    """Canonical adjacency code; equal codes exactly for isomorphic graphs."""
    if n == 0:
        return b"\x00"
    cdef _Canon C
    cdef int i
    C.n = n
    C.has_best = False
    for i in range(n):
        C.adj[i] = <u64>masks[i]
        C.used[i] = False
    with nogil:
        _canon_dfs(&C, 0, True)
    out = bytearray([n])
    for i in range(n):
        out += int(C.best[i]).to_bytes(4, "big")
    return bytes(out)


# -- the rule engine ----------------------------------------------------------------

cdef struct _Engine:
    int n
    u64 adj[64]
    unsigned char* st
    # refusal report
    int rule_id
    int w1
    int w2


cdef int _find_apply(_Engine* E, int upto) nogil:
    """One scan from R1; returns 0 fixpoint, 1 refusal, 2 fired (changes applied)."""
    cdef int n = E.n
    cdef u64 z = 0, xs = 0, s = 0, yt = 0, t = 0, x, y, xy
    cdef u64 m, mv, mm, wy, wx, adj_x, adj_y, anchors, nb, cm, target
    cdef u64 comp_arr[64]
    cdef u64 comp_of[64]
    cdef u64 remaining, startb, comp, frontier, nxt, f2, b
    cdef int ncomps = 0
    cdef int v, w, u, i, code, c_xs, c_yt, pend_w
    cdef bint ok

    for v in range(n):
        b = (<u64>1) << v
        code = E.st[v]
        if code == 0:
            z |= b
        elif code == 1:
            xs |= b
        elif code == 2:
            s |= b
        elif code == 3:
            yt |= b
        else:
            t |= b
    x = xs | s
    y = yt | t
    xy = x | y

    # R1: an undecided vertex sees both cores, or a core and two of the other
    # side's fringe, or two of each fringe.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        mv = E.adj[v]
        c_xs = _pc(mv & xs)
        c_yt = _pc(mv & yt)
        if (mv & s) and (mv & t):
            E.rule_id = 1; E.w1 = v; E.w2 = -1
            return 1
        if (mv & s) and c_yt >= 2:
            E.rule_id = 1; E.w1 = v; E.w2 = -1
            return 1
        if (mv & t) and c_xs >= 2:
            E.rule_id = 1; E.w1 = v; E.w2 = -1
            return 1
        if c_xs >= 2 and c_yt >= 2:
            E.rule_id = 1; E.w1 = v; E.w2 = -1
            return 1
    if upto < 2:
        return 0

    # R2: an undecided vertex is pulled onto a side.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        mv = E.adj[v]
        if (mv & s) or _pc(mv & xs) >= 2:
            wy = mv & y
            if wy:
                E.st[v] = 2
                E.st[_ctz(wy)] = 4
            else:
                E.st[v] = 1
            return 2
        if (mv & t) or _pc(mv & yt) >= 2:
            wx = mv & x
            if wx:
                E.st[v] = 4
                E.st[_ctz(wx)] = 2
            else:
                E.st[v] = 3
            return 2
    if upto < 3:
        return 0

    # R3: a fringe vertex adjacent to the other side joins the core.
    for v in range(n):
        code = E.st[v]
        if code == 1 and E.adj[v] & y:
            E.st[v] = 2
            E.st[_ctz(E.adj[v] & y)] = 4
            return 2
        if code == 3 and E.adj[v] & x:
            E.st[v] = 4
            E.st[_ctz(E.adj[v] & x)] = 2
            return 2
    if upto < 4:
        return 0

    # R4: a side vertex with no outside neighbour, or two on the other side.
    for v in range(n):
        code = E.st[v]
        if code == 1 or code == 2:
            if E.adj[v] & ~x == 0 or _pc(E.adj[v] & y) >= 2:
                E.rule_id = 4; E.w1 = v; E.w2 = -1
                return 1
        elif code == 3 or code == 4:
            if E.adj[v] & ~y == 0 or _pc(E.adj[v] & x) >= 2:
                E.rule_id = 4; E.w1 = v; E.w2 = -1
                return 1
    if upto < 5:
        return 0

    # R5: an undecided vertex with an undecided pendant neighbour.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        pend_w = -1
        mm = E.adj[v] & z
        while mm:
            w = _ctz(mm)
            mm &= mm - 1
            if E.adj[w] == (<u64>1) << v:
                pend_w = w
                break
        if pend_w < 0:
            continue
        adj_x = E.adj[v] & x
        adj_y = E.adj[v] & y
        if adj_x and adj_y:
            E.rule_id = 5; E.w1 = v; E.w2 = pend_w
            return 1
        if adj_x:
            E.st[v] = 2
            E.st[pend_w] = 4
            return 2
        if adj_y:
            E.st[v] = 4
            E.st[pend_w] = 2
            return 2
    if upto < 6:
        return 0

    # Components of the undecided area, ordered by minimum vertex.
    remaining = z
    while remaining:
        startb = remaining & (~remaining + 1)
        comp = startb
        frontier = startb
        while frontier:
            nxt = 0
            f2 = frontier
            while f2:
                u = _ctz(f2)
                f2 &= f2 - 1
                nxt |= E.adj[u]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        comp_arr[ncomps] = comp
        ncomps += 1
        remaining &= ~comp
    for i in range(ncomps):
        mm = comp_arr[i]
        while mm:
            v = _ctz(mm)
            mm &= mm - 1
            comp_of[v] = comp_arr[i]

    # R6: a 4-cycle component with a one-sided vertex.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        cm = comp_of[v]
        if _pc(cm) != 4:
            continue
        ok = True
        mm = cm
        while mm:
            w = _ctz(mm)
            mm &= mm - 1
            if _pc(E.adj[w] & cm) != 2:
                ok = False
                break
        if not ok:
            continue
        adj_x = E.adj[v] & x
        adj_y = E.adj[v] & y
        if adj_x and not adj_y:
            ok = False
            mm = cm
            while mm:
                w = _ctz(mm)
                mm &= mm - 1
                if E.adj[w] & x == 0:
                    ok = True
                    break
            if ok:
                E.st[v] = 1
                return 2
        if adj_y and not adj_x:
            ok = False
            mm = cm
            while mm:
                w = _ctz(mm)
                mm &= mm - 1
                if E.adj[w] & y == 0:
                    ok = True
                    break
            if ok:
                E.st[v] = 3
                return 2
    if upto < 7:
        return 0

    # R7: a component-dominating vertex with a singly anchored co-member.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        cm = comp_of[v]
        if cm & ~(E.adj[v] | ((<u64>1) << v)):
            continue
        mm = cm & ~((<u64>1) << v)
        while mm:
            w = _ctz(mm)
            mm &= mm - 1
            anchors = E.adj[w] & xy
            if _pc(anchors) == 1:
                if anchors & x:
                    E.st[v] = 3
                else:
                    E.st[v] = 1
                return 2
    if upto < 8:
        return 0

    # R8: an undecided vertex with no decided neighbour.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        if E.adj[v] & xy == 0:
            E.rule_id = 8; E.w1 = v; E.w2 = -1
            return 1
    if upto < 9:
        return 0

    # R9: a singly anchored undecided vertex drags its component across.
    m = z
    while m:
        v = _ctz(m)
        m &= m - 1
        anchors = E.adj[v] & xy
        if _pc(anchors) != 1:
            continue
        cm = comp_of[v]
        nb = 0
        mm = cm
        while mm:
            u = _ctz(mm)
            mm &= mm - 1
            nb |= E.adj[u]
        if anchors & x:
            mm = cm
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
            mm = nb & x
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
        else:
            mm = cm
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
            mm = nb & y
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
        return 2
    if upto < 10:
        return 0

    # R10: a fringe vertex with two neighbours in one undecided component.
    for v in range(n):
        code = E.st[v]
        if code != 1 and code != 3:
            continue
        mv = E.adj[v] & z
        if _pc(mv) < 2:
            continue
        target = 0
        for i in range(ncomps):
            if _pc(mv & comp_arr[i]) >= 2:
                target = comp_arr[i]
                break
        if not target:
            continue
        nb = 0
        mm = target
        while mm:
            u = _ctz(mm)
            mm &= mm - 1
            nb |= E.adj[u]
        if code == 1:
            mm = target
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
            mm = nb & yt
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
        else:
            mm = target
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
            mm = nb & xs
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
        return 2
    if upto < 11:
        return 0

    # R11: a fringe vertex with exactly one undecided neighbour pushes that
    # neighbour's component to the opposite side.
    for v in range(n):
        code = E.st[v]
        if code != 1 and code != 3:
            continue
        mv = E.adj[v] & z
        if _pc(mv) != 1:
            continue
        cm = comp_of[_ctz(mv)]
        nb = 0
        mm = cm
        while mm:
            u = _ctz(mm)
            mm &= mm - 1
            nb |= E.adj[u]
        if code == 1 and E.adj[v] & y == 0:
            mm = cm
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
            mm = nb & xs
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
            return 2
        if code == 3 and E.adj[v] & x == 0:
            mm = cm
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 2
            mm = nb & yt
            while mm:
                u = _ctz(mm)
                mm &= mm - 1
                E.st[u] = 4
            return 2
    return 0


_REFUSAL_LABELS = {1: "R1", 4: "R4", 5: "R5", 8: "R8"}


def run_rules(masks, int n, status, int upto):
    """Run the rules to refusal or fixpoint, mutating ``status`` in place.

    Returns ``(refused, refusing_rule, refusing_vertices, firings)``.
    """
    if n > 63:
        raise ValueError("compiled rule engine supports at most 63 vertices")
    cdef _Engine E
    cdef unsigned char[::1] st_view
    cdef int firings = 0
    cdef int res
    E.n = n
    _load_adj(masks, n, E.adj)
    if n == 0:
        return (False, None, (), 0)
    st_view = status
    E.st = &st_view[0]
    while True:
        with nogil:
            res = _find_apply(&E, upto)
        if res == 0:
            return (False, None, (), firings)
        if res == 1:
            if E.w2 < 0:
                verts = (E.w1,)
            else:
                verts = (E.w1, E.w2)
            return (True, _REFUSAL_LABELS[E.rule_id], verts, firings)
        firings += 1
        if firings > 2 * n:
            raise AssertionError("rule engine exceeded its firing bound")
