"""Pure Python kernels.

Every function here has a compiled twin in ``_core.pyx`` with identical
observable behaviour; parity is covered by tests.  Graphs enter as integer
bitmask adjacency rows.
"""

from __future__ import annotations

VALID = 1
PERFECT = 2


def check_level(n: int, adj: list[int], level: int, blue_mask: int) -> bool:
    """Total colouring check.

    Level 1 (valid): both colours used and every vertex has at most one
    opposite-coloured neighbour.  Level 2 (perfect): both colours used and
    every vertex has exactly one opposite-coloured neighbour.
    """
    full = (1 << n) - 1
    blue = blue_mask & full
    red = full & ~blue
    if red == 0 or blue == 0:
        return False
    for v in range(n):
        opp = adj[v] & (red if (blue >> v) & 1 else blue)
        c = opp.bit_count()
        if level == PERFECT:
            if c != 1:
                return False
        elif c > 1:
            return False
    return True


def scan_colourings(n: int, adj: list[int], level: int, start_b: int) -> int:
    """First counter ``b`` in ``[start_b, 2^(n-1))`` passing ``level``, or -1.

    Vertex 0 is red; vertex ``i >= 1`` is blue iff bit ``i - 1`` of ``b`` is set.
    """
    if n < 1:
        return -1
    total = 1 << (n - 1)
    b = start_b
    while b < total:
        if check_level(n, adj, level, b << 1):
            return b
        b += 1
    return -1


def enumerate_level_masked(
    n: int, adj: list[int], level: int, red_mask: int, blue_mask: int
) -> list[int]:
    """Blue-masks of all passing colourings with the given vertices pre-forced.

    Free vertices are assigned in increasing vertex order (the lowest free
    vertex is the least significant enumeration bit, value 1 = blue).
    """
    full = (1 << n) - 1
    free = [v for v in range(n) if not (red_mask | blue_mask) >> v & 1]
    out: list[int] = []
    for assign in range(1 << len(free)):
        blue = blue_mask
        for j, v in enumerate(free):
            if assign >> j & 1:
                blue |= 1 << v
        if check_level(n, adj, level, blue & full):
            out.append(blue & full)
    return out


def enumerate_level_grouped(
    n: int,
    adj: list[int],
    level: int,
    red_mask: int,
    blue_mask: int,
    groups: list[int],
) -> list[int]:
    """Blue-masks of passing colourings where each group is coloured wholesale.

    Enumeration bit ``j`` = 1 colours ``groups[j]`` blue, 0 colours it red.
    """
    full = (1 << n) - 1
    out: list[int] = []
    for assign in range(1 << len(groups)):
        blue = blue_mask
        for j, gm in enumerate(groups):
            if assign >> j & 1:
                blue |= gm
        if check_level(n, adj, level, blue & full):
            out.append(blue & full)
    return out


def induced_search(
    hn: int,
    hadj: list[int],
    pn: int,
    padj: list[int],
    order: list[int],
    constraints: list[tuple[int, int]],
    lexmin: bool,
) -> list[int] | None:
    """Backtracking induced-subgraph search.

    ``order`` is the assignment sequence over pattern vertices; candidates are
    tried in increasing host id, so with the identity order and no constraints
    the first embedding found has the lexicographically smallest image tuple.
    ``constraints`` are position pairs ``(a, b)`` (``a < b``) requiring the
    host image at position ``a`` to be smaller than the image at position
    ``b`` (sound symmetry breaking for existence queries).
    """
    del lexmin  # behaviour is fully determined by order/constraints
    full = (1 << hn) - 1
    cons_at: list[list[int]] = [[] for _ in range(pn)]
    for a, b in constraints:
        cons_at[b].append(a)
    image = [-1] * pn
    img_at = [0] * pn

    def candidates(pos: int, used: int) -> int:
        p = order[pos]
        c = full & ~used
        for q_pos in range(pos):
            q = order[q_pos]
            if padj[p] >> q & 1:
                c &= hadj[img_at[q_pos]]
            else:
                c &= ~hadj[img_at[q_pos]]
        for a_pos in cons_at[pos]:
            c &= ~((1 << (img_at[a_pos] + 1)) - 1)
        return c & full

    def dfs(pos: int, used: int) -> bool:
        if pos == pn:
            return True
        c = candidates(pos, used)
        while c:
            low = c & -c
            c ^= low
            v = low.bit_length() - 1
            image[order[pos]] = v
            img_at[pos] = v
            if dfs(pos + 1, used | low):
                return True
        return False

    return list(image) if dfs(0, 0) else None


def path_union_search(hn: int, hadj: list[int], lengths: list[int]) -> bool:
    """Existence of an induced subgraph that is a disjoint union of paths.

    ``lengths`` holds the path orders, sorted longest first.  Extending a path
    permanently forbids the previous endpoint's other neighbours, so the
    candidate mask shrinks by whole neighbourhoods; a reachable-component
    check prunes arms that cannot host the remaining stretch.  Symmetry is
    quotiented by forcing each path's start below its end and equal-length
    paths to start in increasing order.
    """
    total = sum(lengths)
    if total > hn:
        return False
    k = len(lengths)

    def comp_at_least(w: int, allowed: int, want: int) -> bool:
        # component of w in allowed + w, early exit once `want` vertices seen
        reach = 1 << w
        frontier = hadj[w] & allowed
        while frontier:
            reach |= frontier
            if reach.bit_count() >= want:
                return True
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= hadj[low.bit_length() - 1]
            frontier = nxt & allowed & ~reach
        return reach.bit_count() >= want

    def extend(copy: int, start: int, w: int, r: int, allowed: int, need: int) -> bool:
        if r == 0:
            if w < start:
                return False  # canonical direction: start < end
            return place(copy + 1, start, allowed & ~hadj[w], need)
        if allowed.bit_count() < need:
            return False
        if r >= 3 and not comp_at_least(w, allowed, r + 1):
            return False
        rest = allowed & ~hadj[w]
        c = hadj[w] & allowed
        while c:
            low = c & -c
            c ^= low
            if extend(copy, start, low.bit_length() - 1, r - 1, rest, need - 1):
                return True
        return False

    def place(copy: int, prev_start: int, allowed: int, need: int) -> bool:
        if copy == k:
            return True
        if allowed.bit_count() < need:
            return False
        length = lengths[copy]
        c = allowed
        if copy > 0 and lengths[copy - 1] == length:
            c &= ~((1 << (prev_start + 1)) - 1)  # equal lengths: starts increase
        while c:
            low = c & -c
            c ^= low
            s = low.bit_length() - 1
            if length == 1:
                if place(copy + 1, s, allowed & ~low & ~hadj[s], need - 1):
                    return True
            elif extend(copy, s, s, length - 1, allowed & ~low, need - 1):
                return True
        return False

    return place(0, -1, (1 << hn) - 1, total)


def canon_code(n: int, adj: list[int]) -> bytes:
    """Canonical adjacency code: the minimum, over all vertex orderings, of the
    row-wise adjacency words ``row[k] = sum(2^j : perm[k] ~ perm[j], j < k)``.

    Candidates at each position are tried by increasing row value (then id),
    with branch-and-bound pruning against the best complete code so far.
    Codes are equal exactly for isomorphic graphs of equal order.
    """
    if n == 0:
        return b"\x00"
    best: list[int] | None = None
    perm = [0] * n
    rows = [0] * n
    used = [False] * n

    def dfs(k: int, tight: bool) -> None:
        nonlocal best
        if k == n:
            if best is None or rows < best:
                best = rows.copy()
            return
        cand: list[tuple[int, int]] = []
        for v in range(n):
            if used[v]:
                continue
            row = 0
            av = adj[v]
            for j in range(k):
                if av >> perm[j] & 1:
                    row |= 1 << j
            cand.append((row, v))
        cand.sort()
        for row, v in cand:
            t2 = tight
            if best is not None and t2:
                if row > best[k]:
                    break  # candidates are sorted; the rest are no better
                if row < best[k]:
                    t2 = False
            used[v] = True
            perm[k] = v
            rows[k] = row
            dfs(k + 1, t2)
            used[v] = False

    dfs(0, True)
    assert best is not None
    out = bytearray([n])
    for row in best:
        out += int(row).to_bytes(4, "big")
    return bytes(out)
