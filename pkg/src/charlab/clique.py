"""Exact clique number of Paley graphs.

The Paley graph on F_p (p = 1 mod 4) joins a and b when a - b is a nonzero
quadratic residue.  It is vertex- and edge-transitive: the affine maps
x -> ux + v with u a nonzero residue are automorphisms, and they carry any
edge onto (0, 1).  Some maximum clique therefore contains {0, 1}, so

    omega(p) = 2 + omega(subgraph on the common neighbours of 0 and 1)

which shrinks the search to about p/4 vertices before branch and bound
starts.  The solver uses bitset adjacency, degeneracy vertex ordering, a
greedy seed clique, and greedy-colouring upper bounds; `clique_number_exhaustive`
is the independent reference that enumerates every clique.

Paley graphs are self-complementary, so the clique number equals the
independence number; no separate solver is needed for the latter.
"""

from __future__ import annotations

import numpy as np

from .errors import BadResidueClass, NotPrime, TooLarge
from .field import is_prime

DEFAULT_CLIQUE_CAP = 10_000


def _validate(p: int, cap: int):
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if p % 4 != 1:
        raise BadResidueClass(f"Paley graph needs p = 1 mod 4, got p={p}")
    if p > cap:
        raise TooLarge(f"p={p} exceeds clique cap {cap}")


def _residue_flags(p: int) -> list[bool]:
    qr = [False] * p
    for x in range(1, p):
        qr[x * x % p] = True
    return qr


def paley_clique(p: int, cap: int = DEFAULT_CLIQUE_CAP) -> int:
    """Exact clique number of the Paley graph on F_p, p = 1 mod 4.

    Any ordered edge (a, b) of a clique maps onto (0, 1) under the
    automorphism x -> (x - a) / (b - a) (the multiplier is a residue because
    b - a is), so the search may be restricted to cliques that are
    lexicographically minimal among all such normalizations.  The dedicated
    kernel enumerates increasing partial cliques above {0, 1} and prunes any
    whose orbit dips below its own third element; the generic solver is the
    fallback and the cross-check.
    """
    _validate(p, cap)
    qr = np.zeros(p, dtype=bool)
    x = np.arange(1, p, dtype=np.int64)
    qr[(x * x) % p] = True
    # common neighbours of the fixed edge (0, 1)
    D = np.array([x for x in range(2, p) if qr[x] and qr[(x - 1) % p]], dtype=np.int64)
    if D.size == 0:
        return 2
    mat = qr[(D[:, None] - D[None, :]) % p]
    np.fill_diagonal(mat, False)
    if _PALEY_KERNEL is not None:
        n = D.size
        seed = _greedy_seed(mat)
        packed = np.packbits(mat, axis=1, bitorder="little")
        words = (n + 63) // 64
        adj = np.zeros((n, words), dtype=np.uint64)
        adj.view(np.uint8).reshape(n, words * 8)[:, : packed.shape[1]] = packed
        from .fpsets import inverse_table

        inv = inverse_table(p)
        return 2 + int(_PALEY_KERNEL(adj, n, words, D, p, inv, seed))
    return 2 + max_clique(mat)


def max_clique(mat: np.ndarray) -> int:
    """Exact clique number of the graph given by a boolean adjacency matrix."""
    n = mat.shape[0]
    if n == 0:
        return 0
    order = _degeneracy_order(mat)[::-1]
    perm = np.array(order)
    rmat = mat[np.ix_(perm, perm)]
    seed = _greedy_seed(rmat)
    if _KERNEL is not None:
        packed = np.packbits(rmat, axis=1, bitorder="little")
        words = (n + 63) // 64
        adj = np.zeros((n, words), dtype=np.uint64)
        adj_bytes = adj.view(np.uint8).reshape(n, words * 8)
        adj_bytes[:, : packed.shape[1]] = packed
        return int(_KERNEL(adj, n, words, seed))
    return _max_clique_bitset(_bitset_rows(rmat), seed)


def _greedy_seed(mat: np.ndarray) -> int:
    """Seed clique via randomized multi-start greedy plus (1,2)-swap ascent.

    Branch and bound only pays for proving optimality once the incumbent is
    tight, so a near-optimal deterministic seed is the cheapest speedup.
    """
    n = mat.shape[0]
    deg = mat.sum(axis=1)
    rng = np.random.default_rng(0x5EED)
    best_clique: list[int] = []
    starts = list(np.argsort(-deg, kind="stable")[: min(n, 24)])
    for trial in range(24 + min(2 * n, 140)):
        clique = []
        cand = np.ones(n, dtype=bool)
        if trial < len(starts):
            v = int(starts[trial])
        else:
            v = int(rng.integers(0, n))
        while True:
            clique.append(v)
            cand &= mat[v]
            live = np.flatnonzero(cand)
            if live.size == 0:
                break
            w = deg[live].astype(np.float64)
            if trial >= len(starts):
                w = w * (1.0 + 0.25 * rng.random(live.size))
            v = int(live[np.argmax(w)])
        clique = _swap_ascent(mat, clique)
        if len(clique) > len(best_clique):
            best_clique = clique
    return len(best_clique)


def _swap_ascent(mat: np.ndarray, clique: list[int]) -> list[int]:
    """Grow a maximal clique by (1,2)-swaps: drop one vertex, add two."""
    n = mat.shape[0]
    clique = list(clique)
    improved = True
    while improved:
        improved = False
        for drop in list(clique):
            rest = [u for u in clique if u != drop]
            cand = np.ones(n, dtype=bool)
            for u in rest:
                cand &= mat[u]
            cand[rest] = False
            live = np.flatnonzero(cand)
            if live.size < 2:
                continue
            sub = mat[np.ix_(live, live)]
            pair = np.argwhere(sub)
            if pair.size:
                i, j = pair[0]
                clique = rest + [int(live[i]), int(live[j])]
                improved = True
                break
    return clique


def _bitset_rows(mat: np.ndarray) -> list[int]:
    """Pack each boolean adjacency row into one Python integer bitset."""
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def clique_number_exhaustive(p: int, cap: int = 100) -> int:
    """Reference search enumerating every clique of the full Paley graph."""
    _validate(p, cap)
    qr = _residue_flags(p)
    adj = [0] * p
    for a in range(p):
        for b in range(a + 1, p):
            if qr[(a - b) % p]:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    best = 0

    def rec(cand: int, size: int):
        nonlocal best
        if size > best:
            best = size
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            rec(cand & adj[u], size + 1)  # only vertices above u: each clique once

    rec((1 << p) - 1, 0)
    return best


def _degeneracy_order(mat: np.ndarray) -> list[int]:
    """Vertices in degeneracy order (smallest remaining degree removed first)."""
    n = mat.shape[0]
    deg = mat.sum(axis=1).astype(np.int64)
    dead = np.zeros(n, dtype=bool)
    order = []
    for _ in range(n):
        masked = np.where(dead, n + 1, deg)
        v = int(masked.argmin())  # argmin breaks ties at the smallest index
        order.append(v)
        dead[v] = True
        deg -= mat[v]
    return order


def _max_clique_bitset(adj: list[int], seed: int) -> int:
    """Branch and bound with greedy-colouring bounds over Python-int bitsets.

    Fallback route when the jitted kernel is unavailable; same algorithm.
    """
    n = len(adj)
    best = seed

    def expand(cand: int, size: int):
        nonlocal best
        # greedy colouring: vertices of one colour class are pairwise nonadjacent,
        # so size + colour(v) bounds any clique through v and the earlier classes
        ordered: list[tuple[int, int]] = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                ordered.append((v, colour))
                rest ^= low
                avail = avail & ~adj[v] & rest
        for v, c in reversed(ordered):
            if size + c <= best:
                return  # every remaining vertex has colour <= c
            sub = cand & adj[v]
            if sub:
                expand(sub, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


# ---------------------------------------------------------------------------
# jitted kernel: same branch and bound over packed uint64 bitboards
# ---------------------------------------------------------------------------

_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DB_TABLE = np.zeros(64, dtype=np.int32)
for _i in range(64):
    _DB_TABLE[((1 << _i) * 0x03F79D71B4CB0A89 % (1 << 64)) >> 58] = _i


def _build_kernel():
    try:
        from numba import njit
    except ImportError:
        return None

    db_table = _DB_TABLE
    debruijn = _DEBRUIJN
    one = np.uint64(1)
    zero = np.uint64(0)
    full = np.uint64(0xFFFFFFFFFFFFFFFF)

    @njit(cache=True)
    def renumber(adj, w, classes, v, kmin):
        # try to park v in a class below kmin by moving its unique neighbour
        # w1 out of that class into another sub-kmin class (Tomita's re-number)
        for k1 in range(1, kmin):
            w1 = -1
            multiple = False
            for j in range(w):
                x = classes[k1, j] & adj[v, j]
                while x != zero:
                    if w1 >= 0:
                        multiple = True
                        break
                    low = x & (zero - x)
                    w1 = (j << 6) + db_table[np.uint64(low * debruijn) >> np.uint64(58)]
                    x ^= low
                if multiple:
                    break
            if multiple:
                continue
            if w1 < 0:
                # class k1 has no neighbour of v at all: drop v straight in
                classes[k1, v >> 6] |= one << np.uint64(v & 63)
                return True
            for k2 in range(k1 + 1, kmin):
                clash = False
                for j in range(w):
                    if classes[k2, j] & adj[w1, j] != zero:
                        clash = True
                        break
                if not clash:
                    classes[k1, w1 >> 6] &= ~(one << np.uint64(w1 & 63))
                    classes[k1, v >> 6] |= one << np.uint64(v & 63)
                    classes[k2, w1 >> 6] |= one << np.uint64(w1 & 63)
                    return True
        return False

    @njit(cache=True)
    def number_sort(adj, n, w, cand, out_v, out_c, rest, avail, classes, kmin):
        # greedy colouring into independent classes, with re-numbering of
        # vertices that would land on a colour >= kmin; emit sorted by colour
        for j in range(w):
            rest[j] = cand[j]
        color = 0
        while True:
            start = -1
            for j in range(w):
                if rest[j] != zero:
                    start = j
                    break
            if start < 0:
                break
            color += 1
            for j in range(w):
                classes[color, j] = zero
                avail[j] = rest[j]
            while True:
                wj = -1
                for j in range(start, w):
                    if avail[j] != zero:
                        wj = j
                        break
                if wj < 0:
                    break
                word = avail[wj]
                low = word & (zero - word)
                b = db_table[np.uint64(low * debruijn) >> np.uint64(58)]
                v = (wj << 6) + b
                bit = one << np.uint64(b)
                rest[wj] &= ~bit
                avail[wj] &= ~bit
                if color >= kmin and kmin > 1 and renumber(adj, w, classes, v, kmin):
                    continue  # v sits below kmin now; class membership updated
                classes[color, v >> 6] |= one << np.uint64(v & 63)
                for j in range(w):
                    avail[j] = avail[j] & ~adj[v, j] & rest[j]
        cnt = 0
        for c in range(1, color + 1):
            for j in range(w):
                x = classes[c, j]
                while x != zero:
                    low = x & (zero - x)
                    x ^= low
                    out_v[cnt] = (j << 6) + db_table[np.uint64(low * debruijn) >> np.uint64(58)]
                    out_c[cnt] = c
                    cnt += 1
        return cnt

    @njit(cache=True)
    def kernel(adj, n, w, seed):
        best = seed
        cand = np.zeros((n + 2, w), dtype=np.uint64)
        ordv = np.zeros((n + 2, n), dtype=np.int32)
        ordc = np.zeros((n + 2, n), dtype=np.int32)
        idx = np.zeros(n + 2, dtype=np.int32)
        rest = np.zeros(w, dtype=np.uint64)
        avail = np.zeros(w, dtype=np.uint64)
        classes = np.zeros((n + 2, w), dtype=np.uint64)
        for j in range(w):
            cand[0, j] = full
        extra = w * 64 - n
        if extra > 0:
            cand[0, w - 1] = full >> np.uint64(extra)
        idx[0] = number_sort(adj, n, w, cand[0], ordv[0], ordc[0], rest, avail, classes, best + 1) - 1
        level = 0
        while level >= 0:
            i = idx[level]
            if i < 0:
                level -= 1
                continue
            idx[level] = i - 1
            v = ordv[level, i]
            c = ordc[level, i]
            if level + c <= best:
                level -= 1  # colours only shrink leftwards: the rest prune too
                continue
            cand[level, v >> 6] &= ~(one << np.uint64(v & 63))
            empty = True
            for j in range(w):
                x = cand[level, j] & adj[v, j]
                cand[level + 1, j] = x
                if x != zero:
                    empty = False
            if empty:
                if level + 1 > best:
                    best = level + 1
                continue
            kmin = best - level  # colours <= kmin at the child level all prune
            idx[level + 1] = (
                number_sort(adj, n, w, cand[level + 1], ordv[level + 1], ordc[level + 1],
                            rest, avail, classes, kmin) - 1
            )
            level += 1
        return best

    return kernel


def _build_paley_kernel():
    try:
        from numba import njit
    except ImportError:
        return None

    db_table = _DB_TABLE
    debruijn = _DEBRUIJN
    one = np.uint64(1)
    zero = np.uint64(0)
    full = np.uint64(0xFFFFFFFFFFFFFFFF)

    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    h01 = np.uint64(0x0101010101010101)

    @njit(cache=True)
    def popcount64(x):
        x = x - ((x >> np.uint64(1)) & m1)
        x = (x & m2) + ((x >> np.uint64(2)) & m2)
        x = (x + (x >> np.uint64(4))) & m4
        return np.int64((x * h01) >> np.uint64(56))

    @njit(cache=True)
    def msb64(x):
        r = 0
        if x >> np.uint64(32):
            r += 32
            x >>= np.uint64(32)
        if x >> np.uint64(16):
            r += 16
            x >>= np.uint64(16)
        if x >> np.uint64(8):
            r += 8
            x >>= np.uint64(8)
        if x >> np.uint64(4):
            r += 4
            x >>= np.uint64(4)
        if x >> np.uint64(2):
            r += 2
            x >>= np.uint64(2)
        if x >> np.uint64(1):
            r += 1
        return r

    @njit(cache=True)
    def color_desc(adj, w, cand, rest, avail, col):
        # greedy colouring scanning vertices from the highest index down, so
        # every suffix {u >= v} of cand is properly coloured by its own colours
        colors = 0
        for j in range(w):
            rest[j] = cand[j]
        while True:
            top = -1
            for j in range(w - 1, -1, -1):
                if rest[j] != zero:
                    top = j
                    break
            if top < 0:
                return colors
            colors += 1
            for j in range(w):
                avail[j] = rest[j]
            while True:
                wj = -1
                for j in range(top, -1, -1):
                    if avail[j] != zero:
                        wj = j
                        break
                if wj < 0:
                    break
                b = msb64(avail[wj])
                v = (wj << 6) + b
                col[v] = colors
                rest[wj] &= ~(one << np.uint64(b))
                for j in range(w):
                    avail[j] = avail[j] & ~adj[v, j] & rest[j]

    @njit(cache=True)
    def extends_canonically(vals, m, p, inv):
        # vals[0..m-1] = sorted clique elements, vals[0] = 0, vals[1] = 1;
        # vals[m-1] is the newest.  Reject if adding it lets some
        # normalization (a, b) -> (0, 1) send an element below vals[2]: the
        # orbit then contains a lex-smaller sorted form.  Constraints not
        # involving the newest element were verified at the ancestors.
        z = vals[2]
        x = vals[m - 1]
        # the newest element's image under every established normalization
        for ia in range(m - 1):
            a = vals[ia]
            for ib in range(m - 1):
                if ia == ib:
                    continue
                b = vals[ib]
                if a == 0 and b == 1:
                    continue  # the identity normalization
                if ((x - a) % p) * inv[(b - a) % p] % p < z:
                    return False
        # normalizations that send the newest element itself to 0 or to 1
        for io in range(m - 1):
            o = vals[io]
            u_x0 = inv[(o - x) % p]  # (x, o) -> (0, 1)
            u_x1 = inv[(x - o) % p]  # (o, x) -> (0, 1)
            for ic in range(m - 1):
                if ic == io:
                    continue
                c = vals[ic]
                if ((c - x) % p) * u_x0 % p < z:
                    return False
                if ((c - o) % p) * u_x1 % p < z:
                    return False
        return True

    @njit(cache=True)
    def suffix_bound(todo_row, w, col, M_row):
        # M_row[v] = max colour over candidates >= v: any clique drawn from
        # that suffix fits inside its colour classes
        running = 0
        for j in range(w - 1, -1, -1):
            word = todo_row[j]
            while word != zero:
                b = msb64(word)
                word &= ~(one << np.uint64(b))
                v = (j << 6) + b
                if col[v] > running:
                    running = col[v]
                M_row[v] = running

    @njit(cache=True)
    def paley_kernel(adj, n, w, D, p, inv, seed):
        # Enumerates partial cliques in ascending element order: the todo set
        # of a level holds exactly the unprocessed candidates, all above every
        # chosen element, so clearing bits low-to-high realizes the
        # increasing-prefix discipline without losing any set.
        best = seed  # clique size within the reduced graph
        todo = np.zeros((n + 2, w), dtype=np.uint64)
        M = np.zeros((n + 2, n), dtype=np.int16)
        rest = np.zeros(w, dtype=np.uint64)
        avail = np.zeros(w, dtype=np.uint64)
        col = np.zeros(n, dtype=np.int16)
        vals = np.zeros(n + 3, dtype=np.int64)
        vals[0] = 0
        vals[1] = 1
        for j in range(w):
            todo[0, j] = full
        extra = w * 64 - n
        if extra > 0:
            todo[0, w - 1] = full >> np.uint64(extra)
        color_desc(adj, w, todo[0], rest, avail, col)
        suffix_bound(todo[0], w, col, M[0])
        level = 0
        while level >= 0:
            wj = -1
            for j in range(w):
                if todo[level, j] != zero:
                    wj = j
                    break
            if wj < 0:
                level -= 1
                continue
            word = todo[level, wj]
            low = word & (zero - word)
            v = (wj << 6) + db_table[np.uint64(low * debruijn) >> np.uint64(58)]
            if level + M[level, v] <= best:
                level -= 1  # the whole remaining suffix of this level prunes
                continue
            todo[level, wj] = word ^ low
            vals[level + 2] = D[v]
            if not extends_canonically(vals, level + 3, p, inv):
                continue  # a lex-smaller copy of everything below exists elsewhere
            cnt = 0
            for j in range(w):
                x = todo[level, j] & adj[v, j]
                todo[level + 1, j] = x
                if x != zero:
                    cnt += popcount64(x)
            if cnt == 0:
                if level + 1 > best:
                    best = level + 1
                continue
            if level + 1 + cnt <= best:
                continue  # even taking every candidate cannot beat the incumbent
            maxc = color_desc(adj, w, todo[level + 1], rest, avail, col)
            if level + 1 + maxc <= best:
                continue
            suffix_bound(todo[level + 1], w, col, M[level + 1])
            level += 1
        return best

    return paley_kernel


_KERNEL = _build_kernel()
_PALEY_KERNEL = _build_paley_kernel()
