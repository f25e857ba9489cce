"""Independent brute-force references for testing.

Nothing here touches the kernel, the backends, or numpy: plain lists, sets
and sweeps, kept deliberately naive so agreement with the engine means
something.  Orderings match the engine's canonical one (documented per
function) so bijections are index-preserving.
"""

from __future__ import annotations

import itertools


# --- words ---

def enumerate_words(letters, n: int) -> list[tuple]:
    """All words of length ≤ n, graded-lex: by length, then letter order.

    Matches stage-n class order: the minimal representative of a word pads
    with the unit atom (index 0) in front, so shorter words sort first.
    """
    letters = list(letters)
    out = [()]
    layer = [()]
    for _ in range(n):
        layer = [w + (a,) for w in layer for a in letters]
        out.extend(layer)
    return out


def word_count(k: int, n: int) -> int:
    """Geometric series: Σ_{m≤n} k^m."""
    return sum(k ** m for m in range(n + 1))


# --- paths ---

def enumerate_paths(vertices, edges, n: int) -> list[tuple]:
    """All paths of length ≤ n as (src, edge-label tuple, tgt).

    Order matches stage-n class order: key = the padded atom tuple of the
    minimal representative, i.e. (src index) repeated, then edge atom
    indices offset by the vertex count.
    """
    vertices = list(vertices)
    vidx = {v: i for i, v in enumerate(vertices)}
    eidx = {lab: i for i, (lab, _, _) in enumerate(edges)}
    by_src: dict = {}
    for lab, s, t in edges:
        by_src.setdefault(s, []).append((lab, t))
    paths = [(v, (), v) for v in vertices]
    layer = paths[:]
    for _ in range(n):
        layer = [(s, p + (lab,), t2)
                 for s, p, t in layer for lab, t2 in by_src.get(t, ())]
        paths.extend(layer)

    def key(path):
        s, p, _ = path
        pad = (vidx[s],) * (n - len(p))
        return pad + tuple(len(vertices) + eidx[lab] for lab in p)

    paths.sort(key=key)
    return paths


def longest_path_length(vertices, edges, cap: int = 64) -> int:
    """Length of the longest path; `cap` guards against cycles."""
    best = 0
    by_src: dict = {}
    for lab, s, t in edges:
        by_src.setdefault(s, []).append(t)
    # track reachable endpoints as a set: on a cyclic graph the frontier
    # never empties, so the cap is what terminates the sweep
    layer = set(vertices)
    for length in range(1, cap + 1):
        layer = {t for v in layer for t in by_src.get(v, ())}
        if not layer:
            return best
        best = length
    return best


def graph_is_acyclic(vertices, edges, cap: int = 64) -> bool:
    return longest_path_length(vertices, edges, cap) < cap


# --- set coequalizers ---

def brute_coequalizer_classes(n: int, pairs) -> list[int]:
    """Class labels for the finest relation with a[t] ~ b[t]; sweep to fixpoint.

    Classes are labeled by first occurrence (= ascending minimum element).
    """
    cls = list(range(n))
    changed = True
    while changed:
        changed = False
        for ta, tb in pairs:
            for x, y in zip(ta, tb):
                cx, cy = cls[x], cls[y]
                if cx != cy:
                    lo, hi = min(cx, cy), max(cx, cy)
                    cls = [lo if c == hi else c for c in cls]
                    changed = True
    relabel: dict = {}
    out = []
    for c in cls:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return out


# --- groups ---

def _subgroup_closure(table, gens) -> set:
    closure = {0} | set(gens)
    frontier = list(closure)
    while frontier:
        a = frontier.pop()
        for b in list(closure):
            for c in (table[a][b], table[b][a]):
                if c not in closure:
                    closure.add(c)
                    frontier.append(c)
    return closure


def brute_normal_closure(table, gens) -> set:
    """Smallest normal subgroup containing gens; conjugates then closure."""
    n = len(table)
    inv = [row.index(0) for row in table]
    conj = {table[table[u][x]][inv[u]] for x in gens for u in range(n)}
    return _subgroup_closure(table, conj)


def brute_group_coequalizer_order(table, f_images, g_images) -> int:
    """Order of the group coequalizer of two homs with the given images."""
    inv = [row.index(0) for row in table]
    diffs = {table[a][inv[b]] for a, b in zip(f_images, g_images)}
    return len(table) // len(brute_normal_closure(table, diffs))


def brute_abelianization(table) -> tuple[int, list[int]]:
    """(order, sorted element orders) of G/[G,G], from first principles."""
    n = len(table)
    inv = [row.index(0) for row in table]
    comms = {table[table[a][b]][table[inv[a]][inv[b]]]
             for a in range(n) for b in range(n)}
    k = _subgroup_closure(table, comms)
    rep_of: dict = {}
    reps = []
    for x in range(n):
        coset = frozenset(table[x][h] for h in k)
        if coset not in rep_of:
            rep_of[coset] = len(reps)
            reps.append(x)
    coset_label = {}
    for x in range(n):
        coset_label[x] = rep_of[frozenset(table[x][h] for h in k)]
    qtable = [[coset_label[table[a][b]] for b in reps] for a in reps]
    orders = []
    e = coset_label[0]
    for i in range(len(reps)):
        m, acc = 1, i
        while acc != e:
            acc = qtable[acc][i]
            m += 1
        orders.append(m)
    return len(reps), sorted(orders)


# --- universal maps ---

def universal_families_bruteforce(sizes, j_tables, mu_tables, m_table,
                                  f_table) -> int:
    """Count families (h_1..h_N), h_n: Z_n → M, satisfying the stage laws.

    Cartesian-set convention: the (m,n) multiplication table is indexed by
    i*|Z_n| + j.  Constraints: h_1 = f, h_n ∘ j_n = h_(n-1), and every
    h_(m+n)(μ(i,j)) = h_m(i)·h_n(j).  Exhaustive product scan — tiny inputs.
    """
    n_max = len(sizes) - 1
    msize = len(m_table)
    spaces = [list(itertools.product(range(msize), repeat=sizes[n]))
              for n in range(n_max + 1)]
    count = 0
    for family in itertools.product(*[spaces[n] for n in range(1, n_max + 1)]):
        hs = [None] + list(family)
        if list(hs[1]) != list(f_table):
            continue
        ok = True
        for n in range(2, n_max + 1):
            if any(hs[n][j_tables[n][i]] != hs[n - 1][i]
                   for i in range(sizes[n - 1])):
                ok = False
                break
        if ok:
            for (m, n), mu in mu_tables.items():
                if m < 1 or n < 1 or m + n > n_max:
                    continue
                for i in range(sizes[m]):
                    for j in range(sizes[n]):
                        p = i * sizes[n] + j
                        if hs[m + n][mu[p]] != m_table[hs[m][i]][hs[n][j]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
        if ok:
            count += 1
    return count


# --- pointed-action condition ---

def alg_free_direct(point: int, act) -> bool:
    """Elementwise two-leg comparison for cartesian backends.

    act[y][a] is the action table; compares α(point, α(w,a)) with
    α(w, α(point,a)) over all (w,a).
    """
    ysize = len(act)
    asize = len(act[0]) if ysize else 0
    for w in range(ysize):
        for a in range(asize):
            if act[point][act[w][a]] != act[w][act[point][a]]:
                return False
    return True


def alg_free_direct_graph(id_of_vertex, src_of, tgt_of, act) -> bool:
    """Anchored variant: act is a dict (y_elt, a_elt) → a_elt.

    Compares α(id at src(w), α(w,a)) with α(w, α(id at tgt(w), a)).
    """
    for (w, a), out in act.items():
        left = act[(id_of_vertex[src_of[w]], out)]
        right = act[(w, act[(id_of_vertex[tgt_of[w]], a)])]
        if left != right:
            return False
    return True
