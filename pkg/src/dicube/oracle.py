"""Independent brute-force engines the primary modules are tested against.

Evaluation here is deliberately separate from the primary code paths: cube
points are bitmasks (join = OR, meet = AND), composition is raw table
lookup, and homotopy detection enumerates cubical functions directly.
Agreement failures raise with a serialized counterexample.
"""

from __future__ import annotations

from functools import lru_cache

from .config import Budget


class OracleDisagreement(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# monotone map enumeration over arbitrary finite posets


def all_monotone(p_leq, q_leq, budget=None):
    """All monotone functions P -> Q as value tuples, lexicographic order.

    Refuses upfront when |Q| ** |P| exceeds the budget.
    """
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    np, nq = len(p_leq), len(q_leq)
    if nq**np > b.limit:
        b.spend(nq**np)  # raises
    out = []
    values = [0] * np

    def rec(i):
        if i == np:
            out.append(tuple(values))
            return
        for v in range(nq):
            b.spend()
            ok = True
            for j in range(i):
                if p_leq[j][i] and not q_leq[values[j]][v]:
                    ok = False
                    break
                if p_leq[i][j] and not q_leq[v][values[j]]:
                    ok = False
                    break
            if ok:
                values[i] = v
                rec(i + 1)
    rec(0)
    return out


# ---------------------------------------------------------------------------
# bitmask cube world: points of [1]^m are ints 0..2^m-1, bit j = coordinate j


def _cube_leq(x, y):
    return x & y == x


def cube_monotone_tables(m, n, budget=None):
    """All monotone tables [1]^m -> [1]^n, DFS over points in mask order."""
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    size = 1 << m
    out = []
    values = [0] * size

    def rec(i):
        if i == size:
            out.append(tuple(values))
            return
        for v in range(1 << n):
            b.spend()
            ok = True
            for j in range(i):
                if _cube_leq(j, i) and not _cube_leq(values[j], v):
                    ok = False
                    break
                if _cube_leq(i, j) and not _cube_leq(v, values[j]):
                    ok = False
                    break
            if ok:
                values[i] = v
                rec(i + 1)
    rec(0)
    return out


def _table_is_hom(values, m, n):
    size = 1 << m
    for x in range(size):
        for y in range(x, size):
            if values[x | y] != values[x] | values[y]:
                return False
            if values[x & y] != values[x] & values[y]:
                return False
    return True


def _table_preserves_intervals(values, m, n):
    size = 1 << m
    for lo in range(size):
        for hi in range(size):
            if not _cube_leq(lo, hi):
                continue
            image = {
                values[z] for z in range(size) if _cube_leq(lo, z) and _cube_leq(z, hi)
            }
            expected = {
                w
                for w in range(1 << n)
                if _cube_leq(values[lo], w) and _cube_leq(w, values[hi])
            }
            if image != expected:
                return False
    return True


def interval_hom_tables(m, n, budget=None):
    """Interval-preserving lattice homomorphisms [1]^m -> [1]^n as tables.

    DFS over assignments in mask order.  When mask i is assigned: meets
    j & i are already assigned for every j < i, and every pair with union
    exactly i has both members assigned, so the homomorphism equations can
    be enforced incrementally; a final interval-image filter follows.
    This enumerator never consults the normal-form calculus it checks.
    """
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    size = 1 << m
    join_pairs = [
        [(x, y) for x in range(i) for y in range(x, i) if x | y == i]
        for i in range(size)
    ]
    out = []
    values = [0] * size

    def rec(i):
        if i == size:
            if _table_is_hom(values, m, n) and _table_preserves_intervals(values, m, n):
                out.append(tuple(values))
            return
        for v in range(1 << n):
            b.spend()
            ok = True
            for j in range(i):
                if _cube_leq(j, i) and not _cube_leq(values[j], v):
                    ok = False
                    break
                if values[j & i] != values[j] & v:
                    ok = False
                    break
            if ok:
                for x, y in join_pairs[i]:
                    if values[x] | values[y] != v:
                        ok = False
                        break
            if ok:
                values[i] = v
                rec(i + 1)
    rec(0)
    return set(out)


def monotone_bijection_tables(n, budget=None):
    """All monotone bijections [1]^n -> [1]^n (DFS with counting pruning)."""
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    size = 1 << n
    out = []
    values = [0] * size
    used = [False] * size

    def rec(i):
        if i == size:
            out.append(tuple(values))
            return
        for v in range(size):
            if used[v]:
                continue
            b.spend()
            ok = True
            for j in range(i):
                if _cube_leq(j, i) and not _cube_leq(values[j], v):
                    ok = False
                    break
                if _cube_leq(i, j) and not _cube_leq(v, values[j]):
                    ok = False
                    break
            if ok:
                used[v] = True
                values[i] = v
                rec(i + 1)
                used[v] = False
    rec(0)
    return out


# ---------------------------------------------------------------------------
# generator closure: composites of cofaces, codegeneracies, transpositions


def _compose_tables(g, f):
    # f: (m, n, values over 2^m), g: (n, p, ...) -> g o f
    fm, fn, fv = f
    gn, gp, gv = g
    assert fn == gn
    return (fm, gp, tuple(gv[v] for v in fv))


def _tensor_tables(f, g):
    fm, fn, fv = f
    gm, gn, gv = g
    values = []
    for x in range(1 << (fm + gm)):
        xf = x & ((1 << fm) - 1)
        xg = x >> fm
        values.append(fv[xf] | (gv[xg] << fn))
    return (fm + gm, fn + gn, tuple(values))


def _generator_tables(max_dim):
    gens = []
    for d in range(0, max_dim + 1):
        gens.append((d, d, tuple(range(1 << d))))  # identity
    for d in range(1, max_dim + 1):
        for i in range(d):  # coface inserting bit i at dimension d
            for sign in (0, 1):
                values = []
                for x in range(1 << (d - 1)):
                    low = x & ((1 << i) - 1)
                    high = x >> i
                    values.append(low | (sign << i) | (high << (i + 1)))
                gens.append((d - 1, d, tuple(values)))
        for i in range(d):  # codegeneracy dropping bit i
            values = []
            for x in range(1 << d):
                low = x & ((1 << i) - 1)
                high = x >> (i + 1)
                values.append(low | (high << i))
            gens.append((d, d - 1, tuple(values)))
        for i in range(d - 1):  # transposition of bits i, i+1
            values = []
            for x in range(1 << d):
                bi = (x >> i) & 1
                bj = (x >> (i + 1)) & 1
                y = x & ~(1 << i) & ~(1 << (i + 1))
                values.append(y | (bj << i) | (bi << (i + 1)))
            gens.append((d, d, tuple(values)))
    return gens


def _closure(generators, max_dim, budget):
    # Compose-only closure.  Tensoring with identities is already baked
    # into the generator set, and a tensor of composites is a composite of
    # identity-padded tensors (interchange), so composition reaches the
    # full monoidal closure.
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    tables = set(generators)
    by_dom = {d: [] for d in range(max_dim + 1)}
    by_cod = {d: [] for d in range(max_dim + 1)}
    for t in tables:
        by_dom[t[0]].append(t)
        by_cod[t[1]].append(t)
    worklist = list(tables)
    while worklist:
        t = worklist.pop()
        b.spend()
        fresh = []
        for s in list(by_dom[t[1]]):
            fresh.append(_compose_tables(s, t))
        for s in list(by_cod[t[0]]):
            fresh.append(_compose_tables(t, s))
        for c in fresh:
            if c not in tables:
                tables.add(c)
                by_dom[c[0]].append(c)
                by_cod[c[1]].append(c)
                worklist.append(c)
    return tables


@lru_cache(maxsize=None)
def _closure_universe(max_dim, cofaces):
    # _generator_tables already lists every identity padding of the
    # elementary generators (all insert/drop/swap positions in each
    # dimension), which is exactly the monoidal generator set.
    gens = _generator_tables(max_dim)
    if not cofaces:
        gens = [t for t in gens if t[0] >= t[1]]
    return frozenset(_closure(gens, max_dim, budget=10**8))


def generator_closure(m, n, budget=None):
    """Tables of all composites of tensors of the generators, dom m cod n.

    BFS to a fixpoint through dimensions <= max(m, n) + 1.
    """
    universe = _closure_universe(max(m, n) + 1, True)
    return {t[2] for t in universe if t[0] == m and t[1] == n}


def epi_closure(m, n, budget=None):
    """Composites of codegeneracies and transpositions only, dom m cod n."""
    universe = _closure_universe(max(m, n), False)
    return {t[2] for t in universe if t[0] == m and t[1] == n}


def transposition_closure(n, budget=None):
    """Composites of principal coordinate transpositions [1]^n -> [1]^n."""
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    gens = [t[2] for t in _generator_tables(n) if t[0] == t[1] == n]
    tables = set(gens)
    worklist = list(tables)
    while worklist:
        t = worklist.pop()
        for s in list(tables):
            b.spend()
            for c in (tuple(s[v] for v in t), tuple(t[v] for v in s)):
                if c not in tables:
                    tables.add(c)
                    worklist.append(c)
    return tables


# ---------------------------------------------------------------------------
# Boolean-interval detection by explicit isomorphism search


def is_boolean_by_isomorphism(leq, elems):
    """Whether the subposet on `elems` is order-isomorphic to some [1]^k."""
    size = len(elems)
    k = size.bit_length() - 1
    if size != 1 << k:
        return False
    elems = list(elems)
    assign = {}
    used = [False] * size

    def rec(pos):
        if pos == size:
            return True
        x = elems[pos]
        for v in range(size):
            if used[v]:
                continue
            ok = True
            for y in elems[:pos]:
                w = assign[y]
                if leq[x][y] != _cube_leq(v, w) or leq[y][x] != _cube_leq(w, v):
                    ok = False
                    break
            if ok:
                assign[x] = v
                used[v] = True
                if rec(pos + 1):
                    return True
                del assign[x]
                used[v] = False
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# exhaustive homotopy graphs (the presheaf-side oracle)


def _face_signature_set(C, m):
    """All boundary tuples realized by cells of C at dimension m."""
    order = [(i, eps) for i in range(1, m + 1) for eps in (0, 1)]
    return {
        tuple(C.faces[(m, i, eps)][y] for i, eps in order) for y in C.cells(m)
    }


def enumerate_cubical_functions(B, C, budget=None):
    """All cubical functions B -> C by per-dimension DFS.

    Free choices are the transposition-orbit representatives of the
    nondegenerate cells; orbit mates and degenerate cells are forced.
    Each assignment is pruned by face compatibility and, as soon as the
    boundary of a higher cell of B is determined, by the existence of a
    C-cell with that boundary.
    """
    from . import cset  # data types shared; evaluation paths are not

    b = Budget(budget) if not isinstance(budget, Budget) else budget
    trunc = min(B.trunc, C.trunc)
    results = []

    # per-level static data
    level_data = []
    for n in range(trunc + 1):
        nondeg = set(B.nondegenerate(n))
        # orbit structure: root representative and transposition path
        root = {}
        path = {}
        reps = []
        for i in sorted(nondeg):
            if i in root:
                continue
            reps.append(i)
            root[i], path[i] = i, ()
            queue = [i]
            while queue:
                cur = queue.pop()
                for it in range(1, n):
                    mate = B.transps[(n, it)][cur]
                    if mate in nondeg and mate not in root:
                        root[mate] = i
                        path[mate] = path[cur] + (it,)
                        queue.append(mate)
        rep_pos = {r: p for p, r in enumerate(reps)}
        # degenerate cells and their sources
        degen_src = {}
        for i in range(B.sizes[n]):
            if i not in nondeg:
                degen_src[i] = B.degeneracy_source(n, i)
        # higher cells of B closing at this level, keyed by the last
        # representative their boundary depends on
        triggers = {}
        immediate = []
        if n + 1 <= trunc:
            face_order = [(i, eps) for i in range(1, n + 2) for eps in (0, 1)]
            sig = _face_signature_set(C, n + 1)
            for y in B.nondegenerate(n + 1):
                faces = [B.faces[(n + 1, i, eps)][y] for i, eps in face_order]
                deps = {rep_pos[root[f]] for f in faces if f in root}
                entry = (y, tuple(faces))
                if deps:
                    triggers.setdefault(max(deps), []).append(entry)
                else:
                    immediate.append(entry)
            level_data.append((reps, root, path, degen_src, triggers, immediate, sig))
        else:
            level_data.append((reps, root, path, degen_src, {}, [], None))

    def extend(maps, n):
        if n > trunc:
            results.append(tuple(tuple(m) for m in maps))
            return
        reps, root, path, degen_src, triggers, immediate, sig = level_data[n]
        values = {}
        for i, src in degen_src.items():
            j, x = src
            values[i] = C.degens[(n - 1, j)][maps[n - 1][x]]

        def resolve(i):
            if i in values:
                return values[i]
            v = values[root[i]]
            for it in path[i]:
                v = C.transps[(n, it)][v]
            values[i] = v
            return v

        def boundary_ok(entries):
            for _, faces in entries:
                key = tuple(resolve(f) for f in faces)
                if key not in sig:
                    return False
            return True

        def assign(pos):
            if pos == len(reps):
                vec = [resolve(i) for i in range(B.sizes[n])]
                for it in range(1, n):
                    tb = B.transps[(n, it)]
                    tc = C.transps[(n, it)]
                    if any(tc[vec[i]] != vec[tb[i]] for i in range(B.sizes[n])):
                        return
                maps.append(vec)
                extend(maps, n + 1)
                maps.pop()
                return
            i = reps[pos]
            for y in range(C.sizes[n]):
                b.spend()
                good = True
                for eps in (0, 1):
                    for di in range(1, n + 1):
                        key = (n, di, eps)
                        if C.faces[key][y] != maps[n - 1][B.faces[key][i]]:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    added = [i]
                    values[i] = y
                    # resolve this rep's orbit mates eagerly so closing
                    # checks can see them
                    for m_ in root:
                        if root[m_] == i and m_ not in values:
                            resolve(m_)
                            added.append(m_)
                    if pos in triggers and not boundary_ok(triggers[pos]):
                        for m_ in added:
                            values.pop(m_, None)
                        continue
                    assign(pos + 1)
                    for m_ in added:
                        values.pop(m_, None)

        if immediate and not boundary_ok(immediate):
            return
        assign(0)

    extend([], 0)
    from .cset import CubicalFunction

    return [CubicalFunction(B, C, maps) for maps in sorted(set(results))]


def homotopy_graph(B, C, budget=None):
    """Nodes: all cubical functions B -> C; edges: elementary homotopies.

    An elementary homotopy is a cubical function from the cylinder
    B (x) [1]; both orientations collapse to one undirected edge.
    """
    from . import cset

    b = Budget(budget) if not isinstance(budget, Budget) else budget
    maps = enumerate_cubical_functions(B, C, b)
    index = {f.maps: i for i, f in enumerate(maps)}
    cyl, incl0, incl1 = cset.cylinder(B)
    edges = set()
    for h in enumerate_cubical_functions(cyl, C, b):
        f0 = h.compose_after(incl0)
        f1 = h.compose_after(incl1)
        i, j = index[f0.maps], index[f1.maps]
        if i != j:
            edges.add((min(i, j), max(i, j)))
    return maps, edges
