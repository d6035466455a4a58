"""Finite categories and monoids by table, nerves, conjugacy, and homotopy
classes of functors under zig-zags of natural transformations.

Composition is read diagrammatically throughout: `then(f, g)` is "f, then
g", and a monoid table `op[x][y]` means "x, then y".  Path words in
presentations are read left to right in the same way.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from . import cset, cube
from .config import Budget


class CatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monoids


@dataclass(frozen=True)
class FinMonoid:
    table: tuple
    unit: int

    @property
    def size(self):
        return len(self.table)

    def op(self, x, y):
        """x, then y."""
        return self.table[x][y]

    def validate(self):
        n = self.size
        if any(len(row) != n for row in self.table):
            raise CatError("ragged monoid table")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise CatError("monoid table value out of range")
        e = self.unit
        for x in range(n):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise CatError(f"unit law fails at {x}")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                        raise CatError(f"associativity fails at {x},{y},{z}")
        return True

    def is_commutative(self):
        return all(
            self.table[x][y] == self.table[y][x]
            for x in range(self.size)
            for y in range(self.size)
        )

    def is_group(self):
        return all(
            any(
                self.table[x][y] == self.unit and self.table[y][x] == self.unit
                for y in range(self.size)
            )
            for x in range(self.size)
        )


def monoid_from_op(elements, op, unit):
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(
        tuple(index[op(a, b)] for b in elements) for a in elements
    )
    M = FinMonoid(table, index[unit])
    M.validate()
    return M


@lru_cache(maxsize=None)
def zmod(k):
    return monoid_from_op(range(k), lambda a, b: (a + b) % k, 0)


@lru_cache(maxsize=None)
def sym3():
    """The symmetric group on three letters, elements as permutation tuples."""
    elems = sorted(itertools.permutations(range(3)))
    # x then y = apply x first
    return monoid_from_op(elems, lambda x, y: tuple(y[x[i]] for i in range(3)), (0, 1, 2))


@lru_cache(maxsize=None)
def idempotent2():
    """{1, a} with a*a = a: the smallest non-cancellative monoid."""
    return FinMonoid(((0, 1), (1, 1)), 0)


@lru_cache(maxsize=None)
def capped_add():
    """{0, 1, oo} under addition capped at the absorbing top."""
    return monoid_from_op(range(3), lambda a, b: min(a + b, 2), 0)


@lru_cache(maxsize=None)
def trivial_monoid():
    return FinMonoid(((0,),), 0)


def product_monoid(A, B):
    elems = [(a, b) for a in range(A.size) for b in range(B.size)]
    return monoid_from_op(
        elems, lambda x, y: (A.table[x[0]][y[0]], B.table[x[1]][y[1]]), (A.unit, B.unit)
    )


def submonoid(M, elements):
    elements = sorted(set(elements))
    if M.unit not in elements:
        raise CatError("submonoid must contain the unit")
    index = {e: i for i, e in enumerate(elements)}
    for a in elements:
        for b in elements:
            if M.table[a][b] not in index:
                raise CatError("subset not closed under the operation")
    table = tuple(tuple(index[M.table[a][b]] for b in elements) for a in elements)
    return FinMonoid(table, index[M.unit])


def equal_doubles_pairs(M):
    """The submonoid of M x M of pairs (a, b) with a+a = b+b."""
    P = product_monoid(M, M)
    elems = [
        i
        for i, (a, b) in enumerate(
            (a, b) for a in range(M.size) for b in range(M.size)
        )
        if M.table[a][a] == M.table[b][b]
    ]
    return submonoid(P, elems)


MONOID_NAMES = ("trivial", "zmod2", "zmod3", "zmod4", "zmod6", "s3", "idem2", "capped")


def monoid_by_name(name):
    if name.startswith("zmod"):
        return zmod(int(name[4:]))
    builders = {
        "trivial": trivial_monoid,
        "s3": sym3,
        "idem2": idempotent2,
        "capped": capped_add,
    }
    if name not in builders:
        raise CatError(f"unknown monoid {name!r}")
    return builders[name]()


def monoid_to_json(M):
    return json.dumps(
        {"size": M.size, "unit": M.unit, "table": [list(r) for r in M.table]},
        sort_keys=True,
    )


def monoid_from_json(text):
    data = json.loads(text)
    M = FinMonoid(tuple(tuple(r) for r in data["table"]), data["unit"])
    if M.size != data["size"]:
        raise CatError("size field does not match table")
    M.validate()
    return M


def is_cancellative(M):
    """Exhaustive left- and right-cancellation check."""
    n = M.size
    for x in range(n):
        row = M.table[x]
        if len(set(row)) != n:
            return False
        col = [M.table[y][x] for y in range(n)]
        if len(set(col)) != n:
            return False
    return True


def conjugacy_classes(M):
    """Partition by the closure of x ~ y when x z = z y for some z.

    For commutative M the classes inherit the operation; the quotient
    monoid is returned alongside the partition (None otherwise).  A
    failure of well-definedness is reported, never patched.
    """
    uf = cset.UnionFind()
    for x in range(M.size):
        uf.add(x)
    for x in range(M.size):
        for y in range(M.size):
            if any(M.table[x][z] == M.table[z][y] for z in range(M.size)):
                uf.union(x, y)
    groups = sorted(sorted(g) for g in uf.classes().values())
    quotient = None
    if M.is_commutative():
        class_of = {}
        for ci, grp in enumerate(groups):
            for x in grp:
                class_of[x] = ci
        table = []
        for g1 in groups:
            row = []
            for g2 in groups:
                results = {class_of[M.table[a][b]] for a in g1 for b in g2}
                if len(results) != 1:
                    raise CatError("internal: conjugacy quotient not well defined")
                row.append(results.pop())
            table.append(tuple(row))
        quotient = FinMonoid(tuple(table), class_of[M.unit])
        quotient.validate()
    return groups, quotient


def monoid_isomorphic(A, B):
    """An isomorphism A -> B as an index tuple, or None (backtracking)."""
    if A.size != B.size:
        return None

    def profile(M):
        out = []
        for x in range(M.size):
            # element order data: iterate the element against itself
            seen = {x}
            y = x
            while True:
                y = M.table[y][x]
                if y in seen:
                    break
                seen.add(y)
            out.append((len(seen), sorted(M.table[x]).count(x)))
        return out

    pa, pb = profile(A), profile(B)
    if sorted(pa) != sorted(pb):
        return None
    assign = [None] * A.size
    used = [False] * B.size

    def full_check():
        for x in range(A.size):
            for y in range(A.size):
                if assign[A.table[x][y]] != B.table[assign[x]][assign[y]]:
                    return False
        return True

    def rec(x):
        if x == A.size:
            return full_check()
        for y in range(B.size):
            if used[y] or pa[x] != pb[y]:
                continue
            if (x == A.unit) != (y == B.unit):
                continue
            ok = True
            for x2 in range(x + 1):
                y2 = assign[x2] if x2 < x else y
                tx, ty = A.table[x][x2], B.table[y][y2]
                if tx <= x:
                    im = assign[tx] if tx < x else y
                    if im != ty:
                        ok = False
                        break
                tx, ty = A.table[x2][x], B.table[y2][y]
                if tx <= x:
                    im = assign[tx] if tx < x else y
                    if im != ty:
                        ok = False
                        break
            if ok:
                assign[x] = y
                used[y] = True
                if rec(x + 1):
                    return True
                assign[x] = None
                used[y] = False
        return False

    if not rec(0):
        return None
    return tuple(assign)


# ---------------------------------------------------------------------------
# finite categories


@dataclass(frozen=True)
class FinCat:
    n_obj: int
    src: tuple
    tgt: tuple
    ident: tuple  # identity morphism per object
    comp: tuple  # comp[f][g] = "f then g" when tgt f == src g, else None

    @property
    def n_mor(self):
        return len(self.src)

    def then(self, f, g):
        h = self.comp[f][g]
        if h is None:
            raise CatError(f"morphisms {f}, {g} not composable")
        return h

    def hom(self, x, y):
        return [f for f in range(self.n_mor) if self.src[f] == x and self.tgt[f] == y]

    def validate(self):
        for o in range(self.n_obj):
            e = self.ident[o]
            if self.src[e] != o or self.tgt[e] != o:
                raise CatError(f"identity of {o} has wrong endpoints")
        for f in range(self.n_mor):
            for g in range(self.n_mor):
                h = self.comp[f][g]
                if (self.tgt[f] == self.src[g]) != (h is not None):
                    raise CatError(f"composability mismatch at {f},{g}")
                if h is not None and (
                    self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]
                ):
                    raise CatError(f"composite endpoints wrong at {f},{g}")
        for f in range(self.n_mor):
            if self.comp[self.ident[self.src[f]]][f] != f:
                raise CatError(f"left unit fails at {f}")
            if self.comp[f][self.ident[self.tgt[f]]] != f:
                raise CatError(f"right unit fails at {f}")
        for f in range(self.n_mor):
            for g in range(self.n_mor):
                if self.tgt[f] != self.src[g]:
                    continue
                for h in range(self.n_mor):
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.comp[self.comp[f][g]][h] != self.comp[f][self.comp[g][h]]:
                        raise CatError(f"associativity fails at {f},{g},{h}")
        return True


def cat_from_monoid(M):
    n = M.size
    comp = tuple(tuple(M.table[f][g] for g in range(n)) for f in range(n))
    C = FinCat(1, (0,) * n, (0,) * n, (M.unit,), comp)
    C.validate()
    return C


def discrete_cat(n):
    comp = tuple(
        tuple(f if f == g else None for g in range(n)) for f in range(n)
    )
    C = FinCat(n, tuple(range(n)), tuple(range(n)), tuple(range(n)), comp)
    C.validate()
    return C


def poset_cat(leq):
    """The category of a finite poset given by its order table."""
    n = len(leq)
    mors = [(x, y) for x in range(n) for y in range(n) if leq[x][y]]
    index = {m: i for i, m in enumerate(mors)}
    comp = []
    for (x1, y1) in mors:
        row = []
        for (x2, y2) in mors:
            row.append(index[(x1, y2)] if y1 == x2 else None)
        comp.append(tuple(row))
    C = FinCat(
        n,
        tuple(m[0] for m in mors),
        tuple(m[1] for m in mors),
        tuple(index[(x, x)] for x in range(n)),
        tuple(comp),
    )
    C.validate()
    return C


def terminal_cat():
    return discrete_cat(1)


def arrow_cat():
    """The poset [1] as a category."""
    return poset_cat(((True, True), (False, True)))


def as_cat(S):
    return cat_from_monoid(S) if isinstance(S, FinMonoid) else S


def cat_to_json(S):
    S = as_cat(S)
    comp = [[(v if v is not None else None) for v in row] for row in S.comp]
    return json.dumps(
        {
            "objects": S.n_obj,
            "src": list(S.src),
            "tgt": list(S.tgt),
            "identities": list(S.ident),
            "compose": comp,
        },
        sort_keys=True,
    )


def cat_from_json(text):
    data = json.loads(text)
    C = FinCat(
        data["objects"],
        tuple(data["src"]),
        tuple(data["tgt"]),
        tuple(data["identities"]),
        tuple(tuple(row) for row in data["compose"]),
    )
    C.validate()
    return C


# ---------------------------------------------------------------------------
# cubical nerves


def _cube_pairs(n):
    """Comparable vertex pairs of the n-cube poset in lexicographic order."""
    pts = cube.points(n)
    return [
        (a, b)
        for a in pts
        for b in pts
        if all(x <= y for x, y in zip(a, b))
    ]


def cube_functors(S, n, budget=None):
    """All functors from the n-cube poset to S, as morphism tables over
    the comparable vertex pairs."""
    S = as_cat(S)
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    pts = list(cube.points(n))
    pairs = _cube_pairs(n)
    pair_index = {p: i for i, p in enumerate(pairs)}
    covers = []
    for a in pts:
        for j in range(n):
            if a[j] == 0:
                b_ = a[:j] + (1,) + a[j + 1 :]
                covers.append((a, b_))
    results = []

    def paths_value(obj_of, mor_of, a, b_):
        # compose cover morphisms along the canonical staircase from a to b_
        cur = a
        f = S.ident[obj_of[a]]
        for j in range(n):
            if a[j] < b_[j]:
                nxt = cur[:j] + (1,) + cur[j + 1 :]
                f = S.then(f, mor_of[(cur, nxt)])
                cur = nxt
        return f

    def assign_objects(i, obj_of):
        if i == len(pts):
            assign_covers(0, obj_of, {})
            return
        for o in range(S.n_obj):
            b.spend()
            obj_of[pts[i]] = o
            assign_objects(i + 1, obj_of)
            del obj_of[pts[i]]

    def assign_covers(i, obj_of, mor_of):
        if i == len(covers):
            finish(obj_of, mor_of)
            return
        a, b_ = covers[i]
        for f in S.hom(obj_of[a], obj_of[b_]):
            b.spend()
            mor_of[(a, b_)] = f
            # prune on squares whose four edges are now all assigned;
            # the final triple check below is the complete test
            if _squares_ok(S, mor_of, a, b_, n):
                assign_covers(i + 1, obj_of, mor_of)
            del mor_of[(a, b_)]

    def _squares_ok(S, mor_of, a, b_, n):
        # check every fully assigned square containing the new edge a -> b_
        j0 = next(j for j in range(n) if a[j] != b_[j])

        def plus(p, j):
            return p[:j] + (1,) + p[j + 1 :]

        for k in range(n):
            if k == j0:
                continue
            base = a if a[k] == 0 else a[:k] + (0,) + a[k + 1 :]
            e1 = (base, plus(base, j0))
            e2 = (plus(base, j0), plus(plus(base, j0), k))
            f1 = (base, plus(base, k))
            f2 = (plus(base, k), plus(plus(base, k), j0))
            if all(e in mor_of for e in (e1, e2, f1, f2)):
                if S.then(mor_of[e1], mor_of[e2]) != S.then(mor_of[f1], mor_of[f2]):
                    return False
        return True

    def finish(obj_of, mor_of):
        table = []
        for a, b_ in pairs:
            table.append(paths_value(obj_of, mor_of, a, b_))
        # full functoriality: composites along any comparable triple agree
        for a, b_ in pairs:
            for c in cube.points(n):
                if all(x <= y for x, y in zip(b_, c)):
                    lhs = S.then(table[pair_index[(a, b_)]], table[pair_index[(b_, c)]])
                    if lhs != table[pair_index[(a, c)]]:
                        return
        results.append(tuple(table))

    assign_objects(0, {})
    return sorted(set(results))


def nerve(S, trunc, budget=None):
    """The cubical set of functors from cube posets to S."""
    S = as_cat(S)
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    keys_by_dim = [cube_functors(S, n, b) for n in range(trunc + 1)]
    pair_indices = [
        {p: i for i, p in enumerate(_cube_pairs(n))} for n in range(trunc + 1)
    ]

    def act(phi, key):
        pidx = pair_indices[phi.cod]
        return tuple(
            key[pidx[(phi(a), phi(b_))]] for a, b_ in _cube_pairs(phi.dom)
        )

    return cset.build_presheaf(trunc, keys_by_dim, act)


def nerve_map(F_obj, F_mor, S, T, nerve_S, nerve_T):
    """The cubical function of nerves induced by a functor S -> T."""
    maps = []
    for n in range(nerve_S.trunc + 1):
        idx = nerve_T.key_index(n)
        level = []
        for key in nerve_S.keys[n]:
            level.append(idx[tuple(F_mor[f] for f in key)])
        maps.append(tuple(level))
    f = cset.CubicalFunction(nerve_S, nerve_T, tuple(maps))
    f.validate()
    return f


# ---------------------------------------------------------------------------
# presentations, functors out of them, homotopy classes


@dataclass(frozen=True)
class CatPresentation:
    n_obj: int
    gens: tuple  # (src, tgt) per generator
    relations: tuple  # pairs of generator-index words, read left to right

    def validate(self):
        for s, t in self.gens:
            if not (0 <= s < self.n_obj and 0 <= t < self.n_obj):
                raise CatError("generator endpoint out of range")
        for w1, w2 in self.relations:
            e1, e2 = self._endpoints(w1), self._endpoints(w2)
            # an empty word is an identity, so the other side must be a loop
            if e1 is not None and e2 is not None and e1 != e2:
                raise CatError(f"relation words have different endpoints: {w1} vs {w2}")
            for e in (e1, e2):
                if e is not None and (e1 is None or e2 is None) and e[0] != e[1]:
                    raise CatError(f"identity relation against a non-loop: {w1} vs {w2}")
        return True

    def _endpoints(self, word):
        if not word:
            return None  # empty word: an identity at any object
        for a, b in zip(word, word[1:]):
            if self.gens[a][1] != self.gens[b][0]:
                raise CatError(f"word {word} is not composable")
        return (self.gens[word[0]][0], self.gens[word[-1]][1])


@dataclass(frozen=True)
class Functor:
    obj_map: tuple
    gen_map: tuple


def _eval_word(S, P, F, word, at_obj):
    f = S.ident[F.obj_map[at_obj]]
    for g in word:
        f = S.then(f, F.gen_map[g])
    return f


def enumerate_functors(P, S, budget=None):
    """All functors from the presented category to S, deterministic order."""
    P.validate()
    S = as_cat(S)
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    results = []
    n_gen = len(P.gens)
    # relations become checkable once all their generators are assigned
    last_gen = []
    for w1, w2 in P.relations:
        last_gen.append(max(w1 + w2, default=-1))

    def check_relations(upto, obj_map, gen_map):
        for (w1, w2), last in zip(P.relations, last_gen):
            if last != upto:
                continue
            F = Functor(tuple(obj_map), tuple(gen_map))
            src = P.gens[w1[0]][0] if w1 else (P.gens[w2[0]][0] if w2 else 0)
            if _eval_word(S, P, F, w1, src) != _eval_word(S, P, F, w2, src):
                return False
        return True

    def assign_gens(i, obj_map, gen_map):
        if i == n_gen:
            results.append(Functor(tuple(obj_map), tuple(gen_map)))
            return
        s, t = P.gens[i]
        for f in S.hom(obj_map[s], obj_map[t]):
            b.spend()
            gen_map.append(f)
            if check_relations(i, obj_map, gen_map):
                assign_gens(i + 1, obj_map, gen_map)
            gen_map.pop()

    def assign_objs(i, obj_map):
        if i == P.n_obj:
            assign_gens(0, obj_map, [])
            return
        for o in range(S.n_obj):
            b.spend()
            obj_map.append(o)
            assign_objs(i + 1, obj_map)
            obj_map.pop()

    assign_objs(0, [])
    return results


def nat_trans_exists(P, S, F, G, budget=None):
    """Whether a natural transformation F -> G exists (componentwise DFS).

    Naturality per generator e: x -> y reads F(e) then u_y == u_x then G(e).
    """
    S = as_cat(S)
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    objs = list(range(P.n_obj))
    gens_at = {o: [] for o in objs}
    for gi, (s, t) in enumerate(P.gens):
        gens_at[s].append((gi, s, t))
        gens_at[t].append((gi, s, t))

    def rec(i, comps):
        if i == P.n_obj:
            return True
        x = objs[i]
        for u in S.hom(F.obj_map[x], G.obj_map[x]):
            b.spend()
            comps[x] = u
            ok = True
            for gi, s, t in gens_at[x]:
                if s in comps and t in comps:
                    if S.then(F.gen_map[gi], comps[t]) != S.then(comps[s], G.gen_map[gi]):
                        ok = False
                        break
            if ok and rec(i + 1, comps):
                return True
            del comps[x]
        return False

    return rec(0, {})


def functor_homotopy_classes(P, S, functors, budget=None):
    """Partition of functors under zig-zags of natural transformations.

    For a group target the single-step relation is already a group action,
    so classes are orbits under elementary gauges; otherwise edges come
    from exhaustive transformation search in both directions.
    """
    S_cat = as_cat(S)
    b = Budget(budget) if not isinstance(budget, Budget) else budget
    index = {F: i for i, F in enumerate(functors)}
    uf = cset.UnionFind()
    for i in range(len(functors)):
        uf.add(i)
    if isinstance(S, FinMonoid) and S.is_group():
        inv = {
            x: next(
                y for y in range(S.size) if S.table[x][y] == S.unit
            )
            for x in range(S.size)
        }
        for F in functors:
            i = index[F]
            for o in range(P.n_obj):
                for u in range(S.size):
                    b.spend()
                    gen_map = []
                    for gi, (s, t) in enumerate(P.gens):
                        val = F.gen_map[gi]
                        if t == o:
                            val = S.table[val][u]
                        if s == o:
                            val = S.table[inv[u]][val]
                        gen_map.append(val)
                    G = Functor(F.obj_map, tuple(gen_map))
                    j = index.get(G)
                    if j is None:
                        raise CatError("internal: gauge image is not a functor")
                    uf.union(i, j)
    else:
        for i, F in enumerate(functors):
            for j, G in enumerate(functors):
                if i < j:
                    b.spend()
                    if nat_trans_exists(P, S_cat, F, G, b) or nat_trans_exists(
                        P, S_cat, G, F, b
                    ):
                        uf.union(i, j)
    return sorted(sorted(g) for g in uf.classes().values())
