"""Finite, dimension-truncated cubical sets.

A cubical set stores every cell up to the truncation dimension, including
degenerate ones, together with the elementary generator actions: faces
d_{eps,i}, degeneracies s_i and adjacent transpositions t_i.  The action
of an arbitrary cube-category morphism is assembled from a canonical
decomposition into generators, and validation checks that this assembly
is functorial, which pins down all generator relations at once.

Cells are plain integer indices per dimension; constructors carry
canonical keys so results are reproducible bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from . import cube
from . import lattice as lat


class CsetError(ValueError):
    pass


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return groups


@dataclass(eq=False)
class CubicalSet:
    trunc: int
    sizes: tuple
    faces: dict  # (n, i, eps) -> tuple, eps 0 = lower face, 1 = upper face
    degens: dict  # (n, i) -> tuple, s_i: C_n -> C_{n+1}
    transps: dict  # (n, i) -> tuple, t_i: C_n -> C_n
    keys: tuple = None  # optional per-dimension canonical cell keys
    lattice: object = None  # set when the cells are lattice-homomorphism tables
    _action_cache: dict = field(default_factory=dict, repr=False)
    _nondeg_cache: dict = field(default_factory=dict, repr=False)
    _key_index_cache: dict = field(default_factory=dict, repr=False)
    _atom_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.structural_check()

    # -- structure ---------------------------------------------------------

    def structural_check(self):
        if self.trunc < 0 or len(self.sizes) != self.trunc + 1:
            raise CsetError("bad truncation data")
        for n in range(1, self.trunc + 1):
            for i in range(1, n + 1):
                for eps in (0, 1):
                    tbl = self.faces.get((n, i, eps))
                    if tbl is None or len(tbl) != self.sizes[n]:
                        raise CsetError(f"missing face table ({n},{i},{eps})")
                    if any(not 0 <= v < self.sizes[n - 1] for v in tbl):
                        raise CsetError(f"face table ({n},{i},{eps}) out of range")
        for n in range(0, self.trunc):
            for i in range(1, n + 2):
                tbl = self.degens.get((n, i))
                if tbl is None or len(tbl) != self.sizes[n]:
                    raise CsetError(f"missing degeneracy table ({n},{i})")
                if any(not 0 <= v < self.sizes[n + 1] for v in tbl):
                    raise CsetError(f"degeneracy table ({n},{i}) out of range")
        for n in range(2, self.trunc + 1):
            for i in range(1, n):
                tbl = self.transps.get((n, i))
                if tbl is None or len(tbl) != self.sizes[n]:
                    raise CsetError(f"missing transposition table ({n},{i})")
                if any(not 0 <= v < self.sizes[n] for v in tbl):
                    raise CsetError(f"transposition table ({n},{i}) out of range")

    def cells(self, n):
        return range(self.sizes[n])

    def all_cells(self):
        for n in range(self.trunc + 1):
            for i in self.cells(n):
                yield (n, i)

    def key(self, n, i):
        return self.keys[n][i] if self.keys is not None else (n, i)

    def key_index(self, n):
        if n not in self._key_index_cache:
            self._key_index_cache[n] = {k: i for i, k in enumerate(self.keys[n])}
        return self._key_index_cache[n]

    # -- actions -----------------------------------------------------------

    def elementary_action(self, g):
        """The table of C(g) for an elementary cube map g."""
        if all(cube.is_proj(s) for s in g.outputs) and g.dom == g.cod + 1:
            used = g.used_inputs()
            i = next(k for k in range(1, g.dom + 1) if k not in used)
            return self.degens[(g.cod, i)]
        if g.dom + 1 == g.cod:
            j = next(k for k, s in enumerate(g.outputs) if cube.is_const(s))
            return self.faces[(g.cod, j + 1, g.outputs[j][1])]
        if g.dom == g.cod:
            if g.is_identity():
                return tuple(range(self.sizes[g.dom]))
            i = next(
                k + 1 for k, s in enumerate(g.outputs) if s != cube.proj(k + 1)
            )
            return self.transps[(g.dom, i)]
        raise CsetError(f"not an elementary map: {g.text()}")

    def action(self, phi):
        """The table of C(phi): C_cod -> C_dom for any cube map phi."""
        if phi.cod > self.trunc or phi.dom > self.trunc:
            raise CsetError("action beyond truncation")
        cached = self._action_cache.get((phi.dom, phi.cod, phi.outputs))
        if cached is not None:
            return cached
        values = list(range(self.sizes[phi.cod]))
        # phi = g1 o g2 o ... o gr, so C(phi) = C(gr) o ... o C(g1).
        for g in cube.decompose(phi):
            tbl = self.elementary_action(g)
            values = [tbl[v] for v in values]
        result = tuple(values)
        self._action_cache[(phi.dom, phi.cod, phi.outputs)] = result
        return result

    def act(self, phi, x):
        return self.action(phi)[x]

    def face(self, n, i, eps, x):
        return self.faces[(n, i, eps)][x]

    def degen(self, n, i, x):
        return self.degens[(n, i)][x]

    # -- degeneracy bookkeeping ---------------------------------------------

    def nondegenerate(self, n):
        """Indices of cells of dimension n not in the image of any s_i."""
        cached = self._nondeg_cache.get(n)
        if cached is not None:
            return cached
        if n == 0:
            result = tuple(self.cells(0))
        else:
            degenerate = set()
            for i in range(1, n + 1):
                degenerate.update(self.degens[(n - 1, i)])
            result = tuple(x for x in self.cells(n) if x not in degenerate)
        self._nondeg_cache[n] = result
        return result

    def degeneracy_source(self, n, i):
        """Some (j, x) with s_j(x) == cell i, for a degenerate cell."""
        for j in range(1, n + 1):
            tbl = self.degens[(n - 1, j)]
            for x, v in enumerate(tbl):
                if v == i:
                    return (j, x)
        return None

    def orbits(self, n):
        """Transposition orbits of nondegenerate n-cells (geometric cells)."""
        nondeg = set(self.nondegenerate(n))
        uf = UnionFind()
        for x in nondeg:
            uf.add(x)
        for i in range(1, n):
            tbl = self.transps[(n, i)]
            for x in nondeg:
                if tbl[x] not in nondeg:
                    raise CsetError("transposition does not preserve nondegeneracy")
                uf.union(x, tbl[x])
        return sorted(sorted(g) for g in uf.classes().values())

    def census(self):
        """Counts of nondegenerate cells up to coordinate transposition."""
        return tuple(len(self.orbits(n)) for n in range(self.trunc + 1))

    def raw_nondegenerate_counts(self):
        return tuple(len(self.nondegenerate(n)) for n in range(self.trunc + 1))

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Full presheaf functoriality over all dimensions <= trunc.

        Checks C(g o phi) == C(phi) then C(g) for every enumerated map phi
        and elementary g; by induction over canonical decompositions this
        is equivalent to functoriality on the truncated cube category.
        """
        self.structural_check()
        for n in range(0, self.trunc):
            degenerate = set(self.degens[(n, i)][x] for i in range(1, n + 2) for x in self.cells(n))
            for i in range(1, n + 1):
                tbl = self.transps.get((n + 1, i))
                if tbl and any(tbl[x] not in degenerate for x in degenerate):
                    raise CsetError("degenerate cells not closed under transpositions")
        for m in range(self.trunc + 1):
            for n in range(self.trunc + 1):
                for phi in cube.enumerate_maps(m, n):
                    base = self.action(phi)
                    for g in _elementary_maps_into(m, self.trunc):
                        # g: [1]^k -> [1]^m; check C(phi o g) == C(g) o C(phi)
                        whole = self.action(cube.compose(phi, g))
                        step = self.action(g)
                        if tuple(step[v] for v in base) != whole:
                            raise CsetError(
                                f"functoriality fails: phi={phi.text()} g={g.text()}"
                            )
        return True


@lru_cache(maxsize=None)
def _elementary_maps_into(m, trunc):
    """Elementary maps with codomain [1]^m and dimensions within trunc."""
    out = []
    if m >= 1:
        for i in range(1, m + 1):
            for eps in (0, 1):
                out.append(cube.coface(eps, i, m))
    if m + 1 <= trunc:
        for i in range(1, m + 2):
            out.append(cube.codegeneracy(i, m + 1))
    for i in range(1, m):
        out.append(cube.transposition(i, m))
    return tuple(out)


# ---------------------------------------------------------------------------
# generic builder from canonical cell keys and a precomposition action


def build_presheaf(trunc, keys_by_dim, act, lattice=None):
    """Assemble explicit tables from `act(phi, key) -> key`.

    keys_by_dim[n] lists the canonical keys of the n-cells in index order;
    `act` implements precomposition with an arbitrary cube map.
    """
    index = [
        {k: i for i, k in enumerate(keys)} for keys in keys_by_dim
    ]
    sizes = tuple(len(keys) for keys in keys_by_dim)
    faces, degens, transps = {}, {}, {}
    for n in range(1, trunc + 1):
        for i in range(1, n + 1):
            for eps in (0, 1):
                phi = cube.coface(eps, i, n)
                faces[(n, i, eps)] = tuple(
                    index[n - 1][act(phi, k)] for k in keys_by_dim[n]
                )
    for n in range(0, trunc):
        for i in range(1, n + 2):
            phi = cube.codegeneracy(i, n + 1)
            degens[(n, i)] = tuple(index[n + 1][act(phi, k)] for k in keys_by_dim[n])
    for n in range(2, trunc + 1):
        for i in range(1, n):
            phi = cube.transposition(i, n)
            transps[(n, i)] = tuple(index[n][act(phi, k)] for k in keys_by_dim[n])
    return CubicalSet(
        trunc,
        sizes,
        faces,
        degens,
        transps,
        keys=tuple(tuple(keys) for keys in keys_by_dim),
        lattice=lattice,
    )


def from_lattice(L, trunc):
    """The cubical set of a finite distributive lattice.

    n-cells are the interval-preserving lattice homomorphisms [1]^n -> L,
    stored as value tables over the vertices of [1]^n in lexicographic
    order; the actions are precomposition.  Cells are enumerated as
    (Boolean interval, surjection onto it) pairs, which is exactly the
    epi-mono factorization of each cell.
    """
    if not L.is_distributive:
        raise CsetError("from_lattice requires a distributive lattice")
    intervals = lat.boolean_intervals(L)
    keys_by_dim = []
    for n in range(trunc + 1):
        keys = set()
        for iv in intervals:
            rank = iv.rank
            # coordinatize the interval by its atoms
            atoms = [
                z
                for z in iv.elements
                if z != iv.lo
                and all(
                    w in (iv.lo, z)
                    for w in lat.interval_elements(L, iv.lo, z)
                )
            ]
            atoms.sort()
            if len(atoms) != rank:
                raise CsetError("internal: atom count does not match rank")
            for epi in cube.enumerate_maps(n, rank, cls=None):
                if any(cube.is_const(s) for s in epi.outputs):
                    continue
                table = []
                for p in cube.points(n):
                    bits = epi(p)
                    elem = iv.lo
                    for b, a in zip(bits, atoms):
                        if b:
                            elem = L.join[elem][a]
                    table.append(elem)
                keys.add(tuple(table))
        keys_by_dim.append(sorted(keys))

    def act(phi, key):
        pts = cube.points(phi.dom)
        return tuple(key[cube.point_index(phi(p))] for p in pts)

    return build_presheaf(trunc, keys_by_dim, act, lattice=L)


def representable(n, trunc):
    """The cubical set of the n-cube; k-cells are cube maps [1]^k -> [1]^n."""
    if trunc < n:
        raise CsetError("truncation below the cube dimension")
    return from_lattice(lat.boolean(n), trunc)


def rep_cell(C, phi):
    """Index of the cell of a representable given by a cube map."""
    key = tuple(cube.point_index(phi(p)) for p in cube.points(phi.dom))
    return C.key_index(phi.dom)[key]


# ---------------------------------------------------------------------------
# cubical functions and subpresheaves


@dataclass(eq=False)
class CubicalFunction:
    dom: CubicalSet
    cod: CubicalSet
    maps: tuple

    def __post_init__(self):
        self.maps = tuple(tuple(m) for m in self.maps)
        if len(self.maps) != min(self.dom.trunc, self.cod.trunc) + 1:
            raise CsetError("cubical function has wrong number of levels")

    def __call__(self, cell):
        n, i = cell
        return (n, self.maps[n][i])

    def level(self, n):
        return self.maps[n]

    def validate(self):
        trunc = len(self.maps) - 1
        for n in range(trunc + 1):
            if len(self.maps[n]) != self.dom.sizes[n]:
                raise CsetError(f"level {n} has wrong length")
        for (n, i, eps), tbl in self.dom.faces.items():
            if n > trunc:
                continue
            cod_tbl = self.cod.faces[(n, i, eps)]
            for x in self.dom.cells(n):
                if cod_tbl[self.maps[n][x]] != self.maps[n - 1][tbl[x]]:
                    raise CsetError(f"face equivariance fails at ({n},{i},{eps},{x})")
        for (n, i), tbl in self.dom.degens.items():
            if n + 1 > trunc:
                continue
            cod_tbl = self.cod.degens[(n, i)]
            for x in self.dom.cells(n):
                if cod_tbl[self.maps[n][x]] != self.maps[n + 1][tbl[x]]:
                    raise CsetError(f"degeneracy equivariance fails at ({n},{i},{x})")
        for (n, i), tbl in self.dom.transps.items():
            if n > trunc:
                continue
            cod_tbl = self.cod.transps[(n, i)]
            for x in self.dom.cells(n):
                if cod_tbl[self.maps[n][x]] != self.maps[n][tbl[x]]:
                    raise CsetError(f"transposition equivariance fails at ({n},{i},{x})")
        return True

    def compose_after(self, other):
        """self o other."""
        trunc = min(len(self.maps), len(other.maps)) - 1
        return CubicalFunction(
            other.dom,
            self.cod,
            tuple(
                tuple(self.maps[n][v] for v in other.maps[n])
                for n in range(trunc + 1)
            ),
        )

    def is_epi(self):
        return all(
            set(self.maps[n]) == set(self.cod.cells(n)) for n in range(len(self.maps))
        )

    def image_of(self, sub):
        sel = [frozenset(self.maps[n][x] for x in sub.sel[n]) for n in range(len(self.maps))]
        return Subpresheaf(self.cod, tuple(sel))


def identity_function(C):
    return CubicalFunction(C, C, tuple(tuple(C.cells(n)) for n in range(C.trunc + 1)))


@dataclass(eq=False)
class Subpresheaf:
    parent: CubicalSet
    sel: tuple  # per-dimension frozensets of cell indices

    def __post_init__(self):
        if len(self.sel) != self.parent.trunc + 1:
            raise CsetError("subpresheaf has wrong number of levels")
        self.sel = tuple(frozenset(s) for s in self.sel)

    def is_empty(self):
        return all(not s for s in self.sel)

    def contains(self, cell):
        n, i = cell
        return i in self.sel[n]

    def issubset(self, other):
        return all(a <= b for a, b in zip(self.sel, other.sel))

    def union(self, other):
        return Subpresheaf(self.parent, tuple(a | b for a, b in zip(self.sel, other.sel)))

    def intersection(self, other):
        return Subpresheaf(self.parent, tuple(a & b for a, b in zip(self.sel, other.sel)))

    def check_closed(self):
        C = self.parent
        for (n, i, eps), tbl in C.faces.items():
            for x in self.sel[n]:
                if tbl[x] not in self.sel[n - 1]:
                    raise CsetError("subpresheaf not closed under faces")
        for (n, i), tbl in C.degens.items():
            for x in self.sel[n]:
                if tbl[x] not in self.sel[n + 1]:
                    raise CsetError("subpresheaf not closed under degeneracies")
        for (n, i), tbl in C.transps.items():
            for x in self.sel[n]:
                if tbl[x] not in self.sel[n]:
                    raise CsetError("subpresheaf not closed under transpositions")
        return True

    def vertices(self):
        return sorted(self.sel[0])


def closure(C, cells):
    """Smallest subpresheaf of C containing the given (dim, index) cells."""
    sel = [set() for _ in range(C.trunc + 1)]
    stack = list(cells)
    for n, i in stack:
        sel[n].add(i)
    while stack:
        n, i = stack.pop()
        moves = []
        for j in range(1, n + 1):
            for eps in (0, 1):
                moves.append((n - 1, C.faces[(n, j, eps)][i]))
        if n < C.trunc:
            for j in range(1, n + 2):
                moves.append((n + 1, C.degens[(n, j)][i]))
        for j in range(1, n):
            moves.append((n, C.transps[(n, j)][i]))
        for m, x in moves:
            if x not in sel[m]:
                sel[m].add(x)
                stack.append((m, x))
    return Subpresheaf(C, tuple(frozenset(s) for s in sel))


def atom(C, cell):
    """The atomic subpresheaf generated by one cell (also its support)."""
    if cell not in C._atom_cache:
        C._atom_cache[cell] = closure(C, [cell])
    return C._atom_cache[cell]


def supp(C, cell):
    return atom(C, cell)


def vertex_sub(C, v):
    """The minimal subpresheaf with unique vertex v."""
    return atom(C, (0, v))


def closed_star(C, v):
    """Union of the atomic subpresheaves whose vertex set contains v."""
    sel = [set() for _ in range(C.trunc + 1)]
    for n in range(C.trunc + 1):
        for i in C.nondegenerate(n):
            a = atom(C, (n, i))
            if v in a.sel[0]:
                for m in range(C.trunc + 1):
                    sel[m] |= a.sel[m]
    return Subpresheaf(C, tuple(frozenset(s) for s in sel))


def boundary(n, trunc):
    """The boundary of the n-cube inside representable(n, trunc)."""
    C = representable(n, trunc)
    sel = [set() for _ in range(trunc + 1)]
    for k in range(trunc + 1):
        for i in C.cells(k):
            key = C.keys[k][i]
            # the cell misses full dimension iff some vertex coordinate is
            # constant across the table
            lo = key[0]
            hi = key[-1]
            lo_pt = lat.boolean(n).labels[lo]
            hi_pt = lat.boolean(n).labels[hi]
            if any(a == b for a, b in zip(lo_pt, hi_pt)):
                sel[k].add(i)
    return C, Subpresheaf(C, tuple(frozenset(s) for s in sel))


def sub_to_cset(S):
    """Promote a subpresheaf to a standalone cubical set with inclusion."""
    C = S.parent
    idx = [sorted(S.sel[n]) for n in range(C.trunc + 1)]
    pos = [{x: k for k, x in enumerate(level)} for level in idx]
    faces = {
        key: tuple(pos[key[0] - 1][tbl[x]] for x in idx[key[0]])
        for key, tbl in C.faces.items()
    }
    degens = {
        key: tuple(pos[key[0] + 1][tbl[x]] for x in idx[key[0]])
        for key, tbl in C.degens.items()
    }
    transps = {
        key: tuple(pos[key[0]][tbl[x]] for x in idx[key[0]])
        for key, tbl in C.transps.items()
    }
    keys = None
    if C.keys is not None:
        keys = tuple(tuple(C.keys[n][x] for x in idx[n]) for n in range(C.trunc + 1))
    sub = CubicalSet(C.trunc, tuple(len(v) for v in idx), faces, degens, transps, keys=keys)
    incl = CubicalFunction(sub, C, tuple(tuple(level) for level in idx))
    return sub, incl


def disjoint_union(A, B):
    if A.trunc != B.trunc:
        raise CsetError("truncation mismatch")
    trunc = A.trunc
    sizes = tuple(a + b for a, b in zip(A.sizes, B.sizes))

    def shift(tbl_a, tbl_b, offset):
        return tuple(tbl_a) + tuple(v + offset for v in tbl_b)

    faces = {
        key: shift(A.faces[key], B.faces[key], A.sizes[key[0] - 1])
        for key in A.faces
    }
    degens = {
        key: shift(A.degens[key], B.degens[key], A.sizes[key[0] + 1])
        for key in A.degens
    }
    transps = {
        key: shift(A.transps[key], B.transps[key], A.sizes[key[0]])
        for key in A.transps
    }
    return CubicalSet(trunc, sizes, faces, degens, transps)


# ---------------------------------------------------------------------------
# quotients


def quotient(C, pairs):
    """Coequalize the given same-dimension cell pairs.

    The identifications are closed under all generator actions by a
    worklist congruence closure; the returned projection maps each cell to
    its class (canonical representative = smallest index).
    """
    for (n1, _), (n2, _) in pairs:
        if n1 != n2:
            raise CsetError("cannot identify cells of different dimensions")
    uf = UnionFind()
    for cell in C.all_cells():
        uf.add(cell)
    worklist = []
    for a, b in pairs:
        if uf.union(a, b):
            worklist.append((a, b))

    def elementary_tables(n):
        out = []
        for i in range(1, n + 1):
            for eps in (0, 1):
                out.append((n - 1, C.faces[(n, i, eps)]))
        if n < C.trunc:
            for i in range(1, n + 2):
                out.append((n + 1, C.degens[(n, i)]))
        for i in range(1, n):
            out.append((n, C.transps[(n, i)]))
        return out

    tables = {n: elementary_tables(n) for n in range(C.trunc + 1)}
    while worklist:
        (n, x), (_, y) = worklist.pop()
        for m, tbl in tables[n]:
            a, b = (m, tbl[x]), (m, tbl[y])
            if uf.union(a, b):
                worklist.append((a, b))
    # classes must stay within one dimension
    reps = {}
    for root, members in uf.classes().items():
        dims = {n for n, _ in members}
        if len(dims) != 1:
            raise CsetError("internal: identification merged dimensions")
        reps[root] = root
    new_index = [dict() for _ in range(C.trunc + 1)]
    sizes = []
    for n in range(C.trunc + 1):
        roots = sorted({uf.find((n, i)) for i in C.cells(n)})
        for k, r in enumerate(roots):
            new_index[n][r] = k
        sizes.append(len(roots))
    proj = tuple(
        tuple(new_index[n][uf.find((n, i))] for i in C.cells(n))
        for n in range(C.trunc + 1)
    )

    def induce(tbl_key, tables_dict, target_dim_of):
        out = {}
        for key, tbl in tables_dict.items():
            n = key[0]
            m = target_dim_of(key)
            new_tbl = [None] * sizes[n]
            for i in C.cells(n):
                v = proj[m][tbl[i]]
                slot = proj[n][i]
                if new_tbl[slot] is None:
                    new_tbl[slot] = v
                elif new_tbl[slot] != v:
                    raise CsetError("internal: quotient action not well defined")
            out[key] = tuple(new_tbl)
        return out

    faces = induce("f", C.faces, lambda key: key[0] - 1)
    degens = induce("s", C.degens, lambda key: key[0] + 1)
    transps = induce("t", C.transps, lambda key: key[0])
    Q = CubicalSet(C.trunc, tuple(sizes), faces, degens, transps)
    return Q, CubicalFunction(C, Q, proj)


# ---------------------------------------------------------------------------
# tensor product (Day convolution)


def _epis(n, k):
    return [
        e
        for e in cube.enumerate_maps(n, k)
        if all(cube.is_proj(s) for s in e.outputs)
    ]


def _split_normalize(A, B, a, b, phi):
    """Rewrite (a, b, phi) as an equivalent triple whose map is an epi.

    Factors phi = (mu_A (x) mu_B) o (w o e) with e the increasing-order
    projection onto the used inputs and w a permutation, then pushes mu_A
    and mu_B into the cells by the presheaf actions.
    """
    p_dim, ia = a
    q_dim, ib = b
    a_side = phi.outputs[:p_dim]
    b_side = phi.outputs[p_dim:]
    used_a = sorted(s[1] for s in a_side if cube.is_proj(s))
    used_b = sorted(s[1] for s in b_side if cube.is_proj(s))
    used = sorted(used_a + used_b)
    pos = {u: r + 1 for r, u in enumerate(used)}
    ka, kb = len(used_a), len(used_b)
    rank_a = {u: r + 1 for r, u in enumerate(used_a)}
    rank_b = {u: r + 1 for r, u in enumerate(used_b)}
    mu_a = cube.CubeMap(
        ka,
        p_dim,
        tuple(s if cube.is_const(s) else cube.proj(rank_a[s[1]]) for s in a_side),
    )
    mu_b = cube.CubeMap(
        kb,
        q_dim,
        tuple(s if cube.is_const(s) else cube.proj(rank_b[s[1]]) for s in b_side),
    )
    e_can = cube.CubeMap(phi.dom, len(used), tuple(cube.proj(u) for u in used))
    w_outputs = [cube.proj(pos[u]) for u in used_a] + [cube.proj(pos[u]) for u in used_b]
    w = cube.CubeMap(len(used), len(used), tuple(w_outputs))
    e = cube.compose(w, e_can)
    new_a = (ka, A.act(mu_a, ia))
    new_b = (kb, B.act(mu_b, ib))
    return (new_a, new_b, e)


@dataclass(eq=False)
class TensorSet:
    cset: CubicalSet
    left: CubicalSet
    right: CubicalSet
    _class_of: dict
    _node_index: dict

    def pair_class(self, a, b):
        """The cell class of a (x) b for a in the left, b in the right factor."""
        n = a[0] + b[0]
        if n > self.cset.trunc:
            raise CsetError("tensor cell beyond truncation")
        node = _split_normalize(self.left, self.right, a, b, cube.identity(n))
        return (n, self._node_index[node])


def tensor(A, B):
    """Day-convolution tensor product, truncated at min(A.trunc, B.trunc).

    Cells are equivalence classes of triples (a, b, e) with e an epi; the
    classes are computed by a union-find over the naturality relations
    generated by elementary maps on either factor.
    """
    trunc = min(A.trunc, B.trunc)
    nodes = []
    for n in range(trunc + 1):
        for p in range(0, min(A.trunc, n) + 1):
            for q in range(0, min(B.trunc, n - p) + 1):
                for e in _epis(n, p + q):
                    for ia in A.cells(p):
                        for ib in B.cells(q):
                            nodes.append(((p, ia), (q, ib), e))
    uf = UnionFind()
    for node in nodes:
        uf.add(node)

    def add_relation(x, y):
        uf.union(x, y)

    for n in range(trunc + 1):
        # relations through the left factor
        for p in range(A.trunc + 1):
            alphas = _elementary_maps_into(p, A.trunc)
            for alpha in alphas:
                pp = alpha.dom  # alpha: [1]^pp -> [1]^p
                for q in range(0, B.trunc + 1):
                    if pp + q > n:
                        continue
                    shifted = cube.tensor(alpha, cube.identity(q))
                    for psi in _epis(n, pp + q):
                        composed = cube.compose(shifted, psi)
                        for ia in A.cells(p):
                            lhs_cell = (pp, A.act(alpha, ia))
                            for ib in B.cells(q):
                                lhs = (lhs_cell, (q, ib), psi)
                                rhs = _split_normalize(
                                    A, B, (p, ia), (q, ib), composed
                                )
                                add_relation(lhs, rhs)
        # relations through the right factor
        for q in range(B.trunc + 1):
            betas = _elementary_maps_into(q, B.trunc)
            for beta in betas:
                qq = beta.dom
                for p in range(0, A.trunc + 1):
                    if p + qq > n:
                        continue
                    shifted = cube.tensor(cube.identity(p), beta)
                    for psi in _epis(n, p + qq):
                        composed = cube.compose(shifted, psi)
                        for ia in A.cells(p):
                            for ib in B.cells(q):
                                lhs = ((p, ia), (qq, B.act(beta, ib)), psi)
                                rhs = _split_normalize(
                                    A, B, (p, ia), (q, ib), composed
                                )
                                add_relation(lhs, rhs)

    node_dim = {node: node[2].dom for node in nodes}
    class_members = {}
    for node in node_dim:
        root = uf.find(node)
        class_members.setdefault(root, []).append(node)
    roots_by_dim = [[] for _ in range(trunc + 1)]
    for root, members in class_members.items():
        dims = {node_dim[m] for m in members}
        if len(dims) != 1:
            raise CsetError("internal: tensor class spans dimensions")
        roots_by_dim[dims.pop()].append(root)
    for level in roots_by_dim:
        level.sort()
    node_index = {}
    for n, level in enumerate(roots_by_dim):
        for k, root in enumerate(level):
            for m in class_members[root]:
                node_index[m] = k
    sizes = tuple(len(level) for level in roots_by_dim)

    def induced(phi, n):
        # the action of phi: [1]^{n'} -> [1]^n on class representatives
        result = []
        for root in roots_by_dim[n]:
            targets = set()
            for a, b, e in class_members[root]:
                moved = _split_normalize(A, B, a, b, cube.compose(e, phi))
                targets.add(node_index[moved])
            if len(targets) != 1:
                raise CsetError("internal: tensor action not well defined")
            result.append(targets.pop())
        return tuple(result)

    faces, degens, transps = {}, {}, {}
    for n in range(1, trunc + 1):
        for i in range(1, n + 1):
            for eps in (0, 1):
                faces[(n, i, eps)] = induced(cube.coface(eps, i, n), n)
    for n in range(0, trunc):
        for i in range(1, n + 2):
            degens[(n, i)] = induced(cube.codegeneracy(i, n + 1), n)
    for n in range(2, trunc + 1):
        for i in range(1, n):
            transps[(n, i)] = induced(cube.transposition(i, n), n)
    T = CubicalSet(trunc, sizes, faces, degens, transps)
    class_of = {m: node_index[m] for m in node_index}
    return TensorSet(T, A, B, class_of, node_index)


def cylinder(B):
    """B (x) [1] with the two end inclusions."""
    interval = representable(1, max(B.trunc, 1))
    ts = tensor(B, interval)
    end0 = rep_cell(interval, cube.CubeMap(0, 1, (cube.CONST0,)))
    end1 = rep_cell(interval, cube.CubeMap(0, 1, (cube.CONST1,)))
    maps0, maps1 = [], []
    for n in range(ts.cset.trunc + 1):
        row0, row1 = [], []
        for i in B.cells(n):
            row0.append(ts.pair_class((n, i), (0, end0))[1])
            row1.append(ts.pair_class((n, i), (0, end1))[1])
        maps0.append(tuple(row0))
        maps1.append(tuple(row1))
    incl0 = CubicalFunction(B, ts.cset, tuple(maps0))
    incl1 = CubicalFunction(B, ts.cset, tuple(maps1))
    return ts.cset, incl0, incl1


# ---------------------------------------------------------------------------
# serialization


def to_json(C):
    data = {
        "trunc": C.trunc,
        "cells": list(C.sizes),
        "faces": {f"{n},{i},{eps}": list(tbl) for (n, i, eps), tbl in sorted(C.faces.items())},
        "degens": {f"{n},{i}": list(tbl) for (n, i), tbl in sorted(C.degens.items())},
        "transps": {f"{n},{i}": list(tbl) for (n, i), tbl in sorted(C.transps.items())},
    }
    return json.dumps(data, sort_keys=True)


def from_json(text):
    data = json.loads(text)
    faces = {}
    for key, tbl in data["faces"].items():
        n, i, eps = (int(v) for v in key.split(","))
        faces[(n, i, eps)] = tuple(tbl)
    degens = {}
    for key, tbl in data["degens"].items():
        n, i = (int(v) for v in key.split(","))
        degens[(n, i)] = tuple(tbl)
    transps = {}
    for key, tbl in data["transps"].items():
        n, i = (int(v) for v in key.split(","))
        transps[(n, i)] = tuple(tbl)
    return CubicalSet(data["trunc"], tuple(data["cells"]), faces, degens, transps)


def dot_skeleton(C, name="cset"):
    """DOT digraph of the 1-skeleton; edges oriented lower face -> upper face."""
    lines = [f"digraph {name} {{"]
    for v in C.cells(0):
        lines.append(f"  v{v};")
    for e in C.nondegenerate(1):
        src = C.faces[(1, 1, 0)][e]
        tgt = C.faces[(1, 1, 1)][e]
        lines.append(f"  v{src} -> v{tgt} [label=\"e{e}\"];")
    lines.append("}")
    return "\n".join(lines)
