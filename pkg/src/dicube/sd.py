"""Edgewise subdivision of cubical sets, the middle-evaluation collapse
sd3 C -> C, supports of subdivision vertices, and local lifting of the
double collapse through representables.

Subdivision of a lattice-backed cubical set is computed directly on the
lattice; anything else is glued as a colimit of subdivided representable
blocks over the category of elements, with a union-find over nodes
(cell of C, cell of the block).  Both paths expose the same interface:
carrier cells, subdivided subpresheaves, the collapse map, and induced
maps of subdivided cubical functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import cube
from . import lattice as lat
from . import cset as cs


class SdError(ValueError):
    pass


@lru_cache(maxsize=None)
def _block(n, k, trunc):
    """Subdivided n-cube block: its lattice and its cubical set."""
    SL = lat.subdivide_lattice(lat.boolean(n), k)
    BL = cs.from_lattice(SL, trunc)
    return SL, BL


def _block_map(n_from, n_to, phi, k, trunc):
    """Cell table of the subdivided map between blocks, per dimension.

    phi: [1]^n_from -> [1]^n_to acts on block-lattice labels pointwise.
    """
    SLf, BLf = _block(n_from, k, trunc)
    SLt, BLt = _block(n_to, k, trunc)
    elem_map = []
    to_index = {label: e for e, label in enumerate(SLt.labels)}
    for label in SLf.labels:
        moved = tuple(
            cube.point_index(phi(lat.boolean(n_from).labels[b])) for b in label
        )
        elem_map.append(to_index[moved])
    tables = []
    for j in range(trunc + 1):
        idx = {key: i for i, key in enumerate(BLt.keys[j])}
        tables.append(
            tuple(
                idx[tuple(elem_map[v] for v in key)] for key in BLf.keys[j]
            )
        )
    return tables


class Subdivision:
    """sd_{k+1} C together with its gluing data."""

    def __init__(self, base, k):
        self.base = base
        self.k = k
        if base.lattice is not None:
            self._init_fast()
        else:
            self._init_general()

    # -- fast path: base is the cubical set of a lattice --------------------

    def _init_fast(self):
        L = self.base.lattice
        self.sdL = lat.subdivide_lattice(L, self.k)
        self.cset = cs.from_lattice(self.sdL, self.base.trunc)
        self._sdl_index = {label: e for e, label in enumerate(self.sdL.labels)}
        self._fast = True
        self._carrier = {}
        boolean_cache = {}
        for j in range(self.cset.trunc + 1):
            for i in self.cset.cells(j):
                key = self.cset.keys[j][i]
                lo_label = self.sdL.labels[key[0]]
                hi_label = self.sdL.labels[key[-1]]
                lo, hi = lo_label[0], hi_label[-1]
                rank = lat.boolean_rank(L, lo, hi)
                if rank is None:
                    raise SdError("internal: carrier interval is not Boolean")
                self._carrier[(j, i)] = self._interval_cell(lo, hi, rank)

    def _interval_cell(self, lo, hi, rank):
        """Index of the canonical inclusion cell of the interval [lo, hi]."""
        L = self.base.lattice
        atoms = sorted(
            z
            for z in lat.interval_elements(L, lo, hi)
            if z != lo and len(lat.interval_elements(L, lo, z)) == 2
        )
        table = []
        for p in cube.points(rank):
            elem = lo
            for b, a in zip(p, atoms):
                if b:
                    elem = L.join[elem][a]
            table.append(elem)
        return (rank, self.base.keys[rank].index(tuple(table)))

    # -- general path: colimit of blocks over the category of elements ------

    def _init_general(self):
        self._fast = False
        base = self.base
        trunc = base.trunc
        uf = cs.UnionFind()
        blocks = {n: _block(n, self.k, trunc)[1] for n in range(trunc + 1)}
        for n in range(trunc + 1):
            for i in base.cells(n):
                for j in range(trunc + 1):
                    for u in blocks[n].cells(j):
                        uf.add(((n, i), (j, u)))
        for n in range(trunc + 1):
            for phi in cs._elementary_maps_into(n, trunc):
                npr = phi.dom
                act = base.action(phi)
                tables = _block_map(npr, n, phi, self.k, trunc)
                for i in base.cells(n):
                    ci = act[i]
                    for j in range(trunc + 1):
                        tbl = tables[j]
                        for u in blocks[npr].cells(j):
                            uf.union(((npr, ci), (j, u)), ((n, i), (j, tbl[u])))
        groups = uf.classes()
        members = {}
        for root, nodes in groups.items():
            dims = {node[1][0] for node in nodes}
            if len(dims) != 1:
                raise SdError("internal: subdivision class spans dimensions")
            members[root] = sorted(nodes)
        roots_by_dim = [[] for _ in range(trunc + 1)]
        for root in members:
            roots_by_dim[root[1][0]].append(root)
        for level in roots_by_dim:
            level.sort()
        self._class_index = {}
        self._members = [[] for _ in range(trunc + 1)]
        for j, level in enumerate(roots_by_dim):
            for idx, root in enumerate(level):
                self._members[j].append(members[root])
                for node in members[root]:
                    self._class_index[node] = idx
        sizes = tuple(len(level) for level in roots_by_dim)
        self._blocks = blocks

        def induced(phi, j):
            # phi: [1]^{j'} -> [1]^j acting blockwise
            out = []
            for idx in range(sizes[j]):
                targets = set()
                for (cell, (_, u)) in self._members[j][idx]:
                    moved = blocks[cell[0]].act(phi, u)
                    targets.add(self._class_index[(cell, (phi.dom, moved))])
                if len(targets) != 1:
                    raise SdError("internal: subdivision action not well defined")
                out.append(targets.pop())
            return tuple(out)

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
        self.cset = cs.CubicalSet(trunc, sizes, faces, degens, transps)
        # carrier: the minimal-dimension member cell; all members must
        # contain it in their atoms, which makes sd_sub a carrier test
        self._carrier = {}
        for j in range(trunc + 1):
            for idx in range(sizes[j]):
                cells = {node[0] for node in self._members[j][idx]}
                min_dim = min(c[0] for c in cells)
                mins = sorted(c for c in cells if c[0] == min_dim)
                c0 = mins[0]
                a0 = self._atom(c0)
                for c in mins[1:]:
                    if self._atom(c).sel != a0.sel:
                        raise SdError("internal: ambiguous carrier")
                for c in cells:
                    if not a0.issubset(self._atom(c)):
                        raise SdError("internal: carrier not minimal")
                self._carrier[(j, idx)] = c0

    def _atom(self, cell):
        return cs.atom(self.base, cell)

    # -- shared interface ----------------------------------------------------

    def carrier_cell(self, cell):
        """The cell of the base whose subdivided block minimally carries `cell`."""
        return self._carrier[cell]

    def class_of(self, c, u):
        """The subdivided cell represented by block cell u over base cell c."""
        n, i = c
        j, ub = u
        if self._fast:
            SLn, BL = _block(n, self.k, self.base.trunc)
            ckey = self.base.keys[n][i]
            to_index = self._sdl_index
            ukey = BL.keys[j][ub]
            table = tuple(
                to_index[tuple(ckey[b] for b in SLn.labels[v])] for v in ukey
            )
            return (j, self.cset.key_index(j)[table])
        return (j, self._class_index[((n, i), (j, ub))])

    def reps_over(self, cell, c):
        """Block cells u with class_of(c, u) == cell."""
        j, idx = cell
        n, i = c
        if self._fast:
            L = self.base.lattice
            ckey = self.base.keys[n][i]
            inverse = {}
            for b, e in enumerate(ckey):
                if e in inverse and inverse[e] != b:
                    raise SdError("reps_over requires an injective base cell")
                inverse[e] = b
            SLn, BL = _block(n, self.k, self.base.trunc)
            sl_index = {label: e for e, label in enumerate(SLn.labels)}
            xkey = self.cset.keys[j][idx]
            ukey = []
            for v in xkey:
                label = self.sdL.labels[v]
                if any(e not in inverse for e in label):
                    return []
                ukey.append(sl_index.get(tuple(inverse[e] for e in label)))
            if None in ukey:
                return []
            found = BL.key_index(j).get(tuple(ukey))
            return [] if found is None else [(j, found)]
        return [node[1] for node in self._members[j][idx] if node[0] == (n, i)]

    def sd_sub(self, S):
        """The subdivision of a subpresheaf, inside the subdivided base."""
        sel = []
        for j in range(self.cset.trunc + 1):
            sel.append(
                frozenset(
                    i
                    for i in self.cset.cells(j)
                    if S.contains(self._carrier[(j, i)])
                )
            )
        return cs.Subpresheaf(self.cset, tuple(sel))

    def supp_vertex(self, v):
        """Minimal subpresheaf B of the base with v a vertex of sd B."""
        return self._atom(self._carrier[(0, v)])

    def eps(self):
        """The collapse sd3 C -> C (middle evaluation); requires k == 2."""
        if self.k != 2:
            raise SdError("the collapse is defined for threefold subdivision")
        base = self.base
        maps = []
        for j in range(self.cset.trunc + 1):
            level = []
            for i in self.cset.cells(j):
                targets = set()
                for c, u in self._cell_nodes((j, i)):
                    targets.add(self._eps_node(c, u))
                if len(targets) != 1:
                    raise SdError("internal: collapse not well defined")
                level.append(targets.pop())
            maps.append(tuple(level))
        f = cs.CubicalFunction(self.cset, base, tuple(maps))
        f.validate()
        return f

    def _cell_nodes(self, cell):
        j, idx = cell
        if self._fast:
            c = self._carrier[cell]
            return [(c, u) for u in self.reps_over(cell, c)]
        return self._members[j][idx]

    def _eps_node(self, c, u):
        n, i = c
        j, ub = u
        SLn, BL = _block(n, self.k, self.base.trunc)
        ukey = BL.keys[j][ub]
        bn = lat.boolean(n)
        values = tuple(bn.labels[SLn.labels[v][1]] for v in ukey)
        phi, witness = cube.from_function(cube.FunctionTable(j, n, values))
        if phi is None:
            raise SdError(f"internal: collapse component not a cube map ({witness})")
        return self.base.act(phi, i)

    def induced(self, f, sd_cod):
        """sd f : sd(dom) -> sd(cod) for a cubical function f from the base."""
        if f.dom is not self.base:
            raise SdError("function domain does not match the subdivided base")
        maps = []
        for j in range(self.cset.trunc + 1):
            level = []
            for i in self.cset.cells(j):
                targets = set()
                for c, u in self._cell_nodes((j, i)):
                    targets.add(sd_cod.class_of(f(c), u)[1])
                if len(targets) != 1:
                    raise SdError("internal: induced map not well defined")
                level.append(targets.pop())
            maps.append(tuple(level))
        g = cs.CubicalFunction(self.cset, sd_cod.cset, tuple(maps))
        g.validate()
        return g


def subdivide(C, k):
    """sd_{k+1} C with gluing data; `k = 0` returns an isomorphic copy."""
    if k < 0:
        raise SdError("subdivision parameter must be >= 0")
    return Subdivision(C, k)


def sd3(C):
    return subdivide(C, 2)


@dataclass(eq=False)
class DoubleSubdivision:
    base: object
    r1: Subdivision
    r2: Subdivision
    eps1: cs.CubicalFunction
    eps2: cs.CubicalFunction

    @property
    def cset(self):
        return self.r2.cset


def sd9(C):
    """Two successive threefold subdivisions with their collapse maps."""
    r1 = sd3(C)
    r2 = sd3(r1.cset)
    return DoubleSubdivision(C, r1, r2, r1.eps(), r2.eps())


# ---------------------------------------------------------------------------
# partial cubical functions on subpresheaves


@dataclass(eq=False)
class SubFunction:
    """A cubical function defined on a subpresheaf."""

    dom_sub: cs.Subpresheaf
    cod: cs.CubicalSet
    values: dict  # (n, i) -> (n, j)

    def __call__(self, cell):
        return self.values[cell]

    def validate(self):
        S = self.dom_sub
        C = S.parent
        for n in range(C.trunc + 1):
            for i in S.sel[n]:
                if (n, i) not in self.values:
                    raise SdError("partial map misses a cell of its domain")
        for (n, i, eps), tbl in C.faces.items():
            cod_tbl = self.cod.faces[(n, i, eps)]
            for x in S.sel[n]:
                if cod_tbl[self.values[(n, x)][1]] != self.values[(n - 1, tbl[x])][1]:
                    raise SdError("partial map not face-equivariant")
        for (n, i), tbl in C.degens.items():
            cod_tbl = self.cod.degens[(n, i)]
            for x in S.sel[n]:
                if cod_tbl[self.values[(n, x)][1]] != self.values[(n + 1, tbl[x])][1]:
                    raise SdError("partial map not degeneracy-equivariant")
        for (n, i), tbl in C.transps.items():
            cod_tbl = self.cod.transps[(n, i)]
            for x in S.sel[n]:
                if cod_tbl[self.values[(n, x)][1]] != self.values[(n, tbl[x])][1]:
                    raise SdError("partial map not transposition-equivariant")
        return True


@dataclass(eq=False)
class LocalLift:
    """A factorization of the double collapse on a star-shaped piece."""

    dim: int
    up: SubFunction  # S -> representable(dim)
    down: cs.CubicalFunction  # representable(dim) -> C
    through: cs.CubicalSet  # representable(dim)
    face: tuple  # carrier-block interval the retraction clamps to


def _image_sub(f, S):
    sel = [
        frozenset(f.maps[n][x] for x in S.sel[n]) for n in range(len(f.maps))
    ]
    return cs.Subpresheaf(f.cod, tuple(sel))


def local_lift(d9, S):
    """Factor the double collapse through a representable on S.

    S must be a nonempty subpresheaf of sd9(C) contained in the closed
    star of one of its vertices.  Returns the factorization (up, down)
    with down o up equal to the double collapse restricted to S; the
    commutativity is verified cell by cell.
    """
    C, r1, r2 = d9.base, d9.r1, d9.r2
    E = r2.cset
    if S.is_empty():
        raise SdError("local lift of an empty subpresheaf")
    S.check_closed()
    if not any(
        S.issubset(cs.closed_star(E, v)) for v in S.sel[0]
    ):
        raise SdError("subpresheaf is not contained in a closed star")

    A = _image_sub(d9.eps2, S)

    # minimal atom of C whose subdivision meets A
    candidates = []
    seen = set()
    for cell in C.all_cells():
        a = cs.atom(C, cell)
        key = a.sel
        if key in seen:
            continue
        seen.add(key)
        if not A.intersection(r1.sd_sub(a)).is_empty():
            candidates.append(a)
    least = None
    for a in candidates:
        if all(a.issubset(b) for b in candidates if b is not a):
            least = a
            break
    if least is None or not all(least.issubset(b) for b in candidates):
        raise SdError("no least atom meets the collapsed subpresheaf")
    c_s = least
    B = A.intersection(r1.sd_sub(c_s))

    # ambient atom of A inside sd3 C and its carrier block
    anchor = None
    for j in range(r1.cset.trunc, -1, -1):
        for i in sorted(A.sel[j]):
            if A.issubset(cs.atom(r1.cset, (j, i))):
                anchor = (j, i)
                break
        if anchor:
            break
    if anchor is None:
        raise SdError("collapsed subpresheaf is not contained in an atom")
    c_star = r1.carrier_cell(anchor)
    n_star = c_star[0]
    bn = lat.boolean(n_star)
    SL, BL = _block(n_star, 2, C.trunc)

    # candidate faces of the carrier block, minimal by interval inclusion
    def block_cells_in_face(lo, hi):
        cells = []
        for j in range(BL.trunc + 1):
            level = set()
            for u in BL.cells(j):
                ukey = BL.keys[j][u]
                if all(
                    bn.leq(lo, b) and bn.leq(b, hi)
                    for v in ukey
                    for b in SL.labels[v]
                ):
                    level.add(u)
            cells.append(level)
        return cells

    pre_sel = [set() for _ in range(BL.trunc + 1)]
    for j in range(BL.trunc + 1):
        for u in BL.cells(j):
            target = r1.class_of(c_star, (j, u))
            if A.contains(target):
                pre_sel[j].add(u)

    face_candidates = []
    for lo in range(bn.size):
        for hi in range(bn.size):
            if not bn.leq(lo, hi):
                continue
            in_face = block_cells_in_face(lo, hi)
            if any(pre_sel[j] & in_face[j] for j in range(BL.trunc + 1)):
                face_candidates.append((lo, hi))
    minimal = [
        (lo, hi)
        for lo, hi in face_candidates
        if not any(
            (lo2, hi2) != (lo, hi) and bn.leq(lo, lo2) and bn.leq(hi2, hi)
            for lo2, hi2 in face_candidates
        )
    ]

    def face_cell_atom(lo, hi):
        rank = lat.boolean_rank(bn, lo, hi)
        atoms = sorted(
            z
            for z in lat.interval_elements(bn, lo, hi)
            if z != lo and len(lat.interval_elements(bn, lo, z)) == 2
        )
        outputs = []
        lo_pt = bn.labels[lo]
        atom_coord = {
            a: next(t for t in range(n_star) if bn.labels[a][t] != lo_pt[t])
            for a in atoms
        }
        coord_rank = {atom_coord[a]: r + 1 for r, a in enumerate(atoms)}
        for t in range(n_star):
            if t in coord_rank:
                outputs.append(cube.proj(coord_rank[t]))
            else:
                outputs.append(("c", lo_pt[t]))
        mono = cube.CubeMap(rank, n_star, tuple(outputs))
        face_cell = (rank, C.act(mono, c_star[1]))
        return cs.atom(C, face_cell)

    chosen = None
    for lo, hi in sorted(minimal):
        if face_cell_atom(lo, hi).sel == c_s.sel:
            chosen = (lo, hi)
            break
    if chosen is None:
        raise SdError("no carrier-block face matches the minimal atom")
    lo, hi = chosen

    clamp_elem = tuple(
        bn.meet[bn.join[e][lo]][hi] for e in range(bn.size)
    )
    sl_index = {label: e for e, label in enumerate(SL.labels)}
    clamp_sl = tuple(
        sl_index[tuple(clamp_elem[b] for b in label)] for label in SL.labels
    )

    def clamp_block_cell(j, u):
        ukey = BL.keys[j][u]
        return BL.key_index(j)[tuple(clamp_sl[v] for v in ukey)]

    pi = {}
    for j in range(r1.cset.trunc + 1):
        for i in sorted(A.sel[j]):
            reps = r1.reps_over((j, i), c_star)
            if not reps:
                raise SdError("internal: no block representative over the carrier")
            targets = {
                r1.class_of(c_star, (jr, clamp_block_cell(jr, ur)))
                for jr, ur in reps
            }
            if len(targets) != 1:
                raise SdError("internal: retraction not well defined")
            target = targets.pop()
            if not B.contains(target):
                raise SdError("internal: retraction leaves the intersection")
            pi[(j, i)] = target
    pi_fn = SubFunction(A, r1.cset, pi)
    pi_fn.validate()
    for j in range(r1.cset.trunc + 1):
        for i in B.sel[j]:
            if pi[(j, i)] != (j, i):
                raise SdError("internal: retraction does not fix the intersection")
    for j in range(r1.cset.trunc + 1):
        for i in A.sel[j]:
            if d9.eps1.maps[j][pi[(j, i)][1]] != d9.eps1.maps[j][i]:
                raise SdError("internal: retraction does not commute with the collapse")

    # the intersection is a representable: find its top cell and coordinatize
    top_dim = max(
        (j for j in range(r1.cset.trunc + 1) if set(r1.cset.nondegenerate(j)) & B.sel[j]),
        default=0,
    )
    tops = sorted(set(r1.cset.nondegenerate(top_dim)) & B.sel[top_dim])
    if not tops or cs.atom(r1.cset, (top_dim, tops[0])).sel != B.sel:
        raise SdError("intersection is not atomic")
    top = (top_dim, tops[0])
    top_reps = r1.reps_over(top, c_star)
    jt, ut = top_reps[0]
    tkey = BL.keys[jt][ut]
    k_lo, k_hi = tkey[0], tkey[-1]
    k_rank = lat.boolean_rank(SL, k_lo, k_hi)
    if k_rank != top_dim:
        raise SdError("internal: top interval rank mismatch")
    k_atoms = sorted(
        z
        for z in lat.interval_elements(SL, k_lo, k_hi)
        if z != k_lo and len(lat.interval_elements(SL, k_lo, z)) == 2
    )
    bd = lat.boolean(top_dim)

    def coordinatize(v):
        bits = tuple(int(SL.leq(a, v)) for a in k_atoms)
        return cube.point_index(bits)

    R = cs.representable(top_dim, C.trunc)
    iso, iso_inv = {}, {}
    for j in range(r1.cset.trunc + 1):
        for i in B.sel[j]:
            reps = r1.reps_over((j, i), c_star)
            images = set()
            for jr, ur in reps:
                ukey = BL.keys[jr][ur]
                if not all(SL.leq(k_lo, v) and SL.leq(v, k_hi) for v in ukey):
                    continue
                images.add(tuple(coordinatize(v) for v in ukey))
            if len(images) != 1:
                raise SdError("internal: coordinatization not well defined")
            rkey = images.pop()
            ri = R.key_index(j)[rkey]
            iso[(j, i)] = (j, ri)
            iso_inv[(j, ri)] = (j, i)
    for j in range(r1.cset.trunc + 1):
        if len([1 for i in B.sel[j]]) != R.sizes[j]:
            raise SdError("internal: intersection is not a full representable")

    down_maps = []
    for j in range(R.trunc + 1):
        level = []
        for ri in R.cells(j):
            bi = iso_inv[(j, ri)][1]
            level.append(d9.eps1.maps[j][bi])
        down_maps.append(tuple(level))
    down = cs.CubicalFunction(R, C, tuple(down_maps))
    down.validate()

    up_values = {}
    for j in range(E.trunc + 1):
        for i in S.sel[j]:
            a_cell = (j, d9.eps2.maps[j][i])
            up_values[(j, i)] = iso[pi[a_cell]]
    up = SubFunction(S, R, up_values)
    up.validate()

    for j in range(E.trunc + 1):
        for i in S.sel[j]:
            via = down.maps[j][up_values[(j, i)][1]]
            direct = d9.eps1.maps[j][d9.eps2.maps[j][i]]
            if via != direct:
                raise SdError("local lift does not commute with the double collapse")

    return LocalLift(top_dim, up, down, R, (lo, hi))
