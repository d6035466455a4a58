"""Finite posets and lattices, Boolean intervals, edgewise subdivision.

Lattices are stored with full join/meet tables over canonical integer
element indices.  Constructors fix the index order (lexicographic on
element labels) so results are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    size: int
    leq: tuple

    def __post_init__(self):
        n = self.size
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise LatticeError("leq table has wrong shape")
        for x in range(n):
            if not self.leq[x][x]:
                raise LatticeError(f"leq not reflexive at {x}")
        for x in range(n):
            for y in range(n):
                if x != y and self.leq[x][y] and self.leq[y][x]:
                    raise LatticeError(f"leq not antisymmetric at {x},{y}")
                if self.leq[x][y]:
                    for z in range(n):
                        if self.leq[y][z] and not self.leq[x][z]:
                            raise LatticeError(f"leq not transitive at {x},{y},{z}")


@dataclass(frozen=True)
class FiniteLattice:
    poset: Poset
    join: tuple
    meet: tuple
    labels: tuple
    is_distributive: bool = field(compare=False)

    @property
    def size(self):
        return self.poset.size

    def leq(self, x, y):
        return self.poset.leq[x][y]

    @property
    def bottom(self):
        return next(
            x for x in range(self.size) if all(self.leq(x, y) for y in range(self.size))
        )

    @property
    def top(self):
        return next(
            x for x in range(self.size) if all(self.leq(y, x) for y in range(self.size))
        )


def _check_distributive(join, meet, n):
    rng = range(n)
    for x in rng:
        for y in rng:
            for z in rng:
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False
    return True


def lattice_from_leq(leq, labels=None):
    """Build a lattice from an order table; raises if lub/glb are missing."""
    leq = tuple(tuple(bool(v) for v in row) for row in leq)
    poset = Poset(len(leq), leq)
    n = poset.size
    if n == 0:
        raise LatticeError("empty lattice")
    join_rows, meet_rows = [], []
    for x in range(n):
        jrow, mrow = [], []
        for y in range(n):
            uppers = [z for z in range(n) if leq[x][z] and leq[y][z]]
            least = [z for z in uppers if all(leq[z][w] for w in uppers)]
            if len(least) != 1:
                raise LatticeError(f"no join for {x},{y}")
            jrow.append(least[0])
            lowers = [z for z in range(n) if leq[z][x] and leq[z][y]]
            greatest = [z for z in lowers if all(leq[w][z] for w in lowers)]
            if len(greatest) != 1:
                raise LatticeError(f"no meet for {x},{y}")
            mrow.append(greatest[0])
        join_rows.append(tuple(jrow))
        meet_rows.append(tuple(mrow))
    join, meet = tuple(join_rows), tuple(meet_rows)
    if labels is None:
        labels = tuple(range(n))
    return FiniteLattice(poset, join, meet, tuple(labels), _check_distributive(join, meet, n))


def lattice_from_labels(labels, leq_fn):
    labels = tuple(sorted(labels))
    leq = [[leq_fn(a, b) for b in labels] for a in labels]
    return lattice_from_leq(leq, labels)


@lru_cache(maxsize=None)
def chain(k):
    """The ordinal [k] = {0 <= 1 <= ... <= k}."""
    return lattice_from_labels(range(k + 1), lambda a, b: a <= b)


def product(L, M):
    """Product lattice; elements are (L-index, M-index) pairs in lex order."""
    labels = [(i, j) for i in range(L.size) for j in range(M.size)]
    return lattice_from_labels(
        labels, lambda a, b: L.leq(a[0], b[0]) and M.leq(a[1], b[1])
    )


@lru_cache(maxsize=None)
def boolean(n):
    """[1]^n with elements the bit tuples in lex order."""
    labels = list(itertools.product((0, 1), repeat=n))
    return lattice_from_labels(labels, lambda a, b: all(x <= y for x, y in zip(a, b)))


def m_lattice(num_atoms):
    """Bottom, `num_atoms` pairwise-incomparable atoms, top (M_3, M_4, ...)."""
    n = num_atoms + 2
    bot, top = 0, n - 1

    def leq(a, b):
        return a == b or a == bot or b == top

    return lattice_from_labels(range(n), leq)


def n5():
    """The pentagon: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c."""
    # labels 0=bottom, 1=a, 2=c, 3=b, 4=top
    pairs = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)}

    def leq(a, b):
        return a == b or (a, b) in pairs

    return lattice_from_labels(range(5), leq)


def covers(L):
    """Cover relations (x, y) with y an immediate successor of x."""
    result = []
    for x in range(L.size):
        for y in range(L.size):
            if x != y and L.leq(x, y):
                between = [
                    z for z in range(L.size) if z not in (x, y) and L.leq(x, z) and L.leq(z, y)
                ]
                if not between:
                    result.append((x, y))
    return result


def interval_elements(L, lo, hi):
    if not L.leq(lo, hi):
        raise LatticeError(f"not an interval: {lo} !<= {hi}")
    return tuple(z for z in range(L.size) if L.leq(lo, z) and L.leq(z, hi))


def boolean_rank(L, lo, hi):
    """Rank k when [lo, hi] is isomorphic to [1]^k, else None.

    A finite interval is Boolean iff it is distributive and every element
    has a complement inside it.  (Size 2^k with complements is not enough
    in non-modular or M_n-like ambients, so distributivity is checked too;
    the oracle module cross-checks this against explicit isomorphism
    search.)
    """
    elems = interval_elements(L, lo, hi)
    size = len(elems)
    k = size.bit_length() - 1
    if size != 1 << k:
        return None
    eset = set(elems)
    join, meet = L.join, L.meet
    for x in elems:
        for y in elems:
            if join[x][y] not in eset or meet[x][y] not in eset:
                return None  # not a sublattice (cannot happen for intervals)
            for z in elems:
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return None
    for x in elems:
        if not any(meet[x][y] == lo and join[x][y] == hi for y in elems):
            return None
    return k


@dataclass(frozen=True)
class Interval:
    lattice: FiniteLattice
    lo: int
    hi: int
    elements: tuple
    rank: object  # int when Boolean, else None

    @staticmethod
    def of(L, lo, hi):
        return Interval(L, lo, hi, interval_elements(L, lo, hi), boolean_rank(L, lo, hi))


def boolean_intervals(L):
    """All Boolean intervals of L, singletons included, in index order."""
    result = []
    for lo in range(L.size):
        for hi in range(L.size):
            if L.leq(lo, hi):
                rank = boolean_rank(L, lo, hi)
                if rank is not None:
                    result.append(Interval(L, lo, hi, interval_elements(L, lo, hi), rank))
    return result


@dataclass(frozen=True)
class LatticeMap:
    dom: FiniteLattice
    cod: FiniteLattice
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.dom.size:
            raise LatticeError("map table length does not match domain size")
        if any(not 0 <= v < self.cod.size for v in self.values):
            raise LatticeError("map value out of codomain range")

    def __call__(self, x):
        return self.values[x]

    def is_monotone(self):
        for x in range(self.dom.size):
            for y in range(self.dom.size):
                if self.dom.leq(x, y) and not self.cod.leq(self.values[x], self.values[y]):
                    return False
        return True


def is_lattice_hom(f):
    """(verdict, witness): witness names a violated join or meet pair."""
    L, M = f.dom, f.cod
    for x in range(L.size):
        for y in range(L.size):
            if f(L.join[x][y]) != M.join[f(x)][f(y)]:
                return False, ("join", x, y)
            if f(L.meet[x][y]) != M.meet[f(x)][f(y)]:
                return False, ("meet", x, y)
    return True, None


def is_dis_morphism(f):
    """Decide whether f is a distributive-lattice morphism: a lattice
    homomorphism mapping Boolean intervals onto Boolean intervals.

    Also evaluates the interval-local criterion (restriction to each
    Boolean interval corestricts to a surjective lattice homomorphism onto
    a Boolean interval) and insists the two verdicts agree.
    Returns (verdict, witness); the witness is a violated pair or interval.
    """
    if not f.is_monotone():
        raise LatticeError("is_dis_morphism expects a monotone map")
    L, M = f.dom, f.cod
    verdict1, witness = is_lattice_hom(f)
    if verdict1:
        for iv in boolean_intervals(L):
            image = sorted({f(z) for z in iv.elements})
            lo, hi = f(iv.lo), f(iv.hi)
            if boolean_rank(M, lo, hi) is None or set(image) != set(
                interval_elements(M, lo, hi)
            ):
                verdict1, witness = False, ("interval", iv.lo, iv.hi)
                break

    # Interval-local criterion, evaluated independently.
    verdict2 = True
    for iv in boolean_intervals(L):
        image = {f(z) for z in iv.elements}
        lo, hi = f(iv.lo), f(iv.hi)
        if boolean_rank(M, lo, hi) is None or image != set(interval_elements(M, lo, hi)):
            verdict2 = False
            break
        ok = all(
            f(L.join[x][y]) == M.join[f(x)][f(y)] and f(L.meet[x][y]) == M.meet[f(x)][f(y)]
            for x in iv.elements
            for y in iv.elements
        )
        if not ok:
            verdict2 = False
            break
    if verdict1 != verdict2:
        raise LatticeError(
            "internal: global and interval-local criteria disagree "
            f"(global={verdict1}, local={verdict2})"
        )
    return verdict1, (None if verdict1 else witness)


def subdivide_lattice(L, k):
    """The (k+1)-fold edgewise subdivision of a distributive lattice.

    Elements are the monotone functions [k] -> L whose image lies inside a
    Boolean interval, ordered pointwise; equivalently the tuples
    (t_0 <= ... <= t_k) with [t_0, t_k] Boolean.  Join and meet are
    pointwise.  k = 0 returns an isomorphic copy of L.
    """
    if k < 0:
        raise LatticeError("subdivision parameter must be >= 0")
    if not L.is_distributive:
        raise LatticeError("subdivision requires a distributive lattice")
    labels = []
    for t in itertools.product(range(L.size), repeat=k + 1):
        if all(L.leq(t[i], t[i + 1]) for i in range(k)):
            if boolean_rank(L, t[0], t[-1]) is not None:
                labels.append(t)
    return lattice_from_labels(
        labels, lambda a, b: all(L.leq(x, y) for x, y in zip(a, b))
    )


def subdivide_lattice_map(f, k):
    """The subdivision functor on maps: pointwise postcomposition with f.

    Sends a distributive-lattice morphism L -> M to a map of the
    subdivided lattices; the result passes is_dis_morphism (checked).
    """
    ok, witness = is_dis_morphism(f)
    if not ok:
        raise LatticeError(f"subdivision requires a distributive-lattice morphism ({witness})")
    dom = subdivide_lattice(f.dom, k)
    cod = subdivide_lattice(f.cod, k)
    cod_index = {label: i for i, label in enumerate(cod.labels)}
    values = tuple(cod_index[tuple(f(x) for x in label)] for label in dom.labels)
    g = LatticeMap(dom, cod, values)
    ok, witness = is_dis_morphism(g)
    if not ok:
        raise LatticeError(f"internal: subdivided map fails is_dis_morphism ({witness})")
    return g


def subdivision_restriction(L, phi, m):
    """Precomposition map sd_{m+1}L -> sd_{n+1}L for an injection phi: [n] -> [m].

    phi is given as the tuple (phi(0), ..., phi(n)) and must be strictly
    increasing with values in 0..m.  The result is checked by
    is_dis_morphism.
    """
    n = len(phi) - 1
    if n < 0 or any(not 0 <= v <= m for v in phi):
        raise LatticeError("phi out of range")
    if any(phi[i] >= phi[i + 1] for i in range(n)):
        raise LatticeError("phi must be strictly monotone and injective")
    dom = subdivide_lattice(L, m)
    cod = subdivide_lattice(L, n)
    cod_index = {lab: i for i, lab in enumerate(cod.labels)}
    values = tuple(
        cod_index[tuple(lab[t] for t in phi)] for lab in dom.labels
    )
    f = LatticeMap(dom, cod, values)
    ok, witness = is_dis_morphism(f)
    if not ok:
        raise LatticeError(f"internal: restriction fails is_dis_morphism ({witness})")
    return f


def diamond_check(L, x, y):
    """Whether join-with-x and meet-with-y are mutually inverse bijections
    between [x/\\y, y] and [x, x\\/y]."""
    if not (0 <= x < L.size and 0 <= y < L.size):
        raise LatticeError("element out of range")
    lo = L.meet[x][y]
    hi = L.join[x][y]
    down = interval_elements(L, lo, y)
    up = interval_elements(L, x, hi)
    up_set, down_set = set(up), set(down)
    for z in down:
        if L.join[x][z] not in up_set:
            return False
        if L.meet[y][L.join[x][z]] != z:
            return False
    for z in up:
        if L.meet[y][z] not in down_set:
            return False
        if L.join[x][L.meet[y][z]] != z:
            return False
    return len(down) == len(up)


def is_modular(L):
    rng = range(L.size)
    for x in rng:
        for y in rng:
            for z in rng:
                lhs = L.join[L.meet[x][y]][L.meet[x][z]]
                rhs = L.meet[L.join[L.meet[x][y]][z]][x]
                if lhs != rhs:
                    return False
    return True


def distributivity_profile(L):
    """Three independently evaluated distributivity criteria.

    (1) the distributive identity; (2) each diamond of two immediate
    neighbours spans exactly a Boolean interval; (3) the smallest interval
    containing two Boolean intervals sharing a min or max is Boolean.
    They agree on every finite lattice; tests assert that on a catalog.
    """
    b1 = L.is_distributive

    b2 = True
    cover_list = covers(L)
    up = {}
    down = {}
    for x, y in cover_list:
        up.setdefault(x, []).append(y)
        down.setdefault(y, []).append(x)
    for neighbours in itertools.chain(up.values(), down.values()):
        for y, z in itertools.combinations(neighbours, 2):
            lo = L.meet[y][z]
            hi = L.join[y][z]
            diamond = {lo, hi, y, z}
            if set(interval_elements(L, lo, hi)) != diamond or boolean_rank(L, lo, hi) is None:
                b2 = False
                break
        if not b2:
            break

    b3 = True
    intervals = boolean_intervals(L)
    for I in intervals:
        for J in intervals:
            if I.lo == J.lo or I.hi == J.hi:
                lo = L.meet[I.lo][J.lo]
                hi = L.join[I.hi][J.hi]
                if boolean_rank(L, lo, hi) is None:
                    b3 = False
                    break
        if not b3:
            break

    return b1, b2, b3


def boolean_interval_images(L, I, J):
    """Images of I x J under join and meet, as Boolean intervals.

    Raises if either image fails to be a Boolean interval; on distributive
    lattices that would falsify a structural fact and is treated as an
    internal error.
    """
    for name, op, lo, hi in (
        ("join", L.join, L.join[I.lo][J.lo], L.join[I.hi][J.hi]),
        ("meet", L.meet, L.meet[I.lo][J.lo], L.meet[I.hi][J.hi]),
    ):
        image = {op[x][y] for x in I.elements for y in J.elements}
        if image != set(interval_elements(L, lo, hi)) or boolean_rank(L, lo, hi) is None:
            raise LatticeError(f"internal: {name}-image of Boolean intervals not Boolean")
    return (
        Interval.of(L, L.join[I.lo][J.lo], L.join[I.hi][J.hi]),
        Interval.of(L, L.meet[I.lo][J.lo], L.meet[I.hi][J.hi]),
    )


def lattice_isomorphic(L, M):
    """An order isomorphism L -> M as an index tuple, or None.

    Backtracking guided by up-degree/down-degree invariants; intended for
    the desk-scale lattices in the test catalogs.
    """
    if L.size != M.size:
        return None

    def profile(K):
        prof = []
        for x in range(K.size):
            ups = sum(1 for y in range(K.size) if K.leq(x, y))
            downs = sum(1 for y in range(K.size) if K.leq(y, x))
            prof.append((ups, downs))
        return prof

    pl, pm = profile(L), profile(M)
    if sorted(pl) != sorted(pm):
        return None
    candidates = [
        [y for y in range(M.size) if pm[y] == pl[x]] for x in range(L.size)
    ]
    order = sorted(range(L.size), key=lambda x: len(candidates[x]))
    assign = [None] * L.size
    used = [False] * M.size

    def rec(pos):
        if pos == L.size:
            return True
        x = order[pos]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for x2 in order[:pos]:
                y2 = assign[x2]
                if L.leq(x, x2) != M.leq(y, y2) or L.leq(x2, x) != M.leq(y2, y):
                    ok = False
                    break
            if ok:
                assign[x] = y
                used[y] = True
                if rec(pos + 1):
                    return True
                assign[x] = None
                used[y] = False
        return False

    return tuple(assign) if rec(0) else None


def to_json(L):
    return json.dumps(
        {"size": L.size, "leq": [[bool(v) for v in row] for row in L.poset.leq]},
        sort_keys=True,
    )


def from_json(text):
    data = json.loads(text)
    leq = data["leq"]
    if len(leq) != data["size"]:
        raise LatticeError("size field does not match leq table")
    return lattice_from_leq(leq)


def dot_hasse(L, name="lattice"):
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in range(L.size):
        lines.append(f'  n{x} [label="{L.labels[x]}"];')
    for x, y in covers(L):
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines)
