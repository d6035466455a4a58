"""The symmetric monoidal cube category.

Objects are the Boolean lattices [1]^n, morphisms are generated by the
cofaces, the codegeneracies and the coordinate permutations.  Every
morphism has a unique normal form: a vector of output specs, one per
output coordinate, where each spec is a constant 0, a constant 1, or a
projection onto an input coordinate, with all projections distinct.
("Distinct" is what rules diagonals out.)  Equivalently the morphisms are
exactly the interval-preserving lattice homomorphisms between Boolean
lattices; `from_function` decides that characterization on raw tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

CONST0 = ("c", 0)
CONST1 = ("c", 1)


def proj(i):
    """Projection onto input coordinate i (1-based)."""
    return ("p", i)


def is_const(spec):
    return spec[0] == "c"


def is_proj(spec):
    return spec[0] == "p"


class CubeError(ValueError):
    pass


@lru_cache(maxsize=None)
def points(m):
    """All vertices of [1]^m in lexicographic order."""
    return tuple(itertools.product((0, 1), repeat=m))


def point_index(p):
    idx = 0
    for bit in p:
        idx = 2 * idx + bit
    return idx


@dataclass(frozen=True, order=True)
class CubeMap:
    """Normal form of a cube-category morphism [1]^dom -> [1]^cod."""

    dom: int
    cod: int
    outputs: tuple

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0 or len(self.outputs) != self.cod:
            raise CubeError("malformed cube map")
        used = set()
        for spec in self.outputs:
            if is_const(spec):
                if spec[1] not in (0, 1):
                    raise CubeError(f"bad constant {spec}")
            elif is_proj(spec):
                i = spec[1]
                if not 1 <= i <= self.dom:
                    raise CubeError(f"projection index {i} out of range")
                if i in used:
                    raise CubeError(f"repeated projection {i} (no diagonals)")
                used.add(i)
            else:
                raise CubeError(f"bad output spec {spec}")

    def __call__(self, x):
        if len(x) != self.dom:
            raise CubeError(f"expected {self.dom} coordinates, got {len(x)}")
        return tuple(
            spec[1] if is_const(spec) else x[spec[1] - 1] for spec in self.outputs
        )

    def used_inputs(self):
        return {spec[1] for spec in self.outputs if is_proj(spec)}

    def is_identity(self):
        return self.dom == self.cod and self.outputs == tuple(
            proj(i) for i in range(1, self.dom + 1)
        )

    def table(self):
        return FunctionTable(
            self.dom, self.cod, tuple(self(x) for x in points(self.dom))
        )

    def text(self):
        parts = []
        for spec in self.outputs:
            parts.append(str(spec[1]) if is_const(spec) else f"p{spec[1]}")
        return f"{self.dom}->{self.cod}: [{', '.join(parts)}]"

    @staticmethod
    def from_text(s):
        head, _, body = s.partition(":")
        dom_s, _, cod_s = head.partition("->")
        body = body.strip().strip("[]")
        outputs = []
        if body:
            for part in body.split(","):
                part = part.strip()
                if part in ("0", "1"):
                    outputs.append(("c", int(part)))
                elif part.startswith("p"):
                    outputs.append(proj(int(part[1:])))
                else:
                    raise CubeError(f"bad morphism text {s!r}")
        return CubeMap(int(dom_s), int(cod_s), tuple(outputs))


def identity(n):
    return CubeMap(n, n, tuple(proj(i) for i in range(1, n + 1)))


def compose(g, f):
    """The composite g o f for f: m -> n, g: n -> p."""
    if f.cod != g.dom:
        raise CubeError(f"cannot compose {g.text()} after {f.text()}")
    outputs = []
    for spec in g.outputs:
        if is_const(spec):
            outputs.append(spec)
        else:
            outputs.append(f.outputs[spec[1] - 1])
    return CubeMap(f.dom, g.cod, tuple(outputs))


def tensor(f, g):
    """Monoidal product: acts as f on the first block, g on the second."""
    shifted = tuple(
        spec if is_const(spec) else proj(spec[1] + f.dom) for spec in g.outputs
    )
    return CubeMap(f.dom + g.dom, f.cod + g.cod, f.outputs + shifted)


def coface(sign, i, n):
    """delta_{sign,i}: [1]^(n-1) -> [1]^n inserting the constant at slot i."""
    if not 1 <= i <= n:
        raise CubeError("coface index out of range")
    outputs = [proj(j) for j in range(1, n)]
    outputs.insert(i - 1, ("c", sign))
    return CubeMap(n - 1, n, tuple(outputs))


def codegeneracy(i, n):
    """sigma_i: [1]^n -> [1]^(n-1) dropping input coordinate i."""
    if not 1 <= i <= n:
        raise CubeError("codegeneracy index out of range")
    outputs = [proj(j) for j in range(1, n + 1) if j != i]
    return CubeMap(n, n - 1, tuple(outputs))


def transposition(i, n):
    """tau_i: [1]^n -> [1]^n swapping coordinates i and i+1."""
    if not 1 <= i <= n - 1:
        raise CubeError("transposition index out of range")
    outputs = list(proj(j) for j in range(1, n + 1))
    outputs[i - 1], outputs[i] = outputs[i], outputs[i - 1]
    return CubeMap(n, n, tuple(outputs))


def classify(phi):
    """One of 'iso', 'epi', 'mono', 'neither'.

    iso: a coordinate permutation; epi: no constants (surjective); mono:
    every input projected (injective).  Agreement with surjectivity and
    injectivity of the evaluation table is asserted by the test suite.
    """
    no_consts = all(is_proj(spec) for spec in phi.outputs)
    all_used = len(phi.used_inputs()) == phi.dom
    if no_consts and all_used and phi.dom == phi.cod:
        return "iso"
    if no_consts:
        return "epi"
    if all_used:
        return "mono"
    return "neither"


def _spec_order(spec):
    # Const(0) < Const(1) < Proj(1) < Proj(2) < ...
    return (0, spec[1]) if is_const(spec) else (1, spec[1])


def enumerate_maps(m, n, cls=None, bound=4):
    """All normal forms [1]^m -> [1]^n in lexicographic output order."""
    if m > bound or n > bound:
        raise CubeError(f"enumeration bound {bound} exceeded")
    specs = [CONST0, CONST1] + [proj(i) for i in range(1, m + 1)]
    specs.sort(key=_spec_order)
    out = []

    def rec(prefix, used):
        if len(prefix) == n:
            out.append(CubeMap(m, n, tuple(prefix)))
            return
        for spec in specs:
            if is_proj(spec) and spec[1] in used:
                continue
            prefix.append(spec)
            if is_proj(spec):
                used.add(spec[1])
            rec(prefix, used)
            if is_proj(spec):
                used.discard(spec[1])
            prefix.pop()

    rec([], set())
    if cls is not None:
        out = [phi for phi in out if classify(phi) == cls]
    return out


def epi_mono_factorize(phi):
    """Split phi as mono o epi.

    The epi projects onto the used input coordinates in increasing order
    (a pure codegeneracy composite); any permutation and all constants are
    absorbed into the mono.
    """
    used = sorted(phi.used_inputs())
    rank = {i: r + 1 for r, i in enumerate(used)}
    epi = CubeMap(phi.dom, len(used), tuple(proj(i) for i in used))
    mono_outputs = tuple(
        spec if is_const(spec) else proj(rank[spec[1]]) for spec in phi.outputs
    )
    mono = CubeMap(len(used), phi.cod, mono_outputs)
    return epi, mono


def decompose(phi):
    """Elementary factors g1..gr with phi == g1 o g2 o ... o gr.

    Factors are cofaces, codegeneracies and principal transpositions; all
    intermediate dimensions stay within max(dom, cod).
    """
    factors = []
    cur = phi
    # Peel cofaces off the outside, one constant output at a time.
    while any(is_const(spec) for spec in cur.outputs):
        j = next(k for k, spec in enumerate(cur.outputs) if is_const(spec))
        sign = cur.outputs[j][1]
        factors.append(coface(sign, j + 1, cur.cod))
        cur = CubeMap(cur.dom, cur.cod - 1, cur.outputs[:j] + cur.outputs[j + 1 :])
    # Peel the permutation part: bubble-sort the projection indices.
    perm_factors = []
    outputs = list(cur.outputs)
    changed = True
    while changed:
        changed = False
        for j in range(len(outputs) - 1):
            if outputs[j][1] > outputs[j + 1][1]:
                perm_factors.append(transposition(j + 1, cur.cod))
                outputs[j], outputs[j + 1] = outputs[j + 1], outputs[j]
                changed = True
    factors.extend(perm_factors)
    cur = CubeMap(cur.dom, cur.cod, tuple(outputs))
    # Peel codegeneracies for the unused inputs, innermost last.
    degen_factors = []
    while cur.dom > cur.cod:
        used = cur.used_inputs()
        i = next(k for k in range(1, cur.dom + 1) if k not in used)
        degen_factors.append(codegeneracy(i, cur.dom))
        outputs = tuple(
            spec if spec[1] < i else proj(spec[1] - 1) for spec in cur.outputs
        )
        cur = CubeMap(cur.dom - 1, cur.cod, outputs)
    factors.extend(reversed(degen_factors))
    if not cur.is_identity():
        raise CubeError(f"decomposition failed for {phi.text()}")
    check = identity(phi.dom)
    for g in reversed(factors):
        check = compose(g, check)
    if check != phi:
        raise CubeError(f"decomposition does not recompose for {phi.text()}")
    return factors


@dataclass(frozen=True)
class FunctionTable:
    """A raw function [1]^dom -> [1]^cod, values indexed by `points(dom)`."""

    dom: int
    cod: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != 2**self.dom:
            raise CubeError("table has wrong length")
        for v in self.values:
            if len(v) != self.cod or any(b not in (0, 1) for b in v):
                raise CubeError("table value out of range")

    def __call__(self, x):
        return self.values[point_index(x)]

    def is_monotone(self):
        pts = points(self.dom)
        for x in pts:
            for y in pts:
                if all(a <= b for a, b in zip(x, y)):
                    if not all(a <= b for a, b in zip(self(x), self(y))):
                        return False
        return True


def _join(x, y):
    return tuple(max(a, b) for a, b in zip(x, y))


def _meet(x, y):
    return tuple(min(a, b) for a, b in zip(x, y))


def from_function(table):
    """Decide whether a monotone table is a cube-category morphism.

    Returns (cube_map, None) when the table is an interval-preserving
    lattice homomorphism, in which case the map's evaluation reproduces
    the table exactly; otherwise (None, witness), where the witness names
    a violated join, meet or interval image.
    """
    if not table.is_monotone():
        raise CubeError("table is not monotone")
    pts = points(table.dom)
    for x in pts:
        for y in pts:
            if table(_join(x, y)) != _join(table(x), table(y)):
                return None, ("join", x, y)
            if table(_meet(x, y)) != _meet(table(x), table(y)):
                return None, ("meet", x, y)
    # Interval preservation: the image of [x, y] must be all of
    # [f(x), f(y)], order-convexity included.
    for x in pts:
        for y in pts:
            if not all(a <= b for a, b in zip(x, y)):
                continue
            image = {
                table(z)
                for z in pts
                if all(a <= c <= b for a, c, b in zip(x, z, y))
            }
            lo, hi = table(x), table(y)
            expected = {
                z for z in points(table.cod) if all(a <= c <= b for a, c, b in zip(lo, z, hi))
            }
            if image != expected:
                return None, ("interval", x, y)
    outputs = []
    for j in range(table.cod):
        column = [table(x)[j] for x in pts]
        if all(v == column[0] for v in column):
            outputs.append(("c", column[0]))
            continue
        for i in range(1, table.dom + 1):
            if all(x[i - 1] == table(x)[j] for x in pts):
                outputs.append(proj(i))
                break
        else:
            raise CubeError("internal: homomorphic table without normal form")
    phi = CubeMap(table.dom, table.cod, tuple(outputs))
    if phi.table() != table:
        raise CubeError("internal: normal form does not evaluate to the table")
    return phi, None
