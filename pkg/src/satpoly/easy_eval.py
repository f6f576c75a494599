"""Fast factored evaluation for formulas over easy relation sets.

When every relation in scope is a conjunction of width-2 constraints, the
variables split into parity-linked components that are either forced by a
unary constraint or free with exactly two global states.  The polynomial
then factors as

    forced_monomial * prod over free components (zero_branch + one_branch)

which evaluates in near-linear time, far beyond the reach of enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SatPolyError
from .formulas import Formula
from .polynomial import MultilinearPoly
from .relations import classify, _width2_expressible


@dataclass(frozen=True)
class FactoredPoly:
    """Factored form of an easy formula's polynomial.

    Component branches list the variables assigned 1 when the component's
    representative (its smallest variable) takes 0 resp. 1.  Branch and
    forced variable sets are pairwise disjoint.  An inconsistent formula
    has consistent=False and empty fields (the zero polynomial).
    """

    num_vars: int
    consistent: bool
    forced: frozenset[int]
    components: tuple[tuple[frozenset[int], frozenset[int]], ...]


class _ParityUnionFind:
    """Union-find where each node carries its parity relative to its root."""

    __slots__ = ("parent", "size", "parity")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.parity = [0] * n

    def find(self, v: int) -> tuple[int, int]:
        parent = self.parent
        parity = self.parity
        root, p = v, 0
        while parent[root] != root:
            p ^= parity[root]
            root = parent[root]
        # second pass: point the whole path at the root
        acc = p
        while parent[v] != root:
            nxt = parent[v]
            nxt_acc = acc ^ parity[v]
            parent[v] = root
            parity[v] = acc
            v, acc = nxt, nxt_acc
        return root, p

    def union(self, u: int, v: int, rel_parity: int) -> bool:
        """Record u xor v = rel_parity; False on contradiction."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            return (pu ^ pv) == rel_parity
        if self.size[ru] > self.size[rv]:
            ru, rv = rv, ru
            pu, pv = pv, pu
        self.parent[ru] = rv
        self.parity[ru] = pu ^ pv ^ rel_parity
        self.size[rv] += self.size[ru]
        return True


def easy_factor(f: Formula) -> FactoredPoly:
    """Factor the polynomial of a formula over an easy relation set.

    Raises SatPolyError when the relation set is hard.
    """
    rels = list(f.relation_set)
    if rels:  # a constraint-free formula is trivially easy
        cls = classify(rels)
        if not cls.is_easy:
            raise SatPolyError(f"relation set is not easy (witness: {cls.witness})")

    n = f.num_vars
    uf = _ParityUnionFind(n)
    forcings: list[tuple[int, int]] = []  # (variable, forced bit)
    consistent = True
    for rel, args in f.constraints:
        decomp = _width2_expressible(rel)
        if decomp is None:  # a used relation missing from the declared table
            raise SatPolyError(f"relation {rel.name} is not width-2 expressible")
        for c in decomp:
            kind = c[0]
            if kind == "const0":
                forcings.append((args[c[1]], 0))
            elif kind == "const1":
                forcings.append((args[c[1]], 1))
            else:
                u, v = args[c[1]], args[c[2]]
                if not uf.union(u, v, 0 if kind == "eq" else 1):
                    consistent = False
                    break
        if not consistent:
            break

    forced_value: dict[int, int] = {}  # root -> value of the root
    if consistent:
        for var, bit in forcings:
            root, p = uf.find(var)
            want = bit ^ p
            if forced_value.setdefault(root, want) != want:
                consistent = False
                break

    if not consistent:
        return FactoredPoly(n, False, frozenset(), ())

    members: dict[int, list[tuple[int, int]]] = {}  # root -> [(var, parity)]
    for v in range(n):
        root, p = uf.find(v)
        members.setdefault(root, []).append((v, p))

    forced_vars: set[int] = set()
    components: list[tuple[frozenset[int], frozenset[int]]] = []
    for root in sorted(members, key=lambda r: min(v for v, _ in members[r])):
        group = members[root]
        if root in forced_value:
            rv = forced_value[root]
            forced_vars.update(v for v, p in group if rv ^ p == 1)
        else:
            rep = min(v for v, _ in group)
            _, rep_parity = uf.find(rep)
            # value of v when rep = b is b ^ rep_parity ^ parity(v)
            zero = frozenset(v for v, p in group if rep_parity ^ p == 1)
            one = frozenset(v for v, p in group if rep_parity ^ p == 0)
            components.append((zero, one))
    return FactoredPoly(n, True, frozenset(forced_vars), tuple(components))


def evaluate_factored(fp: FactoredPoly, point: Sequence) -> Fraction:
    """Evaluate a factored polynomial exactly at a rational point."""
    if len(point) != fp.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {fp.num_vars}")
    if not fp.consistent:
        return Fraction(0)
    pt = [Fraction(x) for x in point]
    num, den = 1, 1
    for v in fp.forced:
        num *= pt[v].numerator
        den *= pt[v].denominator
    total = Fraction(num, den)
    for zero, one in fp.components:
        zn, zd, on, od = 1, 1, 1, 1
        for v in zero:
            zn *= pt[v].numerator
            zd *= pt[v].denominator
        for v in one:
            on *= pt[v].numerator
            od *= pt[v].denominator
        total *= Fraction(zn * od + on * zd, zd * od)
    return total


def easy_evaluate(f: Formula, point: Sequence) -> Fraction:
    """Factor and evaluate in one call; near-linear in formula size."""
    return evaluate_factored(easy_factor(f), point)


def expand_factored(fp: FactoredPoly) -> MultilinearPoly:
    """Multiply the factored form out into an explicit term map (small n only)."""
    if not fp.consistent:
        return MultilinearPoly.zero(fp.num_vars)
    mask = 0
    for v in fp.forced:
        mask |= 1 << v
    poly = MultilinearPoly(fp.num_vars, {mask: Fraction(1)})
    for zero, one in fp.components:
        zmask = 0
        for v in zero:
            zmask |= 1 << v
        omask = 0
        for v in one:
            omask |= 1 << v
        poly = poly.multiply(
            MultilinearPoly(fp.num_vars, {zmask: Fraction(1), omask: Fraction(1)})
        )
    return poly
