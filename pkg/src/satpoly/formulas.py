"""Constraint formulas: conjunctions of relation applications over indexed variables.

The polynomial of a formula sums one monomial per satisfying assignment,
the monomial collecting the variables assigned 1.  Evaluating that
polynomial at all-ones recovers the model count.  Enumeration here is
bit-parallel: the satisfying set over the constrained variables is a big
integer truth table, and evaluation at a rational point folds the table
one variable at a time using integer arithmetic only (numerators and
denominators are carried separately, so every result is exact).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._bits import iter_bits, table_full, table_var
from .errors import BoundExceeded, ParseError
from .polynomial import MultilinearPoly
from .relations import Relation, parity_constant, resolve_relation

MAX_ENUM_VARS = 30  # hard ceiling for exact enumeration
_TABLE_VARS = 22  # above this, fall back to depth-first enumeration

Constraint = tuple[Relation, tuple[int, ...]]


@dataclass(frozen=True)
class Formula:
    """A conjunction of relation applications; variables are 0-based indices.

    Repeated variables inside one application are legal and mean the
    relation restricted to the corresponding diagonal.  relation_table
    optionally records the full relation set in scope (it may list
    relations no constraint uses); by default it is the set of relations
    that appear.
    """

    num_vars: int
    constraints: tuple[Constraint, ...]
    relation_table: Optional[tuple[Relation, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for rel, args in self.constraints:
            if len(args) != rel.rank:
                raise ValueError(
                    f"{rel.name} has rank {rel.rank} but got {len(args)} arguments"
                )
            for a in args:
                if not 0 <= a < self.num_vars:
                    raise ValueError(f"argument {a} out of range [0, {self.num_vars})")

    @property
    def relation_set(self) -> tuple[Relation, ...]:
        if self.relation_table is not None:
            return self.relation_table
        seen: dict[Relation, None] = {}
        for rel, _ in self.constraints:
            seen.setdefault(rel)
        return tuple(seen)


def formula(num_vars: int, constraints, relation_table=None) -> Formula:
    return Formula(
        num_vars,
        tuple((rel, tuple(args)) for rel, args in constraints),
        tuple(relation_table) if relation_table is not None else None,
    )


def eval_assignment(f: Formula, assignment: Sequence[int]) -> bool:
    """Does the assignment satisfy every constraint?"""
    if len(assignment) != f.num_vars:
        raise ValueError(
            f"assignment has {len(assignment)} bits, expected {f.num_vars}"
        )
    a = tuple(assignment)
    return all(tuple(a[i] for i in args) in rel.accepted for rel, args in f.constraints)


# ---------------------------------------------------------------------------
# Bit-parallel satisfying-set tables


def _constrained_vars(f: Formula) -> list[int]:
    seen: set[int] = set()
    for _, args in f.constraints:
        seen.update(args)
    return sorted(seen)


def _constraint_table(rel: Relation, positions: Sequence[int], bases: list[int], full: int) -> int:
    """Truth table of one applied constraint over the compressed variable space."""
    c = parity_constant(rel)
    if c is not None:
        acc = 0
        for p in positions:
            acc ^= bases[p]  # repeated arguments cancel, matching xor semantics
        return acc if c == 1 else ~acc & full
    table = 0
    for t in rel.accepted:
        m = full
        for bit, p in zip(t, positions):
            m &= bases[p] if bit else ~bases[p] & full
            if not m:
                break
        table |= m
    return table


def _sat_table(f: Formula, cvars: list[int]) -> int:
    """Truth table of the conjunction over the constrained variables."""
    m = len(cvars)
    pos = {v: i for i, v in enumerate(cvars)}
    full = table_full(m)
    bases = [table_var(i, m) for i in range(m)]
    table = full
    for rel, args in f.constraints:
        table &= _constraint_table(rel, [pos[a] for a in args], bases, full)
        if not table:
            break
    return table


def _sat_assignments_dfs(f: Formula, cvars: list[int]):
    """Yield satisfying assignments (as bitmasks over cvars) by backtracking."""
    pos = {v: i for i, v in enumerate(cvars)}
    m = len(cvars)
    # constraints become checkable once their last variable is assigned
    by_last: list[list[tuple[Relation, tuple[int, ...]]]] = [[] for _ in range(m)]
    for rel, args in f.constraints:
        local = tuple(pos[a] for a in args)
        by_last[max(local)].append((rel, local))

    def rec(i: int, mask: int):
        if i == m:
            yield mask
            return
        for bit in (0, 1):
            cur = mask | (bit << i)
            ok = True
            for rel, local in by_last[i]:
                if tuple(cur >> p & 1 for p in local) not in rel.accepted:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1, cur)

    yield from rec(0, 0)


def count_sat(f: Formula) -> int:
    """Exact number of satisfying assignments."""
    if f.num_vars > MAX_ENUM_VARS:
        raise BoundExceeded(f"count_sat is limited to {MAX_ENUM_VARS} variables")
    cvars = _constrained_vars(f)
    free = f.num_vars - len(cvars)
    if len(cvars) <= _TABLE_VARS:
        n_sat = _sat_table(f, cvars).bit_count()
    else:
        n_sat = sum(1 for _ in _sat_assignments_dfs(f, cvars))
    return n_sat << free


def poly_of_formula(f: Formula) -> MultilinearPoly:
    """The polynomial with one unit-coefficient monomial per satisfying assignment."""
    if f.num_vars > MAX_ENUM_VARS:
        raise BoundExceeded(f"poly_of_formula is limited to {MAX_ENUM_VARS} variables")
    cvars = _constrained_vars(f)
    if len(cvars) <= _TABLE_VARS:
        table = _sat_table(f, cvars)
        local_masks = iter_bits(table)
    else:
        local_masks = _sat_assignments_dfs(f, cvars)
    terms: dict[int, Fraction] = {}
    one = Fraction(1)
    for local in local_masks:
        mask = 0
        for i, v in enumerate(cvars):
            if local >> i & 1:
                mask |= 1 << v
        terms[mask] = one
    poly = MultilinearPoly(f.num_vars, terms)
    cset = set(cvars)
    for v in range(f.num_vars):
        if v not in cset:
            poly = poly.multiply(
                MultilinearPoly(f.num_vars, {0: one, 1 << v: one})
            )
    return poly


_INT64_SAFE = 1 << 62


def _fold_table(table: int, weights: list[tuple[int, int]]) -> int:
    """Sum over assignments e of table[e] * prod(p_i if bit else q_i).

    Folds out one variable per pass.  Values stay within
    prod(|p_i| + q_i), so the vectorized int64 path is exact whenever that
    bound fits; otherwise plain Python integers take over.
    """
    m = len(weights)
    nbytes = max(1, ((1 << m) + 7) >> 3)
    arr = np.unpackbits(
        np.frombuffer(table.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
    )[: 1 << m]
    bound = 1
    for p, q in weights:
        bound *= abs(p) + q
    if bound < _INT64_SAFE:
        a = arr.astype(np.int64)
        for p, q in weights:
            a = a[0::2] * q + a[1::2] * p
        return int(a[0])
    vals = [int(b) for b in arr]
    for p, q in weights:
        vals = [lo * q + hi * p for lo, hi in zip(vals[0::2], vals[1::2])]
    return vals[0]


def eval_formula_poly(f: Formula, point: Sequence) -> Fraction:
    """Value of the formula's polynomial at a rational point, monomials never built."""
    if len(point) != f.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.num_vars}")
    if f.num_vars > MAX_ENUM_VARS:
        raise BoundExceeded(f"eval_formula_poly is limited to {MAX_ENUM_VARS} variables")
    pt = [Fraction(x) for x in point]
    cvars = _constrained_vars(f)
    cset = set(cvars)
    factor = Fraction(1)
    for v in range(f.num_vars):
        if v not in cset:
            factor *= 1 + pt[v]  # unconstrained variables contribute (1 + X_v)
    if not cvars:
        return factor
    weights = [(pt[v].numerator, pt[v].denominator) for v in cvars]
    if len(cvars) <= _TABLE_VARS:
        total = _fold_table(_sat_table(f, cvars), weights)
    else:
        total = 0
        for local in _sat_assignments_dfs(f, cvars):
            prod = 1
            for i, (p, q) in enumerate(weights):
                prod *= p if local >> i & 1 else q
            total += prod
    denom = 1
    for _, q in weights:
        denom *= q
    return Fraction(total, denom) * factor


# ---------------------------------------------------------------------------
# Formula file format:
#   p csp <num_vars> <num_constraints>
#   <relation-name> <i1> ... <ik>     (1-based variable indices)


def parse_formula_file(text: str, relations: Optional[dict[str, Relation]] = None) -> Formula:
    num_vars = None
    declared = 0
    constraints: list[Constraint] = []
    used: dict[Relation, None] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if num_vars is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "csp":
                raise ParseError(f"line {lineno}: expected 'p csp <vars> <constraints>'")
            try:
                num_vars = int(parts[2])
                declared = int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: bad header numbers") from None
            if num_vars < 1:
                raise ParseError(f"line {lineno}: need at least one variable")
            continue
        if num_vars is None:
            raise ParseError(f"line {lineno}: constraint before header")
        rel = resolve_relation(parts[0], relations)
        try:
            args = tuple(int(tok) - 1 for tok in parts[1:])
        except ValueError:
            raise ParseError(f"line {lineno}: bad variable index") from None
        if len(args) != rel.rank:
            raise ParseError(
                f"line {lineno}: {rel.name} has rank {rel.rank}, got {len(args)} arguments"
            )
        if any(not 0 <= a < num_vars for a in args):
            raise ParseError(f"line {lineno}: variable index out of range")
        constraints.append((rel, args))
        used.setdefault(rel)
    if num_vars is None:
        raise ParseError("missing 'p csp' header")
    if len(constraints) != declared:
        raise ParseError(
            f"header declares {declared} constraints, found {len(constraints)}"
        )
    table = None
    if relations is not None:
        merged = dict(relations)
        for rel in used:
            merged.setdefault(rel.name, rel)
        table = tuple(merged.values())
    return Formula(num_vars, tuple(constraints), table)


def format_formula_file(f: Formula) -> str:
    lines = [f"p csp {f.num_vars} {len(f.constraints)}"]
    for rel, args in f.constraints:
        lines.append(" ".join([rel.name] + [str(a + 1) for a in args]))
    return "\n".join(lines) + "\n"
