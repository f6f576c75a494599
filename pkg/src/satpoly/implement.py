"""Gadget implementations of one relation by formulas over another relation set.

An implementation of a target relation places constraints over the target's
function variables plus fresh auxiliary variables.  It is valid when every
accepted input extends to exactly one full assignment satisfying all
constraints, and no rejected input extends to any such assignment (rejected
inputs may satisfy at most all-but-one constraint).  Valid implementations
substitute into formulas constraint by constraint, with fresh auxiliaries
per occurrence, and the original polynomial is recovered by setting every
auxiliary's variable to 1.

A bounded exhaustive search is provided instead of a case analysis; a
NotFound outcome within the bounds does not certify that no implementation
exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from ._bits import table_full, table_var
from .errors import BoundExceeded
from .formulas import Constraint, Formula
from .relations import Relation


@dataclass(frozen=True)
class Implementation:
    """Constraints over function variables 0..rank-1 then auxiliaries."""

    target: Relation
    constraints: Formula
    num_aux: int

    def __post_init__(self):
        expected = self.target.rank + self.num_aux
        if self.constraints.num_vars != expected:
            raise ValueError(
                f"constraint formula has {self.constraints.num_vars} variables, "
                f"expected {expected}"
            )

    @property
    def alpha(self) -> int:
        return len(self.constraints.constraints)


MAX_CHECK_VARS = 24


def check_perfect_faithful(impl: Implementation) -> bool:
    """Exhaustively verify both implementation conditions.

    For accepted inputs: exactly one auxiliary assignment satisfies every
    constraint.  For rejected inputs: no auxiliary assignment satisfies
    every constraint (equivalently, each satisfies at most alpha-1 of the
    alpha constraints).
    """
    k = impl.target.rank
    q = impl.num_aux
    if k + q > MAX_CHECK_VARS:
        raise BoundExceeded(f"check is limited to {MAX_CHECK_VARS} total variables")
    cons = impl.constraints.constraints
    for x in product((0, 1), repeat=k):
        full_sat = 0
        for y in product((0, 1), repeat=q):
            a = x + y
            if all(tuple(a[i] for i in args) in rel.accepted for rel, args in cons):
                full_sat += 1
                if full_sat > 1:
                    break
        if full_sat != (1 if x in impl.target.accepted else 0):
            return False
    return True


@dataclass(frozen=True)
class NotFound:
    """Search outcome: the bounded space holds no valid implementation."""

    target: str
    max_aux: int
    max_constraints: int


def search_implementation(
    target: Relation,
    using: list[Relation],
    max_aux: int = 3,
    max_constraints: int = 4,
    max_vars: int = 10,
) -> Implementation | NotFound:
    """Exhaustive search in canonical order; first valid candidate wins.

    Candidates are constraint multisets over the available relations and
    all argument tuples, enumerated by auxiliary count, then size, then
    lexicographic order on (relation index, argument tuple).  Tables over
    the combined variables make each candidate check a few popcounts.
    """
    k = target.rank
    accepted_codes = {_pack(t) for t in target.accepted}
    for q in range(0, max_aux + 1):
        t = k + q
        if t > max_vars:
            break
        full = table_full(t)
        bases = [table_var(i, t) for i in range(t)]
        atoms: list[tuple[Constraint, int]] = []
        for rel in using:
            for args in product(range(t), repeat=rel.rank):
                table = 0
                for tup in rel.accepted:
                    m = full
                    for bit, a in zip(tup, args):
                        m &= bases[a] if bit else ~bases[a] & full
                        if not m:
                            break
                    table |= m
                atoms.append(((rel, args), table))
        # selector for the extensions of each function-variable assignment
        comb = sum(1 << ((y << k)) for y in range(1 << q))
        selectors = [comb << x for x in range(1 << k)]
        wanted = [(1 if x in accepted_codes else 0) for x in range(1 << k)]
        for size in range(1, max_constraints + 1):
            for combo in combinations_with_replacement(range(len(atoms)), size):
                table = full
                for idx in combo:
                    table &= atoms[idx][1]
                ok = True
                for x in range(1 << k):
                    if (table & selectors[x]).bit_count() != wanted[x]:
                        ok = False
                        break
                if ok:
                    cons = tuple(atoms[idx][0] for idx in combo)
                    return Implementation(target, Formula(t, cons), q)
    return NotFound(target.name, max_aux, max_constraints)


def _pack(t) -> int:
    code = 0
    for i, b in enumerate(t):
        code |= b << i
    return code


def substitute(f: Formula, table: dict[Relation, Implementation]) -> Formula:
    """Replace every constraint by its implementation, fresh auxiliaries appended.

    With valid implementations the output polynomial restricted to 1 on all
    auxiliary positions equals the input polynomial.
    """
    next_aux = f.num_vars
    out: list[Constraint] = []
    for rel, args in f.constraints:
        if rel not in table:
            raise ValueError(f"no implementation given for relation {rel.name}")
        impl = table[rel]
        if impl.target != rel:
            raise ValueError(f"implementation targets {impl.target.name}, not {rel.name}")
        base = next_aux
        next_aux += impl.num_aux
        for inner_rel, inner_args in impl.constraints.constraints:
            mapped = tuple(
                args[a] if a < rel.rank else base + (a - rel.rank) for a in inner_args
            )
            out.append((inner_rel, mapped))
    return Formula(next_aux, tuple(out))


def identity_implementation(rel: Relation) -> Implementation:
    """The relation implemented by itself, no auxiliaries."""
    return Implementation(rel, Formula(rel.rank, ((rel, tuple(range(rel.rank))),)), 0)


def _is_false_relation(rel: Relation) -> bool:
    return rel.rank == 1 and rel.accepted == frozenset({(0,)})


def eliminate_false(f: Formula) -> tuple[Formula, tuple[int, ...]]:
    """Drop every (x=0) constraint, returning the affected variable indices.

    The dropped constraints are recovered by evaluating the output
    polynomial with those variables set to 0: monomials that used a zeroed
    variable vanish, and the rest correspond exactly to assignments where
    the variable was 0.
    """
    kept: list[Constraint] = []
    zeroed: set[int] = set()
    for rel, args in f.constraints:
        if _is_false_relation(rel):
            zeroed.add(args[0])
        else:
            kept.append((rel, args))
    return Formula(f.num_vars, tuple(kept)), tuple(sorted(zeroed))
