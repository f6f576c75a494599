"""Parity-constraint formulas and the gadget pipeline between their flavors.

The centerpiece is the odd-parity grid formula on an n x n matrix of
variables (every row and every column must hold an odd number of ones).
Its polynomial contains the permanent as the homogeneous component of
degree n: the degree-n satisfying assignments are exactly the permutation
matrices.

The rewriting gadgets convert between parity-constraint shapes while
keeping the polynomial recoverable by fixing the fresh variables:

  shift_constants     constant-1 equations gain one shared variable a and
                      become constant-0; the original polynomial is the
                      degree-1 coefficient in a.
  chain_decompose     constant-0 equations of arity k >= 4 split into k-2
                      chained ternary equations via k-3 fresh variables,
                      each set to 1 afterwards.
  ternary0_to_ternary1  each ternary constant-0 equation becomes two
                      constant-1 equations with fresh a, b set to 1, 0.
  pad_to_relation     ternary equations pad up to one fixed arity with
                      per-equation fresh variables, each set to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BoundExceeded
from .formulas import Constraint, Formula, eval_formula_poly
from .polynomial import homogeneous_component
from .relations import parity_constant, xor_relation


@dataclass(frozen=True)
class AffineConstraint:
    """The equation x_{i1} xor ... xor x_{ik} = constant."""

    variables: tuple[int, ...]
    constant: int

    def __post_init__(self):
        if not self.variables:
            raise ValueError("an equation needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("equation variables must be distinct")
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    @property
    def arity(self) -> int:
        return len(self.variables)


def affine_formula(num_vars: int, constraints: Sequence[AffineConstraint]) -> Formula:
    """Build a formula whose relations are the xor<k>_<c> parity relations."""
    cons: list[Constraint] = [
        (xor_relation(c.arity, c.constant), c.variables) for c in constraints
    ]
    return Formula(num_vars, tuple(cons))


def formula_affine_constraints(f: Formula) -> list[AffineConstraint]:
    """Read a formula back as parity equations; rejects other relations."""
    out = []
    for rel, args in f.constraints:
        c = parity_constant(rel)
        if c is None:
            raise ValueError(f"relation {rel.name} is not a parity constraint")
        if len(set(args)) != len(args):
            raise ValueError("parity constraint applied with repeated variables")
        out.append(AffineConstraint(tuple(args), c))
    return out


def build_phi_n(n: int) -> Formula:
    """Odd-parity grid: 2n parity-1 equations over the n*n matrix variables.

    Variable (i, j) is index i*n + j.  Satisfying assignments include every
    permutation matrix plus denser matrices with odd row and column sums.
    """
    if n < 1:
        raise ValueError("n must be positive")
    cons = []
    for i in range(n):
        cons.append(AffineConstraint(tuple(i * n + j for j in range(n)), 1))
    for j in range(n):
        cons.append(AffineConstraint(tuple(i * n + j for i in range(n)), 1))
    return affine_formula(n * n, cons)


MAX_HOM_PERMANENT = 3


def permanent_via_hom(n: int, matrix) -> Fraction:
    """Permanent of an n x n rational matrix, recovered from the grid formula.

    Evaluates the degree-n homogeneous component of the grid polynomial at
    the flattened matrix; only the permutation-matrix monomials have degree
    n, so the component is exactly the permanent.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_HOM_PERMANENT:
        raise BoundExceeded(f"grid-formula recovery is limited to n <= {MAX_HOM_PERMANENT}")
    rows = [list(r) for r in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected an {n} x {n} matrix")
    phi = build_phi_n(n)
    evaluator = lambda point: eval_formula_poly(phi, point)
    hom = homogeneous_component(evaluator, n * n, n * n, n)
    flat = [Fraction(x) for r in rows for x in r]
    return hom(flat)


def shift_constants(f: Formula) -> Formula:
    """Append one shared variable a; constant-1 equations absorb it and flip to 0.

    The polynomial's degree-1 coefficient in a's variable equals the input
    polynomial: with a = 1 the shifted equations recreate the originals.
    """
    cons = formula_affine_constraints(f)
    a = f.num_vars
    out = []
    for c in cons:
        if c.constant == 1:
            out.append(AffineConstraint(c.variables + (a,), 0))
        else:
            out.append(c)
    return affine_formula(f.num_vars + 1, out)


def chain_decompose(f: Formula) -> Formula:
    """Split constant-0 equations of arity >= 4 into chained ternary equations.

    An arity-k equation becomes k-2 equations over k-3 fresh variables,
    the i-th fresh variable standing for the running parity prefix.  Each
    satisfying input assignment extends uniquely, so the input polynomial
    is the output with every fresh variable's symbol set to 1.
    """
    cons = formula_affine_constraints(f)
    if any(c.constant != 0 for c in cons):
        raise ValueError("chain decomposition needs constant-0 equations")
    next_aux = f.num_vars
    out = []
    for c in cons:
        k = c.arity
        if k <= 3:
            out.append(c)
            continue
        vs = c.variables
        aux = list(range(next_aux, next_aux + k - 3))
        next_aux += k - 3
        out.append(AffineConstraint((vs[0], vs[1], aux[0]), 0))
        for i in range(1, k - 3):
            out.append(AffineConstraint((aux[i - 1], vs[i + 1], aux[i]), 0))
        out.append(AffineConstraint((aux[-1], vs[k - 2], vs[k - 1]), 0))
    return affine_formula(next_aux, out)


def ternary0_to_ternary1(f: Formula) -> Formula:
    """Rewrite each (x xor y xor z = 0) as (x xor y xor a = 1) and (a xor z xor b = 1).

    Fresh a, b per equation, appended in that order.  Setting b's symbol to
    0 kills the b = 1 assignments; the survivors determine a uniquely and
    enforce the original parity, so the input polynomial is the output at
    a = 1, b = 0.
    """
    cons = formula_affine_constraints(f)
    if any(c.arity != 3 or c.constant != 0 for c in cons):
        raise ValueError("rewrite needs ternary constant-0 equations")
    next_aux = f.num_vars
    out = []
    for c in cons:
        x, y, z = c.variables
        a, b = next_aux, next_aux + 1
        next_aux += 2
        out.append(AffineConstraint((x, y, a), 1))
        out.append(AffineConstraint((a, z, b), 1))
    return affine_formula(next_aux, out)


def pad_to_relation(f: Formula, arity: int, constant: int) -> Formula:
    """Pad ternary equations of the given constant up to one fixed arity.

    Each equation gains its own arity-3 fresh variables; setting their
    symbols to 0 zeroes every assignment that uses them, recovering the
    input polynomial.
    """
    if arity < 3:
        raise ValueError("target arity must be at least 3")
    cons = formula_affine_constraints(f)
    for c in cons:
        if c.arity != 3:
            raise ValueError("padding expects ternary equations")
        if c.constant != constant:
            raise ValueError(
                f"equation constant {c.constant} does not match target constant {constant}"
            )
    next_aux = f.num_vars
    out = []
    for c in cons:
        aux = tuple(range(next_aux, next_aux + arity - 3))
        next_aux += arity - 3
        out.append(AffineConstraint(c.variables + aux, constant))
    return affine_formula(next_aux, out)
