from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satpoly.errors import BoundExceeded, ParseError
from satpoly.formulas import (
    Formula,
    count_sat,
    eval_assignment,
    eval_formula_poly,
    format_formula_file,
    parse_formula_file,
    poly_of_formula,
)
from satpoly.graphs import or2_formula_partial_perm
from satpoly.polynomial import MultilinearPoly
from satpoly.relations import BUILTIN_RELATIONS, parse_relation_file

from strategies import formulas, points_for

B = BUILTIN_RELATIONS
F = Fraction


def test_eval_assignment():
    f = Formula(2, ((B["OR0"], (0, 1)),))
    assert not eval_assignment(f, [0, 0])
    assert eval_assignment(f, [1, 0])
    empty = Formula(3, ())
    assert eval_assignment(empty, [0, 1, 0])
    with pytest.raises(ValueError):
        eval_assignment(f, [0, 0, 0])


def test_count_sat_examples():
    assert count_sat(Formula(2, ((B["OR0"], (0, 1)),))) == 3
    assert count_sat(or2_formula_partial_perm(2)) == 7
    inconsistent = Formula(1, ((B["F"], (0,)), (B["T"], (0,))))
    assert count_sat(inconsistent) == 0


def test_count_sat_bound():
    with pytest.raises(BoundExceeded):
        count_sat(Formula(31, ()))


def test_poly_of_formula_examples():
    p = poly_of_formula(Formula(2, ((B["OR0"], (0, 1)),)))
    assert p == MultilinearPoly(2, {0b01: F(1), 0b10: F(1), 0b11: F(1)})
    free = poly_of_formula(Formula(2, ()))
    assert free == MultilinearPoly(2, {0: F(1), 1: F(1), 2: F(1), 3: F(1)})
    chain = Formula(3, ((B["NE"], (0, 1)), (B["EQ"], (1, 2))))
    assert poly_of_formula(chain) == MultilinearPoly(3, {0b001: F(1), 0b110: F(1)})


def test_eval_formula_poly_examples():
    f = Formula(2, ((B["OR0"], (0, 1)),))
    assert eval_formula_poly(f, [1, 1]) == 3
    assert eval_formula_poly(f, [2, 3]) == 11
    assert eval_formula_poly(f, [0, 0]) == 0  # all-false rejected
    sat0 = Formula(2, ((B["OR2"], (0, 1)),))
    assert eval_formula_poly(sat0, [0, 0]) == 1  # all-false accepted


def test_duplicate_arguments_diagonal():
    # OR0(x, x) accepts only x = 1
    f = Formula(1, ((B["OR0"], (0, 0)),))
    assert count_sat(f) == 1
    assert poly_of_formula(f).terms == {1: F(1)}
    # NE(x, x) is unsatisfiable
    g = Formula(1, ((B["NE"], (0, 0)),))
    assert count_sat(g) == 0
    # parity with a repeated variable cancels it
    from satpoly.relations import xor_relation

    h = Formula(2, ((xor_relation(3, 1), (0, 0, 1)),))
    assert count_sat(h) == 2  # x free, y forced to 1


def test_rational_evaluation_exact():
    f = Formula(2, ((B["OR0"], (0, 1)),))
    assert eval_formula_poly(f, [F(1, 2), F(1, 3)]) == F(1, 2) + F(1, 3) + F(1, 6)


@given(formulas(max_vars=7), st.data())
def test_streaming_matches_materialized(f, data):
    point = data.draw(points_for(f.num_vars))
    assert eval_formula_poly(f, point) == poly_of_formula(f).evaluate(point)


@given(formulas(max_vars=7))
def test_all_ones_is_model_count(f):
    n = count_sat(f)
    assert eval_formula_poly(f, [1] * f.num_vars) == n
    poly = poly_of_formula(f)
    assert len(poly.terms) == n
    assert all(c == 1 for c in poly.terms.values())


def test_backtracking_path_above_table_limit():
    # 23 constrained variables exceed the table limit, forcing the
    # depth-first path; a chain of OR0 clauses counts strings with no two
    # adjacent zeros, i.e. a Fibonacci number (independent recurrence)
    fib = [1, 2]  # fib[n] = strings of length n with no two adjacent zeros
    while len(fib) < 24:
        fib.append(fib[-1] + fib[-2])
    cons = tuple((B["OR0"], (i, i + 1)) for i in range(22))
    f = Formula(23, cons)
    assert count_sat(f) == fib[23]
    assert count_sat(Formula(24, ())) == 1 << 24


FORMULA_FILE = """\
p csp 3 2
NE 1 2
EQ 2 3
"""


def test_formula_file_roundtrip():
    f = parse_formula_file(FORMULA_FILE)
    assert f.num_vars == 3 and len(f.constraints) == 2
    assert count_sat(f) == 2
    again = parse_formula_file(format_formula_file(f))
    assert again.constraints == f.constraints


def test_formula_file_with_relation_table():
    rels = parse_relation_file("relation myrel 2\n01\n10\nend\n")
    f = parse_formula_file("p csp 2 1\nmyrel 1 2\n", rels)
    assert count_sat(f) == 2
    assert any(r.name == "myrel" for r in f.relation_set)


def test_formula_file_errors():
    with pytest.raises(ParseError):
        parse_formula_file("NE 1 2\n")  # missing header
    with pytest.raises(ParseError):
        parse_formula_file("p csp 2 1\nNE 1 3\n")  # index out of range
    with pytest.raises(ParseError):
        parse_formula_file("p csp 2 2\nNE 1 2\n")  # count mismatch
    with pytest.raises(ParseError):
        parse_formula_file("p csp 2 1\nNE 1\n")  # arity mismatch
