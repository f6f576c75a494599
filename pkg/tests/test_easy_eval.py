from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satpoly.easy_eval import easy_evaluate, easy_factor, evaluate_factored, expand_factored
from satpoly.errors import SatPolyError
from satpoly.formulas import Formula, count_sat, eval_formula_poly, poly_of_formula
from satpoly.polynomial import MultilinearPoly
from satpoly.relations import BUILTIN_RELATIONS, relation

from strategies import easy_formulas, points_for

B = BUILTIN_RELATIONS
F = Fraction


def test_factor_parity_chain():
    f = Formula(3, ((B["NE"], (0, 1)), (B["EQ"], (1, 2))))
    fp = easy_factor(f)
    assert fp.consistent and fp.forced == frozenset()
    assert fp.components == ((frozenset({1, 2}), frozenset({0})),)
    assert expand_factored(fp) == MultilinearPoly(3, {0b110: F(1), 0b001: F(1)})


def test_factor_inconsistent():
    f = Formula(1, ((B["F"], (0,)), (B["T"], (0,))))
    fp = easy_factor(f)
    assert not fp.consistent
    assert evaluate_factored(fp, [F(5)]) == 0


def test_factor_free_variables():
    f = Formula(3, ())
    fp = easy_factor(f)
    assert len(fp.components) == 3
    assert all(zero == frozenset() for zero, _ in fp.components)
    assert evaluate_factored(fp, [1, 1, 1]) == 8


def test_forced_component_merges():
    # x1 = 1 and x1 != x2 forces x2 = 0
    f = Formula(2, ((B["T"], (0,)), (B["NE"], (0, 1))))
    fp = easy_factor(f)
    assert fp.consistent
    assert fp.forced == frozenset({0})
    assert fp.components == ()
    assert easy_evaluate(f, [F(7), F(11)]) == 7


def test_easy_evaluate_examples():
    f = Formula(3, ((B["NE"], (0, 1)), (B["EQ"], (1, 2))))
    assert easy_evaluate(f, [1, 1, 1]) == 2 == count_sat(f)
    single = Formula(1, ((B["T"], (0,)),))
    assert easy_evaluate(single, [F(5)]) == 5
    n = 10_000
    chain = Formula(n, tuple((B["EQ"], (i, i + 1)) for i in range(n - 1)))
    assert easy_evaluate(chain, [1] * n) == 2


def test_duplicate_argument_contradiction():
    f = Formula(1, ((B["NE"], (0, 0)),))
    fp = easy_factor(f)
    assert not fp.consistent


def test_hard_set_rejected():
    f = Formula(2, ((B["OR0"], (0, 1)),))
    with pytest.raises(SatPolyError):
        easy_factor(f)


def test_padded_relation_decomposition():
    pad = relation("pad", 3, [(0, 1, 0), (1, 1, 1)])  # (x2=1) and (x1=x3)
    f = Formula(4, ((pad, (0, 1, 2)), (pad, (2, 3, 0))))
    assert expand_factored(easy_factor(f)) == poly_of_formula(f)


@given(easy_formulas(), st.data())
def test_easy_matches_brute_force(f, data):
    point = data.draw(points_for(f.num_vars))
    assert easy_evaluate(f, point) == eval_formula_poly(f, point)


@given(easy_formulas())
def test_expansion_matches_enumeration(f):
    assert expand_factored(easy_factor(f)) == poly_of_formula(f)
