"""Shared hypothesis strategies."""

from itertools import product

from hypothesis import strategies as st

from satpoly.formulas import Formula
from satpoly.relations import BUILTIN_RELATIONS, relation

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

nonzero_rationals = rationals.filter(lambda x: x != 0)


@st.composite
def relations_of_rank(draw, rank):
    tuples = list(product((0, 1), repeat=rank))
    accepted = draw(st.sets(st.sampled_from(tuples)))
    return relation("r", rank, accepted)


small_relations = st.integers(min_value=1, max_value=3).flatmap(relations_of_rank)


@st.composite
def formulas(draw, max_vars=8, names=("OR0", "OR1", "OR2", "CLAUSE3", "EQ", "NE", "F", "T")):
    n = draw(st.integers(min_value=1, max_value=max_vars))
    n_cons = draw(st.integers(min_value=0, max_value=2 * n))
    cons = []
    for _ in range(n_cons):
        rel = BUILTIN_RELATIONS[draw(st.sampled_from(names))]
        args = tuple(draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(rel.rank))
        cons.append((rel, args))
    return Formula(n, tuple(cons))


def easy_formulas(max_vars=8):
    return formulas(max_vars=max_vars, names=("EQ", "NE", "F", "T"))


@st.composite
def points_for(draw, n):
    return [draw(rationals) for _ in range(n)]
