import pytest
from hypothesis import given
from hypothesis import strategies as st

from satpoly.errors import ParseError
from satpoly.relations import (
    BUILTIN_RELATIONS,
    all_affine_subsets,
    classify,
    format_relation_file,
    implied_width2_constraints,
    is_affine,
    parse_relation_file,
    relation,
    resolve_relation,
    width2_solution_set,
    xor_relation,
)

from strategies import relations_of_rank, small_relations

B = BUILTIN_RELATIONS


def test_is_affine_ne():
    assert is_affine(B["NE"])


def test_is_affine_or0_false():
    assert not is_affine(B["OR0"])
    # no affine subset of {0,1}^2 equals the OR0 accepted set
    assert B["OR0"].accepted not in all_affine_subsets(2)


def test_is_affine_empty():
    assert is_affine(relation("none", 2, []))


def test_is_affine_triple_xor_oracle():
    # closure under coordinatewise triple XOR is the defining property
    def triple_closed(r):
        acc = {sum(b << i for i, b in enumerate(t)) for t in r.accepted}
        return all(a ^ b ^ c in acc for a in acc for b in acc for c in acc)

    for rank in (1, 2, 3):
        for bits in range(1 << (1 << rank)):
            acc = [
                tuple(code >> i & 1 for i in range(rank))
                for code in range(1 << rank)
                if bits >> code & 1
            ]
            r = relation("t", rank, acc)
            assert is_affine(r) == triple_closed(r)


def test_implied_width2_ne():
    assert implied_width2_constraints(B["NE"]) == [("ne", 0, 1)]


def test_implied_width2_padded():
    r = relation("pad", 3, [(0, 1, 0), (1, 1, 1)])
    assert implied_width2_constraints(r) == [("const1", 1), ("eq", 0, 2)]


def test_implied_width2_or0_empty():
    assert implied_width2_constraints(B["OR0"]) == []


def test_width2_solution_set_roundtrip():
    r = relation("pad", 3, [(0, 1, 0), (1, 1, 1)])
    cs = implied_width2_constraints(r)
    assert width2_solution_set(3, cs) == r.accepted


def test_classify_easy_catalog():
    cls = classify([B["EQ"], B["NE"], B["F"]])
    assert cls.is_easy
    assert set(cls.decomposition) == {"EQ", "NE", "F"}


def test_classify_hard_witnesses():
    assert classify([B["OR2"]]).witness == ("nonAffine", "OR2")
    assert classify([xor_relation(3, 1)]).witness == ("wideAffine", "xor3_1")
    # non-affine witness wins over wide-affine regardless of position
    cls = classify([xor_relation(3, 0), B["OR0"]])
    assert cls.witness == ("nonAffine", "OR0")


def test_classify_padded_relation_is_easy():
    r = relation("pad", 3, [(0, 1, 0), (1, 1, 1)])
    assert classify([r]).is_easy


def test_classify_empty_set_rejected():
    with pytest.raises(ValueError):
        classify([])


@given(st.lists(small_relations, min_size=1, max_size=4))
def test_classify_order_insensitive(rels):
    rels = [relation(f"r{i}", r.rank, r.accepted) for i, r in enumerate(rels)]
    base = classify(rels).verdict
    assert classify(list(reversed(rels))).verdict == base


@given(relations_of_rank(3))
def test_is_affine_matches_constructive_enumeration(r):
    assert is_affine(r) == (r.accepted in all_affine_subsets(3))


@given(relations_of_rank(2))
def test_easy_decomposition_exactness(r):
    cls = classify([r])
    if cls.is_easy:
        assert width2_solution_set(2, cls.decomposition["r"]) == r.accepted


def test_xor_relation_parity():
    r = xor_relation(3, 1)
    assert all(sum(t) % 2 == 1 for t in r.accepted)
    assert len(r.accepted) == 4


def test_resolve_builtins_and_xor_names():
    assert resolve_relation("OR1").accepted == frozenset({(0, 0), (1, 0), (1, 1)})
    assert resolve_relation("xor4_0").rank == 4
    with pytest.raises(ParseError):
        resolve_relation("nope")


RELATION_FILE = """\
# two relations
relation myor 2
01
10
11
end

relation unit 1
1
end
"""


def test_relation_file_roundtrip():
    table = parse_relation_file(RELATION_FILE)
    assert table["myor"].accepted == B["OR0"].accepted
    assert table["unit"].accepted == frozenset({(1,)})
    again = parse_relation_file(format_relation_file(table))
    assert again == table


def test_relation_file_errors():
    with pytest.raises(ParseError):
        parse_relation_file("relation r 2\n0\nend\n")  # wrong tuple width
    with pytest.raises(ParseError):
        parse_relation_file("relation r 2\n01\n")  # unterminated
    with pytest.raises(ParseError):
        parse_relation_file("relation r 99\nend\n")  # rank cap


def test_rank_bounds():
    with pytest.raises(ValueError):
        relation("big", 17, [])
    with pytest.raises(ValueError):
        relation("bad", 2, [(0, 1, 1)])
