from math import factorial

import pytest

from core.coxeter import Family, parabolic_w0_length
from core.errors import (
    DescentSetError,
    EnumerationBudgetError,
    InvalidElementError,
    NotALatticeError,
    NotComparableError,
)
from core.utils import iter_subsets
from services.group_models import GroupModel
from services.weak_order import (
    RankedPoset,
    boolean_poset,
    build_group_poset,
    chain_poset,
    char_poly_of_poset,
    descent_class,
    descent_class_interval,
    dump_poset,
    interval,
    join,
    lower_interval_isomorphism_check,
    max_parabolic_below,
    meet,
    mobius_between,
    mobius_closed_form,
    mobius_recursive,
    modified_char_poly_of_poset,
    product_poset,
)


@pytest.fixture(scope='module')
def s3():
    return build_group_poset(GroupModel(Family.A, 2))


@pytest.fixture(scope='module')
def s4():
    return build_group_poset(GroupModel(Family.A, 3))


def test_s3_poset_shape(s3):
    assert len(s3) == 6
    assert s3.ranks == [0, 1, 1, 2, 2, 3]
    assert s3.elements[0].is_identity()
    assert s3.elements[s3.top].window == (3, 2, 1)
    assert sum(len(c) for c in s3.covers) == 6
    assert s3.height == 3
    assert s3.is_graded()


def test_ranks_are_lengths(s4):
    assert len(s4) == 24
    assert all(s4.ranks[i] == w.length for i, w in enumerate(s4.elements))
    assert s4.to_digraph().number_of_edges() == sum(len(c) for c in s4.covers)


def test_enumeration_cap():
    with pytest.raises(EnumerationBudgetError, match='24'):
        build_group_poset(GroupModel(Family.A, 3), cap=10)


def test_dump(s3):
    lines = dump_poset(s3).splitlines()
    assert lines[0] == "rank 0: 1 2 3 -> covers: 2 1 3, 1 3 2"
    assert lines[-1] == "rank 3: 3 2 1 -> covers:"


def test_mobius_on_chain():
    assert mobius_recursive(chain_poset(2)).values == (1, -1, 0)


def test_mobius_on_s3(s3):
    mu = mobius_recursive(s3)
    assert mu.values == (1, -1, -1, 0, 0, 1)
    assert sum(mu.values) == 0


def test_char_polys_of_small_groups(s3, s4, q):
    assert char_poly_of_poset(s3) == q ** 3 - 2 * q ** 2 + 1
    assert char_poly_of_poset(s4) == q ** 6 - 3 * q ** 5 + q ** 4 + 2 * q ** 3 - 1
    b2 = build_group_poset(GroupModel(Family.B, 2))
    assert modified_char_poly_of_poset(b2) == 1 - 2 * q + q ** 4


def test_join_and_meet(s3):
    model = s3.model
    s1, s2 = model.generators[1], model.generators[2]
    assert join(s3, s1, s2) == model.longest_element({1, 2})
    assert meet(s3, s1, s2).is_identity()
    assert join(s3, s1, s1) == s1


def test_join_fails_outside_lattices():
    poset = RankedPoset([0, 'a', 'b'], [0, 1, 1], [[1, 2], [], []])
    with pytest.raises(NotALatticeError):
        join(poset, 'a', 'b')
    assert meet(poset, 'a', 'b') == 0


def test_interval(s3):
    model = s3.model
    e, s1, s2 = model.identity(), model.generators[1], model.generators[2]
    sub = interval(s3, e, s1)
    assert len(sub) == 2
    assert sub.model == model
    with pytest.raises(NotComparableError):
        interval(s3, s1, s2)
    with pytest.raises(InvalidElementError):
        interval(s3, e, (4, 3, 2, 1))


def test_mobius_closed_form(s3):
    model = s3.model
    e = model.identity()
    assert mobius_closed_form(s3, e, model.longest_element({1, 2})) == 1
    assert mobius_closed_form(s3, e, model.generators[2] * model.generators[1]) == 0
    assert mobius_closed_form(s3, e, model.generators[1]) == -1
    assert mobius_between(s3, model.generators[1], model.longest_element({1, 2})) == 0
    assert mobius_between(s3, model.generators[1], model.generators[2] * model.generators[1]) == -1
    with pytest.raises(NotComparableError):
        mobius_closed_form(s3, model.generators[1], model.generators[2])


def test_lower_interval_isomorphism(s4):
    model = s4.model
    u = model.generators[2]
    w = model.longest_element(model.generator_indices)
    assert lower_interval_isomorphism_check(s4, u, w)


def test_max_parabolic_below(s4):
    model = s4.model
    w = model.parse_element("2 1 4 3")
    assert max_parabolic_below(s4, w) == w
    w = model.parse_element("3 1 2 4")
    assert max_parabolic_below(s4, w) == model.generators[1]


def test_descent_class_is_interval(s4):
    cls = descent_class(s4, {3}, {3})
    assert {w.window for w in cls} == {(1, 2, 4, 3), (1, 3, 4, 2), (2, 3, 4, 1)}
    sub = descent_class_interval(s4, {3}, {3})
    assert frozenset(sub.elements) == cls
    with pytest.raises(DescentSetError):
        descent_class(s4, {1, 2}, {1})


def test_descent_class_char_poly_from_poset(s4, q):
    sub = descent_class_interval(s4, {3}, {3})
    assert char_poly_of_poset(sub) == q * (q - 1)


def test_product_posets(q):
    square = product_poset(chain_poset(1), chain_poset(1))
    assert len(square) == 4
    assert char_poly_of_poset(square) == (q - 1) ** 2
    assert char_poly_of_poset(boolean_poset(3)) == (q - 1) ** 3
    assert len(boolean_poset(3)) == 8


def test_product_rule_for_groups(s3, q):
    a1 = build_group_poset(GroupModel(Family.A, 1))
    combined = product_poset(a1, s3)
    assert len(combined) == 12
    assert combined.is_graded()
    assert char_poly_of_poset(combined) == (q - 1) * (q ** 3 - 2 * q ** 2 + 1)


@pytest.fixture(scope='module', params=[(Family.A, 5), (Family.B, 4), (Family.D, 4), (Family.D, 2)], ids=str)
def desk_poset(request):
    return build_group_poset(GroupModel(*request.param))


def test_bfs_depth_is_length(desk_poset):
    model = desk_poset.model
    expected = {Family.A: factorial(model.rank + 1),
                Family.B: 2 ** model.rank * factorial(model.rank),
                Family.D: 2 ** (model.rank - 1) * factorial(model.rank)}[model.family]
    assert len(desk_poset) == model.order() == expected
    assert all(desk_poset.ranks[i] == w.length for i, w in enumerate(desk_poset.elements))


def test_parabolic_lengths_match_longest_elements(desk_poset):
    model = desk_poset.model
    for subset in iter_subsets(model.generator_indices):
        w0 = model.longest_element(subset)
        assert parabolic_w0_length(model.graph, subset) == w0.length
        assert desk_poset.ranks[desk_poset.index_of(w0)] == w0.length
