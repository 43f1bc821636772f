import pytest

from core.coxeter import (
    Family,
    build_graph,
    components_of,
    neighbors_in_graph,
    parabolic_w0_length,
    subset_statistics,
    w0_length,
)
from core.errors import RankOutOfRangeError, UnclassifiableComponentError
from core.utils import iter_subsets


@pytest.mark.parametrize("text,family", [
    ('A', Family.A),
    ('b', Family.B),
    ('AffC', Family.AFF_C),
    ('affa', Family.AFF_A),
    ('~D', Family.AFF_D),
])
def test_family_parse(text, family):
    assert Family.parse(text) == family


def test_family_parse_rejects_unknown():
    with pytest.raises(RankOutOfRangeError):
        Family.parse('E')


def test_w0_lengths():
    assert w0_length(Family.A, 3) == 6
    assert w0_length(Family.B, 3) == 9
    assert w0_length(Family.D, 4) == 12
    assert w0_length(Family.A, 0) == 0


def test_type_a_is_a_path():
    graph = build_graph(Family.A, 3)
    assert graph.nodes == (1, 2, 3)
    assert graph.label(1, 2) == 3
    assert graph.label(1, 3) == 2
    assert graph.label(2, 2) == 1
    assert graph.commutes(1, 3)


def test_type_b_has_four_at_the_end():
    graph = build_graph(Family.B, 3)
    assert graph.label(2, 3) == 4
    assert graph.label(1, 2) == 3


def test_type_d_forks_at_three():
    graph = build_graph(Family.D, 4)
    assert sorted(graph.graph.neighbors(3)) == [1, 2, 4]
    assert graph.commutes(1, 2)


def test_affine_graphs():
    triangle = build_graph(Family.AFF_A, 2)
    assert triangle.nodes == (1, 2, 3)
    assert triangle.graph.number_of_edges() == 3

    c2 = build_graph(Family.AFF_C, 2)
    assert c2.nodes == (0, 1, 2)
    assert c2.label(0, 1) == 4 and c2.label(1, 2) == 4

    b3 = build_graph(Family.AFF_B, 3)
    assert b3.label(0, 2) == 3
    assert b3.label(2, 3) == 4
    assert b3.commutes(0, 1)

    d4 = build_graph(Family.AFF_D, 4)
    assert sorted(d4.graph.neighbors(2)) == [0, 1, 3, 4]

    d6 = build_graph(Family.AFF_D, 6)
    assert sorted(d6.graph.neighbors(2)) == [0, 1, 3]
    assert sorted(d6.graph.neighbors(4)) == [3, 5, 6]


@pytest.mark.parametrize("family,rank", [
    (Family.A, 0),
    (Family.B, 1),
    (Family.AFF_A, 1),
    (Family.AFF_B, 2),
    (Family.AFF_D, 3),
])
def test_rank_below_minimum(family, rank):
    with pytest.raises(RankOutOfRangeError):
        build_graph(family, rank)


def test_components_in_type_a():
    report = components_of(build_graph(Family.A, 4), {1, 2, 4})
    assert report.types() == ['A_2', 'A_1']
    assert report.total_length == 4


def test_components_b_and_d():
    assert components_of(build_graph(Family.B, 3), {2, 3}).types() == ['B_2']
    assert components_of(build_graph(Family.B, 3), {1, 2, 3}).total_length == 9
    assert components_of(build_graph(Family.D, 4), {1, 2, 3}).types() == ['A_3']
    assert components_of(build_graph(Family.D, 4), {1, 2, 3, 4}).types() == ['D_4']
    assert components_of(build_graph(Family.D, 2), {1, 2}).types() == ['A_1', 'A_1']


def test_components_in_affine_graphs():
    c2 = build_graph(Family.AFF_C, 2)
    assert components_of(c2, {0, 1}).types() == ['B_2']
    assert components_of(c2, {0, 2}).types() == ['A_1', 'A_1']
    b4 = build_graph(Family.AFF_B, 4)
    assert components_of(b4, {0, 1, 2, 3}).types() == ['D_4']
    assert components_of(b4, {0, 2, 3, 4}).types() == ['B_4']
    d5 = build_graph(Family.AFF_D, 5)
    assert components_of(d5, {0, 1, 2, 3}).types() == ['D_4']


def test_full_affine_sets_are_not_finite():
    with pytest.raises(UnclassifiableComponentError):
        components_of(build_graph(Family.AFF_A, 2), {1, 2, 3})
    with pytest.raises(UnclassifiableComponentError):
        components_of(build_graph(Family.AFF_C, 2), {0, 1, 2})
    with pytest.raises(UnclassifiableComponentError):
        components_of(build_graph(Family.AFF_D, 4), {0, 1, 2, 3, 4})


def test_unknown_generator_rejected():
    with pytest.raises(RankOutOfRangeError):
        components_of(build_graph(Family.A, 2), {3})


def test_parabolic_length_of_empty_set():
    assert parabolic_w0_length(build_graph(Family.A, 3), set()) == 0


def test_neighbors():
    assert neighbors_in_graph(build_graph(Family.A, 3), {3}) == frozenset({2})
    assert neighbors_in_graph(build_graph(Family.A, 5), {2, 4}) == frozenset({1, 3, 5})
    assert neighbors_in_graph(build_graph(Family.A, 3), set()) == frozenset()


def test_subset_statistics():
    assert subset_statistics(build_graph(Family.A, 2)) == ((0, 0, 1), (1, 1, 2), (2, 3, 1))
    assert subset_statistics(build_graph(Family.AFF_A, 2), proper=True) == ((0, 0, 1), (1, 1, 3), (2, 3, 3))


@pytest.mark.parametrize("family,rank", [
    (Family.A, 5), (Family.B, 4), (Family.D, 4), (Family.D, 2),
    (Family.AFF_A, 4), (Family.AFF_B, 4), (Family.AFF_C, 3),
] + [(Family.AFF_D, n) for n in range(4, 9)])
def test_components_are_stable_under_restriction(family, rank):
    graph = build_graph(family, rank)
    for subset in iter_subsets(graph.nodes, proper=family.is_affine):
        report = components_of(graph, subset)
        assert frozenset().union(*(c.generators for c in report.components)) == subset
        assert parabolic_w0_length(graph, subset) == sum(
            w0_length(c.family, c.rank) for c in report.components
        )
        for component in report.components:
            assert components_of(graph, component.generators).components == (component,)
