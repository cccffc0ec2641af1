import itertools
import random
from fractions import Fraction

import pytest

from deplin import (
    centre,
    centroid,
    degree_moment,
    expected_C_unconstrained,
    expected_D_unconstrained,
    from_edge_list,
    from_head_vector,
    hubiness,
    mean_hierarchical_distance,
    num_independent_edge_pairs,
    random_tree,
    tree_shape,
)
from deplin.errors import KindMismatchError, NoEdgesError, TooSmallError
from deplin.generate import TreeKind, exhaustive_trees

import oracles


def test_fig2_mhd(fig2):
    assert mean_hierarchical_distance(fig2) == Fraction(21, 9)


def test_mhd_path_and_star():
    assert mean_hierarchical_distance(from_head_vector("0 1 2 3")) == Fraction(6, 3)
    assert mean_hierarchical_distance(from_head_vector("0 1 1 1")) == Fraction(1)
    with pytest.raises(NoEdgesError):
        mean_hierarchical_distance(from_head_vector("0"))


def test_degree_moments():
    t = from_head_vector("0 1 1 1")  # star, degrees 3,1,1,1
    assert degree_moment(t, 1) == Fraction(6, 4)
    assert degree_moment(t, 2) == Fraction(12, 4)
    # mean in-degree is (n-1)/n for every rooted tree
    assert degree_moment(t, 1, kind="in") == Fraction(3, 4)
    assert degree_moment(t, 1, kind="out") == Fraction(3, 4)
    with pytest.raises(KindMismatchError):
        degree_moment(t.to_free(), 1, kind="in")


def test_mean_in_degree_invariant():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(2, 30)
        t = random_tree(TreeKind.parse("labeled-rooted"), n, rng)
        assert degree_moment(t, 1, kind="in") == Fraction(n - 1, n)


def test_hubiness_extremes():
    # star maximizes hubiness (1), path minimizes (0)
    assert hubiness(from_head_vector("0 1 1 1 1 1")) == 1
    assert hubiness(from_head_vector("0 1 2 3 4 5")) == 0
    with pytest.raises(TooSmallError):
        hubiness(from_head_vector("0 1 2"))


def test_q_closed_form_vs_pairs():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(2, 25)
        t = random_tree(TreeKind.parse("labeled-free"), n, rng)
        edges = list(t.edges())
        q = sum(1 for e, f in itertools.combinations(edges, 2)
                if not set(e) & set(f))
        assert num_independent_edge_pairs(t) == q


def test_centre_and_centroid():
    path = from_edge_list(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    assert centre(path) == frozenset({3})
    assert centroid(path) == frozenset({3})
    path4 = from_edge_list(4, [(1, 2), (2, 3), (3, 4)])
    assert centre(path4) == frozenset({2, 3})
    assert centroid(path4) == frozenset({2, 3})
    star = from_edge_list(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    assert centre(star) == frozenset({1})
    assert centroid(star) == frozenset({1})
    # centre and centroid can differ: broom
    broom = from_edge_list(7, [(1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7)])
    assert centre(broom) == frozenset({3})
    assert centroid(broom) == frozenset({4})


def test_tree_shapes():
    path = from_edge_list(5, [(1, 2), (2, 3), (3, 4), (4, 5)]).root_at(1)
    s = tree_shape(path)
    assert s.linear and s.caterpillar and not s.star
    star = from_head_vector("0 1 1 1 1")
    s = tree_shape(star)
    assert s.star and s.quasistar is False and s.bistar and s.caterpillar and s.spider
    quasi = from_edge_list(5, [(1, 2), (1, 3), (1, 4), (4, 5)])
    s = tree_shape(quasi)
    assert s.quasistar and not s.star
    bistar = from_edge_list(6, [(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)])
    s = tree_shape(bistar)
    assert s.bistar and not s.star and not s.quasistar
    spider = from_edge_list(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
    s = tree_shape(spider)
    assert s.spider and not s.caterpillar
    noncat = from_edge_list(7, [(1, 2), (2, 3), (2, 4), (4, 5), (4, 6), (6, 7)])
    # vertex 2 and 4 internal with induced degree 2 each -> still a caterpillar
    assert tree_shape(noncat).caterpillar


def test_expected_values_vs_enumeration():
    for n in range(2, 7):
        for t in exhaustive_trees(TreeKind.parse("unlabeled-free"), n):
            edges = list(t.edges())
            ed = oracles.mean_over_permutations(
                n, edges,
                lambda pos: oracles.edge_lengths_sum(edges, pos))
            ec = oracles.mean_over_permutations(
                n, edges,
                lambda pos: oracles.crossings_pairs(edges, pos))
            assert expected_D_unconstrained(t) == ed
            assert expected_C_unconstrained(t) == ec


def test_expected_d_closed_form():
    t = from_head_vector("0 1 2")
    assert expected_D_unconstrained(t) == Fraction(8, 3)
    assert expected_C_unconstrained(from_head_vector("0 1")) == 0
