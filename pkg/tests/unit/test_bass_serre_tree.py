"""Unit tests for whitefact/bass_serre_tree.py (vertices, geodesics and distances)."""
import itertools
import random

import networkx as nx
import pytest

from whitefact.bass_serre_tree import (
    bfs_ball,
    c_vertex,
    distance,
    geodesic,
    lies_between,
    neighbours,
    sorted_vertices,
    u_vertex,
    v_act,
    v_canon,
)
from whitefact.exceptions import InvalidRadiusException, OracleRequiresFiniteFactorsException
from whitefact.factor_groups import cyclic_system
from whitefact.selftest import random_nontrivial, random_word
from whitefact.words import Word, identity_word, w_reduce


def word(system, *pairs):
    return w_reduce([system.element(i, p) for i, p in pairs], system)


def test_c_vertex_is_coset_canonical(k3):
    assert v_canon(1, word(k3, (1, 1), (2, 1))) == c_vertex(1, word(k3, (2, 1)))
    assert c_vertex(1, word(k3, (1, 1))) == c_vertex(1, identity_word(k3))
    assert c_vertex(2, word(k3, (1, 1))).name == "C2:[[1,1]]"


def test_neighbours(k3):
    e = identity_word(k3)
    assert [v.name for v in neighbours(u_vertex(e))] == ["C1:[]", "C2:[]", "C3:[]"]
    assert [v.name for v in neighbours(c_vertex(1, e))] == ["U:[]", "U:[[1,1]]"]


def test_geodesic_follows_the_normal_form(k3):
    path = geodesic(u_vertex(identity_word(k3)), u_vertex(word(k3, (1, 1), (2, 1))))
    assert [v.name for v in path] == ["U:[]", "C2:[]", "U:[[2,1]]", "C1:[[2,1]]", "U:[[1,1],[2,1]]"]


def test_geodesic_from_a_translated_start(k3):
    p = u_vertex(word(k3, (3, 1)))
    q = c_vertex(1, word(k3, (2, 1), (3, 1)))
    path = geodesic(p, q)
    assert path[0] == p and path[-1] == q
    assert len(path) - 1 == distance(p, q) == 3


def test_distance_closed_forms(k3):
    e = identity_word(k3)
    assert distance(u_vertex(e), u_vertex(word(k3, (1, 1), (2, 1)))) == 4
    assert distance(u_vertex(e), c_vertex(3, word(k3, (2, 1), (1, 1)))) == 5
    assert distance(c_vertex(3, word(k3, (2, 1), (1, 1))), u_vertex(e)) == 5
    assert distance(c_vertex(1, e), c_vertex(2, e)) == 2
    assert distance(u_vertex(e), c_vertex(1, word(k3, (1, 1)))) == 1
    assert distance(u_vertex(e), u_vertex(e)) == 0


def test_distances_agree_with_breadth_first_search(k3):
    ball = bfs_ball(u_vertex(identity_word(k3)), 4)
    assert ball.number_of_nodes() == 19
    oracle = dict(nx.all_pairs_shortest_path_length(ball))
    for p, q in itertools.product(ball.nodes, repeat=2):
        assert distance(p, q) == oracle[p][q]
        assert len(geodesic(p, q)) - 1 == oracle[p][q]


def test_ball_carries_distances(z3z4z2):
    ball = bfs_ball(c_vertex(2, identity_word(z3z4z2)), 2)
    assert all(ball.nodes[v]["distance"] == distance(c_vertex(2, identity_word(z3z4z2)), v) for v in ball.nodes)
    assert max(d for _, d in ball.nodes(data="distance")) == 2


def test_ball_requires_finite_factors():
    with pytest.raises(OracleRequiresFiniteFactorsException):
        bfs_ball(u_vertex(identity_word(cyclic_system(2, 0))), 2)


def test_ball_rejects_a_negative_radius(k3):
    with pytest.raises(InvalidRadiusException) as exc:
        bfs_ball(u_vertex(identity_word(k3)), -1)
    assert exc.value.message == "ball radius must be non-negative, got -1"
    assert list(bfs_ball(u_vertex(identity_word(k3)), 0).nodes) == [u_vertex(identity_word(k3))]


def test_geodesics_in_an_infinite_factor_system():
    system = cyclic_system(0, 2)
    far = u_vertex(word(system, (1, 5), (2, 1), (1, -2)))
    path = geodesic(u_vertex(identity_word(system)), far)
    assert len(path) == 7
    assert all(distance(a, b) == 1 for a, b in zip(path, path[1:]))


def test_translation_preserves_distance(z3z4z2):
    rng = random.Random(7)
    for _ in range(100):
        p = u_vertex(random_word(z3z4z2, rng, 4))
        q = c_vertex(rng.choice([1, 2, 3]), random_word(z3z4z2, rng, 4))
        g = random_word(z3z4z2, rng, 3)
        assert distance(v_act(p, g), v_act(q, g)) == distance(p, q)


def test_c_vertex_stabilizer_fixes_it(z3z4z2):
    rng = random.Random(11)
    for _ in range(50):
        i = rng.choice([1, 2, 3])
        v = c_vertex(i, random_word(z3z4z2, rng, 4))
        h = v.rep.inverse() * Word((random_nontrivial(z3z4z2.group(i), rng),), z3z4z2) * v.rep
        assert v_act(v, h) == v


def test_lies_between(k3):
    e = identity_word(k3)
    target = u_vertex(word(k3, (1, 1), (2, 1)))
    assert lies_between(c_vertex(2, e), u_vertex(e), target)
    assert not lies_between(c_vertex(3, e), u_vertex(e), target)


def test_sorted_vertices_puts_u_vertices_first(k3):
    e = identity_word(k3)
    vertices = [c_vertex(2, e), u_vertex(word(k3, (1, 1))), c_vertex(1, e), u_vertex(e)]
    assert [v.name for v in sorted_vertices(vertices)] == ["U:[]", "U:[[1,1]]", "C1:[]", "C2:[]"]


@pytest.mark.parametrize("system", [cyclic_system(2, 2, 2), cyclic_system(2, 3, 2)])
def test_neighbours_of_a_c_vertex_differ_by_a_stabilizer_element(system):
    ball = bfs_ball(u_vertex(identity_word(system)), 3)
    for v in (v for v in ball.nodes if not v.is_u):
        around = neighbours(v)
        assert all(distance(v, u) == 1 for u in around)
        for x, y in itertools.permutations(around, 2):
            shift = x.rep.inverse() * y.rep
            assert v_act(v, shift) == v
            assert v_act(x, shift) == y


@pytest.mark.parametrize("system", [cyclic_system(2, 2, 2), cyclic_system(2, 3, 2)])
def test_translation_preserves_adjacency(system):
    rng = random.Random(3)
    ball = bfs_ball(u_vertex(identity_word(system)), 3)
    for _ in range(10):
        g = random_word(system, rng, 3)
        for p, q in ball.edges:
            p_image, q_image = v_act(p, g), v_act(q, g)
            assert distance(p_image, q_image) == 1
            assert q_image in neighbours(p_image)
