"""Affine Weyl group: action tables, lengths against the BFS oracle, words,
parabolic subgroups and coset representatives."""

import random

import pytest

from cschur.weyl import WeylGroup


@pytest.fixture(scope="module")
def W2():
    return WeylGroup(2, 8)


def test_generator_action(W2):
    s0, s1, s2 = W2.gens
    assert s0.act((3, 1)) == (-3, 1)
    assert s1.act((3, 1)) == (1, 3)
    assert s2.act((3, 1)) == (3, 7)


def test_identity_and_involutions(W2):
    g = W2.word_elt([0, 1, 2])
    assert (g * g.inverse()).is_identity()
    for s in W2.gens:
        assert (s * s).is_identity()


def test_braid_shape(W2):
    assert W2.word_elt([0, 1, 0, 1]) == W2.word_elt([1, 0, 1, 0])
    assert W2.word_elt([1, 2, 1, 2]) == W2.word_elt([2, 1, 2, 1])


def test_coxeter_presentation_d2_d3():
    for d in (2, 3):
        W = WeylGroup(d, 8)
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if j - i > 1:
                    m = 2
                elif (i, j) in ((0, 1), (d - 1, d)):
                    m = 4
                else:
                    m = 3
                lhs = W.word_elt([i, j] * m)
                assert lhs.is_identity(), (d, i, j, m)


def test_length_examples(W2):
    assert W2.length(W2.identity) == 0
    for s in W2.gens:
        assert W2.length(s) == 1
    assert W2.length(W2.word_elt([0, 1, 0])) == 3


def test_length_bfs_oracle_small():
    for d in (2, 3):
        W = WeylGroup(d, 8)
        dist = W.bfs_lengths(6)
        for g in W.ball(6):
            assert W.length(g) == dist[g.key]


def test_length_step(W2):
    random.seed(7)
    for _ in range(80):
        g = W2.word_elt([random.randrange(3) for _ in range(random.randrange(9))])
        for s in W2.gens:
            assert abs(W2.length(g * s) - W2.length(g)) == 1


def test_reduced_word_greedy(W2):
    assert W2.reduced_word(W2.identity) == ()
    assert W2.reduced_word(W2.gens[2]) == (2,)
    g = W2.word_elt([0, 1, 0])
    word = W2.reduced_word(g)
    assert len(word) == 3 and W2.word_elt(word) == g


def test_reduced_word_of_coset_family():
    # words s_{a+1} ... s_{d-1} s_d s_{d-1} ... s_{a+k} are reduced
    W = WeylGroup(3, 8)
    word = [1, 2, 3, 2, 1]
    g = W.word_elt(word)
    assert W.length(g) == len(word)


def test_faithfulness():
    W = WeylGroup(2, 8)
    seen = {}
    vectors = [(x, y) for x in range(-16, 17, 5) for y in range(-16, 17, 5)]
    for g in W.ball(4):
        images = tuple(g.act(v) for v in vectors)
        assert images not in seen, "two elements act identically"
        seen[images] = g


def test_parabolic_orders(W2):
    assert len(W2.parabolic(set())) == 1
    assert len(W2.parabolic({1})) == 2
    assert len(W2.parabolic({1, 2})) == 8
    with pytest.raises(ValueError):
        W2.parabolic({0, 1, 2})


def test_min_coset_membership(W2):
    assert W2.is_min_right(W2.identity, {1})
    assert not W2.is_min_right(W2.gens[1], {1})
    W1 = WeylGroup(1, 6)
    assert W1.is_min_right(W1.gens[0], {1})


def test_coset_unique_minimum(W2):
    gens = {1, 2}
    sub = W2.parabolic(gens)
    for g in W2.ball(3):
        coset = [W2.multiply(w, g) for w in sub]
        mins = [u for u in coset if W2.is_min_right(u, gens)]
        assert len({u.key for u in mins}) == 1


def test_double_cosets(W2):
    assert W2.double_coset(set(), W2.gens[0], set()) == [W2.gens[0]]
    e = W2.identity
    dc = W2.double_coset({1}, e, set())
    assert sorted(W2.elt_str(g) for g in dc) == ["e", "s1"]
    W1 = WeylGroup(1, 6)
    dc1 = W1.double_coset({1}, W1.identity, {1})
    assert sorted(W1.elt_str(g) for g in dc1) == ["e", "s1"]
    rep = W2.min_double_rep({1}, W2.gens[1], {1})
    assert rep.is_identity()


def test_elt_str_roundtrip(W2):
    for g in W2.ball(4):
        assert W2.parse_elt(W2.elt_str(g)) == g


def test_param_validation():
    with pytest.raises(ValueError):
        WeylGroup(0, 8)
    with pytest.raises(ValueError):
        WeylGroup(2, 7)
    with pytest.raises(IndexError):
        WeylGroup(2, 8)._generator(5)
