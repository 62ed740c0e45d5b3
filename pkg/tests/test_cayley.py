import random

import pytest

from conftest import cached_ball
from thompsonf import IDENTITY, Element, ResourceLimitError, evaluate, multiply, parse_word
from thompsonf.cayley import (ESCAPE_WORD, ball, dead_ends, distance, escape, free_submonoid_check,
                              in_ball_distance, is_dead_end, is_free_up_to, mac_candidates,
                              mac_path_word, mac_witness_search, pocket_depth, replay_path)
from thompsonf.metric import is_dead_end_structural, length
from thompsonf.verify import random_element

SPHERES = [1, 4, 12, 36, 108, 314, 906, 2576, 7280]


def ev(text):
    return evaluate(parse_word(text))


class TestBall:
    def test_small_radii(self):
        assert len(ball(0)) == 1
        assert len(ball(1)) == 5

    def test_sphere_sizes(self, ball8):
        assert ball8.sphere_sizes == SPHERES
        assert len(ball8) == sum(SPHERES)

    def test_deterministic(self):
        assert ball(5).order == ball(5).order

    def test_every_member_has_closer_neighbor(self):
        b = cached_ball(6, True)
        for k in range(1, len(b)):
            r = b.distance_of_index(k)
            assert any(j >= 0 and b.distance_of_index(j) == r - 1 for j in b.neighbors[k])

    def test_cap(self):
        with pytest.raises(ResourceLimitError) as info:
            ball(8, cap=1000)
        assert info.value.partial["radius_reached"] < 8

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("THOMPSONF_MAX_BALL", "50")
        with pytest.raises(ResourceLimitError):
            ball(5)


class TestDistance:
    def test_basics(self):
        x0 = ev("x0")
        assert distance(x0, x0) == 0
        assert distance(IDENTITY, x0) == 1
        assert distance(ev("x0^2"), IDENTITY) == 2

    def test_metric_axioms(self, rng):
        for _ in range(200):
            f, g, h = (random_element(rng, 10) for _ in range(3))
            assert distance(f, g) == distance(g, f)
            assert distance(f, h) <= distance(f, g) + distance(g, h)

    def test_left_invariance_of_cayley_convention(self, rng):
        for _ in range(100):
            f, g, h = (random_element(rng, 10) for _ in range(3))
            assert distance(multiply(f, h), multiply(g, h)) == distance(f, g)


class TestDeadEnds:
    def test_generators_are_not_dead_ends(self):
        for w in ("", "x0", "x0^-1", "x1", "x1^-1"):
            assert not is_dead_end(ev(w))
            assert not is_dead_end_structural(ev(w))

    def test_paths_agree_on_ball(self, ball8):
        for f, _ in ball8.elements():
            assert is_dead_end(f) == is_dead_end_structural(f)

    def test_none_below_eleven(self, ball8):
        assert dead_ends(ball8) == []

    def test_dead_ends_at_eleven(self):
        b = cached_ball(12)
        found = dead_ends(b, 11)
        assert found
        for d in found:
            f = Element.from_twoway(d)
            assert b.distance(d) == 11
            assert is_dead_end(f) and is_dead_end_structural(f)
            assert length(escape(f)) == length(f) + 1
            assert pocket_depth(f, 2)
            assert not pocket_depth(f, 3)


class TestPockets:
    def test_identity_is_not_a_pocket(self):
        assert not pocket_depth(IDENTITY, 2)
        assert not pocket_depth(IDENTITY, 4)

    def test_k_guard(self):
        with pytest.raises(ValueError):
            pocket_depth(IDENTITY, 1)

    def test_escape_word(self):
        assert str(ESCAPE_WORD) == "x1^-2 x0"
        f = ev("x1")
        assert escape(f) == multiply(evaluate(ESCAPE_WORD), f)


class TestInBallDistance:
    def test_small_cases(self):
        b = cached_ball(4, True)
        x0 = ev("x0")
        assert in_ball_distance(x0, x0, 4, b) == 0
        assert in_ball_distance(IDENTITY, x0, 4, b) == 1
        assert in_ball_distance(ev("x0^2"), ev("x1^2"), 4, b) == 4

    def test_at_least_distance(self):
        b = cached_ball(5, True)
        members = [f for f, _ in b.elements()]
        pick = random.Random(7)
        for _ in range(50):
            g, h = pick.choice(members), pick.choice(members)
            assert in_ball_distance(g, h, 5, b) >= distance(g, h)


class TestMac:
    def test_candidate_shape(self):
        b = cached_ball(6, True)
        for k, j in mac_candidates(b):
            g, h = b.order[k], b.order[j]
            ge, he = Element.from_twoway(g), Element.from_twoway(h)
            assert distance(ge, he) == 2
            assert he == multiply(ev("x0^2"), ge)

    def test_saturation_small(self):
        b = cached_ball(6, True)
        pairs = mac_witness_search(6, b, all_pairs=True)
        assert pairs
        assert all(0 < p.in_ball_distance <= 12 for p in pairs)

    def test_path_word(self):
        w = mac_path_word(4)
        assert len(w) == 20
        assert evaluate(w) == ev("x0^2")

    def test_replay(self):
        x0 = ev("x0")
        path = replay_path(IDENTITY, parse_word("x1 x0"), last_letter_first=True)
        assert path == [IDENTITY, x0, ev("x1 x0")]
        path = replay_path(IDENTITY, parse_word("x1 x0"), last_letter_first=False)
        assert path[-1] == ev("x0 x1")


class TestFreeSubmonoid:
    def test_small(self):
        assert free_submonoid_check(1) == (3, 3)
        assert free_submonoid_check(2) == (7, 7)

    def test_twelve(self):
        assert free_submonoid_check(12) == (8191, 8191)
        assert is_free_up_to(12)

    def test_guard(self):
        with pytest.raises(ValueError):
            free_submonoid_check(0)
