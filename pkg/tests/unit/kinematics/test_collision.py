import pytest

from kinematics.collision import (
    CollisionAnalyzer,
    default_ordering,
    detect_collisions,
    event_residual,
    search_ordering,
)
from kinematics.linkage import chain_linkage
from tests.conftest import kel
from utils.error_handling import LinkageError

INTERLEAVED = (5, 1, 6, 2, 7, 8, 4, 3)


def test_interleaved_ordering_collides_only_at_start(ellipse_ladder):
    events = detect_collisions(ellipse_ladder, INTERLEAVED)
    assert len(events) == 2
    assert all(e.at_infinity for e in events)
    for event in events:
        assert event.exact
        assert 0 <= event.s <= 1
        assert event_residual(ellipse_ladder, event) < 1e-12


def test_events_only_for_links_between_joint_links(ellipse_ladder):
    position = {link: pos for pos, link in enumerate(INTERLEAVED)}
    for event in detect_collisions(ellipse_ladder, INTERLEAVED):
        a, b = event.links
        lo, hi = sorted((position[a], position[b]))
        assert lo < position[event.link] < hi


def test_two_link_chain_never_collides():
    L = chain_linkage([kel((0, 1), (1, 0))])
    assert detect_collisions(L) == []
    assert search_ordering(L).count == 0


def test_ascending_ordering_of_chain_is_collision_free(ellipse_chain):
    assert default_ordering(ellipse_chain) == (1, 2, 3, 4)
    assert detect_collisions(ellipse_chain) == []


def test_ordering_must_be_a_permutation(ellipse_ladder):
    with pytest.raises(LinkageError):
        detect_collisions(ellipse_ladder, (1, 2, 3))
    with pytest.raises(LinkageError):
        detect_collisions(ellipse_ladder, (1, 1, 2, 3, 4, 5, 6, 7))


def test_search_never_loses_to_default(ellipse_ladder):
    analyzer = CollisionAnalyzer(ellipse_ladder)
    baseline = analyzer.score(default_ordering(ellipse_ladder))
    result = search_ordering(ellipse_ladder, budget=60, seed=3, analyzer=analyzer)
    assert (result.finite, result.infinite) <= baseline
    assert sorted(result.ordering) == list(ellipse_ladder.links)
    assert len(result.events) == result.count


def test_search_is_reproducible(ellipse_ladder):
    first = search_ordering(ellipse_ladder, budget=40, seed=11)
    second = search_ordering(ellipse_ladder, budget=40, seed=11)
    assert first.ordering == second.ordering


def test_finite_events_lie_on_segments(ellipse_ladder):
    analyzer = CollisionAnalyzer(ellipse_ladder)
    for event in analyzer.events(default_ordering(ellipse_ladder)):
        assert event_residual(ellipse_ladder, event) < 1e-9


def test_ladder_default_ordering_follows_layers(ellipse_ladder):
    assert default_ordering(ellipse_ladder) == (1, 5, 6, 2, 7, 3, 8, 4)
