"""Acceptance suite: the seeded engine checks at their full sizes."""
import random

import pytest

from whitefact.selftest import (
    check_base_characterization,
    check_connectivity,
    check_halfway,
    check_mutation,
    check_oracle_distances,
    check_round_trip,
    check_stabilizers,
    check_volume_decrease,
    run_selftest,
)

pytestmark = pytest.mark.e2e


@pytest.fixture
def rng():
    return random.Random(0)


def test_geodesics_match_breadth_first_search():
    passed, detail = check_oracle_distances()
    assert passed, detail


def test_c_vertices_are_midpoints(rng):
    passed, detail = check_halfway(rng)
    assert passed, detail
    assert detail == "1000 instances"


def test_every_step_lowers_the_volume(rng):
    passed, detail = check_volume_decrease(rng)
    assert passed, detail


def test_base_class_characterizations_agree():
    passed, detail = check_base_characterization()
    assert passed, detail


def test_factorizations_verify(rng):
    passed, detail = check_round_trip(rng)
    assert passed, detail


def test_ball_reaches_the_base():
    passed, detail = check_connectivity()
    assert passed, detail


def test_stabilizers_are_classified(rng):
    passed, detail = check_stabilizers(rng)
    assert passed, detail


def test_mutated_factorizations_fail(rng):
    passed, detail = check_mutation(rng)
    assert passed, detail


def test_selftest_is_reproducible():
    first = [(r.name, r.passed, r.detail) for r in run_selftest(3)]
    second = [(r.name, r.passed, r.detail) for r in run_selftest(3)]
    assert first == second
    assert all(passed for _, passed, _ in first)
