"""Unit tests for whitefact/reduction.py (folds, moves and reduction to the base class)."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whitefact.exceptions import AlreadyBaseEquivalentException, NonSplittingInputException
from whitefact.factor_groups import cyclic_system
from whitefact.labellings import ALabel, AlphaLabel, a_equivalent, is_base, volume
from whitefact.reduction import (
    FoldWitness,
    find_fold,
    is_free_splitting,
    reduce_step,
    reduce_to_base,
    reduction_labels,
)
from whitefact.selftest import random_auto
from whitefact.words import identity_word, w_reduce

SYSTEM = cyclic_system(3, 4, 2)


def word(system, *pairs):
    return w_reduce([system.element(i, p) for i, p in pairs], system)


@pytest.fixture
def folded(k3):
    # conjugates G_1, G_2 and G_3^{ba}
    return AlphaLabel((identity_word(k3), identity_word(k3), word(k3, (2, 1), (1, 1))), k3)


def test_find_fold(k3, folded):
    assert find_fold(folded, identity_word(k3)) == FoldWitness(1, 3, identity_word(k3), word(k3, (1, 1)))
    assert find_fold(AlphaLabel.base(k3), identity_word(k3)) is None


def test_fold_prefers_the_smallest_slot_on_a_spoke(k3):
    # spoke 1 runs through C(3, e) and then C(2, c)
    label = AlphaLabel((word(k3, (2, 1), (3, 1)), word(k3, (3, 1)), identity_word(k3)), k3)
    assert find_fold(label, identity_word(k3)) == FoldWitness(2, 1, word(k3, (3, 1)), word(k3, (2, 1), (3, 1)))
    moved, move = reduce_step(label, identity_word(k3))
    assert moved.slot(1) == word(k3, (3, 1))
    assert (move.i, move.j, move.a, move.vol_before, move.vol_after) == (2, 1, k3.element(2, 1), 9, 7)


def test_reduce_step(k3, folded):
    moved, move = reduce_step(folded, identity_word(k3))
    assert moved.slot(3) == word(k3, (2, 1))
    assert (move.i, move.j, move.a) == (1, 3, k3.element(1, 1))
    assert (move.vol_before, move.vol_after) == (7, 5)
    assert move.excess == 0
    assert move.to_json() == {"i": 1, "j": 3, "a": [1, 1], "vol_before": 7, "vol_after": 5}


def test_reduce_to_base(k3, folded):
    final, moves = reduce_to_base(folded)
    assert final == AlphaLabel.base(k3)
    assert [(m.i, m.j, m.vol_before, m.vol_after) for m in moves] == [(1, 3, 7, 5), (2, 3, 5, 3)]


def test_base_needs_no_step(k3):
    with pytest.raises(AlreadyBaseEquivalentException) as exc:
        reduce_step(AlphaLabel.base(k3), identity_word(k3))
    assert exc.value.message == "already base-equivalent"
    assert reduce_to_base(AlphaLabel.base(k3)) == (AlphaLabel.base(k3), [])


def test_non_splitting_tuple(k3):
    stuck = AlphaLabel((word(k3, (3, 1)), word(k3, (1, 1)), word(k3, (2, 1))), k3)
    with pytest.raises(NonSplittingInputException):
        reduce_to_base(stuck)
    assert not is_free_splitting(stuck)


def test_reduction_labels_replay_the_trace(k3, folded):
    final, moves = reduce_to_base(folded)
    labels = reduction_labels(folded, moves)
    assert labels[0] == folded
    assert labels[-1] == final
    assert [volume(step) for step in labels] == [7, 5, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 16))
def test_moves_lower_the_volume_and_keep_the_collapse(seed):
    label = AlphaLabel(random_auto(SYSTEM, random.Random(seed)).conjugators, SYSTEM)
    origin = identity_word(SYSTEM)
    if volume(label, origin) == SYSTEM.n:
        return
    moved, move = reduce_step(label, origin)
    decrease = move.vol_before - move.vol_after
    assert decrease >= 2 and decrease % 2 == 0
    assert a_equivalent(ALabel(move.i, label.conjugators, SYSTEM), ALabel(move.i, moved.conjugators, SYSTEM))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 16))
def test_automorphism_images_of_the_base_are_splittings(seed):
    label = AlphaLabel(random_auto(SYSTEM, random.Random(seed)).conjugators, SYSTEM)
    final, moves = reduce_to_base(label)
    assert is_base(final)
    assert len(moves) <= (volume(label) - SYSTEM.n) // 2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([cyclic_system(0, 2, 3), cyclic_system(0, 0, 0)]), st.integers(0, 2 ** 16))
def test_reduction_with_infinite_factors(system, seed):
    label = AlphaLabel(random_auto(system, random.Random(seed)).conjugators, system)
    final, moves = reduce_to_base(label)
    assert is_base(final)
    assert len(moves) <= (volume(label) - system.n) // 2
    assert reduction_labels(label, moves)[-1] == final
