from __future__ import annotations

import logging
from dataclasses import dataclass

from whitefact.bass_serre_tree import geodesic, u_vertex
from whitefact.exceptions import AlreadyBaseEquivalentException, NonSplittingInputException, WhitefactException
from whitefact.factor_groups import FactorElement
from whitefact.labellings import ALabel, AlphaLabel, a_equivalent, is_base, volume
from whitefact.words import Word, identity_word


@dataclass(frozen=True)
class FoldWitness:
    """
    Fold configuration [U.x, U.y, G_i.g_i, U.z, G_j.g_j] on spoke j
    """
    i: int
    j: int
    y: Word
    z: Word


@dataclass(frozen=True)
class MoveRecord:
    i: int
    j: int
    a: FactorElement
    shift: Word
    vol_before: int
    vol_after: int

    @property
    def excess(self) -> int:
        """
        l in vol_after = vol_before - 2 - 2l
        """
        return (self.vol_before - self.vol_after - 2) // 2

    def to_json(self) -> dict:
        return {'i': self.i, 'j': self.j, 'a': [self.a.factor, self.a.payload],
                'vol_before': self.vol_before, 'vol_after': self.vol_after}


def find_fold(label: AlphaLabel, x: Word) -> FoldWitness | None:
    """
    Search the spokes at U.x for a C-vertex of another slot

    Spokes are scanned by increasing j; on a spoke the fold vertex of the smallest slot i wins.

    :param label: alpha labelling
    :param x: basepoint of the spokes
    :return: the fold witness, or None if no spoke passes through another slot vertex
    """
    center = u_vertex(x)
    slot_vertices = {label.vertex(i): i for i in label.system.indices()}
    for j in label.system.indices():
        spoke = geodesic(center, label.vertex(j))
        folds = [(slot_vertices[v], position) for position, v in enumerate(spoke[:-1])
                 if slot_vertices.get(v, j) != j]
        if folds:
            i, position = min(folds)
            return FoldWitness(i, j, spoke[position - 1].rep, spoke[position + 1].rep)
    return None


def reduce_step(label: AlphaLabel, x: Word) -> tuple[AlphaLabel, MoveRecord]:
    """
    Move slot j across the fold vertex G_i.g_i, strictly lowering the volume at U.x

    :param label: alpha labelling with volume above n at U.x
    :param x: basepoint
    :raises AlreadyBaseEquivalentException: if the volume is already n
    :raises NonSplittingInputException: if no fold exists above volume n
    :return: the new labelling and the move record
    """
    system = label.system
    before = volume(label, x)
    if before <= system.n:
        raise AlreadyBaseEquivalentException()
    fold = find_fold(label, x)
    if fold is None:
        logging.warning(f'No fold found at volume {before}; tuple does not define a free splitting')
        raise NonSplittingInputException(before)

    shift = fold.z.inverse() * fold.y
    g_i = label.slot(fold.i)
    a = (g_i * shift * g_i.inverse()).factor_element(fold.i)
    if a is None or a.is_identity():
        logging.error(f'Fold at ({fold.i}, {fold.j}) does not conjugate into factor {fold.i}')
        raise WhitefactException(f'fold shift does not lie in the stabilizer of slot {fold.i}')

    slots = list(label.conjugators)
    slots[fold.j - 1] = slots[fold.j - 1] * shift
    moved = AlphaLabel(tuple(slots), system)
    after = volume(moved, x)
    if after > before - 2 or (before - after) % 2:
        logging.error(f'Volume went from {before} to {after} at move ({fold.i}, {fold.j})')
        raise WhitefactException(f'volume did not decrease by an even amount: {before} -> {after}')
    if not a_equivalent(ALabel(fold.i, label.conjugators, system), ALabel(fold.i, moved.conjugators, system)):
        logging.error(f'Collapse at apex {fold.i} changed across the move')
        raise WhitefactException(f'collapse at apex {fold.i} is not preserved by the move')

    logging.info(f'Moved slot {fold.j} across factor {fold.i}: volume {before} -> {after}')
    return moved, MoveRecord(fold.i, fold.j, a, shift, before, after)


def reduce_to_base(label: AlphaLabel) -> tuple[AlphaLabel, list[MoveRecord]]:
    system = label.system
    origin = identity_word(system)
    moves = []
    current = label
    while volume(current, origin) > system.n:
        current, move = reduce_step(current, origin)
        moves.append(move)
    if not is_base(current):
        raise NonSplittingInputException(system.n)
    return current, moves


def reduction_labels(label: AlphaLabel, moves: list[MoveRecord]) -> list[AlphaLabel]:
    """
    Replay a move trace

    :return: the labellings visited, starting with label
    """
    labels = [label]
    for move in moves:
        slots = list(labels[-1].conjugators)
        slots[move.j - 1] = slots[move.j - 1] * move.shift
        labels.append(AlphaLabel(tuple(slots), label.system))
    return labels


def is_free_splitting(label: AlphaLabel) -> bool:
    """
    Decide whether the conjugates G_j^{g_j} form a free splitting

    Moves are Whitehead automorphisms, so the property is preserved in both directions
    and a reduction stuck above volume n answers no.
    """
    try:
        reduce_to_base(label)
    except NonSplittingInputException:
        return False
    return True
