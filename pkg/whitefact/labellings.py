from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import networkx as nx

from whitefact.bass_serre_tree import TreeVertex, c_vertex, distance, geodesic, u_vertex
from whitefact.exceptions import MixedSystemException, ParseException
from whitefact.factor_groups import FactorSystem
from whitefact.words import Word, identity_word

if TYPE_CHECKING:
    from whitefact.autos import PureSymmetricAuto


def _canonical_slots(conjugators) -> tuple[Word, ...]:
    return tuple(g.strip_leading(j)[1] for j, g in enumerate(conjugators, start=1))


@dataclass(frozen=True)
class AlphaLabel:
    """
    Labelling of the alpha-graph: slot j carries the conjugate G_j^{g_j}

    Slots are stored coset-canonical, without a leading G_j syllable.
    """
    conjugators: tuple[Word, ...]
    system: FactorSystem = field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.conjugators) != self.system.n:
            raise ParseException(f'alpha labelling needs {self.system.n} slots, got {len(self.conjugators)}')
        if any(g.system is not self.system and g.system != self.system for g in self.conjugators):
            raise MixedSystemException()
        object.__setattr__(self, 'conjugators', _canonical_slots(self.conjugators))

    @classmethod
    def base(cls, system: FactorSystem) -> AlphaLabel:
        return cls(tuple(identity_word(system) for _ in system.indices()), system)

    def slot(self, j: int) -> Word:
        return self.conjugators[j - 1]

    def vertex(self, j: int) -> TreeVertex:
        return c_vertex(j, self.slot(j))

    def syllable_total(self) -> int:
        return sum(len(g) for g in self.conjugators)


@dataclass(frozen=True)
class ALabel:
    """
    Labelling of the A-graph with apex factor i
    """
    apex: int
    conjugators: tuple[Word, ...]
    system: FactorSystem = field(compare=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.apex <= self.system.n:
            raise ParseException(f'apex {self.apex} outside 1..{self.system.n}')
        if len(self.conjugators) != self.system.n:
            raise ParseException(f'A labelling needs {self.system.n} slots, got {len(self.conjugators)}')
        object.__setattr__(self, 'conjugators', _canonical_slots(self.conjugators))

    @classmethod
    def base(cls, system: FactorSystem, apex: int) -> ALabel:
        return cls(apex, tuple(identity_word(system) for _ in system.indices()), system)

    def slot(self, j: int) -> Word:
        return self.conjugators[j - 1]


@dataclass
class SpokeGraph:
    center: TreeVertex
    spokes: list[list[TreeVertex]]

    @property
    def volume(self) -> int:
        return sum(len(spoke) - 1 for spoke in self.spokes)

    def to_networkx(self) -> nx.Graph:
        """
        The wedge of all spokes as a subtree

        Shared initial segments are merged, so the edge count can be below the volume.
        """
        graph = nx.Graph()
        graph.add_node(self.center)
        for spoke in self.spokes:
            nx.add_path(graph, spoke)
        return graph


def double_coset_core(w: Word, left: int, right: int) -> tuple:
    """
    Split w as p.core.q with p in G_left and q in G_right

    :return: (p or None, core, q or None)
    """
    p, rest = w.strip_leading(left)
    core, q = rest.strip_trailing(right)
    return p, core, q


def alpha_witness(l1: AlphaLabel, l2: AlphaLabel) -> tuple[Word | None, int | None]:
    # candidate g from slots 1 and 2, then every slot is checked
    system = l1.system
    w = l1.slot(2) * l1.slot(1).inverse()
    w_prime = l2.slot(2) * l2.slot(1).inverse()
    p, core, q = double_coset_core(w, 2, 1)
    p_prime, core_prime, q_prime = double_coset_core(w_prime, 2, 1)
    if core != core_prime:
        return None, 2
    q_word = Word((q,), system).inverse() if q is not None else identity_word(system)
    q_prime_word = Word((q_prime,), system) if q_prime is not None else identity_word(system)
    u = q_word * q_prime_word
    g = l1.slot(1).inverse() * u * l2.slot(1)
    for j in system.indices():
        if (l2.slot(j) * (l1.slot(j) * g).inverse()).factor_element(j) is None:
            return None, j
    return g, None


def alpha_equivalent(l1: AlphaLabel, l2: AlphaLabel) -> tuple[bool, Word | None]:
    """
    Decide whether two alpha-labellings differ by an inner automorphism

    :param l1: first labelling
    :param l2: second labelling
    :return: (True, g) with G_j^{l2_j} = G_j^{l1_j g} for every j, otherwise (False, None)
    """
    if l1.system is not l2.system and l1.system != l2.system:
        raise MixedSystemException()
    g, _ = alpha_witness(l1, l2)
    return g is not None, g


def a_equivalent(m1: ALabel, m2: ALabel) -> bool:
    if m1.system is not m2.system and m1.system != m2.system:
        raise MixedSystemException()
    if m1.apex != m2.apex:
        return False
    i = m1.apex
    shift1 = m1.slot(i).inverse()
    shift2 = m2.slot(i).inverse()
    for j in m1.system.indices():
        if j == i:
            continue
        core1 = double_coset_core(m1.slot(j) * shift1, j, i)[1]
        core2 = double_coset_core(m2.slot(j) * shift2, j, i)[1]
        if core1 != core2:
            return False
    return True


def collapses(label: AlphaLabel) -> list[ALabel]:
    return [ALabel(i, label.conjugators, label.system) for i in label.system.indices()]


def act(label: AlphaLabel | ALabel, psi: PureSymmetricAuto) -> AlphaLabel | ALabel:
    """
    Image of a labelling under a pure symmetric automorphism

    Slot j becomes c_j psi(g_j), where c_j is the conjugator psi attaches to G_j.
    """
    slots = tuple(c * psi.apply(g) for c, g in zip(psi.conjugators, label.conjugators))
    if isinstance(label, ALabel):
        return ALabel(label.apex, slots, label.system)
    return AlphaLabel(slots, label.system)


def spoke_graph(label: AlphaLabel, x: Word) -> SpokeGraph:
    center = u_vertex(x)
    return SpokeGraph(center, [geodesic(center, label.vertex(j)) for j in label.system.indices()])


def volume(label: AlphaLabel, x: Word | None = None) -> int:
    center = u_vertex(x if x is not None else identity_word(label.system))
    return sum(distance(center, label.vertex(j)) for j in label.system.indices())


def base_witness_candidates(label: AlphaLabel) -> list[Word]:
    """
    Basepoints x that could give volume n: x must lie in G_1 g_1
    """
    system = label.system
    return [Word((h,), system) * label.slot(1) if not h.is_identity() else label.slot(1)
            for h in system.group(1).elements()]


def is_base(label: AlphaLabel) -> bool:
    equivalent, _ = alpha_equivalent(AlphaLabel.base(label.system), label)
    return equivalent
