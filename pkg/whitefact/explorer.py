from __future__ import annotations

import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import networkx as nx

from whitefact.autos import PureSymmetricAuto, invert
from whitefact.exceptions import InvalidBoundException, NonSplittingInputException, OracleRequiresFiniteFactorsException
from whitefact.factor_groups import FactorSystem
from whitefact.labellings import ALabel, AlphaLabel, a_equivalent, act, alpha_equivalent, collapses, is_base
from whitefact.reduction import is_free_splitting, reduce_to_base, reduction_labels
from whitefact.words import Word, enumerate_words


@dataclass
class SnBall:
    """
    Volume-bounded ball of the complex spanned by alpha- and A-classes
    """
    system: FactorSystem
    alpha_classes: list[AlphaLabel]
    a_classes: list[ALabel]
    edges: list[tuple[int, int]]
    bound: int

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for k, label in enumerate(self.alpha_classes):
            graph.add_node(('alpha', k), bipartite=0, label=label)
        for k, label in enumerate(self.a_classes):
            graph.add_node(('A', k), bipartite=1, label=label)
        graph.add_edges_from((('alpha', a), ('A', b)) for a, b in self.edges)
        return graph


@dataclass
class BallReport:
    alpha_count: int = 0
    a_count: int = 0
    edge_count: int = 0
    bipartite: bool = True
    reached_base: int = 0
    base_collapses_ok: bool = True
    fundamental_domain_ok: bool = True
    distinct_classes_ok: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def connected_fraction(self) -> float:
        return self.reached_base / self.alpha_count if self.alpha_count else 1.0


def representative_key(label: AlphaLabel | ALabel) -> tuple[int, bytes]:
    serialized = json.dumps([g.to_json() for g in label.conjugators], separators=(',', ':'))
    return sum(len(g) for g in label.conjugators), serialized.encode()


def _slot_tuples(system: FactorSystem, budget: int) -> list[tuple[Word, ...]]:
    slot_words = [enumerate_words(system, budget, avoid_leading=j) for j in system.indices()]
    tuples: list[tuple[Word, ...]] = [()]
    for words in slot_words:
        tuples = [prefix + (w,) for prefix in tuples for w in words
                  if sum(len(g) for g in prefix) + len(w) <= budget]
    return tuples


def enumerate_ball(system: FactorSystem, max_volume: int, threads: int | None = None) -> SnBall:
    """
    Enumerate all alpha-classes of volume at most max_volume, with their collapses

    :param system: finite factor system
    :param max_volume: volume bound at the base U-vertex
    :param threads: worker count for the splitting test, None for automatic
    :raises OracleRequiresFiniteFactorsException: if a factor is infinite
    :raises InvalidBoundException: if max_volume < n
    :return: the ball
    """
    if not system.is_finite():
        raise OracleRequiresFiniteFactorsException('ball enumeration')
    if max_volume < system.n:
        raise InvalidBoundException(max_volume, system.n)

    # every slot costs 2 * syllables + 1
    candidates = sorted((AlphaLabel(t, system) for t in _slot_tuples(system, (max_volume - system.n) // 2)),
                        key=representative_key)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        splitting = list(pool.map(is_free_splitting, candidates))

    alpha_classes: list[AlphaLabel] = []
    for label, keep in zip(candidates, splitting):
        if keep and not any(alpha_equivalent(rep, label)[0] for rep in alpha_classes):
            alpha_classes.append(label)

    a_classes: list[ALabel] = []
    edges = []
    for index, label in enumerate(alpha_classes):
        for collapse in collapses(label):
            match = next((k for k, rep in enumerate(a_classes) if a_equivalent(rep, collapse)), None)
            if match is None:
                match = len(a_classes)
                a_classes.append(collapse)
            edges.append((index, match))
    logging.info(f'Ball of volume {max_volume}: {len(alpha_classes)} alpha-classes, '
                 f'{len(a_classes)} A-classes, {len(edges)} edges from {len(candidates)} candidates')
    return SnBall(system, alpha_classes, a_classes, edges, max_volume)


def _class_index(ball: SnBall, label: AlphaLabel) -> int | None:
    return next((k for k, rep in enumerate(ball.alpha_classes) if alpha_equivalent(rep, label)[0]), None)


def check_ball(ball: SnBall) -> BallReport:
    """
    Verify the structural properties of an enumerated ball

    :param ball: enumerated ball, possibly mutated
    :return: report listing every failed check
    """
    system = ball.system
    n = system.n
    graph = ball.to_networkx()
    report = BallReport(len(ball.alpha_classes), len(ball.a_classes), len(ball.edges))

    report.bipartite = nx.is_bipartite(graph) and all(
        graph.nodes[u]['bipartite'] != graph.nodes[v]['bipartite'] for u, v in graph.edges)
    if not report.bipartite:
        report.failures.append('ball graph is not bipartite between alpha- and A-classes')
    for a, b in ball.edges:
        apex = ball.a_classes[b].apex
        if not a_equivalent(collapses(ball.alpha_classes[a])[apex - 1], ball.a_classes[b]):
            report.failures.append(f'edge ({a}, {b}) is not a collapse')
    for k in range(len(ball.alpha_classes)):
        degree = graph.degree(('alpha', k))
        if degree != n:
            report.failures.append(f'alpha class {k} has {degree} collapse edges, expected {n}')

    for a, b in itertools.combinations(range(len(ball.alpha_classes)), 2):
        if alpha_equivalent(ball.alpha_classes[a], ball.alpha_classes[b])[0]:
            report.distinct_classes_ok = False
            report.failures.append(f'alpha classes {a} and {b} are equivalent')
    for a, b in itertools.combinations(range(len(ball.a_classes)), 2):
        if a_equivalent(ball.a_classes[a], ball.a_classes[b]):
            report.distinct_classes_ok = False
            report.failures.append(f'A classes {a} and {b} are equivalent')

    base_index = next((k for k, rep in enumerate(ball.alpha_classes) if is_base(rep)), None)
    if base_index is None:
        report.failures.append('base alpha-class is missing')
        report.base_collapses_ok = False
        report.fundamental_domain_ok = False
        return report

    for k, label in enumerate(ball.alpha_classes):
        try:
            _, moves = reduce_to_base(label)
        except NonSplittingInputException as e:
            report.failures.append(f'alpha class {k}: {e.message}')
            continue
        if any(move.vol_before > ball.bound for move in moves):
            report.failures.append(f'alpha class {k} leaves the ball while reducing')
            continue
        if any(_class_index(ball, visited) is None for visited in reduction_labels(label, moves)):
            report.failures.append(f'alpha class {k} reduces through a class outside the ball')
            continue
        if not nx.has_path(graph, ('alpha', k), ('alpha', base_index)):
            report.failures.append(f'alpha class {k} is not connected to the base class in the ball graph')
            continue
        report.reached_base += 1

    neighbours = [graph.nodes[v]['label'] for v in graph.neighbors(('alpha', base_index))]
    report.base_collapses_ok = len(neighbours) == n and all(
        any(a_equivalent(ALabel.base(system, i), m) for m in neighbours) for i in system.indices())
    if not report.base_collapses_ok:
        report.failures.append(f'base alpha-class does not have exactly the {n} base collapses')

    for k, label in enumerate(ball.alpha_classes):
        carried = act(label, _tuple_inverse(label))
        if not alpha_equivalent(AlphaLabel.base(system), carried)[0]:
            report.fundamental_domain_ok = False
            report.failures.append(f'alpha class {k} is not carried to the base class')
    for k, label in enumerate(ball.a_classes):
        carried = act(label, _tuple_inverse(label))
        if not a_equivalent(ALabel.base(system, label.apex), carried):
            report.fundamental_domain_ok = False
            report.failures.append(f'A class {k} is not carried to the base A-graph with apex {label.apex}')
    return report


def _tuple_inverse(label: AlphaLabel | ALabel) -> PureSymmetricAuto:
    system = label.system
    psi = PureSymmetricAuto(tuple(g.identity_auto() for g in system.factors), label.conjugators, system)
    return invert(psi)
