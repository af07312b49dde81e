from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

from whitefact.exceptions import InvalidRadiusException, OracleRequiresFiniteFactorsException
from whitefact.words import Word, identity_word


@dataclass(frozen=True)
class TreeVertex:
    """
    Vertex of the universal cover of the base labelling

    factor is None for a U-vertex U.rep, and i for the C-vertex G_i.rep.
    C-vertex representatives never start with a G_i syllable.
    """
    factor: int | None
    rep: Word

    @property
    def is_u(self) -> bool:
        return self.factor is None

    @property
    def name(self) -> str:
        word = json.dumps(self.rep.to_json(), separators=(',', ':'))
        return f'U:{word}' if self.is_u else f'C{self.factor}:{word}'

    def sort_key(self) -> tuple:
        return (0 if self.is_u else 1, self.factor or 0, len(self.rep),
                tuple((s.factor, s.payload) for s in self.rep))

    def __str__(self) -> str:
        return self.name


def v_canon(factor: int | None, rep: Word) -> TreeVertex:
    """
    Canonical vertex naming a coset

    :param factor: None for U-vertices, otherwise the factor index of the C-vertex
    :param rep: any representative of the coset
    :return: the canonical vertex
    """
    if factor is not None:
        _, rep = rep.strip_leading(factor)
    return TreeVertex(factor, rep)


def u_vertex(rep: Word) -> TreeVertex:
    return TreeVertex(None, rep)


def c_vertex(i: int, rep: Word) -> TreeVertex:
    return v_canon(i, rep)


def v_act(v: TreeVertex, g: Word) -> TreeVertex:
    return v_canon(v.factor, v.rep * g)


def neighbours(v: TreeVertex) -> list[TreeVertex]:
    """
    Adjacent vertices: U.g meets every G_j.g, and G_i.g meets U.hg for h in G_i
    """
    system = v.rep.system
    if v.is_u:
        return [c_vertex(j, v.rep) for j in system.indices()]
    return [u_vertex(Word((h,), system) * v.rep) if not h.is_identity() else u_vertex(v.rep)
            for h in system.group(v.factor).elements()]


def _root_path(v: TreeVertex) -> list[TreeVertex]:
    # path from U(e) built from the syllables of v.rep, last syllable first
    system = v.rep.system
    syllables = v.rep.syllables
    path = [u_vertex(identity_word(system))]
    for k in range(len(syllables) - 1, -1, -1):
        path.append(TreeVertex(syllables[k].factor, Word(syllables[k + 1:], system)))
        path.append(TreeVertex(None, Word(syllables[k:], system)))
    if not v.is_u:
        path.append(v)
    return path


def geodesic(p: TreeVertex, q: TreeVertex) -> list[TreeVertex]:
    """
    The unique tree path from p to q

    Both endpoints are translated so that p is based at the identity, the two paths
    from U(e) are read off the normal forms, and the common prefix is cut.

    :param p: start vertex
    :param q: end vertex
    :return: vertices from p to q inclusive
    """
    shift = p.rep.inverse()
    p_path = _root_path(v_act(p, shift))
    q_path = _root_path(v_act(q, shift))
    common = 0
    while common < min(len(p_path), len(q_path)) and p_path[common] == q_path[common]:
        common += 1
    path = p_path[common - 1:][::-1] + q_path[common:]
    return [v_act(v, p.rep) for v in path]


def distance(p: TreeVertex, q: TreeVertex) -> int:
    if not p.is_u and q.is_u:
        p, q = q, p
    if p.is_u:
        connecting = q.rep * p.rep.inverse()
        if q.is_u:
            return 2 * len(connecting)
        _, core = connecting.strip_leading(q.factor)
        return 2 * len(core) + 1
    return len(geodesic(p, q)) - 1


def lies_between(x: TreeVertex, p: TreeVertex, q: TreeVertex) -> bool:
    return x in geodesic(p, q)


def bfs_ball(center: TreeVertex, radius: int) -> nx.Graph:
    """
    Metric ball of the tree by breadth-first search

    :param center: centre vertex
    :param radius: ball radius
    :raises InvalidRadiusException: if radius is negative
    :raises OracleRequiresFiniteFactorsException: if a factor is infinite
    :return: graph whose nodes are vertices carrying their distance from the centre
    """
    if radius < 0:
        raise InvalidRadiusException(radius)
    if not center.rep.system.is_finite():
        raise OracleRequiresFiniteFactorsException()
    ball = nx.Graph()
    ball.add_node(center, distance=0)
    queue = deque([center])
    while queue:
        v = queue.popleft()
        d = ball.nodes[v]['distance']
        if d == radius:
            continue
        for w in neighbours(v):
            if w not in ball:
                ball.add_node(w, distance=d + 1)
                queue.append(w)
            ball.add_edge(v, w)
    logging.info(f'BFS ball of radius {radius} around {center.name}: {ball.number_of_nodes()} vertices')
    return ball


def sorted_vertices(vertices) -> list[TreeVertex]:
    return sorted(vertices, key=TreeVertex.sort_key)
