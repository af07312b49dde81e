"""JSON codecs for the engine's values, and DOT export of balls."""
from __future__ import annotations

import json
import re

import networkx as nx

from whitefact.autos import Factorization, PureSymmetricAuto, WhiteheadAuto
from whitefact.bass_serre_tree import TreeVertex, sorted_vertices, u_vertex, v_canon
from whitefact.exceptions import ParseException, WhitefactException
from whitefact.explorer import SnBall
from whitefact.factor_groups import FactorAutoPart, FactorSystem, validate_auto
from whitefact.labellings import ALabel, AlphaLabel
from whitefact.reduction import MoveRecord
from whitefact.words import Word, w_reduce

vertex_name = re.compile(r'^(U|C(\d+)):(.*)$')


def compact(data) -> str:
    return json.dumps(data, separators=(',', ':'))


def word_from_json(system: FactorSystem, data) -> Word:
    if not isinstance(data, list) or any(not isinstance(pair, list) or len(pair) != 2
                                         or not all(isinstance(v, int) for v in pair) for pair in data):
        raise ParseException('word must be a list of [factor, payload] pairs')
    try:
        return w_reduce([system.element(factor, payload) for factor, payload in data], system)
    except WhitefactException as e:
        raise ParseException(e.message)


def vertex_from_name(system: FactorSystem, name: str) -> TreeVertex:
    match = vertex_name.match(name.strip())
    if match is None:
        raise ParseException(f'vertex name {name!r} must look like U:<word> or C<i>:<word>')
    try:
        word = word_from_json(system, json.loads(match.group(3)))
    except json.JSONDecodeError:
        raise ParseException(f'vertex name {name!r} does not carry a JSON word')
    if match.group(2) is None:
        return u_vertex(word)
    factor = int(match.group(2))
    if not 1 <= factor <= system.n:
        raise ParseException(f'factor index {factor} outside 1..{system.n}')
    return v_canon(factor, word)


def alpha_from_json(system: FactorSystem, data) -> AlphaLabel:
    if not isinstance(data, dict) or 'alpha' not in data:
        raise ParseException('alpha labelling must look like {"alpha": [word, ...]}')
    slots = data['alpha']
    if not isinstance(slots, list) or len(slots) != system.n:
        raise ParseException(f'alpha labelling needs {system.n} slots')
    return AlphaLabel(tuple(word_from_json(system, slot) for slot in slots), system)


def alpha_to_json(label: AlphaLabel) -> dict:
    return {'alpha': [g.to_json() for g in label.conjugators]}


def a_label_from_json(system: FactorSystem, data) -> ALabel:
    try:
        body = data['A']
        slots = body['tuple']
        apex = body['apex']
    except (KeyError, TypeError):
        raise ParseException('A labelling must look like {"A": {"apex": i, "tuple": [word, ...]}}')
    if not isinstance(slots, list) or len(slots) != system.n:
        raise ParseException(f'A labelling needs {system.n} slots')
    return ALabel(apex, tuple(word_from_json(system, slot) for slot in slots), system)


def a_label_to_json(label: ALabel) -> dict:
    return {'A': {'apex': label.apex, 'tuple': [g.to_json() for g in label.conjugators]}}


def auto_part_from_json(system: FactorSystem, k: int, data) -> FactorAutoPart:
    group = system.group(k)
    if data is None:
        return group.identity_auto()
    kind = data.get('kind') if isinstance(data, dict) else None
    if kind != group.auto_kind:
        raise ParseException(f'factor {k} expects a {group.auto_kind} automorphism, got {kind!r}')
    if kind == 'perm':
        mapping = data.get('map')
        if not isinstance(mapping, list) or any(isinstance(y, bool) or not isinstance(y, int) for y in mapping):
            raise ParseException(f'automorphism of factor {k} needs a list of table indices as "map"')
        value = tuple(mapping)
    else:
        value = data.get('value')
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseException(f'automorphism of factor {k} needs an integer value')
    if kind == 'mult':
        value %= group.modulus
    part = FactorAutoPart(k, kind, value, group)
    violation = validate_auto(part)
    if violation is not None:
        raise ParseException(violation)
    return part


def auto_part_to_json(part: FactorAutoPart) -> dict:
    if part.kind == 'perm':
        return {'kind': 'perm', 'map': list(part.value)}
    return {'kind': part.kind, 'value': part.value}


def auto_from_json(system: FactorSystem, data) -> PureSymmetricAuto:
    parts = data.get('parts') if isinstance(data, dict) else None
    if not isinstance(parts, list) or len(parts) != system.n:
        raise ParseException(f'automorphism must look like {{"parts": [...]}} with {system.n} parts')
    phis = []
    conjugators = []
    for k, part in enumerate(parts, start=1):
        if not isinstance(part, dict):
            raise ParseException(f'part {k} must be an object')
        phis.append(auto_part_from_json(system, k, part.get('phi')))
        conjugators.append(word_from_json(system, part.get('g', [])))
    return PureSymmetricAuto(tuple(phis), tuple(conjugators), system)


def auto_to_json(psi: PureSymmetricAuto) -> dict:
    return {'parts': [{'phi': auto_part_to_json(phi), 'g': g.to_json()}
                      for phi, g in zip(psi.phis, psi.conjugators)]}


def whitehead_from_json(system: FactorSystem, data) -> WhiteheadAuto:
    try:
        factor, payload = data['x']
        return WhiteheadAuto(frozenset(data['Y']), data['operating'], system.element(factor, payload))
    except (KeyError, TypeError, ValueError):
        raise ParseException('Whitehead automorphism must look like {"Y": [...], "operating": i, "x": [i, payload]}')
    except WhitefactException as e:
        raise ParseException(e.message)


def whitehead_to_json(whitehead: WhiteheadAuto) -> dict:
    return {'Y': sorted(whitehead.moved), 'operating': whitehead.operating,
            'x': [whitehead.x.factor, whitehead.x.payload]}


def factorization_from_json(system: FactorSystem, data) -> Factorization:
    if not isinstance(data, dict) or not {'whitehead', 'factor', 'inner'} <= set(data):
        raise ParseException('factorization must carry "whitehead", "factor" and "inner"')
    factor = data['factor']
    if not isinstance(factor, list) or len(factor) != system.n:
        raise ParseException(f'factorization needs {system.n} factor parts')
    return Factorization(tuple(whitehead_from_json(system, w) for w in data['whitehead']),
                         tuple(auto_part_from_json(system, k, phi) for k, phi in enumerate(factor, start=1)),
                         word_from_json(system, data['inner']))


def factorization_to_json(f: Factorization) -> dict:
    return {'whitehead': [whitehead_to_json(w) for w in f.whitehead],
            'factor': [auto_part_to_json(phi) for phi in f.factor],
            'inner': f.inner.to_json()}


def moves_to_json(moves: list[MoveRecord]) -> list[dict]:
    return [move.to_json() for move in moves]


def tree_ball_to_json(ball: nx.Graph) -> dict:
    vertices = sorted_vertices(ball.nodes)
    return {'vertices': [v.name for v in vertices],
            'adjacency': {v.name: [w.name for w in sorted_vertices(ball.neighbors(v))] for v in vertices}}


def tree_ball_to_dot(ball: nx.Graph) -> str:
    lines = ['graph tree {']
    vertices = sorted_vertices(ball.nodes)
    index = {v: k for k, v in enumerate(vertices)}
    for v in vertices:
        shape = 'circle' if v.is_u else 'box'
        lines.append(f'  v{index[v]} [label="{v.name.replace(chr(34), "")}", shape={shape}];')
    for v in vertices:
        for w in sorted_vertices(ball.neighbors(v)):
            if index[v] < index[w]:
                lines.append(f'  v{index[v]} -- v{index[w]};')
    lines.append('}')
    return '\n'.join(lines)


def sn_ball_to_json(ball: SnBall) -> dict:
    return {'bound': ball.bound,
            'alpha_classes': [alpha_to_json(label) for label in ball.alpha_classes],
            'a_classes': [a_label_to_json(label) for label in ball.a_classes],
            'edges': [list(edge) for edge in ball.edges]}


def sn_ball_to_dot(ball: SnBall) -> str:
    lines = ['graph sn {']
    for k, label in enumerate(ball.alpha_classes):
        lines.append(f'  alpha{k} [label="{compact([g.to_json() for g in label.conjugators])}", shape=circle];')
    for k, label in enumerate(ball.a_classes):
        lines.append(f'  A{k} [label="A{label.apex} {compact([g.to_json() for g in label.conjugators])}", shape=box];')
    for a, b in ball.edges:
        lines.append(f'  alpha{a} -- A{b};')
    lines.append('}')
    return '\n'.join(lines)
