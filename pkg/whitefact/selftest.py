"""Seeded acceptance suite: randomized and exhaustive checks of the engine's laws."""
from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass, replace

import networkx as nx

from whitefact.autos import (
    PureSymmetricAuto,
    WhiteheadAuto,
    compose,
    decompose_a_stabilizer,
    decompose_alpha_stabilizer,
    factor_auto,
    factorize,
    inner_auto,
    verify_factorization,
    whitehead_as_auto,
)
from whitefact.bass_serre_tree import bfs_ball, c_vertex, geodesic, u_vertex, v_act
from whitefact.exceptions import NotAStabilizerException
from whitefact.explorer import check_ball, enumerate_ball
from whitefact.factor_groups import FactorElement, FactorGroup, FactorSystem, cyclic_system
from whitefact.labellings import (
    ALabel,
    AlphaLabel,
    a_equivalent,
    alpha_equivalent,
    base_witness_candidates,
    is_base,
    volume,
)
from whitefact.reduction import reduce_step
from whitefact.words import Word, enumerate_words, identity_word


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def __str__(self):
        return f'{"PASS" if self.passed else "FAIL"} {self.name}: {self.detail} ({self.seconds:.1f}s)'


def random_nontrivial(group: FactorGroup, rng: random.Random) -> FactorElement:
    if group.is_finite:
        return rng.choice(group.nontrivial_elements())
    return group.element(rng.choice([-3, -2, -1, 1, 2, 3]))


def random_word(system: FactorSystem, rng: random.Random, max_syllables: int) -> Word:
    letters = []
    previous = None
    for _ in range(rng.randint(0, max_syllables)):
        i = rng.choice([k for k in system.indices() if k != previous])
        letters.append(random_nontrivial(system.group(i), rng))
        previous = i
    return Word(tuple(letters), system)


def random_whitehead(system: FactorSystem, rng: random.Random) -> WhiteheadAuto:
    i = rng.choice(list(system.indices()))
    others = [k for k in system.indices() if k != i]
    moved = frozenset(rng.sample(others, rng.randint(1, len(others))))
    return WhiteheadAuto(moved, i, random_nontrivial(system.group(i), rng))


def random_factor_auto(system: FactorSystem, rng: random.Random) -> PureSymmetricAuto:
    return factor_auto(system, [rng.choice(group.automorphisms()) for group in system.factors])


def random_auto(system: FactorSystem, rng: random.Random, max_syllables: int = 6, steps: int = 8) -> PureSymmetricAuto:
    """
    Random product of Whitehead, factor and inner generators

    Products whose conjugators exceed max_syllables are skipped.
    """
    psi = random_factor_auto(system, rng)
    for _ in range(steps):
        choice = rng.randrange(3)
        if choice == 0:
            generator = whitehead_as_auto(random_whitehead(system, rng), system)
        elif choice == 1:
            generator = random_factor_auto(system, rng)
        else:
            generator = inner_auto(random_word(system, rng, 1))
        candidate = compose(generator, psi)
        if max(len(g) for g in candidate.conjugators) <= max_syllables:
            psi = candidate
    return psi


def _timed(name, check):
    start = time.perf_counter()
    passed, detail = check()
    result = CheckResult(name, passed, detail, time.perf_counter() - start)
    (logging.info if passed else logging.error)(str(result))
    return result


def check_oracle_distances(radius: int = 6) -> tuple[bool, str]:
    pairs = 0
    for system in (cyclic_system(2, 2, 2), cyclic_system(3, 4, 2)):
        ball = bfs_ball(u_vertex(identity_word(system)), radius)
        oracle = dict(nx.all_pairs_shortest_path_length(ball))
        for p, q in itertools.product(ball.nodes, repeat=2):
            path = geodesic(p, q)
            if len(path) - 1 != oracle[p][q]:
                return False, f'geodesic {p.name} -> {q.name} has length {len(path) - 1}, BFS says {oracle[p][q]}'
            pairs += 1
    return True, f'{pairs} vertex pairs agree with BFS'


def check_halfway(rng: random.Random, count: int = 1000) -> tuple[bool, str]:
    system = cyclic_system(3, 4, 2)
    checked = 0
    while checked < count:
        j, k = rng.choice(list(system.indices())), rng.choice(list(system.indices()))
        p = c_vertex(j, random_word(system, rng, 5))
        fixed = c_vertex(k, random_word(system, rng, 5))
        if fixed == p:
            continue
        h = fixed.rep.inverse() * Word((random_nontrivial(system.group(k), rng),), system) * fixed.rep
        path = geodesic(p, v_act(p, h))
        length = len(path) - 1
        if length % 2 or path[length // 2] != fixed:
            return False, f'{fixed.name} is not the midpoint between {p.name} and its translate'
        checked += 1
    return True, f'{checked} instances'


def check_volume_decrease(rng: random.Random, count: int = 1000) -> tuple[bool, str]:
    system = cyclic_system(3, 4, 2)
    origin = identity_word(system)
    checked = 0
    while checked < count:
        label = AlphaLabel(random_auto(system, rng).conjugators, system)
        if volume(label, origin) <= system.n:
            continue
        moved, move = reduce_step(label, origin)
        decrease = move.vol_before - move.vol_after
        if decrease < 2 or decrease % 2:
            return False, f'volume went from {move.vol_before} to {move.vol_after}'
        if not a_equivalent(ALabel(move.i, label.conjugators, system), ALabel(move.i, moved.conjugators, system)):
            return False, f'collapse at apex {move.i} changed across a move'
        checked += 1
    return True, f'{count} steps'


def check_base_characterization(max_syllables: int = 2) -> tuple[bool, str]:
    system = cyclic_system(2, 2, 2)
    base = AlphaLabel.base(system)
    slots = [enumerate_words(system, max_syllables, avoid_leading=j) for j in system.indices()]
    total = 0
    for conjugators in itertools.product(*slots):
        label = AlphaLabel(conjugators, system)
        by_volume = any(volume(label, x) == system.n for x in base_witness_candidates(label))
        equivalent, _ = alpha_equivalent(label, base)
        if not (is_base(label) == by_volume == equivalent):
            return False, f'discrepancy at {[g.to_json() for g in conjugators]}'
        total += 1
    return True, f'{total} tuples'


def check_round_trip(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    systems = (cyclic_system(2, 2, 2), cyclic_system(3, 4, 2, 2))
    for k in range(count):
        system = systems[k % 2]
        psi = random_auto(system, rng)
        factorization = factorize(psi)
        if not verify_factorization(psi, factorization):
            return False, f'factorization {k} does not verify'
        bound = (volume(AlphaLabel(psi.conjugators, system)) - system.n) // 2
        if len(factorization.whitehead) > bound:
            return False, f'factorization {k} uses {len(factorization.whitehead)} Whitehead automorphisms, bound {bound}'
    return True, f'{count} automorphisms'


def check_connectivity(bound: int = 9) -> tuple[bool, str]:
    report = check_ball(enumerate_ball(cyclic_system(2, 2, 2), bound))
    if not report.ok:
        return False, '; '.join(report.failures[:3])
    return True, f'{report.alpha_count} alpha-classes, {report.a_count} A-classes, all reach the base'


def _succeeds(decompose, *args) -> bool:
    try:
        decompose(*args)
    except NotAStabilizerException:
        return False
    return True


def check_stabilizers(rng: random.Random) -> tuple[bool, str]:
    system = cyclic_system(2, 2, 2)
    factor_autos = [factor_auto(system, parts)
                    for parts in itertools.product(*(group.automorphisms() for group in system.factors))]
    whiteheads = [WhiteheadAuto(frozenset({j}), i, x)
                  for i in system.indices() for j in system.indices() if j != i
                  for x in system.group(i).nontrivial_elements()]
    checked = 0
    for apex in system.indices():
        for phi in factor_autos:
            if not _succeeds(decompose_a_stabilizer, phi, apex):
                return False, f'factor automorphism rejected at apex {apex}'
            checked += 1
        for whitehead in whiteheads:
            expected = whitehead.operating == apex
            if _succeeds(decompose_a_stabilizer, whitehead_as_auto(whitehead, system), apex) != expected:
                return False, f'Whitehead ({sorted(whitehead.moved)}, {whitehead.operating}) misclassified at apex {apex}'
            checked += 1
    for phi in factor_autos:
        for _ in range(5):
            psi = compose(phi, inner_auto(random_word(system, rng, 4)))
            if not _succeeds(decompose_alpha_stabilizer, psi):
                return False, 'factor automorphism composed with an inner one rejected'
            checked += 1
    for whitehead in whiteheads:
        if _succeeds(decompose_alpha_stabilizer, whitehead_as_auto(whitehead, system)):
            return False, f'Whitehead ({sorted(whitehead.moved)}, {whitehead.operating}) fixes the base alpha-class'
        checked += 1
    return True, f'{checked} classifications'


def check_mutation(rng: random.Random, count: int = 50) -> tuple[bool, str]:
    system = cyclic_system(3, 4, 2)
    mutants = 0
    produced = 0
    while produced < count:
        psi = random_auto(system, rng)
        factorization = factorize(psi)
        if not factorization.whitehead:
            continue
        produced += 1
        for position, whitehead in enumerate(factorization.whitehead):
            deleted = factorization.whitehead[:position] + factorization.whitehead[position + 1:]
            variants = [deleted]
            for x in system.group(whitehead.operating).elements():
                if x != whitehead.x:
                    changed = replace(whitehead, x=x)
                    variants.append(deleted[:position] + (changed,) + deleted[position:])
            for variant in variants:
                if verify_factorization(psi, replace(factorization, whitehead=variant)):
                    return False, f'mutated factorization at position {position} still verifies'
                mutants += 1
    return True, f'{mutants} mutants rejected'


def run_selftest(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    return [
        _timed('oracle distances', check_oracle_distances),
        _timed('halfway point', lambda: check_halfway(rng)),
        _timed('volume decrease', lambda: check_volume_decrease(rng)),
        _timed('base characterization', check_base_characterization),
        _timed('factorization round trip', lambda: check_round_trip(rng)),
        _timed('connectivity', check_connectivity),
        _timed('stabilizers', lambda: check_stabilizers(rng)),
        _timed('mutation sensitivity', lambda: check_mutation(rng)),
    ]
