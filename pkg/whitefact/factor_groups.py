from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import ClassVar

from whitefact.exceptions import FactorMismatchException, InvalidElementException


@dataclass(frozen=True)
class FactorElement:
    """
    Element of a single factor group G_i

    The group reference is carried for arithmetic only; identity is (factor, payload).
    """
    factor: int
    payload: int
    group: FactorGroup = field(compare=False, repr=False)

    def __mul__(self, other: FactorElement) -> FactorElement:
        return fg_mul(self, other)

    def inverse(self) -> FactorElement:
        return self.group.invert(self)

    def is_identity(self) -> bool:
        return self.group.is_identity(self)


@dataclass(frozen=True)
class FactorAutoPart:
    """
    Automorphism of one factor group

    value is a unit multiplier (cyclic), a permutation of table indices (table) or a sign (infinite cyclic).
    """
    factor: int
    kind: str
    value: int | tuple[int, ...]
    group: FactorGroup = field(compare=False, repr=False)

    def __call__(self, x: FactorElement) -> FactorElement:
        return fg_apply_auto(self, x)


@dataclass(frozen=True)
class FactorGroup:
    index: int

    kind: ClassVar[str] = ''
    is_finite: ClassVar[bool] = True
    auto_kind: ClassVar[str] = ''

    def _check(self, payload: int) -> bool:
        raise NotImplementedError

    def _mul(self, p: int, q: int) -> int:
        raise NotImplementedError

    def _inv(self, p: int) -> int:
        raise NotImplementedError

    def _identity_payload(self) -> int:
        raise NotImplementedError

    def _payloads(self) -> list[int]:
        raise NotImplementedError

    def element(self, payload: int) -> FactorElement:
        if isinstance(payload, bool) or not isinstance(payload, int) or not self._check(payload):
            raise InvalidElementException(f'payload {payload!r} is not an element of factor {self.index}')
        return FactorElement(self.index, payload, self)

    def identity(self) -> FactorElement:
        return FactorElement(self.index, self._identity_payload(), self)

    def is_identity(self, x: FactorElement) -> bool:
        return x.payload == self._identity_payload()

    def multiply(self, a: FactorElement, b: FactorElement) -> FactorElement:
        return FactorElement(self.index, self._mul(a.payload, b.payload), self)

    def invert(self, a: FactorElement) -> FactorElement:
        return FactorElement(self.index, self._inv(a.payload), self)

    def elements(self) -> list[FactorElement]:
        return [FactorElement(self.index, p, self) for p in self._payloads()]

    def nontrivial_elements(self) -> list[FactorElement]:
        return [x for x in self.elements() if not self.is_identity(x)]

    def generators(self) -> list[FactorElement]:
        """
        Elements on which automorphism agreement is tested

        :return: all elements for finite factors
        """
        return self.elements()

    def order(self) -> int | None:
        return len(self._payloads()) if self.is_finite else None

    def identity_auto(self) -> FactorAutoPart:
        raise NotImplementedError

    def automorphisms(self) -> list[FactorAutoPart]:
        raise NotImplementedError

    def validate(self) -> str | None:
        return None

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class CyclicGroup(FactorGroup):
    modulus: int = 2

    kind: ClassVar[str] = 'cyclic'
    auto_kind: ClassVar[str] = 'mult'

    def _check(self, payload):
        return 0 <= payload < self.modulus

    def _mul(self, p, q):
        return (p + q) % self.modulus

    def _inv(self, p):
        return (-p) % self.modulus

    def _identity_payload(self):
        return 0

    def _payloads(self):
        return list(range(self.modulus))

    def identity_auto(self):
        return FactorAutoPart(self.index, 'mult', 1, self)

    def automorphisms(self):
        return [FactorAutoPart(self.index, 'mult', k, self)
                for k in range(1, self.modulus) if math.gcd(k, self.modulus) == 1] or [self.identity_auto()]

    def validate(self):
        if self.modulus < 2:
            return f'cyclic order must be at least 2, got {self.modulus}'
        return None

    def describe(self):
        return {'kind': 'cyclic', 'order': self.modulus}


@dataclass(frozen=True)
class TableGroup(FactorGroup):
    labels: tuple[str, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()
    identity_index: int = 0
    inverses: tuple[int, ...] = ()

    kind: ClassVar[str] = 'table'
    auto_kind: ClassVar[str] = 'perm'

    def _check(self, payload):
        return 0 <= payload < len(self.labels)

    def _mul(self, p, q):
        return self.table[p][q]

    def _inv(self, p):
        return self.inverses[p]

    def _identity_payload(self):
        return self.identity_index

    def _payloads(self):
        return list(range(len(self.labels)))

    def identity_auto(self):
        return FactorAutoPart(self.index, 'perm', tuple(self._payloads()), self)

    def automorphisms(self):
        # brute force over bijections fixing the identity
        size = len(self.labels)
        e = self.identity_index
        others = [x for x in range(size) if x != e]
        result = []
        for images in itertools.permutations(others):
            mapping = [e] * size
            for x, y in zip(others, images):
                mapping[x] = y
            if all(mapping[self.table[x][y]] == self.table[mapping[x]][mapping[y]]
                   for x in range(size) for y in range(size)):
                result.append(FactorAutoPart(self.index, 'perm', tuple(mapping), self))
        return result

    def validate(self):
        size = len(self.labels)
        if size < 1 or len(self.table) != size or any(len(row) != size for row in self.table):
            return 'Cayley table shape does not match the element count'
        if any(not (0 <= entry < size) for row in self.table for entry in row):
            return 'Cayley table entry out of range'
        e = self.identity_index
        if not (0 <= e < size):
            return 'identity index out of range'
        if any(self.table[e][x] != x or self.table[x][e] != x for x in range(size)):
            return 'identity row/column is not the identity map'
        everything = set(range(size))
        if any(set(row) != everything for row in self.table) or \
                any({self.table[x][y] for x in range(size)} != everything for y in range(size)):
            return 'not a Latin square'
        if len(self.inverses) != size or any(
                not (0 <= self.inverses[x] < size) or self.inverses[self.inverses[x]] != x
                or self.table[x][self.inverses[x]] != e for x in range(size)):
            return 'inverse table inconsistent'
        for x, y, z in itertools.product(range(size), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                return f'not associative at ({self.labels[x]}, {self.labels[y]}, {self.labels[z]})'
        return None

    def describe(self):
        return {'kind': 'table', 'elements': list(self.labels), 'table': [list(row) for row in self.table],
                'identity': self.identity_index, 'inverse': list(self.inverses)}


@dataclass(frozen=True)
class InfiniteCyclicGroup(FactorGroup):
    kind: ClassVar[str] = 'int'
    is_finite: ClassVar[bool] = False
    auto_kind: ClassVar[str] = 'sign'

    def _check(self, payload):
        return True

    def _mul(self, p, q):
        return p + q

    def _inv(self, p):
        return -p

    def _identity_payload(self):
        return 0

    def elements(self):
        raise InvalidElementException(f'factor {self.index} is infinite and cannot be enumerated')

    def generators(self):
        return [FactorElement(self.index, 1, self)]

    def identity_auto(self):
        return FactorAutoPart(self.index, 'sign', 1, self)

    def automorphisms(self):
        return [FactorAutoPart(self.index, 'sign', 1, self), FactorAutoPart(self.index, 'sign', -1, self)]

    def describe(self):
        return {'kind': 'int'}


def derive_inverses(table: tuple[tuple[int, ...], ...], identity_index: int) -> tuple[int, ...]:
    """
    Read the inverse table off a Cayley table

    Entries without an inverse are mapped to -1 and rejected later by validation.
    """
    inverses = []
    for row in table:
        inverses.append(next((y for y, entry in enumerate(row) if entry == identity_index), -1))
    return tuple(inverses)


@dataclass(frozen=True)
class FactorSystem:
    """
    The ordered factor tuple (G_1, ..., G_n)
    """
    factors: tuple[FactorGroup, ...]

    @property
    def n(self) -> int:
        return len(self.factors)

    def group(self, i: int) -> FactorGroup:
        if not 1 <= i <= self.n:
            raise InvalidElementException(f'factor index {i} outside 1..{self.n}')
        return self.factors[i - 1]

    def element(self, i: int, payload: int) -> FactorElement:
        return self.group(i).element(payload)

    def indices(self) -> range:
        return range(1, self.n + 1)

    def is_finite(self) -> bool:
        return all(g.is_finite for g in self.factors)

    def describe(self) -> dict:
        return {'factors': [g.describe() for g in self.factors]}


def fg_mul(a: FactorElement, b: FactorElement) -> FactorElement:
    if a.factor != b.factor:
        raise FactorMismatchException('cross-factor product')
    return a.group.multiply(a, b)


def fg_apply_auto(phi: FactorAutoPart, x: FactorElement) -> FactorElement:
    if phi.factor != x.factor:
        raise FactorMismatchException(f'automorphism of factor {phi.factor} applied to factor {x.factor}')
    if phi.kind == 'mult':
        return FactorElement(x.factor, (phi.value * x.payload) % phi.group.modulus, x.group)
    if phi.kind == 'sign':
        return FactorElement(x.factor, phi.value * x.payload, x.group)
    return FactorElement(x.factor, phi.value[x.payload], x.group)


def fg_validate(g: FactorGroup) -> str | None:
    """
    Check the group axioms of a factor backend

    :param g: factor group
    :return: None, if all axioms hold, otherwise the first violated axiom
    """
    return g.validate()


def validate_auto(phi: FactorAutoPart) -> str | None:
    group = phi.group
    if phi.kind != group.auto_kind:
        return f'{phi.kind} is not an automorphism kind of a {group.kind} factor'
    if phi.kind == 'sign':
        return None if phi.value in (1, -1) else 'only signs +1 and -1 are automorphisms of Z'
    if phi.kind == 'mult':
        if math.gcd(phi.value, group.modulus) != 1:
            return f'multiplier {phi.value} is not a unit mod {group.modulus}'
        return None
    size = len(group.labels)
    if sorted(phi.value) != list(range(size)):
        return 'permutation is not a bijection of the table indices'
    for x in range(size):
        for y in range(size):
            if phi.value[group.table[x][y]] != group.table[phi.value[x]][phi.value[y]]:
                return f'homomorphism law fails at ({group.labels[x]}, {group.labels[y]})'
    return None


def compose_auto_parts(f: FactorAutoPart, g: FactorAutoPart) -> FactorAutoPart:
    """
    Composition f after g of two automorphisms of the same factor
    """
    if f.factor != g.factor:
        raise FactorMismatchException(f'cannot compose automorphisms of factors {f.factor} and {g.factor}')
    if f.kind == 'mult':
        return FactorAutoPart(f.factor, 'mult', (f.value * g.value) % f.group.modulus, f.group)
    if f.kind == 'sign':
        return FactorAutoPart(f.factor, 'sign', f.value * g.value, f.group)
    return FactorAutoPart(f.factor, 'perm', tuple(f.value[y] for y in g.value), f.group)


def invert_auto_part(phi: FactorAutoPart) -> FactorAutoPart:
    if phi.kind == 'mult':
        return FactorAutoPart(phi.factor, 'mult', pow(phi.value, -1, phi.group.modulus), phi.group)
    if phi.kind == 'sign':
        return phi
    inverse = [0] * len(phi.value)
    for x, y in enumerate(phi.value):
        inverse[y] = x
    return FactorAutoPart(phi.factor, 'perm', tuple(inverse), phi.group)


def conjugate_auto_part(phi: FactorAutoPart, b: FactorElement) -> FactorAutoPart:
    """
    The automorphism x -> b^-1 phi(x) b

    :param phi: automorphism of the factor of b
    :param b: element of the same factor
    :return: new automorphism part
    """
    if phi.factor != b.factor:
        raise FactorMismatchException('cross-factor product')
    if phi.kind != 'perm' or b.is_identity():
        # cyclic factors are abelian
        return phi
    group = phi.group
    b_inv = group._inv(b.payload)
    return FactorAutoPart(phi.factor, 'perm',
                          tuple(group._mul(group._mul(b_inv, y), b.payload) for y in phi.value), group)


def is_identity_auto(phi: FactorAutoPart) -> bool:
    return phi == phi.group.identity_auto()


def cyclic_system(*orders: int) -> FactorSystem:
    """
    Free product of cyclic groups, 0 standing for the infinite cyclic group
    """
    return FactorSystem(tuple(CyclicGroup(index, order) if order else InfiniteCyclicGroup(index)
                              for index, order in enumerate(orders, start=1)))
