from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from whitefact.exceptions import MixedSystemException
from whitefact.factor_groups import FactorElement, FactorSystem


@dataclass(frozen=True)
class Word:
    """
    Reduced word s_1 s_2 ... s_m of the free product, read left to right

    Syllables are non-trivial and alternate between factors. The empty word is 1.
    """
    syllables: tuple[FactorElement, ...]
    system: FactorSystem = field(compare=False, repr=False)

    def __mul__(self, other: Word) -> Word:
        return w_mul(self, other)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[FactorElement]:
        return iter(self.syllables)

    def inverse(self) -> Word:
        return w_inv(self)

    @property
    def leading_factor(self) -> int | None:
        return w_leading_factor(self)

    @property
    def trailing_factor(self) -> int | None:
        return self.syllables[-1].factor if self.syllables else None

    def strip_leading(self, i: int) -> tuple[FactorElement | None, Word]:
        """
        Split off a leading G_i syllable

        :param i: factor index
        :return: (the stripped syllable or None, the remaining word)
        """
        if self.syllables and self.syllables[0].factor == i:
            return self.syllables[0], Word(self.syllables[1:], self.system)
        return None, self

    def strip_trailing(self, i: int) -> tuple[Word, FactorElement | None]:
        if self.syllables and self.syllables[-1].factor == i:
            return Word(self.syllables[:-1], self.system), self.syllables[-1]
        return self, None

    def factor_element(self, i: int) -> FactorElement | None:
        """
        The element of G_i this word equals, if it lies in G_i

        :return: the element (possibly the identity), or None if the word is not in G_i
        """
        if not self.syllables:
            return self.system.group(i).identity()
        if len(self.syllables) == 1 and self.syllables[0].factor == i:
            return self.syllables[0]
        return None

    def to_json(self) -> list[list[int]]:
        return [[s.factor, s.payload] for s in self.syllables]

    def __str__(self) -> str:
        if not self.syllables:
            return 'e'
        return '.'.join(f'{s.factor}:{s.payload}' for s in self.syllables)


def identity_word(system: FactorSystem) -> Word:
    return Word((), system)


def letter(system: FactorSystem, i: int, payload: int) -> Word:
    return w_reduce([system.element(i, payload)], system)


def w_reduce(letters: Iterable[FactorElement], system: FactorSystem) -> Word:
    """
    Normal form of a product of factor elements

    :param letters: factor elements, multiplied left to right
    :param system: factor system the letters belong to
    :return: the reduced word
    """
    out: list[FactorElement] = []
    for s in letters:
        if s.is_identity():
            continue
        if out and out[-1].factor == s.factor:
            product = out.pop() * s
            if not product.is_identity():
                out.append(product)
        else:
            out.append(s)
    return Word(tuple(out), system)


def _check_system(u: Word, v: Word):
    if u.system is not v.system and u.system != v.system:
        raise MixedSystemException()


def w_mul(u: Word, v: Word) -> Word:
    _check_system(u, v)
    # only the seam can cancel, so reduce from the end of u onwards
    out = list(u.syllables)
    for s in v.syllables:
        if out and out[-1].factor == s.factor:
            product = out.pop() * s
            if not product.is_identity():
                out.append(product)
        else:
            out.append(s)
    return Word(tuple(out), u.system)


def w_inv(u: Word) -> Word:
    return Word(tuple(s.inverse() for s in reversed(u.syllables)), u.system)


def w_syllables(u: Word) -> int:
    return len(u.syllables)


def w_leading_factor(u: Word) -> int | None:
    return u.syllables[0].factor if u.syllables else None


def w_product(words: Iterable[Word], system: FactorSystem) -> Word:
    result = identity_word(system)
    for w in words:
        result = result * w
    return result


def enumerate_words(system: FactorSystem, max_syllables: int, avoid_leading: int | None = None) -> list[Word]:
    """
    All reduced words of a finite system up to a syllable length

    :param system: finite factor system
    :param max_syllables: longest syllable count produced
    :param avoid_leading: factor index the first syllable must not belong to
    :return: words ordered by syllable count, then factor sequence, then payloads
    """
    result = [identity_word(system)]
    frontier: list[tuple[FactorElement, ...]] = [()]
    for _ in range(max_syllables):
        extended = []
        for prefix in frontier:
            for group in system.factors:
                if prefix and prefix[-1].factor == group.index:
                    continue
                if not prefix and group.index == avoid_leading:
                    continue
                for x in group.nontrivial_elements():
                    extended.append(prefix + (x,))
        result.extend(Word(syllables, system) for syllables in extended)
        frontier = extended
    return result


def count_words(system: FactorSystem, max_syllables: int) -> int:
    """
    Number of reduced words up to a syllable length, summed over alternating factor sequences
    """
    total = 1
    sizes = {g.index: g.order() - 1 for g in system.factors}
    for length in range(1, max_syllables + 1):
        for sequence in itertools.product(system.indices(), repeat=length):
            if any(a == b for a, b in zip(sequence, sequence[1:])):
                continue
            product = 1
            for i in sequence:
                product *= sizes[i]
            total += product
    return total
