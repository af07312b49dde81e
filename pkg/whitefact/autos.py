from __future__ import annotations

import logging
from dataclasses import dataclass, field

from whitefact.exceptions import (
    FactorMismatchException,
    InvalidWhiteheadException,
    MixedSystemException,
    NotAStabilizerException,
    ParseException,
    WhitefactException,
)
from whitefact.factor_groups import (
    FactorAutoPart,
    FactorElement,
    FactorSystem,
    compose_auto_parts,
    conjugate_auto_part,
    fg_apply_auto,
    invert_auto_part,
)
from whitefact.labellings import ALabel, AlphaLabel, act, alpha_equivalent, alpha_witness, double_coset_core
from whitefact.reduction import reduce_to_base
from whitefact.words import Word, identity_word, w_reduce


@dataclass(frozen=True)
class PureSymmetricAuto:
    """
    Automorphism x -> g_k^-1 phi_k(x) g_k on each factor G_k

    Parts are kept canonical: g_k never starts with a G_k syllable, such a syllable b
    is absorbed into phi_k as x -> b^-1 phi_k(x) b. Equal automorphisms therefore have
    equal parts.
    """
    phis: tuple[FactorAutoPart, ...]
    conjugators: tuple[Word, ...]
    system: FactorSystem = field(compare=False, repr=False)

    def __post_init__(self):
        n = self.system.n
        if len(self.phis) != n or len(self.conjugators) != n:
            raise ParseException(f'automorphism needs {n} parts')
        phis = []
        conjugators = []
        for k, (phi, g) in enumerate(zip(self.phis, self.conjugators), start=1):
            if phi.factor != k:
                raise FactorMismatchException(f'part {k} carries an automorphism of factor {phi.factor}')
            if g.system is not self.system and g.system != self.system:
                raise MixedSystemException()
            b, rest = g.strip_leading(k)
            phis.append(conjugate_auto_part(phi, b) if b is not None else phi)
            conjugators.append(rest)
        object.__setattr__(self, 'phis', tuple(phis))
        object.__setattr__(self, 'conjugators', tuple(conjugators))

    def apply(self, w: Word) -> Word:
        if w.system is not self.system and w.system != self.system:
            raise MixedSystemException()
        letters = []
        for s in w:
            g = self.conjugators[s.factor - 1]
            letters.extend(g.inverse())
            letters.append(fg_apply_auto(self.phis[s.factor - 1], s))
            letters.extend(g)
        return w_reduce(letters, self.system)

    __call__ = apply


@dataclass(frozen=True)
class WhiteheadAuto:
    """
    The automorphism (Y, x): conjugate every factor in Y by x, fix the others

    x lies in the operating factor, which is not in Y.
    """
    moved: frozenset[int]
    operating: int
    x: FactorElement

    def __post_init__(self):
        object.__setattr__(self, 'moved', frozenset(self.moved))
        if self.operating in self.moved:
            raise InvalidWhiteheadException(f'operating factor {self.operating} must not be in Y')
        if self.x.factor != self.operating:
            raise InvalidWhiteheadException(f'x lies in factor {self.x.factor}, not in operating factor {self.operating}')

    def apply(self, w: Word) -> Word:
        x = Word((self.x,), w.system) if not self.x.is_identity() else identity_word(w.system)
        letters = []
        for s in w:
            if s.factor in self.moved:
                letters.extend(x.inverse())
                letters.append(s)
                letters.extend(x)
            else:
                letters.append(s)
        return w_reduce(letters, w.system)

    def inverse(self) -> WhiteheadAuto:
        return WhiteheadAuto(self.moved, self.operating, self.x.inverse())

    def is_trivial(self) -> bool:
        return not self.moved or self.x.is_identity()


@dataclass(frozen=True)
class Factorization:
    """
    psi = W_1 o W_2 o ... o W_r o Phi o inner(h), where inner(h)(x) = h^-1 x h
    """
    whitehead: tuple[WhiteheadAuto, ...]
    factor: tuple[FactorAutoPart, ...]
    inner: Word

    def evaluate(self, w: Word) -> Word:
        """
        Apply the factorization piece by piece, innermost first
        """
        system = w.system
        w = self.inner.inverse() * w * self.inner
        w = w_reduce([fg_apply_auto(self.factor[s.factor - 1], s) for s in w], system)
        for whitehead in reversed(self.whitehead):
            w = whitehead.apply(w)
        return w


def identity_auto(system: FactorSystem) -> PureSymmetricAuto:
    return PureSymmetricAuto(tuple(g.identity_auto() for g in system.factors),
                             tuple(identity_word(system) for _ in system.indices()), system)


def inner_auto(h: Word) -> PureSymmetricAuto:
    system = h.system
    return PureSymmetricAuto(tuple(g.identity_auto() for g in system.factors),
                             tuple(h for _ in system.indices()), system)


def factor_auto(system: FactorSystem, parts) -> PureSymmetricAuto:
    return PureSymmetricAuto(tuple(parts), tuple(identity_word(system) for _ in system.indices()), system)


def whitehead_as_auto(whitehead: WhiteheadAuto, system: FactorSystem) -> PureSymmetricAuto:
    x = identity_word(system) if whitehead.x.is_identity() else Word((whitehead.x,), system)
    return PureSymmetricAuto(tuple(g.identity_auto() for g in system.factors),
                             tuple(x if k in whitehead.moved else identity_word(system) for k in system.indices()),
                             system)


def apply(psi: PureSymmetricAuto, w: Word) -> Word:
    return psi.apply(w)


def compose(f: PureSymmetricAuto, g: PureSymmetricAuto) -> PureSymmetricAuto:
    """
    The automorphism w -> f(g(w))

    :param f: applied second
    :param g: applied first
    :return: composed automorphism
    """
    if f.system is not g.system and f.system != g.system:
        raise MixedSystemException()
    return PureSymmetricAuto(tuple(compose_auto_parts(pf, pg) for pf, pg in zip(f.phis, g.phis)),
                             tuple(cf * f.apply(cg) for cf, cg in zip(f.conjugators, g.conjugators)),
                             f.system)


def realize(factorization: Factorization, system: FactorSystem) -> PureSymmetricAuto:
    result = factor_auto(system, factorization.factor)
    result = compose(result, inner_auto(factorization.inner))
    for whitehead in reversed(factorization.whitehead):
        result = compose(whitehead_as_auto(whitehead, system), result)
    return result


def invert(f: PureSymmetricAuto) -> PureSymmetricAuto:
    """
    Inverse automorphism, read off the factorization of f

    :raises NonSplittingInputException: if the parts do not define an automorphism
    """
    system = f.system
    factorization = factorize(f)
    result = inner_auto(factorization.inner.inverse())
    result = compose(result, factor_auto(system, [invert_auto_part(phi) for phi in factorization.factor]))
    for whitehead in reversed(factorization.whitehead):
        result = compose(result, whitehead_as_auto(whitehead.inverse(), system))
    return result


def _agrees(psi: PureSymmetricAuto, image) -> bool:
    system = psi.system
    for group in system.factors:
        for x in group.generators():
            letter = Word((x,), system)
            if psi.apply(letter) != image(letter):
                return False
    return True


def is_inner(psi: PureSymmetricAuto) -> Word | None:
    """
    Find h with psi = conjugation by h

    h must lie in G_1 g_1 and in G_2 g_2, which pins it down to at most one candidate.

    :param psi: pure symmetric automorphism
    :return: h, or None if psi is not inner
    """
    g1, g2 = psi.conjugators[0], psi.conjugators[1]
    p, core, _ = double_coset_core(g1 * g2.inverse(), 1, 2)
    if len(core):
        return None
    h = Word((p.inverse(),), psi.system) * g1 if p is not None else g1
    candidate = inner_auto(h)
    return h if _agrees(psi, candidate.apply) else None


def _inner_witness(whitehead, factor, g: Word) -> Word:
    # h with W_1 o ... o W_r o Phi o inner(h) = inner(g) o W_1 o ... o W_r o Phi
    system = g.system
    for w in whitehead:
        g = w.inverse().apply(g)
    inverse = factor_auto(system, [invert_auto_part(phi) for phi in factor])
    return inverse.apply(g)


def decompose_alpha_stabilizer(psi: PureSymmetricAuto) -> Factorization:
    """
    Split an automorphism fixing the base alpha-class into factor and inner parts

    :raises NotAStabilizerException: if psi moves the base alpha-class
    :return: factorization with an empty Whitehead list
    """
    system = psi.system
    base = AlphaLabel.base(system)
    image = act(base, psi)
    g, slot = alpha_witness(base, image)
    if g is None:
        raise NotAStabilizerException('the base alpha-graph', slot)
    factor = []
    for k, phi in enumerate(psi.phis, start=1):
        a = (image.slot(k) * g.inverse()).factor_element(k)
        factor.append(conjugate_auto_part(phi, a))
    return Factorization((), tuple(factor), _inner_witness((), factor, g))


def decompose_a_stabilizer(psi: PureSymmetricAuto, i: int) -> Factorization:
    """
    Split an automorphism fixing the base A-graph with apex i

    The result uses singleton Whitehead automorphisms with operating factor i only.

    :raises NotAStabilizerException: if psi moves the A-graph
    """
    system = psi.system
    image = act(ALabel.base(system, i), psi)
    apex = image.slot(i)
    factor = []
    whitehead = []
    for k, phi in enumerate(psi.phis, start=1):
        if k == i:
            factor.append(phi)
            continue
        p, core, q = double_coset_core(image.slot(k) * apex.inverse(), k, i)
        if len(core):
            raise NotAStabilizerException(f'the A-graph with apex {i}', k)
        factor.append(conjugate_auto_part(phi, p) if p is not None else phi)
        if q is not None:
            whitehead.append(WhiteheadAuto(frozenset({k}), i, q))
    return Factorization(tuple(whitehead), tuple(factor), _inner_witness(whitehead, factor, apex))


def factorize(psi: PureSymmetricAuto) -> Factorization:
    """
    Write psi as Whitehead automorphisms, a factor automorphism and an inner automorphism

    The conjugator tuple is reduced to the base alpha-class; every move replaces g_j by
    g_j c with c in G_i^{g_i}, which is the Whitehead automorphism ({G_j}, g_i c g_i^-1).

    :param psi: pure symmetric automorphism
    :raises NonSplittingInputException: if the parts do not define an automorphism
    :return: factorization satisfying verify_factorization
    """
    system = psi.system
    base = AlphaLabel.base(system)
    raw = list(psi.conjugators)
    label = AlphaLabel(tuple(raw), system)
    equivalent, g = alpha_equivalent(base, label)
    moves = []
    if not equivalent:
        _, moves = reduce_to_base(label)

    steps = []
    for move in moves:
        g_i = raw[move.i - 1]
        a = (g_i * move.shift * g_i.inverse()).factor_element(move.i)
        if a is None:
            raise WhitefactException(f'move across factor {move.i} does not conjugate into it')
        raw[move.j - 1] = raw[move.j - 1] * move.shift
        steps.append((move.j, move.i, a.inverse()))
    if moves:
        equivalent, g = alpha_equivalent(base, AlphaLabel(tuple(raw), system))
        if not equivalent:
            raise WhitefactException('reduction did not end at the base alpha-class')

    adjust = [conjugate_auto_part(group.identity_auto(), (raw[k - 1] * g.inverse()).factor_element(k))
              for k, group in zip(system.indices(), system.factors)]
    whitehead = tuple(WhiteheadAuto(frozenset({j}), i, fg_apply_auto(adjust[i - 1], x))
                      for j, i, x in reversed(steps))
    factor = tuple(compose_auto_parts(adj, phi) for adj, phi in zip(adjust, psi.phis))
    inner = _inner_witness(whitehead, factor, g)
    logging.info(f'Factorized automorphism into {len(whitehead)} Whitehead automorphisms')
    return Factorization(whitehead, factor, inner)


def verify_factorization(psi: PureSymmetricAuto, f: Factorization) -> bool:
    system = psi.system
    if len(f.factor) != system.n or any(phi.factor != k for k, phi in zip(system.indices(), f.factor)):
        return False
    if f.inner.system is not system and f.inner.system != system:
        return False
    valid = _agrees(psi, f.evaluate)
    if not valid:
        logging.error('Factorization does not agree with the automorphism on the generators')
    return valid
