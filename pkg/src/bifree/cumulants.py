"""Moment <-> cumulant transforms over the bi-non-crossing lattice.

Everything here is duck-typed over moment oracles: a "phi" is any callable
Word -> Fraction with phi(()) == 1, and a pure distribution is any object
with .cumulant / .conditional_cumulant methods (see distributions.py).
"""
from __future__ import annotations

from fractions import Fraction

from .bnc import (
    BncPartition,
    classify_blocks,
    enumerate_bnc,
    enumerate_bnc_leq_eps,
    mobius_to_full,
)
from .errors import SizeError
from .words import chi_of, eps_of, subword


def phi_pi(d, p: BncPartition, w) -> Fraction:
    """Product over the blocks of p of phi applied to the block subwords."""
    if len(w) != p.n or chi_of(w) != p.chi:
        raise SizeError("word does not match the partition's chi")
    prod = Fraction(1)
    for b in p.partition.blocks:
        prod *= d.phi(subword(w, b))
        if prod == 0:
            break
    return prod


def kappa_from_phi(phi, w, memo=None) -> Fraction:
    """Bi-free cumulant of w by the subtraction recursion.

    kappa(w) = phi(w) - sum over non-full pi in BNC(chi) of the product of
    block cumulants.
    """
    if len(w) == 0:
        raise ValueError("cumulants are defined for words of length >= 1")
    if memo is None:
        memo = {}

    def k(word):
        if word in memo:
            return memo[word]
        if len(word) == 1:
            val = phi(word)
        else:
            val = phi(word)
            for bp in enumerate_bnc(chi_of(word)):
                if len(bp.partition) == 1:
                    continue
                prod = Fraction(1)
                for b in bp.partition.blocks:
                    prod *= k(subword(word, b))
                    if prod == 0:
                        break
                val -= prod
        memo[word] = val
        return val

    return k(w)


def kappa(d, w) -> Fraction:
    """Bi-free cumulant of w under the joint distribution d (memoized on d)."""
    memo = getattr(d, "_kappa_memo", None)
    if memo is None:
        memo = {}
        setattr(d, "_kappa_memo", memo)
    return kappa_from_phi(d.phi, w, memo)


def kappa_via_mobius(d, w) -> Fraction:
    """Same value as kappa, via Mobius inversion: sum_pi mu(pi, full) phi_pi."""
    if len(w) == 0:
        raise ValueError("cumulants are defined for words of length >= 1")
    chi = chi_of(w)
    mu = mobius_to_full(chi)
    total = Fraction(0)
    for bp in enumerate_bnc(chi):
        m = mu[bp.partition.blocks]
        prod = Fraction(m)
        for b in bp.partition.blocks:
            if prod == 0:
                break
            prod *= d.phi(subword(w, b))
        total += prod
    return total


def moments_from_cumulants(kc, w) -> Fraction:
    """phi(w) = sum over pi in BNC(chi) of products of block cumulants."""
    if len(w) == 0:
        return Fraction(1)
    total = Fraction(0)
    for bp in enumerate_bnc(chi_of(w)):
        prod = Fraction(1)
        for b in bp.partition.blocks:
            prod *= kc(subword(w, b))
            if prod == 0:
                break
        total += prod
    return total


def bifree_product_moment(pures, w) -> Fraction:
    """Mixed moment of the bi-free product of the given pure distributions.

    Sum over bi-non-crossing partitions with eps-monochromatic blocks of the
    products of blockwise pure cumulants.
    """
    if len(w) == 0:
        return Fraction(1)
    for letter in w:
        if letter.pair not in pures:
            raise KeyError(f"no pure distribution for pair {letter.pair!r}")
    chi, eps = chi_of(w), eps_of(w)
    total = Fraction(0)
    for part in enumerate_bnc_leq_eps(chi, eps):
        prod = Fraction(1)
        for b in part.blocks:
            sub = subword(w, b)
            prod *= pures[sub[0].pair].cumulant(sub)
            if prod == 0:
                break
        total += prod
    return total


def _conditional_term(partition, chi, w, kappa_fn, ckappa_fn) -> Fraction:
    labels = classify_blocks(BncPartition(partition, chi))
    prod = Fraction(1)
    for b in partition.blocks:
        sub = subword(w, b)
        fn = kappa_fn if labels[b] == "inner" else ckappa_fn
        prod *= fn(sub)
        if prod == 0:
            break
    return prod


def conditional_kappa_from(theta, kappa_fn, w, memo=None) -> Fraction:
    """Conditional cumulant by the subtraction recursion.

    theta(w) = sum over pi of (product of kappa over inner blocks) times
    (product of conditional cumulants over outer blocks); invert for the
    full partition's term.
    """
    if len(w) == 0:
        raise ValueError("conditional cumulants are defined for length >= 1")
    if memo is None:
        memo = {}

    def ck(word):
        if word in memo:
            return memo[word]
        val = theta(word)
        if len(word) > 1:
            chi = chi_of(word)
            for bp in enumerate_bnc(chi):
                if len(bp.partition) == 1:
                    continue
                val -= _conditional_term(bp.partition, chi, word, kappa_fn, ck)
        memo[word] = val
        return val

    return ck(w)


def conditional_kappa(d, w) -> Fraction:
    """Mixed conditional cumulant of w under a joint distribution with a theta layer."""
    from .errors import ModeError

    theta = getattr(d, "theta", None)
    if theta is None:
        raise ModeError("distribution has no theta layer")
    memo = getattr(d, "_ckappa_memo", None)
    if memo is None:
        memo = {}
        setattr(d, "_ckappa_memo", memo)

    def kap(word):
        return kappa(d, word)

    return conditional_kappa_from(theta, kap, w, memo)


def conditional_product_theta(pures, w) -> Fraction:
    """Mixed theta-moment of the conditionally bi-free product.

    Sum over eps-monochromatic bi-non-crossing partitions with blockwise pure
    kappa on inner blocks and pure conditional cumulants on outer blocks.
    """
    if len(w) == 0:
        return Fraction(1)
    chi, eps = chi_of(w), eps_of(w)
    total = Fraction(0)
    for part in enumerate_bnc_leq_eps(chi, eps):
        total += _conditional_term(
            part,
            chi,
            w,
            lambda sub: pures[sub[0].pair].cumulant(sub),
            lambda sub: pures[sub[0].pair].conditional_cumulant(sub),
        )
    return total
