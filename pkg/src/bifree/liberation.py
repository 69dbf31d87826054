"""The liberation tensor calculus.

Contains the four-term interval map on words (and its free one-sided
analogue), formal exponential-polynomial moments of a free unitary Brownian
motion, and the order-t replacement expansion that conjugates one pair's
letters by same-side unitaries and expands to first order in t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bnc import chi_interval, chi_precedes
from .distributions import BifreeProduct, builtin_semicircular_pair
from .errors import DomainError
from .words import Letter, chi_of, eps_of, subword, word_text


class TensorSum:
    """A formal rational combination of (left-word, right-word) tensor pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (lw, rw), c in terms.items() if isinstance(terms, dict) else terms:
                self.add(lw, rw, c)

    def add(self, left, right, coeff):
        coeff = Fraction(coeff)
        if coeff == 0:
            return self
        key = (tuple(left), tuple(right))
        new = self.terms.get(key, 0) + coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new
        return self

    def __add__(self, other):
        s = TensorSum(dict(self.terms))
        for (lw, rw), c in other.terms.items():
            s.add(lw, rw, c)
        return s

    def scaled(self, coeff):
        coeff = Fraction(coeff)
        s = TensorSum()
        if coeff != 0:
            for key, c in self.terms.items():
                s.terms[key] = c * coeff
        return s

    def items(self):
        return self.terms.items()

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorSum) and self.terms == other.terms

    def render(self) -> str:
        """One `±p/q · [left] ⊗ [right]` line per term, sorted lexicographically."""
        lines = []
        for (lw, rw), c in sorted(
                self.terms.items(),
                key=lambda kv: (word_text(kv[0][0]), word_text(kv[0][1]))):
            sign = "+" if c > 0 else "-"
            lines.append(f"{sign}{abs(c)} · [{word_text(lw)}] ⊗ [{word_text(rw)}]")
        return "\n".join(lines) if lines else "0"

    def __repr__(self):
        return f"TensorSum({self.render()!r})"


def taur(w, iota) -> TensorSum:
    """Four-term signed interval sum over chi-ordered pairs of iota-letters.

    For each pair i chi-before-or-equal j of iota-colored positions, the
    closed / half-open / open chi-intervals contribute +, -, -, + copies of
    (complement subword) tensor (interval subword).
    """
    out = TensorSum()
    if len(w) == 0:
        return out
    chi = chi_of(w)
    eps = eps_of(w)
    positions = [i for i in range(1, len(w) + 1) if eps[i - 1] == iota]
    everything = set(range(1, len(w) + 1))
    for i in positions:
        for j in positions:
            if i != j and not chi_precedes(chi, i, j):
                continue
            for left_closed, right_closed, sign in (
                    (True, True, 1), (True, False, -1),
                    (False, True, -1), (False, False, 1)):
                interval = chi_interval(chi, i, j, left_closed, right_closed)
                out.add(subword(w, everything - interval),
                        subword(w, interval), sign)
    return out


def eval_tensor(d, t: TensorSum) -> Fraction:
    """(phi tensor phi) applied to a tensor sum."""
    total = Fraction(0)
    for (lw, rw), c in t.items():
        total += c * d.phi(lw) * d.phi(rw)
    return total


@dataclass
class TaurVerdict:
    holds: bool
    checked: int = 0
    certified: bool = True
    word: tuple = ()
    value: Fraction = Fraction(0)

    def render(self) -> str:
        suffix = "" if self.certified else " uncertified"
        if self.holds:
            return f"HOLDS checked={self.checked}{suffix}"
        return f"COUNTEREXAMPLE word={word_text(self.word)} value={self.value}{suffix}"


def taur_test(d, iota, max_len, widen=False) -> TaurVerdict:
    """Exhaustively evaluate the tensor map on all words up to max_len.

    By default one generator per face per pair is used (multilinearity makes
    that sufficient for fixed tables); `widen` switches to every declared
    generator.  With more than two pairs in scope the verdict is reported as
    uncertified.
    """
    if max_len > 8:
        raise ValueError(f"max_len must be <= 8, got {max_len}")
    if widen:
        alphabet = sorted(d.letters, key=lambda l: l.symbol)
    else:
        alphabet = [d.letters_by_face()[k] for k in sorted(d.letters_by_face())]
    certified = len(d.pairs) <= 2
    checked = 0
    words = [()]
    for _ in range(max_len):
        words = [w + (a,) for w in words for a in alphabet]
        for w in words:
            value = eval_tensor(d, taur(w, iota))
            checked += 1
            if value != 0:
                return TaurVerdict(holds=False, checked=checked,
                                   certified=certified, word=w, value=value)
    return TaurVerdict(holds=True, checked=checked, certified=certified)


def free_delta(w, iota) -> TensorSum:
    """One-sided prefix-split analogue for all-left words.

    For each iota-colored position i: -(strict prefix) tensor (rest) plus
    (prefix through i) tensor (rest).  Right-sided letters are out of domain.
    """
    if any(letter.side != "l" for letter in w):
        raise DomainError("prefix splits are defined for all-left words only")
    out = TensorSum()
    n = len(w)
    for i in range(1, n + 1):
        if w[i - 1].pair != iota:
            continue
        out.add(w[:i - 1], w[i - 1:], -1)
        out.add(w[:i], w[i:], 1)
    return out


def _poly_text(coeffs) -> str:
    bits = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "t" if k == 1 else f"t^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(("+ " if c > 0 else "- ") + body)
    return " ".join(bits) if bits else "0"


def _rate_text(rate: Fraction) -> str:
    if rate == 1:
        return "t"
    if rate == -1:
        return "-t"
    return f"{rate}*t"


class ExpPoly:
    """A finite sum of p(t) * exp(rate*t) with rational polynomials and rates."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # rate -> tuple of coefficients (index = power of t)
        self.terms = {}
        if terms:
            for rate, coeffs in terms.items() if isinstance(terms, dict) else terms:
                self.add_term(rate, coeffs)

    def add_term(self, rate, coeffs):
        rate = Fraction(rate)
        coeffs = tuple(Fraction(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            return self
        if rate in self.terms:
            old = self.terms[rate]
            size = max(len(old), len(coeffs))
            merged = tuple(
                (old[k] if k < len(old) else 0) + (coeffs[k] if k < len(coeffs) else 0)
                for k in range(size))
            while merged and merged[-1] == 0:
                merged = merged[:-1]
            if merged:
                self.terms[rate] = merged
            else:
                del self.terms[rate]
        else:
            self.terms[rate] = coeffs
        return self

    def eval(self, t: float) -> float:
        total = 0.0
        for rate, coeffs in self.terms.items():
            p = sum(float(c) * t ** k for k, c in enumerate(coeffs))
            total += p * math.exp(float(rate) * t)
        return total

    def taylor1(self):
        """Exact constant and linear Taylor coefficients at t = 0."""
        a0 = Fraction(0)
        a1 = Fraction(0)
        for rate, coeffs in self.terms.items():
            p0 = coeffs[0] if coeffs else Fraction(0)
            p1 = coeffs[1] if len(coeffs) > 1 else Fraction(0)
            a0 += p0
            a1 += p1 + p0 * rate
        return a0, a1

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for rate in sorted(self.terms, reverse=True):
            poly = f"({_poly_text(self.terms[rate])})"
            if rate == 0:
                bits.append(poly)
            else:
                bits.append(f"{poly} * exp({_rate_text(rate)})")
        return " + ".join(bits)

    def __eq__(self, other):
        return isinstance(other, ExpPoly) and self.terms == other.terms

    def __repr__(self):
        return f"ExpPoly({self.render()})"


def ubm_moment(n: int) -> ExpPoly:
    """phi(U(t)^n) as an exact exponential polynomial.

    sum_{k=0}^{n-1} (-1)^k t^k/k! n^{k-1} C(n, k+1) exp(-nt/2); n = 0 gives
    the constant 1.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return ExpPoly({Fraction(0): (Fraction(1),)})
    coeffs = []
    for k in range(n):
        c = (Fraction((-1) ** k, math.factorial(k))
             * Fraction(n) ** (k - 1) * math.comb(n, k + 1))
        coeffs.append(c)
    return ExpPoly({Fraction(-n, 2): tuple(coeffs)})


def ubm_eval(n: int, t: float) -> float:
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return ubm_moment(n).eval(t)


def _psi(side, alpha) -> int:
    return alpha if side == "l" else -alpha


def _fresh_pair_id(pures):
    pid = "sem"
    while pid in pures:
        pid += "_"
    return pid


class ReplacementContext:
    """The pure family with an all-ones semicircular pair adjoined bi-freely.

    Holds the extended product oracle so that scans over many words share
    moment memos.
    """

    def __init__(self, pures):
        self.pures = dict(pures)
        self.sem = builtin_semicircular_pair(
            _fresh_pair_id(pures), {"ll": 1, "lr": 1, "rr": 1})
        family = dict(pures)
        family[self.sem.pair] = self.sem
        self.extended = BifreeProduct(family)
        self.base = BifreeProduct(dict(pures))
        self.s_letter = {letter.side: letter for letter in self.sem.letters}


def _expand_tokens(ctx: ReplacementContext, tokens):
    """First-order expansion of a product of letters and unitary factors.

    Tokens are ("letter", Letter) or ("u", side, alpha).  Each unitary factor
    stands for (1 - t/2) + i*psi*sqrt(t)*S_side with the context's all-ones
    semicircular pair; odd powers of sqrt(t) vanish by the sign-flip
    symmetry, so only single -t/2 picks and paired S picks reach order t.
    The i*i = -1 of a paired pick folds into the coefficient.
    """
    base = tuple(t[1] for t in tokens if t[0] == "letter")
    c0 = ctx.extended.phi(base)

    us = [k for k, t in enumerate(tokens) if t[0] == "u"]
    c1 = Fraction(-len(us), 2) * c0
    for a in range(len(us)):
        for b in range(a + 1, len(us)):
            p, q = us[a], us[b]
            word = []
            for k, t in enumerate(tokens):
                if t[0] == "letter":
                    word.append(t[1])
                elif k in (p, q):
                    word.append(ctx.s_letter[t[1]])
            coeff = -_psi(tokens[p][1], tokens[p][2]) * _psi(tokens[q][1], tokens[q][2])
            c1 += coeff * ctx.extended.phi(tuple(word))
    return c0, c1


def replacement_expand(pures, w, iota, ctx=None):
    """Order-t expansion of the word with each iota-letter unitarily conjugated.

    Every iota-colored letter x becomes U_side x U_side^*; the unitaries are
    rewritten by the first-order replacement and the product expanded.
    Returns the exact (constant, linear) coefficients in t.
    """
    if ctx is None:
        ctx = ReplacementContext(pures)
    tokens = []
    for letter in w:
        if letter.pair == iota:
            tokens.append(("u", letter.side, 1))
            tokens.append(("letter", letter))
            tokens.append(("u", letter.side, -1))
        else:
            tokens.append(("letter", letter))
    return _expand_tokens(ctx, tokens)


def ubm_power_expansion(m: int):
    """Replacement expansion of a bare same-side unitary power U^m (no letters)."""
    return _expand_tokens(ReplacementContext({}), [("u", "l", 1)] * m)


def liberation_derivative_check(pures, w, iota, ctx=None) -> bool:
    """Exact agreement of the expansion with the tensor-map derivative formula."""
    if ctx is None:
        ctx = ReplacementContext(pures)
    c0, c1 = replacement_expand(pures, w, iota, ctx)
    return c0 == ctx.base.phi(w) and c1 == eval_tensor(ctx.base, taur(w, iota))
