"""Pure (single-pair) and joint moment oracles, and built-in distributions.

All arithmetic is exact rational.  Moment-backed tables are hard-erroring:
a missing entry raises InsufficientDataError rather than reading as zero,
because implicit zeros would silently corrupt cumulant inversion.
"""
from __future__ import annotations

from fractions import Fraction

from . import cumulants
from .errors import InsufficientDataError, ModeError
from .words import Letter, ScalarWordSum, canonical_word, eps_of, word_text


class PureDistribution:
    """Moment/cumulant oracle for words within a single pair of faces."""

    def __init__(self, pair, left_symbols=(), right_symbols=(), max_degree=None,
                 theta_table=None):
        self.pair = pair
        self.left_symbols = tuple(left_symbols)
        self.right_symbols = tuple(right_symbols)
        self.max_degree = max_degree
        self.theta_table = dict(theta_table) if theta_table is not None else None
        self._moment_memo = {}
        self._cumulant_memo = {}
        self._ckappa_memo = {}

    @property
    def letters(self):
        return tuple(
            [Letter(s, self.pair, "l") for s in self.left_symbols]
            + [Letter(s, self.pair, "r") for s in self.right_symbols]
        )

    def _check_degree(self, w):
        if self.max_degree is not None and len(w) > self.max_degree:
            raise InsufficientDataError(word_text(w))

    # subclasses provide one of _raw_moment / _raw_cumulant
    def moment(self, w) -> Fraction:
        if len(w) == 0:
            return Fraction(1)
        if w not in self._moment_memo:
            self._moment_memo[w] = self._raw_moment(w)
        return self._moment_memo[w]

    def cumulant(self, w) -> Fraction:
        if len(w) == 0:
            raise ValueError("cumulants need length >= 1")
        if w not in self._cumulant_memo:
            self._cumulant_memo[w] = self._raw_cumulant(w)
        return self._cumulant_memo[w]

    def _raw_moment(self, w):
        return cumulants.moments_from_cumulants(self.cumulant, w)

    def _raw_cumulant(self, w):
        return cumulants.kappa_from_phi(self.moment, w, self._cumulant_memo)

    def has_theta(self):
        return self.theta_table is not None

    def theta(self, w) -> Fraction:
        if self.theta_table is None:
            raise ModeError(f"pair {self.pair!r} has no theta layer")
        if len(w) == 0:
            return Fraction(1)
        self._check_degree(w)
        key = tuple(letter.symbol for letter in w)
        try:
            return self.theta_table[key]
        except KeyError:
            raise InsufficientDataError(word_text(w)) from None

    def conditional_cumulant(self, w) -> Fraction:
        return cumulants.conditional_kappa_from(
            self.theta, self.cumulant, w, self._ckappa_memo)


class MomentTablePure(PureDistribution):
    """Pure distribution backed by a complete moment table up to max_degree."""

    def __init__(self, pair, left_symbols, right_symbols, max_degree, moments,
                 theta_table=None):
        super().__init__(pair, left_symbols, right_symbols, max_degree, theta_table)
        self.table = {tuple(k): Fraction(v) for k, v in moments.items()}

    def _raw_moment(self, w):
        self._check_degree(w)
        key = tuple(letter.symbol for letter in w)
        try:
            return self.table[key]
        except KeyError:
            raise InsufficientDataError(word_text(w)) from None


class CumulantTablePure(PureDistribution):
    """Pure distribution backed by a cumulant table; unspecified cumulants are 0."""

    def __init__(self, pair, left_symbols, right_symbols, max_degree, cumulants_table,
                 theta_table=None):
        super().__init__(pair, left_symbols, right_symbols, max_degree, theta_table)
        self.table = {tuple(k): Fraction(v) for k, v in cumulants_table.items()}

    def _raw_cumulant(self, w):
        key = tuple(letter.symbol for letter in w)
        return self.table.get(key, Fraction(0))


class CallablePure(PureDistribution):
    """Pure distribution whose moments come from a function of the symbol tuple."""

    def __init__(self, pair, left_symbols, right_symbols, moment_fn, max_degree=None,
                 theta_table=None):
        super().__init__(pair, left_symbols, right_symbols, max_degree, theta_table)
        self.moment_fn = moment_fn

    def _raw_moment(self, w):
        self._check_degree(w)
        return Fraction(self.moment_fn(tuple(letter.symbol for letter in w)))


def builtin_semicircular_pair(pair, cov) -> PureDistribution:
    """A semicircular pair: second-order cumulants per `cov`, all others zero.

    `cov` maps the unordered side pattern "ll" / "lr" / "rr" to a rational.
    """
    cov = {k: Fraction(v) for k, v in cov.items()}

    class _Semicircular(PureDistribution):
        def _raw_cumulant(self, w):
            if len(w) != 2:
                return Fraction(0)
            pattern = "".join(sorted(letter.side for letter in w))
            return cov.get(pattern, Fraction(0))

    return _Semicircular(pair, left_symbols=(f"s_{pair}_l",), right_symbols=(f"s_{pair}_r",))


def builtin_haar_pair(pair, symbols=None) -> PureDistribution:
    """A Haar *-pair (u_l, u_l*, u_r, u_r*): phi = 1 iff net left power = net right power.

    Within the pair all four symbols commute and the starred symbols invert
    the unstarred ones, so every word reduces to u_l^j u_r^k.
    """
    if symbols is None:
        symbols = (f"ul_{pair}", f"ul*_{pair}", f"ur_{pair}", f"ur*_{pair}")
    ul, uls, ur, urs = symbols
    powers = {ul: (1, 0), uls: (-1, 0), ur: (0, 1), urs: (0, -1)}

    def moment_fn(syms):
        j = sum(powers[s][0] for s in syms)
        k = sum(powers[s][1] for s in syms)
        return 1 if j == k else 0

    return CallablePure(pair, left_symbols=(ul, uls), right_symbols=(ur, urs),
                        moment_fn=moment_fn)


class JointDistribution:
    """Base joint moment oracle: subclasses provide phi (and optionally theta)."""

    letters = ()

    def phi(self, w) -> Fraction:
        raise NotImplementedError

    theta = None  # overridden where a theta layer exists

    def letters_by_face(self):
        """First generator per (pair, side), by symbol order."""
        faces = {}
        for letter in sorted(self.letters, key=lambda l: l.symbol):
            faces.setdefault((letter.pair, letter.side), letter)
        return faces

    @property
    def pairs(self):
        return tuple(sorted({letter.pair for letter in self.letters}))


class BifreeProduct(JointDistribution):
    """Joint distribution of bi-freely independent pairs given by pure oracles."""

    def __init__(self, pures):
        self.pures = dict(pures)
        self._phi_memo = {}
        self._theta_memo = {}
        if all(p.has_theta() for p in self.pures.values()) and self.pures:
            self.theta = self._theta

    @property
    def letters(self):
        return tuple(l for p in self.pures.values() for l in p.letters)

    def phi(self, w) -> Fraction:
        key = canonical_word(w)
        if key not in self._phi_memo:
            self._phi_memo[key] = cumulants.bifree_product_moment(self.pures, key)
        return self._phi_memo[key]

    def _theta(self, w) -> Fraction:
        key = canonical_word(w)
        if key not in self._theta_memo:
            self._theta_memo[key] = cumulants.conditional_product_theta(self.pures, key)
        return self._theta_memo[key]


class TableJoint(JointDistribution):
    """Joint distribution read off an explicit table keyed by canonical words."""

    def __init__(self, letters, table):
        self._letters = tuple(letters)
        self.table = {canonical_word(k): Fraction(v) for k, v in table.items()}

    @property
    def letters(self):
        return self._letters

    def phi(self, w) -> Fraction:
        if len(w) == 0:
            return Fraction(1)
        key = canonical_word(w)
        try:
            return self.table[key]
        except KeyError:
            raise InsufficientDataError(word_text(w)) from None


class PerturbedJoint(JointDistribution):
    """A base joint distribution with finitely many moments shifted."""

    def __init__(self, base: JointDistribution, deltas):
        self.base = base
        self.deltas = {canonical_word(k): Fraction(v) for k, v in deltas.items()}
        if base.theta is not None:
            self.theta = base.theta

    @property
    def letters(self):
        return self.base.letters

    @property
    def pures(self):
        return getattr(self.base, "pures", {})

    def phi(self, w) -> Fraction:
        return self.base.phi(w) + self.deltas.get(canonical_word(w), Fraction(0))


def evaluate(d, s: ScalarWordSum) -> Fraction:
    """Linear extension of the moment oracle to word sums."""
    total = Fraction(0)
    for w, c in s.items():
        total += c * d.phi(w)
    return total


def evaluate_theta(d, s: ScalarWordSum) -> Fraction:
    if d.theta is None:
        raise ModeError("distribution has no theta layer")
    total = Fraction(0)
    for w, c in s.items():
        total += c * d.theta(w)
    return total
