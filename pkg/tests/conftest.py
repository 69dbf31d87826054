"""Shared factories for randomized rational test families."""
import itertools
from fractions import Fraction

from bifree import BifreeProduct, Letter, MomentTablePure, TableJoint, eps_of


def rand_fraction(rng, lo=-4, hi=4, dmax=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, dmax))


def random_moment_pure(pair, rng, max_degree=6, n_left=1, n_right=1,
                       with_theta=False):
    """A pure distribution with a complete random moment table up to max_degree."""
    left = tuple(f"{pair}l{k}" if n_left > 1 else f"{pair}l" for k in range(n_left))
    right = tuple(f"{pair}r{k}" if n_right > 1 else f"{pair}r" for k in range(n_right))
    syms = left + right
    table = {}
    theta = {} if with_theta else None
    for n in range(1, max_degree + 1):
        for combo in itertools.product(syms, repeat=n):
            table[combo] = rand_fraction(rng)
            if with_theta:
                theta[combo] = rand_fraction(rng)
    return MomentTablePure(pair, left, right, max_degree, table, theta_table=theta)


def random_family(rng, pairs=("a", "b"), max_degree=6, with_theta=False,
                  extra_left=()):
    """Pure tables for the given pair ids; extra_left pairs get 2 left generators."""
    pures = {}
    for pair in pairs:
        n_left = 2 if pair in extra_left else 1
        pures[pair] = random_moment_pure(pair, rng, max_degree=max_degree,
                                         n_left=n_left, with_theta=with_theta)
    return pures


def random_table_joint(letters, rng, max_len=6):
    """A joint moment table with one random value per commutation class."""
    table = {}
    words = [()]
    for _ in range(max_len):
        words = [w + (a,) for w in words for a in letters]
        for w in words:
            table.setdefault(w, rand_fraction(rng))
    return TableJoint(letters, table)


def words_up_to(letters, max_len, mixed_only=False):
    words = [()]
    for _ in range(max_len):
        words = [w + (a,) for w in words for a in letters]
        for w in words:
            if mixed_only and len(set(eps_of(w))) < 2:
                continue
            yield w


def one_per_face(d):
    return [d.letters_by_face()[k] for k in sorted(d.letters_by_face())]
