"""Chi-maps, the chi-order, chi-intervals, and the bi-non-crossing lattice.

A chi-map is a string over {l, r} giving the side of each position 1..n.
An eps-map is a tuple of pair-color labels of the same length.
The chi-order lists left positions ascending, then right positions descending.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import OrderError, SizeError
from .partitions import (
    MAX_GROUND_SET,
    SetPartition,
    _canonical,
    join as partition_join,
    lattice_mobius,
    meet as partition_meet,
    refines,
)

CHI_FIRST = None  # sentinel accepted for ray endpoints
CHI_LAST = None


def _check_chi(chi: str):
    if not chi or any(c not in "lr" for c in chi):
        raise ValueError(f"chi must be a nonempty string over 'l'/'r', got {chi!r}")


def s_chi_permutation(chi: str):
    """The permutation s_chi: position k holds the k-th element in chi-order."""
    _check_chi(chi)
    lefts = [i for i, c in enumerate(chi, 1) if c == "l"]
    rights = [i for i, c in enumerate(chi, 1) if c == "r"]
    return tuple(lefts + rights[::-1])


@lru_cache(maxsize=None)
def _ranks(chi: str) -> dict:
    """Element -> 0-based rank in chi-order."""
    return {elem: k for k, elem in enumerate(s_chi_permutation(chi))}


def chi_precedes(chi: str, i: int, j: int) -> bool:
    """True iff i strictly precedes j in chi-order."""
    ranks = _ranks(chi)
    if i not in ranks or j not in ranks:
        raise IndexError(f"index out of range for chi of length {len(chi)}")
    return ranks[i] < ranks[j]


def chi_interval(chi, i, j, left_closed=True, right_closed=True) -> frozenset:
    """Indices between i and j in chi-order, endpoint inclusion per the flags.

    Passing None for i (resp. j) gives the ray from the chi-first (resp. to
    the chi-last) position; the adjacent closure flag is then ignored.
    """
    ranks = _ranks(chi)
    n = len(chi)
    if i is None:
        lo = 0
    else:
        if i not in ranks:
            raise IndexError(f"index {i} out of range")
        lo = ranks[i] + (0 if left_closed else 1)
    if j is None:
        hi = n - 1
    else:
        if j not in ranks:
            raise IndexError(f"index {j} out of range")
        hi = ranks[j] - (0 if right_closed else 1)
    if i is not None and j is not None and ranks[i] > ranks[j]:
        raise OrderError(f"{j} chi-precedes {i}")
    order = s_chi_permutation(chi)
    return frozenset(order[k] for k in range(lo, hi + 1))


def is_bi_non_crossing(p: SetPartition, chi: str) -> bool:
    """True iff transporting p through the chi-order yields a non-crossing partition."""
    _check_chi(chi)
    if p.n != len(chi):
        raise SizeError(f"partition size {p.n} != chi length {len(chi)}")
    ranks = _ranks(chi)
    bmap = p.block_map()
    labels = [None] * p.n
    for elem, k in bmap.items():
        labels[ranks[elem]] = k
    remaining = {}
    for k in labels:
        remaining[k] = remaining.get(k, 0) + 1
    stack = []
    seen = set()
    for k in labels:
        if stack and stack[-1] == k:
            pass
        elif k in seen:
            return False  # re-opened a block that is not on top: crossing
        else:
            stack.append(k)
            seen.add(k)
        remaining[k] -= 1
        while stack and remaining[stack[-1]] == 0:
            stack.pop()
    return True


@dataclass(frozen=True)
class BncPartition:
    """A set partition remembered together with its chi-map."""

    partition: SetPartition
    chi: str

    @staticmethod
    def of(partition: SetPartition, chi: str) -> "BncPartition":
        if not is_bi_non_crossing(partition, chi):
            raise ValueError(f"partition {partition.blocks} is crossing for chi={chi}")
        return BncPartition(partition, chi)

    @property
    def n(self):
        return self.partition.n


@lru_cache(maxsize=None)
def _nc_colored(colors: tuple):
    """Non-crossing partitions of range(len(colors)) with monochromatic blocks.

    Recursion on the block of position 0: the gaps between its consecutive
    elements, and the tail after its last element, are partitioned
    independently.  Blocks are 0-based tuples.
    """
    n = len(colors)
    if n == 0:
        return ((),)
    results = []
    c0 = colors[0]

    def shift(part, off):
        return tuple(tuple(x + off for x in b) for b in part)

    def rec(block, last, acc):
        for tail in _nc_colored(colors[last + 1:]):
            results.append((tuple(block),) + acc + shift(tail, last + 1))
        for j in range(last + 1, n):
            if colors[j] != c0:
                continue
            for gap in _nc_colored(colors[last + 1:j]):
                rec(block + [j], j, acc + shift(gap, last + 1))

    rec([0], 0, ())
    return tuple(results)


def _transport(rank_partition, chi: str) -> SetPartition:
    order = s_chi_permutation(chi)
    blocks = _canonical(tuple(order[k] for k in b) for b in rank_partition)
    return SetPartition(len(chi), blocks)


@lru_cache(maxsize=None)
def enumerate_bnc(chi: str):
    """All bi-non-crossing partitions for chi, in canonical order."""
    _check_chi(chi)
    if len(chi) > MAX_GROUND_SET:
        raise SizeError(f"chi length {len(chi)} exceeds cap {MAX_GROUND_SET}")
    parts = [_transport(rp, chi) for rp in _nc_colored((0,) * len(chi))]
    parts.sort(key=lambda p: p.blocks)
    return tuple(BncPartition(p, chi) for p in parts)


def enumerate_bnc_leq_eps(chi: str, eps: tuple):
    """Bi-non-crossing partitions for chi whose blocks are all eps-monochromatic."""
    _check_chi(chi)
    if len(eps) != len(chi):
        raise SizeError(f"eps length {len(eps)} != chi length {len(chi)}")
    order = s_chi_permutation(chi)
    colors = tuple(eps[elem - 1] for elem in order)
    return tuple(_transport(rp, chi) for rp in _nc_colored(colors))


def _blocks_cross(chi, a, b) -> bool:
    # Two blocks cross iff their rank-sorted merge alternates at least 3 times.
    ranks = _ranks(chi)
    merged = sorted([(ranks[x], 0) for x in a] + [(ranks[x], 1) for x in b])
    switches = sum(1 for s, t in zip(merged, merged[1:]) if s[1] != t[1])
    return switches >= 3


def bnc_meet(p: BncPartition, q: BncPartition) -> BncPartition:
    if p.chi != q.chi:
        raise SizeError("chi maps differ")
    return BncPartition(partition_meet(p.partition, q.partition), p.chi)


def bnc_join(p: BncPartition, q: BncPartition) -> BncPartition:
    """Least element of BNC(chi) that both p and q refine.

    Partition-lattice join followed by the non-crossing closure (repeatedly
    merging crossing block pairs).
    """
    if p.chi != q.chi:
        raise SizeError("chi maps differ")
    chi = p.chi
    current = partition_join(p.partition, q.partition)
    while not is_bi_non_crossing(current, chi):
        merged = None
        blocks = current.blocks
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if _blocks_cross(chi, blocks[i], blocks[j]):
                    merged = (i, j)
                    break
            if merged:
                break
        i, j = merged
        new_blocks = [b for k, b in enumerate(blocks) if k not in (i, j)]
        new_blocks.append(tuple(sorted(blocks[i] + blocks[j])))
        current = SetPartition(current.n, _canonical(new_blocks))
    return BncPartition(current, chi)


def maximal_mono_intervals(chi: str, eps: tuple):
    """The partition of {1..n} into maximal runs of constant eps-color along chi-order.

    Returned as tuples in natural increasing order, listed in chi-run order.
    """
    _check_chi(chi)
    if len(eps) != len(chi):
        raise SizeError(f"eps length {len(eps)} != chi length {len(chi)}")
    order = s_chi_permutation(chi)
    runs = []
    current = [order[0]]
    for elem in order[1:]:
        if eps[elem - 1] == eps[current[-1] - 1]:
            current.append(elem)
        else:
            runs.append(tuple(sorted(current)))
            current = [elem]
    runs.append(tuple(sorted(current)))
    return tuple(runs)


def classify_blocks(p: BncPartition) -> dict:
    """Label each block inner or outer.

    A block is inner when another block chi-surrounds it: some other block has
    elements strictly chi-before and strictly chi-after everything in it.
    """
    ranks = _ranks(p.chi)
    spans = [(min(ranks[x] for x in b), max(ranks[x] for x in b)) for b in p.partition.blocks]
    out = {}
    for i, b in enumerate(p.partition.blocks):
        lo, hi = spans[i]
        inner = any(
            j != i and spans[j][0] < lo and spans[j][1] > hi
            for j in range(len(spans))
        )
        out[b] = "inner" if inner else "outer"
    return out


def bnc_mobius(lower: BncPartition, upper: BncPartition) -> int:
    """Mobius value over the BNC(chi) interval [lower, upper]."""
    if lower.chi != upper.chi:
        raise SizeError("chi maps differ")
    universe = [b.partition for b in enumerate_bnc(lower.chi)]
    return lattice_mobius(lower.partition, upper.partition, universe)


@lru_cache(maxsize=None)
def mobius_to_full(chi: str) -> dict:
    """mu(pi, full) for every pi in BNC(chi), keyed by pi.blocks.

    Uses the dual recursion mu(pi, 1) = -sum_{pi < rho <= 1} mu(rho, 1),
    filled in from coarse to fine.
    """
    parts = [b.partition for b in enumerate_bnc(chi)]
    parts.sort(key=len)  # coarse first
    full = SetPartition.full(len(chi))
    mu = {full.blocks: 1}
    for p in parts:
        if p.blocks in mu:
            continue
        total = 0
        for q in parts:
            if len(q) >= len(p):
                continue
            if refines(p, q):
                total += mu[q.blocks]
        mu[p.blocks] = -total
    return mu
