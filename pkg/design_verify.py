"""
Design Verify for amscheme
Support multisets per composition class and exhaustive t-design checks
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from block_code import BlockCode, EnumerationSettings, composition_keys, default_base, weight_distribution
from extension import Composition

logger = logging.getLogger(__name__)

DEFAULT_MAX_SUBSETS = 5_000_000

# rows of (blocks x t-subsets-per-block) ranked per batch
_BATCH_ENTRIES = 1 << 20


class DesignError(ValueError):
    """A design question that cannot be asked: empty class, t > k, or too large to count"""


@dataclass
class BlockMultiset:
    """
    Blocks on the points {1..n}, all of size k, as bit masks with multiplicities

    Bit j - 1 of a mask stands for point j.
    """

    n: int
    k: int
    masks: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        self.masks = np.asarray(self.masks, dtype=np.uint64)
        self.multiplicities = np.asarray(self.multiplicities, dtype=np.int64)
        if self.n > 64:
            raise DesignError(f"Blocks on {self.n} points do not fit 64-bit masks")
        if len(self.masks) != len(self.multiplicities):
            raise DesignError("Every block needs a multiplicity")
        if len(self.multiplicities) and self.multiplicities.min() < 1:
            raise DesignError("Block multiplicities must be positive")
        sizes = {_popcount(int(m)) for m in self.masks}
        if sizes and sizes != {self.k}:
            raise DesignError(f"Blocks have sizes {sorted(sizes)}, expected {self.k}")

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Sequence[int]) -> 'BlockMultiset':
        values, counts = np.unique(np.asarray(masks, dtype=np.uint64), return_counts=True)
        return cls(n, k, values, counts)

    @classmethod
    def from_blocks(cls, n: int, blocks: Sequence[Sequence[int]]) -> 'BlockMultiset':
        """Blocks as collections of 1-indexed points."""
        if not blocks:
            raise DesignError("No blocks given")
        sizes = {len(set(b)) for b in blocks}
        if len(sizes) != 1:
            raise DesignError(f"Blocks have sizes {sorted(sizes)}")
        masks = []
        for block in blocks:
            if any(not 1 <= p <= n for p in block):
                raise DesignError(f"Block {sorted(block)} has points outside 1..{n}")
            masks.append(sum(1 << (p - 1) for p in set(block)))
        return cls.from_masks(n, sizes.pop(), masks)

    @property
    def count(self) -> int:
        """Blocks counted with multiplicity."""
        return int(self.multiplicities.sum())

    @property
    def distinct(self) -> int:
        return len(self.masks)

    @property
    def is_simple(self) -> bool:
        return bool(len(self.multiplicities) == 0 or self.multiplicities.max() == 1)

    def blocks(self) -> List[FrozenSet[int]]:
        """Distinct blocks as sets of 1-indexed points."""
        return [frozenset(j + 1 for j in range(self.n) if int(m) >> j & 1) for m in self.masks]

    def merged(self, other: 'BlockMultiset') -> 'BlockMultiset':
        if (self.n, self.k) != (other.n, other.k):
            raise DesignError("Only blocks of the same size on the same points can be merged")
        masks = np.concatenate([np.repeat(self.masks, self.multiplicities),
                                np.repeat(other.masks, other.multiplicities)])
        return BlockMultiset.from_masks(self.n, self.k, masks)

    def point_arrays(self) -> np.ndarray:
        """(distinct, k) array of 0-indexed points in increasing order."""
        bits = (self.masks[:, None] >> np.arange(self.n, dtype=np.uint64)[None, :]) & np.uint64(1)
        rows = np.nonzero(bits.astype(bool))
        return rows[1].reshape(len(self.masks), self.k).astype(np.int64)


def _popcount(mask: int) -> int:
    return bin(mask).count('1')


@dataclass
class DesignCertificate:
    """blocks form a t-design; lambdas[i] is lambda_i for i = 0..t"""

    t: int
    n: int
    k: int
    block_count: int
    lambdas: List[Fraction]
    simple: bool

    @property
    def lambda_t(self) -> Fraction:
        return self.lambdas[self.t]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'design': True,
            't': self.t,
            'n': self.n,
            'k': self.k,
            'blocks': self.block_count,
            'lambdas': [str(value) for value in self.lambdas],
            'simple': self.simple,
        }


@dataclass
class DesignRefusal:
    """blocks are not a t-design: two t-subsets lie in different numbers of blocks"""

    t: int
    n: int
    k: int
    witness: Tuple[Tuple[Tuple[int, ...], int], Tuple[Tuple[int, ...], int]]

    def to_dict(self) -> Dict[str, Any]:
        (first, a), (second, b) = self.witness
        return {
            'design': False,
            't': self.t,
            'n': self.n,
            'k': self.k,
            'witness': [{'subset': list(first), 'count': a}, {'subset': list(second), 'count': b}],
        }


DesignResult = Union[DesignCertificate, DesignRefusal]


def _support_masks(rows: np.ndarray, base: np.ndarray) -> np.ndarray:
    differs = (rows != base[None, :]).astype(np.uint64)
    powers = np.left_shift(np.uint64(1), np.arange(rows.shape[1], dtype=np.uint64))
    return (differs * powers[None, :]).sum(axis=1, dtype=np.uint64)


def supports_of_class(code: BlockCode, alpha: Composition, base: Optional[Sequence[int]] = None,
                      settings: Optional[EnumerationSettings] = None) -> BlockMultiset:
    """
    {supp(x) : x in C with composition alpha relative to base} as a multiset

    Raises:
        DesignError: If no codeword has composition alpha
    """
    return supports_of_classes(code, [alpha], base, settings)


def supports_of_weight(code: BlockCode, weight: int, base: Optional[Sequence[int]] = None,
                       settings: Optional[EnumerationSettings] = None) -> BlockMultiset:
    """Supports of every codeword at Hamming distance weight from base."""
    base = tuple(base) if base is not None else default_base(code)
    distribution = weight_distribution(code, base, settings).distribution
    classes = [alpha for alpha, count in distribution.items() if count and alpha.weight == weight]
    return supports_of_classes(code, classes, base, settings)


def supports_of_classes(code: BlockCode, classes: Sequence[Composition], base: Optional[Sequence[int]] = None,
                        settings: Optional[EnumerationSettings] = None) -> BlockMultiset:
    settings = settings or EnumerationSettings()
    base = tuple(base) if base is not None else default_base(code)
    if not classes:
        raise DesignError(f"{code.name}: no composition class selected")
    weights = {alpha.weight for alpha in classes}
    if len(weights) != 1:
        raise DesignError(f"Classes {[str(a) for a in classes]} have different block sizes")
    distribution = weight_distribution(code, base, settings).distribution
    for alpha in classes:
        if alpha.n != code.n or alpha.classes != code.scheme.classes:
            raise DesignError(f"Composition {alpha} does not fit {code.name}")
        if not distribution.get(alpha):
            raise DesignError(f"{code.name} has no word of composition {alpha}")
    base_array = np.array(base, dtype=np.int64)
    keys = [alpha.key() for alpha in classes]
    masks = []
    for chunk in code.iter_chunks(settings):
        chunk_keys = composition_keys(code, chunk, base_array)
        for key in keys:
            rows = chunk[chunk_keys == key]
            if len(rows):
                masks.append(_support_masks(rows, base_array))
    blocks = BlockMultiset.from_masks(code.n, weights.pop(), np.concatenate(masks))
    logger.debug(f"{code.name}: {blocks.count} blocks of size {blocks.k} for {[str(a) for a in classes]}")
    return blocks


def _binomial_table(n: int, t: int) -> np.ndarray:
    """table[v, i] = C(v, i)"""
    table = np.zeros((n + 1, t + 2), dtype=np.int64)
    for v in range(n + 1):
        for i in range(t + 2):
            table[v, i] = comb(v, i)
    return table


def _unrank(rank: int, n: int, t: int) -> Tuple[int, ...]:
    """Inverse of the combinatorial number system, 1-indexed points."""
    subset = []
    for i in range(t, 0, -1):
        v = i - 1
        while comb(v + 1, i) <= rank:
            v += 1
        subset.append(v)
        rank -= comb(v, i)
    return tuple(sorted(p + 1 for p in subset))


def subset_counts(blocks: BlockMultiset, t: int, workers: int = 1,
                  max_subsets: int = DEFAULT_MAX_SUBSETS) -> np.ndarray:
    """
    counts[rank(T)] = number of blocks containing T, for every t-subset T

    T is ranked by the combinatorial number system sum_i C(c_i, i + 1) over
    its sorted 0-indexed points.

    Raises:
        DesignError: If the count would exceed max_subsets block-subset pairs
    """
    n, k = blocks.n, blocks.k
    if t > k:
        raise DesignError(f"t = {t} exceeds the block size {k}")
    total = comb(n, t)
    work = blocks.distinct * comb(k, t)
    if max(work, total) > max_subsets:
        raise DesignError(f"Checking t = {t} needs {max(work, total)} subset counts, limit is {max_subsets}")
    if t == 0:
        return np.array([blocks.count], dtype=np.int64)
    table = _binomial_table(n, t)
    picks = np.array(list(combinations(range(k), t)), dtype=np.int64)
    points = blocks.point_arrays()
    columns = np.arange(1, t + 1, dtype=np.int64)
    per_batch = max(1, _BATCH_ENTRIES // max(1, len(picks)))
    bounds = [(start, min(start + per_batch, len(points))) for start in range(0, len(points), per_batch)]

    def count(bound: Tuple[int, int]) -> np.ndarray:
        start, stop = bound
        chosen = points[start:stop][:, picks]
        ranks = table[chosen, columns].sum(axis=-1)
        weights = np.repeat(blocks.multiplicities[start:stop], len(picks))
        return np.bincount(ranks.ravel(), weights=weights, minlength=total).astype(np.int64)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(count, bounds))
    else:
        partials = [count(bound) for bound in bounds]
    counts = np.zeros(total, dtype=np.int64)
    for part in partials:
        counts += part
    return counts


def lambda_profile(blocks: BlockMultiset, t: int, lambda_t: Optional[Any] = None) -> List[Fraction]:
    """
    lambda_i for i = 0..t from lambda_(i) = lambda_(i+1) (n - i) / (k - i)

    lambda_t defaults to b C(k, t) / C(n, t), its value in any t-design.
    """
    n, k = blocks.n, blocks.k
    if t > k:
        raise DesignError(f"t = {t} exceeds the block size {k}")
    top = Fraction(lambda_t) if lambda_t is not None else Fraction(blocks.count * comb(k, t), comb(n, t))
    lambdas = [top]
    for i in range(t - 1, -1, -1):
        lambdas.append(lambdas[-1] * (n - i) / (k - i))
    lambdas.reverse()
    return lambdas


def is_t_design(blocks: BlockMultiset, t: int, workers: int = 1,
                max_subsets: int = DEFAULT_MAX_SUBSETS) -> DesignResult:
    """
    Exhaustive t-design check

    Returns:
        DesignCertificate with lambda_0..lambda_t, or DesignRefusal with two
        t-subsets met by different numbers of blocks

    Raises:
        DesignError: If t > k or t < 0
    """
    if t < 0:
        raise DesignError(f"t must be non-negative, got {t}")
    if not blocks.count:
        raise DesignError("No blocks given")
    counts = subset_counts(blocks, t, workers, max_subsets)
    first = int(counts[0])
    unequal = np.flatnonzero(counts != first)
    if len(unequal):
        other = int(unequal[0])
        witness = ((_unrank(0, blocks.n, t), first), (_unrank(other, blocks.n, t), int(counts[other])))
        logger.debug(f"Not a {t}-design: {witness}")
        return DesignRefusal(t, blocks.n, blocks.k, witness)
    lambdas = lambda_profile(blocks, t, first)
    if lambdas[0] != blocks.count:
        raise DesignError(f"lambda_0 = {lambdas[0]} does not match {blocks.count} blocks")
    return DesignCertificate(t, blocks.n, blocks.k, blocks.count, lambdas, blocks.is_simple)


def max_design_t(blocks: BlockMultiset, workers: int = 1, max_subsets: int = DEFAULT_MAX_SUBSETS) -> int:
    """
    Largest t for which the blocks form a t-design

    Designs are closed under lowering t, so the search climbs from t = 1 and
    stops at the first failure.
    """
    if not blocks.count:
        raise DesignError("No blocks given")
    best = 0
    for t in range(1, blocks.k + 1):
        if isinstance(is_t_design(blocks, t, workers, max_subsets), DesignRefusal):
            break
        best = t
    return best


def class_designs(code: BlockCode, t: int, base: Optional[Sequence[int]] = None,
                  settings: Optional[EnumerationSettings] = None,
                  max_subsets: int = DEFAULT_MAX_SUBSETS,
                  classes: Optional[Sequence[Composition]] = None) -> Dict[Composition, DesignResult]:
    """is_t_design for every nonzero composition class of the code (or the given ones) with block size >= t."""
    settings = settings or EnumerationSettings()
    base = tuple(base) if base is not None else default_base(code)
    distribution = weight_distribution(code, base, settings).distribution
    if classes is None:
        classes = [alpha for alpha, count in distribution.items() if count and not alpha.is_zero()]
    results: Dict[Composition, DesignResult] = {}
    for alpha in classes:
        if alpha.weight < t:
            continue
        blocks = supports_of_class(code, alpha, base, settings)
        results[alpha] = is_t_design(blocks, t, settings.workers, max_subsets)
    return results
