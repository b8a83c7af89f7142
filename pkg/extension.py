"""
Extension for amscheme
Compositions, composition of word pairs, supports and the Hamming fusion of the length-n extension
"""
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Sequence, Set, Tuple

import numpy as np

Word = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Composition:
    """
    Refined weight alpha = (alpha_1, ..., alpha_s) of a length-n word pair

    alpha_0 = n - |alpha| is implied and never stored.
    """

    n: int
    alpha: Tuple[int, ...]

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        if any(a < 0 for a in alpha):
            raise ValueError(f"Composition entries must be non-negative, got {alpha}")
        if sum(alpha) > self.n:
            raise ValueError(f"|alpha| = {sum(alpha)} exceeds n = {self.n}")
        object.__setattr__(self, 'alpha', alpha)

    @property
    def weight(self) -> int:
        return sum(self.alpha)

    @property
    def zeroth(self) -> int:
        return self.n - self.weight

    @property
    def classes(self) -> int:
        return len(self.alpha)

    def is_zero(self) -> bool:
        return not any(self.alpha)

    def full(self) -> Tuple[int, ...]:
        """(alpha_0, alpha_1, ..., alpha_s)"""
        return (self.zeroth,) + self.alpha

    def key(self) -> int:
        return composition_key(self.alpha, self.n)

    def __str__(self) -> str:
        return '(' + ','.join(str(a) for a in self.alpha) + ')'


def composition_key(alpha: Sequence[int], n: int) -> int:
    """Mixed radix code sum_i alpha_i (n+1)^(i-1), used as an accumulator index."""
    key = 0
    for a in reversed(alpha):
        key = key * (n + 1) + int(a)
    return key


def decode_key(key: int, n: int, s: int) -> Composition:
    alpha = []
    for _ in range(s):
        key, a = divmod(key, n + 1)
        alpha.append(a)
    return Composition(n, tuple(alpha))


def class_weights(n: int, s: int) -> np.ndarray:
    """Key contribution of one coordinate in class c, c = 0..s (class 0 contributes nothing)."""
    return np.array([0] + [(n + 1) ** (c - 1) for c in range(1, s + 1)], dtype=np.int64)


def composition_of(x: Sequence[int], y: Sequence[int], scheme) -> Composition:
    """
    Composition of the pair (x, y): per class i >= 1, the number of coordinates with r(x_l, y_l) = i

    Raises:
        ValueError: If the words have different lengths
    """
    if len(x) != len(y):
        raise ValueError(f"Words have different lengths: {len(x)} and {len(y)}")
    labels = scheme.relation[np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)]
    counts = np.bincount(labels, minlength=scheme.classes + 1)
    return Composition(len(x), tuple(int(c) for c in counts[1:]))


def _descending(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _descending(total - head, parts - 1):
            yield (head,) + tail


@lru_cache(maxsize=None)
def _compositions(n: int, s: int) -> Tuple[Composition, ...]:
    return tuple(
        Composition(n, alpha)
        for degree in range(n + 1)
        for alpha in _descending(degree, s)
    )


def enumerate_compositions(n: int, s: int) -> List[Composition]:
    """
    All alpha in N^s with |alpha| <= n, graded by |alpha|, descending lexicographic within a degree

    The result has C(n+s, s) entries.
    """
    if n < 0 or s < 1:
        raise ValueError(f"enumerate_compositions needs n >= 0 and s >= 1, got n={n}, s={s}")
    result = list(_compositions(n, s))
    assert len(result) == comb(n + s, s)
    return result


def composition_index(n: int, s: int) -> Dict[Tuple[int, ...], int]:
    return {c.alpha: i for i, c in enumerate(_compositions(n, s))}


def support(x: Sequence[int], base: Sequence[int]) -> Set[int]:
    """1-indexed coordinates where x differs from base."""
    if len(x) != len(base):
        raise ValueError(f"Words have different lengths: {len(x)} and {len(base)}")
    return {position + 1 for position, (a, b) in enumerate(zip(x, base)) if a != b}


def transpose_composition(alpha: Composition, transpose_map: Sequence[int]) -> Composition:
    """alpha' with alpha'_{i'} = alpha_i, i' the class transpose of i."""
    moved = [0] * alpha.classes
    for i, a in enumerate(alpha.alpha, start=1):
        moved[transpose_map[i] - 1] += a
    return Composition(alpha.n, tuple(moved))


def parse_composition(text: str, n: int) -> Composition:
    """'3,3' or '(3,3)' -> Composition."""
    cleaned = text.strip().strip('()[]')
    if not cleaned:
        raise ValueError("Empty composition")
    return Composition(n, tuple(int(part) for part in cleaned.split(',')))
