"""
Block Code for amscheme
Codes in X^n: explicit and additive representations, streaming enumeration, weight and inner
distributions, dual codes and dual supports
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from abelian_alphabet import FiniteAbelianGroup
from enumerators import WeightEnumerator, macwilliams_transform
from extension import Composition, Word, class_weights, decode_key
from scheme_core import AssociationScheme, build_trivial_scheme, dual_scheme
from utils.integer_lattice import integer_kernel, lattice_basis, subgroup_order_snf

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 2 ** 25
DEFAULT_CHUNK_SIZE = 65536
DEFAULT_WORKERS = 4

# Above this many composition keys the accumulator switches from bincount to unique
_DENSE_KEY_LIMIT = 2 ** 22


class CodeError(ValueError):
    """Invalid code definition or an operation the code does not support"""


class EnumerationCapError(RuntimeError):
    """The code has more words than the configured enumeration cap"""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Code has {size} words, enumeration cap is {cap}")


@dataclass(frozen=True)
class EnumerationSettings:
    """Streaming parameters shared by every enumeration"""

    cap: int = DEFAULT_ENUMERATION_CAP
    chunk_size: int = DEFAULT_CHUNK_SIZE
    workers: int = DEFAULT_WORKERS

    @classmethod
    def from_config(cls, config) -> 'EnumerationSettings':
        return cls(
            cap=int(config.get('enumeration.cap', DEFAULT_ENUMERATION_CAP)),
            chunk_size=int(config.get('enumeration.chunk_size', DEFAULT_CHUNK_SIZE)),
            workers=int(config.get('enumeration.workers', DEFAULT_WORKERS)),
        )


@dataclass
class WeightData:
    """
    Distributions of a code relative to a base vertex

    distribution holds |C cap (X^n)_alpha| for alpha relative to base, inner
    the inner distribution a_alpha, dual_support the alpha with E_alpha C != 0.
    """

    base: Word
    distribution: Dict[Composition, int]
    inner: Optional[Dict[Composition, Fraction]] = None
    dual_support: Optional[List[Composition]] = None
    dual_method: str = ''

    @property
    def total(self) -> int:
        return sum(self.distribution.values())

    def support(self) -> List[Composition]:
        return [alpha for alpha, count in self.distribution.items() if count]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'base': list(self.base),
            'distribution': [{'alpha': list(a.alpha), 'count': c} for a, c in self.distribution.items()],
        }
        if self.inner is not None:
            data['inner'] = [{'alpha': list(a.alpha), 'value': str(v)} for a, v in self.inner.items()]
        if self.dual_support is not None:
            data['dual_support'] = [list(a.alpha) for a in self.dual_support]
            data['dual_method'] = self.dual_method
        return data


class BlockCode:
    """
    A code C in X^n over an association scheme

    Either an explicit word list or additive generators over the alphabet
    group. Symbols are element indices of the scheme's point set. Additive
    codes are enumerated from an echelon basis so every word appears once.
    """

    def __init__(self, scheme: AssociationScheme, n: int,
                 generators: Optional[Sequence[Sequence[int]]] = None,
                 words: Optional[Sequence[Sequence[int]]] = None,
                 name: str = 'code'):
        if (generators is None) == (words is None):
            raise CodeError("A code needs either generators or an explicit word list")
        if n < 1:
            raise CodeError(f"Code length must be positive, got {n}")
        self.scheme = scheme
        self.n = n
        self.name = name
        self._distributions: Dict[Word, WeightData] = {}
        self._dual: Optional['BlockCode'] = None
        if generators is not None:
            if not scheme.is_translation:
                raise CodeError("Additive generators need a translation scheme")
            self.generators = [self._check_word(g) for g in generators]
            if not self.generators:
                raise CodeError("An additive code needs at least one generator")
            self.words = None
        else:
            unique = []
            seen = set()
            for word in words:
                word = self._check_word(word)
                if word not in seen:
                    seen.add(word)
                    unique.append(word)
            if len(unique) != len(words):
                logger.warning(f"{self.name}: dropped {len(words) - len(unique)} repeated words")
            self.words = unique
            self.generators = None
        valid, message = self.validate()
        if not valid:
            raise CodeError(message)

    def _check_word(self, word: Sequence[int]) -> Word:
        word = tuple(int(x) for x in word)
        if len(word) != self.n:
            raise CodeError(f"Word of length {len(word)} in a code of length {self.n}")
        if any(not 0 <= x < self.scheme.size for x in word):
            raise CodeError(f"Word {word} uses symbols outside 0..{self.scheme.size - 1}")
        return word

    def validate(self) -> Tuple[bool, str]:
        """1 < |C| < |X|^n"""
        size = self.size
        if size <= 1:
            return False, f"A code needs more than one word, {self.name} has {size}"
        if size >= self.scheme.size ** self.n:
            return False, f"{self.name} is the whole space X^{self.n}"
        return True, ""

    # Structure

    @property
    def group(self) -> Optional[FiniteAbelianGroup]:
        return self.scheme.group

    @property
    def is_explicit(self) -> bool:
        return self.words is not None

    @cached_property
    def moduli(self) -> List[int]:
        return list(self.group.factors) * self.n

    def lift(self, word: Sequence[int]) -> List[int]:
        residues = self.group.residue_array
        return [int(r) for x in word for r in residues[x]]

    def unlift(self, vector: Sequence[int]) -> Word:
        m = self.group.rank
        return tuple(
            self.group.index_of(vector[position * m:(position + 1) * m])
            for position in range(self.n)
        )

    @cached_property
    def basis(self) -> List[Tuple[List[int], int]]:
        """Echelon rows with their orders, for additive codes."""
        if not self.is_additive:
            raise CodeError(f"{self.name} is not additive")
        source = self.generators if self.generators is not None else self.words
        return lattice_basis([self.lift(g) for g in source], self.moduli)

    @cached_property
    def is_additive(self) -> bool:
        if self.generators is not None:
            return True
        if not self.scheme.is_translation or (0,) * self.n not in set(self.words):
            return False
        span = lattice_basis([self.lift(w) for w in self.words], self.moduli)
        return math.prod(order for _, order in span) == len(self.words)

    @cached_property
    def size(self) -> int:
        if self.words is not None:
            return len(self.words)
        return math.prod(order for _, order in self.basis)

    def canonical_generators(self) -> List[Word]:
        return [self.unlift(row) for row, _ in self.basis]

    def check_size(self) -> bool:
        """Cross-check |C| against the invariant factors of the generator lattice."""
        if not self.is_additive:
            return True
        return subgroup_order_snf([row for row, _ in self.basis], self.moduli) == self.size

    def zero_word(self) -> Word:
        return (0,) * self.n

    def with_scheme(self, scheme: AssociationScheme) -> 'BlockCode':
        """Same words read in another scheme on the same points."""
        if scheme.size != self.scheme.size:
            raise CodeError(f"Scheme on {scheme.size} points cannot carry {self.name}")
        if self.generators is not None:
            if scheme.group != self.scheme.group:
                raise CodeError("Additive codes keep their alphabet group")
            return BlockCode(scheme, self.n, generators=self.generators, name=self.name)
        return BlockCode(scheme, self.n, words=self.words, name=self.name)

    def to_descriptor(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name, 'scheme': self.scheme.to_descriptor(), 'n': self.n}
        if self.generators is not None:
            data['generators'] = [list(g) for g in self.generators]
        else:
            data['words'] = [list(w) for w in self.words]
        return data

    def __repr__(self) -> str:
        return f"BlockCode({self.name}, n={self.n}, |C|={self.size}, {self.scheme.describe()})"

    # Enumeration

    def iter_chunks(self, settings: Optional[EnumerationSettings] = None) -> Iterator[np.ndarray]:
        """
        Stream codewords as (rows, n) arrays of symbol indices

        Raises:
            EnumerationCapError: If |C| exceeds the cap
        """
        settings = settings or EnumerationSettings()
        if self.size > settings.cap:
            raise EnumerationCapError(self.size, settings.cap)
        for start in range(0, self.size, settings.chunk_size):
            yield self.chunk(start, min(start + settings.chunk_size, self.size))

    def chunk(self, start: int, stop: int) -> np.ndarray:
        if self.words is not None:
            return np.array(self.words[start:stop], dtype=np.int64).reshape(-1, self.n)
        orders, strides, rows = self._basis_arrays
        numbers = np.arange(start, stop, dtype=np.int64)
        coefficients = (numbers[:, None] // strides[None, :]) % orders[None, :]
        residues = (coefficients @ rows) % np.array(self.moduli, dtype=np.int64)
        m = self.group.rank
        symbol_strides = np.array(self.group.strides, dtype=np.int64)
        return residues.reshape(len(numbers), self.n, m) @ symbol_strides

    @cached_property
    def _basis_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        orders = np.array([order for _, order in self.basis], dtype=np.int64)
        rows = np.array([row for row, _ in self.basis], dtype=np.int64)
        # mixed radix digits of the word number, last basis row least significant
        strides = np.ones(len(orders), dtype=np.int64)
        for j in range(len(orders) - 2, -1, -1):
            strides[j] = strides[j + 1] * orders[j + 1]
        return orders, strides, rows

    def enumerate(self, settings: Optional[EnumerationSettings] = None) -> np.ndarray:
        """All codewords, |C| x n, in a fixed order."""
        chunks = list(self.iter_chunks(settings))
        return np.concatenate(chunks) if chunks else np.zeros((0, self.n), dtype=np.int64)

    def weight_enumerator(self, settings: Optional[EnumerationSettings] = None) -> WeightEnumerator:
        """w_C built from the inner distribution."""
        inner = inner_distribution(self, settings).inner
        return WeightEnumerator.from_distribution(inner, self.n, self.scheme.classes)


# Distributions


def composition_keys(code: BlockCode, words: np.ndarray, base: np.ndarray) -> np.ndarray:
    """Composition key of every row of words relative to base."""
    contribution = class_weights(code.n, code.scheme.classes)[code.scheme.relation]
    return contribution[base[None, :], words].sum(axis=1)


def class_words(code: BlockCode, alpha: Composition, base: Optional[Sequence[int]] = None,
                settings: Optional[EnumerationSettings] = None) -> np.ndarray:
    """Codewords with composition alpha relative to base, as an (m, n) array."""
    base_array = np.array(base if base is not None else default_base(code), dtype=np.int64)
    key = alpha.key()
    parts = [chunk[composition_keys(code, chunk, base_array) == key] for chunk in code.iter_chunks(settings)]
    return np.concatenate(parts) if parts else np.zeros((0, code.n), dtype=np.int64)


def _count_keys(code: BlockCode, words: np.ndarray, base: np.ndarray, key_count: int) -> np.ndarray:
    keys = composition_keys(code, words, base)
    if key_count <= _DENSE_KEY_LIMIT:
        return np.bincount(keys, minlength=key_count)
    values, counts = np.unique(keys, return_counts=True)
    return np.stack([values, counts])


def _merge_counts(partials: List[np.ndarray], key_count: int) -> Dict[int, int]:
    totals: Dict[int, int] = {}
    if key_count <= _DENSE_KEY_LIMIT:
        dense = np.zeros(key_count, dtype=np.int64)
        for part in partials:
            dense += part
        return {int(k): int(dense[k]) for k in np.flatnonzero(dense)}
    for values, counts in partials:
        for key, count in zip(values.tolist(), counts.tolist()):
            totals[key] = totals.get(key, 0) + count
    return totals


def _ordered(counts: Dict[int, Any], n: int, s: int) -> Dict[Composition, Any]:
    decoded = [(decode_key(key, n, s), value) for key, value in counts.items() if value]
    decoded.sort(key=lambda item: (item[0].weight, tuple(-a for a in item[0].alpha)))
    return dict(decoded)


def default_base(code: BlockCode) -> Word:
    return code.zero_word()


def weight_distribution(code: BlockCode, base: Optional[Sequence[int]] = None,
                        settings: Optional[EnumerationSettings] = None) -> WeightData:
    """
    Exact |C cap (X^n)_alpha| for every alpha, relative to base (default all-zero)

    Chunks are counted concurrently and merged by addition, so the result does
    not depend on chunking or worker count.

    Raises:
        EnumerationCapError: If |C| exceeds the cap
    """
    settings = settings or EnumerationSettings()
    base = tuple(int(x) for x in base) if base is not None else default_base(code)
    if len(base) != code.n:
        raise CodeError(f"Base vertex has length {len(base)}, code length is {code.n}")
    if base in code._distributions:
        return code._distributions[base]
    if code.size > settings.cap:
        raise EnumerationCapError(code.size, settings.cap)
    s = code.scheme.classes
    key_count = (code.n + 1) ** s
    base_array = np.array(base, dtype=np.int64)
    bounds = [(start, min(start + settings.chunk_size, code.size))
              for start in range(0, code.size, settings.chunk_size)]

    def count(bound: Tuple[int, int]) -> np.ndarray:
        return _count_keys(code, code.chunk(*bound), base_array, key_count)

    if settings.workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            partials = list(pool.map(count, bounds))
    else:
        partials = [count(bound) for bound in bounds]
    distribution = _ordered(_merge_counts(partials, key_count), code.n, s)
    data = WeightData(base, distribution)
    code._distributions[base] = data
    logger.info(f"{code.name}: {code.size} words in {len(distribution)} composition classes")
    return data


def inner_distribution(code: BlockCode, settings: Optional[EnumerationSettings] = None) -> WeightData:
    """
    a_alpha = |C|^-1 |{(x, y) in C^2 : composition_of(x, y) = alpha}|

    Additive codes reuse the distribution from the zero word; other codes
    average the distributions from every codeword.
    """
    settings = settings or EnumerationSettings()
    base = default_base(code)
    if code.is_additive:
        data = weight_distribution(code, base, settings)
        if data.inner is None:
            data.inner = {alpha: Fraction(count) for alpha, count in data.distribution.items()}
        return data
    if code.size * code.size > settings.cap:
        raise EnumerationCapError(code.size * code.size, settings.cap)
    s = code.scheme.classes
    key_count = (code.n + 1) ** s
    words = code.enumerate(settings)
    partials = [_count_keys(code, words, words[i], key_count) for i in range(len(words))]
    totals = _merge_counts(partials, key_count)
    inner = _ordered({key: Fraction(value, code.size) for key, value in totals.items()}, code.n, s)
    data = weight_distribution(code, base, settings)
    data.inner = inner
    return data


def dual_code(code: BlockCode) -> BlockCode:
    """
    C-perp = {y : eps_y(x) = 1 for all x in C} as an additive code over the dual scheme

    The condition sum_(l,c) (N / k_c) x_lc y_lc = 0 mod N is solved over the
    integers: the kernel of [A | -N I] comes from its Smith normal form and is
    projected onto the first block, then echeloned modulo the k_c. The result
    is checked by pairing every generator pair and by |C| |C-perp| = |X|^n.

    Raises:
        CodeError: If the code is not additive over a translation scheme
    """
    if not code.scheme.is_translation:
        raise CodeError("Dual codes need a translation scheme")
    if not code.is_additive:
        raise CodeError(f"{code.name} is not additive")
    if code._dual is not None:
        return code._dual
    group = code.group
    exponent = group.exponent
    weights = [exponent // k for k in code.moduli]
    rows = [row for row, _ in code.basis]
    width = len(code.moduli)
    # [A | -N I]: A_i,(l,c) = (N / k_c) x_i,(l,c)
    system = []
    for i, row in enumerate(rows):
        slack = [0] * len(rows)
        slack[i] = -exponent
        system.append([w * x for w, x in zip(weights, row)] + slack)
    projected = [vector[:width] for vector in integer_kernel(system)]
    dual_rows = lattice_basis(projected, code.moduli)
    generators = [code.unlift(row) for row, _ in dual_rows]
    dual = BlockCode(dual_scheme(code.scheme), code.n, generators=generators, name=f"dual of {code.name}")

    for row in rows:
        for dual_row, _ in dual_rows:
            pairing = sum(w * x * y for w, x, y in zip(weights, row, dual_row)) % exponent
            if pairing:
                raise CodeError(f"Dual generator {dual_row} pairs non-trivially with {row}")
    if code.size * dual.size != code.scheme.size ** code.n:
        raise CodeError(f"|C| |C-perp| = {code.size * dual.size} != |X|^n = {code.scheme.size ** code.n}")
    logger.info(f"{code.name}: dual code has {dual.size} words")
    code._dual = dual
    return dual


def dual_support(code: BlockCode, settings: Optional[EnumerationSettings] = None) -> Tuple[List[Composition], str]:
    """
    Compositions alpha with E_alpha C != 0

    Additive codes over translation schemes with a small enough dual are read
    from the enumerated dual code; otherwise the exact transform of the inner
    distribution decides.

    Returns:
        Tuple of (support list, method name: 'dual-enumeration' or 'transform')
    """
    settings = settings or EnumerationSettings()
    if code.scheme.is_translation and code.is_additive:
        dual_size = code.scheme.size ** code.n // code.size
        if dual_size <= settings.cap:
            dual = dual_code(code)
            return weight_distribution(dual, settings=settings).support(), 'dual-enumeration'
        logger.warning(f"{code.name}: dual has {dual_size} words, using the exact transform")
    transformed = macwilliams_transform(code.weight_enumerator(settings), code.scheme, code.size)
    return transformed.support(), 'transform'


def weight_data(code: BlockCode, base: Optional[Sequence[int]] = None,
                settings: Optional[EnumerationSettings] = None) -> WeightData:
    """Distribution, inner distribution and dual support in one record."""
    settings = settings or EnumerationSettings()
    data = weight_distribution(code, base, settings)
    if data.inner is None:
        data.inner = inner_distribution(code, settings).inner
    if data.dual_support is None:
        data.dual_support, data.dual_method = dual_support(code, settings)
    return data


def torsion_code(code: BlockCode) -> BlockCode:
    """
    C_2 = C cap 2 Z_4^n read as a binary code over the 1-class scheme

    Raises:
        CodeError: Unless the code is additive over Z_4
    """
    if code.group is None or code.group.factors != (4,) or not code.is_additive:
        raise CodeError("Torsion codes are defined for additive codes over Z_4")
    rows = [row for row, _ in code.basis]
    # sum_i a_i b_i = 2 y: kernel of [B^T | -2 I]
    system = []
    for position in range(code.n):
        slack = [0] * code.n
        slack[position] = -2
        system.append([row[position] for row in rows] + slack)
    halves = [vector[len(rows):] for vector in integer_kernel(system)]
    binary = lattice_basis(halves, [2] * code.n)
    generators = [tuple(row) for row, _ in binary]
    torsion = BlockCode(build_trivial_scheme(2), code.n, generators=generators, name=f"torsion code of {code.name}")
    logger.info(f"{code.name}: torsion code has {torsion.size} words")
    return torsion
