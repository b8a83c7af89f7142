"""
Abelian Alphabet for amscheme
Finite abelian groups used as code alphabets, their characters, and exact character sums
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from utils.cyclotomic import CyclotomicNumber

logger = logging.getLogger(__name__)


class AlphabetError(ValueError):
    """Invalid group descriptor or elements taken from different groups"""


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """
    Direct product Z_k1 x ... x Z_km

    Elements are indexed in lexicographic order of their residue tuples, the
    first factor being the most significant digit. F_4 is modelled as Z_2 x Z_2
    with a + b*omega stored as the residues (a, b).
    """

    factors: Tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(k) for k in self.factors)
        if not factors:
            raise AlphabetError("A group needs at least one cyclic factor")
        for k in factors:
            if k < 2:
                raise AlphabetError(f"Cyclic factor orders must be at least 2, got {k}")
        object.__setattr__(self, 'factors', factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        strides = []
        step = 1
        for k in reversed(self.factors):
            strides.append(step)
            step *= k
        return tuple(reversed(strides))

    def reduce(self, residues: Sequence[int]) -> Tuple[int, ...]:
        if len(residues) != self.rank:
            raise AlphabetError(
                f"Expected {self.rank} residues for {self.describe()}, got {len(residues)}"
            )
        return tuple(int(r) % k for r, k in zip(residues, self.factors))

    def index_of(self, residues: Sequence[int]) -> int:
        return sum(r * s for r, s in zip(self.reduce(residues), self.strides))

    def residues_of(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.order:
            raise AlphabetError(f"Element index {index} out of range for {self.describe()}")
        return tuple((index // s) % k for s, k in zip(self.strides, self.factors))

    def element(self, residues: Sequence[int]) -> 'GroupElement':
        return GroupElement(self, self.reduce(residues))

    def element_at(self, index: int) -> 'GroupElement':
        return GroupElement(self, self.residues_of(index))

    def character(self, index: int) -> 'CharacterIndex':
        return CharacterIndex(self, self.residues_of(index))

    def elements(self) -> List['GroupElement']:
        return [self.element_at(i) for i in range(self.order)]

    @property
    def zero(self) -> 'GroupElement':
        return GroupElement(self, (0,) * self.rank)

    @cached_property
    def residue_array(self) -> np.ndarray:
        """order x rank array of residues, row i belongs to element index i"""
        return np.array([self.residues_of(i) for i in range(self.order)], dtype=np.int64).reshape(
            self.order, self.rank
        )

    @cached_property
    def addition_table(self) -> np.ndarray:
        residues = self.residue_array
        moduli = np.array(self.factors, dtype=np.int64)
        sums = (residues[:, None, :] + residues[None, :, :]) % moduli
        return sums @ np.array(self.strides, dtype=np.int64)

    @cached_property
    def negation(self) -> np.ndarray:
        moduli = np.array(self.factors, dtype=np.int64)
        return ((-self.residue_array) % moduli) @ np.array(self.strides, dtype=np.int64)

    def pairing_exponent(self, x: Sequence[int], y: Sequence[int]) -> int:
        """
        Exponent of eps_x(y) as a power of zeta_N, N the group exponent

        eps_x(y) = prod_c zeta_{k_c}^{x_c y_c} = zeta_N^{sum_c x_c y_c N / k_c}
        """
        n = self.exponent
        return sum(a * b * (n // k) for a, b, k in zip(x, y, self.factors)) % n

    @cached_property
    def pairing_table(self) -> np.ndarray:
        """order x order array of pairing exponents, symmetric"""
        weights = np.array([self.exponent // k for k in self.factors], dtype=np.int64)
        residues = self.residue_array
        return ((residues * weights) @ residues.T) % self.exponent

    def describe(self) -> str:
        return ' x '.join(f"Z{k}" for k in self.factors)

    def to_descriptor(self) -> List[int]:
        return list(self.factors)


@dataclass(frozen=True)
class GroupElement:
    """Element of a FiniteAbelianGroup, residues always reduced"""

    group: FiniteAbelianGroup
    residues: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'residues', self.group.reduce(self.residues))

    @property
    def index(self) -> int:
        return self.group.index_of(self.residues)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __add__(self, other: 'GroupElement') -> 'GroupElement':
        return group_add(self, other)

    def __neg__(self) -> 'GroupElement':
        return type(self)(self.group, tuple(-r for r in self.residues))

    def __sub__(self, other: 'GroupElement') -> 'GroupElement':
        return group_add(self, -other)

    def __str__(self) -> str:
        if self.group.rank == 1:
            return str(self.residues[0])
        return '(' + ','.join(str(r) for r in self.residues) + ')'


class CharacterIndex(GroupElement):
    """Element x naming the character eps_x under the fixed symmetric pairing"""

    def value(self, g: GroupElement) -> CyclotomicNumber:
        return character_value(self, g)


def _check_same_group(a: GroupElement, b: GroupElement) -> None:
    if a.group != b.group:
        raise AlphabetError(
            f"Elements belong to different groups: {a.group.describe()} and {b.group.describe()}"
        )


def group_add(g: GroupElement, h: GroupElement) -> GroupElement:
    """
    Component-wise sum mod k_i

    Raises:
        AlphabetError: If g and h come from different groups
    """
    _check_same_group(g, h)
    residues = tuple(a + b for a, b in zip(g.residues, h.residues))
    return GroupElement(g.group, residues)


def character_value(e: GroupElement, g: GroupElement) -> CyclotomicNumber:
    """
    Exact value eps_e(g)

    Raises:
        AlphabetError: If e and g come from different groups
    """
    _check_same_group(e, g)
    group = e.group
    return CyclotomicNumber.root_of_unity(group.exponent, group.pairing_exponent(e.residues, g.residues))


def character_sum(e: GroupElement, elements: Iterable[GroupElement]) -> CyclotomicNumber:
    """
    Sum of conj(eps_e(x)) over x in the given set

    This is the eigenvalue P_ji of a translation scheme when e lies in the
    j-th dual class and the set is the i-th class.

    Raises:
        AlphabetError: On an empty set or elements from another group
    """
    group = e.group
    counts: Counter = Counter()
    seen = 0
    for x in elements:
        _check_same_group(e, x)
        counts[(-group.pairing_exponent(e.residues, x.residues)) % group.exponent] += 1
        seen += 1
    if not seen:
        raise AlphabetError("Character sums need a non-empty set")
    return CyclotomicNumber.from_exponent_counts(group.exponent, counts)


def character_sum_by_index(group: FiniteAbelianGroup, e: int, members: Iterable[int]) -> CyclotomicNumber:
    """Index-based character_sum used when building eigenmatrices."""
    row = group.pairing_table[e]
    counts: Counter = Counter(int(-row[x]) % group.exponent for x in members)
    return CyclotomicNumber.from_exponent_counts(group.exponent, counts)
