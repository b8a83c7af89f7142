"""
Scheme Core for amscheme
Commutative association schemes: construction, axiom validation, exact eigenmatrices,
intersection numbers, Krein parameters and dual schemes
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Symbol

from abelian_alphabet import FiniteAbelianGroup, character_sum_by_index
from utils.cyclotomic import CyclotomicNumber
from utils.exact_linalg import SingularMatrixError, inverse, mat_mul, null_space

logger = logging.getLogger(__name__)

CycMatrix = List[List[CyclotomicNumber]]

# Coefficient families tried when separating the idempotents of a table scheme
_SEPARATING_COEFFICIENTS = (
    lambda i: i + 1,
    lambda i: (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)[i % 12] + 41 * (i // 12),
    lambda i: 2 ** i,
    lambda i: (i + 1) ** 2,
)


class SchemeAxiomError(ValueError):
    """A relation table or partition fails one of the scheme axioms"""

    def __init__(self, axiom: str, witness: Any = None, message: str = ''):
        self.axiom = axiom
        self.witness = witness
        detail = message or f"axiom {axiom} violated"
        if witness is not None:
            detail = f"{detail} (witness {witness})"
        super().__init__(detail)


class NonRationalSchemeError(ValueError):
    """A table scheme whose Bose-Mesner algebra does not split over Q"""


@dataclass(frozen=True)
class SchemeClassSet:
    """Partition X = X_0 + ... + X_s of a translation scheme and its dual partition of X*"""

    group: FiniteAbelianGroup
    classes: Tuple[Tuple[int, ...], ...]
    dual_classes: Tuple[Tuple[int, ...], ...]

    @cached_property
    def element_class(self) -> np.ndarray:
        lookup = np.zeros(self.group.order, dtype=np.int64)
        for label, members in enumerate(self.classes):
            lookup[list(members)] = label
        return lookup

    @cached_property
    def character_class(self) -> np.ndarray:
        lookup = np.zeros(self.group.order, dtype=np.int64)
        for label, members in enumerate(self.dual_classes):
            lookup[list(members)] = label
        return lookup

    def class_of(self, index: int) -> int:
        return int(self.element_class[index])

    def dual_class_of(self, index: int) -> int:
        return int(self.character_class[index])


class AssociationScheme:
    """
    Validated commutative association scheme with exact eigenmatrices

    Instances are built by the module-level builders and never mutated after
    construction. P[j][i] is the eigenvalue of A_i on the j-th primitive
    idempotent, Q = |X| P^-1.
    """

    def __init__(self, name: str, relation: np.ndarray, eigenmatrix: CycMatrix,
                 intersection: np.ndarray, transpose_map: Tuple[int, ...],
                 class_set: Optional[SchemeClassSet] = None,
                 descriptor: Optional[Dict[str, Any]] = None):
        self.name = name
        self.relation = relation
        self.size = int(relation.shape[0])
        self.classes = int(relation.max())
        self.P = eigenmatrix
        self.intersection = intersection
        self.transpose_map = transpose_map
        self.class_set = class_set
        self.descriptor = descriptor or {}
        self.level = eigenmatrix[0][0].level
        self.Q = _second_eigenmatrix(eigenmatrix, self.size)

    @property
    def is_translation(self) -> bool:
        return self.class_set is not None

    @property
    def group(self) -> Optional[FiniteAbelianGroup]:
        return self.class_set.group if self.class_set else None

    @property
    def valencies(self) -> List[int]:
        return [int(v.to_fraction()) for v in self.P[0]]

    @property
    def multiplicities(self) -> List[int]:
        return [int(v.to_fraction()) for v in self.Q[0]]

    @cached_property
    def krein(self) -> List[List[List[CyclotomicNumber]]]:
        return _krein_tensor(self)

    def is_symmetric(self) -> bool:
        return all(self.transpose_map[i] == i for i in range(self.classes + 1))

    def describe(self) -> str:
        return f"{self.name} (|X|={self.size}, s={self.classes})"

    def to_descriptor(self) -> Dict[str, Any]:
        if self.descriptor:
            return dict(self.descriptor)
        descriptor: Dict[str, Any] = {
            'type': 'table',
            'size': self.size,
            'classes': self.classes,
            'relation': self.relation.tolist(),
        }
        if self.group is not None:
            descriptor['group'] = self.group.to_descriptor()
        return descriptor

    def __repr__(self) -> str:
        return f"AssociationScheme({self.describe()})"


# Axioms


def _validate_relation(relation: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """
    Check AS1-AS4 by counting

    Returns:
        Tuple of (intersection tensor p[i][j][k], transpose permutation)

    Raises:
        SchemeAxiomError: With the failing axiom and a witness pair
    """
    if relation.ndim != 2 or relation.shape[0] != relation.shape[1] or relation.shape[0] < 2:
        raise SchemeAxiomError('AS2', relation.shape, "relation table must be square with |X| >= 2")
    size = relation.shape[0]
    if relation.min() < 0:
        x, y = np.argwhere(relation < 0)[0]
        raise SchemeAxiomError('AS2', (int(x), int(y)), "negative class label")
    diagonal = np.diag(relation)
    bad = np.flatnonzero(diagonal != 0)
    if bad.size:
        x = int(bad[0])
        raise SchemeAxiomError('AS1', (x, x), f"r({x},{x}) = {int(diagonal[x])}")
    s = int(relation.max())
    if s < 1:
        raise SchemeAxiomError('AS2', None, "at least one non-identity class is required")
    for label in range(s + 1):
        if not np.any(relation == label):
            raise SchemeAxiomError('AS2', label, f"class {label} is empty")
    off_diagonal = (relation == 0) & ~np.eye(size, dtype=bool)
    if off_diagonal.any():
        x, y = np.argwhere(off_diagonal)[0]
        raise SchemeAxiomError('AS1', (int(x), int(y)), "distinct points in class 0")

    transposed = relation.T
    transpose_map = []
    for label in range(s + 1):
        images = np.unique(transposed[relation == label])
        if images.size != 1:
            x, y = np.argwhere(relation == label)[0]
            raise SchemeAxiomError('AS3', (int(x), int(y)), f"transpose of class {label} is not a class")
        transpose_map.append(int(images[0]))
    if sorted(transpose_map) != list(range(s + 1)):
        raise SchemeAxiomError('AS3', tuple(transpose_map), "class transposes do not permute the classes")

    adjacency = np.stack([(relation == label).astype(np.int64) for label in range(s + 1)])
    intersection = np.zeros((s + 1, s + 1, s + 1), dtype=np.int64)
    for i in range(s + 1):
        for j in range(s + 1):
            product = adjacency[i] @ adjacency[j]
            if not np.array_equal(product, adjacency[j] @ adjacency[i]):
                x, y = np.argwhere(product != adjacency[j] @ adjacency[i])[0]
                raise SchemeAxiomError('AS4', (int(x), int(y)), f"A_{i} A_{j} != A_{j} A_{i}")
            for k in range(s + 1):
                counts = product[relation == k]
                if counts.min() != counts.max():
                    pairs = np.argwhere(relation == k)
                    first = tuple(int(v) for v in pairs[0])
                    other = tuple(int(v) for v in pairs[int(np.argmax(counts != counts[0]))])
                    raise SchemeAxiomError(
                        'AS4', (first, other), f"p_{i}{j}^{k} depends on the pair in R_{k}"
                    )
                intersection[i, j, k] = counts[0]
    return intersection, tuple(transpose_map)


def _second_eigenmatrix(P: CycMatrix, size: int) -> CycMatrix:
    level = P[0][0].level
    one = CyclotomicNumber.one(level)
    zero = CyclotomicNumber.zero(level)
    try:
        inv = inverse(P, one, zero)
    except SingularMatrixError as e:
        raise SchemeAxiomError('PQ', None, f"first eigenmatrix is singular: {e}")
    Q = [[value * size for value in row] for row in inv]
    scaled = [[one * size if i == j else zero for j in range(len(P))] for i in range(len(P))]
    if mat_mul(P, Q) != scaled or mat_mul(Q, P) != scaled:
        raise SchemeAxiomError('PQ', None, "PQ = QP = |X| I does not hold")
    return Q


def _check_eigenmatrix(P: CycMatrix, valencies: Sequence[int]) -> None:
    for i, value in enumerate(P[0]):
        if value != valencies[i]:
            raise SchemeAxiomError('PQ', (0, i), f"row 0 of P must list the valencies, got {value}")
    for j, row in enumerate(P):
        if row[0] != 1:
            raise SchemeAxiomError('PQ', (j, 0), "column 0 of P must be all ones")


def _krein_tensor(scheme: AssociationScheme) -> List[List[List[CyclotomicNumber]]]:
    P, Q, size = scheme.P, scheme.Q, scheme.size
    r = scheme.classes + 1
    tensor = []
    for i in range(r):
        plane = []
        for j in range(r):
            products = [Q[l][i] * Q[l][j] for l in range(r)]
            row = []
            for k in range(r):
                total = CyclotomicNumber.zero(scheme.level)
                for l in range(r):
                    if P[k][l] and products[l]:
                        total = total + P[k][l] * products[l]
                value = total / size
                if not value.is_real() or value.sign() < 0:
                    raise SchemeAxiomError('KREIN', (i, j, k), f"q_{i}{j}^{k} = {value} is not a non-negative real")
                row.append(value)
            plane.append(row)
        tensor.append(plane)
    return tensor


# Builders


def _translation_relation(group: FiniteAbelianGroup, element_class: np.ndarray) -> np.ndarray:
    # r(x, y) = class of y - x
    differences = group.addition_table[group.negation]
    return element_class[differences]


def build_translation_scheme(group: FiniteAbelianGroup, classes: Sequence[Sequence[int]],
                             name: Optional[str] = None,
                             descriptor: Optional[Dict[str, Any]] = None) -> AssociationScheme:
    """
    Translation scheme from a partition of the group

    Args:
        group: The alphabet
        classes: Element-index lists X_0 = [0], X_1, ..., X_s in label order
        name: Display name
        descriptor: Descriptor echoed into reports

    Returns:
        Validated AssociationScheme whose P comes from exact character sums

    Raises:
        SchemeAxiomError: If the partition is not a commutative translation scheme
    """
    classes = tuple(tuple(sorted(int(x) for x in members)) for members in classes)
    if not classes or classes[0] != (0,):
        raise SchemeAxiomError('AS1', None, "class 0 must be exactly {0}")
    seen = sorted(x for members in classes for x in members)
    if seen != list(range(group.order)):
        raise SchemeAxiomError('AS2', None, "classes must partition the group")
    element_class = np.zeros(group.order, dtype=np.int64)
    for label, members in enumerate(classes):
        element_class[list(members)] = label
    relation = _translation_relation(group, element_class)
    intersection, transpose_map = _validate_relation(relation)

    # Characters with equal eigenvalue vectors form one dual class
    grouped: Dict[Tuple, List[int]] = {}
    vectors: Dict[Tuple, List[CyclotomicNumber]] = {}
    for e in range(group.order):
        row = [character_sum_by_index(group, e, members) for members in classes]
        key = tuple(value.coefficients for value in row)
        grouped.setdefault(key, []).append(e)
        vectors.setdefault(key, row)
    if len(grouped) != len(classes):
        raise SchemeAxiomError(
            'AS4', None, f"{len(grouped)} eigenspaces for {len(classes)} classes"
        )
    negation = group.negation
    order = sorted(grouped, key=lambda key: min(int(negation[e]) for e in grouped[key]))
    dual_classes = tuple(tuple(grouped[key]) for key in order)
    P = [vectors[key] for key in order]

    valencies = [len(members) for members in classes]
    _check_eigenmatrix(P, valencies)
    class_set = SchemeClassSet(group, classes, dual_classes)
    scheme = AssociationScheme(
        name or f"translation scheme on {group.describe()}",
        relation, P, intersection, transpose_map, class_set, descriptor,
    )
    for j, members in enumerate(dual_classes):
        if len(members) != scheme.multiplicities[j]:
            raise SchemeAxiomError('DUAL', j, f"|X*_{j}| = {len(members)} but Q_0{j} = {scheme.multiplicities[j]}")
    krein_parameters(scheme)
    logger.info(f"Built {scheme.describe()}")
    return scheme


def build_group_scheme(group: FiniteAbelianGroup) -> AssociationScheme:
    """Group association scheme: one class per non-zero element."""
    classes = [[0]] + [[x] for x in range(1, group.order)]
    return build_translation_scheme(
        group, classes, f"group scheme of {group.describe()}",
        {'type': 'group', 'factors': group.to_descriptor()},
    )


def build_cycle_scheme(k: int) -> AssociationScheme:
    """
    Ordinary k-cycle: classes {0}, {+-1}, ..., {+-floor(k/2)} on Z_k

    Raises:
        SchemeAxiomError: If k < 3
    """
    if k < 3:
        raise SchemeAxiomError('AS2', k, f"cycle schemes need k >= 3, got {k}")
    group = FiniteAbelianGroup((k,))
    classes = [[0]] + [sorted({i, (-i) % k}) for i in range(1, k // 2 + 1)]
    return build_translation_scheme(group, classes, f"{k}-cycle scheme", {'type': 'cycle', 'k': k})


def build_trivial_scheme(q: int, group: Optional[FiniteAbelianGroup] = None) -> AssociationScheme:
    """
    1-class scheme on q points, P = Q = [[1, q-1], [1, -1]]

    The points carry the structure of the given group (Z_q by default) so the
    scheme stays a translation scheme.
    """
    if q < 2:
        raise SchemeAxiomError('AS2', q, f"trivial schemes need q >= 2, got {q}")
    group = group or FiniteAbelianGroup((q,))
    if group.order != q:
        raise SchemeAxiomError('AS2', q, f"group {group.describe()} does not have order {q}")
    descriptor: Dict[str, Any] = {'type': 'trivial', 'q': q}
    if group.factors != (q,):
        descriptor['group'] = group.to_descriptor()
    return build_translation_scheme(
        group, [[0], list(range(1, q))], f"1-class scheme on {q} points", descriptor
    )


def _rational_eigenmatrix(intersection: np.ndarray, valencies: Sequence[int]) -> CycMatrix:
    r = intersection.shape[0]
    # (M_i)_{kj} = p_ij^k; rows of P are the common left eigenvectors
    regular = [intersection[i].T for i in range(r)]
    x = Symbol('x')
    for family in _SEPARATING_COEFFICIENTS:
        combined = sum(family(i) * regular[i] for i in range(r))
        transposed = Matrix(combined.T.tolist())
        _, factors = transposed.charpoly(x).factor_list()
        if any(f.degree() > 1 for f, _ in factors):
            raise NonRationalSchemeError("Bose-Mesner algebra does not split over Q")
        if len(factors) != r or any(mult > 1 for _, mult in factors):
            continue
        rows = []
        for f, _ in factors:
            a, b = f.all_coeffs()
            eigenvalue = -Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q))
            shifted = [
                [Fraction(int(v)) - (eigenvalue if i == j else 0) for j, v in enumerate(line)]
                for i, line in enumerate(combined.T.tolist())
            ]
            vector = null_space(shifted)[0]
            if not vector[0]:
                raise NonRationalSchemeError("eigenvector with vanishing trivial coordinate")
            rows.append([value / vector[0] for value in vector])
        trivial = [row for row in rows if row == [Fraction(v) for v in valencies]]
        if len(trivial) != 1:
            raise SchemeAxiomError('PQ', None, "no eigenvector matches the valencies")
        others = sorted((row for row in rows if row is not trivial[0]), key=lambda row: row[1:], reverse=True)
        ordered = trivial + others
        return [[CyclotomicNumber.from_rational(v) for v in row] for row in ordered]
    raise NonRationalSchemeError("could not separate the primitive idempotents with rational combinations")


def build_from_table(relation: Sequence[Sequence[int]], group: Optional[FiniteAbelianGroup] = None,
                     name: Optional[str] = None) -> AssociationScheme:
    """
    Scheme from an explicit relation table

    Args:
        relation: |X| x |X| table with entries 0..s
        group: Optional abelian structure on X; the table must then be
            translation invariant and the character path is used

    Raises:
        SchemeAxiomError: Axiom violation with witness
        NonRationalSchemeError: Eigenvalues outside Q without a group
    """
    table = np.array(relation, dtype=np.int64)
    if table.ndim != 2:
        raise SchemeAxiomError('AS2', None, "relation must be a 2-dimensional table")
    intersection, transpose_map = _validate_relation(table)
    if group is not None:
        if group.order != table.shape[0]:
            raise SchemeAxiomError('AS2', None, f"table size {table.shape[0]} != |{group.describe()}|")
        element_class = table[0]
        expected = _translation_relation(group, element_class)
        if not np.array_equal(expected, table):
            x, y = np.argwhere(expected != table)[0]
            raise SchemeAxiomError('TRANSLATION', (int(x), int(y)), "table is not translation invariant")
        s = int(table.max())
        classes = [np.flatnonzero(element_class == label).tolist() for label in range(s + 1)]
        return build_translation_scheme(
            group, classes, name or f"table scheme on {group.describe()}",
        )
    valencies = [int(np.count_nonzero(table[0] == label)) for label in range(int(table.max()) + 1)]
    P = _rational_eigenmatrix(intersection, valencies)
    _check_eigenmatrix(P, valencies)
    scheme = AssociationScheme(name or f"table scheme on {table.shape[0]} points",
                               table, P, intersection, transpose_map)
    krein_parameters(scheme)
    logger.info(f"Built {scheme.describe()}")
    return scheme


def scheme_from_descriptor(descriptor: Dict[str, Any]) -> AssociationScheme:
    """
    Build a scheme from its JSON descriptor

    Raises:
        SchemeAxiomError: On an unknown type or a malformed descriptor
    """
    kind = descriptor.get('type')
    try:
        if kind == 'group':
            return build_group_scheme(FiniteAbelianGroup(tuple(descriptor['factors'])))
        if kind == 'cycle':
            return build_cycle_scheme(int(descriptor['k']))
        if kind == 'trivial':
            group = FiniteAbelianGroup(tuple(descriptor['group'])) if 'group' in descriptor else None
            return build_trivial_scheme(int(descriptor['q']), group)
        if kind == 'table':
            group = FiniteAbelianGroup(tuple(descriptor['group'])) if 'group' in descriptor else None
            table = descriptor['relation']
            if 'size' in descriptor and len(table) != int(descriptor['size']):
                raise SchemeAxiomError('AS2', None, f"relation has {len(table)} rows, size says {descriptor['size']}")
            scheme = build_from_table(table, group)
            if 'classes' in descriptor and scheme.classes != int(descriptor['classes']):
                raise SchemeAxiomError('AS2', None, f"relation has {scheme.classes} classes, descriptor says {descriptor['classes']}")
            return scheme
    except KeyError as e:
        raise SchemeAxiomError('DESCRIPTOR', None, f"scheme descriptor is missing {e}")
    raise SchemeAxiomError('DESCRIPTOR', kind, "unknown scheme type")


# Parameters


def intersection_numbers(scheme: AssociationScheme) -> np.ndarray:
    """p[i][j][k], validated during construction."""
    return scheme.intersection


def krein_parameters(scheme: AssociationScheme) -> List[List[List[CyclotomicNumber]]]:
    """q[i][j][k] = |X|^-1 sum_l P_kl Q_li Q_lj, each checked real and non-negative."""
    return scheme.krein


def class_transpose(scheme: AssociationScheme) -> Tuple[int, ...]:
    """Permutation i -> i' with R_i' = R_i transposed."""
    return scheme.transpose_map


def hamming_fusion(scheme: AssociationScheme) -> AssociationScheme:
    """The 1-class scheme on the same points, keeping any group structure."""
    if scheme.group is not None:
        return build_trivial_scheme(scheme.size, scheme.group)
    table = (np.arange(scheme.size)[:, None] != np.arange(scheme.size)[None, :]).astype(np.int64)
    return build_from_table(table, name=f"1-class scheme on {scheme.size} points")


def dual_scheme(scheme: AssociationScheme) -> AssociationScheme:
    """
    Scheme on the character group with classes X*_j

    The double dual is identified with the original through x -> -x; P* = Q is
    checked under that identification.

    Raises:
        SchemeAxiomError: If the input is not a translation scheme or P* != Q
    """
    if not scheme.is_translation:
        raise SchemeAxiomError('DUAL', None, "dual schemes exist only for translation schemes")
    class_set = scheme.class_set
    group = class_set.group
    dual = build_translation_scheme(
        group, class_set.dual_classes, f"dual of {scheme.name}",
    )
    for a, members in enumerate(dual.class_set.dual_classes):
        b = class_set.class_of(int(group.negation[members[0]]))
        if dual.P[a] != scheme.Q[b]:
            raise SchemeAxiomError('DUAL', a, "P* differs from Q")
    logger.debug(f"Dual of {scheme.name} verified")
    return dual
