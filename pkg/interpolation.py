"""
Interpolation for amscheme
Exact minimal degree interpolation: mu(S) by rank, the de Boor-Ron least space,
unique interpolants, and grid-embedding upper bounds with their constructive basis
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Rational, symbols

from extension import enumerate_compositions
from utils.exact_linalg import SingularMatrixError, mat_mul, rank, solve
from utils.type_converter import convert_matrix, convert_point, format_exact

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
Exponents = Tuple[int, ...]


class InterpolationError(ArithmeticError):
    """Singular evaluation matrix or a broken interpolation invariant"""


class EmbeddingError(ValueError):
    """A grid embedding does not carry the point set"""

    def __init__(self, message: str, point: Optional[Point] = None):
        self.point = point
        super().__init__(message)


@dataclass(frozen=True)
class PointSet:
    """Finite set of distinct points in Q^s, in the order given"""

    dimension: int
    points: Tuple[Point, ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"Point dimension must be positive, got {self.dimension}")
        points = tuple(convert_point(p) for p in self.points)
        seen = set()
        for p in points:
            if len(p) != self.dimension:
                raise ValueError(f"Point {_show(p)} is not in dimension {self.dimension}")
            if p in seen:
                raise ValueError(f"Point {_show(p)} appears twice")
            seen.add(p)
        object.__setattr__(self, 'points', points)

    @classmethod
    def from_iterable(cls, points: Iterable[Sequence[Any]], dimension: Optional[int] = None) -> 'PointSet':
        points = [convert_point(p) for p in points]
        if dimension is None:
            if not points:
                raise ValueError("An empty point set needs an explicit dimension")
            dimension = len(points[0])
        return cls(dimension, tuple(points))

    @classmethod
    def empty(cls, dimension: int) -> 'PointSet':
        return cls(dimension, ())

    def transformed(self, matrix: Sequence[Sequence[Any]], shift: Optional[Sequence[Any]] = None) -> 'PointSet':
        """A z + b for every z."""
        matrix = convert_matrix(matrix)
        shift = convert_point(shift) if shift is not None else (Fraction(0),) * self.dimension
        images = []
        for p in self.points:
            images.append(tuple(sum((a * x for a, x in zip(row, p)), Fraction(0)) + b
                                for row, b in zip(matrix, shift)))
        return PointSet(len(matrix), tuple(images))

    def without(self, excluded: Iterable[Sequence[Any]]) -> 'PointSet':
        removed = {convert_point(p) for p in excluded}
        return PointSet(self.dimension, tuple(p for p in self.points if p not in removed))

    def to_list(self) -> List[List[str]]:
        return [[format_exact(x) for x in p] for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point: Sequence[Any]) -> bool:
        return convert_point(point) in self.points


def _show(point: Sequence[Fraction]) -> str:
    return '(' + ','.join(format_exact(x) for x in point) + ')'


def variables(dimension: int) -> tuple:
    """xi1, ..., xis as sympy symbols."""
    names = symbols(' '.join(f"xi{i}" for i in range(1, dimension + 1)))
    return names if isinstance(names, tuple) else (names,)


def _rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _fraction(value: Any) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def polynomial(terms: Mapping[Exponents, Fraction], dimension: int) -> Poly:
    gens = variables(dimension)
    terms = {e: _rational(Fraction(c)) for e, c in terms.items() if c}
    if not terms:
        return Poly(0, *gens, domain='QQ')
    return Poly.from_dict(terms, *gens, domain='QQ')


def evaluate_polynomial(poly: Poly, point: Sequence[Any]) -> Fraction:
    """Exact value of poly at a rational point."""
    point = convert_point(point)
    total = Fraction(0)
    for exponents, coefficient in poly.terms():
        term = _fraction(coefficient)
        if not term:
            continue
        for x, e in zip(point, exponents):
            if e:
                term *= x ** e
        total += term
    return total


def _monomials(degree: int, dimension: int) -> List[Exponents]:
    """Exponent vectors of total degree <= degree, graded, descending lexicographic within a degree."""
    if dimension == 1:
        return [(d,) for d in range(degree + 1)]
    return [c.alpha for c in enumerate_compositions(degree, dimension)]


def _power(point: Point, exponents: Exponents) -> Fraction:
    value = Fraction(1)
    for x, e in zip(point, exponents):
        if e:
            value *= x ** e
    return value


def mu_rank(points: PointSet) -> int:
    """
    mu(S) as the least m for which sum_(k<=m) (z.xi)^k, z in S, are linearly independent

    The coefficient of xi^beta in (z.xi)^|beta| is the multinomial of beta
    times z^beta; the multinomial only scales a column, so the rank is read
    from the matrix [z^beta]. The empty set has mu = -1.
    """
    if not len(points):
        return -1
    size = len(points)
    for m in range(size):
        monomials = _monomials(m, points.dimension)
        if len(monomials) < size:
            continue
        matrix = [[_power(z, beta) for beta in monomials] for z in points]
        if rank(matrix) == size:
            logger.debug(f"mu_rank: {size} points in dimension {points.dimension} have mu = {m}")
            return m
    raise InterpolationError(f"{size} distinct points were not separated by degree {size - 1}")


@dataclass
class LeastSpace:
    """
    The least space of a point set: a degree-reducing interpolation space

    basis[j] is homogeneous of degree degrees[j]; mu is the largest degree.
    """

    points: PointSet
    basis: List[Poly]
    degrees: List[int]

    @property
    def mu(self) -> int:
        return max(self.degrees) if self.degrees else -1

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def evaluation_matrix(self) -> List[List[Fraction]]:
        """V[i][j] = basis_j(z_i)."""
        return [[evaluate_polynomial(f, z) for f in self.basis] for z in self.points]

    def degree_profile(self) -> Dict[int, int]:
        """Number of basis polynomials per degree."""
        profile: Dict[int, int] = {}
        for d in self.degrees:
            profile[d] = profile.get(d, 0) + 1
        return dict(sorted(profile.items()))

    def render(self) -> List[str]:
        return [str(f.as_expr()) for f in self.basis]


def least_space(points: PointSet) -> LeastSpace:
    """
    Basis of span{f_low : f in span of exp(z.xi), z in S} by degree-graded elimination

    Rows hold the Taylor coefficients z^beta / beta! of exp(z.xi) up to
    degree |S| - 1. Degree blocks are processed in order; rows independent in
    the current block give basis polynomials (their block part), the others
    are cleared in the block and passed on.

    Raises:
        InterpolationError: If the result fails unique interpolation on S
    """
    if not len(points):
        return LeastSpace(points, [], [])
    size = len(points)
    s = points.dimension
    top = size - 1
    monomials = _monomials(top, s)
    blocks: Dict[int, List[int]] = {}
    for j, beta in enumerate(monomials):
        blocks.setdefault(sum(beta), []).append(j)
    weights = [Fraction(1, _multi_factorial(beta)) for beta in monomials]
    rows = [[_power(z, beta) * w for beta, w in zip(monomials, weights)] for z in points]

    basis: List[Poly] = []
    degrees: List[int] = []
    for degree in range(top + 1):
        if not rows:
            break
        columns = blocks[degree]
        chosen = []
        for column in columns:
            pivot = next((r for r in range(len(rows)) if r not in chosen and rows[r][column]), None)
            if pivot is None:
                continue
            lead = rows[pivot][column]
            for r in range(len(rows)):
                if r == pivot or not rows[r][column]:
                    continue
                if r in chosen:
                    continue
                factor = rows[r][column] / lead
                rows[r] = [a - factor * b if b else a for a, b in zip(rows[r], rows[pivot])]
            chosen.append(pivot)
        for r in chosen:
            terms = {monomials[j]: rows[r][j] for j in columns if rows[r][j]}
            basis.append(polynomial(terms, s))
            degrees.append(degree)
        rows = [row for r, row in enumerate(rows) if r not in chosen]
    if rows:
        raise InterpolationError(f"Least space elimination left {len(rows)} rows unconsumed")
    space = LeastSpace(points, basis, degrees)
    if rank(space.evaluation_matrix) != size:
        raise InterpolationError("Least space basis does not interpolate uniquely")
    if space.mu > size - 1:
        raise InterpolationError(f"mu = {space.mu} exceeds |S| - 1 = {size - 1}")
    logger.debug(f"least_space: degrees {space.degree_profile()} for {size} points")
    return space


def _multi_factorial(beta: Exponents) -> int:
    value = 1
    for b in beta:
        value *= factorial(b)
    return value


def interpolate(space: LeastSpace, values: Mapping[Sequence[Any], Any]) -> Poly:
    """
    The unique g in the space with g(z) = values[z] for every z in S

    Raises:
        ValueError: If the keys of values are not exactly the points
        InterpolationError: If the evaluation matrix is singular
    """
    prescribed = {convert_point(z): Fraction(v) for z, v in values.items()}
    if set(prescribed) != set(space.points.points):
        raise ValueError("Interpolation values must be given at exactly the points of the set")
    if not space.basis:
        return polynomial({}, space.points.dimension)
    rhs = [prescribed[z] for z in space.points]
    try:
        coefficients = solve(space.evaluation_matrix, rhs)
    except SingularMatrixError as e:
        raise InterpolationError(f"Evaluation matrix is singular: {e}")
    result = polynomial({}, space.points.dimension)
    for c, f in zip(coefficients, space.basis):
        if c:
            result = result + f * _rational(c)
    return result


@dataclass
class GridEmbedding:
    """
    Linear automorphism sigma with per-axis node scalars z_(i,l) and degree bound m

    nodes[i][l] is z_(i,l); nodes on one axis are distinct.
    """

    sigma: List[List[Fraction]]
    nodes: List[List[Fraction]]
    m: int

    def __post_init__(self):
        self.sigma = convert_matrix(self.sigma)
        self.nodes = [list(convert_point(axis)) for axis in self.nodes]
        if self.m < 0:
            raise EmbeddingError(f"Degree bound must be non-negative, got {self.m}")
        if len(self.sigma) != len(self.nodes) or any(len(row) != len(self.nodes) for row in self.sigma):
            raise EmbeddingError(f"sigma must be {len(self.nodes)}x{len(self.nodes)} to match the node axes")
        for i, axis in enumerate(self.nodes):
            if len(set(axis)) != len(axis):
                raise EmbeddingError(f"Repeated node scalar on axis {i + 1}: {[format_exact(z) for z in axis]}")
        if rank(self.sigma) != len(self.sigma):
            raise EmbeddingError("sigma is not invertible")

    @property
    def dimension(self) -> int:
        return len(self.nodes)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'GridEmbedding':
        try:
            return cls(data['sigma'], data['nodes'], int(data['m']))
        except KeyError as e:
            raise EmbeddingError(f"Embedding is missing field {e}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sigma': [[format_exact(x) for x in row] for row in self.sigma],
            'nodes': [[format_exact(z) for z in axis] for axis in self.nodes],
            'm': self.m,
        }

    def apply(self, point: Point) -> Point:
        return tuple(mat_mul(self.sigma, [[x] for x in point])[i][0] for i in range(self.dimension))

    def grid_point(self, alpha: Exponents) -> Point:
        return tuple(self.nodes[i][a] for i, a in enumerate(alpha))

    def grid(self) -> List[Exponents]:
        """alpha with |alpha| <= m that have a node on every axis."""
        return [alpha for alpha in _monomials(self.m, self.dimension)
                if all(a < len(self.nodes[i]) for i, a in enumerate(alpha))]


@dataclass
class GridCertificate:
    """Verified mu(S) <= m, with the grid index of each sigma(z) and optionally the basis f_alpha"""

    m: int
    assignment: Dict[Point, Exponents]
    basis: Optional[Dict[Exponents, Poly]] = None
    images: Dict[Point, Point] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'assignment': [
                {'point': [format_exact(x) for x in z], 'image': [format_exact(x) for x in self.images.get(z, ())],
                 'alpha': list(alpha)}
                for z, alpha in self.assignment.items()
            ],
            'basis_verified': self.basis is not None,
        }


def grid_upper_bound(points: PointSet, embedding: GridEmbedding, materialize: bool = False) -> GridCertificate:
    """
    Certify mu(S) <= m from sigma(S) inside the grid {z_alpha : |alpha| <= m}

    With materialize set, builds f_alpha = g_alpha - sum_(|beta| > |alpha|) g_alpha(z_beta) f_beta
    from the highest degree down, where g_alpha is the product over axes of
    the Lagrange factors (xi_i - z_(i,l)) / (z_(i,alpha_i) - z_(i,l)), l < alpha_i,
    and checks f_alpha(z_gamma) = delta on the whole grid.

    Raises:
        EmbeddingError: If some sigma(z) is not a grid point with |alpha| <= m
        InterpolationError: If the constructed basis fails the delta check
    """
    if points.dimension != embedding.dimension:
        raise EmbeddingError(f"Points live in dimension {points.dimension}, embedding in {embedding.dimension}")
    assignment: Dict[Point, Exponents] = {}
    images: Dict[Point, Point] = {}
    for z in points:
        image = embedding.apply(z)
        alpha = []
        for i, y in enumerate(image):
            if y not in embedding.nodes[i]:
                raise EmbeddingError(f"sigma{_show(z)} = {_show(image)} has no node on axis {i + 1}", point=z)
            alpha.append(embedding.nodes[i].index(y))
        if sum(alpha) > embedding.m:
            raise EmbeddingError(f"sigma{_show(z)} = {_show(image)} sits at grid degree {sum(alpha)} > {embedding.m}",
                                 point=z)
        assignment[z] = tuple(alpha)
        images[z] = image
    certificate = GridCertificate(embedding.m, assignment, images=images)
    if materialize:
        certificate.basis = _grid_basis(embedding)
    logger.info(f"Grid embedding certifies mu <= {embedding.m} for {len(points)} points")
    return certificate


def _grid_basis(embedding: GridEmbedding) -> Dict[Exponents, Poly]:
    s = embedding.dimension
    gens = variables(s)
    grid = embedding.grid()
    basis: Dict[Exponents, Poly] = {}
    for alpha in sorted(grid, key=sum, reverse=True):
        g = Poly(1, *gens, domain='QQ')
        for i, a in enumerate(alpha):
            for l in range(a):
                denominator = embedding.nodes[i][a] - embedding.nodes[i][l]
                factor = Poly(gens[i] - _rational(embedding.nodes[i][l]), *gens, domain='QQ')
                g = g * factor * _rational(1 / denominator)
        f = g
        for beta, f_beta in basis.items():
            if sum(beta) > sum(alpha):
                value = evaluate_polynomial(g, embedding.grid_point(beta))
                if value:
                    f = f - f_beta * _rational(value)
        basis[alpha] = f
    for alpha, f in basis.items():
        if f.total_degree() > embedding.m:
            raise InterpolationError(f"f_{alpha} has degree {f.total_degree()} > {embedding.m}")
        for gamma in grid:
            expected = Fraction(1) if gamma == alpha else Fraction(0)
            if evaluate_polynomial(f, embedding.grid_point(gamma)) != expected:
                raise InterpolationError(f"f_{alpha} does not vanish correctly at grid index {gamma}")
    return basis
