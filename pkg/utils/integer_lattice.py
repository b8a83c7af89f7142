"""
Integer lattice helpers for amscheme
Echelon bases of subgroups of Z_k1 x ... x Z_kM and Smith-form integer kernels for dual codes
"""
import logging
import math
from typing import List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

logger = logging.getLogger(__name__)

Vector = List[int]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended gcd

    Returns:
        Tuple (s, t, g) with s*a + t*b = g = gcd(a, b) >= 0
    """
    s, t, g = ZZ.gcdex(ZZ(a), ZZ(b))
    s, t, g = int(s), int(t), int(g)
    if g < 0:
        s, t, g = -s, -t, -g
    return s, t, g


def _reduce(vector: Sequence[int], moduli: Sequence[int]) -> Vector:
    return [int(v) % k for v, k in zip(vector, moduli)]


def lattice_basis(vectors: Sequence[Sequence[int]], moduli: Sequence[int]) -> List[Tuple[Vector, int]]:
    """
    Echelon generators of the subgroup spanned by vectors in Z_k1 x ... x Z_kM

    Works on the lattice spanned by the lifted vectors together with k_j e_j.
    Column by column a pivot row with entry g_j | k_j is produced by unimodular
    gcd steps; the rest of the pool is cleared in that column. The subgroup is
    then exactly {sum_j c_j p_j : 0 <= c_j < k_j / g_j}, without repetitions.

    Args:
        vectors: Residue vectors of length M
        moduli: k_1..k_M

    Returns:
        List of (pivot row, k_j / g_j) for the columns whose quotient exceeds 1
    """
    moduli = [int(k) for k in moduli]
    pool = [_reduce(v, moduli) for v in vectors]
    pool = [v for v in pool if any(v)]
    basis: List[Tuple[Vector, int]] = []
    for j, k_j in enumerate(moduli):
        pivot = [0] * len(moduli)
        pivot[j] = k_j
        remaining = []
        for v in pool:
            if not v[j]:
                remaining.append(v)
                continue
            a, b = pivot[j], v[j]
            s, t, g = xgcd(a, b)
            combined = [s * x + t * y for x, y in zip(pivot, v)]
            cleared = [(b // g) * x - (a // g) * y for x, y in zip(pivot, v)]
            pivot = combined
            cleared = _reduce(cleared, moduli)
            if any(cleared):
                remaining.append(cleared)
        pool = remaining
        g_j = pivot[j]
        pivot = pivot[:j + 1] + _reduce(pivot[j + 1:], moduli[j + 1:])
        order = k_j // g_j
        if order > 1:
            pivot[j] = g_j % k_j
            basis.append((pivot, order))
    return basis


def subgroup_order(vectors: Sequence[Sequence[int]], moduli: Sequence[int]) -> int:
    return math.prod(order for _, order in lattice_basis(vectors, moduli))


def subgroup_order_snf(vectors: Sequence[Sequence[int]], moduli: Sequence[int]) -> int:
    """
    Subgroup order from the invariant factors of [vectors; diag(k)]

    Independent of lattice_basis; used as a cross-check.
    """
    width = len(moduli)
    rows = [[int(x) for x in v] for v in vectors]
    for j, k in enumerate(moduli):
        row = [0] * width
        row[j] = int(k)
        rows.append(row)
    matrix = DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), width), ZZ)
    index = math.prod(int(abs(f)) for f in invariant_factors(matrix))
    return math.prod(int(k) for k in moduli) // index


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[Vector]:
    """
    Z-basis of {x : matrix . x = 0}

    With S A T = D the Smith normal form (S, T unimodular), A x = 0 exactly when
    D (T^-1 x) = 0, so the columns of T facing zero columns of D are a basis
    of the kernel lattice, not just of a full-rank sublattice of it.
    """
    if not matrix:
        return []
    rows = len(matrix)
    width = len(matrix[0])
    a = DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix], (rows, width), ZZ)
    smith, _, transform = smith_normal_decomp(a)
    diagonal = smith.to_list()
    columns = transform.to_list()
    free = [j for j in range(width) if all(not diagonal[i][j] for i in range(rows))]
    kernel = [[int(columns[i][j]) for i in range(width)] for j in free]
    logger.debug(f"Integer kernel of a {rows}x{width} matrix has rank {len(kernel)}")
    return kernel


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True when the Z-span of vectors is a direct summand of Z^m (every invariant factor is 1)."""
    if not vectors:
        return True
    width = len(vectors[0])
    matrix = DomainMatrix([[ZZ(int(x)) for x in v] for v in vectors], (len(vectors), width), ZZ)
    return all(abs(int(f)) == 1 for f in invariant_factors(matrix))
