"""
QR Codes for amscheme
Extended quadratic residue codes over F_2, F_3, F_4 and F_5, and the Hensel-lifted Z_4 Golay code
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Set

from abelian_alphabet import FiniteAbelianGroup
from block_code import BlockCode, CodeError
from scheme_core import AssociationScheme, build_cycle_scheme, build_group_scheme
from utils.finite_field import Element, GaloisField, multiplicative_order

logger = logging.getLogger(__name__)

SUPPORTED_LENGTHS = (7, 11, 23)
SUPPORTED_ALPHABETS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}


def quadratic_residues(ell: int) -> Set[int]:
    return {(r * r) % ell for r in range(1, ell)}


def alphabet_group(q: int) -> FiniteAbelianGroup:
    """Additive group of F_q; F_4 is Z_2 x Z_2 with a + b*omega at residues (a, b)."""
    if q not in SUPPORTED_ALPHABETS:
        raise CodeError(f"Unsupported alphabet F_{q}")
    return FiniteAbelianGroup((2, 2)) if q == 4 else FiniteAbelianGroup((q,))


def _extension_factor(ell: int, p: int) -> int:
    """
    gamma in F_p with 1 + ell gamma^2 = 0

    The root with ell gamma = 1 is preferred, so the all-ones word extends to
    the all-ones word; otherwise the smallest root is used.
    """
    if p == 2:
        return 1
    roots = [g for g in range(1, p) if (1 + ell * g * g) % p == 0]
    if not roots:
        raise CodeError(f"1 + {ell} gamma^2 = 0 has no solution in F_{p}")
    for g in roots:
        if (ell * g) % p == 1:
            return g
    return roots[0]


def _subfield_symbols(field: GaloisField, q: int) -> Dict[Element, int]:
    """Big-field representation of each F_q element -> symbol index in alphabet_group(q)."""
    if q == 4:
        omega = field.element_of_order(3)
        omega_squared = field.mul(omega, omega)
        return {field.zero: 0, omega: 1, field.one: 2, omega_squared: 3}
    return {field.constant(c): c for c in range(q)}


def _generator_polynomial(field: GaloisField, ell: int) -> List[Element]:
    """prod over quadratic residues r of (x - beta^r), lowest degree first."""
    beta = field.element_of_order(ell)
    poly = [field.one]
    for r in sorted(quadratic_residues(ell)):
        root = field.power(beta, r)
        poly = field.poly_mul(poly, [field.sub(field.zero, root), field.one])
    return poly


def build_extended_qr(ell: int, q: int, scheme: Optional[AssociationScheme] = None) -> BlockCode:
    """
    Extended quadratic residue code of length ell + 1 over F_q

    The cyclic code generated by prod_(r in QR) (x - beta^r) is extended by
    c_inf = gamma * sum c_i with 1 + ell gamma^2 = 0 in F_q.

    Args:
        ell: Prime length of the cyclic code, one of 7, 11, 23
        q: Alphabet size 2, 3, 4 or 5, a quadratic residue modulo ell
        scheme: Scheme on the alphabet; the group scheme by default

    Raises:
        CodeError: On an unsupported length or alphabet
    """
    if ell not in SUPPORTED_LENGTHS:
        raise CodeError(f"Unsupported QR length {ell}, expected one of {SUPPORTED_LENGTHS}")
    if q not in SUPPORTED_ALPHABETS:
        raise CodeError(f"Unsupported alphabet F_{q}, expected one of {sorted(SUPPORTED_ALPHABETS)}")
    if q % ell not in quadratic_residues(ell):
        raise CodeError(f"{q} is not a quadratic residue modulo {ell}")
    p, e = SUPPORTED_ALPHABETS[q]
    m = math.lcm(e, multiplicative_order(p, ell))
    field = GaloisField(p, m)
    symbols = _subfield_symbols(field, q)
    generator = _generator_polynomial(field, ell)
    gamma = field.constant(_extension_factor(ell, p))

    scalars = [field.one]
    if q == 4:
        scalars.append(field.element_of_order(3))
    dimension = ell - (len(generator) - 1)
    rows = []
    for scalar in scalars:
        for shift in range(dimension):
            coefficients = [field.zero] * ell
            for i, c in enumerate(generator):
                coefficients[i + shift] = field.mul(scalar, c)
            total = field.zero
            for c in coefficients:
                total = field.add(total, c)
            coefficients.append(field.mul(gamma, total))
            try:
                rows.append(tuple(symbols[c] for c in coefficients))
            except KeyError:
                raise CodeError(f"Generator coefficients of XQ{ell} do not lie in F_{q}")
    group = alphabet_group(q)
    scheme = scheme or build_group_scheme(group)
    code = BlockCode(scheme, ell + 1, generators=rows, name=f"XQ{ell} over F{q}")
    logger.info(f"Built {code.name} with {code.size} words over {scheme.name}")
    return code


def _binary_golay_generator() -> List[int]:
    field = GaloisField(2, multiplicative_order(2, 23))
    poly = _generator_polynomial(field, 23)
    return [1 if c else 0 for c in poly]


def hensel_lift(binary: Sequence[int]) -> List[int]:
    """
    Graeffe lift of a binary factor of x^n - 1 to Z_4

    With g = e + o split into even and odd powers, G(x^2) = +-(e^2 - o^2) mod 4,
    the sign chosen to make G monic.
    """
    even = [c if i % 2 == 0 else 0 for i, c in enumerate(binary)]
    odd = [c if i % 2 else 0 for i, c in enumerate(binary)]

    def square(poly: Sequence[int]) -> List[int]:
        out = [0] * (2 * len(poly) - 1)
        for i, a in enumerate(poly):
            if a:
                for j, b in enumerate(poly):
                    out[i + j] += a * b
        return out

    difference = [(a - b) % 4 for a, b in zip(square(even), square(odd))]
    lifted = difference[::2]
    while lifted and not lifted[-1]:
        lifted.pop()
    if lifted[-1] == 3:
        lifted = [(-c) % 4 for c in lifted]
    return lifted


def build_lifted_golay(scheme: Optional[AssociationScheme] = None) -> BlockCode:
    """
    Hensel-lifted Z_4 Golay code of length 24, 4^12 words

    Cyclic rows x^i G(x), i = 0..11, extended by c_inf = -sum c_i mod 4. The
    default scheme is the 4-cycle, whose enumerator is the swe.
    """
    lifted = hensel_lift(_binary_golay_generator())
    rows = []
    for shift in range(23 - (len(lifted) - 1)):
        coefficients = [0] * 23
        for i, c in enumerate(lifted):
            coefficients[i + shift] = c
        coefficients.append((-sum(coefficients)) % 4)
        rows.append(tuple(coefficients))
    scheme = scheme or build_cycle_scheme(4)
    code = BlockCode(scheme, 24, generators=rows, name="lifted Golay code over Z4")
    logger.info(f"Built {code.name} with {code.size} words")
    return code
