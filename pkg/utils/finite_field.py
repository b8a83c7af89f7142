"""
Finite field arithmetic for amscheme
GF(p^m) on top of sympy's dense galoistools, with a primitive generator x
"""
import itertools
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_irreducible_p,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


class GaloisField:
    """
    GF(p^m) as F_p[x] / (f) with f monic irreducible and x primitive

    Elements are tuples of coefficients, highest degree first, without
    leading zeros (the empty tuple is zero), matching galoistools' dense form.
    """

    def __init__(self, p: int, m: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"Field characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"Extension degree must be positive, got {m}")
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = _primitive_modulus(p, m)
        logger.debug(f"GF({p}^{m}) built with modulus {self.modulus}")

    @property
    def zero(self) -> Element:
        return ()

    @property
    def one(self) -> Element:
        return (1,)

    @property
    def generator(self) -> Element:
        return self.reduce([1, 0])

    def reduce(self, poly: Sequence[int]) -> Element:
        remainder = gf_rem(gf_strip([c % self.p for c in poly]), list(self.modulus), self.p, ZZ)
        return tuple(int(c) for c in gf_strip(remainder))

    def constant(self, value: int) -> Element:
        return self.reduce([value])

    def add(self, a: Element, b: Element) -> Element:
        return tuple(int(c) for c in gf_add(list(a), list(b), self.p, ZZ))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple(int(c) for c in gf_sub(list(a), list(b), self.p, ZZ))

    def mul(self, a: Element, b: Element) -> Element:
        return self.reduce(gf_mul(list(a), list(b), self.p, ZZ))

    def power(self, a: Element, exponent: int) -> Element:
        if not a:
            return self.zero if exponent else self.one
        exponent %= self.order - 1
        return tuple(int(c) for c in gf_pow_mod(list(a), exponent, list(self.modulus), self.p, ZZ))

    def generator_power(self, exponent: int) -> Element:
        return self.power(self.generator, exponent)

    def element_of_order(self, n: int) -> Element:
        """An element of multiplicative order exactly n (n divides p^m - 1)."""
        if (self.order - 1) % n:
            raise ValueError(f"{n} does not divide {self.order - 1}")
        return self.generator_power((self.order - 1) // n)

    def poly_mul(self, f: Sequence[Element], g: Sequence[Element]) -> List[Element]:
        """Product of polynomials with field coefficients, lowest degree first."""
        product = [self.zero] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if not a:
                continue
            for j, b in enumerate(g):
                if b:
                    product[i + j] = self.add(product[i + j], self.mul(a, b))
        return product

    def __repr__(self) -> str:
        return f"GaloisField({self.p}, {self.m})"


@lru_cache(maxsize=None)
def _primitive_modulus(p: int, m: int) -> Tuple[int, ...]:
    """First monic irreducible of degree m, in lexicographic order, for which x is primitive."""
    order = p ** m - 1
    prime_factors = list(factorint(order)) if order > 1 else []
    for tail in itertools.product(range(p), repeat=m):
        if not tail[-1]:
            continue
        candidate = [1] + list(tail)
        if not gf_irreducible_p(candidate, p, ZZ):
            continue
        if all(gf_pow_mod([1, 0], order // r, candidate, p, ZZ) != [1] for r in prime_factors):
            return tuple(candidate)
    raise ValueError(f"No primitive polynomial of degree {m} over GF({p})")


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n (gcd(a, n) = 1)."""
    value = a % n
    k = 1
    while value != 1:
        value = (value * a) % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not a unit modulo {n}")
    return k
