"""
Enumerators for amscheme
Weight enumerators as sparse homogeneous polynomials, the exact MacWilliams transform,
and fusion of enumerator variables (cwe -> swe -> hwe)
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Rational, symbols

from extension import Composition
from scheme_core import build_cycle_scheme, build_group_scheme, build_translation_scheme, hamming_fusion
from utils.cyclotomic import CyclotomicNumber

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
LinearForm = Sequence[Any]


class TransformInvariantError(ArithmeticError):
    """A transformed coefficient is not a non-negative real"""


class WeightEnumerator:
    """
    Homogeneous polynomial sum_alpha a_alpha xi_0^alpha_0 ... xi_s^alpha_s of degree n

    Terms are keyed by the full exponent tuple (alpha_0, ..., alpha_s); zero
    coefficients are never stored. Coefficients are ints, Fractions or
    CyclotomicNumbers.
    """

    def __init__(self, n: int, variables: int, terms: Optional[Mapping[Exponents, Any]] = None):
        if variables < 2:
            raise ValueError(f"A weight enumerator needs at least 2 variables, got {variables}")
        self.n = n
        self.variables = variables
        self.terms: Dict[Exponents, Any] = {}
        for exponents, value in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != variables or sum(exponents) != n or min(exponents) < 0:
                raise ValueError(f"Exponent {exponents} does not fit degree {n} in {variables} variables")
            if value:
                self.terms[exponents] = value

    @classmethod
    def from_distribution(cls, distribution: Mapping[Composition, Any], n: int, s: int) -> 'WeightEnumerator':
        return cls(n, s + 1, {alpha.full(): count for alpha, count in distribution.items()})

    @property
    def classes(self) -> int:
        return self.variables - 1

    def coefficient(self, alpha: Composition) -> Any:
        return self.terms.get(alpha.full(), 0)

    def distribution(self) -> Dict[Composition, Any]:
        return {Composition(self.n, exponents[1:]): value for exponents, value in sorted(self.terms.items(), key=_term_order)}

    def support(self) -> List[Composition]:
        return list(self.distribution())

    def total(self) -> Any:
        total: Any = 0
        for value in self.terms.values():
            total = total + value
        return total

    def is_rational(self) -> bool:
        return all(not isinstance(v, CyclotomicNumber) or v.is_rational() for v in self.terms.values())

    def rationalized(self) -> 'WeightEnumerator':
        """Same polynomial with every coefficient as int or Fraction."""
        terms = {}
        for exponents, value in self.terms.items():
            if isinstance(value, CyclotomicNumber):
                value = value.to_fraction()
            value = Fraction(value)
            terms[exponents] = int(value) if value.denominator == 1 else value
        return WeightEnumerator(self.n, self.variables, terms)

    def scaled(self, factor: Any) -> 'WeightEnumerator':
        return WeightEnumerator(self.n, self.variables, {e: v * factor for e, v in self.terms.items()})

    def to_sympy(self) -> Poly:
        """sympy Poly in xi0..xis; rational coefficients only."""
        names = symbols(' '.join(f"xi{i}" for i in range(self.variables)))
        rational = self.rationalized()
        terms = {e: Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v
                 for e, v in rational.terms.items()}
        return Poly.from_dict(terms, *names) if terms else Poly(0, *names)

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names or [f"xi{i}" for i in range(self.variables)])
        parts = []
        for exponents, value in sorted(self.terms.items(), key=_term_order):
            monomial = '*'.join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exponents) if e
            )
            if isinstance(value, CyclotomicNumber) and not value.is_rational():
                text = f"({value})"
            else:
                value = value.to_fraction() if isinstance(value, CyclotomicNumber) else value
                text = str(value)
            if not monomial:
                parts.append(text)
            elif text == '1':
                parts.append(monomial)
            else:
                parts.append(f"{text}*{monomial}")
        return ' + '.join(parts) if parts else '0'

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        if (self.n, self.variables) != (other.n, other.variables) or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def __repr__(self) -> str:
        return f"WeightEnumerator(n={self.n}, variables={self.variables}, terms={len(self.terms)})"


def _term_order(item: Tuple[Exponents, Any]) -> Tuple[int, Tuple[int, ...]]:
    exponents = item[0]
    return (sum(exponents[1:]), tuple(-e for e in exponents[1:]))


def _as_field_values(forms: Sequence[LinearForm]) -> List[List[Any]]:
    """Rational linear forms become Fractions so expansion avoids cyclotomic arithmetic."""
    if all(not isinstance(v, CyclotomicNumber) or v.is_rational() for form in forms for v in form):
        return [[v.to_fraction() if isinstance(v, CyclotomicNumber) else Fraction(v) for v in form] for form in forms]
    return [list(form) for form in forms]


def _multiply_linear(poly: Dict[Exponents, Any], form: Sequence[Any]) -> Dict[Exponents, Any]:
    product: Dict[Exponents, Any] = {}
    for exponents, value in poly.items():
        for j, c in enumerate(form):
            if not c:
                continue
            raised = exponents[:j] + (exponents[j] + 1,) + exponents[j + 1:]
            term = value * c
            if raised in product:
                product[raised] = product[raised] + term
            else:
                product[raised] = term
    return {e: v for e, v in product.items() if v}


def substitute(w: WeightEnumerator, forms: Sequence[LinearForm]) -> WeightEnumerator:
    """
    Replace each variable xi_i by the linear form sum_j forms[i][j] xi_j and expand

    Each monomial is expanded by repeated multiplication with one linear form,
    sharing prefixes between monomials through a cache.

    Raises:
        ValueError: If the number of forms does not match the variables
    """
    if len(forms) != w.variables or any(len(form) != w.variables for form in forms):
        raise ValueError(f"Need {w.variables} linear forms of length {w.variables}")
    forms = _as_field_values(forms)
    zero_exponents = (0,) * w.variables
    cache: Dict[Exponents, Dict[Exponents, Any]] = {zero_exponents: {zero_exponents: Fraction(1)}}

    def power_product(exponents: Exponents) -> Dict[Exponents, Any]:
        if exponents in cache:
            return cache[exponents]
        # peel one factor off the last non-zero variable
        i = max(k for k, e in enumerate(exponents) if e)
        smaller = exponents[:i] + (exponents[i] - 1,) + exponents[i + 1:]
        result = _multiply_linear(power_product(smaller), forms[i])
        cache[exponents] = result
        return result

    expanded: Dict[Exponents, Any] = {}
    for exponents in sorted(w.terms):
        coefficient = w.terms[exponents]
        for key, value in power_product(exponents).items():
            term = value * coefficient
            expanded[key] = expanded[key] + term if key in expanded else term
    return WeightEnumerator(w.n, w.variables, {e: v for e, v in expanded.items() if v})


def _normalize(value: Any) -> Any:
    if isinstance(value, CyclotomicNumber) and value.is_rational():
        value = value.to_fraction()
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def macwilliams_transform(w: WeightEnumerator, scheme, size: Any = None, check: bool = True) -> WeightEnumerator:
    """
    Exact transform size^-1 w(xi Q^T)

    Args:
        w: Enumerator in the s+1 class variables of the scheme
        scheme: AssociationScheme supplying Q
        size: Scaling |C|; defaults to the coefficient sum of w
        check: Require every transformed coefficient to be a non-negative real

    Returns:
        Enumerator in the variables of the primitive idempotents

    Raises:
        ValueError: Variable count mismatch
        TransformInvariantError: A coefficient is negative or non-real while check is set
    """
    if w.variables != scheme.classes + 1:
        raise ValueError(f"Enumerator has {w.variables} variables, scheme has {scheme.classes + 1} classes")
    size = w.total() if size is None else size
    if not size:
        raise ValueError("Cannot scale a transform by zero")
    forms = [[scheme.Q[i][j] for j in range(scheme.classes + 1)] for i in range(scheme.classes + 1)]
    transformed = substitute(w, forms)
    scale = _normalize(size)
    scale = scale.inverse() if isinstance(scale, CyclotomicNumber) else Fraction(1) / Fraction(scale)
    terms = {}
    for exponents, value in transformed.terms.items():
        value = _normalize(value * scale)
        if check:
            if isinstance(value, CyclotomicNumber):
                if not value.is_real() or value.sign() < 0:
                    raise TransformInvariantError(f"coefficient of {exponents} is {value}")
            elif value < 0:
                raise TransformInvariantError(f"coefficient of {exponents} is {value}")
        terms[exponents] = value
    logger.debug(f"Transformed enumerator with {len(w.terms)} terms into {len(terms)} terms")
    return WeightEnumerator(w.n, w.variables, terms)


def fuse_enumerator(w: WeightEnumerator, parts: Sequence[Sequence[int]],
                    dropped: Iterable[int] = ()) -> WeightEnumerator:
    """
    Identify variables within each part and set dropped variables to zero

    Args:
        w: Enumerator to fuse
        parts: parts[k] lists the old variables merged into new variable k;
            parts[0] must be [0]
        dropped: Old variables substituted by 0

    Raises:
        ValueError: If parts and dropped do not partition the variables
    """
    dropped = sorted(set(int(d) for d in dropped))
    parts = [sorted(int(v) for v in part) for part in parts]
    used = sorted(v for part in parts for v in part) + dropped
    if sorted(used) != list(range(w.variables)) or len(used) != len(set(used)):
        raise ValueError(f"Fusion {parts} (dropped {dropped}) is not a partition of {w.variables} variables")
    if not parts or parts[0] != [0]:
        raise ValueError("Variable 0 must stay alone in the first part")
    if any(not part for part in parts):
        raise ValueError("Fusion parts must be non-empty")
    target = {v: k for k, part in enumerate(parts) for v in part}
    fused: Dict[Exponents, Any] = {}
    for exponents, value in w.terms.items():
        if any(exponents[d] for d in dropped):
            continue
        new = [0] * len(parts)
        for v, e in enumerate(exponents):
            if e:
                new[target[v]] += e
        key = tuple(new)
        fused[key] = fused[key] + value if key in fused else value
    return WeightEnumerator(w.n, len(parts), {e: v for e, v in fused.items() if v})


# Enumerators of an additive code in the standard schemes of its alphabet

STANDARD_KINDS = ('cwe', 'swe', 'hwe')


def standard_scheme(code, kind: str):
    """
    Scheme whose weight enumerator is the cwe, swe or hwe of the code

    cwe: group scheme, one variable per element. swe: one variable per pair
    {x, -x} (the cycle scheme on Z_k). hwe: the 1-class scheme.

    Raises:
        ValueError: On an unknown kind, or cwe/swe for a code without a group
    """
    if kind == 'hwe':
        return hamming_fusion(code.scheme)
    if kind not in STANDARD_KINDS:
        raise ValueError(f"Unknown enumerator kind {kind!r}")
    group = code.group
    if group is None:
        raise ValueError(f"The {kind} needs a code over a translation scheme")
    if kind == 'cwe':
        return build_group_scheme(group)
    if len(group.factors) == 1 and group.order >= 3:
        return build_cycle_scheme(group.order)
    negation = group.negation
    orbits = sorted({tuple(sorted({x, int(negation[x])})) for x in range(group.order)})
    return build_translation_scheme(group, [list(orbit) for orbit in orbits],
                                    f"symmetrized scheme of {group.describe()}")


def complete_weight_enumerator(code, settings=None) -> WeightEnumerator:
    return code.with_scheme(standard_scheme(code, 'cwe')).weight_enumerator(settings)


def symmetrized_weight_enumerator(code, settings=None) -> WeightEnumerator:
    return code.with_scheme(standard_scheme(code, 'swe')).weight_enumerator(settings)


def hamming_weight_enumerator(code, settings=None) -> WeightEnumerator:
    """xi_0 for agreement, xi_1 for any difference."""
    return code.with_scheme(standard_scheme(code, 'hwe')).weight_enumerator(settings)
