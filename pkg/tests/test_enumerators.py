"""
Unit tests for weight enumerators and the exact MacWilliams transform
"""
from fractions import Fraction

import pytest

from abelian_alphabet import FiniteAbelianGroup
from block_code import BlockCode, dual_code, weight_distribution
from enumerators import (
    TransformInvariantError,
    WeightEnumerator,
    complete_weight_enumerator,
    fuse_enumerator,
    hamming_weight_enumerator,
    macwilliams_transform,
    standard_scheme,
    substitute,
    symmetrized_weight_enumerator,
)
from extension import Composition
from scheme_core import build_cycle_scheme, build_group_scheme, build_trivial_scheme, dual_scheme


@pytest.mark.unit
class TestWeightEnumerator:
    """Tests for the WeightEnumerator polynomial"""

    def test_zero_terms_dropped(self):
        """Test that zero coefficients are not stored"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (1, 2): 0})
        assert list(w.terms) == [(3, 0)]

    def test_degree_checked(self):
        """Test that every monomial has degree n"""
        with pytest.raises(ValueError):
            WeightEnumerator(3, 2, {(2, 0): 1})
        with pytest.raises(ValueError):
            WeightEnumerator(3, 1, {(3,): 1})

    def test_from_distribution(self):
        """Test the map alpha -> xi_0^alpha_0 xi^alpha"""
        w = WeightEnumerator.from_distribution({Composition(3, (0,)): 1, Composition(3, (3,)): 1}, 3, 1)
        assert w.terms == {(3, 0): 1, (0, 3): 1}
        assert w.coefficient(Composition(3, (3,))) == 1
        assert w.coefficient(Composition(3, (1,))) == 0
        assert w.total() == 2

    def test_render(self):
        """Test the text form"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (1, 2): 3})
        assert w.render() == 'xi0^3 + 3*xi0*xi1^2'
        assert w.render(['x', 'y']) == 'x^3 + 3*x*y^2'
        assert WeightEnumerator(2, 2).render() == '0'

    def test_equality_and_rationalized(self):
        """Test equality across coefficient types"""
        a = WeightEnumerator(2, 2, {(2, 0): Fraction(4, 2), (0, 2): 1})
        b = WeightEnumerator(2, 2, {(2, 0): 2, (0, 2): 1})
        assert a == b
        assert a.rationalized().terms[(2, 0)] == 2
        assert isinstance(a.rationalized().terms[(2, 0)], int)

    def test_to_sympy(self):
        """Test the sympy Poly view"""
        poly = WeightEnumerator(3, 2, {(3, 0): 1, (1, 2): Fraction(1, 3)}).to_sympy()
        assert poly.total_degree() == 3
        assert len(poly.terms()) == 2


@pytest.mark.unit
class TestMacWilliamsTransform:
    """Tests for the exact transform"""

    def test_repetition_code(self):
        """Test xi0^3 + xi1^3 -> xi0^3 + 3 xi0 xi1^2"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (0, 3): 1})
        transformed = macwilliams_transform(w, build_trivial_scheme(2), 2)
        assert transformed == WeightEnumerator(3, 2, {(3, 0): 1, (1, 2): 3})

    def test_size_defaults_to_total(self):
        """Test that |C| is read from the enumerator when omitted"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (0, 3): 1})
        assert macwilliams_transform(w, build_trivial_scheme(2)) == macwilliams_transform(w, build_trivial_scheme(2), 2)

    def test_non_additive_code_gives_fractions(self):
        """Test the transform of the distance distribution 1 + 2 y^2"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (1, 2): 2})
        transformed = macwilliams_transform(w, build_trivial_scheme(2), 3)
        assert transformed.terms == {(3, 0): 1, (2, 1): Fraction(1, 3), (1, 2): Fraction(1, 3), (0, 3): 1}

    def test_negative_coefficient_refused(self):
        """Test that a polynomial no code has is caught"""
        w = WeightEnumerator(2, 2, {(2, 0): 1, (0, 2): 3})
        with pytest.raises(TransformInvariantError):
            macwilliams_transform(w, build_trivial_scheme(2), 4)
        unchecked = macwilliams_transform(w, build_trivial_scheme(2), 4, check=False)
        assert unchecked.terms[(1, 1)] == -1

    def test_variable_count_checked(self):
        """Test the variable count against the scheme"""
        w = WeightEnumerator(3, 2, {(3, 0): 1, (0, 3): 1})
        with pytest.raises(ValueError):
            macwilliams_transform(w, build_cycle_scheme(5), 2)

    def test_pentagon_transform_is_rational(self, xq11_f5, settings):
        """Test the swe of XQ11 over F5 maps to a non-negative rational enumerator of size 5^6"""
        w = xq11_f5.weight_enumerator(settings)
        transformed = macwilliams_transform(w, xq11_f5.scheme, xq11_f5.size)
        assert transformed.is_rational()
        assert transformed.total() == 5 ** 12 // xq11_f5.size

    def test_transform_matches_dual_enumeration(self, settings):
        """Test a Z4 code in its group scheme against its enumerated dual"""
        code = BlockCode(build_group_scheme(FiniteAbelianGroup((4,))), 3, generators=[[1, 2, 3], [0, 2, 2]])
        transformed = macwilliams_transform(code.weight_enumerator(settings), code.scheme, code.size)
        dual = dual_code(code)
        enumerated = {alpha: count for alpha, count in weight_distribution(dual, settings=settings).distribution.items()}
        assert {alpha: value for alpha, value in transformed.distribution().items()} == enumerated

    def test_substitute_identity(self):
        """Test that the identity substitution returns the enumerator"""
        w = WeightEnumerator(2, 2, {(2, 0): 1, (0, 2): 3})
        assert substitute(w, [[1, 0], [0, 1]]) == w
        with pytest.raises(ValueError):
            substitute(w, [[1, 0]])


@pytest.mark.unit
class TestFusion:
    """Tests for fusing enumerator variables"""

    def test_fuse_to_hamming(self):
        """Test cwe -> hwe on Z3"""
        w = WeightEnumerator(2, 3, {(2, 0, 0): 1, (0, 1, 1): 2, (1, 1, 0): 3})
        fused = fuse_enumerator(w, [[0], [1, 2]])
        assert fused.terms == {(2, 0): 1, (0, 2): 2, (1, 1): 3}

    def test_drop_variable(self):
        """Test setting a variable to zero"""
        w = WeightEnumerator(2, 3, {(2, 0, 0): 1, (0, 1, 1): 2, (1, 1, 0): 3})
        fused = fuse_enumerator(w, [[0], [1]], dropped=[2])
        assert fused.terms == {(2, 0): 1, (1, 1): 3}

    def test_invalid_partitions(self):
        """Test overlapping parts and a moved variable 0"""
        w = WeightEnumerator(2, 3, {(2, 0, 0): 1})
        with pytest.raises(ValueError):
            fuse_enumerator(w, [[0], [1, 2], [2]])
        with pytest.raises(ValueError):
            fuse_enumerator(w, [[0, 1], [2]])


@pytest.mark.unit
class TestStandardEnumerators:
    """Tests for the cwe / swe / hwe of additive codes"""

    def test_standard_schemes(self, xq11_f5):
        """Test the class counts of the standard schemes over F5"""
        assert standard_scheme(xq11_f5, 'cwe').classes == 4
        assert standard_scheme(xq11_f5, 'swe').classes == 2
        assert standard_scheme(xq11_f5, 'hwe').classes == 1
        with pytest.raises(ValueError):
            standard_scheme(xq11_f5, 'lee')

    def test_klein_swe_scheme(self, xq11_f4):
        """Test that every element of Z2 x Z2 is its own pair {x, -x}"""
        assert standard_scheme(xq11_f4, 'swe').classes == 3

    def test_fused_enumerators_agree(self, settings):
        """Test that fusing the cwe gives the swe and the hwe"""
        code = BlockCode(build_cycle_scheme(5), 4, generators=[[1, 2, 3, 4]])
        cwe = complete_weight_enumerator(code, settings)
        swe = symmetrized_weight_enumerator(code, settings)
        hwe = hamming_weight_enumerator(code, settings)
        assert fuse_enumerator(cwe, [[0], [1, 4], [2, 3]]) == swe
        assert fuse_enumerator(cwe, [[0], [1, 2, 3, 4]]) == hwe
        assert hwe.terms == {(4, 0): 1, (0, 4): 4}

    def test_hamming_enumerator_of_dual_scheme(self, repetition3, settings):
        """Test the hwe of the even-weight code"""
        dual = dual_code(repetition3)
        assert dual.scheme.P == dual_scheme(repetition3.scheme).P
        assert hamming_weight_enumerator(dual, settings).terms == {(3, 0): 1, (1, 2): 3}
