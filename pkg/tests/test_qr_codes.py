"""
Unit tests for extended quadratic residue codes and the lifted Golay code
"""
import pytest

from abelian_alphabet import FiniteAbelianGroup
from block_code import CodeError, torsion_code, weight_distribution
from qr_codes import (
    _binary_golay_generator,
    alphabet_group,
    build_extended_qr,
    build_lifted_golay,
    hensel_lift,
    quadratic_residues,
)
from scheme_core import build_trivial_scheme, hamming_fusion


def _weights(code, settings):
    fused = code.with_scheme(hamming_fusion(code.scheme))
    return {alpha.weight: count for alpha, count in weight_distribution(fused, settings=settings).distribution.items()}


@pytest.mark.unit
class TestQuadraticResidueCodes:
    """Tests for build_extended_qr"""

    def test_quadratic_residues(self):
        """Test the residues modulo 11 and 23"""
        assert quadratic_residues(11) == {1, 3, 4, 5, 9}
        assert 2 in quadratic_residues(23)

    def test_alphabet_groups(self):
        """Test that F4 is read as Z2 x Z2"""
        assert alphabet_group(4) == FiniteAbelianGroup((2, 2))
        assert alphabet_group(5) == FiniteAbelianGroup((5,))
        with pytest.raises(CodeError):
            alphabet_group(7)

    @pytest.mark.parametrize("q,size", [(3, 729), (4, 4096), (5, 15625)])
    def test_sizes(self, q, size):
        """Test |XQ11| = q^6 over F3, F4 and F5"""
        code = build_extended_qr(11, q)
        assert code.n == 12
        assert code.size == size
        assert code.check_size()

    @pytest.mark.parametrize("ell,q,n,size", [(7, 2, 8, 16), (11, 3, 12, 729), (11, 5, 12, 15625), (23, 2, 24, 4096)])
    def test_prime_field_codes_build(self, ell, q, n, size):
        """Test that codes over prime fields map every coefficient, zero included, to a symbol"""
        code = build_extended_qr(ell, q)
        assert code.n == n
        assert code.size == size
        assert all(len(g) == n for g in code.generators)
        assert any(0 in g for g in code.generators)

    def test_unsupported_parameters(self):
        """Test unsupported lengths, alphabets and non-residues"""
        with pytest.raises(CodeError):
            build_extended_qr(13, 3)
        with pytest.raises(CodeError):
            build_extended_qr(11, 7)
        with pytest.raises(CodeError):
            build_extended_qr(11, 2)

    def test_ternary_golay_weights(self, xq11_f3, settings):
        """Test the Hamming weights of the extended ternary Golay code"""
        assert _weights(xq11_f3, settings) == {0: 1, 6: 264, 9: 440, 12: 24}

    def test_binary_golay_weights(self, settings):
        """Test 1 + 759 y^8 + 2576 y^12 + 759 y^16 + y^24"""
        golay = build_extended_qr(23, 2, build_trivial_scheme(2))
        assert golay.size == 4096
        distribution = weight_distribution(golay, settings=settings).distribution
        assert {alpha.weight: count for alpha, count in distribution.items()} == {
            0: 1, 8: 759, 12: 2576, 16: 759, 24: 1,
        }

    def test_golden_quaternary_distribution(self, xq11_f4, settings, golden):
        """Test the cwe of XQ11 over F4 against the stored table"""
        expected = {tuple(e['alpha']): e['count'] for e in golden('xq11_f4_cwe')['distribution']}
        distribution = weight_distribution(xq11_f4, settings=settings).distribution
        assert {alpha.alpha: count for alpha, count in distribution.items()} == expected

    def test_golden_quinary_distribution(self, xq11_f5, settings, golden):
        """Test the swe of XQ11 over F5 against the stored table"""
        expected = {tuple(e['alpha']): e['count'] for e in golden('xq11_f5_swe')['distribution']}
        distribution = weight_distribution(xq11_f5, settings=settings).distribution
        assert {alpha.alpha: count for alpha, count in distribution.items()} == expected

    def test_quaternary_minimum_weight(self, xq11_f4, settings):
        """Test d = 6 over F4"""
        weights = _weights(xq11_f4, settings)
        assert min(w for w in weights if w) == 6
        assert sum(weights.values()) == 4096


@pytest.mark.unit
class TestLiftedGolay:
    """Tests for the Hensel lift to Z4"""

    def test_lift_of_linear_factor(self):
        """Test that x + 1 over F2 lifts to x - 1 over Z4"""
        assert hensel_lift([1, 1]) == [3, 1]

    def test_lift_reduces_to_binary_generator(self):
        """Test that the lifted Golay generator is monic and reduces mod 2"""
        binary = _binary_golay_generator()
        lifted = hensel_lift(binary)
        assert len(lifted) == 12
        assert lifted[-1] == 1
        assert [c % 2 for c in lifted] == binary

    def test_lifted_code_size_and_torsion(self):
        """Test |C| = 4^12 and that the torsion code is the binary Golay code"""
        code = build_lifted_golay()
        assert code.n == 24
        assert code.size == 4 ** 12
        assert code.scheme.classes == 2
        torsion = torsion_code(code)
        assert torsion.size == 4096
