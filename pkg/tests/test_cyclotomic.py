"""
Unit tests for exact cyclotomic arithmetic
"""
from fractions import Fraction

import pytest

from utils.cyclotomic import CyclotomicNumber, exact_sum, field_degree


@pytest.mark.unit
class TestCyclotomicNumber:
    """Tests for CyclotomicNumber"""

    def test_field_degree_is_totient(self):
        """Test the basis size of Q(zeta_N)"""
        assert field_degree(1) == 1
        assert field_degree(4) == 2
        assert field_degree(5) == 4
        assert field_degree(12) == 4

    def test_wrong_coefficient_count_rejected(self):
        """Test that a coefficient vector must match phi(N)"""
        with pytest.raises(ValueError):
            CyclotomicNumber(5, [1, 2])

    def test_fourth_root_squares_to_minus_one(self):
        """Test i * i = -1"""
        i = CyclotomicNumber.root_of_unity(4)
        assert i * i == -1
        assert (i * i).is_rational()

    def test_sum_of_nontrivial_cube_roots(self):
        """Test zeta_3 + zeta_3^2 = -1"""
        value = CyclotomicNumber.from_exponent_counts(3, {1: 1, 2: 1})
        assert value == -1

    def test_sum_of_all_fifth_roots_vanishes(self):
        """Test that the N-th roots of unity sum to zero"""
        value = CyclotomicNumber.from_exponent_counts(5, {k: 1 for k in range(5)})
        assert value.is_zero()
        assert not value

    def test_equality_across_levels(self):
        """Test that values compare after lifting to a common level"""
        minus_one = CyclotomicNumber.root_of_unity(2)
        assert minus_one == CyclotomicNumber.root_of_unity(4, 2)
        assert CyclotomicNumber.from_rational(3, 1) == CyclotomicNumber.from_rational(3, 12)

    def test_equality_with_plain_numbers(self):
        """Test comparison with ints and Fractions"""
        assert CyclotomicNumber.from_rational(Fraction(3, 5), 5) == Fraction(3, 5)
        assert CyclotomicNumber.one(4) == 1

    def test_mixed_level_addition(self):
        """Test adding values from different fields"""
        i = CyclotomicNumber.root_of_unity(4)
        w = CyclotomicNumber.root_of_unity(3)
        total = i + w
        assert total.level == 12
        assert total - w == i

    def test_galois_action(self):
        """Test zeta -> zeta^k"""
        z = CyclotomicNumber.root_of_unity(5)
        assert z.galois(2) == CyclotomicNumber.root_of_unity(5, 2)
        with pytest.raises(ValueError):
            z.galois(5)

    def test_conjugate(self):
        """Test complex conjugation of i"""
        i = CyclotomicNumber.root_of_unity(4)
        assert i.conjugate() == -i
        assert not i.is_real()

    def test_real_irrational_value(self):
        """Test 2cos(2pi/5) is real with the golden ratio relation x^2 + x - 1 = 0"""
        x = CyclotomicNumber.from_exponent_counts(5, {1: 1, 4: 1})
        assert x.is_real()
        assert not x.is_rational()
        assert x * x + x == 1
        assert x.sign() == 1
        assert (-x - 1).sign() == -1

    @pytest.mark.parametrize("k", [40, 41, 50, 51])
    def test_sign_below_float_resolution(self, k):
        """Test F(k+1) - F(k) phi = (-1)^k phi^-k, far below what the float shadow resolves"""
        fib = [0, 1]
        while len(fib) < k + 2:
            fib.append(fib[-1] + fib[-2])
        phi = CyclotomicNumber.from_exponent_counts(5, {1: 1, 4: 1}) + 1
        tiny = fib[k + 1] - fib[k] * phi
        assert not tiny.is_zero()
        assert tiny.sign() == (1 if k % 2 == 0 else -1)
        assert (-tiny).sign() == -tiny.sign()

    def test_inverse(self):
        """Test (1 + i)^-1 = (1 - i) / 2"""
        i = CyclotomicNumber.root_of_unity(4)
        value = 1 + i
        assert value.inverse() == (1 - i) / 2
        assert value * value.inverse() == 1

    def test_inverse_of_zero_raises(self):
        """Test that zero has no inverse"""
        with pytest.raises(ZeroDivisionError):
            CyclotomicNumber.zero(5).inverse()

    def test_division_and_power(self):
        """Test zeta^5 = 1 and zeta^-1 = zeta^4"""
        z = CyclotomicNumber.root_of_unity(5)
        assert z ** 5 == 1
        assert z ** -1 == CyclotomicNumber.root_of_unity(5, 4)
        assert 1 / z == z ** 4

    def test_to_fraction(self):
        """Test conversion of rational values"""
        assert CyclotomicNumber.from_rational(Fraction(-2, 3), 4).to_fraction() == Fraction(-2, 3)
        with pytest.raises(ValueError):
            CyclotomicNumber.root_of_unity(4).to_fraction()

    def test_str_and_decimal(self):
        """Test rendering in the power basis and the decimal shadow"""
        i = CyclotomicNumber.root_of_unity(4)
        assert str(i) == 'z4'
        assert str(1 - i) == '1 - z4'
        assert str(CyclotomicNumber.zero(3)) == '0'
        assert CyclotomicNumber.from_rational(Fraction(1, 4)).decimal(3) == '0.250'
        assert i.decimal(2) == '0.00+1.00i'

    def test_dict_round_trip(self):
        """Test to_dict / from_dict"""
        value = CyclotomicNumber(5, [Fraction(1, 2), 0, -3, 1])
        assert CyclotomicNumber.from_dict(value.to_dict()) == value

    def test_unhashable(self):
        """Test that values cannot be used as dictionary keys"""
        with pytest.raises(TypeError):
            hash(CyclotomicNumber.one(3))

    def test_exact_sum_keeps_rationals(self):
        """Test exact_sum on plain Fractions and on cyclotomic values"""
        assert exact_sum([Fraction(1, 2), Fraction(1, 3)]) == Fraction(5, 6)
        roots = [CyclotomicNumber.root_of_unity(4, k) for k in range(4)]
        assert exact_sum(roots) == 0
