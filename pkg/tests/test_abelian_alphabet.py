"""
Unit tests for finite abelian group alphabets and their characters
"""
import numpy as np
import pytest

from abelian_alphabet import (
    AlphabetError,
    FiniteAbelianGroup,
    character_sum,
    character_sum_by_index,
    character_value,
    group_add,
)
from utils.cyclotomic import CyclotomicNumber


@pytest.mark.unit
class TestFiniteAbelianGroup:
    """Tests for FiniteAbelianGroup"""

    def test_invalid_factors(self):
        """Test that empty and trivial factors are refused"""
        with pytest.raises(AlphabetError):
            FiniteAbelianGroup(())
        with pytest.raises(AlphabetError):
            FiniteAbelianGroup((1,))

    def test_order_exponent_rank(self):
        """Test basic invariants of Z2 x Z4"""
        group = FiniteAbelianGroup((2, 4))
        assert group.order == 8
        assert group.exponent == 4
        assert group.rank == 2
        assert group.describe() == 'Z2 x Z4'

    def test_index_round_trip(self):
        """Test lexicographic indexing with the first factor most significant"""
        group = FiniteAbelianGroup((2, 2))
        assert [group.residues_of(i) for i in range(4)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        for i in range(group.order):
            assert group.index_of(group.residues_of(i)) == i

    def test_index_out_of_range(self):
        """Test that element indices are range-checked"""
        with pytest.raises(AlphabetError):
            FiniteAbelianGroup((3,)).residues_of(3)

    def test_addition_table_and_negation(self):
        """Test the cached tables against element arithmetic"""
        group = FiniteAbelianGroup((4,))
        assert group.addition_table[3, 2] == 1
        assert list(group.negation) == [0, 3, 2, 1]
        assert np.array_equal(group.addition_table, group.addition_table.T)

    def test_klein_group_is_its_own_negative(self):
        """Test that every element of Z2 x Z2 has order at most 2"""
        group = FiniteAbelianGroup((2, 2))
        assert list(group.negation) == [0, 1, 2, 3]

    def test_element_arithmetic(self):
        """Test GroupElement addition, negation and rendering"""
        group = FiniteAbelianGroup((3,))
        a, b = group.element((2,)), group.element((2,))
        assert (a + b).residues == (1,)
        assert (-a).residues == (1,)
        assert (a - b).is_zero()
        assert str(a) == '2'
        assert str(FiniteAbelianGroup((2, 2)).element((1, 0))) == '(1,0)'

    def test_elements_from_different_groups(self):
        """Test that mixing groups raises AlphabetError"""
        a = FiniteAbelianGroup((3,)).element((1,))
        b = FiniteAbelianGroup((4,)).element((1,))
        with pytest.raises(AlphabetError):
            group_add(a, b)
        with pytest.raises(AlphabetError):
            character_value(a, b)


@pytest.mark.unit
class TestCharacters:
    """Tests for the symmetric pairing and character sums"""

    def test_character_value_on_z4(self):
        """Test eps_1(1) = i on Z4"""
        group = FiniteAbelianGroup((4,))
        value = character_value(group.element((1,)), group.element((1,)))
        assert value == CyclotomicNumber.root_of_unity(4)

    def test_pairing_is_symmetric(self):
        """Test eps_x(y) = eps_y(x)"""
        group = FiniteAbelianGroup((2, 4))
        assert np.array_equal(group.pairing_table, group.pairing_table.T)

    def test_trivial_character_sum_is_size(self):
        """Test that eps_0 sums to the size of the set"""
        group = FiniteAbelianGroup((5,))
        elements = [group.element((1,)), group.element((4,))]
        assert character_sum(group.zero, elements) == 2

    def test_orthogonality(self):
        """Test that a non-trivial character sums to zero over the group"""
        group = FiniteAbelianGroup((2, 2))
        for e in range(1, group.order):
            assert character_sum(group.character(e), group.elements()) == 0

    def test_sum_over_symmetric_set_is_real(self):
        """Test that the cycle class {1, 4} of Z5 gives a real eigenvalue"""
        group = FiniteAbelianGroup((5,))
        value = character_sum_by_index(group, 1, [1, 4])
        assert value.is_real()
        assert not value.is_rational()

    def test_index_and_element_paths_agree(self):
        """Test character_sum_by_index against character_sum"""
        group = FiniteAbelianGroup((4,))
        members = [1, 2]
        for e in range(group.order):
            direct = character_sum(group.character(e), [group.element_at(x) for x in members])
            assert character_sum_by_index(group, e, members) == direct

    def test_empty_set_refused(self):
        """Test that character sums need a non-empty set"""
        group = FiniteAbelianGroup((3,))
        with pytest.raises(AlphabetError):
            character_sum(group.zero, [])
