"""
Unit tests for support multisets and exhaustive t-design checks
"""
from fractions import Fraction

import numpy as np
import pytest

from design_verify import (
    BlockMultiset,
    DesignCertificate,
    DesignError,
    DesignRefusal,
    class_designs,
    is_t_design,
    lambda_profile,
    max_design_t,
    subset_counts,
    supports_of_class,
    supports_of_classes,
    supports_of_weight,
)
from extension import Composition


@pytest.mark.unit
class TestBlockMultiset:
    """Tests for BlockMultiset"""

    def test_from_blocks(self):
        """Test 1-indexed blocks, repeated blocks and the bit layout"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2], [2, 1], [3, 4]])
        assert blocks.k == 2
        assert blocks.count == 3
        assert blocks.distinct == 2
        assert not blocks.is_simple
        assert sorted(sorted(b) for b in blocks.blocks()) == [[1, 2], [3, 4]]
        assert blocks.point_arrays().tolist() == [[0, 1], [2, 3]]

    def test_invalid_blocks(self):
        """Test empty input, mixed sizes and points out of range"""
        with pytest.raises(DesignError):
            BlockMultiset.from_blocks(4, [])
        with pytest.raises(DesignError):
            BlockMultiset.from_blocks(4, [[1, 2], [1, 2, 3]])
        with pytest.raises(DesignError):
            BlockMultiset.from_blocks(4, [[0, 1]])
        with pytest.raises(DesignError):
            BlockMultiset(65, 1, np.array([1]), np.array([1]))

    def test_merged(self):
        """Test that merging adds multiplicities"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2], [3, 4]])
        merged = blocks.merged(BlockMultiset.from_blocks(4, [[1, 2]]))
        assert merged.count == 3
        assert merged.distinct == 2
        with pytest.raises(DesignError):
            blocks.merged(BlockMultiset.from_blocks(4, [[1, 2, 3]]))


@pytest.mark.unit
class TestDesignChecks:
    """Tests for is_t_design and friends"""

    def test_refusal_witness(self):
        """Test two points met by different numbers of blocks"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2], [1, 3]])
        result = is_t_design(blocks, 1)
        assert isinstance(result, DesignRefusal)
        assert result.witness == (((1,), 2), ((2,), 1))
        assert result.to_dict()['witness'][1] == {'subset': [2], 'count': 1}

    def test_complete_design(self):
        """Test that all 2-subsets of 4 points form a 2-(4,2,1) design"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]])
        result = is_t_design(blocks, 2)
        assert isinstance(result, DesignCertificate)
        assert result.lambdas == [6, 3, 1]
        assert result.simple
        assert max_design_t(blocks) == 2

    def test_t_zero(self):
        """Test that every block multiset is a 0-design"""
        blocks = BlockMultiset.from_blocks(5, [[1, 2]])
        result = is_t_design(blocks, 0)
        assert result.lambdas == [1]
        assert max_design_t(blocks) == 0

    def test_bad_t(self):
        """Test t > k and t < 0"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2]])
        with pytest.raises(DesignError):
            is_t_design(blocks, 3)
        with pytest.raises(DesignError):
            is_t_design(blocks, -1)

    def test_subset_limit(self):
        """Test the max_subsets guard"""
        blocks = BlockMultiset.from_blocks(20, [list(range(1, 11))])
        with pytest.raises(DesignError):
            subset_counts(blocks, 5, max_subsets=1000)

    def test_lambda_profile(self):
        """Test lambda_i from lambda_t for a 3-(4,3,2) design"""
        blocks = BlockMultiset.from_blocks(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] * 2)
        assert lambda_profile(blocks, 3) == [8, 6, 4, 2]
        assert lambda_profile(blocks, 2, Fraction(4)) == [8, 6, 4]


@pytest.mark.unit
class TestCodeDesigns:
    """Tests for designs held by composition classes of codes"""

    def test_tetracode_weight_three(self, tetracode_words, settings):
        """Test that the 8 weight-3 words of the tetracode give a 3-(4,3,2) design"""
        blocks = supports_of_weight(tetracode_words, 3, settings=settings)
        assert blocks.count == 8
        assert blocks.distinct == 4
        result = is_t_design(blocks, 3)
        assert isinstance(result, DesignCertificate)
        assert result.lambda_t == 2
        assert result.lambdas == [8, 6, 4, 2]
        assert max_design_t(blocks) == 3

    def test_ternary_golay_minimum_weight(self, xq11_f3, settings):
        """Test the weight-6 supports of the ternary Golay code form a 5-(12,6,2) design"""
        blocks = supports_of_weight(xq11_f3, 6, settings=settings)
        assert blocks.count == 264
        assert blocks.distinct == 132
        result = is_t_design(blocks, 5, workers=2)
        assert isinstance(result, DesignCertificate)
        assert result.lambda_t == 2
        assert max_design_t(blocks) == 5

    def test_worker_count_does_not_matter(self, xq11_f3, settings):
        """Test subset_counts with one and several workers"""
        blocks = supports_of_weight(xq11_f3, 6, settings=settings)
        assert np.array_equal(subset_counts(blocks, 4, workers=1), subset_counts(blocks, 4, workers=4))

    def test_single_class(self, xq11_f3, settings):
        """Test one composition class of weight 9"""
        blocks = supports_of_class(xq11_f3, Composition(12, (6, 3)), settings=settings)
        assert blocks.count == 220
        assert isinstance(is_t_design(blocks, 3), DesignCertificate)

    def test_class_designs_at_certified_t(self, xq11_f3, settings):
        """Test that every nonzero class of XQ11 over F3 holds a 3-design"""
        results = class_designs(xq11_f3, 3, settings=settings)
        assert len(results) == 8
        assert all(isinstance(r, DesignCertificate) for r in results.values())

    def test_missing_class(self, xq11_f3, settings):
        """Test a composition no codeword has"""
        with pytest.raises(DesignError):
            supports_of_class(xq11_f3, Composition(12, (1, 0)), settings=settings)

    def test_classes_of_different_weights(self, xq11_f3, settings):
        """Test that mixed block sizes are refused"""
        with pytest.raises(DesignError):
            supports_of_classes(xq11_f3, [Composition(12, (6, 0)), Composition(12, (6, 3))], settings=settings)
        with pytest.raises(DesignError):
            supports_of_classes(xq11_f3, [], settings=settings)
