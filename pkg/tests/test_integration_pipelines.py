"""
Integration tests: codes loaded from descriptors, certified and checked against stored tables
"""
import pytest

from amt_engine import AMTInput, apply_suggestions, certify, hamming_certify, suggest_exclusions
from block_code import BlockCode, EnumerationSettings, torsion_code, weight_distribution
from certification_job import CertificationJob
from code_manager import load_points
from design_verify import DesignCertificate, is_t_design, max_design_t, supports_of_class, supports_of_weight
from extension import Composition
from interpolation import PointSet, grid_upper_bound
from scheme_core import hamming_fusion
from tests.conftest import fixture_path


def _golden_distribution(expected):
    return {tuple(e['alpha']): e['count'] for e in expected['distribution']}


@pytest.mark.integration
class TestGoldenCodes:
    """XQ11 over F3, F4 and F5 against the stored tables"""

    @pytest.mark.parametrize("fixture,table", [
        ('xq11_f3', 'xq11_f3_cwe'),
        ('xq11_f4', 'xq11_f4_cwe'),
        ('xq11_f5', 'xq11_f5_swe'),
    ])
    def test_pipeline(self, code_manager, settings, golden, fixture, table):
        """Test descriptor -> distribution -> certification -> verification"""
        expected = golden(table)
        code = code_manager.load_code(fixture)
        distribution = weight_distribution(code, settings=settings).distribution
        assert {alpha.alpha: count for alpha, count in distribution.items()} == _golden_distribution(expected)

        K = frozenset(Composition(code.n, tuple(alpha)) for alpha in expected['K'])
        report = certify(AMTInput(code, K=K, verify=True, settings=settings))
        assert report.delta_star == expected['delta_star']
        assert report.certified_t == expected['certified_t']
        assert all(summary.verified for summary in report.classes if summary.design_t)

    def test_quinary_windows_under_sigma(self, code_manager, settings, golden):
        """Test the sigma images of the windows of XQ11 over F5 and their grid bounds"""
        expected = golden('xq11_f5_swe')
        _, embedding = load_points(fixture_path('points', 'quinary_s2.json'))
        report = certify(AMTInput(code_manager.load_code('xq11_f5'), settings=settings))
        for r, images in expected['sigma_windows'].items():
            level = report.levels[int(r) - 1]
            points = PointSet.from_iterable([alpha.alpha for alpha in level.kept])
            image = points.transformed(embedding.sigma, [0, 0])
            assert set(image.points) == {tuple(z) for z in images}
        s2 = report.levels[1]
        certificate = grid_upper_bound(PointSet.from_iterable([alpha.alpha for alpha in s2.kept]), embedding)
        assert s2.mu <= certificate.m < s2.bound

    def test_chunking_does_not_matter(self, code_manager, golden):
        """Test the F4 distribution with one worker and tiny chunks"""
        code = code_manager.load_code('xq11_f4')
        data = weight_distribution(code, settings=EnumerationSettings(chunk_size=17, workers=1))
        assert {alpha.alpha: count for alpha, count in data.distribution.items()} == \
            _golden_distribution(golden('xq11_f4_cwe'))


@pytest.mark.integration
class TestHammingCodes:
    """Golay codes through the 1-class path"""

    def test_binary_golay(self, code_manager, settings):
        """Test t = 5 for the extended binary Golay code"""
        code = code_manager.load_code('golay24')
        report = hamming_certify(code, settings=settings)
        assert report.delta_star == 8
        assert report.certified_t == 5
        blocks = supports_of_weight(code, 8, settings=settings)
        assert blocks.count == 759
        result = is_t_design(blocks, 5, workers=2)
        assert isinstance(result, DesignCertificate)
        assert result.lambda_t == 1

    def test_ternary_golay_trivial_view(self, code_manager, settings):
        """Test t = 5 in the 1-class scheme against t = 3 in the group scheme"""
        code = code_manager.load_code('xq11_f3')
        assert certify(AMTInput(code, settings=settings)).certified_t == 3
        fused = code.with_scheme(hamming_fusion(code.scheme))
        assert hamming_certify(fused, settings=settings).certified_t == 5
        job = CertificationJob(code_manager.load_code('xq11_f3_hamming'), verify=True, settings=settings)
        assert job.execute()[0]
        assert job.report.certified_t == 5


@pytest.mark.integration
@pytest.mark.slow
class TestLiftedGolay:
    """The lifted Golay code over Z4 in the 4-cycle scheme"""

    def test_suggested_exclusions(self, code_manager):
        """Test certification with the torsion classes suggested for K and L"""
        code = code_manager.load_code('lifted_golay_z4')
        settings = EnumerationSettings(cap=2 ** 25, chunk_size=1 << 16, workers=4)
        suggestions = suggest_exclusions(code, settings)
        K, k_bound = apply_suggestions(suggestions, 'K')
        L, l_bound = apply_suggestions(suggestions, 'L')
        assert K and L
        assert k_bound == l_bound == 5
        plain = certify(AMTInput(code, settings=settings))
        report = certify(AMTInput(code, K=K, L=L, k_valid_up_to=k_bound, settings=settings))
        assert plain.certified_t <= report.certified_t
        assert report.certified_t == 5


def _reverse_cyclic_part(code):
    """The code with its first n - 1 coordinates reversed, the extension coordinate kept"""
    rows = [tuple(reversed(g[:-1])) + (g[-1],) for g in code.generators]
    return BlockCode(code.scheme, code.n, generators=rows, name=f"{code.name} reversed")


def _same_code(a, b):
    """Equal additive codes: equal sizes and a joint span no larger than either"""
    joint = BlockCode(a.scheme, a.n, generators=list(a.generators) + list(b.generators))
    return a.size == b.size == joint.size


@pytest.mark.integration
class TestGeneratorMatrixFixtures:
    """Explicit generator matrices against the built-in constructions"""

    @pytest.mark.parametrize("matrix,construction,table", [
        ('xq11_f3_matrix', 'xq11_f3', 'xq11_f3_cwe'),
        ('xq11_f4_matrix', 'xq11_f4', 'xq11_f4_cwe'),
        ('xq11_f5_matrix', 'xq11_f5', 'xq11_f5_swe'),
    ])
    def test_matrix_matches_construction(self, code_manager, settings, golden, matrix, construction, table):
        """Test that the matrix spans the constructed code, up to the choice of root, with the same distribution"""
        explicit = code_manager.load_code(matrix)
        built = code_manager.load_code(construction)
        assert explicit.check_size()
        # the other primitive root of unity gives the reciprocal generator polynomial
        assert _same_code(explicit, built) or _same_code(explicit, _reverse_cyclic_part(built))
        explicit_distribution = weight_distribution(explicit, settings=settings).distribution
        assert explicit_distribution == weight_distribution(built, settings=settings).distribution
        assert {alpha.alpha: count for alpha, count in explicit_distribution.items()} == \
            _golden_distribution(golden(table))

    def test_matrix_certifies_like_construction(self, code_manager, settings, golden):
        """Test t = 3 for the ternary matrix fixture with the stored K"""
        expected = golden('xq11_f3_cwe')
        code = code_manager.load_code('xq11_f3_matrix')
        K = frozenset(Composition(code.n, tuple(alpha)) for alpha in expected['K'])
        report = certify(AMTInput(code, K=K, settings=settings))
        assert report.delta_star == expected['delta_star']
        assert report.certified_t == expected['certified_t']

    def test_lifted_golay_matrix(self, code_manager):
        """Test that the Z4 matrix spans the lifted Golay code and has the binary Golay torsion code"""
        explicit = code_manager.load_code('lifted_golay_z4_matrix')
        built = code_manager.load_code('lifted_golay_z4')
        assert explicit.size == 4 ** 12
        assert _same_code(explicit, built) or _same_code(explicit, _reverse_cyclic_part(built))
        assert torsion_code(explicit).size == 4096


@pytest.mark.integration
class TestPipelineSoundness:
    """Every certified t is matched by the exhaustive design check"""

    @pytest.mark.parametrize("fixture", [
        'repetition3', 'tetracode_words', 'xq11_f3', 'xq11_f3_hamming', 'xq11_f3_matrix',
        'xq11_f4', 'xq11_f4_matrix', 'xq11_f5', 'xq11_f5_matrix',
    ])
    def test_max_design_t_never_below_certified_t(self, code_manager, settings, fixture):
        """Test max_design_t >= certified t for every nonempty class of the shipped code"""
        code = code_manager.load_code(fixture)
        job = CertificationJob(code, settings=settings)
        assert job.execute()[0]
        t = job.report.certified_t
        for summary in job.report.classes:
            blocks = supports_of_class(code, summary.alpha, settings=settings)
            assert max_design_t(blocks, workers=2) >= min(t, summary.block_size), summary.alpha

    def test_quaternary_classes_are_three_designs(self, code_manager, settings):
        """Test that every class of XQ11 over F4 is a 3-design although t = 2 is certified"""
        code = code_manager.load_code('xq11_f4')
        assert certify(AMTInput(code, settings=settings)).certified_t == 2
        for alpha, count in weight_distribution(code, settings=settings).distribution.items():
            if count and alpha.weight >= 3:
                assert max_design_t(supports_of_class(code, alpha, settings=settings)) >= 3, alpha

    def test_binary_golay_classes(self, code_manager, settings):
        """Test that every weight class of the binary Golay code is a 5-design"""
        code = code_manager.load_code('golay24')
        t = hamming_certify(code, settings=settings).certified_t
        for weight in (8, 12, 16):
            result = is_t_design(supports_of_weight(code, weight, settings=settings), t, workers=2)
            assert isinstance(result, DesignCertificate), weight
