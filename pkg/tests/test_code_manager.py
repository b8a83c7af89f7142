"""
Unit tests for CodeManager and the descriptor loaders
"""
import json

import pytest

from block_code import CodeError
from code_manager import CodeManager, code_from_descriptor, load_embedding, load_points, load_scheme
from interpolation import EmbeddingError
from scheme_core import SchemeAxiomError
from tests.conftest import fixture_path


@pytest.mark.unit
class TestCodeManager:
    """Tests for CodeManager"""

    def test_list_fixtures(self, code_manager):
        """Test that every shipped code descriptor is listed"""
        fixtures = code_manager.list_fixtures()
        names = [f['filename'] for f in fixtures]
        assert names == sorted(names)
        assert 'xq11_f3.json' in names
        assert 'lifted_golay_z4.json' in names
        assert not any('error' in f for f in fixtures)

    def test_list_fixtures_with_summary(self, tmp_path):
        """Test the generated description and a broken file"""
        (tmp_path / "pair.json").write_text(json.dumps({
            'scheme': {'type': 'trivial', 'q': 2}, 'n': 2, 'generators': [[1, 1]],
        }))
        (tmp_path / "broken.json").write_text('{')
        fixtures = CodeManager(str(tmp_path)).list_fixtures()
        assert fixtures[0]['filename'] == 'broken.json'
        assert 'error' in fixtures[0]
        assert fixtures[1]['description'] == 'length 2, 1 generators, trivial scheme'

    def test_missing_directory(self, tmp_path):
        """Test listing a directory that does not exist"""
        assert CodeManager(str(tmp_path / "nothing")).list_fixtures() == []

    def test_resolve(self, code_manager):
        """Test fixture names with and without suffix and explicit paths"""
        assert code_manager.resolve('repetition3') == fixture_path('repetition3.json')
        assert code_manager.resolve('repetition3.json') == fixture_path('repetition3.json')
        assert code_manager.resolve(fixture_path('golay24.json')) == fixture_path('golay24.json')

    def test_resolve_errors(self, code_manager):
        """Test unknown and malformed names"""
        with pytest.raises(FileNotFoundError):
            code_manager.resolve('no_such_code')
        with pytest.raises(FileNotFoundError):
            code_manager.resolve('../etc/passwd')

    def test_load_code(self, code_manager):
        """Test codes built from generators, words and constructions"""
        repetition = code_manager.load_code('repetition3')
        assert repetition.size == 2
        assert repetition.name == 'binary repetition code of length 3'
        tetracode = code_manager.load_code('tetracode_words')
        assert tetracode.size == 9
        assert tetracode.is_explicit
        golay = code_manager.load_code('xq11_f3')
        assert golay.size == 729
        assert golay.name == 'XQ11 over F3'
        assert code_manager.load_code('xq11_f5').scheme.classes == 2

    def test_invalid_descriptor(self, tmp_path):
        """Test that an invalid descriptor becomes a CodeError"""
        (tmp_path / "bad.json").write_text(json.dumps({'n': 3, 'generators': [[1, 1, 1]]}))
        with pytest.raises(CodeError):
            CodeManager(str(tmp_path)).load_code('bad')
        with pytest.raises(CodeError):
            code_from_descriptor({'scheme': {'type': 'trivial', 'q': 2}, 'n': 2})


@pytest.mark.unit
class TestDescriptorLoaders:
    """Tests for scheme, point and embedding files"""

    def test_load_scheme(self):
        """Test scheme descriptors and the scheme inside a code descriptor"""
        assert load_scheme(fixture_path('schemes', 'cycle5.json')).classes == 2
        assert load_scheme(fixture_path('schemes', 'f4_group.json')).classes == 3
        assert load_scheme(fixture_path('xq11_f5.json')).size == 5

    def test_load_bad_scheme(self, tmp_path):
        """Test an axiom failure and an unreadable file"""
        with pytest.raises(SchemeAxiomError):
            load_scheme(fixture_path('schemes', 'bad_table.json'))
        broken = tmp_path / "broken.json"
        broken.write_text('[')
        with pytest.raises(SchemeAxiomError) as excinfo:
            load_scheme(str(broken))
        assert excinfo.value.axiom == 'DESCRIPTOR'

    def test_load_points(self):
        """Test a point file with and without an embedding"""
        points, embedding = load_points(fixture_path('points', 'quinary_s2.json'))
        assert len(points) == 7
        assert embedding.m == 3
        points, embedding = load_points(fixture_path('points', 'collinear.json'))
        assert embedding is None

    def test_invalid_points(self, tmp_path):
        """Test a points file without points"""
        path = tmp_path / "points.json"
        path.write_text(json.dumps({'dimension': 2}))
        with pytest.raises(ValueError):
            load_points(str(path))

    def test_invalid_embedding(self, tmp_path):
        """Test an embedding file without sigma"""
        path = tmp_path / "embedding.json"
        path.write_text(json.dumps({'nodes': [[0, 1]], 'm': 1}))
        with pytest.raises(EmbeddingError):
            load_embedding(str(path))
        assert load_embedding(fixture_path('points', 'quaternary_embedding.json')).m >= 1
