"""
Unit tests for report payloads and their text rendering
"""
import json
from fractions import Fraction

import pytest

from amt_engine import AMTInput, certify
from block_code import dual_code, weight_distribution
from enumerators import macwilliams_transform
from report_renderer import (
    ReportRenderer,
    dual_payload,
    enumerator_payload,
    exact_value,
    scheme_payload,
)
from scheme_core import build_cycle_scheme, build_trivial_scheme
from utils.cyclotomic import CyclotomicNumber


@pytest.fixture
def renderer():
    """ReportRenderer on the shipped templates"""
    return ReportRenderer()


@pytest.mark.unit
class TestPayloads:
    """Tests for the JSON-ready payload builders"""

    def test_exact_value(self):
        """Test fractions and integers"""
        assert exact_value(Fraction(3, 5)) == {'exact': '3/5', 'decimal': '0.600000'}
        assert exact_value(2, places=2) == {'exact': '2', 'decimal': '2.00'}

    def test_exact_cyclotomic_value(self):
        """Test that an irrational entry keeps its coefficient vector"""
        scheme = build_cycle_scheme(5)
        irrational = [v for row in scheme.P for v in row
                      if isinstance(v, CyclotomicNumber) and not v.is_rational()]
        assert irrational
        value = exact_value(irrational[0])
        assert 'cyclotomic' in value
        assert value['decimal'].startswith(('0.618', '-1.618'))

    def test_scheme_payload(self):
        """Test the pentagon scheme payload"""
        payload = scheme_payload(build_cycle_scheme(5))
        assert payload['classes'] == 2
        assert payload['valencies'] == [1, 2, 2]
        assert payload['multiplicities'] == [1, 2, 2]
        assert payload['P'][0][0]['exact'] == '1'
        assert len(payload['class_members']) == 3
        json.dumps(payload)

    def test_trivial_scheme_payload(self):
        """Test the 1-class scheme on 3 points"""
        payload = scheme_payload(build_trivial_scheme(3))
        assert payload['valencies'] == [1, 2]
        assert payload['P'][1][1]['exact'] == '-1'

    def test_enumerator_payload(self, repetition3, settings):
        """Test the terms, total and transform of {000, 111}"""
        w = repetition3.weight_enumerator(settings)
        payload = enumerator_payload(repetition3, 'native', w, macwilliams_transform(w, repetition3.scheme, 2))
        assert payload['total'] == '2'
        assert [term['alpha'] for term in payload['terms']] == [[0], [3]]
        assert payload['transform']['polynomial'] == 'xi0^3 + 3*xi0*xi1^2'

    def test_dual_payload(self, repetition3, settings):
        """Test the dual of the repetition code"""
        dual = dual_code(repetition3)
        payload = dual_payload(repetition3, dual, weight_distribution(dual, settings=settings))
        assert payload['dual_size'] == 4
        assert payload['size_product'] == payload['space_size'] == 8
        assert payload['dual_distance'] == 2


@pytest.mark.unit
class TestReportRenderer:
    """Tests for ReportRenderer"""

    def test_unknown_kind(self, renderer):
        """Test a kind without a template"""
        with pytest.raises(ValueError):
            renderer.render_text('invoice', {})

    def test_missing_field(self, renderer):
        """Test that a payload without a required field is refused"""
        with pytest.raises(ValueError):
            renderer.render_text('dual', {'code': 'x'})

    def test_json_output(self, renderer):
        """Test that JSON output keeps exact values as strings"""
        text = renderer.render('dual', {'value': Fraction(1, 3)}, fmt='json')
        assert json.loads(text) == {'value': '1/3'}

    def test_scheme_text(self, renderer):
        """Test the scheme report"""
        payload = scheme_payload(build_cycle_scheme(5))
        payload['run_config'] = {'subcommand': 'scheme'}
        text = renderer.render('scheme', payload)
        assert 'Classes: 2' in text
        assert 'Krein parameters' in text
        assert 'Run config: subcommand=scheme' in text

    def test_analysis_text(self, renderer, xq11_f3, settings):
        """Test the analysis report of the ternary Golay code"""
        report = certify(AMTInput(xq11_f3, settings=settings))
        payload = report.to_dict()
        payload.update({'status': 'completed', 'message': 'certified t = 3', 'suggestions': []})
        text = renderer.render('analysis', payload)
        assert 'delta* = 6' in text
        assert 'Certified t = 3' in text
        assert 'r = 4: |S_r| = 3, kept 3, mu = 2, bound 2  FAILS' in text
        assert '(6,3)  k = 9  220 words  3-design' in text

    def test_enumerator_text(self, renderer, repetition3, settings):
        """Test the enumerator report"""
        w = repetition3.weight_enumerator(settings)
        payload = enumerator_payload(repetition3, 'native', w, macwilliams_transform(w, repetition3.scheme, 2))
        payload.update({'scheme': repetition3.scheme.name, 'run_config': {}})
        text = renderer.render('enumerator', payload)
        assert 'W = xi0^3 + xi1^3' in text
        assert "W' = xi0^3 + 3*xi0*xi1^2" in text
