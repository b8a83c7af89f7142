"""
Pytest fixtures for amscheme tests
"""
import json
import logging
import os

import pytest

from block_code import BlockCode, EnumerationSettings
from code_manager import CodeManager
from qr_codes import build_extended_qr
from scheme_core import build_cycle_scheme, build_trivial_scheme
from utils.config_manager import ConfigManager, reset_config_manager

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES_DIR = os.path.join(REPO_ROOT, 'fixtures')


def fixture_path(*parts: str) -> str:
    """Absolute path of a shipped fixture file"""
    return os.path.join(FIXTURES_DIR, *parts)


@pytest.fixture
def fixtures_dir():
    """Directory holding the shipped code descriptors"""
    return FIXTURES_DIR


@pytest.fixture
def golden():
    """Loader for the expected-value tables under fixtures/expected"""
    def load(name):
        with open(fixture_path('expected', f"{name}.json"), 'r', encoding='utf-8') as f:
            return json.load(f)
    return load


@pytest.fixture
def settings():
    """Enumeration settings small enough to exercise chunking"""
    return EnumerationSettings(cap=2 ** 20, chunk_size=1000, workers=2)


@pytest.fixture
def config(tmp_path):
    """ConfigManager on a temporary config file, isolated from the environment"""
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({'fixtures': {'directory': FIXTURES_DIR}}))
    reset_config_manager()
    yield ConfigManager(str(config_file), environ={})
    reset_config_manager()


@pytest.fixture
def code_manager():
    """CodeManager on the shipped fixtures"""
    return CodeManager(FIXTURES_DIR)


@pytest.fixture
def repetition3():
    """{000, 111} over Z2 in the 1-class scheme"""
    return BlockCode(build_trivial_scheme(2), 3, generators=[[1, 1, 1]], name='repetition3')


@pytest.fixture
def tetracode_words(code_manager):
    """The ternary tetracode given by its 9 words"""
    return code_manager.load_code('tetracode_words')


@pytest.fixture(scope='session')
def xq11_f3():
    """Extended ternary Golay code in the group scheme of Z3"""
    return build_extended_qr(11, 3)


@pytest.fixture(scope='session')
def xq11_f4():
    """XQ11 over F4 = Z2 x Z2 in the group scheme"""
    return build_extended_qr(11, 4)


@pytest.fixture(scope='session')
def xq11_f5():
    """XQ11 over F5 in the 5-cycle scheme"""
    return build_extended_qr(11, 5, build_cycle_scheme(5))


@pytest.fixture
def cli(tmp_path, capsys):
    """
    Run the amscheme entry point with an isolated config file

    Returns (exit_code, stdout) for an argument list.
    """
    from amscheme import main

    config_file = tmp_path / "cli_config.json"
    config_file.write_text(json.dumps({'fixtures': {'directory': FIXTURES_DIR}}))

    def run(*argv):
        code = main(['--config', str(config_file), '--quiet'] + list(argv))
        return code, capsys.readouterr().out

    yield run
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
