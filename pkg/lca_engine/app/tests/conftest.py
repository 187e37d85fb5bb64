# app/tests/conftest.py
from pathlib import Path

import pytest
from hypothesis import settings

from app.config import AppConfig
from app.domain.conformal import make_cur, make_vir
from app.domain.lie import make_abelian, make_sl2
from app.main import Application

settings.register_profile("lca", max_examples=40, deadline=None)
settings.load_profile("lca")

SAMPLE = Path(__file__).resolve().parents[3] / "samples" / "algebras.lca"


@pytest.fixture(scope="function")
def app_config():
    """Provide a test configuration independent of the environment."""
    return AppConfig(
        PROJECT_NAME="lca",
        PROJECT_VERSION="1.0.0",
        REPORT_SCHEMA_VERSION="1.0",
        DEG_DEFAULT=3,
        LOG_LEVEL="WARNING",
        _env_file=None,
    )


@pytest.fixture(scope="function")
def application(app_config):
    return Application(config=app_config)


@pytest.fixture(scope="session")
def vir():
    return make_vir()


@pytest.fixture(scope="session")
def sl2():
    return make_sl2()


@pytest.fixture(scope="session")
def cur_sl2(sl2):
    # session scoped so equal algebras hit the solver memo across tests
    return make_cur(sl2)


@pytest.fixture(scope="session")
def cur_abelian():
    return make_cur(make_abelian(1))


@pytest.fixture(scope="session")
def sample_path():
    return SAMPLE


@pytest.fixture(scope="function")
def lca_file(tmp_path):
    """Write an .lca source to a temporary file and return its path."""

    def _write(text: str, name: str = "input.lca") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
