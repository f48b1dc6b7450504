import os
import tempfile

import pytest

# app.py opens its report store at import time
os.environ.setdefault('DATABASE', os.path.join(tempfile.mkdtemp(prefix='hecke-kernel-'), 'reports.db'))


@pytest.fixture(autouse=True)
def default_guards(monkeypatch):
    monkeypatch.delenv('KERNEL_MAX_N', raising=False)


@pytest.fixture
def app(tmp_path):
    from app import app as flask_app
    from database import init_db
    flask_app.config.update(TESTING=True, DATABASE=str(tmp_path / 'reports.db'))
    with flask_app.app_context():
        init_db()
    yield flask_app


@pytest.fixture
def client(app):
    return app.test_client()
