import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import FakeClock, T0, make_service  # noqa: E402


@pytest.fixture
def clock() -> FakeClock:
    return FakeClock(T0)


@pytest.fixture
def service(tmp_path, clock):
    return make_service(tmp_path / "data", clock=clock)


@pytest.fixture
def sequential_ids(monkeypatch):
    """Deterministic ids and digest salts, for byte-level comparisons."""
    import rku.auth
    import rku.ids

    counter = {"id": 0, "salt": 0}

    def fake_id() -> str:
        counter["id"] += 1
        return f"id{counter['id']:04d}"

    def fake_salt(n: int = 16) -> str:
        counter["salt"] += 1
        return f"{counter['salt']:032x}"

    monkeypatch.setattr(rku.ids, "new_id", fake_id)
    monkeypatch.setattr(rku.auth.secrets, "token_hex", fake_salt)
    return counter
