import os

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("stress", max_examples=1500, deadline=None)
settings.load_profile(os.environ.get("QWANG_HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_tileset(rng, d, k):
    """k distinct random (up, right, down, left) quadruples over d colors."""
    pool = list(np.ndindex(d, d, d, d))
    idx = rng.choice(len(pool), size=min(k, len(pool)), replace=False)
    return [tuple(int(c) for c in pool[i]) for i in idx]


FIVE_CELL = [(-1, 1), (1, 1), (0, 0), (1, 0), (0, -1)]


def all_subshapes(m, n):
    """Every nonempty subset of R(m, n), as sorted cell lists."""
    cells = [(x, y) for y in range(1, n + 1) for x in range(1, m + 1)]
    for mask in range(1, 1 << len(cells)):
        yield [c for k, c in enumerate(cells) if mask >> k & 1]


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


_ACCEPTANCE: dict = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    ok = call.excinfo is None
    note = dict(item.user_properties).get("note", "")
    if not ok:
        note = call.excinfo.exconly().splitlines()[0][:160]
    _ACCEPTANCE[number] = (title, ok, note)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, note = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {note}")
