import numpy as np
import pytest

from madcap.channel import KrausChannel

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_channel(rng, d_in, d_out, n):
    """Random CPTP map from a random isometry."""
    z = rng.standard_normal((n * d_out, d_in)) + 1j * rng.standard_normal((n * d_out, d_in))
    q, _ = np.linalg.qr(z)
    return KrausChannel(list(q.reshape(n, d_out, d_in)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
