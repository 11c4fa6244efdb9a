import numpy as np
import pytest

from geoar.model import GeometricARSpec


def random_specs(n, seed, beta=(0.0, 1.5), delta=(0.05, 0.95), k=(2, 12)):
    """Uniform specs over the given ranges; epsilon2 relaxed so every draw is valid."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        b = float(rng.uniform(*beta))
        while b == 0.0:
            b = float(rng.uniform(*beta))
        out.append(GeometricARSpec(b, float(rng.uniform(*delta)), int(rng.integers(k[0], k[1] + 1)), epsilon2=1e-300))
    return out


@pytest.fixture
def table1_spec():
    return GeometricARSpec(0.4, 0.5, 5)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
