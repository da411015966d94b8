import numpy as np
import pytest

from ergomax.core.errors import EmptySubshiftError
from ergomax.core.telemetry import reset_telemetry
from ergomax.symbolic.graph import trim_and_recode
from ergomax.symbolic.system import LocallyConstantPotential, SubshiftSystem


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep config, telemetry and tolerance overrides out of the real home directory."""
    home = tmp_path / "ergomax-home"
    monkeypatch.setenv("ERGOMAX_HOME", str(home))
    monkeypatch.setenv("ERGOMAX_TELEMETRY", "0")
    monkeypatch.delenv("ERGOMAX_TOL_OVERRIDES", raising=False)
    reset_telemetry(enabled=False)
    yield home
    reset_telemetry(enabled=False)


def _random_potential(rng, symbols, transition, depth):
    words = [(s,) for s in range(len(symbols))]
    for _ in range(depth - 1):
        words = [w + (b,) for w in words for b in range(len(symbols)) if transition[w[-1]][b]]
    return LocallyConstantPotential(
        depth,
        {tuple(symbols[i] for i in w): float(rng.uniform(-1.0, 1.0)) for w in words},
    )


def random_system(rng, n_symbols, depth=1, density=0.4, irreducible=False):
    """
    Random SFT with uniform [-1, 1] weights. ``irreducible`` threads a Hamiltonian
    cycle through the symbols; otherwise draws are repeated until trimming
    leaves at least one vertex.
    """
    symbols = tuple(f"s{i}" for i in range(n_symbols))
    while True:
        A = (rng.random((n_symbols, n_symbols)) < density).astype(int)
        if irreducible:
            for i in range(n_symbols):
                A[i, (i + 1) % n_symbols] = 1
        transition = tuple(tuple(int(x) for x in row) for row in A)
        system = SubshiftSystem(symbols, transition, _random_potential(rng, symbols, transition, depth))
        try:
            trim_and_recode(system)
        except EmptySubshiftError:
            continue
        return system


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def system_factory(rng):
    def make(n_symbols, depth=1, density=0.4, irreducible=False):
        return random_system(rng, n_symbols, depth, density, irreducible)

    return make
