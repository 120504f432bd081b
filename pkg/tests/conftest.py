import pytest

from nottaut.fixtures import load_polynomials, load_tables, reported_counts
from nottaut.towers import TOWER_PARAMS, TowerSpec, build_tower

ACCEPT_N = 4096


@pytest.fixture(scope="session")
def towers():
    """All five towers at the acceptance precision."""
    out = {}
    for fam, params in TOWER_PARAMS.items():
        for p in params:
            out[f"{fam}:{p}"] = build_tower(TowerSpec(fam, p, ACCEPT_N))
    return out


@pytest.fixture(scope="session")
def printed_polys():
    return load_polynomials()


@pytest.fixture(scope="session")
def fixture_tables():
    return load_tables()


@pytest.fixture(scope="session")
def paper_counts():
    return reported_counts()


@pytest.fixture(scope="session")
def synth_reports(printed_polys):
    """Diagonal syntheses for all 19 nonsingular polynomials, verified to 4096."""
    from nottaut.christol import poly_to_automaton
    from nottaut.minpoly import is_nonsingular

    out = {}
    for key, f in printed_polys.items():
        if is_nonsingular(f):
            out[key] = poly_to_automaton(f, ACCEPT_N)
    return out
