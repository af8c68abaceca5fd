import pytest

from config import Config
from graphs.core_graph import build_graph
from graphs.families import hh_graph, kneser_graph
from models import CheckResult, FamilyParams, Report


@pytest.fixture
def p42():
    return FamilyParams(n=4, r=2)


@pytest.fixture
def p52():
    return FamilyParams(n=5, r=2)


@pytest.fixture
def p62():
    return FamilyParams(n=6, r=2)


@pytest.fixture
def p73():
    return FamilyParams(n=7, r=3)


@pytest.fixture
def h52(p52):
    """H(5:2): 30 vertices of valency 4"""
    return hh_graph(p52)


@pytest.fixture
def petersen(p52):
    """K(5:2)"""
    return kneser_graph(p52)


@pytest.fixture
def four_cycle():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], name="C_4")


@pytest.fixture
def five_cycle():
    return build_graph(5, [(i, (i + 1) % 5) for i in range(5)], name="C_5")


@pytest.fixture
def sample_report():
    """A passing report with one exact and one fractional value"""
    return Report(
        command="verify quotient",
        params={"instances": ["5:2"], "budget": 60.0, "seed": 7},
        results=[
            CheckResult(name="quotient H(5:2)", value=[[2, 2, 0]], expected=[[2, 2, 0]], match=True),
            CheckResult(name="chi* H(5:2)", value="5/2", expected="5/2", match=True),
        ],
        elapsed_ms=12,
    )


@pytest.fixture
def test_config():
    """Test configuration override"""
    original_values = {}

    # Store original values
    original_values["THREADS"] = Config.THREADS
    original_values["BUDGET_SECONDS"] = Config.BUDGET_SECONDS
    original_values["SAMPLE_SEED"] = Config.SAMPLE_SEED
    original_values["OTHER_PAIR_SAMPLES"] = Config.OTHER_PAIR_SAMPLES

    # Set test values
    Config.THREADS = 1
    Config.BUDGET_SECONDS = 120.0
    Config.SAMPLE_SEED = 12345
    Config.OTHER_PAIR_SAMPLES = 500

    yield Config

    # Restore original values
    for key, value in original_values.items():
        setattr(Config, key, value)
