from typing import Dict, Type

from models import UnknownSuiteError

from .automorphism_suites import AutSuite, DistinguisherSuite
from .base_suite import BaseSuite
from .coloring_suites import RecursiveBoundSuite, ShiftEmbedSuite, TailChiSuite
from .homomorphism_suites import FracHomSuite, SubgraphsSuite
from .independence_suites import BestIndependentSuite, TwoBigSetsSuite
from .metric_suites import DiameterSuite, OddGirthSuite, ParamsSuite, QuotientSuite
from .table_suites import AlphaTableSuite, ChiTableSuite, FractionalTableSuite

VERIFY_SUITES: Dict[str, Type[BaseSuite]] = {
    "diameter": DiameterSuite,
    "hhog": OddGirthSuite,
    "subgraphs": SubgraphsSuite,
    "bestindybd": BestIndependentSuite,
    "twobigsets": TwoBigSetsSuite,
    "recursivebd": RecursiveBoundSuite,
    "tailchi": TailChiSuite,
    "s_n_embed": ShiftEmbedSuite,
    "frachom": FracHomSuite,
    "quotient": QuotientSuite,
    "aut": AutSuite,
    "distinguisher": DistinguisherSuite,
}

TABLE_SUITES: Dict[int, Type[BaseSuite]] = {
    1: AlphaTableSuite,
    2: ChiTableSuite,
    3: FractionalTableSuite,
}


def get_suite(name: str) -> BaseSuite:
    """Instantiate a verification suite by name"""
    try:
        return VERIFY_SUITES[name]()
    except KeyError:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; choose from {', '.join(VERIFY_SUITES)}"
        )


def get_table_suite(which: int) -> BaseSuite:
    try:
        return TABLE_SUITES[which]()
    except KeyError:
        raise UnknownSuiteError(f"there is no table {which}; choose 1, 2 or 3")


__all__ = [
    "BaseSuite",
    "ParamsSuite",
    "VERIFY_SUITES",
    "TABLE_SUITES",
    "get_suite",
    "get_table_suite",
]
