import logging
import multiprocessing as mp
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Optional, Tuple

from config import Config
from models import CheckResult, FamilyParams, HHKitError, Report

logger = logging.getLogger(__name__)


class BaseSuite(ABC):
    """A named group of checks run over a grid of (n, r) instances"""

    def __init__(self, suite_name: str):
        self.suite_name = suite_name

    @abstractmethod
    def get_description(self) -> str:
        """Return a one-line description of what the suite verifies"""
        pass

    @abstractmethod
    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        """Run every check of the suite on one instance"""
        pass

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for r, n in Config.METRIC_GRID]

    def select_instances(
        self,
        instances: Optional[Iterable[FamilyParams]] = None,
        n_max: Optional[int] = None,
    ) -> List[FamilyParams]:
        chosen = list(instances) if instances else self.default_instances()
        if n_max is not None:
            chosen = [p for p in chosen if p.n <= n_max]
        return chosen

    def check(
        self,
        name: str,
        value: Any,
        expected: Any,
        exact: bool = True,
        detail: Optional[str] = None,
    ) -> CheckResult:
        """Compare a computed value with its expected value"""
        result = CheckResult(
            name=name,
            value=value,
            expected=expected,
            match=value == expected,
            exact=exact,
            detail=detail,
        )
        if not result.match:
            logger.error(f"{self.suite_name}: {name} gave {value}, expected {expected}")
        elif not exact:
            logger.warning(f"{self.suite_name}: {name} is not certified exact")
        return result

    def handle_error(self, p: FamilyParams, exception: Exception) -> CheckResult:
        """Record a raised library error as a failed check"""
        logger.error(f"Error in {self.suite_name} for {p}: {exception}")
        return CheckResult(
            name=f"{p} error",
            value=type(exception).__name__,
            expected=None,
            match=False,
            detail=str(exception),
        )

    def run(
        self,
        instances: Optional[Iterable[FamilyParams]] = None,
        n_max: Optional[int] = None,
        budget: Optional[float] = None,
        command: Optional[str] = None,
    ) -> Report:
        budget = Config.BUDGET_SECONDS if budget is None else budget
        started = time.monotonic()
        chosen = self.select_instances(instances, n_max)
        logger.info(f"{self.suite_name} starting on {len(chosen)} instances")

        if Config.THREADS > 1 and len(chosen) > 1:
            with mp.Pool(min(Config.THREADS, len(chosen))) as pool:
                outcomes = pool.starmap(self.run_instance, [(p, budget) for p in chosen])
        else:
            outcomes = [self.run_instance(p, budget) for p in chosen]

        results: List[CheckResult] = []
        witnesses: Dict[str, Any] = {}
        for p, (checks, witness) in zip(chosen, outcomes):
            results.extend(checks)
            if witness is not None:
                witnesses[str(p)] = witness

        report = Report(
            command=command or f"verify {self.suite_name}",
            params={
                "instances": [f"{p.n}:{p.r}" for p in chosen],
                "budget": budget,
                "seed": Config.SAMPLE_SEED,
            },
            results=results,
            witnesses=witnesses or None,
            elapsed_ms=int((time.monotonic() - started) * 1000),
        )
        logger.info(
            f"{self.suite_name} completed: {sum(r.match for r in results)}"
            f"/{len(results)} checks matched"
        )
        return report

    def run_instance(
        self, p: FamilyParams, budget: float
    ) -> Tuple[List[CheckResult], Optional[Any]]:
        """Checks and witness for one instance; library errors become failed checks"""
        try:
            return self.check_instance(p, budget), self.witness(p)
        except HHKitError as e:
            return [self.handle_error(p, e)], None

    def witness(self, p: FamilyParams) -> Optional[Any]:
        """Optional certificate payload recorded for an instance"""
        return None
