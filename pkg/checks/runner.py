"""
Check Runner - execute scenario checks with error handling and bounded concurrency
"""
import asyncio
import logging
import math
import time
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from core.config import Settings, get_settings
from core.quadrature import BoxIntegrator

from .registry import CheckOutcome, get_check_info
from .report import ReportRow
from .scenario import Scenario

logger = logging.getLogger(__name__)


class CheckExecutionResult(BaseModel):
    """Result of running one check on one scenario"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    success: bool = Field(..., description="Whether the check ran to completion")
    scenario_id: str = Field(..., description="Scenario identifier")
    check: str = Field(..., description="Name of the executed check")
    position: int = Field(0, description="Index of the check in the scenario's list")
    outcome: Optional[CheckOutcome] = Field(None, description="Computed sides and residual")
    tolerance: float = Field(math.nan, description="Tolerance the residual is judged against")
    error: Optional[str] = Field(None, description="Error message if execution failed")
    execution_time: Optional[float] = Field(None, description="Execution time in seconds")

    @classmethod
    def passed(
        cls, scenario: Scenario, check: str, position: int, outcome: CheckOutcome, tolerance: float, elapsed: float
    ) -> "CheckExecutionResult":
        return cls(
            success=True,
            scenario_id=scenario.id,
            check=check,
            position=position,
            outcome=outcome,
            tolerance=tolerance,
            execution_time=elapsed,
        )

    @classmethod
    def failed(
        cls, scenario: Scenario, check: str, position: int, error: str, elapsed: Optional[float] = None
    ) -> "CheckExecutionResult":
        return cls(
            success=False,
            scenario_id=scenario.id,
            check=check,
            position=position,
            error=error,
            execution_time=elapsed,
        )

    @property
    def verdict(self) -> str:
        if not self.success or self.outcome is None:
            return "fail"
        if not self.outcome.residual <= self.tolerance:
            return "fail"
        return "flagged" if self.outcome.flagged else "pass"

    def to_row(self) -> ReportRow:
        outcome = self.outcome
        return ReportRow(
            scenario=self.scenario_id,
            check=self.check,
            position=self.position,
            lhs=outcome.lhs if outcome else math.nan,
            rhs=outcome.rhs if outcome else math.nan,
            residual=outcome.residual if outcome else math.nan,
            tolerance=self.tolerance,
            verdict=self.verdict,
            detail=self.error or (outcome.detail if outcome else ""),
            wall_time=self.execution_time or 0.0,
        )


class CheckExecutor:
    """Execute scenario checks with error handling and async support"""

    def __init__(self, settings: Optional[Settings] = None, tol_scale: float = 1.0):
        self.settings = settings or get_settings()
        self.tol_scale = tol_scale
        self._execution_history: List[CheckExecutionResult] = []

    def _tolerance(self, scenario: Scenario, check: str, outcome: CheckOutcome) -> float:
        info = get_check_info(check)
        default = outcome.tolerance if outcome.tolerance is not None else info.tolerance
        return scenario.tolerance(check, default, self.tol_scale)

    def run(self, scenario: Scenario, check: str, position: int = 0) -> CheckExecutionResult:
        """
        Run one check synchronously

        Args:
            scenario: Scenario supplying the field, sets and parameters
            check: Registered check name
            position: Index of the check in the scenario's list

        Returns:
            CheckExecutionResult with execution details
        """
        start_time = time.time()
        info = get_check_info(check)
        if info is None:
            result = CheckExecutionResult.failed(scenario, check, position, f"Check '{check}' not found")
            self._execution_history.append(result)
            return result

        try:
            outcome = info.func(scenario, BoxIntegrator(self.settings))
            tolerance = self._tolerance(scenario, check, outcome)
            result = CheckExecutionResult.passed(
                scenario, check, position, outcome, tolerance, time.time() - start_time
            )
        except Exception as e:
            logger.warning(f"{scenario.id}/{check}: {type(e).__name__}: {e}")
            result = CheckExecutionResult.failed(
                scenario, check, position, f"{type(e).__name__}: {e}", time.time() - start_time
            )

        if result.verdict == "flagged":
            logger.warning(f"{scenario.id}/{check}: result is only a bound")
        logger.debug(f"{scenario.id}/{check}: {result.verdict} in {result.execution_time:.3f}s")
        self._execution_history.append(result)
        return result

    async def run_async(self, scenario: Scenario, check: str, position: int = 0) -> CheckExecutionResult:
        """Run one check in the default thread pool"""
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, self.run, scenario, check, position)

    def run_scenario(self, scenario: Scenario, fail_fast: bool = False) -> List[CheckExecutionResult]:
        """Run the checks of one scenario in order"""
        logger.info(f"scenario {scenario.id}: {len(scenario.checks)} check(s)")
        results = []
        for position, check in enumerate(scenario.checks):
            result = self.run(scenario, check, position)
            results.append(result)
            if fail_fast and result.verdict == "fail":
                break
        logger.info(f"scenario {scenario.id} finished")
        return results

    async def run_suite_async(
        self, scenarios: List[Scenario], jobs: int = 1, fail_fast: bool = False
    ) -> List[CheckExecutionResult]:
        """
        Run scenarios concurrently, at most `jobs` at a time

        With fail_fast, scenarios not yet started when a check fails are skipped.

        Returns:
            Results ordered by scenario id, then by position in the check list
        """
        semaphore = asyncio.Semaphore(max(1, jobs))
        stop = asyncio.Event()
        loop = asyncio.get_running_loop()

        async def one(scenario: Scenario) -> List[CheckExecutionResult]:
            async with semaphore:
                if stop.is_set():
                    logger.info(f"scenario {scenario.id} skipped after a failure")
                    return []
                results = await loop.run_in_executor(None, self.run_scenario, scenario, fail_fast)
                if fail_fast and any(r.verdict == "fail" for r in results):
                    stop.set()
                return results

        batches = await asyncio.gather(*(one(s) for s in scenarios), return_exceptions=True)

        final_results: List[CheckExecutionResult] = []
        for scenario, batch in zip(scenarios, batches):
            if isinstance(batch, Exception):
                final_results.append(
                    CheckExecutionResult.failed(scenario, "unknown", 0, f"Async execution failed: {batch}")
                )
            else:
                final_results.extend(batch)
        final_results.sort(key=lambda r: (r.scenario_id, r.position))
        return final_results

    def run_suite(self, scenarios: List[Scenario], jobs: int = 1, fail_fast: bool = False) -> List[CheckExecutionResult]:
        return asyncio.run(self.run_suite_async(scenarios, jobs, fail_fast))

    def get_execution_history(self) -> List[CheckExecutionResult]:
        return self._execution_history.copy()

    def clear_history(self):
        """Clear execution history"""
        self._execution_history.clear()

    def get_failed_executions(self) -> List[CheckExecutionResult]:
        return [result for result in self._execution_history if result.verdict == "fail"]
