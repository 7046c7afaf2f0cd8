"""
Step callbacks for observing the constructive Frattini solver.
"""

import logging
from typing import Any, List, Optional


class StepCallbackHandler:
    """Base handler; every hook is a no-op."""

    def on_step_start(self, kind: str, depth: int, detail: str, **kwargs: Any) -> None:
        """Called when a proof step begins."""

    def on_step_end(self, kind: str, depth: int, detail: str, **kwargs: Any) -> None:
        """Called when a proof step has produced its subgroup."""

    def on_assertion_failed(self, kind: str, depth: int, error: BaseException, **kwargs: Any) -> None:
        """Called when a step-local postcondition fails, before the error propagates."""


class LoggingStepHandler(StepCallbackHandler):
    """Logs every step, indented by recursion depth."""

    def __init__(self, logger: Optional[logging.Logger] = None, verbose: bool = True):
        self.logger = logger or logging.getLogger(__name__)
        self.verbose = verbose
        self.step_count = 0

    def on_step_start(self, kind: str, depth: int, detail: str, **kwargs: Any) -> None:
        self.step_count += 1
        if self.verbose:
            self.logger.debug(f"{'  ' * depth}Step {self.step_count} - {kind} START: {detail}")

    def on_step_end(self, kind: str, depth: int, detail: str, **kwargs: Any) -> None:
        if self.verbose:
            self.logger.info(f"{'  ' * depth}{kind}: {detail}")

    def on_assertion_failed(self, kind: str, depth: int, error: BaseException, **kwargs: Any) -> None:
        self.logger.error(f"{'  ' * depth}{kind} assertion failed: {error}")


class TraceCollector(StepCallbackHandler):
    """Collects (kind, depth, detail) tuples of completed steps."""

    def __init__(self):
        self.steps: List[tuple] = []
        self.failures: List[tuple] = []

    def on_step_end(self, kind: str, depth: int, detail: str, **kwargs: Any) -> None:
        self.steps.append((kind, depth, detail))

    def on_assertion_failed(self, kind: str, depth: int, error: BaseException, **kwargs: Any) -> None:
        self.failures.append((kind, depth, str(error)))

    def kinds(self) -> List[str]:
        return [kind for kind, _, _ in self.steps]
