"""
ergomax Dispatcher
Routes a command name to its handler, wraps the result in a RunReport and
records the run in telemetry. Stateless apart from the handler table.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from ergomax.commands import HANDLERS, Handler
from ergomax.core.errors import ErgomaxError, ParseError
from ergomax.core.report import RunReport
from ergomax.core.telemetry import TelemetryLogger, get_telemetry
from ergomax.schemas import IdentityCheck

logger = logging.getLogger("ergomax.dispatcher")


@dataclass
class DispatchOutcome:
    """A finished run: the report plus any identity the command found violated."""

    report: RunReport
    failures: list[IdentityCheck] = field(default_factory=list)
    csv: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return 5 if self.failures else 0


class Dispatcher:
    """
    Maps command names to handlers.
    Errors propagate as ErgomaxError after being tracked; the CLI owns exit codes.
    """

    def __init__(self, telemetry: Optional[TelemetryLogger] = None):
        self.handlers: dict[str, Handler] = {}
        self._telemetry = telemetry

    @property
    def telemetry(self) -> TelemetryLogger:
        return self._telemetry or get_telemetry()

    def register_command(self, name: str, handler: Handler) -> None:
        self.handlers[name] = handler

    def list_commands(self) -> list[str]:
        return sorted(self.handlers)

    def dispatch(
        self,
        command: str,
        inputs: Mapping[str, Any],
        tolerances: Mapping[str, float],
    ) -> DispatchOutcome:
        handler = self.handlers.get(command)
        if handler is None:
            raise ParseError(f"Unknown command: {command} (known: {', '.join(self.list_commands())})")

        telemetry = self.telemetry
        timer = telemetry.timer()
        try:
            with timer:
                result = handler(inputs, tolerances)
        except ErgomaxError as e:
            telemetry.track_error(command, type(e).__name__, str(e))
            telemetry.track_run(command, timer.elapsed_ms, e.exit_code, error=str(e))
            logger.debug("%s failed with %s", command, type(e).__name__)
            raise

        report = RunReport(
            command=command,
            inputs={**inputs, **result.echo},
            results=result.payload.model_dump(mode="python"),
            tolerances=dict(tolerances),
        )
        outcome = DispatchOutcome(
            report=report,
            failures=[c for c in result.checks if not c.holds],
            csv=result.csv,
        )
        for check in outcome.failures:
            telemetry.track_identity_failure(command, check.name, check.observed, check.expected)
        telemetry.track_run(command, timer.elapsed_ms, outcome.exit_code)
        return outcome


def default_dispatcher(telemetry: Optional[TelemetryLogger] = None) -> Dispatcher:
    """A dispatcher with every built-in command registered."""
    dispatcher = Dispatcher(telemetry)
    for name, handler in HANDLERS.items():
        dispatcher.register_command(name, handler)
    return dispatcher
