"""
ergomax Telemetry System
Non-blocking structured logging of command runs and identity failures.
Events go to $ERGOMAX_HOME/telemetry/events.jsonl from a daemon writer thread.
"""

import atexit
import json
import logging
import os
import queue
import threading
import time
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from ergomax.core.config import get_ergomax_home

EVENTS_FILE = "events.jsonl"


def get_telemetry_dir() -> Path:
    log_dir = get_ergomax_home() / "telemetry"
    log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir


def telemetry_enabled_by_env() -> bool:
    return os.getenv("ERGOMAX_TELEMETRY", "1").strip().lower() not in ("0", "false", "no", "off")


@dataclass
class RunTimer:
    """Wall-clock duration of one command, in milliseconds."""

    elapsed_ms: float = 0.0
    _start: float = 0.0

    def __enter__(self) -> "RunTimer":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = (time.perf_counter() - self._start) * 1000.0


class TelemetryLogger:
    """
    Central event log for ergomax runs.
    Events are buffered in memory and written to events.jsonl by a daemon thread.
    """

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self._buffer: list[dict] = []
        self._log_queue: "queue.Queue[dict]" = queue.Queue()

        self.logger = logging.getLogger("ergomax.telemetry")

        if self.enabled:
            self._telemetry_dir = get_telemetry_dir()
            self._shutdown_event = threading.Event()
            self._worker_thread = threading.Thread(target=self._process_queue, daemon=True)
            self._worker_thread.start()
            atexit.register(self.shutdown)

    def _process_queue(self):
        """Background thread worker to process log writes."""
        while not self._shutdown_event.is_set() or not self._log_queue.empty():
            try:
                event = self._log_queue.get(timeout=0.1)
            except queue.Empty:
                continue
            try:
                self._write_to_disk(event)
            except OSError as e:
                self.logger.error(f"Failed to write telemetry: {e}")
            finally:
                self._log_queue.task_done()

    def _write_to_disk(self, event: dict):
        log_file = self._telemetry_dir / EVENTS_FILE
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(event, default=str) + "\n")

    def timer(self) -> RunTimer:
        """Return a context manager to measure time."""
        return RunTimer()

    def log_event(self, event_type: str, data: dict[str, Any]):
        """Enqueue an event for asynchronous writing."""
        if not self.enabled:
            return

        event = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "event_type": event_type,
            **data,
        }
        self._buffer.append(event)
        self._log_queue.put(event)

    def track_run(self, command: str, latency_ms: float, exit_code: int, error: str = ""):
        self.log_event("run", {
            "command": command,
            "latency_ms": latency_ms,
            "exit_code": exit_code,
            "success": exit_code == 0,
            "error": error,
        })

    def track_error(self, command: str, error_type: str, message: str):
        self.log_event("error", {
            "command": command,
            "error_type": error_type,
            "message": message,
        })

    def track_identity_failure(self, command: str, identity: str, observed: float, expected: float):
        """An internal identity (worked-example identity, duality, VP gap) failed."""
        self.log_event("identity_failure", {
            "command": command,
            "identity": identity,
            "observed": observed,
            "expected": expected,
        })

    def get_events(self, event_type: Optional[str] = None) -> list[dict]:
        """Fetch all tracked events, optionally filtered by type."""
        if event_type:
            return [e for e in self._buffer if e["event_type"] == event_type]
        return list(self._buffer)

    def read_history(self) -> list[dict]:
        """Events from earlier processes, as written to events.jsonl."""
        if not self.enabled:
            return []
        log_file = self._telemetry_dir / EVENTS_FILE
        if not log_file.exists():
            return []
        events = []
        with open(log_file, encoding="utf-8") as f:
            for line in f:
                try:
                    events.append(json.loads(line))
                except json.JSONDecodeError:
                    self.logger.warning("Skipping unreadable telemetry line")
        return events

    def get_summary(self, history: bool = False) -> dict:
        """
        Run counts per command and per exit code, plus failed identities.
        ``history=True`` summarises events.jsonl instead of this process.
        """
        events = self.read_history() if history else self._buffer
        runs = [e for e in events if e.get("event_type") == "run"]
        ok = sum(1 for r in runs if r["exit_code"] == 0)
        return {
            "total_runs": len(runs),
            "identity_failures": sum(1 for e in events if e.get("event_type") == "identity_failure"),
            "success_rate": ok / len(runs) if runs else 0.0,
            "avg_latency_ms": sum(r["latency_ms"] for r in runs) / len(runs) if runs else 0.0,
            "runs_by_command": dict(Counter(r["command"] for r in runs)),
            "exit_codes": dict(Counter(r["exit_code"] for r in runs)),
        }

    def flush(self):
        """Force flush queue to disk (blocking)."""
        if self.enabled:
            self._log_queue.join()

    def shutdown(self):
        """Gracefully complete writing queued events."""
        if self.enabled:
            self._shutdown_event.set()
            if self._worker_thread.is_alive():
                self._worker_thread.join(timeout=2.0)


_telemetry: Optional[TelemetryLogger] = None
_lock = threading.Lock()


def get_telemetry() -> TelemetryLogger:
    """Process-wide logger, created on first use."""
    global _telemetry
    with _lock:
        if _telemetry is None:
            _telemetry = TelemetryLogger(enabled=telemetry_enabled_by_env())
        return _telemetry


def reset_telemetry(enabled: Optional[bool] = None) -> TelemetryLogger:
    """Replace the singleton (used by tests to start from an empty buffer)."""
    global _telemetry
    with _lock:
        if _telemetry is not None:
            _telemetry.shutdown()
        flag = telemetry_enabled_by_env() if enabled is None else enabled
        _telemetry = TelemetryLogger(enabled=flag)
        return _telemetry
