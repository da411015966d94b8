"""
cli_ui.py: rich rendering for the ergomax CLI
Human-readable views of RunReports (``--table``), error panels on stderr and
the dashboard shown when ``ergomax`` runs without a subcommand.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping, Optional

from rich import box
from rich.columns import Columns
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ergomax.core.report import RunReport, encode_extended
from ergomax.schemas import IdentityCheck
from ergomax.theme import BORDER_STYLES, ERGOMAX_THEME, PALETTE

console = Console(theme=ERGOMAX_THEME, highlight=False)
err_console = Console(theme=ERGOMAX_THEME, highlight=False, stderr=True)


def _fmt(value: Any) -> str:
    value = encode_extended(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return ", ".join(_fmt(v) for v in value)
    return str(value)


def render_header(title: str) -> None:
    text = Text()
    text.append("ergomax", style="ergo.header")
    text.append(f"  ·  {title}", style="ergo.muted")
    console.print(text)


# ─────────────────────────────────────────────────────────────────────────────
# REPORTS
# ─────────────────────────────────────────────────────────────────────────────

def _key_value_panel(title: str, items: Mapping[str, Any], border: str) -> Panel:
    table = Table.grid(padding=(0, 2), expand=True)
    table.add_column(style="ergo.key", min_width=20)
    table.add_column(style="ergo.value")
    for key, val in items.items():
        table.add_row(Text(str(key).replace("_", " ")), Text(_fmt(val)))
    return Panel(table, title=Text(title, style=f"bold {PALETTE['amber']}"), border_style=border, box=box.ROUNDED)


def _rows_table(title: str, rows: list[dict]) -> Table:
    table = Table(
        title=title,
        show_header=True,
        header_style=f"bold {PALETTE['sky']}",
        border_style=PALETTE["steel"],
        box=box.SIMPLE_HEAVY,
    )
    columns = list(rows[0])
    for col in columns:
        table.add_column(col.replace("_", " "))
    for row in rows:
        table.add_row(*(_fmt(row.get(col)) for col in columns))
    return table


def render_report(report: RunReport) -> None:
    """Scalars go in one key/value panel; lists of records become their own tables."""
    results = report.results
    scalars = {}
    tables = []
    for key, val in results.items():
        if isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            tables.append((key, val))
        elif isinstance(val, dict) and val and all(not isinstance(v, (dict, list)) for v in val.values()):
            tables.append((key, [{"name": k, "value": v} for k, v in val.items()]))
        elif isinstance(val, dict):
            scalars.update({f"{key}.{k}": v for k, v in val.items()})
        else:
            scalars[key] = val

    render_header(report.command)
    console.print(_key_value_panel("Results", scalars, BORDER_STYLES["report"]))
    for key, rows in tables:
        flat = [{k: v for k, v in row.items() if not isinstance(v, list) or len(v) <= 6} for row in rows]
        console.print(_rows_table(key.replace("_", " "), flat))


# ─────────────────────────────────────────────────────────────────────────────
# STATUS PANELS
# ─────────────────────────────────────────────────────────────────────────────

def render_error(message: str) -> None:
    err_console.print(
        Panel(
            Text(f"ERROR: {message}", style="ergo.error"),
            border_style=BORDER_STYLES["error"],
            box=box.ROUNDED,
            padding=(0, 2),
        )
    )


def render_success(message: str) -> None:
    console.print(
        Panel(
            Text(f"SUCCESS: {message}", style="ergo.success"),
            border_style=BORDER_STYLES["success"],
            box=box.ROUNDED,
            padding=(0, 2),
        )
    )


def render_identity_failures(command: str, failures: Iterable[IdentityCheck]) -> None:
    lines = Text()
    for check in failures:
        lines.append(
            f"{check.name}: observed {check.observed!r}, expected {check.expected!r} (tol {check.tol:g})\n",
            style="ergo.error",
        )
    err_console.print(
        Panel(
            lines,
            title=Text(f"{command}: identity failed", style="ergo.error"),
            border_style=BORDER_STYLES["error"],
            box=box.ROUNDED,
            padding=(0, 2),
        )
    )


def render_dashboard(
    commands: Mapping[str, str],
    tolerances: Mapping[str, float],
    systems: Iterable[str],
    runs: Optional[Mapping[str, Any]] = None,
) -> None:
    """Command list and effective tolerance table side by side, then recorded runs if any."""
    cmds = Table.grid(padding=(0, 2))
    cmds.add_column(style="ergo.command")
    cmds.add_column(style="dim white")
    for name, help_text in commands.items():
        cmds.add_row(f"ergomax {name}", help_text)

    tols = Table.grid(padding=(0, 2))
    tols.add_column(style="ergo.key", justify="right")
    tols.add_column(style="ergo.value")
    for name, value in tolerances.items():
        tols.add_row(name, f"{value:g}")

    panels = [
        Panel(cmds, title="[bold white]Commands[/]", border_style=BORDER_STYLES["header"], box=box.ROUNDED),
        Panel(tols, title="[bold white]Tolerances[/]", border_style=BORDER_STYLES["header"], box=box.ROUNDED),
    ]
    if runs and runs["total_runs"]:
        history = Table.grid(padding=(0, 2))
        history.add_column(style="ergo.key", justify="right")
        history.add_column(style="ergo.value")
        history.add_row("runs", str(runs["total_runs"]))
        history.add_row("success", f"{runs['success_rate']:.0%}")
        history.add_row("identity failures", str(runs["identity_failures"]))
        history.add_row("avg latency", f"{runs['avg_latency_ms']:.1f} ms")
        for name, count in sorted(runs["runs_by_command"].items()):
            history.add_row(name, str(count))
        panels.append(
            Panel(history, title="[bold white]Recorded runs[/]", border_style=BORDER_STYLES["header"], box=box.ROUNDED)
        )

    console.print()
    render_header("ergodic optimization on subshifts of finite type")
    console.print(Columns(panels, expand=True))
    console.print(Text("  built-in systems: " + ", ".join(systems), style="ergo.muted"))
    console.print()


__all__ = [
    "console",
    "err_console",
    "render_header",
    "render_report",
    "render_error",
    "render_success",
    "render_identity_failures",
    "render_dashboard",
]
