"""ASCII trace output for machine runs, particle runs and co-simulations."""

from __future__ import annotations

from .cosim import CosimReport
from .engine import PMRun, render_trace_lines
from .turing import TMRun, render_config


def tm_lines(trace) -> list[str]:
    return [render_config(t, c) for t, c in enumerate(trace, 1)]


def cosim_lines(report: CosimReport) -> list[str]:
    """Interleave machine and particle lines, then the summary line."""
    tm, pm = tm_lines(report.tm_trace), render_trace_lines(report.pm_trace)
    out = []
    for t in range(max(len(tm), len(pm))):
        if t < len(tm):
            out.append("TM " + tm[t])
        if t < len(pm):
            out.append("PM " + pm[t])
    out.append(report.summary())
    return out


def render_trace(result) -> str:
    if isinstance(result, CosimReport):
        lines = cosim_lines(result)
    elif isinstance(result, TMRun):
        lines = tm_lines(result.trace)
    elif isinstance(result, PMRun):
        lines = render_trace_lines(result.trace)
    else:
        raise TypeError(f"cannot render {type(result).__name__}")
    return "\n".join(lines) + "\n"
