"""Lock-step co-simulation of a Turing machine and its compiled particle method."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .engine import PMState, ParticleMethod, run
from .turing import Configuration, TuringMachine, tm_run


class EmulationError(ValueError):
    """A particle state that cannot be translated back; ``criterion`` names why."""

    def __init__(self, criterion: str, message: str):
        super().__init__(message)
        self.criterion = criterion


@dataclass(frozen=True)
class Divergence:
    t: int
    criterion: str
    detail: str


@dataclass
class CosimReport:
    construction: str
    tm_trace: list
    pm_trace: list
    criteria: tuple
    divergence: Optional[Divergence] = None
    halted: bool = False
    checked_steps: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.divergence is None

    def summary(self) -> str:
        if self.divergence is None:
            return "COSIM ok"
        d = self.divergence
        return f"COSIM divergence t={d.t} criterion={d.criterion}"


# A checker yields (criterion, detail) for every violated step-boundary criterion.
Checker = Callable[[TuringMachine, Configuration, PMState, int], Iterable[tuple[str, str]]]


def cosimulate(
    label: str,
    tm: TuringMachine,
    pm: ParticleMethod,
    psi: Callable[[TuringMachine, Configuration], PMState],
    psi_inv: Callable[[PMState], Configuration],
    checker: Checker,
    criteria: tuple,
    word,
    max_steps: int,
) -> CosimReport:
    tm_result = tm_run(tm, word, max_steps)
    instance = psi(tm, tm_result.trace[0])
    pm_result = run(pm, instance, max_steps)
    report = CosimReport(label, tm_result.trace, pm_result.trace, criteria)

    for t, (alpha, state) in enumerate(zip(tm_result.trace, pm_result.trace), 1):
        report.checked_steps = t
        try:
            back = psi_inv(state)
        except EmulationError as exc:
            report.divergence = Divergence(t, exc.criterion, str(exc))
            return report
        if back != alpha:
            report.divergence = Divergence(t, "psi_inv_mismatch", f"{back} != {alpha}")
            return report
        for criterion, detail in checker(tm, alpha, state, t):
            report.divergence = Divergence(t, criterion, detail)
            return report
        if bool(pm.stop(state.g)) != tm.halting(alpha.state):
            report.divergence = Divergence(
                t, "stop_mismatch", f"f(g)={bool(pm.stop(state.g))} with q={alpha.state}"
            )
            return report

    if len(tm_result.trace) != len(pm_result.trace):
        t = min(len(tm_result.trace), len(pm_result.trace)) + 1
        report.divergence = Divergence(
            t, "stop_mismatch",
            f"machine trace has {len(tm_result.trace)} configurations, "
            f"particle trace has {len(pm_result.trace)} states",
        )
        return report
    report.halted = pm_result.halted
    return report
