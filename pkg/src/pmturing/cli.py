"""Command line: ``pmturing tm ...`` and ``pmturing pm ...``.

Exit status 0 on success, 1 on a failed check or divergence, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .engine import render_state
from .fixtures import PM_FIXTURES, pm_fixture
from .halting import PreconditionViolation, decide
from .restrictions import CHECKS, DomainSampler
from .t1 import InvalidMachine, compile_t1, cosim_t1, psi_t1
from .t2 import compile_t2, cosim_t2, psi_t2, reachable_globals
from .tmfile import TMFileError, load_tm_file
from .trace import render_trace
from .turing import TMError, start_config, split_word, tm_run, validate

CONSTRUCTIONS = {
    "t1": (compile_t1, psi_t1, cosim_t1, 1),
    "t2": (compile_t2, psi_t2, cosim_t2, 2),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _word(tm, text):
    return split_word(text, tm.input_alphabet)


def cmd_tm_validate(args, out):
    problems = validate(load_tm_file(args.file))
    if not problems:
        out.write("ok\n")
        return 0
    for p in problems:
        out.write(f"violation: {p}\n")
    return 1


def cmd_tm_run(args, out):
    tm = load_tm_file(args.file)
    result = tm_run(tm, _word(tm, args.input), args.max_steps)
    if args.trace:
        out.write(render_trace(result))
    out.write(f"verdict={result.verdict.value} steps={len(result.trace) - 1}\n")
    return 0


def cmd_pm_compile(args, out):
    tm = load_tm_file(args.file)
    compile_, psi, _, _ = CONSTRUCTIONS[args.construction]
    compile_(tm)
    out.write(render_state(psi(tm, start_config(tm, _word(tm, args.input)))) + "\n")
    return 0


def cmd_pm_cosim(args, out):
    tm = load_tm_file(args.file)
    report = CONSTRUCTIONS[args.construction][2](tm, _word(tm, args.input), args.max_steps)
    if args.trace:
        out.write(render_trace(report))
    else:
        out.write(report.summary() + "\n")
        if report.divergence is not None:
            out.write(f"detail: {report.divergence.detail}\n")
    return 0 if report.ok else 1


def _sampler(args, tm, pm):
    if args.samples is not None or args.seed is not None:
        return DomainSampler.randomized(
            args.seed if args.seed is not None else 0,
            args.samples if args.samples is not None else 10_000,
        )
    if args.exhaustive or (pm.global_space.is_finite and pm.particle_space.is_finite):
        if args.construction == "t2":
            return DomainSampler.exhaustive(
                globals=reachable_globals(tm), label="(globals with dq=start)"
            )
        return DomainSampler.exhaustive()
    return DomainSampler.randomized(0, 10_000)


def cmd_pm_check(args, out):
    if args.exhaustive and (args.samples is not None or args.seed is not None):
        raise UsageError("--exhaustive excludes --samples/--seed")
    tm = load_tm_file(args.file)
    compile_, psi, _, number = CONSTRUCTIONS[args.construction]
    pm = compile_(tm)
    chosen = int(args.restrictions[1]) if args.restrictions else number
    sampler = _sampler(args, tm, pm)
    if chosen == 3:
        report = CHECKS[3](pm, sampler)
    else:
        instance = psi(tm, start_config(tm, _word(tm, args.input)))
        report = CHECKS[chosen](pm, sampler, instance, args.max_steps)
    out.write(report.render() + "\n")
    return 0 if report.ok else 1


def cmd_pm_decide(args, out):
    if args.fixture not in PM_FIXTURES:
        raise UsageError(f"unknown fixture {args.fixture!r}; choose from {', '.join(PM_FIXTURES)}")
    pm, instance = pm_fixture(args.fixture)
    try:
        verdict = decide(pm, instance, args.cap, args.override)
    except PreconditionViolation as exc:
        out.write(str(exc) + "\n")
        return 1
    line = verdict.render()
    if verdict.overridden:
        line += " override=true"
    out.write(line + "\n")
    return 0


def cmd_pm_measure(args, out):
    from .report import plot_resources, resource_csv
    from .restrictions import measure_resources

    tm = load_tm_file(args.file)
    compile_, psi, _, _ = CONSTRUCTIONS[args.construction]
    pm = compile_(tm)
    rows = measure_resources(pm, psi(tm, start_config(tm, _word(tm, args.input))), args.max_steps)
    out.write(resource_csv(rows))
    if args.plot:
        plot_resources(rows, args.plot, f"{args.construction} on {args.input!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmturing", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    tm = top.add_parser("tm").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = tm.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(func=cmd_tm_validate)
    p = tm.add_parser("run")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_tm_run)

    pm = top.add_parser("pm").add_subparsers(dest="command", required=True, parser_class=_Parser)

    def machine_command(name, func, input_required=True):
        p = pm.add_parser(name)
        p.add_argument("file")
        p.add_argument("--construction", choices=sorted(CONSTRUCTIONS), required=True)
        p.add_argument("--input", required=input_required, default="")
        p.add_argument("--max-steps", type=int, default=10_000)
        p.set_defaults(func=func)
        return p

    machine_command("compile", cmd_pm_compile)
    machine_command("cosim", cmd_pm_cosim).add_argument("--trace", action="store_true")
    p = machine_command("check", cmd_pm_check, input_required=False)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--restrictions", choices=("t1", "t2", "t3"),
                   help="restriction set to check (default: the construction's own)")
    machine_command("measure", cmd_pm_measure, input_required=False).add_argument(
        "--plot", metavar="PNG", help="also write a figure of the resource curves"
    )

    p = pm.add_parser("decide-halt")
    p.add_argument("--fixture", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--override", action="store_true")
    p.set_defaults(func=cmd_pm_decide)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except TMFileError as exc:
        err.write(f"parse error:\n{exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except InvalidMachine as exc:
        err.write(f"invalid machine: {exc}\n")
        return 1
    except TMError as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
