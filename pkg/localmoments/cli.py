import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from itertools import accumulate
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Union

import numpy as np

from . import __version__
from .exceptions import InvalidMomentsError, MomentError, ParameterRangeError, UnsolvableError
from .extensions import DiscreteMeasure
from .moments import MomentSequence, SolvabilityReport
from .oracle import MeasureSpec, SupportMode, moments_of, random_measure, verify_solution
from .orthopoly import numerical_rank
from .solvers import FamilyMember, LocalProblem, MomentSolver, ParameterRange

logger = logging.getLogger(__name__)

COMMANDS = (
    "check-stieltjes",
    "check-hausdorff",
    "check-gap",
    "tau-range",
    "alpha-range",
    "solve-stieltjes",
    "solve-hausdorff",
    "solve-gap",
    "solve-local",
    "oracle-roundtrip",
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSOLVABLE = 2

OutputFormat = Literal["json", "csv"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Sweep:
    lo: float
    hi: float
    steps: int

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise UsageError(f"A sweep needs at least 2 steps, got {self.steps}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise UsageError("Sweep endpoints must be finite")

    @classmethod
    def parse(cls, text: str) -> "Sweep":
        """Parses ``lo:hi:steps``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"Expected a sweep as lo:hi:steps, got {text!r}")
        try:
            return cls(lo=float(parts[0]), hi=float(parts[1]), steps=int(parts[2]))
        except ValueError as e:
            raise UsageError(f"Invalid sweep {text!r}: {e}") from e

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "Sweep":
        try:
            return cls(lo=float(payload["lo"]), hi=float(payload["hi"]), steps=int(payload["steps"]))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"Invalid sweep object {payload!r}") from e

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.lo, self.hi, self.steps)]


Parameter = Union[None, float, Sweep]


@dataclass
class JobConfig:
    """One CLI invocation: a command, its input and the options that override the input file."""

    command: str
    input: Optional[Path] = None
    lam: Optional[float] = None
    tau: Parameter = None
    alpha: Parameter = None
    tol: Optional[float] = None
    format: OutputFormat = "json"
    seed: int = 0
    atoms: int = 2
    mode: SupportMode = "interval"
    verbose: int = 0
    payload: Dict[str, Any] = field(default_factory=dict)


# Input


def load_payload(path: Path) -> Dict[str, Any]:
    """Reads the JSON job file; ``-`` reads standard input."""
    text = sys.stdin.read() if str(path) == "-" else path.read_text(encoding="utf-8")
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise InvalidMomentsError("The input file must hold a JSON object")
    return payload


def _parameter(value: Any) -> Parameter:
    if value is None or isinstance(value, Sweep):
        return value
    if isinstance(value, dict):
        return Sweep.from_json(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise UsageError(f"Expected a number or a sweep object, got {value!r}")
    return float(value)


def _moments(config: JobConfig, key: str = "moments") -> MomentSequence:
    values = config.payload.get(key)
    if not isinstance(values, list):
        raise UsageError(f"The input file needs a {key!r} list")
    return MomentSequence(values, lam=config.lam)


def _lam(config: JobConfig) -> float:
    if config.lam is None:
        raise UsageError(f"{config.command} needs --lambda or a 'lambda' entry")
    return config.lam


def _scalar(value: Parameter, name: str, default: Optional[float] = None) -> float:
    if isinstance(value, Sweep):
        raise UsageError(f"This command takes a single {name}, not a sweep")
    if value is None:
        if default is None:
            raise UsageError(f"Missing --{name}")
        return default
    return value


def resolve(config: JobConfig) -> JobConfig:
    """Merges the input file into the config; command-line flags win."""
    if config.input is not None:
        config.payload = load_payload(config.input)
    payload = config.payload
    if config.lam is None and payload.get("lambda") is not None:
        config.lam = float(payload["lambda"])
    config.tau = config.tau if config.tau is not None else _parameter(payload.get("tau"))
    config.alpha = config.alpha if config.alpha is not None else _parameter(payload.get("alpha"))
    return config


# Output


def measure_rows(measure: DiscreteMeasure) -> List[Dict[str, Any]]:
    cumulative = list(accumulate(measure.masses))
    return [
        dict(index=i, atom=t, mass=mu, cumulative_mass=total)
        for i, (t, mu, total) in enumerate(zip(measure.atoms, measure.masses, cumulative))
    ]


def _cell(value: Any) -> Any:
    # shortest round-trip text for every float, numpy scalars included
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(str(_cell(v)) for v in value) + "]"
    return value


def _write_csv(rows: List[Dict[str, Any]], columns: Sequence[str]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])


def emit(result: Dict[str, Any], fmt: OutputFormat) -> None:
    if fmt == "json":
        payload = {key: value for key, value in result.items() if key != "measure_rows"}
        print(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    if "rows" in result:
        _write_csv(result["rows"], ["parameter", "index", "atom", "mass", "cumulative_mass", "residual", "flagged"])
    elif "measure" in result:
        _write_csv(result["measure_rows"], ["index", "atom", "mass", "cumulative_mass"])
    elif "conditions" in result:
        _write_csv(result["conditions"], ["label", "name", "passed", "min_eigenvalue", "witness"])
    else:
        _write_csv([result["range"]], ["kind", "lo", "hi", "exterior", "empty", "unique", "boundary_notes"])


def _measure_result(command: str, measure: DiscreteMeasure, seq: MomentSequence, **extra: Any) -> Dict[str, Any]:
    return dict(
        command=command,
        measure=measure.to_dict(),
        measure_rows=measure_rows(measure),
        residual=verify_solution(measure, seq).max_residual,
        **extra,
    )


def _report_result(command: str, report: SolvabilityReport) -> Dict[str, Any]:
    return dict(command=command, **report.to_dict(), failed=[c.name for c in report.failed()])


def _range_result(command: str, admissible: ParameterRange) -> Dict[str, Any]:
    return dict(command=command, range=admissible.to_dict())


def _sweep_result(
    command: str, members: List[FamilyMember], seq: MomentSequence, residual_tol: float
) -> Dict[str, Any]:
    rows: List[Dict[str, Any]] = []
    for member in members:
        residual = verify_solution(member.measure, seq).max_residual
        flagged = residual > residual_tol or not member.admissible
        if residual > residual_tol:
            logger.warning("Residual %g above %g at parameter %r", residual, residual_tol, member.parameter)
        for row in measure_rows(member.measure) or [dict(index=-1, atom=math.nan, mass=0.0, cumulative_mass=0.0)]:
            rows.append(dict(parameter=member.parameter, **row, residual=residual, flagged=flagged))
    return dict(command=command, rows=rows)


# Commands


def _oracle_roundtrip(config: JobConfig, solver: MomentSolver) -> Dict[str, Any]:
    lam = config.lam or 1.0
    spec = MeasureSpec(support_mode=config.mode, atom_count=config.atoms, seed=config.seed, lam=lam)
    measure = random_measure(spec)
    seq = moments_of(measure, 2 * (config.atoms - 1), lam=lam)
    if config.mode == "half-axis":
        solution = solver.solve_stieltjes(seq, 0.0)
    elif config.mode == "interval":
        solution = solver.solve_hausdorff(seq, lam, 0.0)
    else:
        admissible = solver.alpha_range(seq, lam)
        solution = solver.solve_gap(seq, lam, admissible.interior_point())
    report = solver.verify(solution, seq)
    return dict(
        command=config.command,
        generated=measure.to_dict(),
        moments=list(seq.values),
        measure=solution.to_dict(),
        measure_rows=measure_rows(solution),
        residual=report.max_residual,
        passed=report.passed,
    )


def execute(config: JobConfig, solver: MomentSolver) -> Dict[str, Any]:
    command = config.command
    if command == "oracle-roundtrip":
        return _oracle_roundtrip(config, solver)
    if command == "solve-local":
        local = config.payload.get("local")
        if not isinstance(local, dict):
            raise UsageError("solve-local needs a 'local' object with 'a' and 'b'")
        problem = LocalProblem(MomentSequence(local.get("a", [])), MomentSequence(local.get("b", [])), _lam(config))
        measure = solver.solve_local(problem, _scalar(config.tau, "tau", 0.0), _scalar(config.alpha, "alpha"))
        result = _measure_result(command, measure, problem.a)
        result["window_moments"] = list(problem.b.values)
        return result

    seq = _moments(config)
    if command == "check-stieltjes":
        return _report_result(command, solver.check_stieltjes(seq))
    if command == "check-hausdorff":
        return _report_result(command, solver.check_hausdorff(seq, _lam(config)))
    if command == "check-gap":
        return _report_result(command, solver.check_gap(seq, _lam(config)))
    if command == "tau-range":
        return _range_result(command, solver.tau_range(seq, _lam(config)))
    if command == "alpha-range":
        return _range_result(command, solver.alpha_range(seq, _lam(config)))

    if command == "solve-stieltjes":
        if isinstance(config.tau, Sweep):
            members = [
                FamilyMember(parameter=tau, measure=solver.solve_stieltjes(seq, tau), admissible=True)
                for tau in config.tau.values()
            ]
            return _sweep_result(command, members, seq, solver.residual_tol)
        tau = _scalar(config.tau, "tau", 0.0)
        unique = numerical_rank(seq, solver.tol) <= seq.order
        return _measure_result(command, solver.solve_stieltjes(seq, tau), seq, parameter=tau, unique=unique)
    if command == "solve-hausdorff":
        lam = _lam(config)
        if isinstance(config.tau, Sweep):
            members = solver.hausdorff_family(seq, lam, config.tau.values())
            return _sweep_result(command, members, seq, solver.residual_tol)
        tau = _scalar(config.tau, "tau", 0.0)
        unique = solver.tau_range(seq, lam).unique
        return _measure_result(command, solver.solve_hausdorff(seq, lam, tau), seq, parameter=tau, unique=unique)
    if command == "solve-gap":
        lam = _lam(config)
        if isinstance(config.alpha, Sweep):
            members = solver.gap_family(seq, lam, config.alpha.values())
            return _sweep_result(command, members, seq, solver.residual_tol)
        alpha = _scalar(config.alpha, "alpha")
        return _measure_result(command, solver.solve_gap(seq, lam, alpha), seq, parameter=alpha, unique=False)
    raise UsageError(f"Unknown command {command!r}")


def run(config: JobConfig) -> int:
    """Runs one job and prints its report; returns the exit code (0 solved, 2 unsolvable, 1 error)."""
    solver = MomentSolver.from_env()
    if config.tol is not None:
        solver.tol = config.tol
    result = execute(resolve(config), solver)
    emit(result, config.format)
    if result.get("verdict") is False or result.get("passed") is False or result.get("range", {}).get("empty"):
        return EXIT_UNSOLVABLE
    return EXIT_OK


# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> Any:
        raise UsageError(message)


def _sweep_or_float(text: str) -> Union[float, Sweep]:
    return Sweep.parse(text) if ":" in text else float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="local-moments", description="Truncated and local moment problems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS, help="What to run.")
    parser.add_argument("input", nargs="?", type=Path, help="JSON job file, '-' for standard input.")
    parser.add_argument("--lambda", dest="lam", type=float, help="Window (or gap) length Λ.")
    parser.add_argument("--tau", type=_sweep_or_float, help="τ, or a sweep lo:hi:steps.")
    parser.add_argument("--alpha", type=_sweep_or_float, help="α, or a sweep lo:hi:steps.")
    parser.add_argument("--sweep", type=Sweep.parse, help="Sweep the free parameter of the command over lo:hi:steps.")
    parser.add_argument("--tol", type=float, help="Relative PSD tolerance (default: 1e-10).")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="Report format (default: json).")
    parser.add_argument("--seed", type=int, default=0, help="Seed of oracle-roundtrip (default: 0).")
    parser.add_argument("--atoms", type=int, default=2, help="Atom count of oracle-roundtrip (default: 2).")
    parser.add_argument(
        "--mode",
        choices=("half-axis", "interval", "gap-complement"),
        default="interval",
        help="Support of the oracle-roundtrip measure (default: interval).",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG.")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> JobConfig:
    args = build_parser().parse_args(argv)
    if args.command != "oracle-roundtrip" and args.input is None:
        raise UsageError(f"{args.command} needs an input file")
    tau, alpha = args.tau, args.alpha
    if args.sweep is not None:
        if args.command == "solve-gap":
            alpha = args.sweep
        elif args.command in ("solve-stieltjes", "solve-hausdorff"):
            tau = args.sweep
        else:
            raise UsageError(f"{args.command} does not support --sweep")
    return JobConfig(
        command=args.command,
        input=args.input,
        lam=args.lam,
        tau=tau,
        alpha=alpha,
        tol=args.tol,
        format=args.format,
        seed=args.seed,
        atoms=args.atoms,
        mode=args.mode,
        verbose=args.verbose,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as e:
        print(f"local-moments: {e}", file=sys.stderr)
        return EXIT_ERROR

    level = {0: logging.WARNING, 1: logging.INFO}.get(config.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    try:
        return run(config)
    except json.JSONDecodeError as e:
        print(f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}", file=sys.stderr)
        return EXIT_ERROR
    except (UnsolvableError, ParameterRangeError) as e:
        condition = e.condition if isinstance(e, UnsolvableError) else e.parameter
        print(json.dumps(dict(error=e.code, message=e.message, condition=condition), ensure_ascii=False))
        return EXIT_UNSOLVABLE
    except (MomentError, UsageError, OSError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
