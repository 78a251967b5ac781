"""Command-line front end: construction, verification, bounds and exact solving as JSON."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from achromatic_planes.bounds import (
    asymptotic_ratio,
    check_theorem4_hypotheses,
    known_rule,
    known_value,
    product_bounds,
    theorem4_bounds,
)
from achromatic_planes.colouring import (
    MODES,
    colour_frequencies,
    load_matrix,
    matrix_to_json,
    verify_matrix,
)
from achromatic_planes.config import load_config
from achromatic_planes.constructions import build_colouring
from achromatic_planes.errors import (
    AchromaticError,
    ExtensionFailed,
    HypothesisViolated,
    MatrixFormatError,
    PreconditionViolated,
    STooSmall,
)
from achromatic_planes.gf import factor_prime_power, field_create
from achromatic_planes.plane import load_plane, plane_construct, plane_to_json, plane_verify
from achromatic_planes.solver import DEFAULT_PROGRESS_INTERVAL, achromatic_exact
from achromatic_planes.version import read_version

logger = logging.getLogger("AchromaticCli")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = (
    "plane",
    "verify-plane",
    "construct",
    "verify",
    "bounds",
    "known",
    "exact",
    "ratio",
    "product-bounds",
)

Payload = Tuple[Dict[str, Any], bool]


@dataclass
class CliConfig:
    """One parsed invocation. ``validate`` checks the numeric arguments of the command."""

    command: str
    r: Optional[int] = None
    s: Optional[int] = None
    t: int = 0
    p: Optional[int] = None
    q: Optional[int] = None
    input: Optional[str] = None
    output: Optional[str] = None
    mode: str = "line"
    budget: Optional[float] = None
    progress_interval: int = DEFAULT_PROGRESS_INTERVAL
    max_witnesses: int = 10
    indent: int = 2
    witness: bool = False
    include_matrix: bool = False
    log_level: int = logging.WARNING
    log_file: Optional[str] = None
    quiet: bool = False

    def validate(self) -> None:
        """Check the arguments against the preconditions of the target operation.

        Raises:
            HypothesisViolated: If a theorem hypothesis fails
            PreconditionViolated: If an argument is missing or out of range
            NotPrimePower: If a plane order is not a prime power
        """
        if self.command not in COMMANDS:
            raise PreconditionViolated(f"unknown command {self.command!r}")
        if self.command in ("plane", "construct"):
            factor_prime_power(self._need("r", self.r))
        if self.command == "construct":
            r, s = self._need("r", self.r), self._need("s", self.s)
            if s <= r:
                raise STooSmall(f"Lemma 3 requires s >= r+1 (got s={s}, r={r})")
            if not 0 <= self.t <= r:
                raise HypothesisViolated(f"Theorem 4 requires t in [0, r] (got t={self.t}, r={r})")
            if self.t >= 1 and s < r**3 + 1:
                raise HypothesisViolated(f"Theorem 4 requires s >= r^3+1 (got s={s}, r={r})")
        if self.command == "bounds":
            check_theorem4_hypotheses(self._need("r", self.r), self._need("s", self.s), self.t)
        if self.command == "ratio" and self._need("r", self.r) < 2:
            raise HypothesisViolated(f"the limit theorem requires r >= 2 (got r={self.r})")
        if self.command in ("known", "exact", "product-bounds"):
            p, q = self._need("p", self.p), self._need("q", self.q)
            if p < 1 or q < 1:
                raise PreconditionViolated(f"p and q must be at least 1 (got p={p}, q={q})")
        if self.command == "exact" and self.budget is not None and self.budget <= 0:
            raise PreconditionViolated(f"budget must be positive (got {self.budget})")
        if self.command in ("verify", "verify-plane") and not self.input:
            raise PreconditionViolated(f"{self.command} needs an input file or '-'")
        if self.mode not in MODES:
            raise PreconditionViolated(f"mode must be one of {MODES} (got {self.mode!r})")

    def _need(self, name: str, value: Optional[int]) -> int:
        if value is None:
            raise PreconditionViolated(f"{self.command} needs {name}")
        return value


def setup_logging(level: int, log_file: Optional[str] = None) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding="utf-8"))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _read_input(source: str) -> str:
    try:
        if source == "-":
            return sys.stdin.read()
        return Path(source).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MatrixFormatError(f"{source} is not UTF-8 text: {e}") from e


def _plane(config: CliConfig) -> Payload:
    assert config.r is not None
    return plane_to_json(plane_construct(field_create(config.r))), True


def _verify_plane(config: CliConfig) -> Payload:
    assert config.input is not None
    plane = load_plane(_read_input(config.input))
    report = plane_verify(plane, max_witnesses=config.max_witnesses)
    return report.to_dict(), report.passed


def _construct(config: CliConfig) -> Payload:
    assert config.r is not None and config.s is not None
    return matrix_to_json(build_colouring(config.r, config.s, config.t)), True


def _verify(config: CliConfig) -> Payload:
    assert config.input is not None
    matrix = load_matrix(_read_input(config.input))
    report = verify_matrix(matrix, mode=config.mode, max_witnesses=config.max_witnesses)
    data = report.to_dict()
    data["min_frequency"] = colour_frequencies(matrix).minimum
    return data, report.passed


def _bounds(config: CliConfig) -> Payload:
    assert config.r is not None and config.s is not None
    report = theorem4_bounds(config.r, config.s, config.t, attach_witness=config.witness)
    data = report.to_dict()
    if config.include_matrix and report.witness is not None:
        data["witness"]["matrix"] = matrix_to_json(report.witness)
    passed = report.witness_summary is None or bool(report.witness_summary["row_complete"])
    return data, passed


def _known(config: CliConfig) -> Payload:
    assert config.p is not None and config.q is not None
    p, q = config.p, config.q
    return {"p": p, "q": q, "value": known_value(p, q), "rule": known_rule(p, q)}, True


def _exact(config: CliConfig) -> Payload:
    assert config.p is not None and config.q is not None
    result = achromatic_exact(
        config.p, config.q, budget=config.budget, progress_interval=config.progress_interval
    )
    return result.to_dict(), True


def _ratio(config: CliConfig) -> Payload:
    assert config.r is not None
    return asymptotic_ratio(config.r).to_dict(), True


def _product_bounds(config: CliConfig) -> Payload:
    assert config.p is not None and config.q is not None
    report = product_bounds(config.p, config.q, attach_witness=config.witness)
    data = report.to_dict()
    if config.include_matrix and report.witness is not None:
        data["witness"]["matrix"] = matrix_to_json(report.witness)
    return data, True


HANDLERS: Dict[str, Callable[[CliConfig], Payload]] = {
    "plane": _plane,
    "verify-plane": _verify_plane,
    "construct": _construct,
    "verify": _verify,
    "bounds": _bounds,
    "known": _known,
    "exact": _exact,
    "ratio": _ratio,
    "product-bounds": _product_bounds,
}


def _summary(command: str, data: Dict[str, Any], passed: bool) -> str:
    status = "pass" if passed else "FAIL"
    if command == "verify":
        return f"verify: {status}, {data['colour_count']} colours ({data['mode']} mode)"
    if command == "verify-plane":
        failed = [c["name"] for c in data["checks"] if not c["passed"]]
        return f"verify-plane: {status}" + (f" ({', '.join(failed)})" if failed else "")
    if command in ("bounds", "product-bounds"):
        lower = data["lower"]["value"] if data["lower"] else None
        upper = data["upper"]["value"] if data["upper"] else None
        return f"{command}: [{lower}, {upper}]"
    if command == "exact":
        relation = "=" if data["complete"] else ">="
        return f"exact: achr {relation} {data['value']} ({data['nodes']} nodes)"
    return f"{command}: done"


def run(config: CliConfig) -> int:
    """Validate and dispatch one invocation, writing its JSON artifact.

    Returns:
        int: 0 on success, 1 when a verification fails, 2 on a usage error
    """
    try:
        config.validate()
        data, passed = HANDLERS[config.command](config)
    except ExtensionFailed as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (AchromaticError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    text = json.dumps(data, indent=config.indent)
    if config.output:
        Path(config.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if not config.quiet and config.log_level <= logging.INFO:
        print(_summary(config.command, data, passed), file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="achromatic-planes",
        description="Complete colourings of K_p x K_q from finite projective planes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s plane 3                        # PG(2,3) as JSON
  %(prog)s construct 2 3 | %(prog)s verify - --mode row
  %(prog)s bounds 2 9 0                   # exact value 63
  %(prog)s exact 2 3 --budget 60          # branch and bound, value 4
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {read_version()}")
    parser.add_argument("--config", help="JSON configuration file merged over the defaults")
    parser.add_argument("--log-file", help="Also write log records to this file")
    parser.add_argument("--output", "-o", help="Write the JSON artifact here instead of stdout")
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Enable verbose logging (INFO level)"
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging (DEBUG level)")
    parser.add_argument("--quiet", action="store_true", help="Suppress the human summary")

    sub = parser.add_subparsers(dest="command", required=True)

    plane = sub.add_parser("plane", help="Emit PG(2, r) as JSON")
    plane.add_argument("r", type=int)

    verify_plane = sub.add_parser("verify-plane", help="Check a plane JSON file")
    verify_plane.add_argument("input", help="Plane JSON file, or - for stdin")

    construct = sub.add_parser("construct", help="Emit the colouring matrix for (r, s, t)")
    construct.add_argument("r", type=int)
    construct.add_argument("s", type=int)
    construct.add_argument("t", type=int, nargs="?", default=0)

    verify = sub.add_parser("verify", help="Check a colouring matrix JSON file")
    verify.add_argument("input", help="Matrix JSON file, or - for stdin")
    verify.add_argument("--mode", choices=MODES, default="line")

    bounds = sub.add_parser("bounds", help="Theorem 4 bracket for (r, s, t)")
    bounds.add_argument("r", type=int)
    bounds.add_argument("s", type=int)
    bounds.add_argument("t", type=int)
    bounds.add_argument("--witness", action="store_true", help="Build and verify the witness")
    bounds.add_argument(
        "--include-matrix", action="store_true", help="Embed the witness matrix (implies --witness)"
    )

    known = sub.add_parser("known", help="Known exact value for p <= 6")
    known.add_argument("p", type=int)
    known.add_argument("q", type=int)

    exact = sub.add_parser("exact", help="Exact value by branch and bound")
    exact.add_argument("p", type=int)
    exact.add_argument("q", type=int)
    exact.add_argument("--budget", type=float, help="Time budget in seconds")

    ratio = sub.add_parser("ratio", help="Limit ratio for p = r^2+r+1")
    ratio.add_argument("r", type=int)

    product = sub.add_parser("product-bounds", help="Bounds for K_p x K_q from a closed form")
    product.add_argument("p", type=int)
    product.add_argument("q", type=int)
    product.add_argument("--witness", action="store_true", help="Build and verify the witness")
    product.add_argument(
        "--include-matrix", action="store_true", help="Embed the witness matrix (implies --witness)"
    )
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> CliConfig:
    """Parse the command line and merge it over the configuration file and defaults."""
    args = build_parser().parse_args(argv)
    settings = load_config(args.config)
    include_matrix = getattr(args, "include_matrix", False)
    budget = getattr(args, "budget", None)
    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    return CliConfig(
        command=args.command,
        r=getattr(args, "r", None),
        s=getattr(args, "s", None),
        t=getattr(args, "t", 0),
        p=getattr(args, "p", None),
        q=getattr(args, "q", None),
        input=getattr(args, "input", None),
        output=args.output,
        mode=getattr(args, "mode", "line"),
        budget=budget if budget is not None else settings["solver"]["budget_seconds"],
        progress_interval=int(settings["solver"]["progress_interval"]),
        max_witnesses=int(settings["verification"]["max_witnesses"]),
        indent=int(settings["output"]["indent"]),
        witness=getattr(args, "witness", False) or include_matrix,
        include_matrix=include_matrix,
        log_level=level,
        log_file=args.log_file,
        quiet=args.quiet,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point for command-line usage."""
    config = parse_args(argv)
    setup_logging(config.log_level, config.log_file)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
