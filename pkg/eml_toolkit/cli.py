# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the command line interface of the toolkit.

Exit codes:
    0: success (eval: the result is a certified Value)
    1: parse errors, failed identities, inconsistent Omega prefixes and prefix violations
    2: eval: the expression is undefined
    3: eval: the evaluation is undecided; omega: the step budget ran out
    64: usage errors, including unknown machine names
"""

# standard libraries
import argparse
from dataclasses import dataclass
import json
import logging
import sys
from typing import Dict, List, Optional, TextIO, Tuple, Union

# local sources
from eml_toolkit.compiler import el_compiler
from eml_toolkit.compiler.el_compiler import CompiledExpr
from eml_toolkit.helpers import dump_json, exact_decimal, format_box, format_mass
from eml_toolkit.identities import DEFAULT_SAMPLES, DEFAULT_SEED, run_identity_suite
from eml_toolkit.model.eml_expr import (
    EmlExpr,
    from_json,
    metrics,
    render,
    render_path,
    subexpression,
    to_json,
)
from eml_toolkit.model.ranking import enumerate_expressions, rank, unrank
from eml_toolkit.omega.callbacks import DovetailCallbacks
from eml_toolkit.omega.dovetailer import (
    DEFAULT_SOLVE_BUDGET,
    OmegaBound,
    dovetail,
    halting_from_omega_prefix,
    kraft_check,
)
from eml_toolkit.omega.machines import ToyMachine, get_machine
from eml_toolkit.omega.program_run import ProgramRun
from eml_toolkit.parser.parsing_utils import parse, parse_el, read_source_lines
from eml_toolkit.rigor import evaluator
from eml_toolkit.rigor.dyadic import Dyadic
from eml_toolkit.rigor.evaluator import (
    BranchUndecided,
    EvalLimits,
    EvalOutcome,
    UndefinedAt,
    Value,
    eval_compiled,
)
from eml_toolkit.validation.error_handler import ErrorHandler
from eml_toolkit.validation.errors import (
    BudgetExhausted,
    EmlToolkitError,
    InconsistentPrefix,
    ParseError,
    PrefixViolation,
    UnknownMachine,
)

EXIT_OK: int = 0
EXIT_ERROR: int = 1
EXIT_UNDEFINED: int = 2
EXIT_UNDECIDED: int = 3
EXIT_USAGE: int = 64

DEFAULT_PRECISION_BITS: int = 64
DEFAULT_MAX_WORKING_BITS: int = 4096
DEFAULT_OMEGA_BUDGET: int = 100_000


class UsageError(Exception):
    """Raised instead of the SystemExit argparse uses for invalid command lines."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    """The options shared by all subcommands.

    Attributes:
        command: The subcommand, e.g. "eval" or "omega run".
        precision_bits: The accuracy k requested from the evaluator.
        max_working_bits: The largest working precision the evaluator may use.
        json: Whether the output is one JSON document.
        seed: The seed of the sampling commands.
        verbose: Whether DEBUG logging is written to stderr.
    """

    command: str
    precision_bits: int = DEFAULT_PRECISION_BITS
    max_working_bits: int = DEFAULT_MAX_WORKING_BITS
    json: bool = False
    seed: int = DEFAULT_SEED
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.precision_bits < 1:
            raise UsageError("the precision must be at least 1 bit")
        if self.max_working_bits < self.precision_bits:
            raise UsageError("--max-working-bits must not be smaller than the precision")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        command = args.command
        if command == "omega":
            command = f"omega {args.omega_command}"
        return cls(
            command=command,
            precision_bits=getattr(args, "k", DEFAULT_PRECISION_BITS),
            max_working_bits=args.max_working_bits,
            json=args.json,
            seed=args.seed,
            verbose=args.verbose,
        )

    def limits(self) -> EvalLimits:
        return EvalLimits(target_bits=self.precision_bits, max_working_bits=self.max_working_bits)


def _natural(text: str) -> int:
    value = int(text, 0)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _positive(text: str) -> int:
    value = int(text, 0)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    common.add_argument("--verbose", action="store_true", help="write debug logging to stderr")
    common.add_argument(
        "--max-working-bits",
        type=_positive,
        default=DEFAULT_MAX_WORKING_BITS,
        help="upper bound of the evaluator's working precision",
    )
    common.add_argument(
        "--seed", type=lambda text: int(text, 0), default=DEFAULT_SEED, help="sampling seed"
    )

    parser = _ArgumentParser(
        prog="eml_toolkit",
        description="Parse, enumerate, compile and rigorously evaluate EML expressions.",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    command = commands.add_parser("parse", parents=[common], help="parse and echo an expression")
    command.add_argument("expr", nargs="?", help="the EML expression")
    command.add_argument("--file", help="parse every line of a file instead")

    command = commands.add_parser("unrank", parents=[common], help="expression of a rank")
    command.add_argument("n", type=_natural)

    command = commands.add_parser("rank", parents=[common], help="rank of an expression")
    command.add_argument("expr")

    command = commands.add_parser("compile", parents=[common], help="compile an EL term")
    command.add_argument("term")

    command = commands.add_parser("eval", parents=[common], help="certified evaluation")
    command.add_argument("expr", help="an EML expression or an EL term")
    command.add_argument("-k", type=_positive, default=DEFAULT_PRECISION_BITS, help="bits")
    command.add_argument("--el", action="store_true", help="read the input as an EL term")
    command.add_argument(
        "--exact", action="store_true", help="also print the exact dyadic box endpoints"
    )

    command = commands.add_parser(
        "verify-identities", parents=[common], help="run the substitution identity suite"
    )
    command.add_argument("--samples", type=_positive, default=DEFAULT_SAMPLES)

    command = commands.add_parser("enumerate", parents=[common], help="list expressions by rank")
    command.add_argument("count", type=_natural)
    command.add_argument("--start", type=_natural, default=0)

    omega = commands.add_parser("omega", help="halting probabilities of toy machines")
    omega_commands = omega.add_subparsers(
        dest="omega_command", required=True, parser_class=_ArgumentParser
    )
    command = omega_commands.add_parser("run", parents=[common], help="dovetail a machine")
    command.add_argument("machine")
    command.add_argument("--budget", type=_positive, default=DEFAULT_OMEGA_BUDGET)

    command = omega_commands.add_parser("kraft", parents=[common], help="Kraft sum of the codes")
    command.add_argument("machine")
    command.add_argument("--max-len", type=_positive, required=True)

    command = omega_commands.add_parser(
        "solve", parents=[common], help="decide halting from Omega bits"
    )
    command.add_argument("machine")
    command.add_argument(
        "--prefix",
        help="leading binary digits of Omega; a prefix that spells out the known expansion "
        "of the machine, up to trailing zeros, is treated as exact",
    )
    command.add_argument(
        "--exact", action="store_true", help="the prefix is the complete expansion of Omega"
    )
    command.add_argument("--max-len", type=_positive, help="longest program to classify")
    command.add_argument("--budget", type=_positive, default=DEFAULT_SOLVE_BUDGET)
    return parser


class CommandLine:
    """Executes one parsed command line.

    Attributes:
        args: The parsed arguments.
        config: The CliConfig.
        stdout: The stream for results.
        stderr: The stream the ErrorHandler writes to.
        error_handlers: One ErrorHandler per input that failed.
    """

    def __init__(
        self, args: argparse.Namespace, config: CliConfig, stdout: TextIO, stderr: TextIO
    ) -> None:
        self.args: argparse.Namespace = args
        self.config: CliConfig = config
        self.stdout: TextIO = stdout
        self.stderr: TextIO = stderr
        self.error_handlers: List[ErrorHandler] = []

    def write(self, line: str = "") -> None:
        print(line, file=self.stdout)

    def write_json(self, document: Dict) -> None:
        print(dump_json(document), file=self.stdout)

    def fail(self, error: EmlToolkitError, source: str = "") -> None:
        error_handler = ErrorHandler(source, self.stderr)
        error_handler.report(error)
        self.error_handlers.append(error_handler)

    def execute(self) -> int:
        handlers = {
            "parse": self.parse,
            "unrank": self.unrank,
            "rank": self.rank,
            "compile": self.compile,
            "eval": self.eval,
            "verify-identities": self.verify_identities,
            "enumerate": self.enumerate,
            "omega run": self.omega_run,
            "omega kraft": self.omega_kraft,
            "omega solve": self.omega_solve,
        }
        exit_code = handlers[self.config.command]()
        if exit_code == EXIT_OK and any(h.has_error() for h in self.error_handlers):
            return EXIT_ERROR
        return exit_code

    def _parse_eml(self, text: str) -> Optional[EmlExpr]:
        try:
            return parse(text)
        except ParseError as error:
            self.fail(error, text)
            return None

    def _expression_document(self, expr: EmlExpr) -> Dict:
        return {"expr": render(expr), "ast": to_json(expr), "metrics": metrics(expr).to_json()}

    def parse(self) -> int:
        if (self.args.expr is None) == (self.args.file is None):
            raise UsageError("parse needs either an expression or --file")
        if self.args.file is None:
            expr = self._parse_eml(self.args.expr)
            if expr is None:
                return EXIT_ERROR
            if self.config.json:
                self.write_json(self._expression_document(expr))
            else:
                self.write(render(expr))
            return EXIT_OK

        documents = []
        for text in read_source_lines(self.args.file):
            expr = self._parse_eml(text)
            if expr is None:
                continue
            if self.config.json:
                documents.append(self._expression_document(expr))
            else:
                self.write(render(expr))
        if self.config.json:
            self.write_json({"expressions": documents})
        return EXIT_OK

    def unrank(self) -> int:
        expr = unrank(self.args.n)
        if self.config.json:
            self.write_json({"rank": self.args.n, **self._expression_document(expr)})
        else:
            self.write(render(expr))
        return EXIT_OK

    def rank(self) -> int:
        expr = self._parse_eml(self.args.expr)
        if expr is None:
            return EXIT_ERROR
        if self.config.json:
            self.write_json({"expr": render(expr), "rank": rank(expr)})
        else:
            self.write(str(rank(expr)))
        return EXIT_OK

    def _compile(self, text: str) -> Optional[CompiledExpr]:
        try:
            return el_compiler.compile(parse_el(text))
        except ParseError as error:
            self.fail(error, text)
            return None

    def compile(self) -> int:
        compiled = self._compile(self.args.term)
        if compiled is None:
            return EXIT_ERROR
        expr_metrics = metrics(compiled.expr)
        if self.config.json:
            self.write_json(
                {
                    "expr": render(compiled.expr),
                    "metrics": expr_metrics.to_json(),
                    **compiled.to_json(),
                }
            )
            return EXIT_OK
        self.write(render(compiled.expr))
        self.write(
            f"e_count {expr_metrics.e_count}, depth {expr_metrics.depth}, "
            f"nodes {expr_metrics.node_count}"
        )
        if compiled.exact is not None:
            self.write(f"exact value {compiled.exact}")
        return EXIT_OK

    def _read_eval_input(self) -> Optional[Union[EmlExpr, CompiledExpr]]:
        """Reads an EML expression, an AST object or an EL term if the text is neither."""
        text = self.args.expr
        if self.args.el:
            return self._compile(text)
        if text.lstrip().startswith("{"):
            try:
                return from_json(json.loads(text))
            except ValueError as error:
                raise UsageError(f"invalid AST object: {error}") from None
        try:
            return parse(text)
        except ParseError as eml_error:
            try:
                return el_compiler.compile(parse_el(text))
            except ParseError as el_error:
                # report the reading that got further
                error = eml_error if eml_error.position >= el_error.position else el_error
                self.fail(error, text)
                return None

    def eval(self) -> int:
        source = self._read_eval_input()
        if source is None:
            return EXIT_ERROR
        limits = self.config.limits()
        if isinstance(source, CompiledExpr):
            expr, annotations = source.expr, source.provenance
            outcome = eval_compiled(source, limits)
        else:
            expr, annotations = source, None
            outcome = evaluator.eval(source, limits=limits)

        if self.config.json:
            document = outcome.to_json()
            if isinstance(outcome, Value):
                re, im = evaluator.approximate(expr, limits.target_bits, annotations, limits)
                document["approximation"] = {"re": str(re), "im": str(im)}
                document["decimal"] = format_box(outcome.box)
            self.write_json(document)
        else:
            self.write(_describe_outcome(outcome))
            if not isinstance(outcome, Value):
                self.write(f"subexpression {render(subexpression(expr, outcome.path))}")
            elif self.args.exact:
                self.write(f"box {outcome.box}")
        return _outcome_exit_code(outcome)

    def verify_identities(self) -> int:
        results = run_identity_suite(samples=self.args.samples, seed=self.config.seed)
        if self.config.json:
            self.write_json({"seed": self.config.seed, "results": [r.to_json() for r in results]})
        else:
            self.write(f"{'identity':<20}{'samples':>8}{'passed':>8}  status")
            for result in results:
                status = "ok" if result.ok else "FAILED"
                self.write(f"{result.name:<20}{result.samples:>8}{result.passed:>8}  {status}")
                for failure in result.failures:
                    self.write(f"    {failure}")
        return EXIT_OK if all(result.ok for result in results) else EXIT_ERROR

    def enumerate(self) -> int:
        rows = []
        for n, expr in enumerate_expressions(self.args.count, self.args.start):
            expr_metrics = metrics(expr)
            if self.config.json:
                rows.append({"rank": n, "expr": render(expr), "metrics": expr_metrics.to_json()})
            else:
                self.write(f"{n:>8}  e_count {expr_metrics.e_count:>3}  {render(expr)}")
        if self.config.json:
            self.write_json({"expressions": rows})
        return EXIT_OK

    def _machine(self) -> ToyMachine:
        return get_machine(self.args.machine)

    def omega_run(self) -> int:
        machine = self._machine()
        callbacks = DovetailCallbacks()
        if not self.config.json:
            callbacks.register_callback_program_halted(self._print_halt)
        bounds = dovetail(machine, self.args.budget, callbacks)
        mass = bounds[-1].mass if bounds else Dyadic()
        gap = _gap_to_omega(machine, mass)
        if self.config.json:
            self.write_json(
                {
                    "machine": machine.name,
                    "budget": self.args.budget,
                    "bounds": [bound.to_json() for bound in bounds],
                    "mass": str(mass),
                    "gap_to_omega": str(gap) if gap is not None else None,
                }
            )
            return EXIT_OK
        self.write(f"final mass {format_mass(mass)}")
        if gap is not None:
            self.write(f"Omega - mass = {gap.to_fraction()} = {exact_decimal(gap)}")
        return EXIT_OK

    def _print_halt(self, program_run: ProgramRun, bound: OmegaBound) -> None:
        self.write(
            f"halt {program_run.code} payload {program_run.payload} "
            f"steps {program_run.steps} mass {format_mass(bound.mass)}"
        )

    def omega_kraft(self) -> int:
        machine = self._machine()
        total = kraft_check(machine, self.args.max_len)
        if self.config.json:
            self.write_json(
                {"machine": machine.name, "max_len": self.args.max_len, "sum": str(total)}
            )
        else:
            self.write(f"Kraft sum up to {self.args.max_len} bits: {format_mass(total)}")
        return EXIT_OK

    def omega_solve(self) -> int:
        machine = self._machine()
        prefix = self.args.prefix
        if prefix is None:
            if not self.args.exact or machine.omega_bits is None:
                raise UsageError(
                    "--prefix is required unless --exact is given for a machine with known Omega"
                )
            prefix = machine.omega_bits
        exact = self.args.exact or _spells_omega(machine, prefix)
        try:
            verdicts = halting_from_omega_prefix(
                machine, prefix, self.args.max_len, self.args.budget, exact=exact
            )
        except ValueError as error:
            raise UsageError(str(error)) from None
        if self.config.json:
            self.write_json(
                {
                    "machine": machine.name,
                    "prefix": prefix,
                    "exact": exact,
                    "verdicts": {code: verdict.value for code, verdict in verdicts.items()},
                }
            )
        else:
            for code, verdict in verdicts.items():
                self.write(f"{code:<24}payload {machine.decode(code):<8}{verdict.value}")
        return EXIT_OK


def _spells_omega(machine: ToyMachine, prefix: str) -> bool:
    """True if prefix is the known binary expansion of Omega followed only by zeros."""
    if machine.omega_bits is None or not prefix.startswith(machine.omega_bits):
        return False
    return set(prefix[len(machine.omega_bits) :]) <= {"0"}


def _describe_outcome(outcome: EvalOutcome) -> str:
    if isinstance(outcome, Value):
        return f"{format_box(outcome.box)} (working precision {outcome.working_bits} bits)"
    if isinstance(outcome, UndefinedAt):
        return f"undefined at {render_path(outcome.path)}: {outcome.reason}"
    assert isinstance(outcome, BranchUndecided)
    path = render_path(outcome.path)
    return f"undecided at {path}: {outcome.reason}, last box {outcome.last_box}"


def _outcome_exit_code(outcome: EvalOutcome) -> int:
    if isinstance(outcome, Value):
        return EXIT_OK
    if isinstance(outcome, UndefinedAt):
        return EXIT_UNDEFINED
    return EXIT_UNDECIDED


def _gap_to_omega(machine: ToyMachine, mass: Dyadic) -> Optional[Dyadic]:
    if machine.omega_bits is None:
        return None
    omega = Dyadic(int(machine.omega_bits, 2), -len(machine.omega_bits))
    return omega - mass


_ERROR_EXIT_CODES: Tuple[Tuple[type, int], ...] = (
    (UnknownMachine, EXIT_USAGE),
    (BudgetExhausted, EXIT_UNDECIDED),
    (InconsistentPrefix, EXIT_ERROR),
    (PrefixViolation, EXIT_ERROR),
    (EmlToolkitError, EXIT_ERROR),
)


def run(
    argv: List[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None
) -> int:
    """Runs one command line and returns its exit code.

    Args:
        argv: The arguments without the program name.
        stdout: The stream for results, sys.stdout if not given.
        stderr: The stream for errors, sys.stderr if not given.
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    error_handler = ErrorHandler(stream=stderr)
    try:
        args = build_parser().parse_args(argv)
        config = CliConfig.from_args(args)
    except UsageError as error:
        error_handler.print_error(f"usage: {error}")
        return EXIT_USAGE

    if config.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=stderr)

    try:
        return CommandLine(args, config, stdout, stderr).execute()
    except UsageError as error:
        error_handler.print_error(f"usage: {error}")
        return EXIT_USAGE
    except EmlToolkitError as error:
        error_handler.report(error)
        for error_class, exit_code in _ERROR_EXIT_CODES:
            if isinstance(error, error_class):
                return exit_code
        return EXIT_ERROR
    except OSError as error:
        error_handler.print_error(str(error))
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
