# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the dovetailer that enumerates lower bounds of a halting probability.

The schedule is fair: in round r the r-th program of the machine is admitted
and then every admitted program that has not halted yet runs one more step,
in admission order. Each halt adds 2^-|p| to the mass and emits a new
OmegaBound. The budget counts single program steps over the whole run.
"""

# standard libraries
from dataclasses import dataclass
from enum import Enum
import logging
from typing import Dict, Iterator, List, Optional, Tuple

# local sources
from eml_toolkit.omega.callbacks import DovetailCallbacks
from eml_toolkit.omega.machines import ToyMachine
from eml_toolkit.omega.program_run import ProgramRun
from eml_toolkit.rigor.dyadic import Dyadic, ZERO
from eml_toolkit.validation.errors import BudgetExhausted, InconsistentPrefix, PrefixViolation

logger = logging.getLogger(__name__)

DEFAULT_SOLVE_BUDGET: int = 4_000_000


@dataclass(frozen=True)
class OmegaBound:
    """A lower bound of the halting probability together with its provenance.

    Attributes:
        mass: The exact sum of 2^-|p| over the halted programs.
        halted: (program bits, steps used) of every halted program, in halting order.
        dovetail_steps: The number of steps executed when the bound was emitted.
    """

    mass: Dyadic
    halted: Tuple[Tuple[str, int], ...]
    dovetail_steps: int

    def to_json(self) -> Dict:
        return {
            "mass": str(self.mass),
            "halted": len(self.halted),
            "dovetail_steps": self.dovetail_steps,
        }


class Dovetailer:
    """Runs the programs of a ToyMachine under the fair schedule.

    Attributes:
        machine: The ToyMachine.
        budget: The maximum number of program steps.
        callbacks: The DovetailCallbacks notified on admissions, halts and the end of the run.
        steps: The number of steps executed so far.
        mass: The current lower bound.
        halted: (program bits, steps used) of the halted programs.
        runs: All admitted programs.
    """

    def __init__(
        self, machine: ToyMachine, budget: int, callbacks: Optional[DovetailCallbacks] = None
    ) -> None:
        """Initialize the object.

        Raises:
            ValueError: If budget is smaller than 1.
        """
        if budget < 1:
            raise ValueError("The dovetail budget must be at least 1")
        self.machine: ToyMachine = machine
        self.budget: int = budget
        self.callbacks: DovetailCallbacks = callbacks or DovetailCallbacks()
        self.steps: int = 0
        self.mass: Dyadic = ZERO
        self.halted: List[Tuple[str, int]] = []
        self.runs: List[ProgramRun] = []

    def halted_codes(self) -> List[str]:
        return [code for code, _ in self.halted]

    def run(self) -> Iterator[OmegaBound]:
        """Executes the schedule and yields a new OmegaBound after every halt.

        The generator ends when the budget is used up; dovetail_finished is
        called then.
        """
        programs = self.machine.programs()
        active: List[ProgramRun] = []
        round_number = 0
        while self.steps < self.budget:
            code = next(programs, None)
            if code is not None:
                payload = self.machine.decode(code)
                program_run = ProgramRun(round_number, code, payload, self.machine)
                self.runs.append(program_run)
                active.append(program_run)
                for callback in self.callbacks.program_started_callbacks:
                    callback(program_run)
            elif not active:
                break
            round_number += 1

            still_active = []
            for program_run in active:
                if self.steps >= self.budget:
                    still_active.append(program_run)
                    continue
                self.steps += 1
                if program_run.advance():
                    yield self._on_halt(program_run)
                else:
                    still_active.append(program_run)
            active = still_active

        logger.debug(
            "dovetail of %s finished after %d steps and %d rounds, mass %s",
            self.machine.name,
            self.steps,
            round_number,
            self.mass,
        )
        for callback in self.callbacks.dovetail_finished_callbacks:
            callback(self.steps)

    def _on_halt(self, program_run: ProgramRun) -> OmegaBound:
        self.mass = self.mass + Dyadic.power_of_two(-len(program_run.code))
        self.halted.append((program_run.code, program_run.steps))
        bound = OmegaBound(self.mass, tuple(self.halted), self.steps)
        for callback in self.callbacks.program_halted_callbacks:
            callback(program_run, bound)
        return bound


def iter_dovetail(
    machine: ToyMachine, budget: int, callbacks: Optional[DovetailCallbacks] = None
) -> Iterator[OmegaBound]:
    """Yields the OmegaBounds of a dovetail run as they are found."""
    return Dovetailer(machine, budget, callbacks).run()


def dovetail(
    machine: ToyMachine, budget: int, callbacks: Optional[DovetailCallbacks] = None
) -> List[OmegaBound]:
    """Dovetails the programs of machine for budget steps.

    Returns:
        The OmegaBounds in the order they were found; their masses strictly increase.

    Raises:
        ValueError: If budget is smaller than 1.
    """
    return list(iter_dovetail(machine, budget, callbacks))


def kraft_check(machine: ToyMachine, max_len: int) -> Dyadic:
    """Sums 2^-|c| over the valid codes of length <= max_len and checks prefix-freeness.

    In lexicographic order a code that is a prefix of another one is directly
    followed by a code it is a prefix of, so comparing neighbours suffices.

    Raises:
        PrefixViolation: If one valid code is a proper prefix of another.
    """
    codes = sorted(machine.valid_codes(max_len))
    for first, second in zip(codes, codes[1:]):
        if second.startswith(first):
            raise PrefixViolation(first, second)
    total = ZERO
    for code in codes:
        total = total + Dyadic.power_of_two(-len(code))
    return total


class Verdict(Enum):
    HALTS = "Halts"
    LOOPS = "Loops"


def _binary_value(omega_bits: str) -> Dyadic:
    if not omega_bits or set(omega_bits) - {"0", "1"}:
        raise ValueError(f"'{omega_bits}' is not a non-empty bit string")
    return Dyadic(int(omega_bits, 2), -len(omega_bits))


def halting_from_omega_prefix(
    machine: ToyMachine,
    omega_bits: str,
    n: Optional[int] = None,
    budget: int = DEFAULT_SOLVE_BUDGET,
    exact: bool = False,
    callbacks: Optional[DovetailCallbacks] = None,
) -> Dict[str, Verdict]:
    """Decides halting of all programs of length <= n from leading bits of Omega.

    With a truncated prefix v of Omega the programs are dovetailed until the
    mass reaches v. A program of length <= n that has not halted by then can
    not halt: Omega would grow to at least v + 2^-n, which the prefix rules out.
    If omega_bits is the complete expansion of Omega (exact=True), the
    dovetail stops as soon as the mass exceeds v - 2^-n, and n may be larger
    than the prefix.

    Args:
        machine: The ToyMachine.
        omega_bits: The leading binary digits of Omega after the point.
        n: The maximum program length to classify, len(omega_bits) by default.
        budget: The maximum number of dovetail steps.
        exact: Whether omega_bits is the complete binary expansion of Omega.
        callbacks: Optional DovetailCallbacks.

    Returns:
        A Verdict for every valid program of length <= n.

    Raises:
        ValueError: If omega_bits is not a bit string, or n exceeds the prefix
            length for a truncated prefix.
        InconsistentPrefix: If the mass exceeds what the prefix admits.
        BudgetExhausted: If the budget ends before the mass target is reached.
    """
    value = _binary_value(omega_bits)
    max_len = len(omega_bits) if n is None else n
    if max_len < 1:
        raise ValueError("The program length must be at least 1")
    if exact:
        admissible = value
        target = value - Dyadic.power_of_two(-max_len)
    else:
        if max_len > len(omega_bits):
            raise ValueError("A truncated prefix of n bits decides programs of length <= n only")
        admissible = value + Dyadic.power_of_two(-len(omega_bits))
        target = value

    def reached(mass: Dyadic) -> bool:
        return mass > target if exact else mass >= target

    dovetailer = Dovetailer(machine, budget, callbacks)
    if not reached(dovetailer.mass):
        for bound in dovetailer.run():
            if bound.mass > admissible:
                raise InconsistentPrefix(
                    f"Mass {bound.mass} exceeds {admissible}, "
                    f"'{omega_bits}' is not a prefix of the halting probability of {machine.name}"
                )
            if reached(bound.mass):
                break
        else:
            raise BudgetExhausted(
                dovetailer.steps,
                f"Mass {dovetailer.mass} did not reach the target of '{omega_bits}'",
            )

    halted = set(dovetailer.halted_codes())
    logger.debug(
        "mass %s reached after %d steps, classifying programs up to %d bits",
        dovetailer.mass,
        dovetailer.steps,
        max_len,
    )
    return {
        code: Verdict.HALTS if code in halted else Verdict.LOOPS
        for code in machine.valid_codes(max_len)
    }
