# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the ProgramRun class."""

# local sources
from eml_toolkit.omega.machines import Continue, ToyMachine


class ProgramRun:
    """Represents a program that was admitted to a dovetail run.

    ProgramRun objects are passed to the callbacks for program start and halt.

    Attributes:
        run_id: Position of the program in the admission order, starting at 0.
        code: The program bits.
        payload: The decoded payload.
        state: The current machine state.
        steps: Number of steps executed so far.
        halted: A boolean indicating whether the program has halted.
    """

    def __init__(self, run_id: int, code: str, payload: int, machine: ToyMachine) -> None:
        """Initialize the object.

        Args:
            run_id: Position of the program in the admission order.
            code: The program bits.
            payload: The decoded payload.
            machine: The machine the program runs on.
        """
        self.run_id: int = run_id
        self.code: str = code
        self.payload: int = payload
        self.machine: ToyMachine = machine
        self.state: int = machine.initial_state(payload)
        self.steps: int = 0
        self.halted: bool = False

    def advance(self) -> bool:
        """Executes one machine step and returns True if the program halted with it."""
        result = self.machine.step(self.payload, self.state, self.steps)
        self.steps += 1
        if isinstance(result, Continue):
            self.state = result.state
            return False
        self.halted = True
        return True

    def __repr__(self) -> str:
        return f"ProgramRun({self.code!r}, payload={self.payload}, steps={self.steps})"
