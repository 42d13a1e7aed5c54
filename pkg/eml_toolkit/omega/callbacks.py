# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the DovetailCallbacks class."""

# standard libraries
from typing import TYPE_CHECKING, Any, Callable, List

# local sources
from eml_toolkit.omega.program_run import ProgramRun

if TYPE_CHECKING:
    from eml_toolkit.omega.dovetailer import OmegaBound


class DovetailCallbacks:
    """Holds the functions that are called on the events of a dovetail run.

    Attributes:
        program_started_callbacks: Called with the ProgramRun of every admitted program.
        program_halted_callbacks: Called with the ProgramRun and the new OmegaBound on a halt.
        dovetail_finished_callbacks: Called with the number of executed steps at the end.
    """

    def __init__(self) -> None:
        self.program_started_callbacks: List[Callable[[ProgramRun], Any]] = []
        self.program_halted_callbacks: List[Callable[[ProgramRun, "OmegaBound"], Any]] = []
        self.dovetail_finished_callbacks: List[Callable[[int], Any]] = []

    def register_callback_program_started(
        self, callback_method: Callable[[ProgramRun], Any]
    ) -> None:
        self.program_started_callbacks.append(callback_method)

    def register_callback_program_halted(
        self, callback_method: Callable[[ProgramRun, "OmegaBound"], Any]
    ) -> None:
        self.program_halted_callbacks.append(callback_method)

    def register_callback_dovetail_finished(self, callback_method: Callable[[int], Any]) -> None:
        self.dovetail_finished_callbacks.append(callback_method)
