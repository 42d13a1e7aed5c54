# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the ErrorHandler class."""

# standard libraries
import sys
from typing import Optional, TextIO

# local sources
from eml_toolkit.validation.errors import EmlToolkitError, ParseError


class ErrorHandler:
    """Keeps track of the errors reported for one input and prints them.

    One ErrorHandler is created per processed input (a command line argument
    or a line of a file). Library code raises exceptions; the command line
    front end hands them to an ErrorHandler, which renders them with the
    offending column marked.

    Attributes:
        source: The text the errors refer to (may be empty).
        stream: The stream the messages are written to.
        total_error_count: Number of errors printed so far.
    """

    def __init__(self, source: str = "", stream: Optional[TextIO] = None) -> None:
        """Initialize the object.

        Args:
            source: The text the errors refer to.
            stream: The output stream, sys.stderr if not given.
        """
        self.source: str = source
        self.stream: TextIO = stream if stream is not None else sys.stderr
        self.total_error_count: int = 0

    def print_error(self, error_msg: str, position: Optional[int] = None) -> None:
        """Prints the message and, if a position is given, the source with a caret under it.

        Args:
            error_msg: The message to print.
            position: Zero based offset into the source.
        """
        self.total_error_count += 1
        print(f"error: {error_msg}", file=self.stream)
        if position is not None and self.source:
            print(f"  {self.source}", file=self.stream)
            print("  " + " " * position + "^", file=self.stream)

    def report(self, error: EmlToolkitError) -> None:
        """Prints a toolkit exception, with a caret line for parse errors."""
        if isinstance(error, ParseError):
            self.print_error(str(error), position=error.position)
        else:
            self.print_error(str(error))

    def has_error(self) -> bool:
        return self.total_error_count > 0
