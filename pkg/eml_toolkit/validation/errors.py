# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the exception hierarchy of the toolkit."""


class EmlToolkitError(Exception):
    """Base class of all errors raised by the toolkit."""


class ParseError(EmlToolkitError):
    """Raised when a text is not a word of the EML or EL grammar.

    Attributes:
        position: Zero based character offset of the offending token.
        text: The text that was parsed.
    """

    kind: str = "parse error"

    def __init__(self, position: int, text: str = "", detail: str = "") -> None:
        self.position: int = position
        self.text: str = text
        self.detail: str = detail
        message = f"{self.kind} at position {position}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class UnexpectedToken(ParseError):
    kind = "unexpected token"


class UnbalancedParens(ParseError):
    kind = "unbalanced parentheses"


class TrailingInput(ParseError):
    kind = "trailing input"


class CutViolation(EmlToolkitError):
    """Raised by box_log when the argument box touches the closed negative real axis."""


class OverflowGuard(EmlToolkitError):
    """Raised by box_exp when the real part of the argument exceeds the magnitude bound."""


class PrefixViolation(EmlToolkitError):
    """Raised when one valid program code is a proper prefix of another.

    Attributes:
        code1: The shorter code.
        code2: The code that starts with code1.
    """

    def __init__(self, code1: str, code2: str) -> None:
        self.code1: str = code1
        self.code2: str = code2
        super().__init__(f"'{code1}' is a prefix of '{code2}'")


class InconsistentPrefix(EmlToolkitError):
    """Raised when the halting mass grows beyond what the given Omega prefix allows."""


class BudgetExhausted(EmlToolkitError):
    """Raised when a dovetail run uses up its step budget before reaching its target.

    Attributes:
        steps: Number of machine steps executed.
    """

    def __init__(self, steps: int, message: str = "") -> None:
        self.steps: int = steps
        super().__init__(message or f"step budget exhausted after {steps} steps")


class UnknownMachine(EmlToolkitError):
    """Raised when no toy machine is registered under the requested name."""
