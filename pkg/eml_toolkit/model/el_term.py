# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the ElTerm classes of the closed-form term language.

An ElTerm is what a user writes ("log(2) + pi", "2^10", ...). The compiler turns
it into an EmlExpr built from 1 and E only.
"""

# standard libraries
from dataclasses import dataclass


class ElTerm:
    """Base class of all EL term constructors."""

    __slots__ = ()

    # binding strength used by render_el
    precedence: int = 5


@dataclass(frozen=True)
class Lit1(ElTerm):
    pass


@dataclass(frozen=True)
class LitInt(ElTerm):
    """An integer literal of arbitrary size.

    Attributes:
        value: The integer.
    """

    value: int


@dataclass(frozen=True)
class ConstE(ElTerm):
    pass


@dataclass(frozen=True)
class ConstPi(ElTerm):
    pass


@dataclass(frozen=True)
class ConstI(ElTerm):
    pass


@dataclass(frozen=True)
class Exp(ElTerm):
    arg: ElTerm


@dataclass(frozen=True)
class Log(ElTerm):
    """Principal branch logarithm of arg."""

    arg: ElTerm


@dataclass(frozen=True)
class Sqrt(ElTerm):
    """Principal square root, compiled as arg ^ (1/2)."""

    arg: ElTerm


@dataclass(frozen=True)
class Neg(ElTerm):
    arg: ElTerm
    precedence = 3


@dataclass(frozen=True)
class Inv(ElTerm):
    arg: ElTerm
    precedence = 2


@dataclass(frozen=True)
class Add(ElTerm):
    left: ElTerm
    right: ElTerm
    precedence = 1


@dataclass(frozen=True)
class Sub(ElTerm):
    left: ElTerm
    right: ElTerm
    precedence = 1


@dataclass(frozen=True)
class Mul(ElTerm):
    left: ElTerm
    right: ElTerm
    precedence = 2


@dataclass(frozen=True)
class Div(ElTerm):
    left: ElTerm
    right: ElTerm
    precedence = 2


@dataclass(frozen=True)
class Pow(ElTerm):
    """Principal branch power exp(exponent * log(base))."""

    base: ElTerm
    exponent: ElTerm
    precedence = 4


_BINARY_SYMBOLS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}
_FUNCTION_NAMES = {Exp: "exp", Log: "log", Sqrt: "sqrt"}


def _wrap(term: ElTerm, min_precedence: int) -> str:
    text = render_el(term)
    if term.precedence < min_precedence:
        return f"({text})"
    return text


def render_el(term: ElTerm) -> str:
    """Returns the infix text of the term with the parentheses the EL grammar needs."""
    if isinstance(term, Lit1):
        return "1"
    if isinstance(term, LitInt):
        return str(term.value) if term.value >= 0 else f"(-{-term.value})"
    if isinstance(term, ConstE):
        return "e"
    if isinstance(term, ConstPi):
        return "pi"
    if isinstance(term, ConstI):
        return "i"
    if type(term) in _FUNCTION_NAMES:
        return f"{_FUNCTION_NAMES[type(term)]}({render_el(term.arg)})"
    if isinstance(term, Neg):
        return "-" + _wrap(term.arg, Neg.precedence)
    if isinstance(term, Inv):
        return "1/" + _wrap(term.arg, Pow.precedence)
    if isinstance(term, Pow):
        # right associative, the exponent may be a unary minus
        return _wrap(term.base, 5) + "^" + _wrap(term.exponent, Neg.precedence)
    if type(term) in _BINARY_SYMBOLS:
        # left associative, the right operand binds one level tighter
        left = _wrap(term.left, term.precedence)
        right = _wrap(term.right, term.precedence + 1)
        return f"{left}{_BINARY_SYMBOLS[type(term)]}{right}"
    raise TypeError(f"Unknown EL term {term!r}")
