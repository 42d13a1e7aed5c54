# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the ElTreeVisitor class."""

# 3rd party libraries
from lark import Token, Transformer, v_args

# local sources
from eml_toolkit.model.el_term import (
    Add,
    ConstE,
    ConstI,
    ConstPi,
    Div,
    ElTerm,
    Exp,
    Lit1,
    LitInt,
    Log,
    Mul,
    Neg,
    Pow,
    Sqrt,
    Sub,
)


@v_args(inline=True)
class ElTreeVisitor(Transformer):
    """Builds ElTerm objects from the reductions of the EL grammar.

    The literal 1 becomes Lit1, every other integer literal a LitInt. A unary
    minus in front of a literal stays a Neg node.
    """

    def integer(self, token: Token) -> ElTerm:
        value = int(token)
        if value == 1:
            return Lit1()
        return LitInt(value)

    def const_e(self) -> ElTerm:
        return ConstE()

    def const_pi(self) -> ElTerm:
        return ConstPi()

    def const_i(self) -> ElTerm:
        return ConstI()

    exp = Exp
    log = Log
    sqrt = Sqrt
    neg = Neg
    add = Add
    sub = Sub
    mul = Mul
    div = Div
    pow = Pow
