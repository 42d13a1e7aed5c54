# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the tree visitors that build EmlExpr objects from the lark parse of an EML text."""

# standard libraries
from typing import Tuple, Union

# 3rd party libraries
from lark import Token, Transformer, v_args

# local sources
from eml_toolkit.model.eml_expr import E, EmlExpr, ONE

# Parsed template: "1", a hole name ("x" / "y") or ("E", alpha, beta).
TemplateTree = Union[str, Tuple]


@v_args(inline=True)
class EmlTreeVisitor(Transformer):
    """Builds an EmlExpr bottom up while the LALR parser reduces.

    The visitor is passed to lark as an inline transformer, so each node is
    built as soon as its rule is reduced and no recursion over the parse tree
    takes place. This keeps parsing of compiled expressions with a depth of a
    few thousand nodes within the interpreter stack.
    """

    def one(self) -> EmlExpr:
        return ONE

    def node(self, alpha: EmlExpr, beta: EmlExpr) -> EmlExpr:
        return E(alpha, beta)


@v_args(inline=True)
class TemplateTreeVisitor(Transformer):
    """Builds the nested tuple form of a substitution template."""

    def one(self) -> TemplateTree:
        return "1"

    def node(self, alpha: TemplateTree, beta: TemplateTree) -> TemplateTree:
        return ("E", alpha, beta)

    def hole(self, token: Token) -> TemplateTree:
        return str(token)
