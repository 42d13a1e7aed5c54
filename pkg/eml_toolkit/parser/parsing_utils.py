# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains functions for parsing EML expressions, templates and EL terms."""

# standard libraries
from functools import lru_cache
from pathlib import Path
from typing import List, Optional

# 3rd party libraries
from lark import Lark
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput
from lark.exceptions import UnexpectedToken as LarkUnexpectedToken

# local sources
from eml_toolkit.model.eml_expr import EmlExpr
from eml_toolkit.model.el_term import ElTerm
from eml_toolkit.parser.eml_tree_visitor import EmlTreeVisitor, TemplateTree, TemplateTreeVisitor
from eml_toolkit.parser.el_tree_visitor import ElTreeVisitor
from eml_toolkit.validation.errors import (
    ParseError,
    TrailingInput,
    UnbalancedParens,
    UnexpectedToken,
)

GRAMMAR_FOLDER: Path = Path(__file__).parent
END_OF_INPUT: str = "$END"


@lru_cache(maxsize=None)
def _eml_parser() -> Lark:
    return Lark.open(
        str(GRAMMAR_FOLDER / "eml.lark"),
        parser="lalr",
        start=["start", "template"],
        transformer=EmlTreeVisitor(),
    )


@lru_cache(maxsize=None)
def _template_parser() -> Lark:
    return Lark.open(
        str(GRAMMAR_FOLDER / "eml.lark"),
        parser="lalr",
        start=["start", "template"],
        transformer=TemplateTreeVisitor(),
    )


@lru_cache(maxsize=None)
def _el_parser() -> Lark:
    return Lark.open(
        str(GRAMMAR_FOLDER / "el.lark"),
        parser="lalr",
        transformer=ElTreeVisitor(),
    )


def _unclosed_parens(text: str) -> bool:
    return text.count("(") > text.count(")")


def _is_complete(parser: Lark, text: str, start: Optional[str]) -> bool:
    try:
        parser.parse(text, start=start)
    except UnexpectedInput:
        return False
    return True


def convert_lark_error(
    error: UnexpectedInput, text: str, parser: Optional[Lark] = None, start: Optional[str] = None
) -> ParseError:
    """Maps a lark exception to the matching ParseError subclass.

    A token is trailing input if the text before it already is a complete
    expression. This is decided by parsing that prefix again with parser,
    the set of expected terminals lark reports is not reliable for it after
    LALR states have been merged.

    Args:
        error: The exception raised by lark.
        text: The parsed text.
        parser: The parser that raised the error.
        start: The start rule that was used.

    Returns:
        UnbalancedParens for a ')' without partner or an input that ends inside
        parentheses, TrailingInput for text after a complete expression and
        UnexpectedToken otherwise.
    """
    if isinstance(error, UnexpectedCharacters):
        character = text[error.pos_in_stream]
        return UnexpectedToken(error.pos_in_stream, text, f"character {character!r}")
    if isinstance(error, UnexpectedEOF):
        if _unclosed_parens(text):
            return UnbalancedParens(len(text), text, "input ends inside parentheses")
        return UnexpectedToken(len(text), text, "unexpected end of input")
    if isinstance(error, LarkUnexpectedToken):
        token = error.token
        if token.type == END_OF_INPUT:
            if _unclosed_parens(text):
                return UnbalancedParens(len(text), text, "input ends inside parentheses")
            return UnexpectedToken(len(text), text, "unexpected end of input")
        position = token.start_pos if token.start_pos is not None else len(text)
        if parser is not None and _is_complete(parser, text[:position], start):
            if token.type == "RPAR":
                return UnbalancedParens(position, text, "')' without matching '('")
            return TrailingInput(position, text, f"{str(token)!r} after a complete expression")
        return UnexpectedToken(position, text, f"unexpected {str(token)!r}")
    return ParseError(getattr(error, "pos_in_stream", 0) or 0, text, str(error))


def parse(text: str) -> EmlExpr:
    """Parses an EML expression.

    Whitespace between tokens is ignored.

    Args:
        text: The expression text, e.g. "E(1,E(E(1,1),1))".

    Returns:
        The EmlExpr.

    Raises:
        ParseError: UnexpectedToken, UnbalancedParens or TrailingInput with the
            offending position.
    """
    parser = _eml_parser()
    try:
        return parser.parse(text, start="start")
    except UnexpectedInput as error:
        raise convert_lark_error(error, text, parser, "start") from None


def parse_template(text: str) -> TemplateTree:
    """Parses a substitution template, an EML text that may contain the holes x and y."""
    parser = _template_parser()
    try:
        return parser.parse(text, start="template")
    except UnexpectedInput as error:
        raise convert_lark_error(error, text, parser, "template") from None


def parse_el(text: str) -> ElTerm:
    """Parses an EL term such as "log(2) + pi" or "2^-1".

    Raises:
        ParseError: With the position of the first offending token.
    """
    parser = _el_parser()
    try:
        return parser.parse(text)
    except UnexpectedInput as error:
        raise convert_lark_error(error, text, parser) from None


def read_source_lines(file_path: str) -> List[str]:
    """Returns the non empty lines of a file that are not '#' comments."""
    with open(file_path, "r", encoding="utf8") as file:
        lines = [line.strip() for line in file]
    return [line for line in lines if line and not line.startswith("#")]
