# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains integration tests that parse the EML and EL files in tests/test_files."""

# standard libraries
import os
import unittest

# local sources
from eml_toolkit.model.el_term import render_el
from eml_toolkit.model.eml_expr import render
from eml_toolkit.parser.parsing_utils import parse, parse_el, read_source_lines
from eml_toolkit.validation.errors import (
    ParseError,
    TrailingInput,
    UnbalancedParens,
    UnexpectedToken,
)

TEST_FILE_FOLDER_PATH = os.path.join(os.path.dirname(__file__), os.pardir, "test_files")
VALID_FOLDER_PATH = os.path.join(TEST_FILE_FOLDER_PATH, "valid")
INVALID_FOLDER_PATH = os.path.join(TEST_FILE_FOLDER_PATH, "invalid")


class TestParserFiles(unittest.TestCase):
    """Testcase containing integration tests for parsing files line by line."""

    def load_file(self, folder: str, test_file_name: str):
        """Returns the lines of a test file without blank lines and comments."""
        return read_source_lines(os.path.join(folder, test_file_name))

    def test_valid_expressions(self):
        lines = self.load_file(VALID_FOLDER_PATH, "expressions.eml")
        self.assertEqual(len(lines), 4)
        rendered = [render(parse(line)) for line in lines]
        self.assertEqual(rendered, ["1", "E(1,1)", "E(1,E(E(1,1),1))", "E(E(1,1),1)"])

    def test_valid_terms(self):
        lines = self.load_file(VALID_FOLDER_PATH, "terms.el")
        self.assertEqual(len(lines), 7)
        for line in lines:
            with self.subTest(line=line):
                term = parse_el(line)
                self.assertEqual(parse_el(render_el(term)), term)

    def check_invalid(self, test_file_name: str, error_class: type, position: int):
        (line,) = self.load_file(INVALID_FOLDER_PATH, test_file_name)
        parse_function = parse_el if test_file_name.endswith(".el") else parse
        with self.assertRaises(ParseError) as context:
            parse_function(line)
        self.assertIs(type(context.exception), error_class)
        self.assertEqual(context.exception.position, position)

    def test_unbalanced_parens(self):
        self.check_invalid("unbalanced_parens.eml", UnbalancedParens, 10)
        self.check_invalid("unbalanced_parens.el", UnbalancedParens, 5)

    def test_trailing_input(self):
        self.check_invalid("trailing_input.eml", TrailingInput, 6)
        self.check_invalid("trailing_input.el", TrailingInput, 2)

    def test_unexpected_token(self):
        self.check_invalid("unexpected_token.eml", UnexpectedToken, 4)

    def test_mixed_lines(self):
        first, second = self.load_file(INVALID_FOLDER_PATH, "mixed_lines.eml")
        self.assertEqual(render(parse(first)), "E(1,1)")
        with self.assertRaises(UnbalancedParens):
            parse(second)

    def test_missing_file(self):
        with self.assertRaises(OSError):
            self.load_file(INVALID_FOLDER_PATH, "missing.eml")
