# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Rigorous toolkit for expressions built from 1 and E(a, b) = exp(a) - log(b)."""

__version__ = "0.1.0"
