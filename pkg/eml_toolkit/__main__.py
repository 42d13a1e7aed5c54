# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Makes the toolkit runnable with 'python -m eml_toolkit'."""

# local sources
from eml_toolkit.cli import main

if __name__ == "__main__":
    main()
