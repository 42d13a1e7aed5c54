# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the substitution templates that express exp, log, 0 and the field operations in EML.

Each template is kept as its EML text with the holes x and y. The text is
parsed once; the hole positions are found by walking the parsed template.
"""

# standard libraries
from functools import lru_cache
from typing import Dict, List, Tuple

# local sources
from eml_toolkit.model.eml_expr import ALPHA, BETA, E, EmlExpr, NodePath, ONE
from eml_toolkit.parser.eml_tree_visitor import TemplateTree
from eml_toolkit.parser.parsing_utils import parse_template

TEMPLATE_TEXTS: Dict[str, str] = {
    "exp": "E(x,1)",
    "log": "E(1,E(E(1,x),1))",
    "zero": "E(1,E(E(1,1),1))",
    "mul": "E(E(1,E(E(E(1,E(E(1,E(1,x)),1)),y),1)),1)",
    "add": "E(1,E(E(E(1,E(E(1,E(1,E(x,1))),1)),E(y,1)),1))",
    "neg": "E(E(1,E(E(1,E(1,E(x,1))),1)),E(E(1,1),1))",
    "inv": "E(E(E(1,E(E(1,E(1,x)),1)),E(E(1,1),1)),1)",
}


class Template:
    """A parsed substitution template.

    Attributes:
        name: The operation the template implements.
        text: The template text with the holes x and y.
        tree: The parsed template.
        holes: Path of every hole, keyed by the hole name.
    """

    def __init__(self, name: str, text: str) -> None:
        """Initialize the object.

        Args:
            name: The operation the template implements.
            text: The template text.

        Raises:
            ValueError: If a hole occurs more than once.
        """
        self.name: str = name
        self.text: str = text
        self.tree: TemplateTree = parse_template(text)
        self.holes: Dict[str, NodePath] = {}
        for hole, path in _find_holes(self.tree):
            if hole in self.holes:
                raise ValueError(f"Hole '{hole}' occurs twice in template '{name}'")
            self.holes[hole] = path

    def instantiate(self, **bindings: EmlExpr) -> EmlExpr:
        """Returns the template with every hole replaced by its binding.

        Raises:
            ValueError: If the bindings do not match the holes.
        """
        if set(bindings) != set(self.holes):
            raise ValueError(
                f"Template '{self.name}' needs {sorted(self.holes)}, got {sorted(bindings)}"
            )
        return _build(self.tree, bindings)

    def __repr__(self) -> str:
        return f"Template({self.name!r}, {self.text!r})"


def _find_holes(tree: TemplateTree) -> List[Tuple[str, NodePath]]:
    found = []
    stack: List[Tuple[TemplateTree, NodePath]] = [(tree, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, tuple):
            stack.append((node[2], path + (BETA,)))
            stack.append((node[1], path + (ALPHA,)))
        elif node != "1":
            found.append((node, path))
    return found


def _build(tree: TemplateTree, bindings: Dict[str, EmlExpr]) -> EmlExpr:
    if isinstance(tree, tuple):
        return E(_build(tree[1], bindings), _build(tree[2], bindings))
    if tree == "1":
        return ONE
    return bindings[tree]


@lru_cache(maxsize=None)
def template(name: str) -> Template:
    """Returns the parsed template of the given operation.

    Raises:
        KeyError: If there is no template with that name.
    """
    return Template(name, TEMPLATE_TEXTS[name])


def subst_exp(x: EmlExpr) -> EmlExpr:
    """exp(x) = E(x,1)."""
    return template("exp").instantiate(x=x)


def subst_log(x: EmlExpr) -> EmlExpr:
    """log(x) = E(1,E(E(1,x),1)).

    On the negative real axis this yields ln|x| - pi*i, not the principal value.
    """
    return template("log").instantiate(x=x)


def subst_zero() -> EmlExpr:
    """0 = log(1) = E(1,E(E(1,1),1))."""
    return template("zero").instantiate()


def subst_mul(x: EmlExpr, y: EmlExpr) -> EmlExpr:
    return template("mul").instantiate(x=x, y=y)


def subst_add(x: EmlExpr, y: EmlExpr) -> EmlExpr:
    """x + y, exact while |Im x|, |Im y| and |Im(x + y)| stay below pi."""
    return template("add").instantiate(x=x, y=y)


def subst_neg(x: EmlExpr) -> EmlExpr:
    """-x, exact while |Im x| < pi."""
    return template("neg").instantiate(x=x)


def subst_inv(x: EmlExpr) -> EmlExpr:
    return template("inv").instantiate(x=x)
