# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the EmlExpr classes, the canonical printer and structural metrics."""

# standard libraries
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

# A path from the root to a subexpression, e.g. ("beta", "alpha").
NodePath = Tuple[str, ...]

ALPHA: str = "alpha"
BETA: str = "beta"


class EmlExpr:
    """Base class of the two EML constructors.

    Every instance is immutable. Equality is structural; the hash, the number of
    E nodes and the depth are computed once at construction so that comparing or
    hashing large compiled trees does not walk them again.
    """

    __slots__ = ()

    e_count: int
    depth: int

    def is_one(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class One(EmlExpr):
    """The leaf '1'. There is exactly one instance, see ONE."""

    e_count: int = field(default=0, init=False)
    depth: int = field(default=0, init=False)

    def is_one(self) -> bool:
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, One)

    def __hash__(self) -> int:
        return 1

    def __repr__(self) -> str:
        return "One"


ONE: One = One()


@dataclass(frozen=True, eq=False)
class E(EmlExpr):
    """The node E(alpha, beta) with value exp(alpha) - log(beta).

    Attributes:
        alpha: The argument of exp.
        beta: The argument of the principal branch log.
        e_count: Number of E nodes in the tree, this node included.
        depth: Length of the longest root to leaf path (a leaf has depth 0).
    """

    alpha: EmlExpr
    beta: EmlExpr
    e_count: int = field(init=False)
    depth: int = field(init=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "e_count", 1 + self.alpha.e_count + self.beta.e_count)
        object.__setattr__(self, "depth", 1 + max(self.alpha.depth, self.beta.depth))
        object.__setattr__(self, "_hash", hash((hash(self.alpha), hash(self.beta), 0xE)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, EmlExpr):
            return NotImplemented
        # explicit stack, compiled trees can be a few thousand levels deep
        stack = [(self, other)]
        while stack:
            left, right = stack.pop()
            if left is right:
                continue
            if left.is_one() or right.is_one():
                if left.is_one() != right.is_one():
                    return False
                continue
            if left._hash != right._hash or left.e_count != right.e_count:
                return False
            stack.append((left.beta, right.beta))
            stack.append((left.alpha, right.alpha))
        return True

    def __repr__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class ExprMetrics:
    """Structural counts of an EmlExpr.

    Attributes:
        node_count: Number of One leaves plus number of E nodes.
        depth: Tree depth, a leaf has depth 0.
        e_count: Number of E nodes.
    """

    node_count: int
    depth: int
    e_count: int

    @property
    def leaf_count(self) -> int:
        return self.e_count + 1

    def to_json(self) -> Dict[str, int]:
        return {"node_count": self.node_count, "depth": self.depth, "e_count": self.e_count}


def metrics(expr: EmlExpr) -> ExprMetrics:
    """Returns the ExprMetrics of the given expression.

    A binary tree with k internal nodes has k + 1 leaves, so all counts follow
    from the cached e_count and depth.
    """
    return ExprMetrics(node_count=2 * expr.e_count + 1, depth=expr.depth, e_count=expr.e_count)


def render(expr: EmlExpr) -> str:
    """Returns the canonical text of the expression (no whitespace).

    parse(render(e)) == e holds for every expression.
    """
    parts = []
    stack: list = [expr]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_one():
            parts.append("1")
        else:
            parts.append("E(")
            stack.extend((")", item.beta, ",", item.alpha))
    return "".join(parts)


def to_json(expr: EmlExpr) -> Dict:
    """Returns the JSON export of the AST: {"op":"one"} | {"op":"E","alpha":..,"beta":..}."""
    built: Dict[int, Dict] = {}
    stack = [(expr, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_one():
            built[id(node)] = {"op": "one"}
        elif expanded:
            built[id(node)] = {
                "op": "E",
                "alpha": built[id(node.alpha)],
                "beta": built[id(node.beta)],
            }
        elif id(node) not in built:
            stack.append((node, True))
            stack.append((node.beta, False))
            stack.append((node.alpha, False))
    return built[id(expr)]


def from_json(json_object: Dict) -> EmlExpr:
    """Builds an EmlExpr from its JSON export.

    Raises:
        ValueError: If the object is not a valid AST export.
    """
    results: List[EmlExpr] = []
    stack = [(json_object, False)]
    while stack:
        item, expanded = stack.pop()
        if not isinstance(item, dict) or "op" not in item:
            raise ValueError(f"Not an EML AST object: {item!r}")
        if item["op"] == "one":
            results.append(ONE)
        elif item["op"] != "E":
            raise ValueError(f"Unknown op '{item['op']}' in EML AST")
        elif expanded:
            beta = results.pop()
            alpha = results.pop()
            results.append(E(alpha, beta))
        else:
            stack.append((item, True))
            stack.append((item.get("beta"), False))
            stack.append((item.get("alpha"), False))
    return results[0]


def subexpression(expr: EmlExpr, path: NodePath) -> EmlExpr:
    """Returns the subexpression reached by following path from expr.

    Raises:
        KeyError: If the path leaves the tree.
    """
    node = expr
    for step in path:
        if node.is_one():
            raise KeyError(f"Path {path} leaves the tree at a leaf")
        if step == ALPHA:
            node = node.alpha
        elif step == BETA:
            node = node.beta
        else:
            raise KeyError(f"Invalid path step '{step}'")
    return node


def render_path(path: NodePath) -> str:
    """Returns a path in the dotted form used in messages, e.g. 'root.beta.alpha'."""
    return ".".join(("root",) + tuple(path))
