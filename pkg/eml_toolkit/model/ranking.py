# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the bijection between the natural numbers and EML expressions.

Expressions are ordered by their number of E nodes. Inside the class of size k
the root splits are visited from the largest alpha subtree (k - 1 nodes) down to
the smallest (0 nodes); inside a split the pair (index of alpha in its class,
index of beta in its class) is ordered lexicographically. With this order
unrank(2) = E(E(1,1),1) and unrank(3) = E(1,E(1,1)).
"""

# standard libraries
from typing import Iterator, List, Optional, Tuple

# local sources
from eml_toolkit.model.eml_expr import E, EmlExpr, ONE

# Catalan numbers and class offsets, grown on demand
_CATALAN: List[int] = [1]
_OFFSETS: List[int] = [0]


def catalan(k: int) -> int:
    """Returns the k-th Catalan number, the number of expressions with k E nodes."""
    if k < 0:
        raise ValueError("catalan() is only defined for k >= 0")
    while len(_CATALAN) <= k:
        j = len(_CATALAN)
        # C(j) = C(j-1) * 2(2j-1) / (j+1), exact in integers
        _CATALAN.append(_CATALAN[j - 1] * 2 * (2 * j - 1) // (j + 1))
    return _CATALAN[k]


def class_offset(k: int) -> int:
    """Returns the rank of the first expression with k E nodes."""
    if k < 0:
        raise ValueError("class_offset() is only defined for k >= 0")
    while len(_OFFSETS) <= k:
        j = len(_OFFSETS)
        _OFFSETS.append(_OFFSETS[j - 1] + catalan(j - 1))
    return _OFFSETS[k]


def _locate_class(n: int) -> Tuple[int, int]:
    """Returns (k, index inside class k) for the global rank n."""
    k = 0
    while n >= class_offset(k) + catalan(k):
        k += 1
    return k, n - class_offset(k)


def _split(k: int, index: int) -> Tuple[int, int, int, int]:
    """Returns (alpha size, alpha index, beta size, beta index) of entry index in class k."""
    for left_size in range(k - 1, -1, -1):
        right_size = k - 1 - left_size
        block = catalan(left_size) * catalan(right_size)
        if index < block:
            left_index, right_index = divmod(index, catalan(right_size))
            return left_size, left_index, right_size, right_index
        index -= block
    raise AssertionError("index outside of its Catalan class")


def _split_offset(k: int, left_size: int) -> int:
    # splits with a larger alpha come first
    offset = 0
    for larger_left in range(k - 1, left_size, -1):
        offset += catalan(larger_left) * catalan(k - 1 - larger_left)
    return offset


def _unrank_in_class(k: int, index: int) -> EmlExpr:
    # None marks a node whose two subtrees are on the results stack
    pending: List[Optional[Tuple[int, int]]] = [(k, index)]
    results: List[EmlExpr] = []
    while pending:
        frame = pending.pop()
        if frame is None:
            beta = results.pop()
            alpha = results.pop()
            results.append(E(alpha, beta))
            continue
        size, size_index = frame
        if size == 0:
            results.append(ONE)
            continue
        left_size, left_index, right_size, right_index = _split(size, size_index)
        pending.append(None)
        pending.append((right_size, right_index))
        pending.append((left_size, left_index))
    return results.pop()


def _rank_in_class(expr: EmlExpr) -> int:
    stack: List[Tuple[EmlExpr, bool]] = [(expr, False)]
    results: List[int] = []
    while stack:
        node, expanded = stack.pop()
        if node.is_one():
            results.append(0)
        elif not expanded:
            stack.append((node, True))
            stack.append((node.beta, False))
            stack.append((node.alpha, False))
        else:
            beta_index = results.pop()
            alpha_index = results.pop()
            results.append(
                _split_offset(node.e_count, node.alpha.e_count)
                + alpha_index * catalan(node.beta.e_count)
                + beta_index
            )
    return results.pop()


def unrank(n: int) -> EmlExpr:
    """Returns the expression with rank n; unrank(0) is One.

    Raises:
        ValueError: If n is negative.
    """
    if n < 0:
        raise ValueError(f"Ranks are natural numbers, got {n}")
    k, index = _locate_class(n)
    return _unrank_in_class(k, index)


def rank(expr: EmlExpr) -> int:
    """Returns the rank of the expression, the inverse of unrank."""
    return class_offset(expr.e_count) + _rank_in_class(expr)


def enumerate_expressions(count: int, start: int = 0) -> Iterator[Tuple[int, EmlExpr]]:
    """Yields (rank, expression) for count consecutive ranks beginning at start."""
    for n in range(start, start + count):
        yield n, unrank(n)
