# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the certified evaluator for EML expressions.

Every node E(alpha, beta) is evaluated to a ComplexBox. The log of the beta box
is taken in one of three ways:

* by box_log when the box keeps a positive distance to the closed negative
  real axis,
* on the branch cut (ln|beta| + pi*i) when beta is certified to be a negative
  real, either through an exact annotation or through a phase certificate,
* not at all: beta is refined at doubled precision and, once the limits are
  reached, the evaluation reports BranchUndecided.

A phase certificate states that the imaginary part of a value is exactly
k * pi for a known integer k. Such values are produced by the constant 1,
by exact annotations with a zero imaginary part and by nodes whose alpha
carries a certificate and whose beta is a certified real of known sign:
exp(alpha) is then the real number (-1)^k * exp(Re alpha) and log(beta) has
the imaginary part 0 or pi.
"""

# standard libraries
from dataclasses import dataclass
import logging
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Tuple

# local sources
from eml_toolkit.model.eml_expr import ALPHA, BETA, EmlExpr, NodePath, render_path
from eml_toolkit.model.gaussian_rational import GaussianRational
from eml_toolkit.rigor.complex_box import (
    ComplexBox,
    box_exp,
    box_exp_phase,
    box_log,
    box_log_negative_axis,
    box_log_negative_real,
    box_sub,
    pi_box,
)
from eml_toolkit.rigor.dyadic import Dyadic, ZERO
from eml_toolkit.validation.errors import OverflowGuard

if TYPE_CHECKING:
    from eml_toolkit.compiler.el_compiler import CompiledExpr

logger = logging.getLogger(__name__)

Annotations = Mapping[NodePath, GaussianRational]
LeafBindings = Mapping[NodePath, ComplexBox]

REASON_ZERO: str = "log argument exactly zero"
REASON_BRANCH: str = "branch cut undecided"
REASON_PRECISION: str = "precision cap"
REASON_OVERFLOW: str = "overflow"


@dataclass(frozen=True)
class EvalLimits:
    """Resource limits of one evaluation.

    Attributes:
        target_bits: The requested accuracy k, the result box has width <= 2^-k.
        max_working_bits: Upper bound for the working precision.
        max_refinements: How often a single log argument may be re-evaluated at
            doubled precision.
    """

    target_bits: int = 64
    max_working_bits: int = 4096
    max_refinements: int = 8

    def __post_init__(self) -> None:
        if self.target_bits < 1:
            raise ValueError("target_bits must be at least 1")
        if self.max_working_bits < self.target_bits:
            raise ValueError("max_working_bits must not be smaller than target_bits")
        if self.max_refinements < 0:
            raise ValueError("max_refinements must not be negative")


class EvalOutcome:
    """Base class of the three evaluation results."""

    kind: str = ""

    def to_json(self) -> Dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Value(EvalOutcome):
    """The value lies in box, and the box has width <= 2^-target_bits.

    Attributes:
        box: The certified enclosure.
        working_bits: The working precision of the final pass.
    """

    box: ComplexBox
    working_bits: int = 0
    kind = "value"

    def to_json(self) -> Dict:
        return {"outcome": self.kind, "box": self.box.to_json(), "working_bits": self.working_bits}


@dataclass(frozen=True)
class UndefinedAt(EvalOutcome):
    """The expression is undefined: the log argument at path is exactly zero."""

    path: NodePath
    reason: str = REASON_ZERO
    kind = "undefined"

    def to_json(self) -> Dict:
        return {"outcome": self.kind, "path": render_path(self.path), "reason": self.reason}


@dataclass(frozen=True)
class BranchUndecided(EvalOutcome):
    """The evaluation stopped at path without a certified answer.

    Attributes:
        path: The deepest node that could not be decided.
        last_box: The last enclosure computed for that node.
        reason: Why the evaluation stopped.
    """

    path: NodePath
    last_box: ComplexBox
    reason: str = REASON_BRANCH
    kind = "undecided"

    def to_json(self) -> Dict:
        return {
            "outcome": self.kind,
            "path": render_path(self.path),
            "reason": self.reason,
            "last_box": self.last_box.to_json(),
        }


@dataclass(frozen=True)
class _Enclosure:
    box: ComplexBox
    # Im(value) = phase * pi exactly, if not None
    phase: Optional[int] = None


class _Undefined(Exception):
    def __init__(self, path: NodePath) -> None:
        super().__init__(render_path(path))
        self.path = path


class _Undecided(Exception):
    def __init__(self, path: NodePath, box: ComplexBox, reason: str) -> None:
        super().__init__(render_path(path))
        self.path = path
        self.box = box
        self.reason = reason


_ONE_ENCLOSURE = _Enclosure(ComplexBox.point(1), 0)


def initial_working_bits(expr: EmlExpr, limits: EvalLimits) -> int:
    """Returns target_bits + 8 * e_count + 16, capped at max_working_bits."""
    return min(limits.target_bits + 8 * expr.e_count + 16, limits.max_working_bits)


class Evaluator:
    """Evaluates one expression under fixed annotations, leaf bindings and limits.

    Attributes:
        annotations: Exact values of subexpressions, keyed by their path.
        leaves: Subexpressions replaced by a given enclosure, keyed by their path.
        limits: The EvalLimits.
    """

    def __init__(
        self,
        annotations: Optional[Annotations] = None,
        leaves: Optional[LeafBindings] = None,
        limits: Optional[EvalLimits] = None,
    ) -> None:
        self.annotations: Annotations = annotations or {}
        self.leaves: LeafBindings = leaves or {}
        self.limits: EvalLimits = limits or EvalLimits()

    def run(self, expr: EmlExpr) -> EvalOutcome:
        """Evaluates expr, doubling the working precision until the width target is met."""
        target = Dyadic.power_of_two(-self.limits.target_bits)
        working_bits = initial_working_bits(expr, self.limits)
        while True:
            try:
                enclosure = self.evaluate(expr, (), working_bits)
            except _Undefined as undefined:
                return UndefinedAt(undefined.path)
            except _Undecided as undecided:
                return BranchUndecided(undecided.path, undecided.box, undecided.reason)

            if enclosure.box.width() <= target:
                return Value(enclosure.box, working_bits)
            if working_bits >= self.limits.max_working_bits:
                return BranchUndecided((), enclosure.box, REASON_PRECISION)
            logger.debug(
                "width %s above 2^-%d at %d bits, restarting",
                enclosure.box.width(),
                self.limits.target_bits,
                working_bits,
            )
            working_bits = min(2 * working_bits, self.limits.max_working_bits)

    def evaluate(self, expr: EmlExpr, path: NodePath, working_bits: int) -> _Enclosure:
        """Evaluates the subtree expr found at path with an explicit stack."""
        stack: List[Tuple[EmlExpr, NodePath, bool]] = [(expr, path, False)]
        results: List[_Enclosure] = []
        while stack:
            node, node_path, expanded = stack.pop()
            if not expanded:
                bound = self.leaves.get(node_path) if self.leaves else None
                if bound is not None:
                    results.append(_Enclosure(bound, 0 if bound.is_real() else None))
                elif node.is_one():
                    results.append(_ONE_ENCLOSURE)
                else:
                    stack.append((node, node_path, True))
                    stack.append((node.beta, node_path + (BETA,), False))
                    stack.append((node.alpha, node_path + (ALPHA,), False))
                continue
            beta = results.pop()
            alpha = results.pop()
            results.append(self._combine(node, node_path, alpha, beta, working_bits))
        return results.pop()

    def _combine(
        self,
        node: EmlExpr,
        path: NodePath,
        alpha: _Enclosure,
        beta: _Enclosure,
        working_bits: int,
    ) -> _Enclosure:
        exp_box = self._exp(path + (ALPHA,), alpha, working_bits)
        log_box, log_phase = self._log(node.beta, path + (BETA,), beta, working_bits)
        box = box_sub(exp_box, log_box, working_bits)

        phase = None
        if alpha.phase is not None and log_phase is not None:
            phase = -log_phase
        exact = self.annotations.get(path) if self.annotations else None
        if exact is not None and exact.is_real():
            phase = 0
        if phase is not None:
            box = self._fix_imaginary_part(box, phase, working_bits)
        return _Enclosure(box, phase)

    def _fix_imaginary_part(self, box: ComplexBox, phase: int, working_bits: int) -> ComplexBox:
        if phase == 0:
            return box.with_imag(ZERO, ZERO)
        pi = pi_box(working_bits)
        low, high = pi.re_lo * Dyadic(phase), pi.re_hi * Dyadic(phase)
        return box.with_imag(min(low, high), max(low, high))

    def _exp(self, path: NodePath, alpha: _Enclosure, working_bits: int) -> ComplexBox:
        try:
            if alpha.phase is not None:
                return box_exp_phase(alpha.box, alpha.phase, working_bits)
            return box_exp(alpha.box, working_bits)
        except OverflowGuard:
            raise _Undecided(path, alpha.box, REASON_OVERFLOW) from None

    def _log(
        self, beta_expr: EmlExpr, path: NodePath, beta: _Enclosure, working_bits: int
    ) -> Tuple[ComplexBox, Optional[int]]:
        """Returns an enclosure of log(beta) and, if known, its imaginary part in units of pi."""
        exact = self.annotations.get(path) if self.annotations else None
        if exact is not None:
            if exact.is_zero():
                raise _Undefined(path)
            if exact.is_negative_real():
                return box_log_negative_real(exact, working_bits), 1

        enclosure = beta
        current_bits = working_bits
        refinements = 0
        while True:
            box = enclosure.box
            if box.is_off_cut():
                log_phase = 0 if enclosure.phase == 0 else None
                return box_log(box, working_bits), log_phase
            if enclosure.phase == 0 and box.re_hi < 0:
                return box_log_negative_axis(box, working_bits), 1
            if (
                refinements >= self.limits.max_refinements
                or current_bits >= self.limits.max_working_bits
            ):
                raise _Undecided(path, box, REASON_BRANCH)
            current_bits = min(2 * current_bits, self.limits.max_working_bits)
            refinements += 1
            logger.debug(
                "refining log argument at %s with %d bits", render_path(path), current_bits
            )
            enclosure = self.evaluate(beta_expr, path, current_bits)


def eval(
    expr: EmlExpr,
    annotations: Optional[Annotations] = None,
    limits: Optional[EvalLimits] = None,
    leaves: Optional[LeafBindings] = None,
) -> EvalOutcome:
    """Evaluates expr to a certified enclosure.

    Args:
        expr: The expression.
        annotations: Exact values of subexpressions by path, e.g. CompiledExpr.provenance.
        limits: The EvalLimits, EvalLimits() if not given.
        leaves: Optional enclosures that replace the subexpressions at their paths.

    Returns:
        Value, UndefinedAt or BranchUndecided.
    """
    return Evaluator(annotations, leaves, limits).run(expr)


def approximate(
    expr: EmlExpr,
    bits: int,
    annotations: Optional[Annotations] = None,
    limits: Optional[EvalLimits] = None,
) -> Tuple[Dyadic, Dyadic]:
    """Returns (re, im) of a dyadic number within 2^-bits of the value of expr.

    Raises:
        ValueError: If the expression is undefined or its evaluation is undecided.
    """
    base = limits or EvalLimits()
    limits = EvalLimits(
        target_bits=bits,
        max_working_bits=max(base.max_working_bits, bits),
        max_refinements=base.max_refinements,
    )
    outcome = eval(expr, annotations, limits)
    if not isinstance(outcome, Value):
        raise ValueError(f"No certified value: {outcome.to_json()}")
    return outcome.box.midpoint()


def eval_compiled(compiled: "CompiledExpr", limits: Optional[EvalLimits] = None) -> EvalOutcome:
    """Evaluates a compiled EL term with its provenance as annotations.

    Raises:
        AssertionError: If a Value box misses the exact annotation of the root.
    """
    outcome = eval(compiled.expr, compiled.provenance, limits)
    if isinstance(outcome, Value) and compiled.exact is not None:
        if not outcome.box.contains(compiled.exact.re, compiled.exact.im):
            raise AssertionError(f"{outcome.box} misses the exact value {compiled.exact}")
    return outcome
