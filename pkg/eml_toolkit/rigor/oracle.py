# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains a plain high precision floating point evaluation used as a test oracle.

No enclosures are computed here: values are mpmath numbers at a fixed,
generous precision. Values whose imaginary part is known to be k * pi are
kept as real mpf (phase 0) or rebuilt with an exact -pi imaginary part, the
same rule the certified evaluator uses, so that log is taken on the intended
side of the branch cut.

interval_value is the independent counterpart: plain mpmath interval
arithmetic without any knowledge of the branch cut rule.
"""

# standard libraries
from typing import List, Mapping, Optional, Tuple, Union

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.model.eml_expr import ALPHA, BETA, EmlExpr, NodePath
from eml_toolkit.model.gaussian_rational import GaussianRational
from eml_toolkit.rigor.complex_box import EXP_REAL_BOUND, ComplexBox

OracleNumber = Union[mpmath.mpf, mpmath.mpc]


def _to_mp(value: GaussianRational) -> OracleNumber:
    re = mpmath.mpf(value.re.numerator) / value.re.denominator
    if value.is_real():
        return re
    return mpmath.mpc(re, mpmath.mpf(value.im.numerator) / value.im.denominator)


def oracle_value(
    expr: EmlExpr,
    bits: int,
    annotations: Optional[Mapping[NodePath, GaussianRational]] = None,
    leaves: Optional[Mapping[NodePath, GaussianRational]] = None,
) -> Optional[OracleNumber]:
    """Evaluates expr with mpmath at the given precision.

    Args:
        expr: The expression.
        bits: The working precision in bits.
        annotations: Exact values by path; a real annotation marks the value real.
        leaves: Exact values that replace the subexpressions at their paths.

    Returns:
        The value, or None if a log argument evaluates to exactly zero.
    """
    annotations = annotations or {}
    leaves = leaves or {}
    with mpmath.workprec(bits):
        stack: List[Tuple[EmlExpr, NodePath, bool]] = [(expr, (), False)]
        # (value, phase) pairs, phase as in the certified evaluator
        results: List[Tuple[OracleNumber, Optional[int]]] = []
        while stack:
            node, path, expanded = stack.pop()
            if not expanded:
                if path in leaves:
                    value = _to_mp(leaves[path])
                    results.append((value, 0 if leaves[path].is_real() else None))
                elif node.is_one():
                    results.append((mpmath.mpf(1), 0))
                else:
                    stack.append((node, path, True))
                    stack.append((node.beta, path + (BETA,), False))
                    stack.append((node.alpha, path + (ALPHA,), False))
                continue
            beta, beta_phase = results.pop()
            alpha, alpha_phase = results.pop()
            if beta == 0:
                return None

            if alpha_phase is not None:
                exp_value = mpmath.exp(mpmath.re(alpha))
                if alpha_phase % 2:
                    exp_value = -exp_value
            else:
                exp_value = mpmath.exp(alpha)

            log_phase = None
            if beta_phase == 0:
                beta = mpmath.re(beta)
                log_phase = 0 if beta > 0 else 1
            log_value = mpmath.log(beta)

            value = exp_value - log_value
            phase = -log_phase if alpha_phase is not None and log_phase is not None else None
            exact = annotations.get(path)
            if exact is not None and exact.is_real():
                phase = 0
            if phase == 0:
                value = mpmath.re(value)
            elif phase is not None:
                value = mpmath.mpc(mpmath.re(value), phase * mpmath.pi)
            results.append((value, phase))
        return results.pop()[0]


def oracle_bits(target_bits: int) -> int:
    """Returns the oracle precision for a target accuracy, four times the target plus guard bits."""
    return 4 * target_bits + 64


def _finite_box(value: mpmath.iv.mpc) -> Optional[ComplexBox]:
    try:
        return ComplexBox.from_mpi(*value._mpci_)
    except ValueError:
        return None


def interval_value(
    expr: EmlExpr, bits: int, leaves: Optional[Mapping[NodePath, ComplexBox]] = None
) -> Optional[ComplexBox]:
    """Evaluates expr with the plain mpmath interval context.

    No branch bookkeeping is done here. iv.ln of an argument box that straddles
    the negative real axis has the imaginary range [-pi, pi], so the result
    encloses the principal value but may be much wider than a certified box.
    Any certified box for the same expression must overlap it.

    Args:
        expr: The expression.
        bits: The precision of the interval context.
        leaves: Enclosures that replace the subexpressions at their paths.

    Returns:
        The enclosure, or None once an endpoint is infinite or an exp argument
        has a real part above EXP_REAL_BOUND.
    """
    leaves = leaves or {}
    iv = mpmath.iv
    saved_prec = iv.prec
    iv.prec = bits
    try:
        stack: List[Tuple[EmlExpr, NodePath, bool]] = [(expr, (), False)]
        results: List[mpmath.iv.mpc] = []
        while stack:
            node, path, expanded = stack.pop()
            if not expanded:
                if path in leaves:
                    results.append(iv.make_mpc(leaves[path].to_mpi()))
                elif node.is_one():
                    results.append(iv.mpc(1, 0))
                else:
                    stack.append((node, path, True))
                    stack.append((node.beta, path + (BETA,), False))
                    stack.append((node.alpha, path + (ALPHA,), False))
                continue
            beta = results.pop()
            alpha = results.pop()
            alpha_box = _finite_box(alpha)
            if alpha_box is None or alpha_box.re_hi > EXP_REAL_BOUND:
                return None
            value = iv.exp(alpha) - iv.ln(beta)
            if _finite_box(value) is None:
                return None
            results.append(value)
        return _finite_box(results.pop())
    finally:
        iv.prec = saved_prec
