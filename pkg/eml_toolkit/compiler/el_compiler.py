# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the compiler from EL terms to pure EML expressions.

Every EL operation is mapped to one of the substitution templates. Where the
template is known to reproduce the operation exactly and the operands carry
exact Gaussian rational values, the result is annotated with its exact value
as well. The annotations of the operands are kept, moved below the hole the
operand was grafted into.
"""

# standard libraries
from dataclasses import dataclass, field
from functools import lru_cache
import logging
from typing import Callable, Dict, Optional

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.compiler.substitutions import template
from eml_toolkit.model.el_term import (
    Add,
    ConstE,
    ConstI,
    ConstPi,
    Div,
    ElTerm,
    Exp,
    Inv,
    Lit1,
    LitInt,
    Log,
    Mul,
    Neg,
    Pow,
    Sqrt,
    Sub,
)
from eml_toolkit.model.eml_expr import E, EmlExpr, NodePath, ONE
from eml_toolkit.model.gaussian_rational import GaussianRational, I, ONE as EXACT_ONE, below_pi
from eml_toolkit.rigor.evaluator import EvalLimits, Value, eval_compiled

logger = logging.getLogger(__name__)

Provenance = Dict[NodePath, GaussianRational]

CONSTANT_CHECK_BITS: int = 40


@dataclass(frozen=True)
class CompiledExpr:
    """An EML expression together with the exact values known for it.

    Attributes:
        expr: The EML expression.
        exact: The exact value of expr, if known.
        provenance: Exact values of subexpressions of expr, keyed by path.
    """

    expr: EmlExpr
    exact: Optional[GaussianRational] = None
    provenance: Provenance = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {
            "exact": self.exact.to_json() if self.exact is not None else None,
            "annotated_nodes": len(self.provenance),
        }


def _graft(name: str, exact: Optional[GaussianRational], **operands: CompiledExpr) -> CompiledExpr:
    """Instantiates a template and moves the operand annotations below their holes."""
    substitution = template(name)
    expr = substitution.instantiate(**{hole: operand.expr for hole, operand in operands.items()})
    provenance: Provenance = {}
    for hole, operand in operands.items():
        prefix = substitution.holes[hole]
        for path, value in operand.provenance.items():
            provenance[prefix + path] = value
    if exact is not None:
        provenance[()] = exact
    return CompiledExpr(expr, exact, provenance)


def _imag_below_pi(*values: GaussianRational) -> bool:
    return all(below_pi(value.im) for value in values)


def compile_exp(x: CompiledExpr) -> CompiledExpr:
    exact = EXACT_ONE if x.exact is not None and x.exact.is_zero() else None
    return _graft("exp", exact, x=x)


def compile_log(x: CompiledExpr) -> CompiledExpr:
    exact = GaussianRational() if x.exact == EXACT_ONE else None
    return _graft("log", exact, x=x)


def compile_zero() -> CompiledExpr:
    return _graft("zero", GaussianRational())


def compile_mul(x: CompiledExpr, y: CompiledExpr) -> CompiledExpr:
    exact = None
    if x.exact is not None and y.exact is not None:
        if not x.exact.is_zero() and not y.exact.is_zero():
            exact = x.exact * y.exact
    return _graft("mul", exact, x=x, y=y)


def compile_add(x: CompiledExpr, y: CompiledExpr) -> CompiledExpr:
    exact = None
    if x.exact is not None and y.exact is not None:
        total = x.exact + y.exact
        if _imag_below_pi(x.exact, y.exact, total):
            exact = total
    return _graft("add", exact, x=x, y=y)


def compile_neg(x: CompiledExpr) -> CompiledExpr:
    exact = -x.exact if x.exact is not None and _imag_below_pi(x.exact) else None
    return _graft("neg", exact, x=x)


def compile_inv(x: CompiledExpr) -> CompiledExpr:
    exact = x.exact.inverse() if x.exact is not None and not x.exact.is_zero() else None
    return _graft("inv", exact, x=x)


def compile_pow(base: CompiledExpr, exponent: CompiledExpr) -> CompiledExpr:
    """base^exponent as exp(exponent * log(base)).

    The template log of a negative real differs from the principal log by
    -2*pi*i, which cancels for integer exponents, so exact integer powers of a
    Gaussian rational base are annotated.
    """
    result = compile_exp(compile_mul(exponent, compile_log(base)))
    if (
        base.exact is not None
        and exponent.exact is not None
        and exponent.exact.is_integer()
        and exponent.exact.re != 0
        and not base.exact.is_zero()
        and base.exact != EXACT_ONE
    ):
        exact = base.exact ** int(exponent.exact.re)
        provenance = dict(result.provenance)
        provenance[()] = exact
        return CompiledExpr(result.expr, exact, provenance)
    return result


ONE_COMPILED: CompiledExpr = CompiledExpr(ONE, EXACT_ONE, {(): EXACT_ONE})


@lru_cache(maxsize=None)
def _two() -> CompiledExpr:
    return compile_add(ONE_COMPILED, ONE_COMPILED)


def compile_int(value: int) -> CompiledExpr:
    """Encodes an integer by binary doubling: 2m + b = 2 * m (+ 1).

    Each binary digit adds a constant number of E nodes.
    """
    if value < 0:
        return compile_neg(compile_int(-value))
    if value == 0:
        return compile_zero()
    if value == 1:
        return ONE_COMPILED
    if value == 2:
        return _two()
    half, bit = divmod(value, 2)
    doubled = compile_mul(_two(), compile_int(half))
    if bit:
        return compile_add(doubled, ONE_COMPILED)
    return doubled


@lru_cache(maxsize=None)
def _i_pi() -> CompiledExpr:
    # the log template maps -1 to -i*pi; multiplying by -1 is exact
    minus_one = compile_neg(ONE_COMPILED)
    neg_i_pi = compile_log(minus_one)
    return compile_mul(neg_i_pi, minus_one)


def _build_i() -> CompiledExpr:
    half = compile_inv(compile_int(2))
    result = compile_exp(compile_mul(_i_pi(), half))
    provenance = dict(result.provenance)
    provenance[()] = I
    return CompiledExpr(result.expr, I, provenance)


def _build_pi() -> CompiledExpr:
    return compile_mul(_i_pi(), compile_inv(constant_i()))


_EXPECTED_VALUES: Dict[str, Callable[[], mpmath.mpc]] = {
    "i": lambda: mpmath.mpc(0, 1),
    "pi": lambda: mpmath.mpc(mpmath.pi, 0),
}


def _check_constant(name: str, compiled: CompiledExpr) -> None:
    """Raises RuntimeError unless compiled evaluates to within 2^-40 of the constant."""
    outcome = eval_compiled(compiled, EvalLimits(target_bits=CONSTANT_CHECK_BITS))
    if not isinstance(outcome, Value):
        raise RuntimeError(f"Encoding of {name} does not evaluate: {outcome.to_json()}")
    mid_re, mid_im = outcome.box.midpoint()
    with mpmath.workprec(4 * CONSTANT_CHECK_BITS):
        expected = _EXPECTED_VALUES[name]()
        error = max(
            abs(mpmath.ldexp(mid_re.mantissa, mid_re.exponent) - expected.real),
            abs(mpmath.ldexp(mid_im.mantissa, mid_im.exponent) - expected.imag),
        )
        valid = error <= mpmath.ldexp(1, -CONSTANT_CHECK_BITS)
    if not valid:
        raise RuntimeError(f"Encoding of {name} evaluates to {outcome.box}")
    logger.debug("validated the encoding of %s (%d E nodes)", name, compiled.expr.e_count)


@lru_cache(maxsize=None)
def constant_i() -> CompiledExpr:
    """Returns the validated encoding exp(i*pi / 2) of i."""
    compiled = _build_i()
    _check_constant("i", compiled)
    return compiled


@lru_cache(maxsize=None)
def constant_pi() -> CompiledExpr:
    """Returns the validated encoding i*pi / i of pi."""
    compiled = _build_pi()
    _check_constant("pi", compiled)
    return compiled


CONSTANT_E: CompiledExpr = CompiledExpr(E(ONE, ONE))


def compile(term: ElTerm) -> CompiledExpr:
    """Compiles an EL term into an EML expression with exact annotations.

    Sub, Div, Pow and Sqrt are composites: x - y = x + (-y), x / y = x * y^-1,
    x^y = exp(y * log x) and sqrt(x) = x^(1/2).

    Raises:
        TypeError: If term is not an ElTerm.
    """
    compiler: Optional[Callable[[ElTerm], CompiledExpr]] = _COMPILERS.get(type(term))
    if compiler is None:
        raise TypeError(f"Can not compile {term!r}")
    return compiler(term)


_COMPILERS: Dict[type, Callable[[ElTerm], CompiledExpr]] = {
    Lit1: lambda term: ONE_COMPILED,
    LitInt: lambda term: compile_int(term.value),
    ConstE: lambda term: CONSTANT_E,
    ConstI: lambda term: constant_i(),
    ConstPi: lambda term: constant_pi(),
    Exp: lambda term: compile_exp(compile(term.arg)),
    Log: lambda term: compile_log(compile(term.arg)),
    Sqrt: lambda term: compile_pow(compile(term.arg), compile_inv(compile_int(2))),
    Neg: lambda term: compile_neg(compile(term.arg)),
    Inv: lambda term: compile_inv(compile(term.arg)),
    Add: lambda term: compile_add(compile(term.left), compile(term.right)),
    Sub: lambda term: compile_add(compile(term.left), compile_neg(compile(term.right))),
    Mul: lambda term: compile_mul(compile(term.left), compile(term.right)),
    Div: lambda term: compile_mul(compile(term.left), compile_inv(compile(term.right))),
    Pow: lambda term: compile_pow(compile(term.base), compile(term.exponent)),
}
