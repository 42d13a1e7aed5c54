# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the substitution identity suite.

Every template is evaluated with its holes bound to exact sample values. The
certified enclosure and the floating point oracle must both agree with the
operation the template stands for. The add template is also checked outside
its exactness strip, where it must be off by a nonzero multiple of 2*pi*i.
"""

# standard libraries
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import random
from typing import Callable, Dict, List, Optional

# 3rd party libraries
import mpmath

# local sources
from eml_toolkit.compiler.substitutions import template
from eml_toolkit.model.eml_expr import ONE
from eml_toolkit.model.gaussian_rational import GaussianRational
from eml_toolkit.rigor.complex_box import ComplexBox
from eml_toolkit.rigor import evaluator
from eml_toolkit.rigor.evaluator import EvalLimits, Value
from eml_toolkit.rigor.oracle import oracle_bits, oracle_value

logger = logging.getLogger(__name__)

DEFAULT_SEED: int = 0xE115EED
DEFAULT_SAMPLES: int = 200
DEFAULT_TOLERANCE_BITS: int = 40

# samples are multiples of 2^-SAMPLE_GRID_BITS
SAMPLE_GRID_BITS: int = 8

Sample = Dict[str, GaussianRational]
Sampler = Callable[[random.Random], Sample]


@dataclass
class IdentityResult:
    """Outcome of one row of the identity suite.

    Attributes:
        name: The identity.
        samples: Number of samples checked.
        passed: Number of samples that agreed.
        failures: A description of every failed sample.
    """

    name: str
    samples: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.samples

    def to_json(self) -> Dict:
        return {
            "identity": self.name,
            "samples": self.samples,
            "passed": self.passed,
            "failures": self.failures,
        }


def _grid(rng: random.Random, bound: Fraction) -> Fraction:
    scale = 1 << SAMPLE_GRID_BITS
    limit = int(bound * scale)
    return Fraction(rng.randint(-limit, limit), scale)


def _complex(rng: random.Random, re_bound: Fraction, im_bound: Fraction) -> GaussianRational:
    return GaussianRational(_grid(rng, re_bound), _grid(rng, im_bound))


def _away_from_zero(rng: random.Random) -> GaussianRational:
    # |re|, |im| <= 4 and |x| >= 2^-4
    while True:
        value = _complex(rng, Fraction(4), Fraction(4))
        if value.re**2 + value.im**2 >= Fraction(1, 256):
            return value


def _off_negative_axis(rng: random.Random) -> GaussianRational:
    while True:
        value = _complex(rng, Fraction(4), Fraction(4))
        if not value.is_real() or value.re > 0:
            return value


def _in_imaginary_band(rng: random.Random, low: Fraction, high: Fraction) -> GaussianRational:
    scale = 1 << SAMPLE_GRID_BITS
    im = Fraction(rng.randint(int(low * scale), int(high * scale)), scale)
    return GaussianRational(_grid(rng, Fraction(4)), im)


def _to_mp(value: GaussianRational) -> mpmath.mpc:
    return mpmath.mpc(
        mpmath.mpf(value.re.numerator) / value.re.denominator,
        mpmath.mpf(value.im.numerator) / value.im.denominator,
    )


def _point_box(value: GaussianRational) -> ComplexBox:
    # grid samples are dyadic, so the point box is exact
    return ComplexBox.enclosing(value, SAMPLE_GRID_BITS)


@dataclass(frozen=True)
class IdentityCase:
    """One row of the suite: a template, a sample domain and the intended operation.

    Attributes:
        name: The name printed in the table.
        template_name: The substitution template under test.
        sampler: Draws the hole values.
        operation: The intended result, computed with mpmath.
        periodic: Whether agreement is only expected modulo a nonzero multiple of 2*pi*i.
    """

    name: str
    template_name: str
    sampler: Sampler
    operation: Callable[..., mpmath.mpc]
    periodic: bool = False


IDENTITY_CASES: List[IdentityCase] = [
    IdentityCase(
        "exp", "exp", lambda rng: {"x": _complex(rng, Fraction(4), Fraction(4))}, mpmath.exp
    ),
    IdentityCase("log", "log", lambda rng: {"x": _off_negative_axis(rng)}, mpmath.log),
    IdentityCase(
        "mul",
        "mul",
        lambda rng: {"x": _away_from_zero(rng), "y": _away_from_zero(rng)},
        lambda x, y: x * y,
    ),
    IdentityCase("inv", "inv", lambda rng: {"x": _away_from_zero(rng)}, lambda x: 1 / x),
    IdentityCase(
        "add",
        "add",
        lambda rng: {
            "x": _complex(rng, Fraction(4), Fraction(3, 2)),
            "y": _complex(rng, Fraction(4), Fraction(3, 2)),
        },
        lambda x, y: x + y,
    ),
    IdentityCase(
        "neg", "neg", lambda rng: {"x": _complex(rng, Fraction(4), Fraction(3))}, lambda x: -x
    ),
    IdentityCase(
        "add-outside-strip",
        "add",
        lambda rng: {
            "x": _in_imaginary_band(rng, Fraction(2), Fraction(3)),
            "y": _in_imaginary_band(rng, Fraction(2), Fraction(3)),
        },
        lambda x, y: x + y,
        periodic=True,
    ),
]


def _agrees(value: mpmath.mpc, expected: mpmath.mpc, tolerance: mpmath.mpf, periodic: bool) -> bool:
    difference = value - expected
    if periodic:
        turns = difference / (2j * mpmath.pi)
        shift = int(mpmath.nint(mpmath.re(turns)))
        if shift == 0:
            return False
        difference = difference - shift * 2j * mpmath.pi
    return abs(mpmath.re(difference)) <= tolerance and abs(mpmath.im(difference)) <= tolerance


def check_sample(case: IdentityCase, sample: Sample, tolerance_bits: int) -> Optional[str]:
    """Checks one sample, returns None if it passes and a description otherwise."""
    substitution = template(case.template_name)
    expr = substitution.instantiate(**{hole: ONE for hole in substitution.holes})
    paths = {substitution.holes[hole]: value for hole, value in sample.items()}

    outcome = evaluator.eval(
        expr,
        leaves={path: _point_box(value) for path, value in paths.items()},
        limits=EvalLimits(target_bits=tolerance_bits + 8),
    )
    arguments = ", ".join(f"{hole}={value}" for hole, value in sorted(sample.items()))
    if not isinstance(outcome, Value):
        return f"{case.name}({arguments}): {outcome.kind}"

    precision = oracle_bits(tolerance_bits)
    with mpmath.workprec(precision):
        tolerance = mpmath.ldexp(1, -tolerance_bits)
        expected = case.operation(*(_to_mp(sample[hole]) for hole in sorted(sample)))
        mid_re, mid_im = outcome.box.midpoint()
        certified = mpmath.mpc(
            mpmath.ldexp(mid_re.mantissa, mid_re.exponent),
            mpmath.ldexp(mid_im.mantissa, mid_im.exponent),
        )
        if not _agrees(certified, expected, tolerance, case.periodic):
            return f"{case.name}({arguments}): enclosure {outcome.box} misses {expected}"
    oracle = oracle_value(expr, precision, leaves=paths)
    if oracle is None:
        return f"{case.name}({arguments}): oracle undefined"
    with mpmath.workprec(precision):
        if not _agrees(mpmath.mpc(oracle), expected, tolerance, case.periodic):
            return f"{case.name}({arguments}): oracle value {oracle} misses {expected}"
    return None


def run_identity_suite(
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    tolerance_bits: int = DEFAULT_TOLERANCE_BITS,
    cases: Optional[List[IdentityCase]] = None,
) -> List[IdentityResult]:
    """Runs every identity on samples drawn from one seeded generator.

    Returns:
        One IdentityResult per case, in the order of the cases.
    """
    rng = random.Random(seed)
    results = []
    for case in cases if cases is not None else IDENTITY_CASES:
        result = IdentityResult(case.name)
        for _ in range(samples):
            failure = check_sample(case, case.sampler(rng), tolerance_bits)
            result.samples += 1
            if failure is None:
                result.passed += 1
            else:
                result.failures.append(failure)
        logger.debug("identity %s: %d of %d passed", case.name, result.passed, result.samples)
        results.append(result)
    return results
