# Copyright The EML-Toolkit Contributors
#
# Licensed under the MIT License.
# For details on the licensing terms, see the LICENSE file.
# SPDX-License-Identifier: MIT

"""Contains the toy prefix-free machines, their registry and the Elias gamma code.

The machines are deliberately not universal and their halting problems are
decidable, so their halting probabilities are computable numbers. They only
show how lower bounds of such a probability are enumerated by dovetailing.
"""

# standard libraries
from dataclasses import dataclass
from itertools import count, product
from typing import Callable, Dict, Iterator, List, Optional, Type, Union

# local sources
from eml_toolkit.validation.errors import UnknownMachine

_MACHINE_CLASSES: Dict[str, Type["ToyMachine"]] = {}


def register_machine(name: str) -> Callable[[Type["ToyMachine"]], Type["ToyMachine"]]:
    """Class decorator that makes a ToyMachine available under the given name."""

    def decorator(machine_class: Type["ToyMachine"]) -> Type["ToyMachine"]:
        machine_class.name = name
        _MACHINE_CLASSES[name] = machine_class
        return machine_class

    return decorator


def machine_names() -> List[str]:
    return sorted(_MACHINE_CLASSES)


def get_machine(name: str) -> "ToyMachine":
    """Returns a new instance of the machine registered under name.

    Raises:
        UnknownMachine: If no machine has that name.
    """
    if name not in _MACHINE_CLASSES:
        raise UnknownMachine(f"Unknown machine '{name}', known: {', '.join(machine_names())}")
    return _MACHINE_CLASSES[name]()


def gamma_encode(n: int) -> str:
    """Returns the Elias gamma code of n >= 1: floor(log2 n) zeros, then n in binary."""
    if n <= 0:
        raise ValueError("Elias gamma codes exist for positive integers only")
    binary = bin(n)[2:]
    return "0" * (len(binary) - 1) + binary


def gamma_decode(bits: str) -> Optional[int]:
    """Returns n if bits is exactly the gamma code of n, None otherwise."""
    zeros = len(bits) - len(bits.lstrip("0"))
    binary = bits[zeros:]
    if len(binary) != zeros + 1 or not binary.startswith("1") or set(binary) - {"0", "1"}:
        return None
    return int(binary, 2)


@dataclass(frozen=True)
class Continue:
    state: int


@dataclass(frozen=True)
class Halt:
    pass


StepResult = Union[Continue, Halt]


class ToyMachine:
    """A machine that runs self-delimiting programs given as bit strings.

    Subclasses define decode (program -> payload or None), initial_state and
    step. A program that never returns Halt runs forever.

    Attributes:
        name: The registry name.
        omega_bits: The complete binary expansion of the halting probability,
            if it is known exactly.
    """

    name: str = ""
    omega_bits: Optional[str] = None

    def decode(self, bits: str) -> Optional[int]:
        raise NotImplementedError

    def initial_state(self, payload: int) -> int:
        return payload

    def step(self, payload: int, state: int, step_index: int) -> StepResult:
        raise NotImplementedError

    def programs(self) -> Iterator[str]:
        """Yields all valid programs ordered by length, then lexicographically."""
        for length in count(1):
            for bits in product("01", repeat=length):
                code = "".join(bits)
                if self.decode(code) is not None:
                    yield code

    def valid_codes(self, max_len: int) -> List[str]:
        """Returns all valid programs up to max_len bits by testing every bit string."""
        codes = []
        for length in range(1, max_len + 1):
            for bits in product("01", repeat=length):
                code = "".join(bits)
                if self.decode(code) is not None:
                    codes.append(code)
        return codes


class GammaCodedMachine(ToyMachine):
    """Base class of machines whose programs are Elias gamma codes of their payload."""

    def decode(self, bits: str) -> Optional[int]:
        return gamma_decode(bits)

    def programs(self) -> Iterator[str]:
        # gamma codes sort by length exactly like their payloads
        for payload in count(1):
            yield gamma_encode(payload)


@register_machine("even-countdown")
class EvenCountdown(GammaCodedMachine):
    """Counts the payload down in steps of two and halts on reaching zero.

    Even payloads halt, odd payloads run forever, so the halting probability is
    exactly 1/4.
    """

    omega_bits = "01"

    def step(self, payload: int, state: int, step_index: int) -> StepResult:
        if state == 0:
            return Halt()
        return Continue(state - 2)


@register_machine("gamma-collatz")
class GammaCollatz(GammaCodedMachine):
    """Iterates the Collatz map on the payload and halts on reaching 1."""

    def step(self, payload: int, state: int, step_index: int) -> StepResult:
        if state == 1:
            return Halt()
        if state % 2 == 0:
            return Continue(state // 2)
        return Continue(3 * state + 1)
