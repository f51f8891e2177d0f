# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2025- qscramble Developers and their Assignees

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

""" Circuits for exponentials of Pauli strings.

exp(-i theta sigma) for a non-identity string sigma on n qubits is built as

    tau -> P -> RX(2 theta) on qubit n -> P -> tau^dagger

where the basis-change layer tau maps sigma to a word mu over {I, X}
(tau^dagger mu tau = sigma) and the CNOT permutation network P maps mu to
I...IX (P mu P = X_n), so the central rotation exp(-i theta X_n) = RX(2 theta)
carries the whole exponential.

The second copy of P and the tau^dagger layer are emitted in reverse gate
order. Inverting a synthesized circuit therefore yields the same gate sequence
with only the central angle negated.
"""

from typing import NamedTuple, Optional, Tuple

import jax.numpy as jnp

from qscramble.circuit import Circuit, Gate, cnot, h, rx, s, sdag
from qscramble.errors import InvalidInputError, UnsupportedStringError
from qscramble.pauli import DEFAULT_ORACLE_LIMIT, PauliString, dense_matrix
from qscramble.util import is_finite_real

__all__ = [
    'EVEN', 'ODD', 'TRIVIAL',
    'BasisChangeLayer', 'PauliMask', 'PermutationNetwork', 'SynthesizedExponential',
    'basis_change_layer', 'mask_of', 'mask_word', 'permutation_network',
    'synthesize_exponential', 'exponential_oracle',
]

EVEN = "even"
ODD = "odd"
TRIVIAL = "trivial"

# sigma letter -> gate of the tau layer; tau^dagger uses the adjoint
_LAYER_GATES = {"Z": ("H", h, h), "Y": ("Sdag", sdag, s)}


class BasisChangeLayer(NamedTuple):
    """ Per-site gate of the tau layer: "H", "Sdag" (the Y basis change,
    satisfying Sdag^dagger X Sdag = Y) or None.
    """
    gates: Tuple[Optional[str], ...]

    def forward(self) -> Tuple[Gate, ...]:
        return tuple(
            _LAYER_GATES[letter][1](site) for site, letter in self._active()
        )

    def adjoint(self) -> Tuple[Gate, ...]:
        return tuple(
            _LAYER_GATES[letter][2](site) for site, letter in reversed(self._active())
        )

    def _active(self):
        by_gate = {v[0]: k for k, v in _LAYER_GATES.items()}
        return [(site, by_gate[g]) for site, g in enumerate(self.gates, start=1) if g is not None]


class PauliMask(NamedTuple):
    """ The I/X word of a string in binary form.

    :param x: Bit j is set iff site n-j-1 (one of the sites 1..n-1) carries a
        non-identity letter.
    :param parity: EVEN if site n is non-identity, ODD if it is the identity,
        TRIVIAL if site n is the only non-identity site.
    :param n: Number of sites.
    :param m: ODD only; the highest set bit of x.
    """
    x: int
    parity: str
    n: int
    m: Optional[int] = None


class PermutationNetwork(NamedTuple):
    cnots: Tuple[Gate, ...]
    parity: str


class SynthesizedExponential(NamedTuple):
    """ A circuit realizing exp(-i theta sigma).

    `theta` carries the full angle; the coefficient stored on `sigma` is not
    applied.
    """
    sigma: PauliString
    theta: float
    circuit: Circuit
    network: PermutationNetwork


def basis_change_layer(sigma: PauliString) -> BasisChangeLayer:
    """ Returns the tau layer of a string: H for Z, Sdag for Y, none for X and I. """
    return BasisChangeLayer(tuple(
        _LAYER_GATES[letter][0] if letter in _LAYER_GATES else None for letter in sigma.letters
    ))


def mask_of(sigma: PauliString) -> PauliMask:
    """ Returns the binary word and parity class of a non-identity string. """
    if sigma.is_identity:
        raise UnsupportedStringError("the identity string has no exponential circuit")
    n = sigma.n
    x = 0
    for j in range(n - 1):
        if sigma.letter(n - j - 1) != "I":
            x |= 1 << j
    if sigma.letter(n) != "I":
        return PauliMask(x, TRIVIAL if x == 0 else EVEN, n)
    return PauliMask(x, ODD, n, x.bit_length() - 1)


def mask_word(mask: PauliMask) -> PauliString:
    """ Returns the I/X word a mask encodes. """
    letters = ["I"] * mask.n
    for j in range(mask.n - 1):
        if mask.x >> j & 1:
            letters[mask.n - j - 2] = "X"
    if mask.parity != ODD:
        letters[-1] = "X"
    return PauliString("".join(letters))


def permutation_network(x: int, parity: str, n: int) -> PermutationNetwork:
    """ Returns the CNOT network P with P mu P = I...IX for the I/X word mu
    described by (x, parity).

    The even network is CNOT(n -> n-j-1) for every set bit j of x; the odd
    network wraps it in CNOT(n-m-1 -> n) on both sides, m being the highest
    set bit; the trivial network is empty.
    """
    if parity not in (EVEN, ODD, TRIVIAL) or not 0 <= x < 2 ** max(n - 1, 0):
        raise InvalidInputError(f"inconsistent mask x={x}, class {parity}, n={n}")
    if (parity == TRIVIAL) != (x == 0):
        raise InvalidInputError(f"class {parity} does not fit mask x={x}")
    core = tuple(cnot(n, n - j - 1) for j in range(n - 1) if x >> j & 1)
    if parity != ODD:
        return PermutationNetwork(core, parity)
    outer = cnot(n - (x.bit_length() - 1) - 1, n)
    return PermutationNetwork((outer,) + core + (outer,), parity)


def synthesize_exponential(sigma: PauliString, theta: float) -> SynthesizedExponential:
    """ Builds the circuit of exp(-i theta sigma).

    :param sigma: Non-identity string; its coefficient is ignored.
    :param theta: Angle in radians; positive theta is a forward evolution factor.
    """
    if not is_finite_real(theta):
        raise InvalidInputError(f"theta must be finite, got {theta!r}")
    mask = mask_of(sigma)
    network = permutation_network(mask.x, mask.parity, mask.n)
    layer = basis_change_layer(sigma)
    gates = (
        layer.forward()
        + network.cnots
        + (rx(2 * theta, sigma.n),)
        + tuple(reversed(network.cnots))
        + layer.adjoint()
    )
    return SynthesizedExponential(sigma, float(theta), Circuit(sigma.n, gates), network)


def exponential_oracle(sigma: PauliString, theta: float, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> jnp.ndarray:
    """ Dense exp(-i theta sigma) = cos(theta) I - i sin(theta) sigma for a
    unit-coefficient string (sigma squares to the identity).
    """
    p = dense_matrix(sigma.with_coefficient(1.), oracle_limit)
    return jnp.cos(theta) * jnp.eye(p.shape[0], dtype=p.dtype) - 1j * jnp.sin(theta) * p
