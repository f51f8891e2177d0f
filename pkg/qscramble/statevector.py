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

""" Exact statevector simulation of circuits.

Every gate is lowered to a (possibly multi-controlled) single-qubit operation
given by a target bit mask, a control bit mask, the required control bit
values and a 2x2 matrix. A flat run of such operations (a "tape") is applied
with `jax.lax.scan`; a REPEAT block whose body is a flat tape runs in a
`jax.lax.fori_loop`, so evolution circuits with thousands of Trotter steps are
compiled once per step shape.

The computational-basis index has qubit 1 as its most significant bit.
"""

import logging
import struct
from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple, Union

import jax
import jax.numpy as jnp
import numpy as np
import numpyro.distributions as dist

from qscramble.circuit import Circuit, Gate
from qscramble.errors import (
    InternalConsistencyError, InvalidApplicationError, InvalidInputError, InvalidStateError
)
from qscramble.pauli import PauliString
from qscramble.random import PRNGState
from qscramble.util import basis_indices, is_int_scalar, normalize, qubit_mask

__all__ = [
    'NORM_TOLERANCE', 'IMAGINARY_TOLERANCE', 'LOCAL_STATES',
    'Statevector', 'ExpectationResult', 'NormDistance',
    'gate_matrix', 'prepare', 'apply', 'circuit_unitary', 'apply_register_operator',
    'expect_pauli', 'sample_expectation', 'norm_distance',
    'save_statevector', 'load_statevector',
]

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
IMAGINARY_TOLERANCE = 1e-9

_SQRT_HALF = 1 / np.sqrt(2)

LOCAL_STATES = {
    "0": np.array([1, 0], dtype=np.complex128),
    "1": np.array([0, 1], dtype=np.complex128),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=np.complex128),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=np.complex128),
    "+y": np.array([_SQRT_HALF, 1j * _SQRT_HALF], dtype=np.complex128),
    "-y": np.array([_SQRT_HALF, -1j * _SQRT_HALF], dtype=np.complex128),
}

_FIXED_MATRICES = {
    "H": np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT_HALF,
    "S": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "Sdag": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


class Statevector(NamedTuple):
    """ A normalized state of `width` qubits.

    :param width: Number of qubits m.
    :param amplitudes: The 2^m complex amplitudes.
    """
    width: int
    amplitudes: jnp.ndarray

    @property
    def norm(self) -> float:
        return float(jnp.linalg.norm(self.amplitudes))


class ExpectationResult(NamedTuple):
    value: float
    observable: str


class NormDistance(NamedTuple):
    """ Distance between two states, before and after global-phase alignment. """
    raw: float
    aligned: float


def gate_matrix(gate: Gate) -> np.ndarray:
    """ Returns the 2x2 matrix of a single-qubit gate. """
    if gate.kind == "RX":
        c, s = np.cos(gate.angle / 2), np.sin(gate.angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if gate.kind == "RZ":
        return np.diag([np.exp(-0.5j * gate.angle), np.exp(0.5j * gate.angle)]).astype(np.complex128)
    return _FIXED_MATRICES[gate.kind]


#### lowering ####

class _Tape(NamedTuple):
    target: jnp.ndarray
    control: jnp.ndarray
    control_value: jnp.ndarray
    matrices: jnp.ndarray


class _Loop(NamedTuple):
    count: int
    body: Tuple[Union[_Tape, '_Loop'], ...]


def _lower_gates(gates: Sequence[Gate], width: int, cmask: int, cval: int, out: list, pending: list):
    """ Appends lowered operations for `gates` to `pending` (a flat run of
    (target, control, value, matrix) tuples), flushing it into `out` as a
    `_Tape` whenever a REPEAT block interrupts the run.
    """
    for gate in gates:
        if gate.kind == "REPEAT":
            _flush(out, pending)
            body: list = []
            body_pending: list = []
            _lower_gates(gate.inner.gates, width, cmask, cval, body, body_pending)
            _flush(body, body_pending)
            if gate.count > 0 and body:
                out.append(_Loop(gate.count, tuple(body)))
        elif gate.kind == "CTRL":
            bit = qubit_mask(gate.qubits[0], width)
            _lower_gates(
                gate.inner.gates, width, cmask | bit, cval | (bit if gate.polarity == 1 else 0), out, pending
            )
        elif gate.kind == "CNOT":
            bit = qubit_mask(gate.qubits[0], width)
            pending.append((qubit_mask(gate.qubits[1], width), cmask | bit, cval | bit, _FIXED_MATRICES["X"]))
        else:
            pending.append((qubit_mask(gate.qubits[0], width), cmask, cval, gate_matrix(gate)))


def _flush(out: list, pending: list):
    if pending:
        target, control, value, matrices = zip(*pending)
        out.append(_Tape(
            jnp.asarray(target, dtype=jnp.int64),
            jnp.asarray(control, dtype=jnp.int64),
            jnp.asarray(value, dtype=jnp.int64),
            jnp.asarray(np.stack(matrices), dtype=jnp.complex128),
        ))
        pending.clear()


@lru_cache(maxsize=256)
def _lower(c: Circuit) -> Tuple[Union[_Tape, _Loop], ...]:
    out: list = []
    pending: list = []
    _lower_gates(c.gates, c.width, 0, 0, out, pending)
    _flush(out, pending)
    return tuple(out)


#### kernels ####

def _apply_op(amplitudes, op):
    target, control, value, u = op
    idx = jnp.arange(amplitudes.shape[0], dtype=jnp.int64)
    partner = idx ^ target
    bit = (idx & target) != 0
    updated = (
        jnp.where(bit, u[1, 1], u[0, 0]) * amplitudes
        + jnp.where(bit, u[1, 0], u[0, 1]) * amplitudes[partner]
    )
    return jnp.where((idx & control) == value, updated, amplitudes), None


def _scan_tape(amplitudes, target, control, value, matrices):
    return jax.lax.scan(_apply_op, amplitudes, (target, control, value, matrices))[0]


_run_tape = jax.jit(_scan_tape)


@jax.jit
def _run_repeated_tape(amplitudes, count, target, control, value, matrices):
    return jax.lax.fori_loop(
        0, count, lambda _, a: _scan_tape(a, target, control, value, matrices), amplitudes
    )


def _run(amplitudes, segments):
    for segment in segments:
        if isinstance(segment, _Tape):
            amplitudes = _run_tape(amplitudes, *segment)
        elif len(segment.body) == 1 and isinstance(segment.body[0], _Tape):
            amplitudes = _run_repeated_tape(amplitudes, segment.count, *segment.body[0])
        else:
            for _ in range(segment.count):
                amplitudes = _run(amplitudes, segment.body)
    return amplitudes


#### public operations ####

def _normalized(amplitudes, what: str) -> jnp.ndarray:
    amplitudes = jnp.asarray(amplitudes, dtype=jnp.complex128)
    norm = jnp.linalg.norm(amplitudes)
    if not jnp.all(jnp.isfinite(amplitudes)) or not norm > 0:
        raise InvalidStateError(f"{what} cannot be normalized")
    return normalize(amplitudes)


def prepare(kind: str, width: int, payload=None) -> Statevector:
    """ Prepares a normalized statevector.

    :param kind: One of
        - "all-zero": |0...0>,
        - "ghz": (|0...0> + |1...1>) / sqrt(2),
        - "product": a product of local states; `payload` is a sequence of
          `width` entries, each a key of `LOCAL_STATES` ("0", "1", "+", "-",
          "+y", "-y") or a 2-vector of amplitudes,
        - "amplitudes": explicit amplitudes in `payload`, normalized here.
    :param width: Number of qubits.
    :param payload: Kind-specific data, see above.
    """
    if not is_int_scalar(width) or width < 1:
        raise InvalidStateError(f"state width must be a positive integer, got {width!r}")
    dim = 2 ** width
    if kind == "all-zero":
        return Statevector(width, jnp.zeros(dim, dtype=jnp.complex128).at[0].set(1.))
    if kind == "ghz":
        amplitudes = jnp.zeros(dim, dtype=jnp.complex128).at[0].set(_SQRT_HALF).at[dim - 1].set(_SQRT_HALF)
        return Statevector(width, amplitudes)
    if kind == "product":
        if payload is None or len(payload) != width:
            raise InvalidStateError(f"product state needs {width} local states")
        locals_ = []
        for k, local in enumerate(payload):
            if isinstance(local, str):
                if local not in LOCAL_STATES:
                    raise InvalidStateError(f"unknown local state '{local}' on qubit {k + 1}")
                locals_.append(jnp.asarray(LOCAL_STATES[local]))
            else:
                if np.shape(local) != (2,):
                    raise InvalidStateError(f"local state on qubit {k + 1} must have 2 amplitudes")
                locals_.append(_normalized(local, f"local state on qubit {k + 1}"))
        amplitudes = locals_[0]
        for local in locals_[1:]:
            amplitudes = jnp.kron(amplitudes, local)
        return Statevector(width, amplitudes)
    if kind == "amplitudes":
        if payload is None or np.shape(payload) != (dim,):
            raise InvalidStateError(f"explicit state needs {dim} amplitudes")
        return Statevector(width, _normalized(payload, "amplitude payload"))
    raise InvalidStateError(f"unknown state kind '{kind}'")


def apply(c: Circuit, s: Statevector) -> Statevector:
    """ Applies a circuit to a state and returns the resulting state. """
    if c.width != s.width:
        raise InvalidApplicationError(f"circuit of width {c.width} applied to a {s.width}-qubit state")
    return Statevector(s.width, _run(s.amplitudes, _lower(c)))


def circuit_unitary(c: Circuit) -> jnp.ndarray:
    """ Returns the unitary of a circuit; column k is the image of basis state k. """
    segments = _lower(c)
    identity = jnp.eye(2 ** c.width, dtype=jnp.complex128)
    return jax.vmap(lambda column: _run(column, segments), in_axes=1, out_axes=1)(identity)


def apply_register_operator(s: Statevector, operator: jnp.ndarray, register_width: int) -> Statevector:
    """ Applies a dense operator to the leading `register_width` qubits of a
    state (qubits 1..register_width), leaving the remaining qubits untouched.
    """
    if not 1 <= register_width <= s.width or operator.shape != (2 ** register_width,) * 2:
        raise InvalidApplicationError(
            f"operator of shape {operator.shape} does not fit {register_width} of {s.width} qubits"
        )
    blocks = s.amplitudes.reshape(2 ** register_width, 2 ** (s.width - register_width))
    return Statevector(s.width, (operator @ blocks).reshape(-1))


def _pauli_masks(p: PauliString) -> Tuple[int, int, int]:
    xmask, zmask, n_y = 0, 0, 0
    for site, letter in enumerate(p.letters, start=1):
        bit = qubit_mask(site, p.n)
        if letter in "XY":
            xmask |= bit
        if letter in "ZY":
            zmask |= bit
        n_y += letter == "Y"
    return xmask, zmask, n_y


def _pauli_amplitude_sum(s: Statevector, xmask: int, zmask: int, n_y: int):
    idx = basis_indices(s.width)
    parity = jax.lax.population_count(idx & zmask) % 2
    phase = (1, 1j, -1, -1j)[n_y % 4] * (1 - 2 * parity)
    return jnp.sum(jnp.conj(s.amplitudes[idx ^ xmask]) * phase * s.amplitudes)


def expect_pauli(s: Statevector, p: PauliString) -> ExpectationResult:
    """ Returns <s| p |s> without building the dense matrix of `p`.

    A string acts on a basis state as P|k> = i^nY (-1)^popcount(k & zmask) |k ^ xmask>,
    with xmask the X/Y sites and zmask the Z/Y sites.
    """
    if p.n != s.width:
        raise InvalidApplicationError(f"{p.n}-site string measured on a {s.width}-qubit state")
    value = p.coefficient * _pauli_amplitude_sum(s, *_pauli_masks(p))
    if abs(float(jnp.imag(value))) > IMAGINARY_TOLERANCE:
        raise InternalConsistencyError(f"expectation of {p.letters} has imaginary part {float(jnp.imag(value)):.3e}")
    return ExpectationResult(float(jnp.real(value)), str(p))


def sample_expectation(s: Statevector, p: PauliString, shots: int, rng_key: PRNGState) -> ExpectationResult:
    """ Estimates <s| p |s> for a unit-coefficient string from `shots`
    projective measurements, drawn as one binomial sample of the +1 outcome.
    """
    if not is_int_scalar(shots) or shots < 1:
        raise InvalidInputError(f"shots must be a positive integer, got {shots!r}")
    exact = expect_pauli(s, p.with_coefficient(1.)).value
    prob_plus = min(max((1 + exact) / 2, 0.), 1.)
    plus = dist.Binomial(total_count=shots, probs=prob_plus).sample(rng_key)
    return ExpectationResult(p.coefficient * float(2 * plus - shots) / shots, str(p))


def norm_distance(a: Statevector, b: Statevector) -> NormDistance:
    """ Returns the 2-norm distance of two states, raw and after multiplying
    `b` by the global phase that makes <a|b> real and non-negative.
    """
    if a.width != b.width:
        raise InvalidInputError(f"cannot compare states of widths {a.width} and {b.width}")
    raw = float(jnp.linalg.norm(a.amplitudes - b.amplitudes))
    overlap = jnp.vdot(a.amplitudes, b.amplitudes)
    if abs(overlap) == 0:
        return NormDistance(raw, raw)
    phase = jnp.conj(overlap) / jnp.abs(overlap)
    aligned = min(float(jnp.linalg.norm(a.amplitudes - phase * b.amplitudes)), raw)
    if raw - aligned > 1e-13:
        logger.debug("global phase accounts for %.3e of a raw distance %.3e", raw - aligned, raw)
    return NormDistance(raw, aligned)


def save_statevector(s: Statevector, path: str):
    """ Writes a state as a little-endian uint32 width followed by
    little-endian complex128 amplitudes.
    """
    with open(path, "wb") as f:
        f.write(struct.pack("<I", s.width))
        f.write(np.asarray(s.amplitudes, dtype="<c16").tobytes())


def load_statevector(path: str) -> Statevector:
    with open(path, "rb") as f:
        (width,) = struct.unpack("<I", f.read(4))
        amplitudes = np.frombuffer(f.read(), dtype="<c16")
    if amplitudes.shape != (2 ** width,):
        raise InvalidStateError(f"{path} holds {amplitudes.size} amplitudes, header says {width} qubits")
    return Statevector(width, jnp.asarray(amplitudes))
