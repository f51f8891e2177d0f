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

""" Product-formula time evolution circuits and the exact propagator they
are measured against.

A Trotter step is assembled from per-term exponential circuits:
    - order 1: every term once, in the Hamiltonian's term order,
    - order 2: symmetric (Strang) splitting, either H_Z/2, H_X, H_Z/2 ("hz-hx", with H_X
      laid out as a palindrome) or all terms over dt/2 forward then
      backward ("per-term"),
    - order 4: the Suzuki recursion S2(p dt)^2 S2((1-4p) dt) S2(p dt)^2.

H_Z collects the terms made of I and Z only, H_X all others.
"""

import logging
import math
from functools import lru_cache
from typing import List, NamedTuple, Sequence, Tuple

import jax.numpy as jnp
import numpy as np
from scipy import stats

from qscramble.circuit import Circuit, repeat
from qscramble.errors import InvalidApplicationError, InvalidPlanError, InvalidTimeError
from qscramble.pauli import DEFAULT_ORACLE_LIMIT, PauliString, PauliSumHamiltonian, eigendecomposition
from qscramble.statevector import Statevector, apply, circuit_unitary
from qscramble.synthesis import synthesize_exponential
from qscramble.util import is_finite_real, spectral_distance

__all__ = [
    'ORDERS', 'SPLITS', 'SUZUKI_P', 'TIME_TOLERANCE',
    'TrotterPlan', 'EvolutionCircuit', 'ExactPropagator',
    'trotter_step', 'evolution_circuit', 'exact_evolution', 'exact_unitary',
    'trotter_trajectory', 'exact_trajectory', 'step_error', 'error_slope',
]

logger = logging.getLogger(__name__)

ORDERS = (1, 2, 4)
SPLITS = ("hz-hx", "per-term")
SUZUKI_P = 1 / (4 - 4 ** (1 / 3))
TIME_TOLERANCE = 1e-9


class TrotterPlan(NamedTuple):
    """ How a Hamiltonian is Trotterized.

    :param order: Product-formula order, 1, 2 or 4.
    :param dt: Step length in units of 1/J, > 0.
    :param split: "hz-hx" or "per-term".
    """
    order: int
    dt: float
    split: str = "hz-hx"

    def validate(self) -> 'TrotterPlan':
        if self.order not in ORDERS:
            raise InvalidPlanError(f"Trotter order must be one of {ORDERS}, got {self.order!r}")
        if not is_finite_real(self.dt) or self.dt <= 0:
            raise InvalidPlanError(f"Trotter step must be a positive real, got {self.dt!r}")
        if self.split not in SPLITS:
            raise InvalidPlanError(f"split must be one of {SPLITS}, got {self.split!r}")
        return self

    def steps_for(self, t: float) -> Tuple[int, float]:
        """ Returns the number of full steps covering `t` and the length of
        the trailing partial step (0 if t is a multiple of dt).
        """
        r = round(t / self.dt)
        if abs(t - r * self.dt) < TIME_TOLERANCE:
            return r, 0.
        r = math.floor(t / self.dt)
        return r, t - r * self.dt


class EvolutionCircuit(NamedTuple):
    plan: TrotterPlan
    hamiltonian: PauliSumHamiltonian
    circuit: Circuit
    t: float
    steps: int
    remainder: float


def _block(terms: Sequence[PauliString], dt: float, reverse: bool = False) -> Tuple:
    ordered = reversed(terms) if reverse else terms
    return tuple(
        gate
        for term in ordered
        for gate in synthesize_exponential(term, term.coefficient * dt).circuit.gates
    )


def _is_diagonal(term: PauliString) -> bool:
    return all(letter in "IZ" for letter in term.letters)


def _second_order(h: PauliSumHamiltonian, dt: float, split: str) -> Tuple:
    if split == "per-term":
        return _block(h.terms, dt / 2) + _block(h.terms, dt / 2, reverse=True)
    hz = [term for term in h.terms if _is_diagonal(term)]
    hx = [term for term in h.terms if not _is_diagonal(term)]
    # H_X mirrored around its last term, whose two halves fuse into one dt exponential
    middle = _block(hx[:-1], dt / 2) + _block(hx[-1:], dt) + _block(hx[:-1], dt / 2, reverse=True)
    return _block(hz, dt / 2) + middle + _block(hz, dt / 2, reverse=True)


@lru_cache(maxsize=128)
def _step_gates(h: PauliSumHamiltonian, dt: float, order: int, split: str) -> Tuple:
    if order == 1:
        return _block(h.terms, dt)
    if order == 2:
        return _second_order(h, dt, split)
    outer = _second_order(h, SUZUKI_P * dt, split)
    middle = _second_order(h, (1 - 4 * SUZUKI_P) * dt, split)
    return outer + outer + middle + outer + outer


def trotter_step(h: PauliSumHamiltonian, dt: float, order: int, split: str = "hz-hx") -> Circuit:
    """ Returns the circuit of one Trotter step of length `dt`. """
    TrotterPlan(order, dt, split).validate()
    return Circuit(h.n, _step_gates(h, float(dt), order, split))


def evolution_circuit(h: PauliSumHamiltonian, t: float, plan: TrotterPlan) -> EvolutionCircuit:
    """ Builds the Trotterized circuit of exp(-i H t).

    Full steps are wrapped in one REPEAT block; if `t` is not a multiple of
    `plan.dt` (beyond TIME_TOLERANCE) a final partial step covers the rest.
    t = 0 gives the empty circuit.
    """
    plan.validate()
    if not is_finite_real(t) or t < 0:
        raise InvalidTimeError(f"evolution time must be a non-negative real, got {t!r}")
    steps, remainder = plan.steps_for(t)
    gates: Tuple = ()
    if steps > 0:
        gates += (repeat(trotter_step(h, plan.dt, plan.order, plan.split), steps),)
    if remainder > 0:
        logger.debug("t=%g is not a multiple of dt=%g, adding a partial step of %g", t, plan.dt, remainder)
        gates += trotter_step(h, remainder, plan.order, plan.split).gates
    return EvolutionCircuit(plan, h, Circuit(h.n, gates), float(t), steps, remainder)


class ExactPropagator(NamedTuple):
    """ exp(-i H t) from the cached eigendecomposition of H. """
    hamiltonian: PauliSumHamiltonian
    t: float
    oracle_limit: int = DEFAULT_ORACLE_LIMIT

    @property
    def width(self) -> int:
        return self.hamiltonian.n

    def matrix(self) -> jnp.ndarray:
        return exact_unitary(self.hamiltonian, self.t, self.oracle_limit)

    def adjoint(self) -> 'ExactPropagator':
        return self._replace(t=-self.t)


def exact_unitary(h: PauliSumHamiltonian, t: float, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> jnp.ndarray:
    """ Returns V exp(-i Lambda t) V^dagger for H = V Lambda V^dagger. """
    eig = eigendecomposition(h, oracle_limit)
    return (eig.vectors * jnp.exp(-1j * eig.values * t)) @ jnp.conj(eig.vectors.T)


def exact_evolution(
        h: PauliSumHamiltonian,
        t: float,
        s: Statevector,
        oracle_limit: int = DEFAULT_ORACLE_LIMIT
    ) -> Statevector:  # noqa: E121,E125
    """ Evolves a state exactly, exp(-i H t) s, through the eigenbasis of H. """
    if s.width != h.n:
        raise InvalidApplicationError(f"{h.n}-qubit Hamiltonian applied to a {s.width}-qubit state")
    eig = eigendecomposition(h, oracle_limit)
    coefficients = jnp.conj(eig.vectors.T) @ s.amplitudes
    return Statevector(s.width, eig.vectors @ (jnp.exp(-1j * eig.values * t) * coefficients))


def _on_step_grid(times: Sequence[float], dt: float) -> bool:
    return all(abs(t - round(t / dt) * dt) < TIME_TOLERANCE for t in times)


def trotter_trajectory(
        h: PauliSumHamiltonian,
        times: Sequence[float],
        plan: TrotterPlan,
        s: Statevector
    ) -> List[Statevector]:  # noqa: E121,E125
    """ Returns the Trotterized states at increasing `times`.

    If every time is a multiple of `plan.dt`, the state is carried forward
    from one output time to the next, which applies the same step sequence as
    a fresh `evolution_circuit` per time. Otherwise each state is computed from
    a fresh circuit.
    """
    plan.validate()
    if not _on_step_grid(times, plan.dt):
        return [apply(evolution_circuit(h, t, plan).circuit, s) for t in times]
    step = trotter_step(h, plan.dt, plan.order, plan.split)
    states, done = [], 0
    for t in times:
        steps = round(t / plan.dt)
        if steps < done:
            raise InvalidTimeError("trajectory times must be non-decreasing")
        if steps > done:
            s = apply(Circuit(h.n, (repeat(step, steps - done),)), s)
            done = steps
        states.append(s)
    return states


def exact_trajectory(
        h: PauliSumHamiltonian,
        times: Sequence[float],
        s: Statevector,
        oracle_limit: int = DEFAULT_ORACLE_LIMIT
    ) -> List[Statevector]:  # noqa: E121,E125
    return [exact_evolution(h, t, s, oracle_limit) for t in times]


def step_error(h: PauliSumHamiltonian, dt: float, order: int, split: str = "hz-hx") -> float:
    """ Spectral distance between one Trotter step and exp(-i H dt). """
    return spectral_distance(circuit_unitary(trotter_step(h, dt, order, split)), exact_unitary(h, dt))


def error_slope(dts: Sequence[float], errors: Sequence[float]) -> float:
    """ Least-squares slope of log(error) against log(dt). """
    fit = stats.linregress(np.log(np.asarray(dts)), np.log(np.asarray(errors)))
    return float(fit.slope)
