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

""" Out-of-time-ordered correlators of single-site Pauli operators.

For W = P_i, V = P_j and W(t) = U^dagger W U the four-point function is

    F(t) = <psi| W(t) V W(t) V |psi>,

and the squared commutator is C(t) = 2 (1 - Re F(t)) for unitary Hermitian
W and V. Re F is obtained either from the ancilla interferometer, as the
X expectation of an extra qubit n+1 (the least significant bit), or directly
as the overlap of two evolved states.
"""

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Union

import jax.numpy as jnp
import numpy as np
import pandas as pd

from qscramble.circuit import Circuit, Gate, compose, controlled, h, invert, widen
from qscramble.errors import InvalidProtocolError
from qscramble.pauli import DEFAULT_ORACLE_LIMIT, PauliString, PauliSumHamiltonian
from qscramble.random import PRNGState, key_for
from qscramble.statevector import (
    IMAGINARY_TOLERANCE, Statevector, apply, apply_register_operator, expect_pauli,
    sample_expectation
)
from qscramble.trotter import EvolutionCircuit, ExactPropagator, TrotterPlan, evolution_circuit
from qscramble.util import is_int_scalar

__all__ = [
    'METHODS', 'ButterflyConfig', 'OtocPoint', 'OtocSeries',
    'TrotterEvolution', 'ExactEvolution',
    'interferometric_circuit', 'interferometric_reF', 'direct_F', 'direct_reF',
    'commutator_series', 'series_frame', 'series_metadata', 'series_filename',
    'save_series',
]

logger = logging.getLogger(__name__)

METHODS = ("interferometric", "direct")

_PAULI_GATES = {"X", "Y", "Z"}


class ButterflyConfig(NamedTuple):
    """ Sites and operators of an OTOC.

    :param i: Site of the butterfly operator W.
    :param j: Site of the probe operator V.
    :param n: System size.
    :param w: Pauli letter of W.
    :param v: Pauli letter of V.
    """
    i: int
    j: int
    n: int
    w: str = "X"
    v: str = "X"

    def validate(self) -> 'ButterflyConfig':
        if not is_int_scalar(self.n) or self.n < 1:
            raise InvalidProtocolError(f"system size must be a positive integer, got {self.n!r}")
        for name, site in (("i", self.i), ("j", self.j)):
            if not is_int_scalar(site) or not 1 <= site <= self.n:
                raise InvalidProtocolError(f"site {name}={site!r} outside 1..{self.n}")
        if self.w not in _PAULI_GATES or self.v not in _PAULI_GATES:
            raise InvalidProtocolError(f"W and V must be single-site X, Y or Z, got {self.w}, {self.v}")
        return self

    def w_gate(self) -> Gate:
        return Gate(self.w, (self.i,))

    def v_gate(self) -> Gate:
        return Gate(self.v, (self.j,))


class OtocPoint(NamedTuple):
    t: float
    reF: float
    C: float


class TrotterEvolution(NamedTuple):
    """ Evolution by Trotterized circuits built fresh for every time. """
    hamiltonian: PauliSumHamiltonian
    plan: TrotterPlan

    def propagator(self, t: float) -> EvolutionCircuit:
        return evolution_circuit(self.hamiltonian, t, self.plan)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "trotter", "order": self.plan.order, "dt": self.plan.dt, "split": self.plan.split}


class ExactEvolution(NamedTuple):
    """ Evolution by the exact propagator of the Hamiltonian. """
    hamiltonian: PauliSumHamiltonian
    oracle_limit: int = DEFAULT_ORACLE_LIMIT

    def propagator(self, t: float) -> ExactPropagator:
        return ExactPropagator(self.hamiltonian, t, self.oracle_limit)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "exact"}


Evolution = Union[TrotterEvolution, ExactEvolution]
Propagator = Union[EvolutionCircuit, Circuit, ExactPropagator]


class OtocSeries(NamedTuple):
    config: ButterflyConfig
    times: List[float]
    points: List[OtocPoint]
    method: str
    evolution: Dict[str, Any]
    initial_state: str

    @property
    def C(self) -> np.ndarray:
        return np.array([p.C for p in self.points])

    @property
    def reF(self) -> np.ndarray:
        return np.array([p.reF for p in self.points])


def _circuit_of(U: Propagator) -> Optional[Circuit]:
    if isinstance(U, EvolutionCircuit):
        return U.circuit
    if isinstance(U, Circuit):
        return U
    return None


def _check_widths(psi: Statevector, cfg: ButterflyConfig, U: Propagator):
    cfg.validate()
    if psi.width != cfg.n:
        raise InvalidProtocolError(f"{psi.width}-qubit state for an n={cfg.n} OTOC")
    width = U.circuit.width if isinstance(U, EvolutionCircuit) else U.width
    if width != cfg.n:
        raise InvalidProtocolError(f"{width}-qubit evolution for an n={cfg.n} OTOC")


def _forward(U: Propagator, s: Statevector, register: int) -> Statevector:
    circuit = _circuit_of(U)
    if circuit is None:
        return apply_register_operator(s, U.matrix(), register)
    return apply(widen(circuit, s.width), s)


def _backward(U: Propagator, s: Statevector, register: int) -> Statevector:
    circuit = _circuit_of(U)
    if circuit is None:
        return apply_register_operator(s, U.adjoint().matrix(), register)
    return apply(widen(invert(circuit), s.width), s)


def _ancilla_stages(cfg: ButterflyConfig):
    m = cfg.n + 1
    v = Circuit(m, (cfg.v_gate(),))
    prepare = Circuit(m, (h(m), controlled(m, v, polarity=0)))
    butterfly = Circuit(m, (cfg.w_gate(),))
    close = Circuit(m, (controlled(m, v, polarity=1),))
    return prepare, butterfly, close


def interferometric_circuit(cfg: ButterflyConfig, U: Circuit) -> Circuit:
    """ Returns the (n+1)-qubit interferometer for a circuit evolution `U`:
    H on the ancilla, V controlled on ancilla |0>, U, W, U^dagger, V
    controlled on ancilla |1>.
    """
    cfg.validate()
    prepare, butterfly, close = _ancilla_stages(cfg)
    m = cfg.n + 1
    wide = widen(U, m)
    return compose(compose(compose(compose(prepare, wide), butterfly), invert(wide)), close)


def _with_ancilla(psi: Statevector) -> Statevector:
    return Statevector(psi.width + 1, jnp.kron(psi.amplitudes, jnp.array([1., 0.], dtype=jnp.complex128)))


def interferometric_reF(
        psi: Statevector,
        cfg: ButterflyConfig,
        U: Propagator,
        shots: Optional[int] = None,
        rng_key: Optional[PRNGState] = None
    ) -> float:  # noqa: E121,E125
    """ Returns Re F as the ancilla's X expectation after the interferometer.

    The ancilla ends in (|0> U^dagger W U V psi + |1> V U^dagger W U psi) / sqrt(2),
    so <X_anc> is the real part of the overlap of the two branches.

    :param psi: Initial n-qubit state.
    :param cfg: The operator sites.
    :param U: The forward evolution; a circuit (possibly Trotterized) or an
        exact propagator acting on the system register.
    :param shots: If given, <X_anc> is estimated from this many measurements.
    :param rng_key: Key for shot sampling.
    """
    _check_widths(psi, cfg, U)
    state = _with_ancilla(psi)
    circuit = _circuit_of(U)
    if circuit is not None:
        state = apply(interferometric_circuit(cfg, circuit), state)
    else:
        prepare, butterfly, close = _ancilla_stages(cfg)
        state = apply(prepare, state)
        state = _forward(U, state, cfg.n)
        state = apply(butterfly, state)
        state = _backward(U, state, cfg.n)
        state = apply(close, state)
    ancilla_x = PauliString.from_sites(cfg.n + 1, {cfg.n + 1: "X"})
    if shots is not None:
        if rng_key is None:
            raise InvalidProtocolError("shot sampling needs an rng_key")
        return sample_expectation(state, ancilla_x, shots, rng_key).value
    return expect_pauli(state, ancilla_x).value


def _pauli(s: Statevector, gate: Gate) -> Statevector:
    return apply(Circuit(s.width, (gate,)), s)


def direct_F(psi: Statevector, cfg: ButterflyConfig, U: Propagator) -> complex:
    """ Returns F = <beta|alpha> with alpha = W(t) V psi and beta = V W(t) psi. """
    _check_widths(psi, cfg, U)
    n = cfg.n
    alpha = _backward(U, _pauli(_forward(U, _pauli(psi, cfg.v_gate()), n), cfg.w_gate()), n)
    beta = _pauli(_backward(U, _pauli(_forward(U, psi, n), cfg.w_gate()), n), cfg.v_gate())
    return complex(jnp.vdot(beta.amplitudes, alpha.amplitudes))


def direct_reF(psi: Statevector, cfg: ButterflyConfig, evolution: Evolution, t: float) -> float:
    """ Returns Re F at time `t` from two evolved states, without an ancilla. """
    F = direct_F(psi, cfg, evolution.propagator(t))
    if abs(F.imag) > IMAGINARY_TOLERANCE:
        logger.info("Im F = %.3e at t=%g (i=%d, j=%d)", F.imag, t, cfg.i, cfg.j)
    return F.real


def commutator_series(
        psi: Statevector,
        cfg: ButterflyConfig,
        evolution: Evolution,
        times: Sequence[float],
        method: str = "direct",
        initial_state: str = "custom",
        shots: Optional[int] = None,
        rng_key: Optional[PRNGState] = None,
        jobs: int = 1
    ) -> OtocSeries:  # noqa: E121,E125
    """ Evaluates Re F and C = 2 (1 - Re F) on a time grid.

    Each time gets its own freshly built evolution, so the Trotter error of
    every point is that of a single evolution to that time.

    :param psi: Initial n-qubit state.
    :param cfg: The operator sites.
    :param evolution: `TrotterEvolution` or `ExactEvolution`.
    :param times: Strictly increasing, non-negative times.
    :param method: "interferometric" or "direct".
    :param initial_state: Label of `psi` stored with the series.
    :param shots: Interferometric only; measurements per point.
    :param rng_key: Key for shot sampling; point k uses key_for(rng_key, k).
    :param jobs: Number of worker threads over time points.
    """
    if method not in METHODS:
        raise InvalidProtocolError(f"method must be one of {METHODS}, got {method!r}")
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b <= a for a, b in zip(times, times[1:])):
        raise InvalidProtocolError("times must be non-negative and strictly increasing")
    if shots is not None and method != "interferometric":
        raise InvalidProtocolError("shot sampling is only available for the interferometric method")
    cfg.validate()

    def point(k: int) -> OtocPoint:
        t = times[k]
        if method == "direct":
            reF = direct_reF(psi, cfg, evolution, t)
        else:
            key = key_for(rng_key, k) if shots is not None else None
            reF = interferometric_reF(psi, cfg, evolution.propagator(t), shots=shots, rng_key=key)
        return OtocPoint(t, reF, 2 * (1 - reF))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(point, range(len(times))))
    else:
        points = [point(k) for k in range(len(times))]
    return OtocSeries(cfg, times, points, method, evolution.describe(), initial_state)


def series_frame(series: OtocSeries) -> pd.DataFrame:
    return pd.DataFrame({
        "t": [p.t for p in series.points],
        "reF": [p.reF for p in series.points],
        "C": [p.C for p in series.points],
    })


def series_metadata(series: OtocSeries) -> Dict[str, Any]:
    cfg = series.config
    return {
        "i": cfg.i, "j": cfg.j, "n": cfg.n, "W": cfg.w, "V": cfg.v,
        "method": series.method,
        "evolution": series.evolution,
        "initial_state": series.initial_state,
        "points": len(series.points),
    }


def series_filename(series: OtocSeries, regime: str) -> str:
    return f"otoc_i{series.config.i}_j{series.config.j}_{regime}_{series.method}.csv"


def save_series(series: OtocSeries, directory: str, regime: str) -> Dict[str, str]:
    """ Writes a series as CSV (t, reF, C) plus a JSON metadata sidecar and
    returns both paths.
    """
    csv_path = os.path.join(directory, series_filename(series, regime))
    json_path = csv_path[:-len(".csv")] + ".json"
    series_frame(series).to_csv(csv_path, index=False, float_format="%.17g")
    with open(json_path, "w") as f:
        json.dump(series_metadata(series), f, indent=2, sort_keys=True)
    return {"csv": csv_path, "json": json_path}
