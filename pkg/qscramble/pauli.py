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

""" Pauli strings, Pauli-sum Hamiltonians and their dense-matrix realization.

The dense matrices built here are the ground-truth oracle that circuit
synthesis, Trotterization and the OTOC protocols are checked against.

Sites are 1-based; site 1 is the leftmost Kronecker factor and therefore the
most significant bit of a computational-basis index.
"""

import json
import logging
import threading
from dataclasses import dataclass
from functools import reduce
from typing import Any, Dict, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import jax.numpy as jnp

from qscramble.errors import (
    EigensolverError, InvalidInputError, InvalidSizeError, OracleSizeError
)
from qscramble.util import is_finite_real, is_int_scalar

__all__ = [
    'PAULI_LETTERS', 'LETTER_MATRICES', 'DEFAULT_ORACLE_LIMIT',
    'PauliString', 'IsingParams', 'PauliSumHamiltonian',
    'build_ising_hamiltonian', 'dense_matrix', 'strings_commute',
    'Eigensystem', 'GroundState', 'eigendecomposition', 'ground_state',
    'hamiltonian_to_dict', 'hamiltonian_from_dict',
    'load_hamiltonian', 'save_hamiltonian',
]

logger = logging.getLogger(__name__)

PAULI_LETTERS = "IXYZ"

LETTER_MATRICES = {
    "I": jnp.array([[1, 0], [0, 1]], dtype=jnp.complex128),
    "X": jnp.array([[0, 1], [1, 0]], dtype=jnp.complex128),
    "Y": jnp.array([[0, -1j], [1j, 0]], dtype=jnp.complex128),
    "Z": jnp.array([[1, 0], [0, -1]], dtype=jnp.complex128),
}

DEFAULT_ORACLE_LIMIT = 12


@dataclass(frozen=True)
class PauliString:
    """ A weighted Kronecker product of single-site Pauli matrices.

    :param letters: Word over {I, X, Y, Z}; character k is the letter on site k+1.
    :param coefficient: Real, finite weight (in units of J).
    """
    letters: str
    coefficient: float = 1.0

    def __post_init__(self):
        if not isinstance(self.letters, str) or len(self.letters) < 1:
            raise InvalidInputError("a Pauli string needs at least one letter")
        bad = set(self.letters) - set(PAULI_LETTERS)
        if bad:
            raise InvalidInputError(f"invalid Pauli letters {sorted(bad)} in '{self.letters}'")
        if not is_finite_real(self.coefficient):
            raise InvalidInputError(f"Pauli string coefficient must be a finite real, got {self.coefficient!r}")
        object.__setattr__(self, 'coefficient', float(self.coefficient))

    @classmethod
    def from_sites(cls, n: int, letters_at: Mapping[int, str], coefficient: float = 1.0) -> 'PauliString':
        """ Builds an n-site string that is the identity except on the given sites.

        :param n: Number of sites.
        :param letters_at: Mapping from 1-based site to letter.
        :param coefficient: The string's weight.
        """
        word = ["I"] * n
        for site, letter in letters_at.items():
            if not 1 <= site <= n:
                raise InvalidInputError(f"site {site} outside 1..{n}")
            word[site - 1] = letter
        return cls("".join(word), coefficient)

    @property
    def n(self) -> int:
        return len(self.letters)

    def letter(self, site: int) -> str:
        """ Returns the letter on 1-based `site`. """
        return self.letters[site - 1]

    @property
    def support(self) -> Tuple[int, ...]:
        """ The 1-based sites carrying a non-identity letter, increasing. """
        return tuple(k + 1 for k, letter in enumerate(self.letters) if letter != "I")

    @property
    def is_identity(self) -> bool:
        return all(letter == "I" for letter in self.letters)

    def with_coefficient(self, coefficient: float) -> 'PauliString':
        return PauliString(self.letters, coefficient)

    def __str__(self):
        return f"{self.coefficient:+g}*{self.letters}"


class IsingParams(NamedTuple):
    """ Parameters of the transverse-field Ising chain.

    Fields are stored per site so site-dependent fields are representable;
    uniform fields are tuples of identical values.
    """
    J: float
    hZ: Tuple[float, ...]
    hX: Tuple[float, ...]


@dataclass(frozen=True)
class PauliSumHamiltonian:
    """ A real-weighted sum of n-site Pauli strings.

    :param n: Number of qubits.
    :param terms: The non-empty term list, all of length n.
    :param params: Ising parameters if the Hamiltonian was built by
        `build_ising_hamiltonian`, None for explicit term lists.
    """
    n: int
    terms: Tuple[PauliString, ...]
    params: Optional[IsingParams] = None

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(self.terms))
        if not is_int_scalar(self.n) or self.n < 1:
            raise InvalidSizeError(f"qubit count must be a positive integer, got {self.n!r}")
        if len(self.terms) == 0:
            raise InvalidInputError("a Hamiltonian needs at least one term")
        for term in self.terms:
            if term.n != self.n:
                raise InvalidInputError(
                    f"term {term.letters} has length {term.n}, Hamiltonian has {self.n} qubits"
                )


def _site_values(value: Union[float, Sequence[float]], n: int, name: str) -> Tuple[float, ...]:
    if is_finite_real(value):
        return (float(value),) * n
    values = tuple(value)
    if len(values) != n or not all(is_finite_real(v) for v in values):
        raise InvalidInputError(f"{name} must be a finite real or a sequence of {n} finite reals")
    return tuple(float(v) for v in values)


def build_ising_hamiltonian(
        n: int,
        J: float,
        hZ: Union[float, Sequence[float]],
        hX: Union[float, Sequence[float]]
    ) -> PauliSumHamiltonian:  # noqa: E121,E125
    """ Builds the open-boundary Ising chain with longitudinal and transverse field

        H = J sum_{i<n} Z_i Z_{i+1} + sum_i hZ_i Z_i + sum_i hX_i X_i.

    Terms are ordered ZZ bonds left to right, then Z fields, then X fields.
    Zero-coefficient terms are dropped.

    :param n: Number of sites, >= 2.
    :param J: Nearest-neighbour coupling.
    :param hZ: Longitudinal field, a scalar or one value per site.
    :param hX: Transverse field, a scalar or one value per site.
    :return: The Hamiltonian with its parameters attached.
    """
    if not is_int_scalar(n) or n < 2:
        raise InvalidSizeError(f"the Ising chain needs n >= 2 sites, got {n!r}")
    if not is_finite_real(J):
        raise InvalidInputError(f"J must be a finite real, got {J!r}")
    hz = _site_values(hZ, n, "hZ")
    hx = _site_values(hX, n, "hX")

    terms = []
    if J != 0:
        terms.extend(PauliString.from_sites(n, {i: "Z", i + 1: "Z"}, J) for i in range(1, n))
    terms.extend(PauliString.from_sites(n, {i: "Z"}, hz[i - 1]) for i in range(1, n + 1) if hz[i - 1] != 0)
    terms.extend(PauliString.from_sites(n, {i: "X"}, hx[i - 1]) for i in range(1, n + 1) if hx[i - 1] != 0)
    if not terms:
        raise InvalidInputError("all Ising parameters are zero; the Hamiltonian has no terms")
    return PauliSumHamiltonian(n, tuple(terms), IsingParams(float(J), hz, hx))


def _check_oracle_size(n: int, oracle_limit: int):
    if n > oracle_limit:
        raise OracleSizeError(f"dense oracle limited to {oracle_limit} qubits, requested {n}")


def dense_matrix(
        operator: Union[PauliString, PauliSumHamiltonian],
        oracle_limit: int = DEFAULT_ORACLE_LIMIT
    ) -> jnp.ndarray:  # noqa: E121,E125
    """ Realizes a Pauli string or Pauli-sum Hamiltonian as a dense 2^n x 2^n matrix.

    :param operator: The string or Hamiltonian.
    :param oracle_limit: Largest n for which a dense matrix is built.
    :return: Complex matrix; site 1 is the leftmost Kronecker factor.
    """
    if isinstance(operator, PauliSumHamiltonian):
        _check_oracle_size(operator.n, oracle_limit)
        return reduce(
            lambda acc, term: acc + dense_matrix(term, oracle_limit),
            operator.terms[1:], dense_matrix(operator.terms[0], oracle_limit)
        )
    _check_oracle_size(operator.n, oracle_limit)
    factors = [LETTER_MATRICES[letter] for letter in operator.letters]
    return operator.coefficient * reduce(jnp.kron, factors)


def strings_commute(a: PauliString, b: PauliString) -> bool:
    """ Returns True if two Pauli strings commute.

    Two strings commute iff the number of sites where both letters are
    non-identity and different is even.
    """
    if a.n != b.n:
        raise InvalidInputError(f"cannot compare strings of lengths {a.n} and {b.n}")
    anticommuting = sum(
        1 for x, y in zip(a.letters, b.letters) if x != "I" and y != "I" and x != y
    )
    return anticommuting % 2 == 0


class Eigensystem(NamedTuple):
    """ Eigendecomposition H = V diag(values) V^dagger, values ascending. """
    values: jnp.ndarray
    vectors: jnp.ndarray


_eigen_cache: Dict[PauliSumHamiltonian, Eigensystem] = {}
_eigen_lock = threading.Lock()


def eigendecomposition(h: PauliSumHamiltonian, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> Eigensystem:
    """ Returns the (cached) eigendecomposition of a Hamiltonian's dense matrix.

    The cache is populated once per Hamiltonian under a lock; later reads
    from concurrent evaluations share the stored factors.

    :param h: The Hamiltonian.
    :param oracle_limit: Largest n for which a dense matrix is built.
    """
    _check_oracle_size(h.n, oracle_limit)
    cached = _eigen_cache.get(h)
    if cached is not None:
        return cached
    with _eigen_lock:
        cached = _eigen_cache.get(h)
        if cached is None:
            values, vectors = jnp.linalg.eigh(dense_matrix(h, oracle_limit))
            if not (jnp.all(jnp.isfinite(values)) and jnp.all(jnp.isfinite(vectors))):
                raise EigensolverError(f"eigendecomposition of the {h.n}-qubit Hamiltonian did not converge")
            cached = Eigensystem(values, vectors)
            _eigen_cache[h] = cached
    return cached


class GroundState(NamedTuple):
    energy: float
    amplitudes: jnp.ndarray
    degenerate: bool


def ground_state(h: PauliSumHamiltonian, oracle_limit: int = DEFAULT_ORACLE_LIMIT, gap_tol: float = 1e-10) -> GroundState:
    """ Returns the lowest eigenvector of a Hamiltonian.

    In a degenerate ground space the eigenvector the solver returns first is
    chosen (lowest index). Its global phase is fixed so that the largest
    amplitude is real and positive, which makes the result reproducible.

    :param h: The Hamiltonian.
    :param oracle_limit: Largest n for which a dense matrix is built.
    :param gap_tol: Gaps below this value count as degeneracy.
    """
    eig = eigendecomposition(h, oracle_limit)
    vector = eig.vectors[:, 0]
    degenerate = bool(len(eig.values) > 1 and (eig.values[1] - eig.values[0]) < gap_tol)
    if degenerate:
        logger.warning(
            "ground space of the %d-qubit Hamiltonian is degenerate; using the lowest-index eigenvector", h.n
        )
    pivot = vector[jnp.argmax(jnp.abs(vector))]
    vector = vector * (jnp.conj(pivot) / jnp.abs(pivot))
    return GroundState(float(eig.values[0]), vector, degenerate)


def hamiltonian_to_dict(h: PauliSumHamiltonian) -> Dict[str, Any]:
    """ Serializes a Hamiltonian to a JSON-compatible dictionary.

    Ising Hamiltonians serialize to {n, J, hZ, hX}; explicit term lists add
    `terms` as [{letters, coeff}].
    """
    doc: Dict[str, Any] = {"n": h.n}
    if h.params is not None:
        p = h.params
        doc["J"] = p.J
        doc["hZ"] = p.hZ[0] if len(set(p.hZ)) == 1 else list(p.hZ)
        doc["hX"] = p.hX[0] if len(set(p.hX)) == 1 else list(p.hX)
    else:
        doc["terms"] = [{"letters": t.letters, "coeff": t.coefficient} for t in h.terms]
    return doc


def hamiltonian_from_dict(doc: Mapping[str, Any]) -> PauliSumHamiltonian:
    """ Deserializes a Hamiltonian written by `hamiltonian_to_dict`. """
    if "n" not in doc:
        raise InvalidInputError("Hamiltonian document needs the qubit count 'n'")
    if "terms" in doc:
        terms = tuple(PauliString(t["letters"], t["coeff"]) for t in doc["terms"])
        return PauliSumHamiltonian(doc["n"], terms)
    try:
        return build_ising_hamiltonian(doc["n"], doc["J"], doc["hZ"], doc["hX"])
    except KeyError as e:
        raise InvalidInputError(f"Ising document is missing {e}") from e


def save_hamiltonian(h: PauliSumHamiltonian, path: str):
    with open(path, "w") as f:
        json.dump(hamiltonian_to_dict(h), f, indent=2, sort_keys=True)


def load_hamiltonian(path: str) -> PauliSumHamiltonian:
    with open(path, "r") as f:
        return hamiltonian_from_dict(json.load(f))
