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

import math
import numbers

import jax.numpy as jnp

__all__ = [
    "qubit_mask", "basis_indices", "is_int_scalar", "is_finite_real",
    "normalize", "spectral_distance", "time_grid"
]


def qubit_mask(qubit, width):
    """ Returns the bit mask selecting `qubit` in a computational-basis index.

    Qubits are 1-based and qubit 1 is the most significant bit, i.e., the
    leftmost Kronecker factor.

    :param qubit: 1-based qubit index.
    :param width: Total number of qubits.
    """
    assert 1 <= qubit <= width
    return 1 << (width - qubit)


def basis_indices(width):
    """ Returns all computational-basis indices of a `width`-qubit register. """
    return jnp.arange(2 ** width, dtype=jnp.int64)


def is_int_scalar(x):
    """ Returns True if the input is a plain integer (bools excluded).

    :param x: Anything that might be an integer scalar.
    """
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def is_finite_real(x):
    """ Returns True if the input is a finite real number.

    :param x: Anything that might be a real number.
    """
    return isinstance(x, numbers.Real) and not isinstance(x, bool) and math.isfinite(x)


def normalize(x):
    """ Normalizes a vector, i.e., returns a vector with unit lengths pointing
    in the same direction.

    :param x: The vector to normalize.
    """
    return x / jnp.linalg.norm(x)


def spectral_distance(a, b):
    """ Returns the spectral norm (largest singular value) of `a - b`. """
    return float(jnp.linalg.norm(a - b, ord=2))


def time_grid(start, stop, step):
    """ Returns an increasing time grid from `start` to `stop` (inclusive
    up to rounding) with spacing `step`.

    Grid points are computed as `start + k * step` rather than by repeated
    addition so they carry no accumulated rounding drift.

    :param start: First time.
    :param stop: Last time; included if it lies on the grid within 1e-9.
    :param step: Spacing, > 0.
    """
    if step <= 0:
        raise ValueError("time grid step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(max(count, 0))]
