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

import jax
import jax.numpy as jnp
import numpy as np

from qscramble.circuit import Circuit, cnot, h, rx, rz, s, sdag, x, y, z
from qscramble.statevector import Statevector, prepare

_FIXED_GATES = (h, s, sdag, x, y, z)


def random_state(rng_key, width):
    """Returns a Haar-like random normalized state."""
    re_key, im_key = jax.random.split(rng_key)
    amplitudes = (
        jax.random.normal(re_key, (2 ** width,)) + 1j * jax.random.normal(im_key, (2 ** width,))
    )
    return prepare("amplitudes", width, amplitudes)


def basis_state(width, k):
    return Statevector(width, jnp.zeros(2 ** width, dtype=jnp.complex128).at[k].set(1.))


def random_circuit(seed, width, count):
    """Returns a random circuit of `count` primitive gates (CNOT needs width >= 2)."""
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(count):
        kind = rng.integers(0, 9 if width > 1 else 8)
        q = int(rng.integers(1, width + 1))
        if kind < 6:
            gates.append(_FIXED_GATES[kind](q))
        elif kind == 6:
            gates.append(rx(float(rng.uniform(-3, 3)), q))
        elif kind == 7:
            gates.append(rz(float(rng.uniform(-3, 3)), q))
        else:
            control, target = rng.choice(np.arange(1, width + 1), size=2, replace=False)
            gates.append(cnot(int(control), int(target)))
    return Circuit(width, tuple(gates))


def state_distance(a, b):
    return float(jnp.linalg.norm(a.amplitudes - b.amplitudes))
