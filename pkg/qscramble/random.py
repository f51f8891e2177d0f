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
""" PRNG interface used by qscramble for every random draw.

A slim wrapper around jax.random. All randomness of an experiment is derived
from a single key created from the run's seed, so identical seeds reproduce
identical states, instances and shot samples.
"""

from typing import Optional
import secrets

import jax.random as jrng

try:
    from jax.random import KeyArray as PRNGState
except (AttributeError, ImportError):
    from jax import Array as PRNGState

__all__ = ['PRNGState', 'PRNGKey', 'key_for']

KeyRandomnessInBytes = 4


def PRNGKey(seed: Optional[int] = None) -> PRNGState:
    """Initializes a PRNGKey for qscramble's random number generator.

    :param seed: Optional. A non-negative integer seed. Default: None. In this
        case, a seed is randomly sampled from the `secrets` module.
    """
    if seed is None:
        nonopt_seed = int.from_bytes(secrets.token_bytes(KeyRandomnessInBytes), 'big', signed=False)
    else:
        if seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {seed}")
        nonopt_seed = seed
    return jrng.PRNGKey(nonopt_seed)


def key_for(rng_key: PRNGState, *labels: int) -> PRNGState:
    """Derives a key for a labelled sub-task (e.g. sample index, site index).

    Derivation is positional, so the same labels always give the same key
    regardless of the order in which sub-tasks are evaluated.

    :param rng_key: The parent key.
    :param labels: Non-negative integers identifying the sub-task.
    :return: The derived key.
    """
    for label in labels:
        rng_key = jrng.fold_in(rng_key, label)
    return rng_key
