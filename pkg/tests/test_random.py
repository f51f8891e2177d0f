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

"""tests the implementations in the qscramble.random module
"""
import unittest

import jax.random
import numpy as np

from qscramble.random import PRNGKey, key_for


class PRNGKeyTests(unittest.TestCase):

    def test_seeded_keys_repeat(self) -> None:
        self.assertTrue(np.array_equal(PRNGKey(42), PRNGKey(42)))
        self.assertFalse(np.array_equal(PRNGKey(42), PRNGKey(43)))

    def test_unseeded_key(self) -> None:
        self.assertTrue(np.any(PRNGKey() != 0))

    def test_negative_seed(self) -> None:
        with self.assertRaises(ValueError):
            PRNGKey(-1)


class KeyForTests(unittest.TestCase):

    def test_no_labels_is_parent(self) -> None:
        key = PRNGKey(7)
        self.assertTrue(np.array_equal(key_for(key), key))

    def test_independent_of_evaluation_order(self) -> None:
        key = PRNGKey(7)
        forward = [key_for(key, 1, k) for k in range(5)]
        backward = [key_for(key, 1, k) for k in reversed(range(5))][::-1]
        for a, b in zip(forward, backward):
            self.assertTrue(np.array_equal(a, b))

    def test_labels_are_positional(self) -> None:
        key = PRNGKey(7)
        self.assertFalse(np.array_equal(key_for(key, 0, 1), key_for(key, 1, 0)))

    def test_distinct_draws(self) -> None:
        key = PRNGKey(3)
        draws = {float(jax.random.uniform(key_for(key, k))) for k in range(100)}
        self.assertEqual(len(draws), 100)


if __name__ == '__main__':
    unittest.main()
