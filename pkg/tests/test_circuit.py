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

"""tests the circuit representation
"""
import math
import unittest

import numpy as np

from qscramble.circuit import (
    Circuit, cnot, compose, controlled, depth_report, flatten, from_text, h, invert,
    relabel, repeat, rotation_angles, rx, rz, s, sdag, support, to_text,
    widen, x
)
from qscramble.errors import InvalidCompositionError, InvalidInputError

from tests.util import random_circuit


class CircuitConstructionTests(unittest.TestCase):

    def test_qubit_out_of_range(self) -> None:
        with self.assertRaises(InvalidInputError):
            Circuit(2, (h(3),))
        with self.assertRaises(InvalidInputError):
            Circuit(2, (h(0),))

    def test_cnot_needs_distinct_qubits(self) -> None:
        with self.assertRaises(InvalidInputError):
            Circuit(2, (cnot(1, 1),))

    def test_angle_must_be_finite(self) -> None:
        with self.assertRaises(InvalidInputError):
            Circuit(1, (rx(math.inf, 1),))

    def test_controlled_block_must_not_touch_control(self) -> None:
        inner = Circuit(2, (x(2),))
        Circuit(2, (controlled(1, inner),))
        with self.assertRaises(InvalidInputError):
            Circuit(2, (controlled(2, inner),))
        with self.assertRaises(InvalidInputError):
            Circuit(2, (controlled(1, inner, polarity=2),))

    def test_controlled_block_width(self) -> None:
        with self.assertRaises(InvalidInputError):
            Circuit(3, (controlled(1, Circuit(2, (x(2),))),))


class ComposeTests(unittest.TestCase):

    def test_empty_is_identity(self) -> None:
        c = random_circuit(1, 3, 10)
        self.assertEqual(compose(Circuit(3), c), c)
        self.assertEqual(compose(c, Circuit(3)), c)

    def test_width_mismatch(self) -> None:
        with self.assertRaises(InvalidCompositionError):
            compose(Circuit(2), Circuit(3))

    def test_associative(self) -> None:
        a, b, c = (random_circuit(seed, 3, 5) for seed in range(3))
        self.assertEqual(compose(compose(a, b), c), compose(a, compose(b, c)))


class InvertTests(unittest.TestCase):

    def test_empty(self) -> None:
        self.assertEqual(invert(Circuit(2)), Circuit(2))

    def test_rotation(self) -> None:
        self.assertEqual(invert(Circuit(3, (rx(0.7, 3),))), Circuit(3, (rx(-0.7, 3),)))

    def test_order_and_adjoints(self) -> None:
        c = Circuit(2, (h(1), s(2), cnot(1, 2), rz(0.3, 1), sdag(1)))
        expected = Circuit(2, (s(1), rz(-0.3, 1), cnot(1, 2), sdag(2), h(1)))
        self.assertEqual(invert(c), expected)

    def test_blocks(self) -> None:
        body = Circuit(2, (s(2), rx(0.2, 2)))
        c = Circuit(2, (controlled(1, body, polarity=0), repeat(body, 4)))
        inverted = invert(c)
        self.assertEqual(inverted.gates[0].kind, "REPEAT")
        self.assertEqual(inverted.gates[0].count, 4)
        self.assertEqual(inverted.gates[0].inner, invert(body))
        self.assertEqual(inverted.gates[1].polarity, 0)
        self.assertEqual(inverted.gates[1].inner, invert(body))

    def test_involution(self) -> None:
        c = random_circuit(7, 4, 30)
        self.assertEqual(invert(invert(c)), c)


class DepthTests(unittest.TestCase):

    def test_disjoint(self) -> None:
        report = depth_report(Circuit(2, (h(1), h(2))))
        self.assertEqual((report.gate_count, report.cnot_count, report.depth), (2, 0, 1))

    def test_shared_qubit(self) -> None:
        report = depth_report(Circuit(2, (h(1), cnot(1, 2))))
        self.assertEqual((report.gate_count, report.cnot_count, report.depth), (2, 1, 2))

    def test_empty(self) -> None:
        self.assertEqual(tuple(depth_report(Circuit(3))), (0, 0, 0))

    def test_controlled_block_occupies_inner_support(self) -> None:
        inner = Circuit(3, (x(2), cnot(2, 3)))
        report = depth_report(Circuit(3, (controlled(1, inner), h(3))))
        self.assertEqual((report.gate_count, report.cnot_count, report.depth), (2, 1, 2))

    def test_repeat_matches_flattened(self) -> None:
        for seed in range(10):
            body = random_circuit(seed, 4, 12)
            prefix = random_circuit(100 + seed, 4, 5)
            c = Circuit(4, prefix.gates + (repeat(body, 1 + seed % 4),) + (h(2),))
            self.assertEqual(depth_report(c), depth_report(flatten(c)))

    def test_repeat_counts(self) -> None:
        body = Circuit(2, (h(1), cnot(1, 2)))
        report = depth_report(Circuit(2, (repeat(body, 3),)))
        self.assertEqual((report.gate_count, report.cnot_count, report.depth), (6, 3, 6))

    def test_depth_bounded_by_gate_count(self) -> None:
        for seed in range(10):
            report = depth_report(random_circuit(seed, 5, 40))
            self.assertLessEqual(report.depth, report.gate_count)
            self.assertGreaterEqual(report.depth, 0)

    def test_relabel_invariance(self) -> None:
        rng = np.random.default_rng(5)
        for seed in range(10):
            c = random_circuit(seed, 5, 30)
            permutation = rng.permutation(5) + 1
            mapping = {q + 1: int(permutation[q]) for q in range(5)}
            self.assertEqual(depth_report(relabel(c, mapping)), depth_report(c))


class TransformTests(unittest.TestCase):

    def test_relabel_rejects_non_permutation(self) -> None:
        with self.assertRaises(InvalidInputError):
            relabel(Circuit(3, (h(1),)), {1: 2})

    def test_relabel_blocks(self) -> None:
        c = Circuit(3, (controlled(3, Circuit(3, (cnot(1, 2),))),))
        swapped = relabel(c, {1: 3, 3: 1})
        self.assertEqual(swapped.gates[0].qubits, (1,))
        self.assertEqual(swapped.gates[0].inner.gates[0].qubits, (3, 2))

    def test_widen(self) -> None:
        c = Circuit(2, (h(1), repeat(Circuit(2, (cnot(1, 2),)), 2)))
        wide = widen(c, 4)
        self.assertEqual(wide.width, 4)
        self.assertEqual(wide.gates[1].inner.width, 4)
        with self.assertRaises(InvalidInputError):
            widen(c, 1)

    def test_support_and_angles(self) -> None:
        c = Circuit(4, (rx(0.1, 2), controlled(1, Circuit(4, (rz(0.2, 3),)))))
        self.assertEqual(support(c), frozenset({1, 2, 3}))
        self.assertEqual(rotation_angles(c), (0.1, 0.2))


class TextFormatTests(unittest.TestCase):

    def test_format(self) -> None:
        c = Circuit(3, (h(1), cnot(3, 2), rx(-0.002, 3), controlled(1, Circuit(3, (x(2),)), polarity=1)))
        self.assertEqual(
            to_text(c),
            "QUBITS 3\nH 1\nCNOT 3 2\nRX -0.002 3\nCTRL 1 on1 {\n  X 2\n}\n"
        )

    def test_parse_blocks(self) -> None:
        body = Circuit(3, (s(1), rz(0.25, 2), controlled(3, Circuit(3, (x(1),)), polarity=0)))
        c = Circuit(3, (repeat(body, 5), sdag(2)))
        self.assertEqual(from_text(to_text(c)), c)

    def test_parse_errors(self) -> None:
        with self.assertRaises(InvalidInputError):
            from_text("H 1\n")
        with self.assertRaises(InvalidInputError):
            from_text("QUBITS 2\nFOO 1\n")
        with self.assertRaises(InvalidInputError):
            from_text("QUBITS 2\nH 1\n}\n")


if __name__ == '__main__':
    unittest.main()
