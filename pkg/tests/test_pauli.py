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

"""tests the Pauli algebra and dense oracle
"""
import itertools
import os
import tempfile
import unittest

import numpy as np

from qscramble.errors import InvalidInputError, InvalidSizeError, OracleSizeError
from qscramble.pauli import (
    PAULI_LETTERS, PauliString, PauliSumHamiltonian, build_ising_hamiltonian, dense_matrix,
    eigendecomposition, ground_state, load_hamiltonian, save_hamiltonian, strings_commute
)


def random_word(rng, n):
    return "".join(rng.choice(list(PAULI_LETTERS), size=n))


class PauliStringTests(unittest.TestCase):

    def test_rejects_bad_letters(self) -> None:
        with self.assertRaises(InvalidInputError):
            PauliString("XA")
        with self.assertRaises(InvalidInputError):
            PauliString("")
        with self.assertRaises(InvalidInputError):
            PauliString("X", float("nan"))

    def test_identity_is_representable(self) -> None:
        self.assertTrue(PauliString("III").is_identity)
        self.assertFalse(PauliString("IZI").is_identity)

    def test_from_sites(self) -> None:
        p = PauliString.from_sites(4, {2: "Z", 4: "X"}, 0.5)
        self.assertEqual(p.letters, "IZIX")
        self.assertEqual(p.support, (2, 4))
        self.assertEqual(p.letter(4), "X")
        self.assertEqual(p.coefficient, 0.5)


class IsingTests(unittest.TestCase):

    def test_three_site_chain(self) -> None:
        h = build_ising_hamiltonian(3, -1., 1., 1.)
        self.assertEqual(len(h.terms), 8)
        self.assertEqual(
            [(t.letters, t.coefficient) for t in h.terms],
            [("ZZI", -1.), ("IZZ", -1.),
             ("ZII", 1.), ("IZI", 1.), ("IIZ", 1.),
             ("XII", 1.), ("IXI", 1.), ("IIX", 1.)]
        )

    def test_zero_terms_dropped(self) -> None:
        h = build_ising_hamiltonian(2, 0., 0., 1.)
        self.assertEqual([t.letters for t in h.terms], ["XI", "IX"])

    def test_term_count(self) -> None:
        for n, J, hZ, hX in itertools.product((2, 3, 5), (0., -1.), (0., 1.), (0., 0.5)):
            if J == hZ == hX == 0:
                continue
            h = build_ising_hamiltonian(n, J, hZ, hX)
            expected = (n - 1) * (J != 0) + n * (hZ != 0) + n * (hX != 0)
            self.assertEqual(len(h.terms), expected)

    def test_integrable_chain_commutes(self) -> None:
        h = build_ising_hamiltonian(9, -1., 1., 0.)
        self.assertEqual(len(h.terms), 17)
        for a, b in itertools.combinations(h.terms, 2):
            self.assertTrue(strings_commute(a, b))

    def test_site_dependent_fields(self) -> None:
        h = build_ising_hamiltonian(3, 0., [0., 2., 0.], 0.)
        self.assertEqual([(t.letters, t.coefficient) for t in h.terms], [("IZI", 2.)])

    def test_too_small(self) -> None:
        with self.assertRaises(InvalidSizeError):
            build_ising_hamiltonian(1, -1., 1., 1.)

    def test_term_length_mismatch(self) -> None:
        with self.assertRaises(InvalidInputError):
            PauliSumHamiltonian(2, (PauliString("XI"), PauliString("X")))

    def test_json_roundtrip(self) -> None:
        h = build_ising_hamiltonian(4, -1., 1., [0.5, 1., 1., 0.5])
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "h.json")
            save_hamiltonian(h, path)
            self.assertEqual(load_hamiltonian(path), h)


class DenseMatrixTests(unittest.TestCase):

    def test_x_on_first_site(self) -> None:
        m = np.asarray(dense_matrix(PauliString("XI")))
        expected = np.zeros((4, 4))
        for a, b in ((0, 2), (2, 0), (1, 3), (3, 1)):
            expected[a, b] = 1
        self.assertTrue(np.array_equal(m, expected))

    def test_scaled_identity(self) -> None:
        m = np.asarray(dense_matrix(PauliString("III", 2.5)))
        self.assertTrue(np.allclose(m, 2.5 * np.eye(8)))

    def test_ising_two_sites(self) -> None:
        m = np.asarray(dense_matrix(build_ising_hamiltonian(2, -1., 1., 0.)))
        self.assertTrue(np.allclose(m, np.diag([1., 1., 1., -3.])))

    def test_oracle_limit(self) -> None:
        with self.assertRaises(OracleSizeError):
            dense_matrix(PauliString("I" * 13))
        with self.assertRaises(OracleSizeError):
            dense_matrix(PauliString("XXXX"), oracle_limit=3)

    def test_hermitian_and_involutory(self) -> None:
        rng = np.random.default_rng(3)
        for n in range(1, 7):
            for _ in range(10):
                m = np.asarray(dense_matrix(PauliString(random_word(rng, n))))
                self.assertTrue(np.allclose(m, m.conj().T))
                self.assertTrue(np.allclose(m @ m, np.eye(2 ** n)))

    def test_hamiltonian_hermitian(self) -> None:
        m = np.asarray(dense_matrix(build_ising_hamiltonian(5, -1., 1., 1.)))
        self.assertTrue(np.allclose(m, m.conj().T))


class CommutationTests(unittest.TestCase):

    def test_examples(self) -> None:
        self.assertTrue(strings_commute(PauliString("ZZ"), PauliString("ZI")))
        self.assertFalse(strings_commute(PauliString("XI"), PauliString("ZI")))
        self.assertTrue(strings_commute(PauliString("XZ"), PauliString("ZX")))

    def test_length_mismatch(self) -> None:
        with self.assertRaises(InvalidInputError):
            strings_commute(PauliString("X"), PauliString("XX"))

    def test_agrees_with_dense_commutator(self) -> None:
        rng = np.random.default_rng(11)
        for _ in range(500):
            n = int(rng.integers(1, 5))
            a = PauliString(random_word(rng, n))
            b = PauliString(random_word(rng, n))
            ma, mb = np.asarray(dense_matrix(a)), np.asarray(dense_matrix(b))
            dense_commute = np.linalg.norm(ma @ mb - mb @ ma) < 1e-12
            self.assertEqual(strings_commute(a, b), dense_commute, msg=f"{a.letters}, {b.letters}")


class EigenTests(unittest.TestCase):

    def test_decomposition_is_cached(self) -> None:
        h = build_ising_hamiltonian(3, -1., 1., 1.)
        self.assertIs(eigendecomposition(h), eigendecomposition(build_ising_hamiltonian(3, -1., 1., 1.)))

    def test_decomposition_reconstructs(self) -> None:
        h = build_ising_hamiltonian(4, -1., 1., 1.)
        eig = eigendecomposition(h)
        v = np.asarray(eig.vectors)
        rebuilt = v @ np.diag(np.asarray(eig.values)) @ v.conj().T
        self.assertTrue(np.allclose(rebuilt, np.asarray(dense_matrix(h))))

    def test_ground_state_two_sites(self) -> None:
        gs = ground_state(build_ising_hamiltonian(2, -1., 1., 0.))
        self.assertAlmostEqual(gs.energy, -3.)
        self.assertFalse(gs.degenerate)
        self.assertTrue(np.allclose(np.asarray(gs.amplitudes), [0, 0, 0, 1]))

    def test_degenerate_ground_state_warns(self) -> None:
        with self.assertLogs("qscramble.pauli", level="WARNING"):
            gs = ground_state(build_ising_hamiltonian(2, -1., 0., 0.))
        self.assertTrue(gs.degenerate)
        amplitudes = np.asarray(gs.amplitudes)
        self.assertAlmostEqual(np.linalg.norm(amplitudes), 1.)
        self.assertAlmostEqual(abs(amplitudes[0]) ** 2 + abs(amplitudes[3]) ** 2, 1.)


if __name__ == '__main__':
    unittest.main()
