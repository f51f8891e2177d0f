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

import json
import os.path
import subprocess
import sys
import tempfile
import unittest
from typing import List, Tuple

from qscramble.cli import build_parser, config_from_args
from qscramble.errors import ConfigError


class CommandLineTests(unittest.TestCase):

    @staticmethod
    def run_cli(arguments: List[str]) -> Tuple[int, str]:
        run_result = subprocess.run(
            [sys.executable, '-m', 'qscramble'] + arguments,
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT
        )
        output = run_result.stdout.decode('utf8')
        return run_result.returncode, output

    def test_spreading_succeeds(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            ret, output = self.run_cli([
                'spreading', '--n', '3', '--i', '2', '--t-max', '0.5', '--stride', '0.25',
                '--evolution', 'exact', '--recipes', 'ghz', '--out', tmp
            ])
            if ret != 0:
                self.fail(f"Error in run:\n{output}")
            self.assertTrue(os.path.exists(os.path.join(tmp, 'report.json')))

    def test_invalid_configuration(self) -> None:
        ret, output = self.run_cli(['states', '--n', '1'])
        self.assertEqual(ret, 2, msg=output)

    def test_empty_tradeoff_window(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            ret, output = self.run_cli([
                'tradeoff', '--n', '3', '--i', '1', '--j', '2', '--t-start', '3.5', '--t-max', '4',
                '--stride', '0.25', '--no-slopes', '--out', tmp
            ])
        self.assertEqual(ret, 2, msg=output)
        self.assertNotIn('Traceback', output)

    def test_oracle_disagreement(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            ret, output = self.run_cli([
                'states', '--n', '3', '--i', '1', '--j', '2', '--order', '1', '--dt', '0.1',
                '--t-max', '0.2', '--stride', '0.1', '--recipes', 'all-up',
                '--error-bound', '1e-30', '--out', tmp
            ])
        self.assertEqual(ret, 3, msg=output)

    def test_synthesis_check(self) -> None:
        ret, output = self.run_cli(['synthcheck', '--random-count', '5'])
        if ret != 0:
            self.fail(f"Error in run:\n{output}")
        self.assertIn('max_distance', output)


class ConfigFromArgsTests(unittest.TestCase):

    def test_flag_names(self) -> None:
        args = build_parser().parse_args(['tradeoff', '--method', 'interf', '--split', 'term', '--no-slopes'])
        config = config_from_args(args)
        self.assertEqual((config.method, config.split, config.slopes), ("interferometric", "per-term", False))

    def test_flags_override_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.json')
            with open(path, 'w') as f:
                json.dump({'n': 5, 'hX': 0.5, 'seed': 4}, f)
            args = build_parser().parse_args(['spreading', '--config', path, '--n', '6'])
            config = config_from_args(args)
        self.assertEqual((config.n, config.hX, config.seed), (6, 0.5, 4))

    def test_invalid_values(self) -> None:
        args = build_parser().parse_args(['spreading', '--i', '12'])
        with self.assertRaises(ConfigError):
            config_from_args(args)


if __name__ == '__main__':
    unittest.main()
