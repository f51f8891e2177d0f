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

""" Exception types raised by qscramble.

All of them derive from the builtin exception a caller would expect
(`ValueError` for bad arguments, `RuntimeError` for numerical failures), so
code catching the builtins keeps working.
"""

__all__ = [
    'InvalidSizeError', 'OracleSizeError', 'InvalidInputError',
    'InvalidCompositionError', 'InvalidApplicationError', 'InvalidStateError',
    'InternalConsistencyError', 'UnsupportedStringError', 'InvalidPlanError',
    'InvalidTimeError', 'InvalidProtocolError', 'ConfigError',
    'EigensolverError', 'OracleDisagreementError',
]


class InvalidSizeError(ValueError):
    """ A system size is outside the range an operation supports. """


class OracleSizeError(ValueError):
    """ A dense oracle was requested for more qubits than the configured limit. """


class InvalidInputError(ValueError):
    pass


class InvalidCompositionError(ValueError):
    """ Circuits of different widths were composed. """


class InvalidApplicationError(ValueError):
    """ A circuit was applied to a state of a different width. """


class InvalidStateError(ValueError):
    """ A state payload cannot be turned into a normalized statevector. """


class InternalConsistencyError(RuntimeError):
    """ A numerical result violates a property it must satisfy by construction. """


class UnsupportedStringError(ValueError):
    """ The identity Pauli string was passed to circuit synthesis. """


class InvalidPlanError(ValueError):
    pass


class InvalidTimeError(ValueError):
    pass


class InvalidProtocolError(ValueError):
    """ Protocol inputs (state, butterfly sites, evolution) do not fit together. """


class ConfigError(ValueError):
    """ A run configuration failed validation. """


class EigensolverError(RuntimeError):
    pass


class OracleDisagreementError(RuntimeError):
    """ A circuit result deviates from the exact oracle beyond tolerance. """
