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

""" Gate and circuit representation.

Circuits are immutable values: an ordered tuple of gates acting on `width`
qubits, indexed 1..width with qubit 1 the most significant bit. Composition,
inversion, relabelling and widening all return new circuits.

Besides the primitive gates the IR has two block gates:
    - `CTRL` wraps an inner circuit that is applied only when a control
      qubit is |1> (polarity 1) or |0> (polarity 0),
    - `REPEAT` wraps a body circuit applied `count` times in a row, which keeps
      Trotterized evolutions with thousands of steps compact.

Angles are stored in radians and never reduced modulo 2*pi.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from qscramble.errors import InvalidCompositionError, InvalidInputError
from qscramble.util import is_finite_real, is_int_scalar

__all__ = [
    'SINGLE_QUBIT_KINDS', 'ROTATION_KINDS', 'SELF_ADJOINT_KINDS',
    'Gate', 'Circuit', 'DepthReport',
    'h', 's', 'sdag', 'x', 'y', 'z', 'rx', 'rz', 'cnot', 'controlled', 'repeat',
    'compose', 'invert', 'depth_report', 'relabel', 'widen', 'flatten',
    'support', 'strip_angles', 'rotation_angles',
    'to_text', 'from_text', 'load_circuit',
]

SINGLE_QUBIT_KINDS = frozenset({"H", "S", "Sdag", "X", "Y", "Z", "RX", "RZ"})
ROTATION_KINDS = frozenset({"RX", "RZ"})
SELF_ADJOINT_KINDS = frozenset({"H", "X", "Y", "Z", "CNOT"})
_ADJOINT_KIND = {"S": "Sdag", "Sdag": "S"}


class Gate(NamedTuple):
    """ A single gate.

    :param kind: One of H, S, Sdag, X, Y, Z, RX, RZ, CNOT, CTRL, REPEAT.
    :param qubits: 1-based qubits; (target,) for single-qubit gates,
        (control, target) for CNOT, (control,) for CTRL, () for REPEAT.
    :param angle: Rotation angle in radians for RX and RZ.
    :param inner: The wrapped circuit of CTRL and REPEAT.
    :param polarity: CTRL only; 1 applies `inner` on control |1>, 0 on |0>.
    :param count: REPEAT only; number of repetitions.
    """
    kind: str
    qubits: Tuple[int, ...]
    angle: Optional[float] = None
    inner: Optional['Circuit'] = None
    polarity: Optional[int] = None
    count: Optional[int] = None


def h(q: int) -> Gate:
    return Gate("H", (q,))


def s(q: int) -> Gate:
    """ Phase gate diag(1, i). """
    return Gate("S", (q,))


def sdag(q: int) -> Gate:
    """ Adjoint phase gate diag(1, -i). """
    return Gate("Sdag", (q,))


def x(q: int) -> Gate:
    return Gate("X", (q,))


def y(q: int) -> Gate:
    return Gate("Y", (q,))


def z(q: int) -> Gate:
    return Gate("Z", (q,))


def rx(angle: float, q: int) -> Gate:
    """ RX(angle) = exp(-i angle X / 2). """
    return Gate("RX", (q,), angle=float(angle))


def rz(angle: float, q: int) -> Gate:
    """ RZ(angle) = exp(-i angle Z / 2). """
    return Gate("RZ", (q,), angle=float(angle))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def controlled(control: int, inner: 'Circuit', polarity: int = 1) -> Gate:
    """ Applies `inner` only on the branch where `control` equals `polarity`. """
    return Gate("CTRL", (control,), inner=inner, polarity=polarity)


def repeat(body: 'Circuit', count: int) -> Gate:
    """ Applies `body` `count` times in a row. """
    return Gate("REPEAT", (), inner=body, count=count)


def _validate_gate(gate: Gate, width: int):
    for q in gate.qubits:
        if not is_int_scalar(q) or not 1 <= q <= width:
            raise InvalidInputError(f"{gate.kind} acts on qubit {q!r}, circuit has qubits 1..{width}")
    if gate.kind in SINGLE_QUBIT_KINDS:
        if len(gate.qubits) != 1:
            raise InvalidInputError(f"{gate.kind} takes exactly one qubit")
        if gate.kind in ROTATION_KINDS and not is_finite_real(gate.angle):
            raise InvalidInputError(f"{gate.kind} angle must be finite, got {gate.angle!r}")
    elif gate.kind == "CNOT":
        if len(gate.qubits) != 2 or gate.qubits[0] == gate.qubits[1]:
            raise InvalidInputError(f"CNOT needs distinct control and target, got {gate.qubits}")
    elif gate.kind == "CTRL":
        if len(gate.qubits) != 1 or gate.polarity not in (0, 1):
            raise InvalidInputError("CTRL needs one control qubit and polarity 0 or 1")
        if gate.inner is None or gate.inner.width != width:
            raise InvalidInputError("CTRL inner circuit must have the enclosing circuit's width")
        if gate.qubits[0] in support(gate.inner):
            raise InvalidInputError(f"CTRL inner circuit acts on its own control qubit {gate.qubits[0]}")
    elif gate.kind == "REPEAT":
        if gate.inner is None or gate.inner.width != width:
            raise InvalidInputError("REPEAT body must have the enclosing circuit's width")
        if not is_int_scalar(gate.count) or gate.count < 0:
            raise InvalidInputError(f"REPEAT count must be a non-negative integer, got {gate.count!r}")
    else:
        raise InvalidInputError(f"unknown gate kind {gate.kind!r}")


@dataclass(frozen=True)
class Circuit:
    """ An ordered gate list over `width` qubits; the empty circuit is the identity.

    :param width: Number of qubits.
    :param gates: The gates, applied first to last.
    """
    width: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'gates', tuple(self.gates))
        if not is_int_scalar(self.width) or self.width < 1:
            raise InvalidInputError(f"circuit width must be a positive integer, got {self.width!r}")
        for gate in self.gates:
            _validate_gate(gate, self.width)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


class DepthReport(NamedTuple):
    """ Gate statistics of a circuit.

    :param gate_count: Number of gates, REPEAT bodies counted `count` times and
        CTRL blocks counted once.
    :param cnot_count: Number of CNOTs, including those inside blocks.
    :param depth: Number of layers of concurrently applicable gates.
    """
    gate_count: int
    cnot_count: int
    depth: int


def compose(a: Circuit, b: Circuit) -> Circuit:
    """ Returns the circuit applying `a` first, then `b`.

    Its unitary is unitary(b) @ unitary(a).
    """
    if a.width != b.width:
        raise InvalidCompositionError(f"cannot compose circuits of widths {a.width} and {b.width}")
    return Circuit(a.width, a.gates + b.gates)


def _adjoint(gate: Gate) -> Gate:
    if gate.kind in SELF_ADJOINT_KINDS:
        return gate
    if gate.kind in _ADJOINT_KIND:
        return gate._replace(kind=_ADJOINT_KIND[gate.kind])
    if gate.kind in ROTATION_KINDS:
        return gate._replace(angle=-gate.angle)
    # CTRL and REPEAT
    return gate._replace(inner=invert(gate.inner))


def invert(c: Circuit) -> Circuit:
    """ Returns the adjoint circuit: gate order reversed, every gate replaced
    by its adjoint (S <-> Sdag, rotation angles negated, blocks inverted).
    """
    return Circuit(c.width, tuple(_adjoint(g) for g in reversed(c.gates)))


def support(c: Circuit) -> frozenset:
    """ Returns the set of qubits any gate of `c` acts on. """
    touched = set()
    for gate in c.gates:
        touched.update(gate.qubits)
        if gate.inner is not None:
            touched.update(support(gate.inner))
    return frozenset(touched)


def _gate_support(gate: Gate) -> Tuple[int, ...]:
    if gate.kind == "CTRL":
        return tuple(sorted(set(gate.qubits) | support(gate.inner)))
    return gate.qubits


def _advance(levels: np.ndarray, gates: Iterable[Gate]) -> np.ndarray:
    """ Pushes per-qubit layer levels through `gates` with ASAP layering.

    `levels[q-1]` is the first layer qubit q is free in. A gate is placed in
    the latest of the free layers of its qubits, which then become free one
    layer later. The update only uses max and +1, so it also propagates -inf
    entries correctly, which `_transfer` relies on.
    """
    levels = levels.copy()
    for gate in gates:
        if gate.kind == "REPEAT":
            if gate.count > 0:
                transfer = _transfer(gate.inner)
                for _ in range(gate.count):
                    levels = np.max(levels[None, :] + transfer, axis=1)
            continue
        idx = [q - 1 for q in _gate_support(gate)]
        layer = np.max(levels[idx])
        levels[idx] = layer + 1
    return levels


def _transfer(body: Circuit) -> np.ndarray:
    """ Max-plus transfer matrix of `body`: entry [q, p] is the number of layers
    on the longest dependency path from input qubit p to output qubit q
    (-inf if there is none), so that out[q] = max_p in[p] + T[q, p].
    """
    m = body.width
    columns = []
    for p in range(m):
        levels = np.full(m, -np.inf)
        levels[p] = 0.
        columns.append(_advance(levels, body.gates))
    return np.stack(columns, axis=1)


def _counts(c: Circuit) -> Tuple[int, int]:
    gate_count, cnot_count = 0, 0
    for gate in c.gates:
        if gate.kind == "REPEAT":
            body_gates, body_cnots = _counts(gate.inner)
            gate_count += gate.count * body_gates
            cnot_count += gate.count * body_cnots
        elif gate.kind == "CTRL":
            gate_count += 1
            cnot_count += _counts(gate.inner)[1]
        else:
            gate_count += 1
            cnot_count += gate.kind == "CNOT"
    return gate_count, cnot_count


def depth_report(c: Circuit) -> DepthReport:
    """ Returns gate count, CNOT count and layered depth of a circuit.

    A CTRL block occupies one layer on its control qubit plus the full support
    of its inner circuit.
    """
    gate_count, cnot_count = _counts(c)
    levels = _advance(np.zeros(c.width), c.gates)
    return DepthReport(gate_count, cnot_count, int(np.max(levels)) if c.width > 0 else 0)


def relabel(c: Circuit, mapping: Dict[int, int]) -> Circuit:
    """ Renames qubits according to `mapping` (a permutation of 1..width;
    qubits absent from the mapping keep their index).
    """
    full = {q: mapping.get(q, q) for q in range(1, c.width + 1)}
    if sorted(full.values()) != list(range(1, c.width + 1)):
        raise InvalidInputError("relabelling must be a permutation of the circuit's qubits")

    def relabel_gate(gate: Gate) -> Gate:
        inner = relabel(gate.inner, full) if gate.inner is not None else None
        return gate._replace(qubits=tuple(full[q] for q in gate.qubits), inner=inner)

    return Circuit(c.width, tuple(relabel_gate(g) for g in c.gates))


def widen(c: Circuit, width: int) -> Circuit:
    """ Embeds `c` into a register of `width` >= c.width qubits; the extra
    qubits are appended after the existing ones and left untouched.
    """
    if width < c.width:
        raise InvalidInputError(f"cannot narrow a {c.width}-qubit circuit to {width} qubits")

    def widen_gate(gate: Gate) -> Gate:
        if gate.inner is None:
            return gate
        return gate._replace(inner=widen(gate.inner, width))

    return Circuit(width, tuple(widen_gate(g) for g in c.gates))


def flatten(c: Circuit) -> Circuit:
    """ Expands every REPEAT block (recursively, also inside CTRL blocks). """
    gates: List[Gate] = []
    for gate in c.gates:
        if gate.kind == "REPEAT":
            body = flatten(gate.inner).gates
            for _ in range(gate.count):
                gates.extend(body)
        elif gate.kind == "CTRL":
            gates.append(gate._replace(inner=flatten(gate.inner)))
        else:
            gates.append(gate)
    return Circuit(c.width, tuple(gates))


def strip_angles(c: Circuit) -> tuple:
    """ Returns the gate structure of `c` with all rotation angles removed,
    for structural comparison of circuits.
    """
    return tuple(
        (g.kind, g.qubits, g.polarity, g.count, strip_angles(g.inner) if g.inner is not None else None)
        for g in c.gates
    )


def rotation_angles(c: Circuit) -> Tuple[float, ...]:
    """ Returns the rotation angles of `c` in gate order (blocks expanded once). """
    angles: List[float] = []
    for gate in c.gates:
        if gate.kind in ROTATION_KINDS:
            angles.append(gate.angle)
        elif gate.inner is not None:
            angles.extend(rotation_angles(gate.inner))
    return tuple(angles)


#### text serialization ####

def _gate_lines(gate: Gate, indent: str) -> List[str]:
    if gate.kind in ROTATION_KINDS:
        return [f"{indent}{gate.kind} {gate.angle!r} {gate.qubits[0]}"]
    if gate.kind == "CTRL":
        head = f"{indent}CTRL {gate.qubits[0]} on{gate.polarity} {{"
    elif gate.kind == "REPEAT":
        head = f"{indent}REPEAT {gate.count} {{"
    else:
        return [f"{indent}{gate.kind} " + " ".join(str(q) for q in gate.qubits)]
    lines = [head]
    for inner_gate in gate.inner.gates:
        lines.extend(_gate_lines(inner_gate, indent + "  "))
    lines.append(f"{indent}}}")
    return lines


def to_text(c: Circuit) -> str:
    """ Serializes a circuit to the line-oriented text format:
    a `QUBITS <width>` header, then one gate per line (`H 1`, `CNOT 9 4`,
    `RX -0.002 9`, `CTRL 10 on1 {` ... `}`, `REPEAT 1000 {` ... `}`).
    """
    lines = [f"QUBITS {c.width}"]
    for gate in c.gates:
        lines.extend(_gate_lines(gate, ""))
    return "\n".join(lines) + "\n"


def _parse_gates(
        lines: List[Tuple[int, List[str]]], pos: int, width: int, nested: bool
    ) -> Tuple[List[Gate], int]:  # noqa: E121,E125
    """ Parses gates from `lines[pos:]` up to the closing `}` of a block
    (`nested`) or the end of the text; returns the gates and the next position.
    """
    gates: List[Gate] = []
    while pos < len(lines):
        lineno, tokens = lines[pos]
        kind = tokens[0]
        try:
            if kind == "}":
                if not nested:
                    raise ValueError("'}' without an open block")
                return gates, pos + 1
            if kind in ROTATION_KINDS:
                gates.append(Gate(kind, (int(tokens[2]),), angle=float(tokens[1])))
            elif kind in SINGLE_QUBIT_KINDS or kind == "CNOT":
                gates.append(Gate(kind, tuple(int(t) for t in tokens[1:])))
            elif kind in ("CTRL", "REPEAT") and tokens[-1] == "{":
                inner, pos = _parse_gates(lines, pos + 1, width, nested=True)
                body = Circuit(width, tuple(inner))
                if kind == "CTRL":
                    if tokens[2] not in ("on0", "on1"):
                        raise ValueError(f"bad polarity {tokens[2]}")
                    gates.append(controlled(int(tokens[1]), body, int(tokens[2][2])))
                else:
                    gates.append(repeat(body, int(tokens[1])))
                continue
            else:
                raise ValueError(f"unknown gate {kind}")
        except (IndexError, ValueError) as e:
            raise InvalidInputError(f"line {lineno}: cannot parse '{' '.join(tokens)}': {e}") from e
        pos += 1
    if nested:
        raise InvalidInputError("unterminated block at end of circuit text")
    return gates, pos


def from_text(text: str) -> Circuit:
    """ Parses a circuit written by `to_text`. """
    lines = [
        (k + 1, line.split()) for k, line in enumerate(text.splitlines())
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or lines[0][1][0] != "QUBITS" or len(lines[0][1]) != 2:
        raise InvalidInputError("circuit text must start with 'QUBITS <width>'")
    gates, _ = _parse_gates(lines, 1, int(lines[0][1][1]), nested=False)
    return Circuit(int(lines[0][1][1]), tuple(gates))


def load_circuit(path: str) -> Circuit:
    with open(path, "r") as f:
        return from_text(f.read())
