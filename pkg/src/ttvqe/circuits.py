"""Parametrized circuits as ordered gate lists.

Gate kinds: H, RX, RY, RZ (one qubit), RZZ, CNOT (two qubits).  Rotations
follow R(theta) = exp(-i theta P / 2) with P the generating Pauli; CNOT
qubits are ordered (control, target).  Qubit and parameter indices are
1-based, matching the usual circuit-diagram labels; a parameter index may be
shared by several gates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ONE_QUBIT_KINDS = ("H", "RX", "RY", "RZ")
TWO_QUBIT_KINDS = ("RZZ", "CNOT")
ROTATION_KINDS = ("RX", "RY", "RZ", "RZZ")

_SQRT_HALF = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """One gate: a kind, its target qubits, and an angle source.

    Exactly one of ``angle`` (bound value, radians) or ``param`` (1-based
    index into the circuit's parameter vector) is set for rotation gates;
    H and CNOT carry neither.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    param: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ONE_QUBIT_KINDS + TWO_QUBIT_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 1 if self.kind in ONE_QUBIT_KINDS else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct: {self.qubits}")
        if self.kind in ROTATION_KINDS:
            if (self.angle is None) == (self.param is None):
                raise ValueError(
                    f"{self.kind} needs exactly one of a bound angle or a parameter index"
                )
        elif self.angle is not None or self.param is not None:
            raise ValueError(f"{self.kind} carries no angle")


@dataclass(frozen=True)
class Circuit:
    """Ordered gates on ``n`` qubits with ``param_count`` free parameters.

    ``prep_gate_count`` marks how many leading gates are state preparation
    (e.g. the Hadamard layer of the Hamiltonian-variational ansatz); the
    noisy simulator can be told to exempt those from noise.
    """

    n: int
    param_count: int
    gates: tuple[Gate, ...]
    prep_gate_count: int = field(default=0)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("circuit needs n >= 1 qubits")
        if self.param_count < 0:
            raise ValueError("param_count must be >= 0")
        if not 0 <= self.prep_gate_count <= len(self.gates):
            raise ValueError("prep_gate_count out of range")
        for g in self.gates:
            for q in g.qubits:
                if not 1 <= q <= self.n:
                    raise ValueError(f"gate {g.kind} on qubit {q} outside [1, {self.n}]")
            if g.param is not None and not 1 <= g.param <= self.param_count:
                raise ValueError(
                    f"gate {g.kind} uses parameter {g.param} outside [1, {self.param_count}]"
                )

    def resolve_angle(self, gate: Gate, theta: np.ndarray) -> float | None:
        if gate.angle is not None:
            return gate.angle
        if gate.param is not None:
            return float(theta[gate.param - 1])
        return None


def gate_matrix(kind: str, angle: float | None = None) -> np.ndarray:
    """Dense matrix of one gate: 2x2, or 4x4 ordered (first qubit, second qubit)."""
    if kind == "H":
        return np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex)
    if kind == "CNOT":
        # basis |control target>
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
    if angle is None:
        raise ValueError(f"{kind} needs an angle")
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    if kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == "RZ":
        return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])
    if kind == "RZZ":
        e_m, e_p = np.exp(-0.5j * angle), np.exp(0.5j * angle)
        return np.diag([e_m, e_p, e_p, e_m])
    raise ValueError(f"unknown gate kind {kind!r}")
