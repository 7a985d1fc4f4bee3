"""The two variational circuits used throughout: a hardware-efficient
ansatz (HEA) and the Hamiltonian-variational ansatz (HVA) for the
transverse-field Ising chain.

HEA layer: R_Y then R_Z on every qubit (2n fresh parameters), then the CNOT
ladder with control on qubit i+1 and target on qubit i, i ascending.

HVA: one Hadamard layer preparing |+>^n, then per layer one shared angle on
all nearest-neighbour R_ZZ gates (even pairs (1,2), (3,4), ... before odd
pairs (2,3), (4,5), ...) and one shared angle on R_X for every qubit; the ZZ
gates inside a layer commute, so their ordering is cosmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import Circuit, Gate


@dataclass(frozen=True)
class AnsatzSpec:
    """Which circuit family to build: kind in {"hea", "hva"}, n qubits, L layers."""

    kind: str
    n: int
    layers: int

    def __post_init__(self) -> None:
        if self.kind not in ("hea", "hva"):
            raise ValueError(f"unknown ansatz kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("ansatz needs n >= 2 qubits")
        if self.layers < 1:
            raise ValueError("ansatz needs at least one layer")

    @property
    def param_count(self) -> int:
        return 2 * self.n * self.layers if self.kind == "hea" else 2 * self.layers

    def build(self) -> Circuit:
        if self.kind == "hea":
            return build_hea(self.n, self.layers)
        return build_hva(self.n, self.layers)


def build_hea(n: int, layers: int) -> Circuit:
    """Hardware-efficient ansatz: 2*n*layers parameters, numbered qubit-major
    within each layer (qubit i carries parameters 2i-1 and 2i of its layer)."""
    if n < 2:
        raise ValueError("HEA needs n >= 2 (the CNOT ladder is undefined below)")
    if layers < 1:
        raise ValueError("HEA needs at least one layer")
    gates: list[Gate] = []
    for layer in range(layers):
        base = 2 * n * layer
        for q in range(1, n + 1):
            gates.append(Gate("RY", (q,), param=base + 2 * q - 1))
            gates.append(Gate("RZ", (q,), param=base + 2 * q))
        for q in range(1, n):
            gates.append(Gate("CNOT", (q + 1, q)))
    return Circuit(n=n, param_count=2 * n * layers, gates=tuple(gates))


def build_hva(n: int, layers: int) -> Circuit:
    """Hamiltonian-variational ansatz: 2*layers parameters; layer l uses
    parameter 2l-1 on all R_ZZ gates and 2l on all R_X gates."""
    if n < 2:
        raise ValueError("HVA needs n >= 2 (no nearest-neighbour pairs below)")
    if layers < 1:
        raise ValueError("HVA needs at least one layer")
    gates: list[Gate] = [Gate("H", (q,)) for q in range(1, n + 1)]
    for layer in range(layers):
        p_zz = 2 * layer + 1
        p_x = 2 * layer + 2
        for q in range(1, n, 2):
            gates.append(Gate("RZZ", (q, q + 1), param=p_zz))
        for q in range(2, n, 2):
            gates.append(Gate("RZZ", (q, q + 1), param=p_zz))
        for q in range(1, n + 1):
            gates.append(Gate("RX", (q,), param=p_x))
    return Circuit(n=n, param_count=2 * layers, gates=tuple(gates), prep_gate_count=n)
