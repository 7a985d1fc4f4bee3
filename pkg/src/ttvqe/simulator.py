"""Exact circuit simulation: pure statevector, or density matrix with a
per-gate local depolarizing channel.

States live in tensor form during simulation: a statevector is an array of
shape (2,)*n, a density matrix (2,)*n + (2,)*n with row axes first.  Gates
are applied by contracting 2x2 / 4x4 matrices onto the support axes; no
2^n x 2^n operator is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, Gate, gate_matrix


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing noise applied after every gate on that gate's support.

    ``lam`` is the depolarizing probability; ``enabled`` switches the model
    off wholesale.  ``on_state_prep`` controls whether the leading state
    preparation gates of a circuit (see Circuit.prep_gate_count) are noisy
    too; they are one-qubit gates of the ansatz circuit, so the default says
    yes.
    """

    lam: float = 0.005
    enabled: bool = True
    on_state_prep: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"depolarizing parameter must be in [0, 1], got {self.lam}")


def zero_state(n: int) -> np.ndarray:
    """|0...0> as a flat 2^n vector."""
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    return psi


def _check_theta(circuit: Circuit, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.shape[0] != circuit.param_count:
        raise ValueError(
            f"got {theta.shape[0]} parameters, circuit declares {circuit.param_count}"
        )
    return theta


def _apply_gate_axes(arr: np.ndarray, mat: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Contract a 2x2 or 4x4 gate onto the given tensor axes."""
    k = len(axes)
    op = mat.reshape((2,) * (2 * k))
    # tensordot sums op's column axes against the state's support axes, then
    # puts the new axes first; moveaxis restores the original ordering.
    out = np.tensordot(op, arr, axes=(tuple(range(k, 2 * k)), axes))
    return np.moveaxis(out, tuple(range(k)), axes)


def run_pure(circuit: Circuit, theta, initial: np.ndarray | None = None) -> np.ndarray:
    """Apply the circuit to a statevector; returns a flat 2^n array."""
    theta = _check_theta(circuit, theta)
    dim = 2**circuit.n
    if initial is None:
        psi = zero_state(circuit.n)
    else:
        psi = np.asarray(initial, dtype=complex).reshape(-1).copy()
        if psi.shape[0] != dim:
            raise ValueError(f"initial state has dimension {psi.shape[0]}, expected {dim}")
    state = psi.reshape((2,) * circuit.n)
    for gate in circuit.gates:
        mat = gate_matrix(gate.kind, circuit.resolve_angle(gate, theta))
        axes = tuple(q - 1 for q in gate.qubits)
        state = _apply_gate_axes(state, mat, axes)
    return state.reshape(dim)


def depolarize(rho: np.ndarray, support: tuple[int, ...] | int, lam: float) -> np.ndarray:
    """Local depolarizing channel on the support qubits (1-based), identity
    elsewhere:

        rho -> (1 - lam) rho + lam * Tr_support(rho) (x) I / 2^|support|

    Accepts and returns a 2^n x 2^n matrix.  Trace is preserved exactly.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"depolarizing parameter must be in [0, 1], got {lam}")
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    n = int(round(np.log2(dim)))
    if rho.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"density matrix shape {rho.shape} is not 2^n x 2^n")
    support = (support,) if isinstance(support, int) else tuple(support)
    for q in support:
        if not 1 <= q <= n:
            raise ValueError(f"support qubit {q} outside [1, {n}]")
    if len(set(support)) != len(support):
        raise ValueError("support qubits must be distinct")
    if lam == 0.0:
        return rho.copy()
    tensor = rho.reshape((2,) * (2 * n))
    mixed = _depolarize_tensor(tensor, tuple(q - 1 for q in support), lam, n)
    return mixed.reshape(dim, dim)


def _depolarize_tensor(
    tensor: np.ndarray, axes: tuple[int, ...], lam: float, n: int
) -> np.ndarray:
    """Depolarize in tensor form; ``axes`` are 0-based row axes of the support."""
    k = len(axes)
    reduced = tensor
    # Trace out the support: contract each row axis with its column partner.
    # Each completed trace removes one earlier row axis (at position < q) and
    # one earlier column axis (at position < n + q), shifting the pair left.
    for idx, q in enumerate(sorted(axes)):
        reduced = np.trace(reduced, axis1=q - idx, axis2=n + q - 2 * idx)
    eye = np.eye(2**k, dtype=complex).reshape((2,) * (2 * k)) / 2**k
    # embed: out[support_rows, support_cols, rest...] then move into place
    embedded = np.multiply.outer(eye, reduced)
    src_row = tuple(range(k))
    src_col = tuple(range(k, 2 * k))
    dst_row = tuple(sorted(axes))
    dst_col = tuple(n + q for q in sorted(axes))
    embedded = np.moveaxis(embedded, src_row + src_col, dst_row + dst_col)
    return (1.0 - lam) * tensor + lam * embedded


def run_noisy(circuit: Circuit, theta, noise: NoiseModel) -> np.ndarray:
    """Evolve |0..0><0..0| through the circuit with per-gate depolarizing
    noise; returns a 2^n x 2^n density matrix."""
    theta = _check_theta(circuit, theta)
    n = circuit.n
    dim = 2**n
    rho = np.zeros((2,) * (2 * n), dtype=complex)
    rho[(0,) * (2 * n)] = 1.0
    apply_noise = noise.enabled and noise.lam > 0.0
    for index, gate in enumerate(circuit.gates):
        mat = gate_matrix(gate.kind, circuit.resolve_angle(gate, theta))
        axes = tuple(q - 1 for q in gate.qubits)
        col_axes = tuple(n + a for a in axes)
        rho = _apply_gate_axes(rho, mat, axes)
        rho = _apply_gate_axes(rho, mat.conj(), col_axes)
        if apply_noise and (noise.on_state_prep or index >= circuit.prep_gate_count):
            rho = _depolarize_tensor(rho, axes, noise.lam, n)
    return rho.reshape(dim, dim)
