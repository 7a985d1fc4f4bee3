"""Hamiltonians as weighted Pauli strings: the TFIM builder, expectation
values, and a dense exact-diagonalization oracle.

Bit-ordering convention used everywhere in this package: qubit 1 maps to the
most significant bit of the computational-basis index.  Equivalently, the
dense matrix of a Pauli string ``P1 P2 ... Pn`` is ``P1 (x) P2 (x) ... (x) Pn``
with ``numpy.kron`` applied left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAULI_LETTERS = "IXYZ"

# Dense 2x2 Paulis, used by the oracle path only.
PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

#: Dense-oracle size guard: 2^12 x 2^12 is the largest matrix we will build.
DENSE_QUBIT_CAP = 12

#: Coefficients smaller than this are dropped when terms are merged.
COEFF_TOL = 1e-15


@dataclass(frozen=True)
class PauliString:
    """One weighted Pauli string, e.g. ``-1.0 * ZZI``.

    ``letters`` is a string over {I, X, Y, Z} whose length is the qubit
    count; ``coefficient`` is real, which keeps every weighted sum Hermitian.
    """

    letters: str
    coefficient: float

    def __post_init__(self) -> None:
        if len(self.letters) < 1:
            raise ValueError("PauliString needs at least one qubit")
        bad = set(self.letters) - set(PAULI_LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters: {sorted(bad)}")
        if not np.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")

    @property
    def n(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class Hamiltonian:
    """Weighted sum of Pauli strings on ``n`` qubits.

    Construct through :func:`from_terms` (or :func:`tfim`), which merges
    duplicate letter-sequences and drops negligible coefficients so that
    equality of Hamiltonians is equality of canonical term lists.
    """

    n: int
    terms: tuple[PauliString, ...]


def from_terms(terms) -> Hamiltonian:
    """Canonicalize a term list: merge duplicates, drop ~zero coefficients."""
    terms = list(terms)
    if not terms:
        raise ValueError("Hamiltonian needs at least one term")
    n = terms[0].n
    merged: dict[str, float] = {}
    for t in terms:
        if t.n != n:
            raise ValueError(f"mixed qubit counts: {t.n} vs {n}")
        merged[t.letters] = merged.get(t.letters, 0.0) + t.coefficient
    kept = tuple(
        PauliString(letters, coeff)
        for letters, coeff in sorted(merged.items())
        if abs(coeff) > COEFF_TOL
    )
    if not kept:
        # Zero operator; keep an explicit all-identity term so n survives.
        kept = (PauliString("I" * n, 0.0),)
    return Hamiltonian(n=n, terms=kept)


def tfim(n: int, h: float) -> Hamiltonian:
    """Transverse-field Ising chain with open boundaries.

    H = - sum_{i=1}^{n-1} Z_i Z_{i+1} - h sum_{i=1}^{n} X_i

    The exchange coupling is fixed to 1; ``h`` is the transverse field
    strength relative to it.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 qubits, got {n}")
    if not np.isfinite(h):
        raise ValueError("h must be finite")
    terms = []
    for i in range(n - 1):
        letters = ["I"] * n
        letters[i] = "Z"
        letters[i + 1] = "Z"
        terms.append(PauliString("".join(letters), -1.0))
    for i in range(n):
        letters = ["I"] * n
        letters[i] = "X"
        terms.append(PauliString("".join(letters), -h))
    return from_terms(terms)


def to_dense(ham: Hamiltonian) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the Hamiltonian (oracle path, n <= 12)."""
    if ham.n > DENSE_QUBIT_CAP:
        raise ValueError(
            f"dense matrix for n={ham.n} refused (cap n <= {DENSE_QUBIT_CAP})"
        )
    dim = 2**ham.n
    out = np.zeros((dim, dim), dtype=complex)
    for term in ham.terms:
        mat = np.array([[term.coefficient]], dtype=complex)
        for letter in term.letters:
            mat = np.kron(mat, PAULI_MATRICES[letter])
        out += mat
    return out


def ground_energy(ham: Hamiltonian) -> float:
    """Smallest eigenvalue of the dense Hamiltonian (n <= 12)."""
    return float(np.linalg.eigvalsh(to_dense(ham)).min())


def _apply_pauli_rows(letters: str, arr: np.ndarray) -> np.ndarray:
    """Apply a Pauli string to the first ``len(letters)`` axes of ``arr``.

    ``arr`` has axes (2, 2, ..., 2, *rest); axis q carries qubit q+1.  Works
    on reshaped statevectors (rest empty) and on density matrices whose row
    index has been split into qubit axes.  Never materializes a 2^n x 2^n
    gate.
    """
    out = arr
    for q, letter in enumerate(letters):
        if letter == "I":
            continue
        if letter in ("X", "Y"):
            out = np.flip(out, axis=q)
        if letter in ("Y", "Z"):
            phase = (
                np.array([-1.0j, 1.0j]) if letter == "Y" else np.array([1.0, -1.0])
            )
            shape = [1] * out.ndim
            shape[q] = 2
            out = out * phase.reshape(shape)
    return out


def expectation_pure(ham: Hamiltonian, psi: np.ndarray) -> float:
    """<psi|H|psi> for a unit-norm statevector, computed term by term."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != 2**ham.n:
        raise ValueError(
            f"statevector has dimension {psi.shape[0]}, expected {2 ** ham.n}"
        )
    if abs(np.linalg.norm(psi) - 1.0) > 1e-6:
        raise ValueError("statevector is not normalized")
    tensor = psi.reshape((2,) * ham.n)
    acc = 0.0
    for term in ham.terms:
        acc += term.coefficient * np.real(
            np.vdot(tensor, _apply_pauli_rows(term.letters, tensor))
        )
    return float(acc)


def expectation_mixed(ham: Hamiltonian, rho: np.ndarray) -> float:
    """Re Tr(H rho) for a trace-one density matrix, computed term by term."""
    rho = np.asarray(rho, dtype=complex)
    dim = 2**ham.n
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix has shape {rho.shape}, expected {(dim, dim)}")
    if abs(np.trace(rho) - 1.0) > 1e-6:
        raise ValueError("density matrix does not have unit trace")
    split = rho.reshape((2,) * ham.n + (dim,))
    acc = 0.0
    for term in ham.terms:
        applied = _apply_pauli_rows(term.letters, split).reshape(dim, dim)
        acc += term.coefficient * np.real(np.trace(applied))
    return float(acc)
