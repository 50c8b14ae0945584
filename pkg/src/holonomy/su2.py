"""
Exact 2x2 complex algebra for single-qubit gates.

Provides:
- Pauli matrices and axis rotations cos(t) I - i sin(t) sigma
- Gate composition in operator order (the gate acting first is on the right)
- The Hadamard target H0 = (1/sqrt 2)[[1, 1], [1, -1]]
- The per-basis-state fidelity |<j| target^dagger actual |j>|

Gates are immutable values: every operation returns a fresh QubitGate and
nothing here holds shared state, so the functions are safe to call from any
number of workers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

# ~100x double-precision rounding for chained 2x2 products
UNITARY_TOLERANCE = 1e-12


class PauliAxis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


_PAULI_MATRICES = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}

_IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class QubitGate:
    """
    A 2x2 complex matrix acting on one qubit.

    The entries are copied on construction and frozen, so a gate can be
    shared freely. Gates produced by this module's constructors are unitary
    within UNITARY_TOLERANCE; gates wrapped from external matrices (for
    example the Fock-space oracle's raw path-ordered products) carry
    whatever defect the matrix has, see `unitarity_defect`.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (2, 2):
            raise DomainError(f"Gate entries must be a 2x2 matrix, got shape: {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise DomainError("Gate entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls) -> QubitGate:
        return cls(_IDENTITY)

    def __matmul__(self, other: QubitGate) -> QubitGate:
        return compose(self, other)

    def __getitem__(self, index):
        return self.entries[index]

    def __repr__(self):
        rows = ", ".join(
            "[" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "]"
            for row in self.entries
        )
        return f"QubitGate([{rows}])"

    def dagger(self) -> QubitGate:
        """Return the conjugate transpose."""
        return QubitGate(self.entries.conj().T)

    def scaled(self, factor: complex) -> QubitGate:
        """Return factor * gate (used for global phases such as -i H0)."""
        return QubitGate(factor * self.entries)

    def determinant(self) -> complex:
        return complex(np.linalg.det(self.entries))

    def unitarity_defect(self) -> float:
        """Max-norm of U^dagger U - I."""
        product = self.entries.conj().T @ self.entries
        return float(np.max(np.abs(product - _IDENTITY)))

    def is_unitary(self, tolerance: float = UNITARY_TOLERANCE) -> bool:
        return self.unitarity_defect() < tolerance

    def distance(self, other: QubitGate) -> float:
        """Max-norm of the elementwise difference."""
        return float(np.max(np.abs(self.entries - other.entries)))

    def allclose(self, other: QubitGate, tolerance: float = UNITARY_TOLERANCE) -> bool:
        return self.distance(other) < tolerance


def pauli(axis: PauliAxis) -> QubitGate:
    """Return the Pauli matrix for `axis`."""
    return QubitGate(_PAULI_MATRICES[PauliAxis(axis)])


def axis_rotation(axis: PauliAxis, angle: float) -> QubitGate:
    """
    Return exp(-i angle sigma_axis) = cos(angle) I - i sin(angle) sigma_axis.

    Note the angle is not halved: axis_rotation(Y, pi/4) is the rotation the
    Hadamard construction needs from its first loop.

    Raises:
        DomainError: If `angle` is not finite
    """
    angle = float(angle)
    if not math.isfinite(angle):
        raise DomainError(f"Rotation angle must be finite, got: {angle}")
    sigma = _PAULI_MATRICES[PauliAxis(axis)]
    return QubitGate(math.cos(angle) * _IDENTITY - 1j * math.sin(angle) * sigma)


def compose(second: QubitGate, first: QubitGate) -> QubitGate:
    """Return second @ first: `first` acts on the state first."""
    return QubitGate(second.entries @ first.entries)


def hadamard_target() -> QubitGate:
    return QubitGate(np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0))


def basis_fidelity(target_times_minus_i: QubitGate, actual_times_minus_i: QubitGate, j: int) -> float:
    """
    Fidelity of `actual` against `target` on the computational basis state |j>.

    Both gates are taken in the "-i * gate" form the loop construction
    produces (for the Hadamard gate that is -i H0), so composed holonomies
    plug in without phase bookkeeping. The value is the modulus of the j-th
    diagonal element of target^dagger @ actual; global phases on either
    input drop out.

    Args:
        target_times_minus_i: Ideal gate, e.g. hadamard_target().scaled(-1j)
        actual_times_minus_i: Gate actually realised, e.g. a perturbed composition
        j: Basis index, 0 or 1

    Returns:
        float: Fidelity in [0, 1] for unitary inputs

    Raises:
        DomainError: If j is not 0 or 1
    """
    if j not in (0, 1):
        raise DomainError(f"Basis index must be 0 or 1, got: {j}")
    overlap = target_times_minus_i.entries.conj().T @ actual_times_minus_i.entries
    # rounding can lift the modulus a few ulps above 1
    return min(1.0, float(abs(overlap[j, j])))


def pauli_coefficients(gate: QubitGate) -> tuple[complex, complex, complex, complex]:
    """
    Decompose a gate as c_I I + c_x sigma_x + c_y sigma_y + c_z sigma_z.

    Each coefficient is tr(sigma_k^dagger G) / 2.
    """
    entries = gate.entries
    c_identity = np.trace(entries) / 2
    c_x, c_y, c_z = (
        np.trace(_PAULI_MATRICES[axis].conj().T @ entries) / 2
        for axis in (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)
    )
    return complex(c_identity), complex(c_x), complex(c_y), complex(c_z)


def from_pauli_coefficients(c_identity: complex, c_x: complex, c_y: complex, c_z: complex) -> QubitGate:
    return QubitGate(
        c_identity * _IDENTITY
        + c_x * _PAULI_MATRICES[PauliAxis.X]
        + c_y * _PAULI_MATRICES[PauliAxis.Y]
        + c_z * _PAULI_MATRICES[PauliAxis.Z]
    )
