"""Dense linear algebra for small Hilbert spaces.

States live over one to three subsystems ordered as (qubit a, qubit b,
apparatus); the apparatus dimension never exceeds 4, so everything is plain
dense complex128 arithmetic. All values are immutable after construction
(arrays are write-locked) and all operations are pure functions.

Conventions:
    * A pure qubit is parameterized by Bloch angles (theta, phi) with
      amplitudes (cos(theta/2), e^{i phi} sin(theta/2)); the |0> amplitude
      is real and non-negative by construction.
    * Validation tolerances: Hermiticity and trace 1e-12, positivity -1e-10
      on the minimum eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10
NORM_TOL = 1e-12


def _as_complex_vector(values, length: int | None = None) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d amplitude vector, got shape {arr.shape}")
    if length is not None and arr.size != length:
        raise ValueError(f"expected {length} amplitudes, got {arr.size}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureQubit:
    """Single-qubit pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.

    theta in [0, pi], phi in [0, 2*pi). phi is meaningless at the poles and
    is normalized to 0 there so equal states compare equal.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (np.isfinite(theta) and np.isfinite(phi)):
            raise ValueError("angles must be finite")
        if not 0.0 <= theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        if not 0.0 <= phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {phi}")
        if theta == 0.0 or theta == np.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def amplitudes(self) -> np.ndarray:
        """Length-2 complex amplitude vector (|0> component first)."""
        if self.theta == 0.0:
            amps = np.array([1.0, 0.0], dtype=np.complex128)
        elif self.theta == np.pi:
            amps = np.array([0.0, 1.0], dtype=np.complex128)
        else:
            amps = np.array(
                [np.cos(self.theta / 2),
                 np.exp(1j * self.phi) * np.sin(self.theta / 2)],
                dtype=np.complex128,
            )
        amps.setflags(write=False)
        return amps


def bloch_state(theta: float, phi: float = 0.0) -> PureQubit:
    """Pure qubit at Bloch angles (theta, phi)."""
    return PureQubit(theta, phi)


def main_circle_state(theta: float, sign: str) -> PureQubit:
    """State cos(theta/2)|0> +/- sin(theta/2)|1> on the x-z main circle.

    sign '+' is the Eastern meridian (phi = 0), '-' the Western (phi = pi).
    """
    if sign == "+":
        return PureQubit(theta, 0.0)
    if sign == "-":
        return PureQubit(theta, np.pi)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized state vector over subsystems of the given dimensions."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid subsystem dimensions {dims}")
        amps = _as_complex_vector(self.amplitudes, int(np.prod(dims)))
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {norm} is not 1 within {NORM_TOL}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, trace-1, positive-semidefinite operator."""

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid subsystem dimensions {dims}")
        size = int(np.prod(dims))
        mat = np.array(self.matrix, dtype=np.complex128, copy=True)
        if mat.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {mat.shape}")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("matrix entries must be finite")
        herm = np.max(np.abs(mat - mat.conj().T))
        if herm > HERM_TOL:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3e})")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} is not 1 within {TRACE_TOL}")
        eigs = np.linalg.eigvalsh(mat)
        if eigs[0] < PSD_TOL or eigs[-1] > 1.0 - PSD_TOL:
            raise ValueError(
                f"eigenvalues [{eigs[0]:.3e}, {eigs[-1]:.6f}] outside [0, 1] tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)


def ket(state: PureQubit) -> StateVector:
    """StateVector view of a pure qubit."""
    return StateVector((2,), state.amplitudes)


def pure_density(state: PureQubit) -> DensityMatrix:
    """Rank-1 projector |s><s| of a pure qubit."""
    a = state.amplitudes
    return DensityMatrix((2,), np.outer(a, a.conj()))


def to_density(vec: StateVector) -> DensityMatrix:
    """Rank-1 projector of a multi-subsystem state vector."""
    a = vec.amplitudes
    return DensityMatrix(vec.dims, np.outer(a, a.conj()))


def tensor(a, b):
    """Kronecker product of two StateVectors or two DensityMatrices.

    Subsystem order is a-then-b; dims concatenate.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(a.dims + b.dims, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.dims + b.dims, np.kron(a.matrix, b.matrix))
    raise ValueError("tensor operands must both be StateVector or both DensityMatrix")


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out all subsystems not listed in `keep`.

    Args:
        rho: density matrix over one or more subsystems.
        keep: indices of the subsystems to retain (kept in ascending order).

    Returns:
        Reduced DensityMatrix over the kept subsystems.
    """
    dims = rho.dims
    n = len(dims)
    kept = tuple(sorted(set(int(i) for i in keep)))
    if any(i < 0 or i >= n for i in kept):
        raise ValueError(f"subsystem index out of range for {n} subsystems: {kept}")
    if not kept or len(kept) == n:
        raise ValueError("keep must be a nonempty strict subset of subsystems")
    tens = rho.matrix.reshape(dims + dims)
    row_subs = list(range(n))
    col_subs = [i + n if i in kept else i for i in range(n)]
    out_subs = [i for i in kept] + [i + n for i in kept]
    reduced = np.einsum(tens, row_subs + col_subs, out_subs)
    kept_dims = tuple(dims[i] for i in kept)
    size = int(np.prod(kept_dims))
    return DensityMatrix(kept_dims, reduced.reshape(size, size))


def fidelity(state: PureQubit, rho: DensityMatrix) -> float:
    """Overlap <s|rho|s> between a pure qubit and a single-qubit mixed state."""
    if rho.dims != (2,):
        raise ValueError(f"fidelity needs a single-qubit density matrix, dims {rho.dims}")
    a = state.amplitudes
    val = np.vdot(a, rho.matrix @ a)
    if abs(val.imag) > 1e-12:
        raise ValueError(f"fidelity has non-negligible imaginary part {val.imag:.3e}")
    return float(min(max(val.real, 0.0), 1.0))
