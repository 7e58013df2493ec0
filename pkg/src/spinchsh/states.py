"""Two-qudit states: pure vectors, density matrices, named qutrit families,
and seeded random pure-state samplers.

Index convention: the amplitude vector of a bipartite pure state is ordered
row-major by (m, k), with m the first-party index (outer) and k the
second-party index (inner).  The computational-basis coefficient tensor of a
density matrix follows the same convention: ``coefficients()[m, m2, k, k2]``
is the matrix element between |m k> and |m2 k2> (all indices 0-based).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

NORM_TOL = 1e-12       # pure-state and family-coefficient normalization
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10        # minimum eigenvalue may round off to -PSD_TOL
WEIGHT_TOL = 1e-9

_MASK64 = 0xFFFFFFFFFFFFFFFF

SAMPLERS = ("uniform", "haar")


class StateInvariantError(ValueError):
    """A state failed a physicality check (normalization, Hermiticity, trace, PSD)."""


@dataclass(frozen=True)
class PureState:
    """Normalized pure state on a (d_A * d_B)-dimensional bipartite space."""

    amplitudes: np.ndarray
    dims: tuple

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 2 or any(d < 2 for d in dims):
            raise ValueError(f"dims must be two factors >= 2, got {dims}")
        if amps.shape != (dims[0] * dims[1],):
            raise ValueError(f"amplitude vector of length {amps.shape} does not match dims {dims}")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise StateInvariantError(f"state is not normalized: sum |psi|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def normalized(cls, amplitudes, dims=(3, 3)) -> "PureState":
        """Normalize an amplitude vector and wrap it."""
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm, tuple(dims))

    def matrix_form(self) -> np.ndarray:
        """Amplitudes as a (d_A, d_B) matrix: row = first party, column = second."""
        return self.amplitudes.reshape(self.dims)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PureState":
        pairs = np.asarray(data["amplitudes"], dtype=float)
        return cls(pairs[:, 0] + 1j * pairs[:, 1], tuple(data["dims"]))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-one, positive-semidefinite bipartite density matrix."""

    matrix: np.ndarray
    dims: tuple

    def __post_init__(self):
        rho = np.ascontiguousarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        n = dims[0] * dims[1]
        if rho.shape != (n, n):
            raise ValueError(f"matrix shape {rho.shape} does not match dims {dims}")
        herm = np.abs(rho - rho.conj().T).max()
        if herm > HERMITICITY_TOL:
            raise StateInvariantError(f"matrix is not Hermitian: max |rho - rho^dagger| = {herm:.3e}")
        tr = rho.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateInvariantError(f"matrix does not have unit trace: tr = {tr!r}")
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        if min_eig < -PSD_TOL:
            raise StateInvariantError(
                f"matrix is not positive semidefinite: min eigenvalue = {min_eig:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)
        object.__setattr__(self, "dims", dims)

    def coefficients(self) -> np.ndarray:
        """Computational-basis coefficient tensor, shape (d_A, d_A, d_B, d_B).

        Entry [m, m2, k, k2] is the matrix element between |m k> and |m2 k2>.
        """
        da, db = self.dims
        return self.matrix.reshape(da, db, da, db).transpose(0, 2, 1, 3)

    def to_json(self) -> dict:
        flat = self.matrix.reshape(-1)
        return {
            "dims": list(self.dims),
            "matrix": [[float(x.real), float(x.imag)] for x in flat],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DensityMatrix":
        dims = tuple(data["dims"])
        n = dims[0] * dims[1]
        pairs = np.asarray(data["matrix"], dtype=float)
        return cls((pairs[:, 0] + 1j * pairs[:, 1]).reshape(n, n), dims)


def state_from_json(data: dict) -> Union[PureState, DensityMatrix]:
    """Deserialize a state dict, dispatching on the 'amplitudes'/'matrix' key."""
    if "amplitudes" in data:
        return PureState.from_json(data)
    if "matrix" in data:
        return DensityMatrix.from_json(data)
    raise ValueError("state JSON must contain either 'amplitudes' or 'matrix'")


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Rank-one density matrix |psi><psi|."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dims)


def mix(components) -> DensityMatrix:
    """Convex combination of density matrices.

    ``components`` is an iterable of (weight, DensityMatrix) with positive
    weights summing to one (tolerance 1e-9).
    """
    components = list(components)
    if not components:
        raise ValueError("mix() needs at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights <= 0):
        raise ValueError(f"weights must be positive, got {weights}")
    if abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise ValueError(f"weights must sum to 1, got {weights.sum()!r}")
    dims = components[0][1].dims
    if any(rho.dims != dims for _, rho in components):
        raise ValueError("all components must share the same dims")
    acc = sum(w * rho.matrix for w, rho in components)
    return DensityMatrix(acc, dims)


# ---------------------------------------------------------------------------
# Named two-qutrit families
# ---------------------------------------------------------------------------

def _check_unit_coefficients(name, *coeffs):
    total = sum(abs(c) ** 2 for c in coeffs)
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"{name} coefficients must have unit norm, got sum |a|^2 = {total!r}")


@dataclass(frozen=True)
class Antisym:
    """Pure state in the antisymmetric subspace of two qutrits.

    Coefficients a12, a13, a23 weight the singlet-like basis vectors
    (|ij> - |ji>)/sqrt(2); they must be normalized.
    """

    a12: complex
    a13: complex
    a23: complex

    def __post_init__(self):
        _check_unit_coefficients("Antisym", self.a12, self.a13, self.a23)


@dataclass(frozen=True)
class Sym:
    """Pure two-qutrit state a11 |11> + a22 |22> + a33 |33> (normalized)."""

    a11: complex
    a22: complex
    a33: complex

    def __post_init__(self):
        _check_unit_coefficients("Sym", self.a11, self.a22, self.a33)


@dataclass(frozen=True)
class GHZ3:
    """Maximally entangled two-qutrit state (|11> + |22> + |33>)/sqrt(3)."""


@dataclass(frozen=True)
class Werner:
    """Two-qutrit Werner state: mixture of identity and the swap operator.

    phi in [-1, 1]; separable iff phi >= 0.
    """

    phi: float

    def __post_init__(self):
        if not -1.0 <= self.phi <= 1.0:
            raise ValueError(f"phi must lie in [-1, 1], got {self.phi}")


@dataclass(frozen=True)
class Horodecki:
    """One-parameter two-qutrit mixture spanning separable, bound-entangled
    and free-entangled regimes as tau runs over [2, 5]."""

    tau: float

    def __post_init__(self):
        if not 2.0 <= self.tau <= 5.0:
            raise ValueError(f"tau must lie in [2, 5], got {self.tau}")


def _check_curve_parameter(t: float):
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")


@dataclass(frozen=True)
class Example1:
    """One-parameter pure family (1-t)|11> + t|33>, normalized.

    Entanglement varies with t while the spin-1 CHSH parameter stays
    equal to one on the whole interval.
    """

    t: float

    def __post_init__(self):
        _check_curve_parameter(self.t)

    def coefficients(self) -> tuple:
        norm = math.sqrt(1 - 2 * self.t + 2 * self.t ** 2)
        return ((1 - self.t) / norm, 0.0, self.t / norm)


@dataclass(frozen=True)
class Example2:
    """One-parameter pure family interpolating |11> (t=0) to the GHZ state (t=1).

    Entanglement increases monotonically while the spin-1 CHSH parameter
    decreases.
    """

    t: float

    def __post_init__(self):
        _check_curve_parameter(self.t)

    def coefficients(self) -> tuple:
        norm = math.sqrt(1 - self.t + 0.75 * self.t ** 2)
        return ((1 - self.t / 2) / norm, (self.t / 2) / norm, (self.t / 2) / norm)


@dataclass(frozen=True)
class Product:
    """Product of two single-qutrit density matrices (3x3 arrays)."""

    rho_a: np.ndarray
    rho_b: np.ndarray

    def __post_init__(self):
        for name, rho in (("rho_a", self.rho_a), ("rho_b", self.rho_b)):
            rho = np.ascontiguousarray(rho, dtype=complex)
            if rho.shape != (3, 3):
                raise ValueError(f"{name} must be a 3x3 matrix")
            if np.abs(rho - rho.conj().T).max() > HERMITICITY_TOL:
                raise StateInvariantError(f"{name} is not Hermitian")
            if abs(rho.trace() - 1.0) > TRACE_TOL:
                raise StateInvariantError(f"{name} does not have unit trace")
            if np.linalg.eigvalsh(rho)[0] < -PSD_TOL:
                raise StateInvariantError(f"{name} is not positive semidefinite")
            rho.setflags(write=False)
            object.__setattr__(self, name, rho)


FamilySpec = Union[Antisym, Sym, GHZ3, Werner, Horodecki, Example1, Example2, Product]

PURE_FAMILIES = (Antisym, Sym, GHZ3, Example1, Example2)


def swap_operator(d: int) -> np.ndarray:
    """Permutation operator exchanging the two tensor factors of C^d x C^d."""
    V = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            V[i * d + j, j * d + i] = 1.0
    return V


def _basis_ket(m: int, k: int) -> np.ndarray:
    psi = np.zeros(9, dtype=complex)
    psi[m * 3 + k] = 1.0
    return psi


def family_pure(spec: FamilySpec) -> PureState:
    """State vector of a pure family member; raises for mixed families."""
    if isinstance(spec, Antisym):
        psi = np.zeros(9, dtype=complex)
        for (i, j), a in (((0, 1), spec.a12), ((0, 2), spec.a13), ((1, 2), spec.a23)):
            psi[i * 3 + j] += a / math.sqrt(2)
            psi[j * 3 + i] -= a / math.sqrt(2)
        return PureState(psi, (3, 3))
    if isinstance(spec, Sym):
        psi = np.zeros(9, dtype=complex)
        psi[0], psi[4], psi[8] = spec.a11, spec.a22, spec.a33
        return PureState(psi, (3, 3))
    if isinstance(spec, GHZ3):
        r = 1 / math.sqrt(3)
        return family_pure(Sym(r, r, r))
    if isinstance(spec, (Example1, Example2)):
        return family_pure(Sym(*spec.coefficients()))
    raise ValueError(f"{type(spec).__name__} is not a pure family")


def family_state(spec: FamilySpec) -> DensityMatrix:
    """Density matrix of any named family member."""
    if isinstance(spec, PURE_FAMILIES):
        return pure_to_density(family_pure(spec))
    if isinstance(spec, Werner):
        rho = (3 - spec.phi) / 24 * np.eye(9) + (3 * spec.phi - 1) / 24 * swap_operator(3)
        return DensityMatrix(rho.astype(complex), (3, 3))
    if isinstance(spec, Horodecki):
        # direct weighted assembly: the endpoint weight (5 - tau)/7 vanishes
        # at tau = 5, which mix() would reject
        ghz = family_state(GHZ3())
        cyc_up = sum(np.outer(_basis_ket(i, j), _basis_ket(i, j).conj())
                     for i, j in ((0, 1), (1, 2), (2, 0))) / 3
        cyc_down = sum(np.outer(_basis_ket(j, i), _basis_ket(j, i).conj())
                       for i, j in ((0, 1), (1, 2), (2, 0))) / 3
        rho = 2 / 7 * ghz.matrix + spec.tau / 7 * cyc_up + (5 - spec.tau) / 7 * cyc_down
        return DensityMatrix(rho, (3, 3))
    if isinstance(spec, Product):
        return DensityMatrix(np.kron(spec.rho_a, spec.rho_b), (3, 3))
    raise ValueError(f"unknown family spec: {spec!r}")


# ---------------------------------------------------------------------------
# Random pure states
# ---------------------------------------------------------------------------
#
# Reproducibility contract: sample number i of a run seeded with `seed` is a
# pure function of the pair (seed, i).  The pair keys a Philox-4x64 counter
# based generator, so samples are independent of batching, ordering and
# worker count.

def _keyed_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _MASK64, index & _MASK64]))


def _draw_amplitudes(rng: np.random.Generator, n: int, sampler: str) -> np.ndarray:
    if sampler == "uniform":
        # real and imaginary parts uniform on [0, 1); all amplitudes lie in
        # the closed first quadrant before (and after) normalization
        x = rng.random((n, 2))
    elif sampler == "haar":
        # independent standard complex Gaussians; invariant under rotations,
        # hence uniform on the unit sphere after normalization
        x = rng.standard_normal((n, 2))
    else:
        raise ValueError(f"unknown sampler {sampler!r}; choose from {SAMPLERS}")
    return x[:, 0] + 1j * x[:, 1]


def sample_pure_state(dims=(3, 3), sampler: str = "uniform",
                      seed: int = 0, index: int = 0) -> PureState:
    """Draw one random normalized pure state, determined by (seed, index)."""
    n = int(dims[0]) * int(dims[1])
    amps = _draw_amplitudes(_keyed_generator(seed, index), n, sampler)
    # normalization spelled exactly as in sample_amplitude_batch so the two
    # paths agree bit for bit
    amps /= np.sqrt(np.sum(amps.real ** 2 + amps.imag ** 2))
    return PureState(amps, tuple(dims))


def sample_amplitude_batch(dims, sampler: str, seed: int, start: int, count: int) -> np.ndarray:
    """Normalized amplitude rows for sample indices start .. start+count-1.

    Row i equals ``sample_pure_state(dims, sampler, seed, start + i)``
    bit for bit; the batch path only avoids per-sample generator setup.
    """
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; choose from {SAMPLERS}")
    n = int(dims[0]) * int(dims[1])
    bitgen = np.random.Philox(key=[0, 0])
    rng = np.random.Generator(bitgen)
    out = np.empty((count, n), dtype=complex)
    for i in range(count):
        state = bitgen.state
        state["state"]["key"][:] = (seed & _MASK64, (start + i) & _MASK64)
        state["state"]["counter"][:] = 0
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        bitgen.state = state
        out[i] = _draw_amplitudes(rng, n, sampler)
    out /= np.sqrt(np.sum(out.real ** 2 + out.imag ** 2, axis=1, keepdims=True))
    return out
