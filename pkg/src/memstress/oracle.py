"""Exact statevector verification on small lattices (hard cap 20 qubits).

Everything here works directly on dense 2^n vectors: stabilizer ground
states by projection, term-wise Hamiltonian action, adaptive Lanczos time
evolution, subspace projections, and the symbolic-plus-statevector check of
the duality circuit that turns the string perturbation into a free hopping
chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattices import (
    IsingLattice,
    ToricLattice,
    ising_error_prefix,
    ising_hamiltonian,
    ising_retained_lengths,
    toric_duality_circuit,
    toric_error_string,
    toric_hamiltonian,
)
from .pauli import PauliSum, PauliTerm, apply_to_state, multiply, pauli_x, pauli_y
from .spectral import NumericalError

__all__ = [
    "QUBIT_CAP",
    "DenseState",
    "basis_state",
    "toric_ground_state",
    "toric_string_basis",
    "apply_hamiltonian",
    "expectation",
    "krylov_propagate",
    "subspace_projection",
    "effective_matrix_elements",
    "apply_circuit_to_state",
    "DualityReport",
    "verify_duality_map",
    "two_excitation_transfer",
    "ising_ground_state",
    "ising_prefix_basis",
    "ising_ground_energy",
]

QUBIT_CAP = 20
KRYLOV_TOL = 1e-10
_KRYLOV_MAX_DIM = 40


@dataclass
class DenseState:
    """Normalized dense statevector on up to QUBIT_CAP qubits."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits > QUBIT_CAP:
            raise ValueError(f"{self.n_qubits} qubits exceed the dense cap {QUBIT_CAP}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude vector length must be 2**n_qubits")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "DenseState":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return DenseState(self.n_qubits, self.amplitudes / n)

    def overlap(self, other: "DenseState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def apply_term(self, p: PauliTerm) -> "DenseState":
        return DenseState(self.n_qubits, apply_to_state(p, self.amplitudes))


def basis_state(n_qubits: int, index: int = 0) -> DenseState:
    v = np.zeros(1 << n_qubits, dtype=complex)
    v[index] = 1.0
    return DenseState(n_qubits, v)


def toric_ground_state(lat: ToricLattice) -> DenseState:
    """Ground state with +1 for both logical Zs.

    |0...0> already satisfies every plaquette and both Z loops; projecting
    with (1 + Xbar)/2 over all stars then enforces the star sector.
    """
    if lat.n_qubits > QUBIT_CAP:
        raise ValueError(f"toric lattice N={lat.N} needs {lat.n_qubits} qubits > cap")
    v = basis_state(lat.n_qubits).amplitudes
    for i in range(lat.N):
        for j in range(lat.N):
            v = 0.5 * (v + apply_to_state(lat.star(i, j), v))
    v /= np.linalg.norm(v)
    return DenseState(lat.n_qubits, v)


def toric_string_basis(lat: ToricLattice, psi: DenseState) -> list[DenseState]:
    """Orthonormal string states U_l |psi> for l = 0 .. N-2."""
    return [psi.apply_term(toric_error_string(lat, l)) for l in range(lat.N - 1)]


def apply_hamiltonian(h: PauliSum, v: DenseState) -> DenseState:
    """Term-wise H|v>, unnormalized."""
    if h.n_qubits != v.n_qubits:
        raise ValueError("operator and state sizes differ")
    return DenseState(v.n_qubits, h.apply(v.amplitudes))


def expectation(h: PauliSum, v: DenseState) -> float:
    return float(np.real(np.vdot(v.amplitudes, h.apply(v.amplitudes))))


def _lanczos_basis(h: PauliSum, v0: np.ndarray, max_dim: int, breakdown: float):
    """Lanczos tridiagonalization of h from v0 (assumed normalized)."""
    vecs = [v0]
    alphas: list[float] = []
    betas: list[float] = []
    w = h.apply(v0)
    a = float(np.real(np.vdot(v0, w)))
    alphas.append(a)
    w = w - a * v0
    for j in range(1, max_dim):
        b = float(np.linalg.norm(w))
        if b <= breakdown:
            return vecs, alphas, betas, True
        vj = w / b
        # one full re-orthogonalization sweep keeps the basis clean
        for u in vecs:
            vj = vj - np.vdot(u, vj) * u
        vj = vj / np.linalg.norm(vj)
        vecs.append(vj)
        betas.append(b)
        w = h.apply(vj)
        a = float(np.real(np.vdot(vj, w)))
        alphas.append(a)
        w = w - a * vj - b * vecs[-2]
    return vecs, alphas, betas, False


def _expm_tridiag(alphas, betas, tau: float) -> np.ndarray:
    """First column of exp(-i tau T) for the small Lanczos matrix T."""
    k = len(alphas)
    t = np.diag(np.asarray(alphas, dtype=float))
    if k > 1:
        t += np.diag(betas, 1) + np.diag(betas, -1)
    w, u = np.linalg.eigh(t)
    return (u * np.exp(-1j * tau * w)) @ u[0, :].conj()


def krylov_propagate(
    h: PauliSum, v: DenseState, t: float, tol: float = KRYLOV_TOL
) -> DenseState:
    """exp(-i H t)|v> by adaptive short-step Lanczos.

    Steps are split until the standard posterior estimate beta_m * |y_m|
    stays within the per-step error budget; an invariant subspace (happy
    breakdown) finishes the remaining time in one exact step.  The result is
    renormalized, bounding unitarity drift by the same tolerance.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if h.n_qubits != v.n_qubits:
        raise ValueError("operator and state sizes differ")
    if t == 0.0:
        return DenseState(v.n_qubits, v.amplitudes.copy())
    state = v.normalized().amplitudes
    scale = max(1.0, sum(abs(term.coeff) for term in h.terms))
    breakdown = 1e-13 * scale
    remaining = t
    step = min(t, 10.0 / scale)
    attempts = 0
    while remaining > 1e-15 * t:
        vecs, alphas, betas, happy = _lanczos_basis(h, state, _KRYLOV_MAX_DIM, breakdown)
        tau = remaining if happy else min(step, remaining)
        while True:
            y = _expm_tridiag(alphas, betas, tau)
            if happy:
                err = 0.0
            else:
                # posterior residual estimate: weight leaking past the basis
                err = abs(betas[-1] * y[-1]) * tau if betas else 0.0
            if err <= tol * tau / t:
                break
            tau *= 0.5
            attempts += 1
            if attempts > 200:
                raise NumericalError(
                    f"krylov propagation failed to converge (err {err:.2e})"
                )
        basis = np.column_stack(vecs)
        state = basis @ y
        state = state / np.linalg.norm(state)
        remaining -= tau
        if not happy:
            step = tau * 1.5
    return DenseState(v.n_qubits, state * v.norm)


def subspace_projection(
    states: list[DenseState], v: DenseState
) -> tuple[np.ndarray, float]:
    """Overlap coefficients onto an orthonormal family plus the leakage norm."""
    mat = np.column_stack([s.amplitudes for s in states])
    gram = mat.conj().T @ mat
    if np.max(np.abs(gram - np.eye(len(states)))) > 1e-10:
        raise ValueError("basis states are not orthonormal to 1e-10")
    coeffs = mat.conj().T @ v.amplitudes
    residual = v.amplitudes - mat @ coeffs
    return coeffs, float(np.linalg.norm(residual))


def effective_matrix_elements(
    h_total: PauliSum, states: list[DenseState], ground_energy: float
) -> np.ndarray:
    """Exact <s_i| (H - E0) |s_j> over the given string basis."""
    mat = np.column_stack([s.amplitudes for s in states])
    images = np.column_stack([h_total.apply(s.amplitudes) for s in states])
    out = mat.conj().T @ images - ground_energy * (mat.conj().T @ mat)
    return np.real_if_close(out, tol=100)


def apply_circuit_to_state(circuit, v: DenseState) -> DenseState:
    """Apply an ordered CNOT list to a dense state (circuit[0] first)."""
    amps = v.amplitudes
    idx = np.arange(amps.size, dtype=np.uint32)
    for control, target in circuit:
        src = np.where(
            (idx >> np.uint32(control)) & np.uint32(1),
            idx ^ np.uint32(1 << target),
            idx,
        )
        amps = amps[src]
    return DenseState(v.n_qubits, amps.copy())


@dataclass(frozen=True)
class DualityReport:
    """Outcome of conjugating deltaH by the duality circuit."""

    matched: bool
    n_terms: int
    missing: tuple
    extra: tuple
    max_coeff_dev: float
    string_flip_counts: tuple
    pair_flip_counts: tuple


def _hopping_target(lat: ToricLattice, J, delta: float) -> PauliSum:
    """(delta/2) sum_i J_i (X_{2i,0} X_{2i+2,0} + Y_{2i,0} Y_{2i+2,0})."""
    n = lat.n_qubits
    terms = []
    for i in range(lat.N - 2):
        if J[i] == 0.0:
            continue
        a = lat.site_index(2 * i, 0)
        b = lat.site_index(2 * i + 2, 0)
        c = 0.5 * delta * J[i]
        terms.append(pauli_x(n, a, b).scaled(c))
        terms.append(pauli_y(n, a, b).scaled(c))
    return PauliSum.from_terms(terms, n)


def verify_duality_map(
    lat: ToricLattice, deltaH: PauliSum, J, delta: float
) -> DualityReport:
    """Check V deltaH V^dag == XX+YY hopping chain, term for term.

    deltaH must be a pure hopping perturbation (B = 0); detuning terms are
    diagonal in Z and rejected.  The statevector part applies V as a circuit
    and identifies, for each string state, the chain X-pattern that carries
    the mapped ground state onto it; the pattern weight is the excitation
    number, 1 for single strings U_l and 2 for adjacent pairs U_i U_{i-1}.
    """
    for term in deltaH:
        if term.x_mask == 0:
            raise ValueError("deltaH contains diagonal (B != 0) terms")
    circuit = toric_duality_circuit(lat)
    conjugated = deltaH.conjugated_by_circuit(circuit)
    target = _hopping_target(lat, J, delta)
    got = {(t.z_mask, t.x_mask): t.coeff for t in conjugated}
    want = {(t.z_mask, t.x_mask): t.coeff for t in target}
    missing = tuple(sorted(set(want) - set(got)))
    extra = tuple(sorted(set(got) - set(want)))
    dev = 0.0
    for key in set(want) & set(got):
        dev = max(dev, abs(want[key] - got[key]))
    matched = not missing and not extra and dev == 0.0

    string_flips = ()
    pair_flips = ()
    if lat.n_qubits <= QUBIT_CAP:
        psi = toric_ground_state(lat)
        chain_sites = [lat.site_index(2 * i, 0) for i in range(lat.N)]
        vacuum = apply_circuit_to_state(circuit, psi)
        flips = []
        for l in range(lat.N - 1):
            mapped = apply_circuit_to_state(circuit, psi.apply_term(toric_error_string(lat, l)))
            flips.append(_excitation_number(vacuum, mapped, chain_sites))
        string_flips = tuple(flips)
        flips = []
        for i in range(1, lat.N - 1):
            pair = multiply(toric_error_string(lat, i), toric_error_string(lat, i - 1))
            mapped = apply_circuit_to_state(circuit, psi.apply_term(pair))
            flips.append(_excitation_number(vacuum, mapped, chain_sites))
        pair_flips = tuple(flips)
    return DualityReport(
        matched=matched,
        n_terms=len(conjugated),
        missing=missing,
        extra=extra,
        max_coeff_dev=dev,
        string_flip_counts=string_flips,
        pair_flip_counts=pair_flips,
    )


def _excitation_number(vacuum: DenseState, state: DenseState, sites: list[int]) -> int:
    """Weight of the chain X-pattern with |<X^pattern vacuum | state>| = 1.

    Scans all subsets of the chain sites; raises if no pattern reproduces the
    state, meaning it left the chain's flip sector.
    """
    n = len(sites)
    for mask in range(1 << n):
        flip = 0
        for k in range(n):
            if (mask >> k) & 1:
                flip |= 1 << sites[k]
        if flip == 0:
            cand = vacuum
        else:
            cand = vacuum.apply_term(PauliTerm(vacuum.n_qubits, flip, 0, 1.0))
        if abs(abs(cand.overlap(state)) - 1.0) <= 1e-10:
            return bin(mask).count("1")
    raise NumericalError("state is not a chain flip pattern over the mapped vacuum")


def two_excitation_transfer(
    lat: ToricLattice,
    i: int,
    t: float,
    deltaH: PauliSum,
    tol: float = KRYLOV_TOL,
) -> float:
    """|<psi| (U_{N-i-1} U_{N-i-2})^dag exp(-i (H + dH) t) U_i U_{i-1} |psi>|^2.

    A single fault at site (2i, 0) with i > 0 is the adjacent-pair string
    U_i U_{i-1}; under the engineered hopping it mirrors to the opposite
    pair in the transfer time.
    """
    if not 0 < i <= lat.N - 2:
        raise ValueError(f"site index {i} out of range 1..{lat.N - 2}")
    psi = toric_ground_state(lat)
    h_total = toric_hamiltonian(lat) + deltaH
    init = psi.apply_term(
        multiply(toric_error_string(lat, i), toric_error_string(lat, i - 1))
    )
    j = lat.N - 1 - i
    final = psi.apply_term(
        multiply(toric_error_string(lat, j), toric_error_string(lat, j - 1))
    )
    evolved = krylov_propagate(h_total, init, t, tol)
    return float(abs(final.overlap(evolved)) ** 2)


def ising_ground_state(lat: IsingLattice) -> DenseState:
    if lat.n_qubits > QUBIT_CAP:
        raise ValueError(f"ising lattice N={lat.N} needs {lat.n_qubits} qubits > cap")
    return basis_state(lat.n_qubits)


def ising_prefix_basis(lat: IsingLattice) -> list[DenseState]:
    """Retained prefix states applied to |0...0>; exact eigenvectors of H_I."""
    g = ising_ground_state(lat)
    return [g.apply_term(ising_error_prefix(lat, l)) for l in ising_retained_lengths(lat)]


def ising_ground_energy(lat: IsingLattice) -> float:
    """<0...0| H_I |0...0> = -(number of bonds)/2, the ground energy."""
    g = ising_ground_state(lat)
    return expectation(ising_hamiltonian(lat), g)
