"""Named batch experiments reproducing the headline claims.

Each experiment is a pure function of its validated config (plus seed) that
returns result tables, a summary, and pass/fail checks; the runner writes
CSV/JSON/SVG artifacts and maps outcomes to exit codes:

    0  all checks passed
    1  config error
    2  an invariant or claim check failed
    3  numerical failure
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from . import __version__
from .effective import (
    SymTridiag,
    banded_effective,
    ising_effective_surface,
    ising_surface_diagonal,
    toric_effective,
)
from .iep import retune_chain
from .lattices import (
    IsingLattice,
    ToricLattice,
    ising_hamiltonian,
    ising_perturbation,
    toric_hamiltonian,
    toric_logicals,
    toric_perturbation,
)
from .oracle import (
    apply_hamiltonian,
    effective_matrix_elements,
    expectation,
    ising_ground_energy,
    ising_prefix_basis,
    krylov_propagate,
    subspace_projection,
    toric_ground_state,
    toric_string_basis,
    two_excitation_transfer,
    verify_duality_map,
)
from .reporting import write_csv, write_json, write_svg_plot
from .spectral import NumericalError, eigh_tridiag, min_gap
from .splitting import measure_splitting, plateau_spectrum, predicted_order
from .transfer import christandl_couplings, fidelity, locate_fidelity_peak, measure_transfer_time

__all__ = ["ConfigError", "ExperimentConfig", "EXPERIMENTS", "run", "load_config_file"]


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the field."""


@dataclass
class ExperimentConfig:
    experiment: str
    N_range: list[int] = field(default_factory=list)
    delta: float = 0.1
    t_factor: float = 50.0
    threshold: float = 0.999
    output_dir: str = "results"
    precision: str = "double"
    seed: int = 0
    svg: bool = False

    def validated(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"experiment: unknown name {self.experiment!r}; "
                f"choose from {', '.join(sorted(EXPERIMENTS))}"
            )
        if not self.N_range:
            self.N_range = list(EXPERIMENTS[self.experiment].default_N)
        if any(not isinstance(n, int) or n < 2 for n in self.N_range):
            raise ConfigError(f"N_range: entries must be integers >= 2, got {self.N_range}")
        if not (0.0 < self.delta <= 0.5):
            raise ConfigError(f"delta: must lie in (0, 0.5], got {self.delta}")
        if self.t_factor < 10.0:
            raise ConfigError(f"t_factor: must be >= 10 (retuning bound), got {self.t_factor}")
        if not (0.0 < self.threshold <= 1.0):
            raise ConfigError(f"threshold: must lie in (0, 1], got {self.threshold}")
        if self.digits() is None:
            raise ConfigError(
                f"precision: must be 'double' or 'extended:<digits>', got {self.precision!r}"
            )
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed: must be a nonnegative integer, got {self.seed}")
        return self

    def digits(self) -> int | None:
        if self.precision == "double":
            return 60
        if self.precision.startswith("extended:"):
            try:
                d = int(self.precision.split(":", 1)[1])
            except ValueError:
                return None
            return d if d >= 30 else None
        return None


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    requirement: str
    passed: bool


@dataclass
class Outcome:
    tables: dict[str, tuple[list[str], list[tuple]]]
    summary: dict
    checks: list[Check]
    plots: list[tuple[str, dict]] = field(default_factory=list)


def _uniform_chain(N: int, delta: float) -> SymTridiag:
    return toric_effective(N, 1.0, delta, np.full(N - 2, 0.5), np.zeros(N - 1))


def _fit_slope(x, y) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def _delta_ladder(delta: float, points: int = 6) -> np.ndarray:
    return delta * np.logspace(-1.0, 0.0, points)


def exp_toric_scaling(cfg: ExperimentConfig) -> Outcome:
    rows = []
    gaps, times = [], []
    for N in cfg.N_range:
        s_uniform = eigh_tridiag(_uniform_chain(N, cfg.delta))
        gap = min_gap(s_uniform)
        s_c = eigh_tridiag(
            toric_effective(N, 1.0, cfg.delta, christandl_couplings(N), np.zeros(N - 1))
        )
        t_expect = np.pi * (N - 1) / (4.0 * cfg.delta)
        res = measure_transfer_time(s_c, cfg.threshold, 1.5 * t_expect)
        if not res.reached:
            raise NumericalError(f"transfer threshold never reached at N={N}")
        gaps.append(gap)
        times.append(res.transfer_time)
        rows.append((N, gap, res.transfer_time))
    gap_slope = _fit_slope(cfg.N_range, gaps)
    time_slope = _fit_slope(cfg.N_range, times)
    checks = [
        Check("min_gap_exponent", gap_slope, "-2 +/- 0.1", abs(gap_slope + 2.0) <= 0.1),
        Check("transfer_time_exponent", time_slope, "+1 +/- 0.05", abs(time_slope - 1.0) <= 0.05),
    ]
    return Outcome(
        tables={"": (["N", "min_gap", "transfer_time"], rows)},
        summary={"min_gap_exponent": gap_slope, "transfer_time_exponent": time_slope},
        checks=checks,
        plots=[
            ("min_gap", dict(xs=cfg.N_range, ys=gaps, title="minimum gap vs N",
                             xlabel="N", ylabel="min gap", logx=True, logy=True)),
            ("transfer_time", dict(xs=cfg.N_range, ys=times, title="transfer time vs N",
                                   xlabel="N", ylabel="t", logx=True, logy=True)),
        ],
    )


def exp_toric_retune(cfg: ExperimentConfig) -> Outcome:
    rows = []
    ladder_rows = []
    worst_f = 1.0
    slopes = []
    factors = np.logspace(0.0, np.log10(16.0), 9)
    for N in cfg.N_range:
        chain = _uniform_chain(N, cfg.delta)
        gap = min_gap(eigh_tridiag(chain))
        t0 = cfg.t_factor * np.pi / gap
        rebuilt, plan = retune_chain(chain, t0)
        f_t = fidelity(eigh_tridiag(rebuilt), t0)
        shift0 = float(np.max(np.abs(rebuilt.offdiag - chain.offdiag)))
        worst_f = min(worst_f, f_t)
        rows.append((N, t0, f_t, shift0))
        shifts = []
        for factor in factors:
            rebuilt, _ = retune_chain(chain, factor * t0)
            shift = float(np.max(np.abs(rebuilt.offdiag - chain.offdiag)))
            shifts.append(shift)
            ladder_rows.append((N, factor * t0, shift))
        slopes.append(_fit_slope(factors, shifts))
    slope = float(np.mean(slopes))
    checks = [
        Check("worst_fidelity", worst_f, ">= 1 - 1e-6", worst_f >= 1.0 - 1e-6),
        Check("shift_vs_t_exponent", slope, "-1 +/- 0.2", abs(slope + 1.0) <= 0.2),
    ]
    return Outcome(
        tables={
            "": (["N", "t", "fidelity_at_t", "max_coupling_shift"], rows),
            "shift_ladder": (["N", "t", "max_coupling_shift"], ladder_rows),
        },
        summary={"worst_fidelity": worst_f, "shift_vs_t_exponent": slope},
        checks=checks,
        plots=[("shift_ladder", dict(xs=[r[1] for r in ladder_rows],
                                     ys=[r[2] for r in ladder_rows],
                                     title="coupling shift vs t",
                                     xlabel="t", ylabel="max shift", logx=True, logy=True))],
    )


def exp_toric_transfer(cfg: ExperimentConfig) -> Outcome:
    rows = []
    worst = 1.0
    trace_rows: list[tuple] = []
    for N in cfg.N_range:
        if N < 3:
            raise ConfigError("N_range: christandl transfer needs N >= 3")
        s = eigh_tridiag(
            toric_effective(N, 1.0, cfg.delta, christandl_couplings(N), np.zeros(N - 1))
        )
        t_expect = np.pi * (N - 1) / (4.0 * cfg.delta)
        t_star, f_star = locate_fidelity_peak(s, 1.5 * t_expect)
        worst = min(worst, f_star)
        rows.append((N, t_star, f_star))
        if N == max(cfg.N_range):
            res = measure_transfer_time(s, cfg.threshold, 1.5 * t_expect)
            trace_rows = list(zip(res.times.tolist(), res.fidelities.tolist()))
    checks = [Check("worst_peak_fidelity", worst, ">= 1 - 1e-9", worst >= 1.0 - 1e-9)]
    return Outcome(
        tables={
            "": (["N", "t_star", "f_star"], rows),
            "trace": (["t", "fidelity"], trace_rows),
        },
        summary={"worst_peak_fidelity": worst},
        checks=checks,
        plots=[("trace", dict(xs=[r[0] for r in trace_rows] or [0.0],
                              ys=[r[1] for r in trace_rows] or [0.0],
                              title="fidelity trace", xlabel="t", ylabel="F"))],
    )


def exp_ising_splitting(cfg: ExperimentConfig) -> Outcome:
    deltas = _delta_ladder(cfg.delta)
    dps = cfg.digits()
    rows = []
    checks = []
    summary: dict = {}
    for N in cfg.N_range:
        M = N * (N - 1) - 2
        fit = measure_splitting(
            lambda d, N=N: ising_effective_surface(N, d),
            (0, 1),
            deltas,
            predicted=predicted_order(M, 1),
            dps=dps,
        )
        for d, sp in zip(fit.deltas, fit.splittings):
            rows.append((N, d, sp))
        tol = 0.1 if fit.predicted_order <= 3 else 0.3
        checks.append(
            Check(
                f"splitting_order_N{N}",
                fit.fitted_order,
                f"{fit.predicted_order} +/- {tol}",
                abs(fit.fitted_order - fit.predicted_order) <= tol,
            )
        )
        summary[f"order_N{N}"] = fit.fitted_order
        summary[f"predicted_N{N}"] = fit.predicted_order
    m_flat = cfg.N_range[0] * (cfg.N_range[0] - 1) - 2
    flat = measure_splitting(
        lambda d: SymTridiag(np.full(m_flat, 2.0), np.full(m_flat - 1, 0.5 * d)),
        (0, 1),
        deltas,
        predicted=1,
        dps=dps,
    )
    checks.append(
        Check("contrast_flat_order", flat.fitted_order, "1 +/- 0.05",
              abs(flat.fitted_order - 1.0) <= 0.05)
    )
    summary["contrast_flat_order"] = flat.fitted_order
    return Outcome(
        tables={
            "": (["N", "delta", "splitting"], rows),
            "contrast": (["delta", "splitting"], list(zip(flat.deltas, flat.splittings))),
        },
        summary=summary,
        checks=checks,
        plots=[("splitting", dict(xs=deltas, ys=[r[2] for r in rows if r[0] == cfg.N_range[0]],
                                  title="lowest-pair splitting", xlabel="delta",
                                  ylabel="splitting", logx=True, logy=True))],
    )


def exp_ising_plateau(cfg: ExperimentConfig) -> Outcome:
    deltas = cfg.delta * np.logspace(-1.5, 0.0, 8)
    rows = []
    checks = []
    summary = {}
    for N in cfg.N_range:
        if N < 4:
            raise ConfigError("N_range: the plateau is empty below N = 4")
        P = (N - 1) * (N - 2) - 2
        resid = []
        for d in deltas:
            s = eigh_tridiag(ising_effective_surface(N, float(d)))
            numeric = s.eigenvalues[-P:]
            formula = np.sort(plateau_spectrum(N, float(d)))
            r = float(np.max(np.abs(numeric - formula)))
            resid.append(r)
            rows.append((N, float(d), r))
        slope = _fit_slope(deltas, resid)
        checks.append(Check(f"residual_exponent_N{N}", slope, ">= 1.8", slope >= 1.8))
        summary[f"residual_exponent_N{N}"] = slope
    return Outcome(
        tables={"": (["N", "delta", "max_residual"], rows)},
        summary=summary,
        checks=checks,
        plots=[("residual", dict(xs=deltas, ys=[r[2] for r in rows if r[0] == cfg.N_range[0]],
                                 title="plateau formula residual", xlabel="delta",
                                 ylabel="residual", logx=True, logy=True))],
    )


def _mirror_symmetric_bands(rng, k: int, M: int) -> np.ndarray:
    """Random band profiles respecting the chain's mirror symmetry.

    Mirror-breaking bands detune the degenerate pair at second order without
    delocalizing it, so the tunneling-order claim is demonstrated on the
    symmetric family (the detuning contributions then cancel identically).
    """
    unit = rng.uniform(-1.0, 1.0, size=(k, M - 1))
    for b in range(1, k + 1):
        row = unit[b - 1, : M - b]
        unit[b - 1, : M - b] = 0.5 * (row + row[::-1])
    return unit


def exp_banded_splitting(cfg: ExperimentConfig) -> Outcome:
    k = 2
    deltas = cfg.delta * np.logspace(-1.5, -0.5, 6)
    dps = cfg.digits()
    rng = np.random.default_rng(cfg.seed)
    rows = []
    checks = []
    summary = {"k": k}
    for N in cfg.N_range:
        M = N * (N - 1) - 2
        unit = _mirror_symmetric_bands(rng, k, M)
        fit = measure_splitting(
            lambda d, N=N, unit=unit: (
                banded_effective(N, float(d), k, float(d) * unit)
                if d
                else np.diag(ising_surface_diagonal(N))
            ),
            (0, 1),
            deltas,
            predicted=predicted_order(M, 1, k),
            dps=dps,
        )
        for d, sp in zip(fit.deltas, fit.splittings):
            rows.append((N, d, sp))
        bound = predicted_order(M, 1, k)
        checks.append(
            Check(
                f"banded_order_N{N}",
                fit.fitted_order,
                f">= {bound} - 0.1",
                fit.fitted_order >= bound - 0.1,
            )
        )
        summary[f"banded_order_N{N}"] = fit.fitted_order
        summary[f"bound_N{N}"] = bound
    return Outcome(
        tables={"": (["N", "delta", "splitting"], rows)},
        summary=summary,
        checks=checks,
        plots=[],
    )


def exp_oracle_verify(cfg: ExperimentConfig) -> Outcome:
    import scipy.sparse.linalg as spla

    N = cfg.N_range[0]
    if N not in (2, 3):
        raise ConfigError("N_range: exact toric verification runs at N = 2 or 3 only")
    delta = cfg.delta
    lat = ToricLattice(N, delta_gap=1.0)
    h = toric_hamiltonian(lat)
    psi = toric_ground_state(lat)
    checks: list[Check] = []
    rows: list[tuple] = []

    def record(name: str, value: float, bound: float, kind: str = "<="):
        ok = value <= bound if kind == "<=" else value >= bound
        checks.append(Check(name, value, f"{kind} {bound:g}", ok))
        rows.append((name, value, f"{kind} {bound:g}", ok))

    stab_dev = max(
        abs(1.0 - float(np.real(np.vdot(psi.amplitudes, psi.apply_term(s).amplitudes))))
        for s in lat.stabilizers()
    )
    record("stabilizer_expectations", stab_dev, 1e-12)
    z1, z2, _ = toric_logicals(lat)
    log_dev = max(
        abs(1.0 - float(np.real(np.vdot(psi.amplitudes, psi.apply_term(p).amplitudes))))
        for p in (z1, z2)
    )
    record("logical_z_expectations", log_dev, 1e-12)

    e_ground = expectation(h, psi)
    rng = np.random.default_rng(cfg.seed + 1)
    v0 = rng.standard_normal(1 << lat.n_qubits)
    op = spla.LinearOperator(
        (1 << lat.n_qubits,) * 2, matvec=lambda x: np.real(h.apply(x.astype(complex)))
    )
    lam_min = float(spla.eigsh(op, k=1, which="SA", v0=v0, tol=1e-9,
                               return_eigenvectors=False)[0])
    record("ground_energy_vs_lanczos", abs(e_ground - lam_min), 1e-7)

    basis = toric_string_basis(lat, psi)
    gram = np.array([[abs(a.overlap(b)) for b in basis] for a in basis])
    record("string_basis_orthonormality", float(np.max(np.abs(gram - np.eye(len(basis))))), 1e-12)

    rng = np.random.default_rng(cfg.seed + 2)
    J = rng.uniform(0.3, 0.9, max(N - 2, 0))
    B = rng.uniform(-0.5, 0.5, N - 1)
    dH = toric_perturbation(lat, J, B, delta)
    exact = effective_matrix_elements(h + dH, basis, e_ground)
    model = toric_effective(N, lat.delta_gap, delta, J, B).dense()
    record("matrix_element_deviation", float(np.max(np.abs(exact - model))), 1e-12)

    if N < 3:  # a single string state: nothing to transfer
        return Outcome(
            tables={"": (["check", "value", "bound", "passed"], rows)},
            summary={"N": N, "ground_energy": e_ground},
            checks=checks,
        )

    chain = _uniform_chain(N, delta)
    t = cfg.t_factor * np.pi / min_gap(eigh_tridiag(chain))
    rebuilt, _ = retune_chain(chain, t)
    J_new = rebuilt.offdiag / delta
    B_new = (rebuilt.diag - 2.0 * lat.delta_gap) / delta
    record("retuned_couplings_within_budget",
           float(max(np.max(np.abs(J_new)), np.max(np.abs(B_new)))), 1.0)
    dH_new = toric_perturbation(lat, J_new, B_new, delta)
    h_total = h + dH_new
    leak = 0.0
    state = basis[0]
    for _ in range(8):
        state = krylov_propagate(h_total, state, t / 8.0)
        _, resid = subspace_projection(basis, state)
        leak = max(leak, resid)
    record("subspace_leakage", leak, 1e-10)
    overlap = float(abs(basis[-1].overlap(state)) ** 2)
    record("logical_flip_overlap", overlap, 0.99, ">=")

    ilat = IsingLattice(3)
    ih = ising_hamiltonian(ilat)
    ie0 = ising_ground_energy(ilat)
    ibasis = ising_prefix_basis(ilat)
    m_dim = len(ibasis)
    iJ = np.full(m_dim - 1, 1.0)
    iB = np.zeros(m_dim)
    idh = ising_perturbation(ilat, iJ, iB, delta)
    iexact = effective_matrix_elements(ih + idh, ibasis, ie0)
    imodel = ising_effective_surface(3, delta).dense()
    record("ising_matrix_element_deviation", float(np.max(np.abs(iexact - imodel))), 1e-12)
    ileak = max(
        subspace_projection(ibasis, apply_hamiltonian(ih + idh, s))[1]
        / max(apply_hamiltonian(ih + idh, s).norm, 1.0)
        for s in ibasis
    )
    record("ising_subspace_closure", ileak, 1e-12)

    return Outcome(
        tables={"": (["check", "value", "bound", "passed"], rows)},
        summary={"N": N, "ground_energy": e_ground, "designed_t": t},
        checks=checks,
    )


def exp_duality_verify(cfg: ExperimentConfig) -> Outcome:
    N = cfg.N_range[0]
    if N != 3:
        raise ConfigError("N_range: the statevector duality check runs at N = 3")
    lat = ToricLattice(N)
    J = np.ones(N - 2)
    dH = toric_perturbation(lat, J, np.zeros(N - 1), cfg.delta)
    report = verify_duality_map(lat, dH, J, cfg.delta)
    rows = [
        ("terms_matched", float(report.matched), "exact", report.matched),
        ("n_terms", float(report.n_terms), "== 2(N-2)", report.n_terms == 2 * (N - 2)),
        ("max_coeff_dev", report.max_coeff_dev, "== 0", report.max_coeff_dev == 0.0),
    ]
    single_ok = all(c == 1 for c in report.string_flip_counts)
    pair_ok = all(c == 2 for c in report.pair_flip_counts)
    rows.append(("string_excitation_numbers", float(single_ok), "every U_l maps to 1 flip", single_ok))
    rows.append(("pair_excitation_numbers", float(pair_ok), "every U_iU_{i-1} maps to 2 flips", pair_ok))
    checks = [Check(name, val, req, ok) for name, val, req, ok in rows]
    return Outcome(
        tables={"": (["check", "value", "requirement", "passed"], rows)},
        summary={
            "matched": report.matched,
            "string_flip_counts": list(report.string_flip_counts),
            "pair_flip_counts": list(report.pair_flip_counts),
        },
        checks=checks,
    )


def exp_two_excitation(cfg: ExperimentConfig) -> Outcome:
    N = cfg.N_range[0]
    if N != 3:
        raise ConfigError("N_range: the two-excitation check runs at N = 3")
    lat = ToricLattice(N)
    delta = cfg.delta
    J = christandl_couplings(N)
    dH = toric_perturbation(lat, J, np.zeros(N - 1), delta)
    t_star = np.pi * (N - 1) / (4.0 * delta)  # the chain's mirror time
    times = np.linspace(0.0, t_star, 9)
    rows = []
    for t in times:
        f = two_excitation_transfer(lat, 1, float(t), dH)
        rows.append((float(t), f))
    final = rows[-1][1]
    initial = rows[0][1]
    checks = [
        Check("mirror_overlap_at_t0", initial, ">= 1 - 1e-9", initial >= 1.0 - 1e-9),
        Check("pair_transfer_fidelity", final, ">= 0.99", final >= 0.99),
    ]
    return Outcome(
        tables={"": (["t", "fidelity"], rows)},
        summary={"t_star": t_star, "final_fidelity": final},
        checks=checks,
        plots=[("pair_fidelity", dict(xs=[r[0] for r in rows], ys=[r[1] for r in rows],
                                      title="adjacent-pair transfer", xlabel="t", ylabel="F"))],
    )


@dataclass(frozen=True)
class ExperimentSpec:
    func: object
    default_N: tuple
    summary: str


EXPERIMENTS: dict[str, ExperimentSpec] = {
    "toric-scaling": ExperimentSpec(
        exp_toric_scaling, (16, 32, 64, 128, 256),
        "min gap ~ delta/N^2 and christandl transfer time ~ N/delta",
    ),
    "toric-retune": ExperimentSpec(
        exp_toric_retune, (8, 16, 32, 64),
        "retuned uniform chains reach F(t) >= 1 - 1e-6 with O(1/t) coupling shifts",
    ),
    "toric-transfer": ExperimentSpec(
        exp_toric_transfer, (4, 8, 16, 32, 51),
        "christandl chains transfer perfectly at the located optimum",
    ),
    "ising-splitting": ExperimentSpec(
        exp_ising_splitting, (3, 4),
        "lowest-pair splitting is O(delta^(M-1)); flat chains split at first order",
    ),
    "ising-plateau": ExperimentSpec(
        exp_ising_plateau, (4, 5),
        "plateau splits at first order onto the printed cosine band",
    ),
    "banded-splitting": ExperimentSpec(
        exp_banded_splitting, (3, 4),
        "k-banded perturbations still need order >= ceil((M-1)/k)",
    ),
    "oracle-verify": ExperimentSpec(
        exp_oracle_verify, (3,),
        "exact statevector checks of the reduced chains on small lattices",
    ),
    "duality-verify": ExperimentSpec(
        exp_duality_verify, (3,),
        "the CNOT duality maps deltaH to the XX+YY hopping chain exactly",
    ),
    "two-excitation": ExperimentSpec(
        exp_two_excitation, (3,),
        "an interior fault mirrors within the two-string sector",
    ),
}


def load_config_file(path: str | Path) -> dict:
    """Parse a key = value config file (one pair per line, # comments)."""
    raw: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        raw[key.strip()] = value.strip()
    return _coerce(raw)


def _parse_n_range(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            out = []
            n = lo
            while n <= hi:
                out.append(n)
                n *= 2
            return out
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"N_range: cannot parse {text!r}") from exc


def _coerce(raw: dict[str, str]) -> dict:
    out: dict = {}
    known = {f.name for f in ExperimentConfig.__dataclass_fields__.values()}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"{key}: unknown config key")
        if key == "N_range":
            out[key] = _parse_n_range(value)
        elif key in ("delta", "t_factor", "threshold"):
            try:
                out[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{key}: expected a number, got {value!r}") from exc
        elif key == "seed":
            try:
                out[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{key}: expected an integer, got {value!r}") from exc
        elif key == "svg":
            if value.lower() not in ("true", "false", "0", "1"):
                raise ConfigError(f"svg: expected true/false, got {value!r}")
            out[key] = value.lower() in ("true", "1")
        else:
            out[key] = value
    return out


def run(cfg: ExperimentConfig) -> int:
    """Execute one experiment and write its artifacts; returns the exit code.

    ConfigError and NumericalError propagate to the caller (the CLI maps them
    to exit codes 1 and 3).
    """
    cfg = cfg.validated()
    spec = EXPERIMENTS[cfg.experiment]
    started = time.time()
    outcome = spec.func(cfg)
    out_dir = Path(cfg.output_dir)
    slug = cfg.experiment.replace("-", "_")
    for table_name, (header, rows) in outcome.tables.items():
        stem = slug if not table_name else f"{slug}_{table_name}"
        write_csv(out_dir / f"{stem}.csv", header, rows)
    payload = {
        "experiment": cfg.experiment,
        "config": asdict(cfg),
        "version": __version__,
        "wall_clock_seconds": time.time() - started,
        "checks": [asdict(c) for c in outcome.checks],
        "summary": outcome.summary,
        "all_passed": all(c.passed for c in outcome.checks),
    }
    write_json(out_dir / f"{slug}_summary.json", payload)
    if cfg.svg:
        for plot_name, kwargs in outcome.plots:
            write_svg_plot(out_dir / f"{slug}_{plot_name}.svg", **kwargs)
    return 0 if all(c.passed for c in outcome.checks) else 2
