"""Full-spectrum eigensolvers for the string chains.

Three paths feed one result type:

* unreduced generic tridiagonals go straight to LAPACK;
* exact zeros on the off-diagonal split the matrix into unreduced blocks
  first, so degenerate block spectra never mix;
* exactly persymmetric chains with positive couplings are folded into their
  mirror-even and mirror-odd halves.  The halves interlace strictly, which
  pins the eigenvalue order and makes the endpoint relation
  ``<M|lam_k> = (-1)^(M-k) <lam_k|1>`` hold to machine precision even when a
  pair is numerically degenerate.

Endpoint sign convention: the first nonzero component of every eigenvector
is made positive, eigenvalues ascend, and indices are 0-based (so the
alternating endpoint relation reads ``last = (-1)^(M-1-i) * first``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .effective import SymTridiag

__all__ = [
    "SpectralData",
    "NumericalError",
    "eigh_tridiag",
    "eigh_dense_symmetric",
    "min_gap",
]

DENSE_DIM_CAP = 4096


class NumericalError(RuntimeError):
    """An eigensolve or reconstruction failed to converge or broke down."""


@dataclass(frozen=True)
class SpectralData:
    """Spectrum plus the eigenvector endpoint data used for transfer."""

    eigenvalues: np.ndarray
    first_components: np.ndarray
    last_components: np.ndarray

    @property
    def amplitudes(self) -> np.ndarray:
        """Transfer amplitudes a_i = <M|lam_i><lam_i|1>."""
        return self.first_components * self.last_components

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def spectral_width(self) -> float:
        return float(self.eigenvalues[-1] - self.eigenvalues[0])


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        nz = np.flatnonzero(np.abs(col) > 0.0)
        if nz.size and col[nz[0]] < 0:
            vecs[:, k] = -col
    return vecs


def _lapack_tridiag(diag: np.ndarray, off: np.ndarray):
    if diag.size == 1:
        return diag.copy(), np.ones((1, 1))
    try:
        w, v = sla.eigh_tridiagonal(diag, off)
    except (sla.LinAlgError, np.linalg.LinAlgError) as exc:
        raise NumericalError(
            f"tridiagonal eigensolve failed for dim {diag.size}: {exc}"
        ) from exc
    return w, _fix_signs(v)


def _persymmetric_split(diag: np.ndarray, off: np.ndarray) -> SpectralData:
    """Half-size solves for an exactly persymmetric positive chain.

    Mirror-even states fold to the first half with the centre coupling added
    (even M) or routed through the middle site with sqrt(2) scaling (odd M);
    mirror-odd states fold with the centre coupling subtracted or the middle
    site pinned to zero.  Cauchy interlacing orders the merged spectrum.
    """
    M = diag.size
    m = M // 2
    if M % 2 == 0:
        ds = diag[:m].copy()
        ds[-1] += off[m - 1]
        da = diag[:m].copy()
        da[-1] -= off[m - 1]
        ws, vs = _lapack_tridiag(ds, off[: m - 1].copy())
        wa, va = _lapack_tridiag(da, off[: m - 1].copy())
    else:
        ds = diag[: m + 1].copy()
        os_ = np.concatenate([off[: m - 1], [np.sqrt(2.0) * off[m - 1]]])
        ws, vs = _lapack_tridiag(ds, os_)
        wa, va = _lapack_tridiag(diag[:m].copy(), off[: m - 1].copy())
    fs = np.abs(vs[0, :]) / np.sqrt(2.0)
    fa = np.abs(va[0, :]) / np.sqrt(2.0)
    lam = np.empty(M)
    first = np.empty(M)
    last = np.empty(M)
    if M % 2 == 0:
        lam[0::2], lam[1::2] = wa, ws
        first[0::2], first[1::2] = fa, fs
        last[0::2], last[1::2] = -fa, fs
    else:
        lam[0::2], lam[1::2] = ws, wa
        first[0::2], first[1::2] = fs, fa
        last[0::2], last[1::2] = fs, -fa
    # strict interlacing can round to exact ties for deeply split pairs
    slack = 64.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(lam))))
    if np.any(np.diff(lam) < -slack):
        raise NumericalError("persymmetric half-spectra failed to interlace")
    return SpectralData(lam, first, last)


def eigh_tridiag(m: SymTridiag) -> SpectralData:
    """Eigenvalues (ascending) and endpoint components of a SymTridiag."""
    diag = m.diag
    off = m.offdiag
    M = m.dim
    if M == 1:
        one = np.ones(1)
        return SpectralData(diag.copy(), one.copy(), one.copy())
    zeros = np.flatnonzero(off == 0.0)
    if zeros.size:
        return _block_split(diag, off, zeros)
    if m.is_persymmetric() and np.all(off > 0.0):
        return _persymmetric_split(diag, off)
    w, v = _lapack_tridiag(diag.copy(), off.copy())
    return SpectralData(w, v[0, :].copy(), v[-1, :].copy())


def _block_split(diag: np.ndarray, off: np.ndarray, zeros: np.ndarray) -> SpectralData:
    M = diag.size
    starts = [0] + [int(z) + 1 for z in zeros]
    ends = [int(z) + 1 for z in zeros] + [M]
    entries = []
    for s, e in zip(starts, ends):
        sub = eigh_tridiag(SymTridiag(diag[s:e], off[s : e - 1]))
        for k in range(sub.dim):
            f = sub.first_components[k] if s == 0 else 0.0
            l = sub.last_components[k] if e == M else 0.0
            entries.append((float(sub.eigenvalues[k]), f, l))
    entries.sort(key=lambda t: t[0])
    lam = np.array([t[0] for t in entries])
    first = np.array([t[1] for t in entries])
    last = np.array([t[2] for t in entries])
    return SpectralData(lam, first, last)


def eigh_dense_symmetric(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric eigensolve with the same ordering and sign rules."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.shape[0] > DENSE_DIM_CAP:
        raise ValueError(f"dimension {a.shape[0]} exceeds cap {DENSE_DIM_CAP}")
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-13:
        raise ValueError("matrix is not symmetric to 1e-13")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"dense eigensolve failed: {exc}") from exc
    return w, _fix_signs(v)


def min_gap(s: SpectralData) -> float:
    """Delta' = min_{i != j} |lam_i - lam_j| of the sorted spectrum."""
    if s.dim < 2:
        raise ValueError("need at least two eigenvalues for a gap")
    return float(np.min(np.diff(s.eigenvalues)))
