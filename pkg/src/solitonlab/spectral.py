"""Spectra of the Schrodinger operator -Laplacian + a R.

Analytic spectra on round spheres (harmonic levels with their
multiplicities), and symmetric finite-difference discretizations of the
radial operator on truncated Dirichlet balls of the flat gaussian space.
The discretization is the conservative flux form, which is second-order
accurate and exactly symmetric under the discrete volume weights; the origin
row reduces to the removable-singularity limit n * u''(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaincc, gammaln

from .exceptions import DimensionError, EigenSolveError, KindMismatchError
from .spaces import SolitonSpace, sphere_area


def sphere_multiplicity(n: int, l: int) -> int:
    """Dimension of the degree-l harmonic space on the round n-sphere."""
    if l == 0:
        return 1
    # (2l + n - 1) / (n - 1) * C(l + n - 2, l)
    return round(
        (2 * l + n - 1)
        / (n - 1)
        * math.exp(gammaln(l + n - 1) - gammaln(l + 1) - gammaln(n - 1))
    )


def sphere_eigenvalue(n: int, a: float, l: int, radius: float | None = None) -> float:
    """Eigenvalue of -Laplacian + a R at harmonic level l on the model sphere."""
    r = math.sqrt(2.0 * (n - 1)) if radius is None else radius
    return l * (l + n - 1) / (r * r) + a * n / 2.0


@dataclass
class Spectrum:
    """Sorted eigenvalues of the operator, with multiplicity expanded.

    ``levels`` keeps the (level, eigenvalue, multiplicity) table when the
    spectrum is analytic; discretized spectra have ``levels`` set to None and
    may carry eigenvectors in the nodal basis.
    """

    values: np.ndarray
    a: float
    source: str  # "analytic" | "discretized"
    levels: list[tuple[int, float, int]] | None = None
    eigenvectors: np.ndarray | None = field(default=None, repr=False)
    grid: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if np.any(np.diff(self.values) < -1e-12):
            raise ValueError("spectrum must be ascending")

    def __len__(self):
        return len(self.values)


def sphere_spectrum(n: int, a: float, l_max: int) -> Spectrum:
    """Analytic spectrum of -Laplacian + a R on the model n-sphere up to level l_max."""
    if n < 2:
        raise DimensionError("sphere spectra need n >= 2")
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    levels = []
    chunks = []
    for l in range(l_max + 1):
        lam = sphere_eigenvalue(n, a, l)
        mult = sphere_multiplicity(n, l)
        levels.append((l, lam, mult))
        chunks.append(np.full(mult, lam))
    return Spectrum(np.sort(np.concatenate(chunks)), a, "analytic", levels=levels)


@dataclass(frozen=True)
class DiscretizedOperator:
    """Radial discretization of -Laplacian + a R on a Dirichlet ball.

    Nodes sit at r_i = i h for i = 0 .. m-1 with the Dirichlet condition at
    r_m = R_max. ``weights`` are the cell volumes of the radial measure
    (surface area times the integral of r^{n-1} over each cell), under which
    the operator is exactly symmetric.
    """

    space: SolitonSpace
    R_max: float
    m: int
    a: float
    h: float
    r: np.ndarray
    weights: np.ndarray
    lower: np.ndarray   # sub-diagonal of the raw (non-symmetric) action
    diag: np.ndarray
    upper: np.ndarray

    def apply(self, u: np.ndarray) -> np.ndarray:
        out = self.diag * u
        out[:-1] += self.upper * u[1:]
        out[1:] += self.lower * u[:-1]
        return out

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.sum(self.weights * u * v))

    def symmetric_tridiagonal(self) -> tuple[np.ndarray, np.ndarray]:
        """(diagonal, off-diagonal) of W^{1/2} A W^{-1/2}, which is symmetric."""
        sw = np.sqrt(self.weights)
        off = self.upper * sw[:-1] / sw[1:]
        return self.diag.copy(), off

    def mass(self, u: np.ndarray) -> float:
        return float(np.sum(self.weights * u))


def discretize_radial(space: SolitonSpace, R_max: float, m: int, a: float = 0.0) -> DiscretizedOperator:
    """Conservative second-order radial discretization on (0, R_max].

    Only the gaussian space is meshed (its kernels are rotation invariant
    about the source); R vanishes there, so the a R term contributes zero but
    is kept for form. Flux form: (A u)_i = (F_{i-1/2} + F_{i+1/2}) / w_i with
    F_{i+1/2} = area * r_{i+1/2}^{n-1} (u_i - u_{i+1})/h and zero flux through
    the origin. The origin row equals the n * u''(0) limit of the operator.
    """
    if space.kind != "gaussian":
        raise KindMismatchError("radial discretization is defined on gaussian spaces only")
    if R_max <= 0.0:
        raise ValueError("R_max must be positive")
    if m < 16:
        raise ValueError("need at least 16 grid points")
    n = space.n
    h = R_max / m
    idx = np.arange(m)
    r = idx * h
    area = sphere_area(n - 1)

    half = (idx + 0.5) * h
    flux = area * half ** (n - 1) / h  # conductance through face i + 1/2
    # cell volumes: integral of area * r^{n-1} over [r_i - h/2, r_i + h/2] ∩ [0, R_max]
    edges_lo = np.maximum((idx - 0.5) * h, 0.0)
    edges_hi = (idx + 0.5) * h
    weights = area * (edges_hi ** n - edges_lo ** n) / n

    diag = np.empty(m)
    diag[0] = flux[0] / weights[0]
    diag[1:] = (flux[:-1] + flux[1:]) / weights[1:]
    upper = -flux[: m - 1] / weights[: m - 1]
    lower = -flux[: m - 1] / weights[1:]
    # a R term is identically zero on the gaussian space; kept for form
    diag += a * np.zeros(m)

    return DiscretizedOperator(space, float(R_max), int(m), float(a), float(h),
                               r, weights, lower, diag, upper)


def eigen_solve(op: DiscretizedOperator, k: int, eigenvectors: bool = False) -> Spectrum:
    """k smallest eigenvalues of the discretized operator, ascending.

    Deterministic: solved through the symmetrized tridiagonal form with a
    direct method. Eigenvectors, when requested, are returned in the nodal
    basis (columns), normalized in the weighted inner product.
    """
    if not 1 <= k <= op.m:
        raise ValueError(f"k must lie in [1, {op.m}]")
    d, e = op.symmetric_tridiagonal()
    try:
        if eigenvectors:
            vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
        else:
            vals = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1),
                                    eigvals_only=True)
            vecs = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - scipy rarely fails here
        raise EigenSolveError(f"tridiagonal eigensolver failed: {exc}") from exc
    if vecs is not None:
        # symmetrized coordinates back to nodal values, weighted-normalized
        vecs = vecs / np.sqrt(op.weights)[:, None]
        norms = np.sqrt(np.sum(op.weights[:, None] * vecs ** 2, axis=0))
        vecs = vecs / norms
        residual = _worst_residual(op, vals, vecs)
        if residual > 1e-8 * max(1.0, float(vals[-1])):
            raise EigenSolveError("eigenpair residual too large", residual=residual)
    return Spectrum(vals, op.a, "discretized", eigenvectors=vecs, grid=op.r)


def _worst_residual(op: DiscretizedOperator, vals: np.ndarray, vecs: np.ndarray) -> float:
    worst = 0.0
    for j in range(vecs.shape[1]):
        res = op.apply(vecs[:, j]) - vals[j] * vecs[:, j]
        worst = max(worst, math.sqrt(op.inner(res, res)))
    return worst


@dataclass(frozen=True)
class PartitionValue:
    value: float       # partial sum over the known spectrum
    tail_bound: float  # estimate for the part past the last known eigenvalue

    @property
    def total(self) -> float:
        return self.value + self.tail_bound


def partition_function(spectrum: Spectrum, t: float) -> PartitionValue:
    """Sum of exp(-lambda_i t) plus a tail estimate past the truncation.

    The tail assumes the counting function keeps its empirical power growth
    N(lambda) ~ N_last (lambda / lambda_last)^{n/2}; with k(lambda) inverted
    this gives an incomplete-gamma bound. For analytic sphere spectra the
    exponent comes from the space dimension.
    """
    if t <= 0.0:
        raise ValueError("t must be positive")
    lam = spectrum.values
    value = float(np.sum(np.exp(-lam * t)))
    lam_last = float(lam[-1])
    count = float(len(lam))
    if lam_last <= 0.0:
        return PartitionValue(value, 0.0)
    # growth exponent: lambda_k ~ c k^{2/nu} fit from the top of the spectrum
    nu = _empirical_growth(spectrum)
    s = nu / 2.0
    x = lam_last * t
    # integral_{count}^inf exp(-lam_last (k/count)^{2/nu} t) dk
    tail = count * s * x ** (-s) * math.exp(gammaln(s)) * gammaincc(s, x)
    return PartitionValue(value, tail)


def _empirical_growth(spectrum: Spectrum) -> float:
    """Exponent nu with lambda_k ~ k^{2/nu}, fit from the top of the spectrum."""
    lam = spectrum.values
    k = np.arange(1, len(lam) + 1, dtype=float)
    sel = lam > 0
    if np.count_nonzero(sel) < 8:
        return 2.0
    kk = k[sel][len(k[sel]) // 2:]
    ll = lam[sel][len(lam[sel]) // 2:]
    slope = np.polyfit(np.log(kk), np.log(ll), 1)[0]
    return float(np.clip(2.0 / max(slope, 1e-3), 0.5, 64.0))


def weyl_constant(n: int) -> float:
    """Leading Weyl coefficient c(n) = 4 pi^2 omega_n^{-2/n}."""
    omega = math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    return 4.0 * math.pi ** 2 * omega ** (-2.0 / n)


def counting_function(spectrum: Spectrum, lam: float) -> int:
    """Number of eigenvalues (with multiplicity) at or below lam."""
    return int(np.searchsorted(spectrum.values, lam, side="right"))
