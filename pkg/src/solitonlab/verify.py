"""The theorem suite.

Every sharp inequality in scope becomes a quantified check over an explicit
grid: ultracontractivity, the Gaussian off-diagonal bound with its extracted
constant A_emp, the curvature-corrected bound for the Laplace kernel, Green's
function bounds (B_emp), eigenvalue lower bounds with the partition-function
route, the entropy-energy (log-Sobolev) inequality, the critical Sobolev
inequality (C_emp), and the weighted-energy machinery with its explicit
iteration constants m(gamma), D0, delta.

Checks return a VerificationReport carrying the worst-case slack (or ratio),
any extracted empirical constants, per-grid-point rows for CSV export, and a
pass flag. Non-explicit constants are never assumed: the pass criteria for
them are finiteness plus stability under nested grid refinement.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from .entropy import RadialProfile, TrialFunction, random_trials
from .exceptions import KindMismatchError, TimeDomainError
from .kernels import (
    CylinderHeatKernel,
    DirichletRadialHeatKernel,
    EuclideanHeatKernel,
    GreenEvaluator,
    SphereHeatKernel,
)
from .quadrature import gaussian_cutoff, leggauss_ab, quad_ab
from .spaces import Point, SolitonSpace, sphere_area
from .spectral import (
    DiscretizedOperator,
    Spectrum,
    counting_function,
    partition_function,
    weyl_constant,
)

ANALYTIC_TOL = 1e-6  # default for closed-form and series-backed checks
FD_TOL = 1e-3        # default for finite-difference-backed checks


# ---------------------------------------------------------------------------
# reports and grids
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one theorem check over an explicit grid."""

    theorem_id: str
    space: str | None
    a: float | None
    grid: dict
    tolerance: float
    seed: int | None
    mode: str  # "slack" (worst >= -tol passes) or "ratio" (worst <= 1 + tol)
    worst_case_slack: float
    extracted_constants: dict = field(default_factory=dict)
    points: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        if self.mode == "ratio":
            return self.worst_case_slack <= 1.0 + self.tolerance
        return self.worst_case_slack >= -self.tolerance

    def to_dict(self, include_points: bool = False) -> dict:
        d = {
            "theorem_id": self.theorem_id,
            "space": self.space,
            "a": self.a,
            "grid": self.grid,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "mode": self.mode,
            "worst_case_slack": self.worst_case_slack,
            "extracted_constants": self.extracted_constants,
            "notes": list(self.notes),
            "passed": self.passed,
            "runtime_seconds": self.runtime_seconds,
        }
        if include_points:
            d["points"] = list(self.points)
        return d


@dataclass(frozen=True)
class PairGrid:
    """Point pairs with stable ids; nested under count refinement."""

    points: list
    pairs: list  # (i, j) indices into points
    labels: list

    def __len__(self):
        return len(self.pairs)


def pair_grid(space: SolitonSpace, count: int = 24, seed: int = 0) -> PairGrid:
    """Deterministic pair grid: diagonal, near and far pairs, then seeded
    random pairs. Growing ``count`` with the same seed extends the grid
    without disturbing the prefix, which makes refinement monotone.

    The deterministic prefix pins the structurally extreme configurations
    (near-diagonal, far separations, and the sphere-factor antipode, where
    conjugate-point focusing maximizes the weighted ratios), so extracted
    constants stabilize under refinement instead of drifting with the
    random sample.
    """
    pole = space.pole()
    max_d = math.pi * space.sphere_radius if space.kind == "sphere" else 8.0
    base_dist = [0.25, 1.0, 2.0, 4.0, 6.0]
    points = [pole] + [space.point_at_distance(min(d, 0.999 * max_d)) for d in base_dist]
    if space.kind == "sphere":
        points.append(space.point_at_distance(math.pi * space.sphere_radius))  # antipode
    if space.kind == "cylinder":
        r0 = space.sphere_radius
        for alpha in (math.pi / 2.0, 0.95 * math.pi, math.pi):
            v = np.zeros(space.n)
            v[0], v[1] = math.cos(alpha), math.sin(alpha)
            points.append(space.point(v, s=0.0))  # pure sphere-factor displacement
        points.append(space.point(np.eye(space.n)[0], s=4.0))  # pure line displacement
    pairs = [(0, 0)] + [(0, i) for i in range(1, len(points))]
    rng = np.random.default_rng(seed)
    while len(pairs) < count:
        p = space.random_point(rng)
        points.append(p)
        j = len(points) - 1
        i = int(rng.integers(0, j))
        pairs.append((i, j))
    pairs = pairs[:count]
    labels = [f"p{i}" for i in range(len(points))]
    return PairGrid(points, pairs, labels)


def time_grid(count: int = 40, lo: float = 1e-3, hi: float = 1e2) -> np.ndarray:
    return np.geomspace(lo, hi, count)


def refine_times(ts: np.ndarray) -> np.ndarray:
    """Insert log-midpoints; the result contains the original grid."""
    mids = np.sqrt(ts[:-1] * ts[1:])
    return np.sort(np.concatenate([ts, mids]))


def _timed(fn):
    start = time.perf_counter()
    report = fn()
    report.runtime_seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# kernel mass / semigroup quadratures (shared by the axiom check)
# ---------------------------------------------------------------------------


def kernel_mass(evaluator, x: Point, t: float) -> float:
    """Volume integral of H(x, ., t) by the reduced quadrature of the space."""
    space = evaluator.space
    n = space.n
    if isinstance(evaluator, EuclideanHeatKernel):
        rmax = gaussian_cutoff(math.sqrt(2.0 * t))
        val, _ = quad_ab(
            lambda r: sphere_area(n - 1) * r ** (n - 1) * evaluator.value_at_distance(r, t),
            0.0,
            rmax,
        )
        return val
    if isinstance(evaluator, SphereHeatKernel):
        r0 = space.sphere_radius
        u, w = leggauss_ab(400, 0.0, math.pi)
        vals, _ = evaluator.profile(np.cos(u), t)
        return float(np.sum(w * sphere_area(n - 1) * r0 ** n * np.sin(u) ** (n - 1) * vals))
    if isinstance(evaluator, CylinderHeatKernel):
        r0 = space.sphere_radius
        u, w = leggauss_ab(400, 0.0, math.pi)
        svals, _ = evaluator._factor.profile(np.cos(u), t)
        smass = float(np.sum(w * sphere_area(n - 2) * r0 ** (n - 1) * np.sin(u) ** (n - 2) * svals))
        smax = gaussian_cutoff(math.sqrt(2.0 * t)) + abs(x.s)
        line, _ = quad_ab(
            lambda z: (4.0 * math.pi * t) ** -0.5 * math.exp(-((z - x.s) ** 2) / (4.0 * t)),
            x.s - smax,
            x.s + smax,
        )
        return math.exp(-evaluator._aR * t) * smass * line
    if isinstance(evaluator, DirichletRadialHeatKernel):
        return evaluator.mass(t)
    raise KindMismatchError(f"no mass rule for evaluator {type(evaluator).__name__}")


def semigroup_defect(evaluator, x: Point, y: Point, t: float, s: float) -> float:
    """Relative defect of the composition identity at (x, y, t, s)."""
    space = evaluator.space
    n = space.n
    direct = evaluator(x, y, t + s) if not isinstance(evaluator, DirichletRadialHeatKernel) else None

    if isinstance(evaluator, EuclideanHeatKernel):
        comp = 1.0
        for i in range(n):
            xi, yi = x.vector[i], y.vector[i]
            width = math.sqrt(2.0 * max(t, s))
            lo = min(xi, yi) - gaussian_cutoff(width)
            hi = max(xi, yi) + gaussian_cutoff(width)
            peak = (s * xi + t * yi) / (t + s)  # product-bump location
            val, _ = quad_ab(
                lambda z: (4.0 * math.pi * t) ** -0.5 * math.exp(-((xi - z) ** 2) / (4.0 * t))
                * (4.0 * math.pi * s) ** -0.5 * math.exp(-((z - yi) ** 2) / (4.0 * s)),
                lo,
                hi,
                points=[xi, yi, peak],
            )
            comp *= val
        return abs(comp - direct) / abs(direct)

    if isinstance(evaluator, SphereHeatKernel):
        comp = _sphere_compose(evaluator, n, space.sphere_radius,
                               space.distance(x, y) / space.sphere_radius, t, s)
        return abs(comp - direct) / abs(direct)

    if isinstance(evaluator, CylinderHeatKernel):
        factor = evaluator._factor
        theta = math.acos(float(np.clip(np.dot(x.vector, y.vector), -1.0, 1.0)))
        sph = _sphere_compose(factor, n - 1, space.sphere_radius, theta, t, s)
        width = math.sqrt(2.0 * max(t, s))
        lo = min(x.s, y.s) - gaussian_cutoff(width)
        hi = max(x.s, y.s) + gaussian_cutoff(width)
        peak = (s * x.s + t * y.s) / (t + s)  # narrow product bump at far separations
        line, _ = quad_ab(
            lambda z: (4.0 * math.pi * t) ** -0.5 * math.exp(-((x.s - z) ** 2) / (4.0 * t))
            * (4.0 * math.pi * s) ** -0.5 * math.exp(-((z - y.s) ** 2) / (4.0 * s)),
            lo,
            hi,
            points=[x.s, y.s, peak],
        )
        comp = math.exp(-evaluator._aR * (t + s)) * sph * line
        return abs(comp - direct) / abs(direct)

    if isinstance(evaluator, DirichletRadialHeatKernel):
        # single-source radial kernel: the identity is checked on the diagonal;
        # Simpson over the nodes, since the cell-volume weights are only a
        # second-order quadrature
        from scipy.integrate import simpson

        op = evaluator.op
        ut = evaluator.profile(t)
        us = evaluator.profile(s)
        r = np.arange(op.m + 1) * op.h
        integrand = ut * us * sphere_area(n - 1) * r ** (n - 1)
        comp = float(simpson(integrand, x=r))
        direct = evaluator(0.0, t + s)
        return abs(comp - direct) / abs(direct)

    raise KindMismatchError(f"no semigroup rule for evaluator {type(evaluator).__name__}")


def _sphere_compose(kernel: SphereHeatKernel, n: int, r0: float, Theta: float,
                    t: float, s: float) -> float:
    """Quadrature of the composition over the sphere (zonal x azimuth)."""
    ug, wg = leggauss_ab(170, 0.0, math.pi)
    vg, qg = leggauss_ab(170, 0.0, math.pi)
    U, V = np.meshgrid(ug, vg, indexing="ij")
    cos_zy = np.cos(U) * math.cos(Theta) + np.sin(U) * math.sin(Theta) * np.cos(V)
    k1, _ = kernel.profile(np.cos(ug), t)
    k2, _ = kernel.profile(cos_zy, s)
    if n == 2:
        # z = (u, v) polar coordinates about x; measure r0^2 sin(u) du dv, v in [0, 2 pi)
        inner = np.sum(qg * k2, axis=1) * 2.0  # azimuthal symmetry: double the [0, pi] half
        return float(np.sum(wg * k1 * np.sin(ug) * inner) * r0 ** 2)
    # general n: measure r0^n sin^{n-1}(u) du * A_{n-2} sin^{n-2}(v) dv
    inner = np.sum(qg * np.sin(vg) ** (n - 2) * k2, axis=1)
    return float(np.sum(wg * k1 * np.sin(ug) ** (n - 1) * inner)
                 * r0 ** n * sphere_area(n - 2))


# ---------------------------------------------------------------------------
# kernel axioms
# ---------------------------------------------------------------------------


def kernel_axioms(evaluator, samples: int = 6, seed: int = 0,
                  tol: float | None = None) -> VerificationReport:
    """Symmetry, positivity, mass <= 1, and the semigroup identity.

    Failures are reported, not raised. The tolerance defaults to the method
    class of the evaluator (analytic vs finite differences).
    """

    def run():
        space = evaluator.space
        is_fd = isinstance(evaluator, DirichletRadialHeatKernel)
        tol_eff = tol if tol is not None else (FD_TOL if is_fd else ANALYTIC_TOL)
        rng = np.random.default_rng(seed)
        rows = []
        worst = math.inf

        ts = [0.05, 0.3, 1.0]
        notes = []
        if is_fd:
            ts = [t for t in ts if t > evaluator.t0 * 4] or [8.0 * evaluator.t0]
            sym_viol = 0.0
            pos_viol = 0.0
            for t in ts:
                u = evaluator.profile(t)
                pos_viol = max(pos_viol, max(0.0, -float(u.min())))
            mass_viol = max(max(0.0, evaluator.mass(t) - 1.0) for t in ts)
            semi_viol = max(semigroup_defect(evaluator, None, None, t, t / 2) for t in ts)
        else:
            pairs = [(space.random_point(rng), space.random_point(rng)) for _ in range(samples)]
            sym_viol = 0.0
            pos_viol = 0.0
            for (px, py) in pairs:
                for t in ts:
                    hxy, err = evaluator.evaluate(px, py, t)
                    hyx, _ = evaluator.evaluate(py, px, t)
                    sym_viol = max(sym_viol, abs(hxy - hyx))
                    pos_viol = max(pos_viol, -min(hxy + err, 0.0))
            mass_viol = max(
                max(0.0, kernel_mass(evaluator, px, t) - 1.0)
                for (px, _) in pairs[:2]
                for t in ts
            )
            # a moderate deterministic pair keeps the identity resolvable even
            # when the random pairs land in the far-tail noise of the series
            semi_pairs = [(space.pole(), space.point_at_distance(1.0))] + pairs[:2]
            semi_viol = 0.0
            skipped = 0
            for (px, py) in semi_pairs:
                for t in ts[:2]:
                    direct, derr = evaluator.evaluate(px, py, 1.5 * t)
                    # the composition quadrature carries a few orders more
                    # noise than a pointwise evaluation; skip where the
                    # identity cannot be certified at the 1e-3 tolerance
                    if direct <= 1e3 * derr:
                        skipped += 1
                        continue
                    semi_viol = max(semi_viol, semigroup_defect(evaluator, px, py, t, t / 2))
            if skipped:
                notes.append(f"{skipped} semigroup samples below the noise floor (skipped)")

        checks = [
            ("symmetry", sym_viol, 1e-10),
            ("positivity", pos_viol, tol_eff),
            ("mass", mass_viol, tol_eff),
            ("semigroup", semi_viol, 1e-3),
        ]
        for name, viol, limit in checks:
            rows.append({"check": name, "violation": viol, "limit": limit,
                         "slack": limit - viol})
            worst = min(worst, limit - viol)
        return VerificationReport(
            theorem_id="kernel-axioms",
            space=space.token,
            a=getattr(evaluator, "a", None),
            grid={"samples": samples, "times": ts},
            tolerance=0.0,
            seed=seed,
            mode="slack",
            worst_case_slack=worst,
            points=rows,
            notes=notes,
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# ultracontractivity and Gaussian bound
# ---------------------------------------------------------------------------


def _guarded_exp_product(v: float, shift: float) -> float:
    if v <= 0.0:
        return 0.0
    lr = math.log(v) + shift
    return math.exp(lr) if lr < 700.0 else math.inf


def _ratio_rows(evaluator, mu: float, grid: PairGrid, times, log_weight) -> list:
    """Rows of the ratio H * exp(mu + (n/2) ln(4 pi t) + log_weight(d, t)).

    Computed in log space since far pairs at small times underflow the
    kernel while the weight overflows. Grid points where the kernel value
    sits inside the method's own noise floor AND the noise amplified by the
    weight could not certify the bound are marked unresolved (ratio NaN);
    deep-tail series values are pure cancellation noise there and would
    otherwise poison the extracted constants.
    """
    space = evaluator.space
    n = space.n
    rows = []
    for (i, j) in grid.pairs:
        x, y = grid.points[i], grid.points[j]
        d = space.distance(x, y)
        for t in times:
            h, err = evaluator.evaluate(x, y, float(t))
            shift = mu + 0.5 * n * math.log(4.0 * math.pi * t) + log_weight(d, float(t))
            if h > 10.0 * err:
                ratio = _guarded_exp_product(h, shift)
                resolved = True
            else:
                noise_ratio = _guarded_exp_product(max(err, abs(h)), shift)
                if noise_ratio <= 0.5:
                    ratio = noise_ratio  # bound certified despite the noise
                    resolved = True
                else:
                    ratio = math.nan
                    resolved = False
            rhs = math.exp(-min(max(shift, -700.0), 700.0))
            rows.append({
                "x_id": grid.labels[i], "y_id": grid.labels[j], "t": float(t),
                "d": d, "lhs": h, "rhs": rhs, "slack": rhs - h, "ratio": ratio,
                "resolved": resolved,
            })
    return rows


def _max_resolved_ratio(rows) -> tuple[float, int]:
    vals = [r["ratio"] for r in rows if r["resolved"]]
    unresolved = sum(1 for r in rows if not r["resolved"])
    return (max(vals) if vals else math.inf), unresolved


def ultracontractivity(evaluator, mu: float, grid: PairGrid | None = None,
                       times=None, tol: float = ANALYTIC_TOL,
                       seed: int = 0) -> VerificationReport:
    """On-diagonal-type bound H <= e^{-mu} (4 pi t)^{-n/2} over the grid.

    On the gaussian space the ratio must equal one exactly on the diagonal
    (the sharp case) and stay strictly below one off it; both facts are
    recorded in the notes and gate the check there.
    """

    def run():
        space = evaluator.space
        g = grid or pair_grid(space, seed=seed)
        ts = times if times is not None else time_grid()
        rows = _ratio_rows(evaluator, mu, g, ts, lambda d, t: 0.0)
        worst, unresolved = _max_resolved_ratio(rows)
        arg = max((r for r in rows if r["resolved"]), key=lambda r: r["ratio"])
        notes = []
        if unresolved:
            notes.append(f"{unresolved} grid points below the method noise floor (excluded)")
        if space.kind == "gaussian":
            diag = [r for r in rows if r["d"] == 0.0]
            off = [r for r in rows if r["d"] > 0.0]
            diag_dev = max(abs(r["ratio"] - 1.0) for r in diag) if diag else math.inf
            off_ok = all(r["ratio"] < 1.0 for r in off)
            notes.append(f"diagonal ratio deviation from 1: {diag_dev:.2e}")
            notes.append("off-diagonal ratios strictly below 1: " + ("yes" if off_ok else "NO"))
            if diag_dev > 1e-13 or not off_ok:
                worst = math.inf  # sharpness structure broken
        return VerificationReport(
            theorem_id="ultracontractivity",
            space=space.token,
            a=getattr(evaluator, "a", None),
            grid={"pairs": len(g), "times": len(ts)},
            tolerance=tol,
            seed=seed,
            mode="ratio",
            worst_case_slack=worst,
            extracted_constants={
                "max_ratio": worst,
                "argmax": {"x_id": arg["x_id"], "y_id": arg["y_id"], "t": arg["t"]},
            },
            points=rows,
            notes=notes,
        )

    return _timed(run)


def weighted_l2_kernel_integral(evaluator, x: Point, t: float, D: float) -> float:
    """E_D(x, t): integral of H(x, z, t)^2 exp(d(x,z)^2 / (D t)) dv(z)."""
    space = evaluator.space
    n = space.n
    if isinstance(evaluator, EuclideanHeatKernel):
        width = math.sqrt(t * D / max(D - 2.0, 1e-9))
        rmax = gaussian_cutoff(width)
        val, _ = quad_ab(
            lambda r: sphere_area(n - 1) * r ** (n - 1)
            * evaluator.value_at_distance(r, t) ** 2 * math.exp(r * r / (D * t)),
            0.0,
            rmax,
        )
        return val
    if isinstance(evaluator, SphereHeatKernel):
        r0 = space.sphere_radius
        u, w = leggauss_ab(400, 0.0, math.pi)
        vals, _ = evaluator.profile(np.cos(u), t)
        weight = np.exp(np.minimum((r0 * u) ** 2 / (D * t), 700.0))
        return float(np.sum(w * sphere_area(n - 1) * r0 ** n * np.sin(u) ** (n - 1)
                            * vals ** 2 * weight))
    if isinstance(evaluator, CylinderHeatKernel):
        r0 = space.sphere_radius
        u, w = leggauss_ab(400, 0.0, math.pi)
        svals, _ = evaluator._factor.profile(np.cos(u), t)
        sweight = np.exp(np.minimum((r0 * u) ** 2 / (D * t), 700.0))
        spart = float(np.sum(w * sphere_area(n - 2) * r0 ** (n - 1) * np.sin(u) ** (n - 2)
                             * svals ** 2 * sweight))
        width = math.sqrt(t * D / max(D - 2.0, 1e-9))
        smax = gaussian_cutoff(width)
        line, _ = quad_ab(
            lambda z: ((4.0 * math.pi * t) ** -0.5 * math.exp(-z * z / (4.0 * t))) ** 2
            * math.exp(z * z / (D * t)),
            -smax,
            smax,
        )
        return math.exp(-2.0 * evaluator._aR * t) * spart * line
    raise KindMismatchError("weighted integral needs a closed-form or series evaluator")


def gaussian_bound(evaluator, mu: float, c: float, grid: PairGrid | None = None,
                   times=None, tol: float = ANALYTIC_TOL, seed: int = 0,
                   stability: float = 0.05) -> VerificationReport:
    """Off-diagonal bound with weight exp(-d^2/(c t)) and extracted A_emp(c).

    A_emp is the grid maximum of H (4 pi t)^{n/2} e^mu e^{d^2/(ct)}; the pass
    criteria are finiteness and stability under nested refinement (pair count
    doubled, log-midpoint times inserted). A splitting cross-check bounds H
    by the weighted L2 integrals of both endpoints.
    """
    if c <= 4.0:
        raise ValueError("the off-diagonal weight requires c > 4")

    def run():
        space = evaluator.space
        g = grid or pair_grid(space, seed=seed)
        ts = np.asarray(times) if times is not None else time_grid()
        rows = _ratio_rows(evaluator, mu, g, ts,
                           lambda d, t: d * d / (c * t))
        a_base, unresolved = _max_resolved_ratio(rows)
        g2 = pair_grid(space, count=2 * len(g), seed=seed)
        rows2 = _ratio_rows(evaluator, mu, g2, refine_times(ts),
                            lambda d, t: d * d / (c * t))
        a_ref, unresolved2 = _max_resolved_ratio(rows2)

        # splitting cross-check: H <= sqrt(E_D(x, t/2) E_D(y, t/2)) e^{-d^2/(2 D t)}
        D = c / 2.0
        split_worst = 0.0
        for (i, j) in g.pairs[:4]:
            x, y = g.points[i], g.points[j]
            d = space.distance(x, y)
            for t in (float(ts[len(ts) // 2]), float(ts[-1])):
                ex = weighted_l2_kernel_integral(evaluator, x, t / 2.0, D)
                ey = weighted_l2_kernel_integral(evaluator, y, t / 2.0, D)
                bound = math.sqrt(ex * ey) * math.exp(-d * d / (2.0 * D * t))
                split_worst = max(split_worst, evaluator(x, y, t) / bound)
        notes = [f"A_emp base {a_base:.6g}, refined {a_ref:.6g}",
                 f"splitting cross-check max ratio {split_worst:.6g}"]
        if unresolved or unresolved2:
            notes.append(f"unresolved noise-floor points: {unresolved} base, {unresolved2} refined")
        worst = a_ref / a_base if a_base > 0 else math.inf
        if not math.isfinite(a_ref) or split_worst > 1.0 + 10 * tol:
            worst = math.inf
        return VerificationReport(
            theorem_id="gaussian-bound",
            space=space.token,
            a=getattr(evaluator, "a", None),
            grid={"pairs": len(g), "times": len(ts), "c": c},
            tolerance=stability,
            seed=seed,
            mode="ratio",
            worst_case_slack=worst,
            extracted_constants={"A_emp": a_ref, "A_emp_base": a_base,
                                 "splitting_max_ratio": split_worst},
            points=rows,
            notes=notes,
        )

    return _timed(run)


def cr_bound(laplace_evaluator, mu: float, C_R: float, grid: PairGrid | None = None,
             times=None, tol: float = ANALYTIC_TOL, seed: int = 0) -> VerificationReport:
    """Laplace-kernel bound with the curvature growth factor exp(C_R t / 6).

    Also probes (without gating) whether the smaller exponent C_R t / 12
    holds empirically, since sharpness of 1/6 is not claimed anywhere.
    """
    if getattr(laplace_evaluator, "a", 0.0) != 0.0:
        raise ValueError("the curvature-corrected bound applies to the Laplace kernel (a = 0)")

    def run():
        space = laplace_evaluator.space
        g = grid or pair_grid(space, seed=seed)
        ts = np.asarray(times) if times is not None else time_grid(hi=50.0)
        rows = _ratio_rows(laplace_evaluator, mu, g, ts,
                           lambda d, t: -C_R * t / 6.0)
        worst, unresolved = _max_resolved_ratio(rows)
        rows12 = _ratio_rows(laplace_evaluator, mu, g, ts,
                             lambda d, t: -C_R * t / 12.0)
        worst12, _ = _max_resolved_ratio(rows12)
        notes = [
            f"exploratory exponent C_R t/12: max ratio {worst12:.6g} "
            + ("(holds empirically)" if worst12 <= 1.0 + tol else "(fails empirically)")
        ]
        if unresolved:
            notes.append(f"{unresolved} grid points below the method noise floor (excluded)")
        return VerificationReport(
            theorem_id="cr-bound",
            space=space.token,
            a=0.0,
            grid={"pairs": len(g), "times": len(ts), "C_R": C_R},
            tolerance=tol,
            seed=seed,
            mode="ratio",
            worst_case_slack=worst,
            extracted_constants={"max_ratio": worst, "max_ratio_exponent_12": worst12},
            points=rows,
            notes=notes,
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# Green's function bound
# ---------------------------------------------------------------------------


def green_bound(green_evaluator: GreenEvaluator, mu: float,
                distances=None, tol: float = ANALYTIC_TOL,
                stability: float = 0.05, seed: int = 0) -> VerificationReport:
    """B_emp = max G(x, y) d^{n-2} e^mu over a separation grid.

    Pass requires finiteness and refinement stability; the small-separation
    power law (log-log slope 2 - n) is fitted and recorded.
    """

    def run():
        space = green_evaluator.space
        n = space.n
        if distances is None:
            if space.kind == "sphere":
                ds = space.sphere_radius * np.geomspace(0.02, 0.9 * math.pi, 8)
            else:
                ds = np.geomspace(0.25, 6.0, 8)
        else:
            ds = np.asarray(distances, dtype=float)
        pole = space.pole()

        def b_rows(dd):
            rows = []
            for d in dd:
                y = space.point_at_distance(float(d))
                gval, gerr = green_evaluator.evaluate(pole, y)
                rows.append({"x_id": "p0", "y_id": f"d={d:.6g}", "t": math.nan,
                             "d": float(d), "lhs": gval,
                             "rhs": math.exp(-mu) / d ** (n - 2),
                             "slack": math.exp(-mu) / d ** (n - 2) - gval,
                             "ratio": gval * d ** (n - 2) * math.exp(mu),
                             "err": gerr})
            return rows

        rows = b_rows(ds)
        b_base = max(r["ratio"] for r in rows)
        mids = np.sqrt(ds[:-1] * ds[1:])
        rows_ref = rows + b_rows(mids)
        b_ref = max(r["ratio"] for r in rows_ref)

        # small-separation slope of log G vs log d
        small = sorted(rows_ref, key=lambda r: r["d"])[:6]
        xs = np.log([r["d"] for r in small])
        ys = np.log([r["lhs"] for r in small])
        slope = float(np.polyfit(xs, ys, 1)[0])
        notes = [f"B_emp base {b_base:.6g}, refined {b_ref:.6g}",
                 f"small-separation log-log slope {slope:.4f} (expected {2 - n})"]
        worst = b_ref / max(b_base, 1e-300)
        if not math.isfinite(b_ref):
            worst = math.inf
        return VerificationReport(
            theorem_id="green-bound",
            space=space.token,
            a=green_evaluator.a,
            grid={"distances": [float(d) for d in ds]},
            tolerance=stability,
            seed=seed,
            mode="ratio",
            worst_case_slack=worst,
            extracted_constants={"B_emp": b_ref, "B_emp_base": b_base, "slope": slope},
            points=rows_ref,
            notes=notes,
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# eigenvalue bound
# ---------------------------------------------------------------------------


def eigenvalue_bound(spectrum: Spectrum, mu: float, V: float, k_max: int, *,
                     n: int, times=None, tol: float = ANALYTIC_TOL,
                     seed: int = 0) -> VerificationReport:
    """lambda_k >= (2 n pi / e) (k e^mu / V)^{2/n} plus the partition route.

    Also verified: the partition-function inequality on a time grid, the
    minimizing time t0 = n / (2 lambda) of e^{lambda t} (4 pi t)^{-n/2} by
    sampling, and the Weyl ratio window for k in [200, 400] when available.
    """

    def run():
        lam = spectrum.values
        if len(lam) < k_max:
            raise ValueError("spectrum truncation shorter than k_max")
        ts = np.asarray(times) if times is not None else time_grid()
        rows = []
        worst = math.inf
        coef = 2.0 * n * math.pi / math.e
        for k in range(1, k_max + 1):
            bound = coef * (k * math.exp(mu) / V) ** (2.0 / n)
            lk = float(lam[k - 1])
            rows.append({"x_id": f"k={k}", "y_id": "", "t": math.nan,
                         "lhs": bound, "rhs": lk, "slack": lk - bound,
                         "ratio": bound / lk if lk > 0 else math.inf})
            worst = min(worst, lk - bound)

        part_worst = math.inf
        part_unresolved = 0
        for t in ts:
            z = partition_function(spectrum, float(t))
            rhs = math.exp(-mu) * V * (4.0 * math.pi * t) ** (-n / 2.0)
            # the truncated spectrum certifies the sum only while its tail
            # estimate is negligible against the partial sum
            if z.tail_bound > 1e-3 * max(z.value, 1e-300):
                part_unresolved += 1
                rows.append({"x_id": "partition", "y_id": "", "t": float(t),
                             "lhs": z.total, "rhs": rhs, "slack": math.nan,
                             "ratio": math.nan})
                continue
            slack = rhs - z.total
            part_worst = min(part_worst, slack / rhs)
            rows.append({"x_id": "partition", "y_id": "", "t": float(t),
                         "lhs": z.total, "rhs": rhs, "slack": slack,
                         "ratio": z.total / rhs})

        # the chained bound rests on minimizing e^{lambda t}(4 pi t)^{-n/2} at n/(2 lambda)
        t0_ok = True
        for k in (1, max(1, k_max // 2), k_max):
            lk = float(lam[k - 1])
            t0 = n / (2.0 * lk)
            g0 = math.exp(lk * t0) * (4.0 * math.pi * t0) ** (-n / 2.0)
            for fac in (0.5, 0.9, 1.1, 2.0):
                gt = math.exp(lk * t0 * fac) * (4.0 * math.pi * t0 * fac) ** (-n / 2.0)
                if gt < g0 * (1.0 - 1e-12):
                    t0_ok = False

        notes = []
        if part_unresolved:
            notes.append(f"{part_unresolved} partition times beyond the spectrum "
                         "truncation (excluded)")
        if k_max >= 400:
            cw = weyl_constant(n)
            ratios = [float(lam[k - 1]) / (cw * (k / V) ** (2.0 / n)) for k in range(200, 401)]
            notes.append(f"Weyl ratio over k in [200,400]: [{min(ratios):.4f}, {max(ratios):.4f}]")
            count_ratios = [
                counting_function(spectrum, float(lam[k - 1])) * cw ** (n / 2.0) /
                (V * float(lam[k - 1]) ** (n / 2.0)) for k in (200, 300, 400)
            ]
            notes.append(f"counting ratios at k=200,300,400: {[round(c, 4) for c in count_ratios]}")
            # the [0.9, 1.1] window is a dimension-two statement; higher
            # dimensions have wider multiplicity blocks and only get recorded
            weyl_ok = n != 2 or (0.9 <= min(ratios) and max(ratios) <= 1.1)
        else:
            weyl_ok = True
        if not t0_ok:
            worst = -math.inf
        if not weyl_ok:
            notes.append("Weyl window violated")
            worst = -math.inf
        worst = min(worst, part_worst)
        return VerificationReport(
            theorem_id="eigenvalue-bound",
            space=None,
            a=spectrum.a,
            grid={"k_max": k_max, "times": len(ts)},
            tolerance=tol,
            seed=seed,
            mode="slack",
            worst_case_slack=worst,
            extracted_constants={"min_eigen_slack": min(r["slack"] for r in rows
                                                        if r["x_id"].startswith("k=")),
                                 "min_partition_relative_slack": part_worst},
            points=rows,
            notes=notes,
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# entropy-energy and Sobolev inequalities
# ---------------------------------------------------------------------------


def log_sobolev_slack(space: SolitonSpace, mu: float, trial: TrialFunction,
                      tau: float) -> float:
    """Slack of the entropy-energy inequality for one normalized trial."""
    energy = 4.0 * trial.int_grad2() + trial.int_R_phi2()
    entropy_term = trial.int_entropy()
    return tau * energy - (mu + space.n + 0.5 * space.n * math.log(4.0 * math.pi * tau)) - entropy_term


def sharp_gaussian_trial(space: SolitonSpace, tau: float) -> TrialFunction:
    """The extremal Gaussian trial phi^2 = (4 pi tau)^{-n/2} e^{-|x|^2/(4 tau)}."""
    if space.kind != "gaussian":
        raise KindMismatchError("the extremal trial lives on the gaussian space")
    sigma = 2.0 * math.sqrt(tau)
    return TrialFunction(space, space.pole(),
                         RadialProfile("gaussian", sigma, gaussian_cutoff(sigma)))


def log_sobolev(space: SolitonSpace, mu: float, trials=100, tau_grid=None,
                seed: int = 0, tol: float = ANALYTIC_TOL) -> VerificationReport:
    """Entropy-energy inequality over random trials and a tau grid."""

    def run():
        taus = np.asarray(tau_grid) if tau_grid is not None else np.geomspace(1e-2, 10.0, 20)
        trial_list = trials if isinstance(trials, list) else random_trials(space, trials, seed)
        if space.kind == "gaussian":
            trial_list = trial_list + [sharp_gaussian_trial(space, 1.0)]
        rows = []
        worst = math.inf
        for idx, tr in enumerate(trial_list):
            energy = 4.0 * tr.int_grad2() + tr.int_R_phi2()
            entropy_term = tr.int_entropy()
            for tau in taus:
                slack = (tau * energy
                         - (mu + space.n + 0.5 * space.n * math.log(4.0 * math.pi * tau))
                         - entropy_term)
                rows.append({"x_id": f"trial{idx}", "y_id": "", "t": float(tau),
                             "lhs": entropy_term, "rhs": tau * energy - slack + entropy_term,
                             "slack": slack, "ratio": math.nan})
                worst = min(worst, slack)
        return VerificationReport(
            theorem_id="log-sobolev",
            space=space.token,
            a=None,
            grid={"trials": len(trial_list), "taus": len(taus)},
            tolerance=tol,
            seed=seed,
            mode="slack",
            worst_case_slack=worst,
            extracted_constants={"min_slack": worst},
            points=rows,
        )

    return _timed(run)


def _sobolev_base_trials(space: SolitonSpace, count: int, seed: int) -> list:
    """Deterministic near-extremal trials plus seeded random bumps."""
    n = space.n
    base = []
    if space.kind == "gaussian":
        for scale in (1.0, 2.0):
            base.append(TrialFunction(space, space.pole(),
                                      RadialProfile("talenti", scale, 40.0 * scale,
                                                    power=(n - 2) / 2.0)))
    return base + random_trials(space, count, seed)


def sobolev(space: SolitonSpace, mu: float, a: float = 0.25, trials: int = 50,
            seed: int = 0, tol: float = ANALYTIC_TOL,
            stability: float = 0.05) -> VerificationReport:
    """Critical Sobolev quotient with extracted constant C_emp (n >= 3).

    C_emp is the maximum over trials of
    ||u||_{2n/(n-2)}^2 / (e^{-2 mu/n} integral(|grad u|^2 + a R u^2));
    pass requires finiteness, refinement stability, and dilation invariance
    of the quotient on the gaussian space.
    """
    if space.n < 3:
        raise ValueError("the critical Sobolev exponent needs n >= 3")
    if a < 0.25:
        raise ValueError("the curvature term requires a >= 1/4")

    def run():
        n = space.n
        p_crit = 2.0 * n / (n - 2.0)
        damp = math.exp(-2.0 * mu / n)

        def quotient(tr):
            num = tr.int_power(p_crit) ** ((n - 2.0) / n)
            den = damp * (tr.int_grad2() + a * tr.int_R_phi2())
            return num / den

        base_list = _sobolev_base_trials(space, trials, seed)
        rows = [{"x_id": f"trial{i}", "y_id": "", "t": math.nan,
                 "lhs": quotient(tr), "rhs": math.nan, "slack": math.nan,
                 "ratio": quotient(tr)} for i, tr in enumerate(base_list)]
        c_base = max(r["ratio"] for r in rows)
        ref_list = _sobolev_base_trials(space, 2 * trials, seed)
        c_ref = max(quotient(tr) for tr in ref_list)

        notes = [f"C_emp base {c_base:.6g}, refined {c_ref:.6g}"]
        dilation_dev = 0.0
        if space.kind == "gaussian":
            tr = base_list[0]
            q0 = quotient(tr)
            for lam in (0.5, 2.0):
                dilation_dev = max(dilation_dev, abs(quotient(tr.dilated(lam)) - q0) / q0)
            notes.append(f"dilation invariance deviation {dilation_dev:.2e}")
        worst = c_ref / max(c_base, 1e-300)
        if not math.isfinite(c_ref) or dilation_dev > 1e-6:
            worst = math.inf
        return VerificationReport(
            theorem_id="sobolev",
            space=space.token,
            a=a,
            grid={"trials": len(base_list)},
            tolerance=stability,
            seed=seed,
            mode="ratio",
            worst_case_slack=worst,
            extracted_constants={"C_emp": c_ref, "C_emp_base": c_base,
                                 "dilation_deviation": dilation_dev},
            points=rows,
            notes=notes,
        )

    return _timed(run)


# ---------------------------------------------------------------------------
# weighted-energy machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrigoryanConstants:
    gamma: float
    D: float
    m: float        # inf_k gamma^{k+1} / ((gamma-1)(k+2)(k+3)^4)
    k_argmin: int
    D0: float       # 2 / m
    delta: float    # (D-2)/(5 D0 - 2) / gamma, capped at the D >= 5 D0 value


def grigoryan_constants(gamma: float, D: float) -> GrigoryanConstants:
    """Explicit iteration constants of the weighted-energy argument.

    The scan over k stops provably: the term ratio gamma (k+2)(k+3)^3/(k+4)^4
    is increasing in k, so once it exceeds one the minimum seen is global.
    """
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    if D <= 2.0:
        raise ValueError("D must exceed 2")
    best = math.inf
    best_k = 0
    k = 0
    while True:
        term = gamma ** (k + 1) / ((gamma - 1.0) * (k + 2) * (k + 3) ** 4)
        if term < best:
            best, best_k = term, k
        ratio = gamma * (k + 2) * (k + 3) ** 3 / (k + 4) ** 4
        if ratio > 1.0 and term > 4.0 * best:
            break
        k += 1
        if k > 100000:  # pragma: no cover - gamma just above 1 converges long before
            break
    d0 = 2.0 / best
    delta = min((D - 2.0) / (5.0 * d0 - 2.0), 1.0) / gamma
    return GrigoryanConstants(gamma, D, best, best_k, d0, delta)


class GrigoryanProbe:
    """Dirichlet finite-difference solution with its weighted integrals.

    Wraps a radial operator on a truncated gaussian ball, marched with
    Crank-Nicolson from either the exact kernel profile at t0 (source set
    K = {origin}) or caller-supplied initial data. I(t), E_D(t) and the
    tail mass I_R(t) are discrete volume integrals over the grid.
    """

    def __init__(self, op: DiscretizedOperator, t0: float, data0: np.ndarray | None = None,
                 dt: float = 5e-4, D: float = 10.0, gamma: float = 2.0):
        self.op = op
        self.n = op.space.n
        self.t0 = float(t0)
        self.dt = float(dt)
        self.D = float(D)
        self.gamma = float(gamma)
        self._kernel = None
        if data0 is None:
            # source set K = {origin}: delegate to the accurate kernel march;
            # keep several cells inside the squared bootstrap width
            self.t0 = max(self.t0, (2.5 * op.h) ** 2)
            self._kernel = DirichletRadialHeatKernel(op, self.t0, time_tol=1e-4,
                                                     r_accuracy=3.5,
                                                     kappa_mode="diffusive")
            self._cache = None
        else:
            self._cache = {self.t0: np.asarray(data0, dtype=float)}
        self._lock = threading.Lock()

    def sharp_allowance(self, t: float) -> float:
        """Relative method-error scale for equality-sharp comparisons.

        The compact fourth-order march keeps kernel functionals near 1e-4;
        the second-order fallback (dimensions without the pure-1D reduction)
        carries a frozen early-march bias of order h^2 / t0.
        """
        if self._kernel is not None and self._kernel._numerov:
            return 1e-4
        return 0.25 * self.op.h ** 2 / self.t0

    def state(self, t: float) -> np.ndarray:
        if self._kernel is not None:
            return self._kernel.profile(t)[: self.op.m]
        if t < self.t0:
            raise TimeDomainError("probe time precedes the bootstrap")
        with self._lock:
            return self._state_locked(t)

    def _state_locked(self, t: float) -> np.ndarray:
        if t in self._cache:
            return self._cache[t]
        t_from = max(s for s in self._cache if s <= t)
        w = self._cache[t_from].copy()
        op = self.op
        from scipy.linalg import solve_banded

        t_cur = t_from
        ab = np.zeros((3, op.m))
        while t_cur < t - 1e-15 * max(t, 1.0):
            # grade the step near the start: solutions bootstrapped from
            # sharp data evolve on the timescale t itself
            dt = min(self.dt, max(t_cur / 6.0, 1e-6), t - t_cur)
            ab[0, 1:] = 0.5 * dt * op.upper
            ab[1, :] = 1.0 + 0.5 * dt * op.diag
            ab[2, :-1] = 0.5 * dt * op.lower
            rhs = w - 0.5 * dt * op.apply(w)
            w = solve_banded((1, 1), ab, rhs)
            t_cur += dt
        self._cache[t] = w
        return w

    def _integrate(self, values: np.ndarray) -> float:
        # composite Simpson over the nodes (Dirichlet zero appended); the
        # cell-volume weights of the operator are only second order as a
        # quadrature and would bias the sharp hypothesis comparisons
        from scipy.integrate import simpson

        op = self.op
        r = np.append(op.r, op.R_max)
        vals = np.append(values, 0.0) * sphere_area(self.n - 1) * r ** (self.n - 1)
        return float(simpson(vals, x=r))

    def I(self, t: float) -> float:
        u = self.state(t)
        return self._integrate(u * u)

    def E_D(self, t: float) -> float:
        u = self.state(t)
        xi = np.minimum(self.op.r ** 2 / (self.D * t), 700.0)
        return self._integrate(u * u * np.exp(xi))

    def I_R(self, t: float, R: float) -> float:
        u = self.state(t)
        mask = self.op.r > R
        return self._integrate(np.where(mask, u * u, 0.0))

    def weighted_energy(self, t: float, cap_radius: float, s: float) -> float:
        """Integral of u^2 exp(xi) with xi = dcap^2 / (2 (t - s)), s > t."""
        if s <= t:
            raise ValueError("the weight needs s > t")
        u = self.state(t)
        dcap = np.maximum(cap_radius - self.op.r, 0.0)
        xi = dcap ** 2 / (2.0 * (t - s))
        return self._integrate(u * u * np.exp(xi))


def energy_monotonicity(op: DiscretizedOperator, s: float, trials: int = 20,
                        seed: int = 0, cap_radius: float = 2.0,
                        t0: float = 0.02, times=None, dt: float = 5e-4,
                        tol: float = ANALYTIC_TOL) -> VerificationReport:
    """The weighted energy with the space-time weight is non-increasing.

    Checked as discrete time differences for seeded random Dirichlet initial
    data (smooth bump combinations vanishing at the boundary), normalized by
    the initial energy.
    """

    def run():
        ts = np.asarray(times) if times is not None else np.linspace(t0, 0.8 * s, 14)
        if ts[-1] >= s:
            raise ValueError("sampled times must stay below s")
        rng = np.random.default_rng(seed)
        rows = []
        worst = math.inf
        r = op.r
        taper = np.clip(1.0 - (r / op.R_max) ** 2, 0.0, None) ** 2
        for trial in range(trials):
            k = rng.integers(2, 6)
            data = np.zeros_like(r)
            for _ in range(k):
                center = rng.uniform(0.0, 0.7 * op.R_max)
                width = rng.uniform(0.2, 1.2)
                data += rng.normal(0, 1) * np.exp(-((r - center) ** 2) / (2 * width ** 2))
            data *= taper
            probe = GrigoryanProbe(op, ts[0], data0=data, dt=dt)
            energies = [probe.weighted_energy(float(t), cap_radius, s) for t in ts]
            e0 = energies[0]
            diffs = np.diff(energies) / max(e0, 1e-300)
            viol = float(max(0.0, diffs.max()))
            rows.append({"x_id": f"trial{trial}", "y_id": "", "t": math.nan,
                         "lhs": viol, "rhs": 0.0, "slack": -viol, "ratio": math.nan})
            worst = min(worst, -viol)
        return VerificationReport(
            theorem_id="energy-monotonicity",
            space=op.space.token,
            a=op.a,
            grid={"trials": trials, "times": [float(t) for t in ts],
                  "cap_radius": cap_radius, "s": s, "m": op.m, "R_max": op.R_max},
            tolerance=tol,
            seed=seed,
            mode="slack",
            worst_case_slack=worst,
            extracted_constants={"max_violation": -worst},
            points=rows,
        )

    return _timed(run)


def weighted_energy_bound(probe: GrigoryanProbe, mu: float, times=None,
                          radii=(1.0, 2.0, 4.0), tol: float = FD_TOL,
                          seed: int = 0) -> VerificationReport:
    """E_D(t) and the tail mass I_R(t) against their iteration bounds.

    The hypothesis I(t) <= e^{-mu} (8 pi t)^{-n/2} is verified in-run (it is
    the on-diagonal bound at doubled time); failing it aborts the check with
    a failure report. On the flat space the exact-kernel value of E_D is a
    closed-form Gaussian integral (finite exactly when D > 2) and must
    dominate the Dirichlet value.
    """

    def run():
        n = probe.n
        D, gamma = probe.D, probe.gamma
        consts = grigoryan_constants(gamma, D)
        ts = np.asarray(times) if times is not None else np.geomspace(1e-2, 1.0, 10)
        rows = []
        worst = math.inf
        hypothesis_ok = True
        for t in ts:
            i_t = probe.I(float(t))
            hyp_rhs = math.exp(-mu) * (8.0 * math.pi * t) ** (-n / 2.0)
            # the hypothesis is equality-sharp on the flat space, so its
            # gate carries the probe's own method error scale
            if i_t > hyp_rhs * (1.0 + max(tol, probe.sharp_allowance(float(t)))):
                hypothesis_ok = False
            rows.append({"x_id": "I", "y_id": "", "t": float(t), "lhs": i_t,
                         "rhs": hyp_rhs, "slack": hyp_rhs - i_t,
                         "ratio": i_t / hyp_rhs})
        if not hypothesis_ok:
            return VerificationReport(
                theorem_id="weighted-energy", space=probe.op.space.token, a=probe.op.a,
                grid={"times": len(ts)}, tolerance=tol, seed=seed, mode="slack",
                worst_case_slack=-math.inf, points=rows,
                notes=["hypothesis I(t) <= e^{-mu} (8 pi t)^{-n/2} failed; check aborted"],
            )

        exact_margin = math.inf
        for t in ts:
            e_t = probe.E_D(float(t))
            rhs = 4.0 * math.exp(-mu) * (8.0 * math.pi * consts.delta * t) ** (-n / 2.0)
            worst = min(worst, (rhs - e_t) / rhs)
            rows.append({"x_id": "E_D", "y_id": "", "t": float(t), "lhs": e_t,
                         "rhs": rhs, "slack": rhs - e_t, "ratio": e_t / rhs})
            i_t = probe.I(float(t))
            if i_t > e_t:  # exponential weight >= 1
                worst = -math.inf
            e_exact = (math.exp(-mu) * (8.0 * math.pi * t) ** (-n / 2.0)
                       * (D / (D - 2.0)) ** (n / 2.0))
            exact_margin = min(exact_margin,
                               e_exact * (1.0 + max(tol, probe.sharp_allowance(float(t)))) - e_t)
            for R in radii:
                ir = probe.I_R(float(t), float(R))
                tail_rhs = (2.0 * math.exp(-mu) * (8.0 * math.pi * t / gamma) ** (-n / 2.0)
                            * math.exp(-R * R / (consts.D0 * t)))
                worst = min(worst, (tail_rhs - ir) / tail_rhs)
                rows.append({"x_id": f"I_R R={R}", "y_id": "", "t": float(t),
                             "lhs": ir, "rhs": tail_rhs, "slack": tail_rhs - ir,
                             "ratio": ir / tail_rhs})
        notes = [f"m({gamma}) = {consts.m:.6e}, D0 = {consts.D0:.4f}, delta = {consts.delta:.6e}",
                 f"exact-kernel E_D dominates the Dirichlet value with margin {exact_margin:.3e}"]
        if exact_margin < 0:
            worst = -math.inf
        return VerificationReport(
            theorem_id="weighted-energy",
            space=probe.op.space.token,
            a=probe.op.a,
            grid={"times": len(ts), "radii": list(radii), "D": D, "gamma": gamma},
            tolerance=tol,
            seed=seed,
            mode="slack",
            worst_case_slack=worst,
            extracted_constants={"m": consts.m, "D0": consts.D0, "delta": consts.delta},
            points=rows,
            notes=notes,
        )

    return _timed(run)


def exploratory_a_sweep(space: SolitonSpace, a_values, make_evaluator,
                        mu: float, seed: int = 0) -> list:
    """Record ultracontractivity ratios for couplings below 1/4; never gates."""
    out = []
    g = pair_grid(space, count=8, seed=seed)
    ts = time_grid(count=12)
    for a in a_values:
        ev = make_evaluator(a)
        rows = _ratio_rows(ev, mu, g, ts, lambda d, t: 0.0)
        mx, _ = _max_resolved_ratio(rows)
        out.append({"a": float(a), "max_ratio": mx})
    return out
