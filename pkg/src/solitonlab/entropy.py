"""Entropy functional on the catalogue spaces.

The normalization constant mu is available in closed form on every catalogue
space and is cross-checked here by quadrature of (4 pi)^{-n/2} exp(-f) dv.
The W functional is evaluated for densities of the form f + c (+ small
closed-form perturbations), which is enough to verify both the minimizer
identity W(g, f + c, 1) = mu and the infimum property W >= mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import KindMismatchError, NormalizationError
from .quadrature import gaussian_cutoff, quad_ab
from .spaces import Point, SolitonSpace, sphere_area

SQRT2 = math.sqrt(2.0)


def mu_closed_form(space: SolitonSpace) -> float:
    """Entropy constant mu of a catalogue space from the closed form.

    Defined through (4 pi)^{-n/2} integral of exp(-f) dv = exp(mu); zero on
    the flat gaussian space and negative on the sphere and cylinder.
    """
    n = space.n
    if space.kind == "gaussian":
        return 0.0
    if space.kind == "sphere":
        return -0.5 * n * math.log(4.0 * math.pi) - 0.5 * n + math.log(space.volume)
    r = space.sphere_radius
    factor_volume = sphere_area(n - 1, r)  # S^{n-1} factor
    line_mass = 2.0 * math.sqrt(math.pi)   # integral of exp(-s^2/4)
    return (
        -0.5 * n * math.log(4.0 * math.pi)
        - 0.5 * (n - 1)
        + math.log(factor_volume * line_mass)
    )


@dataclass(frozen=True)
class EntropyReport:
    mu: float
    method: str                 # closed_form | quadrature
    quadrature_error: float
    normalization_check: float  # quadrature of (4 pi)^{-n/2} e^{-f} dv minus e^mu


def mu(space: SolitonSpace) -> EntropyReport:
    """Closed-form mu together with its quadrature cross-check."""
    closed = mu_closed_form(space)
    n = space.n
    if space.kind == "gaussian":
        area = sphere_area(n - 1)
        rmax = gaussian_cutoff(SQRT2)
        val, err = quad_ab(
            lambda r: area * r ** (n - 1) * math.exp(-r * r / 4.0), 0.0, rmax
        )
        total = (4.0 * math.pi) ** (-n / 2.0) * val
    elif space.kind == "sphere":
        r = space.sphere_radius
        val, err = quad_ab(lambda u: math.sin(u) ** (n - 1), 0.0, math.pi)
        vol = sphere_area(n - 1) * r ** n * val
        total = (4.0 * math.pi) ** (-n / 2.0) * math.exp(-n / 2.0) * vol
    else:
        r = space.sphere_radius
        smax = gaussian_cutoff(SQRT2)
        line, err = quad_ab(lambda s: math.exp(-s * s / 4.0), -smax, smax)
        total = (
            (4.0 * math.pi) ** (-n / 2.0)
            * math.exp(-(n - 1) / 2.0)
            * sphere_area(n - 1, r)
            * line
        )
    return EntropyReport(closed, "closed_form", err, total - math.exp(closed))


# ---------------------------------------------------------------------------
# radial profiles and trial functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialProfile:
    """Closed-form compactly supported radial profile with its derivative.

    kind "bump" is the C^1 polynomial (1 - (d/cutoff)^2)^2; kind "gaussian"
    is exp(-d^2 / (2 sigma^2)) minus its cutoff value, clamped at zero, which
    is Lipschitz with compact support; kind "talenti" is the critical-Sobolev
    extremal shape (1 + (d/sigma)^2)^{-power}, truncated the same way; kind
    "const" is the indicator of the cutoff ball (the constant trial on a
    compact space once the cutoff exceeds the diameter).
    """

    kind: str
    sigma: float
    cutoff: float
    power: float = 0.5

    def value(self, d: float) -> float:
        # even in d so line profiles can be fed signed coordinates
        if abs(d) >= self.cutoff:
            return 0.0
        if self.kind == "const":
            return 1.0
        if self.kind == "bump":
            u = 1.0 - (d / self.cutoff) ** 2
            return u * u
        if self.kind == "talenti":
            core = (1.0 + (d / self.sigma) ** 2) ** -self.power
            return core - (1.0 + (self.cutoff / self.sigma) ** 2) ** -self.power
        base = math.exp(-d * d / (2.0 * self.sigma ** 2))
        return base - math.exp(-self.cutoff ** 2 / (2.0 * self.sigma ** 2))

    def deriv(self, d: float) -> float:
        if abs(d) >= self.cutoff or self.kind == "const":
            return 0.0
        if self.kind == "bump":
            u = 1.0 - (d / self.cutoff) ** 2
            return -4.0 * d / self.cutoff ** 2 * u
        if self.kind == "talenti":
            return (-2.0 * self.power * d / self.sigma ** 2
                    * (1.0 + (d / self.sigma) ** 2) ** -(self.power + 1.0))
        return -d / self.sigma ** 2 * math.exp(-d * d / (2.0 * self.sigma ** 2))


@dataclass
class TrialFunction:
    """A normalized trial phi for the entropy-energy inequalities.

    On gaussian and sphere spaces phi(x) = amplitude * g(d(x, center)); on the
    cylinder phi is the product of a sphere-factor profile (in arc length from
    the center direction) and a line profile (in s - s_center). |grad phi| is
    available in closed form because profiles carry their derivatives.
    """

    space: SolitonSpace
    center: Point
    profile: RadialProfile
    line_profile: RadialProfile | None = None
    amplitude: float = field(default=1.0)
    norm_defect: float = field(default=0.0)

    def __post_init__(self):
        if self.space.kind == "cylinder" and self.line_profile is None:
            raise KindMismatchError("cylinder trials need a line profile")
        if self.space.kind != "cylinder" and self.line_profile is not None:
            raise KindMismatchError("line profile only makes sense on the cylinder")
        self.normalize()

    # -- reduced one-dimensional integrals ---------------------------------

    def _angular_integral(self, h) -> float:
        """Integral of h(profile stuff) over the radial/zonal factor."""
        n = self.space.n
        if self.space.kind == "gaussian":
            area = sphere_area(n - 1)
            val, _ = quad_ab(lambda d: area * d ** (n - 1) * h(d), 0.0, self.profile.cutoff)
            return val
        if self.space.kind == "sphere":
            r = self.space.sphere_radius
            umax = min(self.profile.cutoff / r, math.pi)
            val, _ = quad_ab(
                lambda u: sphere_area(n - 1) * r ** n * math.sin(u) ** (n - 1) * h(r * u),
                0.0,
                umax,
            )
            return val
        r = self.space.sphere_radius
        umax = min(self.profile.cutoff / r, math.pi)
        val, _ = quad_ab(
            lambda u: sphere_area(n - 2) * r ** (n - 1) * math.sin(u) ** (n - 2) * h(r * u),
            0.0,
            umax,
        )
        return val

    def _line_integral(self, h) -> float:
        q = self.line_profile
        val, _ = quad_ab(h, -q.cutoff, q.cutoff)
        return val

    def normalize(self) -> None:
        """Scale the amplitude so that the L2 norm is one."""
        g = self.profile
        if self.space.kind == "cylinder":
            ig2 = self._angular_integral(lambda d: g.value(d) ** 2)
            iq2 = self._line_integral(lambda s: self.line_profile.value(s) ** 2)
            total = ig2 * iq2
        else:
            total = self._angular_integral(lambda d: g.value(d) ** 2)
        if total <= 0.0:
            raise NormalizationError("trial function has zero L2 mass")
        self.amplitude = 1.0 / math.sqrt(total)
        self.norm_defect = abs(self.int_phi2() - 1.0)
        if self.norm_defect > 1e-8:
            raise NormalizationError(
                f"trial normalization defect {self.norm_defect:.3e} beyond tolerance"
            )

    def int_phi2(self) -> float:
        g = self.profile
        a2 = self.amplitude ** 2
        if self.space.kind == "cylinder":
            return a2 * self._angular_integral(lambda d: g.value(d) ** 2) * self._line_integral(
                lambda s: self.line_profile.value(s) ** 2
            )
        return a2 * self._angular_integral(lambda d: g.value(d) ** 2)

    def int_grad2(self) -> float:
        """Integral of |grad phi|^2."""
        g = self.profile
        a2 = self.amplitude ** 2
        if self.space.kind != "cylinder":
            return a2 * self._angular_integral(lambda d: g.deriv(d) ** 2)
        q = self.line_profile
        ig2 = self._angular_integral(lambda d: g.value(d) ** 2)
        igp = self._angular_integral(lambda d: g.deriv(d) ** 2)
        iq2 = self._line_integral(lambda s: q.value(s) ** 2)
        iqp = self._line_integral(lambda s: q.deriv(s) ** 2)
        return a2 * (igp * iq2 + ig2 * iqp)

    def int_R_phi2(self) -> float:
        return self.space.sup_R * self.int_phi2()  # R is constant on the catalogue

    def int_entropy(self) -> float:
        """Integral of phi^2 ln(phi^2), using the normalization ∫phi^2 = 1."""
        a2 = self.amplitude ** 2
        g = self.profile

        def xlogx(v):
            return v * math.log(v) if v > 0.0 else 0.0

        if self.space.kind != "cylinder":
            core = self._angular_integral(lambda d: xlogx(g.value(d) ** 2))
            return math.log(a2) + a2 * core
        q = self.line_profile
        ig2 = self._angular_integral(lambda d: g.value(d) ** 2)
        iq2 = self._line_integral(lambda s: q.value(s) ** 2)
        igl = self._angular_integral(lambda d: xlogx(g.value(d) ** 2))
        iql = self._line_integral(lambda s: xlogx(q.value(s) ** 2))
        return math.log(a2) + a2 * (igl * iq2 + ig2 * iql)

    def int_power(self, p: float) -> float:
        """Integral of |phi|^p."""
        ap = self.amplitude ** p
        g = self.profile
        if self.space.kind != "cylinder":
            return ap * self._angular_integral(lambda d: abs(g.value(d)) ** p)
        q = self.line_profile
        return ap * self._angular_integral(lambda d: abs(g.value(d)) ** p) * self._line_integral(
            lambda s: abs(q.value(s)) ** p
        )

    def dilated(self, lam: float) -> "TrialFunction":
        """u(lam x) rescaling; only meaningful on the flat gaussian space."""
        if self.space.kind != "gaussian":
            raise KindMismatchError("dilation is only defined on the gaussian space")
        p = RadialProfile(self.profile.kind, self.profile.sigma / lam,
                          self.profile.cutoff / lam, power=self.profile.power)
        return TrialFunction(self.space, self.center, p)


def random_trials(space: SolitonSpace, count: int, seed: int,
                  sigma_range=(0.35, 1.6)) -> list[TrialFunction]:
    """Deterministic list of normalized random trial functions."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        kind = "bump" if rng.random() < 0.5 else "gaussian"
        sigma = float(rng.uniform(*sigma_range))
        cutoff = sigma * float(rng.uniform(3.0, 6.0))
        if space.kind == "sphere":
            cutoff = min(cutoff, 0.95 * math.pi * space.sphere_radius)
        if space.kind == "cylinder":
            cutoff = min(cutoff, 0.95 * math.pi * space.sphere_radius)
            line = RadialProfile(kind, float(rng.uniform(*sigma_range)), float(rng.uniform(1.5, 5.0)))
            out.append(TrialFunction(space, space.pole(), RadialProfile(kind, sigma, cutoff), line))
        else:
            out.append(TrialFunction(space, space.pole(), RadialProfile(kind, sigma, cutoff)))
    return out


# ---------------------------------------------------------------------------
# W functional for soliton-shaped log densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityPerturbation:
    """Additive closed-form perturbation of the soliton log density.

    The perturbed log density is f + c + eps * bump(d) on gaussian/sphere
    spaces; on the cylinder an optional separate line bump in s is added so
    the density stays a product. c is recomputed so the density integrates
    to one.
    """

    eps: float
    bump: RadialProfile
    line_eps: float = 0.0
    line_bump: RadialProfile | None = None

    def __post_init__(self):
        # non-finite parameters would feed inf into the quadrature layer
        if not (math.isfinite(self.eps) and math.isfinite(self.line_eps)):
            raise NormalizationError("perturbation amplitudes must be finite")


def w_entropy(space: SolitonSpace, trial: DensityPerturbation | None, tau: float,
              norm_tol: float = 1e-7) -> float:
    """Value of the W functional at the (perturbed) soliton log density.

    The log density is phi = f + c + perturbation with c fixed by the
    constraint that (4 pi tau)^{-n/2} exp(-phi) integrates to one; a
    NormalizationError is raised if an independent re-check of that
    constraint is off by more than ``norm_tol``.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    n = space.n
    pref = (4.0 * math.pi * tau) ** (-n / 2.0)

    if space.kind == "gaussian":
        area = sphere_area(n - 1)
        eps, b = _bump_parts(trial)
        rmax = max(gaussian_cutoff(SQRT2 * math.sqrt(tau)), b.cutoff if b else 0.0)

        def phi0(r):
            return r * r / 4.0 + (eps * b.value(r) if b else 0.0)

        def dphi(r):
            return r / 2.0 + (eps * b.deriv(r) if b else 0.0)

        def weight(r):
            return area * r ** (n - 1) * pref * math.exp(-phi0(r))

        brk = [b.cutoff] if b else None
        z, _ = quad_ab(weight, 0.0, rmax, points=brk)
        c = math.log(z)
        mass, _ = quad_ab(lambda r: weight(r) * math.exp(-c), 0.0, rmax, points=brk)
        _require_normalized(mass, norm_tol)
        val, _ = quad_ab(
            lambda r: weight(r) * math.exp(-c) * (tau * dphi(r) ** 2 + phi0(r) + c - n),
            0.0,
            rmax,
            points=brk,
        )
        return val

    if space.kind == "sphere":
        r0 = space.sphere_radius
        area = sphere_area(n - 1) * r0 ** n
        eps, b = _bump_parts(trial)
        rr = space.sup_R

        def phi0(u):  # u = angle from the pole
            return n / 2.0 + (eps * b.value(r0 * u) if b else 0.0)

        def dphi(u):
            return eps * b.deriv(r0 * u) if b else 0.0

        def weight(u):
            return area * math.sin(u) ** (n - 1) * pref * math.exp(-phi0(u))

        brk = [b.cutoff / r0] if b else None
        z, _ = quad_ab(weight, 0.0, math.pi, points=brk)
        c = math.log(z)
        mass, _ = quad_ab(lambda u: weight(u) * math.exp(-c), 0.0, math.pi, points=brk)
        _require_normalized(mass, norm_tol)
        val, _ = quad_ab(
            lambda u: weight(u) * math.exp(-c) * (tau * (dphi(u) ** 2 + rr) + phi0(u) + c - n),
            0.0,
            math.pi,
            points=brk,
        )
        return val

    # cylinder: the density stays a product over S^{n-1} x R, so every term
    # of W splits into one-dimensional factor moments
    r0 = space.sphere_radius
    eps, b = _bump_parts(trial)
    line_eps = trial.line_eps if trial else 0.0
    q = trial.line_bump if trial else None
    rr = space.sup_R
    area = sphere_area(n - 2) * r0 ** (n - 1)
    smax = max(gaussian_cutoff(SQRT2 * math.sqrt(tau)), q.cutoff if q else 0.0)

    def phi_ang(u):
        return eps * b.value(r0 * u) if b else 0.0

    def dphi_ang(u):
        return eps * b.deriv(r0 * u) if b else 0.0

    def phi_line(s):
        return s * s / 4.0 + (line_eps * q.value(s) if q else 0.0)

    def dphi_line(s):
        return s / 2.0 + (line_eps * q.deriv(s) if q else 0.0)

    brk_a = [b.cutoff / r0] if b else None
    brk_s = [-q.cutoff, q.cutoff] if q else None
    za, _ = quad_ab(lambda u: area * math.sin(u) ** (n - 2) * math.exp(-phi_ang(u)), 0.0, math.pi,
                    points=brk_a)
    zs, _ = quad_ab(lambda s: math.exp(-phi_line(s)), -smax, smax, points=brk_s)
    # f contributes (n-1)/2 + s^2/4; the additive normalization constant is
    # C = ln(pref za zs) - (n-1)/2, so the constant part of E[phi] collapses
    # to ln(pref za zs)
    log_mass = math.log(pref * za * zs)

    def m_ang(h):
        val, _ = quad_ab(
            lambda u: area * math.sin(u) ** (n - 2) * math.exp(-phi_ang(u)) * h(u), 0.0, math.pi,
            points=brk_a,
        )
        return val / za

    def m_line(h):
        val, _ = quad_ab(lambda s: math.exp(-phi_line(s)) * h(s), -smax, smax, points=brk_s)
        return val / zs

    _require_normalized(m_ang(lambda u: 1.0) * m_line(lambda s: 1.0), norm_tol)
    grad = m_ang(lambda u: dphi_ang(u) ** 2) + m_line(lambda s: dphi_line(s) ** 2)
    mean_phi = m_ang(phi_ang) + m_line(phi_line) + log_mass
    return tau * (grad + rr) + mean_phi - n


def _bump_parts(trial: DensityPerturbation | None):
    if trial is None:
        return 0.0, None
    return trial.eps, trial.bump


def _require_normalized(mass: float, tol: float) -> None:
    if not math.isfinite(mass) or abs(mass - 1.0) > tol:
        raise NormalizationError(f"density normalization defect {abs(mass - 1.0):.3e}")


def minimizer_check(space: SolitonSpace) -> float:
    """|W(g, f + c, 1) - mu|; the soliton potential minimizes W at tau = 1."""
    return abs(w_entropy(space, None, 1.0) - mu_closed_form(space))


def random_perturbations(space: SolitonSpace, count: int, seed: int,
                         eps_scale: float = 0.35) -> list[DensityPerturbation]:
    """Seeded perturbations for probing the infimum property of W."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        kind = "bump" if rng.random() < 0.5 else "gaussian"
        sigma = float(rng.uniform(0.4, 1.8))
        cutoff = sigma * float(rng.uniform(3.0, 6.0))
        if space.kind in ("sphere", "cylinder"):
            cutoff = min(cutoff, 0.95 * math.pi * space.sphere_radius)
        eps = float(rng.uniform(-eps_scale, eps_scale))
        if space.kind == "cylinder" and rng.random() < 0.5:
            line = RadialProfile(kind, float(rng.uniform(0.4, 1.5)), float(rng.uniform(1.5, 4.0)))
            out.append(DensityPerturbation(eps, RadialProfile(kind, sigma, cutoff),
                                           line_eps=float(rng.uniform(-eps_scale, eps_scale)),
                                           line_bump=line))
        else:
            out.append(DensityPerturbation(eps, RadialProfile(kind, sigma, cutoff)))
    return out
