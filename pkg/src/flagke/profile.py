"""Numerical construction of the Kaehler-Einstein profile function f(t).

The segment data are the exact pairs (a_alpha, r_alpha) = (<alpha, xi_Z0>,
<alpha, xi_0>) over the complementary positive roots of the flag F, so that
alpha(Z_0) = a_alpha and alpha(Z^0) = r_alpha / kappa.  All sign decisions
(the vanishing order d, chamber exit, the turning point of the inner
integral) happen on exact rationals; floats enter only in the quadrature.

Everything is computed in the normalised coordinate u = f / kappa, where the
chamber polynomial Q(u) = prod(a_alpha + u r_alpha) and the inner integral
J(u) = int_0^u (m - lambda w) Q(w) dw have exact rational coefficients and

    t(f) = int_0^{f/kappa} sqrt(Q(u) / (2 J(u))) du .

The integrand has an inverse-square-root singularity at 0; the substitution
u = v^2 removes it before the adaptive quadrature runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.integrate import quad

from . import bundle as bd
from . import einstein as es
from . import painted as pd
from . import poly
from . import rootspace as rs
from .errors import DomainError, NumericsError, UsageError

_QUAD_EPS = 1e-12  # target absolute accuracy 1e-10 with margin
_INVERT_RTOL = 1e-12


@dataclass(frozen=True)
class MetricProfile:
    """Immutable segment data; evaluation methods live at module level."""

    pairs: tuple[tuple[Fraction, Fraction], ...]  # (a_alpha, r_alpha)
    kappa_sq: Fraction
    m: int
    lam: Fraction

    def __post_init__(self):
        for a, r in self.pairs:
            if a < 0:
                raise DomainError(f"alpha(Z_0) = {a} < 0: Z_0 leaves the chamber face")
            if a == 0 and r <= 0:
                raise DomainError("vanishing alpha(Z_0) requires alpha(Z^0) > 0")

    @property
    def d(self) -> int:
        """Vanishing order of the chamber polynomial at 0."""
        return sum(1 for a, _ in self.pairs if a == 0)

    @property
    def kappa(self) -> float:
        return math.sqrt(self.kappa_sq)

    @property
    def lambda_(self) -> Fraction:
        return self.lam

    @cached_property
    def pair_floats(self) -> tuple[tuple[float, float], ...]:
        """(alpha(Z_0), alpha(Z^0)) as floats, converted once."""
        k = self.kappa
        return tuple((float(a), float(r) / k) for a, r in self.pairs)

    @cached_property
    def q_coeffs(self) -> poly.Poly:
        """Q(u) = prod (a_alpha + u r_alpha), exact."""
        q = poly.make([1])
        for a, r in self.pairs:
            q = poly.mul(q, poly.make([a, r]))
        return q

    @cached_property
    def j_coeffs(self) -> poly.Poly:
        """J(u) = int_0^u (m - lambda w) Q(w) dw, exact."""
        integrand = poly.mul(poly.make([self.m, -self.lam]), self.q_coeffs)
        return poly.integrate(integrand)

    @cached_property
    def _pair_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.array([float(x) for x, _ in self.pairs])
        r = np.array([float(x) for _, x in self.pairs])
        return a, r

    @cached_property
    def _gauss_rule(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes/weights on [0, 1] that integrate the inner integrand exactly.

        The integrand (m - lambda w) Q(w) is a polynomial of degree |pairs|+1,
        so Gauss-Legendre with ceil((deg+1)/2) points has no truncation error;
        evaluating Q in factored form keeps the rule numerically stable where
        the expanded coefficients would cancel catastrophically.
        """
        n = (len(self.pairs) + 3) // 2 + 1
        x, w = np.polynomial.legendre.leggauss(n)
        return (x + 1.0) / 2.0, w / 2.0

    @cached_property
    def u_exit(self) -> Optional[Fraction]:
        """First chamber wall along the ray: min of -a/r over the negative slopes."""
        exits = [-a / r for a, r in self.pairs if r < 0 and a > 0]
        return min(exits) if exits else None

    @cached_property
    def u_sup(self) -> float:
        """Domain end in the normalised coordinate (math.inf when unbounded).

        For lambda > 0 the inner integral J rises on (0, m/lambda) and falls
        strictly afterwards while the chamber holds, so its first positive
        zero is bracketed by exact sign evaluations and bisected; no general
        root isolation is needed.
        """
        u_exit = self.u_exit
        if self.lam <= 0:
            return float(u_exit) if u_exit is not None else math.inf
        peak = Fraction(self.m) / self.lam
        if u_exit is not None and u_exit <= peak:
            return float(u_exit)
        jpoly = self.j_coeffs
        if u_exit is not None:
            if poly.eval_exact(jpoly, u_exit) > 0:
                return float(u_exit)
            lo, hi = peak, u_exit
        else:
            lo, hi = peak, max(2 * peak, Fraction(1))
            while poly.eval_exact(jpoly, hi) > 0:
                lo, hi = hi, 2 * hi
        # J(lo) > 0 >= J(hi): bisect the unique root of the decreasing branch
        for _ in range(80):
            if float(hi - lo) <= 1e-13 * max(1.0, abs(float(hi))):
                break
            mid = (lo + hi) / 2
            v = poly.eval_exact(jpoly, mid)
            if v > 0:
                lo = mid
            elif v < 0:
                hi = mid
            else:
                return float(mid)
        return float((lo + hi) / 2)

    @property
    def f_sup(self) -> float:
        return self.kappa * self.u_sup


def metric_profile(
    data: bd.AdmissibleData,
    lam,
    z0: Optional[rs.Weight] = None,
) -> MetricProfile:
    """Build the profile of an admitted datum.

    For lambda != 0 the initial vertex is forced; for lambda = 0 the face
    point `z0` may be supplied (default: sum of the black fundamental
    weights of the singular orbit).
    """
    lam = Fraction(lam)
    if lam != 0:
        if z0 is not None:
            raise UsageError("z0 is free only for lambda = 0")
        xi_z0 = es.z0_form(data, lam)
    else:
        verdict = es.classify(data)
        if not verdict.lambda_zero.exists:
            raise DomainError("data does not admit a Ricci-flat metric")
        xi_z0 = z0 if z0 is not None else es.z0_face_point(data)
        if not es.z0_is_face_point(data, xi_z0):
            raise DomainError("supplied z0 is not an interior face point")
    xi0 = bd.kappa_z0_form(data)
    ksq, _ = bd.kappa(data)
    flag = bd.flag_f(data)
    pairs = tuple(
        (rs.inner(alpha, xi_z0), rs.inner(alpha, xi0)) for alpha in pd.r_m_plus(flag)
    )
    profile = MetricProfile(pairs=pairs, kappa_sq=ksq, m=data.m, lam=lam)
    if profile.d != data.m - 1:
        raise AssertionError(
            f"vanishing order {profile.d} differs from m - 1 = {data.m - 1}"
        )
    return profile


def polynomial_p(profile: MetricProfile) -> poly.Poly:
    """Exact coefficients of the chamber polynomial in the coordinate u = f/kappa.

    The true product over alpha of (alpha(Z_0) + x alpha(Z^0)) equals this
    polynomial evaluated at x/kappa; the rescaling keeps every coefficient
    rational and leaves t(f) unchanged.
    """
    return profile.q_coeffs


def _q_at(profile: MetricProfile, u: float) -> float:
    # factored product: stable sign behaviour near the chamber walls
    out = 1.0
    for a, r in profile.pairs:
        out *= float(a) + u * float(r)
    return out


def _j_at(profile: MetricProfile, u: float) -> float:
    """J(u) = int_0^u (m - lambda w) Q(w) dw by the exact Gauss rule."""
    if u == 0.0:
        return 0.0
    nodes, weights = profile._gauss_rule
    a, r = profile._pair_arrays
    ws = u * nodes
    q_vals = np.prod(a[:, None] + np.outer(r, ws), axis=0)
    integrand = (profile.m - float(profile.lam) * ws) * q_vals
    return u * float(weights @ integrand)


def _check_f(profile: MetricProfile, f: float) -> float:
    """Validate f and return the normalised coordinate u."""
    if f < 0:
        raise DomainError(f"f = {f} is negative")
    u = f / profile.kappa
    if u >= profile.u_sup:
        raise DomainError(f"f = {f} is beyond the domain end {profile.f_sup}")
    return u


def _t_of_u(profile: MetricProfile, u: float) -> float:
    if u == 0:
        return 0.0

    def integrand(v: float) -> float:
        w = v * v
        qv = _q_at(profile, w)
        jv = _j_at(profile, w)
        if jv <= 0 or qv < 0:
            raise DomainError(f"inner integral nonpositive at u = {w}: beyond the domain end")
        return 2.0 * v * math.sqrt(qv / (2.0 * jv))

    out = quad(
        integrand, 0.0, math.sqrt(u),
        epsabs=_QUAD_EPS, epsrel=_QUAD_EPS, limit=400, full_output=1,
    )
    val, err = out[0], out[1]
    if err > 1e-8 * max(1.0, abs(val)):
        raise NumericsError(f"quadrature failed to converge (estimated error {err})")
    return val


def t_of_f(profile: MetricProfile, f: float) -> float:
    """Arc-length parameter t as a function of the segment coordinate f."""
    return _t_of_u(profile, _check_f(profile, f))


def parameter_end(profile: MetricProfile) -> float:
    """Supremum of the reachable parameter values t (may be +inf)."""
    if not math.isfinite(profile.u_sup):
        return math.inf
    key = "_t_end"
    if key not in profile.__dict__:
        profile.__dict__[key] = _t_of_u(profile, profile.u_sup * (1 - 1e-9))
    return profile.__dict__[key]


def _dt_du(profile: MetricProfile, u: float) -> float:
    qv = _q_at(profile, u)
    jv = _j_at(profile, u)
    if jv <= 0 or qv <= 0:
        return math.inf
    return math.sqrt(qv / (2.0 * jv))


def f_of_t(profile: MetricProfile, t: float) -> float:
    """Monotone inverse of t_of_f: safeguarded Newton inside a bisection bracket.

    Terminates on |t(u) - t| below a relative-in-t tolerance, which keeps the
    returned f accurate in relative terms all the way down to t -> 0.
    """
    if t < 0:
        raise DomainError(f"t = {t} is negative")
    if t == 0:
        return 0.0
    if t >= parameter_end(profile):
        raise DomainError(f"t = {t} is beyond the parameter range {parameter_end(profile)}")
    if math.isfinite(profile.u_sup):
        hi = profile.u_sup * (1 - 1e-9)
    else:
        hi = 1.0
        while _t_of_u(profile, hi) < t:
            hi *= 2.0
            if hi > 1e18:
                raise NumericsError(f"failed to bracket t = {t}")
    lo = 0.0
    u = hi / 2
    tol = max(_INVERT_RTOL * t, 2e-12)
    for _ in range(200):
        tu = _t_of_u(profile, u)
        if abs(tu - t) <= tol:
            break
        if tu > t:
            hi = u
        else:
            lo = u
        slope = _dt_du(profile, u)
        step = (t - tu) / slope if math.isfinite(slope) and slope > 0 else 0.0
        u_new = u + step
        if not (lo < u_new < hi):
            u_new = 0.5 * (lo + hi)
        if hi - lo <= 1e-16 * max(1.0, hi):
            u = u_new
            break
        u = u_new
    else:
        raise NumericsError(f"inversion did not converge at t = {t}")
    return profile.kappa * u


def f_dot(profile: MetricProfile, f: float) -> float:
    """df/dt along the profile, from the first integral."""
    u = _check_f(profile, f)
    jv = _j_at(profile, u)
    qv = _q_at(profile, u)
    if qv <= 0:
        raise DomainError(f"chamber polynomial vanishes at f = {f}")
    return profile.kappa * math.sqrt(max(2.0 * jv / qv, 0.0))


def f_ddot(profile: MetricProfile, f: float) -> float:
    """d^2f/dt^2, by differentiating the first integral analytically."""
    u = _check_f(profile, f)
    qv = _q_at(profile, u)
    if qv == 0:
        raise DomainError(f"chamber polynomial vanishes at f = {f}")
    jv = _j_at(profile, u)
    # the expanded derivative cancels brutally at moderate u; evaluate exactly
    qd = float(poly.eval_exact(poly.diff(profile.q_coeffs), Fraction(u)))
    lam = float(profile.lam)
    return profile.kappa * ((profile.m - lam * u) - jv * qd / (qv * qv))


def mean_curvature_sum(profile: MetricProfile, f: float) -> float:
    """A(f): the sum over the pairs of alpha(Z^0)/(alpha(Z_0) + f alpha(Z^0))."""
    total = 0.0
    for a, b in profile.pair_floats:
        denom = a + f * b
        if denom == 0:
            raise DomainError(f"chamber wall reached at f = {f}")
        total += b / denom
    return total


def ode_residual(profile: MetricProfile, t: float) -> float:
    """Residual of  f'' + A(f)/2 f'^2 + lambda f - kappa m  at parameter t."""
    f = f_of_t(profile, t)
    fd = f_dot(profile, f)
    fdd = f_ddot(profile, f)
    lam = float(profile.lam)
    return fdd + 0.5 * mean_curvature_sum(profile, f) * fd * fd + lam * f - profile.kappa * profile.m


@dataclass(frozen=True)
class VerdianiReport:
    """Small-t boundary behaviour versus the smooth-extension conditions."""

    d: int
    m: int
    kappa: float
    f_at_zero: float
    fdot_small: float          # f'(t) at the smallest probe, should be ~ kappa * t
    fitted_curvature: float    # least-squares c in f ~ (c/2) t^2
    relative_error: float
    t_probes: tuple[float, ...]
    passed: bool


def verdiani_check(profile: MetricProfile, rel_tol: float = 1e-4) -> VerdianiReport:
    """Check f(0) = 0, f'(0+) -> 0 and f''(0+) -> kappa on a small-t probe set."""
    t_ref = _reference_time(profile)
    probes = tuple(t_ref * s for s in (1e-3, 1e-4, 1e-5))
    f0 = f_of_t(profile, 0.0)
    fs = [f_of_t(profile, t) for t in probes]
    # least squares for f = (c/2) t^2 + e t^4: regressing 2f/t^2 on t^2
    # absorbs the quartic correction, so c is the curvature at 0
    ys = [2.0 * f / (t * t) for f, t in zip(fs, probes)]
    xs = [t * t for t in probes]
    n = len(probes)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    fitted = (sy * sxx - sx * sxy) / (n * sxx - sx * sx)
    rel = abs(fitted - profile.kappa) / profile.kappa
    fdot = f_dot(profile, fs[0])
    d_ok = profile.d == profile.m - 1
    passed = d_ok and f0 == 0.0 and rel < rel_tol
    return VerdianiReport(
        d=profile.d,
        m=profile.m,
        kappa=profile.kappa,
        f_at_zero=f0,
        fdot_small=fdot,
        fitted_curvature=fitted,
        relative_error=rel,
        t_probes=probes,
        passed=passed,
    )


def _reference_time(profile: MetricProfile) -> float:
    u1 = 1.0
    if math.isfinite(profile.u_sup):
        u1 = min(1.0, profile.u_sup / 2)
    return _t_of_u(profile, u1)


def domain_end(profile: MetricProfile) -> float:
    """f_sup: least of the inner-integral turning point (lambda > 0) and the
    chamber exit, +inf when neither occurs."""
    return profile.f_sup
