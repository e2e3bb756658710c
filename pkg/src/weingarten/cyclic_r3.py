"""Circle-foliated (cyclic) surfaces in Euclidean 3-space with parallel
foliation planes, X(u, v) = (f(u) + r(u) cos v, g(u) + r(u) sin v, u).

Builds the two non-rotational linear Weingarten families (minimal
circle-foliated surfaces from the center/radius system f'' = lam r^2,
g'' = mu r^2, r r'' = 1 + (lam^2+mu^2) r^4 + r'^2, and flat generalized
cones with collinear centers and linear radius), and extracts trigonometric
Fourier coefficients of the relation residual a*H + b*K - c around each
foliation circle: the relation holds on the circle iff every coefficient
vanishes.
"""

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geomcore
from .errors import NonPositiveRadiusError, StepUnderflowError
from .geomcore import SurfacePatch, WeingartenParams
from .odekit import IvpSpec, integrate


@dataclass(frozen=True)
class CurveFunc:
    """Scalar function of u with its first two derivatives."""

    value: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]

    @staticmethod
    def constant(c: float) -> "CurveFunc":
        return CurveFunc(lambda u: c, lambda u: 0.0, lambda u: 0.0)

    @staticmethod
    def linear(c0: float, c1: float) -> "CurveFunc":
        return CurveFunc(lambda u: c0 + c1 * u, lambda u: c1, lambda u: 0.0)

    @staticmethod
    def poly(coeffs) -> "CurveFunc":
        """Ascending-order polynomial coefficients."""
        p = np.polynomial.Polynomial(coeffs)
        p1 = p.deriv()
        p2 = p1.deriv()
        return CurveFunc(lambda u: float(p(u)), lambda u: float(p1(u)), lambda u: float(p2(u)))


@dataclass
class CyclicSurfaceSpec:
    """Center curve (f, g) and radius r of the circle foliation, with two
    derivatives each; the foliation planes are the parallel planes z = u."""

    u_range: tuple[float, float]
    center_x: CurveFunc
    center_y: CurveFunc
    radius: CurveFunc
    kind: str = "parallel-planes"

    def check_radius_positive(self, n: int = 200) -> None:
        us = np.linspace(*self.u_range, n)
        r = np.array([self.radius.value(float(u)) for u in us])
        if np.min(r) <= 0:
            raise NonPositiveRadiusError(
                f"radius reaches {np.min(r):.6g} <= 0 on {self.u_range}"
            )

    def check_derivatives(self, n: int = 9, step: float = 1e-4, rtol: float = 1e-6) -> float:
        """Derivative fields must agree with central finite differences."""
        u0, u1 = self.u_range
        margin = max(2 * step, 1e-3 * (u1 - u0))
        worst = 0.0
        for cf in (self.center_x, self.center_y, self.radius):
            for u in np.linspace(u0 + margin, u1 - margin, n):
                fd1 = (cf.value(u + step) - cf.value(u - step)) / (2 * step)
                fd2 = (cf.value(u + step) - 2 * cf.value(u) + cf.value(u - step)) / step**2
                d1 = cf.d1(u)
                d2 = cf.d2(u)
                dev = max(abs(d1 - fd1) / max(1.0, abs(d1)), abs(d2 - fd2) / max(1.0, abs(d2)))
                worst = max(worst, dev)
                if dev > rtol:
                    raise ValueError(f"derivative fields inconsistent at u={u}: dev={dev:.2e}")
        return worst


def cyclic_patch(spec: CyclicSurfaceSpec) -> SurfacePatch:
    """Assemble the parametrized patch with analytic partials. Regularity
    |X_u x X_v|^2 = r^2 (1 + (f' cos v + g' sin v + r')^2) holds wherever
    the radius is positive."""
    f, g, r = spec.center_x, spec.center_y, spec.radius

    def pos(u, v):
        rv = r.value(u)
        return np.array([f.value(u) + rv * math.cos(v), g.value(u) + rv * math.sin(v), u])

    def du(u, v):
        r1 = r.d1(u)
        return np.array([f.d1(u) + r1 * math.cos(v), g.d1(u) + r1 * math.sin(v), 1.0])

    def dv(u, v):
        rv = r.value(u)
        return np.array([-rv * math.sin(v), rv * math.cos(v), 0.0])

    def duu(u, v):
        r2 = r.d2(u)
        return np.array([f.d2(u) + r2 * math.cos(v), g.d2(u) + r2 * math.sin(v), 0.0])

    def duv(u, v):
        r1 = r.d1(u)
        return np.array([-r1 * math.sin(v), r1 * math.cos(v), 0.0])

    def dvv(u, v):
        rv = r.value(u)
        return np.array([-rv * math.cos(v), -rv * math.sin(v), 0.0])

    return SurfacePatch(
        u_range=spec.u_range,
        v_range=(0.0, 2 * math.pi),
        position=pos, du=du, dv=dv, duu=duu, duv=duv, dvv=dvv,
        name=f"cyclic-{spec.kind}",
    )


# ---------------------------------------------------------------------------
# Minimal circle-foliated surfaces (center/radius system)
# ---------------------------------------------------------------------------

@dataclass
class RiemannSpec(CyclicSurfaceSpec):
    """Cyclic spec backed by the minimal-surface center/radius system."""

    lam: float = 0.0
    mu: float = 0.0
    r0: float = 1.0
    r0_prime: float = 0.0
    truncated: bool = False


def riemann_example(lam: float, mu: float, r0: float, r0_prime: float,
                    u_range=(-1.0, 1.0), tol: float = 1e-12) -> RiemannSpec:
    """Solve the minimal-surface center/radius system

        f' = lam r^2,   g' = mu r^2,   r r'' = 1 + (lam^2+mu^2) r^4 + r'^2

    from centered data f(0) = g(0) = 0, r(0) = r0, r'(0) = r0'. These are
    exactly the conditions under which the cyclic patch has H = 0
    identically: matching the {1, cos v, sin v} coefficients of
    eG - 2fF + gE = 0 forces r f'' = 2 r' f' (hence f' proportional to r^2,
    the center-drift law) and the radius equation above, whose source terms
    (lam^2+mu^2) r^4 are the squares f'^2 + g'^2.

    lam = mu = 0 is the rotational minimal surface (catenary radius); any
    other choice gives the non-rotational periodic minimal family. The spec
    fields evaluate the dense output; second derivatives evaluate the
    governing system on it.
    """
    if r0 <= 0:
        raise NonPositiveRadiusError(f"r0 = {r0} must be positive")
    c4 = lam * lam + mu * mu

    def rhs(u, y):
        r, rp = y[2], y[3]
        r2 = r * r
        return np.array([lam * r2, mu * r2, rp, (1.0 + c4 * r2 * r2 + rp * rp) / r])

    y0 = [0.0, 0.0, r0, r0_prime]
    guard = lambda u, y: y[2] > 1e-9
    u_lo, u_hi = float(u_range[0]), float(u_range[1])
    if u_lo > 0 or u_hi < 0:
        raise ValueError("u_range must contain 0 (initial data is centered there)")

    truncated = False
    spec_kw = dict(rhs=rhs, s0=0.0, y0=y0, rtol=tol, atol=tol * 1e-2)
    try:
        fwd = integrate(IvpSpec(**spec_kw), u_hi, guard=guard) if u_hi > 0 else None
    except StepUnderflowError as exc:
        fwd, truncated = exc.trajectory, True
    try:
        bwd = integrate(IvpSpec(**spec_kw), u_lo, guard=guard) if u_lo < 0 else None
    except StepUnderflowError as exc:
        bwd, truncated = exc.trajectory, True

    lo = bwd.s_end if bwd is not None else 0.0
    hi = fwd.s_end if fwd is not None else 0.0

    def at(u):
        if u >= 0:
            return fwd(u) if fwd is not None else np.asarray(y0)
        return bwd(u)

    def r_at(u):
        return float(at(u)[2])

    def center_field(coef, idx):
        return CurveFunc(
            value=lambda u: float(at(u)[idx]),
            d1=lambda u: coef * r_at(u) ** 2,
            d2=lambda u: 2.0 * coef * r_at(u) * float(at(u)[3]),
        )

    def r_dd(u):
        y = at(u)
        r, rp = float(y[2]), float(y[3])
        return (1.0 + c4 * r**4 + rp * rp) / r

    r = CurveFunc(value=r_at, d1=lambda u: float(at(u)[3]), d2=r_dd)
    return RiemannSpec(
        u_range=(float(lo), float(hi)),
        center_x=center_field(lam, 0), center_y=center_field(mu, 1), radius=r,
        kind="minimal-cyclic",
        lam=lam, mu=mu, r0=r0, r0_prime=r0_prime, truncated=truncated,
    )


def riemann_identity_residual(spec: RiemannSpec, n: int = 400) -> float:
    """Conservation form of the radius equation along the trajectory.

    (1 + r'^2)/r^2 - (lam^2 + mu^2) r^2 is a first integral: its u-derivative
    equals (2 r'/r^3)(r r'' - r'^2 - (lam^2+mu^2) r^4 - 1). The reported
    residual r^2 |I(u) - I(0)| is the integrated defect of that identity.
    """
    c4 = spec.lam**2 + spec.mu**2
    i0 = (1.0 + spec.r0_prime**2) / spec.r0**2 - c4 * spec.r0**2
    worst = 0.0
    for u in np.linspace(*spec.u_range, n):
        r = spec.radius.value(float(u))
        rp = spec.radius.d1(float(u))
        worst = max(worst, abs(1.0 + rp * rp - r * r * (i0 + c4 * r * r)))
    return worst


# ---------------------------------------------------------------------------
# Generalized cones
# ---------------------------------------------------------------------------

def generalized_cone(f0: float, f1: float, g0: float, g1: float,
                     r0: float, r1: float, u_range=(0.0, 1.0)) -> CyclicSurfaceSpec:
    """Collinear circle centers (f, g) = (f0 + f1 u, g0 + g1 u) and linear
    radius r = r0 + r1 u: the flat (K = 0) cyclic family."""
    spec = CyclicSurfaceSpec(
        u_range=(float(u_range[0]), float(u_range[1])),
        center_x=CurveFunc.linear(f0, f1),
        center_y=CurveFunc.linear(g0, g1),
        radius=CurveFunc.linear(r0, r1),
        kind="generalized-cone",
    )
    spec.check_radius_positive()
    return spec


def sphere_slice(radius: float = 1.0, u_range=None) -> CyclicSurfaceSpec:
    """A round sphere sliced by parallel planes: r(u) = sqrt(R^2 - u^2)."""
    R = float(radius)
    if u_range is None:
        u_range = (-0.7 * R, 0.7 * R)

    def r(u):
        return math.sqrt(R * R - u * u)

    return CyclicSurfaceSpec(
        u_range=(float(u_range[0]), float(u_range[1])),
        center_x=CurveFunc.constant(0.0),
        center_y=CurveFunc.constant(0.0),
        radius=CurveFunc(
            value=r,
            d1=lambda u: -u / r(u),
            d2=lambda u: -R * R / r(u) ** 3,
        ),
        kind="sphere-slice",
    )


def max_curvature_magnitudes(spec: CyclicSurfaceSpec, n_u: int = 40, n_v: int = 48):
    """(max |H|, max |K|) of the patch over a regular grid."""
    patch = cyclic_patch(spec)
    u0, u1 = spec.u_range
    margin = 1e-9 * max(1.0, abs(u1 - u0))
    us = np.linspace(u0 + margin, u1 - margin, n_u)
    vs = np.linspace(0.0, 2 * math.pi, n_v, endpoint=False)
    field = geomcore.curvature_field(patch, us, vs)
    return float(np.max(np.abs(field.H))), float(np.max(np.abs(field.K)))


# ---------------------------------------------------------------------------
# Fourier analysis of the relation residual around a foliation circle
# ---------------------------------------------------------------------------

@dataclass
class TrigCoefficients:
    """Discrete Fourier coefficients of v -> a*H + b*K - c on the circle at u.

    A[n], B[n] are the cosine/sine coefficients for n = 0..n_max; the
    relation holds on the circle iff all of them vanish.
    """

    u: float
    A: np.ndarray
    B: np.ndarray
    n_samples: int
    params: WeingartenParams

    @property
    def n_max(self) -> int:
        return len(self.A) - 1

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.A)), np.max(np.abs(self.B))))

    def vanishes(self, tol: float) -> bool:
        return self.max_abs < tol

    def reconstruct(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        out = np.full_like(v, self.A[0])
        for n in range(1, len(self.A)):
            out += self.A[n] * np.cos(n * v) + self.B[n] * np.sin(n * v)
        return out


def residual_samples(spec: CyclicSurfaceSpec, params: WeingartenParams, u: float,
                     n_samples: int, flip_normal: bool = False):
    patch = cyclic_patch(spec)
    vs = 2 * math.pi * np.arange(n_samples) / n_samples
    res = np.empty(n_samples)
    for j, v in enumerate(vs):
        c = geomcore.curvatures(patch, float(u), float(v), flip_normal)
        res[j] = params.residual(c.H, c.K)
    return vs, res


def trig_coefficients(spec: CyclicSurfaceSpec, params: WeingartenParams, u: float,
                      n_samples: int = 64, n_max: int = 12,
                      flip_normal: bool = False) -> TrigCoefficients:
    """Uniform v-sampling of the residual on [0, 2pi) and its DFT up to
    order ``n_max``. Requires n_samples >= 2*n_max + 3 (aliasing margin)."""
    if n_samples < 2 * n_max + 3:
        raise ValueError(f"n_samples = {n_samples} < 2*n_max + 3 = {2 * n_max + 3}")
    _, res = residual_samples(spec, params, u, n_samples, flip_normal)
    spectrum = np.fft.rfft(res)
    A = np.empty(n_max + 1)
    B = np.zeros(n_max + 1)
    A[0] = spectrum[0].real / n_samples
    for n in range(1, n_max + 1):
        A[n] = 2.0 * spectrum[n].real / n_samples
        B[n] = -2.0 * spectrum[n].imag / n_samples
    return TrigCoefficients(u=float(u), A=A, B=B, n_samples=n_samples, params=params)


def coefficients_json(tc: TrigCoefficients, tol: float = 1e-8) -> dict:
    return {
        "report": "cyclic_coefficients",
        "u": tc.u,
        "A": [float(x) for x in tc.A],
        "B": [float(x) for x in tc.B],
        "n_samples": tc.n_samples,
        "max_abs": tc.max_abs,
        "tol": tol,
        "verdict": tc.vanishes(tol),
        "params": {"a": tc.params.a, "b": tc.params.b, "c": tc.params.c},
    }


def export_residual_csv(spec: CyclicSurfaceSpec, params: WeingartenParams, path,
                        n_u: int = 20, n_v: int = 32, flip_normal: bool = False) -> None:
    """Relation residual over the (u, v) grid: columns u,v,residual."""
    patch = cyclic_patch(spec)
    u0, u1 = spec.u_range
    us = np.linspace(u0, u1, n_u)
    vs = np.linspace(0.0, 2 * math.pi, n_v, endpoint=False)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["u", "v", "residual"])
        for u in us:
            for v in vs:
                c = geomcore.curvatures(patch, float(u), float(v), flip_normal)
                w.writerow([f"{u:.17g}", f"{v:.17g}", f"{params.residual(c.H, c.K):.17g}"])
