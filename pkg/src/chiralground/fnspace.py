"""Test-function calculus on the circle and on the real line.

Circle functions are stored by their Fourier coefficients with the
convention f(theta) = sum_n c_n e^{i n theta}, c_n = (1/2pi) int f e^{-i n theta}.
The real line is identified with the circle minus one point through the
Cayley map: the circle point -e^{i theta} corresponds to t(theta) = -cot(theta/2),
so theta = 0 is the point at infinity and dt/dtheta = csc^2(theta/2)/2 > 0
(orientation preserving).

With this coefficient convention the Fock-space bracket of smeared currents is

    [J(f), J(g)] = i * sigma(f, g) / SIGMA_NORM,

where sigma(f, g) = int f g' dtheta is the literal circle integral and
SIGMA_NORM = 2pi.  SIGMA_NORM is the single normalization constant of the
whole package; every phase and central-term factor is derived from it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import simpson

TWO_PI = 2.0 * math.pi

# [J(f), J(g)] = i * sigma(f, g) / SIGMA_NORM in the c_n mode convention above.
SIGMA_NORM = TWO_PI


class Weight(enum.Enum):
    """How a line object transforms under the circle identification."""

    FUNCTION = "function"
    VECTOR_FIELD = "vector_field"


@dataclass(frozen=True)
class CircleFourier:
    """Band-limited function on the circle, coeffs[n + M] = c_n for |n| <= M."""

    coeffs: np.ndarray
    is_real: bool = True
    truncated: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coeffs must be a 1-d array of odd length 2M+1")
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, n: int) -> complex:
        M = self.max_mode
        if abs(n) > M:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + M])

    def pad(self, M: int) -> "CircleFourier":
        """Re-embed with max mode M (zero padding or truncation)."""
        old = self.max_mode
        out = np.zeros(2 * M + 1, dtype=complex)
        k = min(M, old)
        out[M - k : M + k + 1] = self.coeffs[old - k : old + k + 1]
        dropped = M < old and (
            np.any(self.coeffs[: old - M]) or np.any(self.coeffs[old + M + 1 :])
        )
        trunc = self.truncated or bool(dropped)
        return CircleFourier(out, self.is_real, trunc)

    def __call__(self, theta):
        th = np.asarray(theta, dtype=float)
        ns = np.arange(-self.max_mode, self.max_mode + 1)
        vals = np.exp(1j * np.outer(th.ravel(), ns)) @ self.coeffs
        vals = vals.reshape(th.shape)
        if self.is_real:
            vals = vals.real
        if np.ndim(theta) == 0:
            return vals.item()
        return vals

    def _binop(self, other, op):
        M = max(self.max_mode, other.max_mode)
        a, b = self.pad(M), other.pad(M)
        return CircleFourier(
            op(a.coeffs, b.coeffs),
            self.is_real and other.is_real,
            self.truncated or other.truncated,
        )

    def __add__(self, other):
        return self._binop(other, np.add)

    def __sub__(self, other):
        return self._binop(other, np.subtract)

    def scale(self, lam: float) -> "CircleFourier":
        return CircleFourier(lam * self.coeffs, self.is_real and np.isreal(lam),
                             self.truncated)


@dataclass(frozen=True)
class PiecewiseLinearCircle:
    """Continuous piecewise-linear circle function given by nodes and values.

    Linear interpolation between consecutive nodes, wrapping from the last
    node back to the first one (shifted by 2pi).  Continuity across the wrap
    is automatic in this representation.
    """

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.nodes, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if th.size < 2 or th.size != v.size:
            raise ValueError("need at least 2 nodes and matching values")
        if np.any(np.diff(th) <= 0) or th[0] < 0 or th[-1] >= TWO_PI:
            raise ValueError("nodes must be strictly increasing in [0, 2pi)")
        object.__setattr__(self, "nodes", th)
        object.__setattr__(self, "values", v)

    def segments(self):
        """Yield (a, b, va, vb) with a < b; the wrap segment has b > 2pi - eps."""
        th, v = self.nodes, self.values
        for i in range(th.size - 1):
            yield th[i], th[i + 1], v[i], v[i + 1]
        yield th[-1], th[0] + TWO_PI, v[-1], v[0]

    def __call__(self, theta):
        th = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        # shift angles below the first node into the wrap segment
        th = np.where(th < self.nodes[0], th + TWO_PI, th)
        xp = np.concatenate([self.nodes, [self.nodes[0] + TWO_PI]])
        fp = np.concatenate([self.values, [self.values[0]]])
        out = np.interp(th, xp, fp)
        if np.ndim(theta) == 0:
            return out.item()
        return out


@dataclass(frozen=True)
class LineObject:
    """Real-line test object carried by its circle representative.

    Weight.FUNCTION: scalar pullback, F(t) = h(theta(t)).
    Weight.VECTOR_FIELD: pushforward, F(t) = ((t^2+1)/2) h(theta(t)).
    vanishing_order is the declared order of the circle representative
    at the point at infinity (theta = 0); line integrals of derivatives of
    vector fields are finite only when the combined order is large enough.
    """

    circle_repr: object  # CircleFourier | PiecewiseLinearCircle
    weight: Weight = Weight.FUNCTION
    vanishing_order: int = 0

    def scale(self, lam: float) -> "LineObject":
        if not isinstance(self.circle_repr, CircleFourier):
            raise TypeError("can only scale Fourier-represented line objects")
        return replace(self, circle_repr=self.circle_repr.scale(lam))


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 2048
    endpoint_cut: float = 1e-3

    def __post_init__(self):
        if self.node_count < 16:
            raise ValueError("node_count must be >= 16")
        if self.endpoint_cut <= 0:
            raise ValueError("endpoint_cut must be positive")


@dataclass(frozen=True)
class LineIntegralResult:
    value: float
    divergent: bool
    err_estimate: float

    def __float__(self):
        return self.value


# ---------------------------------------------------------------------------
# Fourier operations


def fourier_project(f: PiecewiseLinearCircle, M: int) -> CircleFourier:
    """Exact Fourier coefficients of a piecewise-linear circle function.

    Each segment contributes the closed-form integral of a linear function
    against e^{-i n theta}; no quadrature is involved.
    """
    if M < 1:
        raise ValueError("M must be positive")
    ns = np.arange(-M, M + 1)
    nz = ns != 0
    n = ns[nz].astype(float)
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    for a, b, va, vb in f.segments():
        if a == b:
            continue
        s = (vb - va) / (b - a)
        # n = 0: trapezoid area
        coeffs[M] += (va + vb) * (b - a) / 2.0
        ea = np.exp(-1j * n * a)
        eb = np.exp(-1j * n * b)
        inn = 1j * n
        # int_a^b e^{-in th} dth and int_a^b (th - a) e^{-in th} dth
        i0 = (ea - eb) / inn
        i1 = -(b - a) * eb / inn + i0 / inn
        coeffs[nz] += va * i0 + s * i1
    coeffs /= TWO_PI
    # symmetrize: the function is real, so c_{-n} must equal conj(c_n)
    coeffs = (coeffs + np.conj(coeffs[::-1])) / 2.0
    return CircleFourier(coeffs, is_real=True)


def derivative(f: CircleFourier) -> CircleFourier:
    ns = np.arange(-f.max_mode, f.max_mode + 1)
    return CircleFourier(1j * ns * f.coeffs, f.is_real, f.truncated)


def pointwise_product(f: CircleFourier, g: CircleFourier, M_out: int) -> CircleFourier:
    """Cauchy convolution of coefficients, truncated to |n| <= M_out."""
    if M_out < 1:
        raise ValueError("M_out must be positive")
    full = np.convolve(f.coeffs, g.coeffs)  # modes -(Mf+Mg) .. Mf+Mg
    M_full = f.max_mode + g.max_mode
    out = np.zeros(2 * M_out + 1, dtype=complex)
    k = min(M_out, M_full)
    out[M_out - k : M_out + k + 1] = full[M_full - k : M_full + k + 1]
    truncated = f.truncated or g.truncated or (M_out < M_full)
    return CircleFourier(out, f.is_real and g.is_real, truncated)


def sigma(f: CircleFourier, g: CircleFourier) -> float:
    """Literal symplectic integral int f g' dtheta, exact from coefficients."""
    if not (f.is_real and g.is_real):
        raise ValueError("sigma requires real functions")
    M = max(f.max_mode, g.max_mode)
    a, b = f.pad(M).coeffs, g.pad(M).coeffs
    ns = np.arange(-M, M + 1)
    # int f g' dtheta = -2 pi i sum_n n f_n g_{-n}
    s = -TWO_PI * 1j * np.sum(ns * a * b[::-1])
    return float(s.real)


def sobolev_half_sq(f: CircleFourier) -> float:
    """Sum_{k>=1} k |c_k|^2; equals the squared Fock norm of the smeared current on the vacuum."""
    if not f.is_real:
        raise ValueError("sobolev_half_sq requires a real function")
    M = f.max_mode
    ks = np.arange(1, M + 1)
    return float(np.sum(ks * np.abs(f.coeffs[M + 1 :]) ** 2))


# ---------------------------------------------------------------------------
# Cayley transform


def cayley_t_of_theta(theta: float) -> float:
    """The unique t with -(t-i)/(t+i) = -e^{i theta}; t(theta) = -cot(theta/2).

    theta = 0 (the wrap point) maps to the point at infinity and returns inf.
    """
    if not 0.0 <= theta < TWO_PI:
        raise ValueError("theta must lie in [0, 2pi)")
    if theta == 0.0:
        return math.inf
    return -math.cos(theta / 2.0) / math.sin(theta / 2.0)


def theta_of_t(t):
    """Inverse of cayley_t_of_theta, valued in (0, 2pi)."""
    return 2.0 * np.arctan2(1.0, -np.asarray(t, dtype=float))


def _t_of_theta_arr(theta):
    return -np.cos(theta / 2.0) / np.sin(theta / 2.0)


def _jacobian_dt_dtheta(theta):
    s = np.sin(theta / 2.0)
    return 0.5 / (s * s)


# ---------------------------------------------------------------------------
# Line integrals


def _simpson_on(fvals_fn, a, b, npts):
    n = max(int(npts), 5) | 1
    x = np.linspace(a, b, n)
    return simpson(fvals_fn(x), x=x)


def _cut_integral(f: LineObject, eps: float, npts: int) -> float:
    """int f(t) dt as a circle integral over [eps, 2pi - eps]."""
    repr_ = f.circle_repr

    def integrand(th):
        return np.asarray(repr_(th)) * _jacobian_dt_dtheta(th)

    if isinstance(repr_, PiecewiseLinearCircle):
        # The Jacobian is singular only at the wrap point theta = 0 (mod 2pi):
        # clip a segment only where it actually touches it.
        pieces = []
        for a, b, va, vb in repr_.segments():
            if va == 0.0 and vb == 0.0:
                continue
            if b > TWO_PI + 1e-12:
                pieces.append((a, TWO_PI))
                pieces.append((TWO_PI, b))
            else:
                pieces.append((a, b))
        total = 0.0
        for a, b in pieces:
            lo = eps if a < 1e-12 else a
            hi = TWO_PI - eps if b > TWO_PI - 1e-12 else b
            if abs(a - TWO_PI) < 1e-12:
                lo = TWO_PI + eps
            if hi <= lo:
                continue
            total += _simpson_on(integrand, lo, hi, npts)
        return total
    return _simpson_on(integrand, eps, TWO_PI - eps, npts)


def line_integral(f: LineObject, quad: QuadratureSpec = QuadratureSpec()) -> LineIntegralResult:
    """int_R f(t) dt by circle-side quadrature with the csc^2 Jacobian weight.

    A hard cut [0, eps) u (2pi - eps, 2pi) is excluded; halving the cut and
    doubling the nodes gives the convergence/divergence diagnostics.
    """
    if f.weight is not Weight.FUNCTION:
        raise ValueError("line_integral expects a scalar function")
    eps, npts = quad.endpoint_cut, quad.node_count
    i1 = _cut_integral(f, eps, npts)
    i2 = _cut_integral(f, eps, 2 * npts)
    i3 = _cut_integral(f, eps / 2.0, 2 * npts)
    quad_err = abs(i2 - i1)
    cut_gap = abs(i3 - i2)
    divergent = cut_gap > 1e-5 * (1.0 + abs(i2)) + 10.0 * quad_err
    value = i2 if divergent else i3
    return LineIntegralResult(value, divergent, quad_err + cut_gap)


def vectorfield_line_integral_f3g(
    F: LineObject, G: LineObject, quad: QuadratureSpec = QuadratureSpec()
) -> LineIntegralResult:
    """int_R F'''(t) G(t) dt for vector fields, by circle-side quadrature.

    Circle derivatives of the representatives are taken on the Fourier side
    and pushed forward through t(theta) = -cot(theta/2) pointwise.
    """
    if F.weight is not Weight.VECTOR_FIELD or G.weight is not Weight.VECTOR_FIELD:
        raise ValueError("both arguments must be vector fields")
    if F.vanishing_order + G.vanishing_order < 3:
        raise ValueError("combined vanishing order at infinity must be >= 3")
    hF, hG = F.circle_repr, G.circle_repr
    if not isinstance(hF, CircleFourier) or not isinstance(hG, CircleFourier):
        raise TypeError("vector fields must carry Fourier representatives")
    hF1 = derivative(hF)
    hF3 = derivative(derivative(hF1))

    def integrand(th):
        t = _t_of_theta_arr(th)
        w = _jacobian_dt_dtheta(th)
        f3 = (2.0 * np.asarray(hF1(th)) + (np.asarray(hF3(th)) - t * t * np.asarray(hF1(th))) / w) / w
        g = w * np.asarray(hG(th))
        return f3 * g * w

    eps, npts = quad.endpoint_cut, quad.node_count
    i1 = _simpson_on(integrand, eps, TWO_PI - eps, npts)
    i2 = _simpson_on(integrand, eps, TWO_PI - eps, 2 * npts)
    i3 = _simpson_on(integrand, eps / 2.0, TWO_PI - eps / 2.0, 2 * npts)
    quad_err = abs(i2 - i1)
    cut_gap = abs(i3 - i2)
    divergent = cut_gap > 1e-5 * (1.0 + abs(i2)) + 10.0 * quad_err
    value = i2 if divergent else i3
    return LineIntegralResult(value, divergent, quad_err + cut_gap)


# ---------------------------------------------------------------------------
# The g_n family


def gn_family(n: int) -> PiecewiseLinearCircle:
    """The n-th tent function of the non-normality sequence.

    Zero on [0, pi], rises to pi/2 at 3pi/2, falls back to 1/n at 2pi - 1/n,
    then drops with slope -2 to zero at 2pi - 1/(2n) and stays zero.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    nodes = [0.0, math.pi, 1.5 * math.pi, TWO_PI - 1.0 / n, TWO_PI - 0.5 / n]
    values = [0.0, 0.0, math.pi / 2.0, 1.0 / n, 0.0]
    return PiecewiseLinearCircle(np.array(nodes), np.array(values))


def g_limit() -> PiecewiseLinearCircle:
    """Limit of the g_n family: the full tent returning to zero only at 2pi."""
    nodes = [0.0, math.pi, 1.5 * math.pi]
    values = [0.0, 0.0, math.pi / 2.0]
    return PiecewiseLinearCircle(np.array(nodes), np.array(values))


# ---------------------------------------------------------------------------
# Resampling (dilation, translation, multiplication by t)


def _shifted_grid(K: int):
    return (np.arange(K) + 0.5) * TWO_PI / K


def _project_samples(theta, values, M: int) -> tuple[CircleFourier, float]:
    """Least-squares Fourier projection of samples on the half-shifted grid.

    Returns the band-limited projection and the rms mismatch between the
    reconstruction and the samples (the reported projection residual).
    """
    K = theta.size
    ns = np.arange(-M, M + 1)
    phases = np.exp(-1j * np.outer(ns, theta))
    coeffs = phases @ values / K
    coeffs = (coeffs + np.conj(coeffs[::-1])) / 2.0
    out = CircleFourier(coeffs, is_real=True)
    resid = float(np.sqrt(np.mean(np.abs(out(theta) - values) ** 2)))
    return out, resid


def _resample_line(
    f: LineObject, preimage, M: int, quad: QuadratureSpec
) -> tuple[LineObject, float]:
    """Re-project the line function t -> f(preimage(t)) onto M circle modes."""
    if f.weight is not Weight.FUNCTION:
        raise ValueError("resampling is defined for scalar functions")
    K = max(4 * M + 4, quad.node_count)
    th = _shifted_grid(K)
    t = _t_of_theta_arr(th)
    vals = np.asarray(f.circle_repr(theta_of_t(preimage(t))), dtype=float)
    scale = np.max(np.abs(vals)) + 1e-300
    near_wrap = np.minimum(th, TWO_PI - th) < quad.endpoint_cut
    if np.any(np.abs(vals[near_wrap]) > 1e-8 * scale):
        raise ValueError("support collides with the point at infinity")
    proj, resid = _project_samples(th, vals, M)
    return LineObject(proj, Weight.FUNCTION, f.vanishing_order), resid


def dilate_line(
    f: LineObject, s: float, M: int = 64, quad: QuadratureSpec = QuadratureSpec()
) -> tuple[LineObject, float]:
    """Line object for t -> f(e^{-s} t), re-projected to M modes.

    Returns the dilated object together with the projection residual.
    """
    lam = math.exp(-s)
    return _resample_line(f, lambda t: lam * t, M, quad)


def translate_line(
    f: LineObject, a: float, M: int = 64, quad: QuadratureSpec = QuadratureSpec()
) -> tuple[LineObject, float]:
    """Line object for t -> f(t - a), re-projected to M modes."""
    return _resample_line(f, lambda t: t - a, M, quad)


def multiply_by_t(
    h: CircleFourier, M: int = None, quad: QuadratureSpec = QuadratureSpec()
) -> tuple[CircleFourier, float]:
    """Projection of t(theta) * h(theta) = -cot(theta/2) h(theta).

    Well defined (bounded) when h vanishes at theta = 0; the caller is
    responsible for that.  Returns the projection and its residual.
    """
    if M is None:
        M = 2 * h.max_mode + 2
    K = max(4 * M + 4, quad.node_count)
    th = _shifted_grid(K)
    vals = _t_of_theta_arr(th) * np.asarray(h(th), dtype=float)
    return _project_samples(th, vals, M)


# ---------------------------------------------------------------------------
# Helpers for building test functions


def circle_from_real_modes(c0: float, cos_coeffs=(), sin_coeffs=()) -> CircleFourier:
    """Real function c0 + sum_k (a_k cos k theta + b_k sin k theta)."""
    M = max(len(cos_coeffs), len(sin_coeffs), 1)
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    coeffs[M] = c0
    for k in range(1, M + 1):
        a = cos_coeffs[k - 1] if k <= len(cos_coeffs) else 0.0
        b = sin_coeffs[k - 1] if k <= len(sin_coeffs) else 0.0
        coeffs[M + k] = (a - 1j * b) / 2.0
        coeffs[M - k] = (a + 1j * b) / 2.0
    return CircleFourier(coeffs, is_real=True)


def random_real_circle(M: int, rng: np.random.Generator, scale: float = 1.0) -> CircleFourier:
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    coeffs[M] = scale * rng.standard_normal()
    pos = scale * (rng.standard_normal(M) + 1j * rng.standard_normal(M)) / 2.0
    coeffs[M + 1 :] = pos
    coeffs[:M] = np.conj(pos[::-1])
    return CircleFourier(coeffs, is_real=True)


def gaussian_bump_line(center: float, width: float, M: int = 64,
                       quad: QuadratureSpec = QuadratureSpec()) -> tuple[LineObject, float]:
    """Line object for exp(-((t - center)/width)^2), projected to M modes."""
    K = max(4 * M + 4, quad.node_count)
    th = _shifted_grid(K)
    t = _t_of_theta_arr(th)
    vals = np.exp(-(((t - center) / width) ** 2))
    proj, resid = _project_samples(th, vals, M)
    return LineObject(proj, Weight.FUNCTION), resid


def circle_to_json(f: CircleFourier) -> dict:
    return {
        "M": f.max_mode,
        "re": f.coeffs.real.tolist(),
        "im": f.coeffs.imag.tolist(),
    }


def circle_from_json(obj: dict) -> CircleFourier:
    coeffs = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if coeffs.size != 2 * int(obj["M"]) + 1:
        raise ValueError("inconsistent serialized mode count")
    sym = np.allclose(coeffs, np.conj(coeffs[::-1]), atol=1e-12)
    return CircleFourier(coeffs, is_real=bool(sym))
