"""Approximation toolkit: smooth interval windows with Mellin transforms,
Selberg box majorants/minorants on the torus, coefficient bounds, cube
tilings of polytopes, and tiled coefficient sums.

Conventions.  e(t) = exp(2*pi*i*t).  A trigonometric polynomial of degree M
in dimension d is stored through its per-axis coefficient arrays indexed by
m in [-M, M].  The d-dimensional minorant of a box is the standard
correction  sum_j f_j^- prod_{i != j} f_i^+  -  (d-1) prod_i f_i^+ ,
lowered by a constant so the mean-value defect matches the one-sided
extremal value (kappa + 2/(M+1))^d - (kappa + 1/(M+1))^d for equal sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .util import InvariantError

TWO_PI = 2.0 * math.pi


# --- smooth windows -------------------------------------------------------

def transition(y: float) -> float:
    """Smooth monotone step: 0 for y <= 0, 1 for y >= 1, C-infinity inside."""
    if y <= 0.0:
        return 0.0
    if y >= 1.0:
        return 1.0
    e1 = math.exp(-1.0 / y)
    e2 = math.exp(-1.0 / (1.0 - y))
    return e1 / (e1 + e2)


@dataclass(frozen=True)
class SmoothWindow:
    """The pair of smooth cutoffs around [x, x+h].

    sign "minus": supported on [x, x+h], equal to 1 on [x+u, x+h-u].
    sign "plus": supported on [x-u, x+h+u], equal to 1 on [x, x+h].
    """

    x: float
    h: float
    u: float
    sign: str

    def __post_init__(self):
        if self.sign not in ("minus", "plus"):
            raise ValueError("sign must be 'minus' or 'plus'")
        if not (0 < self.u and self.u <= self.h / 2 and self.x >= 2):
            raise ValueError("need 0 < u <= h/2 and x >= 2")

    @property
    def support(self) -> tuple[float, float]:
        if self.sign == "minus":
            return (self.x, self.x + self.h)
        return (self.x - self.u, self.x + self.h + self.u)

    @property
    def knots(self) -> tuple[float, float, float, float]:
        lo, hi = self.support
        return (lo, lo + self.u, hi - self.u, hi)


def window_eval(w: SmoothWindow, y: float) -> float:
    k0, k1, k2, k3 = w.knots
    if y <= k0 or y >= k3:
        return 0.0
    if y < k1:
        return transition((y - k0) / w.u)
    if y <= k2:
        return 1.0
    return transition((k3 - y) / w.u)


def mellin(w: SmoothWindow, s: complex, tol: float = 1e-10) -> complex:
    """G(s) = integral of g(y) y^(s-1) dy over the window support.

    The plateau is integrated in closed form; the two transition pieces use
    adaptive quadrature on real and imaginary parts separately.
    """
    s = complex(s)
    k0, k1, k2, k3 = w.knots
    # plateau [k1, k2], g = 1
    if s == 0:
        plateau = complex(math.log(k2 / k1))
    else:
        plateau = (_cpow(k2, s) - _cpow(k1, s)) / s
    total = plateau
    for lo, hi, rising in ((k0, k1, True), (k2, k3, False)):
        total += _transition_integral(w, lo, hi, rising, s, tol)
    return total


def _cpow(y: float, s: complex) -> complex:
    # exp(s log y) loses absolute accuracy for large y; keep small integer
    # exponents exact so G(1) comes out with full precision
    if s.imag == 0.0 and s.real == round(s.real) and abs(s.real) <= 8:
        return complex(y ** int(s.real))
    return complex(np.exp(s * math.log(y)))


def _transition_integral(w: SmoothWindow, lo: float, hi: float, rising: bool,
                         s: complex, tol: float) -> complex:
    def g(y: float) -> float:
        if rising:
            return transition((y - lo) / w.u)
        return transition((hi - y) / w.u)

    def re_part(y: float) -> float:
        return g(y) * (y ** (s.real - 1.0)) * math.cos(s.imag * math.log(y))

    def im_part(y: float) -> float:
        return g(y) * (y ** (s.real - 1.0)) * math.sin(s.imag * math.log(y))

    eps = tol / 4.0
    re_val, re_err = quad(re_part, lo, hi, epsabs=eps, epsrel=0.0, limit=500)
    im_val, im_err = quad(im_part, lo, hi, epsabs=eps, epsrel=0.0, limit=500)
    if re_err + im_err > tol:
        raise ArithmeticError(
            f"quadrature achieved {re_err + im_err:.2e} > requested {tol:.2e}")
    return complex(re_val, im_val)


# --- one-dimensional Selberg polynomials ----------------------------------

def _jhat(t: float) -> float:
    """Fourier transform of the Beurling kernel J on [-1, 1]."""
    at = abs(t)
    if at >= 1.0:
        return 0.0
    if t == 0.0:
        return 1.0
    return math.pi * t * (1.0 - at) / math.tan(math.pi * t) + at


def _vaaler_coeff(m: int, big_k: int) -> complex:
    # hat V(m) = -Jhat(m/K) / (2 pi i m)
    return complex(0.0, 1.0) * _jhat(m / big_k) / (TWO_PI * m)


def _interval_coeffs(big_m: int, a: float, b: float, sign: str) -> np.ndarray:
    """Coefficients of the Selberg majorant/minorant of 1_[a,b], index m+M."""
    big_k = big_m + 1
    eps = 1.0 if sign == "plus" else -1.0
    coeffs = np.zeros(2 * big_m + 1, dtype=np.complex128)
    coeffs[big_m] = (b - a) + eps / big_k
    for m in range(1, big_m + 1):
        fejer = (1.0 - m / big_k) / (2.0 * big_k)
        vm = _vaaler_coeff(m, big_k)
        ea = np.exp(-TWO_PI * 1j * m * a)
        eb = np.exp(-TWO_PI * 1j * m * b)
        cm = vm * (eb - ea) + eps * fejer * (eb + ea)
        coeffs[big_m + m] = cm
        coeffs[big_m - m] = np.conj(cm)
    return coeffs


Box = tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class SelbergApprox:
    """Majorant or minorant of a d-dimensional box indicator on the torus.

    Stores the per-axis one-dimensional coefficient arrays; full coefficients
    are combined on demand (the d = 3, M = 200 tensor would not fit in memory
    as a dict).
    """

    d: int
    M: int
    sign: str
    box: Box
    axis_plus: tuple[np.ndarray, ...]
    axis_minus: tuple[np.ndarray, ...] | None
    shift: float  # subtracted from the m = 0 coefficient (minorant only)
    zero: float   # the exact m = 0 coefficient

    def coeff(self, mvec) -> complex:
        mvec = tuple(int(v) for v in np.atleast_1d(mvec))
        if len(mvec) != self.d or any(abs(v) > self.M for v in mvec):
            return 0.0 + 0.0j
        if self.sign == "plus":
            out = 1.0 + 0.0j
            for j, m in enumerate(mvec):
                out *= self.axis_plus[j][self.M + m]
            return out
        out = self._combine_minus(mvec)
        if all(m == 0 for m in mvec):
            out -= self.shift
        return out

    def _combine_minus(self, mvec) -> complex:
        prod_plus = 1.0 + 0.0j
        for j, m in enumerate(mvec):
            prod_plus *= self.axis_plus[j][self.M + m]
        total = -(self.d - 1) * prod_plus
        for j in range(self.d):
            term = self.axis_minus[j][self.M + mvec[j]]
            for i in range(self.d):
                if i != j:
                    term *= self.axis_plus[i][self.M + mvec[i]]
            total += term
        return total

    def zero_coeff(self) -> float:
        return self.zero

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate the real polynomial at points of shape (N, d) or (N,)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[0] == self.d and pts.shape[1] != self.d and pts.ndim == 2 and points.ndim == 1:
            pts = pts.T
        if pts.shape[1] != self.d:
            pts = pts.reshape(-1, self.d)
        vplus = [_eval_axis(self.axis_plus[j], self.M, pts[:, j]) for j in range(self.d)]
        if self.sign == "plus":
            out = np.ones(len(pts))
            for v in vplus:
                out *= v
            return out
        vminus = [_eval_axis(self.axis_minus[j], self.M, pts[:, j]) for j in range(self.d)]
        prod_plus = np.ones(len(pts))
        for v in vplus:
            prod_plus *= v
        out = -(self.d - 1) * prod_plus
        for j in range(self.d):
            term = vminus[j].copy()
            for i in range(self.d):
                if i != j:
                    term *= vplus[i]
            out += term
        return out - self.shift

    def coeff_items(self):
        """Iterate (mvec, coefficient) over the full support (d <= 2 advisable)."""
        rng = range(-self.M, self.M + 1)
        if self.d == 1:
            for m in rng:
                yield (m,), self.coeff((m,))
        elif self.d == 2:
            for m1 in rng:
                for m2 in rng:
                    yield (m1, m2), self.coeff((m1, m2))
        else:
            for m1 in rng:
                for m2 in rng:
                    for m3 in rng:
                        yield (m1, m2, m3), self.coeff((m1, m2, m3))


def _eval_axis(coeffs: np.ndarray, big_m: int, phis: np.ndarray,
               chunk: int = 8192) -> np.ndarray:
    ms = np.arange(-big_m, big_m + 1)
    out = np.empty(len(phis))
    for i in range(0, len(phis), chunk):
        block = phis[i:i + chunk]
        e = np.exp(TWO_PI * 1j * np.outer(block, ms))
        out[i:i + chunk] = (e @ coeffs).real
    return out


def selberg_interval(big_m: int, a: float, b: float, sign: str) -> SelbergApprox:
    """One-dimensional Selberg approximation to the indicator of [a, b]."""
    if not 0 < b - a < 1:
        raise ValueError("need 0 < b - a < 1")
    if big_m < 1:
        raise ValueError("degree must be >= 1")
    return selberg_box(big_m, ((a, b),), sign)


def selberg_box(big_m: int, box: Box, sign: str) -> SelbergApprox:
    """Selberg majorant/minorant of a d-dimensional box, d <= 3."""
    d = len(box)
    if d > 3:
        raise ValueError("dimensions above 3 are not supported")
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    for a, b in box:
        if not 0 < b - a < 1:
            raise ValueError(f"degenerate side ({a}, {b})")
    axis_plus = tuple(_interval_coeffs(big_m, a, b, "plus") for a, b in box)
    if sign == "plus":
        zero = 1.0
        for c in axis_plus:
            zero *= c[big_m].real
        return SelbergApprox(d=d, M=big_m, sign="plus", box=tuple(box),
                             axis_plus=axis_plus, axis_minus=None,
                             shift=0.0, zero=zero)
    axis_minus = tuple(_interval_coeffs(big_m, a, b, "minus") for a, b in box)
    approx = SelbergApprox(d=d, M=big_m, sign="minus", box=tuple(box),
                           axis_plus=axis_plus, axis_minus=axis_minus,
                           shift=0.0, zero=0.0)
    raw = approx._combine_minus((0,) * d).real
    sides = [b - a for a, b in box]
    u = 1.0 / (big_m + 1)
    if max(sides) - min(sides) < 1e-15:
        # equal sides: lower to the extremal mean-value defect
        kappa = sides[0]
        target = kappa ** d + (kappa + u) ** d - (kappa + 2 * u) ** d
        shift = raw - target
        if shift < -1e-12:
            raise InvariantError("minorant shift came out negative")
        shift = max(shift, 0.0)
    else:
        target = raw
        shift = 0.0
    return SelbergApprox(d=d, M=big_m, sign="minus", box=tuple(box),
                         axis_plus=axis_plus, axis_minus=axis_minus,
                         shift=shift, zero=raw - shift)


def coeff_bound_check(approx: SelbergApprox, flag_const: float = 10.0) -> dict:
    """Measure |coeff(m)| against the envelope
    max(kappa^(d-1)/K, (2/K)^d) + prod_j min(kappa, 1/|m_j|) over all
    |m_j| <= M, with K = M + 1 the intrinsic degree scale.

    The (2/K)^d term is the exact mean-value defect of the minorant at
    m = 0, the largest constant contribution either sign produces."""
    d, big_m = approx.d, approx.M
    kappa = max(b - a for a, b in approx.box)
    big_k = big_m + 1
    const = max(kappa ** (d - 1) / big_k, (2.0 / big_k) ** d)
    ms = np.arange(-big_m, big_m + 1)
    prod_bound_axis = np.minimum(kappa, 1.0 / np.maximum(np.abs(ms), 1))
    prod_bound_axis[big_m] = kappa

    axes_p = [np.abs(c) for c in approx.axis_plus]
    if approx.sign == "minus":
        axes_m = [np.abs(c) for c in approx.axis_minus]

    worst = 0.0
    worst_m = (0,) * d
    if d == 1:
        mags = axes_p[0].copy() if approx.sign == "plus" else None
        if mags is None:
            mags = np.abs([approx.coeff((m,)) for m in ms])
        bounds = const + prod_bound_axis
        ratios = mags / bounds
        i = int(np.argmax(ratios))
        worst, worst_m = float(ratios[i]), (int(ms[i]),)
    elif d == 2:
        if approx.sign == "plus":
            mags = np.abs(np.outer(approx.axis_plus[0], approx.axis_plus[1]))
        else:
            comb = (np.outer(approx.axis_minus[0], approx.axis_plus[1])
                    + np.outer(approx.axis_plus[0], approx.axis_minus[1])
                    - np.outer(approx.axis_plus[0], approx.axis_plus[1]))
            comb[big_m, big_m] -= approx.shift
            mags = np.abs(comb)
        bounds = const + np.outer(prod_bound_axis, prod_bound_axis)
        ratios = mags / bounds
        i, j = np.unravel_index(np.argmax(ratios), ratios.shape)
        worst, worst_m = float(ratios[i, j]), (int(ms[i]), int(ms[j]))
    else:
        pb2 = np.outer(prod_bound_axis, prod_bound_axis)
        for k, m3 in enumerate(ms):
            if approx.sign == "plus":
                plane = np.outer(approx.axis_plus[0], approx.axis_plus[1]) \
                    * approx.axis_plus[2][k]
            else:
                plane = (np.outer(approx.axis_minus[0], approx.axis_plus[1])
                         * approx.axis_plus[2][k]
                         + np.outer(approx.axis_plus[0], approx.axis_minus[1])
                         * approx.axis_plus[2][k]
                         + np.outer(approx.axis_plus[0], approx.axis_plus[1])
                         * (approx.axis_minus[2][k] - 2 * approx.axis_plus[2][k]))
                if m3 == 0:
                    plane[big_m, big_m] -= approx.shift
            bounds = const + pb2 * prod_bound_axis[k]
            ratios = np.abs(plane) / bounds
            i, j = np.unravel_index(np.argmax(ratios), ratios.shape)
            if ratios[i, j] > worst:
                worst = float(ratios[i, j])
                worst_m = (int(ms[i]), int(ms[j]), int(m3))
    return {
        "max_ratio": worst,
        "argmax_m": worst_m,
        "flagged": worst > flag_const,
        "flag_const": flag_const,
    }


# --- polytopes and tilings ------------------------------------------------

@dataclass(frozen=True)
class PolytopeSpec:
    """A region on the torus T^d: a union of axis-aligned boxes, or a convex
    polygon in dimension 2.  `base_boxes` describe the fixed polytope whose
    dilation by `dilation` about `center` reproduces the region, when that
    homothety structure is known."""

    dim: int
    boxes: tuple[Box, ...] = ()
    polygon: tuple[tuple[float, float], ...] | None = None
    base_boxes: tuple[Box, ...] | None = None
    center: tuple[float, ...] | None = None
    dilation: float | None = None

    @property
    def is_empty(self) -> bool:
        return not self.boxes and self.polygon is None

    def volume(self) -> float:
        if self.polygon is not None:
            return _polygon_area(self.polygon)
        total = 0.0
        for box in self.boxes:
            v = 1.0
            for a, b in box:
                v *= (b - a)
            total += v
        return total

    def contains(self, point) -> bool:
        pt = np.atleast_1d(np.asarray(point, dtype=float))
        if self.polygon is not None:
            return bool(_polygon_contains(self.polygon, pt[None, 0], pt[None, 1])[0])
        for box in self.boxes:
            if all(((p - a) % 1.0) <= (b - a) for (a, b), p in zip(box, pt)):
                return True
        return False


def _polygon_area(verts) -> float:
    v = np.asarray(verts, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _polygon_halfplanes(verts):
    """(normals, offsets) with inside <=> n . p <= c for a convex CCW polygon."""
    v = np.asarray(verts, dtype=float)
    if _signed_area(v) < 0:
        v = v[::-1]
    edges = np.roll(v, -1, axis=0) - v
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)  # outward
    offsets = np.einsum("ij,ij->i", normals, v)
    return normals, offsets


def _signed_area(v) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _polygon_contains(verts, xs, ys) -> np.ndarray:
    normals, offsets = _polygon_halfplanes(verts)
    ok = np.ones(len(xs), dtype=bool)
    for (nx, ny), c in zip(normals, offsets):
        ok &= nx * xs + ny * ys <= c + 1e-12
    return ok


@dataclass(frozen=True)
class CubeTiling:
    """Axis-aligned grid cells of side kappa0 anchored at `anchor`, classified
    against a region: `inner` cells lie fully inside, `outer` cells meet it."""

    dim: int
    kappa0: float
    anchor: tuple[float, ...]
    cells_per_axis: int
    inner: tuple[tuple[int, ...], ...]
    outer: tuple[tuple[int, ...], ...]
    region_vol: float

    def cell_box(self, idx: tuple[int, ...]) -> Box:
        out = []
        for j, i in enumerate(idx):
            lo = self.anchor[j] + i * self.kappa0
            hi = self.anchor[j] + min((i + 1) * self.kappa0, 1.0)
            out.append((lo, hi))
        return tuple(out)

    @property
    def inner_vol(self) -> float:
        return sum(self._cell_vol(i) for i in self.inner)

    @property
    def outer_vol(self) -> float:
        return sum(self._cell_vol(i) for i in self.outer)

    def _cell_vol(self, idx) -> float:
        v = 1.0
        for j, i in enumerate(idx):
            v *= min((i + 1) * self.kappa0, 1.0) - i * self.kappa0
        return v


def tile(poly: PolytopeSpec, kappa0: float,
         anchor: tuple[float, ...] | None = None) -> CubeTiling:
    """Classify the anchored kappa0-grid cells against the region."""
    d = poly.dim
    if anchor is None:
        anchor = poly.center if poly.center is not None else (0.0,) * d
    n = math.ceil(1.0 / kappa0)
    edges_lo = np.minimum(np.arange(n) * kappa0, 1.0)
    edges_hi = np.minimum((np.arange(n) + 1) * kappa0, 1.0)

    if poly.polygon is not None:
        inside, meets = _classify_polygon(poly.polygon, anchor, edges_lo, edges_hi)
    else:
        inside, meets = _classify_boxes(poly.boxes, d, anchor, edges_lo, edges_hi)

    inner = tuple(map(tuple, np.argwhere(inside)))
    outer = tuple(map(tuple, np.argwhere(meets)))
    return CubeTiling(dim=d, kappa0=kappa0, anchor=tuple(anchor),
                      cells_per_axis=n, inner=inner, outer=outer,
                      region_vol=poly.volume())


def _classify_boxes(boxes, d, anchor, edges_lo, edges_hi):
    n = len(edges_lo)
    shape = (n,) * d
    inside = np.zeros(shape, dtype=bool)
    meets = np.zeros(shape, dtype=bool)
    for box in boxes:
        axis_in, axis_meet = [], []
        for j, (a, b) in enumerate(box):
            lo = (a - anchor[j]) % 1.0
            hi = lo + (b - a)
            seg_in = np.zeros(n, dtype=bool)
            seg_meet = np.zeros(n, dtype=bool)
            for s_lo, s_hi in _split_unit(lo, hi):
                seg_in |= (edges_lo >= s_lo - 1e-12) & (edges_hi <= s_hi + 1e-12)
                seg_meet |= (edges_hi > s_lo + 1e-12) & (edges_lo < s_hi - 1e-12)
            axis_in.append(seg_in)
            axis_meet.append(seg_meet)
        box_in = axis_in[0]
        box_meet = axis_meet[0]
        for j in range(1, d):
            sl = (slice(None),) * j + (None,)
            box_in = box_in[..., None] & axis_in[j][(None,) * j]
            box_meet = box_meet[..., None] & axis_meet[j][(None,) * j]
        inside |= box_in
        meets |= box_meet
    return inside, meets


def _split_unit(lo: float, hi: float):
    """Split an interval given in anchor coordinates across the wrap at 1."""
    if hi <= 1.0 + 1e-15:
        return [(lo, min(hi, 1.0))]
    return [(lo, 1.0), (0.0, hi - 1.0)]


def _classify_polygon(verts, anchor, edges_lo, edges_hi):
    # polygon given in absolute (unwrapped) plane coordinates; the grid is
    # anchored likewise, no torus wrap (regions of interest are small)
    n = len(edges_lo)
    ax, ay = anchor
    x_lo = ax + edges_lo
    x_hi = ax + edges_hi
    y_lo = ay + edges_lo
    y_hi = ay + edges_hi
    gx_lo, gy_lo = np.meshgrid(x_lo, y_lo, indexing="ij")
    gx_hi, gy_hi = np.meshgrid(x_hi, y_hi, indexing="ij")

    normals, offsets = _polygon_halfplanes(verts)
    inside = np.ones((n, n), dtype=bool)
    for (nx, ny), c in zip(normals, offsets):
        # worst corner of each cell for the half-plane n . p <= c
        px = np.where(nx >= 0, gx_hi, gx_lo)
        py = np.where(ny >= 0, gy_hi, gy_lo)
        inside &= nx * px + ny * py <= c + 1e-12

    # separating-axis test for intersection
    meets = np.ones((n, n), dtype=bool)
    v = np.asarray(verts, dtype=float)
    cx = (gx_lo + gx_hi) / 2.0
    cy = (gy_lo + gy_hi) / 2.0
    hx = (gx_hi - gx_lo) / 2.0
    hy = (gy_hi - gy_lo) / 2.0
    axes = [(1.0, 0.0), (0.0, 1.0)] + [tuple(nrm) for nrm in normals]
    for (axx, axy) in axes:
        proj = v[:, 0] * axx + v[:, 1] * axy
        pmin, pmax = proj.min(), proj.max()
        ccent = cx * axx + cy * axy
        rad = np.abs(axx) * hx + np.abs(axy) * hy
        meets &= (ccent - rad <= pmax - 1e-12) & (ccent + rad >= pmin + 1e-12)
    return inside, meets


# --- tiled coefficient sums -----------------------------------------------

@dataclass(frozen=True)
class BoxSum:
    """Sum of translated Selberg polynomials over the cubes of a tiling."""

    sign: str
    M: int
    dim: int
    cubes: tuple[SelbergApprox, ...]

    def zero_coeff(self) -> float:
        return float(sum(c.zero_coeff() for c in self.cubes))

    def coeff(self, mvec) -> complex:
        return sum((c.coeff(mvec) for c in self.cubes), 0.0 + 0.0j)

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[-1] != self.dim:
            pts = pts.reshape(-1, self.dim)
        out = np.zeros(len(pts))
        for c in self.cubes:
            out += c.eval_many(pts)
        return out


def box_sum(tiling: CubeTiling, big_m: int, sign: str) -> BoxSum:
    """Combine per-cube Selberg polynomials: minorants over the inner cells,
    majorants over the outer cells, in sorted cube order for reproducibility."""
    cells = tiling.inner if sign == "minus" else tiling.outer
    cubes = tuple(selberg_box(big_m, tiling.cell_box(idx), sign)
                  for idx in sorted(cells))
    return BoxSum(sign=sign, M=big_m, dim=tiling.dim, cubes=cubes)


# --- default parameter shapes ---------------------------------------------

@dataclass(frozen=True)
class DefaultParams:
    tau: float
    tau_prime: float
    u: float
    M: int
    kappa0: float


def default_params(x: float, delta: float, delta_prime: float,
                   n: int = 2, a_exp: float = 2.0) -> DefaultParams:
    """Window, degree, and tiling defaults: u = x^(1 - tau'), M = ceil(x^tau),
    kappa0 = (log x)^-(A+1), with delta, delta' < tau' < tau < 2/(5n)."""
    tau = 0.9 * (2.0 / (5.0 * n))
    base = max(delta, delta_prime)
    if base >= tau:
        raise ValueError("delta parameters too large for the default regime")
    tau_prime = 0.5 * (base + tau)
    u = x ** (1.0 - tau_prime)
    big_m = math.ceil(x ** tau)
    kappa0 = math.log(x) ** (-(a_exp + 1.0))
    return DefaultParams(tau=tau, tau_prime=tau_prime, u=u, M=big_m, kappa0=kappa0)
