"""Branch expansions at smooth affine points and orders of vanishing."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curve import CurveFamilyParams, PlaneCurve, affine_values, norm_minus_one_roots, tu_model_polynomial
from .gf import GF
from .poly import BiPoly, kernel_codes

DEFAULT_CAP_FACTOR = 8


class SingularPointError(ValueError):
    pass


class OrderCapExceeded(RuntimeError):
    """No nonzero coefficient up to the precision cap; g may vanish on the curve."""


# --- truncated series over GF, lists of codes, index = power of t -------------

def _s_mul(F: GF, a, b, N):
    out = [0] * (N + 1)
    add, mul = F.add, F.mul
    bnz = [(j, c) for j, c in enumerate(b[: N + 1]) if c]
    for i, ai in enumerate(a[: N + 1]):
        if ai:
            for j, bj in bnz:
                if i + j > N:
                    break
                out[i + j] = add(out[i + j], mul(ai, bj))
    return out


def _s_frob(F: GF, a, j, N):
    pj = F.p**j
    out = [0] * (N + 1)
    for i, c in enumerate(a):
        if i * pj > N:
            break
        out[i * pj] = F.frob(c, j)
    return out


def _s_pow(F: GF, a, e, N):
    result = [1] + [0] * N
    j = 0
    while e:
        e, d = divmod(e, F.p)
        if d:
            fa = _s_frob(F, a, j, N)
            for _ in range(d):
                result = _s_mul(F, result, fa, N)
        j += 1
    return result


def _s_inv(F: GF, a, N):
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term")
    inv0 = F.inv(a[0])
    out = [inv0] + [0] * N
    for k in range(1, N + 1):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                acc = F.add(acc, F.mul(a[i], out[k - i]))
        out[k] = F.mul(F.neg(acc), inv0)
    return out


def _s_axpy(F: GF, c, a, acc):
    if c == 0:
        return acc
    add, mul = F.add, F.mul
    return [add(x, mul(c, y)) if y else x for x, y in zip(acc, a)]


@dataclass
class TruncatedSeries:
    """A branch through (a, b): the dependent coordinate as a series in t.

    ``param`` is the coordinate used as local parameter: for ``"x"`` the branch
    is (a + t, sum coeffs[i] t^i), for ``"y"`` it is (sum coeffs[i] t^i, b + t).
    """

    field: GF
    point: tuple[int, int]
    coeffs: list[int]
    precision: int
    param: str = "x"
    residual_order: int = dc_field(default=-1)

    def coordinates(self):
        """Series of x and y at the working precision."""
        N = self.precision
        a, b = self.point
        lin = [a if self.param == "x" else b, 1] + [0] * (N - 1)
        return (lin, self.coeffs) if self.param == "x" else (self.coeffs, lin)


def eval_on_branch(g: BiPoly, S: TruncatedSeries) -> list[int]:
    """g(x(t), y(t)) mod t^(N+1).

    Horner in the parameter coordinate (multiplication by base + t is linear
    time); powers of the other coordinate are built with Frobenius steps.
    """
    F, N = S.field, S.precision
    pi, oi = (0, 1) if S.param == "x" else (1, 0)
    base = S.point[pi]
    other = S.coordinates()[oi]
    groups = {}
    for m, c in g.terms.items():
        groups.setdefault(m[pi], {})[m[oi]] = c
    powers = {}

    def power(e):
        if e not in powers:
            powers[e] = _s_pow(F, other, e, N)
        return powers[e]

    acc = [0] * (N + 1)
    for d in range(max(groups, default=0), -1, -1):
        # acc *= (base + t)
        shifted = [0] + acc[:N]
        acc = [F.add(F.mul(base, x), y) for x, y in zip(acc, shifted)]
        for e, c in groups.get(d, {}).items():
            acc = _s_axpy(F, c, power(e), acc)
    return acc


def default_precision(curve: PlaneCurve) -> int:
    if curve.params is not None:
        return 2 * curve.params.q ** (2 * curve.params.n + 1)
    return 2 * curve.degree


def _code(F: GF, v) -> int:
    """Codes pass through; field elements are converted."""
    return int(v) if isinstance(v, (int, np.integer)) else F.coerce(v)


def _at(g: BiPoly, a: int, b: int) -> int:
    return int(g.eval_codes(np.array([a]), np.array([b]))[0])


def expand_branch(curve: PlaneCurve, Q, precision: int | None = None) -> TruncatedSeries:
    """Newton lifting of the branch through the smooth affine point Q."""
    F = curve.field
    a, b = (_code(F, v) for v in Q)
    N = default_precision(curve) if precision is None else precision
    f = curve.f
    if _at(f, a, b) != 0:
        raise ValueError(f"({a}, {b}) is not on the curve")
    fx, fy = f.dx(), f.dy()
    if _at(fy, a, b):
        param, deriv, start = "x", fy, b
    elif _at(fx, a, b):
        param, deriv, start = "y", fx, a
    else:
        raise SingularPointError(f"({a}, {b}) is singular")
    S = TruncatedSeries(F, (a, b), [start] + [0] * N, N, param)
    known = 1  # correct coefficients so far
    while known <= N:
        r = eval_on_branch(f, S)
        d = eval_on_branch(deriv, S)
        step = _s_mul(F, r, _s_inv(F, d, N), N)
        S.coeffs = [F.sub(x, y) for x, y in zip(S.coeffs, step)]
        known *= 2
    res = eval_on_branch(f, S)
    if any(res):
        raise AssertionError("Hensel residual does not vanish to the working precision")
    S.residual_order = N + 1
    return S


def _lowest(series):
    return next((i for i, c in enumerate(series) if c), None)


def ord_at(curve: PlaneCurve, Q, g: BiPoly, precision: int | None = None,
           cap_factor: int = DEFAULT_CAP_FACTOR) -> int:
    """Order of vanishing of g along the branch at the smooth point Q."""
    N0 = default_precision(curve) if precision is None else precision
    N = N0
    while True:
        S = expand_branch(curve, Q, N)
        o = _lowest(eval_on_branch(g, S))
        if o is not None:
            return o
        if N >= N0 * cap_factor:
            raise OrderCapExceeded(f"g vanishes to order > {N} at {Q}")
        N *= 2


def gap_function(params: CurveFamilyParams, Q, param: str = "x") -> BiPoly:
    """(x-a)^(q^(2n+1)-q-2) ((x-a)^(q+1) + (y-b)^(q+1)); roles swapped for param y."""
    F, q, n = params.field, params.q, params.n
    a, b = Q
    xa = BiPoly._raw(F, {(1, 0): 1, **({(0, 0): F.neg(a)} if a else {})})
    yb = BiPoly._raw(F, {(0, 1): 1, **({(0, 0): F.neg(b)} if b else {})})
    lead = xa if param == "x" else yb
    return lead ** (q ** (2 * n + 1) - q - 2) * (xa ** (q + 1) + yb ** (q + 1))


@dataclass
class GapCertificate:
    point: tuple[int, int]
    order: int
    expected: int
    parameter: str
    line_orders: list[int]

    @property
    def valid(self) -> bool:
        return self.order == self.expected and all(o == 1 for o in self.line_orders)


def verify_gap_at_affine(curve: PlaneCurve, Q, precision: int | None = None) -> GapCertificate:
    """ord_Q of the explicit canonical-series function is q^(2n+1) - 1.

    Also records ord_Q(x - a - alpha (y - b)) for every alpha^(q+1) = -1; all
    equal to one means none of those lines is tangent at Q.
    """
    params = curve.params
    if params is None or curve.model != "xy":
        raise ValueError("needs an xy-model curve of the family")
    F = curve.field
    a, b = (_code(F, v) for v in Q)
    S = expand_branch(curve, (a, b), precision)
    h = gap_function(params, (a, b), S.param)
    order = ord_at(curve, (a, b), h, precision)
    line_orders = []
    for al in norm_minus_one_roots(params):
        line = BiPoly._raw(F, {(1, 0): 1, (0, 1): F.neg(al)})
        const = F.neg(F.sub(a, F.mul(al, b)))
        if const:
            line = line + BiPoly._raw(F, {(0, 0): const})
        line_orders.append(ord_at(curve, (a, b), line, precision))
    return GapCertificate((a, b), order, params.q ** (2 * params.n + 1) - 1, S.param, line_orders)


def smooth_affine_points(curve: PlaneCurve) -> list[tuple[int, int]]:
    """All rational affine points where the gradient does not vanish."""
    vals = affine_values(curve)
    xs, ys = np.nonzero(vals == 0)
    gx = curve.fx().eval_codes(xs, ys)
    gy = curve.fy().eval_codes(xs, ys)
    keep = (gx != 0) | (gy != 0)
    return [(int(x), int(y)) for x, y in zip(xs[keep], ys[keep])]


def sample_smooth_points(curve: PlaneCurve, k: int, seed: int = 0) -> list[tuple[int, int]]:
    pts = smooth_affine_points(curve)
    rng = random.Random(seed)
    return sorted(rng.sample(pts, min(k, len(pts))))


@dataclass
class RamificationCheck:
    roots: list[int]
    constants: list[int | None]

    @property
    def holds(self) -> bool:
        return bool(self.roots) and all(c not in (None, 0) for c in self.constants)


def line_restriction_constant(tu_poly: BiPoly, u0: int) -> int | None:
    """g(t, u0) if it is a constant polynomial in t, else None."""
    F = tu_poly.field
    coeffs = {}
    for (i, j), c in tu_poly.terms.items():
        v = F.mul(c, F.pow(u0, j))
        coeffs[i] = F.add(coeffs.get(i, 0), v)
    if any(v for i, v in coeffs.items() if i > 0):
        return None
    return coeffs.get(0, 0)


def verify_total_ramification(params: CurveFamilyParams, c_prime: int | None = None) -> RamificationCheck:
    """Each line u = u0 with L(u0) = 0 meets the tu-model only at (1:0:0).

    Substituting u = u0 must leave the nonzero constant c'.
    """
    from .curve import build_cn_prime

    if c_prime is None:
        c_prime = build_cn_prime(params).c_prime
    g = tu_model_polynomial(params.L, c_prime)
    roots = kernel_codes(params.L)
    return RamificationCheck(roots, [line_restriction_constant(g, u0) for u0 in roots])
