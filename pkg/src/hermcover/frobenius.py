"""p^s-Frobenius nonclassicality of plane curves f(x, y) = 0 monic in y.

The curve is nonclassical for p^s exactly when

    h = f_x (x^(p^s) - x) + f_y (y^(p^s) - y)

vanishes on the curve, i.e. h = 0 mod f for irreducible f.  For small p^s the
remainder is computed symbolically.  For large p^s a smooth point over a finite
extension where h does not vanish certifies the classical verdict; only when no
such point turns up do we fall back to the symbolic reduction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .curve import CurveFamilyParams, PlaneCurve, build_cn
from .gf import GF, field, least_root_embedding, MAX_FIELD_ORDER
from .poly import BiPoly, pseudo_reduce

SYMBOLIC_CAP = 300
PROBE_MAX_ORDER = MAX_FIELD_ORDER
PROBE_TRIALS = 256


@dataclass
class FrobeniusReport:
    s: int
    power: int
    nonclassical: bool
    method: str
    remainder_terms: int = 0
    witness: tuple | None = None
    probe_degree: int | None = None

    def to_dict(self):
        return dict(self.__dict__)


def _as_poly(curve) -> BiPoly:
    return curve.f if isinstance(curve, PlaneCurve) else curve


def tangent_frobenius_poly(f: BiPoly, P: int) -> BiPoly:
    """f_x (x^P - x) + f_y (y^P - y)."""
    F = f.field
    m1 = F.neg(1)
    xp = BiPoly._raw(F, {(P, 0): 1, (1, 0): m1}, 2)
    yp = BiPoly._raw(F, {(0, P): 1, (0, 1): m1}, 2)
    return f.dx() * xp + f.dy() * yp


def coefficient_degree(f: BiPoly) -> int:
    """Degree over GF(p) of the smallest subfield holding all coefficients."""
    F = f.field
    d = 1
    for c in f.terms.values():
        e = next(k for k in range(1, F.k + 1) if F.k % k == 0 and F.frob(c, k) == c)
        d = d * e // math.gcd(d, e)
    return d


def _probe_degrees(p: int, d: int, s: int, max_order: int):
    K = d
    while p**K <= max_order:
        if s % K:
            yield K
        K += d


def _transport(f: BiPoly, d: int, probe: GF) -> BiPoly:
    """Image of f under GF(p^d) -> probe, through the subfield of f's field."""
    F = f.field
    sub = field(F.p, d)
    into_f = least_root_embedding(sub, F)
    into_probe = least_root_embedding(sub, probe)
    terms = {m: into_probe.code(into_f.preimage_code(c)) for m, c in f.terms.items()}
    return BiPoly._raw(probe, terms, 2)


def find_classical_witness(f: BiPoly, s: int, seed: int = 0, trials: int = PROBE_TRIALS,
                           max_order: int = PROBE_MAX_ORDER):
    """A smooth point over some GF(p^K), K not dividing s, where h is nonzero."""
    F = f.field
    P = F.p**s
    d = coefficient_degree(f)
    rng = random.Random(seed)
    for K in _probe_degrees(F.p, d, s, max_order):
        probe = field(F.p, K)
        g = _transport(f, d, probe)
        gx, gy = g.dx(), g.dy()
        ys = probe.all_codes()
        for _ in range(trials):
            a = rng.randrange(probe.order)
            roots = np.nonzero(g.eval_codes(np.int64(a), ys) == 0)[0]
            for b in roots.tolist():
                A, B = np.array([a]), np.array([b])
                fx, fy = int(gx.eval_codes(A, B)[0]), int(gy.eval_codes(A, B)[0])
                if fx == 0 and fy == 0:
                    continue
                hv = probe.add(probe.mul(fx, probe.sub(probe.pow(a, P), a)),
                               probe.mul(fy, probe.sub(probe.pow(b, P), b)))
                if hv:
                    return K, (a, b)
    return None


def is_frobenius_nonclassical(curve, s: int, symbolic_cap: int = SYMBOLIC_CAP,
                              seed: int = 0) -> FrobeniusReport:
    f = _as_poly(curve)
    if not f.is_monic_in_y():
        raise ValueError("f is not monic in y")
    if f.dx().is_zero() and f.dy().is_zero():
        raise ValueError("f_x and f_y both vanish identically")
    if s < 1:
        raise ValueError("s must be positive")
    P = f.field.p**s
    if P > symbolic_cap:
        found = find_classical_witness(f, s, seed=seed)
        if found is not None:
            K, pt = found
            return FrobeniusReport(s, P, False, "point", witness=pt, probe_degree=K)
    h = tangent_frobenius_poly(f, P)
    assert h.deg_y <= P + f.deg_y - 1
    r = pseudo_reduce(h, f)
    return FrobeniusReport(s, P, r.is_zero(), "symbolic", remainder_terms=len(r.terms))


def nonclassical_window(curve, s_max: int | None = None, **kw) -> dict[int, FrobeniusReport]:
    """Verdicts for s = 1..s_max (default 2(n+1)e + 4 for family curves)."""
    if s_max is None:
        params = curve.params if isinstance(curve, PlaneCurve) else None
        if params is None:
            raise ValueError("s_max needed for curves outside the family")
        s_max = 2 * (params.n + 1) * params.e + 4
    return {s: is_frobenius_nonclassical(curve, s, **kw) for s in range(1, s_max + 1)}


@dataclass
class Classification:
    nonclassical_power: int | None
    alpha: int | None = None
    beta: int | None = None

    @property
    def has_witness(self) -> bool:
        return self.nonclassical_power is not None


def classify_family_member(params: CurveFamilyParams) -> Classification:
    """Look for alpha with L(alpha)^(q+1) = c such that beta = 1/L(alpha) rescales
    L to the normalized form: beta L(x / beta^(q^2)) = x + x^(q^2) + ... , i.e.
    alpha_i = beta^(q^(2(i+1)) - 1) for all i, and beta^(q+1) c = 1."""
    F, q, n = params.field, params.q, params.n
    L = params.L
    xs = F.all_codes()
    Lx = L.eval_codes(xs)
    hits = np.nonzero(F.vpow(Lx, q + 1) == params.c)[0]
    coeffs = params.alphas + [1]
    for a in hits.tolist():
        beta = F.inv(int(Lx[a]))
        ok = all(coeffs[i] == F.pow(beta, q ** (2 * (i + 1)) - 1) for i in range(n + 1))
        ok = ok and F.mul(F.pow(beta, q + 1), params.c) == 1
        if ok:
            return Classification(2 * (n + 1) * params.e, a, beta)
    return Classification(None)


def scaled_normalized(p: int, e: int, n: int, beta: int, tower=None) -> CurveFamilyParams:
    """Parameters of beta^(q+1) times the normalized curve in the variables beta^(q^2) x, beta^(q^2) y."""
    base = CurveFamilyParams.normalized(p, e, n) if tower is None else CurveFamilyParams(p, e, n, [1] * n, 1, tower)
    F, q = base.field, base.q
    alphas = [F.pow(beta, q ** (2 * (i + 1)) - 1) for i in range(n)]
    c = F.inv(F.pow(beta, q + 1))
    return CurveFamilyParams(p, e, n, alphas, c, base.tower)


def generalized_curve(q: int, q_prime: int, n: int, c: int = 1) -> PlaneCurve:
    """(x^(q^n) + ... + x)^m + (y^(q^n) + ... + y)^m + c with m = (q-1)/(q'-1), over GF(q).

    ``c`` is a code of GF(q'); it is embedded into GF(q).
    """
    if q_prime < 2 or (q - 1) % (q_prime - 1):
        raise ValueError("q' - 1 must divide q - 1")
    p = min(d for d in range(2, q + 1) if q % d == 0)
    e = round(math.log(q, p))
    e2 = round(math.log(q_prime, p))
    if p**e != q or p**e2 != q_prime or e % e2:
        raise ValueError("q and q' must be powers of one prime with GF(q') inside GF(q)")
    F = field(p, e)
    cc = least_root_embedding(field(p, e2), F).code(c)
    if cc == 0:
        raise ValueError("c must be nonzero")
    m = (q - 1) // (q_prime - 1)
    Tx = BiPoly._raw(F, {(q**i, 0): 1 for i in range(n + 1)}, 2)
    Ty = BiPoly._raw(F, {(0, q**i): 1 for i in range(n + 1)}, 2)
    return PlaneCurve(Tx**m + Ty**m + BiPoly._raw(F, {(0, 0): cc}, 2), "xy")


def check_generalized_family(q: int, q_prime: int, n: int, c: int = 1) -> FrobeniusReport:
    """Checker at p^s = q^(n+1) for the generalized family."""
    C = generalized_curve(q, q_prime, n, c)
    p = C.field.p
    s = round(math.log(q ** (n + 1), p))
    return is_frobenius_nonclassical(C, s)


def family_window(params: CurveFamilyParams, s_max: int | None = None) -> dict[int, FrobeniusReport]:
    return nonclassical_window(build_cn(params), s_max)
