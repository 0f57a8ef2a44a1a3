"""The plane models C_n (xy) and C_n' (tu), their singularities and invariants."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .gf import GF, FieldElement, Tower, make_tower
from .poly import BiPoly, LinearizedPoly, MPoly, UniPoly, kernel_codes


@dataclass
class CurveFamilyParams:
    """p, e (q = p^e), n and the coefficients alpha_0..alpha_{n-1}, c as codes
    of the working field GF(q^(2(n+1)))."""

    p: int
    e: int
    n: int
    alphas: list[int]
    c: int
    tower: Tower = dc_field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.tower is None:
            self.tower = make_tower(self.p, self.e, self.n)
        F = self.field
        self.alphas = [self._code(a) for a in self.alphas]
        self.c = self._code(self.c)
        if len(self.alphas) != self.n:
            raise ValueError(f"need alpha_0..alpha_{self.n - 1}, got {len(self.alphas)} values")
        if self.alphas[0] == 0:
            raise ValueError("alpha_0 must be nonzero")
        if self.c == 0:
            raise ValueError("c must be nonzero")
        if not all(0 <= a < F.order for a in self.alphas + [self.c]):
            raise ValueError("coefficient code out of range")

    def _code(self, v) -> int:
        T = self.tower
        if isinstance(v, FieldElement):
            if v.field == T.big:
                return v.value
            if v.field == T.quad:
                return T.quad_to_big.code(v.value)
            if v.field == T.base:
                return T.base_to_big.code(v.value)
            raise ValueError(f"coefficient from {v.field} does not lie in the tower over GF({self.q})")
        return int(v)

    @classmethod
    def normalized(cls, p: int, e: int, n: int) -> CurveFamilyParams:
        return cls(p, e, n, [1] * n, 1)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def field(self) -> GF:
        return self.tower.big

    @property
    def degree(self) -> int:
        return self.q ** (2 * self.n) * (self.q + 1)

    @property
    def L(self) -> LinearizedPoly:
        return LinearizedPoly(self.field, self.q, self.alphas + [1], codes=True)

    def is_normalized(self) -> bool:
        return all(a == 1 for a in self.alphas) and self.c == 1


@dataclass
class PlaneCurve:
    f: BiPoly
    model: str = "xy"
    params: CurveFamilyParams | None = dc_field(default=None, repr=False)
    alpha: int | None = None
    c_prime: int | None = None

    @property
    def field(self) -> GF:
        return self.f.field

    @property
    def degree(self) -> int:
        return self.f.total_degree

    def homogenization(self) -> MPoly:
        return self.f.homogenize()

    def fx(self) -> BiPoly:
        return self.f.dx()

    def fy(self) -> BiPoly:
        return self.f.dy()

    def contains(self, point) -> bool:
        """Projective point (codes) on the curve."""
        F = self.homogenization()
        return F.eval_code(point) == 0


def _family_poly(L: LinearizedPoly, c: int) -> BiPoly:
    q = L.q
    return L.in_x() ** (q + 1) + L.in_y() ** (q + 1) + BiPoly._raw(L.field, {(0, 0): c})


def tu_model_polynomial(L: LinearizedPoly, c_prime: int) -> BiPoly:
    """L(t)^q L(u) + L(t) L(u)^q + c' with t, u stored as x, y."""
    q = L.q
    Lt, Lu = L.in_x(), L.in_y()
    out = Lt**q * Lu + Lt * Lu**q
    if c_prime:
        out = out + BiPoly._raw(L.field, {(0, 0): c_prime})
    return out


def build_cn(params: CurveFamilyParams) -> PlaneCurve:
    f = _family_poly(params.L, params.c)
    assert f.total_degree == params.degree and f.is_monic_in_y()
    return PlaneCurve(f, "xy", params)


def norm_minus_one_roots(params: CurveFamilyParams) -> list[int]:
    """Codes alpha of GF(q^2) with alpha^(q+1) = -1, as elements of the working field."""
    F, q = params.field, params.q
    m1 = F.neg(1)
    return [a for a in (params.tower.quad_to_big.code(c) for c in range(params.tower.quad.order))
            if a and F.pow(a, q + 1) == m1]


def default_alpha(params: CurveFamilyParams) -> int:
    """Smallest-code alpha with alpha^(q+1) = -1 and alpha^q + alpha != 0."""
    F, q = params.field, params.q
    for a in sorted(norm_minus_one_roots(params)):
        if F.add(F.pow(a, q), a):
            return a
    raise AssertionError("no admissible alpha")  # pragma: no cover


class DegenerateChange(ValueError):
    """alpha^q + alpha = 0: the change of variables is singular."""


def xy_to_tu_matrix(params: CurveFamilyParams, alpha: int) -> list[list[int]]:
    """(X, Y, Z) -> (T, U, V) with t = alpha^q x + y, u = x + alpha^q y."""
    F = params.field
    aq = F.pow(alpha, params.q)
    return [[aq, 1, 0], [1, aq, 0], [0, 0, 1]]


def build_cn_prime(params: CurveFamilyParams, alpha=None) -> PlaneCurve:
    F, q = params.field, params.q
    if alpha is None:
        a = default_alpha(params)
    elif isinstance(alpha, FieldElement):
        a = params._code(alpha)
    else:
        a = int(alpha)
    if a == 0 or F.pow(a, q + 1) != F.neg(1):
        raise ValueError("alpha must satisfy alpha^(q+1) = -1")
    s = F.add(F.pow(a, q), a)
    if s == 0:
        raise DegenerateChange("alpha^q + alpha = 0")
    c_prime = F.mul(s, params.c)
    g = tu_model_polynomial(params.L, c_prime)
    # x = (t + alpha u)/s, y = (alpha t + u)/s must carry f onto g / s
    inv = F.inv(s)
    xt = BiPoly._raw(F, {(1, 0): inv, (0, 1): F.mul(a, inv)})
    yt = BiPoly._raw(F, {(1, 0): F.mul(a, inv), (0, 1): inv})
    f = _family_poly(params.L, params.c)
    if f.substitute([xt, yt]) != g.scale(inv):
        raise AssertionError("tu-model does not match the substituted xy-model")
    return PlaneCurve(g, "tu", params, alpha=a, c_prime=c_prime)


# --- singularities -----------------------------------------------------------

def canonical_point(v, F: GF) -> tuple[int, int, int]:
    """Projective representative with first nonzero coordinate 1."""
    v = [int(c) for c in v]
    for c in v:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise ValueError("zero vector is not a projective point")


@dataclass
class SingularPointInfo:
    point: tuple[int, int, int]
    multiplicity: int
    tangent_lines: list[tuple[int, int, int]]
    ordinary: bool
    rational_tangents: bool

    def to_dict(self):
        return asdict(self)


def local_expansion(F3: MPoly, point) -> tuple[BiPoly, int, int, int]:
    """F3 in local coordinates (s, z) centred at ``point``.

    Returns (G, i, j, k): chart X_i = 1, X_j = P_j + s, X_k = P_k + z.
    """
    K = F3.field
    P = canonical_point(point, K)
    i = next(t for t in range(3) if P[t])
    j, k = [t for t in range(3) if t != i]
    images = [None, None, None]
    images[i] = BiPoly._raw(K, {(0, 0): 1})
    images[j] = BiPoly._raw(K, {(1, 0): 1, **({(0, 0): P[j]} if P[j] else {})})
    images[k] = BiPoly._raw(K, {(0, 1): 1, **({(0, 0): P[k]} if P[k] else {})})
    return F3.substitute(images), i, j, k


def analyse_point(curve: PlaneCurve, point) -> SingularPointInfo:
    """Multiplicity and tangent cone of the curve at a rational point."""
    K = curve.field
    P = canonical_point(point, K)
    G, i, j, k = local_expansion(curve.homogenization(), P)
    if (0, 0) in G.terms:
        raise ValueError(f"{P} is not on the curve")
    m = min(a + b for a, b in G.terms)
    cone = {(a, b): c for (a, b), c in G.terms.items() if a + b == m}
    # H(s, 1) and the power of z dividing H
    h = UniPoly.from_terms(K, {a: c for (a, b), c in cone.items()})
    zpow = m - h.degree
    roots = [int(r) for r in np.nonzero(h.eval_codes(K.all_codes()) == 0)[0]]
    split = UniPoly._raw(K, [h.lc])
    for r in roots:
        split = split * UniPoly._raw(K, [K.neg(r), 1])
    rational = split == h
    lines = []
    for r in roots:
        # s - r z = (X_j - P_j X_i) - r (X_k - P_k X_i)
        v = [0, 0, 0]
        v[j] = 1
        v[k] = K.neg(r)
        v[i] = K.neg(K.sub(P[j], K.mul(r, P[k])))
        lines.append(canonical_point(v, K))
    if zpow:
        v = [0, 0, 0]
        v[k] = 1
        v[i] = K.neg(P[k])
        lines.append(canonical_point(v, K))
    ordinary = rational and zpow <= 1 and len(set(lines)) == m
    return SingularPointInfo(P, m, sorted(set(lines)), ordinary, rational)


def _affine_grid(K: GF):
    xs = K.all_codes()
    return xs[:, None], xs[None, :]


def affine_values(curve: PlaneCurve) -> np.ndarray:
    """f(x, y) over all pairs of the working field, shape (Q, Q)."""
    X, Y = _affine_grid(curve.field)
    return curve.f.eval_codes(X, Y)


def points_at_infinity(curve: PlaneCurve) -> list[tuple[int, int, int]]:
    K = curve.field
    F3 = curve.homogenization()
    top = MPoly._raw(K, {m: c for m, c in F3.terms.items() if m[2] == 0}, 3)
    out = []
    if top.eval_code((1, 0, 0)) == 0:
        out.append((1, 0, 0))
    xs = K.all_codes()
    vals = top.eval_codes(xs, np.ones_like(xs), np.zeros_like(xs))
    out.extend((1, int(a), 0) if a else (0, 1, 0) for a in np.nonzero(vals == 0)[0])
    return sorted(canonical_point(v, K) for v in out)


def singular_locus(curve: PlaneCurve, max_pairs: int = 1 << 22) -> list[SingularPointInfo]:
    """Singular points rational over the working field, with their tangent cones.

    Affine points are found by exhaustive evaluation of f, f_x, f_y; points at
    infinity by the homogeneous gradient.
    """
    K = curve.field
    F3 = curve.homogenization()
    found = []
    if K.order**2 <= max_pairs:
        X, Y = _affine_grid(K)
        zero = (curve.f.eval_codes(X, Y) == 0) & (curve.fx().eval_codes(X, Y) == 0) & (
            curve.fy().eval_codes(X, Y) == 0)
        found.extend((int(a), int(b), 1) for a, b in zip(*np.nonzero(zero)))
    else:
        raise ValueError(f"affine scan over {K} exceeds {max_pairs} pairs")
    grads = [F3.partial(t) for t in range(3)]
    for P in points_at_infinity(curve):
        if all(g.eval_code(P) == 0 for g in grads):
            found.append(P)
    return [analyse_point(curve, P) for P in sorted(canonical_point(P, K) for P in found)]


# --- closed forms and their oracles ------------------------------------------

def genus_closed_form(params: CurveFamilyParams) -> int:
    q, n = params.q, params.n
    return q ** (2 * n) * (q + 1) * (q ** (2 * n + 1) - 2) // 2 + 1


def genus_plucker_oracle(curve: PlaneCurve, locus: list[SingularPointInfo] | None = None) -> int:
    """(d-1)(d-2)/2 - sum m(m-1)/2 over the (ordinary) singular points."""
    locus = singular_locus(curve) if locus is None else locus
    if not all(s.ordinary for s in locus):
        raise ValueError("non-ordinary singularity; delta invariant not available")
    d = curve.degree
    return (d - 1) * (d - 2) // 2 - sum(s.multiplicity * (s.multiplicity - 1) // 2 for s in locus)


def p_rank_closed_form(params: CurveFamilyParams) -> int:
    q, n = params.q, params.n
    return q ** (4 * n + 1) - q ** (2 * n + 1) - q ** (2 * n) + 1


def ds_identity_check(params: CurveFamilyParams) -> bool:
    """(gamma - 1)/q^(2n+1) == -1 + q^(2n) (1 - 1/q^(2n+1)), exactly."""
    q, n = params.q, params.n
    gamma = p_rank_closed_form(params)
    lhs = Fraction(gamma - 1, q ** (2 * n + 1))
    rhs = -1 + q ** (2 * n) * (1 - Fraction(1, q ** (2 * n + 1)))
    return lhs == rhs


def degree_of_D(curve: PlaneCurve, locus: list[SingularPointInfo] | None = None) -> int:
    """Branches over Z = 0, each transversal when Z = 0 is not its tangent."""
    locus = singular_locus(curve) if locus is None else locus
    infinity = (0, 0, 1)
    total = 0
    for s in locus:
        if s.point[2] != 0:
            continue
        if not s.ordinary or infinity in s.tangent_lines:
            raise ValueError(f"branch at {s.point} not transversal to Z = 0")
        total += s.multiplicity
    smooth_inf = [P for P in points_at_infinity(curve) if P not in {s.point for s in locus}]
    return total + len(smooth_inf)


def canonical_degree_check(params: CurveFamilyParams) -> bool:
    q, n = params.q, params.n
    deg_D = q ** (2 * n) * (q + 1)
    return (q ** (2 * n + 1) - 2) * deg_D == 2 * genus_closed_form(params) - 2


def places_closed_form(params: CurveFamilyParams) -> int:
    q, n = params.q, params.n
    return q ** (4 * n + 3) - q ** (4 * n + 1) + q ** (2 * n + 1) + q ** (2 * n)


def plane_points_closed_form(params: CurveFamilyParams) -> int:
    q, n = params.q, params.n
    return q ** (4 * n + 3) - q ** (4 * n + 1) + q + 1


@dataclass
class PlaceCount:
    places: int
    affine_points: int
    points_at_infinity: int
    branches_at_infinity: int
    plane_points: int
    closed_form_places: int | None = None
    closed_form_plane_points: int | None = None

    @property
    def matches_closed_form(self) -> bool | None:
        if self.closed_form_places is None:
            return None
        return (self.places == self.closed_form_places
                and self.plane_points == self.closed_form_plane_points)


def count_places(curve: PlaneCurve, field: GF | None = None,
                 locus: list[SingularPointInfo] | None = None) -> PlaceCount:
    """Rational places of the smooth model over the working field.

    Smooth rational points count once; an ordinary singular point counts once
    per rational tangent line.
    """
    K = curve.field
    if field is not None and field != K:
        raise ValueError("count over the curve's coefficient field only")
    locus = singular_locus(curve) if locus is None else locus
    vals = affine_values(curve)
    affine = int((vals == 0).sum())
    infinity = points_at_infinity(curve)
    sing = {s.point: s for s in locus}
    for s in locus:
        if not s.ordinary:
            raise ValueError(f"cannot count branches at non-ordinary point {s.point}")
    affine_singular = sum(1 for s in locus if s.point[2] != 0)
    branches_inf = sum(len(s.tangent_lines) for s in locus if s.point[2] == 0)
    smooth_inf = [P for P in infinity if P not in sing]
    places = (affine - affine_singular + sum(len(s.tangent_lines) for s in locus)
              + len(smooth_inf))
    out = PlaceCount(places, affine, len(infinity), branches_inf, affine + len(infinity))
    params = curve.params
    if params is not None and params.is_normalized() and curve.model == "xy":
        out.closed_form_places = places_closed_form(params)
        out.closed_form_plane_points = plane_points_closed_form(params)
    return out


@dataclass
class InvariantsReport:
    q: int
    n: int
    degree: int
    genus: int
    p_rank: int
    place_count: int | None
    plane_point_count: int | None
    degree_of_D: int
    aut_order: int
    arc_k: int
    arc_d: int

    def to_dict(self):
        return asdict(self)


def closed_form_report(params: CurveFamilyParams) -> InvariantsReport:
    q, n = params.q, params.n
    return InvariantsReport(
        q=q, n=n, degree=params.degree,
        genus=genus_closed_form(params),
        p_rank=p_rank_closed_form(params),
        place_count=places_closed_form(params),
        plane_point_count=plane_points_closed_form(params),
        degree_of_D=params.degree,
        aut_order=q ** (4 * n + 1) * (q * q - 1) * (q + 1),
        arc_k=plane_points_closed_form(params),
        arc_d=q ** (2 * n + 1) + q ** (2 * n),
    )


def growth_inequalities(params: CurveFamilyParams) -> dict:
    """Exact-integer forms of the size comparisons for |Aut| and the Sylow p-part.

    |Aut| > g, |Aut|^(2n+1) >= g^(2n+2), and for p > 2 the Sylow order q^(4n+1)
    against p/(p-2) (gamma - 1).
    """
    q, n, p = params.q, params.n, params.p
    g = genus_closed_form(params)
    gamma = p_rank_closed_form(params)
    aut = q ** (4 * n + 1) * (q * q - 1) * (q + 1)
    out = {
        "aut_exceeds_genus": aut > g,
        "aut_power_bound": aut ** (2 * n + 1) >= g ** (2 * n + 2),
        "aut_over_genus": float(Fraction(aut, g)),
    }
    if p > 2:
        bound = Fraction(p, p - 2) * (gamma - 1)
        sylow = q ** (4 * n + 1)
        out["sylow_order"] = sylow
        out["sylow_bound"] = float(bound)
        out["sylow_within_bound"] = sylow <= bound
    return out


def kernel_in_field(params: CurveFamilyParams) -> list[int]:
    """Roots of L in the working field; raises unless all q^(2n) of them are there."""
    ker = kernel_codes(params.L)
    if len(ker) != params.q ** (2 * params.n):
        raise ValueError(f"only {len(ker)} of {params.q ** (2 * params.n)} roots of L lie in {params.field}")
    return ker


# --- curve specification files -------------------------------------------------

def _parse_vector(text: str) -> list[int]:
    text = text.strip().strip("[]").replace(",", " ")
    return [int(t) for t in text.split()]


def parse_curve_spec(text: str, max_order: int | None = None) -> CurveFamilyParams:
    """Key-value curve file: p, e, n, alpha0..alpha{n-1}, c.

    Coefficients are coordinate vectors over GF(p) in the working field
    GF(q^(2(n+1))) (least irreducible modulus), low degree first; missing
    trailing coordinates are zero and a missing alpha_i is 1.  ``#`` starts
    a comment.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key] = val
    try:
        p, e, n = int(values["p"]), int(values["e"]), int(values["n"])
    except KeyError as exc:
        raise ValueError(f"missing key {exc.args[0]}") from None
    if p < 2 or e < 1 or n < 1:
        raise ValueError("need p >= 2, e >= 1, n >= 1")
    tower = make_tower(p, e, n, max_order=max_order)
    F = tower.big
    alphas = []
    for i in range(n):
        key = f"alpha{i}"
        alphas.append(F.from_digits(_parse_vector(values[key])) if key in values else 1)
    if "c" not in values:
        raise ValueError("missing key c")
    c = F.from_digits(_parse_vector(values["c"]))
    return CurveFamilyParams(p, e, n, alphas, c, tower)


def load_curve_spec(path, max_order: int | None = None) -> CurveFamilyParams:
    return parse_curve_spec(Path(path).read_text(encoding="utf-8"), max_order)


def dump_curve_spec(params: CurveFamilyParams) -> str:
    F = params.field
    lines = [f"p = {params.p}", f"e = {params.e}", f"n = {params.n}"]
    for i, a in enumerate(params.alphas):
        lines.append(f"alpha{i} = " + " ".join(map(str, F.digits(a))))
    lines.append("c = " + " ".join(map(str, F.digits(params.c))))
    return "\n".join(lines) + "\n"
