"""Outer Galois points: points off the curve whose projection has a deck group
of full size inside the automorphism group."""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from .autgrp import AutGroup, Collineation, _affine_L_image, _canon_rows, apply_all, generate_group
from .curve import CurveFamilyParams, PlaneCurve, _family_poly, canonical_point
from .gf import GF, FieldElement
from .poly import BiPoly


class PointOnCurveError(ValueError):
    pass


# --- P^2 indexing -----------------------------------------------------------------

def plane_points(F: GF) -> np.ndarray:
    """All points of P^2 over F as canonical rows: (1,a,b), (0,1,b), (0,0,1)."""
    Q = F.order
    a = np.repeat(np.arange(Q), Q)
    b = np.tile(np.arange(Q), Q)
    first = np.stack([np.ones(Q * Q, dtype=np.int64), a, b], axis=1)
    second = np.stack([np.zeros(Q, dtype=np.int64), np.ones(Q, dtype=np.int64), np.arange(Q)], axis=1)
    return np.concatenate([first, second, np.array([[0, 0, 1]])]).astype(np.int64)


def point_index(F: GF, rows: np.ndarray) -> np.ndarray:
    """Inverse of plane_points for canonical rows."""
    Q = F.order
    rows = np.asarray(rows, dtype=np.int64)
    return np.where(rows[:, 0] == 1, rows[:, 1] * Q + rows[:, 2],
                    np.where(rows[:, 1] == 1, Q * Q + rows[:, 2], Q * Q + Q))


def _images(F: GF, M, pts: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64).reshape(3, 3)
    out = np.zeros_like(pts)
    for r in range(3):
        acc = np.zeros(len(pts), dtype=np.int64)
        for k in range(3):
            acc = F.vadd(acc, F.vmul(M[r, k], pts[:, k]))
        out[:, r] = acc
    return _canon_rows(F, out)


def orbit_labels(group: AutGroup, pts: np.ndarray | None = None) -> np.ndarray:
    """Label of the orbit of every point of P^2 (smallest index in the orbit)."""
    F = group.field
    pts = plane_points(F) if pts is None else pts
    gens = group.generators or list(group)
    perms = [point_index(F, _images(F, g.entries, pts)) for g in gens]
    label = np.full(len(pts), -1, dtype=np.int64)
    for start in range(len(pts)):
        if label[start] >= 0:
            continue
        label[start] = start
        todo = deque([start])
        while todo:
            i = todo.popleft()
            for perm in perms:
                j = perm[i]
                if label[j] < 0:
                    label[j] = start
                    todo.append(j)
    return label


# --- pencil stabilizers ---------------------------------------------------------------

def pencil_lines(F: GF, R) -> list[tuple[int, int, int]]:
    """Three distinct lines through R (as coefficient rows)."""
    R = [int(v) for v in R]
    basis = []
    for cand in ((R[1], F.neg(R[0]), 0), (R[2], 0, F.neg(R[0])), (0, R[2], F.neg(R[1]))):
        if any(cand):
            if not basis or not _proportional_vec(F, cand, basis[0]):
                basis.append(cand)
        if len(basis) == 2:
            break
    l1, l2 = basis
    return [l1, l2, tuple(F.add(a, b) for a, b in zip(l1, l2))]


def _proportional_vec(F, u, v) -> bool:
    return all(F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])) == 0 for i in range(3) for j in range(i + 1, 3))


def _fixes_line(F: GF, arr: np.ndarray, line) -> np.ndarray:
    """Mask of elements M with l M proportional to l."""
    A = arr.reshape(-1, 3, 3)
    l = [int(v) for v in line]
    img = np.zeros((len(A), 3), dtype=np.int64)
    for j in range(3):
        acc = np.zeros(len(A), dtype=np.int64)
        for k in range(3):
            acc = F.vadd(acc, F.vmul(l[k], A[:, k, j]))
        img[:, j] = acc
    ok = np.ones(len(A), dtype=bool)
    for i in range(3):
        for j in range(i + 1, 3):
            ok &= F.vsub(F.vmul(img[:, i], l[j]), F.vmul(img[:, j], l[i])) == 0
    return ok


def pencil_stabilizer(group: AutGroup, R, curve: PlaneCurve | None = None) -> AutGroup:
    """Elements fixing R and every line through R."""
    F = group.field
    R = canonical_point(R, F)
    if curve is not None and curve.contains(R):
        raise PointOnCurveError(f"{R} lies on the curve")
    imgs = apply_all(group, R)
    mask = np.all(imgs == np.array(R), axis=1)
    for line in pencil_lines(F, R):
        mask &= _fixes_line(F, group.array, line)
    return AutGroup(F, group.array[mask])


def element_order(g: Collineation, bound: int = 1 << 16) -> int:
    ident = Collineation.identity(g.field)
    h, k = g, 1
    while h != ident:
        h = h @ g
        k += 1
        if k > bound:
            raise RuntimeError("element order exceeds bound")
    return k


def cyclic_part(G_R: AutGroup, q: int) -> Collineation | None:
    """An element of order q + 1 in G_R, if any."""
    for g in G_R:
        if element_order(g) == q + 1:
            return g
    return None


def fixed_points_on_infinity(g: Collineation) -> list[tuple[int, int, int]]:
    F = g.field
    pts = [(1, a, 0) for a in range(F.order)] + [(0, 1, 0)]
    return [P for P in pts if g.apply(P) == P]


@dataclass
class GaloisPointReport:
    point: tuple[int, int, int]
    stabilizer_order: int
    is_galois: bool
    on_line_at_infinity: bool
    quad_rational: bool
    off_singular: bool
    cyclic_order: int | None = None
    cyclic_fixed_points: list = dc_field(default_factory=list)
    stabilizer: AutGroup | None = dc_field(default=None, repr=False)

    def row(self):
        return {"point": " ".join(map(str, self.point)), "stabilizer_order": self.stabilizer_order,
                "is_galois": self.is_galois}


@dataclass
class GaloisScan:
    points: list[GaloisPointReport]
    expected_count: int
    scanned: int
    candidates: int

    @property
    def holds(self) -> bool:
        return (len(self.points) == self.expected_count
                and all(r.on_line_at_infinity and r.quad_rational and r.off_singular for r in self.points))


def enumerate_outer_galois(group: AutGroup, curve: PlaneCurve, field: GF | None = None,
                           with_cyclic: bool = True) -> GaloisScan:
    """Every point of P^2 off the curve with |G_R| = deg.

    All points are classified: |G_R| <= |Stab(R)| = |G| / |orbit(R)|, so only
    points with a large enough stabilizer need the pencil test.
    """
    F = field or group.field
    if F != group.field:
        raise ValueError("group and scan field differ")
    params = curve.params
    deg = curve.degree
    pts = plane_points(F)
    on_curve = curve.homogenization().eval_codes(pts[:, 0], pts[:, 1], pts[:, 2]) == 0
    labels = orbit_labels(group, pts)
    sizes = np.bincount(labels, minlength=len(pts))[labels]
    cand = np.nonzero(~on_curve & (group.order >= deg * sizes))[0]
    quad = set()
    sing = set()
    if params is not None:
        T = params.tower
        quad = {T.quad_to_big.code(c) for c in range(T.quad.order)}
        m1 = F.neg(1)
        sing = {canonical_point((a, 1, 0), F) for a in quad if a and F.pow(a, params.q + 1) == m1}
    reports = []
    for i in cand:
        R = tuple(int(v) for v in pts[i])
        G_R = pencil_stabilizer(group, R)
        if G_R.order != deg:
            continue
        rep = GaloisPointReport(R, G_R.order, True, R[2] == 0, all(v in quad for v in R),
                                R not in sing, stabilizer=G_R)
        if with_cyclic and params is not None:
            g = cyclic_part(G_R, params.q)
            if g is not None:
                rep.cyclic_order = params.q + 1
                rep.cyclic_fixed_points = fixed_points_on_infinity(g)
        reports.append(rep)
    expected = params.q**2 - params.q if params is not None else len(reports)
    return GaloisScan(reports, expected, len(pts) - int(on_curve.sum()), len(cand))


def verify_generation(group: AutGroup, galois_points: list[GaloisPointReport]) -> bool:
    """The union of the deck groups generates the whole group."""
    gens = {}
    for r in galois_points:
        G_R = r.stabilizer
        for g in G_R:
            gens[g.entries] = g
    H = generate_group(list(gens.values()), field=group.field)
    return H.key_set() == group.key_set()


def verify_projection_substitution(params: CurveFamilyParams, beta, literal: bool = False) -> bool:
    """With v = x - beta y, w = y + beta^q v / (N + 1), N = beta^(q+1):

    L(w)^(q+1) + L(v)^(q+1) / (N+1)^(q+1) + c / (N+1) = f(x, y) / (N+1),

    so the projection from (beta:1:0) has the same normal form as the one from
    (0:1:0). ``literal=True`` uses beta instead of beta^q in w; that variant
    only holds for beta in GF(q).
    """
    F, q = params.field, params.q
    b = params._code(beta) if isinstance(beta, FieldElement) else int(beta)
    if F.pow(b, q * q) != b:
        raise ValueError("beta must lie in GF(q^2)")
    N1 = F.add(F.pow(b, q + 1), 1)
    if N1 == 0:
        raise ValueError("beta^(q+1) = -1 is a singular direction")
    inv = F.inv(N1)
    k = F.mul(b if literal else F.pow(b, q), inv)
    L = params.L
    # v = x - b y ; w = k x + (1 - k b) y
    Lv = _affine_L_image(L, 1, F.neg(b), 0)
    Lw = _affine_L_image(L, k, F.sub(1, F.mul(k, b)), 0)
    pe = params.e
    lhs = (Lw.frobenius_power(pe) * Lw
           + (Lv.frobenius_power(pe) * Lv).scale(F.pow(inv, q + 1))
           + BiPoly._raw(F, {(0, 0): F.mul(params.c, inv)}, 2))
    return lhs == _family_poly(L, params.c).scale(inv)


def fiber_transitive(G_R: AutGroup, curve: PlaneCurve, R, line) -> bool:
    """Rational curve points on a line through R form at most one G_R-orbit."""
    F = curve.field
    pts = plane_points(F)
    l = [int(v) for v in line]
    on_line = F.vadd(F.vadd(F.vmul(l[0], pts[:, 0]), F.vmul(l[1], pts[:, 1])), F.vmul(l[2], pts[:, 2])) == 0
    on_curve = curve.homogenization().eval_codes(pts[:, 0], pts[:, 1], pts[:, 2]) == 0
    sel = pts[on_line & on_curve & (pts[:, 2] != 0)]
    if len(sel) == 0:
        return True
    target = {tuple(r) for r in sel.tolist()}
    orb = {tuple(r) for r in apply_all(G_R, tuple(sel[0])).tolist()}
    return orb == target


def report_rows(scan: GaloisScan) -> list[dict]:
    return [r.row() for r in scan.points]


def to_csv(scan: GaloisScan) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["point", "stabilizer_order", "is_galois"], lineterminator="\n")
    w.writeheader()
    w.writerows(report_rows(scan))
    return buf.getvalue()


def to_text(scan: GaloisScan) -> str:
    lines = [f"outer Galois points: {len(scan.points)} (expected {scan.expected_count})"]
    lines += [f"  ({r.point[0]}:{r.point[1]}:{r.point[2]})  |G_R|={r.stabilizer_order}" for r in scan.points]
    return "\n".join(lines) + "\n"
