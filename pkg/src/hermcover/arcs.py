"""The projective plane over the working field, line profiles of the rational
points of the curve and the extension (incompleteness) scan."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from .autgrp import _canon_rows
from .curve import CurveFamilyParams, PlaneCurve, affine_values, canonical_point, points_at_infinity
from .galois import plane_points, point_index
from .gf import GF
from .poly import LinearizedPoly, kernel_codes

LINE_CHUNK = 256


class ProjPlane:
    """PG(2, Q): points and lines share the canonical-row indexing of plane_points."""

    def __init__(self, field: GF):
        self.field = field
        self.points = plane_points(field)
        self.lines = self.points  # a line is its coefficient row
        self.Q = field.order

    def __len__(self):
        return len(self.points)

    def index(self, rows) -> np.ndarray:
        """Indices of projective points given by any nonzero representatives."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        return point_index(self.field, _canon_rows(self.field, rows))

    def _dot(self, lines: np.ndarray, pts: np.ndarray) -> np.ndarray:
        F = self.field
        acc = F.vmul(lines[:, None, 0], pts[None, :, 0])
        for c in (1, 2):
            acc = F.vadd(acc, F.vmul(lines[:, None, c], pts[None, :, c]))
        return acc

    def points_on_line(self, line) -> np.ndarray:
        l = np.asarray(line, dtype=np.int64)[None, :]
        return self.points[self._dot(l, self.points)[0] == 0]

    def lines_through(self, point) -> np.ndarray:
        P = np.asarray(point, dtype=np.int64)[None, :]
        return self.lines[self._dot(self.lines, P)[:, 0] == 0]

    def mask(self, pts) -> np.ndarray:
        m = np.zeros(len(self.points), dtype=bool)
        if len(pts):
            m[self.index(pts)] = True
        return m


def rational_point_set(curve: PlaneCurve, field: GF | None = None) -> np.ndarray:
    """All rational points of the projective closure, canonical rows, sorted by index."""
    F = field or curve.field
    if F != curve.field:
        raise ValueError("curve coefficients live in a different field")
    xs, ys = np.nonzero(affine_values(curve) == 0)
    aff = np.stack([xs, ys, np.ones_like(xs)], axis=1).astype(np.int64)
    inf = np.array(points_at_infinity(curve), dtype=np.int64).reshape(-1, 3)
    pts = _canon_rows(F, np.concatenate([aff, inf]))
    return pts[np.argsort(point_index(F, pts))]


@dataclass
class Profile:
    counts: np.ndarray  # |line ∩ S| per line index
    histogram: dict[int, int]

    @property
    def d(self) -> int:
        return max(self.histogram, default=0)


def intersection_profile(plane: ProjPlane, point_set) -> Profile:
    S = np.asarray(point_set, dtype=np.int64).reshape(-1, 3)
    counts = np.zeros(len(plane.lines), dtype=np.int64)
    if len(S):
        for start in range(0, len(plane.lines), LINE_CHUNK):
            block = plane.lines[start:start + LINE_CHUNK]
            counts[start:start + len(block)] = (plane._dot(block, S) == 0).sum(axis=1)
    vals, freq = np.unique(counts, return_counts=True)
    return Profile(counts, {int(v): int(f) for v, f in zip(vals, freq)})


def line_attains(plane: ProjPlane, profile: Profile, point, d: int | None = None) -> bool:
    """Some line through ``point`` meets S in exactly d points."""
    d = profile.d if d is None else d
    idx = plane.index(plane.lines_through(point))
    return bool(np.any(profile.counts[idx] == d))


@dataclass
class ArcReport:
    k: int
    d: int
    complete: bool
    extension_witnesses: list[tuple[int, int, int]]
    explicit_witnesses: list[tuple[int, int, int]] = dc_field(default_factory=list)
    explicit_ok: bool | None = None

    def to_dict(self):
        return {"k": self.k, "d": self.d, "complete": self.complete,
                "extension_count": len(self.extension_witnesses),
                "explicit_witnesses": len(self.explicit_witnesses),
                "explicit_ok": self.explicit_ok}


def t_lambda(params: CurveFamilyParams, lam: int | None = None) -> tuple[int, set[int]]:
    """(lambda, {alpha / lambda : L(alpha) = 0}) for the least nonzero root lambda."""
    F = params.field
    roots = kernel_codes(params.L)
    lam = min(r for r in roots if r) if lam is None else lam
    inv = F.inv(lam)
    return lam, {F.mul(r, inv) for r in roots}


def completeness_check(plane: ProjPlane, point_set, d: int | None = None, profile: Profile | None = None,
                       params: CurveFamilyParams | None = None) -> ArcReport:
    """Points outside S on no line meeting S in d points (adding any keeps the arc property).

    With ``params`` also checks the explicit witnesses (a:1:0), a outside T_lambda,
    one line at a time.
    """
    S = np.asarray(point_set, dtype=np.int64).reshape(-1, 3)
    profile = profile or intersection_profile(plane, S)
    d = profile.d if d is None else d
    in_S = plane.mask(S)
    blocked = np.zeros(len(plane.points), dtype=bool)
    for li in np.nonzero(profile.counts >= d)[0]:
        blocked[plane.index(plane.points_on_line(plane.lines[li]))] = True
    ext = np.nonzero(~in_S & ~blocked)[0]
    witnesses = [tuple(int(v) for v in plane.points[i]) for i in ext]
    report = ArcReport(len(S), d, len(witnesses) == 0, witnesses)
    if params is not None:
        _, T = t_lambda(params)
        F = plane.field
        cand = [(a, 1, 0) for a in range(F.order) if a not in T]
        cand = [P for P in cand if not in_S[plane.index(_canon(F, P))][0]]
        ok = True
        for P in cand:
            P = _canon(F, P)
            for line in plane.lines_through(P):
                if line[0] == 0 and line[1] == 0:
                    continue  # Z = 0
                if (plane._dot(line[None, :], S)[0] == 0).sum() >= d:
                    ok = False
                    break
        report.explicit_witnesses = [_canon(F, P) for P in cand]
        report.explicit_ok = ok and bool(cand)
    return report


def _canon(F: GF, P):
    return canonical_point(P, F)


def l_lambda(params: CurveFamilyParams, lam: int) -> LinearizedPoly:
    """x^(q^2) - lambda^(q^2 - 1) x."""
    F, q = params.field, params.q
    return LinearizedPoly(F, q, [F.neg(F.pow(lam, q * q - 1)), 1], codes=True)


def pencil_injective(params: CurveFamilyParams, a: int, lam: int | None = None) -> bool:
    """(beta, gamma) -> beta - a gamma is injective on ker L x ker L_lambda,
    i.e. the translated lines x = a y + m + beta - a gamma are pairwise distinct."""
    F = params.field
    lam, _ = t_lambda(params, lam)
    kb = kernel_codes(params.L)
    kg = kernel_codes(l_lambda(params, lam))
    shifts = {F.sub(b, F.mul(a, g)) for b in kb for g in kg}
    return len(shifts) == len(kb) * len(kg)


def profile_csv(profile: Profile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["intersection_size", "lines"])
    for k in sorted(profile.histogram):
        w.writerow([k, profile.histogram[k]])
    return buf.getvalue()


def witnesses_csv(report: ArcReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["X", "Y", "Z"])
    w.writerows(report.extension_witnesses)
    return buf.getvalue()
