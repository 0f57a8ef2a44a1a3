import random

import pytest
from hypothesis import given, settings, strategies as st

from hermcover.curve import PlaneCurve
from hermcover.localgeom import (OrderCapExceeded, SingularPointError, eval_on_branch, expand_branch,
                                 gap_function, ord_at, sample_smooth_points, smooth_affine_points,
                                 verify_gap_at_affine, verify_total_ramification)
from hermcover.poly import BiPoly, UniPoly

from conftest import curve, params, tu


def _root_multiplicity(F, coeffs_x, a):
    """Multiplicity of x = a as a root of a univariate polynomial, by repeated division."""
    h = UniPoly._raw(F, coeffs_x)
    lin = UniPoly._raw(F, [F.neg(a), 1])
    m = 0
    while not h.is_zero():
        quo, rem = h.divmod(lin)
        if not rem.is_zero():
            break
        h, m = quo, m + 1
    return m


def _restrict_y(f, b):
    F = f.field
    out = [0] * (f.deg_x + 1)
    for (i, j), c in f.terms.items():
        out[i] = F.add(out[i], F.mul(c, F.pow(b, j)))
    return out


@pytest.mark.parametrize("pen", [(2, 1, 1), (3, 1, 1)])
def test_gap_orders(pen):
    C = curve(*pen)
    q = C.params.q
    pts = sample_smooth_points(C, 10, seed=3)
    assert len(pts) == 10
    for Q in pts:
        cert = verify_gap_at_affine(C, Q)
        assert cert.order == q**3 - 1
        assert cert.line_orders == [1] * (q + 1)
        assert cert.valid


def test_branch_satisfies_curve():
    C = curve(2, 1, 1)
    for Q in sample_smooth_points(C, 4, seed=1):
        S = expand_branch(C, Q, 40)
        assert not any(eval_on_branch(C.f, S))
        x, y = S.coordinates()
        assert (x[0], y[0]) == Q


@pytest.mark.parametrize("pen", [(2, 1, 1), (3, 1, 1)])
def test_horizontal_line_orders_match_root_multiplicity(pen):
    C = curve(*pen)
    F = C.field
    rng = random.Random(7)
    for a, b in rng.sample(smooth_affine_points(C), 8):
        yb = BiPoly._raw(F, {(0, 1): 1, **({(0, 0): F.neg(b)} if b else {})})
        assert ord_at(C, (a, b), yb) == _root_multiplicity(F, _restrict_y(C.f, b), a)


def test_singular_and_off_curve_points_rejected():
    from hermcover.gf import field
    F = field(3, 1)
    x, y = BiPoly.x(F), BiPoly.y(F)
    cusp = PlaneCurve(y**2 - x**3, "xy")
    with pytest.raises(SingularPointError):
        expand_branch(cusp, (0, 0))
    with pytest.raises(ValueError):
        expand_branch(cusp, (1, 0))


def test_order_cap():
    C = curve(2, 1, 1)
    Q = sample_smooth_points(C, 1)[0]
    with pytest.raises(OrderCapExceeded):
        ord_at(C, Q, C.f * BiPoly.x(C.field), precision=8, cap_factor=2)


def test_gap_function_shape():
    P = params(2, 1, 1)
    h = gap_function(P, (0, 0))
    # x^(8-2-2) (x^3 + y^3)
    F = P.field
    x, y = BiPoly.x(F), BiPoly.y(F)
    assert h == x**4 * (x**3 + y**3)


@pytest.mark.parametrize("pen", [(2, 1, 1), (3, 1, 1), (2, 1, 2)])
def test_total_ramification(pen):
    P = params(*pen)
    chk = verify_total_ramification(P, tu(*pen).c_prime)
    assert len(chk.roots) == P.q ** (2 * P.n)
    assert chk.holds


# --- valuation multiplicativity ----------------------------------------------------------

_C = curve(3, 1, 1)
_PTS = sample_smooth_points(_C, 12, seed=11)
_PREC = 60
_BRANCHES = [expand_branch(_C, Q, _PREC) for Q in _PTS]


def _lowest(series):
    return next((i for i, c in enumerate(series) if c), None)


@st.composite
def two_functions(draw):
    F = _C.field
    S = draw(st.sampled_from(_BRANCHES))
    a, b = S.point

    def poly():
        terms = {}
        for _ in range(draw(st.integers(1, 4))):
            terms[(draw(st.integers(0, 3)), draw(st.integers(0, 3)))] = draw(st.integers(1, F.order - 1))
        # bias towards vanishing at Q by subtracting the value there
        g = BiPoly._raw(F, terms)
        if draw(st.booleans()):
            v = g.eval_code((a, b))
            if v:
                g = g - BiPoly._raw(F, {(0, 0): v})
        return g

    return S, poly(), poly()


@settings(max_examples=1000, deadline=None)
@given(two_functions())
def test_valuation_multiplicative(t):
    S, g, h = t
    og, oh = _lowest(eval_on_branch(g, S)), _lowest(eval_on_branch(h, S))
    if og is None or oh is None or og + oh > _PREC:
        return  # vanishes beyond the working precision
    assert _lowest(eval_on_branch(g * h, S)) == og + oh
