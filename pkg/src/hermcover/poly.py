"""Polynomials over GF(p^k): dense univariate, sparse multivariate, linearized.

Coefficients are stored as int codes of a :class:`~hermcover.gf.GF`; the
constructors also accept :class:`~hermcover.gf.FieldElement` values of the same
field (anything else raises).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .gf import GF, FieldElement, FieldMismatchError


def _check_same(a, b):
    if a.field != b.field:
        raise FieldMismatchError(f"polynomials over {a.field} and {b.field}")


class UniPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        self.field = field
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def _raw(cls, field, cs):
        obj = cls.__new__(cls)
        obj.field = field
        while cs and cs[-1] == 0:
            cs.pop()
        obj.coeffs = cs
        return obj

    @classmethod
    def monomial(cls, field, deg, coeff=1):
        return cls._raw(field, [0] * deg + [field.coerce(coeff)])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @classmethod
    def from_terms(cls, field, terms: dict):
        """From {exponent: code}; FieldElement values are also accepted."""
        if not terms:
            return cls._raw(field, [])
        cs = [0] * (max(terms) + 1)
        for e, c in terms.items():
            c = field.coerce(c) if isinstance(c, FieldElement) else c
            cs[e] = field.add(cs[e], c)
        return cls._raw(field, cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def terms(self) -> dict:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, i) -> FieldElement:
        return FieldElement(self.field, self.coeffs[i] if i < len(self.coeffs) else 0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other):
        _check_same(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UniPoly._raw(F, out)

    def __neg__(self):
        F = self.field
        return UniPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> UniPoly:
        F = self.field
        c = c if isinstance(c, int) else F.coerce(c)
        return UniPoly._raw(F, [F.mul(c, a) for a in self.coeffs])

    def __mul__(self, other):
        _check_same(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(F, [])
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        bnz = [(j, c) for j, c in enumerate(b) if c]
        for i, ai in enumerate(a):
            if ai:
                for j, bj in bnz:
                    out[i + j] = add(out[i + j], mul(ai, bj))
        return UniPoly._raw(F, out)

    def frobenius_power(self, j: int) -> UniPoly:
        """self^(p^j), computed coefficientwise (valid in characteristic p)."""
        F = self.field
        pj = F.p**j
        terms = {i * pj: F.frob(c, j) for i, c in enumerate(self.coeffs) if c}
        return UniPoly.from_terms(F, terms)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        F = self.field
        result = UniPoly._raw(F, [1])
        j = 0
        while e:
            e, digit = divmod(e, F.p)
            if digit:
                fp = self.frobenius_power(j)
                for _ in range(digit):
                    result = result * fp
            j += 1
        return result

    def derivative(self) -> UniPoly:
        F = self.field
        return UniPoly._raw(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other) -> tuple[UniPoly, UniPoly]:
        _check_same(self, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        inv = F.inv(other.lc)
        q = [0] * max(0, len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = F.mul(r[k + db], inv)
            q[k] = c
            if c:
                for i, bi in enumerate(b):
                    r[k + i] = F.sub(r[k + i], F.mul(c, bi))
        return UniPoly._raw(F, q), UniPoly._raw(F, r[:db] if db > 0 else [])

    def __call__(self, x):
        F = self.field
        xc = F.coerce(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, xc), c)
        return FieldElement(F, acc)

    def eval_codes(self, xs) -> np.ndarray:
        """Vectorised Horner evaluation at an array of codes."""
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = F.vadd(F.vmul(acc, xs), np.full_like(xs, c))
        return acc

    def compose(self, inner: UniPoly) -> UniPoly:
        """self(inner(x))."""
        _check_same(self, inner)
        F = self.field
        acc = UniPoly._raw(F, [])
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly._raw(F, [c])
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(parts))


class MPoly:
    """Sparse polynomial in ``nvars`` variables: {exponent tuple: code}."""

    __slots__ = ("field", "terms", "nvars")

    def __init__(self, field: GF, terms=None, nvars: int = 2):
        self.field = field
        self.nvars = nvars
        out = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity")
            c = field.coerce(c)
            if c:
                mono = tuple(int(e) for e in mono)
                s = field.add(out.get(mono, 0), c)
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        self.terms = out

    @classmethod
    def _raw(cls, field, terms, nvars):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj.nvars = nvars
        return obj

    def _new(self, terms):
        return type(self)._raw(self.field, terms, self.nvars)

    @classmethod
    def constant(cls, field, c, nvars=2):
        c = field.coerce(c)
        return cls._raw(field, {(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, field, i, nvars=2, coeff=1):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(field, {mono: field.coerce(coeff)}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def _addto(self, out, terms, neg=False):
        F = self.field
        for m, c in terms.items():
            if neg:
                c = F.neg(c)
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def __add__(self, other):
        _check_same(self, other)
        return self._new(self._addto(dict(self.terms), other.terms))

    def __sub__(self, other):
        _check_same(self, other)
        return self._new(self._addto(dict(self.terms), other.terms, neg=True))

    def __neg__(self):
        F = self.field
        return self._new({m: F.neg(c) for m, c in self.terms.items()})

    def scale(self, c) -> MPoly:
        F = self.field
        c = c if isinstance(c, int) else F.coerce(c)
        if c == 0:
            return self._new({})
        return self._new({m: F.mul(c, a) for m, a in self.terms.items()})

    def __mul__(self, other):
        _check_same(self, other)
        F = self.field
        add, mul = F.add, F.mul
        out = {}
        other_items = list(other.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in other_items:
                m = tuple(a + b for a, b in zip(m1, m2))
                s = add(out.get(m, 0), mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return self._new(out)

    def frobenius_power(self, j: int) -> MPoly:
        """self^(p^j) coefficientwise; exact in characteristic p."""
        F = self.field
        pj = F.p**j
        return self._new({tuple(e * pj for e in m): F.frob(c, j) for m, c in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        F = self.field
        result = self._new({(0,) * self.nvars: 1})
        j = 0
        while e:
            e, digit = divmod(e, F.p)
            if digit:
                fp = self.frobenius_power(j)
                for _ in range(digit):
                    result = result * fp
            j += 1
        return result

    def partial(self, i: int) -> MPoly:
        F = self.field
        out = {}
        for m, c in self.terms.items():
            if m[i] % F.p:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = F.mul(F.from_int(m[i]), c)
        return self._new(out)

    def substitute(self, images: list[MPoly]) -> MPoly:
        """Replace variable i by images[i]; all images share one arity."""
        F = self.field
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        cls = type(images[0])
        cache = [dict() for _ in images]

        def power(i, e):
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        out = cls._raw(F, {}, nv)
        for m, c in self.terms.items():
            term = cls._raw(F, {(0,) * nv: c}, nv)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point) -> FieldElement:
        F = self.field
        pt = [F.coerce(v) for v in point]
        acc = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t = F.mul(t, F.pow(v, e))
            acc = F.add(acc, t)
        return FieldElement(F, acc)

    def eval_code(self, point) -> int:
        """Value at a point given by codes (no prime-field coercion)."""
        F = self.field
        acc = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(point, m):
                if e:
                    t = F.mul(t, F.pow(int(v), e))
            acc = F.add(acc, t)
        return acc

    def eval_codes(self, *arrays) -> np.ndarray:
        """Vectorised evaluation; arrays broadcast against each other."""
        F = self.field
        arrays = [np.asarray(a, dtype=np.int64) for a in arrays]
        shape = np.broadcast_shapes(*(a.shape for a in arrays))
        acc = np.zeros(shape, dtype=np.int64)
        for m, c in self.terms.items():
            t = np.full(shape, c, dtype=np.int64)
            for a, e in zip(arrays, m):
                if e:
                    t = F.vmul(t, F.vpow(a, e))
            acc = F.vadd(acc, t)
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "xyz" if self.nvars <= 3 else [f"v{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, reverse=True):
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
            parts.append(f"{self.terms[m]}*{mono}" if mono else f"{self.terms[m]}")
        return " + ".join(parts)


class BiPoly(MPoly):
    """Sparse polynomial in x, y."""

    __slots__ = ()

    def __init__(self, field: GF, terms=None):
        super().__init__(field, terms, 2)

    @classmethod
    def _raw(cls, field, terms, nvars=2):
        return super()._raw(field, terms, 2)

    @classmethod
    def constant(cls, field, c, nvars=2):
        return super().constant(field, c, 2)

    @classmethod
    def x(cls, field):
        return cls._raw(field, {(1, 0): 1})

    @classmethod
    def y(cls, field):
        return cls._raw(field, {(0, 1): 1})

    @classmethod
    def from_univariate(cls, u: UniPoly, var: int = 0) -> BiPoly:
        return cls._raw(u.field, {((i, 0) if var == 0 else (0, i)): c for i, c in u.terms().items()})

    @property
    def deg_y(self) -> int:
        return self.degree_in(1)

    @property
    def deg_x(self) -> int:
        return self.degree_in(0)

    def dx(self) -> BiPoly:
        return self.partial(0)

    def dy(self) -> BiPoly:
        return self.partial(1)

    def is_monic_in_y(self) -> bool:
        D = self.deg_y
        top = [(m, c) for m, c in self.terms.items() if m[1] == D]
        return D >= 0 and top == [((0, D), 1)]

    def homogenize(self) -> MPoly:
        """F(X, Y, Z) of degree equal to the total degree."""
        d = self.total_degree
        return MPoly._raw(self.field, {(i, j, d - i - j): c for (i, j), c in self.terms.items()}, 3)

    def __call__(self, x, y) -> FieldElement:
        return self.evaluate((x, y))


def pseudo_reduce(g: BiPoly, f: BiPoly) -> BiPoly:
    """Remainder of g modulo f in K[x][y]; f must be monic in y."""
    _check_same(g, f)
    if not f.is_monic_in_y():
        raise ValueError("f is not monic in y")
    F = g.field
    D = f.deg_y
    # f = y^D + sum_{j<D} fj(x) y^j, stored as {j: {i: c}}
    tail = {}
    for (i, j), c in f.terms.items():
        if j < D:
            tail.setdefault(j, {})[i] = c
    rows = {}
    for (i, j), c in g.terms.items():
        rows.setdefault(j, {})[i] = c
    add, mul, neg = F.add, F.mul, F.neg
    top = max(rows, default=-1)
    for j in range(top, D - 1, -1):
        a = rows.pop(j, None)
        if not a:
            continue
        shift = j - D
        for jj, fx in tail.items():
            target = rows.setdefault(shift + jj, {})
            for i1, c1 in a.items():
                nc1 = neg(c1)
                for i2, c2 in fx.items():
                    e = i1 + i2
                    s = add(target.get(e, 0), mul(nc1, c2))
                    if s:
                        target[e] = s
                    else:
                        target.pop(e, None)
    terms = {(i, j): c for j, row in rows.items() for i, c in row.items() if c}
    return BiPoly._raw(F, terms)


class LinearizedPoly:
    """L(x) = sum_i alpha_i x^(q^(2i)) with alpha_n = 1 and alpha_0 != 0."""

    def __init__(self, field: GF, q: int, coeffs, codes: bool = False):
        """Integer coefficients are prime-field residues unless ``codes`` is set."""
        p = field.p
        e = round(math.log(q, p)) if q > 1 else 0
        if q < 2 or p**e != q:
            raise ValueError(f"q={q} is not a power of p={p} greater than 1")
        cs = [int(c) if codes and isinstance(c, (int, np.integer)) else field.coerce(c) for c in coeffs]
        if len(cs) < 2:
            raise ValueError("need alpha_0..alpha_n with n >= 1")
        if cs[-1] != 1:
            raise ValueError("alpha_n must be 1")
        if cs[0] == 0:
            raise ValueError("alpha_0 must be nonzero")
        self.field = field
        self.q = q
        self.e = e
        self.coeffs = cs

    @classmethod
    def normalized(cls, field: GF, q: int, n: int) -> LinearizedPoly:
        """x + x^(q^2) + ... + x^(q^(2n))."""
        return cls(field, q, [1] * (n + 1))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def step(self) -> int:
        return self.q**2

    @property
    def degree(self) -> int:
        return self.q ** (2 * self.n)

    @property
    def alpha0(self) -> int:
        return self.coeffs[0]

    def exponents(self) -> list[int]:
        return [self.q ** (2 * i) for i in range(self.n + 1)]

    def eval_code(self, x: int) -> int:
        F = self.field
        acc = 0
        for a, ex in zip(self.coeffs, self.exponents()):
            if a:
                acc = F.add(acc, F.mul(a, F.pow(x, ex)))
        return acc

    def __call__(self, x) -> FieldElement:
        return FieldElement(self.field, self.eval_code(self.field.coerce(x)))

    def eval_codes(self, xs) -> np.ndarray:
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for a, ex in zip(self.coeffs, self.exponents()):
            if a:
                acc = F.vadd(acc, F.vmul(np.full_like(xs, a), F.vpow(xs, ex)))
        return acc

    def to_unipoly(self) -> UniPoly:
        return UniPoly.from_terms(self.field, dict(zip(self.exponents(), self.coeffs)))

    def in_x(self) -> BiPoly:
        return BiPoly._raw(self.field, {(ex, 0): a for ex, a in zip(self.exponents(), self.coeffs) if a})

    def in_y(self) -> BiPoly:
        return BiPoly._raw(self.field, {(0, ex): a for ex, a in zip(self.exponents(), self.coeffs) if a})

    def __repr__(self):
        return f"LinearizedPoly(q={self.q}, coeffs={self.coeffs} over {self.field!r})"


# --- GF(p)-linear algebra ----------------------------------------------------

def _nullspace_mod_p(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} over GF(p); M is rows x cols."""
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def kernel(L: LinearizedPoly, field: GF | None = None) -> frozenset[FieldElement]:
    """All roots of L in ``field`` (default: L's coefficient field)."""
    return frozenset(FieldElement(L.field, c) for c in kernel_codes(L, field))


def kernel_codes(L: LinearizedPoly, field: GF | None = None) -> list[int]:
    F = L.field
    if field is not None and field != F:
        raise FieldMismatchError(f"L has coefficients in {F}, not {field}; embed first")
    p, k = F.p, F.k
    cols = [F.digits(L.eval_code(p**i)) for i in range(k)]
    M = [[cols[j][i] for j in range(k)] for i in range(k)]
    basis = [F.from_digits(v) for v in _nullspace_mod_p(M, p)]
    out = [0]
    for b in basis:
        new = []
        for t in range(1, p):
            bt = F.mul(F.from_int(t), b)
            new.extend(F.add(x, bt) for x in out)
        out.extend(new)
    return sorted(out)


def value_set_codes(F: UniPoly, field: GF | None = None) -> set[int]:
    if field is not None and field != F.field:
        raise FieldMismatchError("value set over a field other than the coefficient field")
    return set(np.unique(F.eval_codes(F.field.all_codes())).tolist())


def value_set(F: UniPoly, field: GF | None = None) -> frozenset[FieldElement]:
    """Exact image of the field under F, by exhaustive evaluation."""
    return frozenset(FieldElement(F.field, c) for c in value_set_codes(F, field))


def is_minimal_value_set(F: UniPoly, field: GF | None = None) -> bool:
    if F.degree < 1:
        raise ValueError("need deg F >= 1")
    N = F.field.order
    return len(value_set_codes(F, field)) == -(-N // F.degree)


def _xq_minus_x(field: GF, N: int) -> UniPoly:
    return UniPoly.from_terms(field, {N: 1, 1: field.neg(1)})


@dataclass
class MVSPCheck:
    theta: FieldElement | None
    holds: bool
    failures: list[str] = dc_field(default_factory=list)
    value_set: list[int] = dc_field(default_factory=list)


def mvsp_identity(F: UniPoly, field: GF | None = None) -> tuple[FieldElement | None, bool]:
    """prod_{g in V_F} (F - g) == theta (x^N - x) F' for some nonzero theta."""
    if F.is_zero():
        raise ValueError("zero polynomial")
    K = F.field
    V = sorted(value_set_codes(F, field))
    lhs = UniPoly._raw(K, [1])
    for g in V:
        lhs = lhs * (F - UniPoly._raw(K, [g]))
    rhs = _xq_minus_x(K, K.order) * F.derivative()
    if rhs.is_zero() or lhs.degree != rhs.degree:
        return None, False
    theta = K.div(lhs.lc, rhs.lc)
    return FieldElement(K, theta), lhs == rhs.scale(theta)


def check_mvsp_factorization(L: LinearizedPoly, field: GF | None = None) -> MVSPCheck:
    """Factorisation identity for F = L^(q+1) and its reduced form with L^q cancelled.

    Checks prod_{g in V}(F - g) = theta (x^N - x) F' and
    L prod_{g != 0}(L^(q+1) - g) = theta alpha_0 (x^N - x), N = |field|.
    """
    if field is not None and field != L.field:
        raise FieldMismatchError("L and field differ")
    K = L.field
    Lu = L.to_unipoly()
    if Lu.is_zero():
        raise ValueError("zero polynomial")
    Fp = Lu ** (L.q + 1)
    V = sorted(value_set_codes(Fp))
    out = MVSPCheck(theta=None, holds=False, value_set=V)
    if 0 not in V:
        out.failures.append("0 not in value set")
        return out
    theta, ok = mvsp_identity(Fp)
    if not ok:
        out.failures.append("prod(F - g) = theta (x^N - x) F'")
    reduced = Lu
    for g in V:
        if g:
            reduced = reduced * (Fp - UniPoly._raw(K, [g]))
    xN = _xq_minus_x(K, K.order)
    if theta is None:
        theta_c = K.div(reduced.lc, L.alpha0) if reduced.degree == xN.degree else None
    else:
        theta_c = theta.value
    if theta_c is None or reduced != xN.scale(K.mul(theta_c, L.alpha0)):
        out.failures.append("L prod(L^(q+1) - g) = theta alpha_0 (x^N - x)")
    out.holds = not out.failures
    out.theta = FieldElement(K, theta_c) if theta_c is not None else None
    return out


class ShapeError(ValueError):
    """T(x) does not have the predicted monomial support."""


def shape_exponents(q: int, u: int, m: int) -> list[int]:
    """Exponents q*t_i, t_i = (q^(2ui-1)+1)/(q+1), i = 0..m."""
    return [(q ** (2 * u * i) + q) // (q + 1) for i in range(m + 1)]


@dataclass
class TShape:
    T: UniPoly
    u: int
    m: int
    exponents: list[int]


def build_T_and_check_shape(L: LinearizedPoly, field: GF | None = None, beta=None) -> TShape:
    """T(x) = prod_{g in V}(x - g) for V the value set of L^(q+1), with its support checked.

    With ``beta`` given (u = m = 1 case) also checks T = x^q - beta^-(q^2-1) x.
    """
    if field is not None and field != L.field:
        raise FieldMismatchError("L and field differ")
    K = L.field
    q = L.q
    Fp = L.to_unipoly() ** (q + 1)
    if not is_minimal_value_set(Fp):
        raise ValueError("L^(q+1) is not a minimal value set polynomial over this field")
    T = UniPoly._raw(K, [1])
    for g in sorted(value_set_codes(Fp)):
        T = T * UniPoly._raw(K, [K.neg(g), 1])
    s = K.k
    if s % (2 * L.e) or s // (2 * L.e) - L.n < 1:
        raise ShapeError(f"|field| = p^{s} is not q^(2(n+um)) for positive u, m")
    um = s // (2 * L.e) - L.n
    support = set(T.support())
    tried = []
    for u in range(1, um + 1):
        if um % u:
            continue
        m = um // u
        exps = shape_exponents(q, u, m)
        ok = (
            support <= set(exps)
            and T.degree == exps[-1]
            and T.lc == 1
            and T.coeffs[1] != 0
            and T.coeffs[0] == 0
        )
        if ok:
            shape = TShape(T, u, m, exps)
            break
        tried.append((u, m, sorted(support - set(exps))))
    else:
        raise ShapeError(f"support {sorted(support)} fits no (u, m); offending exponents {tried}")
    if beta is not None:
        b = K.coerce(beta)
        expected = UniPoly.from_terms(K, {q: 1, 1: K.neg(K.pow(K.inv(b), q * q - 1))})
        if T != expected:
            raise ShapeError(f"T = {T} differs from x^q - beta^-(q^2-1) x")
    return shape


def check_compos(L: LinearizedPoly, T: UniPoly, field: GF | None, s: int) -> bool:
    """T(L^(q+1)) == theta alpha_0 (x^(p^s) - x) L^q for some nonzero theta."""
    K = L.field
    if field is not None and field != K:
        raise FieldMismatchError("L and field differ")
    _check_same(L.to_unipoly(), T)
    Lu = L.to_unipoly()
    lhs = T.compose(Lu ** (L.q + 1))
    rhs = _xq_minus_x(K, K.p**s) * Lu**L.q
    rhs = rhs.scale(L.alpha0)
    if lhs.is_zero() or lhs.degree != rhs.degree:
        return False
    theta = K.div(lhs.lc, rhs.lc)
    return theta != 0 and lhs == rhs.scale(theta)


def check_poly_L(L: LinearizedPoly, beta, field: GF | None = None) -> bool:
    """L^(q^2) - beta^-(q^2-1) L == x^(q^(2(n+1))) - x."""
    K = L.field
    if field is not None and field != K:
        raise FieldMismatchError("L and field differ")
    b = K.coerce(beta)
    if b == 0:
        raise ValueError("beta must be nonzero")
    q = L.q
    Lu = L.to_unipoly()
    c = K.pow(K.inv(b), q * q - 1)
    lhs = Lu ** (q * q) - Lu.scale(c)
    return lhs == _xq_minus_x(K, q ** (2 * (L.n + 1)))
