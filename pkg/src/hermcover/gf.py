"""Finite fields GF(p^k) with explicit embeddings between them.

Elements are encoded as ints: the element ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}``
of ``GF(p)[x]/(modulus)`` has code ``sum(c_i * p**i)``.  Hot loops in the rest
of the package work directly on these codes through the field object
(``F.add``, ``F.mul``, ...) or on numpy arrays of codes (``F.vadd``,
``F.vmul``, ...).  :class:`FieldElement` wraps a code together with its field
for the public API; mixing elements of different fields raises
:class:`FieldMismatchError`.

Multiplication uses exp/log tables over a primitive element, addition in odd
characteristic uses Zech logarithms, so both are O(1) for every supported
field order.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_ORDER = 1 << 20


class FieldMismatchError(TypeError):
    """Arithmetic between elements of two different fields."""


class FieldTooLarge(ValueError):
    """Requested field order exceeds the configured maximum."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over GF(p), lists of ints low degree first ----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p), low degree first."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    xpk = _ppowmod([0, 1], p**k, modulus, p)
    if _trim(_pmod(_sub(xpk, [0, 1], p), modulus, p)):
        return False
    for r in prime_factors(k):
        h = _sub(_ppowmod([0, 1], p ** (k // r), modulus, p), [0, 1], p)
        if len(_pgcd(modulus, h, p)) != 1:
            return False
    return True


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k with the smallest code ``sum(c_i p^i)``.

    The order is lexicographic on ``(c_{k-1}, ..., c_0)``.
    """
    for code in range(p**k):
        coeffs = [(code // p**i) % p for i in range(k)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _matpow_mod(M, e, p):
    k = M.shape[0]
    R = np.eye(k, dtype=np.int64)
    B = M.copy()
    while e:
        if e & 1:
            R = (R @ B) % p
        B = (B @ B) % p
        e >>= 1
    return R


class GF:
    """The field GF(p^k) = GF(p)[x]/(modulus).

    Fields compare equal when ``(p, k, modulus)`` agree; :func:`field` returns
    cached instances so that the usual case is identity.
    """

    def __init__(self, p: int, k: int = 1, modulus=None, max_order: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        limit = MAX_FIELD_ORDER if max_order is None else max_order
        if p**k > limit:
            raise FieldTooLarge(f"GF({p}^{k}) has order {p**k} > {limit}")
        if modulus is None:
            modulus = least_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self._key = (p, k, modulus)
        self._build_tables()
        if p == 2:
            self.add = operator.xor
            self.sub = operator.xor
        else:
            self.add = self._add_zech

    # -- construction -------------------------------------------------------

    def _mult_matrix(self, code):
        """Matrix of multiplication by ``code`` on coordinate vectors."""
        p, k = self.p, self.k
        digits = self.digits(code)
        M = np.zeros((k, k), dtype=np.int64)
        for j in range(k):
            col = _pmulmod(digits, [0] * j + [1], list(self.modulus), p)
            col = col + [0] * (k - len(col))
            M[:, j] = col[:k]
        return M

    def _build_tables(self):
        p, k, N = self.p, self.k, self.order
        n1 = N - 1
        eye = np.eye(k, dtype=np.int64)
        factors = prime_factors(n1) if n1 > 1 else []
        for g in range(1, N):
            Mg = self._mult_matrix(g)
            if all(not np.array_equal(_matpow_mod(Mg, n1 // r, p), eye) for r in factors):
                break
        self.primitive = g
        # powers g^0..g^(B-1) one by one, then whole blocks through M_g^B
        B = max(1, int(np.ceil(np.sqrt(n1))))
        block = np.zeros((k, B), dtype=np.int64)
        v = np.zeros(k, dtype=np.int64)
        v[0] = 1
        for i in range(B):
            block[:, i] = v
            v = (Mg @ v) % p
        MB = _matpow_mod(Mg, B, p)
        blocks = [block]
        for _ in range((n1 + B - 1) // B - 1):
            block = (MB @ block) % p
            blocks.append(block)
        digits = np.concatenate(blocks, axis=1)[:, :n1]
        weights = p ** np.arange(k, dtype=np.int64)
        exp = weights @ digits
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(n1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("exp table is not a permutation")  # pragma: no cover
        self._exp_np = np.concatenate([exp, exp])
        self._log_np = log
        self._exp = exp.tolist()
        self._log = log.tolist()
        if p != 2:
            one_plus = self._digit_add_vec(np.ones(n1, dtype=np.int64), exp)
            zech = np.where(one_plus == 0, -1, log[one_plus])
            self._zech_np = zech
            self._zech = zech.tolist()
            self._half = n1 // 2

    def _digit_add_vec(self, a, b):
        p, k = self.p, self.k
        out = np.zeros_like(a)
        w = 1
        for _ in range(k):
            out += ((a // w % p + b // w % p) % p) * w
            w *= p
        return out

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GF) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- int-code arithmetic ----------------------------------------------------

    def _add_zech(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        n1 = self.order - 1
        d = log[b] - la
        if d < 0:
            d += n1
        z = self._zech[d]
        if z < 0:
            return 0
        z += la
        if z >= n1:
            z -= n1
        return self._exp[z]

    def neg(self, a):
        if a == 0 or self.p == 2:
            return a
        z = self._log[a] + self._half
        n1 = self.order - 1
        return self._exp[z - n1 if z >= n1 else z]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        z = self._log[a] + self._log[b]
        n1 = self.order - 1
        return self._exp[z - n1 if z >= n1 else z]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        n1 = self.order - 1
        return self._exp[(n1 - self._log[a]) % n1]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        n1 = self.order - 1
        return self._exp[(self._log[a] * e) % n1]

    def frob(self, a, m=1):
        """a^(p^m) on codes."""
        if a == 0:
            return 0
        n1 = self.order - 1
        return self._exp[(self._log[a] * pow(self.p, m, n1)) % n1] if n1 > 1 else a

    def from_int(self, n: int) -> int:
        """Code of the prime-field image of the integer n."""
        return n % self.p

    def digits(self, code: int) -> list[int]:
        p = self.p
        return [(code // p**i) % p for i in range(self.k)]

    def from_digits(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.k:
            if any(coords[self.k:]):
                raise ValueError(f"coordinate vector longer than {self.k}")
            coords = coords[: self.k]
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coords))

    def codes(self) -> range:
        return range(self.order)

    # -- vectorised arithmetic on numpy arrays of codes -------------------------

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        n1 = self.order - 1
        la = self._log_np[a]
        d = (self._log_np[b] - la) % n1
        z = self._zech_np[d]
        out = self._exp_np[np.where(z < 0, 0, la + z)]
        out = np.where(z < 0, 0, out)
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        out = self._exp_np[self._log_np[a] + self._half]
        return np.where(a == 0, 0, out)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        n1 = self.order - 1
        if e == 0:
            return np.ones_like(a)
        out = self._exp_np[(self._log_np[a] * (e % n1)) % n1]
        return np.where(a == 0, 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero")
        n1 = self.order - 1
        return self._exp_np[(n1 - self._log_np[a]) % n1]

    def all_codes(self):
        return np.arange(self.order, dtype=np.int64)

    # -- element API ----------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Element from a code, a coordinate vector or another element of this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} element used as {self} element")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_digits(value))
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"code {value} out of range for {self}")
        return FieldElement(self, value)

    def coerce(self, value) -> int:
        """Code for a FieldElement of this field, or the prime-field image of an int."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} element used as {self} element")
            return value.value
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """The class of x in GF(p)[x]/(modulus)."""
        return FieldElement(self, self.p % self.order if self.k > 1 else 0)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.order)]

    def subfield_codes(self, d: int) -> list[int]:
        """Codes of the subfield GF(p^d), i.e. the solutions of x^(p^d) = x."""
        if self.k % d:
            raise ValueError(f"GF({self.p}^{d}) is not a subfield of {self}")
        return [c for c in range(self.order) if self.frob(c, d) == c]


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    """Cached GF(p^k) with the least irreducible modulus."""
    return GF(p, k)


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} and {other.field} elements mixed; embed first")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p and self.value < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    @property
    def coords(self) -> list[int]:
        return self.field.digits(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def frobenius(x: FieldElement, m: int) -> FieldElement:
    """x^(p^m)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return FieldElement(x.field, x.field.frob(x.value, m))


def enumerate_field(spec: GF) -> list[FieldElement]:
    """All elements in code order (0 first, then lexicographic on coordinates)."""
    return spec.elements()


class Embedding:
    """Ring homomorphism GF(p^a) -> GF(p^b) fixed by the image of the generator."""

    def __init__(self, source: GF, target: GF, image: int):
        if source.p != target.p or target.k % source.k:
            raise ValueError(f"{source} does not embed in {target}")
        self.source = source
        self.target = target
        self.image = target.coerce(image) if isinstance(image, FieldElement) else int(image)
        T = target
        # Horner over all source elements at once
        pw = [1]
        for _ in range(source.k - 1):
            pw.append(T.mul(pw[-1], self.image))
        codes = np.arange(source.order, dtype=np.int64)
        out = np.zeros(source.order, dtype=np.int64)
        for i in range(source.k):
            digit = (codes // source.p**i) % source.p
            out = T.vadd(out, T.vmul(digit % T.order, np.full_like(codes, pw[i])))
        self._table = out.tolist()
        self._back = {v: i for i, v in enumerate(self._table)}
        if source.k > 1 and _eval_poly_codes(T, [T.from_int(m) for m in source.modulus], self.image):
            raise ValueError("image is not a root of the source modulus")

    @property
    def image_of_generator(self) -> FieldElement:
        return FieldElement(self.target, self.image)

    def code(self, c: int) -> int:
        return self._table[c]

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field != self.source:
                raise FieldMismatchError(f"embedding expects {self.source}, got {x.field}")
            return FieldElement(self.target, self._table[x.value])
        return FieldElement(self.target, self._table[self.source.coerce(x)])

    def preimage(self, y: FieldElement) -> FieldElement | None:
        c = self._back.get(self.target.coerce(y))
        return None if c is None else FieldElement(self.source, c)

    def preimage_code(self, c: int) -> int | None:
        return self._back.get(int(c))

    def image_set(self) -> set[int]:
        return set(self._table)

    def compose(self, first: "Embedding") -> "Embedding":
        """self o first."""
        if first.target != self.source:
            raise ValueError("embeddings do not compose")
        return Embedding(first.source, self.target, self._table[first.image])


def _eval_poly_codes(F: GF, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def least_root_embedding(source: GF, target: GF) -> Embedding:
    """Embedding sending the generator to the smallest-code root of its modulus."""
    if source.k == 1:
        return Embedding(source, target, 0)
    vals = np.zeros(target.order, dtype=np.int64)
    xs = target.all_codes()
    for c in reversed(source.modulus):
        vals = target.vadd(target.vmul(vals, xs), np.full_like(xs, target.from_int(c)))
    roots = np.nonzero(vals == 0)[0]
    if len(roots) == 0:
        raise ValueError(f"{source} does not embed in {target}")
    return Embedding(source, target, int(roots[0]))


@dataclass(frozen=True)
class Tower:
    """GF(q) in GF(q^2) in GF(q^{2(n+1)}) with compatible embeddings."""

    p: int
    e: int
    n: int
    base: GF
    quad: GF
    big: GF
    base_to_quad: Embedding
    quad_to_big: Embedding
    base_to_big: Embedding

    @property
    def q(self) -> int:
        return self.p**self.e

    def orders(self) -> tuple[int, int, int]:
        return self.base.order, self.quad.order, self.big.order


def make_tower(p: int, e: int, n: int, max_order: int | None = None) -> Tower:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1 or n < 1:
        raise ValueError("need e >= 1 and n >= 1")
    limit = MAX_FIELD_ORDER if max_order is None else max_order
    big_k = 2 * (n + 1) * e
    if p**big_k > limit:
        raise FieldTooLarge(f"GF({p}^{big_k}) exceeds maximum field order {limit}")
    base, quad, big = field(p, e), field(p, 2 * e), field(p, big_k)
    quad_to_big = least_root_embedding(quad, big)
    base_to_quad = least_root_embedding(base, quad)
    base_to_big = quad_to_big.compose(base_to_quad)
    return Tower(p, e, n, base, quad, big, base_to_quad, quad_to_big, base_to_big)
