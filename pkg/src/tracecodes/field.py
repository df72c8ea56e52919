"""Arithmetic in GF(p) and GF(p^m) for odd primes p.

Elements live in the polynomial basis 1, a, a^2, ... where a is the class of
x modulo the field's modulus.  Two views are offered:

* ``FieldElement`` for scalar work with the usual operators;
* ``FieldCtx`` methods on integer numpy arrays of shape ``(..., m)`` for the
  enumeration-heavy paths (every element of the field at once).

An element's integer encoding is ``sum(coeffs[i] * p**i)``; ascending
encoding order is the canonical order used everywhere in the package.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from . import config
from .errors import DomainError, ParameterError, ResourceError, UsageError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def legendre(a: int, p: int) -> int:
    """Quadratic character of GF(p), with 0 mapped to 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    """a*b mod f where f is monic (full coefficient list)."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, f, p)


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim([c % p for c in a[:df]])


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bj) % p
            _trim(a)
        a, b = b, a
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's test for the monic polynomial x^m + coeffs[m-1] x^(m-1) + ... + coeffs[0]."""
    m = len(coeffs)
    f = [c % p for c in coeffs] + [1]
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x mod f
    xp = x
    frob = []
    for _ in range(m):
        xp = _poly_powmod(xp, p, f, p)
        frob.append(xp)
    if _trim(list(frob[m - 1])) != x:
        return False
    for r in _prime_factors(m):
        h = list(frob[m // r - 1])
        h += [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        g = _poly_gcd(f, _trim(h), p)
        if len(g) > 1:
            return False
    return True


def irreducible_polynomials(p: int, m: int) -> Iterator[list[int]]:
    """Yield monic irreducible degree-m polynomials in ascending encoding order.

    Each polynomial is given by its non-leading coefficients c_0..c_{m-1}.
    """
    for enc in range(p**m):
        coeffs = [(enc // p**i) % p for i in range(m)]
        if is_irreducible(coeffs, p):
            yield coeffs


def find_irreducible(p: int, m: int) -> list[int]:
    """Smallest-encoding monic irreducible polynomial of degree m over GF(p)."""
    _check_pm(p, m)
    return next(irreducible_polynomials(p, m))


def _check_pm(p, m):
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p == 2:
        raise ParameterError("p must be an odd prime")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ParameterError("m must be a positive integer")


class FieldCtx:
    """The field GF(p^m); immutable after construction."""

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None,
                 ceiling: int | None = None):
        _check_pm(p, m)
        self.p = int(p)
        self.m = int(m)
        self.q = self.p**self.m
        limit = config.get_ceiling() if ceiling is None else ceiling
        if self.q > limit:
            raise ResourceError(f"q = {self.q} exceeds enumeration ceiling {limit}")
        if modulus is None:
            modulus = find_irreducible(self.p, self.m)
        modulus = [int(c) % self.p for c in modulus]
        if len(modulus) != self.m:
            raise ParameterError("modulus must list exactly m non-leading coefficients")
        if not is_irreducible(modulus, self.p):
            raise ParameterError(f"modulus {modulus} is reducible over GF({self.p})")
        self.modulus = tuple(modulus)
        self._radix = self.p ** np.arange(self.m, dtype=np.int64)
        self._reduce = self._reduction_matrix()
        self._trace_basis = np.array(
            [self._trace_frobenius(np.eye(self.m, dtype=np.int64)[i]) for i in range(self.m)],
            dtype=np.int64,
        )

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldCtx":
        return cls(data["p"], data["m"], data.get("modulus"))

    def _reduction_matrix(self):
        # row j = x^j mod modulus, for j = 0 .. 2m-2
        m, p = self.m, self.p
        rows = np.zeros((2 * m - 1, m), dtype=np.int64)
        cur = np.zeros(m, dtype=np.int64)
        cur[0] = 1
        neg_mod = (-np.array(self.modulus, dtype=np.int64)) % p
        for j in range(2 * m - 1):
            rows[j] = cur
            top = cur[m - 1]
            cur = np.concatenate(([0], cur[:-1]))
            cur = (cur + top * neg_mod) % p
        return rows

    # -- array-level arithmetic ---------------------------------------------

    def encode(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=np.int64) @ self._radix

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._radix) % self.p

    def elements(self) -> np.ndarray:
        """All q elements as a read-only (q, m) array, in canonical order."""
        cached = self.__dict__.get("_elements")
        if cached is None:
            cached = self.decode(np.arange(self.q, dtype=np.int64))
            cached.setflags(write=False)
            self.__dict__["_elements"] = cached
        return cached

    def add(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def sub(self, a, b):
        return (np.asarray(a) - np.asarray(b)) % self.p

    def neg(self, a):
        return (-np.asarray(a)) % self.p

    def scale(self, a, c: int):
        """Multiply by a GF(p) scalar."""
        return (np.asarray(a) * (int(c) % self.p)) % self.p

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        shape = np.broadcast_shapes(a.shape, b.shape)[:-1]
        m = self.m
        conv = np.zeros(shape + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            conv[..., i:i + m] += a[..., i:i + 1] * b
        return (conv % self.p) @ self._reduce % self.p

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = np.zeros_like(a)
        result[..., 0] = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(np.all(a == 0, axis=-1)):
            raise DomainError("inverse of zero")
        return self.pow(a, self.q - 2)

    def _trace_frobenius(self, a):
        acc = np.asarray(a, dtype=np.int64)
        total = acc.copy()
        for _ in range(self.m - 1):
            acc = self.pow(acc, self.p)
            total = self.add(total, acc)
        # result lies in the prime subfield
        return total[..., 0]

    def trace_frobenius(self, a):
        """Tr(x) = x + x^p + ... + x^(p^(m-1)), evaluated literally."""
        return self._trace_frobenius(a)

    def trace(self, a):
        """Trace via the linear functional fixed by the traces of the basis."""
        return np.asarray(a, dtype=np.int64) @ self._trace_basis % self.p

    def eta(self, a):
        """Quadratic character as int array with values in {-1, 0, 1}."""
        a = np.asarray(a, dtype=np.int64)
        r = self.pow(a, (self.q - 1) // 2)
        out = np.zeros(a.shape[:-1], dtype=np.int64)
        is_one = (r[..., 0] == 1) & np.all(r[..., 1:] == 0, axis=-1)
        is_minus = (r[..., 0] == self.p - 1) & np.all(r[..., 1:] == 0, axis=-1)
        out[is_one] = 1
        out[is_minus] = -1
        return out

    def trace_form(self) -> np.ndarray:
        """Matrix T with Tr(x*y) = x^T T y for coefficient vectors x, y."""
        eye = np.eye(self.m, dtype=np.int64)
        prods = self.mul(eye[:, None, :], eye[None, :, :])
        return self.trace(prods)

    # -- scalar helpers -------------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an encoding, a coefficient sequence or a FieldElement."""
        if isinstance(value, FieldElement):
            self._own(value)
            return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise ParameterError(f"encoding {v} outside [0, {self.q - 1}]")
            return FieldElement(self, self.decode(v))
        return FieldElement(self, value)

    def subfield(self, a: int) -> "FieldElement":
        """Embed a in GF(p) into GF(q)."""
        return FieldElement(self, [int(a) % self.p] + [0] * (self.m - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.subfield(0)

    @property
    def one(self) -> "FieldElement":
        return self.subfield(1)

    @property
    def alpha(self) -> "FieldElement":
        """Class of x (equals 0 only when m = 1 and the modulus is x)."""
        if self.m == 1:
            return self.subfield(-self.modulus[0])
        return FieldElement(self, [0, 1] + [0] * (self.m - 2))

    def _own(self, x: "FieldElement"):
        if x.ctx != self:
            raise UsageError("element belongs to a different field")


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        arr = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if arr.shape[0] != ctx.m:
            raise ParameterError(f"expected {ctx.m} coefficients, got {arr.shape[0]}")
        self.ctx = ctx
        self.coeffs = tuple(int(c) % ctx.p for c in arr)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def encode(self) -> int:
        p = self.ctx.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise UsageError("operands belong to different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.subfield(int(other))
        return NotImplemented

    def _wrap(self, arr):
        return FieldElement(self.ctx, arr)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ctx.add(self.array, other.array))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ctx.sub(self.array, other.array))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ctx.mul(self.array, other.array))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.array))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.pow(self.array, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.ctx.inv(self.array))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ctx.subfield(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"

    def trace(self) -> int:
        return int(self.ctx.trace_frobenius(self.array))

    def eta(self) -> int:
        return int(self.ctx.eta(self.array))


# module-level functional API

def add(x, y):
    return x + y


def sub(x, y):
    return x - y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x):
    return x.inverse()


def power(x, e):
    return x**e


def trace(x: FieldElement) -> int:
    """Absolute trace onto GF(p), computed as the sum of Frobenius conjugates."""
    return x.trace()


def quadratic_character(x: FieldElement) -> int:
    return x.eta()


def enumerate_field(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All q elements in ascending encoding order."""
    for digits in itertools.product(range(ctx.p), repeat=ctx.m):
        yield FieldElement(ctx, digits[::-1])
