"""Arithmetic in GF(2^m) with absolute and relative traces.

Elements are plain ints holding the coefficient vector in the polynomial
basis 1, a, a^2, ..., a^(m-1), where a is a root of the modulus.  Bit i is
the coefficient of a^i, so element order is ordinary integer order.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

MIN_DEGREE = 2
MAX_DEGREE = 24
TABLE_DEGREE = 16

FieldElement = int


class FieldError(ValueError):
    pass


def clmul(x: int, y: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    out = 0
    while y:
        if y & 1:
            out ^= x
        x <<= 1
        y >>= 1
    return out


def poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b in GF(2)[x]."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def poly_str(p: int) -> str:
    """Human-readable polynomial, e.g. ``x^3 + x + 1``."""
    if p == 0:
        return "0"
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms)


def find_factor(poly: int) -> Optional[int]:
    """Smallest nontrivial divisor of ``poly`` by trial division, or None.

    Candidates run over every polynomial of degree 1..deg/2 in integer order,
    so the first hit is irreducible.
    """
    deg = poly.bit_length() - 1
    for cand in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, cand) == 0:
            return cand
    return None


def is_irreducible(poly: int) -> bool:
    return poly.bit_length() > 1 and find_factor(poly) is None


def smallest_irreducible(m: int) -> int:
    """Lexicographically (numerically) smallest irreducible of degree m."""
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(p):
            return p
    raise FieldError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class FieldContext:
    """GF(2^m) defined by an irreducible modulus; immutable after construction."""

    __slots__ = ("m", "modulus", "order", "_exp", "_log", "_exp_np", "_log_np",
                 "trace_mask", "generator")

    def __init__(self, m: int, modulus: int):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise FieldError(f"m={m} outside supported range {MIN_DEGREE}..{MAX_DEGREE}")
        if modulus.bit_length() - 1 != m:
            raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
        factor = find_factor(modulus)
        if factor is not None:
            raise FieldError(
                f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}"
            )
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._exp = self._log = self._exp_np = self._log_np = None
        self.generator = None
        if m <= TABLE_DEGREE:
            self._build_tables()
        mask = 0
        for i in range(m):
            if self._trace_by_frobenius(1 << i):
                mask |= 1 << i
        self.trace_mask = mask

    # -- construction helpers -------------------------------------------------

    def _clmul_mod(self, x: int, y: int) -> int:
        m, mod = self.m, self.modulus
        out = 0
        while y:
            if y & 1:
                out ^= x
            y >>= 1
            x <<= 1
            if (x >> m) & 1:
                x ^= mod
        return out

    def _slow_pow(self, x: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._clmul_mod(out, x)
            x = self._clmul_mod(x, x)
            e >>= 1
        return out

    def _build_tables(self) -> None:
        n = self.order - 1
        divisors = [n // p for p in _prime_factors(n)]
        for g in range(2, self.order):
            if all(self._slow_pow(g, d) != 1 for d in divisors):
                break
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = self._clmul_mod(x, g)
        self.generator = g
        self._exp, self._log = exp, log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def _trace_by_frobenius(self, x: int) -> int:
        acc, y = 0, x
        for _ in range(self.m):
            acc ^= y
            y = self._clmul_mod(y, y)
        assert acc in (0, 1)
        return acc

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if self._exp is None:
            return self._clmul_mod(x, y)
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def square(self, x: int) -> int:
        return self.mul(x, x)

    def pow(self, x: int, e: int) -> int:
        """x^e by square-and-multiply; 0^0 is 1."""
        if e < 0:
            raise ValueError("negative exponent")
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return self.pow(x, self.order - 2)

    def trace(self, x: int) -> int:
        """Absolute trace to GF(2), in {0, 1}."""
        return (x & self.trace_mask).bit_count() & 1

    def rel_trace(self, x: int, e: int) -> int:
        """Trace from GF(2^m) down to the subfield GF(2^e)."""
        if e <= 0 or self.m % e:
            raise FieldError(f"e={e} does not divide m={self.m}")
        acc, y = 0, x
        for _ in range(self.m // e):
            acc ^= y
            for _ in range(e):
                y = self.mul(y, y)
        assert self.pow(acc, 1 << e) == acc, "relative trace left the subfield"
        return acc

    def subfield_trace(self, y: int, e: int) -> int:
        """Absolute trace of y computed inside the subfield GF(2^e)."""
        if e <= 0 or self.m % e:
            raise FieldError(f"e={e} does not divide m={self.m}")
        if self.pow(y, 1 << e) != y:
            raise FieldError(f"{y:#x} is not in the subfield of order 2^{e}")
        acc = 0
        for _ in range(e):
            acc ^= y
            y = self.mul(y, y)
        return acc

    def elements(self) -> range:
        """All 2^m elements in ascending integer order."""
        return range(self.order)

    # -- whole-array arithmetic -----------------------------------------------

    def mul_array(self, x, y) -> np.ndarray:
        """Elementwise product of broadcastable int arrays."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self._exp_np is not None:
            prod = self._exp_np[self._log_np[x] + self._log_np[y]]
            return np.where((x == 0) | (y == 0), 0, prod)
        x, y = np.broadcast_arrays(x, y)
        x, y = x.copy(), y.copy()
        out = np.zeros_like(x)
        top = np.int64(1 << self.m)
        for _ in range(self.m):
            out ^= np.where(y & 1, x, 0)
            y >>= 1
            x <<= 1
            x = np.where(x & top, x ^ self.modulus, x)
        return out

    def pow_array(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        if self._exp_np is not None:
            idx = (self._log_np[x] * e) % (self.order - 1)
            return np.where(x == 0, 0, self._exp_np[idx])
        out = np.ones_like(x)
        while e:
            if e & 1:
                out = self.mul_array(out, x)
            x = self.mul_array(x, x)
            e >>= 1
        return out

    def trace_array(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (np.bitwise_count(x & self.trace_mask) & 1).astype(np.int8)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "modulus": f"{self.modulus:x}"}

    @classmethod
    def from_json(cls, data: dict) -> "FieldContext":
        return make_field(int(data["m"]), int(str(data["modulus"]), 16))

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldContext)
                and (self.m, self.modulus) == (other.m, other.modulus))

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"FieldContext(m={self.m}, modulus={poly_str(self.modulus)})"


def make_field(m: int, modulus: Optional[int] = None) -> FieldContext:
    """Build GF(2^m); defaults to the smallest irreducible modulus of degree m."""
    if not MIN_DEGREE <= m <= MAX_DEGREE:
        raise FieldError(f"m={m} outside supported range {MIN_DEGREE}..{MAX_DEGREE}")
    if modulus is None:
        modulus = smallest_irreducible(m)
    return FieldContext(m, modulus)


def irreducibles(m: int, limit: Optional[int] = None) -> list[int]:
    """Irreducible polynomials of degree m in ascending order."""
    out = []
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(p):
            out.append(p)
            if limit is not None and len(out) >= limit:
                break
    return out
