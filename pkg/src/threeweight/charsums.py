"""Weil sums S_u(a, b) = sum_x (-1)^Tr(a x^(2^u+1) + b x) over GF(2^m).

Values are computed by enumerating the field, and compared with the known
closed forms valid when m / gcd(m, u) is odd.  The closed form for general b
only fixes the magnitude, so predictions are sets rather than numbers.

Reducing S_u(a, b) to S_u(1, b') needs gamma with gamma^(2^u+1) = a.  That
relation is sometimes printed as gamma^(2^(u+1)) = a; the exponent used here
is 2^u + 1, the only reading under which gamma is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

import numpy as np

from .field import FieldContext


def jacobi_sign(m: int, e: int) -> int:
    """(-1)^((m^2 - e^2) / (8e)), i.e. the Jacobi symbol (2 / (m/e)) raised to e."""
    if e <= 0 or m % e:
        raise ValueError(f"e={e} does not divide m={m}")
    s = m // e
    if s % 2 == 0:
        raise ValueError(f"m/e={s} is even; the sign is only defined for odd quotients")
    num = m * m - e * e
    assert num % (8 * e) == 0
    return -1 if (num // (8 * e)) % 2 else 1


@dataclass(frozen=True)
class WeilSumQuery:
    ctx: FieldContext
    u: int
    a: int
    b: int

    def __post_init__(self):
        if self.u <= 0:
            raise ValueError("u must be a positive integer")
        q = self.ctx.order
        if not (0 <= self.a < q and 0 <= self.b < q):
            raise ValueError("a and b must be field elements")

    @property
    def e(self) -> int:
        return gcd(self.ctx.m, self.u)

    @property
    def odd_regime(self) -> bool:
        return (self.ctx.m // self.e) % 2 == 1


@dataclass(frozen=True)
class Prediction:
    """Closed-form prediction: ``exact``, ``pm`` (either sign), ``zero`` or ``n/a``."""

    kind: str
    value: int = 0

    def admits(self, v: int) -> Optional[bool]:
        if self.kind == "exact":
            return v == self.value
        if self.kind == "zero":
            return v == 0
        if self.kind == "pm":
            return abs(v) == self.value
        return None

    def __str__(self) -> str:
        if self.kind == "exact":
            return f"{self.value:+d}"
        if self.kind == "zero":
            return "0"
        if self.kind == "pm":
            return f"{{-{self.value},+{self.value}}}"
        return "n/a"


@dataclass(frozen=True)
class WeilSumResult:
    query: WeilSumQuery = field(repr=False)
    value: int
    prediction: Prediction
    agrees: Optional[bool]


def weil_sum_direct(q: WeilSumQuery) -> int:
    """Exact S_u(a, b) by summing over every x in the field."""
    ctx = q.ctx
    xs = np.arange(ctx.order, dtype=np.int64)
    quad = ctx.mul_array(q.a, ctx.pow_array(xs, (1 << q.u) + 1))
    lin = ctx.mul_array(q.b, xs)
    t = ctx.trace_array(quad ^ lin).astype(np.int64)
    return int(ctx.order - 2 * t.sum())


def find_gamma(ctx: FieldContext, u: int, a: int) -> int:
    """The unique gamma with gamma^(2^u+1) = a, found by exhaustive search."""
    if a == 0:
        raise ValueError("a must be nonzero")
    xs = np.arange(1, ctx.order, dtype=np.int64)
    hits = xs[ctx.pow_array(xs, (1 << u) + 1) == a]
    if len(hits) != 1:
        raise ArithmeticError(
            f"gamma^(2^{u}+1) = {a:#x} has {len(hits)} solutions in GF(2^{ctx.m})"
        )
    return int(hits[0])


def _predict(ctx: FieldContext, u: int, e: int, a: int, b: int, gamma: Optional[int]) -> Prediction:
    m = ctx.m
    if (m // e) % 2 == 0:
        return Prediction("n/a")
    if a == 0:
        # orthogonality of additive characters
        return Prediction("exact", ctx.order) if b == 0 else Prediction("zero")
    if b == 0:
        return Prediction("zero")
    if gamma is None:
        gamma = find_gamma(ctx, u, a)
    b1 = ctx.mul(b, ctx.inv(gamma))
    mag = 1 << ((m + e) // 2)
    if ctx.rel_trace(b1, e) != 1:
        return Prediction("zero")
    if b1 == 1:
        return Prediction("exact", jacobi_sign(m, e) * mag)
    return Prediction("pm", mag)


def closed_form_prediction(q: WeilSumQuery) -> Prediction:
    return _predict(q.ctx, q.u, q.e, q.a, q.b, None)


def weil_sum_closed(q: WeilSumQuery) -> WeilSumResult:
    """Closed-form prediction for S_u(a, b), checked against the direct sum."""
    pred = closed_form_prediction(q)
    value = weil_sum_direct(q)
    return WeilSumResult(q, value, pred, pred.admits(value))


# -- whole-line evaluation -------------------------------------------------------


def fwht(f: np.ndarray, dtype=np.int64) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis:
    W[..., c] = sum_x f[..., x] (-1)^popcount(c & x)."""
    a = np.array(f, dtype=dtype)
    shape = a.shape
    n = shape[-1]
    lead = a.size // n if n else 0
    h = 1
    while h < n:
        v = a.reshape(lead, -1, 2, h)
        lo = v[:, :, 0].copy()
        v[:, :, 0] += v[:, :, 1]
        np.subtract(lo, v[:, :, 1], out=v[:, :, 1])
        h *= 2
    return a


def trace_coordinates(ctx: FieldContext) -> np.ndarray:
    """For every b, the mask c(b) with Tr(b x) = popcount(c(b) & x) mod 2."""
    bs = np.arange(ctx.order, dtype=np.int64)
    c = np.zeros(ctx.order, dtype=np.int64)
    for i in range(ctx.m):
        c |= ctx.trace_array(ctx.mul_array(bs, 1 << i)).astype(np.int64) << i
    return c


def weil_sums_over_b(ctx: FieldContext, u: int, a: int = 1,
                     coords: Optional[np.ndarray] = None) -> np.ndarray:
    """S_u(a, b) for every b, indexed by b."""
    xs = np.arange(ctx.order, dtype=np.int64)
    t = ctx.trace_array(ctx.mul_array(a, ctx.pow_array(xs, (1 << u) + 1))).astype(np.int64)
    spectrum = fwht(1 - 2 * t)
    if coords is None:
        coords = trace_coordinates(ctx)
    return spectrum[coords]


def weil_sums_over_a(ctx: FieldContext, u: int,
                     coords: Optional[np.ndarray] = None) -> np.ndarray:
    """S_u(a, 0) for every a, indexed by a."""
    xs = np.arange(ctx.order, dtype=np.int64)
    counts = np.bincount(ctx.pow_array(xs, (1 << u) + 1), minlength=ctx.order)
    if coords is None:
        coords = trace_coordinates(ctx)
    return fwht(counts)[coords]


def weil_sweep(ctx: FieldContext, u: int, grid: str = "lines") -> Iterator[dict]:
    """Rows ``m,u,e,a,b,direct,prediction,agrees`` in (a, b) order.

    ``grid="lines"`` covers (a, 0) for all a and (1, b) for all b;
    ``grid="full"`` covers every pair and is meant for small m.
    """
    m = ctx.m
    e = gcd(m, u)
    coords = trace_coordinates(ctx)
    gammas: dict[int, int] = {}
    if (m // e) % 2 == 1:
        xs = np.arange(1, ctx.order, dtype=np.int64)
        for g, a in zip(xs.tolist(), ctx.pow_array(xs, (1 << u) + 1).tolist()):
            gammas[a] = g

    def row(a, b, value):
        pred = _predict(ctx, u, e, a, b, gammas.get(a))
        ok = pred.admits(value)
        return {"m": m, "u": u, "e": e, "a": f"{a:x}", "b": f"{b:x}", "direct": value,
                "prediction": str(pred), "agrees": "" if ok is None else str(ok).lower()}

    if grid == "full":
        for a in range(ctx.order):
            sums = weil_sums_over_b(ctx, u, a, coords)
            for b in range(ctx.order):
                yield row(a, b, int(sums[b]))
    elif grid == "lines":
        sa = weil_sums_over_a(ctx, u, coords)
        for a in range(ctx.order):
            yield row(a, 0, int(sa[a]))
        sb = weil_sums_over_b(ctx, u, 1, coords)
        for b in range(1, ctx.order):
            yield row(1, b, int(sb[b]))
    else:
        raise ValueError(f"unknown grid {grid!r}")


def full_grid_check(ctx: FieldContext, u: int, batch: int = 256) -> tuple[int, int]:
    """Compare S_u(a, b) with its closed form for every pair (a, b).

    Sums come from one Walsh-Hadamard transform per a, done in batches.
    Returns (pairs checked, disagreements).  Needs m / gcd(m, u) odd.
    """
    m, q = ctx.m, ctx.order
    e = gcd(m, u)
    if (m // e) % 2 == 0:
        raise ValueError(f"m/e = {m // e} is even: no closed form to compare against")
    xs = np.arange(q, dtype=np.int64)
    power = ctx.pow_array(xs, (1 << u) + 1)
    coords = trace_coordinates(ctx)
    # x -> x^(2^u+1) is a bijection here, so gamma(a) is its inverse image
    gamma = np.zeros(q, dtype=np.int64)
    gamma[power] = xs
    inv_gamma = ctx.pow_array(gamma, q - 2)
    mag = 1 << ((m + e) // 2)
    sign = jacobi_sign(m, e)
    # Tr(y z) = parity(c(y) & z): one AND and a popcount per pair
    ca = coords
    cig = coords[inv_gamma]
    bad = 0
    for lo in range(0, q, batch):
        rows = slice(lo, lo + batch)
        t = np.bitwise_count(ca[rows, None] & power[None, :]) & 1
        sums = fwht(1 - 2 * t.astype(np.int32), np.int32)[:, coords]
        if e == 1:
            hit = (np.bitwise_count(cig[rows, None] & xs[None, :]) & 1).astype(bool)
        else:
            b1 = ctx.mul_array(inv_gamma[rows, None], xs[None, :])
            hit = np.vectorize(lambda y: ctx.rel_trace(int(y), e) == 1)(b1)
        ok = np.abs(sums) == np.where(hit, mag, 0)
        # b / gamma(a) = 1 fixes the sign
        r = np.arange(sums.shape[0])
        ok[r, gamma[rows]] &= sums[r, gamma[rows]] == sign * mag
        if lo == 0:
            # a = 0: orthogonality of characters
            ok[0] = sums[0] == np.where(xs == 0, q, 0)
        bad += int((~ok).sum())
    return q * q, bad


def coprime_exponents(m: int) -> list[int]:
    """Every u in 1..m-1 with gcd(u, m) = 1 (u only matters modulo m)."""
    return [u for u in range(1, m) if gcd(u, m) == 1]
