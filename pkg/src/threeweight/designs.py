"""Support designs of binary codes and exhaustive t-design verification."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .codes import (DUAL_CROSSCHECK_CAP, LinearCode, WeightDistribution, dual_code,
                    dual_count_closed_form, limbs_to_bits, macwilliams_dual)


class DesignError(ValueError):
    pass


@dataclass(frozen=True)
class Design:
    """Points 1..v and blocks of size r (sorted 1-based index tuples, sorted)."""

    v: int
    r: int
    blocks: tuple
    t: Optional[int] = None
    lam: Optional[int] = None
    incidence: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for blk in self.blocks:
            if len(blk) != self.r:
                raise DesignError(f"block {blk} does not have size {self.r}")
            if blk and (blk[0] < 1 or blk[-1] > self.v):
                raise DesignError(f"block {blk} leaves the point set 1..{self.v}")
        if len(set(self.blocks)) != len(self.blocks):
            raise DesignError("repeated blocks")

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence_matrix(self) -> np.ndarray:
        if self.incidence is not None:
            return self.incidence
        inc = np.zeros((self.b, self.v), dtype=np.uint8)
        for i, blk in enumerate(self.blocks):
            inc[i, [p - 1 for p in blk]] = 1
        return inc

    def to_json(self) -> dict:
        return {"v": self.v, "r": self.r, "t": self.t, "lambda": self.lam,
                "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "Design":
        blocks = tuple(sorted(tuple(sorted(int(p) for p in b)) for b in data["blocks"]))
        lam = data.get("lambda")
        return cls(int(data["v"]), int(data["r"]), blocks, data.get("t"),
                   None if lam is None else int(lam))


def design_from_words(words: np.ndarray, n: int, w: int) -> Design:
    """Design whose blocks are the supports of the given (N, L) uint64 words."""
    inc = limbs_to_bits(words, n)
    blocks = tuple(tuple((np.flatnonzero(row) + 1).tolist()) for row in inc)
    idx = sorted(range(len(blocks)), key=lambda i: blocks[i])
    return Design(n, w, tuple(blocks[i] for i in idx), incidence=inc[idx])


def support_blocks(code: LinearCode, w: int) -> Design:
    """Supports of all weight-w codewords; one block per codeword."""
    if code.weight_distribution()[w] == 0:
        raise DesignError(f"no codewords of weight {w}")
    return design_from_words(code.codewords_of_weight(w), code.n, w)


@dataclass
class DesignVerdict:
    status: str  # design | not-design | degenerate | empty | prediction-only
    v: int
    r: int
    t: int
    blocks: int
    lam: Optional[int] = None
    witness: Optional[tuple] = None
    witness_count: Optional[int] = None
    identity_ok: bool = False
    predicted: Optional[Fraction] = None
    note: str = ""

    @property
    def is_design(self) -> bool:
        return self.status == "design"

    @property
    def matches_prediction(self) -> Optional[bool]:
        if self.predicted is None or self.status != "design":
            return None
        return self.predicted == self.lam

    def to_json(self) -> dict:
        return {
            "status": self.status, "v": self.v, "r": self.r, "t": self.t, "blocks": self.blocks,
            "lambda": self.lam, "witness": list(self.witness) if self.witness else None,
            "witness_count": self.witness_count, "identity_ok": self.identity_ok,
            "lambda_predicted": None if self.predicted is None else str(self.predicted),
            "matches_prediction": self.matches_prediction, "note": self.note,
        }


def _counts_t2(inc: np.ndarray) -> np.ndarray:
    x = inc.astype(np.float64)
    # float64 products are exact far below 2^53
    return np.rint(x.T @ x).astype(np.int64)


def verify_t_design(design: Design, t: int) -> DesignVerdict:
    """Count the blocks through every t-subset of points."""
    v, r, b = design.v, design.r, design.b
    if t < 1 or t > r:
        raise DesignError(f"strength t={t} must satisfy 1 <= t <= r={r}")
    verdict = DesignVerdict("degenerate", v, r, t, b)
    if b == 0:
        verdict.status = "empty"
        return verdict
    if r >= v or b < 2:
        verdict.note = "r = v or fewer than two blocks"
        return verdict
    if t == 2:
        m = _counts_t2(design.incidence_matrix())
        iu = np.triu_indices(v, 1)
        counts = m[iu]
        lo, hi = counts.min(), counts.max()
        if lo != hi:
            i = int(np.argmin(counts))
            verdict.witness = (int(iu[0][i]) + 1, int(iu[1][i]) + 1)
            verdict.witness_count = int(lo)
    else:
        tally = Counter()
        for blk in design.blocks:
            tally.update(combinations(blk, t))
        lo = hi = None
        for sub in combinations(range(1, v + 1), t):
            c = tally.get(sub, 0)
            if lo is None or c < lo:
                lo, low_sub = c, sub
            hi = c if hi is None else max(hi, c)
        if lo != hi:
            verdict.witness, verdict.witness_count = low_sub, lo
    if lo != hi:
        verdict.status = "not-design"
        return verdict
    verdict.status = "design"
    verdict.lam = int(lo)
    verdict.identity_ok = b * math.comb(r, t) == verdict.lam * math.comb(v, t)
    if r == t:
        verdict.note = "complete design: blocks are all t-subsets"
    return verdict


@dataclass(frozen=True)
class LambdaPrediction:
    value: Fraction

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1


def predicted_lambda(n: int, k: int, w: int) -> LambdaPrediction:
    """(2^(k-1) - 1) w (w - 1) / (n (n - 1))."""
    return LambdaPrediction(Fraction(((1 << (k - 1)) - 1) * w * (w - 1), n * (n - 1)))


def predicted_dual_lambda(n: int, k: int, d: int, r: int) -> LambdaPrediction:
    """2r (2r - 1) A_2r(dual) / (n (n - 1)) with A_2r from the three-weight closed form."""
    if not 2 <= r <= n // 2 - 1:
        raise DesignError(f"r={r} outside 2..{n // 2 - 1}")
    a = dual_count_closed_form(n, k, d, r)
    return LambdaPrediction(2 * r * (2 * r - 1) * a / (n * (n - 1)))


def necessary_lambda(dist: WeightDistribution, w: int, t: int = 2) -> Fraction:
    """lambda forced by b C(w, t) = lambda C(n, t) if weight w holds a t-design."""
    return Fraction(dist[w] * math.comb(w, t), math.comb(dist.n, t))


@dataclass
class GateResult:
    ok: bool
    s: int
    bound: int
    side: str
    code_weights: list = field(default_factory=list)
    dual_weights: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "s": self.s, "bound": self.bound, "side": self.side,
                "code_weights": self.code_weights, "dual_weights": self.dual_weights,
                "note": self.note}


def assmus_mattson_gate(code: LinearCode, t: int, side: str = "code") -> GateResult:
    """Assmus-Mattson condition s <= d - t.

    ``side="code"`` applies it to C (s counts dual weights in (0, n - t]);
    ``side="dual"`` applies it to the dual with C as its dual.  On success
    lists the weights of C and of the dual whose supports are certified to
    hold t-designs; weight n (a single full block) is never listed.
    """
    a = code.weight_distribution()
    bd = macwilliams_dual(a)
    if side == "code":
        this, other = a, bd
    elif side == "dual":
        this, other = bd, a
    else:
        raise ValueError(f"unknown side {side!r}")
    n = code.n
    d = this.min_distance
    if d is None or t >= d:
        raise DesignError(f"strength t={t} must be below the minimum distance {d}")
    s = sum(1 for i in range(1, n - t + 1) if other[i])
    res = GateResult(s <= d - t, s, d - t, side)
    if res.ok:
        d_other = other.min_distance or n + 1
        this_w = [i for i in this.nonzero_weights() if d <= i < n]
        other_w = [i for i in other.nonzero_weights() if d_other <= i <= n - t]
        if side == "code":
            res.code_weights, res.dual_weights = this_w, other_w
        else:
            res.code_weights, res.dual_weights = other_w, this_w
    return res


def code_design_verify(code: LinearCode, w: int, t: int = 2,
                       predicted: Optional[Fraction] = None) -> DesignVerdict:
    """Extract the weight-w support design of ``code`` and verify it exhaustively."""
    dist = code.weight_distribution()
    if dist[w] == 0:
        return DesignVerdict("empty", code.n, w, t, 0, predicted=predicted)
    if w < code.n and dist[w] >= 2:
        need = necessary_lambda(dist, w, t)
        if need.denominator != 1:
            return DesignVerdict("not-design", code.n, w, t, dist[w], predicted=predicted,
                                 note=f"b C(r,t) / C(v,t) = {need} is not an integer")
    verdict = verify_t_design(support_blocks(code, w), t)
    verdict.predicted = predicted
    return verdict


def dual_design_verify(code: LinearCode, r: int, cap: int = DUAL_CROSSCHECK_CAP) -> DesignVerdict:
    """Verify that the weight-2r words of the dual hold a 2-design, by enumeration."""
    n, k = code.n, code.k
    dist = code.weight_distribution()
    pred = None
    if 2 <= r <= n // 2 - 1 and dist.min_distance is not None:
        pred = predicted_dual_lambda(n, k, dist.min_distance, r).value
    if n - k > cap:
        bd = macwilliams_dual(dist)
        return DesignVerdict("prediction-only", n, 2 * r, 2, bd[2 * r], predicted=pred,
                             note=f"dual dimension {n - k} above enumeration cap {cap}")
    words = dual_code(code).codewords_of_weight(2 * r)
    if len(words) == 0:
        return DesignVerdict("empty", n, 2 * r, 2, 0, predicted=pred)
    verdict = verify_t_design(design_from_words(words, n, 2 * r), 2)
    verdict.predicted = pred
    return verdict
