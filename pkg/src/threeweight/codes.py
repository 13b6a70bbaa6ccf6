"""Binary linear codes: enumeration, weight distributions, duals and moments.

Generator rows are int bitsets with bit i holding coordinate i + 1.  All
counting is exact; binomials and transforms use Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

ENUM_CAP = 24
DUAL_CROSSCHECK_CAP = 22
_CHUNK_BITS = 16
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class CodeError(ValueError):
    pass


# -- GF(2) linear algebra on int rows ---------------------------------------------


def reduce_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Greedy basis selection.

    Returns (kept, echelon): ``kept`` are the input rows that extend the span,
    in input order; ``echelon`` is a matching reduced basis keyed by pivot.
    """
    echelon: dict[int, int] = {}
    kept = []
    for row in rows:
        r = row
        while r:
            p = r.bit_length() - 1
            if p not in echelon:
                echelon[p] = r
                kept.append(row)
                break
            r ^= echelon[p]
    return kept, list(echelon.values())


def gf2_rank(rows: Iterable[int]) -> int:
    return len(reduce_rows(rows)[0])


def _rref(rows: Sequence[int], n: int) -> dict[int, int]:
    """Reduced row echelon form keyed by pivot column (lowest set bit)."""
    piv: dict[int, int] = {}
    for row in rows:
        r = row
        for p, pr in piv.items():
            if (r >> p) & 1:
                r ^= pr
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for q in piv:
            if (piv[q] >> p) & 1:
                piv[q] ^= r
        piv[p] = r
    return piv


def kernel_rows(rows: Sequence[int], n: int) -> list[int]:
    """Basis of {x : <x, row> = 0 for every row}, one vector per free column."""
    piv = _rref(rows, n)
    out = []
    for f in range(n):
        if f in piv:
            continue
        v = 1 << f
        for p, pr in piv.items():
            if (pr >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def _to_limbs(rows: Sequence[int], n: int) -> np.ndarray:
    nlimbs = max(1, (n + 63) // 64)
    mask = (1 << 64) - 1
    out = np.zeros((len(rows), nlimbs), dtype=np.uint64)
    for i, row in enumerate(rows):
        for j in range(nlimbs):
            out[i, j] = (row >> (64 * j)) & mask
    return out


def limbs_to_bits(words: np.ndarray, n: int) -> np.ndarray:
    """(N, L) uint64 words to an (N, n) 0/1 incidence array."""
    words = np.ascontiguousarray(words, dtype="<u8")
    bytes_ = words.view(np.uint8).reshape(len(words), -1)
    return np.unpackbits(bytes_, axis=1, bitorder="little")[:, :n]


def limbs_to_int(word: np.ndarray) -> int:
    out = 0
    for j, limb in enumerate(word.tolist()):
        out |= int(limb) << (64 * j)
    return out


# -- codes ------------------------------------------------------------------------


class LinearCode:
    """Binary [n, k] code given by k linearly independent generator rows."""

    def __init__(self, n: int, rows: Sequence[int], provenance: Optional[dict] = None):
        rows = [int(r) for r in rows]
        if n <= 0:
            raise CodeError("length must be positive")
        if not rows:
            raise CodeError("a code needs at least one generator row")
        for r in rows:
            if r < 0 or r >> n:
                raise CodeError(f"row {r:#x} does not fit in length {n}")
        if gf2_rank(rows) != len(rows):
            raise CodeError("generator rows are linearly dependent")
        self.n = n
        self.rows = tuple(rows)
        self.k = len(rows)
        self.provenance = dict(provenance or {})
        self._dist: Optional[WeightDistribution] = None

    @classmethod
    def from_spanning(cls, n: int, rows: Iterable[int], provenance: Optional[dict] = None) -> "LinearCode":
        """Code spanned by ``rows``, dropping dependent rows."""
        kept, _ = reduce_rows(rows)
        return cls(n, kept, provenance)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}])"

    def generator_matrix(self) -> np.ndarray:
        return limbs_to_bits(_to_limbs(self.rows, self.n), self.n)

    def iter_codewords(self) -> Iterator[np.ndarray]:
        """All 2^k codewords as (N, L) uint64 chunks, in reflected Gray-code order."""
        if self.k > ENUM_CAP:
            raise CodeError(
                f"k={self.k} exceeds the enumeration cap {ENUM_CAP}; "
                "use the MacWilliams transform of the dual instead"
            )
        limbs = _to_limbs(self.rows, self.n)
        low = min(self.k, _CHUNK_BITS)
        base = np.zeros((1, limbs.shape[1]), dtype=np.uint64)
        for i in range(low):
            base = np.concatenate((base, base[::-1] ^ limbs[i]))
        offset = np.zeros(limbs.shape[1], dtype=np.uint64)
        high = self.k - low
        prev = 0
        for t in range(1 << high):
            g = t ^ (t >> 1)
            flip = g ^ prev
            if flip:
                offset = offset ^ limbs[low + flip.bit_length() - 1]
            prev = g
            yield base ^ offset

    def weight_distribution(self) -> "WeightDistribution":
        if self._dist is None:
            counts = np.zeros(self.n + 1, dtype=np.int64)
            for chunk in self.iter_codewords():
                w = np.bitwise_count(chunk).sum(axis=1, dtype=np.int64)
                counts += np.bincount(w, minlength=self.n + 1)
            self._dist = WeightDistribution(tuple(int(c) for c in counts), self.n, self.k)
        return self._dist

    def codewords_of_weight(self, w: int) -> np.ndarray:
        """All codewords of weight w as an (N, L) uint64 array, Gray order."""
        found = []
        for chunk in self.iter_codewords():
            sel = np.bitwise_count(chunk).sum(axis=1) == w
            if sel.any():
                found.append(chunk[sel])
        if not found:
            return np.zeros((0, max(1, (self.n + 63) // 64)), dtype=np.uint64)
        return np.concatenate(found)

    def contains(self, word: int) -> bool:
        return gf2_rank(self.rows + (word,)) == self.k


# -- weight distributions -----------------------------------------------------------


@dataclass(frozen=True)
class WeightDistribution:
    """Counts A_0..A_n of an [n, k] code."""

    counts: tuple
    n: int
    k: int

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise CodeError(f"expected {self.n + 1} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise CodeError("weight counts must be nonnegative")

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w <= self.n else 0

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero_weights(self) -> list[int]:
        return [w for w in range(1, self.n + 1) if self.counts[w]]

    def support(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    @property
    def min_distance(self) -> Optional[int]:
        ws = self.nonzero_weights()
        return ws[0] if ws else None

    def is_palindromic(self) -> bool:
        return self.counts == self.counts[::-1]

    def enumerator(self) -> str:
        """Enumerator polynomial, e.g. ``1 + 15z² + 15z⁴ + z⁶``."""
        terms = []
        for w, c in enumerate(self.counts):
            if not c:
                continue
            if w == 0:
                terms.append(str(c))
                continue
            coef = "" if c == 1 else str(c)
            power = "" if w == 1 else str(w).translate(_SUPERSCRIPTS)
            terms.append(f"{coef}z{power}")
        return " + ".join(terms)


def _binom(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def krawtchouk(n: int, j: int, i: int) -> int:
    """K_j(i) = sum_s (-1)^s C(i, s) C(n - i, j - s)."""
    return sum((-1) ** s * _binom(i, s) * _binom(n - i, j - s) for s in range(0, min(i, j) + 1))


def krawtchouk_row(n: int, i: int) -> list[int]:
    """[K_0(i), ..., K_n(i)]: coefficients of (1 - z)^i (1 + z)^(n - i).

    Uses (j+1) K_{j+1} = (n - 2i) K_j - (n - j + 1) K_{j-1}; the division is exact.
    """
    row = [1, n - 2 * i]
    for j in range(1, n):
        num = (n - 2 * i) * row[j] - (n - j + 1) * row[j - 1]
        q, rem = divmod(num, j + 1)
        assert rem == 0
        row.append(q)
    return row[: n + 1]


def macwilliams_dual(dist: WeightDistribution) -> WeightDistribution:
    """Dual weight distribution: 2^-k (1+z)^n P((1-z)/(1+z)), exactly."""
    n, k = dist.n, dist.k
    sums = [0] * (n + 1)
    for i, a in enumerate(dist.counts):
        if a:
            for j, kv in enumerate(krawtchouk_row(n, i)):
                sums[j] += a * kv
    out = []
    for j, s in enumerate(sums):
        q, rem = divmod(s, 1 << k)
        if rem or q < 0:
            raise CodeError(
                f"inconsistent distribution: dual count at weight {j} is {Fraction(s, 1 << k)}"
            )
        out.append(q)
    return WeightDistribution(tuple(out), n, n - k)


def dual_code(code: LinearCode) -> LinearCode:
    """Dual code from the kernel of the generator."""
    rows = kernel_rows(code.rows, code.n)
    if not rows:
        raise CodeError(f"{code!r} has a zero-dimensional dual")
    return LinearCode(code.n, rows, {"construction": "dual", "of": code.provenance})


def min_distance(code: LinearCode) -> int:
    d = code.weight_distribution().min_distance
    if d is None:  # pragma: no cover - k >= 1 always yields a nonzero word
        raise CodeError("code has no nonzero codewords")
    return d


@dataclass(frozen=True)
class DualSummary:
    distribution: Optional[WeightDistribution]
    d_perp: float
    projective: bool
    route: str
    note: str = ""


def is_projective(code: LinearCode, crosscheck_cap: int = DUAL_CROSSCHECK_CAP) -> DualSummary:
    """Dual distribution via MacWilliams (and by enumeration when n-k is small)."""
    n, k = code.n, code.k
    if k == n:
        return DualSummary(None, math.inf, True, "none", "dual has dimension 0; d_perp taken as infinite")
    dual = macwilliams_dual(code.weight_distribution())
    route = "transform"
    if n - k <= crosscheck_cap:
        direct = dual_code(code).weight_distribution()
        if direct.counts != dual.counts:
            raise CodeError("MacWilliams transform disagrees with direct dual enumeration")
        route = "transform+enumeration"
    d_perp = dual.min_distance
    return DualSummary(dual, d_perp if d_perp is not None else math.inf,
                       dual[1] == 0 and dual[2] == 0, route)


# -- moments and closed forms ---------------------------------------------------------


@dataclass(frozen=True)
class Moment:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class PlessVerdict:
    moments: tuple

    @property
    def ok(self) -> bool:
        return all(m.ok for m in self.moments)

    @property
    def failed(self) -> Optional[str]:
        return next((m.name for m in self.moments if not m.ok), None)


def pless_check(dist: WeightDistribution, dual: DualSummary | WeightDistribution) -> PlessVerdict:
    """First three power moments, using A_1 and A_2 of the dual."""
    dd = dual.distribution if isinstance(dual, DualSummary) else dual
    b1 = dd[1] if dd is not None else 0
    b2 = dd[2] if dd is not None else 0
    n, k = dist.n, dist.k
    a = dist.counts
    m0 = Moment("sum A_j = 2^k", sum(a), 1 << k)
    # scale by 4 so k = 1 stays integral
    m1 = Moment("sum j A_j = 2^(k-1) (n - B_1)",
                4 * sum(j * c for j, c in enumerate(a)), (1 << (k + 1)) * (n - b1))
    m2 = Moment("sum j^2 A_j = 2^(k-2) (n(n+1) - 2n B_1 + 2 B_2)",
                4 * sum(j * j * c for j, c in enumerate(a)),
                (1 << k) * (n * (n + 1) - 2 * n * b1 + 2 * b2))
    return PlessVerdict((m0, m1, m2))


def dual_count_closed_form(n: int, k: int, d: int, r: int) -> Fraction:
    """A_{2r} of the dual of a projective three-weight [n, k, d] code with A_n = 1."""
    half = n // 2
    s = 0
    for i in range(0, min(d, r) + 1):
        j = r - i
        if 0 <= j <= half - d:
            s += (-1) ** i * _binom(d, i) * _binom(n - 2 * d, 2 * j)
    return Fraction(_binom(n, 2 * r) + ((1 << (k - 1)) - 1) * s, 1 << (k - 1))


@dataclass
class ThreeWeightProfile:
    hypotheses_ok: bool
    failed_hypothesis: Optional[str] = None
    weights: tuple = ()
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hypotheses_ok and all(ok for _, ok, _ in self.checks)

    @property
    def first_mismatch(self) -> Optional[str]:
        return next((f"{name}: {detail}" for name, ok, detail in self.checks if not ok), None)


def three_weight_profile(code: LinearCode, summary: Optional[DualSummary] = None) -> ThreeWeightProfile:
    """Check a projective three-weight code with A_n = 1 against its closed forms.

    Weights must be d, n - d, n with d solving
    (n - 2d)^2 (2^(k-1) - 1) = n (2^(k-1) - n); both small weights occur
    2^(k-1) - 1 times; and every dual count A_2r matches the closed form.
    """
    n, k = code.n, code.k
    dist = code.weight_distribution()
    if summary is None:
        summary = is_projective(code)
    ws = dist.nonzero_weights()
    if dist[n] > 1:
        return ThreeWeightProfile(False, "malformed input: A_n > 1 is impossible for a binary code")
    if not summary.projective:
        return ThreeWeightProfile(False, "projective")
    if len(ws) != 3:
        return ThreeWeightProfile(False, f"exactly three nonzero weights (found {len(ws)})")
    if dist[n] != 1:
        return ThreeWeightProfile(False, "A_n = 1")
    if summary.distribution is None:
        return ThreeWeightProfile(False, "dual of positive dimension")

    prof = ThreeWeightProfile(True, weights=tuple(ws))
    d = ws[0]
    half = (1 << (k - 1)) - 1
    lhs = (n - 2 * d) ** 2 * half
    rhs = n * ((1 << (k - 1)) - n)
    prof.checks.append(("w1 = (n - sqrt(n(2^(k-1)-n)/(2^(k-1)-1)))/2", lhs == rhs and n >= 2 * d,
                        f"(n-2d)^2(2^(k-1)-1)={lhs}, n(2^(k-1)-n)={rhs}"))
    prof.checks.append(("w2 = n - w1", ws[1] == n - d, f"w2={ws[1]}, n-w1={n - d}"))
    prof.checks.append(("w3 = n", ws[2] == n, f"w3={ws[2]}"))
    expected = [0] * (n + 1)
    expected[0] = 1
    expected[d] += half
    expected[n - d] += half
    expected[n] += 1
    prof.checks.append(("enumerator 1 + (2^(k-1)-1)(z^d + z^(n-d)) + z^n",
                        list(dist.counts) == expected, dist.enumerator()))
    dual = summary.distribution
    for j in range(n + 1):
        if j % 2:
            if dual[j]:
                prof.checks.append((f"A⊥_{j} = 0", False, f"transform gives {dual[j]}"))
                break
            continue
        cf = dual_count_closed_form(n, k, d, j // 2)
        if cf != dual[j]:
            prof.checks.append((f"A⊥_{j} closed form", False, f"closed form {cf}, transform {dual[j]}"))
            break
    else:
        prof.checks.append(("A⊥_2r closed form, every r", True, f"{n // 2 + 1} values"))
    return prof
