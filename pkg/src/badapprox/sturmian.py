"""Characteristic Sturmian sequences and their diversity.

The bit sequence of an irrational theta in (0, 1) is
s_i = floor((i+2)*theta) - floor((i+1)*theta), i >= 0. Subsequences taken
along an arithmetic progression with common difference r agree for a
while and then must disagree: the first disagreement index over any two
offsets is bounded by 2*(B+2)^2 * r^2 when theta's quotients stay below
B. This module generates bits with certified floors, scans agreements,
and carries the exact golden-ratio machinery (Fibonacci and Lucas
identities, the two staircase value grids, and the crossing witness that
shows the quadratic bound is the right order).

Golden-ratio bits are exact: floor(k * (sqrt(5)-1)/2) is
(isqrt(5 k^2) - k) // 2, pure integer arithmetic. Other numbers go
through a rational surrogate deep enough that every floor in the
requested range is provably on the right side of its integer.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .cf import CFSpec, choose_surrogate
from .errors import DomainError, SequenceLengthError, VerificationError
from .quadratic import QuadraticNumber

THETA_GOLDEN = QuadraticNumber(Fraction(-1, 2), Fraction(1, 2), 5)
ALPHA = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)  # golden ratio
BETA = ALPHA.conjugate()  # (1 - sqrt(5))/2 = -THETA_GOLDEN
SQRT5 = QuadraticNumber.sqrt(5)


def _is_golden(cf: CFSpec) -> bool:
    return (
        cf.a0 == 0
        and bool(cf.period)
        and set(cf.period) == {1}
        and set(cf.prefix) <= {1}
    )


class SturmianSeq:
    """Lazily generated bit prefix of one number's characteristic word.

    The prefix only ever grows; concurrent readers are safe and extension
    is serialized by a lock. Bits are cached in a numpy uint8 array so
    agreement scans can slice without copying.
    """

    def __init__(self, cf: CFSpec):
        if cf.a0 != 0 or cf.is_rational:
            raise DomainError("need an irrational number strictly between 0 and 1")
        self.cf = cf
        self._golden = _is_golden(cf)
        self._lock = threading.Lock()
        self._arr = np.zeros(0, dtype=np.uint8)
        self._len = 0
        # golden path state: floor((len+1) * theta)
        self._prev_floor = 0
        # surrogate path state
        self._surr: tuple[int, int, int, int] | None = None  # p, q, q_next, capacity
        self._res = 0  # residue of (len+1)*p mod q

    def __len__(self) -> int:
        return self._len

    def ensure(self, length: int) -> None:
        """Extend the cached prefix to at least `length` bits."""
        if length <= self._len:
            return
        with self._lock:
            if length <= self._len:
                return
            target = max(length, 2 * self._len, 256)
            if self._golden:
                self._extend_golden(target)
            else:
                self._extend_surrogate(target)

    def bits(self, length: int) -> np.ndarray:
        """Read-only view of the first `length` bits."""
        self.ensure(length)
        view = self._arr[:length]
        view.flags.writeable = False
        return view

    # ---- generation paths ---------------------------------------------

    def _grow_array(self, target: int) -> np.ndarray:
        arr = np.empty(target, dtype=np.uint8)
        arr[: self._len] = self._arr[: self._len]
        return arr

    def _extend_golden(self, target: int) -> None:
        arr = self._grow_array(target)
        pf = self._prev_floor
        for i in range(self._len, target):
            m = i + 2
            nf = (isqrt(5 * m * m) - m) // 2
            arr[i] = nf - pf
            pf = nf
        self._arr = arr
        self._len = target
        self._prev_floor = pf

    def _extend_surrogate(self, target: int) -> None:
        need_m = target + 2
        if self._surr is None or self._surr[3] < need_m:
            ck, ck1 = choose_surrogate(self.cf, need_m)
            self._surr = (ck.p % ck.q, ck.q, ck1.q, need_m)
            # restart generation under the new surrogate
            self._len = 0
            self._arr = np.zeros(0, dtype=np.uint8)
            self._res = self._surr[0]
            self._certify(1)
        p, q, q_next, _ = self._surr
        arr = self._grow_array(target)
        res = self._res
        for i in range(self._len, target):
            nxt = res + p
            if nxt >= q:
                arr[i] = 1
                res = nxt - q
            else:
                arr[i] = 0
                res = nxt
            # res is now the residue of (i+2)*p mod q; certify its floor.
            m = i + 2
            if res * q_next <= m or (q - res) * q_next <= m:
                raise VerificationError(
                    "surrogate too shallow to certify a floor; policy violated"
                )
        self._arr = arr
        self._len = target
        self._res = res

    def _certify(self, m: int) -> None:
        p, q, q_next, _ = self._surr
        res = (m * p) % q
        if res * q_next <= m or (q - res) * q_next <= m:
            raise VerificationError("surrogate cannot certify the first floor")


def generate(cf: CFSpec, length: int) -> SturmianSeq:
    """Sequence object with at least `length` bits materialized."""
    if length < 0:
        raise DomainError("length must be nonnegative")
    seq = SturmianSeq(cf)
    if length:
        seq.ensure(length)
    return seq


def agreement(seq, r: int, a: int, b: int, max_k: int) -> int | None:
    """First index k < max_k with bit(r*k + a) != bit(r*k + b).

    Returns None when the two subsequences agree on all of k < max_k.
    `seq` may be a SturmianSeq or any bit sequence; either way it must
    already hold r*(max_k-1) + b + 1 bits.
    """
    if r < 1:
        raise DomainError("progression step must be >= 1")
    if not 0 <= a < b < r:
        raise DomainError("offsets must satisfy 0 <= a < b < r")
    if max_k < 1:
        raise DomainError("max_k must be >= 1")
    required = r * (max_k - 1) + b + 1
    if isinstance(seq, SturmianSeq):
        if len(seq) < required:
            raise SequenceLengthError(required, len(seq))
        arr = seq.bits(len(seq))
    else:
        arr = np.asarray(seq, dtype=np.uint8)
        if arr.size < required:
            raise SequenceLengthError(required, arr.size)
    u = arr[a::r][:max_k]
    v = arr[b::r][:max_k]
    neq = u != v
    if not neq.any():
        return None
    return int(neq.argmax())


@dataclass(frozen=True)
class DiversityRow:
    r: int
    max_agreement: int | None  # None: some pair agreed past the whole window
    bound: int
    passed: bool


def diversity_scan(cf: CFSpec, B: int, r_max: int) -> list[DiversityRow]:
    """Max agreement over all offset pairs for each step r = 2..r_max.

    B must dominate the partial quotients of cf; each row checks the
    quadratic bound 2*(B+2)^2 * r^2.
    """
    if r_max < 2:
        raise DomainError("need r_max >= 2")
    if B < cf.bound():
        raise DomainError(
            f"stated quotient bound {B} is below the actual bound {cf.bound()}"
        )
    seq = SturmianSeq(cf)
    rows = []
    for r in range(2, r_max + 1):
        bound = 2 * (B + 2) ** 2 * r * r
        max_k = bound + 1
        seq.ensure(r * max_k)
        worst: int | None = -1
        for a in range(r - 1):
            for b in range(a + 1, r):
                k = agreement(seq, r, a, b, max_k)
                if k is None:
                    worst = None
                    break
                if worst is not None and k > worst:
                    worst = k
            if worst is None:
                break
        passed = worst is not None and worst <= bound
        rows.append(DiversityRow(r=r, max_agreement=worst, bound=bound, passed=passed))
    return rows


# ---- exact golden-ratio machinery ------------------------------------


@dataclass(frozen=True)
class FibLucasPair:
    n: int
    fib: int
    lucas: int


def fib_lucas(n: int) -> FibLucasPair:
    """Fibonacci and Lucas numbers, re-verified against exact power sums.

    Checks F_n = (alpha^n - beta^n)/sqrt(5), L_n = alpha^n + beta^n, and
    for n >= 1 the shifted forms F_n*theta = F_{n-1} - beta^n and
    L_n*theta = L_{n-1} + sqrt(5)*beta^n, all in exact arithmetic.
    """
    if n < 0:
        raise DomainError("indexed from 0")
    f_prev, f = 1, 0  # F_{-1}, F_0
    l_prev, l = -1, 2  # L_{-1}, L_0
    for _ in range(n):
        f_prev, f = f, f + f_prev
        l_prev, l = l, l + l_prev
    an = ALPHA**n
    bn = BETA**n
    if QuadraticNumber(f) * SQRT5 != an - bn:
        raise VerificationError(f"Fibonacci {n} fails its power-sum form")
    if QuadraticNumber(l) != an + bn:
        raise VerificationError(f"Lucas {n} fails its power-sum form")
    if n >= 1:
        if f * THETA_GOLDEN != f_prev - bn:
            raise VerificationError(f"Fibonacci {n} fails its shift identity")
        if l * THETA_GOLDEN != l_prev + SQRT5 * bn:
            raise VerificationError(f"Lucas {n} fails its shift identity")
    return FibLucasPair(n=n, fib=f, lucas=l)


def frac_golden_multiple(m: int) -> QuadraticNumber:
    """Exact fractional part of m * (sqrt(5)-1)/2."""
    if m < 0:
        raise DomainError("multiples are indexed from 0")
    x = m * THETA_GOLDEN
    return x - x.floor()


@dataclass(frozen=True)
class FractionalGrids:
    """The two staircase grids of fractional parts behind the witness.

    lower[i][j] and upper[i][j] hold the exact values
    gamma + (frac(F_{4n}*theta) - 1)*i + frac(L_{2n}*theta)*j with gamma
    equal to frac(F_{2n-1}*theta) for lower and frac(L_{2n}*theta) for
    upper. Reading either grid column-major from the bottom row upward
    gives a strictly ascending sequence; the three step sizes are
    step_up (within a column), step_right (same row, next column), and
    step_wrap (top of one column to bottom of the next).
    """

    n: int
    rows: int
    cols: int
    lower: tuple[tuple[QuadraticNumber, ...], ...]
    upper: tuple[tuple[QuadraticNumber, ...], ...]
    diff: QuadraticNumber  # upper - lower, constant
    step_right: QuadraticNumber
    step_up: QuadraticNumber
    step_wrap: QuadraticNumber


def fractional_grids(n: int) -> FractionalGrids:
    """Build and exhaustively verify the two grids at stage n (2..6).

    Stages beyond 6 are refused: the grids grow like the square of the
    Fibonacci numbers and stop being useful to materialize.
    """
    if not 2 <= n <= 6:
        raise DomainError("grids are materialized for stages 2 through 6 only")
    th = THETA_GOLDEN
    f2n = fib_lucas(2 * n)
    f2nm1 = fib_lucas(2 * n - 1)
    f4n = fib_lucas(4 * n)
    l2np1 = fib_lucas(2 * n + 1)
    g_low = frac_golden_multiple(f2nm1.fib)
    g_step = frac_golden_multiple(f2n.lucas)
    g_drop = frac_golden_multiple(f4n.fib)
    # Exact closed forms for the three fractional parts.
    if g_low != th ** (2 * n - 1):
        raise VerificationError("frac(F_{2n-1}*theta) misses its closed form")
    if g_drop != 1 - th ** (4 * n):
        raise VerificationError("frac(F_{4n}*theta) misses its closed form")
    if g_step != SQRT5 * th ** (2 * n):
        raise VerificationError("frac(L_{2n}*theta) misses its closed form")
    if f4n.fib != f2n.fib * f2n.lucas:
        raise VerificationError("F_{4n} = F_{2n} * L_{2n} fails")

    rows = l2np1.lucas - 1
    cols = f2n.fib
    step_up = th ** (4 * n)
    step_right = g_step
    step_wrap = th ** (2 * n + 1) + 2 * th ** (4 * n) + th ** (6 * n + 1)
    diff = g_step - g_low
    if diff != th ** (2 * n + 1):
        raise VerificationError("grid offset misses theta^(2n+1)")
    if step_wrap != step_right - (rows - 1) * step_up:
        raise VerificationError("wrap step misses its closed form")
    for name, v in (("right", step_right), ("up", step_up), ("wrap", step_wrap)):
        if v.sign() <= 0:
            raise VerificationError(f"step_{name} is not positive")

    lower_rows = []
    for i in range(rows):
        base = g_low - i * step_up
        row = [base]
        for _ in range(cols - 1):
            row.append(row[-1] + step_right)
        lower_rows.append(tuple(row))
    lower = tuple(lower_rows)
    upper = tuple(tuple(v + diff for v in row) for row in lower)

    start = lower[rows - 1][0]
    end = upper[0][cols - 1]
    if start != 2 * th ** (4 * n) + th ** (6 * n + 1):
        raise VerificationError("grid start entry misses its closed form")
    if end != 1 - th ** (4 * n):
        raise VerificationError("grid end entry misses its closed form")
    if not (start.sign() > 0 and end < 1):
        raise VerificationError("grid entries escape the unit interval")
    # Column-major bottom-up walk must ascend in exact steps.
    for grid in (lower, upper):
        for j in range(cols):
            for i in range(rows - 1, 0, -1):
                if grid[i - 1][j] - grid[i][j] != step_up:
                    raise VerificationError("column step broken")
            if j + 1 < cols and grid[rows - 1][j + 1] - grid[0][j] != step_wrap:
                raise VerificationError("wrap step broken")
    # Mixed-radix coverage: the walk enumerates exactly the admissible k.
    f4np1 = fib_lucas(4 * n + 1)
    if rows * cols != f4np1.fib - f2n.fib - 1:
        raise VerificationError("grid size misses the index count")

    return FractionalGrids(
        n=n,
        rows=rows,
        cols=cols,
        lower=lower,
        upper=upper,
        diff=diff,
        step_right=step_right,
        step_up=step_up,
        step_wrap=step_wrap,
    )


@dataclass(frozen=True)
class DiversityWitness:
    r: int
    a: int
    b: int
    first_mismatch: int | None
    bound: int


@dataclass(frozen=True)
class CrossingCell:
    """The one grid cell whose lower value sits below theta^2 and whose
    upper value sits above it, with the two closed-form predictions for
    the first disagreement index that cell encodes."""

    n: int
    i: int
    j: int
    lower: QuadraticNumber
    upper: QuadraticNumber
    candidate_low: int
    candidate_high: int


def crossing_cell(n: int) -> CrossingCell:
    """Exact facts about the crossing cell at stage n.

    Establishes, in exact arithmetic: the closed forms of the cell's two
    values, the strict two-sided brackets around theta^2, and the integer
    identity tying the cell's position to the lower candidate index.
    """
    if n < 2:
        raise DomainError("witness stages are indexed from 2")
    th = THETA_GOLDEN
    f2n = fib_lucas(2 * n)
    f2nm2 = fib_lucas(2 * n - 2)
    f2np1 = fib_lucas(2 * n + 1)
    f4n = fib_lucas(4 * n)
    f4np1 = fib_lucas(4 * n + 1)

    i_star = f2np1.lucas - 2
    j_star = f2nm2.fib
    lower_e = th ** (2 * n - 1) - i_star * th ** (4 * n) + j_star * SQRT5 * th ** (2 * n)
    upper_e = lower_e + th ** (2 * n + 1)
    th2 = th * th

    if lower_e != th2 + 2 * th ** (4 * n) + th ** (6 * n + 1) - th ** (4 * n - 2):
        raise VerificationError("crossing lower entry misses its closed form")
    if upper_e != th2 + SQRT5 * th ** (2 * n) + 2 * th ** (4 * n) + th ** (
        6 * n + 1
    ) - th ** (2 * n - 1) - th ** (4 * n - 2):
        raise VerificationError("crossing upper entry misses its closed form")
    if not th2 - th ** (4 * n - 2) < lower_e < th2:
        raise VerificationError("lower entry escapes its certified bracket")
    if not th2 < upper_e < th2 + th ** (2 * n - 3) + 3 * th ** (4 * n):
        raise VerificationError("upper entry escapes its certified bracket")

    candidate_low = f4np1.fib - f2np1.fib - 1
    candidate_high = f4np1.fib - f2n.fib - 1
    if i_star * f4n.fib + j_star * f2n.lucas != f2n.lucas * candidate_low:
        raise VerificationError("crossing cell index identity fails")

    return CrossingCell(
        n=n,
        i=i_star,
        j=j_star,
        lower=lower_e,
        upper=upper_e,
        candidate_low=candidate_low,
        candidate_high=candidate_high,
    )


def crossing_unique(n: int) -> bool:
    """Exhaustively confirm only one grid cell brackets theta^2."""
    if n < 2:
        raise DomainError("witness stages are indexed from 2")
    th = THETA_GOLDEN
    th2 = th * th
    rows = fib_lucas(2 * n + 1).lucas - 1
    cols = fib_lucas(2 * n).fib
    base = th ** (2 * n - 1)
    drop = th ** (4 * n)
    step = SQRT5 * th ** (2 * n)
    width = th ** (2 * n + 1)
    hits = 0
    for i in range(rows):
        row0 = base - i * drop
        for j in range(cols):
            lo = row0 + j * step
            if lo < th2 < lo + width:
                hits += 1
    if hits != 1:
        raise VerificationError(f"expected one crossing cell, found {hits}")
    return True


@dataclass(frozen=True)
class WitnessReport:
    """Everything the crossing witness at stage n establishes.

    candidate_low and candidate_high are the two closed forms
    F_{4n+1} - F_{2n+1} - 1 and F_{4n+1} - F_{2n} - 1 for the first
    disagreement index; the direct bit scan adjudicates between them and
    `matches` records the outcome. The crossing pair is the unique grid
    cell whose lower value sits below theta^2 while its upper value sits
    above, which is exactly where the two subsequences part ways.
    """

    witness: DiversityWitness
    candidate_low: int
    candidate_high: int
    matches: str
    mismatch_bits: tuple[int, int]
    crossing_pair: tuple[int, int]
    crossing_lower: QuadraticNumber
    crossing_upper: QuadraticNumber
    unique_crossing: bool | None


def lower_bound_witness(n: int) -> WitnessReport:
    """Golden-ratio witness showing agreement of quadratic length.

    Uses r = L_{2n}, offsets a = F_{2n-1} - 1 and b = L_{2n} - 1. All
    grid-entry facts are established in exact arithmetic; the first
    disagreement index comes from a direct scan of the bits, which is the
    ground truth the closed forms are judged against. The exhaustive
    uniqueness scan runs through stage 5 and is skipped beyond that
    (unique_crossing None).
    """
    cell = crossing_cell(n)
    f2n = fib_lucas(2 * n)
    r = f2n.lucas
    a = fib_lucas(2 * n - 1).fib - 1
    b = f2n.lucas - 1
    bound = 2 * 9 * r * r  # B = 1 for the golden ratio: 2*(B+2)^2 = 18

    unique = crossing_unique(n) if n <= 5 else None

    # Ground truth: scan the actual bits.
    seq = SturmianSeq(CFSpec(0, (), (1,)))
    max_k = cell.candidate_high + 2
    seq.ensure(r * (max_k - 1) + b + 1)
    k_star = agreement(seq, r, a, b, max_k)
    if k_star is None:
        raise VerificationError("no disagreement found where one must exist")
    arr = seq.bits(r * k_star + b + 1)
    bits_at = (int(arr[r * k_star + a]), int(arr[r * k_star + b]))
    if k_star == cell.candidate_low:
        matches = "low"
    elif k_star == cell.candidate_high:
        matches = "high"
    else:
        matches = "neither"

    return WitnessReport(
        witness=DiversityWitness(r=r, a=a, b=b, first_mismatch=k_star, bound=bound),
        candidate_low=cell.candidate_low,
        candidate_high=cell.candidate_high,
        matches=matches,
        mismatch_bits=bits_at,
        crossing_pair=(cell.i, cell.j),
        crossing_lower=cell.lower,
        crossing_upper=cell.upper,
        unique_crossing=unique,
    )


@dataclass(frozen=True)
class RatioReport:
    """How F_{4n+1} / L_{2n}^2 behaves as the witness stage grows.

    Two closed-form limits are on the table: (5 + sqrt(5))/10 and
    (10 + sqrt(5))/10. The rows decide empirically which one the data
    approaches; `approached` is the index into `candidates`.
    """

    rows: tuple[tuple[int, Fraction], ...]
    candidates: tuple[QuadraticNumber, QuadraticNumber]
    approached: int


def witness_ratio_report(n_lo: int = 2, n_hi: int = 8) -> RatioReport:
    if not 1 <= n_lo <= n_hi:
        raise DomainError("need 1 <= n_lo <= n_hi")
    rows = []
    for n in range(n_lo, n_hi + 1):
        f = fib_lucas(4 * n + 1).fib
        l = fib_lucas(2 * n).lucas
        rows.append((n, Fraction(f, l * l)))
    cand = (
        QuadraticNumber(Fraction(1, 2), Fraction(1, 10), 5),  # (5 + sqrt5)/10
        QuadraticNumber(1, Fraction(1, 10), 5),  # (10 + sqrt5)/10
    )
    last = rows[-1][1]
    d0 = abs(cand[0] - last)
    d1 = abs(cand[1] - last)
    approached = 0 if d0 < d1 else 1
    return RatioReport(rows=tuple(rows), candidates=cand, approached=approached)
