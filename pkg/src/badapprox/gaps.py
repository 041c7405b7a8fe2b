"""Gap structure of the multiples of a number modulo one.

For any real theta, the points 0, {theta}, {2*theta}, ..., {N*theta}, 1
split the unit interval into gaps that take at most three distinct
lengths, and when three occur the largest is exactly the sum of the other
two. This module computes those gaps exactly, classifies which regime a
given N falls into, and evaluates the sharp constant governing how large
N times the biggest gap can get over all numbers with bounded partial
quotients.

Exactness policy: an irrational theta is replaced once, up front, by a
convergent p_K/q_K deep enough that every pairwise comparison among the
points is provably unaffected (the surrogate moves each point by less
than one eighth of the smallest possible gap). Everything after that is
integer arithmetic over the common denominator q_K, so sorting, gap
lengths, multiplicities, and the three-length identity are exact, not
approximate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cf import (
    CertifiedValue,
    CFSpec,
    choose_surrogate,
    convergent_pairs,
    convergent_residual,
    convergents,
)
from .errors import CoincidentPointsError, DomainError, VerificationError
from .quadratic import QuadraticNumber

# int64 additions of two residues must not overflow: need 2*q < 2**63.
_NP_SAFE_LIMIT = 2**61


def _sorted_residues(p: int, q: int, N: int) -> list[int] | np.ndarray:
    if q < _NP_SAFE_LIMIT:
        # Residues of (j+m)*p equal residues of j*p shifted by the residue
        # of m*p, so each doubling pass fills as much as already exists.
        arr = np.empty(N, dtype=np.int64)
        arr[0] = p % q
        have = 1
        while have < N:
            take = min(have, N - have)
            shifted = arr[:take] + arr[have - 1]
            shifted[shifted >= q] -= q
            arr[have : have + take] = shifted
            have += take
        arr.sort()
        return arr
    res = []
    r = 0
    for _ in range(N):
        r += p
        if r >= q:
            r -= q
        res.append(r)
    return sorted(res)


@dataclass(frozen=True, eq=False)
class GapSet:
    """Exact gap decomposition of {0, {theta}, ..., {N*theta}, 1}.

    Points are stored as integer numerators over a single denominator (the
    surrogate's q_K, or the exact denominator for rational input). radius
    bounds |theta - p/q| for the surrogate; it is zero for rationals.
    """

    count: int
    numerator: int
    denominator: int
    depth: int
    radius: Fraction
    nums: object = field(repr=False)  # sorted int sequence incl. 0 and denominator
    gap_nums: tuple[tuple[int, int], ...] = ()  # ascending (length numerator, multiplicity)

    @cached_property
    def points(self) -> list[Fraction]:
        return [Fraction(int(v), self.denominator) for v in self.nums]

    @cached_property
    def gaps(self) -> list[tuple[Fraction, int]]:
        return [(Fraction(g, self.denominator), m) for g, m in self.gap_nums]

    @property
    def largest(self) -> Fraction:
        return Fraction(self.gap_nums[-1][0], self.denominator)

    @property
    def product(self) -> Fraction:
        """N times the largest gap."""
        return self.count * self.largest

    def order_of(self, num: int) -> int:
        """Which multiple n has {n*theta} at the point num/denominator.

        The endpoints 0 and 1 both belong to n = 0.
        """
        if num == 0 or num == self.denominator:
            return 0
        n = (num * pow(self.numerator, -1, self.denominator)) % self.denominator
        if not 1 <= n <= self.count:
            raise VerificationError("point does not belong to any multiple")
        return n

    @cached_property
    def orders(self) -> list[int]:
        return [self.order_of(int(v)) for v in self.nums]

    def largest_gap_span(self) -> tuple[Fraction, Fraction]:
        """Endpoints of one gap of maximal length."""
        want = self.gap_nums[-1][0]
        prev = 0
        for v in self.nums[1:]:
            v = int(v)
            if v - prev == want:
                return Fraction(prev, self.denominator), Fraction(v, self.denominator)
            prev = v
        raise AssertionError("largest gap disappeared")

    def to_json_dict(self, sig: int = 10) -> dict:
        from .render import decimal_str

        return {
            "n": self.count,
            "k_surrogate": self.depth,
            "points": [decimal_str(p, sig) for p in self.points],
            "gaps": [
                {"length": decimal_str(g, sig), "multiplicity": m}
                for g, m in self.gaps
            ],
            "h": decimal_str(self.largest, sig),
            "product_nh": decimal_str(self.product, sig),
        }


def gap_set(cf: CFSpec, N: int, *, min_radius: Fraction | None = None) -> GapSet:
    """Exact gap set of the first N multiples of theta modulo one.

    Rational input is evaluated with its own denominator and must satisfy
    N < that denominator, otherwise points coincide and the decomposition
    is not defined. The returned structure always satisfies the two
    machine-checked facts: there are two or three distinct gap lengths
    (rationals may split the interval evenly, giving one), and with three
    the largest equals the sum of the other two exactly.
    """
    if N < 1:
        raise DomainError("need at least one multiple")
    if cf.is_integer:
        raise DomainError("integer input has every multiple at zero")
    if cf.is_rational:
        v = cf.value()
        q = v.denominator
        if N >= q:
            raise CoincidentPointsError(
                f"rational input with denominator {q} supports only N < {q}"
            )
        p = v.numerator % q
        depth = len(cf.prefix)
        radius = Fraction(0)
    else:
        ck, ck1 = choose_surrogate(cf, N, min_radius)
        p, q = ck.p % ck.q, ck.q
        depth = ck.k
        radius = Fraction(1, ck.q * ck1.q)
        if N >= q:
            raise AssertionError("surrogate denominator must exceed N")

    nums = _sorted_residues(p, q, N)
    if isinstance(nums, np.ndarray):
        full = np.empty(N + 2, dtype=np.int64)
        full[0] = 0
        full[1:-1] = nums
        full[-1] = q
        diffs = np.diff(full)
        values, counts = np.unique(diffs, return_counts=True)
        gap_nums = tuple((int(v), int(c)) for v, c in zip(values, counts))
        nums_seq: object = full
    else:
        full_list = [0] + nums + [q]
        diffs_c = Counter(
            full_list[i + 1] - full_list[i] for i in range(len(full_list) - 1)
        )
        gap_nums = tuple(sorted(diffs_c.items()))
        nums_seq = tuple(full_list)

    if gap_nums[0][0] == 0:
        raise CoincidentPointsError("coincident points in the multiple set")
    # A rational theta can split the interval evenly (one gap length);
    # an irrational one always produces two or three.
    fewest = 1 if cf.is_rational else 2
    if not fewest <= len(gap_nums) <= 3:
        raise VerificationError(
            f"{len(gap_nums)} distinct gap lengths; two or three must occur"
        )
    if len(gap_nums) == 3 and gap_nums[2][0] != gap_nums[0][0] + gap_nums[1][0]:
        raise VerificationError("largest gap is not the sum of the smaller two")
    if sum(g * m for g, m in gap_nums) != q:
        raise VerificationError("gaps do not cover the unit interval")

    return GapSet(
        count=N,
        numerator=p,
        denominator=q,
        depth=depth,
        radius=radius,
        nums=nums_seq,
        gap_nums=gap_nums,
    )


# ---- regime classification -------------------------------------------


@dataclass(frozen=True)
class RegimeTag:
    """Which bracket of denominators N falls into.

    With q_k <= N < q_{k+1} and l = (N - q_{k-1}) // q_k, the case is
    "interval-1" when l = 0 (gaps drawn from the two convergent residuals
    and their sum) and "interval-2" otherwise (gaps drawn from the k-th
    residual and two staircase combinations).
    """

    k: int
    l: int

    @property
    def case(self) -> str:
        return "interval-1" if self.l == 0 else "interval-2"


def classify_regime(cf: CFSpec, N: int) -> RegimeTag:
    """Locate N among the denominator brackets of theta's convergents."""
    if cf.is_integer:
        raise DomainError("integer input has no convergent brackets")
    qs = []
    for c in convergent_pairs(cf):
        qs.append(c.q)
        if c.k >= 1 and c.q > N:
            break
    else:
        # rational expansion exhausted without exceeding N
        raise CoincidentPointsError(
            f"rational input resolves only N < {qs[-1]}"
        )
    if len(qs) < 2 or qs[1] > N:
        raise DomainError(f"N must be at least q_1 = {qs[1] if len(qs) > 1 else 1}")
    k = max(i for i in range(len(qs)) if qs[i] <= N)
    l = (N - qs[k - 1]) // qs[k]
    a_next = cf.quotient(k + 1)
    if not 0 <= l < a_next:
        raise VerificationError("bracket index escaped its range")
    return RegimeTag(k=k, l=l)


def predicted_gap_values(
    cf: CFSpec, tag: RegimeTag, eps: Fraction
) -> list[CertifiedValue]:
    """Certified gap lengths the classification predicts may occur."""
    part = Fraction(eps, 2 * tag.l + 3)
    r_k = convergent_residual(cf, tag.k, part)
    r_km1 = convergent_residual(cf, tag.k - 1, part)
    if tag.l == 0:
        return [r_k, r_km1, r_k + r_km1]
    lo = r_km1 - r_k.scale(tag.l)
    hi = r_km1 - r_k.scale(tag.l - 1)
    return [r_k, lo, hi]


def verify_regime(
    cf: CFSpec, N: int, *, min_radius: Fraction | None = None
) -> tuple[RegimeTag, GapSet, list[CertifiedValue], bool]:
    """Classify N and check the observed gaps against the prediction.

    Returns (tag, gap set, predicted values, all-observed-are-predicted).
    The tolerance combines the certified radii with the surrogate's worst
    case shift and stays below half the least possible separation between
    distinct gap lengths, so a match is never accidental. min_radius
    deepens the surrogate past the policy minimum, for callers that want
    the reported decimals accurate for theta itself.
    """
    tag = classify_regime(cf, N)
    gs = gap_set(cf, N, min_radius=min_radius)
    B = cf.bound()
    eps = Fraction(1, 16 * (B + 2) * N * N)
    if min_radius is not None:
        eps = min(eps, min_radius)
    predicted = predicted_gap_values(cf, tag, eps)
    slack = N * gs.radius
    ok = all(
        any(abs(g - p.center) <= p.radius + slack for p in predicted)
        for g, _ in gs.gaps
    )
    return tag, gs, predicted, ok


# ---- the sharp constant ----------------------------------------------


def gap_constant(bound: int) -> QuadraticNumber:
    """Exact supremum of N*H(theta, N) over theta with quotients <= bound.

    Closed form, split by parity of the bound.
    """
    if bound < 1:
        raise DomainError("quotient bound must be >= 1")
    if bound % 2 == 0:
        a = bound // 2
        return 1 + Fraction((a + 1) ** 2) / (2 * QuadraticNumber.sqrt(a * a + 2 * a))
    a = (bound - 1) // 2
    return 1 + Fraction(a * a + 3 * a + 2) / QuadraticNumber.sqrt(
        4 * a * a + 12 * a + 5
    )


def gap_constant_bounds(bound: int) -> tuple[Fraction, QuadraticNumber]:
    """Elementary envelope bound/4 <= constant <= (1 + sqrt(4/5))*bound.

    The upper end is attained exactly at bound 1.
    """
    if bound < 1:
        raise DomainError("quotient bound must be >= 1")
    lower = Fraction(bound, 4)
    upper = QuadraticNumber(bound, Fraction(2 * bound, 5), 5)
    return lower, upper


# ---- extremal witnesses ----------------------------------------------


@dataclass(frozen=True)
class ExtremalWitness:
    """A concrete (theta, N) whose N*H approaches the sharp constant."""

    bound: int
    n: int
    theta: CFSpec
    count: int
    predicted_gap: CertifiedValue
    largest: Fraction
    product: Fraction
    constant: QuadraticNumber
    depth: int
    radius: Fraction


def extremal_witness(
    bound: int, n: int, *, min_radius: Fraction | None = None
) -> ExtremalWitness:
    """Witness number and point count at stage n for a quotient bound.

    theta alternates bound, 1; N sits just below a denominator bracket
    edge. The predicted largest gap (a signed combination of two
    convergent residuals) is verified to equal the computed H exactly
    under the shared surrogate, and N*H is certified strictly below the
    sharp constant for the true theta, deepening the surrogate until the
    comparison is decidable. min_radius starts the surrogate deeper than
    the policy minimum.
    """
    if bound < 1:
        raise DomainError("quotient bound must be >= 1")
    if n < 1:
        raise DomainError("witness stages are indexed from 1")
    cf = CFSpec(0, (), (bound, 1))
    conv = convergents(cf, 2 * n + 1)
    q = [c.q for c in conv]
    N = q[2 * n - 1] + ((bound + 2) // 2) * q[2 * n] - 2
    if N < 1:
        raise DomainError(f"stage {n} gives an empty witness for bound {bound}")
    coeff = (bound - 2) // 2
    constant = gap_constant(bound)

    for _ in range(10):
        gs = gap_set(cf, N, min_radius=min_radius)
        # Exact residuals |q_j * p_K - p_j * q_K| under the same surrogate.
        res = [abs(c.q * gs.numerator - c.p * gs.denominator) for c in conv]
        pred_num = res[2 * n - 1] - coeff * res[2 * n]
        if pred_num != gs.gap_nums[-1][0]:
            raise VerificationError(
                "predicted largest gap disagrees with the computed one"
            )
        slack = N * N * gs.radius
        if gs.product + slack < constant:
            break
        if gs.product - slack > constant:
            raise VerificationError("witness product exceeds the sharp constant")
        min_radius = gs.radius / 2**40
    else:
        raise VerificationError("could not certify the witness product")

    eps = min(Fraction(1, 10**30), gs.largest / 2**20)
    predicted = convergent_residual(cf, 2 * n - 1, eps) - convergent_residual(
        cf, 2 * n, eps
    ).scale(coeff)
    if abs(predicted.center - gs.largest) > predicted.radius + N * gs.radius:
        raise VerificationError("certified prediction excludes the computed gap")
    return ExtremalWitness(
        bound=bound,
        n=n,
        theta=cf,
        count=N,
        predicted_gap=predicted,
        largest=gs.largest,
        product=gs.product,
        constant=constant,
        depth=gs.depth,
        radius=gs.radius,
    )
