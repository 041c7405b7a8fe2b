"""Continued fractions with certified evaluation.

A CFSpec describes a real number theta = [a0; a1, a2, ...] by its integer
part, a finite run of partial quotients, and an optional repeating block.
Empty period means theta is rational and the expansion is finite.

Everything numeric that leaves this module is either an exact Fraction or a
CertifiedValue, a rational center with a rational radius that provably
contains the true real. Downstream code decides every comparison inside
those guarantees, so no conclusion ever rests on floating point.
"""

from __future__ import annotations

import itertools
import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import DomainError, VerificationError
from .quadratic import QuadraticNumber

DEFAULT_EPS = Fraction(1, 10**30)


@dataclass(frozen=True)
class CFSpec:
    """A real number given by its continued fraction expansion.

    a0 is the integer part; prefix holds the leading partial quotients
    a1..am; period is the repeating block that follows (empty for
    rationals). All quotients past a0 must be >= 1. Finite expansions are
    normalized on construction so they never end in 1, which makes
    structural equality meaningful.
    """

    a0: int = 0
    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        # operator.index rejects floats instead of truncating them.
        prefix = tuple(operator.index(a) for a in self.prefix)
        period = tuple(operator.index(a) for a in self.period)
        a0 = operator.index(self.a0)
        for a in prefix + period:
            if a < 1:
                raise DomainError(f"partial quotient {a} is below 1")
        if not period and prefix and prefix[-1] == 1:
            # [...x, 1] == [...x+1]: fold the trailing 1 away.
            if len(prefix) >= 2:
                prefix = prefix[:-2] + (prefix[-2] + 1,)
            else:
                a0 += 1
                prefix = ()
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    # ---- basic shape --------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.period

    @property
    def is_integer(self) -> bool:
        return not self.period and not self.prefix

    def expansion_length(self) -> int | None:
        """Number of partial quotients past a0, or None if infinite."""
        return len(self.prefix) if self.is_rational else None

    def bound(self) -> int:
        """Largest partial quotient past a0. The number lies in the class
        of reals whose quotients never exceed this."""
        if not self.prefix and not self.period:
            raise DomainError("an integer has no partial quotients to bound")
        return max(self.prefix + self.period)

    def quotients(self) -> Iterator[int]:
        """Yield a1, a2, ... (stops for rationals, cycles forever else)."""
        yield from self.prefix
        if self.period:
            yield from itertools.cycle(self.period)

    def quotient(self, k: int) -> int:
        """The partial quotient a_k for k >= 1."""
        if k < 1:
            raise DomainError("partial quotients are indexed from 1")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if not self.period:
            raise DomainError(
                f"rational expansion has only {len(self.prefix)} quotients"
            )
        return self.period[(k - 1 - len(self.prefix)) % len(self.period)]

    def tail(self, k: int) -> "CFSpec":
        """The number [0; a_k, a_{k+1}, ...] for k >= 1."""
        if k < 1:
            raise DomainError("tails are indexed from 1")
        if k <= len(self.prefix):
            return CFSpec(0, self.prefix[k - 1 :], self.period)
        if not self.period:
            raise DomainError(
                f"rational expansion has only {len(self.prefix)} quotients"
            )
        off = (k - 1 - len(self.prefix)) % len(self.period)
        return CFSpec(0, (), self.period[off:] + self.period[:off])

    def value(self) -> Fraction:
        """Exact value; rational expansions only."""
        if not self.is_rational:
            raise DomainError("irrational expansion has no exact rational value")
        v = Fraction(0)
        for a in reversed(self.prefix):
            v = Fraction(1, a + v)
        return self.a0 + v

    # ---- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"a0": self.a0, "prefix": list(self.prefix), "period": list(self.period)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CFSpec":
        try:
            return cls(obj["a0"], tuple(obj.get("prefix", ())), tuple(obj.get("period", ())))
        except DomainError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed expansion object: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "CFSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON for expansion: {exc}") from exc
        if not isinstance(obj, dict):
            raise DomainError("expansion JSON must be an object")
        return cls.from_json_dict(obj)


GOLDEN = CFSpec(0, (), (1,))
SQRT2_MINUS_1 = CFSpec(0, (), (2,))


def preset(name: str) -> CFSpec:
    """Named inputs used by the command line: golden, sqrt2, extremal:B."""
    if name == "golden":
        return GOLDEN
    if name == "sqrt2":
        return SQRT2_MINUS_1
    if name.startswith("extremal:"):
        try:
            b = int(name.split(":", 1)[1])
        except ValueError as exc:
            raise DomainError(f"bad extremal preset {name!r}") from exc
        if b < 1:
            raise DomainError("extremal preset needs a bound >= 1")
        return CFSpec(0, (), (b, 1))
    raise DomainError(f"unknown preset {name!r}")


class Convergent(NamedTuple):
    k: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def convergent_pairs(cf: CFSpec) -> Iterator[Convergent]:
    """Yield convergents p_k/q_k, k = 0, 1, 2, ... (finite for rationals)."""
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    yield Convergent(0, p, q)
    for k, a in enumerate(cf.quotients(), start=1):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        yield Convergent(k, p, q)


def convergents(cf: CFSpec, count: int) -> list[Convergent]:
    """First `count` convergents. A rational expansion may run out early;
    the returned list is then shorter and its length says where."""
    if count < 1:
        raise DomainError("need at least one convergent")
    return list(itertools.islice(convergent_pairs(cf), count))


@dataclass(frozen=True)
class CertifiedValue:
    """A real known to lie in [center - radius, center + radius]."""

    center: Fraction
    radius: Fraction = Fraction(0)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def agrees_with(self, other: "CertifiedValue", slack=Fraction(0)) -> bool:
        """Whether the two intervals could describe the same real."""
        return abs(self.center - other.center) <= self.radius + other.radius + slack

    def __add__(self, other):
        if isinstance(other, CertifiedValue):
            return CertifiedValue(self.center + other.center, self.radius + other.radius)
        return CertifiedValue(self.center + Fraction(other), self.radius)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedValue(-self.center, self.radius)

    def __sub__(self, other):
        if isinstance(other, CertifiedValue):
            return self + (-other)
        return CertifiedValue(self.center - Fraction(other), self.radius)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "CertifiedValue":
        f = Fraction(factor)
        return CertifiedValue(self.center * f, self.radius * abs(f))

    def reciprocal(self) -> "CertifiedValue":
        """1/x for an interval strictly above zero."""
        if self.lo <= 0:
            raise DomainError("reciprocal needs a strictly positive interval")
        lo, hi = 1 / self.hi, 1 / self.lo
        return CertifiedValue((lo + hi) / 2, (hi - lo) / 2)

    def __repr__(self):
        return f"CertifiedValue({self.center} +- {self.radius})"


def choose_surrogate(
    cf: CFSpec, N: int, min_radius: Fraction | None = None
) -> tuple[Convergent, Convergent]:
    """Minimal-depth convergent pair safe for sorting N multiples.

    The returned (c_K, c_{K+1}) satisfies q_K * q_{K+1} > 16*(B+2)*N^2
    with B the quotient bound, which keeps the surrogate's shift of every
    point {n*theta}, n <= N, below one eighth of the smallest possible
    gap, so every pairwise comparison among the points survives the
    substitution. An optional min_radius forces the depth further.
    """
    if cf.is_rational:
        raise DomainError("rational input needs no surrogate")
    B = cf.bound()
    need = 16 * (B + 2) * N * N
    pairs = convergent_pairs(cf)
    prev = next(pairs)
    for cur in pairs:
        deep_enough = prev.q * cur.q > need
        if deep_enough and min_radius is not None:
            deep_enough = prev.q * cur.q * min_radius >= 1
        if deep_enough:
            return prev, cur
        prev = cur
    raise AssertionError("unreachable for irrational input")


def eval_theta(cf: CFSpec, eps: Fraction = DEFAULT_EPS) -> CertifiedValue:
    """Certified value of the number: center p_k/q_k, radius <= eps.

    For irrational cf the radius is the classical bound 1/(q_k*q_{k+1});
    rationals come back exact with radius 0.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if cf.is_rational:
        return CertifiedValue(cf.value(), Fraction(0))
    pairs = convergent_pairs(cf)
    prev = next(pairs)
    for cur in pairs:
        radius = Fraction(1, prev.q * cur.q)
        if radius <= eps:
            return CertifiedValue(prev.value, radius)
        prev = cur
    raise AssertionError("unreachable: periodic expansion never ends")


def dist_to_int(cf: CFSpec, n: int, eps: Fraction = DEFAULT_EPS) -> CertifiedValue:
    """Certified distance from n*theta to the nearest integer."""
    if n < 0:
        n = -n
    if n == 0:
        return CertifiedValue(Fraction(0), Fraction(0))
    if cf.is_rational:
        f = (n * cf.value()) % 1
        return CertifiedValue(min(f, 1 - f), Fraction(0))
    ev = eval_theta(cf, eps / n)
    f = (n * ev.center) % 1
    # distance-to-nearest-integer is 1-Lipschitz, so the radius transfers.
    return CertifiedValue(min(f, 1 - f), n * ev.radius)


def convergent_residual(cf: CFSpec, k: int, eps: Fraction = DEFAULT_EPS) -> CertifiedValue:
    """Certified |q_k*theta - p_k|.

    For k >= 1 this equals the distance from q_k*theta to the nearest
    integer; at k = 0 it is the fractional part of theta, which the gap
    classification below needs even when that part exceeds one half.
    """
    if k < 0:
        raise DomainError("residuals are indexed from 0")
    conv = convergents(cf, k + 1)
    if len(conv) <= k:
        raise DomainError(f"expansion has no convergent of index {k}")
    c = conv[k]
    if cf.is_rational:
        return CertifiedValue(abs(c.q * cf.value() - c.p), Fraction(0))
    ev = eval_theta(cf, eps / c.q)
    return CertifiedValue(abs(c.q * ev.center - c.p), c.q * ev.radius)


def tail_and_reversal(
    cf: CFSpec, k: int, eps: Fraction = DEFAULT_EPS
) -> tuple[CertifiedValue, Fraction]:
    """The tail [0; a_k, a_{k+1}, ...] certified, and the exact reversal.

    The reversal [0; a_k, ..., a_1] always equals q_{k-1}/q_k, so it comes
    back as an exact Fraction rather than an interval.
    """
    if k < 1:
        raise DomainError("tail and reversal are indexed from 1")
    tail_cf = cf.tail(k)  # raises DomainError when a rational runs out
    theta_k = eval_theta(tail_cf, eps)
    conv = convergents(cf, k + 1)
    phi_k = Fraction(conv[k - 1].q, conv[k].q)
    return theta_k, phi_k


def reversal_identity_check(cf: CFSpec, k: int) -> bool:
    """Confirm [0; a_k, ..., a_1] == q_{k-1}/q_k by direct evaluation."""
    if k < 1:
        raise DomainError("reversals are indexed from 1")
    quots = [cf.quotient(i) for i in range(1, k + 1)]
    rev = CFSpec(0, tuple(reversed(quots)), ())
    conv = convergents(cf, k + 1)
    return rev.value() == Fraction(conv[k - 1].q, conv[k].q)


def expand_quadratic(x: QuadraticNumber, count: int) -> list[int]:
    """First `count` terms a0, a1, ... of the expansion of an exact
    quadratic number, computed by floor-and-invert with no rounding."""
    terms = []
    cur = x
    for _ in range(count):
        a = cur.floor()
        terms.append(a)
        frac = cur - a
        if frac.sign() == 0:
            break
        cur = frac.inverse()
    return terms


def bounded_quotient_extrema(bound: int) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Smallest and largest reals whose partial quotients all stay <= bound.

    The minimum is [0; bound, 1, bound, 1, ...] and the maximum is
    [bound; 1, bound, 1, ...]; both come back as exact quadratic numbers
    and both are re-verified here, first against their defining quadratic
    equations and then by expanding them term by term.
    """
    if bound < 1:
        raise DomainError("quotient bound must be >= 1")
    b = bound
    root = QuadraticNumber.sqrt(b * b + 4 * b)
    mn = (root - b) / (2 * b)
    mx = (root + b) / 2
    # mn solves b*x^2 + b*x - 1 = 0, mx solves x^2 - b*x - b = 0.
    if b * mn * mn + b * mn - 1 != 0:
        raise VerificationError("minimum fails its defining quadratic")
    if mx * mx - b * mx - b != 0:
        raise VerificationError("maximum fails its defining quadratic")
    if not (0 < mn < 1 < mx):
        raise VerificationError("extrema landed outside their expected range")
    terms = 9
    want_mn = [0] + [b if i % 2 == 0 else 1 for i in range(terms - 1)]
    want_mx = [b] + [1 if i % 2 == 0 else b for i in range(terms - 1)]
    if expand_quadratic(mn, terms) != want_mn:
        raise VerificationError("minimum does not expand to [0; bound, 1, ...]")
    if expand_quadratic(mx, terms) != want_mx:
        raise VerificationError("maximum does not expand to [bound; 1, bound, ...]")
    return mn, mx
