"""Exact evaluation of every effective constant in the inequality pipeline.

All quantities are exact big integers or Fractions; nothing here rounds.
The two Hilbert-value lookups fall back to the certified bounds (Chardin
above, Sombra below) exactly where an upper bound on the final constants
stays an upper bound, so huge degrees never force a rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import MissingTableEntry, PreconditionViolated, ZeroPolynomial
from .function_field import RationalFunction
from .hilbert_bounds import chardin_upper, sombra_lower


def b_const(m: int, n: int, M: int, delta: int) -> int:
    """(4m)^(n+1) + (5(n+1)delta)^((n+1)M(M-1)/2 + M 2^M), for m >= max(3, (n+1)delta)."""
    if m < max(3, (n + 1) * delta):
        raise PreconditionViolated(
            f"need m >= max(3, (n+1)*delta) = {max(3, (n + 1) * delta)}, got {m}"
        )
    exponent = (n + 1) * M * (M - 1) // 2 + M * 2**M
    return (4 * m) ** (n + 1) + (5 * (n + 1) * delta) ** exponent


def excess_vanishing_power(n: int, M: int, N: int, delta: int, d: int) -> int:
    """(6 max((N+1)delta, d))^((n+1)(M^2+M))."""
    return (6 * max((N + 1) * delta, d)) ** ((n + 1) * (M * M + M))


def excess_vanishing_const(
    n: int, M: int, N: int, delta: int, d: int, h_fx, h_q_family
) -> Fraction:
    """The per-place constant: the power factor times (h(F_X) + h(Q_1..Q_q))."""
    return excess_vanishing_power(n, M, N, delta, d) * (Fraction(h_fx) + Fraction(h_q_family))


def choose_m(a_eps: int, d: int, n: int | None = None, delta: int | None = None) -> int:
    """m := d([a_eps/d] + 1), lifted to a multiple of d at least max(3, (n+1)delta)."""
    if a_eps < 1 or d < 1:
        raise PreconditionViolated("need a_eps >= 1 and d >= 1")
    m = d * (a_eps // d + 1)
    if n is not None and delta is not None:
        floor = max(3, (n + 1) * delta)
        while m < floor:
            m += d
    return m


@dataclass(frozen=True)
class ConstantInputs:
    n: int
    delta: int
    M: int
    N: int
    q: int
    d_i: tuple
    d: int
    epsilon: Fraction
    s_card: int
    s_degree: int
    h_fx: Fraction
    h_q_family: Fraction
    h_q_i: tuple
    e_s_term: Fraction
    c1: Fraction
    c1_prime: Fraction
    m: int

    def __post_init__(self):
        if not (self.N >= self.n >= 1):
            raise PreconditionViolated(f"need N >= n >= 1, got N={self.N}, n={self.n}")
        if self.q < self.n + 1:
            raise PreconditionViolated(f"need q >= n+1, got q={self.q}")
        if len(self.d_i) != self.q or len(self.h_q_i) != self.q:
            raise PreconditionViolated("d_i and h_q_i must list one entry per divisor")
        if self.d != lcm(*self.d_i):
            raise PreconditionViolated(f"d must be lcm{self.d_i}, got {self.d}")
        if self.m % self.d != 0 or self.m < max(3, (self.n + 1) * self.delta):
            raise PreconditionViolated(
                f"need d | m and m >= max(3, (n+1)delta), got m={self.m}"
            )


@dataclass(frozen=True)
class EffectiveConstants:
    b: int
    excess_const: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    a_eps: int | None
    m: int
    c_eps: Fraction
    c_prime_eps: Fraction
    S_sum: int


def _h_upper(H_table, degree: int, n: int, delta: int, strict: bool) -> int:
    value = H_table.get(degree)
    if value is not None:
        return value
    if strict:
        raise MissingTableEntry(f"H table has no entry at degree {degree}")
    return chardin_upper(degree, n, delta)


def _h_lower(H_table, degree: int, n: int, delta: int, strict: bool) -> int:
    value = H_table.get(degree)
    if value is not None:
        return value
    if strict:
        raise MissingTableEntry(f"H table has no entry at degree {degree}")
    return sombra_lower(degree, n, delta)


def assemble_constants(
    inputs: ConstantInputs,
    H_table,
    a_eps: int | None = None,
    strict: bool = False,
) -> EffectiveConstants:
    """Evaluate b, the per-place constant, b1..b3, c_eps and c'_eps exactly.

    H_table supplies Hilbert values by degree.  Missing entries fall back to
    the Chardin bound where the value multiplies (the H_X(m) factor) and to
    the Sombra bound where it divides (the S(m/d - 1) sum), keeping every
    reported constant a valid upper bound; strict=True forbids fallbacks.
    """
    n, delta, M, N, q, d, m = (
        inputs.n,
        inputs.delta,
        inputs.M,
        inputs.N,
        inputs.q,
        inputs.d,
        inputs.m,
    )
    b = b_const(m, n, M, delta)
    a = excess_vanishing_const(n, M, N, delta, d, inputs.h_fx, inputs.h_q_family)

    h_m = _h_upper(H_table, m, n, delta, strict)
    steps = m // d
    if steps < 2:
        raise PreconditionViolated("need m >= 2d so that S(m/d - 1) is nonempty")
    s_sum = sum(_h_lower(H_table, i * d, n, delta, strict) for i in range(1, steps))

    b1 = (m + 1) * h_m * b * (inputs.h_fx + inputs.h_q_family)
    b2 = inputs.s_card * b1
    b3 = a * (q - N) * inputs.s_card - q * inputs.e_s_term

    c_eps = Fraction(inputs.c1 + (M + 2) * b * inputs.h_fx, 1) / m

    weighted = sum(
        (Fraction(h) / di for h, di in zip(inputs.h_q_i, inputs.d_i)), Fraction(0)
    )
    weighted_d = sum(
        (Fraction(d, di) * h for h, di in zip(inputs.h_q_i, inputs.d_i)), Fraction(0)
    )
    power = excess_vanishing_power(n, M, N, delta, d)
    c_prime = (
        power * (Fraction(inputs.h_fx, d) + weighted) * (q - N) * inputs.s_card
        + q * weighted
        + N
        * (
            inputs.s_card * (m + 1) * h_m * b * (inputs.h_fx + weighted_d)
            + inputs.c1_prime
        )
        / (d * s_sum)
    )
    return EffectiveConstants(
        b=b,
        excess_const=a,
        b1=Fraction(b1),
        b2=Fraction(b2),
        b3=Fraction(b3),
        a_eps=a_eps,
        m=m,
        c_eps=c_eps,
        c_prime_eps=Fraction(c_prime),
        S_sum=s_sum,
    )


@dataclass(frozen=True)
class LcmReduction:
    """Divisors normalized to a common degree d with a unit coefficient each."""

    normalized: tuple
    scalars: tuple
    d: int


def lcm_reduction(qs) -> LcmReduction:
    """Replace each Q_i by (Q_i / a_i)^(d/d_i) with d = lcm of the degrees.

    a_i is the coefficient of the glex-largest monomial of Q_i, which makes
    the choice deterministic; each output has a coefficient equal to 1 and
    lambda_{p, out_i} = (d/d_i) lambda_{p, Q_i} pointwise.
    """
    qs = list(qs)
    if not qs:
        raise ZeroPolynomial("empty divisor family")
    for q in qs:
        if q.is_zero():
            raise ZeroPolynomial("zero divisor in family")
    d = lcm(*[q.degree for q in qs])
    normalized = []
    scalars = []
    for q in qs:
        a = q.leading_coefficient()
        scalars.append(a)
        scaled = q.scale(RationalFunction(1) / a)
        normalized.append(scaled ** (d // q.degree))
    return LcmReduction(tuple(normalized), tuple(scalars), d)
