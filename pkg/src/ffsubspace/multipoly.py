"""Sparse homogeneous multivariate polynomials over K = Q(t).

Variables are X0..XM; a monomial is a plain tuple of exponents.  The term
order used everywhere (column orders, pivot choices, basis listings) is
graded lexicographic with X0 > X1 > ... > XM, realized as plain tuple
comparison within a fixed degree, largest first.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DegreeMismatch, NotHomogeneous, VarCountMismatch, ZeroPolynomial
from .function_field import K_ONE, ProjectivePoint, RationalFunction


def monomial_degree(mono) -> int:
    return sum(mono)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def format_monomial(mono) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"X{i}")
        elif e > 1:
            parts.append(f"X{i}^{e}")
    return "*".join(parts)


@lru_cache(maxsize=1024)
def monomial_basis(num_vars: int, degree: int) -> tuple:
    """All degree-`degree` monomials in num_vars variables, glex descending."""
    if num_vars < 1 or degree < 0:
        raise ValueError("need num_vars >= 1 and degree >= 0")

    def gen(rest, d):
        if rest == 1:
            yield (d,)
            return
        for e in range(d, -1, -1):
            for tail in gen(rest - 1, d - e):
                yield (e,) + tail

    return tuple(gen(num_vars, degree))


def _coerce_coeff(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else RationalFunction(c)


def power_table(coords) -> list:
    """Growable per-coordinate power lists shared across many evaluations."""
    return [[K_ONE, c] for c in coords]


def eval_terms(terms, coords, powers) -> RationalFunction:
    for mono in terms:
        for i, e in enumerate(mono):
            while len(powers[i]) <= e:
                powers[i].append(powers[i][-1] * coords[i])
    total = RationalFunction(0)
    for mono, c in terms.items():
        term = c
        for i, e in enumerate(mono):
            if e:
                term = term * powers[i][e]
        total = total + term
    return total


class HomogeneousPoly:
    """A homogeneous form of fixed degree; zero coefficients never stored.

    The zero form of a given degree is allowed (empty term map) so that
    arithmetic is closed.
    """

    __slots__ = ("num_vars", "degree", "terms")

    def __init__(self, num_vars: int, degree: int, terms):
        clean = {}
        for mono, c in terms.items():
            c = _coerce_coeff(c)
            if c.is_zero():
                continue
            if len(mono) != num_vars:
                raise VarCountMismatch(
                    f"monomial {mono} has {len(mono)} vars, expected {num_vars}"
                )
            if monomial_degree(mono) != degree:
                raise NotHomogeneous(
                    f"monomial {format_monomial(mono)} has degree "
                    f"{monomial_degree(mono)}, expected {degree}"
                )
            clean[tuple(mono)] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("HomogeneousPoly is immutable")

    @classmethod
    def zero(cls, num_vars: int, degree: int = 0) -> "HomogeneousPoly":
        return cls(num_vars, degree, {})

    @classmethod
    def monomial(cls, num_vars: int, exponents, coeff=1) -> "HomogeneousPoly":
        exponents = tuple(exponents)
        return cls(num_vars, monomial_degree(exponents), {exponents: coeff})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "HomogeneousPoly":
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls(num_vars, 1, {exps: 1})

    @classmethod
    def from_terms(cls, num_vars: int, terms: dict) -> "HomogeneousPoly":
        """Build from a term map, inferring and checking the common degree."""
        terms = {m: _coerce_coeff(c) for m, c in terms.items() if _coerce_coeff(c)}
        if not terms:
            return cls.zero(num_vars)
        degrees = {monomial_degree(m) for m in terms}
        if len(degrees) != 1:
            raise NotHomogeneous(f"mixed term degrees {sorted(degrees)}")
        return cls(num_vars, degrees.pop(), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficients(self):
        return [c for _, c in self.sorted_terms()]

    def leading_monomial(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms)

    def leading_coefficient(self) -> RationalFunction:
        return self.terms[self.leading_monomial()]

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.num_vars != other.num_vars:
            raise VarCountMismatch(f"{self.num_vars} vs {other.num_vars} variables")
        if self.degree != other.degree and self.terms and other.terms:
            raise DegreeMismatch(f"degree {self.degree} + degree {other.degree}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return HomogeneousPoly(
            self.num_vars, self.degree if self.terms else other.degree, out
        )

    def __neg__(self):
        return HomogeneousPoly(
            self.num_vars, self.degree, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self.scale(other)
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.num_vars != other.num_vars:
            raise VarCountMismatch(f"{self.num_vars} vs {other.num_vars} variables")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return HomogeneousPoly(self.num_vars, self.degree + other.degree, out)

    def __rmul__(self, other):
        if isinstance(other, (int, RationalFunction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "HomogeneousPoly":
        c = _coerce_coeff(c)
        if c.is_zero():
            return HomogeneousPoly.zero(self.num_vars, self.degree)
        return HomogeneousPoly(
            self.num_vars, self.degree, {m: v * c for m, v in self.terms.items()}
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = HomogeneousPoly(self.num_vars, 0, {(0,) * self.num_vars: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point) -> RationalFunction:
        """Exact substitution; accepts a ProjectivePoint or a coordinate list."""
        coords = point.coordinates if isinstance(point, ProjectivePoint) else tuple(point)
        if len(coords) != self.num_vars:
            raise VarCountMismatch(
                f"point has {len(coords)} coordinates, poly has {self.num_vars} vars"
            )
        coords = [_coerce_coeff(c) for c in coords]
        return eval_terms(self.terms, coords, power_table(coords))

    def __eq__(self, other):
        # Zero forms compare equal regardless of their declared degree.
        return (
            isinstance(other, HomogeneousPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __str__(self):
        return format_homogeneous(self)

    def __repr__(self):
        return f"HomogeneousPoly({self})"


class SparsePoly:
    """A possibly-inhomogeneous sparse polynomial; the dehomogenized side
    of the dehomogenize/homogenize round trip."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms):
        clean = {}
        for mono, c in terms.items():
            c = _coerce_coeff(c)
            if c.is_zero():
                continue
            if len(mono) != num_vars:
                raise VarCountMismatch(
                    f"monomial {mono} has {len(mono)} vars, expected {num_vars}"
                )
            clean[tuple(mono)] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("SparsePoly is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __str__(self):
        return _format_terms(self.terms)

    def __repr__(self):
        return f"SparsePoly({self})"


def dehomogenize(q: HomogeneousPoly, axis: int) -> SparsePoly:
    """Substitute X_axis = 1."""
    out = {}
    for mono, c in q.terms.items():
        m = tuple(0 if i == axis else e for i, e in enumerate(mono))
        s = out.get(m)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return SparsePoly(q.num_vars, out)


def homogenize(p: SparsePoly, axis: int) -> HomogeneousPoly:
    """Restore homogeneity with the minimal power of X_axis per term."""
    if not p.terms:
        return HomogeneousPoly.zero(p.num_vars)
    target = max(monomial_degree(m) for m in p.terms)
    out = {}
    for mono, c in p.terms.items():
        gap = target - monomial_degree(mono)
        m = tuple(e + gap if i == axis else e for i, e in enumerate(mono))
        s = out.get(m)
        s = c if s is None else s + c
        if not s.is_zero():
            out[m] = s
        else:
            out.pop(m, None)
    return HomogeneousPoly(p.num_vars, target, out)


def _format_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for mono, c in sorted(terms.items(), key=lambda kv: kv[0], reverse=True):
        ctext = str(c)
        negate = ctext.startswith("-") and "+" not in ctext and ctext.count("-") == 1
        if negate:
            sign, ctext = "-", ctext[1:]
        else:
            sign = "+"
        mtext = format_monomial(mono)
        if not mtext:
            body = ctext if "/" not in ctext or ctext.replace("/", "").isdigit() else f"({ctext})"
        elif ctext == "1":
            body = mtext
        else:
            if not ctext.lstrip("-").isdigit() and not ctext.startswith("("):
                ctext = f"({ctext})"
            body = f"{ctext}*{mtext}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def format_homogeneous(q: HomogeneousPoly) -> str:
    return _format_terms(q.terms)


def parse_poly(text: str, num_vars: int) -> HomogeneousPoly:
    """Parse the polynomial grammar and validate homogeneity."""
    from .parsing import parse_terms

    terms = parse_terms(text, num_vars)
    return HomogeneousPoly.from_terms(num_vars, terms)
