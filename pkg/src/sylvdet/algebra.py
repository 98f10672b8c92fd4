"""Exact rational scalars, dense univariate polynomials, interpolation,
and (q-)shifted factorials.

Every scalar in the package is a ``fractions.Fraction``. Fraction already
guarantees the canonical form this package relies on (positive denominator,
gcd-reduced after every operation) and its ``str()`` emits the wire format
used in reports: ``"3"``, ``"-4/7"``. It is aliased as :data:`Rational`.

Polynomials live in a single formal variable ``t`` and are stored dense,
coefficients ascending, with trailing zeros trimmed so that the leading
coefficient of a nonzero polynomial is never zero. The zero polynomial is
the empty coefficient tuple. Degrees in this package stay small (around 30),
so dense storage is the simple and fast choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DuplicateNode

Rational = Fraction
RationalLike = Union[Fraction, int]


def parse_rational(text: str) -> Rational:
    """Parse ``"3"``, ``"-4/7"`` (or any Fraction literal) exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value: RationalLike) -> str:
    """Canonical string form: integers without the ``/1`` tail."""
    return str(Fraction(value))


def _trim(coeffs: Iterable[RationalLike]) -> tuple[Rational, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial over Rational, coefficients ascending."""

    coeffs: tuple[Rational, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @property
    def degree(self) -> int:
        """Degree of the leading term; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)
        )

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | RationalLike) -> Polynomial:
        if not isinstance(other, Polynomial):
            s = Fraction(other)
            return Polynomial(c * s for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, t0: RationalLike) -> Rational:
        """Evaluate at t0 by Horner accumulation."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        """Return self(inner(t)) by Horner accumulation over polynomials."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial([c])
        return acc

    def compose_affine(self, scale: RationalLike, offset: RationalLike) -> Polynomial:
        """Return self(scale * (t + offset)) exactly."""
        s = Fraction(scale)
        return self.compose(Polynomial([s * Fraction(offset), s]))

    def to_strings(self) -> list[str]:
        """Ascending coefficient array of canonical rational strings."""
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{format_rational(mag)}*{var}"
            parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
        return " ".join(parts)


ZERO = Polynomial()
ONE = Polynomial([1])
T = Polynomial([0, 1])


def poly_from_roots(roots: Sequence[RationalLike]) -> Polynomial:
    """Monic polynomial vanishing exactly at the given root multiset.

    The empty list yields the constant 1 (empty product).
    """
    p = ONE
    for r in roots:
        p = p * Polynomial([-Fraction(r), 1])
    return p


def poly_eval(p: Polynomial, t0: RationalLike) -> Rational:
    """Exact value of p at t0."""
    return p(t0)


def interpolate(points: Sequence[tuple[RationalLike, RationalLike]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through all points.

    Newton's divided differences over exact rationals. Raises
    :class:`DuplicateNode` if two abscissae coincide.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation abscissae must be pairwise distinct")
    ys = [Fraction(y) for _, y in points]
    # divided-difference coefficients, computed in place
    dd = list(ys)
    for level in range(1, len(points)):
        for i in range(len(points) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    result = ZERO
    basis = ONE
    for i, c in enumerate(dd):
        result = result + basis * c
        basis = basis * Polynomial([-xs[i], 1])
    return result


def shifted_factorial(c: RationalLike, k: int) -> Rational:
    """Rising product (c)_k = c (c+1) ... (c+k-1); (c)_0 = 1."""
    if k < 0:
        raise ValueError("shifted factorial needs k >= 0")
    c = Fraction(c)
    out = Fraction(1)
    for j in range(k):
        out *= c + j
    return out


def q_pochhammer(a: RationalLike, q: RationalLike, k: int) -> Rational:
    """q-shifted factorial (a;q)_k = prod_{j=0}^{k-1} (1 - a q^j)."""
    if k < 0:
        raise ValueError("q-Pochhammer needs k >= 0")
    a, q = Fraction(a), Fraction(q)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(k):
        out *= 1 - a * power
        power *= q
    return out
