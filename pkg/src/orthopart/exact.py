"""Exact scalar, vector and polynomial arithmetic.

The base scalar is the stdlib ``Fraction`` (arbitrary precision, always in
lowest terms).  On top of it sits ``QuadExt``, an element x + y*sqrt(q) of the
quadratic extension Q[sqrt(q)] with a shared nonnegative rational radicand q.
Every sign decision in the package ultimately reduces to integer comparisons
here; no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import DegenerateBasis, IdenticallyZero, InvalidRadicand, RadicandMismatch

Rational = Fraction

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QuadExt"]


def rational_sign(x: RationalLike) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _exact_sqrt(x: Fraction) -> Fraction | None:
    """Return sqrt(x) if x is a perfect square of a rational, else None."""
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    if rn * rn != x.numerator:
        return None
    rd = isqrt(x.denominator)
    if rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


class QuadExt:
    """An element x + y*sqrt(q) of Q[sqrt(q)], q >= 0 rational.

    Values are immutable and kept canonical: q = 0 whenever y = 0, and a
    perfect-square radicand is folded into the rational part at construction,
    so a value is rational exactly when ``y == 0``.  Combining two values
    whose (nonzero) radicands differ raises ``RadicandMismatch``; a rational
    value (y = 0) combines with anything.
    """

    __slots__ = ("x", "y", "q")

    def __init__(self, x: RationalLike = 0, y: RationalLike = 0, q: RationalLike = 0):
        x = Fraction(x)
        y = Fraction(y)
        q = Fraction(q)
        if q < 0:
            raise InvalidRadicand(f"negative radicand {q}")
        if y == 0:
            q = Fraction(0)
        elif q == 0:
            y = Fraction(0)
        else:
            root = _exact_sqrt(q)
            if root is not None:
                x += y * root
                y = Fraction(0)
                q = Fraction(0)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def _raw(cls, x: Fraction, y: Fraction, q: Fraction) -> QuadExt:
        """Internal fast path: trusts canonical arguments."""
        self = object.__new__(cls)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "q", q)
        return self

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def _coerce(self, other: ScalarLike) -> QuadExt:
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt._raw(Fraction(other), Fraction(0), Fraction(0))
        return NotImplemented  # type: ignore[return-value]

    def _common_q(self, other: QuadExt) -> Fraction:
        if self.y == 0:
            return other.q
        if other.y == 0:
            return self.q
        if self.q != other.q:
            raise RadicandMismatch(f"cannot combine radicands {self.q} and {other.q}")
        return self.q

    def __add__(self, other: ScalarLike) -> QuadExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = self._common_q(other)
        return QuadExt._raw(self.x + other.x, self.y + other.y, q)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> QuadExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = self._common_q(other)
        return QuadExt._raw(self.x - other.x, self.y - other.y, q)

    def __rsub__(self, other: ScalarLike) -> QuadExt:
        return (-self) + other

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(-self.x, -self.y, self.q)

    def __mul__(self, other: ScalarLike) -> QuadExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = self._common_q(other)
        x = self.x * other.x + self.y * other.y * q
        y = self.x * other.y + self.y * other.x
        if y == 0:
            q = Fraction(0)
        return QuadExt._raw(x, y, q)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> QuadExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = self._common_q(other)
        # 1/(x + y*sqrt(q)) = (x - y*sqrt(q)) / (x^2 - y^2 q); the norm is
        # nonzero for any nonzero canonical value (a rational sqrt(q) would
        # have been folded away).
        norm = other.x * other.x - other.y * other.y * q
        if norm == 0:
            raise ZeroDivisionError("division by zero QuadExt")
        inv = QuadExt._raw(other.x / norm, -other.y / norm, q)
        return self * inv

    def __rtruediv__(self, other: ScalarLike) -> QuadExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self.x, -self.y, self.q)

    def sign(self) -> int:
        x, y = self.x, self.y
        if y == 0:
            return rational_sign(x)
        if x == 0:
            return rational_sign(y)
        if x > 0 and y > 0:
            return 1
        if x < 0 and y < 0:
            return -1
        s = rational_sign(x * x - y * y * self.q)
        return s if x > 0 else -s

    def __bool__(self) -> bool:
        return self.sign() != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadExt):
            return self.x == other.x and self.y == other.y and self.q == other.q
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.q))

    def __lt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: ScalarLike) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        if self.y == 0:
            return float(self.x)
        return float(self.x) + float(self.y) * float(self.q) ** 0.5

    def __repr__(self) -> str:
        return f"QuadExt({self.x!r}, {self.y!r}, {self.q!r})"

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        return f"{self.x} + {self.y}*sqrt({self.q})"


def quadext_sign(e: QuadExt) -> int:
    """Exact sign (-1, 0, +1) of the real number x + y*sqrt(q)."""
    if not isinstance(e, QuadExt):
        return rational_sign(e)
    if e.q < 0:  # unreachable for values built through __init__; kept as a guard
        raise InvalidRadicand(f"negative radicand {e.q}")
    return e.sign()


# ---------------------------------------------------------------------------
# 3-vectors.  Vectors are plain 3-tuples of scalars (int, Fraction or QuadExt,
# homogeneous within one vector); points are 3-tuples of ints.

Vec3 = tuple
Point3 = tuple


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def vscale(c, u):
    return (c * u[0], c * u[1], c * u[2])


def is_zero_vec(u) -> bool:
    return all(quadext_sign(c) == 0 for c in u)


@dataclass(frozen=True)
class OrientedPlane:
    """The plane {p : dot(normal, p) = offset}, with QuadExt coefficients.

    The open half-space where dot(normal, p) > offset is the positive side.
    Side queries are invariant under scaling (normal, offset) by a positive
    scalar.
    """

    normal: tuple[QuadExt, QuadExt, QuadExt]
    offset: QuadExt

    def __post_init__(self):
        if is_zero_vec(self.normal):
            raise ValueError("plane normal must be nonzero")

    @classmethod
    def from_coefficients(cls, nx, ny, nz, offset) -> OrientedPlane:
        wrap = lambda v: v if isinstance(v, QuadExt) else QuadExt(v)
        return cls((wrap(nx), wrap(ny), wrap(nz)), wrap(offset))

    def side_value(self, p: Point3) -> QuadExt:
        n = self.normal
        return n[0] * p[0] + n[1] * p[1] + n[2] * p[2] - self.offset

    def contains(self, p: Point3) -> bool:
        return quadext_sign(self.side_value(p)) == 0


def side_of_plane(p: Point3, plane: OrientedPlane) -> int:
    """Exact sign of dot(normal, p) - offset: +1, 0 or -1."""
    return quadext_sign(plane.side_value(p))


# ---------------------------------------------------------------------------
# Cubic polynomials over Q[sqrt(q)] and Sturm-sequence root counting.

@dataclass(frozen=True)
class CubicPoly:
    """c3*t^3 + c2*t^2 + c1*t + c0 with QuadExt coefficients (c3 may be 0)."""

    c3: QuadExt
    c2: QuadExt
    c1: QuadExt
    c0: QuadExt

    @classmethod
    def from_coefficients(cls, c3, c2, c1, c0) -> CubicPoly:
        wrap = lambda v: v if isinstance(v, QuadExt) else QuadExt(v)
        return cls(wrap(c3), wrap(c2), wrap(c1), wrap(c0))

    def coefficients_ascending(self) -> list[QuadExt]:
        return [self.c0, self.c1, self.c2, self.c3]

    def evaluate(self, t) -> QuadExt:
        acc = QuadExt(0)
        for c in (self.c3, self.c2, self.c1, self.c0):
            acc = acc * t + c
        return acc


def _trim(coeffs: list[QuadExt]) -> list[QuadExt]:
    end = len(coeffs)
    while end > 0 and quadext_sign(coeffs[end - 1]) == 0:
        end -= 1
    return coeffs[:end]


def _poly_derivative(coeffs: list[QuadExt]) -> list[QuadExt]:
    return [coeffs[k] * k for k in range(1, len(coeffs))]


def _poly_eval(coeffs: list[QuadExt], t) -> QuadExt:
    acc = QuadExt(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_rem(num: list[QuadExt], den: list[QuadExt]) -> list[QuadExt]:
    """Remainder of polynomial division over the field Q[sqrt(q)]."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    while len(num) - 1 >= dn and _trim(num):
        num = _trim(num)
        if len(num) - 1 < dn:
            break
        factor = num[-1] / lead
        shift = len(num) - 1 - dn
        for k in range(dn + 1):
            num[shift + k] = num[shift + k] - factor * den[k]
        num = num[:-1]
    return _trim(num)


def _poly_monic(coeffs: list[QuadExt]) -> list[QuadExt]:
    lead = coeffs[-1]
    return [c / lead for c in coeffs]


def _poly_gcd(f: list[QuadExt], g: list[QuadExt]) -> list[QuadExt]:
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _poly_rem(f, g)
    return _poly_monic(f) if f else f


def _squarefree_part(coeffs: list[QuadExt]) -> list[QuadExt]:
    deriv = _trim(_poly_derivative(coeffs))
    if not deriv:
        return _poly_monic(coeffs)
    g = _poly_gcd(coeffs, deriv)
    if len(g) == 1:
        return coeffs
    # exact division coeffs / g
    quotient: list[QuadExt] = []
    num = list(coeffs)
    dn = len(g) - 1
    lead = g[-1]
    while len(num) - 1 >= dn:
        factor = num[-1] / lead
        quotient.append(factor)
        shift = len(num) - 1 - dn
        for k in range(dn + 1):
            num[shift + k] = num[shift + k] - factor * g[k]
        num = num[:-1]
    quotient.reverse()
    return quotient


def _sturm_chain(coeffs: list[QuadExt]) -> list[list[QuadExt]]:
    chain = [coeffs]
    deriv = _trim(_poly_derivative(coeffs))
    if deriv:
        chain.append(deriv)
        while len(chain[-1]) > 1:
            rem = _poly_rem(chain[-2], chain[-1])
            if not rem:
                break
            chain.append([-c for c in rem])
    return chain


def _sign_variations(signs: list[int]) -> int:
    variations = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            variations += 1
        prev = s
    return variations


def count_real_roots_geq(coeffs_ascending: list[QuadExt], m) -> int:
    """Distinct real roots t >= m of the polynomial, by Sturm's theorem."""
    coeffs = _trim(list(coeffs_ascending))
    if not coeffs:
        raise IdenticallyZero("polynomial has all coefficients zero")
    if len(coeffs) == 1:
        return 0
    sf = _squarefree_part(coeffs)
    chain = _sturm_chain(sf)
    at_m = [quadext_sign(_poly_eval(p, m)) for p in chain]
    # sign at +infinity is the sign of the leading coefficient
    at_inf = [quadext_sign(p[-1]) for p in chain]
    count_open = _sign_variations(at_m) - _sign_variations(at_inf)
    if quadext_sign(_poly_eval(sf, m)) == 0:
        count_open += 1
    return count_open


def cubic_roots_at_least(f: CubicPoly, m: RationalLike) -> int:
    """Number of distinct real roots t >= m of f (multiple roots counted once)."""
    return count_real_roots_geq(f.coefficients_ascending(), Fraction(m))


def alignment_within_basis(u1, u2, u3, v) -> bool:
    """Whether some basis direction u_i satisfies 3*<u_i,v>^2 >= |u_i|^2 |v|^2.

    This is the squared, scale-free form of the guarantee that a unit vector
    cannot be almost-orthogonal to all members of an orthogonal basis of R^3:
    max_i |<u_i, v>| / (|u_i| |v|) >= 1/sqrt(3).  All arithmetic is rational.
    """
    basis = (u1, u2, u3)
    for u in basis:
        if all(c == 0 for c in u):
            raise DegenerateBasis("zero basis vector")
    for a in range(3):
        for b in range(a + 1, 3):
            if dot(basis[a], basis[b]) != 0:
                raise DegenerateBasis(f"basis vectors {a} and {b} are not orthogonal")
    if all(c == 0 for c in v):
        raise DegenerateBasis("zero direction vector")
    vv = dot(v, v)
    for u in basis:
        uv = dot(u, v)
        if 3 * uv * uv >= dot(u, u) * vv:
            return True
    return False
