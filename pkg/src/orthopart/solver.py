"""Construction of mutually orthogonal plane triples through point supports.

Two support shapes occur: 3-2-1 (three points pin the first plane, a pair the
second, one point the third; the triple is unique and rational) and 2-2-2
(three pairs; the coupled quadratic system has its solutions in Q[sqrt(q)]
for a single shared radicand q, and there are either no real triples or a
conjugate pair of them).

Internally everything is integer arithmetic: a plane is an 8-tuple
(nx, nx', ny, ny', nz, nz', o, o') of ints meaning normal components
nx + nx'*sqrt(q) etc. and offset o + o'*sqrt(q).  Rational planes use q = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .errors import (
    AuxiliaryVectorsInvalid,
    CollinearPoints,
    DegenerateSupport,
    ZeroDifferenceVector,
)
from .exact import OrientedPlane, Point3, QuadExt, cross, dot, quadext_sign, vsub

# Auxiliary vector pairs tried in order for the 2-2-2 parametrization; a pair
# is usable when its span contains none of the three difference vectors.
_AUX_PAIRS = (
    ((1, 0, 0), (0, 1, 0)),
    ((1, 0, 0), (0, 0, 1)),
    ((0, 1, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 1)),
    ((1, 0, 1), (1, 1, 1)),
    ((1, 2, 4), (3, 5, 7)),
)


def _choose_aux(v1, v2, v3):
    def usable(a, b):
        ab = cross(a, b)
        return dot(v1, ab) != 0 and dot(v2, ab) != 0 and dot(v3, ab) != 0

    for a, b in _AUX_PAIRS:
        if usable(a, b):
            return a, b
    # The bad set is a proper algebraic subset, so a small deterministic grid
    # always contains a usable pair: with a=(1,k,k^2), b=(0,1,m) the span
    # contains v iff v1*(k*m - k^2) - v2*m + v3 = 0, which for fixed nonzero v
    # rules out at most 2 values of m per k.
    for k in range(16):
        for m in range(16):
            a, b = (1, k, k * k), (0, 1, m)
            if usable(a, b):
                return a, b
    raise AuxiliaryVectorsInvalid(f"no usable auxiliary pair for {v1}, {v2}, {v3}")


# ---------------------------------------------------------------------------
# Support descriptions and plane triples (public types).

@dataclass(frozen=True)
class SupportTriple:
    """Index sets of the points prescribed to lie on each of the three planes."""

    a1: tuple[int, ...]
    a2: tuple[int, ...]
    a3: tuple[int, ...]
    case_tag: str  # "321" or "222"

    def __post_init__(self):
        sizes = (len(self.a1), len(self.a2), len(self.a3))
        if self.case_tag == "321":
            if sizes != (3, 2, 1):
                raise ValueError(f"3-2-1 support must have sizes (3,2,1), got {sizes}")
        elif self.case_tag == "222":
            if sizes != (2, 2, 2):
                raise ValueError(f"2-2-2 support must have sizes (2,2,2), got {sizes}")
        else:
            raise ValueError(f"unknown case tag {self.case_tag!r}")
        all_ids = self.a1 + self.a2 + self.a3
        if len(set(all_ids)) != len(all_ids):
            raise ValueError("support index lists must be pairwise disjoint")

    @classmethod
    def make(cls, a1, a2, a3, case_tag) -> SupportTriple:
        a1, a2, a3 = tuple(sorted(a1)), tuple(sorted(a2)), tuple(sorted(a3))
        if case_tag == "222":
            a1, a2, a3 = sorted((a1, a2, a3))
        return cls(a1, a2, a3, case_tag)

    def groups(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.a1, self.a2, self.a3)


@dataclass(frozen=True)
class SolverCoefficients:
    """Coefficients of the 2-2-2 quadratic system (all exact integers).

    The three orthogonality equations are
        A[i]*t[i]*t[i+1] + B[i]*t[i] + C[i]*t[i+1] + D[i] = 0   (indices mod 3)
    and eliminating two unknowns leaves, for each index, the quadratic
        s[i]*t^2 - r[i]*t - c[i] = 0
    whose discriminant q = r[i]^2 + 4*s[i]*c[i] is independent of the index.
    """

    a: tuple[int, int, int]
    b: tuple[int, int, int]
    A: tuple[int, int, int]
    B: tuple[int, int, int]
    C: tuple[int, int, int]
    D: tuple[int, int, int]
    r: tuple[int, int, int]
    s: tuple[int, int, int]
    c: tuple[int, int, int]
    q: int


@dataclass(frozen=True)
class PlaneTriple:
    """Three mutually orthogonal oriented planes, plus solve metadata."""

    h1: OrientedPlane
    h2: OrientedPlane
    h3: OrientedPlane
    support: SupportTriple | None
    radicand: Fraction

    def __post_init__(self):
        planes = (self.h1, self.h2, self.h3)
        for i in range(3):
            for j in range(i + 1, 3):
                if quadext_sign(dot(planes[i].normal, planes[j].normal)) != 0:
                    raise ValueError("plane normals are not mutually orthogonal")

    def planes(self) -> tuple[OrientedPlane, OrientedPlane, OrientedPlane]:
        return (self.h1, self.h2, self.h3)


# ---------------------------------------------------------------------------
# Integer plane helpers.

def _pair_sign(x: int, y: int, q: int) -> int:
    """Sign of x + y*sqrt(q) for integers x, y and q >= 0."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if x > 0:
        if y > 0:
            return 1
        t = x * x - y * y * q
        return (t > 0) - (t < 0)
    if y < 0:
        return -1
    t = y * y * q - x * x
    return (t > 0) - (t < 0)


def _canonical_plane(plane: tuple, q: int) -> tuple:
    """Orient so the first nonzero normal coordinate is positive, strip content."""
    s = 0
    for k in (0, 2, 4):
        s = _pair_sign(plane[k], plane[k + 1], q)
        if s != 0:
            break
    if s < 0:
        plane = tuple(-t for t in plane)
    g = 0
    for t in plane:
        g = gcd(g, abs(t))
    if g > 1:
        plane = tuple(t // g for t in plane)
    return plane


def _plane_to_oriented(plane: tuple, q: int) -> OrientedPlane:
    qf = Fraction(q)
    mk = lambda x, y: QuadExt(x, y, qf)
    return OrientedPlane(
        (mk(plane[0], plane[1]), mk(plane[2], plane[3]), mk(plane[4], plane[5])),
        mk(plane[6], plane[7]),
    )


def _triples_to_public(raw_triples, q: int, support: SupportTriple | None):
    radicand = Fraction(q)
    out = []
    for planes in raw_triples:
        h1, h2, h3 = (_plane_to_oriented(p, q) for p in planes)
        out.append(PlaneTriple(h1, h2, h3, support, radicand))
    return out


# ---------------------------------------------------------------------------
# 3-2-1 case.

def _planes321_raw(a1, a2, a3):
    """Integer plane data for the unique triple through a 3-2-1 support.

    Returns three (normal, offset) pairs with int components.
    """
    p, pj, pk = a1
    n1 = cross(vsub(pj, p), vsub(pk, p))
    if n1 == (0, 0, 0):
        raise CollinearPoints(f"support points {p}, {pj}, {pk} are collinear")
    o1 = dot(n1, p)
    qa, qb = a2
    v2 = vsub(qb, qa)
    if v2 == (0, 0, 0):
        raise ZeroDifferenceVector(f"duplicate support point {qa}")
    n2 = cross(n1, v2)
    if n2 == (0, 0, 0):
        raise DegenerateSupport(
            "pair difference is perpendicular to the first plane; "
            "a one-parameter family of triples exists")
    o2 = dot(n2, qa)
    n3 = cross(n1, n2)
    o3 = dot(n3, a3[0])
    return (n1, o1), (n2, o2), (n3, o3)


def plane_through_3(p1: Point3, p2: Point3, p3: Point3) -> OrientedPlane:
    """The plane containing three non-collinear integer points."""
    n = cross(vsub(p2, p1), vsub(p3, p1))
    if n == (0, 0, 0):
        raise CollinearPoints(f"points {p1}, {p2}, {p3} are collinear")
    plane = _canonical_plane((n[0], 0, n[1], 0, n[2], 0, dot(n, p1), 0), 0)
    return _plane_to_oriented(plane, 0)


def planes_321(a1, a2, a3) -> PlaneTriple:
    """The unique orthogonal plane triple through a 3/2/1 point support.

    a1: three non-collinear points, a2: two points, a3: one point (a sequence
    holding it).  All plane coefficients are rational (radicand 0).
    """
    a1, a2, a3 = tuple(a1), tuple(a2), tuple(a3)
    raw = _planes321_raw(a1, a2, a3)
    planes = [_canonical_plane((n[0], 0, n[1], 0, n[2], 0, o, 0), 0) for n, o in raw]
    (t,) = _triples_to_public([planes], 0, None)
    return t


# ---------------------------------------------------------------------------
# 2-2-2 case.

def _cyclic_rsc(A, B, C, D, i):
    i1, i2 = (i + 1) % 3, (i + 2) % 3
    r = (A[i] * B[i2] * D[i1] - A[i] * C[i1] * D[i2] + A[i1] * B[i] * D[i2]
         + A[i1] * C[i2] * D[i] - A[i2] * B[i1] * D[i] + A[i2] * C[i] * D[i1]
         - B[i] * B[i1] * B[i2] - C[i] * C[i1] * C[i2])
    s = -(A[i] * A[i2] * D[i1] - A[i] * C[i1] * C[i2]
          + A[i1] * B[i] * C[i2] - A[i2] * B[i] * B[i1])
    c = (A[i1] * D[i] * D[i2] - B[i1] * B[i2] * D[i]
         + B[i2] * C[i] * D[i1] - C[i] * C[i1] * D[i2])
    return r, s, c


def solver_coefficients(a1, a2, a3) -> SolverCoefficients:
    """The quadratic-system coefficients for a 2-2-2 support (three point pairs)."""
    vs = []
    for pair in (a1, a2, a3):
        pa, pb = pair
        v = vsub(pb, pa)
        if v == (0, 0, 0):
            raise ZeroDifferenceVector(f"duplicate support point {pa}")
        vs.append(v)
    a, b = _choose_aux(*vs)
    av = [cross(a, v) for v in vs]
    bv = [cross(b, v) for v in vs]
    A = tuple(dot(av[i], av[(i + 1) % 3]) for i in range(3))
    B = tuple(dot(av[i], bv[(i + 1) % 3]) for i in range(3))
    C = tuple(dot(bv[i], av[(i + 1) % 3]) for i in range(3))
    D = tuple(dot(bv[i], bv[(i + 1) % 3]) for i in range(3))
    r, s, c = zip(*(_cyclic_rsc(A, B, C, D, i) for i in range(3)))
    q = r[0] * r[0] + 4 * s[0] * c[0]
    for i in (1, 2):
        if r[i] * r[i] + 4 * s[i] * c[i] != q:
            raise ArithmeticError("discriminant is not index-independent")
    return SolverCoefficients(a, b, A, B, C, D, tuple(r), tuple(s), tuple(c), q)


def _quad_cross(u, v, q):
    """Cross product of a Z[sqrt(q)]-vector u=((x,y),...) with an int vector v."""
    (x0, y0), (x1, y1), (x2, y2) = u
    return (
        (x1 * v[2] - x2 * v[1], y1 * v[2] - y2 * v[1]),
        (x2 * v[0] - x0 * v[2], y2 * v[0] - y0 * v[2]),
        (x0 * v[1] - x1 * v[0], y0 * v[1] - y1 * v[0]),
    )


def _quad_cross2(u, w, q):
    """Cross product of two Z[sqrt(q)]-vectors."""
    def mul(p, r):
        return (p[0] * r[0] + p[1] * r[1] * q, p[0] * r[1] + p[1] * r[0])

    def sub(p, r):
        return (p[0] - r[0], p[1] - r[1])

    return (
        sub(mul(u[1], w[2]), mul(u[2], w[1])),
        sub(mul(u[2], w[0]), mul(u[0], w[2])),
        sub(mul(u[0], w[1]), mul(u[1], w[0])),
    )


def _quad_dot(u, w, q):
    X = Y = 0
    for (x1, y1), (x2, y2) in zip(u, w):
        X += x1 * x2 + y1 * y2 * q
        Y += x1 * y2 + y1 * x2
    return X, Y


def _quad_dot_point(u, p, q):
    X = Y = 0
    for (x1, y1), c in zip(u, p):
        X += x1 * c
        Y += y1 * c
    return X, Y


def _is_zero_quadvec(u) -> bool:
    return all(x == 0 and y == 0 for x, y in u)


def _fold_if_square(u, sq):
    return tuple((x + y * sq, 0) for x, y in u)


def _candidate_normals_from_coeffs(co: SolverCoefficients, av, bv):
    """Per-index candidate normal vectors in Z[sqrt(q)] pair form.

    For index i the quadratic is s[i]*t^2 - r[i]*t - c[i] = 0; its two roots
    give normals (r[i] +- sqrt(q)) * av[i] + 2*s[i] * bv[i].  When s[i] = 0
    the quadratic degenerates: the surviving finite root is t = -c[i]/r[i]
    (normal -c[i]*av[i] + r[i]*bv[i]) and the lost projective root is the
    direction av[i] itself.
    """
    q = co.q
    sq = isqrt(q) if q >= 0 else 0
    is_square = q >= 0 and sq * sq == q
    cands = []
    for i in range(3):
        r, s, c = co.r[i], co.s[i], co.c[i]
        ci = []
        if s != 0:
            for eps in (1, -1):
                u = tuple((r * ax + 2 * s * bx, eps * ax) for ax, bx in zip(av[i], bv[i]))
                if is_square:
                    u = _fold_if_square(u, sq)
                if not _is_zero_quadvec(u):
                    ci.append(u)
        else:
            ci.append(tuple((ax, 0) for ax in av[i]))
            u = tuple((-c * ax + r * bx, 0) for ax, bx in zip(av[i], bv[i]))
            if not _is_zero_quadvec(u):
                ci.append(u)
        cands.append(ci)
    return cands, (0 if is_square else q)


def _reduction_candidates(vs, a, b):
    """Fallback candidate generation when a per-index resultant vanishes.

    Eliminating u2, u3 directly (u_{i} must span v_i-perp intersected with
    u1-perp) leaves a single quadratic form on the plane v1-perp:
        F(u) = (u.u)(v2.v3) - (u.v2)(u.v3) = 0.
    The anchor index is rotated until the form is not identically zero.
    """
    for anchor in range(3):
        va = vs[anchor]
        vj = vs[(anchor + 1) % 3]
        vk = vs[(anchor + 2) % 3]
        aa, bb = cross(a, va), cross(b, va)
        jk = dot(vj, vk)
        P = dot(aa, aa) * jk - dot(aa, vj) * dot(aa, vk)
        Q = (2 * dot(aa, bb) * jk - dot(aa, vj) * dot(bb, vk)
             - dot(bb, vj) * dot(aa, vk))
        R = dot(bb, bb) * jk - dot(bb, vj) * dot(bb, vk)
        if (P, Q, R) != (0, 0, 0):
            break
    else:
        raise DegenerateSupport(
            "every anchor quadratic vanishes identically; infinitely many "
            "orthogonal plane triples contain the supports")
    disc = Q * Q - 4 * P * R
    if disc < 0:
        return [], 0
    sq = isqrt(disc)
    is_square = sq * sq == disc
    q = 0 if is_square else disc
    roots = []
    if P != 0:
        for eps in (1, -1):
            u = tuple((-Q * ax + 2 * P * bx, eps * ax) for ax, bx in zip(aa, bb))
            if is_square:
                u = _fold_if_square(u, sq)
            if not _is_zero_quadvec(u):
                roots.append(u)
    elif Q != 0:
        roots.append(tuple((ax, 0) for ax in aa))
        roots.append(tuple((-R * ax + Q * bx, 0) for ax, bx in zip(aa, bb)))
    else:  # P = Q = 0, R != 0: double root in the direction of aa
        roots.append(tuple((ax, 0) for ax in aa))
    triples = []
    for ua in roots:
        uj = _quad_cross(ua, vj, q)
        uk = _quad_cross(ua, vk, q)
        if _is_zero_quadvec(uj) and _is_zero_quadvec(uk):
            continue
        if _is_zero_quadvec(uj):
            uj = _quad_cross2(ua, uk, q)
        elif _is_zero_quadvec(uk):
            uk = _quad_cross2(ua, uj, q)
        triple = [None, None, None]
        triple[anchor] = ua
        triple[(anchor + 1) % 3] = uj
        triple[(anchor + 2) % 3] = uk
        triples.append(tuple(triple))
    return triples, q


def _planes222_raw(a1, a2, a3):
    """All orthogonal plane triples through a 2-2-2 support, integer form.

    Returns (list of plane triples, q).  Each triple is three canonical
    8-tuples; the list is sorted for deterministic output.
    """
    pairs = (tuple(a1), tuple(a2), tuple(a3))
    vs = []
    for pa, pb in pairs:
        v = vsub(pb, pa)
        if v == (0, 0, 0):
            raise ZeroDifferenceVector(f"duplicate support point {pa}")
        vs.append(v)
    co = solver_coefficients(*pairs)
    av = [cross(co.a, v) for v in vs]
    bv = [cross(co.b, v) for v in vs]

    if any(co.r[i] == 0 and co.s[i] == 0 and co.c[i] == 0 for i in range(3)):
        candidate_triples, q = _reduction_candidates(vs, co.a, co.b)
    elif co.q < 0:
        return [], co.q
    else:
        cands, q = _candidate_normals_from_coeffs(co, av, bv)
        candidate_triples = list(product(*cands))

    seen = set()
    result = []
    for us in candidate_triples:
        if any(_is_zero_quadvec(u) for u in us):
            continue
        if _quad_dot(us[0], us[1], q) != (0, 0):
            continue
        if _quad_dot(us[0], us[2], q) != (0, 0):
            continue
        if _quad_dot(us[1], us[2], q) != (0, 0):
            continue
        ok = True
        for u, v in zip(us, vs):
            if _quad_dot_point(u, v, q) != (0, 0):
                ok = False
                break
        if not ok:
            continue
        planes = []
        for u, (pa, _) in zip(us, pairs):
            ox, oy = _quad_dot_point(u, pa, q)
            flat = (u[0][0], u[0][1], u[1][0], u[1][1], u[2][0], u[2][1], ox, oy)
            planes.append(_canonical_plane(flat, q))
        key = tuple(sorted(planes))
        if key not in seen:
            seen.add(key)
            result.append(tuple(planes))
    result.sort()
    return result, q


def planes_222(a1, a2, a3) -> list[PlaneTriple]:
    """All orthogonal plane triples through three point pairs.

    Returns the empty list when the shared discriminant q is negative (no
    real solution).  Otherwise the real solutions come in a conjugate pair
    over Q[sqrt(q)], so generically the list has two entries (which may
    coincide when q = 0).
    """
    raw, q = _planes222_raw(a1, a2, a3)
    return _triples_to_public(raw, max(q, 0) if raw else 0, None)


def validate_triple(triple: PlaneTriple, supports) -> bool:
    """Exact check: pairwise orthogonal normals, every support point on its plane."""
    planes = triple.planes()
    for i in range(3):
        for j in range(i + 1, 3):
            if quadext_sign(dot(planes[i].normal, planes[j].normal)) != 0:
                return False
    for plane, pts in zip(planes, supports):
        for p in pts:
            if not plane.contains(p):
                return False
    return True
