"""Deterministic geometric predicates and measures.

Simplex volumes, point-in-simplex and convex-position tests, normal-offset
coordinates of the line/plane/hyperplane through sampled points, circular
segment areas, and chord lengths of 2D convex bodies.  Everything here is
pure and stateless; the *_many variants are vectorized twins of the scalar
predicates used by the Monte Carlo estimators (the test suite pins them to
the scalar semantics).

Orientation predicates compare raw determinants against EPS = 1e-12; all
inputs are O(1)-scaled, so double precision suffices.  Degenerate point
configurations make the convex-position predicates return False instead of
raising, since they occur with probability zero under sampling and must not
abort long runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS = 1e-12

TWO_PI = 2.0 * math.pi


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class DegenerateGeometryError(GeometryError):
    """Configuration without a unique answer (collinear, coincident, flat)."""


# ---------------------------------------------------------------------------
# simplex measures and orientation signs
# ---------------------------------------------------------------------------

def _orient2(a, b, c) -> float:
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _orient3(a, b, c, d) -> float:
    """Six times the signed volume of tetrahedron abcd."""
    u0, u1, u2 = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    v0, v1, v2 = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    w0, w1, w2 = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return (
        u0 * (v1 * w2 - v2 * w1)
        - u1 * (v0 * w2 - v2 * w0)
        + u2 * (v0 * w1 - v1 * w0)
    )


def triangle_area(a, b, c) -> float:
    """Area of the triangle abc in the plane (0 for collinear points)."""
    return 0.5 * abs(_orient2(a, b, c))


def tetra_volume(a, b, c, d) -> float:
    """Volume of the tetrahedron abcd in space (0 for coplanar points)."""
    return abs(_orient3(a, b, c, d)) / 6.0


def point_in_triangle(q, a, b, c) -> str:
    """Classify q against triangle abc: 'inside', 'outside' or 'boundary'."""
    orient = _orient2(a, b, c)
    if abs(orient) <= EPS:
        raise DegenerateGeometryError("triangle is degenerate (collinear vertices)")
    s = 1.0 if orient > 0 else -1.0
    d1 = s * _orient2(a, b, q)
    d2 = s * _orient2(b, c, q)
    d3 = s * _orient2(c, a, q)
    low = min(d1, d2, d3)
    if low > EPS:
        return "inside"
    if low < -EPS:
        return "outside"
    return "boundary"


def point_in_tetra(q, a, b, c, d) -> str:
    """Classify q against tetrahedron abcd: 'inside', 'outside' or 'boundary'."""
    orient = _orient3(a, b, c, d)
    if abs(orient) <= EPS:
        raise DegenerateGeometryError("tetrahedron is degenerate (coplanar vertices)")
    s = 1.0 if orient > 0 else -1.0
    signs = (
        s * _orient3(q, b, c, d),
        s * _orient3(a, q, c, d),
        s * _orient3(a, b, q, d),
        s * _orient3(a, b, c, q),
    )
    low = min(signs)
    if low > EPS:
        return "inside"
    if low < -EPS:
        return "outside"
    return "boundary"


def convex_position_4(pts) -> bool:
    """True iff no point of the quadruple lies strictly inside the others' triangle.

    Quadruples with any three collinear points are reported as not in convex
    position by convention.
    """
    if len(pts) != 4:
        raise GeometryError("convex_position_4 needs exactly 4 points")
    for i in range(4):
        rest = [pts[j] for j in range(4) if j != i]
        if abs(_orient2(*rest)) <= EPS:
            return False
    for i in range(4):
        rest = [pts[j] for j in range(4) if j != i]
        if point_in_triangle(pts[i], *rest) == "inside":
            return False
    return True


def convex_position_5_3d(pts) -> bool:
    """True iff no point of the 5-tuple lies strictly inside the others' tetrahedron.

    Configurations with any four coplanar points are not in convex position
    by convention.
    """
    if len(pts) != 5:
        raise GeometryError("convex_position_5_3d needs exactly 5 points")
    for i in range(5):
        rest = [pts[j] for j in range(5) if j != i]
        if abs(_orient3(*rest)) <= EPS:
            return False
    for i in range(5):
        rest = [pts[j] for j in range(5) if j != i]
        if point_in_tetra(pts[i], *rest) == "inside":
            return False
    return True


# ---------------------------------------------------------------------------
# normal-offset coordinates of flats through sampled points
# ---------------------------------------------------------------------------

def _first_nonzero_positive(normal: np.ndarray) -> np.ndarray:
    """Deterministic normal direction for flats through the origin."""
    for component in normal:
        if component > EPS:
            return normal
        if component < -EPS:
            return -normal
    return normal


def _wrap_angle(angle: float) -> float:
    """Map to [0, 2 pi); the modulo alone can round up to exactly 2 pi."""
    wrapped = angle % TWO_PI
    return 0.0 if wrapped >= TWO_PI else wrapped


@dataclass(frozen=True)
class LineCoords2:
    """Line {x : x . (cos theta, sin theta) = p} with p >= 0, theta in [0, 2 pi)."""

    p: float
    theta: float

    @property
    def normal(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    def signed_distance(self, point) -> float:
        n = self.normal
        return point[0] * n[0] + point[1] * n[1] - self.p


@dataclass(frozen=True)
class PlaneCoords3:
    """Plane {x : x . n = p}, n = (cos t sin f, sin t sin f, cos f)."""

    p: float
    theta: float
    phi: float

    @property
    def normal(self) -> np.ndarray:
        sf = math.sin(self.phi)
        return np.array(
            [math.cos(self.theta) * sf, math.sin(self.theta) * sf, math.cos(self.phi)]
        )

    def signed_distance(self, point) -> float:
        return float(np.dot(np.asarray(point, dtype=float), self.normal) - self.p)


@dataclass(frozen=True)
class HyperplaneCoords4:
    """Hyperplane {x : x . n = p} with the 4D spherical normal (theta, phi, psi)."""

    p: float
    theta: float
    phi: float
    psi: float

    @property
    def normal(self) -> np.ndarray:
        sf, cf = math.sin(self.phi), math.cos(self.phi)
        sp, cp = math.sin(self.psi), math.cos(self.psi)
        return np.array(
            [
                math.cos(self.theta) * sf * sp,
                math.sin(self.theta) * sf * sp,
                cf * sp,
                cp,
            ]
        )

    def signed_distance(self, point) -> float:
        return float(np.dot(np.asarray(point, dtype=float), self.normal) - self.p)


def line_from_points(p1, p2) -> LineCoords2:
    """Normal-offset coordinates of the unique line through two distinct points."""
    dx = p2[0] - p1[0]
    dy = p2[1] - p1[1]
    length = math.hypot(dx, dy)
    if length <= EPS:
        raise DegenerateGeometryError("coincident points do not define a line")
    normal = np.array([dy / length, -dx / length])
    p = normal[0] * p1[0] + normal[1] * p1[1]
    if p < 0.0:
        normal = -normal
        p = -p
    if p <= EPS:
        normal = _first_nonzero_positive(normal)
        p = abs(p)
    theta = _wrap_angle(math.atan2(normal[1], normal[0]))
    return LineCoords2(p=p, theta=theta)


def flat_from_points(pts) -> PlaneCoords3 | HyperplaneCoords4:
    """Normal-offset coordinates of the plane (3 points in R^3) or hyperplane
    (4 points in R^4) through affinely independent points."""
    pts = [np.asarray(p, dtype=float) for p in pts]
    if len(pts) == 3:
        return _plane_from_points(*pts)
    if len(pts) == 4:
        return _hyperplane_from_points(*pts)
    raise GeometryError("flat_from_points needs 3 points in R^3 or 4 in R^4")


def _plane_from_points(a, b, c) -> PlaneCoords3:
    normal = np.cross(b - a, c - a)
    norm = float(np.linalg.norm(normal))
    if norm <= EPS:
        raise DegenerateGeometryError("collinear points do not define a plane")
    normal = normal / norm
    p = float(np.dot(normal, a))
    if p < 0.0:
        normal = -normal
        p = -p
    if p <= EPS:
        normal = _first_nonzero_positive(normal)
        p = abs(p)
    phi = math.acos(max(-1.0, min(1.0, normal[2])))
    if math.sin(phi) <= 1e-15:
        theta = 0.0
    else:
        theta = _wrap_angle(math.atan2(normal[1], normal[0]))
    return PlaneCoords3(p=p, theta=theta, phi=phi)


def _cross4(u, v, w) -> np.ndarray:
    """Vector orthogonal to u, v, w in R^4 (cofactor expansion)."""
    m = np.array([u, v, w])
    return np.array(
        [
            np.linalg.det(m[:, [1, 2, 3]]),
            -np.linalg.det(m[:, [0, 2, 3]]),
            np.linalg.det(m[:, [0, 1, 3]]),
            -np.linalg.det(m[:, [0, 1, 2]]),
        ]
    )


def _hyperplane_from_points(a, b, c, d) -> HyperplaneCoords4:
    normal = _cross4(b - a, c - a, d - a)
    norm = float(np.linalg.norm(normal))
    if norm <= EPS:
        raise DegenerateGeometryError("affinely dependent points do not define a hyperplane")
    normal = normal / norm
    p = float(np.dot(normal, a))
    if p < 0.0:
        normal = -normal
        p = -p
    if p <= EPS:
        normal = _first_nonzero_positive(normal)
        p = abs(p)
    psi = math.acos(max(-1.0, min(1.0, normal[3])))
    sp = math.sin(psi)
    if sp <= 1e-15:
        return HyperplaneCoords4(p=p, theta=0.0, phi=0.0, psi=psi)
    phi = math.acos(max(-1.0, min(1.0, normal[2] / sp)))
    if math.sin(phi) * sp <= 1e-15:
        theta = 0.0
    else:
        theta = _wrap_angle(math.atan2(normal[1], normal[0]))
    return HyperplaneCoords4(p=p, theta=theta, phi=phi, psi=psi)


# ---------------------------------------------------------------------------
# disk segments and convex bodies
# ---------------------------------------------------------------------------

def segment_area(h: float) -> float:
    """Area of the smaller unit-disk segment cut off by a chord at offset h."""
    if h < 0.0 or h > 1.0:
        raise ValueError(f"segment_area needs h in [0, 1], got {h}")
    return 0.5 * math.pi - h * math.sqrt(max(0.0, 1.0 - h * h)) - math.asin(h)


@dataclass(frozen=True)
class ConvexBody2:
    """Unit disk or strictly convex counter-clockwise polygon in the plane."""

    kind: str
    vertices: tuple[tuple[float, float], ...] | None = None

    @classmethod
    def unit_disk(cls) -> "ConvexBody2":
        return cls(kind="unit-disk")

    @classmethod
    def polygon(cls, vertices) -> "ConvexBody2":
        verts = tuple((float(x), float(y)) for x, y in vertices)
        if len(verts) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        m = len(verts)
        doubled_area = 0.0
        for i in range(m):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % m]
            doubled_area += x1 * y2 - y1 * x2
        if doubled_area <= EPS:
            raise GeometryError("polygon must be counter-clockwise with positive area")
        for i in range(m):
            turn = _orient2(verts[i], verts[(i + 1) % m], verts[(i + 2) % m])
            if turn <= EPS:
                raise GeometryError("polygon must be strictly convex")
        return cls(kind="polygon", vertices=verts)

    @classmethod
    def unit_square(cls) -> "ConvexBody2":
        return cls.polygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)])

    @classmethod
    def regular_polygon(cls, sides: int, radius: float = 1.0) -> "ConvexBody2":
        angles = TWO_PI * np.arange(sides) / sides
        return cls.polygon(zip(radius * np.cos(angles), radius * np.sin(angles)))

    @property
    def area(self) -> float:
        if self.kind == "unit-disk":
            return math.pi
        verts = self.vertices
        m = len(verts)
        total = 0.0
        for i in range(m):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % m]
            total += x1 * y2 - y1 * x2
        return 0.5 * total

    @property
    def perimeter(self) -> float:
        if self.kind == "unit-disk":
            return TWO_PI
        verts = self.vertices
        m = len(verts)
        return sum(
            math.hypot(verts[(i + 1) % m][0] - verts[i][0], verts[(i + 1) % m][1] - verts[i][1])
            for i in range(m)
        )

    def contains(self, point) -> bool:
        if self.kind == "unit-disk":
            return point[0] ** 2 + point[1] ** 2 <= 1.0
        verts = self.vertices
        m = len(verts)
        return all(
            _orient2(verts[i], verts[(i + 1) % m], point) >= -EPS for i in range(m)
        )


def chord_length(body: ConvexBody2, line: LineCoords2) -> float:
    """Length of the intersection of the line with the body (0 if disjoint)."""
    if body.kind == "unit-disk":
        if line.p >= 1.0:
            return 0.0
        return 2.0 * math.sqrt(1.0 - line.p * line.p)
    verts = np.asarray(body.vertices)
    n = np.array([math.cos(line.theta), math.sin(line.theta)])
    t = np.array([-n[1], n[0]])
    anchor = line.p * n
    # Clip the parametric line anchor + s*t against every edge half-plane;
    # for a convex polygon the admissible s-interval is a single segment.
    edges = np.roll(verts, -1, axis=0) - verts
    c0 = edges[:, 0] * (anchor[1] - verts[:, 1]) - edges[:, 1] * (anchor[0] - verts[:, 0])
    c1 = edges[:, 0] * t[1] - edges[:, 1] * t[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = -c0 / c1
    entering = c1 > EPS
    exiting = c1 < -EPS
    parallel_outside = (~entering) & (~exiting) & (c0 < -EPS)
    if parallel_outside.any():
        return 0.0
    lo = bound[entering].max() if entering.any() else -math.inf
    hi = bound[exiting].min() if exiting.any() else math.inf
    return max(0.0, hi - lo)


# ---------------------------------------------------------------------------
# vectorized twins for the Monte Carlo estimators
# ---------------------------------------------------------------------------

def triangle_area_many(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Triangle areas for stacked 2D vertex arrays of shape (n, 2)."""
    u = b - a
    v = c - a
    return 0.5 * np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])


def tetra_volume_many(a, b, c, d) -> np.ndarray:
    """Tetrahedron volumes for stacked 3D vertex arrays of shape (n, 3)."""
    return np.abs(_orient3_many(a, b, c, d)) / 6.0


def _orient3_many(a, b, c, d) -> np.ndarray:
    u = b - a
    v = c - a
    w = d - a
    return (
        u[..., 0] * (v[..., 1] * w[..., 2] - v[..., 2] * w[..., 1])
        - u[..., 1] * (v[..., 0] * w[..., 2] - v[..., 2] * w[..., 0])
        + u[..., 2] * (v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0])
    )


def _orient2_many(a, b, c) -> np.ndarray:
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (
        b[..., 1] - a[..., 1]
    ) * (c[..., 0] - a[..., 0])


def inside_event_counts_4(pts: np.ndarray) -> np.ndarray:
    """Per-quadruple count of strictly-inside events, pts of shape (n, 4, 2).

    Quadruples with a degenerate (collinear) triple count as 0 events; the
    convex-position predicate handles them separately.
    """
    n = pts.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    for q in range(4):
        others = [j for j in range(4) if j != q]
        a, b, c = (pts[:, j, :] for j in others)
        qq = pts[:, q, :]
        orient = _orient2_many(a, b, c)
        s = np.sign(orient)
        d1 = s * _orient2_many(a, b, qq)
        d2 = s * _orient2_many(b, c, qq)
        d3 = s * _orient2_many(c, a, qq)
        inside = (
            (np.abs(orient) > EPS) & (d1 > EPS) & (d2 > EPS) & (d3 > EPS)
        )
        counts += inside
    return counts


def convex_position_4_many(pts: np.ndarray) -> np.ndarray:
    """Vectorized convex_position_4 over pts of shape (n, 4, 2)."""
    degenerate = np.zeros(pts.shape[0], dtype=bool)
    for i in range(4):
        others = [j for j in range(4) if j != i]
        a, b, c = (pts[:, j, :] for j in others)
        degenerate |= np.abs(_orient2_many(a, b, c)) <= EPS
    return ~degenerate & (inside_event_counts_4(pts) == 0)


def convex_position_5_many(pts: np.ndarray) -> np.ndarray:
    """Vectorized convex_position_5_3d over pts of shape (n, 5, 3)."""
    n = pts.shape[0]
    degenerate = np.zeros(n, dtype=bool)
    inside_any = np.zeros(n, dtype=bool)
    for q in range(5):
        others = [j for j in range(5) if j != q]
        a, b, c, d = (pts[:, j, :] for j in others)
        qq = pts[:, q, :]
        orient = _orient3_many(a, b, c, d)
        degenerate |= np.abs(orient) <= EPS
        s = np.sign(orient)
        d1 = s * _orient3_many(qq, b, c, d)
        d2 = s * _orient3_many(a, qq, c, d)
        d3 = s * _orient3_many(a, b, qq, d)
        d4 = s * _orient3_many(a, b, c, qq)
        inside_any |= (
            (np.abs(orient) > EPS)
            & (d1 > EPS)
            & (d2 > EPS)
            & (d3 > EPS)
            & (d4 > EPS)
        )
    return ~degenerate & ~inside_any


def flat_offset_many(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distances from the origin to the flat through each point tuple.

    pts has shape (n, k, k) with k in {2, 3, 4}: k points spanning a flat in
    R^k.  Returns (offsets, degenerate_mask); offsets of degenerate tuples
    are unspecified and flagged in the mask.
    """
    k = pts.shape[1]
    if pts.shape[2] != k or k not in (2, 3, 4):
        raise GeometryError("flat_offset_many needs point tuples of shape (n, k, k)")
    if k == 2:
        a, b = pts[:, 0, :], pts[:, 1, :]
        numer = np.abs(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0])
        denom = np.hypot(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1])
    elif k == 3:
        a, b, c = pts[:, 0, :], pts[:, 1, :], pts[:, 2, :]
        normal = np.cross(b - a, c - a)
        # a . ((b-a) x (c-a)) equals the triple product det[a, b, c]
        numer = np.abs(np.einsum("ij,ij->i", a, normal))
        denom = np.sqrt(np.einsum("ij,ij->i", normal, normal))
    else:
        a = pts[:, 0, :]
        u = pts[:, 1, :] - a
        v = pts[:, 2, :] - a
        w = pts[:, 3, :] - a
        normal = np.stack(
            [
                _det3_many(u[:, 1:], v[:, 1:], w[:, 1:]),
                -_det3_many(u[:, [0, 2, 3]], v[:, [0, 2, 3]], w[:, [0, 2, 3]]),
                _det3_many(u[:, [0, 1, 3]], v[:, [0, 1, 3]], w[:, [0, 1, 3]]),
                -_det3_many(u[:, [0, 1, 2]], v[:, [0, 1, 2]], w[:, [0, 1, 2]]),
            ],
            axis=1,
        )
        numer = np.abs(np.einsum("ij,ij->i", a, normal))
        denom = np.sqrt(np.einsum("ij,ij->i", normal, normal))
    degenerate = ~(denom > EPS) | ~np.isfinite(denom)
    safe = np.where(degenerate, 1.0, denom)
    return numer / safe, degenerate


def _det3_many(r0, r1, r2) -> np.ndarray:
    return (
        r0[:, 0] * (r1[:, 1] * r2[:, 2] - r1[:, 2] * r2[:, 1])
        - r0[:, 1] * (r1[:, 0] * r2[:, 2] - r1[:, 2] * r2[:, 0])
        + r0[:, 2] * (r1[:, 0] * r2[:, 1] - r1[:, 1] * r2[:, 0])
    )


def random_convex_polygon(rng: np.random.Generator, sides: int) -> ConvexBody2:
    """Seeded random strictly convex polygon (edge vectors sorted by angle)."""
    if sides < 3:
        raise GeometryError("random_convex_polygon needs at least 3 sides")
    for _ in range(32):
        raw = rng.normal(size=(sides, 2))
        edges = raw - raw.mean(axis=0)
        order = np.argsort(np.arctan2(edges[:, 1], edges[:, 0]))
        verts = np.cumsum(edges[order], axis=0)
        span = np.abs(verts).max()
        if span <= EPS:
            continue
        verts = verts / span * rng.uniform(0.6, 1.4)
        verts = verts + rng.uniform(-0.4, 0.4, size=2)
        try:
            return ConvexBody2.polygon(verts)
        except GeometryError:
            continue
    raise GeometryError("failed to generate a strictly convex polygon")
