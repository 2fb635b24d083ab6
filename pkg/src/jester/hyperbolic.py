"""Isometries of the hyperbolic plane in the hyperboloid model.

Points live on the upper sheet of x^2 + y^2 - t^2 = -1 in Minkowski
3-space with form J = diag(1, 1, -1); isometries are real 3x3 matrices
preserving J and the sheet.  This keeps reflections linear, avoids the
+/- ambiguity of the fractional-linear models, and makes identity testing
a plain matrix norm.

Sign convention: positive rotation angles are counterclockwise as seen
from above the upper sheet (t -> +infinity).
"""

from __future__ import annotations

import math

import numpy as np

from .presentations import UnmappedGenerator
from .words import Word

J = np.diag([1.0, 1.0, -1.0])

POINT_TOL = 1e-12
LORENTZ_TOL = 1e-9


class NotSpacelike(ValueError):
    pass


class InvalidPoint(ValueError):
    pass


class NotHyperbolic(ValueError):
    pass


class OrientationReversing(ValueError):
    pass


class InvalidIsometry(ValueError):
    pass


def minkowski(u, v) -> float:
    """The bilinear form <u, v> = u1 v1 + u2 v2 - u3 v3."""
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


class HPoint:
    """A point on the upper sheet of the hyperboloid."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (3,):
            raise InvalidPoint("expected 3 coordinates")
        if abs(minkowski(coords, coords) + 1.0) > POINT_TOL:
            raise InvalidPoint("not on the hyperboloid: <p,p> = %r"
                               % minkowski(coords, coords))
        if coords[2] <= 0:
            raise InvalidPoint("not on the upper sheet")
        object.__setattr__(self, "coords", coords)
        coords.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("HPoint is immutable")

    def __repr__(self):
        return "HPoint(%.6g, %.6g, %.6g)" % tuple(self.coords)

    @classmethod
    def origin(cls):
        return cls([0.0, 0.0, 1.0])


class Geodesic:
    """A geodesic, stored as its spacelike unit normal vector."""

    __slots__ = ("normal",)

    def __init__(self, normal):
        normal = np.asarray(normal, dtype=float)
        if normal.shape != (3,):
            raise NotSpacelike("expected 3 coordinates")
        if abs(minkowski(normal, normal) - 1.0) > POINT_TOL:
            raise NotSpacelike("normal is not a unit spacelike vector")
        object.__setattr__(self, "normal", normal)
        normal.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("Geodesic is immutable")

    def __repr__(self):
        return "Geodesic(normal=(%.6g, %.6g, %.6g))" % tuple(self.normal)

    @classmethod
    def from_normal_direction(cls, direction):
        direction = np.asarray(direction, dtype=float)
        norm2 = minkowski(direction, direction)
        if norm2 <= 0:
            raise NotSpacelike("direction is not spacelike")
        return cls(direction / math.sqrt(norm2))

    def contains(self, p: HPoint, tol: float = 1e-10) -> bool:
        return abs(minkowski(self.normal, p.coords)) < tol


class Isometry:
    """A Lorentz matrix preserving the upper sheet.

    Supports ``a @ b`` composition, ``.inverse()``, and
    ``.identity_distance()``; that is the whole protocol the presentation
    verifier needs.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, check: bool = True):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (3, 3):
            raise InvalidIsometry("expected a 3x3 matrix")
        if check:
            err = np.abs(matrix.T @ J @ matrix - J).max()
            if err > LORENTZ_TOL:
                raise InvalidIsometry("matrix does not preserve the form (err=%g)" % err)
            if matrix[2, 2] <= 0:
                raise InvalidIsometry("matrix swaps the sheets")
        object.__setattr__(self, "matrix", matrix)
        matrix.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("Isometry is immutable")

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix, check=False)

    def inverse(self) -> "Isometry":
        # For Lorentz matrices M^-1 = J M^T J, exactly.
        return Isometry(J @ self.matrix.T @ J, check=False)

    def identity_distance(self) -> float:
        """Max-norm distance from the identity matrix."""
        return float(np.abs(self.matrix - np.eye(3)).max())

    def lorentz_error(self) -> float:
        return float(np.abs(self.matrix.T @ J @ self.matrix - J).max())

    def apply(self, p: HPoint) -> HPoint:
        return HPoint(self.matrix @ p.coords)

    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def __repr__(self):
        return "Isometry(%s)" % np.array2string(self.matrix, precision=6)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3), check=False)


def reflect(g: Geodesic) -> Isometry:
    """Reflection in a geodesic: M = I - 2 n n^T J for the unit normal n."""
    n = g.normal
    return Isometry(np.eye(3) - 2.0 * np.outer(n, n) @ J, check=False)


def _frame_at(p: HPoint):
    """A Lorentz frame (e1, e2, p) with e1, e2 unit spacelike, J-orthogonal."""
    basis = []
    for seed in (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])):
        v = seed + minkowski(seed, p.coords) * p.coords
        for b in basis:
            v = v - minkowski(v, b) * b
        v = v / math.sqrt(minkowski(v, v))
        basis.append(v)
    return np.column_stack([basis[0], basis[1], p.coords])


def rotation(p: HPoint, angle: float) -> Isometry:
    """Elliptic isometry fixing p, rotating by `angle` (CCW positive)."""
    if not isinstance(p, HPoint):
        raise InvalidPoint("rotation center must be an HPoint")
    c, s = math.cos(angle), math.sin(angle)
    rz = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    f = _frame_at(p)
    f_inv = J @ f.T @ J  # frame is Lorentz, so this is its inverse
    return Isometry(f @ rz @ f_inv, check=False)


def distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance: cosh d = -<p, q>."""
    return math.acosh(max(1.0, -minkowski(p.coords, q.coords)))


def tangent_toward(p: HPoint, q: HPoint):
    """Unit tangent vector at p pointing along the geodesic toward q."""
    v = q.coords + minkowski(q.coords, p.coords) * p.coords
    norm2 = minkowski(v, v)
    if norm2 <= 0:
        raise InvalidPoint("points coincide")
    return v / math.sqrt(norm2)


def angle_at(p: HPoint, q: HPoint, r: HPoint) -> float:
    """Interior angle at p of the geodesic triangle p, q, r."""
    u = tangent_toward(p, q)
    v = tangent_toward(p, r)
    return math.acos(max(-1.0, min(1.0, minkowski(u, v))))


def geodesic_through(p: HPoint, q: HPoint) -> Geodesic:
    """The geodesic through two distinct points (Minkowski cross product)."""
    u, v = p.coords, q.coords
    n = np.array([
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        -(u[0] * v[1] - u[1] * v[0]),
    ])
    return Geodesic.from_normal_direction(n)


def triangle_from_angles(at_a: float, at_b: float, at_c: float) -> dict:
    """Geodesic triangle with prescribed interior angles at A, B, C.

    Placement is normalized for reproducibility: B at (0,0,1), A along the
    +x axis, C along the +y axis (so the triangle is right-angled at B in
    the intended use).  Side lengths come from the angle law of cosines
    cosh(a) = (cos A + cos B cos C) / (sin B sin C), and cyclically.

    Returns {"vertices": {"A","B","C"}, "edges": {"AB","BC","AC"}, "sides":
    {"a","b","c"}} with sides keyed opposite their vertices.
    """
    for x in (at_a, at_b, at_c):
        if x <= 0:
            raise NotHyperbolic("angles must be positive")
    if at_a + at_b + at_c >= math.pi:
        raise NotHyperbolic("angle sum %.6g is not < pi" % (at_a + at_b + at_c))

    cos_a, cos_b, cos_c = math.cos(at_a), math.cos(at_b), math.cos(at_c)
    sin_a, sin_b, sin_c = math.sin(at_a), math.sin(at_b), math.sin(at_c)
    side_a = math.acosh((cos_a + cos_b * cos_c) / (sin_b * sin_c))  # BC
    side_b = math.acosh((cos_b + cos_a * cos_c) / (sin_a * sin_c))  # AC
    side_c = math.acosh((cos_c + cos_a * cos_b) / (sin_a * sin_b))  # AB

    vertex_b = HPoint.origin()
    vertex_a = HPoint([math.sinh(side_c), 0.0, math.cosh(side_c)])
    vertex_c = HPoint([0.0, math.sinh(side_a), math.cosh(side_a)])

    return {
        "vertices": {"A": vertex_a, "B": vertex_b, "C": vertex_c},
        "edges": {
            "AB": geodesic_through(vertex_a, vertex_b),
            "BC": geodesic_through(vertex_b, vertex_c),
            "AC": geodesic_through(vertex_a, vertex_c),
        },
        "sides": {"a": side_a, "b": side_b, "c": side_c},
    }


def evaluate_word(w: Word, assignment: dict) -> Isometry:
    """Left-to-right product of the generator images of a word."""
    result = Isometry.identity()
    for g, e in w.letters:
        if g not in assignment:
            raise UnmappedGenerator(g)
        m = assignment[g]
        result = result @ (m if e == 1 else m.inverse())
    return result


def is_identity(m: Isometry, tol: float) -> bool:
    """Whether the matrix is within max-norm tol of the identity."""
    return m.identity_distance() < tol


def classify(m: Isometry, tol: float = 1e-9) -> dict:
    """Classify an orientation-preserving isometry by its trace.

    Elliptic for tr < 3 (value = |rotation angle| from tr = 1 + 2 cos),
    hyperbolic for tr > 3 (value = translation length from tr = 1 + 2 cosh),
    and at tr = 3 the identity/parabolic split is by distance from I.
    """
    if m.orientation != 1:
        raise OrientationReversing("classification requires orientation +1")
    tr = m.trace()
    if tr < 3.0 - tol:
        angle = math.acos(max(-1.0, min(1.0, (tr - 1.0) / 2.0)))
        return {"kind": "elliptic", "value": angle}
    if tr > 3.0 + tol:
        return {"kind": "hyperbolic", "value": math.acosh((tr - 1.0) / 2.0)}
    if is_identity(m, max(tol, 1e-9) * 100):
        return {"kind": "identity", "value": 0.0}
    return {"kind": "parabolic", "value": 0.0}


def triangle_group_rep(p: int, q: int, r: int):
    """Triangle and generator images for the (p, q, r) rotation group.

    Builds the triangle with angles pi/p at A, pi/q at C, pi/r at B and
    sends beta to the reflection composite in the edges through C and gamma
    to the composite in the edges through A:

        beta  = r_BC o r_AC   (rotation by -2*pi/q at C here),
        gamma = r_AC o r_AB   (rotation by -2*pi/p at A here),

    so beta*gamma = r_BC o r_AB, a half-turn at B.  This certifies the
    quotient presentation <beta, gamma | gamma^p, beta^q, (beta gamma)^r>.
    The two rotation angles necessarily carry the same sign (the triangle's
    chirality); the mirror placement realizes (+2*pi/q, +2*pi/p).
    """
    triangle = triangle_from_angles(math.pi / p, math.pi / r, math.pi / q)
    vertices = triangle["vertices"]
    assignment = {
        "beta": rotation(vertices["C"], -2.0 * math.pi / q),
        "gamma": rotation(vertices["A"], -2.0 * math.pi / p),
    }
    return triangle, assignment
