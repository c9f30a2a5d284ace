"""Inversive geometry of real-axis-symmetric regions in the complex plane.

A Region is a finite intersection of three kinds of atoms, all with real
centers / thresholds:

* ``Disk(c, r)``          -- closed disk ``|z - c| <= r``
* ``DiskExterior(c, r)``  -- closed complement ``|z - c| >= r``
* ``HalfPlane(a)``        -- ``Re z >= a``

This family is closed under translation by reals, scaling by nonzero reals
(except that a negative scale of a half-plane is rejected), and the
inversion ``z -> 1/z`` of generalized circles.  Regions carry an exact
boundary decomposition into circular arcs and vertical segments, which is
what the max-modulus search and the arc-property checks consume.

The point at infinity of the extended plane is never materialized: all
certificates downstream operate on bounded regions, and operations that
would need an unbounded boundary raise instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    AmbiguousArgmaxError,
    EmptyRegionError,
    UnboundedRegionError,
    UnsupportedInversionError,
    UnsupportedOrientationError,
)

TWO_PI = 2.0 * math.pi

# Tolerance for classifying tangency / boundary-degenerate configurations
# (|c| = r case splits, radical-line degeneracies).
DEGENERACY_TOL = 1e-12
# Angular span below which an arc is a tangency point, not a piece.
MIN_ARC_SPAN = 1e-9
MIN_SEGMENT_LEN = 1e-12


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Disk:
    center: float
    radius: float

    def __post_init__(self):
        _check_atom(self.center, self.radius)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol

    def contains_many(self, zs: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.abs(zs - self.center) <= self.radius + tol


@dataclass(frozen=True)
class DiskExterior:
    center: float
    radius: float

    def __post_init__(self):
        _check_atom(self.center, self.radius)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) >= self.radius - tol

    def contains_many(self, zs: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.abs(zs - self.center) >= self.radius - tol


@dataclass(frozen=True)
class HalfPlane:
    threshold: float

    def __post_init__(self):
        if not math.isfinite(self.threshold):
            raise ValueError("half-plane threshold must be finite")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return z.real >= self.threshold - tol

    def contains_many(self, zs: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.real(zs) >= self.threshold - tol


RegionAtom = Union[Disk, DiskExterior, HalfPlane]


def _check_atom(center: float, radius: float) -> None:
    if not (math.isfinite(center) and math.isfinite(radius)):
        raise ValueError("atom parameters must be finite")
    if radius <= 0.0:
        raise ValueError(f"atom radius must be positive, got {radius}")


def _atom_sort_key(atom: RegionAtom):
    if isinstance(atom, Disk):
        return (0, atom.center, atom.radius)
    if isinstance(atom, DiskExterior):
        return (1, atom.center, atom.radius)
    return (2, atom.threshold, 0.0)


# ---------------------------------------------------------------------------
# Region
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Intersection of atoms; always symmetric about the real axis."""

    atoms: tuple

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a region needs at least one atom")
        # canonical order + dedupe gives deterministic boundary traversal
        unique = sorted(set(self.atoms), key=_atom_sort_key)
        object.__setattr__(self, "atoms", tuple(unique))

    @property
    def bounded(self) -> bool:
        return any(isinstance(a, Disk) for a in self.atoms)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return all(a.contains(z, tol) for a in self.atoms)

    def contains_many(self, zs: np.ndarray, tol: float = 0.0) -> np.ndarray:
        mask = np.ones(np.shape(zs), dtype=bool)
        for a in self.atoms:
            mask &= a.contains_many(zs, tol)
        return mask

    def smallest_disk_atom(self) -> Disk:
        disks = [a for a in self.atoms if isinstance(a, Disk)]
        if not disks:
            raise UnboundedRegionError(
                "region has no disk atom; intersect with a bounding disk first")
        return min(disks, key=lambda d: (d.radius, d.center))

    # -- transforms ---------------------------------------------------------

    def translate(self, a: float) -> "Region":
        return Region(tuple(_translate_atom(atom, a) for atom in self.atoms))

    def scale(self, a: float) -> "Region":
        if a == 0.0:
            raise ValueError("scale factor must be nonzero")
        return Region(tuple(_scale_atom(atom, a) for atom in self.atoms))

    def invert(self) -> "Region":
        """Image under z -> 1/z.  Inversion is a bijection of the extended
        plane, so the image of the intersection is the intersection of the
        atom images."""
        return Region(tuple(_invert_atom(atom) for atom in self.atoms))


def _translate_atom(atom: RegionAtom, a: float) -> RegionAtom:
    if isinstance(atom, Disk):
        return Disk(atom.center + a, atom.radius)
    if isinstance(atom, DiskExterior):
        return DiskExterior(atom.center + a, atom.radius)
    return HalfPlane(atom.threshold + a)


def _scale_atom(atom: RegionAtom, a: float) -> RegionAtom:
    if isinstance(atom, Disk):
        return Disk(a * atom.center, abs(a) * atom.radius)
    if isinstance(atom, DiskExterior):
        return DiskExterior(a * atom.center, abs(a) * atom.radius)
    if a < 0.0:
        raise UnsupportedOrientationError(
            "negative scale of a half-plane produces {Re z <= a}, which is "
            "not representable")
    return HalfPlane(a * atom.threshold)


def _invert_atom(atom: RegionAtom) -> RegionAtom:
    if isinstance(atom, HalfPlane):
        a = atom.threshold
        if a <= DEGENERACY_TOL:
            raise UnsupportedInversionError(
                f"cannot invert HalfPlane({a}): 0 on or inside the "
                "half-plane signals an invalid class input upstream")
        return Disk(1.0 / (2.0 * a), 1.0 / (2.0 * a))

    c, r = atom.center, atom.radius
    d = c * c - r * r  # power of 0 with respect to the circle
    if abs(abs(c) - r) <= DEGENERACY_TOL:
        # 0 on the circle: image of the circle is the line Re w = 1/(2c)
        if isinstance(atom, Disk):
            if c > 0:
                return HalfPlane(1.0 / (2.0 * c))
            raise UnsupportedInversionError(
                "inverting a disk through 0 with nonpositive center gives a "
                "left half-plane")
        if c < 0:
            return HalfPlane(1.0 / (2.0 * c))
        raise UnsupportedInversionError(
            "inverting a disk exterior through 0 with nonnegative center "
            "gives a left half-plane")

    new_c = c / d
    new_r = r / abs(d)
    if isinstance(atom, Disk):
        # 0 outside the disk keeps it a disk; 0 inside flips it inside out.
        return Disk(new_c, new_r) if d > 0 else DiskExterior(new_c, new_r)
    return DiskExterior(new_c, new_r) if d > 0 else Disk(new_c, new_r)


# module-level aliases matching the operation vocabulary
def translate(region: Region, a: float) -> Region:
    return region.translate(a)


def scale(region: Region, a: float) -> Region:
    return region.scale(a)


def invert(region: Region) -> Region:
    return region.invert()


def contains(region: Region, z: complex, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return region.contains(z, tol)


# ---------------------------------------------------------------------------
# Boundary pieces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    """Circular arc, counterclockwise from angle_start to angle_end.

    Angles are radians with angle_start < angle_end; the interval may pass
    through pi (e.g. [3*pi/4, 5*pi/4]) for arcs wrapping the negative real
    axis.  A full circle is [-pi, pi].
    """

    center: float
    radius: float
    angle_start: float
    angle_end: float
    orientation: int = 1

    @property
    def length(self) -> float:
        return (self.angle_end - self.angle_start) * self.radius

    def point_at(self, t: float) -> complex:
        ang = (1.0 - t) * self.angle_start + t * self.angle_end
        return self.center + self.radius * cmath.exp(1j * ang)

    def sample(self, n_intervals: int) -> np.ndarray:
        angs = np.linspace(self.angle_start, self.angle_end, n_intervals + 1)
        return self.center + self.radius * np.exp(1j * angs)

    def project(self, w: complex) -> complex:
        """Nearest point of the arc to w."""
        v = w - self.center
        if v == 0:
            return self.point_at(0.0)
        ang = cmath.phase(v)
        # normalize into [angle_start, angle_start + 2*pi)
        ang = self.angle_start + (ang - self.angle_start) % TWO_PI
        if ang <= self.angle_end:
            return self.center + self.radius * v / abs(v)
        p0, p1 = self.point_at(0.0), self.point_at(1.0)
        return p0 if abs(w - p0) <= abs(w - p1) else p1


@dataclass(frozen=True)
class Segment:
    p0: complex
    p1: complex

    @property
    def length(self) -> float:
        return abs(self.p1 - self.p0)

    def point_at(self, t: float) -> complex:
        return (1.0 - t) * self.p0 + t * self.p1

    def sample(self, n_intervals: int) -> np.ndarray:
        ts = np.linspace(0.0, 1.0, n_intervals + 1)
        return (1.0 - ts) * self.p0 + ts * self.p1

    def project(self, w: complex) -> complex:
        d = self.p1 - self.p0
        denom = abs(d) ** 2
        if denom == 0.0:
            return self.p0
        t = ((w - self.p0).real * d.real + (w - self.p0).imag * d.imag) / denom
        t = min(1.0, max(0.0, t))
        return self.point_at(t)


BoundaryPiece = Union[Arc, Segment]


def _cos_bounds_on_circle(c: float, r: float,
                          others: Sequence[RegionAtom]):
    """Feasible set of angles t on the circle z = c + r e^{it} subject to
    membership in every other atom, expressed as bounds lo <= cos t <= hi.

    All atom centers are real, so every constraint is monotone in cos t.
    Returns (lo, hi) or None when the circle contributes nothing.
    """
    lo, hi = -1.0, 1.0
    for other in others:
        if isinstance(other, HalfPlane):
            lo = max(lo, (other.threshold - c) / r)
            continue
        c2, r2 = other.center, other.radius
        d = c - c2
        if abs(d) <= DEGENERACY_TOL:
            # concentric: constraint holds for every t or for none
            if isinstance(other, Disk):
                if r > r2 + DEGENERACY_TOL:
                    return None
            else:
                if r < r2 - DEGENERACY_TOL:
                    return None
            continue
        u = (r2 * r2 - r * r - d * d) / (2.0 * r * d)
        if isinstance(other, Disk):
            # |z - c2|^2 = r^2 + d^2 + 2 r d cos t <= r2^2
            if d > 0:
                hi = min(hi, u)
            else:
                lo = max(lo, u)
        else:
            if d > 0:
                lo = max(lo, u)
            else:
                hi = min(hi, u)
    if lo > hi + DEGENERACY_TOL:
        return None
    return max(lo, -1.0), min(hi, 1.0)


def _circle_pieces(c: float, r: float, others: Sequence[RegionAtom]):
    bounds = _cos_bounds_on_circle(c, r, others)
    if bounds is None:
        return []
    lo, hi = bounds
    if lo <= -1.0 + DEGENERACY_TOL and hi >= 1.0 - DEGENERACY_TOL:
        return [Arc(c, r, -math.pi, math.pi)]
    t1 = math.acos(hi)  # in [0, pi]
    t2 = math.acos(lo)
    if t2 - t1 <= MIN_ARC_SPAN:
        return []  # tangency point
    if t1 <= MIN_ARC_SPAN:
        return [Arc(c, r, -t2, t2)]
    if math.pi - t2 <= MIN_ARC_SPAN:
        return [Arc(c, r, t1, TWO_PI - t1)]
    return [Arc(c, r, t1, t2), Arc(c, r, -t2, -t1)]


def _line_pieces(a: float, others: Sequence[RegionAtom]):
    """Pieces of the vertical line Re z = a inside every other atom.
    Constraints reduce to bounds on s^2 for z = a + i s."""
    s2_lo, s2_hi = 0.0, math.inf
    for other in others:
        if isinstance(other, HalfPlane):
            if a < other.threshold - DEGENERACY_TOL:
                return []
            continue
        m2 = other.radius ** 2 - (a - other.center) ** 2
        if isinstance(other, Disk):
            if m2 < -DEGENERACY_TOL:
                return []
            s2_hi = min(s2_hi, max(m2, 0.0))
        else:
            s2_lo = max(s2_lo, m2)
    if s2_hi < s2_lo - DEGENERACY_TOL:
        return []
    if math.isinf(s2_hi):
        raise UnboundedRegionError(
            "half-plane boundary line is unbounded within the region; "
            "intersect with a bounding disk first")
    s_hi = math.sqrt(max(s2_hi, 0.0))
    s_lo = math.sqrt(max(s2_lo, 0.0))
    if s_hi - s_lo <= MIN_SEGMENT_LEN:
        return []
    if s_lo <= MIN_SEGMENT_LEN:
        return [Segment(complex(a, -s_hi), complex(a, s_hi))]
    return [Segment(complex(a, s_lo), complex(a, s_hi)),
            Segment(complex(a, -s_hi), complex(a, -s_lo))]


def _feasible_probe_points(region: Region) -> list:
    """Candidate points for emptiness testing: pairwise boundary
    intersections and per-atom extreme real points."""
    pts = []
    for atom in region.atoms:
        if isinstance(atom, (Disk, DiskExterior)):
            pts += [complex(atom.center - atom.radius, 0.0),
                    complex(atom.center + atom.radius, 0.0)]
        else:
            pts.append(complex(atom.threshold, 0.0))
    atoms = region.atoms
    for i, a1 in enumerate(atoms):
        for a2 in atoms[i + 1:]:
            pts += _pairwise_boundary_intersections(a1, a2)
    return pts


def _pairwise_boundary_intersections(a1: RegionAtom, a2: RegionAtom) -> list:
    circ1 = None if isinstance(a1, HalfPlane) else (a1.center, a1.radius)
    circ2 = None if isinstance(a2, HalfPlane) else (a2.center, a2.radius)
    if circ1 is None and circ2 is None:
        return []
    if circ1 is None or circ2 is None:
        (c, r) = circ1 or circ2
        a = a1.threshold if circ1 is None else a2.threshold
        m2 = r * r - (a - c) ** 2
        if m2 < 0:
            return []
        m = math.sqrt(m2)
        return [complex(a, m), complex(a, -m)]
    (c1, r1), (c2, r2) = circ1, circ2
    d = c2 - c1
    if abs(d) <= DEGENERACY_TOL:
        return []
    # radical line: x relative to c1
    x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    y2 = r1 * r1 - x * x
    if y2 < 0:
        return []
    y = math.sqrt(y2)
    return [complex(c1 + x, y), complex(c1 + x, -y)]


def boundary_pieces(region: Region) -> list:
    """Decompose the region boundary into arcs and segments.

    The pieces pairwise intersect only at endpoints; circle-circle corners
    come out of the closed-form radical-line construction.  Raises
    EmptyRegionError when the atoms have empty intersection and
    UnboundedRegionError when the boundary contains an infinite line.
    """
    if len(region.atoms) > 3:
        raise ValueError("boundary decomposition supports at most 3 atoms")
    return _pieces_unchecked(region)


def _pieces_unchecked(region: Region) -> list:
    atoms = region.atoms
    pieces: list = []
    for i, atom in enumerate(atoms):
        others = atoms[:i] + atoms[i + 1:]
        if isinstance(atom, (Disk, DiskExterior)):
            pieces += _circle_pieces(atom.center, atom.radius, others)
        else:
            pieces += _line_pieces(atom.threshold, others)
    if not pieces:
        # tangency can shrink the region to a single point (e.g. mu = L
        # classes); represent its boundary as a zero-length segment
        feasible = sorted(
            (p for p in _feasible_probe_points(region)
             if region.contains(p, DEGENERACY_TOL)),
            key=lambda z: (z.real, z.imag))
        if not feasible:
            raise EmptyRegionError(f"atoms have empty intersection: {atoms}")
        return [Segment(feasible[0], feasible[0])]
    return pieces


# ---------------------------------------------------------------------------
# Boundary sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryGrid:
    """Deterministic boundary sample with its guaranteed covering radius."""

    points: np.ndarray
    covering_radius: float
    pieces: tuple


def boundary_grid(region: Region, eps: float) -> BoundaryGrid:
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not region.bounded:
        raise UnboundedRegionError(
            "cannot sample the boundary of an unbounded region; intersect "
            "with a bounding atom first")
    pieces = boundary_pieces(region)
    chunks = []
    max_gap = 0.0
    for piece in pieces:
        n = max(1, math.ceil(piece.length / eps))
        chunks.append(piece.sample(n))
        max_gap = max(max_gap, piece.length / n)
    points = np.concatenate(chunks)
    # samples are spaced <= max_gap along each piece, so every boundary
    # point is within max_gap/2 in arc length, hence in chord distance
    return BoundaryGrid(points, 0.5 * max_gap, tuple(pieces))


def sample_boundary(region: Region, eps: float) -> list:
    """Boundary points with every boundary point within eps of a sample."""
    return list(boundary_grid(region, eps).points)


# ---------------------------------------------------------------------------
# Arc properties
# ---------------------------------------------------------------------------

def _atom_right_arc_exact(atom: RegionAtom) -> bool:
    # moving a point along its right-hand arc toward the positive real axis
    # can only increase Re and cos(angle); these atoms are closed under that
    if isinstance(atom, Disk):
        return atom.center >= 0.0
    if isinstance(atom, DiskExterior):
        return atom.center <= 0.0
    return True  # {Re z >= a} for any a


def _atom_left_arc_exact(atom: RegionAtom) -> bool:
    if isinstance(atom, Disk):
        return atom.center <= 0.0
    if isinstance(atom, DiskExterior):
        return atom.center >= 0.0
    return False


def _arc_probe_points(region: Region, n_samples: int) -> list:
    """Boundary samples for the refuting check; unbounded regions are
    clipped by a generous probe disk first (membership is still tested
    against the original region, so refutations remain sound)."""
    probe = region
    if not region.bounded:
        reach = 1.0
        for a in region.atoms:
            if isinstance(a, HalfPlane):
                reach = max(reach, abs(a.threshold))
            else:
                reach = max(reach, abs(a.center) + a.radius)
        probe = Region(region.atoms + (Disk(0.0, 10.0 * reach),))
    pieces = _pieces_unchecked(probe)
    total = sum(p.length for p in pieces) or 1.0
    pts: list = []
    for p in pieces:
        n = max(2, int(round(n_samples * p.length / total)))
        pts.extend(p.sample(n - 1))
    return pts


def _arc_sampling_refuter(region: Region, n_samples: int, n_theta: int,
                          tol: float, left: bool) -> bool:
    """False when some sampled boundary point's arc leaves the region
    (sound); True otherwise (heuristic certificate only).

    The right-hand arc of z = r e^{i phi} sweeps r e^{i (1 - 2 theta) phi};
    the left-hand arc sweeps the angles from phi to sign(phi)*pi, and the
    mirror half follows from real-axis symmetry of the regions.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    thetas = np.linspace(0.0, 1.0, n_theta)
    for z in _arc_probe_points(region, n_samples):
        r, phi = abs(z), cmath.phase(z)
        if r == 0.0 or not region.contains(z, tol):
            continue
        if left:
            target = math.pi if phi >= 0 else -math.pi
            angles = phi + thetas * (target - phi)
        else:
            angles = (1.0 - 2.0 * thetas) * phi
        for ang in angles:
            if not region.contains(r * cmath.exp(1j * ang), tol):
                return False
    return True


def has_right_arc_property(region: Region, n_samples: int = 720,
                           n_theta: int = 65, tol: float = 1e-9) -> bool:
    """True when every point's right-hand arc (through the positive real
    axis) stays in the region.

    Exact for intersections of right-arc-closed atoms (real-centered disks
    with nonnegative center, disk exteriors with nonpositive center, and
    half-planes); otherwise falls back to a sampled refutation, so a True
    answer from the fallback is heuristic while False is certain.
    """
    if all(_atom_right_arc_exact(a) for a in region.atoms):
        return True
    return _arc_sampling_refuter(region, n_samples, n_theta, tol, left=False)


def has_left_arc_property(region: Region, n_samples: int = 720,
                          n_theta: int = 65, tol: float = 1e-9) -> bool:
    """Mirror of has_right_arc_property, with arcs through the negative
    real axis."""
    if all(_atom_left_arc_exact(a) for a in region.atoms):
        return True
    return _arc_sampling_refuter(region, n_samples, n_theta, tol, left=True)


def has_arc_property(region: Region, **kw) -> bool:
    return has_right_arc_property(region, **kw) or \
        has_left_arc_property(region, **kw)


# ---------------------------------------------------------------------------
# Farthest point on a circle
# ---------------------------------------------------------------------------

def farthest_point_on_circle(circle_center: complex, radius: float,
                             anchor: complex,
                             feasible_arc: Optional[tuple] = None) -> complex:
    """Point of the circle (restricted to feasible_arc when given)
    maximizing the distance to the anchor.

    Distance to a fixed point is monotone in the angle measured from the
    anchor direction (law of cosines), so the restricted maximum is either
    the anchor's antipodal point or one of the arc endpoints.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    v = complex(circle_center) - complex(anchor)
    if v == 0:
        raise AmbiguousArgmaxError(
            "anchor coincides with the circle center; every circle point is "
            "equidistant")
    psi_star = cmath.phase(v)  # direction of the far point from the center
    far = circle_center + radius * cmath.exp(1j * psi_star)
    if feasible_arc is None:
        return far
    a0, a1 = feasible_arc
    if a1 < a0:
        raise ValueError("feasible_arc must satisfy angle_start <= angle_end")
    # normalize the far direction into [a0, a0 + 2*pi)
    ang = a0 + (psi_star - a0) % TWO_PI
    if ang <= a1:
        return circle_center + radius * cmath.exp(1j * ang)
    e0 = circle_center + radius * cmath.exp(1j * a0)
    e1 = circle_center + radius * cmath.exp(1j * a1)
    return e0 if abs(e0 - anchor) >= abs(e1 - anchor) else e1
