"""Twist/wrench algebra on 6x6 spatial matrices.

Conventions (fixed package-wide):
  - units N, mm, rad; wrench = (Fx, Fy, Fz, Mx, My, Mz), twist = (dx, dy, dz,
    tx, ty, tz)
  - frames differ by a rotation about z plus a translation r, where r points
    from the member frame to the evaluation point, expressed in evaluation
    coordinates
  - the skew operator S(r) is the transpose of the usual cross-product
    matrix, so S(r) @ u == u x r; with r member->tip this makes
    amplification_force the exact wrench transport member->tip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError

COND_LIMIT = 1e12     # inversion refused above this condition number
SYM_RTOL = 1e-9       # relative symmetry tolerance for spatial matrices

Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class FramePlacement:
    """Rotation about z (rad) plus displacement r (mm) to the evaluation point."""

    theta: float
    r: Vec3

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("placement angle must be finite")
        if not all(math.isfinite(c) for c in self.r):
            raise ValueError("placement displacement must be finite")
        # normalize into (-2pi, 2pi); files carry degrees, internals radians
        theta = math.fmod(self.theta, 2.0 * math.pi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "r", tuple(float(c) for c in self.r))

    @classmethod
    def from_degrees(cls, theta_deg, r):
        return cls(math.radians(theta_deg), tuple(r))

    @property
    def theta_deg(self):
        return math.degrees(self.theta)

    def compose(self, inner: "FramePlacement") -> "FramePlacement":
        """Placement equivalent to applying `inner` first, then self."""
        r_in = rot_z(self.theta) @ np.asarray(inner.r)
        r = np.asarray(self.r) + r_in
        return FramePlacement(self.theta + inner.theta, tuple(r))

    def inverse(self) -> "FramePlacement":
        r = -(rot_z(-self.theta) @ np.asarray(self.r))
        return FramePlacement(-self.theta, tuple(r))


IDENTITY_PLACEMENT = FramePlacement(0.0, (0.0, 0.0, 0.0))

_KINDS = ("compliance", "stiffness")


@dataclass(frozen=True, eq=False)
class SpatialMatrix6:
    """6x6 compliance or stiffness matrix in (N, mm, rad) block units.

    Symmetric by construction; the constructor rejects asymmetry beyond
    SYM_RTOL and stores the symmetrized matrix.
    """

    m: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        m = np.asarray(self.m, dtype=float)
        if m.shape != (6, 6):
            raise ValueError(f"expected a 6x6 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        scale = np.abs(m).max()
        if scale > 0 and np.abs(m - m.T).max() > SYM_RTOL * scale:
            raise ValueError("matrix is not symmetric within tolerance")
        object.__setattr__(self, "m", 0.5 * (m + m.T))
        self.m.flags.writeable = False

    @property
    def is_compliance(self):
        return self.kind == "compliance"

    def entry(self, i, j):
        """1-based entry access, matching the usual matrix subscripts."""
        return float(self.m[i - 1, j - 1])


def rot_z(theta):
    """3x3 rotation about z; orthonormal with determinant +1."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def s_matrix(r):
    """Antisymmetric displacement operator: rows (0, rz, -ry; -rz, 0, rx; ry, -rx, 0)."""
    rx, ry, rz = r
    return np.array([[0.0, rz, -ry], [-rz, 0.0, rx], [ry, -rx, 0.0]])


def amplification_force(p: FramePlacement):
    """Wrench transport member->tip: [[Rz, 0], [S(r) Rz, Rz]]."""
    r3 = rot_z(p.theta)
    j = np.zeros((6, 6))
    j[:3, :3] = r3
    j[3:, 3:] = r3
    j[3:, :3] = s_matrix(p.r) @ r3
    return j


def amplification_displacement(p: FramePlacement):
    """Twist transport member->tip, the inverse transpose of the force map.

    Closed form [[Rz, S(r) Rz], [0, Rz]]; the identity J = J_F^{-T} is a
    test-suite check, not an implementation route.
    """
    r3 = rot_z(p.theta)
    j = np.zeros((6, 6))
    j[:3, :3] = r3
    j[3:, 3:] = r3
    j[:3, 3:] = s_matrix(p.r) @ r3
    return j


def transform_compliance(c: SpatialMatrix6, p: FramePlacement) -> SpatialMatrix6:
    """Congruence J C J^T moving a compliance to the placement's evaluation point."""
    if c.kind != "compliance":
        raise ValueError(f"transform_compliance needs a compliance matrix, got {c.kind}")
    j = amplification_displacement(p)
    return SpatialMatrix6(j @ c.m @ j.T, "compliance")


def transform_stiffness(k: SpatialMatrix6, p: FramePlacement) -> SpatialMatrix6:
    """Congruence J_F K J_F^T moving a stiffness to the placement's evaluation point."""
    if k.kind != "stiffness":
        raise ValueError(f"transform_stiffness needs a stiffness matrix, got {k.kind}")
    j = amplification_force(p)
    return SpatialMatrix6(j @ k.m @ j.T, "stiffness")


def invert(m: SpatialMatrix6) -> SpatialMatrix6:
    """Inverse with the kind flipped; refuses badly conditioned input."""
    cond = np.linalg.cond(m.m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrixError(f"{m.kind} matrix is numerically singular", cond)
    inv = np.linalg.inv(m.m)
    other = "stiffness" if m.kind == "compliance" else "compliance"
    return SpatialMatrix6(inv, other)
