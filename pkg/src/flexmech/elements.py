"""Compliance matrices of the primitive elements: rectangular beam and
circular notch hinge.

Both elements are expressed at their distal frame with local x running from
the root toward that frame, y in the compliant bending plane and z along
the hinge axis.  Couplings therefore sit at (2,6)/(6,2) and (3,5)/(5,3)
only.

The beam uses the closed-form Timoshenko cantilever entries.  The hinge is
built by strip integration of the notch profile h(x): the four kernels
(see :mod:`flexmech.kernels`) give axial, shear, bending and torsion
compliances lumped at the notch's elastic center, which the frame
transform then carries to the distal face, producing the (r + h1)
lever-arm couplings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .materials import Material
from .spatial import FramePlacement, SpatialMatrix6, transform_compliance

SHEAR_ALPHA = 6.0 / 5.0  # rectangular-section shear correction factor


@lru_cache(maxsize=512)
def _notch_kernels_cached(r, t, w):
    # sweeps and multi-hinge limbs reuse geometries; the integrals are the
    # expensive part, so memoize on the exact dimension triple
    return kernels.notch_kernels(r, t, w)


@dataclass(frozen=True)
class BeamGeometry:
    """Prismatic beam: length l, out-of-plane width w, in-plane depth s (mm)."""

    l: float
    w: float
    s: float
    material: Material

    def __post_init__(self):
        for name in ("l", "w", "s"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"beam dimension {name} must be positive")


@dataclass(frozen=True)
class HingeGeometry:
    """Circular notch hinge: radius r, neck thickness t, width w, lever
    offset h1 from the notch's distal edge to the element frame (mm)."""

    r: float
    t: float
    w: float
    h1: float
    material: Material

    def __post_init__(self):
        for name in ("r", "t", "w"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"hinge dimension {name} must be positive")

    @property
    def s(self):
        """Outer section depth 2r + t at the notch edges."""
        return 2.0 * self.r + self.t


def torsion_beta(aspect):
    """Shape coefficient of a rectangle with side ratio aspect >= 1."""
    return kernels.torsion_beta(aspect)


def notch_thickness(g: HingeGeometry, x):
    """Thickness h(x) across the notch, x in [0, 2r] from the proximal edge."""
    if not 0.0 <= x <= 2.0 * g.r:
        raise ValueError(f"x={x} outside the notch range [0, {2.0 * g.r}]")
    return kernels.notch_thickness(x, g.r, g.t)


def beam_compliance(g: BeamGeometry) -> SpatialMatrix6:
    """Tip compliance of a cantilevered rectangular beam (Timoshenko)."""
    e, gs = g.material.e_modulus, g.material.g_modulus
    l, w, s = g.l, g.w, g.s
    it = kernels.rect_torsion_constant(w, s)
    c = np.zeros((6, 6))
    c[0, 0] = l / (e * w * s)
    c[1, 1] = SHEAR_ALPHA * l / (gs * w * s) + 4.0 * l**3 / (e * w * s**3)
    c[2, 2] = SHEAR_ALPHA * l / (gs * w * s) + 4.0 * l**3 / (e * w**3 * s)
    c[3, 3] = l / (gs * it)
    c[4, 4] = 12.0 * l / (e * w**3 * s)
    c[5, 5] = 12.0 * l / (e * w * s**3)
    c[1, 5] = c[5, 1] = 6.0 * l**2 / (e * w * s**3)
    c[2, 4] = c[4, 2] = -6.0 * l**2 / (e * w**3 * s)
    return SpatialMatrix6(c, "compliance")


def torsion_compliance_hinge(g: HingeGeometry):
    """C_{tx-Mx} = int dx / (G I_t(x)) with the per-strip long/short side rule."""
    _, _, _, kt = _notch_kernels_cached(g.r, g.t, g.w)
    return kt / g.material.g_modulus


def hinge_compliance(g: HingeGeometry) -> SpatialMatrix6:
    """Distal-frame compliance of a circular notch hinge via strip integration."""
    e, gs = g.material.e_modulus, g.material.g_modulus
    w = g.w
    k1, k3, k3x, kt = _notch_kernels_cached(g.r, g.t, g.w)

    # lumped joint at the bending elastic center (= mid-plane for the
    # symmetric circular profile, located generally via the first moment)
    c = np.zeros((6, 6))
    c[0, 0] = k1 / (e * w)
    c[1, 1] = SHEAR_ALPHA * k1 / (gs * w)
    c[2, 2] = SHEAR_ALPHA * k1 / (gs * w)
    c[3, 3] = kt / gs
    c[4, 4] = 12.0 * k1 / (e * w**3)
    c[5, 5] = 12.0 * k3 / (e * w)
    lump = SpatialMatrix6(c, "compliance")

    x_center = k3x / k3
    lever = (2.0 * g.r - x_center) + g.h1
    return transform_compliance(lump, FramePlacement(0.0, (lever, 0.0, 0.0)))
