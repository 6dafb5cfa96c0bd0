"""Pure-Python kernel core: notch profile integrals and rectangle torsion.

Mirror of the compiled ``_notchcore`` extension; same functions, same
algorithms, selected as a fallback by :mod:`flexmech.kernels` when the
extension is unavailable.

All lengths in mm.  The four notch kernels are

    k1  = int_0^2r  dx / h(x)
    k3  = int_0^2r  dx / h(x)^3
    k3x = int_0^2r  x dx / h(x)^3
    kt  = int_0^2r  dx / I_t(x)

with h(x) the local thickness of a circular notch and I_t the Saint-Venant
torsion constant of the local w-by-h(x) rectangle (long/short side decided
per strip).
"""

import math

from .errors import QuadratureError

# 15-point Kronrod nodes with embedded 7-point Gauss weights.
_GK15 = (
    (0.000000000000000, 0.417959183673469, 0.209482141084728),
    (+0.207784955007898, 0.000000000000000, 0.204432940075298),
    (-0.207784955007898, 0.000000000000000, 0.204432940075298),
    (+0.405845151377397, 0.381830050505119, 0.190350578064785),
    (-0.405845151377397, 0.381830050505119, 0.190350578064785),
    (+0.586087235467691, 0.000000000000000, 0.169004726639267),
    (-0.586087235467691, 0.000000000000000, 0.169004726639267),
    (+0.741531185599394, 0.279705391489277, 0.140653259715525),
    (-0.741531185599394, 0.279705391489277, 0.140653259715525),
    (+0.864864423359769, 0.000000000000000, 0.104790010322250),
    (-0.864864423359769, 0.000000000000000, 0.104790010322250),
    (+0.949107912342759, 0.129484966168870, 0.063092092629979),
    (-0.949107912342759, 0.129484966168870, 0.063092092629979),
    (+0.991455371120813, 0.000000000000000, 0.022935322010529),
    (-0.991455371120813, 0.000000000000000, 0.022935322010529),
)

_BETA_TERMS = 39  # odd-n series cutoff; tanh saturates long before this


def torsion_beta(aspect):
    """Saint-Venant shape coefficient for a rectangle of side ratio >= 1.

    beta = (1/3) * (1 - (192/pi^5) (b/a) sum_{n odd} tanh(n pi a / 2b) / n^5)
    """
    if aspect < 1.0:
        raise ValueError(f"aspect ratio must be >= 1 (long/short), got {aspect}")
    s = 0.0
    for n in range(1, _BETA_TERMS + 1, 2):
        s += math.tanh(0.5 * n * math.pi * aspect) / n**5
    return (1.0 - (192.0 / math.pi**5) * s / aspect) / 3.0


def rect_torsion_constant(side_a, side_b):
    """Torsion constant beta*a*b^3 of an a-by-b rectangle, sides in any order."""
    if side_a <= 0.0 or side_b <= 0.0:
        raise ValueError("rectangle sides must be positive")
    long_s = side_a if side_a >= side_b else side_b
    short_s = side_b if side_a >= side_b else side_a
    return torsion_beta(long_s / short_s) * long_s * short_s**3


def notch_thickness(x, r, t):
    """Thickness h(x) of a circular notch, x in [0, 2r] from the proximal edge."""
    d = r * r - (x - r) * (x - r)
    if d < 0.0:
        d = 0.0
    return t + 2.0 * r - 2.0 * math.sqrt(d)


def _gk15(f, a, b):
    """One Gauss-Kronrod panel; returns (K15 integral, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    ig = 0.0
    ik = 0.0
    for xi, wg, wk in _GK15:
        fx = f(mid + half * xi)
        ig += wg * fx
        ik += wk * fx
    err = (200.0 * abs(ig - ik)) ** 1.5
    return ik * half, err * half


def adaptive_quadrature(f, a, b, tol=1e-10, max_panels=512):
    """Adaptive bisection Gauss-Kronrod to absolute tolerance `tol`.

    Raises QuadratureError when the panel budget is exhausted without
    meeting the tolerance.
    """
    val, err = _gk15(f, a, b)
    panels = [(err, a, b, val)]
    while True:
        total = 0.0
        etotal = 0.0
        worst = 0
        for i, (e, _, _, v) in enumerate(panels):
            total += v
            etotal += e
            if e > panels[worst][0]:
                worst = i
        if etotal <= tol:
            return total
        if len(panels) >= max_panels:
            raise QuadratureError("adaptive quadrature did not converge", etotal)
        _, pa, pb, _ = panels.pop(worst)
        pm = 0.5 * (pa + pb)
        v1, e1 = _gk15(f, pa, pm)
        v2, e2 = _gk15(f, pm, pb)
        panels.append((e1, pa, pm, v1))
        panels.append((e2, pm, pb, v2))


def notch_kernels(r, t, w, tol=1e-10):
    """The four strip-integration kernels (k1, k3, k3x, kt) of a notch."""
    if r <= 0.0 or t <= 0.0 or w <= 0.0:
        raise ValueError("notch geometry r, t, w must be positive")

    def inv_h(x):
        return 1.0 / notch_thickness(x, r, t)

    def inv_h3(x):
        h = notch_thickness(x, r, t)
        return 1.0 / (h * h * h)

    def x_inv_h3(x):
        h = notch_thickness(x, r, t)
        return x / (h * h * h)

    def inv_it(x):
        return 1.0 / rect_torsion_constant(w, notch_thickness(x, r, t))

    span = 2.0 * r
    k1 = adaptive_quadrature(inv_h, 0.0, span, tol)
    k3 = adaptive_quadrature(inv_h3, 0.0, span, tol)
    k3x = adaptive_quadrature(x_inv_h3, 0.0, span, tol)
    kt = adaptive_quadrature(inv_it, 0.0, span, tol)
    return k1, k3, k3x, kt
