# cython: language_level=3, cdivision=True, boundscheck=False
"""Compiled kernel core: notch profile integrals and rectangle torsion.

Same API and algorithms as the pure-Python fallback ``_notchpure``; this
module only exists to make sweep inner loops fast.
"""

from libc.math cimport fabs, pi, pow, sqrt, tanh

from .errors import QuadratureError

cdef int _BETA_TERMS = 39
cdef int _MAX_PANELS = 512

cdef double[15] _XK = [
    0.000000000000000,
    0.207784955007898, -0.207784955007898,
    0.405845151377397, -0.405845151377397,
    0.586087235467691, -0.586087235467691,
    0.741531185599394, -0.741531185599394,
    0.864864423359769, -0.864864423359769,
    0.949107912342759, -0.949107912342759,
    0.991455371120813, -0.991455371120813,
]
cdef double[15] _WG = [
    0.417959183673469,
    0.0, 0.0,
    0.381830050505119, 0.381830050505119,
    0.0, 0.0,
    0.279705391489277, 0.279705391489277,
    0.0, 0.0,
    0.129484966168870, 0.129484966168870,
    0.0, 0.0,
]
cdef double[15] _WK = [
    0.209482141084728,
    0.204432940075298, 0.204432940075298,
    0.190350578064785, 0.190350578064785,
    0.169004726639267, 0.169004726639267,
    0.140653259715525, 0.140653259715525,
    0.104790010322250, 0.104790010322250,
    0.063092092629979, 0.063092092629979,
    0.022935322010529, 0.022935322010529,
]


cdef double _beta(double aspect) nogil:
    cdef double s = 0.0
    cdef int n
    for n in range(1, _BETA_TERMS + 1, 2):
        s += tanh(0.5 * n * pi * aspect) / pow(n, 5)
    return (1.0 - (192.0 / pow(pi, 5)) * s / aspect) / 3.0


cdef double _rect_it(double side_a, double side_b) nogil:
    cdef double lo = side_a
    cdef double hi = side_b
    cdef double tmp
    if lo > hi:
        tmp = lo
        lo = hi
        hi = tmp
    return _beta(hi / lo) * hi * lo * lo * lo


cdef double _h(double x, double r, double t) nogil:
    cdef double d = r * r - (x - r) * (x - r)
    if d < 0.0:
        d = 0.0
    return t + 2.0 * r - 2.0 * sqrt(d)


# integrand selector: 0 -> 1/h, 1 -> 1/h^3, 2 -> x/h^3, 3 -> 1/I_t
cdef double _f(int which, double x, double r, double t, double w) nogil:
    cdef double h = _h(x, r, t)
    if which == 0:
        return 1.0 / h
    elif which == 1:
        return 1.0 / (h * h * h)
    elif which == 2:
        return x / (h * h * h)
    return 1.0 / _rect_it(w, h)


cdef void _gk15(int which, double a, double b, double r, double t, double w,
                double* val, double* err) nogil:
    cdef double half = 0.5 * (b - a)
    cdef double mid = 0.5 * (a + b)
    cdef double ig = 0.0
    cdef double ik = 0.0
    cdef double fx
    cdef int i
    for i in range(15):
        fx = _f(which, mid + half * _XK[i], r, t, w)
        ig += _WG[i] * fx
        ik += _WK[i] * fx
    val[0] = ik * half
    err[0] = pow(200.0 * fabs(ig - ik), 1.5) * half


cdef double _adaptive(int which, double a, double b, double r, double t,
                      double w, double tol) except? -1.0:
    cdef double[512] pa
    cdef double[512] pb
    cdef double[512] pv
    cdef double[512] pe
    cdef int n = 1
    cdef int i, worst
    cdef double total, etotal, lo, hi, mid, v1, v2, e1, e2

    _gk15(which, a, b, r, t, w, &pv[0], &pe[0])
    pa[0] = a
    pb[0] = b
    while True:
        total = 0.0
        etotal = 0.0
        worst = 0
        for i in range(n):
            total += pv[i]
            etotal += pe[i]
            if pe[i] > pe[worst]:
                worst = i
        if etotal <= tol:
            return total
        if n >= _MAX_PANELS:
            raise QuadratureError("adaptive quadrature did not converge", etotal)
        lo = pa[worst]
        hi = pb[worst]
        mid = 0.5 * (lo + hi)
        _gk15(which, lo, mid, r, t, w, &v1, &e1)
        _gk15(which, mid, hi, r, t, w, &v2, &e2)
        pa[worst] = lo
        pb[worst] = mid
        pv[worst] = v1
        pe[worst] = e1
        pa[n] = mid
        pb[n] = hi
        pv[n] = v2
        pe[n] = e2
        n += 1


def torsion_beta(double aspect):
    """Saint-Venant shape coefficient for a rectangle of side ratio >= 1."""
    if aspect < 1.0:
        raise ValueError(f"aspect ratio must be >= 1 (long/short), got {aspect}")
    return _beta(aspect)


def rect_torsion_constant(double side_a, double side_b):
    """Torsion constant beta*a*b^3 of an a-by-b rectangle, sides in any order."""
    if side_a <= 0.0 or side_b <= 0.0:
        raise ValueError("rectangle sides must be positive")
    return _rect_it(side_a, side_b)


def notch_thickness(double x, double r, double t):
    """Thickness h(x) of a circular notch, x in [0, 2r] from the proximal edge."""
    return _h(x, r, t)


def notch_kernels(double r, double t, double w, double tol=1e-10):
    """The four strip-integration kernels (k1, k3, k3x, kt) of a notch."""
    if r <= 0.0 or t <= 0.0 or w <= 0.0:
        raise ValueError("notch geometry r, t, w must be positive")
    cdef double span = 2.0 * r
    k1 = _adaptive(0, 0.0, span, r, t, w, tol)
    k3 = _adaptive(1, 0.0, span, r, t, w, tol)
    k3x = _adaptive(2, 0.0, span, r, t, w, tol)
    kt = _adaptive(3, 0.0, span, r, t, w, tol)
    return k1, k3, k3x, kt
