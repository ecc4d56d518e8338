# cython: language_level=3
"""Compiled compute kernels.

Twin of `circbridge._kernels_py`: the same floating-point operations in
the same order, so both backends return bitwise-identical results.  Any
change must be mirrored there.  Built with -ffp-contract=off so the C
compiler cannot fuse multiply-adds.
"""

from libc.math cimport exp, sin, fabs

cdef double TWO_PI = 6.283185307179586
cdef double INV_SQRT_2PI = 0.3989422804014327

cdef double _TERM_EPS = 1e-17
cdef long _MAX_TERMS = 200000

cdef double _RESCALE_LIMIT = 1e250
cdef double _RESCALE_FACTOR = 2.0 ** -512

cdef double[8] _XGK
cdef double[8] _WGK
cdef double[4] _WG

_XGK[0] = 0.9914553711208126
_XGK[1] = 0.9491079123427585
_XGK[2] = 0.8648644233597691
_XGK[3] = 0.7415311855993945
_XGK[4] = 0.5860872354676911
_XGK[5] = 0.4058451513773972
_XGK[6] = 0.20778495500789848
_XGK[7] = 0.0

_WGK[0] = 0.022935322010529224
_WGK[1] = 0.06309209262997856
_WGK[2] = 0.10479001032225019
_WGK[3] = 0.14065325971552592
_WGK[4] = 0.1690047266392679
_WGK[5] = 0.19035057806478542
_WGK[6] = 0.20443294007529889
_WGK[7] = 0.20948214108472782

_WG[0] = 0.1294849661688697
_WG[1] = 0.27970539148927664
_WG[2] = 0.3818300505051189
_WG[3] = 0.4179591836734694

cdef int _MAX_STACK = 4096


def i0_series_sum(double x):
    """Power series for I0; valid while the unscaled sum fits in a double."""
    cdef double q = 0.25 * x * x
    cdef double t = 1.0
    cdef double s = 1.0
    cdef long k = 1
    while True:
        t *= q / (k * k)
        s += t
        if t <= _TERM_EPS * s:
            return s
        if k >= _MAX_TERMS:
            raise ArithmeticError("I0 series did not converge")
        k += 1


def i1_series_sum(double x):
    """Power series for I1."""
    cdef double q = 0.25 * x * x
    cdef double t = 0.5 * x
    cdef double s = t
    cdef long k = 1
    while True:
        t *= q / (k * (k + 1))
        s += t
        if t <= _TERM_EPS * s:
            return s
        if k >= _MAX_TERMS:
            raise ArithmeticError("I1 series did not converge")
        k += 1


def sigma2_series(double x):
    """1 - I1(x)/I0(x) with a compensated termwise numerator; any x > 0."""
    cdef double q = 0.25 * x * x
    cdef double t0 = 1.0
    cdef double t1 = 0.5 * x
    cdef double s = 1.0
    cdef double sc = 0.0
    cdef double d = 1.0 - t1
    cdef double dc = 0.0
    cdef double y, tt, e
    cdef long k = 1
    while True:
        t0 *= q / (k * k)
        t1 *= q / (k * (k + 1))
        y = t0 - sc
        tt = s + y
        sc = (tt - s) - y
        s = tt
        e = t0 - t1
        y = e - dc
        tt = d + y
        dc = (tt - d) - y
        d = tt
        if t0 <= _TERM_EPS * s and (k + 1) > 0.5 * x:
            return d / s
        if k >= _MAX_TERMS:
            raise ArithmeticError("circular-variance series did not converge")
        if t0 > _RESCALE_LIMIT:
            t0 *= _RESCALE_FACTOR
            t1 *= _RESCALE_FACTOR
            s *= _RESCALE_FACTOR
            sc *= _RESCALE_FACTOR
            d *= _RESCALE_FACTOR
            dc *= _RESCALE_FACTOR
        k += 1


def i0e_asym_bracket(double x, int order):
    """Truncated large-argument bracket for I0."""
    cdef double u = 1.0 / x
    cdef double b = 1.0
    if order >= 1:
        b += 0.125 * u
    if order >= 2:
        b += 0.0703125 * (u * u)
    if order >= 3:
        b += 0.0732421875 * (u * u * u)
    return b


def i1e_asym_bracket(double x, int order):
    """Truncated large-argument bracket for I1."""
    cdef double u = 1.0 / x
    cdef double b = 1.0
    if order >= 1:
        b -= 0.375 * u
    if order >= 2:
        b -= 0.1171875 * (u * u)
    if order >= 3:
        b -= 0.1025390625 * (u * u * u)
    return b


cdef inline void _vm_panel(double m, double a, double b, double *out_k, double *out_e):
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double u = sin(0.5 * c)
    cdef double fc = exp(m * (u * u))
    cdef double resk = _WGK[7] * fc
    cdef double resg = _WG[3] * fc
    cdef double dx, f1, f2, fsum
    cdef int i
    for i in range(7):
        dx = h * _XGK[i]
        u = sin(0.5 * (c - dx))
        f1 = exp(m * (u * u))
        u = sin(0.5 * (c + dx))
        f2 = exp(m * (u * u))
        fsum = f1 + f2
        resk += _WGK[i] * fsum
        if i & 1:
            resg += _WG[i >> 1] * fsum
    out_k[0] = resk * h
    out_e[0] = fabs(resk - resg) * fabs(h)


def vm_scaled_mass(double kappa, double a, double b, double tol, int max_depth):
    """Adaptive integral of exp(-2 kappa sin(t/2)^2) over [a, b]."""
    if b <= a:
        return 0.0, 0.0, 0
    cdef double m = -2.0 * kappa
    cdef double[4096] st_a
    cdef double[4096] st_b
    cdef double[4096] st_tol
    cdef int[4096] st_depth
    cdef int top = 0
    cdef double total = 0.0
    cdef double err_total = 0.0
    cdef long evals = 0
    cdef double a1, b1, tol1, resk, err, mid, half
    cdef int depth
    st_a[0] = a
    st_b[0] = b
    st_tol[0] = tol
    st_depth[0] = 0
    top = 1
    while top > 0:
        top -= 1
        a1 = st_a[top]
        b1 = st_b[top]
        tol1 = st_tol[top]
        depth = st_depth[top]
        _vm_panel(m, a1, b1, &resk, &err)
        evals += 15
        if err <= tol1:
            total += resk
            err_total += err
        elif depth >= max_depth:
            raise ArithmeticError(
                "quadrature did not converge at depth %d (err=%.3e, tol=%.3e)"
                % (depth, err, tol1)
            )
        else:
            mid = 0.5 * (a1 + b1)
            half = 0.5 * tol1
            if top + 2 > _MAX_STACK:
                raise ArithmeticError("quadrature stack overflow")
            st_a[top] = mid
            st_b[top] = b1
            st_tol[top] = half
            st_depth[top] = depth + 1
            top += 1
            st_a[top] = a1
            st_b[top] = mid
            st_tol[top] = half
            st_depth[top] = depth + 1
            top += 1
    return total, err_total, evals


def wn_density_at(double t, double v, long kmax):
    """Wrapped-normal lattice sum at wrapped offset t with scale v."""
    cdef double inv_v = 1.0 / v
    cdef double s = 0.0
    cdef double z
    cdef long k = -kmax
    while k <= kmax:
        z = (t + TWO_PI * k) * inv_v
        s += exp(-0.5 * (z * z))
        k += 1
    return s * (INV_SQRT_2PI * inv_v)
