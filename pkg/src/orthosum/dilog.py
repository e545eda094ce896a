"""Principal-branch dilogarithm and the Rogers form.

Complex numbers are the built-in ``complex`` type and reals are
``float``; both entry points return the type they were given, so real
arguments in the closed unit interval come back with no imaginary
part at all.

Li2 is evaluated by first mapping the argument into the unit disk
with the inversion relation, then into Re w <= 1/2 with the
reflection relation, and finally summing the Bernoulli-accelerated
series in u = -log(1-w).  Fifty-five coefficients push the tail below
1e-15 on that region.  The cut for Li2 is the real ray (1, oo); the
Rogers form additionally cuts (-oo, 0).  Exact real points on an open
cut are rejected, while complex points within 1e-14 of a cut are
snapped to the side the sign of their imaginary part selects, which
keeps the branch choice deterministic under roundoff.

``dilog_mp`` and ``rogers_mp`` are a separate extended-precision path
(mpmath, at least 30 significant digits) intended only for oracle
comparisons in tests; nothing in the library proper calls them.
"""

import cmath
import math

from .errors import DomainError

__all__ = ["dilog", "rogers_L", "dilog_mp", "rogers_mp", "PI2_6"]

PI2_6 = math.pi * math.pi / 6.0

_N_TERMS = 55
_SNAP = 1e-14
_TINY = 1e-300

_COEFFS = None


def _coeffs():
    # B_n / (n+1)!  with B_1 = -1/2, computed once at first use
    global _COEFFS
    if _COEFFS is None:
        import mpmath as mp

        with mp.workdps(60):
            cs = []
            fact = mp.mpf(1)
            for n in range(_N_TERMS):
                fact *= n + 1
                cs.append(float(mp.bernoulli(n) / fact))
        _COEFFS = tuple(cs)
    return _COEFFS


def _series(u):
    """Sum c_n u^(n+1), smallest terms first.  u may be real or complex."""
    cs = _coeffs()
    terms = []
    up = u
    for n in range(_N_TERMS):
        c = cs[n]
        if c != 0.0:
            terms.append(c * up)
        up = up * u
    acc = 0.0
    for t in reversed(terms):
        acc = acc + t
    return acc


def _li2_real(x):
    # principal branch on the real line, x <= 1 required by callers
    rest = 0.0
    sgn = 1.0
    w = x
    if w < -1.0:
        lg = math.log(-w)
        rest = -PI2_6 - 0.5 * lg * lg
        sgn = -sgn
        w = 1.0 / w
    if w > 0.5:
        rest += sgn * (PI2_6 - math.log(w) * math.log1p(-w))
        sgn = -sgn
        w = 1.0 - w
    u = -math.log1p(-w)
    return sgn * _series(u) + rest


def _li2_complex(z):
    rest = 0.0 + 0.0j
    sgn = 1.0
    w = z
    if abs(w) > 1.0:
        lg = cmath.log(-w)
        rest = -PI2_6 - 0.5 * lg * lg
        sgn = -sgn
        w = 1.0 / w
    if w.real > 0.5:
        rest += sgn * (PI2_6 - cmath.log(w) * cmath.log(1.0 - w))
        sgn = -sgn
        w = 1.0 - w
    u = -cmath.log(1.0 - w)
    return sgn * _series(u) + rest


def _check_finite(z):
    if isinstance(z, complex):
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError("dilogarithm argument must be finite, got %r" % (z,))
    else:
        if not math.isfinite(z):
            raise DomainError("dilogarithm argument must be finite, got %r" % (z,))


def _snap_to_cut_side(z, on_left_cut, on_right_cut):
    """Nudge points hugging a cut onto a definite side.

    The replacement imaginary part 1e-300 is far below every working
    tolerance but keeps copysign information, so conjugation symmetry
    survives the snap.
    """
    im = z.imag
    if im == 0.0 or abs(im) > _SNAP:
        return z
    re = z.real
    if (on_right_cut and re > 1.0) or (on_left_cut and re < 0.0):
        return complex(re, math.copysign(_TINY, im))
    return z


def dilog(z):
    """Li2 on the principal branch, cut along the real ray (1, oo).

    Real input returns a float; complex input returns a complex value.
    z = 1 is allowed by continuous extension and gives pi^2/6.  Exact
    reals beyond 1 raise DomainError, as do non-finite inputs.
    """
    _check_finite(z)
    if isinstance(z, complex):
        if z.imag == 0.0:
            return complex(dilog(z.real), 0.0)
        z = _snap_to_cut_side(z, on_left_cut=False, on_right_cut=True)
        return _li2_complex(z)
    x = float(z)
    if x > 1.0:
        raise DomainError("dilog: %r lies on the cut (1, oo)" % (x,))
    if x == 1.0:
        return PI2_6
    if x == 0.0:
        return 0.0
    return _li2_real(x)


def rogers_L(z):
    """Rogers dilogarithm L(z) = Li2(z) + log(z) log(1-z) / 2.

    Cuts along (-oo, 0) and (1, oo), both open; the continuous
    extensions L(0) = 0 and L(1) = pi^2/6 are honored.  Real input in
    [0, 1] returns a float, so the imaginary part is exactly zero.
    """
    _check_finite(z)
    if isinstance(z, complex):
        if z.imag == 0.0:
            return complex(rogers_L(z.real), 0.0)
        z = _snap_to_cut_side(z, on_left_cut=True, on_right_cut=True)
        return _li2_complex(z) + 0.5 * cmath.log(z) * cmath.log(1.0 - z)
    x = float(z)
    if x < 0.0 or x > 1.0:
        raise DomainError("rogers_L: %r lies on a cut; domain is [0, 1] on the reals" % (x,))
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    return _li2_real(x) + 0.5 * math.log(x) * math.log1p(-x)


def dilog_mp(z, dps=30):
    """Extended-precision Li2 for oracle comparisons only.

    Uses mpmath's independent polylog implementation.  Refuses to run
    below 30 significant digits: a low-precision oracle is worse than
    none.
    """
    if dps < 30:
        raise DomainError("extended-precision mode requires dps >= 30")
    import mpmath as mp

    with mp.workdps(dps):
        return mp.polylog(2, z)


def rogers_mp(z, dps=30):
    """Extended-precision Rogers form; see dilog_mp for the contract."""
    if dps < 30:
        raise DomainError("extended-precision mode requires dps >= 30")
    import mpmath as mp

    with mp.workdps(dps):
        zz = mp.mpmathify(z)
        if zz == 0:
            return mp.mpf(0)
        if zz == 1:
            return mp.pi ** 2 / 6
        return mp.polylog(2, zz) + mp.log(zz) * mp.log(1 - zz) / 2
