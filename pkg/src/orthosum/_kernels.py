"""Numeric kernels with two interchangeable backends.

The hot inner loops (horoball scans over lattice directions, the
group-ball frontier step for bordered pants, batched axis distances,
compensated summation) exist twice: once compiled with numba and once
as plain numpy/python.  Selection happens at import time:

    ORTHOSUM_BACKEND=numba    require numba, raise if unavailable
    ORTHOSUM_BACKEND=numpy    force the fallback
    unset / "auto"            numba when importable, else numpy

Both backends execute the identical sequence of elementwise IEEE-754
operations (no fused expressions, no fastmath, no BLAS), so outputs are
bit-equal rather than merely close.  benchmarks/bench_backends.py uses
``implementation`` to time one against the other; everything else in
the package calls the module-level names bound below.
"""

import os

import numpy as np

__all__ = [
    "active_backend",
    "implementation",
    "in_core_scan",
    "pants_step",
    "axes_cross_cosh",
    "neumaier",
]


# ---------------------------------------------------------------- numpy

def _np_in_core_scan(ps, qs, kpar, minks):
    """Classify truncated segments against the horoball packing.

    Row i describes the chart-normalized geodesic from infinity to
    p/q.  kpar[i] is the 2x2 grade table indexed by the parity class
    (r mod 2, s mod 2) of a candidate rational r/s, minks[i] is the
    smallest grade on the surface.  Returns int8 codes per row:
    0 the open segment clears every horoball, 1 it grazes one exactly,
    2 it enters one.  Integer arithmetic throughout, so 1 is an exact
    tangency, not a tolerance call.
    """
    n = len(ps)
    out = np.empty(n, dtype=np.int8)
    for i in range(n):
        p = int(ps[i])
        q = int(qs[i])
        mink = int(minks[i])
        code = 0
        smax = q // (2 * mink)
        for s in range(1, smax + 1):
            r0 = (p * s) // q
            for r in range(r0 - 1, r0 + 3):
                a = -r if r < 0 else r
                b = s
                while b:
                    a, b = b, a % b
                if a != 1:
                    continue
                m = p * s - r * q
                if m < 0:
                    m = -m
                if m == 0:
                    continue
                k = int(kpar[i, r & 1, s & 1])
                t = 2 * k * s * m
                if t < q:
                    code = 2
                    break
                if t == q and code == 0:
                    code = 1
            if code == 2:
                break
        out[i] = code
    return out


def _np_pants_step(mats, lasts, inv_gi, g00, g01, g10, g11, y0, ch_cap):
    """Right-multiply a frontier of SL(2,R) matrices by one generator.

    mats has rows (a, b, c, d).  Returns the product rows and a keep
    mask: drop words whose last letter is the generator's inverse and
    words that move the basepoint i*y0 beyond cosh distance ch_cap.
    """
    a = mats[:, 0]
    b = mats[:, 1]
    c = mats[:, 2]
    d = mats[:, 3]
    e00 = a * g00 + b * g10
    e01 = a * g01 + b * g11
    e10 = c * g00 + d * g10
    e11 = c * g01 + d * g11
    det = e00 * e11 - e01 * e10
    y0sq = y0 * y0
    den = e11 * e11 + e10 * e10 * y0sq
    re = (e01 * e11 + e00 * e10 * y0sq) / den
    im = det * y0 / den
    chd = 1.0 + (re * re + (im - y0) * (im - y0)) / (2.0 * im * y0)
    out = np.empty_like(mats)
    out[:, 0] = e00
    out[:, 1] = e01
    out[:, 2] = e10
    out[:, 3] = e11
    keep = (lasts != inv_gi) & (chd <= ch_cap)
    return out, keep


def _np_axes_cross_cosh(g00, g01, g10, g11,
                        x1n, x1d, x2n, x2d,
                        y1n, y1d, y2n, y2d):
    """cosh of the distance between a fixed axis and g-translated axes.

    Endpoints are homogeneous pairs (numerator, denominator) so the
    point at infinity is (1, 0) and never a special case.  Values
    below 1 mean the axes cross; the caller filters.
    """
    t1n = g00 * y1n + g01 * y1d
    t1d = g10 * y1n + g11 * y1d
    t2n = g00 * y2n + g01 * y2d
    t2d = g10 * y2n + g11 * y2d
    d11 = x1n * t1d - t1n * x1d
    d22 = x2n * t2d - t2n * x2d
    d12 = x1n * t2d - t2n * x1d
    d21 = x2n * t1d - t1n * x2d
    dxx = x1n * x2d - x2n * x1d
    dtt = t1n * t2d - t2n * t1d
    num = np.abs(d11 * d22 + d12 * d21)
    den = np.abs(dxx * dtt)
    chl = np.where(den == 0.0, np.inf, num / np.where(den == 0.0, 1.0, den))
    return chl


def _np_neumaier(values):
    """Compensated sum in array order."""
    s = 0.0
    comp = 0.0
    for i in range(len(values)):
        v = float(values[i])
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
    return s + comp


_NUMPY_IMPL = {
    "in_core_scan": _np_in_core_scan,
    "pants_step": _np_pants_step,
    "axes_cross_cosh": _np_axes_cross_cosh,
    "neumaier": _np_neumaier,
}


# ---------------------------------------------------------------- numba

def _build_numba_impl():
    from numba import njit

    @njit(cache=True, nogil=True)
    def nb_in_core_scan(ps, qs, kpar, minks):
        n = ps.shape[0]
        out = np.empty(n, dtype=np.int8)
        for i in range(n):
            p = ps[i]
            q = qs[i]
            mink = minks[i]
            code = 0
            smax = q // (2 * mink)
            for s in range(1, smax + 1):
                r0 = (p * s) // q
                for r in range(r0 - 1, r0 + 3):
                    a = -r if r < 0 else r
                    b = s
                    while b:
                        a, b = b, a % b
                    if a != 1:
                        continue
                    m = p * s - r * q
                    if m < 0:
                        m = -m
                    if m == 0:
                        continue
                    k = kpar[i, r & 1, s & 1]
                    t = 2 * k * s * m
                    if t < q:
                        code = 2
                        break
                    if t == q and code == 0:
                        code = 1
                if code == 2:
                    break
            out[i] = code
        return out

    @njit(cache=True, nogil=True)
    def nb_pants_step(mats, lasts, inv_gi, g00, g01, g10, g11, y0, ch_cap):
        n = mats.shape[0]
        out = np.empty_like(mats)
        keep = np.empty(n, dtype=np.bool_)
        y0sq = y0 * y0
        for i in range(n):
            a = mats[i, 0]
            b = mats[i, 1]
            c = mats[i, 2]
            d = mats[i, 3]
            e00 = a * g00 + b * g10
            e01 = a * g01 + b * g11
            e10 = c * g00 + d * g10
            e11 = c * g01 + d * g11
            det = e00 * e11 - e01 * e10
            den = e11 * e11 + e10 * e10 * y0sq
            re = (e01 * e11 + e00 * e10 * y0sq) / den
            im = det * y0 / den
            chd = 1.0 + (re * re + (im - y0) * (im - y0)) / (2.0 * im * y0)
            out[i, 0] = e00
            out[i, 1] = e01
            out[i, 2] = e10
            out[i, 3] = e11
            keep[i] = (lasts[i] != inv_gi) and (chd <= ch_cap)
        return out, keep

    @njit(cache=True, nogil=True)
    def nb_axes_cross_cosh(g00, g01, g10, g11,
                           x1n, x1d, x2n, x2d,
                           y1n, y1d, y2n, y2d):
        n = g00.shape[0]
        chl = np.empty(n, dtype=np.float64)
        for i in range(n):
            t1n = g00[i] * y1n + g01[i] * y1d
            t1d = g10[i] * y1n + g11[i] * y1d
            t2n = g00[i] * y2n + g01[i] * y2d
            t2d = g10[i] * y2n + g11[i] * y2d
            d11 = x1n * t1d - t1n * x1d
            d22 = x2n * t2d - t2n * x2d
            d12 = x1n * t2d - t2n * x1d
            d21 = x2n * t1d - t1n * x2d
            dxx = x1n * x2d - x2n * x1d
            dtt = t1n * t2d - t2n * t1d
            num = abs(d11 * d22 + d12 * d21)
            den = abs(dxx * dtt)
            if den == 0.0:
                chl[i] = np.inf
            else:
                chl[i] = num / den
        return chl

    @njit(cache=True, nogil=True)
    def nb_neumaier(values):
        s = 0.0
        comp = 0.0
        for i in range(values.shape[0]):
            v = values[i]
            t = s + v
            if abs(s) >= abs(v):
                comp += (s - t) + v
            else:
                comp += (v - t) + s
            s = t
        return s + comp

    return {
        "in_core_scan": nb_in_core_scan,
        "pants_step": nb_pants_step,
        "axes_cross_cosh": nb_axes_cross_cosh,
        "neumaier": nb_neumaier,
    }


def implementation(name):
    """Return the kernel table for an explicitly named backend.

    Raises ImportError when numba is requested but absent; never falls
    back silently, that choice belongs to the auto mode alone.
    """
    if name == "numpy":
        return dict(_NUMPY_IMPL)
    if name == "numba":
        return _build_numba_impl()
    raise ValueError("unknown backend %r (expected 'numba' or 'numpy')" % (name,))


def _select():
    req = os.environ.get("ORTHOSUM_BACKEND", "auto").strip().lower()
    if req in ("", "auto"):
        try:
            return "numba", _build_numba_impl()
        except ImportError:
            return "numpy", dict(_NUMPY_IMPL)
    if req in ("numba", "numpy"):
        return req, implementation(req)
    raise ValueError(
        "ORTHOSUM_BACKEND=%r not recognized (use 'numba', 'numpy' or 'auto')" % (req,)
    )


active_backend, _impl = _select()

in_core_scan = _impl["in_core_scan"]
pants_step = _impl["pants_step"]
axes_cross_cosh = _impl["axes_cross_cosh"]
neumaier = _impl["neumaier"]
