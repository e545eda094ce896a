"""Exact-arithmetic incidence model for uniformly graded core checks.

For a uniform grading (k, k, k) the quotient construction lands in the
(2k, 2k, 2k) rotation triangle group.  Working in the basis of the
three mirror normals, every group element is a 3x3 matrix over the
ring Z[sqrt(D)] with D = (2 cos(pi/2k))^2, which is an integer for
k = 2 (D = 2) and k = 3 (D = 3).  Cone-point lifts have exact
coordinates, so "the open segment between two endpoint lifts passes
through a cone point" reduces to a determinant-and-sign test with no
rounding anywhere.

Floating point appears only in the search heuristic that decides
which group elements are near the segment; every reported hit is
certified exactly.
"""

from fractions import Fraction
from math import acosh, atanh, gcd, sqrt

import numpy as np

from .errors import BudgetExceeded

# ring elements are pairs (a, b) meaning a + b sqrt(D)


def _rmul(x, y, D):
    a, b = x
    c, d = y
    return (a * c + b * d * D, a * d + b * c)


def _radd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _rsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _rneg(x):
    return (-x[0], -x[1])


def _rsign(x, D):
    a, b = x
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    # mixed signs: compare a^2 against b^2 D; equality impossible, D squarefree
    if a > 0:
        return 1 if a * a > b * b * D else -1
    return 1 if b * b * D > a * a else -1


def _rfloat(x, D):
    return x[0] + x[1] * sqrt(D)


_R0 = (0, 0)
_R1 = (1, 0)
_ID3 = (_R1, _R0, _R0, _R0, _R1, _R0, _R0, _R0, _R1)


def _m3mul(X, Y, D):
    out = []
    for i in range(3):
        for j in range(3):
            s = _R0
            for t in range(3):
                s = _radd(s, _rmul(X[3 * i + t], Y[3 * t + j], D))
            out.append(s)
    return tuple(out)


def _m3vec(X, v, D):
    out = []
    for i in range(3):
        s = _R0
        for t in range(3):
            s = _radd(s, _rmul(X[3 * i + t], v[t], D))
        out.append(s)
    return tuple(out)


def _det3(M, D):
    def mul(x, y):
        return _rmul(x, y, D)

    a, b, c, d, e, f, g, h, i = M
    return _rsub(
        _radd(mul(a, _rsub(mul(e, i), mul(f, h))), mul(c, _rsub(mul(d, h), mul(e, g)))),
        mul(b, _rsub(mul(d, i), mul(f, g))),
    )


def _adj3_col(M, i, D):
    """Column i of the adjugate; M symmetric here so rows work too."""

    def mul(x, y):
        return _rmul(x, y, D)

    def cof(r, c):
        rs = [x for x in range(3) if x != r]
        cs = [x for x in range(3) if x != c]
        d = _rsub(
            mul(M[3 * rs[0] + cs[0]], M[3 * rs[1] + cs[1]]),
            mul(M[3 * rs[0] + cs[1]], M[3 * rs[1] + cs[0]]),
        )
        return d if (r + c) % 2 == 0 else _rneg(d)

    return tuple(cof(i, c) for c in range(3))


_STAB_WORDS = ("A", "B", "Ab")


class Orbifold:
    """(2k, 2k, 2k) rotation triangle group over Z[sqrt(D)].

    Supports k = 2 and k = 3 only; for other grades the ring is not
    quadratic and the exact machinery does not apply.
    """

    def __init__(self, k):
        if k not in (2, 3):
            raise ValueError("exact model supports k = 2 or 3 only")
        self.k = k
        self.D = {2: 2, 3: 3}[k]
        D = self.D
        # H = 2G with G the Gram matrix of unit mirror normals,
        # off-diagonal entries -cos(pi/2k) = -sqrt(D)/2
        H = [
            [(2, 0), (0, -1), (0, -1)],
            [(0, -1), (2, 0), (0, -1)],
            [(0, -1), (0, -1), (2, 0)],
        ]
        self.H = tuple(H[r][c] for r in range(3) for c in range(3))
        assert _rsign(_det3(self.H, D), D) < 0
        refl = []
        for m in range(3):
            rows = []
            for r in range(3):
                for c in range(3):
                    if r != m:
                        rows.append(_R1 if r == c else _R0)
                    else:
                        e = _R1 if r == c else _R0
                        rows.append(_rsub(e, self.H[3 * r + c]))
            refl.append(tuple(rows))
        self.rot = [
            _m3mul(refl[(i + 1) % 3], refl[(i + 2) % 3], D) for i in range(3)
        ]
        self.roti = [
            _m3mul(refl[(i + 2) % 3], refl[(i + 1) % 3], D) for i in range(3)
        ]
        for i in range(3):
            P = _ID3
            for _ in range(2 * k):
                P = _m3mul(P, self.rot[i], D)
            assert P == _ID3
        assert _m3mul(_m3mul(self.rot[0], self.rot[1], D), self.rot[2], D) == _ID3
        # vertex i is orthogonal to mirrors i+1 and i+2: adjugate column
        vs = [_adj3_col(self.H, i, D) for i in range(3)]
        for i in range(3):
            assert _rsign(self.inner(vs[i], vs[i]), D) < 0, "vertex not timelike"
            assert _m3vec(self.rot[i], vs[i], D) == vs[i], "vertex not fixed"
        for i in range(3):
            for j in range(i + 1, 3):
                assert _rsign(self.inner(vs[i], vs[j]), D) < 0, "opposite cones"
        self.v = vs
        self.let = {
            "A": self.rot[0],
            "a": self.roti[0],
            "B": self.roti[2],
            "b": self.rot[2],
        }
        # cusp index (0 = infinity, 1 = 0, 2 = 1) -> base cone lift
        self.u = [vs[0], vs[2], _m3vec(self.rot[0], vs[1], D)]
        for c in range(3):
            g = self.dev(_STAB_WORDS[c])
            assert _m3vec(g, self.u[c], D) == self.u[c], "stabilizer must fix lift"
        # float frame PM with PM^T J PM = H, J = diag(1, 1, -1)
        HF = np.array(
            [[_rfloat(self.H[3 * r + c], D) for c in range(3)] for r in range(3)]
        )
        w, Q = np.linalg.eigh(HF)
        assert w[0] < 0 < w[1]
        PM = np.vstack(
            [
                np.sqrt(w[1]) * Q[:, 1],
                np.sqrt(w[2]) * Q[:, 2],
                np.sqrt(-w[0]) * Q[:, 0],
            ]
        )
        if (PM @ np.array([_rfloat(e, D) for e in vs[0]]))[2] < 0:
            PM[2] *= -1.0
        self.PM = PM

    def inner(self, u, v):
        D = self.D
        s = _R0
        for i in range(3):
            for j in range(3):
                s = _radd(s, _rmul(_rmul(u[i], self.H[3 * i + j], D), v[j], D))
        return s

    def dev(self, w):
        g = _ID3
        for ch in w:
            g = _m3mul(g, self.let[ch], self.D)
        return g

    def tofloat(self, v):
        return self.PM @ np.array([_rfloat(e, self.D) for e in v])


def _jdot(u, v):
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def _tnorm(v):
    return v / sqrt(-_jdot(v, v))


def _canon_pt(z):
    g0 = 0
    for a, b in z:
        g0 = gcd(g0, gcd(abs(a), abs(b)))
    if g0 > 1:
        z = tuple((a // g0, b // g0) for a, b in z)
    for a, b in z:
        if a != 0 or b != 0:
            if a < 0 or (a == 0 and b < 0):
                z = tuple((-x, -y) for x, y in z)
            break
    return z


def model_check(orb, i, j, w, corridor=3.0, screen=1e-3, cap=200000):
    """Certify whether the open lift segment misses every cone point.

    Endpoints are the base lift of cusp i and the dev(w) translate of
    the base lift of cusp j.  Returns (verdict, n_hits, ball_size):
    verdict True means no interior cone lift (exactly certified),
    False means at least one exact interior hit, None means the two
    endpoint lifts coincide and there is no segment to test.

    The group ball is grown from the word-prefix path and pruned by
    float distance to the segment; candidate lifts inside `screen`
    are then tested exactly (collinearity determinant plus strict
    betweenness via 2x2 minor signs), so float error can only cost
    completeness of the search, never soundness of a hit.  The
    corridor is generous: lifts of a fundamental cell within the
    corridor keep expansion going, and any interior hit lies on the
    segment itself, well inside.
    """
    D = orb.D
    p = orb.u[i]
    q = _m3vec(orb.dev(w), orb.u[j], D)
    Pf = _tnorm(orb.tofloat(p))
    Qf = _tnorm(orb.tofloat(q))
    ch = -_jdot(Pf, Qf)
    if ch <= 1.0 + 1e-12:
        return (None, 0, 0)
    seg_len = acosh(ch)
    wdir = Qf - ch * Pf
    wdir = wdir / sqrt(_jdot(wdir, wdir))

    def seg_dist(zf):
        a = -_jdot(zf, Pf)
        b = _jdot(zf, wdir)
        if a <= 0:
            return 1e9, -1.0
        t = atanh(max(-0.999999999999, min(0.999999999999, b / a)))
        if t < 0.0:
            co = -_jdot(zf, Pf)
            return (acosh(co) if co > 1 else 0.0), t
        if t > seg_len:
            co = -_jdot(zf, Qf)
            return (acosh(co) if co > 1 else 0.0), t
        perp = -_jdot(zf, Pf * np.cosh(t) + wdir * np.sinh(t))
        return (acosh(perp) if perp > 1 else 0.0), t

    def exact_between(z):
        M = tuple(list(p) + list(q) + list(z))
        if _rsign(_det3(M, D), D) != 0:
            return False
        # z = alpha p + beta q; recover sign(alpha), sign(beta) from any
        # coordinate pair where p, q are independent
        for r1 in range(3):
            for r2 in range(r1 + 1, 3):
                dpq = _rsub(_rmul(p[r1], q[r2], D), _rmul(p[r2], q[r1], D))
                sd = _rsign(dpq, D)
                if sd == 0:
                    continue
                dzq = _rsub(_rmul(z[r1], q[r2], D), _rmul(z[r2], q[r1], D))
                dpz = _rsub(_rmul(p[r1], z[r2], D), _rmul(p[r2], z[r1], D))
                return _rsign(dzq, D) * sd > 0 and _rsign(dpz, D) * sd > 0
        return False

    seeds = [_ID3]
    g = _ID3
    for ch_ in w:
        g = _m3mul(g, orb.let[ch_], D)
        seeds.append(g)
    gens = orb.rot + orb.roti
    seen = {}
    frontier = []
    for s in seeds:
        if s not in seen:
            seen[s] = True
            frontier.append(s)
    n_hits = 0
    checked = set()
    while frontier:
        if len(seen) > cap:
            raise BudgetExceeded("model search ball exceeded %d elements" % (cap,))
        nxt = []
        for g in frontier:
            best = 1e9
            for m in range(3):
                z = _m3vec(g, orb.v[m], D)
                dist, t = seg_dist(_tnorm(orb.tofloat(z)))
                best = min(best, dist)
                if dist < screen and -1e-9 < t < seg_len + 1e-9:
                    ck = _canon_pt(z)
                    if ck not in checked:
                        checked.add(ck)
                        if exact_between(z):
                            n_hits += 1
            if best <= corridor:
                for G2 in gens:
                    g2 = _m3mul(g, G2, D)
                    if g2 not in seen:
                        seen[g2] = True
                        nxt.append(g2)
        frontier = nxt
    return (n_hits == 0, n_hits, len(seen))
