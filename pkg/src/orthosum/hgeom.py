"""Upper-half-plane geometry: Moebius maps, geodesics, collars, seams.

Conventions.  The ideal boundary is the extended real line with a
single point at infinity, written ``math.inf``.  Geodesics are
unordered endpoint pairs; internally endpoints become homogeneous
pairs (numerator, denominator) with infinity as (1, 0), so chart
changes never special-case it.  Lengths below 1e-12 are rejected as
degenerate rather than propagated into arccosh/arcsinh where they
would lose every significant digit.

Boundary ends carry their grade with them.  Wherever a formula calls
for the substitution pattern geodesic -> cosh(k l / 2), cone ->
cos(k theta / 2), cusp -> 1, the helpers here apply it with the
grade folded in; an infinite grade on a geodesic end means the collar
has shrunk onto the geodesic itself, so the multiplier degenerates
to 1 and the end behaves like an ungraded boundary.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, GeometryError

__all__ = [
    "MoebiusMap",
    "GeodesicUHP",
    "BoundaryEnd",
    "HoroballSpec",
    "collar_radius",
    "intersection_angle_cot2",
    "harmonic_conjugate_k",
    "trifor_chain",
    "gamma_length_from_trunc",
    "pants_seams",
    "distance_between_geodesics",
    "outq_predicate",
    "boundary_derivative_range",
]

_DEGENERATE = 1e-12


@dataclass(frozen=True)
class MoebiusMap:
    """Real Moebius transformation, normalized to determinant one."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not math.isfinite(det) or det <= 0.0:
            raise DomainError("Moebius map needs positive finite determinant, got %r" % (det,))
        if abs(det - 1.0) > 1e-12:
            s = 1.0 / math.sqrt(det)
            object.__setattr__(self, "a", self.a * s)
            object.__setattr__(self, "b", self.b * s)
            object.__setattr__(self, "c", self.c * s)
            object.__setattr__(self, "d", self.d * s)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def trace(self):
        return self.a + self.d

    def apply(self, z):
        """Act on a point of the open upper half plane."""
        num = self.a * z + self.b
        den = self.c * z + self.d
        return num / den

    def boundary(self, x):
        """Act on an extended-real boundary point."""
        if math.isinf(x):
            return math.inf if self.c == 0.0 else self.a / self.c
        den = self.c * x + self.d
        if den == 0.0:
            return math.inf
        return (self.a * x + self.b) / den

    def inverse(self):
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other):
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def _homog(x):
    # extended real -> homogeneous pair with infinity at (1, 0)
    if math.isinf(x):
        return (1.0, 0.0)
    return (float(x), 1.0)


@dataclass(frozen=True)
class GeodesicUHP:
    """Complete geodesic given by two distinct ideal endpoints.

    Finite endpoints are stored sorted; an infinite endpoint, when
    present, is stored second.
    """

    p: float
    q: float

    def __post_init__(self):
        p, q = self.p, self.q
        if (math.isinf(p) and math.isinf(q)) or p == q:
            raise GeometryError("geodesic endpoints must be distinct, got %r, %r" % (p, q))
        if math.isinf(p) or (not math.isinf(q) and q < p):
            object.__setattr__(self, "p", q)
            object.__setattr__(self, "q", p)

    def homogeneous(self):
        return _homog(self.p), _homog(self.q)


@dataclass(frozen=True)
class BoundaryEnd:
    """One end of a surface: geodesic, cone point, or cusp, with grade.

    param is the boundary length for a geodesic end, the cone angle in
    (0, pi] for a cone end, and None for a cusp.  grade is a positive
    integer or math.inf; cone ends require theta <= pi / grade, which
    also rules the infinite grade out for them.
    """

    kind: str
    param: object
    grade: object

    def __post_init__(self):
        if self.kind not in ("geodesic", "cone", "cusp"):
            raise DomainError("unknown end kind %r" % (self.kind,))
        k = self.grade
        if not (k == math.inf or (isinstance(k, int) and k >= 1)):
            raise DomainError("grade must be a positive integer or math.inf, got %r" % (k,))
        if self.kind == "geodesic":
            if not (isinstance(self.param, (int, float)) and self.param > _DEGENERATE):
                raise DomainError("geodesic end needs boundary length > %g" % (_DEGENERATE,))
        elif self.kind == "cone":
            th = self.param
            if not (isinstance(th, (int, float)) and 0.0 < th <= math.pi):
                raise DomainError("cone angle must lie in (0, pi], got %r" % (th,))
            if k == math.inf or th > math.pi / k + 1e-15:
                raise DomainError(
                    "cone end requires theta <= pi/k (theta=%r, k=%r)" % (th, k)
                )
        else:
            if self.param is not None:
                raise DomainError("cusp end takes no parameter")

    @classmethod
    def geodesic(cls, length, grade=1):
        return cls("geodesic", float(length), grade)

    @classmethod
    def cone(cls, theta, grade=1):
        return cls("cone", float(theta), grade)

    @classmethod
    def cusp(cls, grade=1):
        return cls("cusp", None, grade)


@dataclass(frozen=True)
class HoroballSpec:
    """Cusp collar described by its quotient boundary length."""

    boundary_length: float


def collar_radius(end):
    """Radius of the grade-k collar around an end.

    Geodesic of length l: arcsinh(1 / sinh(k l / 2)).  Cone of angle
    theta: arccosh(1 / sin(k theta / 2)), empty exactly at theta =
    pi/k.  A cusp has no radius; the collar is the horoball whose
    quotient boundary length is 2/k, returned as a HoroballSpec.
    """
    k = end.grade
    if end.kind == "geodesic":
        if k == math.inf:
            return 0.0
        return math.asinh(1.0 / math.sinh(k * end.param / 2.0))
    if end.kind == "cone":
        half = k * end.param / 2.0
        if half > math.pi / 2.0 + 1e-15:
            raise DomainError("cone collar undefined for theta > pi/k")
        s = math.sin(half)
        if s >= 1.0:
            return 0.0
        return math.acosh(1.0 / s)
    if k == math.inf:
        return HoroballSpec(boundary_length=0.0)
    return HoroballSpec(boundary_length=2.0 / k)


def _require_crossing(x, y, c, d):
    lo, hi = (x, y) if x < y else (y, x)
    c_in = lo < c < hi
    d_in = lo < d < hi
    if c_in == d_in:
        raise GeometryError(
            "geodesics [%r, %r] and [%r, %r] do not cross in the interior" % (x, y, c, d)
        )


def intersection_angle_cot2(x, y, c, d, limit=False):
    """cot^2 of half the intersection angle of [x, y] and [c, d].

    Returns |(x-c)(x-d) / ((y-c)(y-d))|; the angle is the one opening
    toward the y side, so exchanging x and y inverts the value.  The
    endpoints must interleave on the circle (the geodesics actually
    cross).  Infinite endpoints are rejected unless limit=True, and
    then only in the c or d slot, where the corresponding ratio factor
    drops to its limit of one.
    """
    vals = (x, y, c, d)
    if len({v for v in vals}) < 4:
        raise GeometryError("shared endpoints: geodesics are tangent at the boundary")
    infs = [math.isinf(v) for v in vals]
    if any(infs):
        if not limit:
            raise GeometryError(
                "infinite endpoint requires limit=True; got %r" % (vals,)
            )
        if infs[0] or infs[1] or (infs[2] and infs[3]):
            raise GeometryError(
                "the limit form allows infinity only in one of the c, d slots"
            )
        # with one infinite endpoint the crossing condition reduces to
        # the finite one lying strictly between x and y, and the ratio
        # factor of the infinite endpoint drops to 1
        f = d if infs[2] else c
        lo, hi = (x, y) if x < y else (y, x)
        if not (lo < f < hi):
            raise GeometryError("vertical geodesic at %r misses the interior of [%r, %r]" % (f, x, y))
        return abs((x - f) / (y - f))
    _require_crossing(x, y, c, d)
    val = abs((x - c) * (x - d) / ((y - c) * (y - d)))
    if val <= 0.0:
        raise GeometryError("degenerate intersection configuration")
    return val


def harmonic_conjugate_k(x, y, symmetric_limit=False):
    """The k > 0 making [-1/k, k] the harmonic conjugate of [x, y] at i.

    Solves 1/k - k = (2 - 2 x y) / (x + y); the returned geodesic
    endpoint pair (-1/k, k) then satisfies cross ratio -1 against
    (x, y).  x + y = 0 is the vertically symmetric configuration where
    every candidate is harmonic; pass symmetric_limit=True to receive
    k = 1 there instead of an error.
    """
    s = x + y
    if s == 0.0:
        if symmetric_limit:
            return 1.0
        raise DomainError("x + y = 0 is the symmetric configuration; pass symmetric_limit=True")
    r = (2.0 - 2.0 * x * y) / s
    return (-r + math.sqrt(r * r + 4.0)) / 2.0


def trifor_chain(ell_gamma):
    """Seam chain of the two-cusp pants over a geodesic of length l(gamma).

    Returns (l(sigma_gamma), m_bar, l(mu_bar)) linked by
    sinh(l_gamma/4) sinh(l_sigma/2) = 1, e^m_bar = cosh(l_sigma/2) and
    e^{-l_mu_bar} = 1 - e^{-2 m_bar}.
    """
    if not (ell_gamma > _DEGENERATE):
        raise DomainError("ell_gamma must exceed %g" % (_DEGENERATE,))
    s = 1.0 / math.sinh(ell_gamma / 4.0)
    ell_sigma = 2.0 * math.asinh(s)
    m_bar = 0.5 * math.log1p(s * s)
    ell_mu_bar = math.log1p(1.0 / (s * s))
    return ell_sigma, m_bar, ell_mu_bar


def gamma_length_from_trunc(ell_mu_bar):
    """Length of the wrapped geodesic from the truncated ortho length.

    4 arccosh(e^{L/2}), evaluated as 4 (L/2 + log1p(sqrt(-expm1(-L))))
    so large L does not overflow the exponential.
    """
    if not (ell_mu_bar > _DEGENERATE):
        raise DomainError("ell_mu_bar must exceed %g" % (_DEGENERATE,))
    L = float(ell_mu_bar)
    return 4.0 * (0.5 * L + math.log1p(math.sqrt(-math.expm1(-L))))


def _subst(end):
    """Hexagon substitution (C, S) for one graded end.

    geodesic -> (cosh, sinh) of k l / 2, cone -> (cos, sin) of
    k theta / 2, cusp -> (1, None).  Infinite grade on a geodesic end
    degenerates to multiplier one.
    """
    if end.kind == "cusp":
        return 1.0, None
    if end.kind == "geodesic":
        k = 1.0 if end.grade == math.inf else float(end.grade)
        half = k * end.param / 2.0
        return math.cosh(half), math.sinh(half)
    half = end.grade * end.param / 2.0
    return math.cos(half), math.sin(half)


def _seam_to_end(C_self, S_self, C_opp, C_gam, S_gam, kind):
    """Perpendicular from the gamma boundary to one end.

    Geodesic ends get the seam length sigma, cone ends the distance m
    to the cone point, cusps the truncated distance m_bar to the
    natural collar.
    """
    if kind == "cusp":
        return math.log((C_gam + C_opp) / S_gam)
    arg = (C_self * C_gam + C_opp) / (S_self * S_gam)
    if kind == "geodesic":
        if arg < 1.0:
            raise GeometryError("seam to geodesic end not realizable (cosh %r < 1)" % (arg,))
        return math.acosh(arg)
    if arg <= 0.0:
        raise GeometryError("seam to cone point not realizable (sinh %r <= 0)" % (arg,))
    return math.asinh(arg)


def _wrap_factor(kind, S_self, seam):
    # cosh(sigma_gamma / 2) as seen from one end
    if kind == "geodesic":
        return S_self * math.sinh(seam)
    if kind == "cone":
        return S_self * math.cosh(seam)
    return math.exp(seam)


def pants_seams(end_a, end_b, ell_gamma):
    """Seam data of the pants over gamma with the two given ends.

    The third boundary is the geodesic of length ell_gamma.  Output
    collects, per end and matching its kind, the seam length sigma,
    the cone distance m, or the cusp truncation m_bar, together with
    the gamma-to-gamma seam sigma_gamma.  Both ends determine
    sigma_gamma independently; disagreement or an out-of-range
    hyperbolic argument means the triple bounds no hyperbolic pants
    and raises GeometryError.
    """
    from .terms import PantsGeometry

    if not (ell_gamma > _DEGENERATE):
        raise GeometryError("ell_gamma must exceed %g" % (_DEGENERATE,))
    C_gam = math.cosh(ell_gamma / 2.0)
    S_gam = math.sinh(ell_gamma / 2.0)
    Ca, Sa = _subst(end_a)
    Cb, Sb = _subst(end_b)
    seam_a = _seam_to_end(Ca, Sa, Cb, C_gam, S_gam, end_a.kind)
    seam_b = _seam_to_end(Cb, Sb, Ca, C_gam, S_gam, end_b.kind)
    wa = _wrap_factor(end_a.kind, Sa, seam_a)
    wb = _wrap_factor(end_b.kind, Sb, seam_b)
    if abs(wa - wb) > 1e-9 * max(1.0, abs(wa)):
        raise GeometryError("inconsistent wrap factors %r vs %r" % (wa, wb))
    if wa < 1.0:
        raise GeometryError("gamma self-seam not realizable (cosh %r < 1)" % (wa,))
    sigma_gamma = 2.0 * math.acosh(wa)

    fields = {
        "sigma_alpha": None, "sigma_beta": None,
        "m_alpha": None, "m_beta": None,
        "m_bar_alpha": None, "m_bar_beta": None,
    }
    slot = {"geodesic": "sigma_%s", "cone": "m_%s", "cusp": "m_bar_%s"}
    fields[slot[end_a.kind] % "alpha"] = seam_a
    fields[slot[end_b.kind] % "beta"] = seam_b
    return PantsGeometry(
        end_a=end_a,
        end_b=end_b,
        ell_gamma=float(ell_gamma),
        sigma_gamma=sigma_gamma,
        **fields,
    )


def distance_between_geodesics(g1, g2):
    """Hyperbolic distance between disjoint complete geodesics.

    Computed from the endpoint determinant form of the cross ratio;
    crossing or boundary-tangent configurations raise GeometryError.
    """
    (p1, q1) = g1.homogeneous()
    (p2, q2) = g2.homogeneous()

    def det2(u, v):
        return u[0] * v[1] - v[0] * u[1]

    den = abs(det2(p1, q1) * det2(p2, q2))
    num = abs(det2(p1, p2) * det2(q1, q2) + det2(p1, q2) * det2(q1, p2))
    if den == 0.0:
        raise GeometryError("geodesics share an ideal endpoint")
    chl = num / den
    if chl < 1.0 - _DEGENERATE:
        raise GeometryError("geodesics intersect (cosh distance %r < 1)" % (chl,))
    if chl <= 1.0 + _DEGENERATE:
        raise GeometryError("geodesics tangent or asymptotic within tolerance")
    return math.acosh(chl)


def outq_predicate(delta, s):
    """Quadrilateral-exclusion test of the small-cone-angle step.

    With phi = 2 arctan(1 / (sinh s tanh delta)), phi <= pi/2 holds
    exactly when sinh s tanh delta >= 1.  In that branch the predicate
    certifies s >= s'/2 for sinh(s'/2) sinh(delta) = 1 and returns
    True; otherwise the configuration is out of the lemma's range and
    the answer is False.
    """
    if not (delta > 0.0) or s < 0.0:
        raise DomainError("need delta > 0 and s >= 0")
    t = math.sinh(s) * math.tanh(delta)
    if t < 1.0:
        return False
    half_s_prime = math.asinh(1.0 / math.sinh(delta))
    return s + _DEGENERATE >= half_s_prime


def boundary_derivative_range(ell):
    """Sharp bounds [e^-l, e^l] for boundary derivative moduli of a
    disk Moebius map displacing the origin by hyperbolic distance l."""
    if ell < 0.0:
        raise DomainError("displacement must be nonnegative")
    return math.exp(-ell), math.exp(ell)
