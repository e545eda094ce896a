"""Closed-form summands of the orthogeodesic identities.

Everything here is a finite combination of Rogers dilogarithms and
elementary functions: the boundary-crossing term, the three lasso
variants (geodesic, cusp, cone), the assembled pants volume h, the
graded summand phi with its decomposition and lower bound, and the
log-sine antiderivative f_delta.  The only numerics beyond dilog.py
is one well-conditioned 1D quadrature inside phi_decomposed.

h_of_pants consumes a PantsGeometry produced by hgeom.pants_seams; it
never recomputes seams, so the geometric data has a single source of
truth and can be tested on its own.
"""

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .dilog import PI2_6, dilog, rogers_L
from .errors import DomainError
from .hgeom import BoundaryEnd

__all__ = [
    "PantsGeometry",
    "TermValue",
    "br_term",
    "lasso_geodesic",
    "lasso_cusp",
    "cone_ab",
    "lasso_cone",
    "f_delta",
    "h_of_pants",
    "phi",
    "phi_decomposed",
    "phi_lower_bound",
    "unit_tangent_volume",
]

FOUR_PI2 = 4.0 * math.pi * math.pi


@dataclass(frozen=True)
class PantsGeometry:
    """Seam data of a graded pants, one field per geometric quantity.

    For each end exactly one of sigma (geodesic seam length), m
    (distance to the cone point) or m_bar (truncated distance to the
    natural cusp collar) is set; the other two stay None.  sigma_gamma
    is the self-seam of the gamma boundary and is always present.
    """

    end_a: BoundaryEnd
    end_b: BoundaryEnd
    ell_gamma: float
    sigma_gamma: float
    sigma_alpha: object = None
    sigma_beta: object = None
    m_alpha: object = None
    m_beta: object = None
    m_bar_alpha: object = None
    m_bar_beta: object = None


@dataclass(frozen=True)
class TermValue:
    """An h value with its labeled breakdown.

    For a generic pants the parts are volume (4 pi^2), br_alpha,
    br_beta, br_gamma and la_alpha, la_beta (each lasso recorded once;
    the multiplicity 4 belongs to the assembly), and
    value = volume - sum(br) - 4 sum(la) holds to roundoff.  The
    degenerate dispatch cases carry only the parts that exist: a
    doubly infinite geodesic grading leaves a single br_alpha_beta
    entry, an infinite-grade cusp leaves an empty breakdown.
    """

    value: float
    parts: dict


def br_term(ell_sigma):
    """Crossing term 8 L(1/cosh^2(l/2)) of one ortho-seam."""
    if not (ell_sigma > 0.0):
        raise DomainError("br_term needs a positive seam length")
    c = math.cosh(ell_sigma / 2.0)
    return 8.0 * rogers_L(1.0 / (c * c))


def lasso_geodesic(ell_gamma, ell_sigma):
    """Lasso volume around a geodesic end.

    With x = e^{-l(gamma)} and y = tanh^2(l(sigma)/2) this is
    2 (L(y) - L((1-x)/(1-xy)) + L((1-y)/(1-xy))).  It vanishes in both
    escape limits: far seam (y -> 1) and long gamma (x -> 0).
    """
    if not (ell_gamma > 0.0 and ell_sigma > 0.0):
        raise DomainError("lasso_geodesic needs positive lengths")
    x = math.exp(-ell_gamma)
    t = math.tanh(ell_sigma / 2.0)
    y = t * t
    d = 1.0 - x * y
    return 2.0 * (rogers_L(y) - rogers_L((1.0 - x) / d) + rogers_L((1.0 - y) / d))


def lasso_cusp(m_bar):
    """Lasso volume around a cusp at truncated distance m_bar: 4 L(1/(1+e^m))."""
    if m_bar < 0.0:
        raise DomainError("lasso_cusp needs m_bar >= 0")
    return 4.0 * rogers_L(1.0 / (1.0 + math.exp(m_bar)))


def cone_ab(m, theta):
    """Endpoint pair (a, b) of the gamma lift in the cone normalization.

    The cone point sits at i, one lift of gamma is the geodesic [a, b].
    Requires cosh(m) cos(theta/2) > 1, otherwise the configuration has
    no such lift with 0 < a.
    """
    if not (m > 0.0):
        raise DomainError("cone distance m must be positive")
    if not (0.0 < theta <= math.pi / 2.0):
        raise DomainError("cone angle must lie in (0, pi/2]")
    top = math.cosh(m) * math.cos(theta / 2.0)
    if top <= 1.0:
        raise DomainError(
            "cone configuration needs cosh(m) cos(theta/2) > 1, got %.17g; "
            "m must exceed %.17g at this angle"
            % (top, math.acosh(1.0 / math.cos(theta / 2.0)))
        )
    den = math.sinh(m) + math.cosh(m) * math.sin(theta / 2.0)
    return (top - 1.0) / den, (top + 1.0) / den


def lasso_cone(m, theta):
    """Lasso volume around a cone point of angle theta at distance m.

    2 Re{L(z) - L(1/z)} with z = (sinh m + tan(theta/2))/(sinh m + i).
    Im z < 0 and Im(1/z) > 0, so both arguments stay off the cuts.
    """
    if not (m > 0.0):
        raise DomainError("cone distance m must be positive")
    if not (0.0 < theta <= math.pi / 2.0):
        raise DomainError("cone angle must lie in (0, pi/2]")
    z = (math.sinh(m) + math.tan(theta / 2.0)) / (math.sinh(m) + 1j)
    val = rogers_L(z) - rogers_L(1.0 / z)
    return 2.0 * val.real


def _philog(delta, r):
    # log part of the antiderivative; the r = 0 limit is 0
    if r == 0.0:
        return 0.0
    T = math.log(abs(math.sin(r + delta)) / abs(math.sin(delta)))
    return T * math.log(math.sin(r)) - 0.5 * T * T


def f_delta(delta, r1, r2):
    """Antiderivative difference of (ln sin t) cot(t + delta) on [r1, r2].

    delta = 0 degenerates to (ln^2 sin r2 - ln^2 sin r1)/2; otherwise
    the closed form combines four principal-branch dilogarithm values
    per endpoint with the log part _philog.  The pole of the integrand
    at t = -delta must stay outside [r1, r2].
    """
    if not (0.0 <= r1 < r2 <= math.pi / 2.0):
        raise DomainError("need 0 <= r1 < r2 <= pi/2")
    if not (-math.pi / 2.0 < delta < math.pi / 2.0):
        raise DomainError("need |delta| < pi/2")
    if r1 <= -delta <= r2:
        raise DomainError("integrand pole at t = -delta inside [r1, r2]")
    if delta == 0.0:
        l2 = math.log(math.sin(r2))
        l1 = math.log(math.sin(r1))
        return 0.5 * (l2 * l2 - l1 * l1)
    u = 1.0 / math.tan(delta)
    c1 = 1.0 / math.tan(r1 + delta) if r1 != 0.0 else u
    c2 = 1.0 / math.tan(r2 + delta)
    acc = 0.0
    for eps in (1.0, -1.0):
        den = u - eps * 1j
        acc += dilog((u - c2) / den).real - dilog((u - c1) / den).real
    return -0.5 * acc + _philog(delta, r2) - _philog(delta, r1)


def _ungraded_cosh_half(end):
    c = math.cosh(end.param / 2.0)
    s = math.sinh(end.param / 2.0)
    return c, s


def _la_for_end(end, sigma, m, m_bar, ell_gamma):
    if end.kind == "geodesic":
        if sigma is None:
            raise DomainError("geodesic end without its sigma seam")
        return lasso_geodesic(ell_gamma, sigma)
    if end.kind == "cusp":
        if m_bar is None:
            raise DomainError("cusp end without its m_bar seam")
        return lasso_cusp(m_bar)
    if m is None:
        raise DomainError("cone end without its cone distance m")
    graded_angle = end.grade * end.param
    return lasso_cone(m, graded_angle)


def h_of_pants(pg):
    """Assembled summand h of one graded pants.

    Generic dispatch: 4 pi^2 minus the three crossing terms (only
    geodesic ends contribute one; Br of a cusp or cone end is 0) minus
    4 times the two lassos, each picked by end kind.  Degenerations:
    an infinite-grade geodesic end drops its crossing and lasso terms;
    an infinite-grade cusp collapses everything to 0; two infinite
    geodesic grades leave the single crossing term of the bare
    orthogeodesic between the two ends.
    """
    ea, eb = pg.end_a, pg.end_b
    inf_a = ea.grade == math.inf
    inf_b = eb.grade == math.inf

    if (ea.kind == "cusp" and inf_a) or (eb.kind == "cusp" and inf_b):
        return TermValue(value=0.0, parts={})

    if inf_a and inf_b:
        # both ends are geodesics truncated at themselves; h collapses
        # to the crossing term of the orthogeodesic mu between them
        ca, sa = _ungraded_cosh_half(ea)
        cb, sb = _ungraded_cosh_half(eb)
        arg = (ca * cb + math.cosh(pg.ell_gamma / 2.0)) / (sa * sb)
        ell_mu = math.acosh(arg)
        v = br_term(ell_mu)
        return TermValue(value=v, parts={"br_alpha_beta": v})

    parts = {"volume": FOUR_PI2, "br_gamma": br_term(pg.sigma_gamma)}
    la_sum = 0.0
    if not inf_a:
        parts["br_alpha"] = br_term(pg.sigma_alpha) if ea.kind == "geodesic" else 0.0
        parts["la_alpha"] = _la_for_end(
            ea, pg.sigma_alpha, pg.m_alpha, pg.m_bar_alpha, pg.ell_gamma
        )
        la_sum += parts["la_alpha"]
    if not inf_b:
        parts["br_beta"] = br_term(pg.sigma_beta) if eb.kind == "geodesic" else 0.0
        parts["la_beta"] = _la_for_end(
            eb, pg.sigma_beta, pg.m_beta, pg.m_bar_beta, pg.ell_gamma
        )
        la_sum += parts["la_beta"]
    br_sum = parts["br_gamma"] + parts.get("br_alpha", 0.0) + parts.get("br_beta", 0.0)
    value = FOUR_PI2 - br_sum - 4.0 * la_sum
    return TermValue(value=value, parts=parts)


def phi(L):
    """Graded identity summand: pi^2/4 - L(s) - L(s/(1+s)), s = sqrt(1-e^-L).

    Strictly decreasing from pi^2/4 (L -> 0) to 0 (L -> oo).  L = 0
    itself is rejected; the identity never evaluates there.
    """
    if not (L > 0.0):
        raise DomainError("phi is defined for L > 0")
    s = math.sqrt(-math.expm1(-L))
    return math.pi * math.pi / 4.0 - rogers_L(s) - rogers_L(s / (1.0 + s))


def _phi_integrand(u):
    if u == 1.0:
        return 0.5
    return -math.log(u) / (1.0 - u * u)


def phi_decomposed(L):
    """phi through its log-plus-integral decomposition.

    (1/4) log(1/(1-e^-L)) log((1+a)/(1-a)) + 2 int_a^1 -log t/(1-t^2) dt
    with a = sqrt(1-e^-L).  The log ratio is expanded as 2 log(1+a) + L
    so large L cannot hit the 0 * inf corner, and the integral is split
    at the midpoint because the integrand has a log singularity at a
    when a is small.
    """
    if not (L > 0.0):
        raise DomainError("phi_decomposed is defined for L > 0")
    a = math.sqrt(-math.expm1(-L))
    lead = -math.log1p(-math.exp(-L)) * (2.0 * math.log1p(a) + L) / 4.0
    mid = (a + 1.0) / 2.0
    i1, _ = quad(_phi_integrand, a, mid, epsabs=1e-13, epsrel=1e-13, limit=200)
    i2, _ = quad(_phi_integrand, mid, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    return lead + 2.0 * (i1 + i2)


def phi_lower_bound(L):
    """(L+2) e^-L / 4, a bound phi provably dominates."""
    if not (L > 0.0):
        raise DomainError("phi_lower_bound is defined for L > 0")
    return (L + 2.0) * math.exp(-L) / 4.0


def unit_tangent_volume(euler_char_abs):
    """Volume 4 pi^2 |chi| of the unit tangent bundle."""
    if euler_char_abs < 0.0:
        raise DomainError("needs |chi| >= 0")
    return FOUR_PI2 * euler_char_abs
