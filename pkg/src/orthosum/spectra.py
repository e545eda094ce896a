"""Surfaces as discrete groups, orthogeodesic class enumeration, the
primality sieve, and the identity verification harness.

Two bundled surfaces.  The cusped one is the level-two congruence
subgroup model of the thrice-punctured sphere: free on the parabolics
A = [[1,2],[0,1]] and B = [[1,0],[2,1]], cusps at infinity, 0 and 1.
Double cosets of cusp stabilizers are indexed by Farey-style exact
integer keys, the concave-core test is exact integer arithmetic on
horoball penetration, and composite classes are sieved by canonical
word matching.  The bordered one is a hyperbolic pair of pants built
from boundary half-traces; its orthogeodesics come from a pruned
orbit search over the deck group.

All summation runs in a fixed sorted order with compensated
accumulation, so reports are byte-identical across runs and worker
counts.  Threads only ever split the enumeration frontier; results
are reassembled in task order before anything is summed.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from math import acosh, cosh, gcd, log, pi, sinh, sqrt

import numpy as np

from . import _kernels
from .dilog import rogers_L
from .errors import (
    AmbiguousGeometry,
    BudgetExceeded,
    DomainError,
    GeometryError,
    Inconclusive,
)
from .hgeom import BoundaryEnd, MoebiusMap, gamma_length_from_trunc
from .terms import phi

__all__ = [
    "FuchsianSurface",
    "OrthoClass",
    "IdentityReport",
    "CountingRow",
    "thrice_punctured_sphere",
    "pants_group",
    "enumerate_double_cosets",
    "truncated_length",
    "in_concave_core",
    "composite_words",
    "prime_sieve",
    "model_realization_check",
    "identity_partial_sum",
    "bridgeman_sum",
    "basmajian_sum",
    "counting_check",
    "trace_gamma_length",
]

PI2_4 = pi * pi / 4.0
PI2_2 = pi * pi / 2.0


# ------------------------------------------------------------ types

@dataclass(frozen=True)
class FuchsianSurface:
    name: str
    genus: int
    n: int
    grading: tuple
    generators: tuple  # of (label, MoebiusMap)
    boundary_elements: tuple  # of (BoundaryEnd, stabilizing word)


@dataclass(frozen=True)
class OrthoClass:
    word: str
    end_pair: tuple
    matrix: MoebiusMap
    len_trunc: float
    len_gamma: float | None
    status: str = "pending"
    flagged: bool = False
    term: float | None = None


@dataclass
class IdentityReport:
    surface: str
    grading: tuple
    rhs: dict
    rows: list
    partial_sums: list
    gap: float
    depth: float
    counting_table: list
    n_primes: int
    n_composites: int
    n_not_in_core: int
    n_flagged: int
    genus: int
    n: int


@dataclass(frozen=True)
class CountingRow:
    L: float
    count: int
    bound_phi: float
    bound_exp: float


# ------------------------------------------------------ integer 2x2

def _mmul(M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _minv(M):
    a, b, c, d = M
    return (d, -b, -c, a)


def _mpow(M, n):
    if n < 0:
        return _mpow(_minv(M), -n)
    R = (1, 0, 0, 1)
    while n:
        if n & 1:
            R = _mmul(R, M)
        M = _mmul(M, M)
        n >>= 1
    return R


def _t2(t):
    return (1, 2 * t, 0, 1)


_A = (1, 2, 0, 1)
_B = (1, 0, 2, 1)
_I2 = (1, 0, 0, 1)

# cusp index: 0 = infinity, 1 = 0, 2 = 1
_NORM = {0: _I2, 1: (0, -1, 1, 0), 2: (1, -2, 1, -1)}
_STAB = {0: _A, 1: _B, 2: _mmul(_A, _minv(_B))}
_STABW = {0: "A", 1: "B", 2: "Ab"}
_LETMAT = {"A": _A, "a": _minv(_A), "B": _B, "b": _minv(_B)}

# winding direction of each conjugated stabilizer: N_j Stab_j N_j^-1
# is translation by 2 sgn_j in the normalized chart
_SGN = {}
for _j in range(3):
    _C = _mmul(_mmul(_NORM[_j], _STAB[_j]), _minv(_NORM[_j]))
    if _C[0] < 0 or (_C[0] == 0 and _C[2] < 0):
        _C = tuple(-e for e in _C)
    _SGN[_j] = _C[1] // 2

# chart parity dictionaries: in the chart of cusp i, the parity class
# (r mod 2, s mod 2) of a rational r/s identifies which cusp it covers
_PAR2CUSP = {}
_CUSP2PAR = {}
_FULLPAR = {}
for _i in range(3):
    _d = {}
    _e = {}
    for _j in range(3):
        _Mij = _mmul(_NORM[_i], _minv(_NORM[_j]))
        _par = (_Mij[0] % 2, _Mij[2] % 2)
        _d[_par] = _j
        _e[_j] = _par
        _FULLPAR[(_i, _j)] = tuple(x % 2 for x in _Mij)
    _PAR2CUSP[_i] = _d
    _CUSP2PAR[_i] = _e


def _mk_matrix(i, j, q, p):
    """The unique chart representative with key (q, p mod 2q)."""
    pat = _FULLPAR[(i, j)]
    for d in range(2 * q):
        if (p * d - 1) % q:
            continue
        b = (p * d - 1) // q
        M = (p, b, q, d)
        if tuple(e % 2 for e in M) == pat:
            return M
    raise GeometryError("no chart representative for key (%d, %d, %d, %d)" % (i, j, q, p))


def _key_of(M):
    a, b, c, d = M
    if c == 0:
        return None
    if c < 0:
        a, b, c, d = -a, -b, -c, -d
    return (c, a % (2 * c), d % (2 * c))


def _unoriented_key(i, j, M):
    if j < i:
        i, j = j, i
        M = _minv(M)
    q, p, d = _key_of(M)
    if i == j:
        p = min(p, (-d) % (2 * q))
    return (i, j, q, p)


# ------------------------------------------------------ word pipeline

def _word_of(g):
    """Word over A/a/B/b whose product equals +-g, by even continued
    fractions.  Valid for any element of the rank-2 parabolic group:
    the diagonal entries stay odd throughout, so the pivots never
    vanish."""
    a, b, c, d = g
    out = []
    while c != 0:
        n = round(Fraction(a, 2 * c))
        if n:
            out.append(("A", n))
            a, b = a - 2 * n * c, b - 2 * n * d
        m = round(Fraction(c, 2 * a))
        if m:
            out.append(("B", m))
            c, d = c - 2 * m * a, d - 2 * m * b
    n = (b * a) // 2
    if n:
        out.append(("A", n))
    s = []
    for L, e in out:
        s.append((L if e > 0 else L.lower()) * abs(e))
    return "".join(s)


def _word_matrix_int(w):
    g = _I2
    for ch in w:
        try:
            g = _mmul(g, _LETMAT[ch])
        except KeyError:
            raise DomainError("letter %r is not a generator label" % (ch,))
    return g


def _freduce(w):
    out = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _winv(w):
    return w.swapcase()[::-1]


_CANON_MEMO = {}


def _coset_canon(zi, zj, w):
    """Shortest, lexicographically least representative of the double
    coset <zi> w <zj> in the free group.

    Greedy one-sided stripping is not enough once a stabilizer word
    has length two: junction cancellation creates equal-length coset
    siblings, and descending from one of them needs a move through
    the plateau.  Explore the whole coset ball of words no longer
    than len(w) + 2; the minimum is reachable inside it.
    """
    w = _freduce(w)
    memo_key = (zi, zj, w)
    hit = _CANON_MEMO.get(memo_key)
    if hit is not None:
        return hit
    zii, zji = _winv(zi), _winv(zj)
    cap = len(w) + 2
    seen = {w}
    frontier = [w]
    while frontier:
        nf = []
        for u in frontier:
            for v in (
                _freduce(zi + u),
                _freduce(zii + u),
                _freduce(u + zj),
                _freduce(u + zji),
            ):
                if len(v) <= cap and v not in seen:
                    seen.add(v)
                    nf.append(v)
        frontier = nf
    m = min(len(u) for u in seen)
    out = min(u for u in seen if len(u) == m)
    _CANON_MEMO[memo_key] = out
    return out


def _class_word(i, j, M):
    """Canonical word of the unoriented class with chart matrix M for
    the ordered pair i <= j."""
    ghat = _mmul(_mmul(_minv(_NORM[i]), M), _NORM[j])
    w = _coset_canon(_STABW[i], _STABW[j], _word_of(ghat))
    if i == j:
        w2 = _coset_canon(_STABW[i], _STABW[j], _winv(w))
        if (len(w2), w2) < (len(w), w):
            w = w2
    return w


def _chart_of_class(cls):
    """Exact chart matrix and key recomputed from the canonical word."""
    i, j = cls.end_pair
    ghat = _word_matrix_int(cls.word)
    M = _mmul(_mmul(_NORM[i], ghat), _minv(_NORM[j]))
    key = _key_of(M)
    if key is None:
        raise DomainError("degenerate coset: word stabilizes both ends")
    return M, key


# ------------------------------------------------------ surfaces

def _validate_grading(grading, genus, n):
    if len(grading) != n:
        raise DomainError("grading needs one grade per end")
    kv = []
    ones = 0
    inv_sum = 0.0
    for k in grading:
        if k == math.inf:
            kv.append(math.inf)
            continue
        ik = int(k)
        if ik != k or ik < 1:
            raise DomainError("grades are positive integers or infinity")
        kv.append(ik)
        if ik == 1:
            ones += 1
        inv_sum += 1.0 / ik
    if ones >= 2:
        raise DomainError("grading with two unit grades is excluded")
    if inv_sum > 2.0 * (2 * genus + n - 2) + 1e-12:
        raise DomainError("grading not admissible: sum 1/k_i exceeds 2(2g+n-2)")
    return tuple(kv)


def thrice_punctured_sphere(grading=(2, 2, 2)):
    """The cusped sphere as the rank-2 parabolic group.

    Cusps sit at infinity, 0 and 1 with stabilizer words A, B and Ab.
    """
    kv = _validate_grading(tuple(grading), 0, 3)
    gens = (("A", MoebiusMap(1.0, 2.0, 0.0, 1.0)), ("B", MoebiusMap(1.0, 0.0, 2.0, 1.0)))
    for _, g in gens:
        if abs(abs(g.trace) - 2.0) > 1e-12:
            raise GeometryError("cusp generator is not parabolic")
    ends = tuple(
        (BoundaryEnd.cusp(grade=kv[c]), _STABW[c]) for c in range(3)
    )
    return FuchsianSurface(
        name="gamma2",
        genus=0,
        n=3,
        grading=kv,
        generators=gens,
        boundary_elements=ends,
    )


def pants_group(l1, l2, l3):
    """Bordered pants with boundary lengths (l1, l2, l3).

    Generators x and y are the hyperbolics around the first two
    boundaries; the third is the inverse of their product, word YX.
    """
    lengths = (float(l1), float(l2), float(l3))
    ends = tuple(BoundaryEnd.geodesic(L, grade=math.inf) for L in lengths)
    C = [cosh(L / 2.0) for L in lengths]
    S = [sinh(L / 2.0) for L in lengths]
    cosh_d12 = (C[0] * C[1] + C[2]) / (S[0] * S[1])
    R = math.exp(acosh(cosh_d12))
    X1 = MoebiusMap(C[0], S[0], S[0], C[0])
    X2 = MoebiusMap(C[1], R * S[1], S[1] / R, C[1])
    Y2 = X2.inverse()
    B3 = (X1 @ Y2).inverse()
    traces = (X1.trace, X2.trace, B3.trace)
    for t, L in zip(traces, lengths):
        if abs(abs(t) - 2.0 * cosh(L / 2.0)) > 1e-9:
            raise GeometryError("pants construction failed the trace check")
    return FuchsianSurface(
        name="pants",
        genus=0,
        n=3,
        grading=(math.inf, math.inf, math.inf),
        generators=(("x", X1), ("y", Y2)),
        boundary_elements=tuple(zip(ends, ("x", "y", "YX"))),
    )


def _require_gamma2(surface):
    if surface.name != "gamma2":
        raise DomainError("operation needs the cusped sphere surface")


# --------------------------------------------- Farey enumeration

def _grade_table(i, kv, q):
    """Per-chart 2x2 grade table indexed by (r mod 2, s mod 2); an
    infinite grade gets the sentinel q + 1, large enough that its
    horoball test can never fire."""
    tab = np.empty((2, 2), dtype=np.int64)
    tab[0, 0] = q + 1  # even/even is never coprime, value unread
    for par, cusp in _PAR2CUSP[i].items():
        k = kv[cusp]
        tab[par[0], par[1]] = q + 1 if k == math.inf else k
    return tab


def _enum_pair_q(i, j, q, kv):
    """All classes of the ordered pair (i <= j) with denominator q."""
    pa, pc = _CUSP2PAR[i][j]
    if q % 2 != pc:
        return []
    kk = kv[i] * kv[j]
    rows = []
    ps = []
    for p in range(2 * q):
        if p % 2 != pa or gcd(p, q) != 1:
            continue
        M = _mk_matrix(i, j, q, p)
        if i == j and p > (-M[3]) % (2 * q):
            continue
        rows.append(dict(pair=(i, j), q=q, p=p, M=M, lmu=log(kk) + 2.0 * log(q)))
        ps.append(p)
    if rows:
        mink = min(k for k in kv.values() if k != math.inf)
        tab = _grade_table(i, kv, q)
        codes = _kernels.in_core_scan(
            np.array(ps, dtype=np.int64),
            np.full(len(ps), q, dtype=np.int64),
            np.repeat(tab[None, :, :], len(ps), axis=0),
            np.full(len(ps), mink, dtype=np.int64),
        )
        for r, code in zip(rows, codes):
            r["core"] = int(code)
    return rows


def _kv_of(surface):
    return {c: surface.grading[c] for c in range(3)}


def _enumerate_raw(surface, pairs, max_word_len, workers=1):
    """Exact class tables for the given ordered pairs, depth-complete:
    denominators run through max_word_len + 1, which captures every
    double coset whose canonical word fits the budget."""
    if max_word_len < 1:
        raise DomainError("max_word_len must be at least 1")
    kv = _kv_of(surface)
    Q = max_word_len + 1
    tasks = [(i, j, q) for (i, j) in pairs for q in range(1, Q + 1)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda t: _enum_pair_q(t[0], t[1], t[2], kv), tasks))
    else:
        chunks = [_enum_pair_q(i, j, q, kv) for (i, j, q) in tasks]
    rows = [r for ch in chunks for r in ch]
    rows.sort(key=lambda r: (r["lmu"], r["pair"], r["q"], r["p"]))
    for r in rows:
        r["word"] = _class_word(r["pair"][0], r["pair"][1], r["M"])
    return rows


def _row_to_class(r, kv, status="pending", flagged=False, term=None):
    i, j = r["pair"]
    ghat = _mmul(_mmul(_minv(_NORM[i]), r["M"]), _NORM[j])
    lg = gamma_length_from_trunc(r["lmu"]) if r["lmu"] > 0.0 else None
    return OrthoClass(
        word=r["word"],
        end_pair=(i, j),
        matrix=MoebiusMap(float(ghat[0]), float(ghat[1]), float(ghat[2]), float(ghat[3])),
        len_trunc=r["lmu"],
        len_gamma=lg,
        status=status,
        flagged=flagged,
        term=term,
    )


def enumerate_double_cosets(surface, end_pair, max_word_len):
    """Pending classes between two cusps, exact and depth-complete.

    Sorted by (len_trunc, word).  Pairs with an infinite grade are
    not enumerated; their ends carry no horoball truncation and they
    contribute nothing to any graded sum.
    """
    _require_gamma2(surface)
    i, j = end_pair
    if not (0 <= i <= 2 and 0 <= j <= 2):
        raise DomainError("end indices must be in 0..2")
    if i > j:
        i, j = j, i
    kv = _kv_of(surface)
    if kv[i] == math.inf or kv[j] == math.inf:
        return []
    rows = _enumerate_raw(surface, [(i, j)], max_word_len)
    return [_row_to_class(r, kv) for r in rows]


# --------------------------------------------- per-class operations

def truncated_length(cls, surface):
    """Length of the class geodesic between its two grade collars.

    For chart key denominator q this is log(k_i k_j q^2); positivity
    fails exactly when the horoballs overlap or touch.
    """
    _require_gamma2(surface)
    i, j = cls.end_pair
    ki, kj = surface.grading[i], surface.grading[j]
    if ki == math.inf or kj == math.inf:
        raise DomainError("an infinite-grade end carries no truncation")
    _, key = _chart_of_class(cls)
    q = key[0]
    lmu = log(ki * kj) + 2.0 * log(q)
    if lmu <= 0.0:
        raise GeometryError(
            "horoballs overlap or touch: k_i k_j q^2 = %d" % (ki * kj * q * q,)
        )
    return lmu


def _core_code(cls, surface):
    i, j = cls.end_pair
    kv = _kv_of(surface)
    if kv[i] == math.inf or kv[j] == math.inf:
        raise DomainError("core test needs finite grades at both ends")
    M, key = _chart_of_class(cls)
    if M[2] < 0:
        M = tuple(-e for e in M)
    q = M[2]
    p = M[0] % (2 * q)
    mink = min(k for k in kv.values() if k != math.inf)
    codes = _kernels.in_core_scan(
        np.array([p], dtype=np.int64),
        np.array([q], dtype=np.int64),
        _grade_table(i, kv, q)[None, :, :],
        np.array([mink], dtype=np.int64),
    )
    return int(codes[0])


def in_concave_core(cls, surface):
    """Whether the open truncated segment clears every collar horoball.

    The decision is exact integer arithmetic, so a grazing tangency
    is an exact equality, reported as AmbiguousGeometry rather than
    silently rounded to either side.
    """
    _require_gamma2(surface)
    code = _core_code(cls, surface)
    if code == 1:
        raise AmbiguousGeometry(
            "segment is exactly tangent to a collar horoball; class flagged"
        )
    return code == 0


def _composite_index(M, i, j, kv, Q, n_max=None):
    """Unoriented keys of wrapped words built on the oriented class M
    (chart i -> j), pruned at denominator Q.  Maps key -> (n, chart
    matrix, ordered pair)."""
    out = {}
    tj = kv[j] * _SGN[j]
    ti = kv[i] * _SGN[i]
    Mi = _minv(M)
    level = [(M, 1)]
    while level:
        nxt = []
        for W, n in level:
            if n_max is not None and n >= n_max:
                continue
            if n > 200:
                raise BudgetExceeded("composite wrapping depth exceeded 200")
            t = tj if n % 2 == 1 else ti
            for eps in (1, -1):
                W2 = _mmul(_mmul(W, _t2(eps * t)), Mi if n % 2 == 1 else M)
                if abs(W2[2]) > Q:
                    continue
                n2 = n + 1
                pr = (i, i) if n2 % 2 == 0 else (i, j)
                key = _unoriented_key(pr[0], pr[1], W2)
                if key not in out:
                    W2n = W2 if pr[0] <= pr[1] else _minv(W2)
                    out[key] = (n2, W2n, (min(pr), max(pr)))
                nxt.append((W2, n2))
        level = nxt
    return out


def composite_words(prime, surface, n_max=None, len_budget=None):
    """Canonical words of all wrapped composites of a prime class.

    Both orientations of the prime are wrapped with every sign
    pattern; generation stops when the chart denominator exceeds the
    word budget's depth bound, since a longer composite cannot match
    any enumerated class.
    """
    _require_gamma2(surface)
    if prime.status != "prime":
        raise DomainError("composite generation starts from a prime class")
    if len_budget is None:
        raise DomainError("len_budget is required")
    if n_max is not None and n_max < 2:
        return []
    kv = _kv_of(surface)
    Q = len_budget + 1
    i, j = prime.end_pair
    M, _ = _chart_of_class(prime)
    found = {}
    for Mo, a, b in ((M, i, j), (_minv(M), j, i)):
        for key, (n, W2, pr) in _composite_index(Mo, a, b, kv, Q, n_max).items():
            if key not in found:
                found[key] = (_class_word(pr[0], pr[1], W2), pr)
    words = sorted((pr, w) for w, pr in found.values())
    return [w for _, w in words]


def prime_sieve(classes, surface):
    """Resolve pending statuses by core membership and composite
    word matching, in ascending len_trunc order.

    Deterministic and idempotent: statuses are recomputed from
    scratch, so feeding the output back in reproduces it.
    """
    _require_gamma2(surface)
    last = -math.inf
    for c in classes:
        if c.len_trunc < last - 1e-12:
            raise DomainError("sieve input must be sorted by len_trunc")
        last = c.len_trunc
    kv = _kv_of(surface)
    charts = [_chart_of_class(c) for c in classes]
    # a composite can only match an enumerated class, so its chart
    # denominator is bounded by the largest one present
    qcap = max((key[0] for _, key in charts), default=0)
    comp_words = {}
    out = []
    for c, (M, key) in zip(classes, charts):
        i, j = c.end_pair
        mark = (c.end_pair, c.word)
        if mark in comp_words:
            out.append(replace(c, status="composite", flagged=False, term=None))
            continue
        code = _core_code(c, surface)
        if code == 2:
            out.append(replace(c, status="not_in_core", flagged=False, term=None))
            continue
        if code == 1:
            out.append(replace(c, status="pending", flagged=True, term=None))
            continue
        out.append(replace(c, status="prime", flagged=False))
        if M[2] < 0:
            M = tuple(-e for e in M)
        for Mo, a, b in ((M, i, j), (_minv(M), j, i)):
            for k2, (n, W2, pr) in _composite_index(Mo, a, b, kv, qcap).items():
                mk = (pr, _class_word(pr[0], pr[1], W2))
                comp_words.setdefault(mk, n)
    return out


_ORBIFOLDS = {}


def _orbifold_cache(k):
    if k not in _ORBIFOLDS:
        from ._model import Orbifold

        _ORBIFOLDS[k] = Orbifold(k)
    return _ORBIFOLDS[k]


def model_realization_check(cls, surface):
    """Cross-validate a class against the exact triangle-group model.

    Conclusive only for uniformly graded cusped spheres with grade 2
    or 3; this check is a validator and never the decider.  Classes
    already known composite develop fine (the wrapped word forces an
    interior collinear lift whether or not the arc clears the core),
    but a core-escaping class that is not a known composite gets
    Inconclusive: the realization criterion reads on arcs inside the
    core and says nothing about the rest.
    """
    _require_gamma2(surface)
    grades = set(surface.grading)
    if len(grades) != 1:
        raise DomainError("exact model needs a uniform grading")
    k = surface.grading[0]
    if k not in (2, 3):
        return Inconclusive("grade %s is outside the quadratic-ring table" % (k,))
    if cls.status != "composite":
        code = _core_code(cls, surface)
        if code != 0:
            return Inconclusive("class does not lie in the concave core")
    orb = _orbifold_cache(k)
    from ._model import model_check

    verdict, _, _ = model_check(orb, cls.end_pair[0], cls.end_pair[1], cls.word)
    if verdict is None:
        return Inconclusive("endpoint lifts coincide under the word projection")
    return verdict


# --------------------------------------------- graded identity run

def _running_compensated(values):
    out = []
    s = 0.0
    comp = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        out.append(s + comp)
    return out


def _resolve_workers(workers):
    if workers is None:
        workers = os.environ.get("ORTHO_WORKERS", "1")
    w = int(workers)
    if w < 1:
        raise DomainError("worker count must be positive")
    return w


def identity_partial_sum(surface, grading, depth, workers=None):
    """Partial sums of the graded cusped identity up to a word budget.

    Every unordered cusp pair with finite grades is enumerated
    depth-complete, classes are cut at the least pair completeness
    horizon so the merged list is a length prefix of any deeper run,
    the sieve resolves statuses, and prime terms accumulate in fixed
    sorted order.
    """
    _require_gamma2(surface)
    kvec = _validate_grading(tuple(grading), surface.genus, surface.n)
    if kvec != surface.grading:
        surface = thrice_punctured_sphere(kvec)
    if depth < 1:
        raise DomainError("depth must be at least 1")
    w = _resolve_workers(workers)
    kv = _kv_of(surface)
    pairs = [
        (i, j)
        for i in range(3)
        for j in range(i, 3)
        if kv[i] != math.inf and kv[j] != math.inf
    ]
    factor = 2 * surface.genus + surface.n - 2
    rhs = {"formula": "pi^2/4 (2g+n-2)", "value": PI2_4 * factor}
    if not pairs:
        return IdentityReport(
            surface=surface.name,
            grading=surface.grading,
            rhs=rhs,
            rows=[],
            partial_sums=[],
            gap=rhs["value"],
            depth=depth,
            counting_table=[],
            n_primes=0,
            n_composites=0,
            n_not_in_core=0,
            n_flagged=0,
            genus=surface.genus,
            n=surface.n,
        )
    rows = _enumerate_raw(surface, pairs, depth, workers=w)
    cut = min(log(kv[i] * kv[j]) + 2.0 * log(depth + 2) for (i, j) in pairs)
    rows = [r for r in rows if r["lmu"] < cut]
    rows.sort(key=lambda r: (r["lmu"], r["word"], r["pair"]))
    pend = [_row_to_class(r, kv) for r in rows]
    resolved = prime_sieve(pend, surface)
    primes = [c for c in resolved if c.status == "prime"]
    n_comp = sum(1 for c in resolved if c.status == "composite")
    n_out = sum(1 for c in resolved if c.status == "not_in_core")
    n_flag = sum(1 for c in resolved if c.flagged)
    terms = [phi(c.len_trunc) for c in primes]
    sums = _running_compensated(terms)
    prime_rows = [replace(c, term=t) for c, t in zip(primes, terms)]
    total = sums[-1] if sums else 0.0
    report = IdentityReport(
        surface=surface.name,
        grading=surface.grading,
        rhs=rhs,
        rows=prime_rows,
        partial_sums=sums,
        gap=rhs["value"] - total,
        depth=depth,
        counting_table=[],
        n_primes=len(prime_rows),
        n_composites=n_comp,
        n_not_in_core=n_out,
        n_flagged=n_flag,
        genus=surface.genus,
        n=surface.n,
    )
    report.counting_table = counting_check(report)
    return report


def counting_check(report):
    """Counting-bound table over the report's prime lengths.

    At each distinct prime length L: the number of primes with
    truncated length at most L, the reciprocal-summand bound
    (pi^2/4)(2g+n-2)/Phi(L), and the coarser exponential bound
    pi^2 (2g+n-2) e^L / (L+2).
    """
    factor = 2 * report.genus + report.n - 2
    lengths = [c.len_trunc for c in report.rows]
    table = []
    seen = 0
    idx = 0
    for L in sorted(set(lengths)):
        while idx < len(lengths) and lengths[idx] <= L:
            idx += 1
        seen = idx
        table.append(
            CountingRow(
                L=L,
                count=seen,
                bound_phi=PI2_4 * factor / phi(L),
                bound_exp=pi * pi * factor * math.exp(L) / (L + 2.0),
            )
        )
    return table


# --------------------------------------------- pants orthospectrum

def _axis_hom(M):
    """Fixed-point pair of a hyperbolic map as homogeneous endpoints."""
    a, b, c, d = M.a, M.b, M.c, M.d
    tr = a + d
    if abs(tr) <= 2.0:
        raise GeometryError("axis of a non-hyperbolic element")
    disc = sqrt(tr * tr - 4.0)
    if c != 0.0:
        return ((a - d + disc, 2.0 * c), (a - d - disc, 2.0 * c))
    # one endpoint at infinity
    return ((1.0, 0.0), (b, d - a))


def _dist_pt_axis(z, ep):
    (n1, d1), (n2, d2) = ep
    if d1 == 0.0 or d2 == 0.0:
        v = n2 / d2 if d1 == 0.0 else n1 / d1
        return math.asinh(abs(z.real - v) / z.imag)
    x1, x2 = n1 / d1, n2 / d2
    cc = (x1 + x2) / 2.0
    r = abs(x2 - x1) / 2.0
    return math.asinh(abs(abs(z - cc) ** 2 - r * r) / (2.0 * r * z.imag))


def _pants_orthos(surface, max_len, margin=0.7):
    """Oriented boundary-coset orthogeodesics up to length max_len.

    Pruned breadth-first orbit search: a word whose basepoint image
    moves beyond max_len + 2 R0 + margin cannot carry an axis pair
    within the cutoff, where R0 bounds the basepoint's distance to
    the three axes.
    """
    label = {lab: g for lab, g in surface.generators}
    X1, Y2 = label["x"], label["y"]
    X2 = Y2.inverse()
    B3 = (X1 @ Y2).inverse()
    gens4 = [X1, X1.inverse(), Y2, Y2.inverse()]
    axes = [_axis_hom(X1), _axis_hom(X2), _axis_hom(B3)]
    gen_let = "xXyY"
    invof = (1, 0, 3, 2)
    # basepoint halfway between the axes of the first two boundaries
    rax = sqrt(abs(X2.b / X2.c))
    y0 = sqrt(rax)
    o = complex(0.0, y0)
    R0 = max(_dist_pt_axis(o, ep) for ep in axes) + 1.0
    ch_cap = cosh(max_len + 2.0 * R0 + margin)
    hit_cap = cosh(max_len + 0.2)
    stabw = {0: "x", 1: "y", 2: "YX"}

    def decode(code, ln):
        out = []
        c = int(code)
        for _ in range(int(ln)):
            out.append(gen_let[c & 3])
            c >>= 2
        return "".join(reversed(out))

    mats = np.array([[1.0, 0.0, 0.0, 1.0]])
    codes = np.array([0], dtype=np.uint64)
    lens = np.array([0], dtype=np.int64)
    lasts = np.array([255], dtype=np.int64)
    gmats = [np.array([g.a, g.b, g.c, g.d]) for g in gens4]
    orthos = {}
    total = 0
    for depth in range(1, 64):
        if depth > 31:
            raise BudgetExceeded("word code capacity exceeded at depth 32")
        parts = []
        for gi in range(4):
            g = gmats[gi]
            out, keep = _kernels.pants_step(
                mats, lasts, invof[gi], g[0], g[1], g[2], g[3], y0, ch_cap
            )
            if not keep.any():
                continue
            parts.append(
                (
                    out[keep],
                    (codes[keep] << np.uint64(2)) | np.uint64(gi),
                    lens[keep] + 1,
                    np.full(int(keep.sum()), gi, dtype=np.int64),
                )
            )
        if not parts:
            break
        mats = np.concatenate([p[0] for p in parts])
        codes = np.concatenate([p[1] for p in parts])
        lens = np.concatenate([p[2] for p in parts])
        lasts = np.concatenate([p[3] for p in parts])
        total += len(mats)
        if total > 2e7:
            raise BudgetExceeded("orbit search exceeded 2e7 elements")
        for i in range(3):
            (x1n, x1d), (x2n, x2d) = axes[i]
            for j in range(3):
                (y1n, y1d), (y2n, y2d) = axes[j]
                chl = _kernels.axes_cross_cosh(
                    mats[:, 0], mats[:, 1], mats[:, 2], mats[:, 3],
                    x1n, x1d, x2n, x2d, y1n, y1d, y2n, y2d,
                )
                hit = (chl <= hit_cap) & (chl >= 1.0 + 1e-12)
                for idx in np.nonzero(hit)[0]:
                    ell = acosh(float(chl[idx]))
                    wrd = decode(codes[idx], lens[idx])
                    canon = _coset_canon(stabw[i], stabw[j], wrd)
                    kkey = (i, j, canon)
                    if kkey not in orthos or orthos[kkey] > ell:
                        orthos[kkey] = ell
    # seams: identity cosets between distinct boundaries
    one = np.array([1.0])
    zero = np.array([0.0])
    for i in range(3):
        (x1n, x1d), (x2n, x2d) = axes[i]
        for j in range(3):
            if i == j:
                continue
            (y1n, y1d), (y2n, y2d) = axes[j]
            chl = _kernels.axes_cross_cosh(
                one, zero, zero, one,
                x1n, x1d, x2n, x2d, y1n, y1d, y2n, y2d,
            )
            skey = (i, j, "")
            sv = acosh(float(chl[0]))
            if skey not in orthos or orthos[skey] > sv:
                orthos[skey] = sv
    oriented = {k: v for k, v in orthos.items() if v <= max_len}
    # every oriented coset must have its reversal at the same length
    for (i, j, wrd), ell in sorted(oriented.items()):
        rk = (j, i, _coset_canon(stabw[j], stabw[i], _winv(wrd)))
        if rk not in oriented:
            raise GeometryError("orbit search lost a reversal partner")
        if abs(oriented[rk] - ell) > 1e-6:
            raise GeometryError("reversal partner length mismatch")
    return oriented


def _pants_word_matrix(label, wrd):
    g = MoebiusMap.identity()
    for ch in wrd:
        base = label[ch.lower()]
        g = g @ (base if ch.islower() else base.inverse())
    return g


def _pants_report(surface, max_len, oriented_rows, term_of, rhs):
    label = {lab: g for lab, g in surface.generators}
    rows = []
    for (i, j, wrd), ell in oriented_rows:
        rows.append(
            OrthoClass(
                word=wrd,
                end_pair=(i, j),
                matrix=_pants_word_matrix(label, wrd),
                len_trunc=ell,
                len_gamma=None,
                status="prime",
                flagged=False,
                term=term_of(ell),
            )
        )
    rows.sort(key=lambda c: (c.len_trunc, c.word, c.end_pair))
    sums = _running_compensated([c.term for c in rows])
    total = sums[-1] if sums else 0.0
    return IdentityReport(
        surface=surface.name,
        grading=surface.grading,
        rhs=rhs,
        rows=rows,
        partial_sums=sums,
        gap=rhs["value"] - total,
        depth=max_len,
        counting_table=[],
        n_primes=len(rows),
        n_composites=0,
        n_not_in_core=0,
        n_flagged=0,
        genus=surface.genus,
        n=surface.n,
    )


def _require_pants(surface):
    if surface.name != "pants":
        raise DomainError("operation needs a bordered pants surface")
    for end, _ in surface.boundary_elements:
        if end.kind != "geodesic" or end.grade != math.inf:
            raise DomainError("pants identities need ungraded geodesic ends")


def bridgeman_sum(pants, max_len):
    """Orthospectrum partial sum of the dilogarithm boundary identity.

    One row per unoriented orthogeodesic; the unoriented
    representative takes the smaller end pair, breaking ties between
    a self-pair word and its reversal lexicographically.
    """
    _require_pants(pants)
    oriented = _pants_orthos(pants, max_len)
    unor = {}
    stabw = {0: "x", 1: "y", 2: "YX"}
    for (i, j, wrd), ell in sorted(oriented.items()):
        if j < i:
            continue
        if i == j:
            rw = _coset_canon(stabw[i], stabw[i], _winv(wrd))
            if (len(rw), rw) < (len(wrd), wrd):
                continue
        unor[(i, j, wrd)] = ell
    rows = sorted(unor.items())
    rhs = {"formula": "pi^2/2 (2g+n-2)", "value": PI2_2 * (2 * pants.genus + pants.n - 2)}
    return _pants_report(
        pants,
        max_len,
        rows,
        lambda ell: rogers_L(1.0 / cosh(ell / 2.0) ** 2),
        rhs,
    )


def basmajian_sum(pants, max_len):
    """Orthospectrum partial sum of the boundary-length identity.

    Oriented rows: each unoriented orthogeodesic contributes once per
    orientation, matching the sum over boundary intervals.
    """
    _require_pants(pants)
    oriented = _pants_orthos(pants, max_len)
    rows = sorted(oriented.items())
    perimeter = sum(end.param for end, _ in pants.boundary_elements)
    rhs = {"formula": "l1+l2+l3", "value": perimeter}
    return _pants_report(
        pants,
        max_len,
        rows,
        lambda ell: 2.0 * math.log(1.0 / math.tanh(ell / 2.0)),
        rhs,
    )


# --------------------------------------------- trace cross-check

def trace_gamma_length(cls, surface):
    """Wrapped-geodesic length from the exact trace of the wrapping
    word p_a^{k_a} g p_b^{+-k_b} g^{-1}.

    The two winding signs give traces 2 - 4 k_a k_b q^2 and
    2 + 4 k_a k_b q^2 exactly; the hyperbolic branch determines the
    length.  Raises GeometryError if the dichotomy fails, which would
    mean the class data is inconsistent.
    """
    _require_gamma2(surface)
    i, j = cls.end_pair
    ki, kj = surface.grading[i], surface.grading[j]
    if ki == math.inf or kj == math.inf:
        raise DomainError("trace check needs finite grades")
    ghat = _word_matrix_int(cls.word)
    M = _mmul(_mmul(_NORM[i], ghat), _minv(_NORM[j]))
    q = abs(M[2])
    if q == 0:
        raise DomainError("degenerate coset has no wrapped geodesic")
    kkq2 = ki * kj * q * q
    Pi = _mpow(_STAB[i], ki)
    traces = []
    for sgn in (1, -1):
        W = _mmul(_mmul(Pi, ghat), _mmul(_mpow(_STAB[j], sgn * kj), _minv(ghat)))
        traces.append(W[0] + W[3])
    if sorted(traces) != sorted([2 - 4 * kkq2, 2 + 4 * kkq2]):
        raise GeometryError("trace dichotomy failed for word %r" % (cls.word,))
    return 2.0 * acosh((4 * kkq2 - 2) / 2.0)
