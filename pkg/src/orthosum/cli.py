"""Command line front end.

Three subcommands: ``verify`` runs an identity partial sum and writes
a schema-versioned report, ``terms`` tabulates the closed-form term
functions, ``oracle`` reruns the quadrature and lemma cross-checks.
Exit codes: 0 all checks pass, 1 a verification invariant failed,
2 usage or domain error, 3 report I/O failure.
"""

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousGeometry, BudgetExceeded, DomainError, GeometryError
from . import hgeom, oracles, spectra, terms

SCHEMA_VERSION = 1


# ------------------------------------------------- expression parser

_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "asin": math.asin,
    "acos": math.acos,
    "atan": math.atan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "asinh": math.asinh,
    "acosh": math.acosh,
    "atanh": math.atanh,
    "exp": math.exp,
    "log": math.log,
    "ln": math.log,
    "sqrt": math.sqrt,
}
_CONSTS = {"pi": math.pi, "e": math.e}


def _tokenize(s):
    toks = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c in "+-*/()":
            toks.append(c)
            i += 1
        elif c.isdigit() or c == ".":
            j = i
            while j < len(s) and (s[j].isdigit() or s[j] == "."):
                j += 1
            if j < len(s) and s[j] in "eE" and j + 1 < len(s) and (
                s[j + 1].isdigit() or s[j + 1] in "+-"
            ):
                j += 2
                while j < len(s) and s[j].isdigit():
                    j += 1
            toks.append(float(s[i:j]))
            i = j
        elif c.isalpha():
            j = i
            while j < len(s) and s[j].isalpha():
                j += 1
            toks.append(s[i:j])
            i = j
        else:
            raise DomainError("bad character %r in expression %r" % (c, s))
    return toks


class _Expr:
    """Arithmetic over floats with named constants, prefix functions
    and juxtaposition-as-application: "4asinh1" is 4*asinh(1),
    "pi/4" is pi/4.  No eval, no attribute access."""

    def __init__(self, s):
        self.toks = _tokenize(s)
        self.pos = 0
        self.src = s

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise DomainError("trailing junk in expression %r" % (self.src,))
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.next()
            return -self.unary()
        if self.peek() == "+":
            self.next()
            return self.unary()
        return self.juxt()

    def juxt(self):
        v = self.atom()
        while True:
            t = self.peek()
            if isinstance(t, float) or t == "(" or (
                isinstance(t, str) and t not in "+-*/()"
            ):
                v = v * self.atom()
            else:
                return v

    def atom(self):
        t = self.next()
        if t is None:
            raise DomainError("expression %r ends early" % (self.src,))
        if isinstance(t, float):
            return t
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise DomainError("unbalanced parenthesis in %r" % (self.src,))
            return v
        if t in _CONSTS:
            return _CONSTS[t]
        if t in _FUNCS:
            return _FUNCS[t](self.unary())
        raise DomainError("unknown name %r in expression %r" % (t, self.src))


def parse_number(s):
    """Evaluate a numeric argument like "2", "pi/4" or "4asinh1"."""
    return _Expr(str(s)).parse()


def _parse_grading(s):
    out = []
    for part in s.split(","):
        part = part.strip()
        if part in ("inf", "Inf", "INF"):
            out.append(math.inf)
        else:
            out.append(int(part))
    return tuple(out)


def _parse_lengths(s):
    return tuple(parse_number(p) for p in s.split(","))


def _parse_grid(s):
    bits = s.split(":")
    if len(bits) != 3:
        raise DomainError("grid must be start:stop:count, got %r" % (s,))
    a, b = parse_number(bits[0]), parse_number(bits[1])
    n = int(bits[2])
    if n < 2 or not (b > a):
        raise DomainError("grid needs stop > start and count >= 2")
    return np.linspace(a, b, n)


# ------------------------------------------------------- run config

@dataclass
class RunConfig:
    subcommand: str
    surface: str = ""
    grading: tuple = ()
    depth: int = 0
    max_len: float = 0.0
    tol: float | None = None
    seed: int | None = None
    count: int | None = None
    workers: int | None = None
    out: str | None = None
    fmt: str = "json"
    identity: str = "graded"
    params: dict = field(default_factory=dict)


# --------------------------------------------------- report writers

def _g(x):
    return "%.17g" % x


def _jnum(x):
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return '"inf"'
    return _g(x)


def _jgrade(k):
    return '"inf"' if k == math.inf else str(int(k))


def report_json(report):
    """Fixed-order, fixed-format serialization; byte-identical for
    identical reports regardless of worker count."""
    total = report.partial_sums[-1] if report.partial_sums else 0.0
    out = []
    w = out.append
    w("{\n")
    w('  "schema_version": %d,\n' % SCHEMA_VERSION)
    w('  "surface": %s,\n' % json.dumps(report.surface))
    w('  "grading": [%s],\n' % ", ".join(_jgrade(k) for k in report.grading))
    w('  "rhs": {"formula": %s, "value": %s},\n'
      % (json.dumps(report.rhs["formula"]), _jnum(report.rhs["value"])))
    w('  "depth": %s,\n' % _jnum(report.depth))
    w('  "n_primes": %d,\n' % report.n_primes)
    w('  "n_composites": %d,\n' % report.n_composites)
    w('  "n_not_in_core": %d,\n' % report.n_not_in_core)
    w('  "n_flagged": %d,\n' % report.n_flagged)
    w('  "partial_sum": %s,\n' % _jnum(total))
    w('  "gap": %s,\n' % _jnum(report.gap))
    w('  "rows": [')
    for k, row in enumerate(report.rows):
        w(",\n" if k else "\n")
        w('    {"word": %s, "ends": [%d, %d], "len_trunc": %s, '
          '"len_gamma": %s, "term": %s}'
          % (json.dumps(row.word), row.end_pair[0], row.end_pair[1],
             _jnum(row.len_trunc), _jnum(row.len_gamma), _jnum(row.term)))
    w("\n  ],\n" if report.rows else "],\n")
    w('  "counting": [')
    for k, cr in enumerate(report.counting_table):
        w(",\n" if k else "\n")
        w('    {"L": %s, "count": %d, "bound_phi": %s, "bound_exp": %s}'
          % (_jnum(cr.L), cr.count, _jnum(cr.bound_phi), _jnum(cr.bound_exp)))
    w("\n  ]\n" if report.counting_table else "]\n")
    w("}\n")
    return "".join(out)


def report_csv(report):
    lines = ["word,end_a,end_b,len_trunc,len_gamma,term"]
    for row in report.rows:
        lg = "" if row.len_gamma is None else _g(row.len_gamma)
        lines.append("%s,%d,%d,%s,%s,%s" % (
            row.word, row.end_pair[0], row.end_pair[1],
            _g(row.len_trunc), lg, _g(row.term)))
    return "\n".join(lines) + "\n"


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".orthosum-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ------------------------------------------------------ cmd: verify

def _check_report_invariants(report, diagnostics):
    """Append a line per violated invariant; empty means pass."""
    slack = 1e-9
    sums = report.partial_sums
    for k in range(1, len(sums)):
        if sums[k] < sums[k - 1]:
            diagnostics.append(
                "partial sum decreases at row %d: %s -> %s"
                % (k, _g(sums[k - 1]), _g(sums[k])))
            break
    if sums and sums[-1] > report.rhs["value"] + slack:
        diagnostics.append(
            "partial sum %s exceeds rhs %s"
            % (_g(sums[-1]), _g(report.rhs["value"])))
    for cr in report.counting_table:
        if cr.count > cr.bound_phi + slack:
            diagnostics.append(
                "counting bound violated at L=%s: %d > %s"
                % (_g(cr.L), cr.count, _g(cr.bound_phi)))
        if cr.bound_phi > cr.bound_exp * (1.0 + 1e-12) + slack:
            diagnostics.append(
                "bound ordering violated at L=%s" % (_g(cr.L),))


def _check_trace_rows(report, surface, diagnostics):
    for row in report.rows:
        if row.len_gamma is None:
            continue
        lg = spectra.trace_gamma_length(row, surface)
        if abs(lg - row.len_gamma) > 1e-9:
            diagnostics.append(
                "trace cross-check failed for %r: %s vs %s"
                % (row.word, _g(lg), _g(row.len_gamma)))


def cmd_verify(config):
    if config.surface == "gamma2":
        if config.identity != "graded":
            raise DomainError(
                "surface gamma2 carries the graded identity only")
        surface = spectra.thrice_punctured_sphere(config.grading)
        report = spectra.identity_partial_sum(
            surface, config.grading, config.depth, workers=config.workers)
        diagnostics = []
        _check_report_invariants(report, diagnostics)
        _check_trace_rows(report, surface, diagnostics)
    elif config.surface == "pants":
        if config.identity == "graded":
            raise DomainError(
                "the graded identity needs --surface gamma2; pants runs "
                "take --identity basmajian or bridgeman")
        pants = spectra.pants_group(*config.grading)
        if config.identity == "basmajian":
            report = spectra.basmajian_sum(pants, config.max_len)
        else:
            report = spectra.bridgeman_sum(pants, config.max_len)
        diagnostics = []
        _check_report_invariants(report, diagnostics)
    else:
        raise DomainError("unknown surface %r" % (config.surface,))

    text = report_json(report) if config.fmt == "json" else report_csv(report)
    if config.out:
        try:
            _write_atomic(config.out, text)
        except OSError as exc:
            print("error: cannot write report: %s" % exc, file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)

    total = report.partial_sums[-1] if report.partial_sums else 0.0
    print(
        "verify %s: %d rows, partial sum %s of rhs %s, gap %s"
        % (config.surface, report.n_primes, _g(total),
           _g(report.rhs["value"]), _g(report.gap)),
        file=sys.stderr)
    if diagnostics:
        print("diagnostics:", file=sys.stderr)
        for line in diagnostics:
            print("  " + line, file=sys.stderr)
        return 1
    return 0


# ------------------------------------------------------- cmd: terms

def _terms_phi(grid):
    print("L,phi,phi_decomposed,lower_bound")
    for L in grid:
        print("%s,%s,%s,%s" % (
            _g(L), _g(terms.phi(L)), _g(terms.phi_decomposed(L)),
            _g(terms.phi_lower_bound(L))))


def _terms_br(grid):
    print("ell_sigma,br")
    for l in grid:
        print("%s,%s" % (_g(l), _g(terms.br_term(l))))


def _make_end(spec):
    bits = spec.split(":")
    kind = bits[0]
    if kind == "cusp":
        grade = parse_number(bits[1]) if len(bits) > 1 else 1
        return hgeom.BoundaryEnd.cusp(grade=grade)
    if kind == "geodesic":
        if len(bits) < 2:
            raise DomainError("geodesic end needs a length: geodesic:LEN[:GRADE]")
        grade = parse_number(bits[2]) if len(bits) > 2 else 1
        return hgeom.BoundaryEnd.geodesic(parse_number(bits[1]), grade=grade)
    if kind == "cone":
        if len(bits) < 2:
            raise DomainError("cone end needs an angle: cone:ANGLE[:GRADE]")
        grade = parse_number(bits[2]) if len(bits) > 2 else 1
        return hgeom.BoundaryEnd.cone(parse_number(bits[1]), grade=grade)
    raise DomainError("unknown end kind %r" % (kind,))


def _terms_h(config):
    if config.params.get("cusp_cusp"):
        ends = (hgeom.BoundaryEnd.cusp(grade=1), hgeom.BoundaryEnd.cusp(grade=1))
    elif config.params.get("ends"):
        specs = config.params["ends"].split(",")
        if len(specs) != 2:
            raise DomainError("--ends takes exactly two comma-separated specs")
        ends = (_make_end(specs[0]), _make_end(specs[1]))
    else:
        raise DomainError("--h needs --cusp-cusp or --ends")
    lg = config.params.get("lgamma")
    if lg is None:
        raise DomainError("--h needs --lgamma")
    pg = hgeom.pants_seams(ends[0], ends[1], parse_number(lg))
    tv = terms.h_of_pants(pg)
    print("h,%s" % _g(tv.value))
    for name in sorted(tv.parts):
        print("%s,%s" % (name, _g(tv.parts[name])))


def _terms_lasso_cone(config):
    m = parse_number(config.params["m"])
    theta = parse_number(config.params["theta"])
    closed = terms.lasso_cone(m, theta)
    a, b = terms.cone_ab(m, theta)
    tol = config.tol if config.tol is not None else 1e-6
    quad = oracles.lasso_cone_integral(a, b, tol=tol)
    print("m,theta,closed_form,oracle,delta")
    print("%s,%s,%s,%s,%s" % (
        _g(m), _g(theta), _g(closed), _g(quad.value), _g(closed - quad.value)))


def _terms_lasso_cusp(config):
    m_bar = parse_number(config.params["mbar"])
    closed = terms.lasso_cusp(m_bar)
    tol = config.tol if config.tol is not None else 1e-8
    quad = oracles.lasso_cusp_integral(math.exp(-m_bar), tol=tol)
    print("m_bar,closed_form,oracle,delta")
    print("%s,%s,%s,%s" % (
        _g(m_bar), _g(closed), _g(quad.value), _g(closed - quad.value)))


def cmd_terms(config):
    mode = config.params["mode"]
    if mode == "phi":
        _terms_phi(config.params["grid"])
    elif mode == "br":
        _terms_br(config.params["grid"])
    elif mode == "h":
        _terms_h(config)
    elif mode == "lasso-cone":
        _terms_lasso_cone(config)
    elif mode == "lasso-cusp":
        _terms_lasso_cusp(config)
    else:
        raise DomainError("unknown terms mode %r" % (mode,))
    return 0


# ------------------------------------------------------ cmd: oracle

def _suite_lasso_cusp(rng, count, tol):
    rows = []
    worst = 0.0
    for _ in range(count):
        m_bar = rng.uniform(0.1, 5.0)
        closed = terms.lasso_cusp(m_bar)
        quad = oracles.lasso_cusp_integral(math.exp(-m_bar), tol=tol / 10.0)
        delta = closed - quad.value
        worst = max(worst, abs(delta))
        rows.append((m_bar, closed, quad.value, delta))
    return "m_bar,closed_form,oracle,delta", rows, worst


def _suite_lasso_cone(rng, count, tol):
    rows = []
    worst = 0.0
    for _ in range(count):
        theta = rng.uniform(0.1, math.pi / 2.0)
        m_min = math.acosh(1.0 / math.cos(theta / 2.0))
        m = m_min + rng.uniform(0.05, 2.0)
        closed = terms.lasso_cone(m, theta)
        a, b = terms.cone_ab(m, theta)
        quad = oracles.lasso_cone_integral(a, b, tol=tol / 4.0)
        delta = closed - quad.value
        worst = max(worst, abs(delta))
        rows.append((m, theta, closed, quad.value, delta))
    return "m,theta,closed_form,oracle,delta", rows, worst


def _suite_f_delta(rng, count, tol):
    rows = []
    worst = 0.0
    made = 0
    guard = 0
    while made < count:
        guard += 1
        if guard > 200 * count:
            raise DomainError("rejection sampling stalled for f-delta")
        delta = rng.uniform(-1.2, 1.2)
        r1, r2 = sorted(rng.uniform(0.05, 1.45, size=2))
        if r2 - r1 < 1e-3:
            continue
        if r1 - 0.05 <= -delta <= r2 + 0.05:
            continue
        if r1 + delta < 0.03 or r2 + delta > math.pi - 0.03:
            continue
        closed = terms.f_delta(delta, r1, r2)
        quad = oracles.f_delta_integral(delta, r1, r2, tol=tol / 10.0)
        dv = closed - quad.value
        worst = max(worst, abs(dv))
        rows.append((delta, r1, r2, closed, quad.value, dv))
        made += 1
    return "delta,r1,r2,closed_form,oracle,delta_value", rows, worst


_SUITE_TOL = {"lasso-cusp": 1e-6, "lasso-cone": 1e-5, "f-delta": 1e-8}
_SUITE_FUN = {
    "lasso-cusp": _suite_lasso_cusp,
    "lasso-cone": _suite_lasso_cone,
    "f-delta": _suite_f_delta,
}
_SUITE_COUNT = {"lasso-cusp": 20, "lasso-cone": 20, "f-delta": 50}


def _run_quadrature_suite(name, seed, count, tol):
    rng = np.random.default_rng(seed)
    header, rows, worst = _SUITE_FUN[name](rng, count, tol)
    print(header)
    for row in rows:
        print(",".join(_g(x) for x in row))
    ok = worst <= tol
    print(
        "suite %s: %s (max |delta| %s, tol %s, %d samples)"
        % (name, "pass" if ok else "FAIL", _g(worst), _g(tol), count),
        file=sys.stderr)
    return ok


def _run_lemma_suite(seed, count):
    report = oracles.sample_lemma_checks(seed, count)
    all_ok = True
    for name, st in report.lemmas.items():
        ok = st.violations == 0
        all_ok = all_ok and ok
        print(
            "lemma %s: %s (%d samples, %d violations, %d skipped, "
            "worst residual %s)"
            % (name, "pass" if ok else "FAIL", st.samples, st.violations,
               st.skipped, _g(st.worst_residual)),
            file=sys.stderr)
    return all_ok


def cmd_oracle(config):
    if config.count is not None and config.count <= 0:
        raise DomainError("--count must be a positive integer")
    suite = config.params["suite"]
    names = ["lasso-cusp", "lasso-cone", "f-delta", "lemmas"] \
        if suite == "all" else [suite]
    ok = True
    for name in names:
        if name == "lemmas":
            count = config.count if config.count is not None else 1000
            ok = _run_lemma_suite(config.seed, count) and ok
        else:
            tol = config.tol if config.tol is not None else _SUITE_TOL[name]
            count = config.count if config.count is not None else _SUITE_COUNT[name]
            ok = _run_quadrature_suite(name, config.seed, count, tol) and ok
    return 0 if ok else 1


# ------------------------------------------------------------ main

def _build_parser():
    p = argparse.ArgumentParser(
        prog="orthosum",
        description="orthogeodesic identity terms, enumeration and checks")
    sub = p.add_subparsers(dest="subcommand", required=True)

    v = sub.add_parser("verify", help="run an identity partial sum")
    v.add_argument("--surface", required=True, choices=["gamma2", "pants"])
    v.add_argument("--grading", help="comma grades for gamma2, e.g. 2,2,2")
    v.add_argument("--lengths", help="comma boundary lengths for pants")
    v.add_argument("--identity", default="graded",
                   choices=["graded", "basmajian", "bridgeman"])
    v.add_argument("--max-word-len", type=int, default=10,
                   help="word-length budget for gamma2 enumeration")
    v.add_argument("--max-len", default="12",
                   help="ortho-length cutoff for pants enumeration")
    v.add_argument("--workers", type=int, default=None,
                   help="enumeration workers (default ORTHO_WORKERS or 1)")
    v.add_argument("--format", default="json", choices=["json", "csv"])
    v.add_argument("--out", default=None, help="report path (default stdout)")

    t = sub.add_parser("terms", help="tabulate closed-form terms")
    mode = t.add_mutually_exclusive_group(required=True)
    mode.add_argument("--phi", action="store_true")
    mode.add_argument("--br", action="store_true")
    mode.add_argument("--h", action="store_true")
    mode.add_argument("--lasso-cone", action="store_true")
    mode.add_argument("--lasso-cusp", action="store_true")
    t.add_argument("--grid", help="start:stop:count for --phi/--br")
    t.add_argument("--cusp-cusp", action="store_true",
                   help="two grade-1 cusp ends for --h")
    t.add_argument("--ends", help="two end specs kind[:param][:grade]")
    t.add_argument("--lgamma", help="length of the third boundary for --h")
    t.add_argument("--m", help="cone distance for --lasso-cone")
    t.add_argument("--theta", help="cone angle for --lasso-cone")
    t.add_argument("--mbar", help="cusp truncation for --lasso-cusp")
    t.add_argument("--tol", type=float, default=None)

    o = sub.add_parser("oracle", help="rerun quadrature and lemma checks")
    o.add_argument("--suite", default="all",
                   choices=["all", "lasso-cusp", "lasso-cone", "f-delta",
                            "lemmas"])
    o.add_argument("--seed", type=int, required=True)
    o.add_argument("--count", type=int, default=None)
    o.add_argument("--tol", type=float, default=None)
    return p


def _config_from_args(args):
    cfg = RunConfig(subcommand=args.subcommand)
    if args.subcommand == "verify":
        cfg.surface = args.surface
        cfg.identity = args.identity
        cfg.fmt = args.format
        cfg.out = args.out
        cfg.workers = args.workers
        if args.surface == "gamma2":
            if not args.grading:
                raise DomainError("--surface gamma2 needs --grading")
            cfg.grading = _parse_grading(args.grading)
            cfg.depth = args.max_word_len
        else:
            if not args.lengths:
                raise DomainError("--surface pants needs --lengths")
            cfg.grading = _parse_lengths(args.lengths)
            cfg.max_len = parse_number(args.max_len)
    elif args.subcommand == "terms":
        cfg.tol = args.tol
        if args.phi:
            cfg.params["mode"] = "phi"
        elif args.br:
            cfg.params["mode"] = "br"
        elif args.h:
            cfg.params["mode"] = "h"
        elif args.lasso_cone:
            cfg.params["mode"] = "lasso-cone"
        else:
            cfg.params["mode"] = "lasso-cusp"
        if cfg.params["mode"] in ("phi", "br"):
            if not args.grid:
                raise DomainError("--%s needs --grid" % cfg.params["mode"])
            cfg.params["grid"] = _parse_grid(args.grid)
        cfg.params["cusp_cusp"] = args.cusp_cusp
        cfg.params["ends"] = args.ends
        cfg.params["lgamma"] = args.lgamma
        if cfg.params["mode"] == "lasso-cone":
            if args.m is None or args.theta is None:
                raise DomainError("--lasso-cone needs --m and --theta")
            cfg.params["m"] = args.m
            cfg.params["theta"] = args.theta
        if cfg.params["mode"] == "lasso-cusp":
            if args.mbar is None:
                raise DomainError("--lasso-cusp needs --mbar")
            cfg.params["mbar"] = args.mbar
    else:
        cfg.seed = args.seed
        cfg.count = args.count
        cfg.tol = args.tol
        cfg.params["suite"] = args.suite
    return cfg


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if cfg.subcommand == "verify":
            return cmd_verify(cfg)
        if cfg.subcommand == "terms":
            return cmd_terms(cfg)
        return cmd_oracle(cfg)
    except (DomainError, GeometryError, AmbiguousGeometry, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
