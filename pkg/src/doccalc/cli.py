"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from . import dynamics, hopf, netamp, qcalc, suites
from .errors import DomainError, LimitError, SingularStep
from .scalar import Scalar, format_gauss_spaced, parse_gauss


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _gauss(s: Scalar) -> str:
    return format_gauss_spaced(s.real, s.imag)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- verify ---------------------------------------------------------------------

def cmd_verify(a) -> int:
    if a.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {', '.join(suites.SUITES)}")
    rep = suites.run_suite(a.suite, seed=a.seed, cases=a.cases)
    _emit(_json(rep.as_dict()), a.out)
    return 0 if rep.ok else 1


# -- chaos ----------------------------------------------------------------------

def cmd_chaos_step(a) -> int:
    try:
        v = dynamics.step(a.d0, a.d1, a.k, a.eps)
    except SingularStep:
        _emit(dynamics.SINGULAR, a.out)
        return 0
    _emit(dynamics.format_real(v), a.out)
    return 0


def cmd_chaos_orbit(a) -> int:
    p = dynamics.OrbitParams(a.d0, a.d1, a.k, a.steps, a.escape, a.eps)
    _emit(dynamics.orbit_csv(dynamics.iterate(p)), a.out)
    return 0


def cmd_chaos_scan(a) -> int:
    g0 = dynamics.parse_grid(a.grid)
    g1 = dynamics.parse_grid(a.d1_grid) if a.d1_grid else g0
    rows = dynamics.scan(g0, g1, a.k, a.steps, a.escape, a.eps)
    _emit(dynamics.scan_csv(rows), a.out)
    return 0


# -- qcalc ----------------------------------------------------------------------

def cmd_qcalc_table(a) -> int:
    if not 0 <= a.n <= 30:
        raise DomainError("--n must lie in 0..30")
    rows = []
    for n in range(a.n + 1):
        for k in range(n + 1):
            rows.append([n, k, str(qcalc.q_integer(n)), str(qcalc.q_factorial(n)), str(qcalc.q_binomial(n, k))])
    _emit(_csv(["n", "k", "q_integer", "q_factorial", "q_binomial"], rows), a.out)
    return 0


def cmd_qcalc_dq(a) -> int:
    try:
        f = qcalc.QPoly.parse(a.poly)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    _emit(str(qcalc.dq(f)), a.out)
    return 0


# -- netamp ---------------------------------------------------------------------

def _state(name: str, names: dict[str, int]) -> int:
    if name in names:
        return names[name]
    try:
        return int(name)
    except ValueError:
        raise DomainError(f"unknown state {name!r}") from None


def _load_matrix(spec: str):
    if spec == "dirac2":
        return netamp.DIRAC2, dict(netamp.STATE_NAMES)
    with open(spec, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON in {spec}: {exc}") from None
    try:
        w = [[parse_gauss(str(x)) for x in row] for row in doc["matrix"]]
        names = {str(s): i for i, s in enumerate(doc.get("states", []))}
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed matrix document: {exc}") from None
    return w, names


def cmd_netamp_chain(a) -> int:
    w, names = _load_matrix(a.matrix)
    ia, ib = _state(a.a, names), _state(a.b, names)
    val = netamp.chain_amplitude(w, a.m, ia, ib)
    doc = {"value": _gauss(val), "m": a.m, "a": a.a, "b": a.b}
    code = 0
    if a.oracle:
        ref = netamp.chain_amplitude_paths(w, a.m, ia, ib)
        doc["oracle"] = _gauss(ref)
        doc["agree"] = ref == val
        code = 0 if ref == val else 1
    _emit(_json(doc), a.out)
    return code


def cmd_netamp_penrose(a) -> int:
    net, _, _ = netamp.load_network_file(a.file)
    count = netamp.penrose_count(net)
    doc = {"value": str(count)}
    code = 0
    if a.oracle:
        ref = netamp.brute_force_edge_colorings(net)
        doc["oracle"] = ref
        doc["agree"] = ref == count
        code = 0 if ref == count else 1
    _emit(_json(doc), a.out)
    return code


def cmd_netamp_partition(a) -> int:
    net, rule, _ = netamp.load_network_file(a.file)
    rows: list[dict] = []

    def record(colors, weight):
        rows.append({"colors": list(colors), "weight": _gauss(weight)})

    amp = netamp.partition_function(net, rule, trace=record if a.trace else None)
    _emit(_json(amp.to_json()), a.out)
    if a.trace:
        with open(a.trace, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row) + "\n")
    return 0


def _direction_init(text: str) -> tuple[int, str]:
    m = re.fullmatch(r"(-?\d+)([LR])", text.strip())
    if not m:
        raise DomainError(f"--init must look like 0R or -3L, got {text!r}")
    return int(m.group(1)), m.group(2)


def cmd_netamp_checkerboard(a) -> int:
    init = _direction_init(a.init)
    state = netamp.checkerboard_evolve(a.t, init)
    rows = []
    for t in range(a.t + 1):
        for (d, x, tt), v in sorted(state.psi.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if tt == t:
                rows.append([t, x, d, _gauss(v)])
    code = 0
    if a.oracle:
        if a.t > netamp.BRUTE_FORCE_MAX_T:
            raise LimitError(f"--oracle supports t <= {netamp.BRUTE_FORCE_MAX_T}")
        ok = all(
            state.amplitude(d, x, t) == netamp.brute_force_path_sum(t, init, (x, d))
            for t in range(a.t + 1)
            for x in range(init[0] - t, init[0] + t + 1)
            for d in "LR"
        )
        print(f"oracle: {'agree' if ok else 'DISAGREE'}", file=sys.stderr)
        code = 0 if ok else 1
    _emit(_csv(["t", "x", "direction", "value"], rows), a.out)
    return code


# -- hopf -----------------------------------------------------------------------

def _hopf_source(a) -> hopf.FiniteHopf:
    if bool(a.file) == bool(a.builtin):
        raise UsageError("give exactly one of --file or --builtin")
    if a.file:
        return hopf.load(a.file)
    if a.builtin == "sweedler":
        return hopf.sweedler()
    m = re.fullmatch(r"cyclic:(\d+)", a.builtin)
    if m:
        return hopf.cyclic_group_algebra(int(m.group(1)))
    raise UsageError(f"unknown builtin {a.builtin!r}; use sweedler or cyclic:N")


def cmd_hopf_verify(a) -> int:
    h = _hopf_source(a)
    rep = hopf.verify_hopf(h)
    doc = {"dim": h.dim, "ok": rep.ok, "checks": rep.as_dict()}
    _emit(_json(doc), a.out)
    return 0 if rep.ok else 1


def cmd_hopf_doc(a) -> int:
    h = _hopf_source(a)
    g, x = h.basis(a.g), h.basis(a.x)
    _emit(_json({"g": a.g, "x": a.x, "derivative": h.format(hopf.doc_derivative(h, g, x))}), a.out)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="doccalc", description="Exact discrete ordered calculus and companion experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, fn, help_):
        sp = parent.add_parser(name, help=help_, description=help_)
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    v = leaf(sub, "verify", cmd_verify, "run a randomized identity suite")
    v.add_argument("suite", help=", ".join(suites.SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=None, help="random cases per identity")

    ch = sub.add_parser("chaos", help="scalar-source recursion").add_subparsers(
        dest="action", required=True, parser_class=_Parser)

    def recursion_args(sp, initial=True):
        if initial:
            sp.add_argument("--d0", type=float, required=True)
            sp.add_argument("--d1", type=float, required=True)
        sp.add_argument("--k", type=float, required=True)
        sp.add_argument("--eps", type=float, default=dynamics.DEFAULT_SINGULAR_EPS,
                        help="denominators below this magnitude are singular")

    def limits(sp):
        sp.add_argument("--steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
        sp.add_argument("--escape", type=float, default=dynamics.DEFAULT_ESCAPE,
                        help="magnitude above which an orbit counts as escaped")

    recursion_args(leaf(ch, "step", cmd_chaos_step, "one recursion step"))
    o = leaf(ch, "orbit", cmd_chaos_orbit, "orbit as CSV")
    recursion_args(o)
    limits(o)
    s = leaf(ch, "scan", cmd_chaos_scan, "classify a grid of initial pairs, CSV")
    recursion_args(s, initial=False)
    limits(s)
    s.add_argument("--grid", required=True, help="lo:hi:n, used for both axes")
    s.add_argument("--d1-grid", help="separate lo:hi:n for the second axis")

    qc = sub.add_parser("qcalc", help="q-calculus").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    t = leaf(qc, "table", cmd_qcalc_table, "q-integers, q-factorials and q-binomials as CSV")
    t.add_argument("--n", type=int, required=True)
    d = leaf(qc, "dq", cmd_qcalc_dq, "Jackson derivative of a polynomial in x")
    d.add_argument("--poly", required=True, help="e.g. 'x^3 + (1+q)*x'")

    na = sub.add_parser("netamp", help="network amplitudes").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    pe = leaf(na, "penrose", cmd_netamp_penrose, "Penrose 3-colour evaluation of a cubic plane graph")
    pe.add_argument("--file", required=True)
    pe.add_argument("--oracle", action="store_true", help="compare with brute-force edge colourings")
    pa = leaf(na, "partition", cmd_netamp_partition, "partition function of a network document")
    pa.add_argument("--file", required=True)
    pa.add_argument("--trace", help="write the enumeration trace as JSON lines")
    c = leaf(na, "chain", cmd_netamp_chain, "chain amplitude through m internal nodes")
    c.add_argument("--matrix", default="dirac2", help="dirac2 or a JSON file with 'matrix' and 'states'")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--oracle", action="store_true", help="compare with path enumeration")
    cb = leaf(na, "checkerboard", cmd_netamp_checkerboard, "checkerboard path-sum amplitudes as CSV")
    cb.add_argument("--t", type=int, required=True)
    cb.add_argument("--init", default="0R", help="start position and direction, e.g. 0R")
    cb.add_argument("--oracle", action="store_true", help="compare with brute-force path sums")

    hp = sub.add_parser("hopf", help="finite Hopf algebras").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, fn, help_ in [("verify", cmd_hopf_verify, "check the Hopf axioms"),
                            ("doc", cmd_hopf_doc, "derivative x -> g x - x g")]:
        sp = leaf(hp, name, fn, help_)
        sp.add_argument("--file")
        sp.add_argument("--builtin", help="sweedler or cyclic:N")
        if name == "doc":
            sp.add_argument("--g", required=True, help="grouplike basis label")
            sp.add_argument("--x", required=True, help="basis label to differentiate")
    return p


_NEG_VALUE = re.compile(r"^-[\d.]")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let ``--grid -2:2:101`` and ``--d0 -1`` through argparse unchanged."""
    out: list[str] = []
    for i, tok in enumerate(argv):
        prev = argv[i - 1] if i else ""
        if _NEG_VALUE.match(tok) and prev.startswith("--") and "=" not in prev:
            out[-1] = f"{prev}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        return args.fn(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (DomainError, LimitError, OSError, ValueError) as exc:
        print(f"doccalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
