"""Randomized and fixed identity suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import hopf, ncalg, netamp, poisson, qcalc
from .ncalg import Algebra, D, Expr, commutator, shift
from .scalar import I, Scalar

# Free families A, B, X, Y; scalar families S, T; a constant c; q-plane x, y.
MIXED = Algebra.build(
    scalars=["S", "T"],
    constants=["c"],
    commuting=[("A", "B")],
    qcommuting=[("x", "y", 1)],
)
_FAMILIES = ["A", "B", "X", "Y", "S", "T", "c", "x", "y"]


def random_gauss(rng: random.Random, qpow: bool = True) -> Scalar:
    re_ = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
    im = Fraction(rng.randint(-2, 2), rng.choice([1, 2])) if rng.random() < 0.3 else 0
    k = rng.randint(-1, 2) if qpow and rng.random() < 0.2 else 0
    s = Scalar.gauss(re_, im, k)
    return s if not s.is_zero() else Scalar.coerce(1)


def random_word(rng: random.Random, alg: Algebra, max_len: int = 6, max_shift: int = 3,
                jprob: float = 0.15) -> Expr:
    out = alg.const(1)
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < jprob:
            out = out * alg.J
        else:
            fam = rng.choice(_FAMILIES)
            idx = rng.choice([0, 0, 1, 2]) if fam in ("X", "T") else 0
            out = out * alg.var(fam, idx, rng.randint(0, max_shift))
    return out


def random_expr(rng: random.Random, alg: Algebra = MIXED, max_terms: int = 3, **kw) -> Expr:
    out = alg.zero()
    for _ in range(rng.randint(1, max_terms)):
        out = out + random_gauss(rng) * random_word(rng, alg, **kw)
    return out


@dataclass
class Check:
    name: str
    passed: bool
    cases: int = 1
    detail: str = ""

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": "pass" if self.passed else "fail", "cases": self.cases}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "ok": self.ok,
                "checks": [c.as_dict() for c in self.checks]}


def _count(fn: Callable[[], bool], cases: int) -> tuple[bool, int]:
    for n in range(cases):
        if not fn():
            return False, n
    return True, cases


# -- discrete ordered calculus ---------------------------------------------------

def scalar_source_expected(alg: Algebra, family: str = "T", jpow: int = 3) -> Expr:
    """``J^jpow (Delta''(Delta' - Delta) - (Delta'' - Delta') Delta)`` with ``Delta = T' - T``."""
    t = [alg.var(family, shift=k) for k in range(4)]
    delta = [t[k + 1] - t[k] for k in range(3)]
    body = delta[2] * (delta[1] - delta[0]) - (delta[2] - delta[1]) * delta[0]
    return alg.J ** jpow * body


def scalar_source_bracket(alg: Algebra, family: str = "T") -> Expr:
    dt = D(alg.var(family))
    return commutator(dt, D(dt))


def doc_identities(seed: int = 0, cases: int = 1000) -> Report:
    rng = random.Random(seed)
    rep = Report("doc-identities", seed)
    alg = MIXED

    def rnd():
        return random_expr(rng, alg)

    randomized = [
        ("leibniz_d", lambda: ncalg.leibniz_defect_d(rnd(), rnd()).is_zero()),
        ("leibniz_D", lambda: ncalg.leibniz_defect_D(rnd(), rnd()).is_zero()),
        ("jacobi", lambda: ncalg.jacobi_defect(rnd(), rnd(), rnd()).is_zero()),
        ("bracket_leibniz", lambda: ncalg.bracket_leibniz_defect(rnd(), rnd()).is_zero()),
        ("D_is_J_times_d", lambda: (lambda e: D(e) == alg.J * (shift(e) - e))(rnd())),
    ]
    for name, fn in randomized:
        ok, n = _count(fn, cases)
        rep.checks.append(Check(name, ok, n))

    free = Algebra.build()
    X = free.var("X")
    expected = free.parse("J*X'*X' - 2*J*X'*X + J*X*X")
    rep.checks.append(Check("commutator_X_DX", commutator(X, D(X)) == expected))

    comm = Algebra.build(commuting=[("X", "X")], indexed={"X": 4})
    sym = all((ncalg.metric(comm, i, j, "X") - ncalg.metric(comm, j, i, "X")).is_zero()
              for i in range(1, 5) for j in range(1, 5))
    rep.checks.append(Check("metric_symmetric", sym, 16))
    freeidx = Algebra.build(indexed={"X": 2})
    asym = not (ncalg.metric(freeidx, 1, 2, "X") - ncalg.metric(freeidx, 2, 1, "X")).is_zero()
    rep.checks.append(Check("metric_free_counterexample_nonzero", asym))

    sc = Algebra.build(scalars=["T"])
    rep.checks.append(Check("scalar_source_bracket_J3",
                            scalar_source_bracket(sc) == scalar_source_expected(sc, jpow=3)))
    ab = Algebra.build(scalars=["A", "B"])
    a, b = ab.var("A"), ab.var("B")
    cross = commutator(a, D(b)) == ab.J * (shift(a) - a) * (shift(b) - b)
    rep.checks.append(Check("scalar_cross_term", cross))
    return rep


# -- Poisson --------------------------------------------------------------------

def poisson_suite(seed: int = 0, cases: int = 1000) -> Report:
    rng = random.Random(seed)
    rep = Report("poisson", seed)
    P = poisson

    def rnd():
        return P.random_poly(rng, 4)

    def exact_formula():
        a, b = rnd(), rnd()
        f = P.Flow(rnd(), rnd())
        return (P.leibniz_defect(a, b, f) + P.poisson_bracket(a, b) * P.divergence(f)).is_zero()

    def hamiltonian():
        f = P.hamiltonian_flow(rnd())
        return P.leibniz_defect(rnd(), rnd(), f).is_zero() and P.divergence(f).is_zero()

    def antisym_jacobi():
        a, b, c = (P.random_poly(rng, 3) for _ in range(3))
        pb = P.poisson_bracket
        return (pb(a, b) + pb(b, a)).is_zero() and (
            pb(a, pb(b, c)) + pb(b, pb(c, a)) + pb(c, pb(a, b))).is_zero()

    for name, fn, n in [("exact_leibniz_formula", exact_formula, cases),
                        ("hamiltonian_flows_leibniz", hamiltonian, cases),
                        ("antisymmetry_and_jacobi", antisym_jacobi, max(1, cases // 5))]:
        ok, done = _count(fn, n)
        rep.checks.append(Check(name, ok, done))
    q, p = P.PolyQP.q(), P.PolyQP.p()
    rep.checks.append(Check("canonical_pair", P.poisson_bracket(q, p) == 1))
    return rep


# -- q-calculus -----------------------------------------------------------------

def qcalc_suite(seed: int = 0, cases: int = 200) -> Report:
    rng = random.Random(seed)
    rep = Report("qcalc", seed)
    Q = qcalc
    mono = all(Q.dq(Q.QPoly.monomial(n)) == Q.QPoly.monomial(n - 1, Q.q_integer(n)) for n in range(1, 21))
    rep.checks.append(Check("dq_monomials", mono, 20))
    thm = all(Q.q_binomial_theorem_check(n) for n in range(11))
    rep.checks.append(Check("q_binomial_theorem", thm, 11))
    sym = all(Q.q_binomial(n, k) == Q.q_binomial(n, n - k) for n in range(13) for k in range(n + 1))
    rep.checks.append(Check("q_binomial_symmetry", sym))

    def bridge():
        f = random_rational_qpoly(rng)
        x0, delta = _nonzero_rational(rng), _nonzero_rational(rng)
        return Q.doc_bridge_check(f, x0, delta)

    ok, n = _count(bridge, cases)
    rep.checks.append(Check("doc_bridge", ok, n))
    return rep


def _nonzero_rational(rng: random.Random) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if x:
            return x


def random_rational_qpoly(rng: random.Random, max_degree: int = 6) -> "qcalc.QPoly":
    return qcalc.QPoly({d: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                        for d in range(rng.randint(0, max_degree) + 1)})


# -- Hopf -----------------------------------------------------------------------

def hopf_suite(seed: int = 0, cases: int = 0) -> Report:
    rep = Report("hopf", seed)
    H = hopf
    sw = H.sweedler()
    g = sw.basis("g")
    rep.checks.append(Check("sweedler_axioms", H.verify_hopf(sw).ok))
    rep.checks.append(Check("sweedler_S2_is_conjugation", H.antipode_square_is_conjugation(sw, g)))
    basis = [sw.basis(i) for i in range(sw.dim)]
    s2_id = all(sw.S(sw.S(x)) == x for x in basis)
    s4_id = all(sw.S(sw.S(sw.S(sw.S(x)))) == x for x in basis)
    rep.checks.append(Check("sweedler_S_order_4", (not s2_id) and s4_id))

    def D(x):
        return H.doc_derivative(sw, g, x)

    rule = all(D(sw.mul(a, b)) == sw.add(sw.mul(a, D(b)), sw.mul(D(a), b)) for a in basis for b in basis)
    rep.checks.append(Check("derivative_product_rule", rule, sw.dim ** 2))
    rep.checks.append(Check("D_kills_unit_and_g", sw.is_zero(D(sw.unit)) and sw.is_zero(D(g))))
    for n in (1, 2, 3, 4, 6):
        c = H.cyclic_group_algebra(n)
        dead = H.verify_hopf(c).ok and all(
            c.is_zero(H.doc_derivative(c, c.unit, c.basis(i))) for i in range(n))
        rep.checks.append(Check(f"cyclic_{n}_no_time", dead))
    return rep


# -- networks -------------------------------------------------------------------

def penrose_corpus() -> dict[str, netamp.Network]:
    """Trivalent plane graphs; every rotation is counterclockwise in a fixed drawing."""
    N = netamp.Network.create
    return {
        "theta": N([3] * 3, [[2, 1, 0], [0, 1, 2]]),
        "k4": N([3] * 6, [[1, 2, 0], [3, 0, 5], [4, 1, 3], [5, 2, 4]]),
        "prism": N([3] * 9, [[0, 2, 6], [7, 1, 0], [8, 2, 1], [3, 6, 5], [4, 7, 3], [5, 8, 4]]),
        "bridged": N([3] * 9, [[1, 0, 2], [3, 0, 1], [3, 4, 2], [6, 5, 4], [5, 7, 8], [8, 7, 6]]),
    }


def brute_force_path_table(t: int, init: tuple[int, str]) -> dict[tuple[str, int], Scalar]:
    """All endpoint amplitudes at time ``t`` from one pass over the ``2^t`` paths."""
    x0, d0 = init
    out: dict[tuple[str, int], Scalar] = {}
    powers = [Scalar.coerce(1), I, Scalar.coerce(-1), -I]
    import itertools

    for seq in itertools.product("LR", repeat=t):
        x = x0 + sum(netamp.STEP[s] for s in seq)
        corners = sum(1 for p, s in zip((d0,) + seq, seq) if p != s)
        key = (seq[-1] if seq else d0, x)
        out[key] = out.get(key, Scalar()) + powers[corners % 4]
    return {k: v for k, v in out.items() if not v.is_zero()}


def netamp_suite(seed: int = 0, cases: int = 0, t_max: int = 14) -> Report:
    rng = random.Random(seed)
    rep = Report("netamp-oracles", seed)
    for name, net in penrose_corpus().items():
        got = netamp.penrose_count(net)
        want = netamp.brute_force_edge_colorings(net)
        rep.checks.append(Check(f"penrose_{name}", got == want, detail=f"{got} vs {want}"))

    state = netamp.checkerboard_evolve(t_max, (0, "R"))
    ok = True
    for t in range(t_max + 1):
        table = brute_force_path_table(t, (0, "R"))
        dp = {(d, x): v for (d, x, tt), v in state.psi.items() if tt == t}
        ok &= dp == table
    rep.checks.append(Check("checkerboard_dp_vs_paths", ok, t_max + 1))

    chain_ok = True
    n_checked = 0
    for n in range(1, 5):
        w = [[random_gauss(rng, qpow=False) for _ in range(n)] for _ in range(n)]
        for m in range(0, 9):
            pairs = [(a, b) for a in range(n) for b in range(n)]
            if n ** m > 5000:
                pairs = [rng.choice(pairs)]
            for a, b in pairs:
                chain_ok &= netamp.chain_amplitude(w, m, a, b) == netamp.chain_amplitude_paths(w, m, a, b)
                n_checked += 1
    rep.checks.append(Check("chain_dp_vs_paths", chain_ok, n_checked))
    dirac = netamp.DIRAC2
    rep.checks.append(Check("dirac_LL_m1_is_zero", netamp.chain_amplitude(dirac, 1, 0, 0).is_zero()))
    return rep


SUITES = {
    "doc-identities": doc_identities,
    "poisson": poisson_suite,
    "qcalc": qcalc_suite,
    "hopf": hopf_suite,
    "netamp-oracles": netamp_suite,
}
DEFAULT_CASES = {"doc-identities": 1000, "poisson": 1000, "qcalc": 200, "hopf": 0, "netamp-oracles": 0}


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> Report:
    fn = SUITES[name]
    return fn(seed=seed, cases=DEFAULT_CASES[name] if cases is None else cases)
