"""q-deformed calculus with q kept as a formal Laurent variable."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .ncalg import Algebra, Var
from .scalar import ONE, Q, ZERO, Scalar

QScalar = Scalar

# quantum plane: y*x = q*x*y
PLANE = Algebra.build(qcommuting=[("x", "y", 1)])


@lru_cache(maxsize=None)
def q_integer(n: int) -> Scalar:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    if n < 0:
        raise DomainError("q-integers are defined for n >= 0")
    return Scalar({k: (1, 0) for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Scalar:
    if n < 0:
        raise DomainError("q-factorial needs n >= 0")
    out = ONE
    for m in range(1, n + 1):
        out = out * q_integer(m)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> Scalar:
    if not 0 <= k <= n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    try:
        return q_factorial(n).divexact(q_factorial(k) * q_factorial(n - k))
    except ArithmeticError as exc:  # pragma: no cover - cannot happen for valid n, k
        raise AssertionError(f"inexact q-binomial division for n={n}, k={k}") from exc


class QPoly:
    """Polynomial in ``x`` whose coefficients are Laurent polynomials in ``q``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict[int, Scalar | int | Fraction] | None = None):
        c = {}
        for deg, v in (coeffs or {}).items():
            if deg < 0:
                raise DomainError("QPoly degrees are non-negative")
            v = Scalar.coerce(v)
            if not v.is_zero():
                c[deg] = v
        self._c = c

    @classmethod
    def monomial(cls, n: int, coeff: Scalar | int | Fraction = 1) -> "QPoly":
        return cls({n: coeff})

    def coeffs(self) -> dict[int, Scalar]:
        return dict(self._c)

    def coeff(self, n: int) -> Scalar:
        return self._c.get(n, ZERO)

    def degree(self) -> int:
        return max(self._c, default=0)

    def __add__(self, other: "QPoly") -> "QPoly":
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, ZERO) + v
        return QPoly(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + other.scale(-1)

    def scale(self, s) -> "QPoly":
        s = Scalar.coerce(s)
        return QPoly({k: v * s for k, v in self._c.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __call__(self, x, q=None) -> Scalar:
        """Evaluate at rational ``x``; substitute ``q`` too when given."""
        x = Fraction(x)
        out = ZERO
        for deg, v in self._c.items():
            out = out + v * (x ** deg)
        return out.evaluate(q) if q is not None else out

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = ""
        for deg in sorted(self._c, reverse=True):
            c = self._c[deg]
            neg = len(c.items()) == 1 and str(c).startswith("-")
            if neg:
                c = -c
            cs = str(c)
            xs = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
            if len(c.items()) > 1:
                cs = f"({cs})"
            piece = cs if not xs else (xs if c == ONE else f"{cs}*{xs}")
            if not out:
                out = ("-" if neg else "") + piece
            else:
                out += (" - " if neg else " + ") + piece
        return out

    def __repr__(self) -> str:
        return f"QPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Parse e.g. ``(1+q)*x^2 + x - 3``; ``x`` is the only variable."""
        alg = Algebra.build(scalars=["x"])
        e = alg.parse(text)
        coeffs: dict[int, Scalar] = {}
        for t in e.terms:
            if t.jpow or any(v != Var("x") for v in t.word):
                raise ValueError(f"not a polynomial in x: {text!r}")
            coeffs[len(t.word)] = coeffs.get(len(t.word), ZERO) + t.coeff
        return cls(coeffs)


def dq(f: QPoly) -> QPoly:
    """Jackson derivative ``(f(qx) - f(x)) / (qx - x)``, divided out exactly."""
    out = {}
    for n, c in f.coeffs().items():
        if n == 0:
            continue
        # c x^n (q^n - 1) / ((q - 1) x)
        out[n - 1] = c * (Scalar.qpow(n) - ONE).divexact(Q - ONE)
    return QPoly(out)


def plane_expansion(n: int):
    """``(x + y)^n`` in the quantum plane."""
    x, y = PLANE.var("x"), PLANE.var("y")
    return (x + y) ** n


def q_binomial_theorem_check(n: int, cap: int = 16) -> bool:
    """Coefficients of ``x^k y^(n-k)`` in ``(x+y)^n`` equal ``q_binomial(n, k)``."""
    if not 0 <= n <= cap:
        raise DomainError(f"n must lie in 0..{cap}")
    e = plane_expansion(n)
    seen = 0
    for k in range(n + 1):
        word = (Var("x"),) * k + (Var("y"),) * (n - k)
        if e.coefficient(0, word) != q_binomial(n, k):
            return False
        seen += 1
    return seen == len(e.terms)


def difference_quotient(f: QPoly, x0, delta) -> Fraction:
    """``(f(x0 + delta) - f(x0)) / delta`` for a q-free polynomial."""
    x0, delta = Fraction(x0), Fraction(delta)
    if delta == 0:
        raise DomainError("delta must be non-zero")
    return (f(x0 + delta) - f(x0)).real / delta


def doc_bridge_check(f: QPoly, x0, delta) -> bool:
    """Forward difference with step ``delta`` equals ``D_q f`` at ``q = (x0 + delta)/x0``."""
    x0, delta = Fraction(x0), Fraction(delta)
    if x0 == 0 or delta == 0:
        raise DomainError("x0 and delta must be non-zero")
    if any(not c.is_constant() for c in f.coeffs().values()):
        raise DomainError("bridge check needs a q-free polynomial")
    q = (x0 + delta) / x0
    lhs = (f(x0 + delta) - f(x0)).divexact(Scalar.coerce(delta))
    rhs = dq(f)(x0, q=q)
    return lhs == rhs
