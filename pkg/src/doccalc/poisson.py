"""Poisson brackets on polynomial functions of one position ``q`` and one momentum ``p``.

The bracket obeys a time-Leibniz rule only for divergence-free flows; the
defect is exactly ``-{a, b} * div(flow)``, and Hamiltonian flows are the
divergence-free ones.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Monomial = tuple[int, int]


class PolyQP:
    """Sparse polynomial ``sum c[i,j] q^i p^j`` with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict[Monomial, Fraction | int] | None = None):
        self._c = {k: v if type(v) is Fraction else Fraction(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, c) -> "PolyQP":
        return cls({(0, 0): c})

    @classmethod
    def q(cls) -> "PolyQP":
        return cls({(1, 0): 1})

    @classmethod
    def p(cls) -> "PolyQP":
        return cls({(0, 1): 1})

    @classmethod
    def coerce(cls, x: Union["PolyQP", int, Fraction]) -> "PolyQP":
        return x if isinstance(x, PolyQP) else cls.const(x)

    def coeffs(self) -> dict[Monomial, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        return max((i + j for i, j in self._c), default=0)

    def __add__(self, other) -> "PolyQP":
        other = PolyQP.coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return PolyQP(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyQP":
        return PolyQP({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "PolyQP":
        return self + (-PolyQP.coerce(other))

    def __rsub__(self, other) -> "PolyQP":
        return PolyQP.coerce(other) - self

    def __mul__(self, other) -> "PolyQP":
        other = PolyQP.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), a in self._c.items():
            for (i2, j2), b in other._c.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return PolyQP(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyQP":
        out = PolyQP.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyQP.const(other)
        if not isinstance(other, PolyQP):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def diff_q(self) -> "PolyQP":
        return PolyQP({(i - 1, j): i * v for (i, j), v in self._c.items() if i})

    def diff_p(self) -> "PolyQP":
        return PolyQP({(i, j - 1): j * v for (i, j), v in self._c.items() if j})

    def __call__(self, q, p) -> Fraction:
        return sum((v * Fraction(q) ** i * Fraction(p) ** j for (i, j), v in self._c.items()), Fraction(0))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        # higher total degree first, q-heavy first within a degree
        keys = sorted(self._c, key=lambda k: (-(k[0] + k[1]), -k[0]))
        out = ""
        for n, k in enumerate(keys):
            v = self._c[k]
            body = _mono_str(abs(v), k)
            if n == 0:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"PolyQP({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "PolyQP":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])([^+-]+)", s)
        if "".join(a + b for a, b in pieces) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out = cls()
        for sign, body in pieces:
            term = cls.const(1)
            for factor in body.split("*"):
                m = re.fullmatch(r"(\d+(?:/\d+)?)|([qp])(?:\^(\d+))?", factor)
                if m is None:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                if m.group(1):
                    term = term * Fraction(m.group(1))
                else:
                    base = cls.q() if m.group(2) == "q" else cls.p()
                    term = term * base ** int(m.group(3) or 1)
            out = out + term if sign == "+" else out - term
        return out


def _mono_str(v: Fraction, k: Monomial) -> str:
    i, j = k
    parts = []
    if i:
        parts.append("q" if i == 1 else f"q^{i}")
    if j:
        parts.append("p" if j == 1 else f"p^{j}")
    coeff = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if not parts:
        return coeff
    if v != 1:
        parts.insert(0, coeff)
    return "*".join(parts)


@dataclass(frozen=True)
class Flow:
    """An autonomous polynomial vector field on the (q, p) plane."""

    qdot: PolyQP
    pdot: PolyQP


def poisson_bracket(a: PolyQP, b: PolyQP) -> PolyQP:
    return a.diff_q() * b.diff_p() - a.diff_p() * b.diff_q()


def total_derivative(a: PolyQP, f: Flow) -> PolyQP:
    """Rate of change of ``a`` along the flow (chain rule)."""
    return a.diff_q() * f.qdot + a.diff_p() * f.pdot


def divergence(f: Flow) -> PolyQP:
    return f.qdot.diff_q() + f.pdot.diff_p()


def hamiltonian_flow(h: PolyQP) -> Flow:
    return Flow(qdot=h.diff_p(), pdot=-h.diff_q())


def leibniz_defect(a: PolyQP, b: PolyQP, f: Flow) -> PolyQP:
    """``d/dt{a,b} - {da/dt, b} - {a, db/dt}`` along ``f``."""
    return (
        total_derivative(poisson_bracket(a, b), f)
        - poisson_bracket(total_derivative(a, f), b)
        - poisson_bracket(a, total_derivative(b, f))
    )


def random_poly(rng: random.Random, max_degree: int = 4, density: float = 0.5, span: int = 5) -> PolyQP:
    coeffs = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if rng.random() < density:
                coeffs[(i, j)] = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    return PolyQP(coeffs)
