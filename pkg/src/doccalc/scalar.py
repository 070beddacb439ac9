"""Exact coefficient ring: Gaussian rationals tensored with Laurent polynomials in q.

A :class:`Scalar` is a finite sum ``sum_k c_k q^k`` where each ``c_k`` is a
Gaussian rational ``a + b i`` with ``a, b`` exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

Gauss = tuple[Fraction, Fraction]
Number = Union[int, Fraction, "Scalar"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_gauss(re_: Fraction, im: Fraction) -> str:
    """Compact form used inside expressions: ``3/2``, ``1/2i``, ``(3/2+1/2i)``."""
    if im == 0:
        return _frac_str(re_)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = _frac_str(im) + "i"
    if re_ == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"({_frac_str(re_)}{sign}{imag})"


def format_gauss_spaced(re_: Fraction, im: Fraction) -> str:
    """Report form: ``6``, ``3/4 i``, ``1/2+3/4 i``."""
    if im == 0:
        return _frac_str(re_)
    imag = "i" if abs(im) == 1 else _frac_str(abs(im)) + " i"
    if re_ == 0:
        return ("-" if im < 0 else "") + imag
    return f"{_frac_str(re_)}{'-' if im < 0 else '+'}{imag}"


_GAUSS_RE = re.compile(r"[+-]?\d+(/\d+)?|([+-]?\d+(/\d+)?)?[+-]?(\d+(/\d+)?)?i")


def parse_gauss(text: str) -> "Scalar":
    """Parse a Gaussian rational in either the compact or the report form."""
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not _GAUSS_RE.fullmatch(s):
        raise ValueError(f"cannot parse Gaussian rational: {text!r}")
    if not s.endswith("i"):
        return Scalar.gauss(Fraction(s))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    real_txt, imag_txt = (body[:cut], body[cut:]) if cut > 0 else ("", body)
    if imag_txt in ("", "+", "-"):
        imag_txt += "1"
    return Scalar.gauss(Fraction(real_txt) if real_txt else 0, Fraction(imag_txt))


class Scalar:
    """Immutable Laurent polynomial in ``q`` with Gaussian rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[int, Gauss] | None = None):
        clean = {}
        for k, (a, b) in (terms or {}).items():
            if a or b:
                clean[int(k)] = (a if type(a) is Fraction else Fraction(a),
                                 b if type(b) is Fraction else Fraction(b))
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple) -> "Scalar":
        """Wrap an already clean, sorted term tuple without revalidating it."""
        out = object.__new__(cls)
        out._terms = terms
        out._hash = None
        return out

    # -- constructors ------------------------------------------------------
    @classmethod
    def coerce(cls, x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({0: (Fraction(x), _ZERO)})
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact; use Scalar.gauss")
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def gauss(cls, re_: int | Fraction, im: int | Fraction = 0, qpow: int = 0) -> "Scalar":
        return cls({qpow: (Fraction(re_), Fraction(im))})

    @classmethod
    def qpow(cls, k: int) -> "Scalar":
        return cls({k: (_ONE, _ZERO)})

    # -- inspection --------------------------------------------------------
    def items(self) -> tuple[tuple[int, Gauss], ...]:
        return self._terms

    def coeff(self, k: int) -> Gauss:
        for e, c in self._terms:
            if e == k:
                return c
        return (_ZERO, _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_real(self) -> bool:
        return all(b == 0 for _, (_, b) in self._terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k, _ in self._terms)

    @property
    def real(self) -> Fraction:
        """Real part of a q-free scalar."""
        self._require_constant()
        return self.coeff(0)[0]

    @property
    def imag(self) -> Fraction:
        self._require_constant()
        return self.coeff(0)[1]

    def _require_constant(self) -> None:
        if not self.is_constant():
            raise ValueError(f"scalar {self} depends on q")

    def min_degree(self) -> int:
        return self._terms[0][0] if self._terms else 0

    def max_degree(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: Number) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for k, (a, b) in other._terms:
            a0, b0 = acc.get(k, (_ZERO, _ZERO))
            acc[k] = (a0 + a, b0 + b)
        return Scalar(acc)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({k: (-a, -b) for k, (a, b) in self._terms})

    def __sub__(self, other: Number) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if len(self._terms) == 1 and len(other._terms) == 1:
            (k1, (a1, b1)), (k2, (a2, b2)) = self._terms[0], other._terms[0]
            if b1 or b2:
                re_, im = a1 * a2 - b1 * b2, a1 * b2 + b1 * a2
                if not (re_ or im):
                    return ZERO
            else:
                re_, im = a1 * a2, _ZERO
            return Scalar._raw(((k1 + k2, (re_, im)),))
        if not self._terms or not other._terms:
            return ZERO
        acc: dict[int, Gauss] = {}
        for k1, (a1, b1) in self._terms:
            for k2, (a2, b2) in other._terms:
                if b1 or b2:
                    re_, im = a1 * a2 - b1 * b2, a1 * b2 + b1 * a2
                else:
                    re_, im = a1 * a2, _ZERO
                k = k1 + k2
                if k in acc:
                    a0, b0 = acc[k]
                    acc[k] = (a0 + re_, b0 + im if im else b0)
                else:
                    acc[k] = (re_, im)
        return Scalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            if len(self._terms) != 1:
                raise ArithmeticError("only monomials are invertible")
            return Scalar.coerce(1).divexact(self) ** (-n)
        out = Scalar.coerce(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, other: Number) -> "Scalar":
        """Exact quotient in the Laurent ring; raises ArithmeticError on a remainder."""
        other = Scalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return self
        lo_a, lo_b = self.min_degree(), other.min_degree()
        num = {k - lo_a: c for k, c in self._terms}
        den = [(k - lo_b, c) for k, c in other._terms]
        top_b, (cr, ci) = den[-1]
        norm = cr * cr + ci * ci
        inv = (cr / norm, -ci / norm)
        quot: dict[int, Gauss] = {}
        while num:
            top = max(num)
            if top < top_b:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            a, b = num.pop(top)
            qa, qb = a * inv[0] - b * inv[1], a * inv[1] + b * inv[0]
            shift = top - top_b
            quot[shift] = (qa, qb)
            for k, (da, db) in den[:-1]:
                pa, pb = qa * da - qb * db, qa * db + qb * da
                a0, b0 = num.get(k + shift, (_ZERO, _ZERO))
                r = (a0 - pa, b0 - pb)
                if r[0] == 0 and r[1] == 0:
                    num.pop(k + shift, None)
                else:
                    num[k + shift] = r
        return Scalar({k + lo_a - lo_b: c for k, c in quot.items()})

    def conjugate(self) -> "Scalar":
        return Scalar({k: (a, -b) for k, (a, b) in self._terms})

    def evaluate(self, q: int | Fraction) -> "Scalar":
        """Substitute an exact rational value for q."""
        q = Fraction(q)
        if q == 0 and self._terms and self._terms[0][0] < 0:
            raise ZeroDivisionError("negative power of q evaluated at q = 0")
        re_ = sum((a * q**k for k, (a, _) in self._terms), _ZERO)
        im = sum((b * q**k for k, (_, b) in self._terms), _ZERO)
        return Scalar.gauss(re_, im)

    # -- comparison --------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # -- text --------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (a, b) in self._terms:
            parts.append(_monomial_str(a, b, "q", k))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of ``str``: sums of ``gauss*q^k`` monomials."""
        from .ncalg import Algebra  # q-only expressions parse through the engine

        e = Algebra().parse(text)
        if e.is_zero():
            return cls()
        terms = e.terms
        if len(terms) != 1 or terms[0].jpow or terms[0].word:
            raise ValueError(f"not a scalar: {text!r}")
        return terms[0].coeff


def _monomial_str(a: Fraction, b: Fraction, sym: str, k: int) -> str:
    if k == 0:
        return format_gauss(a, b)
    power = sym if k == 1 else f"{sym}^{k}"
    if b == 0 and a == 1:
        return power
    if b == 0 and a == -1:
        return "-" + power
    return f"{format_gauss(a, b)}*{power}"


def scalar_sum(items: Iterable[Scalar]) -> Scalar:
    out = Scalar()
    for s in items:
        out = out + s
    return out


ZERO = Scalar()
ONE = Scalar.coerce(1)
I = Scalar.gauss(0, 1)
Q = Scalar.qpow(1)
