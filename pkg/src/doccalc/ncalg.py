"""Noncommutative expression engine for the discrete ordered calculus.

Expressions live in a ring generated by time-shifted variables ``X, X', X'', ...``
and a clock symbol ``J`` obeying ``Z J = J Z'``.  Every :class:`Expr` is kept in
a canonical normal form: all ``J`` factors are pushed to the left and the
remaining word is the lexicographically least representative of its class
under the declared commutation relations.

Example::

    >>> alg = Algebra.build()
    >>> X = alg.var("X")
    >>> print(commutator(X, D(X)))
    J^1*X*X - 2*J^1*X'*X + J^1*X'*X'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .errors import DomainError
from .scalar import ONE, Scalar, _monomial_str, format_gauss


class Var(NamedTuple):
    """A time-shifted variable.  ``index == 0`` means the family is not indexed."""

    family: str
    index: int = 0
    shift: int = 0

    def __str__(self) -> str:
        idx = f"[{self.index}]" if self.index else ""
        return f"{self.family}{chr(39) * self.shift}{idx}"


class _JAtom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "J"

    def __reduce__(self):
        return (_JAtom, ())


J_ATOM = _JAtom()
Atom = Union[Var, _JAtom]
Word = tuple[Var, ...]


@dataclass(frozen=True)
class NormalTerm:
    coeff: Scalar
    jpow: int
    word: Word

    def key(self) -> tuple:
        return _term_key((self.jpow, self.word))


def _term_key(k: tuple[int, Word]) -> tuple:
    jpow, word = k
    return (jpow, len(word), word)


@dataclass(frozen=True)
class Algebra:
    """Commutation table.

    ``relations`` holds ``(f1, f2, w)`` with ``f1 <= f2`` meaning that an atom of
    family ``f2`` followed by an atom of family ``f1`` rewrites as
    ``q^w`` times the swapped pair.  For ``f1 == f2`` the relation applies to
    members with distinct indices, the higher index playing the role of ``f2``.
    Relations hold between all shifted copies.  Families in ``scalars`` commute
    with every atom of every scalar family; ``constants`` are shift-fixed
    scalar families.
    """

    scalars: frozenset = frozenset()
    constants: frozenset = frozenset()
    relations: tuple = ()
    indexed: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def build(
        cls,
        *,
        scalars: Iterable[str] = (),
        constants: Iterable[str] = (),
        commuting: Iterable[tuple[str, str]] = (),
        qcommuting: Iterable[tuple[str, str, int]] = (),
        indexed: dict[str, int] | None = None,
    ) -> "Algebra":
        """Declare families and relations.

        ``qcommuting`` entries ``(a, b, w)`` read ``b*a -> q^w * a*b``.
        ``indexed`` maps a family name to its number of members (indices
        ``1..n``).
        """
        constants = frozenset(constants)
        rel: dict[tuple[str, str], int] = {}
        entries = [(a, b, 0) for a, b in commuting] + list(qcommuting)
        for a, b, w in entries:
            key, w = ((a, b), w) if a <= b else ((b, a), -w)
            if key in rel and rel[key] != w:
                raise DomainError(f"conflicting relations for families {key}")
            rel[key] = w
        return cls(
            scalars=frozenset(scalars) | constants,
            constants=constants,
            relations=tuple(sorted((a, b, w) for (a, b), w in rel.items())),
            indexed=tuple(sorted((indexed or {}).items())),
        )

    @property
    def _rel(self) -> dict[tuple[str, str], int]:
        rel = self._cache.get("rel")
        if rel is None:
            rel = self._cache["rel"] = {(a, b): w for a, b, w in self.relations}
        return rel

    def family_size(self, family: str) -> int:
        for name, n in self.indexed:
            if name == family:
                return n
        raise DomainError(f"family {family!r} is not declared as indexed")

    # -- constructors ------------------------------------------------------
    def var(self, family: str, index: int = 0, shift: int = 0) -> "Expr":
        if shift < 0:
            raise DomainError("shifts are non-negative")
        if family in self.constants:
            shift = 0
        return Expr(self, {(0, (Var(family, index, shift),)): ONE})

    @property
    def J(self) -> "Expr":
        return Expr(self, {(1, ()): ONE})

    def const(self, c: int | Fraction | Scalar) -> "Expr":
        return Expr(self, {(0, ()): Scalar.coerce(c)})

    def zero(self) -> "Expr":
        return Expr(self, {})

    def parse(self, text: str) -> "Expr":
        return _Parser(self, text).parse()

    # -- rewriting ---------------------------------------------------------
    def shift_atom(self, v: Var, n: int = 1) -> Var:
        if v.family in self.constants:
            return v
        return Var(v.family, v.index, v.shift + n)

    def exchange(self, y: Var, x: Var) -> int | None:
        """Exponent ``e`` with ``y*x = q^e * x*y``, or None if the pair is free."""
        if y == x:
            return 0
        if y.family in self.scalars and x.family in self.scalars:
            return 0
        if y.family == x.family:
            if y.index == x.index:
                return None
            w = self._rel.get((y.family, y.family))
            if w is None:
                return None
            return w if y.index > x.index else -w
        if y.family > x.family:
            w = self._rel.get((x.family, y.family))
            return w
        w = self._rel.get((y.family, x.family))
        return None if w is None else -w

    def normal_word(self, word: Word) -> tuple[int, Word]:
        """Lexicographically least equivalent word and the q-exponent picked up."""
        cache = self._cache.setdefault("words", {})
        hit = cache.get(word)
        if hit is not None:
            return hit
        rest = list(word)
        out: list[Var] = []
        qexp = 0
        while rest:
            best, best_e = 0, 0
            for k in range(1, len(rest)):
                x = rest[k]
                if x >= rest[best]:
                    continue
                acc = 0
                for y in rest[:k]:
                    e = self.exchange(y, x)
                    if e is None:
                        break
                    acc += e
                else:
                    best, best_e = k, acc
            out.append(rest.pop(best))
            qexp += best_e
        result = (qexp, tuple(out))
        cache[word] = result
        return result


class Expr:
    """Canonical sum of ``coeff * J^jpow * word`` terms over one :class:`Algebra`."""

    __slots__ = ("alg", "_terms", "_hash")

    def __init__(self, alg: Algebra, terms: dict[tuple[int, Word], Scalar]):
        self.alg = alg
        self._terms = tuple(
            sorted(((k, c) for k, c in terms.items() if not c.is_zero()), key=lambda kc: _term_key(kc[0]))
        )
        self._hash = None

    @classmethod
    def _collect(cls, alg: Algebra, raw: Iterable[tuple[Scalar, int, Word]]) -> "Expr":
        acc: dict[tuple[int, Word], Scalar] = {}
        for c, jpow, word in raw:
            e, word = alg.normal_word(word)
            if e:
                c = c * Scalar.qpow(e)
            key = (jpow, word)
            acc[key] = acc[key] + c if key in acc else c
        return cls(alg, acc)

    @property
    def terms(self) -> list[NormalTerm]:
        return [NormalTerm(c, j, w) for (j, w), c in self._terms]

    def coefficient(self, jpow: int, word: Iterable[Var]) -> Scalar:
        key = (jpow, tuple(word))
        for k, c in self._terms:
            if k == key:
                return c
        return Scalar()

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> "Expr":
        if isinstance(other, Expr):
            if other.alg != self.alg:
                raise DomainError("expressions belong to different algebras")
            return other
        return self.alg.const(Scalar.coerce(other))

    def __add__(self, other) -> "Expr":
        other = self._coerce(other)
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc[k] + c if k in acc else c
        return Expr(self.alg, acc)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr(self.alg, {k: -c for k, c in self._terms})

    def __sub__(self, other) -> "Expr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Expr":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            try:
                s = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
            return Expr(self.alg, {k: c * s for k, c in self._terms})
        other = self._coerce(other)
        alg = self.alg
        raw = []
        for (j1, w1), c1 in self._terms:
            for (j2, w2), c2 in other._terms:
                moved = tuple(alg.shift_atom(v, j2) for v in w1) if j2 else w1
                raw.append((c1 * c2, j1 + j2, moved + w2))
        return Expr._collect(alg, raw)

    def __rmul__(self, other) -> "Expr":
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Expr(self.alg, {k: s * c for k, c in self._terms})

    def __pow__(self, n: int) -> "Expr":
        if n < 0:
            raise DomainError("J and variables have no inverses in this ring")
        out = self.alg.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Expr):
            return self.alg == other.alg and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self._terms == self._coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __str__(self) -> str:
        pieces: list[str] = []
        for (jpow, word), c in self._terms:
            tail = ([f"J^{jpow}"] if jpow else []) + [str(v) for v in word]
            for k, (a, b) in c.items():
                neg = (b == 0 and a < 0) or (a == 0 and b < 0)
                if neg:
                    a, b = -a, -b
                head = _monomial_str(a, b, "q", k) if k else format_gauss(a, b)
                if tail and head == "1":
                    text = "*".join(tail)
                else:
                    text = "*".join([head] + tail)
                pieces.append(("-" if neg else "+", text))
        if not pieces:
            return "0"
        sign, text = pieces[0]
        out = ("-" if sign == "-" else "") + text
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Expr({str(self)!r})"


# -- calculus ------------------------------------------------------------------

def shift(e: Expr, n: int = 1) -> Expr:
    """Advance every variable ``n`` ticks; ``J`` and coefficients are fixed."""
    alg = e.alg
    raw = [(t.coeff, t.jpow, tuple(alg.shift_atom(v, n) for v in t.word)) for t in e.terms]
    return Expr._collect(alg, raw)


def d(e: Expr) -> Expr:
    """Classical finite difference ``e' - e``."""
    return shift(e) - e


def commutator(a: Expr, b: Expr) -> Expr:
    return a * b - b * a


def D(e: Expr) -> Expr:
    """Ordered derivative ``[e, J]``, equal to ``J (e' - e)``."""
    return commutator(e, e.alg.J)


def add(a: Expr, b: Expr) -> Expr:
    return a + b


def mul(a: Expr, b: Expr) -> Expr:
    return a * b


def jacobi_defect(a: Expr, b: Expr, c: Expr) -> Expr:
    return commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))


def leibniz_defect_d(a: Expr, b: Expr) -> Expr:
    return d(a * b) - shift(a) * d(b) - d(a) * b


def leibniz_defect_D(a: Expr, b: Expr) -> Expr:
    return D(a * b) - a * D(b) - D(a) * b


def bracket_leibniz_defect(a: Expr, b: Expr) -> Expr:
    """``D([a,b]) - [Da, b] - [a, Db]``."""
    return D(commutator(a, b)) - commutator(D(a), b) - commutator(a, D(b))


def metric(alg: Algebra, i: int, j: int, family: str) -> Expr:
    """``[X_i, D X_j]`` for the indexed family ``family``."""
    n = alg.family_size(family)
    for idx in (i, j):
        if not 1 <= idx <= n:
            raise DomainError(f"index {idx} out of range 1..{n} for family {family!r}")
    return commutator(alg.var(family, i), D(alg.var(family, j)))


def normalize(tree, alg: Algebra) -> Expr:
    """Normalize a builder tree.

    Leaves are :class:`Expr`, :class:`Var`, ``J_ATOM``, numbers or
    :class:`Scalar`; inner nodes are tuples ``("+", *children)`` or
    ``("*", *children)``.
    """
    if isinstance(tree, Expr):
        if tree.alg != alg:
            raise DomainError("expression belongs to a different algebra")
        return Expr._collect(alg, [(t.coeff, t.jpow, t.word) for t in tree.terms])
    if isinstance(tree, Var):
        return alg.var(tree.family, tree.index, tree.shift)
    if tree is J_ATOM:
        return alg.J
    if isinstance(tree, tuple):
        op, *children = tree
        parts = [normalize(ch, alg) for ch in children]
        if op == "+":
            out = alg.zero()
            for p in parts:
                out = out + p
            return out
        if op == "*":
            out = alg.const(1)
            for p in parts:
                out = out * p
            return out
        raise DomainError(f"unknown builder node {op!r}")
    return alg.const(Scalar.coerce(tree))


# -- text ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?P<primes>'*)(?:\[(?P<idx>\d+)\])?"
    r"|(?P<op>[-+*^()]))"
)


class _Parser:
    def __init__(self, alg: Algebra, text: str):
        self.alg = alg
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, object]]:
        out = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"unexpected character at {pos} in {text!r}")
            pos = m.end()
            if m.group("num"):
                out.append(("num", m.group("num")))
            elif m.group("name"):
                out.append(("name", (m.group("name"), len(m.group("primes")), m.group("idx"))))
            else:
                out.append(("op", m.group("op")))
        return out

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self, kind=None, value=None):
        tok = self._peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error near token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        if not self.tokens:
            raise ValueError("empty expression")
        e = self._expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return e

    def _expr(self) -> Expr:
        sign = 1
        if self._peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self._take()[1] == "-" else 1
        out = self._term() * sign
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            t = self._term()
            out = out + t if op == "+" else out - t
        return out

    def _term(self) -> Expr:
        out = self._power()
        while self._peek() == ("op", "*"):
            self._take()
            out = out * self._power()
        return out

    def _power(self) -> Expr:
        base = self._atom()
        if self._peek() != ("op", "^"):
            return base
        self._take()
        neg = False
        if self._peek() == ("op", "-"):
            self._take()
            neg = True
        n = int(self._take("num")[1])
        if not neg:
            return base ** n
        terms = base.terms
        if len(terms) != 1 or terms[0].jpow or terms[0].word:
            raise ValueError("negative powers apply to scalars only")
        return self.alg.const(terms[0].coeff ** (-n))

    def _atom(self) -> Expr:
        kind, val = self._take()
        alg = self.alg
        if kind == "num":
            if val.endswith("i"):
                return alg.const(Scalar.gauss(0, Fraction(val[:-1])))
            return alg.const(Fraction(val))
        if kind == "name":
            name, primes, idx = val
            if name in ("i", "q", "J") and not primes and idx is None:
                if name == "i":
                    return alg.const(Scalar.gauss(0, 1))
                if name == "q":
                    return alg.const(Scalar.qpow(1))
                return alg.J
            return alg.var(name, int(idx) if idx else 0, primes)
        if val == "(":
            e = self._expr()
            self._take("op", ")")
            return e
        raise ValueError(f"unexpected {val!r} in {self.text!r}")
