"""Finite-dimensional Hopf algebras given by structure constants.

When the squared antipode is conjugation by a grouplike element ``g``
(``S^2(x) = g^-1 x g``), the ordered derivative ``D(x) = [x, g]`` equals
``g (S^2(x) - x)``: conjugation by ``g`` is one tick of the clock.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .errors import DomainError
from .scalar import ONE, ZERO, Scalar, format_gauss, parse_gauss

MAX_DIM = 16

Element = tuple[Scalar, ...]
Tensor = dict[tuple[int, int], Scalar]


@dataclass(frozen=True)
class FiniteHopf:
    """Structure constants over Gaussian rationals.

    ``mult[i][j]`` is the coordinate vector of ``e_i e_j``; ``comult[i]`` lists
    ``(l, r, c)`` with ``Delta(e_i) = sum c e_l (x) e_r``; ``antipode[i]`` is
    the coordinate vector of ``S(e_i)``.
    """

    labels: tuple[str, ...]
    mult: tuple[tuple[Element, ...], ...]
    unit: Element
    comult: tuple[tuple[tuple[int, int, Scalar], ...], ...]
    counit: Element
    antipode: tuple[Element, ...]

    def __post_init__(self):
        n = len(self.labels)
        if not 1 <= n <= MAX_DIM:
            raise DomainError(f"dimension must lie in 1..{MAX_DIM}")
        shapes_ok = (
            len(self.mult) == n
            and all(len(row) == n and all(len(v) == n for v in row) for row in self.mult)
            and len(self.unit) == n
            and len(self.comult) == n
            and len(self.counit) == n
            and len(self.antipode) == n
            and all(len(v) == n for v in self.antipode)
            and all(0 <= l < n and 0 <= r < n for terms in self.comult for l, r, _ in terms)
        )
        if not shapes_ok:
            raise DomainError("structure constants do not match the basis dimension")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int | str) -> Element:
        if isinstance(i, str):
            i = self.index(i)
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown basis label {label!r}") from None

    def element(self, coords: Mapping[str, Any]) -> Element:
        v = [ZERO] * self.dim
        for lab, c in coords.items():
            v[self.index(lab)] = Scalar.coerce(c) if not isinstance(c, str) else parse_gauss(c)
        return tuple(v)

    def _check(self, *vs: Element) -> None:
        for v in vs:
            if len(v) != self.dim:
                raise DomainError(f"element has {len(v)} coordinates, expected {self.dim}")

    # -- structure maps ------------------------------------------------------
    def add(self, u: Element, v: Element) -> Element:
        self._check(u, v)
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c, u: Element) -> Element:
        c = Scalar.coerce(c)
        return tuple(c * a for a in u)

    def sub(self, u: Element, v: Element) -> Element:
        return self.add(u, self.scale(-1, v))

    def mul(self, u: Element, v: Element) -> Element:
        self._check(u, v)
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if not c.is_zero():
                        out[k] = out[k] + ab * c
        return tuple(out)

    def comul(self, u: Element) -> Tensor:
        self._check(u)
        out: Tensor = {}
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for l, r, c in self.comult[i]:
                out[(l, r)] = out.get((l, r), ZERO) + a * c
        return {k: v for k, v in out.items() if not v.is_zero()}

    def eps(self, u: Element) -> Scalar:
        self._check(u)
        return sum((a * c for a, c in zip(u, self.counit)), ZERO)

    def S(self, u: Element) -> Element:
        self._check(u)
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for k, c in enumerate(self.antipode[i]):
                out[k] = out[k] + a * c
        return tuple(out)

    def is_zero(self, u: Element) -> bool:
        return all(a.is_zero() for a in u)

    def format(self, u: Element) -> str:
        parts = []
        for lab, a in zip(self.labels, u):
            for k, (re_, im) in a.items():
                coeff = format_gauss(re_, im) + (f"*q^{k}" if k else "")
                parts.append(lab if coeff == "1" else f"-{lab}" if coeff == "-1" else f"{coeff}*{lab}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        def vec(v):
            return {self.labels[k]: str(c) for k, c in enumerate(v) if not c.is_zero()}

        return {
            "basis": list(self.labels),
            "unit": vec(self.unit),
            "counit": vec(self.counit),
            "mult": [[self.labels[i], self.labels[j], vec(self.mult[i][j])]
                     for i in range(self.dim) for j in range(self.dim) if not self.is_zero(self.mult[i][j])],
            "comult": [[self.labels[i], self.labels[l], self.labels[r], str(c)]
                       for i in range(self.dim) for l, r, c in self.comult[i]],
            "antipode": {self.labels[i]: vec(self.antipode[i]) for i in range(self.dim)},
        }


def from_json(doc: Mapping[str, Any]) -> FiniteHopf:
    """Inverse of :meth:`FiniteHopf.to_json`."""
    try:
        labels = tuple(doc["basis"])
        n = len(labels)
        idx = {lab: k for k, lab in enumerate(labels)}

        def vec(m: Mapping[str, str]) -> Element:
            v = [ZERO] * n
            for lab, c in m.items():
                v[idx[lab]] = Scalar.parse(str(c))
            return tuple(v)

        mult = [[tuple([ZERO] * n) for _ in range(n)] for _ in range(n)]
        for a, b, m in doc["mult"]:
            mult[idx[a]][idx[b]] = vec(m)
        comult: list[list[tuple[int, int, Scalar]]] = [[] for _ in range(n)]
        for a, l, r, c in doc["comult"]:
            comult[idx[a]].append((idx[l], idx[r], Scalar.parse(str(c))))
        antipode = [vec(doc["antipode"].get(lab, {})) for lab in labels]
        return FiniteHopf(
            labels,
            tuple(tuple(row) for row in mult),
            vec(doc["unit"]),
            tuple(tuple(t) for t in comult),
            vec(doc["counit"]),
            tuple(antipode),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed Hopf algebra document: {exc}") from None


def load(path) -> FiniteHopf:
    with open(path, encoding="utf-8") as fh:
        try:
            return from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON in {path}: {exc}") from None


# -- axioms --------------------------------------------------------------------

def _tensor_mul(h: FiniteHopf, s: Tensor, t: Tensor) -> Tensor:
    out: Tensor = {}
    for (l1, r1), a in s.items():
        for (l2, r2), b in t.items():
            left = h.mult[l1][l2]
            right = h.mult[r1][r2]
            for i, x in enumerate(left):
                if x.is_zero():
                    continue
                for j, y in enumerate(right):
                    if not y.is_zero():
                        out[(i, j)] = out.get((i, j), ZERO) + a * b * x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _apply_left(h: FiniteHopf, t: Tensor) -> dict[tuple[int, int, int], Scalar]:
    """(Delta (x) id) applied to a tensor, as a 3-tensor."""
    out: dict[tuple[int, int, int], Scalar] = {}
    for (l, r), c in t.items():
        for a, b, d in h.comult[l]:
            out[(a, b, r)] = out.get((a, b, r), ZERO) + c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


def _apply_right(h: FiniteHopf, t: Tensor) -> dict[tuple[int, int, int], Scalar]:
    out: dict[tuple[int, int, int], Scalar] = {}
    for (l, r), c in t.items():
        for a, b, d in h.comult[r]:
            out[(l, a, b)] = out.get((l, a, b), ZERO) + c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass(frozen=True)
class HopfReport:
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.checks)

    def as_dict(self) -> dict[str, bool]:
        return dict(self.checks)

    def failed(self) -> list[str]:
        return [k for k, v in self.checks if not v]


def verify_hopf(h: FiniteHopf) -> HopfReport:
    """Check every Hopf algebra axiom on basis elements (pairs, triples)."""
    n = h.dim
    e = [h.basis(i) for i in range(n)]
    one = h.unit
    checks: list[tuple[str, bool]] = []

    checks.append(("associativity", all(
        h.mul(h.mul(e[a], e[b]), e[c]) == h.mul(e[a], h.mul(e[b], e[c]))
        for a in range(n) for b in range(n) for c in range(n))))
    checks.append(("unit", all(h.mul(one, x) == x and h.mul(x, one) == x for x in e)))
    checks.append(("coassociativity", all(
        _apply_left(h, h.comul(x)) == _apply_right(h, h.comul(x)) for x in e)))

    def counit_left(x):
        acc = [ZERO] * n
        for (l, r), c in h.comul(x).items():
            acc[r] = acc[r] + h.counit[l] * c
        return tuple(acc)

    def counit_right(x):
        acc = [ZERO] * n
        for (l, r), c in h.comul(x).items():
            acc[l] = acc[l] + h.counit[r] * c
        return tuple(acc)

    checks.append(("counit", all(counit_left(x) == x and counit_right(x) == x for x in e)))
    checks.append(("comultiplication_multiplicative", all(
        h.comul(h.mul(e[a], e[b])) == _tensor_mul(h, h.comul(e[a]), h.comul(e[b]))
        for a in range(n) for b in range(n))))
    checks.append(("comultiplication_unital", h.comul(one) == _pure_tensor(h, one, one)))
    checks.append(("counit_multiplicative", all(
        h.eps(h.mul(e[a], e[b])) == h.eps(e[a]) * h.eps(e[b]) for a in range(n) for b in range(n))))
    checks.append(("counit_unital", h.eps(one) == ONE))

    def convolve(x, left: bool):
        acc = tuple([ZERO] * n)
        for (l, r), c in h.comul(x).items():
            term = h.mul(h.S(e[l]), e[r]) if left else h.mul(e[l], h.S(e[r]))
            acc = h.add(acc, h.scale(c, term))
        return acc

    checks.append(("antipode_left", all(convolve(x, True) == h.scale(h.eps(x), one) for x in e)))
    checks.append(("antipode_right", all(convolve(x, False) == h.scale(h.eps(x), one) for x in e)))
    checks.append(("antipode_antimorphism", all(
        h.S(h.mul(e[a], e[b])) == h.mul(h.S(e[b]), h.S(e[a])) for a in range(n) for b in range(n))))
    return HopfReport(tuple(checks))


def _pure_tensor(h: FiniteHopf, u: Element, v: Element) -> Tensor:
    out = {}
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            if not (a * b).is_zero():
                out[(i, j)] = a * b
    return out


# -- grouplikes and the clock ----------------------------------------------------

@dataclass(frozen=True)
class GroupLike:
    element: Element
    inverse: Element


def is_grouplike(h: FiniteHopf, g: Element) -> bool:
    """``Delta(g) = g (x) g``, ``eps(g) = 1`` and ``S(g)`` inverts ``g``."""
    h._check(g)
    if h.is_zero(g):
        return False
    if h.comul(g) != _pure_tensor(h, g, g) or h.eps(g) != ONE:
        return False
    s = h.S(g)
    return h.mul(s, g) == h.unit and h.mul(g, s) == h.unit


def grouplike(h: FiniteHopf, g: Element) -> GroupLike:
    if not is_grouplike(h, g):
        raise DomainError(f"{h.format(g)} is not grouplike")
    return GroupLike(g, h.S(g))


def antipode_square_is_conjugation(h: FiniteHopf, g: Element) -> bool:
    """True iff ``S(S(x)) = g^-1 x g`` on every basis element."""
    gl = grouplike(h, g)
    return all(
        h.S(h.S(x)) == h.mul(h.mul(gl.inverse, x), gl.element)
        for x in (h.basis(i) for i in range(h.dim))
    )


def doc_derivative(h: FiniteHopf, g: Element, x: Element) -> Element:
    """``[x, g] = x g - g x``; checked against ``g (S^2(x) - x)``."""
    if not antipode_square_is_conjugation(h, g):
        raise DomainError("S^2 is not conjugation by the given grouplike")
    out = h.sub(h.mul(x, g), h.mul(g, x))
    clock = h.mul(g, h.sub(h.S(h.S(x)), x))
    if out != clock:  # pragma: no cover - implied by the precondition
        raise AssertionError("commutator and antipode forms of D disagree")
    return out


# -- witnesses -------------------------------------------------------------------

def _build(labels, mult_fn, unit, comult, counit, antipode) -> FiniteHopf:
    n = len(labels)

    def vec(d: Mapping[int, int]) -> Element:
        return tuple(Scalar.coerce(d.get(k, 0)) for k in range(n))

    mult = tuple(tuple(vec(mult_fn(i, j)) for j in range(n)) for i in range(n))
    return FiniteHopf(
        tuple(labels),
        mult,
        vec(unit),
        tuple(tuple((l, r, Scalar.coerce(c)) for l, r, c in comult[i]) for i in range(n)),
        vec(counit),
        tuple(vec(antipode[i]) for i in range(n)),
    )


def sweedler() -> FiniteHopf:
    """Basis ``1, g, x, gx`` with ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``."""
    # basis index = 2*b + a for g^a x^b
    def mult(i, j):
        a1, b1 = i % 2, i // 2
        a2, b2 = j % 2, j // 2
        if b1 + b2 > 1:
            return {}
        sign = -1 if b1 and a2 else 1
        return {2 * (b1 + b2) + (a1 + a2) % 2: sign}

    labels = ["1", "g", "x", "gx"]
    comult = [
        [(0, 0, 1)],
        [(1, 1, 1)],
        [(2, 0, 1), (1, 2, 1)],
        [(3, 1, 1), (0, 3, 1)],
    ]
    antipode = [{0: 1}, {1: 1}, {3: -1}, {2: 1}]
    return _build(labels, mult, {0: 1}, comult, {0: 1, 1: 1}, antipode)


def cyclic_group_algebra(n: int) -> FiniteHopf:
    """Group algebra of ``Z/n`` with basis ``g^0, ..., g^(n-1)``."""
    if not 1 <= n <= MAX_DIM:
        raise DomainError(f"n must lie in 1..{MAX_DIM}")
    labels = ["1"] + [f"g^{k}" for k in range(1, n)]
    return _build(
        labels,
        lambda i, j: {(i + j) % n: 1},
        {0: 1},
        [[(k, k, 1)] for k in range(n)],
        {k: 1 for k in range(n)},
        [{(-k) % n: 1} for k in range(n)],
    )


def corrupt_mult(h: FiniteHopf, i: int, j: int, value: Sequence) -> FiniteHopf:
    """Copy of ``h`` with one product ``e_i e_j`` replaced (negative controls)."""
    mult = [list(row) for row in h.mult]
    mult[i][j] = tuple(Scalar.coerce(v) for v in value)
    return FiniteHopf(h.labels, tuple(tuple(r) for r in mult), h.unit, h.comult, h.counit, h.antipode)
