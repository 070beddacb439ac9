"""Scalar-source recursion ``d2 = (k - d0*d1) / (d1 - 2*d0)`` and parameter scans.

Orbits are simulated in binary64.  ``scan`` evaluates a whole grid at once with
numpy; it performs the same IEEE operations in the same order as ``iterate``,
so both paths agree bit for bit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, SingularStep

BOUNDED = "bounded"
ESCAPED = "escaped"
SINGULAR = "singular"

DEFAULT_ESCAPE = 1e6
DEFAULT_SINGULAR_EPS = 1e-12
DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class OrbitParams:
    delta0: float
    delta1: float
    k: float
    max_steps: int = DEFAULT_MAX_STEPS
    escape_threshold: float = DEFAULT_ESCAPE
    singular_eps: float = DEFAULT_SINGULAR_EPS

    def __post_init__(self):
        if self.max_steps < 1:
            raise DomainError("max_steps must be positive")
        if not self.escape_threshold > 0 or not self.singular_eps > 0:
            raise DomainError("escape_threshold and singular_eps must be positive")


@dataclass(frozen=True)
class OrbitResult:
    """``terminal_step`` is the sample index where the orbit stopped.

    For escaped orbits ``samples[terminal_step]`` is the offending value; for
    singular ones it is the index that could not be computed; for bounded
    ones it is the last index.
    """

    samples: tuple[float, ...]
    classification: str
    terminal_step: int
    max_abs: float


@dataclass(frozen=True)
class ScanCell:
    d0: float
    d1: float
    k: float
    classification: str
    terminal_step: int
    max_abs: float


def step(d0: float, d1: float, k: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> float:
    den = d1 - 2 * d0
    if abs(den) < singular_eps:
        raise SingularStep(d0, d1)
    return (k - d0 * d1) / den


def residual(d0: float, d1: float, d2: float, k: float) -> float:
    """``d2*(d1-d0) - (d2-d1)*d0 - k``, evaluated exactly on the given floats."""
    a, b, c, kk = (Fraction(x) for x in (d0, d1, d2, k))
    return float(c * (b - a) - (c - b) * a - kk)


def _mag(x: float) -> float:
    return abs(x) if math.isfinite(x) else math.inf


def iterate(p: OrbitParams) -> OrbitResult:
    samples = [float(p.delta0), float(p.delta1)]
    for idx, v in enumerate(samples):
        if not _mag(v) <= p.escape_threshold:
            return OrbitResult(tuple(samples[: idx + 1]), ESCAPED, idx, max(map(_mag, samples[: idx + 1])))
    max_abs = max(map(_mag, samples))
    d0, d1 = samples
    for _ in range(p.max_steps):
        try:
            d2 = step(d0, d1, p.k, p.singular_eps)
        except SingularStep:
            return OrbitResult(tuple(samples), SINGULAR, len(samples), max_abs)
        samples.append(d2)
        m = _mag(d2)
        max_abs = max(max_abs, m)
        if not m <= p.escape_threshold:
            return OrbitResult(tuple(samples), ESCAPED, len(samples) - 1, max_abs)
        d0, d1 = d1, d2
    return OrbitResult(tuple(samples), BOUNDED, len(samples) - 1, max_abs)


def parse_grid(spec: str) -> np.ndarray:
    """``"lo:hi:n"`` -> ``n`` evenly spaced points including both ends."""
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise DomainError(f"grid must look like lo:hi:n, got {spec!r}") from None
    if n < 2:
        raise DomainError("grid resolution must be at least 2")
    return np.linspace(lo, hi, n)


def scan(
    d0_values: Sequence[float],
    d1_values: Sequence[float],
    k: float,
    max_steps: int = DEFAULT_MAX_STEPS,
    escape_threshold: float = DEFAULT_ESCAPE,
    singular_eps: float = DEFAULT_SINGULAR_EPS,
) -> list[list[ScanCell]]:
    """Classify every initial pair; rows follow ``d0_values``, columns ``d1_values``."""
    OrbitParams(0.0, 0.0, k, max_steps, escape_threshold, singular_eps)  # validates limits
    g0 = np.asarray(d0_values, dtype=np.float64)
    g1 = np.asarray(d1_values, dtype=np.float64)
    if g0.size < 2 or g1.size < 2:
        raise DomainError("grid resolution must be at least 2 per axis")
    a, b = (x.ravel().copy() for x in np.meshgrid(g0, g1, indexing="ij"))
    n = a.size
    status = np.full(n, BOUNDED, dtype=object)
    term = np.full(n, max_steps + 1, dtype=np.int64)

    def mag(x):
        return np.where(np.isfinite(x), np.abs(x), np.inf)

    mx = np.maximum(mag(a), mag(b))
    alive = np.ones(n, dtype=bool)
    for idx, v in enumerate((a, b)):
        esc = alive & ~(mag(v) <= escape_threshold)
        status[esc], term[esc] = ESCAPED, idx
        if idx == 0:
            mx = np.where(esc, mag(a), mx)
        alive &= ~esc

    kk = float(k)
    with np.errstate(all="ignore"):
        for s in range(max_steps):
            if not alive.any():
                break
            den = b - 2 * a
            sing = alive & (np.abs(den) < singular_eps)
            status[sing], term[sing] = SINGULAR, s + 2
            alive &= ~sing
            c = (kk - a * b) / den
            cm = mag(c)
            mx = np.where(alive, np.maximum(mx, cm), mx)
            esc = alive & ~(cm <= escape_threshold)
            status[esc], term[esc] = ESCAPED, s + 2
            alive &= ~esc
            a = np.where(alive, b, a)
            b = np.where(alive, c, b)

    rows = []
    for i, x0 in enumerate(g0):
        row = []
        for j, x1 in enumerate(g1):
            t = i * g1.size + j
            row.append(ScanCell(float(x0), float(x1), kk, status[t], int(term[t]), float(mx[t])))
        rows.append(row)
    return rows


def format_real(x: float) -> str:
    """Shortest round-trip text; integral values print without a decimal point."""
    if math.isfinite(x) and x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return repr(float(x))


def orbit_csv(result: OrbitResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "delta"])
    for i, v in enumerate(result.samples):
        w.writerow([i, format_real(v)])
    return buf.getvalue()


def scan_csv(rows: Iterable[Iterable[ScanCell]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d0", "d1", "k", "classification", "terminal_step", "max_abs"])
    for row in rows:
        for c in row:
            w.writerow([format_real(c.d0), format_real(c.d1), format_real(c.k), c.classification,
                        c.terminal_step, format_real(c.max_abs)])
    return buf.getvalue()


# -- one- and two-variable scalar laws ------------------------------------------

def _exact_sqrt(k: Fraction) -> Fraction | None:
    n, dd = k.numerator, k.denominator
    rn, rd = math.isqrt(n), math.isqrt(dd)
    return Fraction(rn, rd) if rn * rn == n and rd * rd == dd else None


def scalar_increment_orbit(x0, k, signs: Iterable[int]) -> list:
    """``X_{t+1} = X_t + sign_t * sqrt(k)``: solutions of ``(X' - X)^2 = k``.

    Exact (Fractions) when ``k`` is a rational square, binary64 otherwise.
    """
    if k < 0:
        raise DomainError("k must be non-negative for a real scalar solution")
    root = _exact_sqrt(Fraction(k)) if isinstance(k, (int, Fraction)) else None
    if root is None:
        root = math.sqrt(k)
        xs = [float(x0)]
    else:
        xs = [Fraction(x0)]
    for s in signs:
        if s not in (1, -1):
            raise DomainError("signs must be +1 or -1")
        xs.append(xs[-1] + s * root)
    return xs


def scalar_pair_products(k) -> set:
    """Values of ``(A'-A)(B'-B)`` for commuting scalars with ``(A'-A)^2 = (B'-B)^2 = k``.

    A vanishing metric cross-term needs 0 in this set, which happens only
    for ``k == 0``.
    """
    root = _exact_sqrt(Fraction(k)) if isinstance(k, (int, Fraction)) else None
    if root is None:
        root = math.sqrt(k)
    return {sa * root * sb * root for sa in (1, -1) for sb in (1, -1)}
