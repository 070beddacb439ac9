"""Amplitudes of edge-colored networks.

``Z(N)`` sums, over every coloring of the free edges, the product of the
vertex weights.  Special cases: Penrose's ``i * epsilon_abc`` weight on
trivalent plane graphs, linear chains of intermediate states, and the
checkerboard path sum on a 1+1 dimensional light-cone lattice.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import DomainError, LimitError
from .scalar import I, ONE, ZERO, Scalar, format_gauss_spaced, parse_gauss

VertexRule = Callable[[int, tuple[int, ...]], Scalar]

BRUTE_FORCE_MAX_T = 20


@dataclass(frozen=True)
class Network:
    """Edges are numbered ``0..len(domains)-1``; colors run over ``1..domain``.

    Each vertex lists its incident edges in cyclic order.  An edge listed once
    is a dangling (boundary) edge; a loop appears twice in the same list.
    """

    domains: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]
    fixed: tuple[tuple[int, int], ...] = ()
    labels: tuple[Any, ...] | None = field(default=None, compare=False)

    @classmethod
    def create(cls, domains: Sequence[int], vertices: Iterable[Sequence[int]],
               fixed: Mapping[int, int] | None = None, labels=None) -> "Network":
        net = cls(tuple(domains), tuple(tuple(v) for v in vertices),
                  tuple(sorted((fixed or {}).items())), tuple(labels) if labels else None)
        net.validate()
        return net

    def validate(self) -> None:
        n = len(self.domains)
        for d in self.domains:
            if d < 1:
                raise DomainError("edge domains must be non-empty")
        seen = [0] * n
        for v in self.vertices:
            for e in v:
                if not 0 <= e < n:
                    raise DomainError(f"vertex refers to unknown edge {e}")
                seen[e] += 1
        for e, count in enumerate(seen):
            if count not in (1, 2):
                raise DomainError(f"edge {e} is incident {count} times; expected 1 or 2")
        for e, c in self.fixed:
            if not 0 <= e < n or not 1 <= c <= self.domains[e]:
                raise DomainError(f"fixed color {c} invalid for edge {e}")

    @property
    def fixed_map(self) -> dict[int, int]:
        return dict(self.fixed)

    def free_edges(self) -> list[int]:
        fixed = self.fixed_map
        order: list[int] = []
        for v in self.vertices:
            for e in v:
                if e not in fixed and e not in order:
                    order.append(e)
        return order

    def with_fixed(self, edge: int, color: int) -> "Network":
        fixed = self.fixed_map
        fixed[edge] = color
        return Network.create(self.domains, self.vertices, fixed, self.labels)

    def relabel(self, edge_perm: Sequence[int], vertex_perm: Sequence[int]) -> "Network":
        """Renumber edges (old ``e`` becomes ``edge_perm[e]``) and reorder vertices."""
        domains = [0] * len(self.domains)
        for e, d in enumerate(self.domains):
            domains[edge_perm[e]] = d
        vertices = [tuple(edge_perm[e] for e in self.vertices[i]) for i in vertex_perm]
        fixed = {edge_perm[e]: c for e, c in self.fixed}
        return Network.create(domains, vertices, fixed)


@dataclass(frozen=True)
class Amplitude:
    value: Scalar
    colorings_enumerated: int

    def to_json(self) -> dict:
        return {"value": format_gauss_spaced(self.value.real, self.value.imag),
                "colorings": self.colorings_enumerated}


def partition_function(net: Network, rule: VertexRule,
                       trace: Callable[[tuple[int, ...], Scalar], None] | None = None) -> Amplitude:
    """Exact sum over colorings extending ``net.fixed`` of the product of vertex weights.

    Depth-first over free edges; a vertex weight is evaluated as soon as all
    of its edges are colored, and zero partial products are pruned.
    ``trace`` receives every complete coloring with non-zero weight.
    """
    net.validate()
    free = net.free_edges()
    colors = [0] * len(net.domains)
    for e, c in net.fixed:
        colors[e] = c
    position = {e: t for t, e in enumerate(free)}

    ready: list[list[int]] = [[] for _ in free]
    base = ONE
    for vi, v in enumerate(net.vertices):
        pending = [position[e] for e in v if e in position]
        if pending:
            ready[max(pending)].append(vi)
        else:
            base = base * rule(vi, tuple(colors[e] for e in v))
    total_colorings = 1
    for e in free:
        total_colorings *= net.domains[e]
    if base.is_zero():
        return Amplitude(ZERO, total_colorings)

    def weigh(t: int, acc: Scalar) -> Scalar:
        if t == len(free):
            if trace is not None:
                trace(tuple(colors), acc)
            return acc
        e = free[t]
        out = ZERO
        for c in range(1, net.domains[e] + 1):
            colors[e] = c
            w = acc
            for vi in ready[t]:
                w = w * rule(vi, tuple(colors[x] for x in net.vertices[vi]))
                if w.is_zero():
                    break
            if not w.is_zero():
                out = out + weigh(t + 1, w)
        colors[e] = 0
        return out

    return Amplitude(weigh(0, base), total_colorings)


def penrose_weight(a: int, b: int, c: int) -> Scalar:
    """``i * epsilon_abc`` for colors in {1, 2, 3}."""
    for x in (a, b, c):
        if x not in (1, 2, 3):
            raise DomainError(f"Penrose colors are 1, 2, 3; got {x}")
    if len({a, b, c}) < 3:
        return ZERO
    return I if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -I


def penrose_rule(vertex: int, colors: tuple[int, ...]) -> Scalar:
    if len(colors) != 3:
        raise DomainError(f"vertex {vertex} has degree {len(colors)}; Penrose weights need 3")
    return penrose_weight(*colors)


def _require_cubic(net: Network) -> None:
    for vi, v in enumerate(net.vertices):
        if len(v) != 3:
            raise DomainError(f"vertex {vi} has degree {len(v)}; expected 3")
    for e, d in enumerate(net.domains):
        if d != 3:
            raise DomainError(f"edge {e} has {d} colors; expected 3")


def penrose_count(net: Network) -> int:
    """Penrose amplitude of a trivalent network drawn in the plane.

    Cyclic orders must all run the same way round (e.g. counterclockwise);
    then the amplitude is the number of proper 3-edge-colorings.
    """
    _require_cubic(net)
    z = partition_function(net, penrose_rule).value
    if not z.is_constant() or z.imag != 0 or z.real.denominator != 1 or z.real < 0:
        raise DomainError(f"Penrose amplitude {z} is not a count; are the cyclic orders planar?")
    return int(z.real)


def brute_force_edge_colorings(net: Network, ncolors: int = 3) -> int:
    """Count colorings where the edges at every vertex get pairwise distinct colors."""
    n = len(net.domains)
    if ncolors ** n > 3 ** 12:
        raise LimitError("too many edges for brute force")
    fixed = net.fixed_map
    count = 0
    for cols in itertools.product(range(1, ncolors + 1), repeat=n):
        if any(cols[e] != c for e, c in fixed.items()):
            continue
        if all(len({cols[e] for e in v}) == len(v) for v in net.vertices):
            count += 1
    return count


# -- chains of intermediate states ------------------------------------------------

DIRAC2 = ((ONE, I), (I, ONE))
STATE_NAMES = {"L": 0, "R": 1}


def _check_matrix(weights: Sequence[Sequence]) -> list[list[Scalar]]:
    n = len(weights)
    rows = [[Scalar.coerce(x) for x in row] for row in weights]
    if n == 0 or any(len(r) != n for r in rows):
        raise DomainError("weights must be a non-empty square matrix")
    return rows


def chain_amplitude(weights: Sequence[Sequence], m: int, a: int, b: int) -> Scalar:
    """``<a|b>`` through ``m`` internal nodes, summing over all intermediate states."""
    w = _check_matrix(weights)
    n = len(w)
    if m < 0:
        raise DomainError("m must be non-negative")
    if not (0 <= a < n and 0 <= b < n):
        raise DomainError(f"states must lie in 0..{n - 1}")
    vec = list(w[a])
    for _ in range(m):
        vec = [sum((vec[i] * w[i][j] for i in range(n)), ZERO) for j in range(n)]
    return vec[b]


def chain_path_sums(weights: Sequence[Sequence], m: int, a: int) -> list[Scalar]:
    """``<a|b>`` for every ``b`` by explicit enumeration of the ``n^m`` state sequences.

    Sequences are walked depth-first so each prefix product is formed once.
    """
    w = _check_matrix(weights)
    n = len(w)
    if m < 0:
        raise DomainError("m must be non-negative")
    if not 0 <= a < n:
        raise DomainError(f"states must lie in 0..{n - 1}")
    totals = [ZERO] * n

    def walk(state: int, depth: int, prefix: Scalar) -> None:
        if depth == m:
            for b in range(n):
                totals[b] = totals[b] + prefix * w[state][b]
            return
        for nxt in range(n):
            if not w[state][nxt].is_zero():
                walk(nxt, depth + 1, prefix * w[state][nxt])

    walk(a, 0, ONE)
    return totals


def chain_amplitude_paths(weights: Sequence[Sequence], m: int, a: int, b: int) -> Scalar:
    """Same amplitude as :func:`chain_amplitude`, summed path by path."""
    n = len(weights)
    if not 0 <= b < n:
        raise DomainError(f"states must lie in 0..{n - 1}")
    return chain_path_sums(weights, m, a)[b]


# -- checkerboard ---------------------------------------------------------------

STEP = {"L": -1, "R": 1}


@dataclass(frozen=True)
class CheckerboardState:
    """``psi[(direction, x, t)]``: amplitude to sit at ``x`` at time ``t`` having
    last moved in ``direction``.  Only non-zero entries are stored."""

    t_max: int
    init: tuple[int, str]
    psi: Mapping[tuple[str, int, int], Scalar]

    def amplitude(self, direction: str, x: int, t: int) -> Scalar:
        return self.psi.get((direction, x, t), ZERO)


def checkerboard_evolve(t_max: int, init: tuple[int, str]) -> CheckerboardState:
    """Propagate the path sum one tick at a time.

    Convention: a path carries the initial direction; a step taken in a
    direction different from the previous one picks up a factor ``i`` (the
    corner is charged on the step that leaves it).  So
    ``psi_R(x, t+1) = psi_R(x-1, t) + i psi_L(x-1, t)`` and
    ``psi_L(x, t+1) = psi_L(x+1, t) + i psi_R(x+1, t)``.
    """
    if t_max < 0:
        raise DomainError("t_max must be non-negative")
    x0, d0 = init
    if d0 not in STEP:
        raise DomainError(f"direction must be L or R, got {d0!r}")
    psi: dict[tuple[str, int, int], Scalar] = {(d0, x0, 0): ONE}
    layer = {(d0, x0): ONE}
    for t in range(1, t_max + 1):
        nxt: dict[tuple[str, int], Scalar] = {}
        for (d, x), amp in layer.items():
            for nd, dx in STEP.items():
                w = amp if nd == d else amp * I
                key = (nd, x + dx)
                nxt[key] = nxt[key] + w if key in nxt else w
        layer = {k: v for k, v in nxt.items() if not v.is_zero()}
        for (d, x), v in layer.items():
            psi[(d, x, t)] = v
    return CheckerboardState(t_max, (x0, d0), psi)


def brute_force_path_sum(t: int, init: tuple[int, str], final: tuple[int, str]) -> Scalar:
    """Sum of ``i^(direction changes)`` over all ``2^t`` step sequences joining the endpoints."""
    if t < 0:
        raise DomainError("t must be non-negative")
    if t > BRUTE_FORCE_MAX_T:
        raise LimitError(f"brute force limited to t <= {BRUTE_FORCE_MAX_T}")
    x0, d0 = init
    x1, d1 = final
    total = ZERO
    for seq in itertools.product("LR", repeat=t):
        if x0 + sum(STEP[s] for s in seq) != x1:
            continue
        last = seq[-1] if seq else d0
        if last != d1:
            continue
        corners = sum(1 for p, s in zip((d0,) + seq, seq) if p != s)
        total = total + I ** corners
    return total


# -- JSON ---------------------------------------------------------------------

def table_rule(entries: Iterable[Mapping[str, Any]]) -> VertexRule:
    """Weights from explicit ``{"colors": [...], "value": "...", "vertex": optional}`` rows.

    Vertex-specific rows take precedence; missing combinations weigh 0.
    """
    general: dict[tuple[int, ...], Scalar] = {}
    specific: dict[tuple[int, tuple[int, ...]], Scalar] = {}
    for row in entries:
        colors = tuple(int(c) for c in row["colors"])
        value = parse_gauss(str(row["value"]))
        if row.get("vertex") is None:
            general[colors] = value
        else:
            specific[(int(row["vertex"]), colors)] = value

    def rule(vertex: int, colors: tuple[int, ...]) -> Scalar:
        hit = specific.get((vertex, colors))
        return hit if hit is not None else general.get(colors, ZERO)

    return rule


def load_network(doc: Mapping[str, Any]) -> tuple[Network, VertexRule, str]:
    """Build a network and its vertex rule from the JSON document layout."""
    try:
        edges = doc["edges"]
        ids = [e["id"] for e in edges]
        index = {str(i): n for n, i in enumerate(ids)}
        if len(index) != len(ids):
            raise DomainError("duplicate edge ids")
        domains = [int(e["domain"]) for e in edges]
        vertices = [[index[str(e)] for e in v] for v in doc["vertices"]]
        fixed = {index[str(k)]: int(c) for k, c in (doc.get("fixed") or {}).items()}
        kind = doc.get("rule", "penrose")
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed network document: {exc}") from None
    net = Network.create(domains, vertices, fixed, ids)
    if kind == "penrose":
        return net, penrose_rule, kind
    if kind == "table":
        return net, table_rule(doc.get("table", [])), kind
    raise DomainError(f"unknown rule {kind!r}")


def load_network_file(path) -> tuple[Network, VertexRule, str]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON in {path}: {exc}") from None
    return load_network(doc)
