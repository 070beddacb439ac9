import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doccalc import netamp as na
from doccalc.errors import DomainError, LimitError
from doccalc.scalar import I, ONE, ZERO, Scalar
from doccalc.suites import brute_force_path_table, penrose_corpus
from strategies import scalars


def naive_partition(net: na.Network, rule) -> Scalar:
    """Plain product over every coloring, no pruning or scheduling."""
    fixed = net.fixed_map
    free = [e for e in range(len(net.domains)) if e not in fixed]
    total = ZERO
    for combo in itertools.product(*(range(1, net.domains[e] + 1) for e in free)):
        colors = dict(fixed)
        colors.update(zip(free, combo))
        w = ONE
        for vi, v in enumerate(net.vertices):
            w = w * rule(vi, tuple(colors[e] for e in v))
        total = total + w
    return total


def matrix_power_oracle(w, m, a, b):
    n = len(w)
    w = [[Scalar.coerce(x) for x in row] for row in w]
    prod = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for _ in range(m + 1):
        prod = [[sum((prod[i][k] * w[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
    return prod[a][b]


@st.composite
def random_networks(draw):
    """Small networks: each edge joins two vertices or dangles from one."""
    nv = draw(st.integers(1, 4))
    ne = draw(st.integers(1, 6))
    domains = [draw(st.integers(1, 3)) for _ in range(ne)]
    incid: list[list[int]] = [[] for _ in range(nv)]
    for e in range(ne):
        ends = draw(st.lists(st.integers(0, nv - 1), min_size=1, max_size=2))
        for v in ends:
            incid[v].append(e)
    vertices = [v for v in incid if v]
    fixed = {}
    if draw(st.booleans()):
        e = draw(st.integers(0, ne - 1))
        fixed[e] = draw(st.integers(1, domains[e]))
    return na.Network.create(domains, vertices, fixed)


@st.composite
def random_rules(draw):
    table = {}
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)

    def rule(vertex, colors):
        key = (vertex, colors)
        if key not in table:
            table[key] = Scalar.gauss(rng.randint(-2, 2), rng.choice([0, 0, 1]))
        return table[key]

    return rule


# -- partition function ----------------------------------------------------------

def test_unit_weights_count_colorings():
    net = na.Network.create([3, 2, 4], [[0, 1], [1, 2], [0, 2]])
    amp = na.partition_function(net, lambda v, c: ONE)
    assert amp.value == 3 * 2 * 4
    assert amp.colorings_enumerated == 24


@settings(max_examples=150)
@given(random_networks(), random_rules())
def test_partition_matches_naive_sum(net, rule):
    assert na.partition_function(net, rule).value == naive_partition(net, rule)


@settings(max_examples=100)
@given(random_networks(), random_rules())
def test_measurement_reduction(net, rule):
    free = net.free_edges()
    if not free:
        return
    e = free[0]
    parts = [na.partition_function(net.with_fixed(e, c), rule).value for c in range(1, net.domains[e] + 1)]
    assert sum(parts, ZERO) == na.partition_function(net, rule).value


def test_trace_reports_nonzero_colorings():
    net = na.Network.create([3] * 3, [[2, 1, 0], [0, 1, 2]])
    seen = []
    amp = na.partition_function(net, na.penrose_rule, trace=lambda cols, w: seen.append((cols, w)))
    assert len(seen) == 6
    assert sum((w for _, w in seen), ZERO) == amp.value


def test_network_validation():
    with pytest.raises(DomainError):
        na.Network.create([3], [[0], [0], [0]])  # edge used three times
    with pytest.raises(DomainError):
        na.Network.create([3, 3], [[0]])  # edge 1 never used
    with pytest.raises(DomainError):
        na.Network.create([2], [[0, 0]], {0: 3})  # fixed colour out of range


# -- Penrose ------------------------------------------------------------------

def test_penrose_weight_examples():
    assert na.penrose_weight(1, 2, 3) == I
    assert na.penrose_weight(1, 3, 2) == -I
    assert na.penrose_weight(1, 1, 2) == 0
    with pytest.raises(DomainError):
        na.penrose_weight(0, 1, 2)


@pytest.mark.parametrize("name, expected", [("theta", 6), ("k4", 6), ("prism", 6), ("bridged", 0)])
def test_penrose_corpus(name, expected):
    net = penrose_corpus()[name]
    assert na.brute_force_edge_colorings(net) == expected
    assert na.penrose_count(net) == expected


def test_penrose_rejects_non_cubic():
    net = na.Network.create([3] * 2, [[0, 1], [0, 1]])
    with pytest.raises(DomainError):
        na.penrose_count(net)


def test_penrose_rejects_inconsistent_orientation():
    # reversing one rotation of the theta graph flips the sign
    net = na.Network.create([3] * 3, [[0, 1, 2], [0, 1, 2]])
    assert na.partition_function(net, na.penrose_rule).value == -6
    with pytest.raises(DomainError):
        na.penrose_count(net)


def test_brute_force_limit():
    net = na.Network.create([3] * 13, [[e] for e in range(13)])
    with pytest.raises(LimitError):
        na.brute_force_edge_colorings(net)


def test_relabeling_invariance():
    net = penrose_corpus()["prism"]
    rng = random.Random(3)
    ep = list(range(len(net.domains)))
    vp = list(range(len(net.vertices)))
    rng.shuffle(ep)
    rng.shuffle(vp)
    assert na.penrose_count(net.relabel(ep, vp)) == 6


# -- chains -------------------------------------------------------------------

def test_chain_examples():
    w = na.DIRAC2
    assert na.chain_amplitude(w, 0, 0, 1) == I
    assert na.chain_amplitude(w, 1, 0, 0) == 0
    assert na.chain_amplitude(w, 2, 0, 0) == -2


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(scalars(allow_q=False), min_size=n, max_size=n), min_size=n, max_size=n),
    st.integers(0, 5), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_chain_oracles(case):
    w, m, a, b = case
    dp = na.chain_amplitude(w, m, a, b)
    assert dp == na.chain_amplitude_paths(w, m, a, b)
    assert dp == matrix_power_oracle(w, m, a, b)


def test_chain_errors():
    with pytest.raises(DomainError):
        na.chain_amplitude([[1, 2]], 1, 0, 0)
    with pytest.raises(DomainError):
        na.chain_amplitude(na.DIRAC2, -1, 0, 0)
    with pytest.raises(DomainError):
        na.chain_amplitude(na.DIRAC2, 1, 0, 2)


# -- checkerboard -------------------------------------------------------------

def test_checkerboard_small_times():
    s = na.checkerboard_evolve(2, (0, "R"))
    assert s.amplitude("R", 0, 0) == 1 and len([k for k in s.psi if k[2] == 0]) == 1
    assert s.amplitude("R", 1, 1) == 1
    assert s.amplitude("L", -1, 1) == I
    assert len([k for k in s.psi if k[2] == 1]) == 2
    assert s.amplitude("R", 2, 2) == 1
    assert s.amplitude("L", 0, 2) == I
    assert s.amplitude("R", 0, 2) == -1


@pytest.mark.parametrize("init", [(0, "R"), (3, "L")])
def test_checkerboard_against_brute_force(init):
    t_max = 10
    s = na.checkerboard_evolve(t_max, init)
    for t in range(t_max + 1):
        for x in range(init[0] - t - 1, init[0] + t + 2):
            for d in "LR":
                assert s.amplitude(d, x, t) == na.brute_force_path_sum(t, init, (x, d))


def test_path_table_agrees_with_per_endpoint_sum():
    table = brute_force_path_table(6, (0, "R"))
    for (d, x), v in table.items():
        assert na.brute_force_path_sum(6, (0, "R"), (x, d)) == v


def test_light_cone_and_limits():
    assert na.brute_force_path_sum(3, (0, "R"), (5, "R")) == 0
    with pytest.raises(LimitError):
        na.brute_force_path_sum(21, (0, "R"), (0, "R"))
    with pytest.raises(DomainError):
        na.checkerboard_evolve(3, (0, "U"))


def test_dirac_recurrence():
    s = na.checkerboard_evolve(12, (0, "R"))
    for t in range(12):
        for x in range(-t - 1, t + 2):
            assert s.amplitude("R", x, t + 1) == s.amplitude("R", x - 1, t) + I * s.amplitude("L", x - 1, t)
            assert s.amplitude("L", x, t + 1) == s.amplitude("L", x + 1, t) + I * s.amplitude("R", x + 1, t)


# -- JSON ---------------------------------------------------------------------

def test_load_files(data_dir):
    net, rule, kind = na.load_network_file(data_dir / "theta.json")
    assert kind == "penrose" and na.penrose_count(net) == 6
    net, rule, kind = na.load_network_file(data_dir / "dirac_loop.json")
    assert kind == "table"
    # trace of the squared Dirac matrix [[1,i],[i,1]]^2 = [[0,2i],[2i,0]]
    assert na.partition_function(net, rule).value == 0


def test_table_rule_vertex_override():
    rule = na.table_rule([{"colors": [1], "value": "2"}, {"colors": [1], "value": "1/2 i", "vertex": 1}])
    assert rule(0, (1,)) == 2
    assert rule(1, (1,)) == Scalar.gauss(0, Fraction(1, 2))
    assert rule(0, (2,)) == 0


@pytest.mark.parametrize("doc", [
    {},
    {"edges": [{"id": "a"}], "vertices": [["a"]]},
    {"edges": [{"id": "a", "domain": 2}], "vertices": [["b"]]},
    {"edges": [{"id": "a", "domain": 2}, {"id": "a", "domain": 2}], "vertices": [["a", "a"]]},
    {"edges": [{"id": "a", "domain": 2}], "vertices": [["a", "a"]], "rule": "mystery"},
])
def test_load_rejects_malformed(doc):
    with pytest.raises(DomainError):
        na.load_network(doc)


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(DomainError):
        na.load_network_file(p)


def test_amplitude_json():
    amp = na.Amplitude(Scalar.gauss(Fraction(1, 2), Fraction(3, 4)), 9)
    assert amp.to_json() == {"value": "1/2+3/4 i", "colorings": 9}
    assert json.dumps(amp.to_json())
