import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgng.network import GngNetwork


def chain(n=3, dim=2):
    net = GngNetwork(dim)
    ids = [net.add_unit(np.full(dim, float(i))) for i in range(n)]
    for a, b in zip(ids, ids[1:]):
        net.connect_or_refresh(a, b)
    return net, ids


def check_invariants(net):
    ids = set(net.ids)
    seen = set()
    for e in net.edges():
        assert e.u != e.v
        assert e.u in ids and e.v in ids
        assert (e.u, e.v) not in seen
        seen.add((e.u, e.v))
        assert e.age >= 0
    assert np.all(net.errors >= 0)
    assert net.weights.shape == (net.n_units, net.dimension)
    assert list(net.ids) == sorted(net.ids)


def test_from_points():
    net = GngNetwork.from_points([0, 0], [1, 1])
    assert net.n_units == 2 and net.n_edges == 1
    (e,) = net.edges()
    assert e.age == 0
    assert np.all(net.errors == 0)


def test_from_points_degenerate_and_mismatch():
    net = GngNetwork.from_points([0, 0], [0, 0])
    np.testing.assert_array_equal(net.weights[0], net.weights[1])
    with pytest.raises(ValueError):
        GngNetwork.from_points([0, 0], [0, 0, 0])


def test_connect_or_refresh():
    net, (a, b, c) = chain()
    for _ in range(37):
        net.age_incident_edges(a)
    assert net.edge_age(a, b) == 37
    net.connect_or_refresh(b, a)
    assert net.edge_age(a, b) == 0
    net.connect_or_refresh(a, c)
    assert net.has_edge(c, a) and net.edge_age(a, c) == 0
    with pytest.raises(ValueError):
        net.connect_or_refresh(a, a)
    with pytest.raises(KeyError):
        net.connect_or_refresh(a, 99)


def test_age_incident_edges():
    net = GngNetwork(1)
    s, a, b, c, d = (net.add_unit([float(i)]) for i in range(5))
    for v, age in ((a, 0), (b, 5), (c, 9)):
        net.connect_or_refresh(s, v)
        net._edges[(s, v)] = age
    net.connect_or_refresh(a, d)
    net._edges[(a, d)] = 2
    net.age_incident_edges(s)
    assert [net.edge_age(s, v) for v in (a, b, c)] == [1, 6, 10]
    assert net.edge_age(a, d) == 2
    lonely = net.add_unit([9.0])
    net.age_incident_edges(lonely)
    with pytest.raises(KeyError):
        net.age_incident_edges(1234)


def test_prune_strictly_exceeds():
    net = GngNetwork(1)
    a, b, c = (net.add_unit([float(i)]) for i in range(3))
    net.connect_or_refresh(a, b)
    net.connect_or_refresh(a, c)
    net.connect_or_refresh(b, c)
    net._edges[(a, b)] = 50
    net._edges[(a, c)] = 51
    assert net.prune(50) == (1, 0)
    assert net.has_edge(a, b) and not net.has_edge(a, c)


def test_prune_removes_isolated():
    net, (a, b, c) = chain()
    net._edges[(b, c)] = 60
    assert net.prune(50) == (1, 1)
    assert c not in net and net.ids == (a, b)
    assert net.prune(50) == (0, 0)


def test_prune_around_matches_full_prune():
    net, ids = chain(6)
    for _ in range(60):
        net.age_incident_edges(ids[2])
    other = net.copy()
    assert net.prune(50, around=ids[2]) == other.prune(50)
    assert net.to_dict() == other.to_dict()


def test_insert_between_worst():
    net = GngNetwork.from_points([0, 0], [2, 2])
    q, f = net.ids
    net.errors[:] = [8.0, 4.0]
    r = net.insert_between_worst(0.5)
    np.testing.assert_array_equal(net.weight(r), [1, 1])
    assert (net.error(q), net.error(f), net.error(r)) == (4.0, 2.0, 4.0)
    assert not net.has_edge(q, f)
    assert net.edge_age(r, q) == 0 and net.edge_age(r, f) == 0


def test_insert_tie_breaks_by_smallest_id():
    net = GngNetwork(1)
    a, b, c, d = (net.add_unit([float(i)]) for i in range(4))
    net.connect_or_refresh(a, c)
    net.connect_or_refresh(b, d)
    net.connect_or_refresh(b, c)
    net.errors[:] = [5.0, 5.0, 1.0, 1.0]
    r = net.insert_between_worst(0.5)
    # q = a (smallest id among the max-error units); its only neighbour is c
    assert set(net.neighbors(r)) == {a, c}
    net2 = GngNetwork(1)
    a, b, c = (net2.add_unit([float(i)]) for i in range(3))
    net2.connect_or_refresh(a, b)
    net2.connect_or_refresh(a, c)
    net2.errors[:] = [9.0, 3.0, 3.0]
    r = net2.insert_between_worst(0.5)
    assert set(net2.neighbors(r)) == {a, b}


def test_insert_without_neighbours_is_skipped():
    net = GngNetwork(1)
    net.add_unit([0.0], error=3.0)
    net.add_unit([1.0])
    assert net.insert_between_worst(0.5) is None
    assert net.n_units == 2


def test_decay_errors():
    net = GngNetwork.from_points([0], [1])
    net.errors[:] = [1.0, 2.0]
    net.decay_errors(0.995)
    np.testing.assert_allclose(net.errors, [0.995, 1.99])
    net.decay_errors(1.0)
    np.testing.assert_allclose(net.errors, [0.995, 1.99])
    GngNetwork(3).decay_errors(0.5)


def test_ids_not_reused():
    net, (a, b, c) = chain()
    net.remove_unit(c)
    d = net.add_unit([5.0, 5.0])
    assert d > c


def test_dict_round_trip():
    net, ids = chain(4)
    net.errors[:] = [0.5, 1.5, 0.0, 2.25]
    net.age_incident_edges(ids[1])
    net.remove_unit(ids[0])
    back = GngNetwork.from_dict(net.to_dict())
    assert back.to_dict() == net.to_dict()
    assert net.to_edge_list().splitlines()[0] == f"{ids[1]} {ids[2]} 1"


ops = st.lists(
    st.tuples(st.sampled_from(["add", "connect", "age", "prune", "insert", "decay", "remove"]),
              st.integers(0, 30), st.integers(0, 30)),
    max_size=80,
)


@settings(max_examples=150, deadline=None)
@given(ops)
def test_random_operation_sequences_keep_invariants(seq):
    net = GngNetwork.from_points([0.0, 0.0], [1.0, 0.0])
    max_id_seen = max(net.ids)
    for op, i, j in seq:
        ids = net.ids
        if op == "add":
            uid = net.add_unit([float(i), float(j)], error=float(i))
            assert uid > max_id_seen
            max_id_seen = uid
        elif op == "connect" and len(ids) >= 2:
            a, b = ids[i % len(ids)], ids[j % len(ids)]
            if a != b:
                net.connect_or_refresh(a, b)
                assert net.edge_age(a, b) == 0
        elif op == "age" and ids:
            net.age_incident_edges(ids[i % len(ids)])
        elif op == "prune":
            before = {u: net.degree(u) for u in net.ids}
            net.prune(j % 5)
            assert all(e.age <= j % 5 for e in net.edges())
            for u in net.ids:
                assert net.degree(u) >= 1 or before[u] == 0
        elif op == "insert" and ids:
            n, m = net.n_units, net.n_edges
            r = net.insert_between_worst(0.5)
            if r is not None:
                assert (net.n_units, net.n_edges) == (n + 1, m + 1)
                max_id_seen = r
        elif op == "decay":
            net.decay_errors(0.9)
        elif op == "remove" and len(ids) > 2:
            net.remove_unit(ids[i % len(ids)])
        check_invariants(net)
