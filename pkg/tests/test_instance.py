import json
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from src.errors import AsymmetricMatrixError, DimensionMismatchError, InstanceError, ZeroCapacityFleetError
from src.model.instance import Instance, euclidean_nint, instance_from_matrix, tightness
from src.utils import load_instance, save_instance_json

LINE = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_from_matrix(en13k4):
    copy = instance_from_matrix(en13k4.dist, en13k4.demand_list[1:], 6000, 4, name="E-n13-k4")
    assert copy == en13k4
    assert copy.n == 12
    assert copy.demand_list[0] == 0
    assert list(copy.customers) == list(range(1, 13))


def test_asymmetric_matrix_is_rejected():
    with pytest.raises(AsymmetricMatrixError):
        instance_from_matrix([[0, 1], [2, 0]], [1], 5, 1)


@pytest.mark.parametrize(
    "dist, demands",
    [
        (LINE, [1]),
        ([[0, 1, 2], [1, 0, 1]], [1, 1]),
    ],
)
def test_dimension_mismatch(dist, demands):
    with pytest.raises(DimensionMismatchError):
        instance_from_matrix(dist, demands, 5, 1)


@pytest.mark.parametrize(
    "dist, demands, capacity, vehicles",
    [
        ([[1, 1, 2], [1, 0, 1], [2, 1, 0]], [1, 1], 5, 1),
        ([[0, -1, 2], [-1, 0, 1], [2, 1, 0]], [1, 1], 5, 1),
        (LINE, [1, 6], 5, 1),
        (LINE, [1, -1], 5, 1),
        (LINE, [1, 1], 5, 0),
    ],
)
def test_invalid_instances(dist, demands, capacity, vehicles):
    with pytest.raises(InstanceError):
        instance_from_matrix(dist, demands, capacity, vehicles)


def test_instance_arrays_are_read_only(cws_demo):
    with pytest.raises(ValueError):
        cws_demo.dist[0, 1] = 99


def test_tightness(nni_demo):
    assert tightness(nni_demo) == Fraction(11, 12)
    assert tightness(instance_from_matrix(LINE, [0, 0], 5, 2)) == 0
    assert tightness(instance_from_matrix(LINE, [5, 5], 5, 2)) == 1
    with pytest.raises(ZeroCapacityFleetError):
        tightness(instance_from_matrix(LINE, [0, 0], 0, 2))


def test_float_tightness():
    instance = instance_from_matrix(LINE, [1.5, 1.5], 2.0, 2)
    assert tightness(instance) == pytest.approx(0.75)


def test_euclidean_nint():
    dist = euclidean_nint(np.array([[0, 0], [3, 4], [1, 1]]))
    assert dist[0, 1] == 5
    assert dist[0, 2] == 1
    assert dist.dtype == np.int64


def test_graph_round_trip(cws_demo):
    g = cws_demo.to_graph()
    assert g.number_of_nodes() == 9
    assert g.number_of_edges() == 36
    assert g[2][1]["distance"] == 4
    assert g.nodes[5]["demand"] == 5
    assert Instance.from_graph(g) == cws_demo


def test_incomplete_graph_is_rejected(cws_demo):
    g = cws_demo.to_graph()
    g.remove_edge(1, 2)
    with pytest.raises(InstanceError):
        Instance.from_graph(g)


def test_graph_nodes_must_start_at_the_depot():
    g = nx.Graph(capacity=5, vehicles=1)
    g.add_edge(1, 2, distance=3)
    with pytest.raises(InstanceError):
        Instance.from_graph(g)


def test_json_round_trip(tmp_path, en13k4):
    path = tmp_path / "e13.json"
    save_instance_json(en13k4, path)
    assert load_instance(path) == en13k4


def test_with_vehicles(cws_demo):
    assert cws_demo.with_vehicles(5).vehicles == 5
    assert cws_demo.vehicles == 3


def write_without(tmp_path, data_dir, key):
    data = json.loads((data_dir / "small" / "cws-n8-k3.json").read_text())
    del data[key]
    path = tmp_path / f"no-{key}.json"
    path.write_text(json.dumps(data))
    return path


def test_json_fleet_size_can_come_from_the_caller(tmp_path, data_dir):
    path = write_without(tmp_path, data_dir, "vehicles")
    with pytest.raises(InstanceError):
        load_instance(path)
    assert load_instance(path, vehicles=4).vehicles == 4


@pytest.mark.parametrize("key", ["capacity", "nodes", "edges"])
def test_json_missing_keys(tmp_path, data_dir, key):
    with pytest.raises(InstanceError, match=key):
        load_instance(write_without(tmp_path, data_dir, key))


def test_json_malformed_edge(tmp_path, data_dir):
    data = json.loads((data_dir / "small" / "cws-n8-k3.json").read_text())
    del data["edges"][0]["distance"]
    path = tmp_path / "bad-edge.json"
    path.write_text(json.dumps(data))
    with pytest.raises(InstanceError):
        load_instance(path)
