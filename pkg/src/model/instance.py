import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import networkx as nx
import numpy as np

from ..errors import (
    AsymmetricMatrixError,
    DimensionMismatchError,
    InstanceError,
    ZeroCapacityFleetError,
)

Number = Union[int, float]


class Instance:
    """
    A CVRP instance. Node 0 is the depot, customers are 1..n.

    The distance matrix and demands are read-only numpy arrays; integer
    inputs stay int64 so scores are exact.
    """

    def __init__(
        self,
        name: str,
        dist: np.ndarray,
        demands: np.ndarray,
        capacity: Number,
        vehicles: int,
        coords: Optional[np.ndarray] = None,
    ):
        dist = np.array(dist)
        demands = np.array(demands)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise DimensionMismatchError(f"distance matrix must be square, got shape {dist.shape}")
        if dist.shape[0] < 2:
            raise DimensionMismatchError("an instance needs a depot and at least one customer")
        if demands.shape != (dist.shape[0],):
            raise DimensionMismatchError(
                f"{demands.shape[0]} demands (depot included) for a {dist.shape[0]}x{dist.shape[0]} matrix"
            )
        if not np.array_equal(dist, dist.T):
            i, j = np.argwhere(dist != dist.T)[0]
            raise AsymmetricMatrixError(f"c[{i}][{j}]={dist[i, j]} differs from c[{j}][{i}]={dist[j, i]}")
        if np.any(np.diag(dist) != 0):
            raise InstanceError("distance matrix must have a zero diagonal")
        if np.any(dist < 0):
            raise InstanceError("distances must be nonnegative")
        if capacity < 0:
            raise InstanceError(f"capacity must be nonnegative, got {capacity}")
        if np.any(demands[1:] < 0) or np.any(demands[1:] > capacity):
            bad = int(np.argmax((demands < 0) | (demands > capacity)))
            raise InstanceError(f"demand of customer {bad} is {demands[bad]}, outside [0, {capacity}]")
        if vehicles < 1:
            raise InstanceError(f"fleet size must be >= 1, got {vehicles}")

        demands = demands.copy()
        demands[0] = 0
        dist.setflags(write=False)
        demands.setflags(write=False)
        if coords is not None:
            coords = np.array(coords)
            coords.setflags(write=False)

        self.name: str = name
        self.dist: np.ndarray = dist
        self.demands: np.ndarray = demands
        self.capacity: Number = capacity
        self.vehicles: int = vehicles
        self.coords: Optional[np.ndarray] = coords
        # plain python copies for the hot loops of the constructive heuristics
        self.demand_list: List[Number] = demands.tolist()
        self.dist_rows: List[List[Number]] = dist.tolist()

    @property
    def n(self) -> int:
        return self.dist.shape[0] - 1

    @property
    def customers(self) -> range:
        return range(1, self.n + 1)

    def with_vehicles(self, vehicles: int) -> "Instance":
        return Instance(self.name, self.dist, self.demands, self.capacity, vehicles, self.coords)

    def to_graph(self) -> nx.Graph:
        g = nx.Graph(name=self.name, capacity=self.capacity, vehicles=self.vehicles)
        for node in range(self.n + 1):
            g.add_node(node, demand=self.demand_list[node])
            if self.coords is not None:
                g.nodes[node]["x"], g.nodes[node]["y"] = self.coords[node].tolist()
        for i in range(self.n + 1):
            for j in range(i + 1, self.n + 1):
                g.add_edge(i, j, distance=self.dist_rows[i][j])
        return g

    @classmethod
    def from_graph(cls, g: nx.Graph, name: Optional[str] = None, vehicles: Optional[int] = None) -> "Instance":
        nodes = sorted(g.nodes)
        if nodes != list(range(len(nodes))):
            raise InstanceError(f"graph nodes must be 0..n with the depot as 0, got {nodes}")
        expected_edges = len(nodes) * (len(nodes) - 1) // 2
        if g.number_of_edges() != expected_edges:
            raise InstanceError(
                f"distance graph must be complete: {g.number_of_edges()} of {expected_edges} edges present"
            )
        distances = [data["distance"] for _, _, data in g.edges(data=True)]
        dtype = np.int64 if all(isinstance(d, int) for d in distances) else np.float64
        dist = nx.to_numpy_array(g, nodelist=nodes, weight="distance", dtype=dtype)
        demands = np.array([g.nodes[node].get("demand", 0) for node in nodes])
        if vehicles is None:
            vehicles = g.graph.get("vehicles")
        if vehicles is None:
            raise InstanceError("fleet size is given neither by the graph nor by the caller")
        return cls(
            name=name if name is not None else g.graph.get("name", ""),
            dist=dist,
            demands=demands,
            capacity=g.graph["capacity"],
            vehicles=vehicles,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and self.capacity == other.capacity
            and self.vehicles == other.vehicles
            and np.array_equal(self.dist, other.dist)
            and np.array_equal(self.demands, other.demands)
        )

    def __repr__(self) -> str:
        return f"Instance({self.name!r}, n={self.n}, Q={self.capacity}, m={self.vehicles})"


def instance_from_matrix(
    dist: Sequence[Sequence[Number]],
    demands: Sequence[Number],
    capacity: Number,
    vehicles: int,
    name: str = "",
) -> Instance:
    """
    demands lists the n customers only; the depot gets demand 0.
    """
    dist = np.array(dist)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise DimensionMismatchError(f"distance matrix must be square, got shape {dist.shape}")
    if len(demands) != dist.shape[0] - 1:
        raise DimensionMismatchError(f"{len(demands)} demands for {dist.shape[0] - 1} customers")
    instance = Instance(name, dist, np.array([0, *demands]), capacity, vehicles)
    logging.debug(f"[MODEL] Built {instance!r} from an in-memory matrix")
    return instance


def tightness(instance: Instance) -> Union[Fraction, float]:
    """
    Total demand over total fleet capacity. Exact Fraction for integer data.
    """
    fleet_capacity = instance.capacity * instance.vehicles
    if fleet_capacity <= 0:
        raise ZeroCapacityFleetError(f"Q*m = {fleet_capacity}, tightness is undefined")
    total = instance.demands.sum().item()
    if isinstance(total, int) and isinstance(fleet_capacity, int):
        return Fraction(total, fleet_capacity)
    return total / fleet_capacity


def euclidean_nint(coords: np.ndarray) -> np.ndarray:
    """TSPLIB EUC_2D distances: floor(sqrt(dx^2 + dy^2) + 0.5)."""
    diff = coords[:, None, :] - coords[None, :, :]
    return np.floor(np.sqrt((diff**2).sum(axis=-1)) + 0.5).astype(np.int64)

