import json
import logging
from pathlib import Path
from typing import Optional, Union

import networkx

from src.errors import InstanceError
from src.model.instance import Instance
from src.model.tsplib import load_tsplib


def load_graph(path: Union[str, Path]) -> networkx.Graph:
    """
    Expected file
    {
        "name": "cws-n8-k3",
        "capacity": 10,
        "vehicles": 3,
        "nodes": [{"id": 0, "demand": 0}, {"id": 1, "demand": 2}, ...],
        "edges": [{"node1": 0, "node2": 1, "distance": 10}, ...]
    }
    Node 0 is the depot. "vehicles" may be left out when the caller gives
    the fleet size.
    """
    with open(path, "rb") as file:
        data = json.load(file)
    if not isinstance(data, dict):
        raise InstanceError(f"{path} must hold a JSON object")
    missing = [key for key in ("capacity", "nodes", "edges") if key not in data]
    if missing:
        raise InstanceError(f"{path} is missing {missing}")
    g = networkx.Graph(name=data.get("name", Path(path).stem), capacity=data["capacity"], vehicles=data.get("vehicles"))
    try:
        for node in data["nodes"]:
            g.add_node(node["id"], demand=node.get("demand", 0))
        for edge in data["edges"]:
            g.add_edge(edge["node1"], edge["node2"], distance=edge["distance"])
    except (KeyError, TypeError) as e:
        raise InstanceError(f"{path}: malformed node or edge entry ({type(e).__name__}: {e})") from None
    return g


def load_instance_json(path: Union[str, Path], vehicles: Optional[int] = None) -> Instance:
    instance = Instance.from_graph(load_graph(path), vehicles=vehicles)
    logging.info(f"[UTILS] Loaded {instance!r} from {path}")
    return instance


def save_instance_json(instance: Instance, path: Union[str, Path]) -> None:
    g = instance.to_graph()
    data = {
        "name": g.graph["name"],
        "capacity": g.graph["capacity"],
        "vehicles": g.graph["vehicles"],
        "nodes": [{"id": node, "demand": attrs["demand"]} for node, attrs in sorted(g.nodes(data=True))],
        "edges": [
            {"node1": u, "node2": v, "distance": attrs["distance"]} for u, v, attrs in sorted(g.edges(data=True))
        ],
    }
    with open(path, "w") as file:
        json.dump(data, file, indent=1)


def load_instance(path: Union[str, Path], vehicles: Optional[int] = None) -> Instance:
    """TSPLIB for .vrp files, the JSON graph format for .json files."""
    if Path(path).suffix.lower() == ".json":
        return load_instance_json(path, vehicles)
    return load_tsplib(path, vehicles)
