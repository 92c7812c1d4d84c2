import logging
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from ..errors import (
    InstanceError,
    MissingSectionError,
    TsplibError,
    TsplibParseError,
    UnsupportedEdgeWeightType,
)
from .instance import Instance, Number, euclidean_nint

_KEY_LINE = re.compile(r"^([A-Z][A-Z0-9_]*)\s*(?::\s*(.*))?$")
_FLEET_SUFFIX = re.compile(r"-k(\d+)$")

Rows = List[Tuple[int, List[str]]]


def _number(token: str, line: int) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise TsplibParseError(f"expected a number, got {token!r}", line) from None


def _read(path: Path) -> Tuple[Dict[str, Tuple[str, int]], Dict[str, Rows]]:
    header: Dict[str, Tuple[str, int]] = {}
    sections: Dict[str, Rows] = {}
    current: Optional[str] = None
    with open(path, "r") as file:
        for line_no, raw in enumerate(file, start=1):
            line = raw.strip()
            if not line:
                continue
            if line == "EOF":
                break
            match = _KEY_LINE.match(line)
            if match and not line[0].isdigit():
                key, value = match.group(1), match.group(2)
                if key.endswith("_SECTION"):
                    current = key
                    sections[key] = []
                    continue
                if value is None or not value.strip():
                    raise TsplibParseError(f"header {key} has no value", line_no)
                header[key] = (value.strip(), line_no)
                current = None
                continue
            if current is None:
                raise TsplibParseError(f"data line outside of any section: {line!r}", line_no)
            sections[current].append((line_no, line.split()))
    return header, sections


def _explicit_cells(fmt: str, size: int) -> Iterator[Tuple[int, int]]:
    if fmt == "FULL_MATRIX":
        return ((i, j) for i in range(size) for j in range(size))
    if fmt == "LOWER_ROW":
        return ((i, j) for i in range(1, size) for j in range(i))
    if fmt == "UPPER_ROW":
        return ((i, j) for i in range(size - 1) for j in range(i + 1, size))
    if fmt == "LOWER_DIAG_ROW":
        return ((i, j) for i in range(size) for j in range(i + 1))
    if fmt == "UPPER_DIAG_ROW":
        return ((i, j) for i in range(size) for j in range(i, size))
    raise UnsupportedEdgeWeightType(f"EDGE_WEIGHT_FORMAT {fmt} is not supported")


def _explicit_matrix(fmt: str, size: int, rows: Rows) -> np.ndarray:
    values = [(_number(tok, line_no), line_no) for line_no, tokens in rows for tok in tokens]
    cells = list(_explicit_cells(fmt, size))
    last_line = rows[-1][0] if rows else 0
    if len(values) != len(cells):
        raise TsplibParseError(
            f"EDGE_WEIGHT_SECTION holds {len(values)} values, {fmt} of dimension {size} needs {len(cells)}",
            last_line,
        )
    dtype = np.int64 if all(isinstance(v, int) for v, _ in values) else np.float64
    matrix = np.zeros((size, size), dtype=dtype)
    for (i, j), (value, _) in zip(cells, values):
        matrix[i, j] = value
        if fmt != "FULL_MATRIX":
            matrix[j, i] = value
    return matrix


def _node_table(rows: Rows, size: int, width: int, section: str) -> Dict[int, List[Number]]:
    table: Dict[int, List[Number]] = {}
    for line_no, tokens in rows:
        if len(tokens) != width + 1:
            raise TsplibParseError(f"{section} line needs {width + 1} fields, got {len(tokens)}", line_no)
        node = _number(tokens[0], line_no)
        if not isinstance(node, int) or not 1 <= node <= size:
            raise TsplibParseError(f"node id {tokens[0]} outside 1..{size}", line_no)
        table[node] = [_number(tok, line_no) for tok in tokens[1:]]
    if len(table) != size:
        raise TsplibError(f"{section} lists {len(table)} of {size} nodes")
    return table


def _header_int(header: Dict[str, Tuple[str, int]], key: str) -> Optional[int]:
    if key not in header:
        return None
    value, line_no = header[key]
    parsed = _number(value, line_no)
    if not isinstance(parsed, int):
        raise TsplibParseError(f"{key} must be an integer, got {value!r}", line_no)
    return parsed


def _require(sections: Dict[str, Rows], key: str) -> Rows:
    if key not in sections:
        raise MissingSectionError(f"{key} is missing")
    return sections[key]


def load_tsplib(path: Union[str, Path], vehicles: Optional[int] = None) -> Instance:
    """
    Reads a TSPLIB CVRP file. The depot becomes node 0 and the remaining
    nodes keep their file order as customers 1..n.
    """
    path = Path(path)
    header, sections = _read(path)

    if "TYPE" in header and header["TYPE"][0].split()[0] != "CVRP":
        raise TsplibParseError(f"TYPE must be CVRP, got {header['TYPE'][0]!r}", header["TYPE"][1])
    size = _header_int(header, "DIMENSION")
    if size is None:
        raise MissingSectionError("DIMENSION is missing")
    capacity = _header_int(header, "CAPACITY")
    if capacity is None:
        raise MissingSectionError("CAPACITY is missing")
    name = header.get("NAME", (path.stem, 0))[0]
    weight_type = header.get("EDGE_WEIGHT_TYPE", ("", 0))[0]

    coords = None
    if weight_type == "EUC_2D":
        table = _node_table(_require(sections, "NODE_COORD_SECTION"), size, 2, "NODE_COORD_SECTION")
        coords = np.array([table[node] for node in range(1, size + 1)], dtype=np.float64)
        full = euclidean_nint(coords)
    elif weight_type == "EXPLICIT":
        if "EDGE_WEIGHT_FORMAT" not in header:
            raise MissingSectionError("EDGE_WEIGHT_FORMAT is missing for an EXPLICIT instance")
        full = _explicit_matrix(header["EDGE_WEIGHT_FORMAT"][0], size, _require(sections, "EDGE_WEIGHT_SECTION"))
    else:
        raise UnsupportedEdgeWeightType(f"EDGE_WEIGHT_TYPE {weight_type or '<none>'} is not supported")

    demand_table = _node_table(_require(sections, "DEMAND_SECTION"), size, 1, "DEMAND_SECTION")
    depots = []
    for line_no, tokens in _require(sections, "DEPOT_SECTION"):
        for tok in tokens:
            depot = _number(tok, line_no)
            if depot == -1:
                break
            depots.append(depot)
    if len(depots) != 1:
        raise TsplibError(f"exactly one depot is supported, got {depots}")
    depot = depots[0]
    if not isinstance(depot, int) or not 1 <= depot <= size:
        raise TsplibError(f"depot id {depot} outside 1..{size}")

    order = [depot] + [node for node in range(1, size + 1) if node != depot]
    index = np.array(order) - 1
    dist = full[np.ix_(index, index)]
    demands = np.array([demand_table[node][0] for node in order])
    if coords is not None:
        coords = coords[index]

    if vehicles is None:
        vehicles = _header_int(header, "VEHICLES")
    if vehicles is None:
        suffix = _FLEET_SUFFIX.search(name)
        if suffix is None:
            raise InstanceError(f"fleet size is not given and NAME {name!r} has no -k<M> suffix")
        vehicles = int(suffix.group(1))

    instance = Instance(name, dist, demands, capacity, vehicles, coords)
    logging.info(f"[TSPLIB] Loaded {instance!r} from {path}")
    return instance


def write_tsplib(instance: Instance, path: Union[str, Path]) -> None:
    """Writes the instance as an EXPLICIT LOWER_ROW file."""
    rows = instance.dist_rows
    lines = [
        f"NAME : {instance.name}",
        "TYPE : CVRP",
        f"DIMENSION : {instance.n + 1}",
        "EDGE_WEIGHT_TYPE : EXPLICIT",
        "EDGE_WEIGHT_FORMAT : LOWER_ROW",
        f"CAPACITY : {instance.capacity}",
        f"VEHICLES : {instance.vehicles}",
        "EDGE_WEIGHT_SECTION",
    ]
    for i in range(1, instance.n + 1):
        lines.append(" ".join(repr(v) for v in rows[i][:i]))
    lines.append("DEMAND_SECTION")
    for node, demand in enumerate(instance.demand_list):
        lines.append(f"{node + 1} {demand!r}")
    lines += ["DEPOT_SECTION", "1", "-1", "EOF"]
    Path(path).write_text("\n".join(lines) + "\n")
