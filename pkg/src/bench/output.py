import csv
import json
from typing import List, TextIO

from ..model.run_record import RECORD_FIELDS, RunRecord
from .runner import BenchResult


def write_csv(records: List[RunRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for record in records:
        writer.writerow(record.to_row())


def write_json(records: List[RunRecord], stream: TextIO) -> None:
    """Records plus the full parameters of every generator they used."""
    generators = {}
    for record in records:
        generators.setdefault(record.prng, record.params.to_dict())
    rows = []
    for record in records:
        row = record.to_dict()
        row["fleet_exceeded"] = record.fleet_exceeded
        if record.error is not None:
            row["error"] = record.error
        rows.append(row)
    json.dump({"generators": generators, "records": rows}, stream, indent=1)
    stream.write("\n")


def format_table(result: BenchResult) -> str:
    if result.summary.empty:
        lines = ["no feasible runs"]
    else:
        lines = ["best score", result.summary.to_string(), "", "mean ± std", result.spread.to_string()]
    exceeded = [r for r in result.records if r.fleet_exceeded]
    if exceeded:
        lines += ["", f"{len(exceeded)} runs used more routes than vehicles"]
    for record in result.failures:
        lines.append(f"failed: {record.instance} {record.algorithm} {record.prng} rep {record.rep}: {record.error}")
    return "\n".join(lines) + "\n"
