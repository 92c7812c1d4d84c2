import csv
import io
import json

import pytest

from src.bench.output import format_table, write_csv, write_json
from src.bench.plan import Algorithm, BenchPlan, OutputFormat, load_plan
from src.bench.runner import run_bench
from src.errors import PlanError
from src.model.run_record import RECORD_FIELDS
from src.prng.families import GeneratorFamily


@pytest.fixture
def cws_path(data_dir):
    return str(data_dir / "small" / "cws-n8-k3.json")


def small_plan(path, **changes):
    settings = dict(
        instances=[path],
        algorithms=[Algorithm.CWS, Algorithm.BINARY_CWS],
        prngs=[GeneratorFamily.LEHMER, GeneratorFamily.LINEAR],
        seeds=[172361],
        sims=2,
        rollouts=2,
        repetitions=3,
    )
    settings.update(changes)
    return BenchPlan(**settings)


def test_plan_needs_instances():
    with pytest.raises(PlanError):
        BenchPlan(instances=[]).validate()


def test_plan_rejects_missing_files(tmp_path):
    with pytest.raises(PlanError):
        BenchPlan(instances=[str(tmp_path / "nowhere.vrp")]).validate()


@pytest.mark.parametrize(
    "changes", [{"repetitions": 0}, {"p": 2.0}, {"seeds": []}, {"seeds": [-1]}, {"algorithms": []}, {"workers": 0}]
)
def test_plan_rejects_bad_settings(cws_path, changes):
    with pytest.raises(PlanError):
        small_plan(cws_path, **changes).validate()


def test_load_plan(tmp_path, cws_path):
    path = tmp_path / "plan.json"
    path.write_text(json.dumps({"instances": [cws_path], "algorithms": ["nni", "cws"], "prngs": ["icg"], "reps": 1}))
    with pytest.raises(PlanError):
        load_plan(path)

    path.write_text(json.dumps({"instances": [cws_path], "algorithms": ["nni", "cws"], "output_format": "csv"}))
    plan = load_plan(path)
    assert plan.algorithms == [Algorithm.NNI, Algorithm.CWS]
    assert plan.prngs == list(GeneratorFamily)
    assert plan.output_format == OutputFormat.CSV

    path.write_text(json.dumps({"instances": [cws_path], "prngs": ["xorshift"]}))
    with pytest.raises(PlanError):
        load_plan(path)

    path.write_text("{not json")
    with pytest.raises(PlanError):
        load_plan(path)


def test_cws_repetitions_agree(cws_path):
    result = run_bench(small_plan(cws_path, algorithms=[Algorithm.CWS]))
    assert len(result.records) == 2 * 3
    assert {r.score for r in result.records} == {83}
    assert all(r.seed == 172361 and r.p is None for r in result.records)
    assert [r.rep for r in result.records] == [0, 1, 2, 0, 1, 2]


def test_bench_is_reproducible(cws_path):
    def rows():
        stream = io.StringIO()
        write_csv(run_bench(small_plan(cws_path)).records, stream)
        stream.seek(0)
        return [{k: v for k, v in row.items() if k != "ms"} for row in csv.DictReader(stream)]

    first = rows()
    assert first == rows()
    assert list(first[0]) == [f for f in RECORD_FIELDS if f != "ms"]
    assert {row["p"] for row in first if row["algorithm"] == "binary-cws"} == {"0.3"}


def test_summary_shape(cws_path):
    result = run_bench(small_plan(cws_path))
    assert list(result.summary.columns) == ["lehmer", "lcg"]
    assert len(result.summary) == 2
    assert result.summary.loc[("cws", "cws-n8-k3"), "lehmer"] == 83
    assert " ± " in result.spread.loc[("binary-cws", "cws-n8-k3"), "lcg"]
    table = format_table(result)
    assert table.startswith("best score")


def test_random_p_is_recorded(cws_path):
    result = run_bench(small_plan(cws_path, algorithms=[Algorithm.BINARY_CWS], random_p=True))
    assert all(0.05 <= r.p <= 0.40 for r in result.records)


def test_broken_instance_is_recorded(tmp_path, cws_path):
    broken = tmp_path / "broken.vrp"
    broken.write_text("NAME : broken\nTYPE : CVRP\nDIMENSION : 3\nEOF\n")
    result = run_bench(small_plan(str(broken), instances=[str(broken), cws_path], algorithms=[Algorithm.CWS]))
    failed = result.failures
    assert len(failed) == 2 * 3
    assert all(r.score is None and not r.feasible for r in failed)
    assert len(result.records) == 4 * 3
    assert list(result.summary.index) == [("cws", "cws-n8-k3")]
    assert "failed: " in format_table(result)


def test_json_output(cws_path):
    result = run_bench(small_plan(cws_path, algorithms=[Algorithm.NNI], repetitions=1))
    stream = io.StringIO()
    write_json(result.records, stream)
    data = json.loads(stream.getvalue())
    assert set(data) == {"generators", "records"}
    assert set(data["generators"]) == {"lehmer", "lcg"}
    assert data["generators"]["lehmer"]["modulus"] == 2**31 - 1
    assert data["records"][0]["algorithm"] == "nni"
    assert "fleet_exceeded" in data["records"][0]


def test_workers_do_not_change_the_records(cws_path):
    plan = dict(algorithms=[Algorithm.BINARY_CWS_MCS, Algorithm.MCS_NNI], prngs=[GeneratorFamily.MULTIPLE_RECURSIVE])
    one = run_bench(small_plan(cws_path, repetitions=1, workers=1, **plan))
    two = run_bench(small_plan(cws_path, repetitions=1, workers=2, **plan))
    assert [(r.score, r.routes) for r in one.records] == [(r.score, r.routes) for r in two.records]
