import pytest

from parityrev.bench import expand_sources, load_source, run_suite, scaling_check

from .conftest import FIXTURES


def counts(records):
    return [(r.report.garbage, r.report.ancilla) for r in records]


def test_rd_small_suite():
    records = run_suite(["rd:5", "rd:7", "rd:8"])
    assert counts(records) == [(5, 3), (7, 3), (8, 4)]
    assert [r.report.name for r in records] == ["rd53", "rd73", "rd84"]
    assert all(r.runtime_ms >= 0 and r.ok for r in records)


def test_rd_large_suite():
    assert counts(run_suite(["rd:10", "rd:20"])) == [(9, 3), (19, 4)]


def test_empty_suite():
    assert run_suite([]) == []


def test_failures_are_recorded(tmp_path):
    bad = tmp_path / "bad.pla"
    bad.write_text(".i 1\n.o 1\n0 1\n0 0\n.e\n")
    records = run_suite([str(bad), "rd:3", str(tmp_path / "missing.pla"), "rd:x"])
    assert [r.ok for r in records] == [False, True, False, False]
    assert "ConflictError" in records[0].error


def test_directory_sources_sorted(tmp_path):
    for name in ("b.pla", "a.pla", "notes.txt"):
        (tmp_path / name).write_text(".i 1\n.o 1\n0 1\n1 0\n.e\n")
    assert [p.split("/")[-1] for p in expand_sources([str(tmp_path)])] == ["a.pla", "b.pla"]


@pytest.mark.filterwarnings("ignore::parityrev.errors.PlaWarning")
def test_fixture_directory():
    records = run_suite([str(FIXTURES)])
    by_name = {r.report.name: r.report for r in records if r.ok}
    assert (by_name["half_adder"].garbage, by_name["half_adder"].ancilla) == (2, 2)
    assert (by_name["full_adder"].garbage, by_name["full_adder"].ancilla) == (3, 2)
    assert by_name["fredkin"].garbage == 0 and by_name["fredkin"].parity_preserving


def test_deterministic_apart_from_runtime():
    def strip_runtime(records):
        return [{**vars(r.report), "runtime_ms": None} for r in records]
    sources = ["rd:6", str(FIXTURES / "full_adder.pla")]
    assert strip_runtime(run_suite(sources)) == strip_runtime(run_suite(sources))


def test_parallel_matches_serial():
    sources = ["rd:4", "rd:5", "rd:6"]
    assert counts(run_suite(sources, jobs=2)) == counts(run_suite(sources))


def test_line_balance_holds():
    for r in run_suite(["rd:5", "rd:9", str(FIXTURES / "cnot.pla")]):
        rep = r.report
        assert rep.inputs + rep.ancilla == rep.outputs + rep.garbage


def test_load_generator_and_file():
    assert load_source("rd:4").name == "rd43"
    assert load_source(str(FIXTURES / "half_adder.pla")).name == "half_adder"


def test_scaling_check_shape():
    rows = scaling_check(10)
    assert len(rows) == 1 and rows[0][0] == 10 and rows[0][1] > 0
    with pytest.raises(ValueError):
        scaling_check(23)
