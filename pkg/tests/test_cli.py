"""Command-line interface: output, exit codes and the result cache."""

import json

import pytest

import prym4
from prym4.cli import main


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PRYM4_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_table(capsys):
    code, out, _ = run(capsys, "enumerate", "--D", "5")
    assert code == 0
    assert out.strip() == "(1,1,0,-1) model B"


def test_enumerate_json_deterministic(capsys):
    code, out1, _ = run(capsys, "enumerate", "--D", "88", "--format", "json")
    assert code == 0
    code, out2, _ = run(capsys, "enumerate", "--D", "88", "--format", "json")
    assert out1 == out2
    data = json.loads(out1)
    assert [(d["w"], d["h"], d["t"], d["e"])
            for d in data if d["model"] == "A"]


def test_components_json_and_dot(capsys, tmp_path):
    dot = tmp_path / "c41.dot"
    code, out, _ = run(capsys, "components", "--D", "41",
                       "--level", "s1", "--dot", str(dot))
    assert code == 0
    data = json.loads(out)
    assert data["n_components"] == 2
    assert dot.read_text().startswith("graph")


def test_verify_pd_range(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "pd",
                       "--range", "4..60")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(": match" in ln for ln in lines)
    assert lines[0].startswith("D=4:")


def test_verify_range_rounding_warns(capsys):
    code, out, err = run(capsys, "verify", "--theorem", "pd",
                         "--range", "6..30")
    assert code == 0
    assert "rounded" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as ex:
        main(["verify"])              # missing --theorem
    assert ex.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit):
        main(["nonsense"])
    capsys.readouterr()
    code, _, err = run(capsys, "trace", "--D", "17", "--proto", "4,1,0,-1")
    assert code == 2 and "slope" in err
    code, _, err = run(capsys, "trace", "--D", "17", "--proto", "2,1,0,1",
                       "--vertical")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "strategy")
    assert code == 2


def test_cache_roundtrip(capsys, cache):
    run(capsys, "verify", "--theorem", "pd", "--range", "4..40")
    files = sorted(cache.glob("*.json"))
    assert files
    stamp = {f: f.read_text() for f in files}
    # second run reuses the entries byte for byte
    code, out, _ = run(capsys, "verify", "--theorem", "pd", "--range",
                       "4..40")
    assert code == 0
    assert {f: f.read_text() for f in sorted(cache.glob("*.json"))} == stamp
    # a tampered entry is detected (wrong D inside) and recomputed
    victim = files[0]
    data = json.loads(victim.read_text())
    data["D"] = -1
    victim.write_text(json.dumps(data))
    run(capsys, "verify", "--theorem", "pd", "--range", "4..40")
    assert json.loads(victim.read_text())["D"] != -1
    # corrupt JSON is recomputed, not trusted
    victim.write_text("{not json")
    code, _, _ = run(capsys, "verify", "--theorem", "pd", "--range", "4..40")
    assert code == 0
    assert json.loads(victim.read_text())["match"]


def test_cache_keys_include_version(capsys, cache, monkeypatch):
    run(capsys, "verify", "--theorem", "pd", "--range", "5..5")
    before = set(cache.glob("*.json"))
    monkeypatch.setattr("prym4.cli.__version__", prym4.__version__ + "+next")
    run(capsys, "verify", "--theorem", "pd", "--range", "5..5")
    assert set(cache.glob("*.json")) > before


def test_trace_vertical_and_slope(capsys):
    code, out, _ = run(capsys, "trace", "--D", "17",
                       "--proto", "4,1,0,-1", "--vertical")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] != "two-cylinder" and "prototype" in data
    # butterfly direction q=1: slope h/(w) = 1/4 -> (1 + 0*sqrt(17))/4
    code, out, _ = run(capsys, "trace", "--D", "17",
                       "--proto", "4,1,0,-1", "--slope", "1,0,4")
    assert code == 0
    data = json.loads(out)
    assert len(data["cylinders"]) in (2, 4)


def test_orbits_and_st_orbits(capsys, tmp_path):
    dot = tmp_path / "o.dot"
    code, out, _ = run(capsys, "orbits", "--D", "52", "--dot", str(dot))
    assert code == 0
    data = json.loads(out)
    assert data["orbits"] == 1 and data["matches_theorem"]
    assert "orbits_52" in dot.read_text()
    code, out, _ = run(capsys, "st-orbits", "--n", "8")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "st-orbits", "--n", "7")
    assert code == 0 and out.strip() == "0"


def test_strategy_pair(capsys):
    code, out, _ = run(capsys, "strategy", "--pair", "0,3")
    assert code == 0
    data = json.loads(out)
    assert "5/-3" in data["strategies"]
    code, out, _ = run(capsys, "strategy", "--pair", "4,-10")
    assert json.loads(out)["strategies"] == []
