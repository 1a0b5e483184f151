import json

import numpy as np
import pytest

from helpers import WORKED_AT_MOST, WORKED_C1, WORKED_TEXT
from onemap import cli


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text(WORKED_TEXT + "\n")
    return p


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def tsv_counts(out):
    return [int(line.split("\t")[1]) for line in out.splitlines() if not line.startswith("#")]


def test_map_tsv_worked(capsys, example_file):
    code, out, _ = run(capsys, "map", "--input", example_file, "-m", 3)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# record=")
    for field in ("m=3", "k=1", "mode=at-most", "algorithm="):
        assert field in lines[0]
    assert lines[1] == "0\t3" and lines[-1] == "7\t2"
    assert tsv_counts(out) == WORKED_AT_MOST


@pytest.mark.parametrize("algo", ["naive", "average", "treewalk", "heavypath", "auto"])
def test_map_every_algorithm_exact(capsys, example_file, algo):
    code, out, _ = run(capsys, "map", "--input", example_file, "-m", 3, "--count", "exact", "--algo", algo)
    assert code == 0
    assert tsv_counts(out) == WORKED_C1
    assert "mode=exact" in out.splitlines()[0]


def test_map_k0(capsys, tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("aaaa")
    code, out, _ = run(capsys, "map", "--input", p, "-m", 2, "-k", 0)
    assert code == 0
    assert tsv_counts(out) == [2, 2, 2]
    assert "k=0" in out and "mode=exact" in out


def test_map_json_and_wig(capsys, example_file):
    code, out, _ = run(capsys, "map", "--input", example_file, "-m", 3, "--out-format", "json")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["counts"] == WORKED_AT_MOST and rec["m"] == 3 and rec["k"] == 1
    code, out, _ = run(capsys, "map", "--input", example_file, "-m", 3, "--out-format", "wig")
    lines = out.splitlines()
    assert lines[0].startswith("fixedStep") and "start=1" in lines[0] and "span=3" in lines[0]
    assert [int(v) for v in lines[1:]] == WORKED_AT_MOST


def test_map_fasta_records(capsys, tmp_path):
    p = tmp_path / "r.fa"
    p.write_text(">one\naaba\naabbbb\n>two desc\nACGTACGA\n")
    code, out, _ = run(capsys, "map", "--input", p, "--format", "fasta", "-m", 3, "--out-format", "json")
    assert code == 0
    one, two = json.loads(out)
    assert one["record"] == "one" and one["counts"] == WORKED_AT_MOST
    assert two["record"] == "two desc" and len(two["counts"]) == 6


def test_map_out_file(capsys, example_file, tmp_path):
    dest = tmp_path / "out.tsv"
    code, out, _ = run(capsys, "map", "--input", example_file, "-m", 3, "--out", dest)
    assert code == 0 and out == ""
    assert tsv_counts(dest.read_text()) == WORKED_AT_MOST


def test_map_deterministic(capsys, tmp_path):
    rng = np.random.default_rng(3)
    p = tmp_path / "r.txt"
    p.write_text("".join(rng.choice(list("ACGT"), 500)))
    outs = {run(capsys, "map", "--input", p, "-m", m, "--algo", a)[1].split("\n", 1)[1]
            for m in (20,) for a in ("auto", "naive", "average", "treewalk", "heavypath")}
    assert len(outs) == 1


@pytest.mark.parametrize("m", [10, 11, 0])
def test_map_usage_errors(capsys, example_file, m):
    code, _, err = run(capsys, "map", "--input", example_file, "-m", m)
    assert code == cli.EXIT_USAGE
    assert "m" in err


def test_map_bad_k_is_usage(capsys, example_file):
    with pytest.raises(SystemExit) as exc:
        cli.main(["map", "--input", str(example_file), "-m", "3", "-k", "2"])
    assert exc.value.code == cli.EXIT_USAGE


def test_map_io_errors(capsys, tmp_path):
    code, _, err = run(capsys, "map", "--input", tmp_path / "missing", "-m", 3)
    assert code == cli.EXIT_IO and "cannot read" in err
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    assert run(capsys, "map", "--input", empty, "-m", 1)[0] == cli.EXIT_IO
    bad = tmp_path / "bad.fa"
    bad.write_text("ACGT\n>x\nAC\n")
    code, _, err = run(capsys, "map", "--input", bad, "--format", "fasta", "-m", 1)
    assert code == cli.EXIT_IO and "line 1" in err


def test_budget_fallback_warns(capsys, caplog, tmp_path):
    p = tmp_path / "periodic.txt"
    p.write_text("ab" * 1000)
    code, out, _ = run(capsys, "map", "--input", p, "-m", 40, "--budget", 1)
    assert code == 0
    assert any("falling back" in r.getMessage() and r.levelname == "WARNING" for r in caplog.records)
    assert "algorithm=treewalk" in out or "algorithm=heavypath" in out
    forced = run(capsys, "map", "--input", p, "-m", 40, "--algo", "naive")[1]
    assert tsv_counts(out) == tsv_counts(forced)


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--n", 100, "--sigma", 2, "--m", "3,5,17",
                       "--trials", 50, "--seed", 7)
    assert code == 0 and out.startswith("OK")


def test_validate_vacuous(capsys):
    code, out, _ = run(capsys, "validate", "--n", 10, "--sigma", 2, "--m", 3, "--trials", 0, "--seed", 1)
    assert code == 0 and out.startswith("OK")


@pytest.mark.parametrize("algo", ["average", "treewalk", "heavypath"])
def test_validate_injected_fault(capsys, algo):
    code, out, _ = run(capsys, "validate", "--n", 30, "--sigma", 2, "--m", 4, "--trials", 3,
                       "--seed", 1, "--inject-fault", algo)
    assert code == cli.EXIT_DIVERGED
    assert out.startswith("DIVERGENCE")
    bad = json.loads(out.split(" ", 1)[1])
    assert bad["algorithm"] == algo
    # shrinking keeps the smallest text that still disagrees
    assert bad["n"] == bad["m"] + 1
    assert bad["got"] == bad["expected"] + 1


def test_validate_usage(capsys):
    assert run(capsys, "validate", "--n", 1, "--sigma", 2, "--m", 3, "--trials", 1, "--seed", 1)[0] == 2


def parse_bench(out):
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("#")]
    assert rows[0] == ["algorithm", "n", "m", "sigma", "seconds"]
    return [(a, int(n), int(m)) for a, n, m, _, _ in rows[1:]]


def test_bench_rows_and_policy(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "200,2000", "--m", "2,10,64", "--seed", 5)
    assert code == 0
    rows = parse_bench(out)
    for n in (200, 2000):
        for m in (2, 10, 64):
            assert ("treewalk", n, m) in rows and ("heavypath", n, m) in rows
    avg = {(n, m) for a, n, m in rows if a == "average"}
    # average only where its random-text condition holds
    assert avg == {(200, 64), (2000, 64)}
    forced = parse_bench(run(capsys, "bench", "--sizes", 200, "--m", 10, "--algos", "average",
                             "--force-average")[1])
    assert forced == [("average", 200, 10)]


def test_bench_skips_invalid_m_and_unknown_algo(capsys):
    rows = parse_bench(run(capsys, "bench", "--sizes", 50, "--m", "50,60", "--algos", "treewalk")[1])
    assert rows == []
    assert run(capsys, "bench", "--sizes", 50, "--m", 3, "--algos", "bogus")[0] == cli.EXIT_USAGE


def test_bench_same_seed_same_inputs():
    a = [r[:4] for r in cli.bench_rows([300], [5], ["heavypath"], seed=9)]
    b = [r[:4] for r in cli.bench_rows([300], [5], ["heavypath"], seed=9)]
    assert a == b
    from onemap.pipeline import random_text
    t1 = random_text(np.random.default_rng([9, 300]), 300, 4)
    t2 = random_text(np.random.default_rng([9, 300]), 300, 4)
    assert t1 == t2
