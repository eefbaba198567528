import json

import pytest

from spherical_vassiliev.cli import main

TAU4 = " ".join(["s1 s2 s3"] * 4)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_invariant_json_schema(capsys):
    code, out = run(capsys, "invariant", "--group", "bs2", "--n", "4", "--m", "2", "--word", "s1 s1",
                    "--format", "json")
    assert code == 0
    record = json.loads(out)
    assert list(record) == ["n", "m", "group", "permutation", "P", "Q", "filtration"]
    assert record["permutation"] == [1, 2, 3, 4]
    deg1 = [r for r in record["P"] if r["degree"] == 1]
    assert deg1 == [{"degree": 1, "monomial": ["1,2"], "coeff": 1}]
    assert all("modulus" in r for r in record["Q"])
    assert json.dumps(json.loads(out)) + "\n" == out


def test_invariant_unit_values(capsys):
    code, out = run(capsys, "invariant", "--group", "bs2", "--n", "3", "--m", "1", "--word", "",
                    "--format", "json")
    record = json.loads(out)
    assert code == 0 and record["P"] == [{"degree": 0, "monomial": [], "coeff": 1}] and record["Q"] == []
    code, out = run(capsys, "invariant", "--group", "mn", "--n", "4", "--m", "1", "--word", TAU4,
                    "--format", "json")
    record = json.loads(out)
    assert record["P"] == [{"degree": 0, "monomial": [], "coeff": 1}] and record["filtration"] is None


def test_compare_exit_codes(capsys):
    code, out = run(capsys, "compare", "--n", "4", "--m", "2", "--word", "", "--word2", TAU4)
    assert code == 1 and "2-power torsion, annihilator 4" in out
    code, _ = run(capsys, "compare", "--n", "4", "--m", "2", "--word", "s1 s2", "--word2", "s1 s2")
    assert code == 0
    code, out = run(capsys, "compare", "--n", "3", "--m", "1", "--word", "s1 s1", "--word2", "",
                    "--format", "json")
    assert code == 1 and json.loads(out)["filtration"] == 1


def test_parse_error_exit_code(capsys):
    assert main(["invariant", "--n", "3", "--word", "s7"]) == 2
    assert main(["invariant", "--n", "3", "--word", "q1"]) == 2


def test_missing_cache_exit_code(tmp_path, capsys):
    code = main(["invariant", "--n", "4", "--m", "1", "--word", "s1 s1", "--no-build",
                 "--cache-dir", str(tmp_path)])
    assert code == 3


def test_cache_dir_then_no_build(tmp_path, capsys):
    args = ["invariant", "--n", "4", "--m", "2", "--word", "s1 s1", "--format", "json",
            "--cache-dir", str(tmp_path)]
    _, first = run(capsys, *args)
    code, second = run(capsys, *args, "--no-build")
    assert code == 0 and first == second


def test_check_relations(capsys):
    code, out = run(capsys, "check-relations", "--n", "4", "--m", "2", "--trials", "20", "--seed", "7")
    assert code == 0 and "20 passed, 0 failed" in out
    code, out = run(capsys, "check-relations", "--group", "mn", "--n", "4", "--m", "2", "--trials", "10",
                    "--seed", "7")
    assert code == 0 and "mcg_sphere" in out
    code, out = run(capsys, "check-relations", "--n", "4", "--trials", "0")
    assert code == 0 and "0 passed, 0 failed" in out


def test_gr_ranks(capsys):
    code, out = run(capsys, "gr-ranks", "--presentation", "pm_reduced", "--N", "3", "--m", "4",
                    "--format", "json")
    assert code == 0
    assert [d["rank"] for d in json.loads(out)["degrees"]] == [1, 2, 4, 8, 16]
    _, a = run(capsys, "gr-ranks", "--presentation", "ihara", "--N", "4", "--m", "1", "--format", "json")
    _, b = run(capsys, "gr-ranks", "--presentation", "sphere_reduced", "--N", "3", "--m", "1",
               "--format", "json")
    assert json.loads(a)["degrees"] == json.loads(b)["degrees"]
    assert json.loads(b)["degrees"][1] == {"degree": 1, "rank": 2, "torsion": [2]}


@pytest.mark.parametrize("argv", [
    ["check-relations", "--n", "3", "--m", "2", "--trials", "15", "--seed", "3", "--format", "json"],
    ["invariant", "--n", "4", "--m", "3", "--word", "s1 s2^-1 s3 s3 s2 s1", "--format", "json"],
    ["invariant", "--n", "3", "--m", "2", "--word", "x1 s2"],
])
def test_output_is_byte_stable(capsys, argv):
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_build_tables(tmp_path, capsys):
    code, _ = run(capsys, "build-tables", "--presentation", "pm_reduced", "--N", "3", "--m", "2",
                  "--cache-dir", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.glob("*.vass"))[:3] == [
        "pm_reduced_N2_d0.vass", "pm_reduced_N2_d1.vass", "pm_reduced_N2_d2.vass"]
