import io
import json
import subprocess
import sys

import pytest

from realflags.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_intersect_example():
    doc = call_json("intersect", "--pair", "su2n-so-sp", "--n", "3", "--x0", "1,1,-2", "--H", "1/7,2/7,-3/7")
    assert doc["kind"] == "Discrete"
    assert doc["cardinality"] == 3
    assert doc["equality_chain"]["holds"] is True
    assert sorted(doc["points"]) == sorted([["1", "1", "-2"], ["1", "-2", "1"], ["-2", "1", "1"]])


def test_regular_example():
    doc = call_json("regular", "--pair", "su-n-so-rank1", "--H", "1/4")
    assert doc["regular"] is False
    assert doc["witness"] == ["2"]
    assert doc["violations"][0]["pairing"] == "1/2"
    assert call_json("regular", "--pair", "su-n-so-rank1", "--H", "1/3")["regular"] is True


def test_roots_example():
    doc = call_json("roots", "--family", "A", "--rank", "1")
    assert doc["count"] == 2
    assert doc["roots"] == [["-1", "1"], ["1", "-1"]]
    assert call_json("roots", "--family", "G", "--rank", "2", "--weyl-order")["weyl_order"] == 12


def test_cell_and_st_point():
    doc = call_json("cell", "--pair", "su-n-so-rank1", "--n", "3")
    assert doc == {"H": [["1/4"]], "alpha_tilde": ["2"], "m": [2], "simple_sigma": [["1"]], "sum_m": 2}
    doc = call_json("st-point", "--pair", "su-n-so-rank1", "--n", "3", "--order", "3")
    assert doc["H0_over_pi"] == ["1/6"] and doc["regular"] and doc["n_H0_in_gamma"]


def test_gamma():
    doc = call_json("gamma", "--pair", "su2n-so-sp", "--n", "2", "--H", "1/4,-1/4")
    assert doc["in_gamma"] is True and doc["in_gamma_reduced_test"] is True


def test_triad_report_and_degenerate_pair():
    assert call_json("triad", "--pair", "su2n-so-sp", "--n", "4")["passed"] is True
    doc = call_json("triad", "--pair", "su-n-so-rank1", "--n", "2")
    assert doc["passed"] is False
    failed = [c for c in doc["reports"][0]["conditions"] if not c["passed"]]
    assert [c["condition"] for c in failed] == [4]


def test_antipodal_and_tight():
    doc = call_json("antipodal", "--pair", "su2n-so-sp", "--n", "3", "--x0", "1,1,-2")
    # torus point (1,1,-2,1,1,-2): 6!/(4!2!) permutations
    assert doc["cardinality"] == 15 and doc["delta"] == "A5"
    doc = call_json("antipodal", "--family", "A", "--rank", "2", "--x0", "1,1,-2")
    assert doc["cardinality"] == 3
    assert call_json("tight", "--pair", "su2n-so-sp", "--n", "3")["count"] == 6
    assert call_json("tight", "--pair", "su2n-so-sp", "--n", "3")["sb_reference"] == 6
    assert call_json("tight", "--pair", "su-n-so-rank1", "--n", "4") == {"count": 2, "sb_reference": 2, "x0": ["1"]}


def test_congruent_intersect():
    doc = call_json("intersect", "--family", "A", "--rank", "2", "--x0", "1,1,-2", "--H", "1/7,2/7,-3/7")
    assert doc["case"] == "congruent" and doc["cardinality"] == 3
    doc = call_json("intersect", "--family", "A", "--rank", "2", "--x0", "1,1,-2", "--H", "1,0,-1")
    assert doc["kind"] == "Continuum" and doc["witness"]["classification"] == "congruent"


def test_continuum_witness():
    doc = call_json("intersect", "--pair", "su2n-so-sp", "--n", "2", "--H", "1/4,-1/4")
    assert doc["kind"] == "Continuum"
    assert doc["witness"]["classification"] == "ii"
    assert doc["witness"]["root"] == ["1", "-1"]


@pytest.mark.parametrize(
    "argv",
    [
        ("intersect", "--pair", "su2n-so-sp", "--n", "3", "--x0", "1,1,1", "--H", "1/7,2/7,-3/7"),
        ("intersect", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/7,2/7"),
        ("regular", "--pair", "su2n-so-sp", "--n", "1", "--H", "0"),
        ("roots", "--family", "E", "--rank", "5"),
        ("st-point", "--pair", "su-n-so-rank1", "--n", "3", "--order", "2"),
        ("cell", "--pair", "su-n-so-rank1", "--n", "2"),
        ("regular", "--pair", "su2n-so-sp", "--H", "1/0,0,0"),
        ("intersect", "--family", "A", "--rank", "2", "--H", "0,0,0"),
    ],
)
def test_domain_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1
    assert out == "" and err.startswith("error: ")


@pytest.mark.parametrize("argv", [(), ("frobnicate",), ("roots", "--family", "A"), ("regular", "--pair", "nope", "--H", "0"), ("roots", "--bogus")])
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_emit_round_trip(tmp_path):
    code, text, _ = call("triad", "--pair", "su-n-so-rank1", "--n", "5", "--emit")
    assert code == 0
    path = tmp_path / "t.json"
    path.write_text(text)
    a = call_json("triad", "--pair", "su-n-so-rank1", "--n", "5")
    b = call_json("triad", "--triad-file", str(path))
    assert a["reports"][0]["conditions"] == b["reports"][0]["conditions"]
    for p in range(-24, 25):
        H = f"--H={p}/24"  # the = form lets negative values through argparse
        assert call_json("regular", "--pair", "su-n-so-rank1", "--n", "5", H)["violations"] == \
            call_json("regular", "--triad-file", str(path), H)["violations"]


def test_bad_triad_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert call("triad", "--triad-file", str(path))[0] == 1
    assert call("triad", "--triad-file", str(tmp_path / "missing.json"))[0] == 1


def test_output_is_byte_identical():
    argv = ("intersect", "--pair", "su2n-so-sp", "--n", "4", "--H", "1/7,2/11,1/13,-430/1001")
    assert call(*argv)[1] == call(*argv)[1]
    argv = ("oracle", "--pair", "su-n-so-rank1", "--n", "3", "--check", "dimensions", "--count", "30", "--seed", "9")
    first, second = call(*argv), call(*argv)
    assert first[0] == 0 and first[1] == second[1]


def test_table_format():
    code, out, _ = call("regular", "--pair", "su-n-so-rank1", "--H", "1/4", "--format", "table")
    assert code == 0
    assert "regular: False" in out


@pytest.mark.parametrize("pair,n", [("su2n-so-sp", 2), ("su-n-so-rank1", 3), ("su-n-so-congruent", 3)])
def test_oracle_all_checks(pair, n):
    doc = call_json("oracle", "--pair", pair, "--n", str(n), "--count", "40")
    assert doc["passed"] is True
    assert len(doc["reports"]) >= 4


def test_oracle_congruent_rejects_regularity():
    assert call("oracle", "--pair", "su-n-so-congruent", "--check", "regularity")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "realflags", "roots", "--family", "B", "--rank", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 8


def test_readme_python_example():
    from fractions import Fraction as F

    from realflags import PiPoint, catalogue_entry, noncongruent_intersection

    e = catalogue_entry("su2n-so-sp", 3)
    res = noncongruent_intersection(e.triad, [1, 1, -2], PiPoint.of(F(1, 7), F(2, 7), F(-3, 7)), e)
    assert (res.kind, res.cardinality) == ("Discrete", 3)
