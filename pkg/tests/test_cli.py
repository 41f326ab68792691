import csv
import io
import json

from twistedcubic.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_point_text():
    code, out, _ = call("classify-point", "--field", "7", "--cubic", "0,0,0,1", "--format", "text")
    assert code == 0 and out == "O1\n"


def test_classify_point_json_fractions():
    code, out, _ = call("classify-point", "--field", "7", "--cubic", "0,1/3,0,0")
    assert code == 0 and json.loads(out)["orbit"] == "O2"


def test_incidence_tangent():
    code, out, _ = call("incidence", "--field", "7", "--z", "0,0,0,0,1,0", "--format", "json")
    assert code == 0
    assert json.loads(out)["counts"] == [1, 7, 0, 0, 0]


def test_incidence_secant_check():
    code, out, _ = call("incidence", "--field", "7", "--z", "0,0,1,0,0,1", "--check")
    d = json.loads(out)
    assert code == 0 and d["orbit_class"] == "secant" and d["check_passed"]
    assert set(d) >= {"counts", "eta", "nu", "e_count", "orbit_class"}


def test_incidence_generic_by_pencil():
    code, out, _ = call("incidence", "--field", "7", "--pencil", "1,6,1,6:0,1,2,3", "--check")
    d = json.loads(out)
    assert code == 0 and d["check_passed"]


def test_golden_incidence_output():
    # byte-stable output
    code, out, _ = call("incidence", "--field", "7", "--z", "1,6,1,6,4,6", "--format", "csv")
    assert code == 0
    assert out == "counts,eta,nu,e_count,orbit_class\n\"[0, 2, 1, 1, 4]\",2,5,12,generic\n"


def test_elliptic_json():
    code, out, _ = call("elliptic", "--field", "11", "--z", "1,9,1,1,9,5")
    d = json.loads(out)
    assert code == 0
    assert (d["g2"], d["g3"], d["count"], d["hasse_ok"], d["div3"]) == (9, 0, 12, True, True)


def test_classify_line_record():
    code, out, _ = call("classify-line", "--field", "7", "--z", "0,0,1,0,0,1")
    d = json.loads(out)
    assert code == 0
    assert set(d) >= {"z", "plucker", "phi", "z5", "nature"}
    assert d["nature"] == {"generic": False, "meets_C": True, "in_osculating": False}
    assert d["plucker"] == [0, 0, 6, 0, 0, 0]


def test_classify_line_from_quartic():
    code, out, _ = call("classify-line", "--field", "13", "--quartic", "0,1/4,0,-1/4,0")
    d = json.loads(out)
    assert code == 0 and d["j"] == 1728 % 13 and d["J"] == 0


def test_domain_errors_exit_3():
    assert call("elliptic", "--field", "9", "--z", "1,0,0,0,0,1")[0] == 3
    assert call("elliptic", "--field", "7", "--z", "1,0,0,0,0,1")[0] == 3
    assert call("elliptic", "--field", "7", "--z", "0,0,1,0,0,1")[0] == 3
    assert call("census", "--field", "17")[0] == 3
    assert call("classify-point", "--field", "7", "--cubic", "1/0,0,0,1")[0] == 3


def test_usage_errors_exit_2():
    assert call("bogus")[0] == 2
    assert call("incidence", "--field", "7")[0] == 2
    assert call("incidence", "--field", "7", "--z", "1,2")[0] == 2
    assert call("incidence", "--field", "7", "--z", "a,b,c,d,e,f")[0] == 2
    assert call("incidence", "--field", "7", "--format", "xml", "--z", "0,0,1,0,0,1")[0] == 2


def test_tables_csv():
    code, out, _ = call("tables", "--field", "13", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    gen = {r["name"]: int(r["orbits"]) for r in rows if r["table"] == "generic"}
    assert gen == {"index_1": 4, "index_2": 12, "index_3": 2, "index_4": 5, "index_12": 1}


def test_tables_any_q():
    code, out, _ = call("tables", "--field", "101")
    d = json.loads(out)
    assert code == 0 and d["generic_orbits"] == 2 * 101 - 3 - 1


def test_census_outputs(tmp_path):
    report, table = tmp_path / "r.json", tmp_path / "t.csv"
    code, _, _ = call("census", "--field", "5", "--out", str(report), "--tables", str(table), "--threads", "1")
    assert code == 0
    d = json.loads(report.read_text())
    assert d["passed"] and d["generic_orbits"] == 6
    rows = list(csv.DictReader(table.open()))
    assert list(rows[0]) == ["orbit_id", "size", "generic", "factor_type", "j", "r",
                             "c1", "c2", "c3", "c4", "c5", "e_count"]
    assert len(rows) == 16


def test_verify_exit_0():
    code, out, _ = call("verify", "--field", "5", "--trials", "30", "--threads", "1")
    assert code == 0 and json.loads(out)["passed"]


def test_deterministic_output():
    a = call("census", "--field", "5", "--threads", "1", "--format", "csv")
    b = call("census", "--field", "5", "--threads", "1", "--format", "csv")
    assert a == b
