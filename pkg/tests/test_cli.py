import csv
import io
import json
from fractions import Fraction as F

import pytest

from nbtspoly import catalog as cat
from nbtspoly import correlations as cr
from nbtspoly import export
from nbtspoly.cli import EXIT_OK, EXIT_PARSE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_correlation(tmp_path, c, name="box.json"):
    path = tmp_path / name
    path.write_text(cr.dumps_correlation(c))
    return str(path)


# ---------------------------------------------------------------- vertices / facets

def test_vertices_definite_global(capsys):
    code, out, _ = run(capsys, "vertices", "definite-global")
    assert code == EXIT_OK
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert len(rows) == 22
    assert sum(r.startswith("det-") for r in rows) == 12
    assert "22 vertices, dimension 8" in out


def test_vertices_json_byte_stable(capsys):
    _, first, _ = run(capsys, "vertices", "alice-first", "--format", "json")
    _, second, _ = run(capsys, "vertices", "alice-first", "--format", "json")
    assert first == second
    doc = json.loads(first)
    assert doc["vertex_count"] == 20 and doc["dimension"] == 7
    assert all(isinstance(c, str) for v in doc["vertices"] for c in v["coords"])


def test_facets_table(capsys):
    code, out, _ = run(capsys, "facets", "definite-global")
    assert code == EXIT_OK
    assert "40 facets, 0 equalities, dimension 8" in out
    assert "x1 + x3 - x4 - x7 >= 0" in out


def test_vertices_output_file(capsys, tmp_path):
    dest = tmp_path / "dg.json"
    code, out, _ = run(capsys, "vertices", "definite-global", "--format", "json", "--output", str(dest))
    assert code == EXIT_OK and out == ""
    assert json.loads(dest.read_text())["vertex_count"] == 22


def test_json_round_trip_through_membership(capsys, tmp_path):
    dest = tmp_path / "af.json"
    run(capsys, "vertices", "alice-first", "--format", "json", "--output", str(dest))
    doc = json.loads(dest.read_text())
    for v in doc["vertices"]:
        target = "coords:" + ",".join(v["coords"])
        code, out, _ = run(capsys, "membership", target, "--polytope", str(dest), "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["inside"] is True


# ---------------------------------------------------------------- usage and parse errors

def test_missing_q_is_usage_error(capsys):
    code, _, err = run(capsys, "vertices", "set-q")
    assert code == EXIT_USAGE and "--q" in err


@pytest.mark.parametrize("q", ["2", "-1/3", "half"])
def test_bad_q_is_usage_error(capsys, q):
    assert run(capsys, "vertices", "set-q", f"--q={q}")[0] == EXIT_USAGE


def test_unknown_polytope_is_usage_error(capsys):
    code, _, err = run(capsys, "vertices", "dodecahedron")
    assert code == EXIT_USAGE and "unknown polytope" in err


def test_unknown_ordering_is_usage_error(capsys, tmp_path):
    path = write_correlation(tmp_path, cr.pr_box())
    assert run(capsys, "check", path, "--ordering", "sideways")[0] == EXIT_USAGE


def test_unparseable_file_is_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    doc = json.loads(cr.dumps_correlation(cr.pr_box()))
    doc["1,0"]["1,1"] = "2/3"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", str(path))
    assert code == EXIT_PARSE
    assert "x,y=1,0" in err
    path.write_text("{")
    assert run(capsys, "check", str(path))[0] == EXIT_PARSE


def test_missing_file_is_parse_error(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "nope.json"))[0] == EXIT_PARSE


def test_distinct_exit_codes():
    assert len({EXIT_OK, EXIT_USAGE, EXIT_PARSE, 1}) == 4


# ---------------------------------------------------------------- check / membership

def test_check_pr_box_simultaneous(capsys, tmp_path):
    path = write_correlation(tmp_path, cr.pr_box())
    code, out, _ = run(capsys, "check", path, "--ordering", "simultaneous")
    assert code == EXIT_OK and out.strip() == "simultaneous: pass"


def test_check_gyni_alice_first_lists_violation(capsys, tmp_path):
    path = write_correlation(tmp_path, cr.gyni_vertex(0, 0))
    code, out, _ = run(capsys, "check", path, "--ordering", "alice-first", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"] is False
    assert [(v["lhs"], v["rhs"]) for v in doc["violations"]] == [("1", "0")]


def test_membership_gyni_outside(capsys):
    code, out, _ = run(capsys, "membership", "gyni-00", "--polytope", "definite-global")
    assert code == EXIT_OK
    assert "outside (certificate verified)" in out
    assert "separating hyperplane" in out


def test_membership_gyni_json_certificate_checks_out(capsys):
    _, out, _ = run(capsys, "membership", "gyni-00", "--format", "json")
    doc = json.loads(out)
    h = doc["certificate"]["hyperplane"]
    from nbtspoly.geometry import Inequality
    ineq = Inequality(tuple(h["coefficients"]), h["bound"], h["relation"])
    assert ineq.slack(cr.to_coords(cr.gyni_vertex(0, 0))) < 0
    assert all(ineq.slack(v) >= 0 for v in cat.build(cat.DEFINITE_GLOBAL).vertices)


def test_membership_pr_box_inside_alice_first(capsys):
    _, out, _ = run(capsys, "membership", "pr-box", "--polytope", "alice-first", "--format", "json")
    doc = json.loads(out)
    assert doc["inside"] and doc["verified"]
    assert doc["certificate"]["weights"] == {"pr-000": "1"}


def test_membership_file_and_set_q(capsys, tmp_path):
    path = write_correlation(tmp_path, cr.uniform())
    code, out, _ = run(capsys, "membership", path, "--polytope", "set-q", "--q", "1/2")
    assert code == EXIT_OK and "inside" in out


def test_membership_signalling_target(capsys, tmp_path):
    sig = cr.Correlation.from_function(lambda a, b, x, y: int(a == x and b == y))
    path = write_correlation(tmp_path, sig)
    _, out, _ = run(capsys, "membership", path, "--format", "json")
    doc = json.loads(out)
    assert doc["inside"] is False
    assert doc["certificate"]["kind"] == "weak-nbts-violation"


def test_membership_bad_target(capsys):
    assert run(capsys, "membership", "gyni-2")[0] == EXIT_USAGE
    assert run(capsys, "membership", "coords:1,2")[0] == EXIT_PARSE


# ---------------------------------------------------------------- inequalities

def test_inequalities_novel(capsys):
    code, out, _ = run(capsys, "inequalities", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and len(doc) == 8
    assert {"coefficients": [0, 1, 0, 1, -1, 0, 0, -1], "bound": 0, "relation": ">="} in [
        {k: d[k] for k in ("coefficients", "bound", "relation")} for d in doc]


def test_inequalities_q(capsys):
    code, out, _ = run(capsys, "inequalities", "--q", "1/2")
    assert code == EXIT_OK
    assert "p_A(0|0) - p_A(0|1) <= 1/2" in out
    assert run(capsys, "inequalities", "--all-outcomes", "--format", "json")[0] == EXIT_OK


# ---------------------------------------------------------------- figure data

def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_figure_data_gyni_below_definite_global(capsys):
    code, out, _ = run(capsys, "figure-data", "--polytope", "nbts", "--polytope", "definite-global",
                       "--polytope", "set-q", "--q", "1/2",
                       "--projection", "0,1,0,1,-1,0,0,-1", "--projection", "1,-1,0,0,0,0,0,0")
    assert code == EXIT_OK
    rows = rows_of(out)
    gyni = [r for r in rows if r["vertex"].startswith("gyni-")]
    dg = [F(r["f0"]) for r in rows if r["polytope"] == "definite-global"]
    assert len(gyni) == 4
    # oracle: evaluate the functional on the GYNI coordinates directly
    f0 = lambda p: p[1] + p[3] - p[4] - p[7]
    assert {F(r["f0"]) for r in gyni} == {f0(cr.to_coords(lab.correlation())) for lab in cr.gyni_labels()}
    assert min(dg) == 0 == min(f0(v) for v in cat.build(cat.DEFINITE_GLOBAL).vertices)
    # this instance is violated by gyni-00 alone; the other GYNI vertices break other instances
    assert {r["vertex"]: F(r["f0"]) for r in gyni if F(r["f0"]) < min(dg)} == {"gyni-00": -1}
    assert len([r for r in rows if r["polytope"] == "set-q(q=1/2)"]) == 150


def test_figure_data_unit_square(capsys, tmp_path):
    square = tmp_path / "square.json"
    verts = [[a, "5", b, "7"] for a in ("0", "1") for b in ("0", "1")]
    square.write_text(json.dumps({"name": "square", "ambient_dim": 4,
                                  "vertices": [{"coords": v} for v in verts]}))
    code, out, _ = run(capsys, "figure-data", "--polytope", str(square), "--projection", "e0",
                       "--projection", "e2")
    assert code == EXIT_OK
    assert {(r["f0"], r["f1"]) for r in rows_of(out)} == {("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")}


def test_figure_data_set_q_one_matches_alice_first(capsys):
    _, out, _ = run(capsys, "figure-data", "--polytope", "set-q", "--polytope", "alice-first", "--q", "1",
                    "--projection", "e0", "--projection", "e4", "--projection", "1,1,1,1,1,1,1,1:-2")
    rows = rows_of(out)
    cols = lambda name: sorted((r["f0"], r["f1"], r["f2"]) for r in rows if r["polytope"].startswith(name))
    assert cols("set-q") == cols("alice-first")
    assert len(cols("alice-first")) == 20


def test_figure_data_decimal_columns_are_annotations(capsys):
    _, out, _ = run(capsys, "figure-data", "--polytope", "nbts", "--projection", "e0", "--projection", "1/3,0,0,0,0,0,0,0")
    for r in rows_of(out):
        assert abs(float(F(r["f1"])) - float(r["f1_approx"])) < 1e-6


@pytest.mark.parametrize("proj", [["e0"], ["e0", "e9"], ["e0", "1,2"], ["e0", "a,b,c,d,e,f,g,h"]])
def test_figure_data_bad_projection(capsys, proj):
    argv = ["figure-data", "--polytope", "nbts"]
    for p in proj:
        argv += ["--projection", p]
    assert run(capsys, *argv)[0] == EXIT_USAGE


# ---------------------------------------------------------------- export helpers

def test_parse_functional():
    f = export.parse_functional("1/2,0,-1:3", 3)
    assert f((2, 9, 1)) == F(3)
    assert export.parse_functional("e1", 3).coefficients == (0, 1, 0)
    with pytest.raises(ValueError):
        export.parse_functional("1,1:x", 2)


def test_load_polytope_errors():
    with pytest.raises(export.PolytopeFileError):
        export.load_polytope("[")
    with pytest.raises(export.PolytopeFileError, match="coordinates"):
        export.load_polytope(json.dumps({"ambient_dim": 2, "vertices": [{"coords": ["1"]}]}))
    with pytest.raises(export.PolytopeFileError):
        export.load_polytope(json.dumps({"vertices": []}))


def test_polytope_json_reloads():
    p = cat.build(cat.DEFINITE_GLOBAL)
    loaded = export.load_polytope(export.dumps(export.polytope_json(p)))
    assert set(loaded.vertices) == set(p.vertices)
    assert dict(loaded.labelled()) == dict(p.labelled())


# ---------------------------------------------------------------- report

@pytest.mark.slow
def test_report_deterministic_and_passing(capsys):
    code1, first, _ = run(capsys, "report", "--instances", "10")
    code2, second, _ = run(capsys, "report", "--instances", "10")
    assert code1 == code2 == EXIT_OK
    assert first == second
    assert "9/9 criteria passed" in first
