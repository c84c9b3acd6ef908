import json
import subprocess
import sys

import pytest

from homnambu.cli import CORPUS, build_example, builtin_corpus, main
from homnambu.fileformat import FileFormatError, dumps, loads


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def example(tmp_path, name, *sets, seed=0):
    out = str(tmp_path / f"{name}.json")
    args = ["example", name, "-o", out, "--seed", str(seed)]
    for s in sets:
        args += ["--set", s]
    assert main(args) == 0
    return out


# -- file format ----------------------------------------------------------------


@pytest.mark.parametrize("spec", CORPUS, ids=lambda s: f"{s[0]}{s[1] or ''}{s[2]}")
def test_round_trip_builtin_corpus(spec):
    f = build_example(*spec)
    text = dumps(f)
    g = loads(text)
    assert dumps(g) == text
    assert g.bracket == f.bracket and g.maps == f.maps and g.twists == f.twists
    assert g.traces == f.traces and g.forms == f.forms and g.vectors == f.vectors
    assert g.space == f.space and g.params == f.params


def test_corpus_is_deterministic():
    assert [dumps(f) for f in builtin_corpus()] == [dumps(f) for f in builtin_corpus()]


def test_scalars_are_strings():
    d = json.loads(dumps(build_example("worked", {"b": "1/2"})))
    assert d["format"] == "homnambu/1"
    assert d["bracket"]["entries"]["1,2"] == {"x3": "1", "x4": "1/2"}
    assert d["parameters"] == ["c", "delta1", "delta2"]


BASE = '{"format": "homnambu/1", "dimension": 2, %s}'


@pytest.mark.parametrize("body, where", [
    ('"bracket": {"arity": 2, "entries": {"2,1": {"x1": "1"}}}', "bracket.entries['2,1']"),
    ('"bracket": {"arity": 2, "entries": {"1,3": {"x1": "1"}}}', "bracket.entries['1,3']"),
    ('"bracket": {"arity": 2, "entries": {"1,2": {"x9": "1"}}}', "bracket.entries['1,2'].x9"),
    ('"bracket": {"arity": 2, "entries": {"1,2": {"x1": 1}}}', "bracket.entries['1,2'].x1"),
    ('"maps": {"a": [["1", "0"], ["0", "1/0"]]}', "maps.a[1][1]"),
    ('"maps": {"a": [["1", "0"]]}', "maps.a"),
    ('"twists": ["nope"]', "twists[0]"),
    ('"traces": {"t": {"x1": "b"}}', "traces.t.x1"),
])
def test_malformed_files_report_location(body, where):
    with pytest.raises(FileFormatError) as err:
        loads(BASE % body)
    assert err.value.where == where


def test_bad_header_and_json():
    with pytest.raises(FileFormatError, match="format"):
        loads('{"format": "other"}')
    with pytest.raises(FileFormatError, match="line 1"):
        loads('{"format": ')
    with pytest.raises(FileFormatError, match="twists"):
        loads(BASE % '"bracket": {"arity": 3, "entries": {}}, "maps": {"a": [["1", "0"], ["0", "1"]]}, '
                     '"twists": ["a"]')
    untwisted = loads(BASE % '"bracket": {"arity": 3, "entries": {}}')
    with pytest.raises(FileFormatError, match="needs 2 twists"):
        untwisted.algebra()


# -- commands -------------------------------------------------------------------


def test_verify_worked_example_passes(tmp_path, capsys):
    f = example(tmp_path, "worked")
    assert main(["verify", f, "hnj"]) == 0
    assert "HNJ: PASS" in capsys.readouterr().out
    assert main(["verify", f, "trace", "--trace", "tau"]) == 0
    assert main(["verify", f, "skew"]) == 0
    assert main(["verify", f, "abelian"]) == 1


def test_verify_random_table_fails_with_witness(tmp_path, capsys):
    text = json.dumps({
        "format": "homnambu/1", "dimension": 3,
        "bracket": {"arity": 2, "entries": {"1,2": {"x1": "1"}, "1,3": {"x2": "1"},
                                            "2,3": {"x1": "1", "x2": "1"}}}})
    f = write(tmp_path, "r.json", text)
    assert main(["verify", f, "fi"]) == 1
    assert "FI defect at x=(x1), y=(x2,x3)" in capsys.readouterr().out
    assert main(["verify", f, "fi", "--first", "--format", "machine"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] is False and len(out["violations"]) == 1
    assert out["violations"][0]["where"]["x"] == ["x1"]


def test_verify_missing_file_exit_2(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "none.json"), "hnj"]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_needs_named_trace_when_ambiguous(tmp_path, capsys):
    f = example(tmp_path, "worked")
    assert main(["verify", f, "trace"]) == 2
    assert "name one explicitly" in capsys.readouterr().err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify"])
    assert err.value.code == 2


def test_induce_worked_example_two_steps(tmp_path, capsys):
    f = example(tmp_path, "worked")
    s1 = str(tmp_path / "s1.json")
    assert main(["induce", f, "--trace", "tau", "--alpha", "alpha2", "--verify", "-o", s1]) == 0
    d = json.loads(open(s1).read())
    assert d["bracket"]["arity"] == 3 and len(d["bracket"]["entries"]) == 4
    assert d["bracket"]["entries"]["1,3,4"] == {"x3": "-1", "x4": "-c"}
    assert d["twists"] == ["alpha1", "alpha2"]
    assert any("HNJ: PASS" in line for line in d["comment"])
    s2 = str(tmp_path / "s2.json")
    assert main(["induce", s1, "--trace", "rho", "--alpha", "alpha1", "-o", s2]) == 0
    d = json.loads(open(s2).read())
    assert d["bracket"]["entries"] == {"1,2,3,4": {"x3": "delta1 - delta2", "x4": "c*delta1 - c*delta2"}}


def test_induce_incompatible_alpha_exit_1(tmp_path, capsys):
    f = example(tmp_path, "rank-one-c1", "dim=3", seed=2)
    g = json.loads(open(f).read())
    g["maps"]["bad"] = [["1" if i == j else "0" for j in range(3)] for i in range(3)]
    f2 = write(tmp_path, "bad.json", json.dumps(g))
    assert main(["induce", f2, "--alpha", "bad"]) == 1
    out = capsys.readouterr()
    assert "compatibility relations fail" in out.out and "compat defect at" in out.out


def test_reduce_and_verify(tmp_path, capsys):
    text = json.dumps({
        "format": "homnambu/1", "dimension": 4,
        "bracket": {"arity": 4, "entries": {"1,2,3,4": {"x4": "1"}}},
        "maps": {"id": [["1" if i == j else "0" for j in range(4)] for i in range(4)]},
        "twists": ["id", "id", "id"], "vectors": {"a": {"x4": "1"}, "b": {"x1": "1"}}})
    f = write(tmp_path, "four.json", text)
    out = str(tmp_path / "three.json")
    assert main(["reduce", f, "--fix", "a", "--verify", "-o", out]) == 0
    d = json.loads(open(out).read())
    assert d["bracket"]["entries"] == {"1,2,3": {"x4": "1"}} and d["twists"] == ["id", "id"]
    assert main(["verify", out, "fi"]) == 0
    assert main(["reduce", f, "--fix", "a,b,a,b"]) == 2


def test_reduce_fixed_point_failure(tmp_path, capsys):
    s1 = example(tmp_path, "worked-step1")
    g = json.loads(open(s1).read())
    g["vectors"] = {"v": {"x1": "1"}}
    f = write(tmp_path, "v.json", json.dumps(g))
    assert main(["reduce", f, "--fix", "v"]) == 1
    assert "fixed-point" in capsys.readouterr().out


def test_wedge_demo(tmp_path, capsys):
    f = example(tmp_path, "wedge-demo")
    out = str(tmp_path / "w.json")
    assert main(["wedge", f, "--form", "omega", "-o", out]) == 0
    d = json.loads(open(out).read())
    assert d["bracket"] == {"arity": 4, "entries": {"1,2,3,4": {"x4": "1"}}}
    assert d["twists"] == ["id", "id", "id"]
    assert main(["verify", out, "fi"]) == 0
    assert main(["verify", f, "wedge-hyp", "--form", "omega"]) == 0
    assert main(["verify", f, "pform-compat", "--form", "omega"]) == 0


def test_classify(tmp_path, capsys):
    f = example(tmp_path, "worked")
    assert main(["classify", f, "--trace", "tau", "--alpha", "alpha1", "alpha2"]) == 0
    assert capsys.readouterr().out.startswith("C2 ")
    c1 = example(tmp_path, "rank-one-c1")
    assert main(["classify", c1, "--format", "machine", "--alpha", "alpha1", "alpha2"]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == "C1"
    g = json.loads(open(f).read())
    g["maps"]["id"] = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    f2 = write(tmp_path, "inc.json", json.dumps(g))
    assert main(["classify", f2, "--trace", "tau", "--alpha", "id"]) == 1
    assert capsys.readouterr().out.startswith("Incompatible")


def test_example_bindings(tmp_path, capsys):
    assert main(["example", "worked", "--set", "b=2", "--set", "c=-1/3"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["scalars"] == "polynomial" and d["parameters"] == ["delta1", "delta2"]
    assert main(["example", "worked", "--set", "q=1"]) == 2
    assert main(["example", "simple-nlie", "--set", "arity"]) == 2


def test_jobs_flag_output_stable(tmp_path, capsys):
    f = example(tmp_path, "random-c2", "arity=3", seed=5)
    main(["verify", f, "hnj", "--format", "machine"])
    one = capsys.readouterr().out
    main(["verify", f, "hnj", "--format", "machine", "--jobs", "2"])
    assert capsys.readouterr().out == one


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "homnambu", "example", "simple-nlie"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    f = write(tmp_path, "s.json", res.stdout)
    res = subprocess.run([sys.executable, "-m", "homnambu", "verify", f, "gji"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "GJI: PASS" in res.stdout
