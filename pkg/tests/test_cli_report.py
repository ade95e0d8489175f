import json

import pytest

from resgraph.cli import main
from resgraph.report import classify_report, dumps, quotient_report, rational_str

from graphs import e6_triple, E8, ding_graph, chain_with_leaf, nonlt_star


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rational_str():
    assert rational_str(0) == "0/1"
    assert rational_str(-2) == "-2/1"


def test_classify_report_fields():
    rep = classify_report(chain_with_leaf())
    assert rep["schema_version"] == 1
    assert rep["rational"] is True and rep["p_f"] == 0
    assert rep["fundamental_cycle"] == {"c1": 1, "c2": 1, "c3": 2, "c4": 1, "l": 1}
    assert rep["trace_cycle"]["c2"] == 2
    assert rep["e"] == 4 and rep["nearly_gorenstein"] is False
    assert rep["trace_colength"] == 2 and rep["trace_is_ulrich"] is False
    assert rep["criteria"] == {"F_equals_Zf": False, "K_plus_Zf_anti_nef": False,
                               "numeric": False}
    assert rep["errors"] == []
    json.loads(dumps(rep))


def test_classify_report_gorenstein_quotient():
    rep = classify_report(E8())
    q = rep["quotient"]
    assert rep["gorenstein"] and rep["ade_pattern"] == "E8"
    assert q["log_terminal"] and q["ding_item"] is None and q["end_curve_colength"] is None
    assert rep["errors"] == []


def test_quotient_report():
    rep = quotient_report(ding_graph(5))
    assert rep["ding_item"] == "5" and rep["previously_missing"] is True
    assert rep["pd_divisor"]["display"] == "1/2 P_1 + 2/3 P_2 - 1/4 P_3"
    assert rep["pd_divisor"]["degree"] == "11/12"
    assert rep["end_curve_colength"] == 1
    rep = quotient_report(nonlt_star(5))
    assert rep["log_terminal"] is False and rep["ding_item"] is None


def test_non_rational_report_records_error():
    from resgraph.graph import star_graph

    rep = classify_report(star_graph(2, [[3]] * 5))
    assert rep["rational"] is False and rep["p_f"] == 2
    assert rep["nearly_gorenstein"] is None
    assert [e["code"] for e in rep["errors"]] == ["NotRational"]


def test_cli_check_and_classify(capsys, graph_file):
    path = graph_file("star -2 : [-2, -3] [-2, -2] [-2]\n")
    code, out, _ = run(capsys, "check", path)
    assert code == 0 and "6 vertices" in out
    code, out, _ = run(capsys, "classify", path)
    assert code == 0 and "E6" in out
    code, out, _ = run(capsys, "classify", "--json", path)
    rep = json.loads(out)
    assert code == 0 and rep["structural_case"] == "4b" and rep["ade_pattern"] == "E6"


def test_cli_quotient(capsys, graph_file):
    path = graph_file("star -2 : [-2] [-3] [-4]\n")
    code, out, _ = run(capsys, "quotient", path)
    assert code == 0 and "1/2 P_1 + 2/3 P_2 - 1/4 P_3" in out
    code, out, _ = run(capsys, "quotient", "--json", path)
    assert json.loads(out)["ding_item"] == "5"


def test_cli_input_errors(capsys, graph_file, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "missing.txt"))
    assert code == 2 and "OutOfRange" in err
    path = graph_file("vertex a -2\nedge a b\n")
    code, out, _ = run(capsys, "classify", "--json", path)
    rep = json.loads(out)
    assert code == 2
    assert rep["error"]["code"] == "UnknownEndpoint"
    assert (rep["error"]["line"], rep["error"]["col"]) == (2, 8)


def test_cli_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-vertices", "4", "--max-weight", "2")
    assert code == 0 and "graphs" in out
    code, out, _ = run(capsys, "enumerate", "--max-vertices", "3", "--max-weight", "3",
                       "--predicate", "nearly_gorenstein", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["rows"] and all(r["nearly_gorenstein"] for r in rep["rows"])
    code, _, err = run(capsys, "enumerate", "--max-vertices", "12", "--max-weight", "2")
    assert code == 2 and "CapExceeded" in err


def test_cli_reproduce_small(capsys):
    code, out, _ = run(capsys, "reproduce", "arng", "--max-vertices", "5",
                       "--max-weight", "3", "--json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "reproduce", "ding", "--k-max", "1", "--s-max", "4")
    assert code == 0 and "match" in out


def test_cli_from_pd(capsys):
    code, out, _ = run(capsys, "from-pd", "--center", "2", "--branch", "2/1",
                       "--branch", "3/1", "--branch", "4/1")
    assert code == 0
    assert out.splitlines()[0] == "star -2 : [-2] [-3] [-4]"
    assert "deg D = 11/12" in out
    code, _, err = run(capsys, "from-pd", "--center", "1", "--branch", "2/1",
                       "--branch", "2/1", "--branch", "3/1")
    assert code == 2 and "DegreeNotPositive" in err
    code, out, _ = run(capsys, "from-pd", "--center", "2", "--branch", "5/3", "--json")
    assert code == 0 and json.loads(out)["rational"] is True


def test_classify_d0_report_matches_cli(capsys, graph_file):
    from resgraph.dsl import emit

    path = graph_file(emit(e6_triple()))
    code, out, _ = run(capsys, "classify", "--json", path)
    assert json.loads(out) == json.loads(dumps(classify_report(e6_triple())))
