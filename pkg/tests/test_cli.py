import json
import re

import pytest

from lojbound.cli import EXIT_DEGENERATE, EXIT_OK, EXIT_UNSUPPORTED, run

JDUAL = "(z1^9+z2^3+z3^6)*z2+z3^7+z4^7"
FAST = ["--nd-starts", "16", "--nd-iters", "120", "--budget", "150"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_brieskorn(capsys):
    code, out, _ = call(capsys, "bound", "z1^3+z2^7", *FAST)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "upper=6 exact path=convenient-B-minus-1"


def test_fan_lists_jdual_vertices(capsys):
    code, out, _ = call(capsys, "fan", JDUAL)
    assert code == EXIT_OK
    assert "(7,21,12,12) strictly-positive" in out
    assert re.search(r"\(0,7,1,1\) vanishing .*I=\{1\}", out)


def test_fan_jacobian_switch(capsys):
    code, out, _ = call(capsys, "fan", JDUAL, "--jacobian", "--json")
    data = json.loads(out)
    regions = {tuple(v["weight"]): v.get("region") for v in data["vertices"]}
    assert regions[(2, 6, 3, 3)] == "vanishing-boundary"
    assert data["vjpp"] == [[2, 6, 3, 3]]


def test_syntax_error_exit(capsys):
    code, _, err = call(capsys, "bound", "z1 + ")
    assert code == EXIT_UNSUPPORTED
    assert "position 4" in err


def test_degenerate_exit(capsys):
    code, out, _ = call(capsys, "check", "(z1+z2)^2", "--seed", "1", *FAST)
    assert code == EXIT_DEGENERATE
    assert "degenerate-witness" in out
    code, _, err = call(capsys, "bound", "(z1+z2)^2", *FAST)
    assert code == EXIT_DEGENERATE and "degenerate" in err


def test_verify_and_check_need_a_seed(capsys):
    assert call(capsys, "verify", "z1^2+z2^2")[0] == EXIT_UNSUPPORTED
    assert call(capsys, "check", "z1^2+z2^2")[0] == EXIT_UNSUPPORTED


def test_unsupported_input(capsys):
    code, _, err = call(capsys, "bound", "z1^2*z2^2 + z1^5 + z3^3", *FAST)
    assert code == EXIT_UNSUPPORTED and "unsupported" in err


def test_both_or_no_input_source(capsys, tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("z1^2\n")
    assert call(capsys, "bound", "z1^2", "--file", str(p))[0] == EXIT_UNSUPPORTED
    assert call(capsys, "bound")[0] == EXIT_UNSUPPORTED


def test_file_input_with_comments(capsys, tmp_path):
    p = tmp_path / "germ.txt"
    p.write_text("# Brieskorn germ\nz1^3 +   # first part\n  z2^7\n")
    code, out, _ = call(capsys, "bound", "--file", str(p), *FAST)
    assert code == EXIT_OK and out.startswith("upper=6 exact")


def test_bad_flag_uses_the_error_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["bound", "z1^2", "--nope"])
    assert exc.value.code == EXIT_UNSUPPORTED


@pytest.mark.parametrize("verb", ["verify", "analyze", "check"])
def test_json_is_byte_identical(capsys, verb):
    argv = [verb, "z1^2*z2+z2^3*z3+z3^4*z1+z4^2", "--seed", "5", "--json", *FAST]
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv)
    assert a == b
    json.loads(a)


def test_human_values_appear_in_json(capsys):
    argv = ["analyze", JDUAL, "--seed", "2", *FAST]
    _, human, _ = call(capsys, *argv)
    _, js, _ = call(capsys, *argv, "--json")
    data = json.loads(js)
    flat = json.dumps(data)
    for rational in re.findall(r"(?<![\w(,])(\d+/\d+|\d+)(?![\w,)])", " ".join(
            ln for ln in human.splitlines() if ln.startswith(("eta", "  eta", "upper")))):
        assert f'"{rational}"' in flat or rational in flat
    vertex_lines = [ln for ln in human.splitlines() if ln.startswith("  (")]
    assert vertex_lines
    for w in re.findall(r"^  \((\d+(?:,\d+)+)\)", "\n".join(vertex_lines), re.M):
        assert "[" + ", ".join(w.split(",")) + "]" in flat
    assert data["sheet"]["eta_dprime"] == "11"
    assert data["bound"]["upper"] == "11"


def test_analyze_reports_degeneracy(capsys):
    code, out, _ = call(capsys, "analyze", "(z1+z2)^2", "--seed", "1", *FAST)
    assert code == EXIT_DEGENERATE
    assert "face: degenerate-witness" in out
