import json
import subprocess
import sys

import pytest

from motzeta import GrElement, StratumSymbol, bundled, count_contact_loci, render, zeta_equivariant, zeta_naive
from motzeta.cli import main, run
from motzeta.render import (
    gr_from_json,
    jetcounts_from_json,
    series_from_json,
    series_latex,
)
from motzeta.resolution import BUNDLED, resolution_to_dict


def test_render_gr_element():
    s = GrElement.from_symbol(StratumSymbol.equivariant([1], 1), 2)
    assert render(s) == "2*E~{1}[m=1]"
    assert render(s, "latex") == r"2[\widetilde{E}^{o}_{1}]"
    assert gr_from_json(render(s, "json")) == s


@pytest.mark.parametrize("name", BUNDLED)
def test_series_json_round_trip(name):
    for series in (zeta_equivariant(bundled(name)), zeta_naive(bundled(name))):
        data = json.loads(json.dumps(render(series, "json")))
        assert series_from_json(data) == series


def test_series_text_shape(xy):
    assert render(zeta_naive(xy)).endswith("/ (1 - L^-1 T)^2")


def test_series_latex(smooth):
    assert series_latex(zeta_equivariant(smooth)) == (
        r"\frac{\mathbb{L}^{-1}[\widetilde{E}^{o}_{1}]T}{\left(1 - \mathbb{L}^{-1}T\right)}")


def test_jetcounts_rendering():
    c = count_contact_loci("x*y", 3, 1)
    table = render(c)
    assert table.splitlines()[1].split()[:4] == ["3", "1", "24", "12"]
    assert jetcounts_from_json(json.loads(json.dumps(render(c, "json")))) == c
    assert "tabular" in render(c, "latex")


def test_render_rejects_unknown():
    with pytest.raises(ValueError):
        render(GrElement(), "yaml")
    with pytest.raises(TypeError):
        render(3)


def test_check_xy_exit_zero():
    code, out = run(["check", "xy", "--order", "12"])
    assert code == 0 and out.endswith("all checks passed")


def test_check_is_deterministic():
    assert run(["check", "cusp"]) == run(["check", "cusp"])


def test_zeta_latex():
    code, out = run(["zeta", "cusp.json", "--equivariant", "--format", "latex"])
    assert code == 0 and out.startswith(r"\frac{")


def test_zeta_json_round_trips():
    code, out = run(["zeta", "xy", "--naive", "--format", "json", "--D", "4"])
    assert code == 0
    data = json.loads(out)
    assert series_from_json(data) == zeta_naive(bundled("xy"))
    assert len(data["coefficients"]) == 5


def test_crosscheck_cusp():
    code, out = run(["crosscheck", "--res", "cusp.json", "--f", "x^2+y^3", "--q", "5", "--D", "4"])
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:6]]
    assert [r[0] for r in rows] == ["1", "2", "3", "4"] and all(r[-1] == "ok" for r in rows)


def test_crosscheck_failure_exit_one():
    code, out = run(["crosscheck", "--res", "xy", "--f", "x^2*y", "--q", "3", "--D", "2"])
    assert code == 1 and "counterexample: dataset xy, q=3, d=1" in out


def test_other_verbs():
    for argv in (["volume", "xy", "--mu", "1=0,2=0"], ["serre", "cusp"], ["nearby", "cusp", "--format", "json"],
                 ["blowup", "xy", "--center", "1,2", "--format", "json"],
                 ["jets", "--f", "x*y", "--q", "3", "--d", "1", "--format", "json"]):
        code, out = run(argv)
        assert code == 0 and out, argv
    data = json.loads(run(["blowup", "xy", "--center", "1,2", "--format", "json"])[1])
    assert sorted(tuple(s["J"]) for s in data["strata"]) == [(0,), (0, 1), (0, 2), (1,), (2,)]


def test_usage_errors_exit_two():
    assert run(["zeta"])[0] == 2
    assert run(["jets", "--f", "x", "--q", "4"])[0] == 2
    assert run(["volume", "xy", "--mu", "1:0"])[0] == 2
    assert run(["blowup", "xy", "--center", "1"])[0] == 2
    assert run(["jets", "--f", "x*y", "--q", "5", "--d", "6", "--guard", "100"])[0] == 2


def test_invalid_dataset_prints_diagnostics(tmp_path, capsys):
    data = resolution_to_dict(bundled("cusp"))
    for s in data["strata"]:
        if s["J"] == [1, 3]:
            s["eq_class"] = "E~{1,3}[m=5]"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["check", str(path)]) == 2
    err = capsys.readouterr().err
    assert "LabelMismatch" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motzeta.cli", "nearby", "smooth"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("S_f = E~{1}[m=1]")
