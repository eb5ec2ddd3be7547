import json
from importlib import resources
from pathlib import Path

import pytest
from click.testing import CliRunner

from markov_choice.cli import cli_run, main
from markov_choice.io import load_model

DATA = resources.files("markov_choice") / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def _same(got, want, path="$"):
    """Structural equality with floats compared to 1e-12."""
    if isinstance(want, float):
        assert got == pytest.approx(want, abs=1e-12), path
    elif isinstance(want, dict):
        assert list(got) == list(want), path
        for k in want:
            _same(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert len(got) == len(want), path
        for n, (g, w) in enumerate(zip(got, want)):
            _same(g, w, f"{path}[{n}]")
    else:
        assert got == want, path


@pytest.mark.parametrize("name", ["star", "circulating", "bottleneck"])
def test_classify_golden(name):
    res = run("classify", "--data", DATA / f"{name}_data.json", "--menu", "i,j,k,l", "--format", "json")
    assert res.exit_code == 0
    _same(json.loads(res.output), json.loads((GOLDEN / f"classify_{name}.json").read_text()))


def test_classify_text():
    res = run("classify", "--data", DATA / "circulating_data.json", "--menu", "i,j,k,l")
    assert res.exit_code == 0 and "fully" in res.output and "positive cycle" in res.output


def test_classify_all_menus():
    res = run("classify", "--data", DATA / "star_data.json", "--all-menus", "--format", "json")
    assert res.exit_code == 0 and len(json.loads(res.output)["reports"]) == 1


def test_classify_needs_one_menu_option():
    assert run("classify", "--data", DATA / "star_data.json").exit_code == 2


def test_validate():
    assert run("validate", DATA / "star_data.json").exit_code == 0
    assert run("validate", DATA / "bottleneck_chain.json").exit_code == 0


def test_validate_bad_file(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"universe": ["i", "j"],
                             "menus": [{"members": ["i", "j"], "probabilities": ["1.2", "0"]}]}))
    res = run("validate", p)
    assert res.exit_code == 2 and "$.menus[0].probabilities[0]" in res.output


def test_generate_limit():
    res = run("generate", "--model", DATA / "circulating_chain.json", "--menu", "i,j,k,l", "--limit",
              "--format", "json")
    assert res.exit_code == 0
    assert json.loads(res.output)["rho"] == pytest.approx([0.25, 0.28, 0.2, 0.27], abs=1e-10)


def test_generate_alpha_with_pi():
    res = run("generate", "--model", DATA / "star_chain.json", "--menu", "i,j,k,l", "--alpha", "0.5",
              "--pi", "0,0,1,0", "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["rho"] == pytest.approx([0, 0, 1, 0])


def test_generate_requires_mode():
    assert run("generate", "--model", DATA / "star_chain.json", "--menu", "i,j,k,l").exit_code == 2


def test_rationalize_writes_model(tmp_path):
    out = tmp_path / "m.json"
    res = run("rationalize", "--data", DATA / "bottleneck_data.json", "--menu", "i,j,k,l",
              "--class", "irreducible", "--output", out)
    assert res.exit_code == 0
    assert load_model(out).block("i,j,k,l").q("j", "l") == 0


def test_rationalize_infeasible():
    res = run("rationalize", "--data", DATA / "star_data.json", "--menu", "i,j,k,l",
              "--class", "irreducible", "--format", "json")
    assert res.exit_code == 1
    doc = json.loads(res.output)
    assert doc["rationalizable"] is False and all("k" in p for p in doc["witness"])


def test_rationalize_certificate():
    res = run("rationalize", "--data", DATA / "bottleneck_data.json", "--menu", "i,j,k,l",
              "--class", "pairwise", "--format", "json")
    assert res.exit_code == 1
    assert json.loads(res.output)["certificate"]["certificate"]["kind"] == "stiemke"


def test_restrict_star():
    res = run("restrict", "--model", DATA / "star_chain.json", "--menu", "i,j,k,l", "--zero", "i,l")
    assert res.exit_code == 0 and "0.2" in res.output


def test_restrict_weak():
    res = run("restrict", "--model", DATA / "star_chain.json", "--menu", "i,j,k,l",
              "--weak", "i,l=0;i,j=2", "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["unchanged"] is True


def test_restrict_invalid():
    res = run("restrict", "--model", DATA / "bottleneck_chain.json", "--menu", "i,j,k,l", "--zero", "i,l")
    assert res.exit_code == 1


def test_decoy_pattern_error():
    # the reference chains have no triple with a one-way target
    res = run("decoy", "--model", DATA / "star_chain.json", "--triple", "i,j,k")
    assert res.exit_code == 2


def test_nudge():
    res = run("nudge", "--model", DATA / "circulating_chain.json", "--menu", "i,j,k,l",
              "--alpha", "0.5", "--target", "i", "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["strict_maximum"] is True


def test_unknown_flag():
    assert cli_run(["classify", "--bogus"]) == 2


def test_missing_file():
    assert cli_run(["validate", "/nonexistent/x.json"]) == 2


def test_cli_run_success(capsys):
    assert cli_run(["validate", str(DATA / "circulating_data.json")]) == 0
