import json
import subprocess
import sys

import pytest

from kspace import corpus
from kspace.cli import cmd_table1, cmd_verify, main, split_elements
from kspace.corpus import CorpusConfig, run_verify
from kspace.spectra import Check, ItemResult, SuiteReport

from conftest import GOLDEN


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_split_elements():
    assert split_elements("1;3") == ["1", "3"]
    assert split_elements("x+1, (x+1)*(x,1)") == ["x+1", "(x+1)*(x,1)"]
    assert split_elements(" ; ") == []


def test_table1_golden():
    assert cmd_table1("Z4") == (GOLDEN / "table1_Z4.txt").read_text(encoding="utf-8")
    assert cmd_table1("Z4", "json") == (GOLDEN / "table1_Z4.json").read_text(encoding="utf-8")


def test_table1_subcommand(capsys, tmp_path):
    status, out, _ = run(capsys, "table1")
    assert status == 0 and out == cmd_table1("Z4")
    target = tmp_path / "t.json"
    assert main(["table1", "--ring", "Z3", "--format", "json", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["ring"] == "Z3"


def test_table1_too_large(capsys):
    status, _, err = run(capsys, "table1", "--ring", "Z9")
    assert status == 2 and "kspace: error" in err


def test_verify_restricted(capsys):
    status, out, _ = run(capsys, "verify", "--ring", "Z6", "--check", "connectedness",
                         "--format", "text")
    assert status == 0
    assert out.splitlines()[0] == "Z6: connectedness=pass"
    status, out, _ = run(capsys, "verify", "--ring", "Z6", "--check", "zariski")
    report = json.loads(out)
    assert status == 0 and report["checks"] == ["zariski"]
    suite = report["rings"][0]["suites"]["zariski"]
    connected = [i for i in suite["items"] if i["item"] == "connected"][0]
    assert connected["checks"][0]["observed"] == {"connected": False,
                                                  "nontrivial_idempotents": ["3", "4"]}


def test_verify_config_file(capsys, tmp_path):
    cfg = tmp_path / "corpus.json"
    cfg.write_text(json.dumps({"rings": ["Z4", "Z2"], "checks": ["prop22", "morphisms"],
                               "homs": [{"source": "Z4", "target": "Z2"}],
                               "localizations": [{"ring": "Z4", "S": ["1", "3"]}]}))
    status, out, _ = run(capsys, "verify", "--config", str(cfg))
    report = json.loads(out)
    assert status == 0
    assert [r["ring"] for r in report["rings"]] == ["Z4", "Z2"]
    assert len(report["homomorphisms"]) == 1 and len(report["localizations"]) == 1


def test_verify_bad_config(capsys, tmp_path):
    cfg = tmp_path / "corpus.json"
    cfg.write_text(json.dumps({"rings": ["Z4"], "colour": "red"}))
    status, _, err = run(capsys, "verify", "--config", str(cfg))
    assert status == 2 and "colour" in err


def test_verify_exit_two_on_cap(capsys):
    status, out, _ = run(capsys, "verify", "--ring", "Z12", "--check", "topology",
                         "--caps", "max_ring_size=8")
    report = json.loads(out)
    assert status == 2
    assert report["summary"]["errors"][0]["error"] == "ResourceLimitError"


def test_verify_exit_two_on_bad_localization():
    cfg = CorpusConfig(rings=["Z6"], homs=[], checks=["morphisms"],
                       localizations=[{"ring": "Z6", "S": ["0", "1"]}])
    status, report = run_verify(cfg)
    assert status == 2 and report["summary"]["errors"][0]["error"] == "DomainError"


def test_verify_exit_one_on_failure(monkeypatch):
    def failing(ring, caps):
        return SuiteReport(ring.label, "stub", [ItemResult("x", "stub", [Check("no", False, 1)])])

    monkeypatch.setitem(corpus._SUITES, "topology", failing)
    status, report = run_verify(CorpusConfig(rings=["Z2"], checks=["topology"]))
    assert status == 1 and report["summary"]["failures"] == ["Z2:topology"]
    assert "failed: Z2:topology" in corpus.render_summary(report)


def test_verify_deterministic():
    cfg = lambda: CorpusConfig(rings=["Z4", "Z6", "Z2xZ2"])  # noqa: E731
    assert cmd_verify(cfg()) == cmd_verify(cfg())


def test_bad_ring_spec(capsys):
    status, _, err = run(capsys, "spectrum", "--ring", "Z4[x/(x^2)")
    assert status == 2 and err.startswith("kspace: error")


def test_export_idl_lattice_diamond(capsys):
    status, out, _ = run(capsys, "export", "idl-lattice", "--ring", "Z6")
    assert status == 0
    assert [l.strip() for l in out.splitlines() if "->" in l] == \
        ["n0 -> n1;", "n0 -> n2;", "n1 -> n3;", "n2 -> n3;"]
    status, out, _ = run(capsys, "export", "idl-lattice", "--ring", "Z6", "--format", "json")
    assert json.loads(out)["ideals"] == ["(0)", "(3)", "(2)", "Z6"]


def test_export_specialization(capsys):
    _, out, _ = run(capsys, "export", "specialization", "--ring", "Z4")
    assert 'n0 [label="(0)"];' in out and "n0 -> n1;" in out
    _, out, _ = run(capsys, "export", "specialization", "--ring", "Z5")
    assert 'n0 [label="(0)"];' in out and "->" not in out.split("label=")[-1]
    _, out, _ = run(capsys, "export", "specialization", "--ring", "Z4", "--format", "json")
    assert json.loads(out)["pairs"] == [[0, 1]]


@pytest.mark.parametrize("what", ["spi-topology", "spec-topology"])
def test_export_topologies(capsys, what):
    status, out, _ = run(capsys, "export", what, "--ring", "Z12")
    assert status == 0 and json.loads(out)


def test_spectrum(capsys):
    status, out, _ = run(capsys, "spectrum", "--ring", "Z12")
    assert status == 0
    assert "  Spi: (0), (6), (4), (3), (2)" in out
    status, out, _ = run(capsys, "spectrum", "--ring", "Z6", "--flavor", "Spec", "--format", "json")
    data = json.loads(out)
    assert data["families"]["Spec"] == ["(3)", "(2)"] and "space" in data


def test_hom(capsys):
    status, out, _ = run(capsys, "hom", "--source", "Z4", "--target", "Z2")
    assert status == 0 and out.startswith("Z4 -> Z2: kernel (2), surjective=True")
    status, out, _ = run(capsys, "hom", "--source", "Z2[x]/(x^2+x+1)",
                         "--target", "Z2[x]/(x^2+x+1)", "--images", "x+1", "--format", "json")
    assert status == 0 and json.loads(out)[0]["hom"]["map"]["x"] == "x+1"
    status, _, err = run(capsys, "hom", "--source", "Z2", "--target", "Z6", "--images", "3")
    assert status == 2
    status, _, err = run(capsys, "hom", "--source", "Z3", "--target", "Z2")
    assert status == 2 and "no ring homomorphism" in err


def test_localize(capsys):
    status, out, _ = run(capsys, "localize", "--ring", "Z6", "--S", "3", "--targets", "Z2;Z3")
    assert status == 0
    assert out.splitlines()[0] == "Z6 localized at S={1,3}: 2 elements, kernel (2)"
    status, out, _ = run(capsys, "localize", "--ring", "Z4", "--S", "1,3", "--format", "json")
    assert json.loads(out)["size"] == 4
    status, _, err = run(capsys, "localize", "--ring", "Z6", "--S", "2;3")
    assert status == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kspace", "table1", "--ring", "Z2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("Algebraic sets of Z2")
