import re
import subprocess
import sys

import pytest

from intervalstruct.cli import ParseError, main, parse, render, run

from conftest import DATA

HEADER = "UNIVERSE_W {w1,w2,w3,w4,w5}\nUNIVERSE_THETA {t1,t2,t3}\n"


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def blocks(text):
    return [b.strip("\n") for b in text.split("\n\n")]


def test_parse_worked():
    doc = parse((DATA / "worked.txt").read_text(encoding="utf-8"))
    assert doc.w.size == 5 and doc.theta.size == 3
    assert len(doc.lower) == 3 and len(doc.upper) == 2


@pytest.mark.parametrize(
    "text,line,msg",
    [
        ("", None, "UNIVERSE_THETA"),
        (HEADER + "LOWER {t9} : {w1}\n", 3, "undeclared"),
        (HEADER + "LOWER {t1 : {w1}\n", 3, "malformed set"),
        (HEADER + "UNIVERSE_W {a}\n", 3, "duplicate"),
        (HEADER + "FROBNICATE\n", 3, "unknown section"),
        ("w1 : {t1}\n", 1, "outside"),
    ],
)
def test_parse_errors(text, line, msg):
    with pytest.raises(ParseError, match=msg) as ei:
        parse(text)
    assert ei.value.line == line


def test_comments_and_blank_lines():
    doc = parse(HEADER + "\n# nothing\nLOWER {t1} : {w1}  # trailing\n")
    assert len(doc.lower) == 1


def test_golden_synthesize(capsys):
    code, out, err = cli(capsys, "synthesize", str(DATA / "worked.txt"))
    assert code == 0 and err == ""
    assert out == (DATA / "worked.golden.txt").read_text(encoding="utf-8")
    bsa = out.split("\n\n")[0].splitlines()[1:]
    assert len(bsa) == 4


def test_determinism_across_processes():
    cmd = [sys.executable, "-m", "intervalstruct", "synthesize", str(DATA / "worked.txt")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b == (DATA / "worked.golden.txt").read_bytes()


def test_contradiction_exit_code(capsys):
    code, out, err = cli(capsys, "synthesize", str(DATA / "contradiction.txt"))
    assert code == 2 and out == ""
    assert err.startswith("inconsistent:") and "w2" in err


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(HEADER + "LOWER {t9} : {w1}\n", encoding="utf-8")
    code, _, err = cli(capsys, "synthesize", str(p))
    assert code == 1 and "line 3" in err
    code, _, err = cli(capsys, "synthesize", str(tmp_path / "missing.txt"))
    assert code == 1


def test_bsa_round_trip_through_relation(capsys, tmp_path):
    _, out, _ = cli(capsys, "synthesize", str(DATA / "worked.txt"))
    bsa_lines = out.split("\n\n")[0].splitlines()[1:]
    rel = []
    for line in bsa_lines:
        a, _, ws = (s.strip() for s in line.partition(":"))
        rel += [f"{w} : {a}" for w in ws.strip("{}").split(",")]
    p = tmp_path / "rel.txt"
    p.write_text(HEADER + "RELATION\n" + "\n".join(rel) + "\n", encoding="utf-8")
    _, again, _ = cli(capsys, "compat", str(p))
    assert blocks(again) == blocks(out)[:2]


def test_compat_matches_synthesize(capsys):
    _, out, _ = cli(capsys, "synthesize", str(DATA / "worked.txt"))
    _, comp, _ = cli(capsys, "compat", str(DATA / "worked_relation.txt"))
    assert blocks(comp) == blocks(out)[:2]


def test_tsv(capsys):
    code, out, _ = cli(capsys, "synthesize", "--format", "tsv", str(DATA / "worked.txt"))
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "bsa\t{t1}\t:\t{w1,w2}"
    assert "table\t{t1,t2}\t{w1,w2,w4}\t{w1,w2,w3,w4,w5}" in rows
    assert all("\t" in r for r in rows)


def test_vacuous_mass(capsys):
    code, out, _ = cli(capsys, "belief", str(DATA / "vacuous_mass.txt"), "--format", "tsv")
    assert code == 0
    bel = {r.split("\t")[1]: r.split("\t")[3] for r in out.splitlines() if r.startswith("table")}
    assert bel.pop("{t1,t2,t3}") == "1.000000"
    assert set(bel.values()) == {"0.000000"}


def test_belief_from_bounds(capsys):
    code, out, _ = cli(capsys, "belief", str(DATA / "worked_prob.txt"), "--format", "tsv")
    assert code == 0
    row = next(r.split("\t") for r in out.splitlines() if r.startswith("table\t{t1}\t"))
    assert row[-2:] == ["0.400000", "0.600000"]


def test_check_passes_and_fails(capsys, tmp_path):
    code, out, _ = cli(capsys, "check", str(DATA / "worked_relation.txt"))
    assert code == 0 and "FAIL" not in out
    p = tmp_path / "bad.txt"
    p.write_text(HEADER + "LOWER {} : {w1}\n", encoding="utf-8")
    code, out, _ = cli(capsys, "check", str(p))
    assert code == 2
    assert re.search(r"^L3 +FAIL +\{\}$", out, re.M)
    assert re.search(r"^duality +pass$", out, re.M)


def test_rough(capsys):
    code, out, _ = cli(capsys, "rough", str(DATA / "rough.txt"), "--target", "{t1,t3}", "--format", "tsv")
    assert code == 0
    assert "table\t{t1,t3}\t{t3}\t{t1,t2,t3}\t{b1}\t{b0,b1}" in out
    assert "rules\t{b1}\t→\t{t1,t3}" in out
    assert "rules\t{b0,b1}\t⇝\t{t1,t3}" in out


def test_max_theta_flag(capsys, tmp_path):
    code, _, err = cli(capsys, "synthesize", "--max-theta", "2", str(DATA / "worked.txt"))
    assert code == 1 and "error:" in err


def test_run_dispatch():
    doc = parse((DATA / "worked.txt").read_text(encoding="utf-8"))
    reports, code = run("synthesize", doc)
    assert code == 0 and [r.kind for r in reports] == ["bsa", "table", "rules"]
    assert render(reports) == (DATA / "worked.golden.txt").read_text(encoding="utf-8")
    with pytest.raises(ValueError):
        run("dance", doc)
