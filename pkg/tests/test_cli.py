import json

from rdslink.cli import main


def run(args):
    return main(args)


def load(path):
    with open(path) as fh:
        return json.load(fh)


def test_construct_q8_bundle(tmp_path):
    out = tmp_path / "q8.json"
    assert run(["construct", "q8", "--out", str(out)]) == 0
    b = load(out)
    c = b["certificate"]
    assert (c["m"], c["n"], c["k"], c["lambda"], c["s"], c["mu"],
            c["nu"]) == (4, 2, 4, 2, 2, 1, 3)
    assert b["associated_group"]["kind"] == "cyclic"
    assert b["associated_group"]["order"] == 3
    assert len(b["group"]["table"]) == 64


def test_construct_heisenberg_bundle(tmp_path):
    out = tmp_path / "h.json"
    assert run(["construct", "heisenberg", "--q", "3", "--out",
                str(out)]) == 0
    b = load(out)
    c = b["certificate"]
    assert (c["m"], c["n"], c["k"], c["lambda"], c["s"]) == (9, 3, 9, 3, 3)
    assert b["provenance"]["eps"] == 2
    assert b["provenance"]["delta"] == 2
    assert b["associated_group"]["order"] == 4


def test_construct_thm12_bundle(tmp_path):
    out = tmp_path / "t.json"
    assert run(["construct", "thm12", "--p", "3", "--r", "2", "--out",
                str(out)]) == 0
    b = load(out)
    assert b["certificate"]["m"] == 81
    assert b["exponent"] == 9


def test_construct_dps_bundle(tmp_path):
    out = tmp_path / "d.json"
    assert run(["construct", "dps", "--n", "4", "--t", "4", "--s", "4",
                "--out", str(out)]) == 0
    c = load(out)["certificate"]
    assert (c["m"], c["n"], c["k"], c["lambda"], c["s"], c["mu"],
            c["nu"]) == (16, 4, 16, 4, 3, 7, 3)


def test_construct_invalid_params():
    assert run(["construct", "heisenberg", "--q", "4"]) == 1  # even q
    assert run(["construct", "extraspecial", "--p", "4"]) == 1


def test_bundles_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["construct", "extraspecial", "--p", "3", "--out", str(a)])
    run(["construct", "extraspecial", "--p", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_rds_roundtrip(tmp_path):
    bundle = tmp_path / "q8.json"
    run(["construct", "q8", "--out", str(bundle)])
    b = load(bundle)
    sets = tmp_path / "set.json"
    sets.write_text(json.dumps({"set": b["sets"][0]["indices"]}))
    forb = tmp_path / "forb.json"
    forb.write_text(json.dumps(b["forbidden"]))
    report = tmp_path / "rep.json"
    assert run(["verify", "rds", "--group", str(bundle), "--sets", str(sets),
                "--forbidden", str(forb), "--out", str(report)]) == 0
    r = load(report)
    assert r["ok"]
    assert r["certificates"][0]["k"] == 4


def test_verify_linked_perturbed_fails(tmp_path):
    bundle = tmp_path / "q8.json"
    run(["construct", "q8", "--out", str(bundle)])
    b = load(bundle)
    fam = [s["indices"] for s in b["sets"]]
    # move one element of X_1
    bad = sorted(set(fam[0]) - {fam[0][-1]} | {6})
    sets = tmp_path / "sets.json"
    sets.write_text(json.dumps({"sets": [bad, fam[1]]}))
    forb = tmp_path / "forb.json"
    forb.write_text(json.dumps(b["forbidden"]))
    report = tmp_path / "rep.json"
    assert run(["verify", "linked", "--group", str(bundle), "--sets",
                str(sets), "--forbidden", str(forb), "--out",
                str(report)]) == 1
    r = load(report)
    assert not r["ok"]
    assert "error" in r


def test_verify_sring(tmp_path):
    bundle = tmp_path / "q8.json"
    run(["construct", "q8", "--out", str(bundle)])
    classes = tmp_path / "classes.json"
    # partition of Q8 by {e},{a^2},{a,a^3},{b,a^2 b},{ab,a^3 b}
    classes.write_text(json.dumps(
        {"classes": [[0], [2], [1, 3], [4, 6], [5, 7]]}))
    report = tmp_path / "rep.json"
    assert run(["verify", "sring", "--group", str(bundle), "--sets",
                str(classes), "--out", str(report)]) == 0
    r = load(report)
    assert r["ok"]
    assert len(r["certificates"][0]["tensor"]) == 5


def test_export_graph_formats(tmp_path, capsys):
    assert run(["export", "graph", "--q", "3", "--format", "adjlist"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 27
    assert all(len(ln.split(":")[1].split()) == 8 for ln in lines)
    assert run(["export", "graph", "--q", "3", "--format", "dimacs"]) == 0
    dimacs = capsys.readouterr().out.splitlines()
    assert dimacs[0] == "p edge 27 108"


def test_export_dev_q8(capsys):
    assert run(["export", "dev", "--family", "q8", "--format", "json"]) == 0
    blocks = json.loads(capsys.readouterr().out)["blocks"]
    assert len(blocks) == 8


def test_export_ctensor(capsys):
    assert run(["export", "ctensor", "--family", "heisenberg",
                "--q", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["classes"]) == 5
    assert sorted(data["class_sizes"]) == [1, 2, 8, 8, 8]


def test_resolve_branch_reports(tmp_path):
    rep = tmp_path / "r.json"
    assert run(["resolve-branch", "--target", "heis2r", "--q", "3",
                "--r", "2", "--out", str(rep)]) == 0
    r = load(rep)
    assert r["ok"]
    assert r["realized"] in r["branches"]
    rep2 = tmp_path / "r2.json"
    assert run(["resolve-branch", "--target", "q8-2r", "--r", "2",
                "--out", str(rep2)]) == 0
    r2 = load(rep2)
    assert r2["ok"]
    assert r2["realized"] in r2["branches"]
