import subprocess
import sys

import pytest

from ybx.catalog import CATALOG, catalog, u8_solution
from ybx.cli import main
from ybx.finset import OpTable
from ybx.linrep import IntMatrix, rack_R, rep_from_solution
from ybx.solution import extract_twist
from ybx.textio import document, parse, serialize


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def keys(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_bytes(serialize(doc))
    return p


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_entries_verify(capsys, tmp_path, name):
    code, out = run(capsys, "verify", write(tmp_path, f"{name}.ybx", catalog(name)))
    assert code == 0, out
    assert keys(out)["ok"] == "1"


def test_u8_verify_report(capsys, tmp_path):
    code, out = run(capsys, "verify", write(tmp_path, "u8.ybx", catalog("u8-solution")))
    k = keys(out)
    assert (k["braid"], k["bijective"], k["involutive"], k["equivalent-to-flip"]) == ("1", "1", "1", "0")
    assert k["flip-bijections-refuted"] == "24"
    assert k["associated-shelf"] == "right-zero-band"


def test_verify_brace_and_shelf_keys(capsys, tmp_path):
    _, out = run(capsys, "verify", write(tmp_path, "b.ybx", catalog("z4-brace")))
    k = keys(out)
    assert k["left-skew-brace"] == "1" and k["brace"] == "1"
    _, out = run(capsys, "verify", write(tmp_path, "s.ybx", catalog("z6-shelf")))
    k = keys(out)
    assert (k["shelf"], k["spindle"], k["rack"], k["quandle"]) == ("1", "0", "0", "0")


def test_verify_non_shelf_exits_1(capsys, tmp_path):
    doc = document(3, tables={"shelf": OpTable.from_function(3, lambda a, b: (a + 1) % 3)})
    code, out = run(capsys, "verify", write(tmp_path, "bad.ybx", doc))
    k = keys(out)
    assert code == 1 and k["shelf"] == "0" and k["witness"] != "none"


def test_parse_error_exits_2(capsys, tmp_path):
    p = tmp_path / "broken.ybx"
    p.write_text("ybx v1\nn 2\ntable shelf\n0 0\n")
    assert main(["verify", str(p)]) == 2
    assert "line 5" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.ybx")]) == 2


def test_enumerate_counts(capsys):
    _, out = run(capsys, "enumerate", "shelves", "--size", 3)
    k = keys(out)
    assert k["count"] == "224"
    _, out = run(capsys, "enumerate", "shelves", "--size", 3, "--racks-only")
    assert keys(out)["count"] == "13"
    _, out = run(capsys, "enumerate", "shelves", "--size", 4, "--racks-only")
    k = keys(out)
    assert (k["count"], k["isomorphism-classes"]) == ("114", "19")
    _, out = run(capsys, "enumerate", "solutions", "--size", 2, "--left-nd")
    assert keys(out)["count"] == "14"


def test_enumerate_solutions_needs_flag(capsys):
    code, _ = run(capsys, "enumerate", "solutions", "--size", 2)
    assert code == 2


def strip_workers(out):
    return [line for line in out.splitlines() if not line.startswith("workers=")]


@pytest.mark.parametrize("argv", [("shelves", "--size", 3), ("solutions", "--size", 2, "--left-nd")])
def test_enumeration_independent_of_workers(capsys, monkeypatch, argv):
    monkeypatch.setenv("YBX_THREADS", "1")
    _, one = run(capsys, "enumerate", *argv)
    monkeypatch.setenv("YBX_THREADS", "3")
    _, three = run(capsys, "enumerate", *argv)
    assert keys(three)["workers"] == "3"
    assert strip_workers(one) == strip_workers(three)


def test_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv("YBX_THREADS", "many")
    code, _ = run(capsys, "enumerate", "shelves", "--size", 2)
    assert code == 2


def test_twist_command(capsys, tmp_path):
    code, out = run(capsys, "twist", write(tmp_path, "u8.ybx", catalog("u8-solution")))
    k = keys(out)
    assert code == 0 and k["is-twist"] == "1" and k["round-trip"] == "1"
    phi = extract_twist(u8_solution()).phi
    assert k["phi.1"] == ",".join(map(str, phi[1]))


def test_derive_and_from_twist(capsys, tmp_path):
    shelf_file = write(tmp_path, "rack.ybx", catalog("z4-rack"))
    code, out = run(capsys, "derive", shelf_file)
    derived = parse(out).solution()
    assert code == 0 and derived.tau.tolist() == catalog("z4-rack").op("shelf").table.tolist()

    tw = extract_twist(u8_solution())
    shelf_doc = write(tmp_path, "shelf.ybx", document(4, tables={"shelf": tw.shelf}))
    twist_doc = write(tmp_path, "phi.ybx", document(4, tables={"phi": tw.phi}))
    code, out = run(capsys, "from-twist", shelf_doc, twist_doc)
    assert code == 0 and parse(out).solution() == u8_solution()


@pytest.mark.parametrize("fmt", ["text", "sparse"])
def test_rep_export_round_trip(capsys, tmp_path, fmt):
    out_dir = tmp_path / "mats"
    code, out = run(capsys, "rep", write(tmp_path, "u8.ybx", catalog("u8-solution")),
                    "--twist", "--frt", "--export", out_dir, "--format", fmt)
    k = keys(out)
    assert code == 0 and k["ok"] == "1" and k["twist.two_i"] == "1"
    ext = "sparse" if fmt == "sparse" else "txt"
    load = IntMatrix.from_sparse if fmt == "sparse" else IntMatrix.from_text
    R = load((out_dir / f"R.{ext}").read_text())
    assert R == rack_R(rep_from_solution(u8_solution()))
    assert (out_dir / f"RF.{ext}").exists()


def test_rep_hopf(capsys, tmp_path):
    from ybx.finset import symmetric_group
    bullet = write(tmp_path, "bullet.ybx", document(6, tables={"bullet": symmetric_group(3).op}))
    code, out = run(capsys, "rep", write(tmp_path, "s3.ybx", catalog("s3-conj")), "--hopf", bullet)
    k = keys(out)
    assert code == 0 and k["hopf.hopf"] == "1" and k["hopf.antipode_map"] == "0,1,2,4,3,5"


def test_rep_refuses_non_rack(capsys, tmp_path):
    code, _ = run(capsys, "rep", write(tmp_path, "z6.ybx", catalog("z6-shelf")))
    assert code == 2


def test_catalog_command(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0 and set(keys(out).values()) <= set(CATALOG) and out.count("entry=") == len(CATALOG)
    code, out = run(capsys, "catalog", "dihedral3")
    assert parse(out) == catalog("dihedral3")


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "ybx.cli", "catalog", "z4-rack"], capture_output=True, text=True)
    assert res.returncode == 0 and parse(res.stdout) == catalog("z4-rack")
