from importlib import resources
from pathlib import Path

import pytest

from rigikit.cli import main


def fixture_path(name: str) -> str:
    return str(resources.files("rigikit.data").joinpath(name))


def run(capsys, argv):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_validate_good_table(capsys):
    status, out, _ = run(capsys, ["validate", fixture_path("psl2_7.ctb")])
    assert status == 0
    assert "row_orthogonality" in out and "FAIL" not in out


def test_validate_bad_table(tmp_path, capsys):
    text = Path(fixture_path("s3.ctb")).read_text()
    bad = text.replace("char X3 2 ; 0 ; -1", "char X3 2 ; 1 ; -1")
    target = tmp_path / "bad.ctb"
    target.write_text(bad)
    status, out, _ = run(capsys, ["validate", str(target)])
    assert status == 1
    assert "FAIL" in out


def test_validate_syntax_error_exit_2(tmp_path, capsys):
    target = tmp_path / "junk.ctb"
    target.write_text("CTB 9\n")
    status, _, err = run(capsys, ["validate", str(target)])
    assert status == 2
    assert "error" in err


def test_missing_file_exit_2(capsys):
    status, _, err = run(capsys, ["validate", "/nonexistent/table.ctb"])
    assert status == 2


def test_structconst_machine(capsys):
    status, out, _ = run(capsys, [
        "structconst", fixture_path("psl2_7.ctb"), "2A", "3A", "7A", "--machine"])
    assert status == 0
    assert out.splitlines() == ["N = 168", "f = 0"]


def test_rigid_machine_block(capsys):
    status, out, _ = run(capsys, [
        "rigid", fixture_path("psl2_7.ctb"), "2A", "3A", "7A",
        "--center", "1", "--assume-generation", "--machine"])
    assert status == 0
    assert out.splitlines() == [
        "N = 168", "f = 0", "orbits = 1",
        "rational_c1 = yes", "rational_c2 = yes", "rational_c3 = no",
        "verdict = rigid-candidate"]


def test_unknown_class_name_exit_2(capsys):
    status, _, err = run(capsys, [
        "structconst", fixture_path("psl2_7.ctb"), "2A", "3A", "9Z"])
    assert status == 2


def test_dixon_emits_parseable_deterministic_table(capsys):
    status, out1, _ = run(capsys, ["dixon", "SL(2,2)"])
    assert status == 0
    status, out2, _ = run(capsys, ["dixon", "SL(2,2)"])
    assert out1 == out2
    from rigikit.chartable import parse_ctb, validate

    table = parse_ctb(out1)
    assert validate(table).ok


def test_dixon_generator_file(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("matrix 2 3\n1 1\n0 1\nmatrix 2 3\n0 2\n1 0\n")
    status, out, _ = run(capsys, ["dixon", "@%s" % gens])
    assert status == 0
    assert "order 24" in out


def test_dl_emit_and_checks(capsys):
    status, out, _ = run(capsys, ["dl", "--family", "GL2", "--q", "3", "--emit"])
    assert status == 0 and out.startswith("CTB 1")
    status, out, _ = run(capsys, ["dl", "--family", "GL2", "--q", "3",
                                  "--check", "all"])
    assert status == 0
    assert "all pass" in out and "FAIL" not in out


def test_dualsym_cli(capsys):
    status, out, _ = run(capsys, ["dualsym", "--pair", "SL2PGL2", "--q", "5"])
    assert status == 0 and "all pass" in out
    status, out, _ = run(capsys, ["dualsym", "--pair", "GL2", "--q", "4",
                                  "--regular"])
    assert status == 0


def test_regunip_order_and_filter(capsys):
    status, out, _ = run(capsys, ["regunip", "--type", "E8", "--p", "7"])
    assert status == 0
    assert out.strip() == "order = 49"
    status, out, _ = run(capsys, ["regunip", "--type", "G2", "--p", "7",
                                  "--filter"])
    assert status == 0
    assert "survivors = 2^3.L3(2),G2(2),L2(13)" in out
    status, out, _ = run(capsys, ["regunip", "--type", "E8", "--p", "31",
                                  "--filter", "--two-classes"])
    assert status == 0
    assert "survivors = none" in out
    assert "eliminated-cyclic-sylow" in out


def test_lemma_cli(capsys):
    status, out, _ = run(capsys, ["lemma", "sl", "--n", "3", "--q", "3"])
    assert status == 0
    assert "total = 0" in out and "no-such-triples" in out


def test_usage_errors_exit_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["dl", "--family", "XX", "--q", "3"]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    for sub in ("validate", "structconst", "rigid", "dixon", "dl",
                "dualsym", "regunip", "lemma"):
        assert main([sub, "--help"]) == 0
        out = capsys.readouterr().out
        assert "--" in out  # every subcommand documents its flags


def test_threads_flag_accepted_everywhere(capsys):
    status, out, _ = run(capsys, ["regunip", "--type", "G2", "--p", "5",
                                  "--threads", "4"])
    assert status == 0
    status, out2, _ = run(capsys, ["regunip", "--type", "G2", "--p", "5",
                                   "--threads", "1"])
    assert out == out2
