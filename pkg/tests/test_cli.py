import json
import re
import subprocess
import sys

import pytest

from chainiso.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_ddpstar_ascii(capsys):
    code, out, _ = run(capsys, "table", "--family", "ddp-star", "--stat", "height", "--max-n", "7")
    assert code == 0
    sums = [int(line.rsplit("|", 1)[1]) for line in out.splitlines()[2:]]
    assert sums == [1, 2, 4, 8, 14, 24, 38, 60]
    assert out.splitlines()[-1].split("|")[1].split() == ["1", "28", "22", "8", "1", "0", "0", "0"]


def test_table_oddp_fix_csv(capsys):
    code, out, _ = run(capsys, "table", "--family", "oddp", "--stat", "fix", "--max-n", "5",
                       "--format", "csv")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "0", "1", "2", "3", "4", "5", "sum"]
    assert rows[4][:6] == ["3", "5", "3", "3", "1", ""]
    assert rows[6] == ["5", "27", "5", "10", "10", "5", "1", "58"]


def test_table_single_row(capsys):
    code, out, _ = run(capsys, "table", "--family", "ddp", "--stat", "height", "--max-n", "0",
                       "--format", "json")
    assert json.loads(out)["rows"] == [{"n": 0, "values": [1], "sum": 1}]


def test_table_check_flag(capsys):
    code, _, _ = run(capsys, "table", "--family", "ddp", "--max-n", "9", "--check")
    assert code == 0


def test_table_without_formula_uses_enumeration(capsys):
    code, out, _ = run(capsys, "table", "--family", "dp", "--max-n", "3", "--format", "csv")
    assert out.strip().splitlines()[-1].endswith(",22")


def test_seq_order_ddp_bfile(capsys):
    code, out, _ = run(capsys, "seq", "--series", "order-ddp", "--max-n", "7", "--format", "bfile")
    assert out == "0 1\n1 2\n2 5\n3 13\n4 30\n5 66\n6 137\n7 279\n"
    assert all(re.fullmatch(r"-?[0-9]+ [0-9]+", line) for line in out.splitlines())


def test_seq_order_oddp_ascii(capsys):
    _, out, _ = run(capsys, "seq", "--series", "order-oddp", "--max-n", "3")
    assert out == "1, 2, 5, 12\n"


def test_seq_single_term(capsys):
    _, out, _ = run(capsys, "seq", "--series", "order-ddpstar", "--max-n", "0")
    assert out == "1\n"


def test_seq_offset(capsys):
    _, out, _ = run(capsys, "seq", "--series", "order-ddp", "--max-n", "3", "--offset", "2",
                    "--format", "bfile")
    assert out == "2 5\n3 13\n"
    code, _, err = run(capsys, "seq", "--series", "order-ddp", "--max-n", "1", "--offset", "2")
    assert code == 2 and "offset" in err


def test_seq_unknown(capsys):
    code, _, err = run(capsys, "seq", "--series", "nope", "--max-n", "3")
    assert code == 2 and "unknown series" in err


def test_unknown_family_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["table", "--family", "zz", "--max-n", "2"])
    assert exc.value.code == 2


def test_elements_ddp2_json(capsys):
    _, out, _ = run(capsys, "elements", "--family", "ddp", "--n", "2", "--format", "json")
    maps = [json.loads(line) for line in out.splitlines()]
    assert len(maps) == 5
    assert {"n": 2, "dom": [2], "img": [1]} in maps


def test_elements_ddpstar_ascii(capsys):
    _, out, _ = run(capsys, "elements", "--family", "ddp-star", "--n", "3", "--height", "2")
    assert out == "(2 3)\n(2 1)\n"


def test_elements_empty_chain(capsys):
    _, out, _ = run(capsys, "elements", "--family", "oddp", "--n", "0", "--format", "json")
    assert out == '{"n": 0, "dom": [], "img": []}\n'


def test_elements_bound(capsys):
    code, _, err = run(capsys, "elements", "--family", "dp", "--n", "9")
    assert code == 2 and "limited" in err


def test_classes_ddp_per_height(capsys):
    code, out, _ = run(capsys, "classes", "--family", "ddp", "--n", "7", "--per-height",
                       "--format", "json", "--oracle")
    data = json.loads(out)
    assert code == 0 and data["match"]
    assert data["per_height"]["3"] == 14 and data["total"] == 64


def test_classes_oddp_total(capsys):
    _, out, _ = run(capsys, "classes", "--family", "oddp", "--n", "6")
    assert "total: 33" in out


def test_classes_empty_chain(capsys):
    _, out, _ = run(capsys, "classes", "--family", "ddp", "--n", "0")
    assert "total: 1" in out


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "0", "--no-header")
    assert code == 0 and "FAIL" not in out


def test_verify_json_and_header(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "5", "--checks", "tables,corollary",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and "generated" in doc
    coef = [r for r in doc["reports"] if r["name"] == "classes/ddp-total-closed-form"][0]
    assert coef["details"]["coefficient"] == 1


def test_verify_failure_exit_code(capsys, monkeypatch):
    from chainiso import formulas
    monkeypatch.setattr(formulas, "order_oddp", lambda n: 0)
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--checks", "orders", "--no-header")
    assert code == 1 and "FAIL order/oddp" in out and "counterexample" in out


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "3", "--checks", "bogus")
    assert code == 2


def test_output_is_deterministic(capsys):
    argv = ["verify", "--max-n", "6", "--checks", "tables,classes", "--no-header"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "chainiso", "seq", "--series", "A184052", "--max-n", "4",
         "--format", "bfile"],
        check=True, capture_output=True, text=True,
    ).stdout
    assert out == "0 1\n1 2\n2 5\n3 13\n4 30\n"
