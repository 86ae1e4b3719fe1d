import json

import pytest

from orbiteq import build_shift_space, identity_code, out_split
from orbiteq import jsonio
from orbiteq.cli import main

RECODER_JSON = {
    "type": "transducer",
    "states": ["q0", "s1", "s2", "copy"],
    "initial": "q0",
    "delta": [
        {"state": "q0", "in": 1, "out": [], "next": "s1"},
        {"state": "q0", "in": 2, "out": [], "next": "s2"},
        {"state": "s1", "in": 1, "out": [1, 1], "next": "copy"},
        {"state": "s1", "in": 2, "out": [2, 2], "next": "copy"},
        {"state": "s2", "in": 1, "out": [2, 1], "next": "copy"},
        {"state": "s2", "in": 2, "out": [1, 2], "next": "copy"},
        {"state": "copy", "in": 1, "out": [1], "next": "copy"},
        {"state": "copy", "in": 2, "out": [2], "next": "copy"},
    ],
}


@pytest.fixture()
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return str(path)

    golden = build_shift_space([[1, 1], [1, 0]])
    full2 = build_shift_space([[1, 1], [1, 1]])
    full3 = build_shift_space([[1, 1, 1]] * 3)
    return {
        "golden": write("golden.json", jsonio.matrix_to_json(golden)),
        "full2": write("full2.json", jsonio.matrix_to_json(full2)),
        "full3": write("full3.json", jsonio.matrix_to_json(full3)),
        "perm": write("perm.json", {"n": 2, "rows": [[0, 1], [1, 0]]}),
        "identg": write(
            "identg.json", jsonio.map_to_json(identity_code(golden))
        ),
        "ident2": write(
            "ident2.json", jsonio.map_to_json(identity_code(full2))
        ),
        "swap2": write(
            "swap2.json",
            {"type": "block", "window": 1, "table": {"1": "2", "2": "1"}},
        ),
        "recoder": write("recoder.json", RECODER_JSON),
        "ind1": write("ind1.json", {"depth": 1, "values": {"1": 1, "2": 0}}),
        "one": write("one.json", {"depth": 1, "values": {"1": 1, "2": 1}}),
        "write": write,
    }


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_analyze_golden(files, capsys):
    code, out = run(capsys, ["analyze", files["golden"]])
    assert code == 0
    assert "irreducible, non-permutation" in out
    assert "detSign: -1" in out
    assert "trivial" in out


def test_analyze_permutation_exits_1(files, capsys):
    code = main(["analyze", files["perm"]])
    assert code == 1


def test_analyze_full3_json(files, capsys):
    code, out = run(capsys, ["analyze", files["full3"], "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["invariants"]["bf"] == [2]
    assert payload["periodicCounts"]["2"] == 9


def test_compare_full2_full3(files, capsys):
    code, out = run(capsys, ["compare", files["full2"], files["full3"]])
    assert code == 0
    assert "ruled out" in out


def test_compare_golden_split(files, capsys, tmp_path):
    golden = build_shift_space([[1, 1], [1, 0]])
    sp, _, _ = out_split(golden, {1: [(1,), (2,)]})
    split_file = files["write"]("split.json", jsonio.matrix_to_json(sp))
    code, out = run(
        capsys,
        ["compare", files["golden"], split_file, "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["oneSidedConjugate"] is True
    assert payload["conjugacy"] is not None
    # emitted codes re-parse and re-verify as an inverse pair
    from orbiteq import verify_inverse_pair

    h = jsonio.map_from_json(golden, sp, payload["conjugacy"]["map"])
    h_inv = jsonio.map_from_json(sp, golden, payload["conjugacy"]["inverse"])
    assert verify_inverse_pair(h, h_inv, 3, 4)[0]


def test_compare_identical(files, capsys):
    code, out = run(capsys, ["compare", files["golden"], files["golden"]])
    assert code == 0
    assert "one-sided conjugate: true" in out


def test_verify_identity(files, capsys):
    code, out = run(
        capsys,
        [
            "verify",
            files["golden"],
            files["golden"],
            files["identg"],
            files["identg"],
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "Conjugacy"
    k = payload["cocycles"]["forward"]["k"]["values"]
    l = payload["cocycles"]["forward"]["l"]["values"]
    assert set(k.values()) == {0} and set(l.values()) == {1}


def test_verify_recoder(files, capsys):
    code, out = run(
        capsys,
        [
            "verify",
            files["full2"],
            files["full2"],
            files["recoder"],
            files["recoder"],
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "EventualConjugacy"
    assert payload["K"] == 1


def test_verify_swapped_inverse_exits_3(files, capsys):
    code, out = run(
        capsys,
        [
            "verify",
            files["full2"],
            files["full2"],
            files["swap2"],
            files["ident2"],
        ],
    )
    assert code == 3
    assert "failed" in out


def test_verify_parse_error_exits_1(files, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code = main(
        ["verify", files["full2"], files["full2"], str(bad), files["ident2"]]
    )
    assert code == 1


def test_psi_conjugacy_flag_true(files, capsys):
    code, out = run(
        capsys,
        [
            "psi",
            files["full2"],
            files["full2"],
            files["ident2"],
            files["ind1"],
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["matchesComposition"] is True


def test_psi_constant_equals_l_minus_k(files, capsys):
    code, out = run(
        capsys,
        [
            "psi",
            files["full2"],
            files["full2"],
            files["recoder"],
            files["one"],
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    ktab = payload["cocycles"]["k"]["values"]
    ltab = payload["cocycles"]["l"]["values"]
    induced = payload["induced"]["values"]
    for w, val in induced.items():
        key = ",".join(w.split(",")[:3])
        assert val == ltab[key] - ktab[key]


def test_psi_recoder_indicator_flag_false(files, capsys):
    code, out = run(
        capsys,
        [
            "psi",
            files["full2"],
            files["full2"],
            files["recoder"],
            files["ind1"],
            "--format",
            "json",
        ],
    )
    assert code == 0
    assert json.loads(out)["matchesComposition"] is False


def test_compare_undecided_exits_2(files, capsys):
    # beyond the matching cap and without an invariant obstruction the
    # comparison must admit it decided nothing
    n = 13
    big = files["write"]("big.json", {"n": n, "rows": [[1] * n for _ in range(n)]})
    code, out = run(capsys, ["compare", big, big])
    assert code == 2
    assert "undecided" in out


def test_json_output_byte_stable(files, capsys):
    _, out1 = run(capsys, ["analyze", files["golden"], "--format", "json"])
    _, out2 = run(capsys, ["analyze", files["golden"], "--format", "json"])
    assert out1 == out2
