import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from littlegroups.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_PARAM,
    EXIT_RESOURCE,
    RECORD_FIELDS,
    OutputRecord,
    main,
    records_from_csv,
    records_from_json,
    records_to_csv,
    records_to_json,
)
from littlegroups.ffield import make_field
from littlegroups.matrep import MatrixRep
from littlegroups.modcheck import is_irreducible
from littlegroups.twisted_group import make_group


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# -- classify-group


@pytest.mark.parametrize("params", [("2", "1", "3", "2"), ("2", "1", "1", "3"), ("2", "2", "3", "1")])
def test_classify_group_examples(params):
    p, a, e, f = params
    code, out, _ = run("classify-group", "--p", p, "--a", a, "--e", e, "--f", f)
    assert code == EXIT_OK
    obj = json.loads(out)
    assert set(obj) == {"params", "records", "checks"}
    assert [r["degree"] for r in obj["records"]] == [1, 2]
    assert all(c["passed"] for c in obj["checks"])
    assert all(list(r) == list(RECORD_FIELDS) for r in obj["records"])


def test_classify_group_parameter_error():
    code, out, err = run("classify-group", "--p", "2", "--a", "1", "--e", "5", "--f", "2")
    assert code == EXIT_PARAM and out == ""
    assert "does not divide" in err


def test_classify_group_resource_error():
    code, _, err = run("classify-group", "--p", "2", "--a", "1", "--e", "1", "--f", "100000")
    assert code == EXIT_RESOURCE and "resource bound" in err


def test_emit_matrices_round_trip():
    code, out, _ = run("classify-group", "--p", "2", "--a", "1", "--e", "3", "--f", "2", "--emit-matrices")
    assert code == EXIT_OK
    obj = json.loads(out)
    G = make_group(2, 1, 3, 2)
    F = make_field(2, 1)
    assert obj["params"]["matrix_field"] == {"p": 2, "m": 1, "modulus": [0, 1]}
    for rec in obj["records"]:
        mats = rec["matrices"]
        n = rec["degree"]
        rep = MatrixRep(F, n, tuple(map(tuple, mats["gen_t"])), tuple(map(tuple, mats["gen_s"])), G)
        assert is_irreducible(rep)
    code, _, err = run("classify-group", "--p", "2", "--a", "1", "--e", "3", "--f", "2", "--emit-matrices", "--format", "csv")
    assert code == EXIT_PARAM


def test_output_is_deterministic():
    argv = ("classify-group", "--p", "3", "--a", "1", "--e", "8", "--f", "4")
    assert run(*argv) == run(*argv)
    argv = ("classify-galois", "--p", "2", "--a", "2", "--max-degree", "3", "--format", "csv")
    assert run(*argv) == run(*argv)


def test_records_are_sorted():
    _, out, _ = run("classify-group", "--p", "3", "--a", "1", "--e", "8", "--f", "4")
    recs = records_from_json(out)
    assert recs == sorted(recs, key=OutputRecord.sort_key)


# -- classify-galois


@pytest.mark.parametrize("a,N,expected", [("1", "2", 3), ("2", "2", 5), ("1", "1", 1)])
def test_classify_galois_examples(a, N, expected):
    code, out, _ = run("classify-galois", "--p", "2", "--a", a, "--max-degree", N)
    assert code == EXIT_OK
    obj = json.loads(out)
    assert len(obj["records"]) == expected
    assert all(c["passed"] for c in obj["checks"])


def test_classify_galois_csv_and_partition():
    code, out, err = run("classify-galois", "--p", "2", "--a", "1", "--max-degree", "2", "--format", "csv")
    assert code == EXIT_OK
    recs = records_from_csv(out)
    assert [(r.degree, r.unramified, r.label_r, r.n) for r in recs] == [(1, True, None, 1), (2, True, None, 2), (2, False, 2, 2)]
    assert "{'2': 1}" in err


def test_classify_galois_too_large():
    code, _, _ = run("classify-galois", "--p", "2", "--a", "1", "--max-degree", "7")
    assert code == EXIT_RESOURCE


# -- verify and examples


@pytest.mark.parametrize("a,census", [("1", 3), ("2", 5)])
def test_verify_census(a, census):
    e, f = ("3", "2") if a == "1" else ("3", "1")
    code, out, _ = run("verify", "--p", "2", "--a", a, "--e", e, "--f", f, "--census-m", "2")
    assert code == EXIT_OK
    assert out.rstrip().endswith("PASS")
    assert f"degree 2, m = 2: {census}" in out


def test_verify_sweep_p2():
    code, out, _ = run("verify", "--sweep", "100", "--p", "2")
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_verify_needs_parameters():
    code, _, err = run("verify", "--p", "2")
    assert code == EXIT_PARAM and "--sweep" in err


def test_verify_failure_exit_code(monkeypatch):
    import littlegroups.verification as verification

    monkeypatch.setattr(verification, "p_regular_class_orbits", lambda G: -1)
    code, out, _ = run("verify", "--p", "2", "--a", "1", "--e", "3", "--f", "2")
    assert code == EXIT_FAIL
    assert "FAIL berman_count" in out


def test_examples_command():
    code, out, _ = run("examples")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 4 and all(line.startswith("ok") for line in lines)
    assert "twist = S4" in lines[2] and "bijective" in lines[2]
    assert "twist = A4" in lines[0] and "as before" in lines[1]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "littlegroups.cli", "examples"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.count("ok") == 4


# -- serialization


_ints = st.integers(0, 10**6)
_opt = st.one_of(st.none(), _ints)
records = st.builds(
    OutputRecord,
    *[_ints] * 13,
    unramified=st.one_of(st.none(), st.booleans()),
    label_r=_opt,
    n=_opt,
)


@settings(max_examples=100, deadline=None)
@given(st.lists(records, max_size=8))
def test_serialization_round_trip(recs):
    assert records_from_json(records_to_json({}, recs, [])) == recs
    assert records_from_csv(records_to_csv(recs)) == recs
    assert records_to_csv(records_from_csv(records_to_csv(recs))) == records_to_csv(recs)


def test_csv_header_is_fixed():
    text = records_to_csv([])
    assert text == ",".join(RECORD_FIELDS) + "\n"
    with pytest.raises(ValueError):
        records_from_csv("p,a\n1,2\n")
