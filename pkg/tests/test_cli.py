import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from finsemi.cli import dump, dumps, main, parse_structure, parse_text
from finsemi.core import (
    StructureMap,
    boolean_semiring,
    builtin_structure,
    is_isomorphic,
    power_module,
    product_semiring,
    regular_module,
    zmod,
)
from finsemi.errors import FinsemiError, ParseError
from finsemi.semistructures import enumerate_structures, semiring_algebra, unit_semicoring, unit_semiring

from conftest import FIXTURE_NAMES

DATA = Path(__file__).parent / "data"
FAULTS = DATA / "faults"
MANIFEST = json.loads((FAULTS / "manifest.json").read_text())


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "finsemi", *map(str, args)], capture_output=True, timeout=120)
    return proc.returncode, proc.stdout


def run_inprocess(capsys, *args):
    status = main([str(a) for a in args])
    return status, json.loads(capsys.readouterr().out)


DETERMINISM = [
    ("validate", DATA / "z2xz2.json"),
    ("tensor", DATA / "z2-module.json", DATA / "z2-module.json"),
    ("reflect", DATA / "boolean-module.json"),
    ("sweedler", DATA / "diag-z2-z2xz2.json"),
    ("enumerate", DATA / "z2.json", DATA / "product-ring-over-z2.json"),
    ("check", DATA / "sweedler-z2xz2.json", "--suite", "semicoring"),
    ("convolve", DATA / "z2.json", DATA / "z2.json"),
    ("roundtrip", DATA / "z2xz2.json"),
]


@pytest.mark.parametrize("args", DETERMINISM, ids=[a[0] for a in DETERMINISM])
def test_reports_are_byte_identical_across_runs(args):
    first = run(*args)
    second = run(*args)
    assert first == second
    assert first[0] == 0
    json.loads(first[1])


def test_text_format_is_deterministic():
    args = ("check", DATA / "z2.json", "--suite", "jmonad", "--format", "text")
    assert run(*args) == run(*args)


@pytest.mark.parametrize("case", MANIFEST, ids=[f"{c['file']}-{c['args'][0]}" for c in MANIFEST])
def test_fault_corpus_exit_codes(case, capsys, monkeypatch):
    # extra file arguments in the manifest are relative to the corpus directory
    monkeypatch.chdir(FAULTS)
    status, report = run_inprocess(capsys, *case["args"][:1], case["file"], *case["args"][1:])
    assert status == case["exit"] == report["status"]
    if case["code"] is None:
        assert report["error"] is None
        assert any(not law["passed"] for law in report["laws"].values())
    else:
        assert report["error"]["code"] == case["code"]


def test_fault_corpus_is_large_enough():
    files = {c["file"] for c in MANIFEST}
    assert len(files) >= 12
    assert {c["exit"] for c in MANIFEST} == {1, 2, 3}


def test_fault_exit_codes_through_the_module_entry_point():
    for case in MANIFEST[::4]:
        proc = subprocess.run([sys.executable, "-m", "finsemi", *case["args"][:1], case["file"], *case["args"][1:]],
                              capture_output=True, timeout=120, cwd=FAULTS)
        status = proc.returncode
        assert status == case["exit"]


def test_syntax_errors_carry_positions(capsys):
    status, report = run_inprocess(capsys, "validate", FAULTS / "ragged-add.json")
    assert status == 2
    assert report["error"]["line"] >= 1 and report["error"]["column"] >= 1


def test_tensor_of_z2_with_itself(capsys):
    status, report = run_inprocess(capsys, "tensor", DATA / "z2-module.json", DATA / "z2-module.json")
    assert status == 0 and report["result"]["size"] == 2
    carrier = parse_text(json.dumps(report["result"]["carrier"]))
    assert is_isomorphic(carrier.carrier, zmod(2).additive)


def test_reflect_boolean(capsys):
    status, report = run_inprocess(capsys, "reflect", DATA / "boolean-module.json")
    assert status == 0
    assert report["result"]["size"] == 1 and report["result"]["projection"] == [0, 0]


def test_sweedler_check_passes(capsys):
    status, report = run_inprocess(capsys, "check", DATA / "sweedler-z2xz2.json", "--suite", "semicoring")
    assert status == 0 and report["laws"]["semicoring"]["passed"]


def test_jmonad_check_at_base_level(capsys):
    status, report = run_inprocess(capsys, "check", DATA / "product-ring-over-z2.json",
                                   "--suite", "jmonad", "--universe", "base")
    assert status == 0 and report["result"]["universe"] == "base"


def test_out_flag_writes_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["validate", str(DATA / "z2.json"), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == 0


def test_missing_file(capsys):
    status, report = run_inprocess(capsys, "validate", DATA / "nope.json")
    assert status == 2 and report["error"]["code"] == "missing-file"


def test_console_script_matches_module():
    args = ["validate", str(DATA / "boolean.json")]
    script = subprocess.run(["finsemi", *args], capture_output=True, timeout=60)
    assert (script.returncode, script.stdout) == run(*args)


# ---------------------------------------------------------------------------
# dump / parse

@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.name)
def test_data_files_round_trip(path):
    value = parse_structure(path)
    assert dump(parse_text(dumps(value))) == dump(value)
    assert dumps(parse_text(dumps(value))) == dumps(value)


def test_structures_round_trip():
    z2 = zmod(2)
    diag = StructureMap("semiring-map", z2, product_semiring(z2, z2), (0, 1))
    values = [regular_module(z2), power_module(z2, 2), regular_module(boolean_semiring(), ("right",)),
              unit_semiring(z2), unit_semicoring(z2), semiring_algebra(diag), diag]
    values += enumerate_structures(z2, power_module(z2, 2), "semicoring")[:3]
    for v in values:
        text = dumps(v)
        assert dumps(parse_text(text)) == text


@given(st.sampled_from(FIXTURE_NAMES))
def test_fixture_dump_parse_round_trip(name):
    s = builtin_structure(name)
    back = parse_text(dumps(s))
    assert back.add == s.add and back.mul == s.mul and back.one == s.one
    assert parse_text(json.dumps(name)).add == s.add


@given(st.text(max_size=40))
def test_garbage_never_escapes_as_unexpected_exception(text):
    try:
        parse_text(text)
    except ParseError:
        pass
    except FinsemiError:
        pass
