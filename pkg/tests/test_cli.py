import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from virmod.cli import main
from virmod.core.rational import Q
from virmod.enveloping import Induced, PBWMonomial, ShiftModule, TableModule, Verma
from virmod.grammar import ElementSyntaxError, format_element, parse_element
from virmod.omega import OmegaD, OmegaDT
from virmod.specfile import SpecError, load_spec, spec_from_dict, spec_to_dict
from virmod.suites import dump_report, random_element, run_suite
from virmod.tensor import TensorSpec

SPEC = TensorSpec([OmegaDT.linear(2, 1, 1, 0)], [OmegaD(3, 2)], Verma(Q(1, 2), Q(1, 3)))
SPEC_DICT = {"m": 1, "n": 1,
             "dt_factors": [{"lambda": "2", "alpha": "1", "xi": "1", "eta": "0"}],
             "d_factors": [{"mu": "3", "beta": "2"}],
             "v": {"type": "verma", "theta": "1/2", "h": "1/3"}}


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(SPEC_DICT))
    return path


# grammar -----------------------------------------------------------------------


def test_parse_vacuum():
    assert parse_element("1 : V[]", SPEC) == SPEC.vacuum()
    assert parse_element("1", SPEC) == SPEC.vacuum()


def test_parse_coefficient_and_vpart():
    f = parse_element("(3/2)*D1^2*T1 : V[2,0,1]", SPEC)
    assert f == SPEC.element((2, 0), (1,), PBWMonomial((1, 1, 3), None), Q(3, 2))
    assert parse_element("3/2*D1^2*T1:V[2,0,1]", SPEC) == f


def test_parse_sum():
    f = parse_element("D1*T1 + D2", SPEC)
    assert f == SPEC.element((1, 0), (1,)) + SPEC.element((0, 1), (0,))


def test_parse_signs_and_zero():
    f = parse_element("-D1 - (-2)*T1 + 0*D2", SPEC)
    assert f == SPEC.element((1, 0), (0,), coeff=-1) + SPEC.element((0, 0), (1,), coeff=2)
    assert not parse_element("0", SPEC)
    assert not parse_element("D1 - D1", SPEC)


@pytest.mark.parametrize("text,pos", [
    ("D3", 0), ("T2", 0), ("D1^-1", 3), ("D1 +", 4), ("D1 : V[1", 8), ("1/0", 2), ("D1 & D2", 3),
    ("D1 : V[]@1", 5), ("", 0), ("V[1]", 0),
])
def test_parse_errors_are_positioned(text, pos):
    with pytest.raises(ElementSyntaxError) as info:
        parse_element(text, SPEC)
    assert info.value.pos == pos


def test_induced_tail():
    spec = TensorSpec([], [OmegaD(3, 2)], Induced(Q(1), ShiftModule(1)))
    f = parse_element("D1 : V[1]@2", spec)
    assert next(iter(f)).v == PBWMonomial((1,), 2)
    assert format_element(f, spec) == "D1 : V[1]@2"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip(seed):
    f = random_element(SPEC, random.Random(seed), 3, 3, terms=4)
    text = format_element(f, SPEC)
    assert parse_element(text, SPEC) == f
    assert format_element(parse_element(text, SPEC), SPEC) == text


def test_canonical_text():
    assert format_element(parse_element("T1 + 3/2*D1^2*T1 : V[2,0,1]", SPEC), SPEC) == \
        "3/2*D1^2*T1 : V[2,0,1] + T1 : V[]"
    assert format_element(parse_element("-(3/2)*D1", SPEC), SPEC) == "-3/2*D1 : V[]"


# spec files --------------------------------------------------------------------------


def test_spec_round_trip():
    spec = spec_from_dict(SPEC_DICT)
    assert spec == SPEC
    assert spec_from_dict(spec_to_dict(spec)) == spec


def test_spec_variants():
    data = {"dt_factors": [{"lambda": "1/2", "alpha": 3, "h_coeffs": ["1", "0", "2"]}],
            "v": {"type": "induced", "theta": "0", "k": 2, "rule": {"kind": "shift", "offset": "1/3"}}}
    spec = spec_from_dict(data)
    assert spec.dt_factors[0].degree == 2
    assert spec.v_factor.module == ShiftModule(2, Q(1, 3))
    assert spec_from_dict(spec_to_dict(spec)) == spec
    table = {"d_factors": [{"mu": 1, "beta": 4}],
             "v": {"type": "induced", "theta": "1", "k": 0, "basis_size": 1,
                   "action": [{"i": 0, "b": 0, "image": {"0": "3"}}]}}
    spec = spec_from_dict(table)
    assert isinstance(spec.v_factor.module, TableModule)
    assert spec_from_dict(spec_to_dict(spec)) == spec


@pytest.mark.parametrize("data", [
    [],
    {"m": 2, "dt_factors": [{"lambda": 1, "alpha": 1, "xi": 1}]},
    {"dt_factors": [{"lambda": 0, "alpha": 1, "xi": 1}]},
    {"d_factors": [{"mu": "1/0", "beta": 1}]},
    {"d_factors": [{"mu": 1}]},
    {"d_factors": [{"mu": 1, "beta": 1}], "v": {"type": "lowest", "theta": 1}},
    {"d_factors": [{"mu": 1, "beta": 1}], "extra": 1},
    {},
    {"d_factors": [{"mu": 1, "beta": 1}],
     "v": {"type": "induced", "theta": 1, "k": 1, "basis_size": 2, "action": [{"i": 1, "b": 0, "image": {"1": 1}}]}},
])
def test_spec_errors(data):
    with pytest.raises(SpecError):
        spec_from_dict(data)


def test_float_literals_refused(tmp_path):
    path = tmp_path / "f.json"
    path.write_text('{"d_factors": [{"mu": 1.5, "beta": 1}]}')
    with pytest.raises(SpecError, match="float"):
        load_spec(path)


# reports and the command line -----------------------------------------------------


def test_reports_are_deterministic():
    bounds = {"samples": 3}
    a = dump_report(run_suite(SPEC, "all", 5, bounds))
    b = dump_report(run_suite(SPEC, "all", 5, bounds))
    assert a == b
    report = json.loads(a)
    assert report["header"]["seed"] == 5
    assert {r["status"] for r in report["results"]} <= {"pass", "fail", "unknown"}


def test_cli_check_writes_report(spec_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["check", str(spec_file), "--suite", "determinant", "--report", str(out)]) == 0
    first = out.read_bytes()
    assert main(["check", str(spec_file), "--suite", "determinant", "--report", str(out)]) == 0
    assert out.read_bytes() == first
    assert json.loads(first)["summary"]["fail"] == 0


@pytest.mark.parametrize("suite", ["bracket", "extraction", "submodule", "quotient", "omega", "classify-self"])
def test_cli_suites_pass(spec_file, suite, capsys):
    assert main(["check", str(spec_file), "--suite", suite, "--samples", "3"]) == 0


def test_cli_commands(spec_file, capsys):
    assert main(["act", str(spec_file), "--k", "0", "--element", "1 : V[]"]) == 0
    assert capsys.readouterr().out.strip() == "D1 : V[] + D2 : V[] + 1/3 : V[]"
    assert main(["omega", str(spec_file), "--s", "5", "--l", "8", "--m", "-7", "--element", "1"]) == 0
    assert capsys.readouterr().out.strip() != "0"
    assert main(["rank", str(spec_file), "--element", "1"]) == 0
    assert capsys.readouterr().out.startswith("rank 4 ")
    assert main(["certify", str(spec_file), "--element", "D1*T1", "--degree", "1", "--level", "1"]) == 0
    assert "replay exact" in capsys.readouterr().out
    assert main(["classify", str(spec_file), "--other", str(spec_file)]) == 0
    assert capsys.readouterr().out.startswith("isomorphic")
    assert main(["det", "--bases", "2,-1/3", "--mults", "2,3", "--r", "1"]) == 0


def test_cli_exit_codes_for_gated_specs(tmp_path, capsys):
    path = tmp_path / "gate.json"
    path.write_text(json.dumps(dict(SPEC_DICT, d_factors=[{"mu": "2", "beta": "2"}])))
    # equal lambda and mu: the rank suite reports unknown, which is not a failure
    assert main(["check", str(path), "--suite", "rank"]) == 0
    assert main(["rank", str(path), "--element", "1"]) == 2
    reducible = tmp_path / "reducible.json"
    reducible.write_text(json.dumps(dict(SPEC_DICT, d_factors=[{"mu": "3", "beta": "1"}])))
    report = tmp_path / "r.json"
    assert main(["certify", str(reducible), "--element", "1", "--report", str(report)]) == 1
    assert json.loads(report.read_text())["results"][0]["status"] == "unknown"


def test_cli_usage_errors(spec_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", str(bad)]) == 2
    assert "invalid JSON" in capsys.readouterr().err
    assert main(["act", str(spec_file), "--k", "1", "--element", "D9"]) == 2
    assert main(["det", "--bases", "1,1", "--mults", "1,1"]) == 2
    assert main(["act", str(tmp_path / "missing.json"), "--k", "1", "--element", "1"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["check", str(spec_file), "--suite", "nope"])
    assert info.value.code == 2


def test_module_entry_point(spec_file):
    proc = subprocess.run([sys.executable, "-m", "virmod", "det", "--bases", "3", "--mults", "1", "--r", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "243" in proc.stdout
