import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from jstrata import serialize
from jstrata.cli import run
from jstrata.ffield import field
from jstrata.isocrystal import make_frame
from jstrata.lattice import Lattice
from jstrata.randgen import random_invertible, random_series

GL2 = {"kind": "superbasic-res", "m": 1, "h": 2, "p": 2, "e": 2}
HALF2 = {"kind": "isoclinic-gl", "slopes": [[1, 2, 2]], "p": 2, "e": 4}


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_series_round_trip(seed):
    F = field(3, 1, 2)
    s = random_series(random.Random(seed), F)
    assert serialize.series_from_json(F, serialize.series_to_json(s)) == s


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_lattice_round_trip(seed):
    rng = random.Random(seed)
    M = Lattice(random_invertible(rng, field(2, 1, 2), rng.randint(1, 3)))
    d = json.loads(serialize.dumps(serialize.lattice_to_json(M)))
    assert serialize.lattice_from_json(d) == M


@pytest.mark.parametrize("spec", [GL2, HALF2, {"kind": "gsp4", "p": 2, "e": 2}, {"kind": "unitary-n0", "n": 3, "p": 2, "e": 2}])
def test_frame_round_trip(spec):
    fr = make_frame(spec)
    fr2 = serialize.frame_from_json(serialize.frame_to_json(fr))
    assert serialize.frame_to_json(fr2) == serialize.frame_to_json(fr)
    assert fr2.standard() == fr.standard()


def test_generators_need_frame():
    from jstrata.errors import BadSpec

    with pytest.raises(BadSpec):
        serialize.lattice_from_json({"generators": [[["e", 0]]]})


def test_jsonable_infinity_and_sets():
    assert serialize.to_jsonable({"g": (float("inf"), 1), "s": {3, 1}}) == {"g": ["inf", 1], "s": [1, 3]}


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def lattice_file(tmp_path):
    p = tmp_path / "L.json"
    p.write_text(json.dumps({"generators": [[["e", 1]], [["e", 2]]]}))
    return str(p)


def test_inv_of_identical_lattices(capsys, lattice_file):
    code, out, _ = cli(capsys, "inv", "--frame", json.dumps(GL2), "--lattice", lattice_file, "--lattice2", lattice_file)
    assert code == 0
    assert json.loads(out)["inv"] == [0, 0]


def test_output_is_deterministic(capsys, lattice_file, tmp_path):
    args = ["profile", "--frame", json.dumps(GL2), "--lattice", lattice_file, "--window", "2"]
    a = cli(capsys, *args)[1]
    b = cli(capsys, *args)[1]
    assert a == b and json.loads(a)["probes"] == 5
    out = tmp_path / "o.json"
    assert run(args + ["--out", str(out)]) == 0
    assert out.read_text() == a


@pytest.mark.parametrize(
    "argv,key,value",
    [
        (["case", "hermitian", "--p", "2", "--m", "3"], "psi", 5),
        (["case", "hermitian", "--p", "2", "--m", "3"], "brute", 9),
        (["case", "gelfand-serganova"], "ranks", [29, 17, 17]),
        (["case", "vw", "--n", "3"], "standard_d", 0),
        (["agen-check", "1", "2", "2"], "equal", True),
    ],
)
def test_cases(capsys, argv, key, value):
    code, out, _ = cli(capsys, *argv)
    assert code == 0 and json.loads(out)[key] == value


def test_lattice_commands(capsys):
    lat = json.dumps({"closure_of": [["e11", 0, 3], ["e12", 0, 5], ["e11", 1, 2]]})
    frame = json.dumps(HALF2)
    code, out, _ = cli(capsys, "anum", "--frame", frame, "--lattice", lat)
    assert code == 0 and json.loads(out)["a_number"] == 1
    code, out, _ = cli(capsys, "gamma-member", "--frame", frame, "--lattice", lat, "1", "1")
    assert json.loads(out)["member"] is True
    code, out, _ = cli(capsys, "gamma-member", "--frame", frame, "--lattice", lat, "0", "inf")
    assert code == 0
    code, out, _ = cli(capsys, "chart", "--frame", json.dumps(GL2), "--lattice", json.dumps({"generators": [[["e", 1]], [["e", 2]]]}))
    assert json.loads(out)["minima"] == [[1, 2]]


def test_eo_command(capsys):
    gens = [[["e", i]] for i in (1, 2, 5, 6, 7, 8, 9, 12, 13)]
    frame = json.dumps({"kind": "superbasic-res", "m": 4, "h": 9, "p": 2, "e": 2})
    code, out, _ = cli(capsys, "eo", "--frame", frame, "--lattice", json.dumps({"generators": gens}), "--mu", "0,0,0,0,0,1,1,1,1")
    assert code == 0 and json.loads(out)["bruhat"] == "(465)"


@pytest.mark.parametrize(
    "argv",
    [
        ["vol", "--lattice", "/nonexistent.json"],
        ["anum", "--lattice", "{}"],
        ["chart", "--frame", '{"kind": "nope"}', "--lattice", "{}"],
        ["agen-check", "0", "1", "1"],
        ["case", "hermitian", "--p", "-2"],
        ["no-such-command"],
        ["profile", "--frame", json.dumps(GL2), "--lattice", "{not json"],
    ],
)
def test_input_errors_exit_one(capsys, argv):
    code, _, err = cli(capsys, *argv)
    assert code == 1 and err


def test_repro_subset(capsys):
    code, out, err = cli(capsys, "repro-all", "--only", "1", "3", "6")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert [r["number"] for r in rep["results"]] == [1, 3, 6]
    assert err.count("[PASS]") == 3
