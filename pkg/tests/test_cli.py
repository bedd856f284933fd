import io
import json
import subprocess
import sys

import numpy as np
import pytest

from maxtri.cli import run
from maxtri.core import MaxMatrix, identity
from maxtri.matrix_io import save_matrix

from example_matrices import NON_TRIANGULARIZABLE, PAIR2_A, PAIR2_B, PROJ_A, PROJ_B, UNICELLULAR

# dominance holds but the pair polynomial has no linear factorization
BAD_A = MaxMatrix([[2, 1], [0, 2]])
BAD_B = MaxMatrix([[0, 0], [1, 0]])


@pytest.fixture
def files(tmp_path):
    mats = {
        "ex": NON_TRIANGULARIZABLE,
        "uni": UNICELLULAR,
        "pa": PROJ_A,
        "pb": PROJ_B,
        "a2": PAIR2_A,
        "b2": PAIR2_B,
        "bad_a": BAD_A,
        "bad_b": BAD_B,
        "i4": identity(4),
        "i2": identity(2),
        "skew": MaxMatrix([[1, 9], [0, 1]]),
        "big": MaxMatrix(np.ones((11, 11))),
        "nil": MaxMatrix([[0, 2, 3], [0, 0, 4], [0, 0, 0]]),
    }
    paths = {}
    for name, M in mats.items():
        path = tmp_path / f"{name}.mat"
        save_matrix(M, path)
        paths[name] = str(path)
    (tmp_path / "broken.mat").write_text("2\n1 2 3\n")
    paths["broken"] = str(tmp_path / "broken.mat")
    paths["missing"] = str(tmp_path / "missing.mat")
    return paths


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    report = json.loads(text) if text and "--format" not in argv else text
    return code, report, err.getvalue()


def test_triangularize_example(files):
    code, rep, _ = invoke("triangularize", files["ex"])
    assert code == 0
    assert rep["verdict"] is False
    assert rep["obstruction"] == [1, 2]
    assert rep["witness"] is None
    assert rep["command"] == "triangularize" and rep["inputs"] == [files["ex"]]


def test_triangularize_unicellular(files):
    code, rep, _ = invoke("triangularize", files["uni"])
    assert code == 0 and rep["verdict"] is True
    assert rep["details"]["order"] == [2, 4, 1, 3]
    assert rep["details"]["conjugated"] == [[[1, 5, 0, 0], [0, 1, 6, 0], [0, 0, 1, 7], [0, 0, 0, 1]]]


def test_simtri_projector_pair(files):
    code, rep, _ = invoke("simtri", files["pa"], files["pb"])
    assert code == 0 and rep["verdict"] is True
    assert sorted(rep["witness"]) == [1, 2, 3]


def test_simtri_example_pair(files):
    code, rep, _ = invoke("simtri", files["a2"], files["b2"])
    assert code == 0 and rep["verdict"] is False and rep["obstruction"] == [1, 2]


def test_commutator(files):
    code, rep, _ = invoke("commutator", files["pa"], files["pb"])
    assert code == 0
    assert rep["verdict"] == [[1, 1, 1], [0, 0, 0], [0, 0, 0]]
    assert rep["details"]["nilpotent"] is False


def test_nilpotent(files):
    code, rep, _ = invoke("nilpotent", files["nil"])
    assert code == 0 and rep["verdict"] is True and rep["details"]["index"] == 3


def test_projector(files):
    assert invoke("projector", files["pa"])[1]["verdict"] is True
    assert invoke("projector", files["ex"])[1]["verdict"] is False


def test_unicellular(files):
    code, rep, _ = invoke("unicellular", files["uni"])
    assert code == 0 and rep["verdict"] is True
    assert rep["details"]["support_chain"] == [[], [2], [2, 4], [1, 2, 4], [1, 2, 3, 4]]


def test_commutant(files):
    code, rep, _ = invoke("commutant", files["i4"], files["uni"])
    assert code == 0 and rep["verdict"] is True


def test_tdet(files):
    code, rep, _ = invoke("tdet", files["ex"])
    assert code == 0 and rep["verdict"] == 150.0
    assert rep["details"]["argmax"] == [2, 1, 3]
    code, rep, _ = invoke("tdet", "--bruteforce", files["ex"])
    assert rep["verdict"] == 150.0 and rep["details"]["method"] == "bruteforce"


def test_charpoly(files):
    code, rep, _ = invoke("charpoly", files["a2"], files["b2"])
    assert code == 0
    assert [1, 1, 12.0] in rep["verdict"]


def test_factor(files):
    code, rep, _ = invoke("factor", files["a2"], files["b2"])
    assert code == 0 and rep["verdict"] is True
    assert rep["details"]["factors"] == [[2, 4], [3, 5]]


def test_dominance(files):
    code, rep, _ = invoke("dominance", files["a2"], files["b2"])
    assert code == 0 and rep["verdict"] is True
    assert rep["details"] == {"tdet": 20.0, "diagonal_product": 20.0}


def test_diagdom(files):
    # A max B = [[4, 2], [2, 5]]
    code, rep, _ = invoke("diagdom", files["a2"], files["b2"])
    assert code == 0 and rep["verdict"] is True and rep["witness"] == [1, 2]
    code, rep, _ = invoke("diagdom", files["skew"], files["i2"])
    assert code == 0 and rep["verdict"] is False
    assert invoke("diagdom", files["ex"], files["ex"])[0] == 2


def test_plain_format(files):
    code, text, _ = invoke("tdet", "--format", "plain", files["ex"])
    assert code == 0
    assert "verdict: 150.0" in text.splitlines()


def test_deterministic_output(files):
    outputs = set()
    for _ in range(3):
        out = io.StringIO()
        run(["check-theorems", "--seed", "7", files["pa"], files["pb"]], out, io.StringIO())
        outputs.add(out.getvalue().encode())
    assert len(outputs) == 1


class TestCheckTheorems:
    def test_projector_pair(self, files):
        code, rep, _ = invoke("check-theorems", files["pa"], files["pb"])
        pair = rep["details"]["pair"]
        assert pair["commutator-closure"]["status"] == "pass"
        assert pair["projector-theorem"]["status"] == "precondition"
        assert "not nilpotent" in pair["projector-theorem"]["detail"]
        assert pair["simtri-certificate"]["status"] == "pass"
        assert code == 0

    def test_example_pair(self, files):
        code, rep, _ = invoke("check-theorems", files["a2"], files["b2"])
        pair = rep["details"]["pair"]
        assert pair["simtri-certificate"]["status"] == "pass"
        assert "not simultaneously" in pair["simtri-certificate"]["detail"]
        assert pair["factorization-equivalence"]["status"] == "pass"

    def test_violation_exit(self, files):
        code, rep, _ = invoke("check-theorems", files["bad_a"], files["bad_b"])
        assert code == 4
        assert rep["details"]["pair"]["factorization-equivalence"]["status"] == "violation"


class TestExitCodes:
    def test_parse_error(self, files):
        code, _, err = invoke("tdet", files["broken"])
        assert code == 2 and "expected 4 entries" in err

    def test_missing_file(self, files):
        assert invoke("tdet", files["missing"])[0] == 2

    def test_arity(self, files):
        assert invoke("commutator", files["pa"])[0] == 2
        assert invoke("tdet", files["pa"], files["pb"])[0] == 2

    def test_dimension_mismatch(self, files):
        assert invoke("simtri", files["pa"], files["a2"])[0] == 2

    def test_precondition(self, files):
        assert invoke("factor", files["ex"], files["ex"])[0] == 2

    def test_unknown_command(self):
        assert invoke("frobnicate")[0] == 2

    def test_guard(self, files):
        code, _, err = invoke("tdet", "--bruteforce", files["big"])
        assert code == 3 and "11" in err

    def test_large_fast_tdet_runs(self, files):
        code, rep, _ = invoke("tdet", files["big"])
        assert code == 0 and rep["verdict"] == 1.0

    def test_theorem_violation(self, files):
        code, _, err = invoke("factor", files["bad_a"], files["bad_b"])
        assert code == 4 and "violation" in err

    def test_not_factorable_is_a_verdict(self, tmp_path):
        a, b = tmp_path / "a.mat", tmp_path / "b.mat"
        save_matrix(MaxMatrix([[0, 1], [0, 0]]), a)
        save_matrix(MaxMatrix([[0, 0], [1, 0]]), b)
        code, rep, _ = invoke("factor", str(a), str(b))
        assert code == 0 and rep["verdict"] is False


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "maxtri.cli", "tdet", files["ex"]],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == 150.0
