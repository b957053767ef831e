import json
import math
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings

from graphglue import (
    BridgeSpec,
    IntMatrix,
    IntPoly,
    InterfaceSpec,
    charpoly,
    complete_graph,
    cycle_graph,
    even_laplacian,
    glue_bridge,
    glue_interface,
    path_graph,
)
from graphglue.cli import graph_from_document, main, parse_document, render_document
from graphglue.sampling import random_bridge, random_interface

from conftest import rngs


@pytest.fixture
def write(tmp_path):
    counter = iter(range(10**6))

    def _write(doc) -> str:
        path = tmp_path / f"doc{next(counter)}.json"
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


K2 = {"vertices": 2, "edges": [[0, 1]]}


class TestLaplacian:
    def test_p3_even(self, capsys, write):
        doc = run_json(capsys, "laplacian", write(path_graph(3).to_dict()), "--which", "even")
        assert doc == {"rows": 3, "cols": 3, "entries": [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]}

    def test_edgeless_odd(self, capsys, write):
        doc = run_json(capsys, "laplacian", write({"vertices": 3, "edges": []}), "--which", "odd")
        assert doc == {"rows": 0, "cols": 0, "entries": []}

    @pytest.mark.parametrize("text", ["{not json", "vertices 3", '{"edges": []}', '{"vertices": "3"}', '{"vertices": 2, "edges": [[0]]}'])
    def test_malformed_exit_2(self, capsys, write, text):
        code, out, err = run(capsys, "laplacian", write(text))
        assert code == 2 and out == "" and err

    def test_missing_file_exit_2(self, capsys, tmp_path):
        assert run(capsys, "laplacian", str(tmp_path / "nope.json"))[0] == 2

    def test_invalid_graph_exit_3(self, capsys, write):
        code, out, err = run(capsys, "laplacian", write({"vertices": 2, "edges": [[0, 1], [1, 0]]}))
        assert code == 3 and out == "" and "duplicates" in err

    def test_bad_usage_exit_2(self, capsys):
        assert run(capsys, "laplacian")[0] == 2
        assert run(capsys, "frobnicate")[0] == 2

    def test_plain_format_reparses(self, capsys, write):
        code, out, _ = run(capsys, "laplacian", write(complete_graph(3).to_dict()), "--format", "plain")
        assert out.splitlines()[0] == "rows: 3"
        assert IntMatrix.from_dict(parse_document(out)) == even_laplacian(complete_graph(3))

    def test_plain_input_accepted(self, capsys, write):
        doc = run_json(capsys, "trees", write("vertices: 3\nedges: [[0, 1], [1, 2], [0, 2]]\n"))
        assert doc == {"trees": 3}


class TestGlue:
    def test_k2_bridge_charpoly(self, capsys, write):
        g = write(K2)
        doc = run_json(capsys, "glue", g, g, write({"mode": "bridge", "pairs": [[1, 0]]}), "--emit", "charpoly")
        assert doc == {"coefficients": [0, -4, 10, -6, 1]}

    def test_empty_interface_block_diagonal(self, capsys, write):
        g = write(K2)
        doc = run_json(capsys, "glue", g, g, write({"mode": "interface", "vertices": []}), "--emit", "even")
        assert doc["entries"] == [[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]]

    def test_emit_graph_roundtrip(self, capsys, write):
        k3 = write(complete_graph(3).to_dict())
        doc = run_json(capsys, "glue", k3, k3, write({"mode": "interface", "vertices": [[2, 0]]}))
        expected = glue_interface(complete_graph(3), complete_graph(3), InterfaceSpec((2,), (0,))).graph
        assert graph_from_document(doc) == expected

    def test_explicit_edges(self, capsys, write):
        p3 = write(path_graph(3).to_dict())
        spec = {"mode": "interface", "vertices": [[1, 0], [2, 1]], "edges": [[1, 0]]}
        doc = run_json(capsys, "glue", p3, p3, write(spec), "--emit", "charpoly", "--verify")
        assert IntPoly.from_list(doc["coefficients"]) == charpoly(even_laplacian(path_graph(4)))

    def test_invalid_spec_exit_3(self, capsys, write):
        g = write(K2)
        assert run(capsys, "glue", g, g, write({"mode": "bridge", "pairs": [[0, 0], [0, 1]]}))[0] == 3
        assert run(capsys, "glue", g, g, write({"mode": "interface", "vertices": [[0, 0], [1, 1]], "edges": []}))[0] == 3

    def test_unknown_mode_exit_2(self, capsys, write):
        g = write(K2)
        assert run(capsys, "glue", g, g, write({"mode": "weld"}))[0] == 2

    def test_spectrum_emission(self, capsys, write):
        g = write(K2)
        doc = run_json(capsys, "glue", g, g, write({"mode": "bridge", "pairs": [[1, 0]]}), "--emit", "spectrum")
        assert doc["zero_count"] == 1
        expected = [2 - 2 * math.cos(math.pi * k / 4) for k in range(4)]
        assert doc["eigenvalues"] == pytest.approx(expected, abs=1e-11)

    @settings(max_examples=25, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(rngs)
    def test_verify_random_interface(self, capsys, write, rng):
        g1, g2, spec = random_interface(rng)
        files = write(g1.to_dict()), write(g2.to_dict()), write(spec.to_dict())
        glued = glue_interface(g1, g2, spec).graph
        for emit in ("even", "odd", "charpoly", "spectrum"):
            code, out, err = run(capsys, "glue", *files, "--emit", emit, "--verify")
            assert code == 0, err
        assert IntPoly.from_list(json.loads(run(capsys, "glue", *files, "--emit", "charpoly")[1])["coefficients"]) == charpoly(even_laplacian(glued))

    @settings(max_examples=25, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(rngs)
    def test_verify_random_bridge(self, capsys, write, rng):
        g1, g2, b = random_bridge(rng)
        files = write(g1.to_dict()), write(g2.to_dict()), write(b.to_dict())
        for emit in ("graph", "even", "odd", "charpoly", "spectrum"):
            code, out, err = run(capsys, "glue", *files, "--emit", emit, "--verify")
            assert code == 0, err
        doc = json.loads(run(capsys, "glue", *files)[1])
        assert graph_from_document(doc) == glue_bridge(g1, g2, b).graph


class TestScalars:
    @pytest.fixture
    def k5k5(self, write):
        g = glue_interface(complete_graph(5), complete_graph(5), InterfaceSpec((4,), (0,))).graph
        return write(g.to_dict())

    def test_fiedler_plain(self, capsys, k5k5):
        code, out, _ = run(capsys, "fiedler", k5k5, "--format", "plain")
        assert out == "fiedler: 1.000000000000\n"

    def test_fiedler_json(self, capsys, k5k5):
        code, out, _ = run(capsys, "fiedler", k5k5)
        assert out == '{"fiedler": 1.000000000000}\n'

    def test_trees(self, capsys, k5k5, write):
        assert run_json(capsys, "trees", k5k5) == {"trees": 15625}
        assert run_json(capsys, "trees", write(cycle_graph(6).to_dict())) == {"trees": 6}

    def test_cheeger(self, capsys, write):
        assert run_json(capsys, "cheeger", write(complete_graph(4).to_dict()))["cheeger"] == "3"
        doc = run_json(capsys, "cheeger", write(path_graph(5).to_dict()))
        assert doc == {"cheeger": "1/2", "numerator": 1, "denominator": 2}

    def test_cheeger_size_limit_exit_5(self, capsys, write):
        assert run(capsys, "cheeger", write(path_graph(21).to_dict()))[0] == 5

    def test_cheeger_disconnected_exit_3(self, capsys, write):
        assert run(capsys, "cheeger", write({"vertices": 4, "edges": [[0, 1], [2, 3]]}))[0] == 3

    def test_spectrum(self, capsys, write):
        doc = run_json(capsys, "spectrum", write(cycle_graph(4).to_dict()))
        assert doc["eigenvalues"] == pytest.approx([0, 2, 2, 4], abs=1e-11)
        odd = run_json(capsys, "spectrum", write(cycle_graph(4).to_dict()), "--which", "odd")
        assert odd["zero_count"] == 1


class TestEvolve:
    def test_zero_dt_echoes(self, capsys, write):
        psi = [[0.6, 0.0], [0.0, 0.8]]
        doc = run_json(capsys, "evolve", write(K2), write({"psi": psi}), "--dt", "0")
        assert doc["psi"] == psi and doc["norm"] == doc["input_norm"]

    def test_p2_transfer(self, capsys, write):
        doc = run_json(capsys, "evolve", write(K2), write({"psi": [[1, 0], [0, 0]]}), "--coeff", "0.5", "--dt", str(math.pi))
        (a, b), (c, d) = doc["psi"]
        assert abs(complex(a, b)) < 1e-9 and abs(complex(c, d) - 1) < 1e-9
        assert doc["norm"] == pytest.approx(1, abs=1e-10)

    def test_bare_array_psi(self, capsys, write):
        doc = run_json(capsys, "evolve", write(K2), write([[1, 0], [0, 0]]), "--dt", "0.3")
        assert doc["norm"] == pytest.approx(1, abs=1e-10)

    def test_dimension_mismatch_exit_3(self, capsys, write):
        assert run(capsys, "evolve", write(K2), write({"psi": [[1, 0]]}), "--dt", "1")[0] == 3

    def test_bad_psi_exit_2(self, capsys, write):
        assert run(capsys, "evolve", write(K2), write({"psi": [[1, "x"], [0, 0]]}))[0] == 2


class TestCheck:
    def test_single_criterion(self, capsys):
        code, out, _ = run(capsys, "check", "--only", "3", "4", "--format", "plain")
        assert code == 0
        assert [line.split()[:2] for line in out.splitlines()] == [["PASS", "3"], ["PASS", "4"]]

    def test_failure_exit_1(self, capsys):
        code, out, _ = run(capsys, "check", "--only", "5c")
        assert code == 1 and json.loads(out)["passed"] is False

    def test_deterministic(self, capsys):
        first = run(capsys, "check", "--only", "1c", "7", "--seed", "5")
        assert run(capsys, "check", "--only", "1c", "7", "--seed", "5") == first

    def test_unknown_key(self, capsys):
        assert run(capsys, "check", "--only", "99")[0] == 2


def test_render_fixed_and_nested():
    assert render_document({"a": [1, {"b": "x"}]}, "json") == '{"a": [1, {"b": "x"}]}'
    assert render_document({"a": 1, "b": [2]}, "plain") == "a: 1\nb: [2]"


def test_console_entry_point(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(K2))
    proc = subprocess.run(
        [sys.executable, "-m", "graphglue.cli", "trees", str(path)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"trees": 1}
