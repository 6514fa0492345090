import pytest

from tseitinkit.cli import main
from tseitinkit.bounds import certificate_to_text, certified_lower_bound
from tseitinkit.bp import bp_to_text, build_well_structured_bp
from tseitinkit.cnf import cnf_to_dimacs
from tseitinkit.compiler import compile_bp_to_dnnf, retarget
from tseitinkit.graphs import graph_from_text, graph_to_text
from tseitinkit.nnf import nnf_to_text
from tseitinkit.resolution import dpll_refute, trace_to_text
from tseitinkit.tseitin import TseitinFormula, charge_add, to_cnf, tseitin_to_text, unit_charge
from tseitinkit import families as fam


@pytest.fixture
def workdir(tmp_path):
    g = fam.cycle(3)
    c = unit_charge(3, 1)
    t = TseitinFormula(g, c)
    cnf = to_cnf(t)
    bp, ann = build_well_structured_bp(g, c)
    d = compile_bp_to_dnnf(bp, ann, g, c, 0)
    dz = retarget(d, g, charge_add(c, unit_charge(3, 0)), (0, 0, 0))
    files = {
        "graph": graph_to_text(g),
        "tseitin": tseitin_to_text(t),
        "tseitin_zero": tseitin_to_text(TseitinFormula(g, (0, 0, 0))),
        "cnf": cnf_to_dimacs(cnf),
        "trace": trace_to_text(dpll_refute(cnf)),
        "bp": bp_to_text(bp),
        "nnf": nnf_to_text(dz),
        "cert": certificate_to_text(certified_lower_bound(fam.complete(4))),
        "k4": graph_to_text(fam.complete(4)),
    }
    paths = {}
    for name, text in files.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


class TestGenerate:
    def test_grid_counts(self, tmp_path):
        out = tmp_path / "g.graph"
        assert main(["generate", "grid", "3", "3", "--out", str(out)]) == 0
        g = graph_from_text(out.read_text())
        assert (g.n, g.m) == (9, 12)

    def test_complete4_is_k4(self, tmp_path):
        out = tmp_path / "k4.graph"
        main(["generate", "complete", "4", "--out", str(out)])
        assert graph_from_text(out.read_text()) == fam.complete(4)

    def test_cycle3(self, tmp_path):
        out = tmp_path / "c3.graph"
        main(["generate", "cycle", "3", "--out", str(out)])
        assert graph_from_text(out.read_text()) == fam.cycle(3)

    def test_random_regular_deterministic(self, tmp_path):
        a, b = tmp_path / "a.graph", tmp_path / "b.graph"
        main(["generate", "random-regular", "8", "3", "11", "--out", str(a)])
        main(["generate", "random-regular", "8", "3", "11", "--out", str(b)])
        assert a.read_text() == b.read_text()
        g = graph_from_text(a.read_text())
        assert all(g.degree(v) == 3 for v in range(g.n))

    def test_invalid_params(self, capsys):
        with pytest.raises(SystemExit):
            main(["generate", "nosuch", "3"])
        assert main(["generate", "cycle", "2"]) == 1
        assert "error" in capsys.readouterr().err


class TestPipeline:
    def test_c3_row(self, workdir, tmp_path):
        out = tmp_path / "report.csv"
        rc = main(["pipeline", "--graph", workdir["graph"], "--charge", "odd-at 1",
                   "--target", "zero", "--out", str(out)])
        assert rc == 0
        header, row = out.read_text().strip().splitlines()
        cols = dict(zip(header.split(","), row.split(",")))
        assert cols["n"] == "3" and cols["m"] == "3"
        assert cols["treewidth"] == "2" and cols["bound_exponent"] == "0"
        assert cols["equivalence"] == "equivalent" and cols["model_count"] == "2"

    def test_k4_row_has_k1(self, workdir, tmp_path):
        out = tmp_path / "report.csv"
        main(["pipeline", "--graph", workdir["k4"], "--charge", "odd-at 0",
              "--target", "zero", "--out", str(out)])
        row = out.read_text().strip().splitlines()[1]
        assert row.split(",")[9] == "1"

    def test_p4_row_has_k0(self, tmp_path):
        p4 = tmp_path / "p4.graph"
        main(["generate", "path", "4", "--out", str(p4)])
        out = tmp_path / "report.csv"
        main(["pipeline", "--graph", str(p4), "--charge", "odd-at 0",
              "--target", "zero", "--out", str(out)])
        row = out.read_text().strip().splitlines()[1]
        assert row.split(",")[9] == "0"

    def test_byte_identical_reruns(self, workdir, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["pipeline", "--graph", workdir["graph"], "--charge", "random-unsat 5",
                "--target", "random-sat 9", "--seed", "3"]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_text() == b.read_text()


class TestCheck:
    def test_valid_refutation(self, workdir):
        assert main(["check", "refutation", workdir["cnf"], workdir["trace"]]) == 0

    def test_corrupted_trace_rejected(self, workdir, tmp_path):
        lines = open(workdir["trace"]).read().splitlines()
        # flip a literal in the last derived step
        parts = lines[-1].split()
        parts[1] = "1"
        bad = tmp_path / "bad.trace"
        bad.write_text("\n".join(lines[:-1] + [" ".join(parts)]) + "\n")
        assert main(["check", "refutation", workdir["cnf"], str(bad)]) != 0

    def test_valid_bp(self, workdir):
        assert main(["check", "bp", workdir["tseitin"], workdir["bp"]]) == 0

    def test_wrong_charge_bp_rejected(self, workdir):
        assert main(["check", "bp", workdir["tseitin_zero"], workdir["bp"]]) != 0

    def test_dnnf_equiv(self, workdir):
        assert main(["check", "dnnf-equiv", workdir["tseitin_zero"], workdir["nnf"]]) == 0

    def test_dnnf_not_equiv(self, workdir):
        assert main(["check", "dnnf-equiv", workdir["tseitin"], workdir["nnf"]]) != 0

    def test_certificate(self, workdir):
        assert main(["check", "certificate", workdir["k4"], workdir["cert"]]) == 0

    def test_certificate_wrong_graph(self, workdir):
        assert main(["check", "certificate", workdir["graph"], workdir["cert"]]) != 0


class TestConvert:
    @pytest.mark.parametrize("kind,fmt", [
        ("graph", "graph"), ("tseitin", "tseitin"), ("cnf", "cnf"),
        ("nnf", "nnf"), ("bp", "bp"), ("trace", "trace"),
    ])
    def test_round_trips(self, workdir, tmp_path, kind, fmt):
        out = tmp_path / f"out.{fmt}"
        assert main(["convert", workdir[kind], "--format", fmt, "--out", str(out)]) == 0
        again = tmp_path / f"again.{fmt}"
        assert main(["convert", str(out), "--format", fmt, "--out", str(again)]) == 0
        assert out.read_text() == again.read_text()

    def test_tseitin_to_cnf(self, workdir, tmp_path):
        out = tmp_path / "out.cnf"
        assert main(["convert", workdir["tseitin"], "--format", "cnf", "--out", str(out)]) == 0
        assert out.read_text() == open(workdir["cnf"]).read()

    def test_bad_file(self, workdir, tmp_path):
        junk = tmp_path / "junk"
        junk.write_text("what even is this\n")
        assert main(["convert", str(junk), "--format", "graph"]) == 1


class TestBuildBp:
    def test_emits_valid_program(self, workdir, tmp_path):
        out = tmp_path / "out.bp"
        assert main(["build-bp", workdir["tseitin"], "--out", str(out)]) == 0
        assert main(["check", "bp", workdir["tseitin"], str(out)]) == 0

    def test_satisfiable_rejected(self, workdir):
        assert main(["build-bp", workdir["tseitin_zero"]]) == 1
