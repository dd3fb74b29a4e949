import json
import subprocess
import sys

import pytest

from propindep import bundled, cli, sat
from propindep.formula import parse

DECISIONS = [
    ["indep", "{f}", "--lits", "b"],
    ["indep", "{f}", "--lits", "~b"],
    ["indep", "{f}", "--vars", "c"],
    ["is-simplified", "{f}", "--mode", "lit"],
    ["equiv", "{f}", "{g}", "--lits", "b"],
    ["equiv", "{f}", "{g}", "--vars", "b"],
    ["sat", "{f}"],
    ["circ", "{f}", "--p", "a b", "--query", "~(a & b)"],
    ["relevance", "{f}", "--vars", "b", "--notion", "strict97"],
    ["relevance", "{f}", "--vars", "a", "--notion", "strict95"],
    ["natural", "{f}", "--query", "a | b"],
]


@pytest.fixture
def files(tmp_path):
    f = tmp_path / "f.frm"
    f.write_text("# demo\nvars: a b c\na & ~b & (b | ~b)\n")
    g = tmp_path / "g.frm"
    g.write_text("a & ~b & (a | b)\n")
    return {"f": str(f), "g": str(g), "dir": tmp_path}


def fill(argv, files):
    return [a.format(**files) for a in argv]


class TestBundledFixtures:
    @pytest.mark.parametrize("oracle", [False, True])
    def test_all_checks_pass(self, oracle):
        outcomes = list(bundled.run_checks(use_oracle=oracle))
        assert outcomes
        bad = [o for o in outcomes if not o.ok]
        assert not bad, bad


class TestVerdicts:
    @pytest.mark.parametrize("argv", DECISIONS, ids=lambda a: " ".join(a[:1] + a[2:]))
    def test_main_and_oracle_agree(self, argv, files):
        args = fill(argv, files)
        main = cli.run(args)
        twin = cli.run(["oracle"] + args)
        assert main.status == twin.status == "ok"
        assert main.payload == twin.payload
        assert main.exit_code == twin.exit_code == (cli.EXIT_OK if main.payload else cli.EXIT_FALSE)

    def test_exit_codes(self, files, capsys):
        assert cli.main(["indep", files["f"], "--lits", "b"]) == cli.EXIT_OK
        assert cli.main(["indep", files["f"], "--lits", "~b"]) == cli.EXIT_FALSE
        assert cli.main(["indep", files["f"]]) == cli.EXIT_USAGE
        assert cli.main(["nonsense"]) == cli.EXIT_USAGE
        assert cli.main(["deplit", str(files["dir"] / "missing.frm")]) == cli.EXIT_USAGE
        err = capsys.readouterr().err
        assert "usage" in err

    def test_non_decisions_exit_zero(self, files):
        assert cli.run(["deplit", files["f"]]).exit_code == cli.EXIT_OK
        assert cli.run(["forget", files["f"], "--lits", "a"]).exit_code == cli.EXIT_OK

    def test_bad_formula_is_usage_error(self, tmp_path):
        p = tmp_path / "bad.frm"
        p.write_text("a & & b\n")
        res = cli.run(["deplit", str(p)])
        assert res.exit_code == cli.EXIT_USAGE and res.status == "error"

    def test_undeclared_variable_in_query(self, files):
        res = cli.run(["natural", files["f"], "--query", "zz"])
        assert res.exit_code == cli.EXIT_USAGE


class TestLimits:
    @pytest.fixture
    def parity(self, tmp_path):
        p = tmp_path / "parity.frm"
        p.write_text("a ^ b ^ c ^ d ^ e ^ f ^ g ^ h ^ i\n")
        return str(p)

    def test_oracle_cap(self, parity):
        assert cli.run(["oracle", "depvar", parity, "--max-bf", "4"]).exit_code == cli.EXIT_LIMIT
        assert cli.run(["oracle", "depvar", parity, "--max-bf", "12"]).exit_code == cli.EXIT_OK

    def test_output_size(self, parity):
        assert cli.run(["primes", parity, "--max-size", "50"]).exit_code == cli.EXIT_LIMIT
        res = cli.run(["forget", parity, "--lits", "a b c d", "--strategy", "definitional", "--max-size", "10"])
        assert res.exit_code == cli.EXIT_LIMIT

    def test_main_reports_on_stderr(self, parity, capsys):
        assert cli.main(["primes", parity, "--max-size", "50"]) == cli.EXIT_LIMIT
        out = capsys.readouterr()
        assert out.out == "" and "resource limit" in out.err


class TestFormats:
    def test_records_are_self_delimiting(self, files, capsys):
        for argv in (["deplit", files["f"]], ["primes", files["g"]], ["inventory", files["f"]]):
            cli.main(argv + ["--format", "records"])
        blocks = capsys.readouterr().out.split("end\n")
        assert blocks[-1] == ""
        blocks = blocks[:-1]
        assert len(blocks) == 3
        for block in blocks:
            fields = dict(line.split("=", 1) for line in block.splitlines())
            assert fields["status"] == "ok"
            if "count" in fields:
                assert int(fields["count"]) == len(block.splitlines()) - 4

    def test_records_are_stable(self, files):
        argv = ["forget", files["f"], "--lits", "a", "--format", "records"]
        first = cli.format_result(cli.run(argv))
        assert first == cli.format_result(cli.run(argv))
        assert "timing_ms" not in first
        assert "timing_ms" in cli.format_result(cli.run(argv + ["--timing"]))

    def test_formula_text_round_trips(self, files):
        res = cli.run(["forget", files["f"], "--lits", "~b"])
        text = cli.format_result(res).strip()
        assert sat.equivalent(parse(text), res.payload)
        assert sat.equivalent(parse(text), parse("a"))

    def test_json(self, files):
        out = cli.format_result(cli.run(["indep", files["f"], "--lits", "~b", "--format", "json"]))
        doc = json.loads(out)
        assert doc["result"] is False and doc["command"] == "indep"
        prim = json.loads(cli.format_result(cli.run(["primes", files["g"], "--format", "json"])))
        assert sorted(prim["result"]) == ["a", "~b"]

    def test_dimacs_output_and_input(self, files, tmp_path):
        out = cli.format_result(cli.run(["forget", files["g"], "--vars", "a", "--format", "dimacs"]))
        assert out.startswith("c") or out.startswith("p cnf")
        back = tmp_path / "back.cnf"
        back.write_text(out)
        res = cli.run(["sat", str(back)])
        assert res.payload is True
        cnf = tmp_path / "in.cnf"
        cnf.write_text("c demo\np cnf 2 2\n1 -2 0\n2 0\n")
        assert cli.run(["depvar", str(cnf)]).payload == {"x1", "x2"}

    def test_dimacs_refused_for_verdicts(self, files):
        assert cli.main(["sat", files["f"], "--format", "dimacs"]) == cli.EXIT_USAGE


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "propindep", "deplit", files["f"]], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "a ~b"
