"""
Test module for the command line front end.

Commands are run in-process through ``run`` and their printed output
and exit codes are checked.
"""

import json
import pytest


@pytest.fixture
def heisenberg_file(tmp_path, heisenberg):
    from src.parsers.algebra_parser import AlgebraParser

    return AlgebraParser().write_file(heisenberg, tmp_path / "heisenberg.json")


class TestEnTest:
    def test_c_1_0_certificate(self, config, capsys):
        from main import run

        code = run(["en-test", "c_1_0_8"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Status: No" in out
        assert "Certificate: coordinate 1 constant -9/281" in out

    def test_d1_with_certificate_details(self, config, capsys):
        from main import run

        code = run(["en-test", "d1_8", "--certificate"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Status: Yes" in out
        assert "Eigenvalue type: 1<4<5<6<7<8<9<10" in out
        assert "Roots: (1,2,3) (1,3,4)" in out
        assert "v1 = 3/62" in out
        assert "1 free parameter(s)" in out

    def test_json_output_round_trips(self, config, capsys):
        from main import run
        from src.models.verdict import ENVerdict

        code = run(["en-test", "g8", "--param", "alpha=-2", "--json"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert json.loads(out)["status"] == "No"
        assert ENVerdict.model_validate_json(out).to_json() + "\n" == out

    def test_save_writes_verdict_file(self, config, capsys):
        from main import run

        code = run(["en-test", "h1_8", "--save"], config)

        assert code == 0
        assert (config.output_folder / "h1_8_verdict.json").exists()

    def test_heisenberg_file_is_not_applicable(self, config, capsys, heisenberg_file):
        from main import run

        code = run(["en-test", str(heisenberg_file)], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Status: NotApplicable" in out
        assert "Reason: eigenvalues not simple" in out


class TestPreEinstein:
    def test_h1_type(self, config, capsys):
        from main import run

        code = run(["pre-einstein", "h_1_8"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Eigenvalue type: 1<5<6<7<8<9<10<11" in out
        assert "Simple: yes" in out

    def test_parametric_member(self, config, capsys):
        from main import run

        code = run(["pre-einstein", "a8", "--param", "t=5/2"], config)

        assert code == 0
        assert "Eigenvalue type: 1<3<4<5<6<7<8<9" in capsys.readouterr().out


class TestValidate:
    def test_valid_file(self, config, capsys, heisenberg_file):
        from main import run

        code = run(["validate", str(heisenberg_file)], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Jacobi identity holds" in out
        assert "central series dimensions (3, 1, 0)" in out
        assert "Filiform: yes" in out

    def test_jacobi_failure_is_reported(self, config, capsys, tmp_path):
        from main import run

        path = tmp_path / "broken.json"
        path.write_text(json.dumps({
            "name": "broken",
            "dim": 3,
            "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 2, "j": 3, "k": 2, "c": "1"}],
        }), encoding="utf-8")

        code = run(["validate", str(path)], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Jacobi identity fails on 1 component(s)" in out
        assert "J(1,2,3)[e3] = 1" in out

    def test_parametric_catalog_entry(self, config, capsys):
        from main import run

        code = run(["validate", "g8"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Jacobi identity holds" in out
        assert "['alpha'] are free" in out


class TestCatalogCommand:
    def test_list(self, config, capsys):
        from main import run

        code = run(["catalog", "list"], config)
        lines = capsys.readouterr().out.splitlines()

        assert code == 0
        assert len(lines) == 11
        assert lines[0].startswith("m0_8")
        assert "Yes iff alpha ∉ {-2}" in lines[3]

    def test_export_parses_back(self, config, capsys, catalog):
        from main import run
        from src.parsers.algebra_parser import AlgebraParser

        code = run(["catalog", "export", "d1_8"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert AlgebraParser().parse_text(out).same_structure(catalog.get("d1_8"))

    def test_export_without_name_is_usage_error(self, config, capsys):
        from main import run

        assert run(["catalog", "export"], config) == 1
        assert "Usage error" in capsys.readouterr().err


class TestTable2Command:
    def test_table_matches(self, config, capsys):
        from main import run

        code = run(["table2"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "All 13 rows match" in out
        assert "𝔤_{-2}(8)" in out

    def test_save_report(self, tmp_path, capsys):
        from main import run
        from src.config.settings import AppConfig

        config = AppConfig(output_folder=str(tmp_path / "reports"), report_output_format="csv")
        code = run(["table2", "--save"], config)

        assert code == 0
        assert len(list((tmp_path / "reports").glob("table2_*.csv"))) == 1


class TestRankProfileCommand:
    def test_basis_and_pair_samples(self, tmp_path, capsys, heisenberg_file):
        """
        Without random samples only e1, e2, e3 and their pairwise sums are
        tallied; e3 alone is central.
        """
        from main import run
        from src.config.settings import AppConfig

        config = AppConfig(output_folder=str(tmp_path / "output"), rank_profile_random_samples=0)
        code = run(["rank-profile", str(heisenberg_file)], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "rank 0: 1 sample(s)" in out
        assert "rank 1: 5 sample(s)" in out

    def test_random_sample_count_comes_from_config(self, tmp_path, capsys):
        from main import run
        from src.config.settings import AppConfig

        totals = []
        for extra in (0, 7):
            config = AppConfig(output_folder=str(tmp_path / "output"), rank_profile_random_samples=extra)
            assert run(["rank-profile", "m2_8"], config) == 0
            out = capsys.readouterr().out
            totals.append(sum(int(line.split(": ")[1].split()[0]) for line in out.splitlines() if line.startswith("rank ")))

        assert totals == [8 + 28, 8 + 28 + 7]

    def test_seed_comes_from_config(self, tmp_path, capsys, catalog):
        from main import run
        from src.config.settings import AppConfig
        from src.services.lie_structure import rank_profile

        config = AppConfig(output_folder=str(tmp_path / "output"), rank_profile_seed=3)
        assert run(["rank-profile", "g8", "--param", "alpha=3"], config) == 0
        out = capsys.readouterr().out

        algebra = catalog.get("g8", {"alpha": 3})
        for rank, count in rank_profile(algebra, 0, seed=3).items():
            assert f"rank {rank}: {count} sample(s)" in out

    def test_quotient_index(self, config, capsys, heisenberg_file):
        from main import run

        code = run(["rank-profile", str(heisenberg_file), "--index", "1"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Quotient by C1" in out
        assert "rank 0:" in out
        assert "rank 1:" not in out

    def test_index_outside_series(self, config, capsys, heisenberg_file):
        from main import run

        code = run(["rank-profile", str(heisenberg_file), "--index", "3"], config)

        assert code == 1
        assert "QuotientIndexError" in capsys.readouterr().err


class TestFlowCommand:
    def test_heisenberg_flow_json(self, config, capsys, heisenberg_file):
        from main import run

        code = run(["flow", str(heisenberg_file), "--json"], config)
        data = json.loads(capsys.readouterr().out)

        assert code == 0
        assert data["converged"] is True
        assert data["phi_ratios"] == pytest.approx([1.0, 1.0, 2.0], abs=1e-6)

    def test_flow_text_output(self, config, capsys):
        from main import run

        code = run(["flow", "m0_8", "--max-iter", "3"], config)
        out = capsys.readouterr().out

        assert code == 0
        assert "Converged: no" in out


class TestErrors:
    def test_unknown_catalog_name(self, config, capsys):
        from main import run

        code = run(["en-test", "x9"], config)

        assert code == 1
        assert "UnknownAlgebraError" in capsys.readouterr().err

    def test_missing_parameter(self, config, capsys):
        from main import run

        code = run(["en-test", "g8"], config)

        assert code == 1
        assert "CatalogParameterError" in capsys.readouterr().err

    def test_malformed_parameter(self, config, capsys):
        from main import run

        assert run(["en-test", "g8", "--param", "alpha"], config) == 1
        assert run(["en-test", "g8", "--param", "alpha=x"], config) == 1

    def test_missing_file(self, config, capsys, tmp_path):
        from main import run

        code = run(["en-test", str(tmp_path / "missing.json")], config)

        assert code == 1
        assert "File not found" in capsys.readouterr().err

    def test_malformed_file(self, config, capsys, tmp_path):
        from main import run

        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")

        assert run(["validate", str(path)], config) == 1
        assert "AlgebraParsingError" in capsys.readouterr().err

    def test_no_command(self, config, capsys):
        from main import run

        assert run([], config) == 1
