import textwrap

import pytest

from superschur.catalog import (
    CatalogError,
    builtin_algebras,
    parse_catalog,
    render_catalog,
)
from superschur.cli import main
from superschur.superalg import SuperDim

HEIS3_RECORD = textwrap.dedent(
    """\
    # classical Heisenberg algebra
    algebra heis3
    even e1 e2 e3
    [e1,e2] = e3
    end
    """
)


class TestParse:
    def test_heis3_record(self):
        (alg,) = parse_catalog(HEIS3_RECORD)
        assert alg.name == "heis3"
        assert alg.sdim == SuperDim(3, 0)
        assert alg.validate().ok

    def test_duplicate_pair_rejected(self):
        text = textwrap.dedent(
            """\
            algebra bad
            even e1 e2 e3
            [e1,e2] = e3
            [e2,e1] = e3
            end
            """
        )
        with pytest.raises(CatalogError, match="duplicate bracket"):
            parse_catalog(text)

    def test_wrong_parity_target_names_entry(self):
        text = textwrap.dedent(
            """\
            algebra bad
            even e1 e2
            odd f1
            [e1,e2] = f1
            end
            """
        )
        with pytest.raises(CatalogError, match=r"\[e1,e2\] targets f1"):
            parse_catalog(text)

    def test_syntax_error_carries_line(self):
        text = "algebra a\neven e1\n[e1 e2] = e1\nend\n"
        with pytest.raises(CatalogError) as err:
            parse_catalog(text)
        assert err.value.line == 3

    def test_unknown_label(self):
        text = "algebra a\neven e1 e2 e3\n[e1,zz] = e3\nend\n"
        with pytest.raises(CatalogError, match="unknown label"):
            parse_catalog(text)

    def test_reversed_entry_normalized_by_skew(self):
        text = textwrap.dedent(
            """\
            algebra rev
            even e1 e2 e3
            [e2,e1] = -e3
            end
            """
        )
        (alg,) = parse_catalog(text)
        ref = parse_catalog(HEIS3_RECORD)[0]
        assert alg._canon() == ref._canon()

    def test_invalid_algebra_rejected_at_parse(self):
        text = textwrap.dedent(
            """\
            algebra bad
            even e1 e2 e3 e4
            [e1,e2] = e3
            [e1,e3] = e1
            end
            """
        )
        with pytest.raises(CatalogError, match="not a Lie superalgebra"):
            parse_catalog(text)

    def test_missing_end(self):
        with pytest.raises(CatalogError, match="missing its 'end'"):
            parse_catalog("algebra a\neven e1\n")

    def test_rational_coefficients(self):
        text = textwrap.dedent(
            """\
            algebra frac
            even e1 e2 e3
            [e1,e2] = 1/2*e3
            end
            """
        )
        (alg,) = parse_catalog(text)
        from fractions import Fraction

        assert alg._canon() == {(0, 1): {2: Fraction(1, 2)}}

    def test_empty_record_is_zero_algebra(self):
        (alg,) = parse_catalog("algebra nil\nend\n")
        assert alg.dim == 0


class TestRoundTrip:
    def test_builtin_catalog(self):
        algs = builtin_algebras()
        text = render_catalog(algs)
        parsed = parse_catalog(text)
        assert len(parsed) == len(algs)
        for a, b in zip(algs, parsed):
            assert a.name == b.name
            assert a.basis_labels == b.basis_labels
            assert a.parities == b.parities
            assert a._canon() == b._canon()

    def test_render_is_stable(self):
        algs = builtin_algebras()
        text = render_catalog(algs)
        assert render_catalog(parse_catalog(text)) == text


class TestCli:
    def test_multiplier_both_on_heis3(self, capsys):
        code = main(["multiplier", "--algebra", "heis3", "--method", "both"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("(2|0)") == 2

    def test_bounds_skip_abelian(self, capsys):
        code = main(["bounds", "--algebra", "A(2|1)"])
        out = capsys.readouterr().out
        assert code == 0
        assert "hypotheses not met (r+s=0)" in out

    def test_identity_sweep(self, capsys):
        code = main(["identity", "--arity-max", "4"])
        out = capsys.readouterr().out
        assert code == 0
        assert "parity_cases = 16" in out and "parity_cases = 32" in out
        assert "nonzero_residuals = 0" in out

    def test_unknown_algebra_is_usage_error(self, capsys):
        code = main(["multiplier", "--algebra", "nope"])
        assert code == 1
        assert "unknown algebra" in capsys.readouterr().err

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.cat"
        bad.write_text("algebra a\neven e1\n[e1 e1] = e1\nend\n")
        code = main(["check", str(bad)])
        assert code == 1
        assert "line 3" in capsys.readouterr().err

    def test_stdin_catalog(self, monkeypatch, capsys):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(HEIS3_RECORD))
        code = main(["invariants", "-"])
        out = capsys.readouterr().out
        assert code == 0
        assert "class = 2" in out

    def test_reports_are_deterministic(self, capsys):
        main(["--format", "json", "verify", "--algebra", "heis3"])
        first = capsys.readouterr().out
        main(["--format", "json", "verify", "--algebra", "heis3"])
        second = capsys.readouterr().out
        assert first == second

    def test_format_after_subcommand_and_env(self, capsys, monkeypatch):
        code = main(["multiplier", "--algebra", "heis3", "--format", "csv"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0].startswith("algebra,")
        monkeypatch.setenv("SUPERSCHUR_FORMAT", "csv")
        code = main(["multiplier", "--algebra", "heis3"])
        out2 = capsys.readouterr().out
        assert code == 0 and out2.splitlines()[0].startswith("algebra,")

    def test_free_with_hilbert(self, capsys):
        code = main(["free", "--even", "2", "--odd", "1", "--class", "3", "--hilbert"])
        out = capsys.readouterr().out
        assert code == 0
        assert "hilbert_ok = True" in out
        assert "(8|7)" in out

    def test_verify_catalog_green(self, capsys):
        code = main(["verify", "--algebra", "heis3", "--algebra", "sh(0|2)"])
        out = capsys.readouterr().out
        assert code == 0
        assert "status: ok" in out

    def test_check_builtin(self, capsys):
        code = main(["check"])
        out = capsys.readouterr().out
        assert code == 0
        assert "valid = True" in out

    def test_usage_error_is_exit_one(self, capsys):
        assert main(["free", "--even", "2"]) == 1

    def test_json_format_on_bounds(self, capsys):
        import json

        code = main(["--format", "json", "bounds", "--algebra", "heis3"])
        out = capsys.readouterr().out
        assert code == 0
        payload = json.loads(out)
        assert payload["results"][0]["tight"] is True

    def test_method_disagreement_prints_both_and_exits_2(self, capsys, monkeypatch):
        from superschur import cli as cli_mod
        from superschur.multiplier import MultiplierResult

        monkeypatch.setattr(
            cli_mod,
            "schur_multiplier_cohomology",
            lambda L: MultiplierResult(SuperDim(9, 9), "cohomology"),
        )
        code = main(["multiplier", "--algebra", "heis3", "--method", "both"])
        out = capsys.readouterr().out
        assert code == 2
        assert "(2|0)" in out and "(9|9)" in out
        assert "methods_agree = False" in out

    def test_report_numbers_match_module_calls(self, capsys):
        import json

        from superschur.catalog import heisenberg3
        from superschur.multiplier import schur_multiplier_hopf

        code = main(["--format", "json", "multiplier", "--algebra", "heis3",
                     "--method", "hopf"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        direct = schur_multiplier_hopf(heisenberg3()).dims
        assert out["results"][0]["multiplier_hopf"] == str(direct)
