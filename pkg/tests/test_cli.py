import json

import pytest

from sphcover.cli import main
from sphcover.configgen import builtin_configuration
from sphcover.polytope import HPolytope, dump_hpolytope, symmetry_cone


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


CROSS4 = {
    "dimension": 4,
    "field": {"kind": "rational"},
    "generators": [{"type": "subset_signs", "support": 1, "value": "1"}],
}


def _reduced_table1_5():
    """Cone plus one polar row per descending point pattern of table1:5."""
    from sphcover.polytope import POLAR, Halfspace

    config = builtin_configuration(5)
    reps = sorted({tuple(sorted(p, reverse=True)) for p in config.points})
    return HPolytope(
        5,
        symmetry_cone(5, config.field) + tuple(Halfspace(r, POLAR) for r in reps),
        config.field,
    )


@pytest.fixture
def cross4_path(tmp_path):
    path = tmp_path / "cross4.json"
    path.write_text(json.dumps(CROSS4))
    return str(path)


class TestVerify:
    def test_single_dimension(self, capsys):
        code, out, err = run(capsys, "verify", "--dim", "7")
        assert code == 0
        assert "0.84688" in out and "0.85707" in out and "112" in out

    def test_all_dimensions(self, capsys):
        code, out, _ = run(capsys, "verify", "--all")
        assert code == 0
        rows = [line for line in out.splitlines() if line[:4].strip().isdigit()]
        assert len(rows) == 11
        assert all("pass" in row for row in rows)

    def test_dim_out_of_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--dim", "16"])
        assert exc.value.code == 2

    def test_exact_backend_refused_for_large_dims(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--dim", "12", "--backend", "exact"])
        assert exc.value.code == 2

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "5", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data[0]["dimension"] == 5
        assert data[0]["cos2_radius"] == "2/5"

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "8", "--format", "csv")
        assert code == 0
        assert out.splitlines()[1] == "8,240,0.78540,0.84806,0.06266,yes"

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.txt"
        code, out, _ = run(capsys, "verify", "--dim", "5", "-o", str(target))
        assert code == 0
        assert out == ""
        assert "0.88608" in target.read_text()

    def test_byte_deterministic(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--dim", "5", "--format", "json")
        code2, out2, _ = run(capsys, "verify", "--dim", "5", "--format", "json")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_math_failure_exits_one(self, capsys, monkeypatch):
        import sphcover.cli as cli
        from sphcover.covering import BoundVerificationError

        def boom(*args, **kwargs):
            raise BoundVerificationError(5, "forced failure for the test")

        monkeypatch.setattr(cli, "verify_bounds", boom)
        code, out, err = run(capsys, "verify", "--dim", "5")
        assert code == 1
        assert "FAILED" in err


class TestRadius:
    def test_cross_polytope_file(self, capsys, cross4_path):
        code, out, _ = run(capsys, "radius", cross4_path)
        assert code == 0  # threshold verdict is data, not an error
        assert "1.04720" in out
        assert "within threshold:  no" in out

    def test_builtin_by_name(self, capsys):
        code, out, _ = run(capsys, "radius", "table1:9")
        assert code == 0
        assert "19/73+12/73*sqrt(2)" in out
        assert "0.79265" in out

    def test_asymmetric_sign_counts_exit_two(self, capsys, tmp_path):
        bad = {
            "dimension": 4,
            "field": {"kind": "rational"},
            "generators": [
                {"type": "subset_signs", "support": 3, "sign_counts": [0, 1],
                 "value": "1"}
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, out, err = run(capsys, "radius", str(path))
        assert code == 2
        assert "not negation-symmetric" in err

    def test_unparseable_file_exit_two(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{this is not json")
        code, _, err = run(capsys, "radius", str(path))
        assert code == 2

    def test_unbounded_exit_one(self, capsys, monkeypatch):
        import sphcover.cli as cli
        from sphcover.polytope import Unbounded
        from fractions import Fraction

        def boom(*args, **kwargs):
            raise Unbounded((Fraction(1), Fraction(0)))

        monkeypatch.setattr(cli, "covering_radius", boom)
        code, _, err = run(capsys, "radius", "table1:5")
        assert code == 1
        assert "origin" in err

    def test_float_override(self, capsys):
        code, out, _ = run(
            capsys, "radius", "table1:6", "--backend", "float", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines()[1].startswith("6,44,0.84107,0.86912")


class TestOracle:
    def test_cube_fixture_agreement(self, capsys, cross4_path):
        code, out, _ = run(capsys, "oracle", cross4_path, "--samples", "2000")
        assert code == 0
        assert "agreement: OK" in out

    def test_hrep_dump_roundtrip_agrees(self, capsys, tmp_path):
        # an equivalent reduced system brute-forces to the same vertex set
        path = tmp_path / "dump.txt"
        dump_hpolytope(_reduced_table1_5(), path)
        code, out, _ = run(capsys, "oracle", "table1:5", "--hrep", str(path))
        assert code == 0
        assert "agreement: OK" in out

    def test_corrupted_hrep_disagrees(self, capsys, tmp_path):
        path = tmp_path / "dump.txt"
        dump_hpolytope(_reduced_table1_5(), path)
        lines = path.read_text().splitlines()
        # tighten a constraint that is active at the deepest hole, keeping
        # the file parseable; the brute-forced vertex set must then differ
        idx = lines.index("polar: 2 2 0 0 0")
        lines[idx] = "polar: 4 4 0 0 0"
        path.write_text("\n".join(lines) + "\n")
        code, out, err = run(capsys, "oracle", "table1:5", "--hrep", str(path))
        assert code == 1
        assert "MISMATCH" in out

    def test_missing_config_exit_two(self, capsys):
        code, _, err = run(capsys, "oracle", "no-such-file.json")
        assert code == 2


class TestUsage:
    def test_no_command(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_bad_threads(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--dim", "5", "--threads", "0"])
        assert exc.value.code == 2
