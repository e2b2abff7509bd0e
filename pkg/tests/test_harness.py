import json

import numpy as np
import pytest

from actionlim import GraphSpec, adjacency, broadcast
from actionlim.harness import (
    SUITES,
    ExperimentConfig,
    load_edge_list,
    parse_operator_spec,
    run_experiment,
    run_verify,
)


class TestOperatorSpecs:
    @pytest.mark.parametrize(
        "spec,n",
        [
            ("star:6", 6),
            ("cycle:5", 5),
            ("complete:4", 4),
            ("path:3", 3),
            ("empty:2", 2),
            ("gplus:cycle:4", 5),
            ("broadcast:5", 5),
            ("broadcast:5:2", 5),
            ("signed:+1:0:cycle:4", 4),
            ("signed:-:1:star:6", 6),
            ("er:10:0.3:1", 10),
        ],
    )
    def test_specs_parse(self, spec, n):
        assert parse_operator_spec(spec).n == n

    def test_broadcast_spec_column(self):
        op = parse_operator_spec("broadcast:5:2")
        assert np.array_equal(op.matrix, broadcast(5, 2).matrix)

    def test_signed_spec_matches_library(self):
        got = parse_operator_spec("signed:-1:1:cycle:4")
        base = adjacency(GraphSpec("cycle", 4))
        assert np.array_equal(got.matrix, base.matrix - broadcast(4, 1).matrix)

    def test_bad_spec_raises(self):
        with pytest.raises(ValueError):
            parse_operator_spec("hypercube:8")

    def test_operator_json_round_trip(self, tmp_path):
        path = tmp_path / "op.json"
        path.write_text(json.dumps(adjacency(GraphSpec("star", 5)).to_dict()))
        assert parse_operator_spec(str(path)).n == 5

    def test_edge_list_file(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("# triangle plus pendant\n0 1\n1 2\n2 0\n2 3\n")
        spec = load_edge_list(path)
        assert spec.n == 4
        A = adjacency(spec)
        assert A.matrix.sum() == 8.0

    def test_edge_list_malformed(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("0 1 2\n")
        with pytest.raises(ValueError, match="malformed"):
            load_edge_list(path)


class TestVerify:
    def test_single_suite_passes(self):
        records = run_verify("norms")
        assert records
        assert all(r.passed is True for r in records)

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_verify("nope")

    def test_time_guard_skips(self):
        records = run_verify("all", time_guard=0.0)
        assert records
        assert all(r.passed == "skip" for r in records)

    def test_records_written_as_json_lines(self, tmp_path):
        out = tmp_path / "records.jsonl"
        run_verify("self_adjoint", out=out)
        lines = out.read_text().splitlines()
        assert len(lines) >= 2
        rec = json.loads(lines[0])
        assert set(rec) == {"id", "anchor", "expected", "measured", "pass", "ms"}

    def test_fast_suites_pass(self):
        for name in ("self_adjoint", "regularity", "norm_gap", "adjoint_duality"):
            assert all(r.passed is True for r in run_verify(name))


class TestExperiment:
    def test_config_file_with_overrides(self, tmp_path):
        cfg_path = tmp_path / "exp.cfg"
        cfg_path.write_text("# comment\nsizes = 4, 6\ncount = 2\nseed = 5\n")
        cfg = ExperimentConfig.from_file(cfg_path, {"count": "3"})
        assert cfg.sizes == (4, 6)
        assert cfg.count == 3
        assert cfg.seed == 5

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown config key"):
            ExperimentConfig.from_mapping({"wat": "1"})

    def test_run_and_replay_identical(self, tmp_path):
        cfg = ExperimentConfig(sizes=(4, 8), K=2, count=2, seed=1, out=str(tmp_path / "a"))
        outdir = run_experiment(cfg)
        csv1 = (outdir / "trajectory.csv").read_text()
        manifest = json.loads((outdir / "manifest.json").read_text())
        assert manifest["config"]["sizes"] == [4, 8]
        assert (outdir / "report_n4.json").exists()
        run_experiment(cfg)
        assert (outdir / "trajectory.csv").read_text() == csv1

    def test_probe_template_experiment(self, tmp_path):
        cfg = ExperimentConfig(
            experiment="gplus_vs_signed",
            graph_a="gplus:cycle:{n}",
            graph_b="signed:+1:0:cycle:{n1}",
            sizes=(4,),
            K=1,
            count=3,
            seed=1,
            strategy="vertex_probe",
            probe_a="last",
            probe_b="0",
            out=str(tmp_path / "b"),
        )
        outdir = run_experiment(cfg)
        rows = (outdir / "trajectory.csv").read_text().splitlines()
        assert rows[0] == "n,action_distance,norm_a,norm_b"
        assert rows[1].startswith("4,")
