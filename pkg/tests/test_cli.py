import json

import pytest

from erbimatch.cli import main
from erbimatch.evaluation import GroundTruth
from erbimatch.graph import write_edge_list
from erbimatch.ingest import write_ground_truth
from erbimatch.reference import REFERENCE_TRUE_PAIRS, reference_graph


@pytest.fixture
def demo_files(tmp_path):
    graph_path = tmp_path / "graph.tsv"
    gt_path = tmp_path / "gt.tsv"
    write_edge_list(reference_graph(), graph_path)
    write_ground_truth(GroundTruth(REFERENCE_TRUE_PAIRS), gt_path)
    return graph_path, gt_path


@pytest.fixture
def profile_files(tmp_path):
    left = tmp_path / "left.csv"
    right = tmp_path / "right.csv"
    left.write_text("id,name\na1,green apple\na2,ripe banana\n",
                    encoding="utf-8")
    right.write_text("id,name\nb1,green apple\nb2,grape soda\n",
                     encoding="utf-8")
    return left, right


class TestSweepCommand:
    def test_happy_path(self, demo_files, tmp_path, capsys):
        graph, gt = demo_files
        report = tmp_path / "sweep.json"
        code = main(["sweep", "--graph", str(graph), "--gt", str(gt),
                     "--algorithm", "umc", "--report", str(report)])
        assert code == 0
        payload = json.loads(report.read_text())
        assert payload["optimal_t"] == 0.70
        assert payload["optimal_score"]["f_measure"] == 1.0

    def test_stdout_when_no_report_path(self, demo_files, capsys):
        graph, gt = demo_files
        code = main(["sweep", "--graph", str(graph), "--gt", str(gt),
                     "--algorithm", "UMC"])  # case-insensitive
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["algorithm"] == "umc"

    def test_csv_format(self, demo_files, tmp_path):
        graph, gt = demo_files
        report = tmp_path / "sweep.csv"
        code = main(["sweep", "--graph", str(graph), "--gt", str(gt),
                     "--algorithm", "umc", "--format", "csv",
                     "--report", str(report)])
        assert code == 0
        assert len(report.read_text().strip().splitlines()) == 21

    def test_deterministic_report_bytes(self, demo_files, tmp_path):
        graph, gt = demo_files
        blobs = []
        for run in range(2):
            report = tmp_path / f"sweep{run}.json"
            main(["sweep", "--graph", str(graph), "--gt", str(gt),
                  "--algorithm", "bah", "--seed", "7", "--max-moves", "500",
                  "--report", str(report)])
            blobs.append(report.read_bytes())
        assert blobs[0] == blobs[1]


class TestMatchCommand:
    def test_write_matching_file(self, demo_files, tmp_path, capsys):
        graph, _ = demo_files
        out = tmp_path / "m.tsv"
        code = main(["match", "--graph", str(graph), "--algorithm", "krc",
                     "--threshold", "0.5", "--output", str(out)])
        assert code == 0
        content = out.read_text()
        assert "# algorithm: krc" in content
        assert "A5\tB1\t" in content

    def test_out_of_range_threshold_is_usage_error(self, demo_files, tmp_path,
                                                   capsys):
        graph, _ = demo_files
        code = main(["match", "--graph", str(graph), "--algorithm", "krc",
                     "--threshold", "1.5", "--output", str(tmp_path / "m.tsv")])
        assert code == 1
        assert "threshold" in capsys.readouterr().err

    def test_unknown_algorithm_is_usage_error(self, demo_files, tmp_path,
                                              capsys):
        graph, _ = demo_files
        code = main(["match", "--graph", str(graph), "--algorithm", "hungarian",
                     "--threshold", "0.5", "--output", str(tmp_path / "m.tsv")])
        assert code == 1

    def test_missing_graph_is_data_error(self, tmp_path, capsys):
        code = main(["match", "--graph", str(tmp_path / "nope.tsv"),
                     "--algorithm", "umc", "--threshold", "0.5",
                     "--output", str(tmp_path / "m.tsv")])
        assert code == 2


class TestBuildGraphCommand:
    def test_bag_cosine(self, profile_files, tmp_path, capsys):
        left, right = profile_files
        out = tmp_path / "g.tsv"
        code = main(["build-graph", "--left", str(left), "--right", str(right),
                     "--model", "bag", "--measure", "cosine",
                     "--unit", "token", "--n", "1", "--scheme", "tf",
                     "--workers", "1", "--output", str(out)])
        assert code == 0
        assert "a1\tb1\t1.0" in out.read_text()

    def test_max_pairs_guard(self, profile_files, tmp_path, capsys):
        left, right = profile_files
        code = main(["build-graph", "--left", str(left), "--right", str(right),
                     "--model", "bag", "--measure", "cosine",
                     "--max-pairs", "2", "--output", str(tmp_path / "g.tsv")])
        assert code == 2
        assert "max-pairs" in capsys.readouterr().err

    def test_vector_model_with_embedding_files(self, profile_files, tmp_path):
        left, right = profile_files
        emb_left = tmp_path / "l.emb"
        emb_right = tmp_path / "r.emb"
        emb_left.write_text("a1\t1 0\na2\t0 1\n", encoding="utf-8")
        emb_right.write_text("b1\t1 0\nb2\t-1 0\n", encoding="utf-8")
        out = tmp_path / "g.tsv"
        code = main(["build-graph", "--left", str(left), "--right", str(right),
                     "--model", "vector", "--measure", "cosine",
                     "--embeddings-left", str(emb_left),
                     "--embeddings-right", str(emb_right),
                     "--output", str(out)])
        assert code == 0
        assert "a1\tb1\t1.0" in out.read_text()

    def test_vector_model_without_embeddings_is_usage_error(self, profile_files,
                                                            tmp_path, capsys):
        left, right = profile_files
        code = main(["build-graph", "--left", str(left), "--right", str(right),
                     "--model", "vector", "--measure", "cosine",
                     "--output", str(tmp_path / "g.tsv")])
        assert code == 1
        assert "embeddings" in capsys.readouterr().err

    def test_match_roundtrip_through_files(self, profile_files, tmp_path):
        left, right = profile_files
        graph_path = tmp_path / "g.tsv"
        match_path = tmp_path / "m.tsv"
        assert main(["build-graph", "--left", str(left), "--right", str(right),
                     "--model", "raw-string", "--measure", "jaro",
                     "--attribute", "name", "--output", str(graph_path)]) == 0
        assert main(["match", "--graph", str(graph_path), "--algorithm", "umc",
                     "--threshold", "0.9", "--output", str(match_path)]) == 0
        body = [line for line in match_path.read_text().splitlines()
                if not line.startswith("#")]
        assert body == ["a1\tb1\t1.0"]


class TestBenchCommand:
    def test_bench_report(self, demo_files, tmp_path):
        graph, _ = demo_files
        report = tmp_path / "bench.json"
        code = main(["bench", "--graph", str(graph), "--algorithm", "cnc",
                     "--threshold", "0.5", "--repetitions", "3",
                     "--report", str(report)])
        assert code == 0
        payload = json.loads(report.read_text())
        assert len(payload["timing"]["runs_s"]) == 3
        assert payload["timing"]["mean_s"] >= 0


class TestStatsCommand:
    def test_stats_payload(self, tmp_path):
        scores = tmp_path / "scores.csv"
        rows = ["input,cnc,umc,krc"]
        for i in range(20):
            rows.append(f"g{i},0.2,0.9,0.5")
        scores.write_text("\n".join(rows) + "\n", encoding="utf-8")
        report = tmp_path / "stats.json"
        code = main(["stats", "--scores", str(scores), "--report", str(report)])
        assert code == 0
        payload = json.loads(report.read_text())
        assert payload["mean_ranks"] == {"cnc": 3.0, "umc": 1.0, "krc": 2.0}
        assert payload["friedman"]["reject"] is True
        assert payload["diagram"]["axis"][0]["algorithm"] == "umc"
        assert 0 < payload["nemenyi_critical_distance"] < 2

    def test_bad_matrix_is_data_error(self, tmp_path, capsys):
        scores = tmp_path / "scores.csv"
        scores.write_text("input,a\n", encoding="utf-8")
        assert main(["stats", "--scores", str(scores)]) == 2


class TestReproduceCommand:
    def test_demo_recipe(self, capsys):
        assert main(["reproduce", "--recipe", "demo"]) == 0
        payload = json.loads(capsys.readouterr().out)
        rows = {row["algorithm"]: row for row in payload["rows"]}
        assert rows["umc"]["f_measure"] == 1.0
        assert rows["cnc"]["precision"] == 1.0
        assert rows["rca"]["pairs"] == [["A1", "B1"], ["A2", "B2"],
                                        ["A3", "B4"], ["A5", "B3"]]

    def test_table7_recipe_on_fixture_data(self, tmp_path, capsys):
        # a miniature stand-in dataset exercises the full recipe path and
        # pins the report row schema (dataset, model, measure, t, F1)
        names = ["sony cybershot camera", "dell latitude laptop",
                 "nikon coolpix zoom", "hp officejet printer",
                 "garmin nuvi navigator", "bose quietcomfort headphones"]
        d2 = tmp_path / "d2"
        d2.mkdir()
        left_rows = ["id,name"] + [f"{i},{name}" for i, name in enumerate(names)]
        right_rows = ["id,name"] + [f"r{i},{name} new" for i, name in enumerate(names)]
        (d2 / "abt.csv").write_text("\n".join(left_rows) + "\n", encoding="utf-8")
        (d2 / "buy.csv").write_text("\n".join(right_rows) + "\n", encoding="utf-8")
        (d2 / "gt.tsv").write_text(
            "".join(f"{i}\tr{i}\n" for i in range(len(names))), encoding="utf-8")
        report = tmp_path / "repro.json"
        code = main(["reproduce", "--recipe", "table7-d2",
                     "--data-dir", str(tmp_path), "--workers", "1",
                     "--report", str(report)])
        assert code == 0
        payload = json.loads(report.read_text())
        (row,) = payload["rows"]
        assert {"dataset", "model", "measure", "threshold", "f_measure",
                "precision", "recall"} <= set(row)
        assert row["dataset"] == "d2-abt-buy"
        assert row["model"] == "bag" and row["measure"] == "cosine"
        assert row["threshold"] == 0.35
        assert row["f_measure"] == 1.0  # trivially separable fixture

    def test_table7_without_data_is_data_error(self, tmp_path, capsys):
        code = main(["reproduce", "--recipe", "table7-d2",
                     "--data-dir", str(tmp_path / "absent")])
        assert code == 2
        assert "dataset files" in capsys.readouterr().err

    def test_unknown_recipe_is_usage_error(self, capsys):
        assert main(["reproduce", "--recipe", "table9"]) == 1


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_unknown_flag(self, demo_files, capsys):
        graph, gt = demo_files
        assert main(["sweep", "--graph", str(graph), "--gt", str(gt),
                     "--algorithm", "umc", "--fast"]) == 1

    def test_workers_env_override(self, monkeypatch):
        from erbimatch.cli import _default_workers

        monkeypatch.setenv("ERBIMATCH_WORKERS", "3")
        assert _default_workers() == 3
        monkeypatch.setenv("ERBIMATCH_WORKERS", "junk")
        assert _default_workers() >= 1
