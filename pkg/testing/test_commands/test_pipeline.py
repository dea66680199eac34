import json
import os
import sys

import numpy as np
import pytest
import torch

current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, "../..", "maskpad")
sys.path.append(src_path)

from builders.scores import create_records
from classes.category import Medium
from commands.command_wrapper import EXIT_INVALID_INPUT, EXIT_MISSING_INPUT, EXIT_OK
from storage.handlers.grids import read_grid
from storage.handlers.reports import read_report, read_table
from storage.handlers.scores import read_scores, write_scores

from .base import SYNTH_CONFIG, TRAIN_CONFIG, BaseCommandActionsMixin


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """A synthesised corpus and a checkpoint trained on it, shared by the module"""
    threads = torch.get_num_threads()
    torch.set_num_threads(1)
    root = tmp_path_factory.mktemp("pipeline")
    actions = BaseCommandActionsMixin()
    synth_config = actions.write_config(root, "synth.cfg", SYNTH_CONFIG)
    train_config = actions.write_config(root, "train.cfg", TRAIN_CONFIG)

    assert actions.run_command("synth", "--config", synth_config, "--out", root / "corpus") == EXIT_OK
    assert (
        actions.run_command(
            "train", "--corpus", root / "corpus", "--config", train_config, "--max-epochs", 1, "--out", root / "checkpoint"
        )
        == EXIT_OK
    )
    yield {
        "root": root,
        "corpus": root / "corpus",
        "checkpoint": root / "checkpoint",
        "synth_config": synth_config,
        "train_config": train_config,
    }
    torch.set_num_threads(threads)


class TestPipeline(BaseCommandActionsMixin):
    """Run the commands one after the other on a tiny corpus"""

    def test_synth(self, workspace):
        """The corpus directory holds the manifest, the frames, the config and the run manifest"""
        corpus = workspace["corpus"]
        lines = (corpus / "manifest.csv").read_text(encoding="utf-8").splitlines()

        assert lines[0] == "video_id,identity,category,medium,n_frames,path"
        assert len(lines) == 41
        assert (corpus / "synth_config.cfg").is_file()
        assert len(list((corpus / "videos").rglob("*.png"))) == 40

        run_manifest = json.loads((corpus / "run_manifest.json").read_text(encoding="utf-8"))
        assert run_manifest["command"] == "synth"
        assert run_manifest["seeds"] == [0]
        assert run_manifest["config_paths"] == [str(workspace["synth_config"])]

    def test_labels(self, workspace, tmp_path):
        """Every frame gets a label grid and a weight map at the grid size"""
        out = tmp_path / "labels"
        assert self.run_command("labels", "--corpus", workspace["corpus"], "--preview", "--out", out) == EXIT_OK

        manifest = (workspace["corpus"] / "manifest.csv").read_text(encoding="utf-8").splitlines()[1:]
        for line in manifest:
            video_id, _, category, *_ = line.split(",")
            label = read_grid(out / "labels" / video_id / "frame_000_label.txt")
            weights = read_grid(out / "labels" / video_id / "frame_000_weights.txt")
            assert label.shape == (14, 14) and weights.shape == (14, 14)
            if category in ("BM0", "BM1"):
                assert np.all(label == 1)
            elif category in ("AM0", "AM1"):
                assert np.all(label == 0)
            assert set(np.unique(weights)) <= {0.6, 0.1, 0.3}
        assert len(list((out / "labels").rglob("*_preview.png"))) == 40

    def test_labels_without_pal(self, workspace, tmp_path):
        """With partial labels off every attack frame is labelled all zeros"""
        out = tmp_path / "labels"
        assert self.run_command("labels", "--corpus", workspace["corpus"], "--pal", "off", "--out", out) == EXIT_OK

        for label_path in (out / "labels").rglob("*_label.txt"):
            label = read_grid(label_path)
            assert np.all(label == 0) or np.all(label == 1)

    def test_train(self, workspace):
        """The checkpoint holds its manifest, the training log and the config used"""
        checkpoint = workspace["checkpoint"]
        manifest = json.loads((checkpoint / "manifest.json").read_text(encoding="utf-8"))

        assert manifest["metadata"]["split_seed"] == 0
        assert manifest["metadata"]["epochs_run"] == 1
        assert len(manifest["metadata"]["train_identities"]) == 3
        assert (checkpoint / "train_log.csv").read_text(encoding="utf-8").startswith("epoch,train_loss")
        assert "max_epochs=1" in (checkpoint / "train_config.cfg").read_text(encoding="utf-8")

    def test_score_and_eval(self, workspace, tmp_path):
        """Scores of the test and dev splits evaluate to a report and a ROC curve"""
        for split in ("test", "dev"):
            code = self.run_command(
                "score",
                "--checkpoint",
                workspace["checkpoint"],
                "--corpus",
                workspace["corpus"],
                "--split",
                split,
                "--out",
                tmp_path / split,
            )
            assert code == EXIT_OK
            records = read_scores(tmp_path / split / "scores.csv")
            assert len(records) == 8
            assert all(0.0 <= record.score <= 1.0 for record in records)

        code = self.run_command(
            "eval", "--scores", tmp_path / "test", "--dev-scores", tmp_path / "dev" / "scores.csv", "--out", tmp_path / "report"
        )
        assert code == EXIT_OK
        rows = read_report(tmp_path / "report" / "report.csv")
        assert rows["error_rate"]["tau_kind"] == "bpcer10_all"
        assert 0.0 <= float(rows["error_rate"]["acer"]) <= 100.0
        assert rows["n_videos"]["acer"] == "8"
        assert (tmp_path / "report" / "roc.csv").read_text(encoding="utf-8").startswith("tau,apcer,bpcer")

    def test_score_without_rw(self, workspace, tmp_path):
        code = self.run_command(
            "score",
            "--checkpoint",
            workspace["checkpoint"],
            "--corpus",
            workspace["corpus"],
            "--rw",
            "off",
            "--split",
            "all",
            "--out",
            tmp_path / "scores",
        )
        assert code == EXIT_OK
        assert len(read_scores(tmp_path / "scores" / "scores.csv")) == 40

    def test_reruns_are_byte_identical(self, workspace, tmp_path):
        """The same command and config reproduce the same artifacts"""
        code = self.run_command("synth", "--config", workspace["synth_config"], "--out", tmp_path / "corpus")
        assert code == EXIT_OK
        assert self.artifact_bytes(tmp_path / "corpus") == self.artifact_bytes(workspace["corpus"])

        code = self.run_command(
            "train",
            "--corpus",
            workspace["corpus"],
            "--config",
            workspace["train_config"],
            "--max-epochs",
            1,
            "--out",
            tmp_path / "checkpoint",
        )
        assert code == EXIT_OK
        assert self.artifact_bytes(tmp_path / "checkpoint") == self.artifact_bytes(workspace["checkpoint"])

    def test_scores_and_reports_are_byte_identical(self, workspace, tmp_path):
        """Scoring and evaluating twice gives the same files"""
        for run in ("first", "second"):
            for split in ("test", "dev"):
                code = self.run_command(
                    "score",
                    "--checkpoint",
                    workspace["checkpoint"],
                    "--corpus",
                    workspace["corpus"],
                    "--split",
                    split,
                    "--out",
                    tmp_path / run / split,
                )
                assert code == EXIT_OK
            code = self.run_command(
                "eval",
                "--scores",
                tmp_path / run / "test",
                "--dev-scores",
                tmp_path / run / "dev",
                "--threshold",
                "unmask",
                "--out",
                tmp_path / run / "report",
            )
            assert code == EXIT_OK

        for name in ("test", "dev", "report"):
            assert self.artifact_bytes(tmp_path / "first" / name) == self.artifact_bytes(tmp_path / "second" / name)

    @pytest.mark.slow
    def test_ablation(self, workspace, tmp_path):
        """One row per backbone and variant, and a ROC curve per run"""
        code = self.run_command(
            "ablation",
            "--corpus",
            workspace["corpus"],
            "--config",
            workspace["train_config"],
            "--backbone",
            "both",
            "--seeds",
            "0",
            "--max-epochs",
            1,
            "--out",
            tmp_path / "ablation",
        )
        assert code == EXIT_OK
        rows = read_table(tmp_path / "ablation" / "ablation.csv")
        variants = ["baseline", "+RW", "+PAL", "+PAL+RW"]
        assert [(row["backbone"], row["variant"]) for row in rows] == [
            (backbone, variant) for backbone in ("dense_pix", "mix_pix") for variant in variants
        ]
        assert all(row["n_seeds"] == "1" for row in rows)

        roc_files = sorted(path.name for path in (tmp_path / "ablation").glob("roc_*.csv"))
        assert roc_files == sorted(
            f"roc_{backbone}_{slug}_seed0.csv"
            for backbone in ("dense_pix", "mix_pix")
            for slug in ("baseline", "rw", "pal", "pal_rw")
        )
        for name in roc_files:
            assert (tmp_path / "ablation" / name).read_text(encoding="utf-8").startswith("tau,apcer,bpcer\n")


class TestEvalCommand(BaseCommandActionsMixin):
    """eval on hand-built score files against rates computed by hand"""

    @pytest.fixture
    def score_files(self, tmp_path):
        test_records = create_records(
            [
                ("BM0", Medium.BONA_FIDE, 0.9),
                ("BM1", Medium.BONA_FIDE, 0.7),
                ("AM0", Medium.PRINT, 0.2),
                ("AM1", Medium.PRINT, 0.8),
                ("AM2", Medium.REPLAY, 0.6),
                ("AM0", Medium.REPLAY, 0.1),
            ]
        )
        dev_records = create_records(
            [
                ("BM0", Medium.BONA_FIDE, 0.5),
                ("BM0", Medium.BONA_FIDE, 0.8),
                ("BM1", Medium.BONA_FIDE, 0.4),
                ("AM0", Medium.PRINT, 0.3),
            ]
        )
        write_scores(tmp_path / "test.csv", test_records)
        write_scores(tmp_path / "dev.csv", dev_records)
        return tmp_path / "test.csv", tmp_path / "dev.csv"

    def test_six_videos(self, score_files, tmp_path):
        """
        tau is the lowest of three dev bona fide scores (0.4), accepting two of four attacks
        """
        test_path, dev_path = score_files
        code = self.run_command("eval", "--scores", test_path, "--dev-scores", dev_path, "--out", tmp_path / "report")
        assert code == EXIT_OK

        rows = read_report(tmp_path / "report" / "report.csv")
        rates, counts = rows["error_rate"], rows["n_videos"]
        assert (rates["tau_kind"], rates["tau"]) == ("bpcer10_all", "0.400000")
        assert (rates["bpcer_bm0"], rates["bpcer_bm1"]) == ("0.000000", "0.000000")
        assert rates["apcer_print_am0"] == "0.000000"
        assert rates["apcer_print_am1"] == "100.000000"
        assert rates["apcer_print_am2"] == ""
        assert rates["apcer_replay_am0"] == "0.000000"
        assert rates["apcer_replay_am1"] == ""
        assert rates["apcer_replay_am2"] == "100.000000"
        # APCER 2 of 4, BPCER 0 of 2
        assert rates["acer"] == "25.000000"
        # 7 of the 8 bona fide/attack pairs are ordered
        assert rates["auc"] == "0.875000"
        assert counts["acer"] == "6"
        assert (counts["apcer_print_am2"], counts["apcer_replay_am2"]) == ("0", "1")

    def test_six_videos_unmasked_threshold(self, score_files, tmp_path):
        test_path, dev_path = score_files
        code = self.run_command(
            "eval",
            "--scores",
            test_path,
            "--dev-scores",
            dev_path,
            "--threshold",
            "unmask",
            "--out",
            tmp_path / "report",
        )
        assert code == EXIT_OK

        rates = read_report(tmp_path / "report" / "report.csv")["error_rate"]
        assert (rates["tau_kind"], rates["tau"]) == ("bpcer10_unmask", "0.500000")
        assert rates["acer"] == "25.000000"

        roc_lines = (tmp_path / "report" / "roc.csv").read_text(encoding="utf-8").splitlines()
        assert roc_lines[0] == "tau,apcer,bpcer"
        assert len(roc_lines) == 1 + 6


class TestExitCodes(BaseCommandActionsMixin):
    """Invalid or missing inputs map to their exit codes and leave nothing behind"""

    def test_unknown_config_key(self, tmp_path):
        config = self.write_config(tmp_path, "synth.cfg", SYNTH_CONFIG + "colour=red\n")
        assert self.run_command("synth", "--config", config, "--out", tmp_path / "corpus") == EXIT_INVALID_INPUT
        assert not (tmp_path / "corpus").exists()

    def test_too_few_identities(self, tmp_path):
        config = self.write_config(tmp_path, "synth.cfg", SYNTH_CONFIG.replace("n_identities=5", "n_identities=2"))
        assert self.run_command("synth", "--config", config, "--out", tmp_path / "corpus") == EXIT_INVALID_INPUT
        assert not (tmp_path / "corpus").exists()

    def test_output_not_empty(self, tmp_path):
        (tmp_path / "corpus").mkdir()
        (tmp_path / "corpus" / "keep.txt").write_text("keep", encoding="utf-8")
        config = self.write_config(tmp_path, "synth.cfg", SYNTH_CONFIG)

        assert self.run_command("synth", "--config", config, "--out", tmp_path / "corpus") == EXIT_INVALID_INPUT
        assert [path.name for path in (tmp_path / "corpus").iterdir()] == ["keep.txt"]
        assert (tmp_path / "corpus" / "keep.txt").read_text(encoding="utf-8") == "keep"

    def test_missing_inputs(self, tmp_path):
        # Test case 1: missing config file
        code = self.run_command("synth", "--config", tmp_path / "nothing.cfg", "--out", tmp_path / "corpus")
        assert code == EXIT_MISSING_INPUT

        # Test case 2: missing corpus
        code = self.run_command("labels", "--corpus", tmp_path / "nothing", "--out", tmp_path / "labels")
        assert code == EXIT_MISSING_INPUT

        # Test case 3: missing checkpoint
        code = self.run_command(
            "score", "--checkpoint", tmp_path / "nothing", "--corpus", tmp_path, "--out", tmp_path / "scores"
        )
        assert code == EXIT_MISSING_INPUT

        # Test case 4: missing scores
        code = self.run_command(
            "eval", "--scores", tmp_path / "a.csv", "--dev-scores", tmp_path / "b.csv", "--out", tmp_path / "report"
        )
        assert code == EXIT_MISSING_INPUT

        for name in ("corpus", "labels", "scores", "report"):
            assert not (tmp_path / name).exists()

    def test_bad_choice(self, tmp_path):
        code = self.run_command("score", "--checkpoint", tmp_path, "--corpus", tmp_path, "--rw", "maybe", "--out", tmp_path / "s")
        assert code == EXIT_INVALID_INPUT

    def test_bad_seed_list(self, tmp_path):
        code = self.run_command("ablation", "--corpus", tmp_path, "--seeds", "0,,1", "--out", tmp_path / "ablation")
        assert code == EXIT_INVALID_INPUT
        assert not (tmp_path / "ablation").exists()

    def test_failed_eval_leaves_no_output(self, tmp_path):
        """Dev scores without a bona fide video cannot anchor a threshold"""
        records = create_records([("BM0", Medium.BONA_FIDE, 0.8), ("AM0", Medium.PRINT, 0.2)])
        write_scores(tmp_path / "test.csv", records)
        write_scores(tmp_path / "dev.csv", records[1:])

        code = self.run_command(
            "eval", "--scores", tmp_path / "test.csv", "--dev-scores", tmp_path / "dev.csv", "--out", tmp_path / "report"
        )
        assert code == EXIT_INVALID_INPUT
        assert not (tmp_path / "report").exists()
