import json
import os
import sys

import numpy as np
import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, "..", "maskpad")
sys.path.append(src_path)

from builders.corpus import create_manifest_rows, write_corpus
from builders.scores import create_records
from classes.category import Medium
from evaluation.report import build_report
from storage.artifact_store import ArtifactStore
from storage.handlers.grids import read_grid, write_grid
from storage.handlers.key_values import format_value, parse_key_values, read_key_values, write_key_values
from storage.handlers.landmarks import read_landmarks, write_landmarks
from storage.handlers.manifest import read_manifest, write_manifest
from storage.handlers.reports import read_report, write_report
from storage.handlers.run_manifest import RunManifest, RunManifestFile, blob_hash, content_hash
from storage.handlers.scores import read_scores, write_scores
from storage.handlers.train_log import read_train_log, write_train_log
from trainer.train import EpochRecord, TrainLog


class TestManifest:
    def test_write_read(self, tmp_path):
        rows = create_manifest_rows(3, 4, n_frames=2)
        write_manifest(tmp_path / "manifest.csv", rows)
        assert read_manifest(tmp_path / "manifest.csv") == rows

    def test_header(self, tmp_path):
        (tmp_path / "manifest.csv").write_text("video_id,identity\nv1,id1\n", encoding="utf-8")
        with pytest.raises(ValueError, match="header"):
            read_manifest(tmp_path / "manifest.csv")

    def test_invalid_row(self, tmp_path):
        # bona fide category shown through a print
        (tmp_path / "manifest.csv").write_text(
            "video_id,identity,category,medium,n_frames,path\nv1,id1,BM0,print,1,videos/v1\n",
            encoding="utf-8",
        )
        with pytest.raises(ValueError):
            read_manifest(tmp_path / "manifest.csv")


class TestLandmarks:
    def test_exact_precision(self, tmp_path, landmarks):
        write_landmarks(tmp_path / "landmarks.csv", landmarks)
        loaded = read_landmarks(tmp_path / "landmarks.csv", 224, 224)
        assert np.array_equal(loaded.points, landmarks.points)

    def test_row_count(self, tmp_path, landmarks):
        write_landmarks(tmp_path / "landmarks.csv", landmarks)
        lines = (tmp_path / "landmarks.csv").read_text(encoding="utf-8").splitlines()
        (tmp_path / "short.csv").write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
        with pytest.raises(ValueError, match="68"):
            read_landmarks(tmp_path / "short.csv", 224, 224)

    def test_repeated_index(self, tmp_path, landmarks):
        write_landmarks(tmp_path / "landmarks.csv", landmarks)
        lines = (tmp_path / "landmarks.csv").read_text(encoding="utf-8").splitlines()
        lines[2] = "0" + lines[2][lines[2].index(",") :]
        (tmp_path / "repeated.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(ValueError, match="repeated"):
            read_landmarks(tmp_path / "repeated.csv", 224, 224)


class TestGrids:
    def test_integer_grid(self, tmp_path):
        grid = np.array([[1, 0], [0, 1]], dtype=np.uint8)
        write_grid(tmp_path / "label.txt", grid)
        assert (tmp_path / "label.txt").read_text(encoding="utf-8") == "2 2\n1 0\n0 1\n"
        assert np.array_equal(read_grid(tmp_path / "label.txt"), grid)

    def test_float_grid(self, tmp_path):
        grid = np.array([[0.6, 0.1, 0.3]] * 3)
        write_grid(tmp_path / "weights.txt", grid)
        assert (tmp_path / "weights.txt").read_text(encoding="utf-8").splitlines()[1] == "0.600000 0.100000 0.300000"
        assert np.array_equal(read_grid(tmp_path / "weights.txt"), grid)

    def test_invalid(self, tmp_path):
        # Test case 1: a 3-D grid
        with pytest.raises(ValueError):
            write_grid(tmp_path / "cube.txt", np.zeros((2, 2, 2)))

        # Test case 2: body and header disagree
        (tmp_path / "bad.txt").write_text("2 2\n1 0\n", encoding="utf-8")
        with pytest.raises(ValueError, match="declared shape"):
            read_grid(tmp_path / "bad.txt")


class TestKeyValues:
    def test_parse(self):
        values = parse_key_values("# comment\n\nseed = 3\nimage_size=32\n")
        assert values == {"seed": "3", "image_size": "32"}

    def test_errors(self):
        # Test case 1: no '='
        with pytest.raises(ValueError, match="Line 1"):
            parse_key_values("seed 3\n")

        # Test case 2: empty key
        with pytest.raises(ValueError, match="empty key"):
            parse_key_values("=3\n")

        # Test case 3: repeated key
        with pytest.raises(ValueError, match="twice"):
            parse_key_values("seed=1\nseed=2\n")

    def test_format_value(self):
        assert format_value(True) == "true"
        assert format_value((3, 3, 3)) == "3,3,3"
        assert format_value(0.5) == "0.5"

    def test_write_read(self, tmp_path):
        write_key_values(tmp_path / "config.cfg", {"pal": False, "block_layers": (2, 2, 2), "lr": 0.001})
        assert read_key_values(tmp_path / "config.cfg") == {"pal": "false", "block_layers": "2,2,2", "lr": "0.001"}


class TestScores:
    def test_write_read(self, tmp_path):
        records = create_records([("BM0", Medium.BONA_FIDE, 0.1 + 0.2), ("AM2", Medium.REPLAY, 1 / 3)])
        write_scores(tmp_path / "scores.csv", records)
        assert read_scores(tmp_path / "scores.csv") == records

    def test_duplicate_video(self, tmp_path):
        records = create_records([("BM0", Medium.BONA_FIDE, 0.5)])
        write_scores(tmp_path / "scores.csv", records + records)
        with pytest.raises(ValueError, match="twice"):
            read_scores(tmp_path / "scores.csv")

    def test_non_finite(self, tmp_path):
        (tmp_path / "scores.csv").write_text(
            "video_id,identity,category,medium,score\nv1,id1,BM0,bona_fide,nan\n", encoding="utf-8"
        )
        with pytest.raises(ValueError, match="not finite"):
            read_scores(tmp_path / "scores.csv")


class TestReports:
    def test_report_rows(self, tmp_path):
        test_records = create_records(
            [("BM0", Medium.BONA_FIDE, 0.9), ("BM1", Medium.BONA_FIDE, 0.4), ("AM0", Medium.PRINT, 0.2)]
        )
        report = build_report(test_records, test_records)
        write_report(tmp_path / "report.csv", report)
        rows = read_report(tmp_path / "report.csv")

        assert set(rows) == {"error_rate", "n_videos"}
        assert rows["error_rate"]["tau"] == "0.400000"
        assert rows["error_rate"]["apcer_replay_am0"] == ""
        assert rows["n_videos"]["apcer_print_am0"] == "1"
        assert rows["n_videos"]["acer"] == "3"

    def test_train_log(self, tmp_path):
        log = TrainLog(epochs=[EpochRecord(0, 0.7, 0.6, 25.0, 1e-4), EpochRecord(1, 0.5, 0.55, 12.5, 1e-4)])
        write_train_log(tmp_path / "train_log.csv", log)
        rows = read_train_log(tmp_path / "train_log.csv")
        assert rows[1] == {"epoch": 1, "train_loss": 0.5, "dev_loss": 0.55, "dev_acer": 12.5, "lr": 1e-4}


class TestRunManifest:
    def test_blob_hash(self):
        assert blob_hash(b"") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"
        assert blob_hash(b"hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"

    def test_content_hash(self, tmp_path):
        (tmp_path / "inputs").mkdir()
        (tmp_path / "inputs" / "a.txt").write_bytes(b"hello\n")
        (tmp_path / "inputs" / "b.txt").write_bytes(b"")
        first = content_hash([tmp_path / "inputs"])

        # Test case 1: stable over repeated calls
        assert content_hash([tmp_path / "inputs"]) == first

        # Test case 2: changes with the content
        (tmp_path / "inputs" / "b.txt").write_bytes(b"x")
        assert content_hash([tmp_path / "inputs"]) != first

        # Test case 3: a missing input
        with pytest.raises(FileNotFoundError):
            content_hash([tmp_path / "missing"])

    def test_write_read(self, tmp_path):
        manifest = RunManifest(command="synth", arguments={"out": "corpus"}, seeds=[0], version="1.0.0")
        handler = RunManifestFile(tmp_path)
        handler.write(manifest)

        assert handler.read() == manifest
        assert json.loads(handler.path.read_text(encoding="utf-8"))["command"] == "synth"


class TestFrames:
    def test_frames_match_rendering(self, tmp_path, corpus):
        """
        Frames read back from disk equal the rendered samples bit for bit
        """
        store = write_corpus(tmp_path / "corpus", corpus)
        reopened = ArtifactStore(tmp_path / "corpus")

        assert reopened.manifest.read() == corpus.manifest
        for row in corpus.manifest[:6]:
            for rendered, loaded in zip(corpus.render_video(row), reopened.frames.load_video(row)):
                assert np.array_equal(loaded.image, rendered.image)
                assert np.array_equal(loaded.landmarks.points, rendered.landmarks.points)
                assert (loaded.category, loaded.video_id) == (rendered.category, rendered.video_id)
        assert store.frames.path.is_dir()

    def test_missing_frame(self, tmp_path):
        row = create_manifest_rows(1, 0)[0]
        with pytest.raises(FileNotFoundError):
            ArtifactStore(tmp_path).frames.load(row, 0)
