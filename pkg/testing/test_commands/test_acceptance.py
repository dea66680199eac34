import math
import os
import sys
from pathlib import Path

import pytest
import torch

current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, "../..", "maskpad")
sys.path.append(src_path)

from commands.command_wrapper import EXIT_OK
from storage.handlers.reports import read_table

from .base import BaseCommandActionsMixin

CONFIG_DIR = Path(current_dir).parent.parent / "configs"
VARIANTS = ["baseline", "+RW", "+PAL", "+PAL+RW"]


@pytest.fixture(scope="module")
def ablation_table(tmp_path_factory):
    """The desk-budget ablation of both backbones over three seeds, as {backbone: {variant: row}}"""
    root = tmp_path_factory.mktemp("acceptance")
    actions = BaseCommandActionsMixin()
    threads = torch.get_num_threads()
    torch.set_num_threads(max(1, min(4, threads)))
    try:
        synth_code = actions.run_command(
            "synth", "--config", CONFIG_DIR / "synth_ablation.cfg", "--out", root / "corpus"
        )
        ablation_code = actions.run_command(
            "ablation",
            "--corpus",
            root / "corpus",
            "--config",
            CONFIG_DIR / "train_ablation.cfg",
            "--backbone",
            "both",
            "--seeds",
            "0,1,2",
            "--out",
            root / "ablation",
        )
    finally:
        torch.set_num_threads(threads)
    assert synth_code == EXIT_OK
    assert ablation_code == EXIT_OK

    table = {}
    for row in read_table(root / "ablation" / "ablation.csv"):
        table.setdefault(row["backbone"], {})[row["variant"]] = row
    yield table, root / "ablation"


def _value(row: dict, column: str) -> float:
    return float(row[column]) if row[column] != "" else math.nan


def _am2_apcer(row: dict) -> float:
    return (_value(row, "apcer_print_am2") + _value(row, "apcer_replay_am2")) / 2.0


@pytest.mark.slow
class TestAblationTrends:
    """The directional effects of partial attack labels and regional weighting at desk scale"""

    def test_table(self, ablation_table):
        table, out = ablation_table
        assert sorted(table) == ["dense_pix", "mix_pix"]
        for rows in table.values():
            assert list(rows) == VARIANTS
            assert all(row["n_seeds"] == "3" for row in rows.values())
        assert len(list(out.glob("roc_*_seed*.csv"))) == 2 * 4 * 3

    def test_each_component_lowers_acer(self, ablation_table):
        """
        For at least one backbone, PAL and RW each lower the unmasked-threshold ACER and together lower it further
        """
        table, _ = ablation_table

        def improves(rows):
            acer = {variant: _value(rows[variant], "acer_unmask") for variant in VARIANTS}
            return (
                acer["+PAL"] < acer["baseline"]
                and acer["+RW"] < acer["baseline"]
                and acer["+PAL+RW"] < min(acer["+PAL"], acer["+RW"])
            )

        assert any(improves(rows) for rows in table.values()), table

    def test_pal_lowers_partial_attack_apcer(self, ablation_table):
        """
        For at least one backbone, AM2 APCER drops by a fifth or more when PAL is on
        """
        table, _ = ablation_table
        assert any(
            _am2_apcer(rows["+PAL"]) <= 0.8 * _am2_apcer(rows["baseline"]) and _am2_apcer(rows["baseline"]) > 0
            for rows in table.values()
        ), table
