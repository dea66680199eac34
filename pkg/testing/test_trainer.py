import math
from dataclasses import replace
import os
import sys

import pytest
import torch

current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, "..", "maskpad")
sys.path.append(src_path)

from builders.corpus import create_corpus, create_manifest_rows
from dataset.frame_dataset import FrameDataset
from dataset.splits import split_protocol
from network.model import build_model
from network.model_config import ModelConfig
from trainer.class_weights import class_weights
from trainer.early_stopping import EarlyStopping
from trainer.optimizers import build_optimizer, learning_rate
from trainer.train import TrainingDivergedError, evaluate, train
from trainer.train_config import TrainConfig


def tiny_run_inputs(seed: int = 0):
    corpus = create_corpus()
    split = split_protocol(corpus.manifest, seed)
    options = {"image_size": 32, "grid_size": 2}
    train_set = FrameDataset(split.rows(corpus.manifest, "train"), corpus.render_frame, train=True, **options)
    dev_set = FrameDataset(split.rows(corpus.manifest, "dev"), corpus.render_frame, **options)
    return train_set, dev_set


def tiny_train_config(**overrides) -> TrainConfig:
    values = {"max_epochs": 2, "patience": 1, "batch_size": 8, "lr": 1e-3}
    values.update(overrides)
    return TrainConfig(**values)


class TestClassWeights:
    def test_balanced(self):
        assert class_weights(create_manifest_rows(100, 100)) == (1.0, 1.0)

    def test_unbalanced(self):
        w_bona_fide, w_attack = class_weights(create_manifest_rows(100, 300))
        assert w_bona_fide == pytest.approx(2.0)
        assert w_attack == pytest.approx(2 / 3)

    def test_counts_frames(self):
        rows = create_manifest_rows(1, 1)
        rows[0] = replace(rows[0], n_frames=3)
        assert class_weights(rows) == pytest.approx((4 / 6, 4 / 2))

    def test_default_corpus_proportions(self):
        """
        The bona fide weight of the default proportions is 31 / 2
        """
        corpus = create_corpus(n_identities=40, crma_proportions=True)
        w_bona_fide, w_attack = class_weights(corpus.manifest)
        assert w_bona_fide == pytest.approx(15.5)
        assert w_attack == pytest.approx(31 / 60)

    def test_invalid(self):
        # Test case 1: empty manifest
        with pytest.raises(ValueError):
            class_weights([])

        # Test case 2: no attack videos
        with pytest.raises(ValueError):
            class_weights(create_manifest_rows(4, 0))


class TestEarlyStopping:
    def test_patience_zero_stops_on_first_miss(self):
        stopper = EarlyStopping(patience=0)
        assert [stopper(loss) for loss in (1.0, 0.9, 0.95)] == [False, False, True]

    def test_patience_counts_consecutive_misses(self):
        stopper = EarlyStopping(patience=2)
        assert [stopper(loss) for loss in (1.0, 1.1, 0.8, 0.9, 0.9)] == [False, False, False, False, True]

    def test_improved(self):
        stopper = EarlyStopping(patience=3)
        stopper(1.0)
        assert stopper.improved
        stopper(1.0)
        assert not stopper.improved


class TestOptimizers:
    def test_sgd_schedule(self):
        model = build_model(ModelConfig.tiny("mix_pix"))
        config = TrainConfig.for_variant("mix_pix", max_epochs=10, patience=1)
        optimizer, scheduler = build_optimizer(model, config)
        for epoch in range(6):
            assert learning_rate(optimizer) == pytest.approx(0.01 * 0.995**epoch, rel=1e-12)
            optimizer.step()
            scheduler.step()

    def test_adam_rate_is_constant(self):
        model = build_model(ModelConfig.tiny("dense_pix"))
        optimizer, scheduler = build_optimizer(model, TrainConfig(gamma=0.5, max_epochs=10, patience=1))
        for _ in range(4):
            assert learning_rate(optimizer) == pytest.approx(1e-4)
            optimizer.step()
            scheduler.step()

    def test_sgd_momentum_is_off_by_default(self):
        model = build_model(ModelConfig.tiny("mix_pix"))
        optimizer, _ = build_optimizer(model, TrainConfig.for_variant("mix_pix"))
        assert optimizer.param_groups[0]["momentum"] == 0.0

        optimizer, _ = build_optimizer(model, TrainConfig.for_variant("mix_pix", momentum=0.9))
        assert optimizer.param_groups[0]["momentum"] == 0.9

    def test_weight_decay_shrinks(self):
        """
        With zero data gradient an SGD step multiplies every parameter by 1 - lr * weight_decay
        """
        model = build_model(ModelConfig.tiny("dense_pix"))
        config = TrainConfig(optimizer="sgd", lr=0.1, weight_decay=0.5, momentum=0.0, max_epochs=2, patience=1)
        optimizer, _ = build_optimizer(model, config)
        before = {name: parameter.detach().clone() for name, parameter in model.named_parameters()}
        for parameter in model.parameters():
            parameter.grad = torch.zeros_like(parameter)
        optimizer.step()

        for name, parameter in model.named_parameters():
            assert torch.allclose(parameter, before[name] * 0.95)
            if torch.any(before[name] != 0):
                assert float(parameter.norm()) < float(before[name].norm())


class TestTrainConfig:
    def test_for_variant(self):
        # Test case 1: mix_pix runs SGD with decay
        config = TrainConfig.for_variant("mix_pix")
        assert (config.optimizer, config.lr, config.weight_decay, config.gamma) == ("sgd", 0.01, 0.005, 0.995)

        # Test case 2: dense_pix runs Adam
        config = TrainConfig.for_variant("dense_pix", batch_size=4)
        assert (config.optimizer, config.lr, config.batch_size) == ("adam", 1e-4, 4)

        # Test case 3: unknown backbone
        with pytest.raises(ValueError):
            TrainConfig.for_variant("resnet")

    def test_invalid(self):
        with pytest.raises(ValueError):
            TrainConfig(optimizer="rmsprop")
        with pytest.raises(ValueError):
            TrainConfig(lr=0.0)
        with pytest.raises(ValueError):
            TrainConfig(gamma=1.5)
        with pytest.raises(ValueError):
            TrainConfig(max_epochs=3, patience=3)


@pytest.mark.usefixtures("single_thread")
class TestTrain:
    def test_deterministic(self):
        """
        Two runs with the same seed produce the same log and weights
        """
        logs, states = [], []
        for _ in range(2):
            train_set, dev_set = tiny_run_inputs()
            model = build_model(ModelConfig.tiny("dense_pix"))
            logs.append(train(model, train_set, dev_set, tiny_train_config(), progress=False))
            states.append(model.state_dict())

        assert logs[0].epochs == logs[1].epochs
        for name, tensor in states[0].items():
            assert torch.equal(tensor, states[1][name]), name

    def test_log(self):
        train_set, dev_set = tiny_run_inputs()
        model = build_model(ModelConfig.tiny("dense_pix"))
        log = train(model, train_set, dev_set, tiny_train_config(max_epochs=3, patience=2), progress=False)

        assert [record.epoch for record in log.epochs] == list(range(len(log.epochs)))
        assert 0 <= log.best_epoch < len(log.epochs)
        for record in log.epochs:
            assert math.isfinite(record.train_loss) and math.isfinite(record.dev_loss)
            assert 0.0 <= record.dev_acer <= 100.0
        assert not model.training

    def test_divergence(self):
        train_set, dev_set = tiny_run_inputs()
        model = build_model(ModelConfig.tiny("dense_pix"))
        with torch.no_grad():
            model.map_head.bias.fill_(float("nan"))

        with pytest.raises(TrainingDivergedError, match="epoch 0, batch 0"):
            train(model, train_set, dev_set, tiny_train_config(), progress=False)

    def test_evaluate(self):
        _, dev_set = tiny_run_inputs()
        model = build_model(ModelConfig.tiny("dense_pix"))
        dev_loss, dev_acer = evaluate(model, dev_set, (1.0, 1.0), 0.5, batch_size=8)

        assert math.isfinite(dev_loss) and dev_loss > 0
        assert 0.0 <= dev_acer <= 100.0

    @pytest.mark.parametrize("patience", [0, 2])
    def test_early_stopping_keeps_best_epoch(self, patience):
        """
        Training stops max(patience, 1) epochs after the best one and leaves the model at the best weights
        """
        train_set, dev_set = tiny_run_inputs()
        model = build_model(ModelConfig.tiny("dense_pix"))
        config = tiny_train_config(max_epochs=6, patience=patience, lr=5e-3)
        log = train(model, train_set, dev_set, config, progress=False)

        epochs_after_best = len(log.epochs) - 1 - log.best_epoch
        if log.stopped_early:
            assert epochs_after_best == max(patience, 1)
        else:
            assert len(log.epochs) == 6
            assert epochs_after_best < max(patience, 1)
        dev_losses = [record.dev_loss for record in log.epochs]
        assert log.best().dev_loss == min(dev_losses)

        dev_loss, _ = evaluate(model, dev_set, class_weights(train_set.rows), model.config.lambda_, batch_size=8)
        assert dev_loss == pytest.approx(log.best().dev_loss, rel=1e-6)

    def test_restores_deterministic_setting(self):
        train_set, dev_set = tiny_run_inputs()
        torch.use_deterministic_algorithms(False)

        # Test case 1: after a completed run
        model = build_model(ModelConfig.tiny("dense_pix"))
        train(model, train_set, dev_set, tiny_train_config(max_epochs=1, patience=0), progress=False)
        assert not torch.are_deterministic_algorithms_enabled()

        # Test case 2: after a diverging run
        model = build_model(ModelConfig.tiny("dense_pix"))
        with torch.no_grad():
            model.map_head.bias.fill_(float("nan"))
        with pytest.raises(TrainingDivergedError):
            train(model, train_set, dev_set, tiny_train_config(), progress=False)
        assert not torch.are_deterministic_algorithms_enabled()

    @pytest.mark.slow
    def test_easy_corpus_is_learned(self):
        """
        A corpus with strong attack textures reaches a dev ACER below 5% on average over three seeds
        """
        corpus = create_corpus(n_identities=10, videos_per_identity_per_category=2, image_size=64)
        model_config = ModelConfig(
            variant="dense_pix", stem_channels=8, growth_rate=8, block_layers=(1, 1, 1), input_size=64
        )
        dev_acers = []
        for seed in (0, 1, 2):
            split = split_protocol(corpus.manifest, seed)
            options = {"image_size": 64, "grid_size": 4, "seed": seed}
            train_set = FrameDataset(split.rows(corpus.manifest, "train"), corpus.render_frame, train=True, **options)
            dev_set = FrameDataset(split.rows(corpus.manifest, "dev"), corpus.render_frame, **options)
            model = build_model(model_config.with_overrides(seed=seed))
            config = tiny_train_config(max_epochs=15, patience=5, lr=1e-3, seed=seed)
            log = train(model, train_set, dev_set, config, progress=False)
            dev_acers.append(log.best().dev_acer)

        assert math.fsum(dev_acers) / len(dev_acers) < 5.0
