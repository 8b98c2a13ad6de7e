import io

import numpy as np
import pytest

from ddikg.errors import DdiKgError
from ddikg.rc import (
    RcInstance,
    RcTrainConfig,
    init_rc_params,
    load_rc_params,
    predict_batch,
    save_rc_params,
    train_rc,
)

CLASSES = ("Mechanism", "Effect", "Advice", "Int", "Other")
D = 6


def separable_instances(n=50, d=D, seed=0, with_drugs=False):
    """Hidden states carry the label in a dedicated coordinate."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        label = CLASSES[i % len(CLASSES)]
        hidden = rng.normal(scale=0.05, size=(5, d))
        hidden[:, i % len(CLASSES)] += 2.0
        out.append(
            RcInstance(
                id=f"i{i}",
                hidden=hidden,
                span1=(1, 2),
                span2=(3, 4),
                mention1="m1",
                mention2="m2",
                drug1="dA" if with_drugs else None,
                drug2="dB" if with_drugs else None,
                label=label,
            )
        )
    return out


class TestTrainRc:
    def test_epochs_zero_returns_init(self):
        data = separable_instances(10)
        config = RcTrainConfig(mode="text", epochs=0, seed=4)
        params = train_rc(data, config, classes=CLASSES)
        reference = init_rc_params(D, CLASSES, seed=np.random.default_rng(4))
        assert np.array_equal(params.W, reference.W)
        assert np.array_equal(params.W3_text, reference.W3_text)

    def test_deterministic(self):
        data = separable_instances(20)
        config = RcTrainConfig(mode="text", epochs=5, learning_rate=0.2, seed=1)
        a = train_rc(data, config, classes=CLASSES)
        b = train_rc(data, config, classes=CLASSES)
        for name in ("W", "b", "W0", "b0", "W3_text", "b3_text"):
            assert np.array_equal(getattr(a, name), getattr(b, name))

    def test_unlabeled_instance_rejected(self):
        data = separable_instances(3)
        data[1] = RcInstance(
            id="u", hidden=np.zeros((3, D)), span1=(1, 1), span2=(2, 2)
        )
        with pytest.raises(DdiKgError, match="unlabeled"):
            train_rc(data, RcTrainConfig(), classes=CLASSES)

    def test_loss_decreases(self):
        data = separable_instances(30)
        history: list[float] = []
        config = RcTrainConfig(mode="text", epochs=20, learning_rate=0.5, seed=0)
        train_rc(data, config, classes=CLASSES, loss_history=history)
        assert history[-1] < history[0]

    def test_log_lines(self):
        data = separable_instances(10)
        log = io.StringIO()
        train_rc(data, RcTrainConfig(epochs=3), classes=CLASSES, log=log)
        assert len(log.getvalue().strip().split("\n")) == 3

    @pytest.mark.parametrize("mode", ["text", "fused"])
    def test_overfits_separable_set(self, mode):
        data = separable_instances(50, with_drugs=True)
        lookup = {"dA": np.ones(4), "dB": -np.ones(4)}
        config = RcTrainConfig(
            mode=mode, epochs=300, learning_rate=0.5, batch_size=16, seed=0
        )
        params = train_rc(data, config, classes=CLASSES, kge_lookup=lookup)
        predictions, _ = predict_batch(data, params, mode, kge_lookup=lookup)
        accuracy = np.mean([p == inst.label for p, inst in zip(predictions, data)])
        assert accuracy == 1.0

    def test_fused_dimension_inferred_from_lookup(self):
        data = separable_instances(10, with_drugs=True)
        lookup = {"dA": np.ones(7), "dB": np.zeros(7)}
        config = RcTrainConfig(mode="fused", epochs=1, seed=0)
        params = train_rc(data, config, classes=CLASSES, kge_lookup=lookup)
        assert params.kg_dim == 7
        assert params.fused_dim == 7  # defaults to the KG width

    def test_fused_dim_override(self):
        data = separable_instances(10, with_drugs=True)
        lookup = {"dA": np.ones(4), "dB": np.zeros(4)}
        config = RcTrainConfig(mode="fused", epochs=1, fused_dim=3, seed=0)
        params = train_rc(data, config, classes=CLASSES, kge_lookup=lookup)
        assert params.fused_dim == 3


class TestRcParamsFile:
    def test_round_trip(self, tmp_path):
        data = separable_instances(10)
        params = train_rc(data, RcTrainConfig(epochs=2, seed=0), classes=CLASSES)
        path = tmp_path / "rc.npz"
        save_rc_params(path, params, "text")
        loaded, mode = load_rc_params(path)
        assert mode == "text"
        assert loaded.classes == CLASSES
        for name in ("W", "b", "W3_text", "W3_fused"):
            assert np.array_equal(getattr(loaded, name), getattr(params, name))

    def test_reject_foreign_file(self, tmp_path):
        path = tmp_path / "x.npz"
        np.savez(path, a=np.zeros(2))
        with pytest.raises(DdiKgError, match="not a ddikg classifier"):
            load_rc_params(path)
