import numpy as np
import pytest

from ddikg.errors import DdiKgError
from ddikg.rc import (
    RcInstance,
    classification_report,
    evaluate,
    format_metrics,
    init_rc_params,
)

CLASSES = ("Mechanism", "Effect", "Advice", "Int", "Other")


class TestClassificationReport:
    def test_hand_confusion_matrix(self):
        golds = ["Advice", "Advice", "Effect", "Effect"]
        preds = ["Advice", "Effect", "Effect", "Effect"]
        report = classification_report(golds, preds, CLASSES)
        assert report.per_class["Advice"].precision == pytest.approx(1.0)
        assert report.per_class["Advice"].recall == pytest.approx(0.5)
        assert report.per_class["Advice"].f1 == pytest.approx(2 / 3, abs=1e-9)
        assert report.per_class["Effect"].f1 == pytest.approx(0.8, abs=1e-9)
        # macro over the classes that occur (Mechanism/Int absent from both sides)
        assert report.macro_f1 == pytest.approx((2 / 3 + 0.8) / 2, abs=1e-9)

    def test_perfect_predictions(self):
        golds = ["Mechanism", "Effect", "Advice", "Int"]
        report = classification_report(golds, golds, CLASSES)
        for cls in ("Mechanism", "Effect", "Advice", "Int"):
            assert report.per_class[cls].f1 == 1.0
        assert report.macro_f1 == 1.0
        assert report.micro_f1 == 1.0

    def test_always_other_predictor_scores_zero(self):
        golds = ["Mechanism", "Effect", "Advice", "Int", "Other"]
        preds = ["Other"] * 5
        report = classification_report(golds, preds, CLASSES)
        for cls in ("Mechanism", "Effect", "Advice", "Int"):
            assert report.per_class[cls].f1 == 0.0
        assert report.macro_f1 == 0.0
        assert report.micro_f1 == 0.0

    def test_other_excluded_from_rows_and_macro(self):
        golds = ["Other", "Other", "Mechanism"]
        preds = ["Other", "Mechanism", "Mechanism"]
        report = classification_report(golds, preds, CLASSES)
        assert "Other" not in report.per_class
        # only Mechanism occurs among positives: P=1/2, R=1 -> F1=2/3
        assert report.macro_f1 == pytest.approx(2 / 3, abs=1e-9)

    def test_all_four_present_macro_is_plain_mean(self):
        golds = ["Mechanism", "Effect", "Advice", "Int"] * 2
        preds = ["Mechanism", "Effect", "Advice", "Int", "Effect", "Effect", "Advice", "Int"]
        report = classification_report(golds, preds, CLASSES)
        mean = np.mean([report.per_class[c].f1 for c in ("Mechanism", "Effect", "Advice", "Int")])
        assert report.macro_f1 == pytest.approx(mean, abs=1e-12)

    def test_metrics_within_unit_interval(self):
        rng = np.random.default_rng(0)
        golds = [CLASSES[i] for i in rng.integers(0, 5, size=40)]
        preds = [CLASSES[i] for i in rng.integers(0, 5, size=40)]
        report = classification_report(golds, preds, CLASSES)
        for m in report.per_class.values():
            assert 0.0 <= m.precision <= 1.0
            assert 0.0 <= m.recall <= 1.0
            assert 0.0 <= m.f1 <= 1.0
        assert 0.0 <= report.macro_f1 <= 1.0
        assert 0.0 <= report.micro_f1 <= 1.0

    def test_unknown_label_rejected(self):
        with pytest.raises(DdiKgError, match="Unknown"):
            classification_report(["Unknown"], ["Other"], CLASSES)

    def test_length_mismatch_rejected(self):
        with pytest.raises(DdiKgError):
            classification_report(["Other"], [], CLASSES)


class TestEvaluate:
    def _crafted(self, gold, steer, d=5):
        """Instance whose argmax prediction is forced to ``steer``."""
        hidden = np.zeros((3, d))
        hidden[0, CLASSES.index(steer)] = 3.0  # drives the start-slot pathway
        return RcInstance(id=f"{gold}->{steer}", hidden=hidden, span1=(1, 1),
                          span2=(2, 2), label=gold)

    def _steering_params(self, d=5):
        params = init_rc_params(d, CLASSES, seed=0)
        for name in ("W", "b", "W0", "b0", "W_f", "b_f",
                     "W3_text", "b3_text", "W3_fused", "b3_fused"):
            getattr(params, name)[...] = 0.0
        params.W0[...] = np.eye(d)
        params.W3_text[:, :d] = 10.0 * np.eye(5, d)
        return params

    def test_end_to_end_hand_example(self):
        # gold (Adv, Adv, Eff, Eff) vs predicted (Adv, Eff, Eff, Eff)
        data = [
            self._crafted("Advice", "Advice"),
            self._crafted("Advice", "Effect"),
            self._crafted("Effect", "Effect"),
            self._crafted("Effect", "Effect"),
        ]
        report = evaluate(data, self._steering_params(), mode="text")
        assert report.per_class["Advice"].f1 == pytest.approx(2 / 3, abs=1e-9)
        assert report.per_class["Effect"].f1 == pytest.approx(0.8, abs=1e-9)
        assert report.macro_f1 == pytest.approx(0.73333333333, abs=1e-9)

    def test_unlabeled_rejected(self):
        inst = RcInstance(id="u", hidden=np.zeros((3, 5)), span1=(1, 1), span2=(2, 2))
        with pytest.raises(DdiKgError, match="unlabeled"):
            evaluate([inst], self._steering_params(), mode="text")


class TestFormat:
    def test_table_layout(self):
        golds = ["Advice", "Effect", "Mechanism", "Int", "Other"]
        report = classification_report(golds, golds, CLASSES)
        lines = format_metrics(report).splitlines()
        assert lines[0].split() == ["class", "precision", "recall", "f1", "support"]
        # fixed benchmark row order, then macro and micro
        assert [ln.split()[0] for ln in lines[1:]] == [
            "Advice", "Effect", "Mechanism", "Int", "macro", "micro",
        ]
