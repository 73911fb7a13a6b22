# Speed Module
# regime 분류 및 전파 속도 c* 예측

from .predictor import (
    SpeedPrediction,
    decay_rate,
    F,
    thresholds_for,
    classify,
    predict_two_interface,
    predict_single_transition,
    predict_general_profile,
    pulling_possible,
    sweep_cA,
    sweep_lambda1,
    threshold_gaps,
)

__all__ = [
    "SpeedPrediction",
    "decay_rate",
    "F",
    "thresholds_for",
    "classify",
    "predict_two_interface",
    "predict_single_transition",
    "predict_general_profile",
    "pulling_possible",
    "sweep_cA",
    "sweep_lambda1",
    "threshold_gaps",
]
