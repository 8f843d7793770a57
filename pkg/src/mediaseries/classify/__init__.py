from .gradcheck import analytic_gradients, gradient_check, max_relative_error, numeric_gradients
from .metrics import EvalMetrics, Prediction, evaluate, gbv_probability, predict_tags
from .model import (
    MODEL_FORMAT_VERSION,
    ConvLayer,
    ConvTextModel,
    forward,
    forward_batch,
    init_model,
    load_model,
    model_from_json,
    model_to_json,
    nn1_model,
    nn2_model,
    save_model,
    sigmoid,
)
from .train import TrainConfig, bce_loss, train, write_history_csv

__all__ = [
    "ConvLayer",
    "ConvTextModel",
    "TrainConfig",
    "Prediction",
    "EvalMetrics",
    "MODEL_FORMAT_VERSION",
    "init_model",
    "nn1_model",
    "nn2_model",
    "forward",
    "forward_batch",
    "sigmoid",
    "bce_loss",
    "train",
    "write_history_csv",
    "gradient_check",
    "analytic_gradients",
    "numeric_gradients",
    "max_relative_error",
    "predict_tags",
    "gbv_probability",
    "evaluate",
    "save_model",
    "load_model",
    "model_to_json",
    "model_from_json",
]
