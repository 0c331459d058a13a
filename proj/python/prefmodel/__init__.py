"""Preference-model pipeline: telemetry, features, learners, regressions."""

from ._core import (
    Instance,
    MatchLog,
    Model,
    PipelineError,
    PreferenceVector,
    RegressionFit,
    average_by_turn,
    compose,
    evaluate,
    feature_names,
    featurize,
    generate_dataset,
    improvement,
    load_match_dir,
    majority_baseline,
    ols_fit,
    save_match_dir,
    separation_test,
    train_adaboost,
    train_naive_bayes,
    train_ripper,
    train_svm,
    transform_root,
)

__all__ = [
    "Instance",
    "MatchLog",
    "Model",
    "PipelineError",
    "PreferenceVector",
    "RegressionFit",
    "average_by_turn",
    "compose",
    "evaluate",
    "feature_names",
    "featurize",
    "generate_dataset",
    "improvement",
    "load_match_dir",
    "majority_baseline",
    "ols_fit",
    "save_match_dir",
    "separation_test",
    "train_adaboost",
    "train_naive_bayes",
    "train_ripper",
    "train_svm",
    "transform_root",
]
