# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The sustext Authors
"""Sustainability passage mining for textile-industry documents."""

from ._sustext import (
    SustextError,
    TfidfModel,
    __version__,
    class_names,
    evaluate,
    evaluate_corpus,
    fit_tfidf,
    gen_demo,
    ingest,
    is_english,
    keyword_classes,
    optimize,
    segment_sentences,
    threshold_predict,
    train_linear_svm,
    tune,
)

__all__ = [
    "SustextError",
    "TfidfModel",
    "__version__",
    "class_names",
    "evaluate",
    "evaluate_corpus",
    "fit_tfidf",
    "gen_demo",
    "ingest",
    "is_english",
    "keyword_classes",
    "optimize",
    "segment_sentences",
    "threshold_predict",
    "train_linear_svm",
    "tune",
]
