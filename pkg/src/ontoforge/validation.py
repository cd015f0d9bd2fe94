"""Input checks for the estimator wrappers, following scikit-learn
conventions (TypeError/ValueError rather than package errors)."""

from __future__ import annotations


def check_texts(X) -> list[str]:
    if isinstance(X, str):
        raise TypeError("expected an iterable of texts, got a single string")
    texts = list(X)
    if not texts:
        raise ValueError("at least one text is required")
    for i, t in enumerate(texts):
        if not isinstance(t, str):
            raise TypeError(f"text at index {i} is {type(t).__name__}, expected str")
    return texts
