"""Scoring kernels: compiled extension when available, pure Python otherwise.

The backend is chosen at import time; set ``TEMPLEX_KERNEL=python`` (or
``native``) to force one, e.g. for the backend-comparison benchmark.
"""

from __future__ import annotations

import os
from typing import Sequence

from .pykernel import PyScorer
from .tables import ScorerTables, build_tables

try:
    from ._native import NativeScorer
except ImportError:  # extension not built; fall back
    NativeScorer = None

_KERNELS = {"python": PyScorer}
if NativeScorer is not None:
    _KERNELS["native"] = NativeScorer

DEFAULT_BACKEND = os.environ.get("TEMPLEX_KERNEL") or (
    "native" if NativeScorer is not None else "python"
)


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_KERNELS))


class ModelScorer:
    """String-level query interface bound to one model and one kernel."""

    def __init__(self, model, backend: str | None = None):
        name = backend or DEFAULT_BACKEND
        if name not in _KERNELS:
            raise ValueError(
                "unknown kernel backend %r (available: %s)" % (name, ", ".join(available_backends()))
            )
        self.tables = build_tables(model)
        self.kernel = _KERNELS[name](self.tables)
        self.backend = name

    def encode(self, tokens: Sequence[str]) -> list[int]:
        return self.tables.encode_all(tokens)

    def logprob(self, context: Sequence[str], token: str) -> float:
        return self.kernel.logprob_ids(self.tables.encode_all(context), self.tables.encode(token))

    def sequence_logprob(self, tokens: Sequence[str], with_boundaries: bool) -> float:
        return self.kernel.sequence_logprob_ids(self.tables.encode_all(tokens), with_boundaries)


def make_scorer(model, backend: str | None = None) -> ModelScorer:
    return ModelScorer(model, backend)
