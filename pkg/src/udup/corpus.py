"""Data model and serialization for action vocabularies and distribution traces.

A trace is a sequence of observation steps. Each step is either a sparse
probability distribution over actions (what an uncertain perception layer
emits) or ``None``, marking a position whose observation is missing. Missing
is structural on purpose: it never enters the vocabulary, so no embedding is
ever learned for it.

Corpus file format (UTF-8 JSON Lines): one trace per line, a JSON array of
steps; each step is either ``null`` or an array of ``[action, confidence]``
pairs. Ground-truth files are JSON Lines of plain action-string arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "CorpusFormatError",
    "ActionVocab",
    "ActionDistribution",
    "DistributionTrace",
    "PlanCorpus",
    "parse_corpus",
    "serialize_corpus",
    "parse_ground_truth",
    "serialize_ground_truth",
    "encode_distribution",
    "argmax_action",
    "argmax_reduce",
]

# Sparse confidences must sum to one within this tolerance.
NORMALIZATION_TOL = 1e-9


class CorpusFormatError(ValueError):
    """Raised for malformed corpus content; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ActionVocab:
    """Bidirectional action-symbol/id map with per-action occurrence counts.

    Ids are dense and 0-based, assigned in first-appearance order. A count is
    the number of distributions an action appears in, each appearance weighted
    1 regardless of its confidence.
    """

    symbols: tuple[str, ...]
    counts: tuple[int, ...]
    ids: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if len(self.symbols) != len(set(self.symbols)):
            raise ValueError("duplicate symbols in vocabulary")
        if len(self.counts) != len(self.symbols):
            raise ValueError("counts/symbols length mismatch")
        if any(c < 1 for c in self.counts):
            raise ValueError("every vocabulary action needs count >= 1")
        object.__setattr__(self, "ids", {s: i for i, s in enumerate(self.symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def id_of(self, symbol: str) -> int:
        return self.ids[symbol]

    def symbol_of(self, action_id: int) -> str:
        return self.symbols[action_id]

    def with_counts(self, counts: Sequence[int]) -> "ActionVocab":
        """Same symbol/id map with new counts (floored at 1)."""
        return ActionVocab(self.symbols, tuple(max(1, int(c)) for c in counts))

    def most_frequent(self) -> int:
        """Id of the highest-count action; ties go to the lowest id."""
        return int(np.argmax(np.asarray(self.counts)))


@dataclass(frozen=True)
class ActionDistribution:
    """Sparse distribution over actions: (action_id, confidence) entries.

    Entries are stored in ascending id order. Confidences lie in (0, 1] and
    sum to 1; an absent action is the representation of probability zero.
    """

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("distribution needs at least one entry")
        entries = tuple(sorted((int(a), float(c)) for a, c in self.entries))
        ids = [a for a, _ in entries]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate action within a distribution")
        for a, c in entries:
            if a < 0:
                raise ValueError(f"negative action id {a}")
            if not (0.0 < c <= 1.0):
                raise ValueError(f"confidence {c} outside (0, 1]")
        total = sum(c for _, c in entries)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"distribution does not normalize (sum = {total!r})")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def action_ids(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.entries)

    @classmethod
    def one_hot(cls, action_id: int) -> "ActionDistribution":
        return cls(((action_id, 1.0),))

    def confidence_of(self, action_id: int) -> float:
        for a, c in self.entries:
            if a == action_id:
                return c
        return 0.0


# An observation step: a distribution, or None when the observation is missing.
ObservationStep = Optional[ActionDistribution]


@dataclass(frozen=True)
class DistributionTrace:
    """Ordered sequence of observation steps."""

    steps: tuple[ObservationStep, ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("trace needs at least one step")
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def missing_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.steps) if s is None)

    @property
    def is_complete(self) -> bool:
        return all(s is not None for s in self.steps)


@dataclass(frozen=True)
class PlanCorpus:
    """A vocabulary plus the traces expressed over it."""

    vocab: ActionVocab
    traces: tuple[DistributionTrace, ...]

    def __post_init__(self):
        object.__setattr__(self, "traces", tuple(self.traces))
        n = len(self.vocab)
        for trace in self.traces:
            for step in trace.steps:
                if step is None:
                    continue
                for a, _ in step.entries:
                    if a >= n:
                        raise ValueError(f"action id {a} outside vocabulary of size {n}")

    def __len__(self) -> int:
        return len(self.traces)

    @property
    def is_complete(self) -> bool:
        return all(t.is_complete for t in self.traces)

    def with_traces(self, traces: Iterable[DistributionTrace]) -> "PlanCorpus":
        """Sub-corpus over the same symbol/id map, counts recomputed (floored at 1)."""
        traces = tuple(traces)
        return PlanCorpus(self.vocab.with_counts(count_occurrences(traces, len(self.vocab))), traces)


def count_occurrences(traces: Iterable[DistributionTrace], vocab_size: int) -> list[int]:
    """Occurrence count per action id: one per distribution the action appears in."""
    counts = [0] * vocab_size
    for trace in traces:
        for step in trace.steps:
            if step is None:
                continue
            for a, _ in step.entries:
                counts[a] += 1
    return counts


def parse_corpus(text: str) -> PlanCorpus:
    """Parse JSON-Lines corpus content into a PlanCorpus.

    The vocabulary is built from all symbols encountered, ids in
    first-appearance order, counts accumulated over all distributions.
    Traces are preserved in file order.
    """
    symbols: list[str] = []
    ids: dict[str, int] = {}
    counts: list[int] = []
    traces: list[DistributionTrace] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"invalid JSON ({exc.msg})", lineno) from exc
        if not isinstance(raw, list) or not raw:
            raise CorpusFormatError("trace must be a non-empty array of steps", lineno)
        steps: list[ObservationStep] = []
        for step in raw:
            if step is None:
                steps.append(None)
                continue
            if not isinstance(step, list) or not step:
                raise CorpusFormatError("step must be null or a non-empty array of pairs", lineno)
            entries = []
            for pair in step:
                if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], str)):
                    raise CorpusFormatError(f"expected [action, confidence] pair, got {pair!r}", lineno)
                symbol, conf = pair
                if symbol not in ids:
                    ids[symbol] = len(symbols)
                    symbols.append(symbol)
                    counts.append(0)
                entries.append((ids[symbol], conf))
            try:
                dist = ActionDistribution(tuple(entries))
            except ValueError as exc:
                raise CorpusFormatError(str(exc), lineno) from exc
            for a, _ in dist.entries:
                counts[a] += 1
            steps.append(dist)
        traces.append(DistributionTrace(tuple(steps)))

    if not traces:
        raise CorpusFormatError("corpus is empty")
    return PlanCorpus(ActionVocab(tuple(symbols), tuple(counts)), tuple(traces))


def serialize_corpus(corpus: PlanCorpus) -> str:
    """Render a corpus back to JSON Lines (round-trip float precision)."""
    lines = []
    for trace in corpus.traces:
        row = []
        for step in trace.steps:
            if step is None:
                row.append(None)
            else:
                row.append([[corpus.vocab.symbol_of(a), c] for a, c in step.entries])
        lines.append(json.dumps(row))
    return "\n".join(lines) + "\n"


def parse_ground_truth(text: str) -> list[list[str]]:
    """Parse a ground-truth file: JSON Lines of action-string arrays."""
    out: list[list[str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"invalid JSON ({exc.msg})", lineno) from exc
        if not isinstance(raw, list) or not raw or not all(isinstance(a, str) for a in raw):
            raise CorpusFormatError("expected a non-empty array of action strings", lineno)
        out.append(raw)
    if not out:
        raise CorpusFormatError("ground-truth corpus is empty")
    return out


def serialize_ground_truth(traces: Iterable[Sequence[str]]) -> str:
    return "\n".join(json.dumps(list(t)) for t in traces) + "\n"


def encode_distribution(d: ActionDistribution, vocab: ActionVocab) -> np.ndarray:
    """Dense probability vector over the vocabulary; absent actions are zero."""
    out = np.zeros(len(vocab))
    for a, c in d.entries:
        if a >= len(vocab):
            raise ValueError(f"action id {a} outside vocabulary of size {len(vocab)}")
        out[a] = c
    return out


def argmax_action(d: ActionDistribution) -> int:
    """Id of the most confident action; ties go to the lowest id."""
    best_id, best_c = d.entries[0]
    for a, c in d.entries[1:]:
        if c > best_c:
            best_id, best_c = a, c
    return best_id


def argmax_reduce(corpus: PlanCorpus) -> PlanCorpus:
    """Collapse every distribution to a one-hot on its most confident action.

    This is the training input of the argmax (NM) baseline. Missing steps are
    preserved. Counts are recomputed from the reduced traces (floored at 1 so
    the full vocabulary survives for recognition).
    """
    traces = []
    for trace in corpus.traces:
        steps = tuple(
            None if s is None else ActionDistribution.one_hot(argmax_action(s))
            for s in trace.steps
        )
        traces.append(DistributionTrace(steps))
    return corpus.with_traces(traces)


def iter_known_steps(corpus: PlanCorpus) -> Iterator[ActionDistribution]:
    for trace in corpus.traces:
        for step in trace.steps:
            if step is not None:
                yield step
