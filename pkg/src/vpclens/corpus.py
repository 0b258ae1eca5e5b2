"""Labeled dataset construction for verb-particle constructions.

Concordance extraction over whitespace-tokenized text: find a target
verb immediately followed by a target particle, keep up to ten tokens
of context on either side, and record where the verb sits. Cleaning
removes ASCII punctuation, trims and collapses whitespace, and
lowercases; it is idempotent by construction.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import QueryError

# The eleven constructions in scope, in the order their reference
# counts are usually listed.
CONSTRUCTIONS: tuple[tuple[str, str], ...] = (
    ("agree", "on"),
    ("agree", "to"),
    ("agree", "that"),
    ("agree", "with"),
    ("come", "back"),
    ("come", "in"),
    ("come", "out"),
    ("give", "in"),
    ("give", "out"),
    ("give", "up"),
    ("give", "away"),
)

VERB_CATEGORIES: tuple[str, ...] = ("agree", "come", "give")

# Per-construction sample counts of the original British National
# Corpus extraction; informational reference only (the BNC itself is
# licensed and not shipped).
REFERENCE_COUNTS: dict[str, int] = {
    "agree_on": 100,
    "agree_to": 100,
    "agree_that": 100,
    "agree_with": 100,
    "come_back": 99,
    "come_in": 99,
    "come_out": 99,
    "give_in": 99,
    "give_out": 93,
    "give_up": 100,
    "give_away": 100,
}

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class ConstructionLabel:
    """One of the eleven verb + particle constructions."""

    verb_category: str
    particle: str

    def __post_init__(self):
        if (self.verb_category, self.particle) not in CONSTRUCTIONS:
            raise ValueError(
                f"unknown construction: {self.verb_category} + {self.particle}"
            )

    @property
    def name(self) -> str:
        return f"{self.verb_category}_{self.particle}"

    @classmethod
    def parse(cls, name: str) -> "ConstructionLabel":
        verb, _, particle = name.partition("_")
        if not particle:
            raise ValueError(f"not a construction name: {name!r}")
        return cls(verb, particle)


def construction_names() -> list[str]:
    """Canonical names of all eleven constructions, in reference order."""
    return [f"{v}_{p}" for v, p in CONSTRUCTIONS]


@dataclass(frozen=True)
class Sample:
    """One concordance hit: cleaned context window plus token locations."""

    id: str
    raw_text: str
    clean_text: str
    label: ConstructionLabel
    target_token_index: int
    particle_token_index: int
    context_before: int
    context_after: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "raw_text": self.raw_text,
            "clean_text": self.clean_text,
            "label": {
                "verb_category": self.label.verb_category,
                "particle": self.label.particle,
                "name": self.label.name,
            },
            "target_token_index": self.target_token_index,
            "particle_token_index": self.particle_token_index,
            "context_before": self.context_before,
            "context_after": self.context_after,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "Sample":
        label = record["label"]
        return cls(
            id=record["id"],
            raw_text=record["raw_text"],
            clean_text=record["clean_text"],
            label=ConstructionLabel(label["verb_category"], label["particle"]),
            target_token_index=record["target_token_index"],
            particle_token_index=record["particle_token_index"],
            context_before=record["context_before"],
            context_after=record["context_after"],
        )


@dataclass(frozen=True)
class Query:
    """Verb-form set plus the particle that must follow immediately."""

    label: ConstructionLabel
    forms: tuple[str, ...]

    def __post_init__(self):
        cleaned = tuple(clean_sentence(f) for f in self.forms)
        if not cleaned or any(" " in f or not f for f in cleaned):
            raise QueryError(
                f"query for {self.label.name} needs one or more single-word verb forms"
            )
        object.__setattr__(self, "forms", cleaned)

    @classmethod
    def base_form(cls, label: ConstructionLabel) -> "Query":
        return cls(label, (label.verb_category,))


def clean_sentence(raw: str) -> str:
    """Remove ASCII punctuation, trim, collapse whitespace, lowercase.

    Total and idempotent; empty output is allowed.
    """
    text = raw.translate(_PUNCT_TABLE)
    text = text.strip()
    text = _WS_RE.sub(" ", text)
    return text.lower()


def extract_concordance(
    tokens: Sequence[str],
    query: Query,
    window: int = 10,
    source: str = "stream",
) -> list[Sample]:
    """All occurrences of the query with up to ``window`` tokens of context.

    Only the verb form immediately followed by the particle matches
    (split constructions like "give it up" are not extracted). Hits
    near a stream boundary keep their shorter actual context, recorded
    in ``context_before`` / ``context_after``. Returned in stream order.
    The token stream is expected to be cleaned text split on whitespace;
    token indices in the samples refer to the cleaned window text.
    """
    if not query.forms:
        raise QueryError("query has an empty verb-form set")
    if window < 0:
        raise ValueError("window must be nonnegative")

    forms = set(query.forms)
    particle = query.label.particle
    samples = []
    for i in range(len(tokens) - 1):
        if tokens[i] not in forms or tokens[i + 1] != particle:
            continue
        left = list(tokens[max(0, i - window) : i])
        right = list(tokens[i + 2 : i + 2 + window])
        raw_text = " ".join(left + [tokens[i], tokens[i + 1]] + right)
        clean_text = clean_sentence(raw_text)
        before = len(clean_sentence(" ".join(left)).split())
        after = len(clean_sentence(" ".join(right)).split())
        samples.append(
            Sample(
                id=f"{source}:{i:06d}:{query.label.name}",
                raw_text=raw_text,
                clean_text=clean_text,
                label=query.label,
                target_token_index=before,
                particle_token_index=before + 1,
                context_before=before,
                context_after=after,
            )
        )
    return samples


@dataclass(frozen=True)
class DatasetSummary:
    """Per-construction sample counts; total is their sum."""

    counts: dict[str, int]
    total: int


def dataset_summary(samples: Iterable[Sample]) -> DatasetSummary:
    counts = {name: 0 for name in construction_names()}
    total = 0
    for sample in samples:
        counts[sample.label.name] += 1
        total += 1
    return DatasetSummary(counts=counts, total=total)


def summary_csv(summary: DatasetSummary) -> str:
    lines = ["construction,count"]
    lines += [f"{name},{count}" for name, count in summary.counts.items()]
    lines.append(f"total,{summary.total}")
    return "\n".join(lines) + "\n"


def parse_queries(path: str | Path) -> list[Query]:
    """Read a query file: one ``verb<TAB>particle[<TAB>inflections]`` per line.

    Inflections are comma-separated extra verb forms; the base form is
    always included. Blank lines and lines starting with '#' are
    skipped. Duplicate constructions are rejected because sample ids
    must stay unique.
    """
    queries = []
    seen = set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) not in (2, 3):
            raise QueryError(f"{path}:{lineno}: expected verb<TAB>particle[<TAB>inflections]")
        verb, particle = parts[0].strip(), parts[1].strip()
        try:
            label = ConstructionLabel(verb, particle)
        except ValueError as exc:
            raise QueryError(f"{path}:{lineno}: {exc}") from exc
        if label.name in seen:
            raise QueryError(f"{path}:{lineno}: duplicate construction {label.name}")
        seen.add(label.name)
        forms = [verb]
        if len(parts) == 3 and parts[2].strip():
            forms += [f.strip() for f in parts[2].split(",") if f.strip()]
        queries.append(Query(label, tuple(forms)))
    return queries


def samples_json_text(samples: Sequence[Sample]) -> str:
    return json.dumps([s.to_dict() for s in samples], indent=2, ensure_ascii=False) + "\n"


def write_samples(samples: Sequence[Sample], path: str | Path) -> None:
    Path(path).write_text(samples_json_text(samples), encoding="utf-8")


def read_samples(path: str | Path) -> list[Sample]:
    records = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(records, list):
        raise ValueError(f"{path}: expected a JSON array of samples")
    samples = [Sample.from_dict(r) for r in records]
    for s in samples:
        tokens = s.clean_text.split()
        if s.particle_token_index != s.target_token_index + 1:
            raise ValueError(f"sample {s.id}: particle is not adjacent to the verb")
        if (
            s.particle_token_index >= len(tokens)
            or tokens[s.particle_token_index] != s.label.particle
        ):
            raise ValueError(f"sample {s.id}: particle token does not match label")
    return samples
