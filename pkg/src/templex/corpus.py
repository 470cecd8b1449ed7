"""Chunk-annotated corpus ingestion.

Reads 3-column CoNLL-2000-style text (``surface pos chunk``, blank line
between sentences), extracts every maximal chunk span as a template, and
computes the word-frequency table that factoring relies on.  Out-of-chunk
(``O``) tokens become single-token templates with tag ``O`` so that each
sentence is fully covered by its template sequence.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

LEXICAL = "lex"
FACTOR = "factor"

_CHUNK_RE = re.compile(r"^(?:O|[BI]-.+)$")


class MalformedLine(ValueError):
    """Input line does not have the expected 3 columns or a legal chunk tag."""

    def __init__(self, lineno: int, text: str, reason: str):
        super().__init__("line %d: %s (%r)" % (lineno, reason, text))
        self.lineno = lineno


class IllegalBIO(ValueError):
    """An I- tag appears without a matching B-/I- predecessor."""

    def __init__(self, lineno: int, label: str):
        super().__init__("line %d: I-%s without preceding B-%s/I-%s" % (lineno, label, label, label))
        self.lineno = lineno


@dataclass(frozen=True)
class AnnotatedToken:
    surface: str
    pos: str
    chunk: str


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple[AnnotatedToken, ...]

    def words(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True)
class TemplateItem:
    """One template slot: either a concrete word or a POS-typed gap.

    ``pos`` is the POS tag of the original corpus token and is kept for
    lexical items too, so a later factoring pass knows what to gap them to.
    For factor items ``text == pos``.
    """

    kind: str  # LEXICAL or FACTOR
    text: str
    pos: str

    def render(self) -> str:
        # Factors are wrapped so they can never collide with a real word.
        return self.text if self.kind == LEXICAL else "__%s__" % self.pos


def lexical_item(word: str, pos: str) -> TemplateItem:
    return TemplateItem(LEXICAL, word, pos)


def factor_item(pos: str) -> TemplateItem:
    return TemplateItem(FACTOR, pos, pos)


@dataclass(frozen=True)
class Template:
    """A chunk-derived token/factor sequence; the atomic unit of combination.

    Identity (hashing/equality) is on ``(items, tag)`` only; ``count`` is the
    merged occurrence count within one inventory.
    """

    items: tuple[TemplateItem, ...]
    tag: str
    count: int = field(default=1, compare=False)

    def rendered(self) -> tuple[str, ...]:
        return tuple(item.render() for item in self.items)


@dataclass
class TemplateInventory:
    """Unique templates with counts, plus each sentence's template sequence.

    ``sentence_sequences`` holds, per input sentence, the indices into
    ``templates`` of the chunks covering it, in order.  ``total`` equals the
    sum of all counts (one per chunk occurrence).
    """

    templates: list[Template]
    sentence_sequences: list[tuple[int, ...]]
    total: int

    def index(self) -> dict[Template, int]:
        return {t: i for i, t in enumerate(self.templates)}

    def signature_sequences(self) -> list[tuple[str, ...]]:
        """Chunk-tag sequence of every sentence (training data for the signature model)."""
        return [
            tuple(self.templates[i].tag for i in seq)
            for seq in self.sentence_sequences
        ]


@dataclass
class CountTable:
    """Corpus word frequencies with a deterministic 1-based rank map.

    Rank 1 is the most frequent word; ties are broken lexicographically.
    Unseen words count as 0 and rank past the end of the vocabulary.
    """

    counts: dict[str, int]
    ranks: dict[str, int]

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "CountTable":
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        ranks = {word: i + 1 for i, (word, _) in enumerate(ordered)}
        return cls(dict(counts), ranks)

    def count(self, word: str) -> int:
        return self.counts.get(word, 0)

    def rank(self, word: str) -> float:
        # Unseen words rank strictly beyond every possible threshold.
        return self.ranks.get(word, math.inf)


def parse_conll(lines: Iterable[str]) -> list[AnnotatedSentence]:
    """Parse 3-column chunker output into sentences.

    Raises MalformedLine for wrong column counts or illegal chunk tags, and
    IllegalBIO for I- tags with no matching predecessor.  Trailing blank
    lines are ignored.
    """
    sentences: list[AnnotatedSentence] = []
    current: list[AnnotatedToken] = []
    prev_chunk = "O"
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            if current:
                sentences.append(AnnotatedSentence(tuple(current)))
                current = []
            prev_chunk = "O"
            continue
        cols = line.split()
        if len(cols) != 3:
            raise MalformedLine(lineno, raw.rstrip("\n"), "expected 3 columns, got %d" % len(cols))
        surface, pos, chunk = cols
        if not _CHUNK_RE.match(chunk):
            raise MalformedLine(lineno, raw.rstrip("\n"), "illegal chunk tag %r" % chunk)
        if chunk.startswith("I-"):
            label = chunk[2:]
            if prev_chunk not in ("B-" + label, "I-" + label):
                raise IllegalBIO(lineno, label)
        current.append(AnnotatedToken(surface, pos, chunk))
        prev_chunk = chunk
    if current:
        sentences.append(AnnotatedSentence(tuple(current)))
    return sentences


def parse_conll_file(path) -> list[AnnotatedSentence]:
    with open(path, encoding="utf-8") as fh:
        return parse_conll(fh)


def _chunks(sentence: AnnotatedSentence) -> Iterator[tuple[str, list[AnnotatedToken]]]:
    """Yield (tag, tokens) for each maximal B-X (I-X)* span and each O token."""
    span: list[AnnotatedToken] = []
    span_tag = ""
    for tok in sentence.tokens:
        if tok.chunk.startswith("I-"):
            span.append(tok)
            continue
        if span:
            yield span_tag, span
            span = []
        if tok.chunk == "O":
            yield "O", [tok]
        else:  # B-X
            span_tag = tok.chunk[2:]
            span = [tok]
    if span:
        yield span_tag, span


def extract_templates(sentences: Iterable[AnnotatedSentence]) -> TemplateInventory:
    """Segment sentences into chunk templates and merge identical ones."""
    index: dict[Template, int] = {}
    templates: list[Template] = []
    counts: list[int] = []
    sequences: list[tuple[int, ...]] = []
    total = 0
    for sentence in sentences:
        seq: list[int] = []
        for tag, toks in _chunks(sentence):
            tpl = Template(tuple(lexical_item(t.surface, t.pos) for t in toks), tag)
            at = index.get(tpl)
            if at is None:
                at = len(templates)
                index[tpl] = at
                templates.append(tpl)
                counts.append(0)
            counts[at] += 1
            total += 1
            seq.append(at)
        sequences.append(tuple(seq))
    merged = [
        Template(t.items, t.tag, c) for t, c in zip(templates, counts)
    ]
    return TemplateInventory(merged, sequences, total)


def token_counts(sentences: Iterable[AnnotatedSentence]) -> CountTable:
    """Surface-word frequencies over the whole corpus."""
    counter: Counter[str] = Counter()
    for sentence in sentences:
        counter.update(t.surface for t in sentence.tokens)
    return CountTable.from_counts(dict(counter))


def inventory_lines(inv: TemplateInventory) -> Iterator[str]:
    """Serialize an inventory as ``count<TAB>tag<TAB>item item ...`` lines.

    Sorted by descending count, then lexicographically; templates whose
    rendered form coincides (same tag, same surface/factor strings, differing
    only in hidden lexical POS) are aggregated.
    """
    agg: dict[tuple[str, str], int] = {}
    for t in inv.templates:
        key = (t.tag, " ".join(t.rendered()))
        agg[key] = agg.get(key, 0) + t.count
    for (tag, items), count in sorted(agg.items(), key=lambda kv: (-kv[1], kv[0])):
        yield "%d\t%s\t%s" % (count, tag, items)


_FACTOR_MARK_RE = re.compile(r"^__(.+)__$")


def parse_inventory_lines(lines: Iterable[str]) -> TemplateInventory:
    """Load a serialized inventory.

    The text format carries no POS for lexical items and no per-sentence
    sequences, so loaded lexical items have an empty ``pos`` and
    ``sentence_sequences`` is empty; that is all generation needs.
    """
    templates: list[Template] = []
    total = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise MalformedLine(lineno, line, "expected 3 tab-separated fields, got %d" % len(cols))
        count_s, tag, items_s = cols
        try:
            count = int(count_s)
        except ValueError:
            raise MalformedLine(lineno, line, "bad count %r" % count_s) from None
        items = []
        for piece in items_s.split(" "):
            m = _FACTOR_MARK_RE.match(piece)
            if m:
                items.append(factor_item(m.group(1)))
            else:
                items.append(lexical_item(piece, ""))
        templates.append(Template(tuple(items), tag, count))
        total += count
    return TemplateInventory(templates, [], total)
