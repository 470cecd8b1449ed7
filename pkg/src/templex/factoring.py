"""Template factoring: replace rare words with their POS gap.

Two thresholding strategies, both strict comparisons:

* absolute -- gap every word whose corpus count is below the threshold;
* relative -- gap every word whose frequency rank is above the threshold
  (rank 1 is the most frequent word, so numerically larger means rarer).

Words missing from the count table gap under either strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .corpus import (
    FACTOR,
    AnnotatedSentence,
    CountTable,
    Template,
    TemplateInventory,
    TemplateItem,
    factor_item,
)

ABSOLUTE = "absolute"
RELATIVE = "relative"


@dataclass(frozen=True)
class FactorPolicy:
    mode: str  # ABSOLUTE or RELATIVE
    threshold: int

    def __post_init__(self):
        if self.mode not in (ABSOLUTE, RELATIVE):
            raise ValueError("unknown factoring mode %r" % self.mode)
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1, got %d" % self.threshold)

    def gaps(self, word: str, table: CountTable) -> bool:
        if self.mode == ABSOLUTE:
            return table.count(word) < self.threshold
        return table.rank(word) > self.threshold


def factor_token(word: str, pos: str, table: CountTable, policy: FactorPolicy) -> TemplateItem:
    if policy.gaps(word, table):
        return factor_item(pos)
    return TemplateItem("lex", word, pos)


def _factor_template(t: Template, table: CountTable, policy: FactorPolicy) -> Template:
    items = tuple(
        item if item.kind == FACTOR else factor_token(item.text, item.pos, table, policy)
        for item in t.items
    )
    return Template(items, t.tag, t.count)


def factor_inventory(
    inv: TemplateInventory, table: CountTable, policy: FactorPolicy
) -> TemplateInventory:
    """Factor every template, merging any that become identical."""
    index: dict[Template, int] = {}
    merged: list[Template] = []
    counts: list[int] = []
    remap: list[int] = []
    for t in inv.templates:
        ft = _factor_template(t, table, policy)
        at = index.get(ft)
        if at is None:
            at = len(merged)
            index[ft] = at
            merged.append(ft)
            counts.append(0)
        counts[at] += t.count
        remap.append(at)
    templates = [Template(t.items, t.tag, c) for t, c in zip(merged, counts)]
    sequences = [tuple(remap[i] for i in seq) for seq in inv.sentence_sequences]
    return TemplateInventory(templates, sequences, inv.total)


def factored_token_stream(
    sentences: Iterable[AnnotatedSentence], table: CountTable, policy: FactorPolicy
) -> list[list[str]]:
    """Render each sentence with rare words gapped, for token-model training."""
    return [
        [factor_token(t.surface, t.pos, table, policy).render() for t in s.tokens]
        for s in sentences
    ]
