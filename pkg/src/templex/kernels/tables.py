"""Packed lookup tables shared by the scoring kernels.

The model's string-tuple maps are compiled into integer form once per model:
tokens get dense ids (out-of-vocabulary and ``<unk>`` share the sentinel id
``V``), every stored context gets a dense context id, and the two hot maps
key on ``ctx_id * (V + 1) + token_id``:

* ``probs``  -> stored log10 probability of (context, token);
* ``trans``  -> context id of the extended context, for O(1) left-to-right
  state advancement.

``parent[c]`` drops the leftmost token of context ``c`` (the backoff step)
and ``backoff[c]`` is its log10 backoff weight.  Contexts that only ever
appear as prefixes or suffixes of stored ones (possible in pruned external
models) are synthesized with zero backoff so both walks always terminate at
the empty context.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ngram.counts import BOS, EOS, UNK


@dataclass
class ScorerTables:
    order: int
    base: int  # V + 1; token ids run 0..V with V the OOV sentinel
    token_ids: dict[str, int]
    ctx_len: list[int]
    parent: list[int]
    backoff: list[float]
    probs: dict[int, float]
    trans: dict[int, int]
    unk_log10: float
    bos_state: int
    eos_id: int

    def encode(self, token: str) -> int:
        return self.token_ids.get(token, self.base - 1)

    def encode_all(self, tokens) -> list[int]:
        get = self.token_ids.get
        sentinel = self.base - 1
        return [get(t, sentinel) for t in tokens]


def build_tables(model) -> ScorerTables:
    token_ids = {tok: i for i, tok in enumerate(sorted(model.vocab))}
    sentinel = len(token_ids)
    base = sentinel + 1

    def tid(tok: str) -> int:
        return token_ids.get(tok, sentinel)

    contexts: set[tuple[int, ...]] = {()}
    grams: dict[tuple[int, ...], float] = {}
    for g, lp in model.logprobs.items():
        ig = tuple(tid(t) for t in g)
        grams[ig] = lp
        if len(ig) > 1:
            contexts.add(ig[:-1])
    bows: dict[tuple[int, ...], float] = {}
    for g, w in model.backoffs.items():
        ig = tuple(tid(t) for t in g)
        bows[ig] = w
        contexts.add(ig)
    # Close under prefixes (for trans chaining) and suffixes (for backoff
    # chaining); missing links get implicit zero backoff.
    stack = list(contexts)
    while stack:
        c = stack.pop()
        for link in (c[:-1], c[1:]):
            if c and link not in contexts:
                contexts.add(link)
                stack.append(link)

    ordered = sorted(contexts, key=lambda c: (len(c), c))
    ctx_id = {c: i for i, c in enumerate(ordered)}
    ctx_len = [len(c) for c in ordered]
    parent = [ctx_id[c[1:]] if c else 0 for c in ordered]
    backoff = [bows.get(c, 0.0) for c in ordered]
    trans = {
        ctx_id[c[:-1]] * base + c[-1]: ctx_id[c] for c in ordered if c
    }
    probs = {ctx_id[g[:-1]] * base + g[-1]: lp for g, lp in grams.items()}

    bos = tid(BOS)
    state = 0
    for _ in range(model.order - 1):
        state = trans.get(state * base + bos, _suffix_state(state, bos, ordered, ctx_id))
    return ScorerTables(
        order=model.order,
        base=base,
        token_ids=token_ids,
        ctx_len=ctx_len,
        parent=parent,
        backoff=backoff,
        probs=probs,
        trans=trans,
        unk_log10=model.unk_log10,
        bos_state=state,
        eos_id=tid(EOS),
    )


def _suffix_state(state: int, tok: int, ordered, ctx_id) -> int:
    """Longest stored suffix of (state tokens + tok); slow path, build time only."""
    ctx = ordered[state] + (tok,)
    for i in range(len(ctx)):
        hit = ctx_id.get(ctx[i:])
        if hit is not None:
            return hit
    return 0
