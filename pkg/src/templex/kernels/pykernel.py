"""Pure-Python scoring kernel; the fallback when the extension is not built.

Implements exactly the same walks as the native kernel, over the same packed
tables, so both backends return bit-identical results.
"""

from __future__ import annotations

from .tables import ScorerTables

LOG_FLOOR = -99.0


class PyScorer:
    backend = "python"

    def __init__(self, tables: ScorerTables):
        self.t = tables

    def score_step(self, state: int, tid: int) -> tuple[float, int]:
        """(log10 prob of tid in state, state after consuming tid)."""
        t = self.t
        probs = t.probs
        parent = t.parent
        base = t.base
        s = state
        acc = 0.0
        while True:
            lp = probs.get(s * base + tid)
            if lp is not None:
                lp += acc
                break
            if s == 0:
                lp = acc + t.unk_log10
                break
            acc += t.backoff[s]
            s = parent[s]
        if lp < LOG_FLOOR:
            lp = LOG_FLOOR

        trans = t.trans
        u = state
        while u != 0 and t.ctx_len[u] >= t.order - 1:
            u = parent[u]
        while True:
            nxt = trans.get(u * base + tid)
            if nxt is not None:
                break
            if u == 0:
                nxt = 0
                break
            u = parent[u]
        return lp, nxt

    def walk(self, state: int, tids) -> int:
        """Advance the context state through tids without scoring."""
        t = self.t
        trans = t.trans
        parent = t.parent
        base = t.base
        for tid in tids:
            u = state
            while u != 0 and t.ctx_len[u] >= t.order - 1:
                u = parent[u]
            while True:
                nxt = trans.get(u * base + tid)
                if nxt is not None:
                    break
                if u == 0:
                    nxt = 0
                    break
                u = parent[u]
            state = nxt
        return state

    def logprob_ids(self, context_ids, tid: int) -> float:
        state = self.walk(0, context_ids[-(self.t.order - 1) :] if self.t.order > 1 else ())
        return self.score_step(state, tid)[0]

    def sequence_logprob_ids(self, tids, with_boundaries: bool) -> float:
        state = self.t.bos_state if with_boundaries else 0
        total = 0.0
        for tid in tids:
            lp, state = self.score_step(state, tid)
            total += lp
        if with_boundaries:
            total += self.score_step(state, self.t.eos_id)[0]
        return total
