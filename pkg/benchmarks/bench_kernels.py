#!/usr/bin/env python3
"""Compare the scoring backends on one model: queries/second and speedup.

Builds a seeded synthetic corpus, trains an n-gram model on it, then times
identical random single-token queries and whole-sequence scorings on every
available kernel.  Results are checked for bit-identity across backends while
timing, so a speedup never comes from a divergent fast path.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --order 5 --queries 500000
"""

from __future__ import annotations

import argparse
import random
import time

from templex.kernels import available_backends, make_scorer
from templex.ngram import train


def synthetic_corpus(sentences: int, vocab_size: int, seed: int) -> list[list[str]]:
    rng = random.Random(seed)
    vocab = ["w%04d" % i for i in range(vocab_size)]
    out = []
    for _ in range(sentences):
        length = rng.randint(3, 18)
        out.append(
            [vocab[min(int(rng.expovariate(1 / (vocab_size / 8.0))), vocab_size - 1)]
             for _ in range(length)]
        )
    return out


def build_queries(model, n: int, seed: int):
    rng = random.Random(seed)
    words = sorted(model.vocab) + ["out-of-vocab"]
    single = [
        (
            tuple(rng.choice(words) for _ in range(rng.randrange(0, model.order))),
            rng.choice(words),
        )
        for _ in range(n)
    ]
    seqs = [
        [rng.choice(words) for _ in range(rng.randint(3, 18))] for _ in range(n // 50)
    ]
    return single, seqs


def time_backend(model, backend, single, seqs):
    scorer = make_scorer(model, backend)
    # encode once; the kernels are the unit under test, not the string maps
    enc_single = [(scorer.encode(ctx), scorer.tables.encode(w)) for ctx, w in single]
    enc_seqs = [scorer.encode(s) for s in seqs]

    t0 = time.perf_counter()
    checks = [scorer.kernel.logprob_ids(ctx, w) for ctx, w in enc_single]
    t_single = time.perf_counter() - t0

    t1 = time.perf_counter()
    seq_checks = [scorer.kernel.sequence_logprob_ids(ids, True) for ids in enc_seqs]
    t_seq = time.perf_counter() - t1
    return t_single, t_seq, checks, seq_checks


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sentences", type=int, default=3000)
    ap.add_argument("--vocab", type=int, default=800)
    ap.add_argument("--order", type=int, default=3)
    ap.add_argument("--queries", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=13)
    args = ap.parse_args()

    corpus = synthetic_corpus(args.sentences, args.vocab, args.seed)
    model = train(corpus, args.order)
    single, seqs = build_queries(model, args.queries, args.seed + 1)
    print(
        "model: order %d, %d vocab, %d stored grams; %d single queries, %d sequences"
        % (
            model.order,
            len(model.vocab),
            len(model.logprobs),
            len(single),
            len(seqs),
        )
    )

    results = {}
    reference = None
    for backend in available_backends():
        t_single, t_seq, checks, seq_checks = time_backend(model, backend, single, seqs)
        if reference is None:
            reference = (checks, seq_checks)
        else:
            assert checks == reference[0], "backends disagree on single queries"
            assert seq_checks == reference[1], "backends disagree on sequences"
        results[backend] = (t_single, t_seq)
        print(
            "%-8s single: %8.0f q/s   sequence: %8.0f seq/s"
            % (backend, len(single) / t_single, len(seqs) / t_seq)
        )

    if "native" in results and "python" in results:
        ps, pq = results["python"]
        ns, nq = results["native"]
        print("native speedup: %.1fx single, %.1fx sequence" % (ps / ns, pq / nq))
    elif "native" not in results:
        print("native backend not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
