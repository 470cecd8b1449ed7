"""Command-line surface: train artifacts, run evolution, inspect results.

Runs are driven by a flat ``key=value`` config file.  ``train`` persists the
factored inventory, both ARPA models, and a manifest keyed by a hash of the
training-relevant settings (corpus bytes, factoring policy, model orders);
``generate`` refuses to run against artifacts trained under a different hash.
Every run writes its resolved configuration beside its outputs, and every
output file is byte-reproducible from (corpus, config, seed).

Exit codes: 0 success, 1 usage/config error, 2 data or manifest error.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .corpus import (
    IllegalBIO,
    MalformedLine,
    extract_templates,
    inventory_lines,
    parse_conll_file,
    parse_inventory_lines,
    token_counts,
)
from .factoring import ABSOLUTE, RELATIVE, FactorPolicy, factor_inventory, factored_token_stream
from .ga import GAConfig, population_lines, run, stats_csv_lines
from .ngram import MalformedArpa, read_arpa_file, train, write_arpa_file

OUTDIR_ENV = "TEMPLEX_OUTDIR"

INVENTORY_FILE = "inventory.tsv"
TOKEN_LM_FILE = "token_lm.arpa"
SIGNATURE_LM_FILE = "signature_lm.arpa"
MANIFEST_FILE = "manifest.txt"
RESOLVED_CONFIG_FILE = "config.resolved"
STATS_FILE = "stats.csv"
POPULATION_FILE = "population.txt"


class ConfigError(ValueError):
    """Bad config file or option values (exit code 1)."""


class DataError(ValueError):
    """Unreadable/invalid input data or artifacts (exit code 2)."""


class ManifestMismatch(DataError):
    """Artifacts on disk were trained under a different config hash."""


@dataclass(frozen=True)
class RunConfig:
    corpus: Path
    outdir: Path
    policy: FactorPolicy | None  # None = keep templates fully lexical
    token_lm_order: int
    signature_lm_order: int
    ga: GAConfig


def parse_config_text(text: str, source: str) -> dict[str, str]:
    """Flat key=value lines; ``#`` comments and blank lines are skipped."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError("%s:%d: expected key=value, got %r" % (source, lineno, line))
        if key in values:
            raise ConfigError("%s:%d: duplicate key %r" % (source, lineno, key))
        values[key] = val.strip()
    return values


_KNOWN_KEYS = frozenset(
    {
        "corpus",
        "outdir",
        "factor.mode",
        "factor.threshold",
        "token_lm_order",
        "signature_lm_order",
        "ga.target_length",
        "ga.population_size",
        "ga.tournament_size",
        "ga.nbest",
        "ga.mutation_p",
        "ga.generations",
        "seed",
    }
)


def _int(values: dict[str, str], key: str, default: int) -> int:
    raw = values.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError("%s must be an integer, got %r" % (key, raw)) from None


def _float(values: dict[str, str], key: str, default: float) -> float:
    raw = values.get(key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError("%s must be a number, got %r" % (key, raw)) from None


def load_run_config(path: Path) -> RunConfig:
    """Read and validate a config file; relative paths resolve against it."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from None
    values = parse_config_text(text, str(path))
    unknown = sorted(set(values) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError("%s: unknown keys: %s" % (path, ", ".join(unknown)))
    if "corpus" not in values:
        raise ConfigError("%s: missing required key 'corpus'" % path)
    base = path.resolve().parent
    corpus = base / Path(values["corpus"])

    env_out = os.environ.get(OUTDIR_ENV)
    if env_out:
        outdir = Path(env_out).absolute()
    elif "outdir" in values:
        outdir = base / Path(values["outdir"])
    else:
        raise ConfigError(
            "%s: no output directory (set outdir= or the %s environment variable)"
            % (path, OUTDIR_ENV)
        )

    mode = values.get("factor.mode", "none")
    if mode == "none":
        if "factor.threshold" in values:
            raise ConfigError("factor.threshold is only valid with factor.mode=absolute|relative")
        policy = None
    elif mode in (ABSOLUTE, RELATIVE):
        if "factor.threshold" not in values:
            raise ConfigError("factor.mode=%s requires factor.threshold" % mode)
        try:
            policy = FactorPolicy(mode, _int(values, "factor.threshold", 0))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        raise ConfigError("factor.mode must be none, absolute, or relative (got %r)" % mode)

    token_order = _int(values, "token_lm_order", 3)
    sig_order = _int(values, "signature_lm_order", 5)
    if token_order < 1 or sig_order < 1:
        raise ConfigError("model orders must be >= 1")
    try:
        ga = GAConfig(
            target_length=_int(values, "ga.target_length", 5),
            population_size=_int(values, "ga.population_size", 1000),
            tournament_size=_int(values, "ga.tournament_size", 10),
            nbest=_int(values, "ga.nbest", 10),
            mutation_p=_float(values, "ga.mutation_p", 0.05),
            generations=_int(values, "ga.generations", 100),
            rng_seed=_int(values, "seed", 0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(corpus, outdir, policy, token_order, sig_order, ga)


def config_hash(cfg: RunConfig) -> str:
    """Digest of everything training depends on: corpus bytes, factoring
    policy, and both model orders.  Generation-only settings (GA knobs, seed,
    outdir) deliberately do not change it."""
    digest = hashlib.sha256()
    try:
        digest.update(cfg.corpus.read_bytes())
    except OSError as exc:
        raise DataError("cannot read corpus %s: %s" % (cfg.corpus, exc)) from None
    mode = cfg.policy.mode if cfg.policy else "none"
    threshold = cfg.policy.threshold if cfg.policy else 0
    digest.update(
        ("\nfactor=%s:%d\norders=%d:%d" % (mode, threshold, cfg.token_lm_order, cfg.signature_lm_order)).encode()
    )
    return digest.hexdigest()


def resolved_config_lines(cfg: RunConfig):
    yield "corpus=%s" % cfg.corpus
    yield "outdir=%s" % cfg.outdir
    yield "factor.mode=%s" % (cfg.policy.mode if cfg.policy else "none")
    if cfg.policy:
        yield "factor.threshold=%d" % cfg.policy.threshold
    yield "token_lm_order=%d" % cfg.token_lm_order
    yield "signature_lm_order=%d" % cfg.signature_lm_order
    yield "ga.target_length=%d" % cfg.ga.target_length
    yield "ga.population_size=%d" % cfg.ga.population_size
    yield "ga.tournament_size=%d" % cfg.ga.tournament_size
    yield "ga.nbest=%d" % cfg.ga.nbest
    yield "ga.mutation_p=%s" % repr(cfg.ga.mutation_p)
    yield "ga.generations=%d" % cfg.ga.generations
    yield "seed=%d" % cfg.ga.rng_seed


def _write_lines(path: Path, lines) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
    except OSError as exc:
        raise DataError("cannot write %s: %s" % (path, exc)) from None


def cmd_train(cfg: RunConfig) -> int:
    try:
        sentences = parse_conll_file(cfg.corpus)
    except OSError as exc:
        raise DataError("cannot read corpus %s: %s" % (cfg.corpus, exc)) from None
    except (MalformedLine, IllegalBIO) as exc:
        raise DataError("%s: %s" % (cfg.corpus, exc)) from None
    if not sentences:
        raise DataError("corpus %s contains no sentences" % cfg.corpus)

    inventory = extract_templates(sentences)
    raw_unique = len(inventory.templates)
    if cfg.policy is not None:
        table = token_counts(sentences)
        inventory = factor_inventory(inventory, table, cfg.policy)
        token_seqs = factored_token_stream(sentences, table, cfg.policy)
    else:
        token_seqs = [[t.surface for t in s.tokens] for s in sentences]
    token_lm = train(token_seqs, cfg.token_lm_order)
    sig_lm = train(inventory.signature_sequences(), cfg.signature_lm_order)

    outdir = cfg.outdir
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError("cannot create output directory %s: %s" % (outdir, exc)) from None
    _write_lines(outdir / INVENTORY_FILE, inventory_lines(inventory))
    try:
        write_arpa_file(token_lm, outdir / TOKEN_LM_FILE)
        write_arpa_file(sig_lm, outdir / SIGNATURE_LM_FILE)
    except OSError as exc:
        raise DataError("cannot write models: %s" % exc) from None
    _write_lines(
        outdir / MANIFEST_FILE,
        [
            "config_hash=%s" % config_hash(cfg),
            "sentences=%d" % len(sentences),
            "templates_raw=%d" % raw_unique,
            "templates_factored=%d" % len(inventory.templates),
        ],
    )
    _write_lines(outdir / RESOLVED_CONFIG_FILE, resolved_config_lines(cfg))
    print(
        "trained on %d sentences: %d templates (%d before factoring)"
        % (len(sentences), len(inventory.templates), raw_unique)
    )
    print("wrote %s" % outdir)
    return 0


def _read_manifest(outdir: Path) -> dict[str, str]:
    path = outdir / MANIFEST_FILE
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError("no manifest at %s (run train first): %s" % (path, exc)) from None
    try:
        values = parse_config_text(text, str(path))
    except ConfigError as exc:
        raise DataError(str(exc)) from None
    if "config_hash" not in values:
        raise DataError("%s: manifest has no config_hash" % path)
    return values


def cmd_generate(cfg: RunConfig) -> int:
    outdir = cfg.outdir
    manifest = _read_manifest(outdir)
    expected = config_hash(cfg)
    if manifest["config_hash"] != expected:
        raise ManifestMismatch(
            "artifacts in %s were trained under config hash %s, current config hashes to %s; retrain"
            % (outdir, manifest["config_hash"], expected)
        )
    try:
        with open(outdir / INVENTORY_FILE, encoding="utf-8") as fh:
            inventory = parse_inventory_lines(fh)
    except OSError as exc:
        raise DataError("cannot read inventory: %s" % exc) from None
    except MalformedLine as exc:
        raise DataError("%s: %s" % (outdir / INVENTORY_FILE, exc)) from None
    if not inventory.templates:
        raise DataError("%s lists no templates" % (outdir / INVENTORY_FILE))
    try:
        token_lm = read_arpa_file(outdir / TOKEN_LM_FILE)
        sig_lm = read_arpa_file(outdir / SIGNATURE_LM_FILE)
    except OSError as exc:
        raise DataError("cannot read models: %s" % exc) from None
    except MalformedArpa as exc:
        raise DataError("bad model file: %s" % exc) from None

    result = run(cfg.ga, inventory, token_lm, sig_lm)
    _write_lines(outdir / STATS_FILE, stats_csv_lines(result.stats))
    _write_lines(outdir / POPULATION_FILE, population_lines(result.population))
    _write_lines(outdir / RESOLVED_CONFIG_FILE, resolved_config_lines(cfg))
    best = max(c.fitness for c in result.population)
    print(
        "evolved %d generations (population %d, seed %d): best fitness %.6f"
        % (cfg.ga.generations, cfg.ga.population_size, cfg.ga.rng_seed, best)
    )
    print("wrote %s and %s" % (outdir / STATS_FILE, outdir / POPULATION_FILE))
    return 0


_FACTOR_MARK_RE = re.compile(r"^__(.+)__$")
_SPARK = "▁▂▃▄▅▆▇█"


def bare_factors(surface: str) -> str:
    """Display form: factor markers shown as their bare POS (``__NN__`` -> ``NN``)."""
    return " ".join(
        m.group(1) if (m := _FACTOR_MARK_RE.match(tok)) else tok for tok in surface.split(" ")
    )


def sparkline(values) -> str:
    values = list(values)
    lo, hi = min(values), max(values)
    if hi - lo < 1e-12:
        return _SPARK[0] * len(values)
    top = len(_SPARK) - 1
    return "".join(_SPARK[round((v - lo) / (hi - lo) * top)] for v in values)


def cmd_inspect(result_dir: Path, top: int) -> int:
    pop_path = result_dir / POPULATION_FILE
    stats_path = result_dir / STATS_FILE
    rows = []
    try:
        with open(pop_path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise DataError("%s:%d: expected 3 tab-separated fields" % (pop_path, lineno))
                try:
                    fit = float(parts[2])
                except ValueError:
                    raise DataError("%s:%d: bad fitness %r" % (pop_path, lineno, parts[2])) from None
                rows.append((parts[0], parts[1], fit))
    except OSError as exc:
        raise DataError("cannot read population dump: %s" % exc) from None
    if not rows:
        raise DataError("%s is empty" % pop_path)
    rows.sort(key=lambda r: -r[2])

    print("top %d of %d chromosomes:" % (min(top, len(rows)), len(rows)))
    for i, (surface, signature, fit) in enumerate(rows[:top], start=1):
        print("%3d. %.6f  %s  [%s]" % (i, fit, bare_factors(surface), signature))

    mean_fit, mean_len = [], []
    try:
        with open(stats_path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header.split(",")[:4] != ["generation", "mean_fitness", "max_fitness", "mean_len"]:
                raise DataError("%s: unrecognized stats header %r" % (stats_path, header))
            for lineno, raw in enumerate(fh, start=2):
                line = raw.strip()
                if not line:
                    continue
                cols = line.split(",")
                try:
                    mean_fit.append(float(cols[1]))
                    mean_len.append(float(cols[3]))
                except (IndexError, ValueError):
                    raise DataError("%s:%d: bad stats row %r" % (stats_path, lineno, line)) from None
    except OSError as exc:
        raise DataError("cannot read stats: %s" % exc) from None
    if not mean_fit:
        raise DataError("%s has no data rows" % stats_path)
    print()
    print("mean fitness  %.4f .. %.4f  %s" % (mean_fit[0], mean_fit[-1], sparkline(mean_fit)))
    print("mean length   %.2f .. %.2f  %s" % (mean_len[0], mean_len[-1], sparkline(mean_len)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="templex",
        description="Evolve gapped sentences from chunk templates under n-gram models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("train", "mine templates and train both models"),
                       ("generate", "run the evolutionary search on trained artifacts")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, type=Path, help="key=value config file")
    p = sub.add_parser("inspect", help="summarize a finished run")
    p.add_argument("result_dir", type=Path)
    p.add_argument("--top", type=int, default=10, help="number of chromosomes to list")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse uses status 2 for usage; contract says 1
        return 0 if not exc.code else 1
    try:
        if args.command == "train":
            return cmd_train(load_run_config(args.config))
        if args.command == "generate":
            return cmd_generate(load_run_config(args.config))
        return cmd_inspect(args.result_dir, args.top)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except DataError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
