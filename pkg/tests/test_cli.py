"""End-to-end command-line behavior: configs, artifacts, exit codes."""

import shutil
import subprocess

import pytest

from templex import cli
from templex.cli import (
    ConfigError,
    DataError,
    ManifestMismatch,
    bare_factors,
    config_hash,
    load_run_config,
    main,
    parse_config_text,
    sparkline,
)

DESK_KEYS = {
    "factor.mode": "absolute",
    "factor.threshold": "2",
    "token_lm_order": "3",
    "signature_lm_order": "5",
    "ga.target_length": "5",
    "ga.population_size": "20",
    "ga.tournament_size": "4",
    "ga.nbest": "4",
    "ga.mutation_p": "0.05",
    "ga.generations": "3",
    "seed": "0",
}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(cli.OUTDIR_ENV, raising=False)


def write_config(tmp_path, data_dir, name="run.cfg", **overrides):
    kv = dict(DESK_KEYS)
    kv["corpus"] = str(data_dir / "desk.conll")
    kv["outdir"] = "out"
    kv.update(overrides)
    path = tmp_path / name
    body = "# evolution run\n\n" + "\n".join(
        "%s=%s" % (k, v) for k, v in kv.items() if v is not None
    )
    path.write_text(body + "\n", encoding="utf-8")
    return path


def manifest_values(outdir):
    text = (outdir / cli.MANIFEST_FILE).read_text(encoding="utf-8")
    return dict(line.split("=", 1) for line in text.splitlines())


# -------------------------------------------------------------- config parsing


def test_parse_config_ignores_comments_and_blanks():
    got = parse_config_text("# a\n\n k = v \nother=1\n", "t")
    assert got == {"k": "v", "other": "1"}


def test_parse_config_rejects_duplicate_keys():
    with pytest.raises(ConfigError, match="t:3: duplicate key 'k'"):
        parse_config_text("k=1\n# mid\nk=2\n", "t")


def test_parse_config_rejects_bare_words():
    with pytest.raises(ConfigError, match="t:1: expected key=value"):
        parse_config_text("standalone\n", "t")


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        ({"nonsense": "1"}, "unknown keys: nonsense"),
        ({"corpus": None}, "missing required key 'corpus'"),
        ({"factor.mode": "none"}, "factor.threshold is only valid"),
        ({"factor.threshold": None}, "requires factor.threshold"),
        ({"factor.mode": "fancy"}, "factor.mode must be none, absolute, or relative"),
        ({"factor.threshold": "two"}, "must be an integer"),
        ({"ga.mutation_p": "lots"}, "must be a number"),
        ({"token_lm_order": "0"}, "model orders must be >= 1"),
        ({"ga.tournament_size": "1"}, "tournament_size must be >= 2"),
        ({"ga.mutation_p": "1.5"}, "mutation_p must be in"),
    ],
)
def test_bad_configs_raise_config_error(tmp_path, data_dir, overrides, fragment):
    path = write_config(tmp_path, data_dir, **overrides)
    with pytest.raises(ConfigError, match=fragment):
        load_run_config(path)


def test_missing_config_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError, match="cannot read config"):
        load_run_config(tmp_path / "absent.cfg")


def test_config_without_outdir_is_rejected(tmp_path, data_dir):
    path = write_config(tmp_path, data_dir, outdir=None)
    with pytest.raises(ConfigError, match="no output directory"):
        load_run_config(path)


def test_relative_paths_resolve_against_config_dir(tmp_path, data_dir):
    shutil.copy(data_dir / "desk.conll", tmp_path / "local.conll")
    path = write_config(tmp_path, data_dir, corpus="local.conll", outdir="artifacts")
    cfg = load_run_config(path)
    assert cfg.corpus == tmp_path / "local.conll"
    assert cfg.outdir == tmp_path / "artifacts"


def test_env_outdir_overrides_config(tmp_path, data_dir, monkeypatch):
    forced = tmp_path / "forced"
    monkeypatch.setenv(cli.OUTDIR_ENV, str(forced))
    cfg = load_run_config(write_config(tmp_path, data_dir, outdir="ignored"))
    assert cfg.outdir == forced


def test_defaults_applied(tmp_path, data_dir):
    path = tmp_path / "bare.cfg"
    path.write_text(
        "corpus=%s\noutdir=out\n" % (data_dir / "desk.conll"), encoding="utf-8"
    )
    cfg = load_run_config(path)
    assert cfg.policy is None
    assert (cfg.token_lm_order, cfg.signature_lm_order) == (3, 5)
    assert cfg.ga.population_size == 1000
    assert cfg.ga.generations == 100
    assert cfg.ga.mutation_p == 0.05
    assert cfg.ga.rng_seed == 0


# ----------------------------------------------------------------- config hash


def test_hash_ignores_generation_only_settings(tmp_path, data_dir):
    base = config_hash(load_run_config(write_config(tmp_path, data_dir)))
    for overrides in (
        {"seed": "99"},
        {"ga.population_size": "64"},
        {"ga.generations": "1"},
        {"ga.mutation_p": "0.5"},
        {"outdir": "elsewhere"},
    ):
        cfg = load_run_config(write_config(tmp_path, data_dir, name="o.cfg", **overrides))
        assert config_hash(cfg) == base, overrides


def test_hash_tracks_training_settings(tmp_path, data_dir):
    base = config_hash(load_run_config(write_config(tmp_path, data_dir)))
    seen = {base}
    for overrides in (
        {"factor.mode": "relative", "factor.threshold": "10"},
        {"factor.threshold": "5"},
        {"token_lm_order": "2"},
        {"signature_lm_order": "4"},
    ):
        cfg = load_run_config(write_config(tmp_path, data_dir, name="o.cfg", **overrides))
        h = config_hash(cfg)
        assert h not in seen, overrides
        seen.add(h)


def test_hash_tracks_corpus_bytes(tmp_path, data_dir):
    shutil.copy(data_dir / "desk.conll", tmp_path / "c.conll")
    path = write_config(tmp_path, data_dir, corpus="c.conll")
    before = config_hash(load_run_config(path))
    with open(tmp_path / "c.conll", "a", encoding="utf-8") as fh:
        fh.write("more\tNN\tB-NP\n\n")
    assert config_hash(load_run_config(path)) != before


def test_hash_of_missing_corpus_is_data_error(tmp_path, data_dir):
    cfg = load_run_config(write_config(tmp_path, data_dir, corpus="gone.conll"))
    with pytest.raises(DataError):
        config_hash(cfg)


# ----------------------------------------------------------------------- train


def test_train_writes_all_artifacts(tmp_path, data_dir, capsys):
    path = write_config(tmp_path, data_dir)
    assert main(["train", "--config", str(path)]) == 0
    out = tmp_path / "out"
    for name in (
        cli.INVENTORY_FILE,
        cli.TOKEN_LM_FILE,
        cli.SIGNATURE_LM_FILE,
        cli.MANIFEST_FILE,
        cli.RESOLVED_CONFIG_FILE,
    ):
        assert (out / name).is_file(), name
    stdout = capsys.readouterr().out
    assert "trained on 55 sentences" in stdout


def test_manifest_counts_identity_policy(tmp_path, data_dir):
    path = write_config(
        tmp_path, data_dir, **{"factor.mode": "none", "factor.threshold": None}
    )
    assert main(["train", "--config", str(path)]) == 0
    values = manifest_values(tmp_path / "out")
    assert values["sentences"] == "55"
    # no factoring: the factored inventory is the raw inventory
    assert values["templates_raw"] == values["templates_factored"]


def test_manifest_counts_factored_policy(tmp_path, data_dir):
    assert main(["train", "--config", str(write_config(tmp_path, data_dir))]) == 0
    values = manifest_values(tmp_path / "out")
    raw, factored = int(values["templates_raw"]), int(values["templates_factored"])
    assert factored <= raw


def test_factoring_policies_order_the_inventory_size(tmp_path, data_dir):
    """Coarser policies merge more templates: none keeps every lexical form,
    higher absolute thresholds and lower rank cutoffs factor more words."""
    sizes = {}
    for tag, mode, threshold in (
        ("none", "none", None),
        ("abs2", "absolute", "2"),
        ("rel50", "relative", "50"),
        ("abs5", "absolute", "5"),
        ("rel10", "relative", "10"),
    ):
        path = write_config(
            tmp_path,
            data_dir,
            name="%s.cfg" % tag,
            outdir="out_%s" % tag,
            **{"factor.mode": mode, "factor.threshold": threshold},
        )
        assert main(["train", "--config", str(path)]) == 0
        sizes[tag] = int(manifest_values(tmp_path / ("out_%s" % tag))["templates_factored"])
    assert sizes["none"] > sizes["abs2"] > sizes["rel50"] > sizes["abs5"] > sizes["rel10"]


def test_train_missing_corpus_exits_2(tmp_path, data_dir, capsys):
    path = write_config(tmp_path, data_dir, corpus="missing.conll")
    assert main(["train", "--config", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_train_malformed_corpus_exits_2(tmp_path, data_dir, capsys):
    bad = tmp_path / "bad.conll"
    bad.write_text("word\tNN\n\n", encoding="utf-8")  # two columns only
    path = write_config(tmp_path, data_dir, corpus=str(bad))
    assert main(["train", "--config", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_train_empty_corpus_exits_2(tmp_path, data_dir):
    empty = tmp_path / "empty.conll"
    empty.write_text("", encoding="utf-8")
    path = write_config(tmp_path, data_dir, corpus=str(empty))
    assert main(["train", "--config", str(path)]) == 2


def test_train_bad_config_exits_1(tmp_path, data_dir, capsys):
    path = write_config(tmp_path, data_dir, **{"factor.mode": "wild"})
    assert main(["train", "--config", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_resolved_config_is_complete_key_value(tmp_path, data_dir):
    path = write_config(tmp_path, data_dir)
    assert main(["train", "--config", str(path)]) == 0
    text = (tmp_path / "out" / cli.RESOLVED_CONFIG_FILE).read_text(encoding="utf-8")
    resolved = parse_config_text(text, "resolved")
    assert resolved["factor.mode"] == "absolute"
    assert resolved["factor.threshold"] == "2"
    assert resolved["ga.mutation_p"] == "0.05"
    assert resolved["seed"] == "0"
    assert set(resolved) <= cli._KNOWN_KEYS


# -------------------------------------------------------------------- generate


def trained_config(tmp_path, data_dir, **overrides):
    path = write_config(tmp_path, data_dir, **overrides)
    assert main(["train", "--config", str(path)]) == 0
    return path


def test_generate_produces_stats_and_population(tmp_path, data_dir, capsys):
    path = trained_config(tmp_path, data_dir)
    assert main(["generate", "--config", str(path)]) == 0
    out = tmp_path / "out"
    stats = (out / cli.STATS_FILE).read_text(encoding="utf-8").splitlines()
    assert stats[0] == "generation,mean_fitness,max_fitness,mean_len,std_len"
    assert len(stats) == 1 + 4  # header + generations 0..3
    pop = (out / cli.POPULATION_FILE).read_text(encoding="utf-8").splitlines()
    assert len(pop) == 20
    for line in pop:
        surface, signature, fit = line.split("\t")
        assert surface and signature
        assert 0.0 < float(fit) <= 1.0
    assert "best fitness" in capsys.readouterr().out


def test_generate_without_train_exits_2(tmp_path, data_dir, capsys):
    path = write_config(tmp_path, data_dir)
    assert main(["generate", "--config", str(path)]) == 2
    assert "run train first" in capsys.readouterr().err


def test_generate_under_changed_training_config_exits_2(tmp_path, data_dir, capsys):
    trained_config(tmp_path, data_dir)
    changed = write_config(tmp_path, data_dir, name="changed.cfg", **{"factor.threshold": "3"})
    assert main(["generate", "--config", str(changed)]) == 2
    assert "retrain" in capsys.readouterr().err


def test_generate_tolerates_generation_only_changes(tmp_path, data_dir):
    trained_config(tmp_path, data_dir)
    changed = write_config(tmp_path, data_dir, name="seed9.cfg", **{"seed": "9"})
    assert main(["generate", "--config", str(changed)]) == 0


def test_generate_is_byte_deterministic(tmp_path, data_dir):
    path = trained_config(tmp_path, data_dir)
    out = tmp_path / "out"
    assert main(["generate", "--config", str(path)]) == 0
    first = {
        name: (out / name).read_bytes()
        for name in (cli.STATS_FILE, cli.POPULATION_FILE)
    }
    assert main(["generate", "--config", str(path)]) == 0
    for name, blob in first.items():
        assert (out / name).read_bytes() == blob, name


def test_generate_seed_changes_output(tmp_path, data_dir):
    path = trained_config(tmp_path, data_dir)
    out = tmp_path / "out"
    assert main(["generate", "--config", str(path)]) == 0
    first = (out / cli.POPULATION_FILE).read_bytes()
    reseeded = write_config(tmp_path, data_dir, name="r.cfg", **{"seed": "123"})
    assert main(["generate", "--config", str(reseeded)]) == 0
    assert (out / cli.POPULATION_FILE).read_bytes() != first


def test_generate_zero_generations_single_row(tmp_path, data_dir):
    path = trained_config(tmp_path, data_dir, **{"ga.generations": "0"})
    assert main(["generate", "--config", str(path)]) == 0
    stats = (tmp_path / "out" / cli.STATS_FILE).read_text(encoding="utf-8").splitlines()
    assert len(stats) == 2  # header plus the generation-0 row
    assert stats[1].startswith("0,")


def test_generate_corrupt_model_exits_2(tmp_path, data_dir, capsys):
    path = trained_config(tmp_path, data_dir)
    (tmp_path / "out" / cli.TOKEN_LM_FILE).write_text("\\data\\\nnot arpa\n", encoding="utf-8")
    assert main(["generate", "--config", str(path)]) == 2
    assert "bad model file" in capsys.readouterr().err


def test_generate_empty_inventory_exits_2(tmp_path, data_dir):
    path = trained_config(tmp_path, data_dir)
    (tmp_path / "out" / cli.INVENTORY_FILE).write_text("", encoding="utf-8")
    assert main(["generate", "--config", str(path)]) == 2


# --------------------------------------------------------------------- inspect


def test_inspect_lists_top_chromosomes(tmp_path, data_dir, capsys):
    path = trained_config(tmp_path, data_dir)
    assert main(["generate", "--config", str(path)]) == 0
    capsys.readouterr()
    assert main(["inspect", str(tmp_path / "out"), "--top", "5"]) == 0
    out = capsys.readouterr().out
    assert "top 5 of 20 chromosomes:" in out
    assert "mean fitness" in out and "mean length" in out
    # factor markers are shown bare
    assert "__" not in out.split("mean fitness")[0]


def test_inspect_renders_both_trajectories(tmp_path, data_dir, capsys):
    path = trained_config(tmp_path, data_dir)
    assert main(["generate", "--config", str(path)]) == 0
    capsys.readouterr()
    assert main(["inspect", str(tmp_path / "out")]) == 0
    lines = capsys.readouterr().out.splitlines()
    fit_line = next(ln for ln in lines if ln.startswith("mean fitness"))
    len_line = next(ln for ln in lines if ln.startswith("mean length"))
    for ln in (fit_line, len_line):
        spark = ln.split()[-1]
        assert len(spark) == 4  # one glyph per generation 0..3
        assert all(ch in cli._SPARK for ch in spark)


def test_inspect_missing_dir_exits_2(tmp_path, capsys):
    assert main(["inspect", str(tmp_path / "nowhere")]) == 2
    assert "error:" in capsys.readouterr().err


def test_inspect_corrupt_population_exits_2(tmp_path, data_dir, capsys):
    out = tmp_path / "out"
    out.mkdir()
    (out / cli.POPULATION_FILE).write_text("only two\tfields\n", encoding="utf-8")
    (out / cli.STATS_FILE).write_text("generation,mean_fitness,max_fitness,mean_len,std_len\n0,1,1,1,0\n", encoding="utf-8")
    assert main(["inspect", str(out)]) == 2
    assert "expected 3 tab-separated fields" in capsys.readouterr().err


def test_inspect_bad_fitness_field_exits_2(tmp_path, capsys):
    out = tmp_path / "out"
    out.mkdir()
    (out / cli.POPULATION_FILE).write_text("a\tNP\tnot-a-number\n", encoding="utf-8")
    assert main(["inspect", str(out)]) == 2
    assert "bad fitness" in capsys.readouterr().err


def test_inspect_unrecognized_stats_header_exits_2(tmp_path, capsys):
    out = tmp_path / "out"
    out.mkdir()
    (out / cli.POPULATION_FILE).write_text("a\tNP\t0.5\n", encoding="utf-8")
    (out / cli.STATS_FILE).write_text("wrong,header\n", encoding="utf-8")
    assert main(["inspect", str(out)]) == 2
    assert "unrecognized stats header" in capsys.readouterr().err


def test_inspect_top_clamps_to_population(tmp_path, capsys):
    out = tmp_path / "out"
    out.mkdir()
    (out / cli.POPULATION_FILE).write_text("a\tNP\t0.5\nb\tVP\t0.9\n", encoding="utf-8")
    (out / cli.STATS_FILE).write_text(
        "generation,mean_fitness,max_fitness,mean_len,std_len\n0,0.7,0.9,1.0,0.0\n",
        encoding="utf-8",
    )
    assert main(["inspect", str(out), "--top", "50"]) == 0
    stdout = capsys.readouterr().out
    assert "top 2 of 2 chromosomes:" in stdout
    # fittest first
    assert stdout.index("b  [VP]") < stdout.index("a  [NP]")


# ------------------------------------------------------------------ exit codes


def test_usage_error_exits_1(capsys):
    assert main([]) == 1
    assert main(["explode"]) == 1
    capsys.readouterr()


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "train" in capsys.readouterr().out


def test_console_entry_point_installed():
    proc = subprocess.run(
        ["templex", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "inspect" in proc.stdout


# ------------------------------------------------------------------ formatting


def test_bare_factors():
    assert bare_factors("__NN__ the __VBZ__ cat") == "NN the VBZ cat"
    assert bare_factors("a__b __x") == "a__b __x"
    assert bare_factors("__NNP__") == "NNP"


def test_sparkline_shapes():
    assert sparkline([1.0, 1.0, 1.0]) == "▁▁▁"
    ramp = sparkline([0, 1, 2, 3, 4, 5, 6, 7])
    assert ramp == "▁▂▃▄▅▆▇█"
    assert sparkline([5, 0, 10]) == "▅▁█"
