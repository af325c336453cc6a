"""Config files, metrics, convergence, grid search, plotting, and the CLI."""

import xml.etree.ElementTree as ET

import pytest

from gridcurio.cli import main
from gridcurio.gridworld import ConfigurationError
from gridcurio.harness import (
    MetricsParseError,
    MetricsWriter,
    beta_grid_search,
    best_beta,
    emit_plot,
    parse_config_text,
    read_metrics,
    run_experiment,
    steps_to_convergence,
)
from gridcurio.harness.metrics import COLUMNS

BASE_CONFIG = """
# minimal training config
env.id = MultiRoom-N2-S4
env.seed = 3
intrinsic.method = ride
intrinsic.beta = 0.05
ppo.n_envs = 2
ppo.rollout_len = 8
ppo.minibatch_count = 2
run.total_steps = 64
run.metrics_every = 16
run.seeds = 0,1
"""


def test_parse_config_text_defaults_and_values():
    config = parse_config_text(BASE_CONFIG)
    assert config.env.family == "MultiRoom"
    assert config.env.seed == 3
    assert config.intrinsic.method == "ride"
    assert config.intrinsic.beta == 0.05
    assert config.ppo.n_envs == 2
    assert config.total_steps == 64
    assert config.seeds == [0, 1]
    assert config.ppo.gamma == 0.99          # untouched default
    assert config.convergence_threshold == 0.95


def test_parse_config_overrides():
    config = parse_config_text(BASE_CONFIG,
                               overrides={"intrinsic.beta": "0.1",
                                          "run.total_steps": "128"})
    assert config.intrinsic.beta == 0.1
    assert config.total_steps == 128


@pytest.mark.parametrize("line,fragment", [
    ("unknown.id = x", "unknown section"),
    ("env.rooms = 3", "unknown key"),
    ("seed = 1", "missing section prefix"),
    ("ppo.n_envs = two", "bad value"),
    ("env.id", "expected key = value"),
])
def test_parse_config_errors_name_line(line, fragment):
    text = BASE_CONFIG + "\n" + line
    lineno = len(text.splitlines())
    with pytest.raises(ConfigurationError) as err:
        parse_config_text(text)
    assert fragment in str(err.value)
    assert f"line {lineno}" in str(err.value)


def test_config_requires_env_id():
    with pytest.raises(ConfigurationError, match="env.id"):
        parse_config_text("ppo.n_envs = 2\nppo.rollout_len = 8\n"
                          "ppo.minibatch_count = 2")


def test_total_steps_must_match_horizon():
    with pytest.raises(ConfigurationError, match="total_steps"):
        parse_config_text(BASE_CONFIG.replace("run.total_steps = 64",
                                              "run.total_steps = 65"))


def test_embedding_novelty_requires_provider():
    text = BASE_CONFIG.replace("intrinsic.method = ride",
                               "intrinsic.method = embedding_novelty")
    with pytest.raises(ConfigurationError, match="provider"):
        parse_config_text(text)
    config = parse_config_text(text + "\nintrinsic.provider = frozen_random")
    assert config.provider.kind == "frozen_random"
    assert config.provider.dim == 128


def test_endpoint_env_var_override(monkeypatch):
    text = (BASE_CONFIG.replace("intrinsic.method = ride",
                                "intrinsic.method = embedding_novelty")
            + "\nintrinsic.provider = remote_service"
            + "\nintrinsic.endpoint = http://file-value:1")
    monkeypatch.setenv("GRIDCURIO_EMBED_URL", "http://env-value:2")
    config = parse_config_text(text)
    assert config.provider.endpoint == "http://env-value:2"
    monkeypatch.delenv("GRIDCURIO_EMBED_URL")
    config = parse_config_text(text)
    assert config.provider.endpoint == "http://file-value:1"


def _write_rows(path, rows):
    writer = MetricsWriter(path)
    for step, mean_return in rows:
        fields = {c: 0.0 for c in COLUMNS}
        fields["global_step"] = step
        fields["mean_return"] = mean_return
        writer.write(**fields)
    writer.close()
    return str(path)


def test_metrics_roundtrip(tmp_path):
    path = _write_rows(tmp_path / "m.csv", [(100, 0.1), (200, 0.5)])
    rows = read_metrics(path)
    assert [r["global_step"] for r in rows] == [100.0, 200.0]
    assert rows[1]["mean_return"] == 0.5


def test_metrics_writer_rejects_nonincreasing(tmp_path):
    writer = MetricsWriter(tmp_path / "m.csv")
    fields = {c: 0.0 for c in COLUMNS}
    fields["global_step"] = 100
    writer.write(**fields)
    with pytest.raises(ValueError):
        writer.write(**fields)
    writer.close()


def test_metrics_parse_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(",".join(COLUMNS) + "\n1,2,3\n")
    with pytest.raises(MetricsParseError) as err:
        read_metrics(path)
    assert err.value.lineno == 2
    path.write_text("wrong,header\n")
    with pytest.raises(MetricsParseError):
        read_metrics(path)


def test_steps_to_convergence_sustained(tmp_path):
    # crosses at 300, dips at 400, recovers at 500: report 500
    path = _write_rows(tmp_path / "m.csv",
                       [(100, 0.1), (200, 0.5), (300, 0.96), (400, 0.2),
                        (500, 0.97), (600, 0.99)])
    assert steps_to_convergence(path, 1.0, threshold=0.95) == 500


def test_steps_to_convergence_none_when_never_reached(tmp_path):
    path = _write_rows(tmp_path / "m.csv", [(100, 0.1), (200, 0.2)])
    assert steps_to_convergence(path, 1.0, threshold=0.95) is None


def test_steps_to_convergence_threshold_scales_with_optimal(tmp_path):
    path = _write_rows(tmp_path / "m.csv", [(100, 0.5), (200, 0.6)])
    assert steps_to_convergence(path, 0.5, threshold=0.95) == 100
    assert steps_to_convergence(path, 1.0, threshold=0.95) is None


def test_steps_to_convergence_window_smoothing(tmp_path):
    # a single noisy dip is forgiven under a 3-row smoothing window
    path = _write_rows(tmp_path / "m.csv",
                       [(100, 0.96), (200, 0.97), (300, 0.93), (400, 0.98),
                        (500, 0.97)])
    assert steps_to_convergence(path, 1.0, threshold=0.95) == 400
    assert steps_to_convergence(path, 1.0, threshold=0.95, window=3) == 100


def test_emit_plot_valid_svg(tmp_path):
    a = _write_rows(tmp_path / "a.csv", [(100, 0.1), (200, 0.4), (300, 0.8)])
    b = _write_rows(tmp_path / "b.csv", [(100, 0.2), (200, 0.5), (300, 0.7)])
    c = _write_rows(tmp_path / "c.csv", [(100, 0.0), (200, 0.1), (300, 0.2)])
    out = tmp_path / "curves.svg"
    emit_plot([a, b, c], ["ride", "ride", "none"], 0.775, str(out))
    tree = ET.parse(out)  # well-formed XML
    assert tree.getroot().tag.endswith("svg")


def test_emit_plot_argument_validation(tmp_path):
    with pytest.raises(ValueError):
        emit_plot([], [], 1.0, str(tmp_path / "x.svg"))
    a = _write_rows(tmp_path / "a.csv", [(100, 0.1)])
    with pytest.raises(ValueError):
        emit_plot([a], [], 1.0, str(tmp_path / "x.svg"))


def _tiny_config(tmp_path, **over):
    text = BASE_CONFIG + f"\nrun.output_dir = {tmp_path / 'runs'}\n"
    for key, value in over.items():
        text += f"{key} = {value}\n"
    return parse_config_text(text)


def test_run_experiment_writes_metrics_and_checkpoint(tmp_path):
    config = _tiny_config(tmp_path)
    path = run_experiment(config, seed=0)
    rows = read_metrics(path)
    assert rows, "no metrics rows written"
    assert rows[-1]["global_step"] == config.total_steps
    assert (tmp_path / "runs" / "checkpoint_seed0.gckp").exists()


def test_run_experiment_deterministic(tmp_path):
    def strip_wall_clock(path):
        return [{k: v for k, v in row.items() if k != "wall_clock_seconds"}
                for row in read_metrics(path)]

    a = run_experiment(_tiny_config(tmp_path / "a"), seed=1)
    b = run_experiment(_tiny_config(tmp_path / "b"), seed=1)
    assert strip_wall_clock(a) == strip_wall_clock(b)
    c = run_experiment(_tiny_config(tmp_path / "c"), seed=2)
    assert strip_wall_clock(a) != strip_wall_clock(c)


def test_beta_grid_search_rows_and_csv(tmp_path, monkeypatch):
    import gridcurio.harness.gridsearch as gs

    calls = []

    def fake_run(config, seed):
        calls.append((config.intrinsic.beta, seed))
        path = (tmp_path / f"fake_{config.intrinsic.beta:g}_{seed}.csv")
        if config.intrinsic.beta == 0.5:
            raise RuntimeError("diverged")
        step = int(1e5 * config.intrinsic.beta * (1 + seed))
        return _write_rows(path, [(step, 0.99), (step + 1, 0.99)])

    monkeypatch.setattr(gs, "run_experiment", fake_run)
    config = _tiny_config(tmp_path)
    rows = gs.beta_grid_search(config, [0.05, 0.1, 0.5])
    assert [beta for beta, _ in rows] == [0.05, 0.1, 0.5]
    assert rows[2][1] is None                 # failed arm reported honestly
    assert rows[0][1] < rows[1][1]
    assert best_beta(rows) == 0.05
    assert len(calls) == 3 * len(config.seeds)
    csv_text = (tmp_path / "runs" / "gridsearch.csv").read_text()
    assert "beta,median_steps_to_convergence" in csv_text
    assert "0.5,-" in csv_text


def test_best_beta_prefers_converged():
    assert best_beta([(0.1, None), (0.2, 5000)]) == 0.2


def test_cli_render_enc_and_rgb(tmp_path):
    enc_path = tmp_path / "obs.txt"
    assert main(["render", "--env", "MultiRoom-N2-S4", "--seed", "3",
                 "--view", "partial", "--format", "enc",
                 "--out", str(enc_path)]) == 0
    lines = enc_path.read_text().strip().splitlines()
    assert len(lines) == 7
    assert all(len(line.split()) == 7 for line in lines)
    first = lines[0].split()[0]
    assert len(first.split(",")) == 3

    png_path = tmp_path / "obs.png"
    assert main(["render", "--env", "KeyCorridorS3R3", "--seed", "1",
                 "--view", "full", "--format", "rgb",
                 "--out", str(png_path)]) == 0
    from PIL import Image
    with Image.open(png_path) as img:
        assert img.size[0] > 7 and img.size[1] > 7


def test_cli_convergence_and_plot(tmp_path, capsys):
    metrics = _write_rows(tmp_path / "m.csv", [(100, 0.8), (200, 0.9)])
    assert main(["convergence", "--metrics", metrics,
                 "--optimal", "0.9"]) == 0
    assert capsys.readouterr().out.strip() == "200"
    out = tmp_path / "plot.svg"
    assert main(["plot", metrics, "--labels", "run",
                 "--optimal", "0.9", "--out", str(out)]) == 0
    capsys.readouterr()
    ET.parse(out)


def test_cli_train_round_trip(tmp_path, capsys):
    conf = tmp_path / "train.conf"
    conf.write_text(BASE_CONFIG + f"\nrun.output_dir = {tmp_path / 'runs'}\n"
                    "intrinsic.method = none\n")
    assert main(["train", "--config", str(conf), "--seed", "0",
                 "--override", "run.total_steps=32"]) == 0
    path = capsys.readouterr().out.strip()
    rows = read_metrics(path)
    assert rows[-1]["global_step"] == 32
