"""Campaign file parsing and validation tests."""

import pytest

from surgesim import ConfigError, ConstantGain, GainTable, load_campaign


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


MINIMAL = """\
[seaway]
h13 = 0.1
t01 = 1.414
gain = 25.0
"""


def test_example_campaign_loads(data_dir):
    cfg = load_campaign(data_dir / "example_campaign.cfg")
    assert cfg.spec.h13 == 0.1
    assert cfg.spec.t01 == 1.414
    assert cfg.spec.n_components == 64
    assert cfg.spec.rng_seed == 1234
    wp = (0.8 * 691.2 / 1.414**4) ** 0.25
    assert cfg.spec.band[0] == pytest.approx(0.5 * wp, rel=1e-12)
    assert cfg.spec.band[1] == pytest.approx(7.0 * wp, rel=1e-12)
    assert isinstance(cfg.force_model, GainTable)
    assert cfg.gain_descriptor == "table:synthetic_gain.csv"
    assert cfg.fn_values == tuple(
        pytest.approx(0.30 + 0.05 * i) for i in range(10))
    assert cfg.system == "colored"
    assert cfg.n_paths == 24
    assert (cfg.transient, cfg.retained) == (100.0, 600.0)
    assert (cfg.dt, cfg.white_dt) == (0.012, 0.005)
    assert cfg.seed == 1234
    assert (cfg.thin, cfg.record_stride, cfg.workers) == (1, 1, 1)
    assert cfg.noise_method == "spectral"
    assert cfg.omega_ref is None and cfg.bandwidth is None
    assert cfg.source.endswith("example_campaign.cfg")


def test_minimal_defaults(tmp_path):
    cfg = load_campaign(write_cfg(tmp_path, MINIMAL))
    assert isinstance(cfg.force_model, ConstantGain)
    assert cfg.gain_descriptor == "constant:25.0"
    assert cfg.fn_values == ()
    assert cfg.system == "colored"
    assert cfg.n_paths == 16
    assert cfg.dt is None
    assert cfg.seed == 0
    assert cfg.noise_method == "spectral"


def test_explicit_band(tmp_path):
    cfg = load_campaign(write_cfg(tmp_path, MINIMAL + "band_lo = 2.0\nband_hi = 9.0\n"))
    assert cfg.spec.band == (2.0, 9.0)


def test_gain_table_resolved_relative_to_config(tmp_path, data_dir):
    table = (data_dir / "synthetic_gain.csv").read_text(encoding="utf-8")
    (tmp_path / "gain.csv").write_text(table, encoding="utf-8")
    cfg = load_campaign(write_cfg(
        tmp_path, MINIMAL.replace("gain = 25.0", "gain_table = gain.csv")))
    assert isinstance(cfg.force_model, GainTable)
    assert cfg.gain_descriptor == "table:gain.csv"


def test_all_errors_reported_together(tmp_path):
    path = write_cfg(tmp_path, """\
[seaway]
t01 = 1.414
t01 = 1.5
depth = 40.0
gain = oops
[mooring]
stiffness = 2.0
[sweep]
system = pink
fn_values =
[noise]
method = magic
""")
    with pytest.raises(ConfigError) as err:
        load_campaign(path)
    msg = str(err.value)
    assert f"{path}:3: duplicate key 't01'" in msg
    assert f"{path}:4: unknown key 'depth'" in msg
    assert f"{path}:5: bad value for 'gain'" in msg
    assert f"{path}:6: unknown section [mooring]" in msg
    assert f"{path}:7: key outside any known section" in msg
    assert f"{path}:9: unknown system 'pink'" in msg
    assert f"{path}:10: bad value for 'fn_values'" in msg
    assert f"{path}:12: unknown noise method 'magic'" in msg
    assert "missing required key 'h13'" in msg


def test_malformed_line(tmp_path):
    path = write_cfg(tmp_path, "[seaway]\nh13 0.1\n")
    with pytest.raises(ConfigError, match="expected 'key = value'"):
        load_campaign(path)


def test_gain_exclusive(tmp_path):
    both = MINIMAL + "gain_table = gain.csv\n"
    with pytest.raises(ConfigError, match="not both"):
        load_campaign(write_cfg(tmp_path, both))
    neither = MINIMAL.replace("gain = 25.0\n", "")
    with pytest.raises(ConfigError, match="one of 'gain' or 'gain_table'"):
        load_campaign(write_cfg(tmp_path, neither))


def test_band_needs_both_edges(tmp_path):
    with pytest.raises(ConfigError, match="band_lo and band_hi"):
        load_campaign(write_cfg(tmp_path, MINIMAL + "band_lo = 2.0\n"))


def test_nonfinite_float_rejected(tmp_path):
    with pytest.raises(ConfigError, match="bad value for 'h13'"):
        load_campaign(write_cfg(
            tmp_path, MINIMAL.replace("h13 = 0.1", "h13 = inf")))


def test_spec_validation_wrapped_with_path(tmp_path):
    path = write_cfg(tmp_path, MINIMAL.replace("h13 = 0.1", "h13 = -0.1"))
    with pytest.raises(ConfigError, match="h13 must be positive"):
        load_campaign(path)


def test_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        load_campaign(tmp_path / "absent.cfg")


def test_comments_and_blank_lines(tmp_path):
    cfg = load_campaign(write_cfg(tmp_path, """\
# campaign header comment

[seaway]
h13 = 0.1   # metres
t01 = 1.414
gain = 25.0
"""))
    assert cfg.spec.h13 == 0.1
