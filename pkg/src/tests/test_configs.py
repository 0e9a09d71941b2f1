"""Test configuration loading and precedence."""

import argparse

import pytest

import multireg
from multireg.configs import Caps, add_common_arguments, load_configs
from multireg.model.errors import InputError


def parse(argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser()
    add_common_arguments(parser)
    return parser.parse_args(argv)


def test_defaults(tmp_path):
    config = load_configs(parse(["-c", str(tmp_path / "missing.toml")]))
    assert config.config_file is None, "a missing file is not an error"
    assert config.log_level == "INFO"
    assert config.output_format == "text"
    assert config.caps.characteristic == 0
    assert config.caps.taylor_generators == 16


def test_config_file(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        'log_level = "WARNING"\noutput_format = "json"\n\n[caps]\ntaylor_generators = 8\n',
        encoding="utf-8",
    )
    config = load_configs(parse(["-c", str(path)]))
    assert config.config_file == path
    assert config.log_level == "WARNING"
    assert config.output_format == "json"
    assert config.caps.taylor_generators == 8


def test_invalid_caps_are_skipped(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        "[caps]\ntaylor_generators = -1\nunknown_cap = 3\nfan_rays = 12\n", encoding="utf-8"
    )
    config = load_configs(parse(["-c", str(path)]))
    assert config.caps.taylor_generators == 16, "negative caps fall back to the default"
    assert config.caps.fan_rays == 12


def test_unreadable_file_is_skipped(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[caps\n", encoding="utf-8")
    config = load_configs(parse(["-c", str(path)]))
    assert config.caps == Caps()


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = tmp_path / "config.toml"
    path.write_text("[caps]\nscan_limit = 10\n", encoding="utf-8")
    monkeypatch.setenv("MULTIREG_SCAN_LIMIT", "20")
    config = load_configs(parse(["-c", str(path)]))
    assert config.caps.scan_limit == 20


def test_flags_override_everything(tmp_path, monkeypatch):
    path = tmp_path / "config.toml"
    path.write_text('output_format = "json"\n[caps]\ncharacteristic = 3\n', encoding="utf-8")
    monkeypatch.setenv("MULTIREG_CHARACTERISTIC", "5")
    args = parse(["-c", str(path), "--format", "text", "--characteristic", "7", "--verbose"])
    config = load_configs(args)
    assert config.output_format == "text"
    assert config.caps.characteristic == 7
    assert config.log_level == "DEBUG"


def test_characteristic_must_be_prime(tmp_path):
    with pytest.raises(InputError):
        load_configs(parse(["-c", str(tmp_path / "x.toml"), "--characteristic", "6"]))


def test_global_configs_are_lazy():
    multireg.set_global_configs(None)
    assert multireg.get_caps().enumeration_nodes > 0
