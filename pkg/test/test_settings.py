import pytest

from errors import QSymError
from settings import load_settings


def test_defaults_when_the_file_is_missing(tmp_path):
    settings = load_settings(tmp_path / "absent.yaml")
    assert settings.cli.format == "text"
    assert settings.verify.max_degree == 5


def test_partial_file_keeps_other_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("verify:\n  max_degree: 3\n  unknown_key: 1\n")
    settings = load_settings(path)
    assert settings.verify.max_degree == 3
    assert settings.verify.seed == 0
    assert settings.cli.nvars is None


def test_environment_override(tmp_path, monkeypatch):
    path = tmp_path / "other.yaml"
    path.write_text("cli:\n  format: json\n")
    monkeypatch.setenv("QSYM_CONFIG", str(path))
    assert load_settings().cli.format == "json"


def test_malformed_config_raises(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("cli: [1, 2\n")
    with pytest.raises(QSymError):
        load_settings(path)
    path.write_text("- just\n- a list\n")
    with pytest.raises(QSymError):
        load_settings(path)
