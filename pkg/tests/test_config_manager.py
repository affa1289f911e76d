import pytest
import yaml

from troplanar.config_manager import ConfigManager, convert_value


@pytest.fixture
def config_manager(tmp_path):
    # Patch ConfigManager to use tmp_path
    with pytest.MonkeyPatch.context() as m:
        m.setattr("troplanar.config_manager.get_config_path", lambda: tmp_path / "troplanar_config.yaml")
        m.setattr("platformdirs.user_config_dir", lambda x: str(tmp_path))
        yield ConfigManager()


def test_set_value_valid(config_manager, capsys):
    assert config_manager.set_value("fm_row_limit", "500")
    assert "Set 'fm_row_limit' to '500'" in capsys.readouterr().out

    loaded = config_manager._load_config()
    assert loaded["fm_row_limit"] == 500


def test_set_value_invalid_key(config_manager, capsys):
    assert not config_manager.set_value("worker", "4")
    out = capsys.readouterr().out
    assert "Error: Unknown key 'worker'" in out
    assert "Did you mean 'workers'?" in out


def test_set_value_invalid_type(config_manager, capsys):
    assert not config_manager.set_value("workers", "many")
    assert "Error: Invalid value for workers" in capsys.readouterr().out


def test_set_value_rejected_by_config(config_manager, capsys):
    assert not config_manager.set_value("lattice_point_limit", "2")
    assert "lattice_point_limit must be at least 3" in capsys.readouterr().out
    assert "lattice_point_limit" not in config_manager._load_config()


def test_set_value_boolean_and_path(config_manager, tmp_path):
    assert config_manager.set_value("regular_only", "no")
    assert config_manager.set_value("corpus_dir", str(tmp_path / "polygons"))
    data = yaml.safe_load(config_manager.config_path.read_text())
    assert data["regular_only"] is False
    assert data["corpus_dir"] == str(tmp_path / "polygons")


def test_show_uses_file_values(config_manager, capsys):
    config_manager.set_value("corpus_max_points", "9")
    capsys.readouterr()
    config_manager.show()
    out = capsys.readouterr().out
    assert "corpus_max_points" in out
    assert "9" in out


def test_list_keys(config_manager, capsys):
    config_manager.list_keys()
    out = capsys.readouterr().out
    assert "Configuration Keys" in out
    assert "Config file:" in out


def test_convert_value():
    assert convert_value("verbose", "true") is True
    assert convert_value("workers", "3") == 3
    assert convert_value("corpus_dir", "none") is None
    with pytest.raises(ValueError):
        convert_value("metrics_enabled", "maybe")
