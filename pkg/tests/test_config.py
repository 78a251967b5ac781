import json

import pytest

from achromatic_planes.config import BUDGET_ENV_VAR, DEFAULT_CONFIG, load_config


class TestLoadConfig:
    def setup_method(self):
        self.defaults = json.loads(json.dumps(DEFAULT_CONFIG))

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        assert load_config() == self.defaults

    def test_defaults_are_not_shared(self, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        config = load_config()
        config["solver"]["progress_interval"] = 1
        assert DEFAULT_CONFIG["solver"]["progress_interval"] == 200_000

    def test_file_merges_over_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"solver": {"progress_interval": 50}, "extra": {"x": 1}}))
        config = load_config(path)
        assert config["solver"] == {"budget_seconds": None, "progress_interval": 50}
        assert config["verification"]["max_witnesses"] == 10
        assert config["extra"] == {"x": 1}

    def test_missing_file_keeps_defaults(self, tmp_path, monkeypatch, caplog):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        config = load_config(tmp_path / "absent.json")
        assert config == self.defaults
        assert "Failed to load configuration" in caplog.text

    def test_invalid_json_keeps_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        assert load_config(path) == self.defaults

    def test_environment_budget(self, tmp_path, monkeypatch):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"solver": {"budget_seconds": 5}}))
        monkeypatch.setenv(BUDGET_ENV_VAR, "2.5")
        assert load_config(path)["solver"]["budget_seconds"] == 2.5

    def test_bad_environment_budget(self, monkeypatch, caplog):
        monkeypatch.setenv(BUDGET_ENV_VAR, "soon")
        assert load_config()["solver"]["budget_seconds"] is None
        assert "not a number" in caplog.text

    def test_non_object_section_keeps_defaults(self, tmp_path, monkeypatch, caplog):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"solver": 5, "output": {"indent": 4}}))
        config = load_config(path)
        assert config["solver"] == self.defaults["solver"]
        assert config["output"]["indent"] == 4
        assert "config section solver" in caplog.text

    @pytest.mark.parametrize(
        "section, key, value",
        [
            ("solver", "progress_interval", "often"),
            ("solver", "progress_interval", 2.5),
            ("solver", "budget_seconds", "soon"),
            ("output", "indent", None),
            ("verification", "max_witnesses", True),
        ],
    )
    def test_wrong_scalar_type_keeps_default(
        self, tmp_path, monkeypatch, caplog, section, key, value
    ):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({section: {key: value}}))
        assert load_config(path) == self.defaults
        assert f"{section}.{key}" in caplog.text

    def test_budget_accepts_integer_and_null(self, tmp_path, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"solver": {"budget_seconds": 30}}))
        assert load_config(path)["solver"]["budget_seconds"] == 30
        path.write_text(json.dumps({"solver": {"budget_seconds": None}}))
        assert load_config(path)["solver"]["budget_seconds"] is None
