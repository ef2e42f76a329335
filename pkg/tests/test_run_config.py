"""Unit tests for run configuration files."""

import os
import tempfile

import pytest

from src.config import AppConfig
from src.errors import ConfigError
from src.problem import Variant
from src.run_config import RunConfig


class TestRunConfigDefaults:
    """Test cases for defaults and validation."""

    def test_defaults_follow_app_config(self):
        """Test that missing keys take the documented defaults."""
        config = RunConfig()
        assert config.variant == "quadratic"
        assert config.lambda0_tilde == AppConfig.DEFAULT_LAMBDA0_TILDE
        assert config.K == 10 and config.J == 4
        assert config.alpha_group is None
        assert not config.use_self_dictionary
        assert config.variant_enum is Variant.QUADRATIC

    def test_variant_alias(self):
        """Test that 'ce' normalizes to cross_entropy."""
        assert RunConfig(variant="ce").variant_enum is Variant.CROSS_ENTROPY

    @pytest.mark.parametrize(
        "overrides",
        [
            {"variant": "hinge"},
            {"dictionary": "library"},
            {"K": 0},
            {"C": 1},
            {"lambda1": -1.0},
            {"alpha": 1.0},
            {"epsilon_tv": 0.0},
            {"seed": -1},
        ],
    )
    def test_invalid_values(self, overrides):
        """Test that out-of-range values raise ConfigError."""
        with pytest.raises(ConfigError):
            RunConfig(**overrides)

    def test_raw_weights(self):
        """Test that the raw weights mirror the config."""
        raw = RunConfig(lambda1=2.5, max_iters=7).raw_weights()
        assert raw.lambda1 == 2.5
        assert raw.max_iters == 7


class TestRunConfigText:
    """Test cases for the key = value format."""

    def test_parse_with_comments(self):
        """Test comments, blank lines, booleans and 'auto'."""
        text = (
            "# scene\n"
            "M = 20   # rows\n"
            "\n"
            "variant = ce\n"
            "backtracking = false\n"
            "alpha_group = auto\n"
            "snr_db = inf\n"
            "dictionary = self\n"
        )
        config = RunConfig.from_text(text)
        assert config.M == 20
        assert config.variant == "cross_entropy"
        assert config.backtracking is False
        assert config.alpha_group is None
        assert config.snr_db == float("inf")
        assert config.use_self_dictionary

    def test_unknown_key(self):
        """Test that unknown keys are rejected with their line number."""
        with pytest.raises(ConfigError, match="cfg:2: unknown key 'lambda9'"):
            RunConfig.from_text("K = 3\nlambda9 = 1\n", source="cfg")

    def test_duplicate_key(self):
        """Test that a repeated key is rejected."""
        with pytest.raises(ConfigError, match="duplicate"):
            RunConfig.from_text("K = 3\nK = 4\n")

    @pytest.mark.parametrize("line", ["K 3", "K = three", "edge_weights = maybe"])
    def test_malformed_lines(self, line):
        """Test that malformed lines and values are rejected."""
        with pytest.raises(ConfigError):
            RunConfig.from_text(line)

    def test_text_round_trip(self):
        """Test that to_text output parses back to an equal config."""
        config = RunConfig(variant="ce", lambda1=0.3, alpha_group=0.25, data_dir="scene", snr_db=float("inf"))
        assert RunConfig.from_text(config.to_text()) == config

    def test_file_round_trip(self):
        """Test writing and loading a config file."""
        path = os.path.join(tempfile.mkdtemp(), "run.cfg")
        config = RunConfig(seed=11, max_iters=40)
        config.write(path)
        assert RunConfig.from_file(path) == config

    def test_with_overrides(self):
        """Test that overrides produce a validated copy."""
        config = RunConfig().with_overrides(K=3)
        assert config.K == 3
        with pytest.raises(ConfigError):
            RunConfig().with_overrides(K=0)
