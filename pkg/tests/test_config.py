import os

import pytest

from src.config import apply_overrides, catalog_path, config, validate_config


@pytest.fixture
def restore_config():
    saved = dict(vars(config))
    yield
    for name, value in saved.items():
        object.__setattr__(config, name, value)


def test_defaults_are_valid(restore_config):
    validate_config()
    assert os.path.isabs(config.catalog_dir)
    assert os.path.exists(catalog_path("theta.json"))


def test_bad_cap_is_rejected(restore_config):
    object.__setattr__(config, "phi_cap", 0)
    with pytest.raises(RuntimeError, match="PHI_CAP"):
        validate_config()


def test_bad_log_level_is_rejected(restore_config):
    object.__setattr__(config, "log_level", "LOUD")
    with pytest.raises(RuntimeError, match="LOG_LEVEL"):
        validate_config()


def test_overrides(restore_config):
    apply_overrides(threads=3, verify=False)
    assert config.threads == 3 and config.verify is False
    apply_overrides()
    assert config.threads == 3
    with pytest.raises(RuntimeError):
        apply_overrides(threads=0)
