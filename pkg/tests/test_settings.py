import logging

from services.settings import Settings, configure_logging, get_settings


def test_defaults():
    settings = get_settings()
    assert settings == Settings()
    assert settings.coarse_tol == 1e-2
    assert settings.fine_tol == 1e-6


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("REALFN_SEED", "99")
    monkeypatch.setenv("REALFN_FINE_TOL", "1e-8")
    monkeypatch.setenv("REALFN_LOG_LEVEL", "info")
    settings = get_settings()
    assert settings.seed == 99
    assert settings.fine_tol == 1e-8
    assert settings.log_level == "INFO"


def test_bad_values_fall_back_to_defaults(monkeypatch, caplog):
    monkeypatch.setenv("REALFN_SEED", "abc")
    monkeypatch.setenv("REALFN_COARSE_TOL", "")
    with caplog.at_level(logging.WARNING, logger="services.settings"):
        settings = get_settings()
    assert settings.seed == Settings.seed
    assert settings.coarse_tol == Settings.coarse_tol
    assert "REALFN_SEED" in caplog.text


def test_configure_logging_accepts_unknown_levels():
    configure_logging("NOT_A_LEVEL")
