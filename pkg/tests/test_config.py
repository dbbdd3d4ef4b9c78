import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgkink.config import AnalysisConfig
from sgkink.errors import ConfigError


def test_defaults():
    cfg = AnalysisConfig()
    assert cfg.lambda_max == 10.0 and cfg.lambda_steps == 101
    assert cfg.complex_steps == 10 and cfg.controls.tol == 1e-10 and cfg.controls.epsilon == 1e-3


def test_from_text_with_comments():
    text = "# comment\nlambda_max = 5  # inline\nlambda_steps = 51\ncomplex_steps=4\n"
    cfg = AnalysisConfig.from_text(text)
    assert cfg.lambda_max == 5.0 and cfg.lambda_steps == 51 and cfg.complex_steps == 4
    assert cfg.tol == AnalysisConfig().tol


@pytest.mark.parametrize(
    "text",
    [
        "bogus = 1",
        "lambda_steps = 2.5",
        "lambda_steps = 1",
        "tol = -1",
        "epsilon = 1",
        "lambda_max = nan",
        "lambda_max = inf",
        "no equals sign here",
    ],
)
def test_rejected(text):
    with pytest.raises(ConfigError):
        AnalysisConfig.from_text(text)


def test_from_file(tmp_path):
    path = tmp_path / "a.cfg"
    path.write_text("complex_re_max = 2\n")
    assert AnalysisConfig.from_file(path).complex_re_max == 2.0
    with pytest.raises(ConfigError):
        AnalysisConfig.from_file(tmp_path / "missing.cfg")


def test_overrides_ignore_none():
    cfg = AnalysisConfig().with_overrides(lambda_max=None, tol=1e-8)
    assert cfg.lambda_max == 10.0 and cfg.tol == 1e-8


@given(st.floats(1e-3, 1e3), st.integers(2, 500), st.floats(1e-6, 0.5))
def test_roundtrip(lmax, steps, eps):
    cfg = AnalysisConfig(lambda_max=lmax, lambda_steps=steps, epsilon=eps)
    text = "\n".join(f"{k} = {v!r}" for k, v in cfg.to_dict().items())
    assert AnalysisConfig.from_text(text) == cfg
