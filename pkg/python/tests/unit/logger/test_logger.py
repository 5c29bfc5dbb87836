import numpy as np
import pytest

from garmentex.logger import Logger


def test_logger_context():
    logger = Logger()
    logger.info("Test message", context={"a": 1})  # Should not error


def test_logger_hook_sees_filtered_levels():
    logger = Logger("ERROR")
    seen = []
    logger.on_log = lambda level, msg, ctx: seen.append((level, msg))
    logger.optim("stage 1", {"step": 0})
    logger.artifact("wrote", {"path": "x.png"})
    assert seen == [("OPTIM", "stage 1"), ("ARTIFACT", "wrote")]


def test_summarize_arrays():
    logger = Logger()
    summary = logger.summarize({"grid": np.arange(6.0).reshape(2, 3), "n": np.int64(3)})
    assert summary == {"grid": {"shape": [2, 3], "dtype": "float64", "min": 0.0, "max": 5.0},
                       "n": 3}


def test_summarize_truncates_long_strings():
    logger = Logger()
    assert logger.summarize("x" * 400, max_length=10) == "x" * 10 + "..."


def test_invalid_level():
    with pytest.raises(ValueError):
        Logger("LOUD")
    logger = Logger()
    with pytest.raises(ValueError):
        logger.set_level("LOUD")
