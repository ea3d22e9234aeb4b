import logging

from logger_config import ColoredFormatter, VerificationFilter, get_log_dir


def _record(message, level=logging.INFO):
    return logging.LogRecord("graphs", level, __file__, 1, message, None, None)


def test_tag_is_highlighted_once():
    text = ColoredFormatter('%(levelname)s: %(message)s').format(_record("[GRAPH] built [GRAPH]"))
    assert text.count(ColoredFormatter.TAG_COLORS['[GRAPH]']) == 1
    assert "INFO" in text


def test_record_level_name_is_restored():
    record = _record("[SOLVER] search")
    ColoredFormatter('%(levelname)s %(message)s').format(record)
    assert record.levelname == "INFO"


def test_filter_keeps_warnings_and_topics():
    noise = VerificationFilter()
    assert noise.filter(_record("disk almost full", logging.WARNING))
    assert noise.filter(_record("proof step 4 forced"))
    assert not noise.filter(_record("hello"))


def test_log_file_disabled_by_environment(monkeypatch):
    monkeypatch.setenv("CHROMA7_LOG_DIR", "")
    assert get_log_dir() is None
    monkeypatch.setenv("CHROMA7_LOG_DIR", "elsewhere")
    assert get_log_dir() == "elsewhere"
