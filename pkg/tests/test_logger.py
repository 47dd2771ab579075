import json
import logging

from helpers.logger import LOG_FIELDS, JsonFormatter, create_logger


def test_modules_share_one_file_handler():
    first = create_logger("core.sensing_rx")
    second = create_logger("core.comm_rx")
    assert len(first.handlers) == 1
    assert first.handlers == second.handlers
    create_logger("core.sensing_rx")
    assert len(first.handlers) == 1


def test_records_are_single_json_lines():
    record = logging.LogRecord("core.rmse_sweep", logging.INFO, __file__, 1, "point %d done", (3,), None)
    line = JsonFormatter(LOG_FIELDS).format(record)
    assert "\n" not in line
    payload = json.loads(line)
    assert set(payload) == set(LOG_FIELDS)
    assert payload["message"] == "point 3 done"
    assert payload["level"] == "INFO"
    assert payload["timestamp"].endswith("Z")
