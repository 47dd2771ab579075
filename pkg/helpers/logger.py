import logging
import json
import os
from logging.handlers import TimedRotatingFileHandler
from typing import Optional

from helpers.constants import LOGGING_LEVEL, LOG_DIR

# JSON key: LogRecord attribute
LOG_FIELDS = {"level": "levelname",
              "message": "message",
              "loggerName": "name",
              "threadName": "threadName",
              "threadID": "thread",
              "timestamp": "asctime"}

_shared_handler: Optional[logging.Handler] = None


class JsonFormatter(logging.Formatter):
    """
    One JSON object per line, keyed by ``fmt_dict`` (JSON key to LogRecord
    attribute). Timestamps are UTC-style ISO strings with milliseconds.
    """
    def __init__(self, fmt_dict: dict = None,
                 time_format: str = "%Y-%m-%dT%H:%M:%S",
                 msec_format: str = "%s.%03dZ"):
        super().__init__()
        self.fmt_dict = fmt_dict if fmt_dict is not None else {"message": "message"}
        self.default_time_format = time_format
        self.default_msec_format = msec_format

    def usesTime(self) -> bool:
        return "asctime" in self.fmt_dict.values()

    def formatMessage(self, record) -> dict:
        return {key: getattr(record, attribute) for key, attribute in self.fmt_dict.items()}

    def format(self, record) -> str:
        record.message = record.getMessage()
        if self.usesTime():
            record.asctime = self.formatTime(record, self.datefmt)

        message_dict = self.formatMessage(record)
        if record.exc_info and not record.exc_text:
            record.exc_text = self.formatException(record.exc_info)
        if record.exc_text:
            message_dict["exc_info"] = record.exc_text
        if record.stack_info:
            message_dict["stack_info"] = self.formatStack(record.stack_info)

        # single line, so sweep logs from worker threads stay greppable
        return json.dumps(message_dict, default=str, ensure_ascii=False)


def _file_handler() -> logging.Handler:
    # one rotating file for every module; separate handlers on one file break rotation
    global _shared_handler
    if _shared_handler is None:
        os.makedirs(LOG_DIR, exist_ok=True)
        _shared_handler = TimedRotatingFileHandler(
            filename=os.path.join(LOG_DIR, 'runtime.log'), when='D', interval=1,
            backupCount=7, encoding='utf-8', delay=True
        )
        _shared_handler.setFormatter(JsonFormatter(LOG_FIELDS))
    return _shared_handler


def create_logger(logger_name, level=LOGGING_LEVEL) -> logging.Logger:
    logger = logging.getLogger(logger_name)
    handler = _file_handler()
    if handler not in logger.handlers:
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
