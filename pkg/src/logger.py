import json
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

try:
    from .config import config
except ImportError:
    from config import config

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
}


class StructuredLogger:
    """JSON-line logger; keyword arguments become fields of the record.

    Console output goes to stderr so stdout stays clean for command results.
    `bind` returns a logger sharing the same handlers with extra fixed fields.
    """

    def __init__(self, name: str, log_file: Optional[str] = None, level: str = "INFO",
                 context: Optional[Dict[str, Any]] = None, _logger: Optional[logging.Logger] = None):
        self.context = dict(context or {})
        if _logger is not None:
            self.logger = _logger
            return
        self.logger = logging.getLogger(name)
        self.logger.setLevel(LEVELS.get(level.upper(), logging.INFO))
        self.logger.handlers.clear()
        self.logger.propagate = False

        formatter = logging.Formatter(FORMAT)
        handlers = [logging.StreamHandler(sys.stderr)]
        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_path))
        for handler in handlers:
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    def bind(self, **context) -> "StructuredLogger":
        return StructuredLogger(self.logger.name, context={**self.context, **context}, _logger=self.logger)

    def _log_structured(self, level: str, message: str, **kwargs):
        numeric = LEVELS[level]
        if not self.logger.isEnabledFor(numeric):
            return
        log_data = {
            'timestamp': datetime.now().isoformat(),
            'level': level,
            'message': message,
            **self.context,
            **kwargs,
        }
        # Fractions, frozensets and enums fall back to str
        self.logger.log(numeric, json.dumps(log_data, default=str))

    def info(self, message: str, **kwargs):
        self._log_structured('INFO', message, **kwargs)

    def error(self, message: str, **kwargs):
        self._log_structured('ERROR', message, **kwargs)

    def warning(self, message: str, **kwargs):
        self._log_structured('WARNING', message, **kwargs)

    def debug(self, message: str, **kwargs):
        self._log_structured('DEBUG', message, **kwargs)


# Global logger instance
logger = StructuredLogger('LawrenceAtlas', config.log_file or None, config.log_level)
