import logging
import datetime
import os
from typing import Optional


class ColoredFormatter(logging.Formatter):
    """Консольный форматтер: цвет уровня и подсветка тега темы"""
    LEVEL_COLORS = {
        logging.DEBUG: '\033[36m',
        logging.INFO: '\033[32m',
        logging.WARNING: '\033[33m',
        logging.ERROR: '\033[31m',
        logging.CRITICAL: '\033[35m',
    }

    TAG_COLORS = {
        '[GRAPH]': '\033[94m',
        '[SOLVER]': '\033[96m',
        '[ENUM]': '\033[36m',
        '[PROOF]': '\033[93m',
        '[INIT]': '\033[92m',
        '[TILING]': '\033[1;34m',
        '[VERIFY]': '\033[1;36m',
        '[CONFIG]': '\033[1;33m',
        '[PERF]': '\033[95m',
        '[ERROR]': '\033[1;31m',
        '[SUCCESS]': '\033[1;32m',
        '[FAIL]': '\033[1;31m',
    }

    RESET = '\033[0m'

    def format(self, record):
        level_color = self.LEVEL_COLORS.get(record.levelno, '')
        original = record.levelname
        if level_color:
            record.levelname = f"{level_color}{original}{self.RESET}"
        try:
            message = super().format(record)
        finally:
            record.levelname = original

        # подсвечивается только первый тег
        for tag, color in self.TAG_COLORS.items():
            if tag in message:
                return message.replace(tag, f"{color}{tag}{self.RESET}", 1)
        return message


class VerificationFilter(logging.Filter):
    """Фильтр для отбора только событий проверки"""

    IMPORTANT_KEYWORDS = [
        # Ошибки и проблемы
        'error', 'exception', 'failed', 'fail', 'invalid', 'ambiguous',
        # Объекты и операции
        'graph', 'solver', 'coloring', 'proof', 'step', 'contradiction',
        'tiling', 'certificate', 'verify', 'verified', 'constant',
        # Состояние системы
        'init', 'start', 'stop', 'config', 'perf', 'saved', 'loaded',
    ]

    def filter(self, record):
        """Пропускает WARNING и выше, остальное по ключевым словам"""
        if record.levelno >= logging.WARNING:
            return True

        message_lower = record.getMessage().lower()
        return any(keyword in message_lower for keyword in self.IMPORTANT_KEYWORDS)


# Единый файл сессии для всех модулей
_session_log_file: Optional[str] = None
_session_timestamp: Optional[str] = None

LOG_DIR_ENV = "CHROMA7_LOG_DIR"
_console_level = logging.WARNING


def get_log_dir() -> Optional[str]:
    """Каталог логов; пустое значение переменной окружения отключает файл"""
    value = os.environ.get(LOG_DIR_ENV, "logs")
    return value or None


def get_session_log_file() -> Optional[str]:
    """Получает имя файла для текущей сессии проверки"""
    global _session_log_file, _session_timestamp

    log_dir = get_log_dir()
    if log_dir is None:
        return None

    if _session_log_file is None:
        _session_timestamp = datetime.datetime.now().strftime('%Y%m%d_%H%M%S')
        os.makedirs(log_dir, exist_ok=True)
        _session_log_file = os.path.join(log_dir, f"verification_session_{_session_timestamp}.log")

        with open(_session_log_file, 'w', encoding='utf-8') as f:
            f.write("=" * 80 + "\n")
            f.write(f"VERIFICATION SESSION STARTED: {datetime.datetime.now()}\n")
            f.write("=" * 80 + "\n")

    return _session_log_file


def setup_unified_logger(name: str, console_level: Optional[int] = None, file_level: int = logging.INFO):
    """
    Настройка единого логгера для всех модулей

    Args:
        name: Имя логгера (модуля)
        console_level: Уровень логирования для консоли (по умолчанию - текущий общий уровень)
        file_level: Уровень логирования для файла

    Returns:
        Настроенный логгер
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    logger.handlers = []

    session_log_file = get_session_log_file()
    if session_log_file is not None:
        file_handler = logging.FileHandler(session_log_file, encoding='utf-8')
        file_handler.setLevel(file_level)
        file_handler.addFilter(VerificationFilter())
        file_handler.setFormatter(logging.Formatter('%(asctime)s [%(name)s] %(levelname)s: %(message)s'))
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_level if console_level is not None else _console_level)
    console_handler.addFilter(VerificationFilter())
    console_handler.setFormatter(ColoredFormatter('%(asctime)s [%(name)s] %(levelname)s: %(message)s'))
    logger.addHandler(console_handler)

    logger.debug(f"[INIT] Module {name} initialized")

    return logger


def set_console_level(level: int) -> None:
    """Меняет уровень консольного вывода у созданных и будущих логгеров"""
    global _console_level
    _console_level = level
    for logger in logging.Logger.manager.loggerDict.values():
        if not isinstance(logger, logging.Logger):
            continue
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)


def log_session_end():
    """Записывает окончание сессии в лог"""
    if _session_log_file:
        with open(_session_log_file, 'a', encoding='utf-8') as f:
            f.write("\n" + "=" * 80 + "\n")
            f.write(f"VERIFICATION SESSION ENDED: {datetime.datetime.now()}\n")
            f.write("=" * 80 + "\n")
