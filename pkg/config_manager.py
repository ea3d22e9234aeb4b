import copy
import json
import os
from typing import Dict, Any, Optional
from logger_config import setup_unified_logger
from config_validator import ConfigValidator, ConfigValidationError
from exceptions import ConfigurationError
from geometry import ToleranceConfig

DEFAULT_CONFIG: Dict[str, Any] = {
    'tolerance': {
        'tol': 1e-9,
        'margin': 1e-6,
    },
    'solver': {
        'kmax': 12,
        'enumeration_guard_log2': 40,
    },
    'tiling': {
        'search_radius': 4,
        'side_margin': 0.5,
    },
    'output': {
        'directory': 'out',
        'svg_scale': 80.0,
    },
}

# Переменные окружения -> (секция, поле)
ENV_OVERRIDES = {
    'CHROMA7_TOL': ('tolerance', 'tol'),
    'CHROMA7_MARGIN': ('tolerance', 'margin'),
}


class ConfigManager:
    """Менеджер конфигурации приложения"""

    def __init__(self, config_path: Optional[str] = 'config.json', environ: Optional[Dict[str, str]] = None):
        self.logger = setup_unified_logger("config_manager")
        self.config_path = config_path
        self.validator = ConfigValidator()
        self.environ = os.environ if environ is None else environ
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Загрузка конфигурации: значения по умолчанию, затем файл, затем окружение"""
        config = copy.deepcopy(DEFAULT_CONFIG)

        if self.config_path and os.path.exists(self.config_path):
            try:
                with open(self.config_path, encoding='utf-8') as f:
                    loaded = json.load(f)
                self.validator.validate_and_raise(loaded)
                for section, values in loaded.items():
                    if isinstance(values, dict) and section in config:
                        config[section].update(values)
                    else:
                        config[section] = values
                self.logger.info(f"[CONFIG] Configuration loaded from {self.config_path}")
            except ConfigValidationError:
                raise
            except json.JSONDecodeError as e:
                self.logger.error(f"[CONFIG] Invalid JSON in configuration file: {e}")
                raise ConfigurationError(f"invalid JSON in {self.config_path}: {e}") from e
            except OSError as e:
                self.logger.error(f"[CONFIG] Failed to load configuration from {self.config_path}: {e}")
                raise ConfigurationError(str(e)) from e
        else:
            self.logger.debug("[CONFIG] No configuration file, using defaults")

        for env_name, (section, field) in ENV_OVERRIDES.items():
            raw = self.environ.get(env_name)
            if raw is None or raw == '':
                continue
            try:
                config[section][field] = float(raw)
            except ValueError as e:
                raise ConfigurationError(f"{env_name} must be a number, got {raw!r}") from e
            self.logger.info(f"[CONFIG] {section}.{field} overridden by {env_name}={raw}")

        self.validator.validate_and_raise(config)
        return config

    def save_config(self, path: Optional[str] = None) -> bool:
        """Сохранение конфигурации в файл"""
        target = path or self.config_path
        try:
            with open(target, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2)
            self.logger.info(f"[CONFIG] Configuration saved to {target}")
            return True
        except OSError as e:
            self.logger.error(f"[CONFIG] Failed to save configuration: {e}")
            return False

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Получение значения из конфигурации"""
        return self.config.get(section, {}).get(key, default)

    def set(self, section: str, key: str, value: Any) -> None:
        """Установка значения с повторной валидацией"""
        self.update(section, {key: value})

    def update(self, section: str, values: Dict[str, Any]) -> None:
        """Одновременная установка нескольких полей секции (перекрестные правила проверяются после)"""
        candidate = copy.deepcopy(self.config)
        candidate.setdefault(section, {}).update(values)
        self.validator.validate_and_raise(candidate)
        self.config = candidate
        self.logger.info(f"[CONFIG] {section} updated: {values}")

    @property
    def tol(self) -> float:
        """Допуск сравнения расстояний"""
        return float(self.config['tolerance']['tol'])

    @property
    def margin(self) -> float:
        """Минимальный зазор до границы интервала"""
        return float(self.config['tolerance']['margin'])

    @property
    def tolerance_config(self) -> ToleranceConfig:
        """Политика допусков для геометрии"""
        return ToleranceConfig(tol=self.tol, margin=self.margin)

    @property
    def kmax(self) -> int:
        """Верхняя граница числа цветов для поиска хроматического числа"""
        return int(self.config['solver']['kmax'])

    @property
    def enumeration_guard_log2(self) -> int:
        """Ограничение на размер пространства перебора (log2)"""
        return int(self.config['solver']['enumeration_guard_log2'])

    @property
    def search_radius(self) -> int:
        """Радиус поиска одноцветных ячеек (в ячейках)"""
        return int(self.config['tiling']['search_radius'])

    @property
    def side_margin(self) -> float:
        """Положение автоматически выбранной стороны внутри допустимого окна"""
        return float(self.config['tiling']['side_margin'])

    @property
    def output_directory(self) -> str:
        """Каталог для выходных файлов"""
        return self.config['output']['directory']

    @property
    def svg_scale(self) -> float:
        """Масштаб SVG (пикселей на единицу длины)"""
        return float(self.config['output']['svg_scale'])
