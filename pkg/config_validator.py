"""
Модуль валидации конфигурации
Проверяет структуру и корректность значений в config.json
"""

from typing import Dict, Any, List, Tuple
from logger_config import setup_unified_logger
from exceptions import ConfigurationError


class ConfigValidationError(ConfigurationError):
    """Исключение для ошибок валидации конфигурации"""
    pass


class ConfigValidator:
    """Валидатор конфигурации"""

    # секция -> поле -> (тип, минимум, максимум)
    NUMERIC_FIELDS = {
        'tolerance': {
            'tol': (float, 1e-15, 1e-3),
            'margin': (float, 1e-15, 1e-2),
        },
        'solver': {
            'kmax': (int, 1, 32),
            'enumeration_guard_log2': (int, 1, 64),
        },
        'tiling': {
            'search_radius': (int, 1, 50),
            'side_margin': (float, 0.01, 0.99),
        },
        'output': {
            'svg_scale': (float, 1.0, 1000.0),
        },
    }

    def __init__(self):
        self.logger = setup_unified_logger("config_validator")

    def validate_config(self, config: Dict[str, Any]) -> Tuple[bool, List[str]]:
        """
        Валидация конфигурации

        Returns:
            Tuple[bool, List[str]]: (is_valid, error_messages)
        """
        errors = []

        if not isinstance(config, dict):
            return False, ["configuration root must be an object"]

        for section, fields in self.NUMERIC_FIELDS.items():
            if section not in config:
                continue
            if not isinstance(config[section], dict):
                errors.append(f"{section} must be an object")
                continue
            for field, (expected_type, min_val, max_val) in fields.items():
                if field not in config[section]:
                    continue
                raw = config[section][field]
                if isinstance(raw, bool):
                    errors.append(f"{section}.{field} must be a valid {expected_type.__name__}")
                    continue
                try:
                    value = expected_type(raw)
                    if expected_type is int and value != raw:
                        raise ValueError(raw)
                    if not (min_val <= value <= max_val):
                        errors.append(f"{section}.{field} must be between {min_val} and {max_val}")
                except (ValueError, TypeError):
                    errors.append(f"{section}.{field} must be a valid {expected_type.__name__}")

        # Перекрестная проверка допусков
        tolerance = config.get('tolerance', {})
        if isinstance(tolerance, dict) and 'tol' in tolerance and 'margin' in tolerance:
            try:
                if float(tolerance['margin']) < float(tolerance['tol']):
                    errors.append("tolerance.margin >= tolerance.tol constraint violated")
            except (ValueError, TypeError):
                pass

        if 'output' in config and isinstance(config['output'], dict):
            directory = config['output'].get('directory')
            if directory is not None and (not isinstance(directory, str) or not directory):
                errors.append("output.directory must be a non-empty string")

        is_valid = len(errors) == 0

        if is_valid:
            self.logger.debug("[CONFIG] Configuration validation passed")
        else:
            self.logger.error(f"[CONFIG] Configuration validation failed with {len(errors)} errors")
            for error in errors:
                self.logger.error(f"  - {error}")

        return is_valid, errors

    def validate_and_raise(self, config: Dict[str, Any]) -> None:
        """
        Валидация конфигурации с выбрасыванием исключения при ошибке
        """
        is_valid, errors = self.validate_config(config)
        if not is_valid:
            error_message = "Configuration validation failed:\n" + "\n".join(f"  - {error}" for error in errors)
            raise ConfigValidationError(error_message)
