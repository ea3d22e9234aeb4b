"""
Реестр констант: замкнутые формы и десятичные значения, приведенные в источнике
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional

QUOTE_TOLERANCE = 1e-6

# Границы интервала теоремы
LOWER_D = 2.0 * math.sin(2.0 * math.pi / 9.0)
ISBELL_D = math.sqrt(7.0) / 2.0
EXOO_D = math.sqrt(43.0 / 25.0)
TWO_RING_D = 2.0 * math.sin(5.0 * math.pi / 22.0)


@dataclass(frozen=True)
class NamedConstant:
    """Именованная константа с цитируемым значением"""
    name: str
    formula: str
    quoted: float
    closed_form: Optional[Callable[[], float]] = None
    note: str = ""

    @property
    def value(self) -> Optional[float]:
        return self.closed_form() if self.closed_form is not None else None


@dataclass(frozen=True)
class ConstantCheck:
    """Результат сверки замкнутой формы с цитируемым значением"""
    name: str
    formula: str
    value: Optional[float]
    quoted: float
    delta: Optional[float]
    ok: bool
    note: str


REGISTRY: List[NamedConstant] = [
    NamedConstant("isbell_upper", "sqrt(7)/2", 1.322876, lambda: ISBELL_D,
                  "upper end: hexagonal 7-coloring"),
    NamedConstant("exoo", "sqrt(43/25)", 1.311488, lambda: EXOO_D,
                  "203-vertex 7-chromatic graph"),
    NamedConstant("annulus_reference", "-", 1.285987, None,
                  "earlier annulus construction; quoted without closed form"),
    NamedConstant("lower_end", "2*sin(2*pi/9)", 1.285575, lambda: LOWER_D,
                  "19-vertex graph, lower end of the theorem interval"),
    NamedConstant("two_ring", "2*sin(5*pi/22)", 1.309721, lambda: TWO_RING_D,
                  "29-vertex two-ring graph"),
    NamedConstant("eps_lower_end", "(d-1)/(d+1), d=2*sin(2*pi/9)", 0.124947,
                  lambda: (LOWER_D - 1.0) / (LOWER_D + 1.0), "symmetric form of the lower end"),
    NamedConstant("eps_isbell", "(d-1)/(d+1), d=sqrt(7)/2", 0.138998,
                  lambda: (ISBELL_D - 1.0) / (ISBELL_D + 1.0), "symmetric form of the upper end"),
]


def check_all(tolerance: float = QUOTE_TOLERANCE) -> List[ConstantCheck]:
    """Сверка всех констант; без замкнутой формы константа только сообщается"""
    rows = []
    for constant in REGISTRY:
        value = constant.value
        if value is None:
            rows.append(ConstantCheck(constant.name, constant.formula, None, constant.quoted, None, True,
                                      constant.note))
            continue
        delta = abs(value - constant.quoted)
        rows.append(ConstantCheck(constant.name, constant.formula, value, constant.quoted, delta,
                                  delta <= tolerance, constant.note))
    return rows


def get_constant(name: str) -> NamedConstant:
    for constant in REGISTRY:
        if constant.name == name:
            return constant
    raise KeyError(name)
