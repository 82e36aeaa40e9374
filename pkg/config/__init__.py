"""配置模块：检查边界与日志设置"""

from .algorithm_config import EXANGLE_CONFIG, MAX_MULT_ENV, get_exangle_config
from .settings import LOG_FORMAT, LOG_LEVEL, PROJECT_NAME, VERSION

__all__ = [
    "EXANGLE_CONFIG",
    "MAX_MULT_ENV",
    "get_exangle_config",
    "LOG_FORMAT",
    "LOG_LEVEL",
    "PROJECT_NAME",
    "VERSION",
]
