"""算法配置参数"""

import os
from typing import Any, Dict, Optional

# ==================== 枚举与搜索配置 ====================

EXANGLE_CONFIG = {
    # ========== 对象规模 ==========

    # 枚举对象的重数上限（扩张端点、闭性检查中的可分解端点）
    # 可由环境变量 EXANG_MAX_MULT 覆盖
    'max_mult': 2,

    # 可缩补丁上限：补丁在被补的次数上最多添加的不可分解对象个数
    # 实际取值不小于 axiom_object_bound
    'padding_bound': 1,

    # EA1 实例与饱和性方块中对象的重数上限
    # None 表示跟随 max_mult
    'axiom_object_bound': None,

    # ========== 枚举上限 ==========

    'max_enumeration': 4096,        # 任意仿射空间/元素枚举的上限
    'max_automorphism_pairs': 256,  # realize 尝试的 (a, c) 自同构对上限
    'max_lifts': 64,                # 每个 EA2 实例枚举的提升个数上限
}

# 环境变量名
MAX_MULT_ENV = "EXANG_MAX_MULT"


def get_exangle_config(overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    合并默认配置、显式覆盖与环境变量

    :param overrides: 覆盖项（可选）
    :return: 生效的配置字典
    """
    config = dict(EXANGLE_CONFIG)
    env_value = os.environ.get(MAX_MULT_ENV)
    if env_value is not None and env_value.strip():
        try:
            max_mult = int(env_value)
        except ValueError:
            raise ValueError(f"{MAX_MULT_ENV} 必须是正整数: {env_value!r}")
        if max_mult < 1:
            raise ValueError(f"{MAX_MULT_ENV} 必须是正整数: {env_value!r}")
        config['max_mult'] = max_mult
    if overrides:
        config.update(overrides)
    if config['axiom_object_bound'] is None:
        config['axiom_object_bound'] = config['max_mult']
    # 补丁至少要能补齐一个重数达到上限的对象
    config['padding_bound'] = max(config['padding_bound'], config['axiom_object_bound'])
    return config
