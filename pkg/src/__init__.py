"""n-角范畴验证工具：有限 n-角结构的公理检查、理想商与 proper 类"""

__version__ = "1.0.0"
__description__ = "有限 k-线性加法范畴上 n-角结构的机械验证"
