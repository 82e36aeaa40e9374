#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口：python main.py validate fixtures/F1.json
"""

import os
import sys

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
