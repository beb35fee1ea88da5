#!/usr/bin/env python3
"""
glsdim - 冗餘 GLS 數系的展開與維度計算
主程式入口
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

import config
from core.errors import GlsError
from handlers import (
    setup_dimension_handlers,
    setup_estimate_handlers,
    setup_expansion_handlers,
    setup_family_handlers,
    setup_history_handlers,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """建立 argparse 與所有子命令"""
    parser = argparse.ArgumentParser(
        prog=config.APP_NAME,
        description="冗餘 GLS 展開與位準集維度 / redundant GLS expansions and level-set dimensions",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # 註冊 handlers
    setup_family_handlers(subparsers)
    setup_dimension_handlers(subparsers)
    setup_expansion_handlers(subparsers)
    setup_estimate_handlers(subparsers)
    setup_history_handlers(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主程式，回傳結束碼"""
    # 設定日誌（只寫 stderr）
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
        stream=sys.stderr,
    )

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GlsError as e:
        logger.error(f"{args.command} failed: {e.code}: {e}")
        print(f"❌ {e.label} [{e.code}]: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
