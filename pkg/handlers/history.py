"""
執行記錄查詢指令
"""

import asyncio
import logging

from core.errors import ValidationError
from database.db import RunStore
from handlers.common import finish, render, store_parser

logger = logging.getLogger(__name__)


async def _load_history(db_path: str, limit: int, command: str, run_id: int) -> dict:
    async with RunStore(db_path) as store:
        if run_id is not None:
            run = await store.get_run(run_id)
            if run is None:
                raise ValidationError(f"no run with id {run_id}", "--id")
            return {"run": run}
        return {
            "runs": await store.recent_runs(limit, command),
            "stats": await store.get_stats(),
        }


def cmd_history(args) -> int:
    """列出最近的執行記錄"""
    if not args.db:
        raise ValidationError("no run-history database configured", "--db")
    if args.limit < 1:
        raise ValidationError("must be positive", "--limit")

    data = asyncio.run(_load_history(args.db, args.limit, args.only, args.id))
    if args.fmt == "csv":
        rows = [data["run"]] if "run" in data else data["runs"]
        text = render(rows, "csv") if rows else ""
    else:
        text = render(data, "json")

    # history 本身不寫入記錄
    args.db = ""
    return finish(args, "history", text)


def setup_history_handlers(subparsers) -> None:
    """設定記錄指令"""
    parser = subparsers.add_parser("history", parents=[store_parser()], help="執行記錄 / run history")
    parser.add_argument("--limit", type=int, default=10)
    parser.add_argument("--command", dest="only", default=None, help="只列出某個子命令 / filter by subcommand")
    parser.add_argument("--id", type=int, default=None)
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    parser.set_defaults(func=cmd_history)
    logger.debug("History handlers registered")
